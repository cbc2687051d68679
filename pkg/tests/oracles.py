"""Independent reference routes, deliberately sharing no code with the package.

Lambda and Gamma come from direct quadrature of their defining integrals (plus
mpmath's own Clausen function and polylog as a second opinion); J_N comes from
the Habiro-Le sum written with complex powers of t, the way it is usually
stated, instead of through the real factors g(j).
"""
import mpmath


def lobachevsky_quad(x, dps=30):
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        sgn = 1
        if x < 0:
            x, sgn = -x, -1
        pts = [mpmath.mpf(0)]
        k = 1
        while k * mpmath.pi < x:
            pts.append(k * mpmath.pi)
            k += 1
        pts.append(x)
        return sgn * -mpmath.quad(lambda u: mpmath.log(abs(2 * mpmath.sin(u))), pts)


def lobachevsky_clausen(x, dps=30):
    with mpmath.workdps(dps):
        return mpmath.clsin(2, 2 * mpmath.mpf(x)) / 2


def theta_mp(r):
    return mpmath.acos(mpmath.cos(2 * mpmath.pi * r) - mpmath.mpf(1) / 2)


def phi_mp(r):
    return mpmath.acos(mpmath.cos(2 * mpmath.pi * r) + mpmath.mpf(1) / 2)


def V_quad(r, dps=30):
    with mpmath.workdps(dps):
        r = mpmath.mpf(r)
        th = theta_mp(r)
        return lobachevsky_quad(mpmath.pi * r + th / 2, dps) - lobachevsky_quad(mpmath.pi * r - th / 2, dps)


def W_quad(r, dps=30):
    with mpmath.workdps(dps):
        r = mpmath.mpf(r)
        ph = phi_mp(r)
        return V_quad(r, dps) + lobachevsky_quad(mpmath.pi * r + ph / 2, dps) - lobachevsky_quad(
            mpmath.pi * r - ph / 2, dps)


def vhat_quad(r, dps=30):
    with mpmath.workdps(dps):
        return 2 * V_quad(r, dps) / mpmath.mpf(r)


def gamma_quad(z, dps=30):
    with mpmath.workdps(dps):
        return mpmath.quad(lambda x: mpmath.log(2 * mpmath.sinh(x)), [0, mpmath.mpf(z)])


def gamma_polylog(z, dps=30):
    with mpmath.workdps(dps):
        z = mpmath.mpf(z)
        return z ** 2 / 2 - mpmath.pi ** 2 / 12 + mpmath.polylog(2, mpmath.exp(-2 * z)) / 2


def phi_h_mp(s, dps=30):
    with mpmath.workdps(dps):
        return mpmath.acosh(mpmath.cosh(2 * mpmath.pi * mpmath.mpf(s)) - mpmath.mpf(1) / 2)


def imaginary_growth_quad(s, dps=30):
    with mpmath.workdps(dps):
        s = mpmath.mpf(s)
        ph = phi_h_mp(s, dps)
        x = mpmath.pi * s
        return (2 * gamma_quad(x + ph / 2, dps) - 2 * gamma_quad(x - ph / 2, dps)) / (2 * x)


def mednykh_volume(alpha, dps=30):
    """Cone-manifold volume of the figure-eight knot with cone angle alpha.

    int_alpha^{2pi/3} arccosh(1 + cos a - cos 2a) da.
    """
    with mpmath.workdps(dps):
        return mpmath.quad(lambda a: mpmath.acosh(1 + mpmath.cos(a) - mpmath.cos(2 * a)),
                           [mpmath.mpf(alpha), 2 * mpmath.pi / 3])


def habiro_le_complex(r, N, dps=40, imaginary=False):
    """J_N(E; t) from complex powers of t; t = exp(2 pi i r / N), or exp(2 pi r / N) if imaginary.

    ``r`` may be an int, float, Fraction or string understood by mpmath.
    """
    with mpmath.workdps(dps):
        if hasattr(r, "numerator") and hasattr(r, "denominator"):
            r = mpmath.mpf(r.numerator) / r.denominator
        r = mpmath.mpf(r)
        unit = 1 if imaginary else 1j
        logt = 2 * mpmath.pi * unit * r / N

        def tp(e):
            return mpmath.exp(logt * e)

        total = mpmath.mpc(1)
        f = mpmath.mpc(1)
        for j in range(1, N):
            a = mpmath.mpf(N + j) / 2
            b = mpmath.mpf(N - j) / 2
            f *= (tp(a) - tp(-a)) * (tp(b) - tp(-b))
            total += f
        return total


def jones_n2_polynomial(r, dps=30):
    """The Jones polynomial of the figure-eight, t^2 - t + 1 - t^-1 + t^-2, at t = exp(pi i r)."""
    with mpmath.workdps(dps):
        t = mpmath.expjpi(mpmath.mpf(r))
        return t ** 2 - t + 1 - 1 / t + 1 / t ** 2


def brute_force_f(r, N, dps=40):
    """|f(k)| for k < N from the product-of-sines factor form."""
    with mpmath.workdps(dps):
        if hasattr(r, "numerator") and hasattr(r, "denominator"):
            r = mpmath.mpf(r.numerator) / r.denominator
        r = mpmath.mpf(r)
        out = [mpmath.mpf(1)]
        for j in range(1, N):
            x = mpmath.pi * r * j / N
            out.append(out[-1] * 4 * mpmath.sin(x + mpmath.pi * r) * mpmath.sin(x - mpmath.pi * r))
        return out
