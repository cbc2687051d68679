"""Regenerate src/fig8jones/data/golden.json from the independent oracles in tests/oracles.py.

Nothing from the fig8jones package is imported here.

    python tools/make_golden.py
"""
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles as O  # noqa: E402

OUT = ROOT / "src" / "fig8jones" / "data" / "golden.json"


def entry(value, tol, provenance, oracle, cross=None):
    e = {"value": float(value), "tol": tol, "provenance": provenance, "oracle": oracle}
    if cross is not None:
        e["cross_check"] = float(cross)
        assert abs(float(value) - float(cross)) < tol / 10, (value, cross)
    return e


def product_log_F(r, N, dps=25):
    # log max_k |f(k)| by summing log|4 sin sin| over all j; argmax taken in high precision
    with mpmath.workdps(dps):
        r = mpmath.mpf(r)
        acc = mpmath.mpf(0)
        best = acc
        for j in range(1, N):
            x = mpmath.pi * r * j / N
            acc += mpmath.log(abs(4 * mpmath.sin(x + mpmath.pi * r) * mpmath.sin(x - mpmath.pi * r)))
            if acc > best:
                best = acc
        return best


def main():
    g = {}
    pi = mpmath.pi
    with mpmath.workdps(30):
        g["lambda_pi_6"] = entry(O.lobachevsky_quad(pi / 6), 1e-12, "DERIVED",
                                 "quadrature of -log|2 sin|; cross-check mpmath Clausen",
                                 O.lobachevsky_clausen(pi / 6))
        g["gamma_1"] = entry(O.gamma_quad(1), 1e-12, "DERIVED",
                             "quadrature of log 2 sinh; cross-check z^2/2 - pi^2/12 + Li2(e^-2z)/2 via mpmath.polylog",
                             O.gamma_polylog(1))
        g["phi_h_1"] = entry(O.phi_h_mp(1), 1e-12, "DERIVED", "arccosh(cosh(2 pi) - 1/2) at 30 digits",
                             math.acosh(math.cosh(2 * math.pi) - 0.5))
        g["V_1"] = entry(O.V_quad(1), 1e-12, "DERIVED", "Lambda quadrature", 2 * O.lobachevsky_clausen(pi / 6))
        g["vhat_1"] = entry(O.vhat_quad(1), 1e-9, "DERIVED", "Lambda quadrature; equals 4 Lambda(pi/6)",
                            4 * O.lobachevsky_clausen(pi / 6))
        g["vhat_9_10"] = entry(O.vhat_quad(mpmath.mpf(9) / 10), 1e-9, "DERIVED", "Lambda quadrature")
        g["vhat_5_6"] = entry(O.vhat_quad(mpmath.mpf(5) / 6), 1e-9, "DERIVED", "Lambda quadrature")
        g["cone_volume_pi_3"] = entry(2 * O.V_quad(mpmath.mpf(5) / 6), 1e-9, "DERIVED",
                                      "2 V(5/6) by Lambda quadrature; cross-check Mednykh volume integral",
                                      O.mednykh_volume(pi / 3))
        g["delta_0_8"] = entry(O.W_quad(mpmath.mpf(8) / 10), 1e-9, "DERIVED", "Lambda quadrature")
        g["imaginary_growth_1"] = entry(O.imaginary_growth_quad(1), 1e-9, "DERIVED", "Gamma quadrature")

    def s_N(r, N):
        J = O.habiro_le_complex(r, N)
        assert abs(J.imag) < 1e-20 * max(1, abs(J.real)), J
        return 2 * math.pi * float(mpmath.log(abs(J.real))) / N

    g["jones_s_N_r1_N2000"] = entry(s_N(1, 2000), 1e-9, "DERIVED", "Habiro-Le sum with complex powers of t")
    g["jones_s_N_9_10_N91"] = entry(s_N(Fraction(9, 10), 91), 1e-9, "DERIVED",
                                    "Habiro-Le sum with complex powers of t")
    g["jones_s_N_9_10_N901"] = entry(s_N(Fraction(9, 10), 901), 1e-9, "DERIVED",
                                     "Habiro-Le sum with complex powers of t")
    g["product_s_N_r1_N1000000"] = entry(2 * math.pi * float(product_log_F(1, 10 ** 6)) / 10 ** 6, 1e-9,
                                         "DERIVED", "high-precision running sum of log|4 sin sin| over all j")

    def imag_rate(s, N):
        J = O.habiro_le_complex(s, N, dps=30, imaginary=True)
        return float(mpmath.log(J.real)) / N

    g["imag_rate_s1_N100000"] = entry(imag_rate(1, 10 ** 5), 1e-9, "DERIVED",
                                      "Habiro-Le sum with real powers of t = exp(2 pi s / N)")
    g["imag_rate_s0.1_N10000"] = entry(imag_rate(mpmath.mpf("0.1"), 10 ** 4), 1e-9, "DERIVED",
                                       "Habiro-Le sum with real powers of t = exp(2 pi s / N)")

    OUT.parent.mkdir(parents=True, exist_ok=True)
    doc = {"about": "reference values computed by tools/make_golden.py from tests/oracles.py", "entries": g}
    OUT.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(g)} entries to {OUT}")


if __name__ == "__main__":
    main()
