"""Reference values shipped in ``data/golden.json`` and their recomputation.

The JSON is produced by ``tools/make_golden.py`` from independent oracles;
each entry records its tolerance and provenance.  ``verify_golden`` recomputes
every entry through the package's own routes.
"""
from __future__ import annotations

import json
import math
from functools import lru_cache
from importlib import resources

from . import asymptotics as asy
from .evaluator import Parameter, f_max, jones_log_abs_fast, jones_value
from .special import DEFAULT_PRECISION, PrecisionConfig, hyperbolic_gamma, lobachevsky, phi_hyperbolic


@lru_cache(maxsize=1)
def load_golden() -> dict:
    text = resources.files("fig8jones").joinpath("data/golden.json").read_text()
    return json.loads(text)["entries"]


def golden(key: str) -> float:
    return load_golden()[key]["value"]


def _s_N(param, N, cfg):
    return 2 * math.pi * jones_value(param, N, cfg).log_abs / N


RECOMPUTE = {
    "lambda_pi_6": lambda cfg: lobachevsky(math.pi / 6, cfg),
    "gamma_1": lambda cfg: hyperbolic_gamma(1.0, cfg),
    "phi_h_1": lambda cfg: phi_hyperbolic(1.0),
    "V_1": lambda cfg: asy.appendix_V(1.0, cfg),
    "vhat_1": lambda cfg: asy.vhat_value(1.0, cfg),
    "vhat_9_10": lambda cfg: asy.vhat_value(0.9, cfg),
    "vhat_5_6": lambda cfg: asy.vhat_value(5 / 6, cfg),
    "cone_volume_pi_3": lambda cfg: asy.cone_manifold_volume(math.pi / 3, cfg),
    "delta_0_8": lambda cfg: asy.delta_gap(0.8, cfg),
    "imaginary_growth_1": lambda cfg: asy.imaginary_growth(1.0, cfg),
    "jones_s_N_r1_N2000": lambda cfg: _s_N(Parameter.rational(1), 2000, cfg),
    "jones_s_N_9_10_N91": lambda cfg: _s_N(Parameter.rational(9, 10), 91, cfg),
    "jones_s_N_9_10_N901": lambda cfg: _s_N(Parameter.rational(9, 10), 901, cfg),
    "product_s_N_r1_N1000000": lambda cfg: 2 * math.pi * f_max(Parameter.rational(1), 10 ** 6).log_F_N / 10 ** 6,
    "imag_rate_s1_N100000": lambda cfg: jones_log_abs_fast(Parameter.imaginary(1.0), 10 ** 5) / 10 ** 5,
    "imag_rate_s0.1_N10000": lambda cfg: jones_log_abs_fast(Parameter.imaginary(0.1), 10 ** 4) / 10 ** 4,
}


def verify_golden(cfg: PrecisionConfig = DEFAULT_PRECISION):
    from .harness import SuiteReport

    rep = SuiteReport("golden file")
    entries = load_golden()
    for key in sorted(entries):
        e = entries[key]
        if key not in RECOMPUTE:
            rep.add(f"{key}: no recomputation route", False)
            continue
        got = RECOMPUTE[key](cfg)
        err = abs(got - e["value"])
        rep.add(f"{key} [{e['provenance']}: {e['oracle']}] within {e['tol']:g}", err <= e["tol"], err, e["tol"])
    return rep
