"""Python front end to the heinzcert inequality certifier.

Reports come back as plain dicts decoded from the same JSON the CLI emits.
"""

import json

from . import _heinzcert as _ext
from ._heinzcert import (  # noqa: F401
    DomainError,
    SpecError,
    UsageError,
    __version__,
    gen_pd,
    geom,
    heinz,
    heron,
    mat_pow,
    weighted_arith,
    weighted_geom,
)


def list_cases():
    return json.loads(_ext.list_cases_json())


def evaluate_scalar(case_id, a, b, nu, tol=1e-12):
    return json.loads(_ext.evaluate_scalar_json(case_id, a, b, nu, tol))


def certify_operator(case_id, a, b, nu, tol=1e-8):
    return json.loads(_ext.certify_operator_json(case_id, a, b, nu, tol))


def certify_hs(case_id, a, b, x, nu, tol=1e-8, lenient_x=False):
    return json.loads(_ext.certify_hs_json(case_id, a, b, x, nu, tol, lenient_x))


def scalar_sweep(cases=("all",), nu_grid=None):
    return json.loads(_ext.scalar_sweep_json(list(cases), nu_grid))


def matrix_verify(cases=("all",), dims=(1, 2, 3, 5, 8), trials=100, seed=42, threads=1):
    return json.loads(_ext.matrix_verify_json(list(cases), list(dims), trials, seed, threads))


def replay(digest):
    return json.loads(_ext.replay_json(digest))


def gap_profile(cases, a=4.0, b=1.0, nu_grid=None):
    """CSV text, one row per nu."""
    return _ext.gap_profile_csv(list(cases), a, b, nu_grid)


def validate_report(report):
    """Problems found in a report (dict or JSON text); empty when valid."""
    text = report if isinstance(report, str) else json.dumps(report)
    return _ext.validate_report(text)
