"""Exact checks for 1/pi series, binomial identities and supercongruences."""

import json
from fractions import Fraction

from . import _piforge
from ._piforge import DomainError, UsageError, case_ids, legendre, series_ids

__all__ = [
    "DomainError",
    "UsageError",
    "case_ids",
    "check_case",
    "check_convergence",
    "legendre",
    "quadform_rep",
    "run",
    "sequence_term",
    "sequence_term_mod",
    "series_ids",
    "verify_identity",
]


def _num(text):
    return int(text) if "/" not in text else Fraction(text)


def sequence_term(name, n, *params):
    """Exact term as int or Fraction; params are rationals (int, Fraction or str)."""
    return _num(_piforge.sequence_term(name, n, [str(p) for p in params]))


def sequence_term_mod(name, n, modulus, *params):
    """Residue in [0, modulus), or None when a denominator is not invertible."""
    r = _piforge.sequence_term_mod(name, n, str(modulus), [str(p) for p in params])
    return None if r is None else int(r)


def quadform_rep(target, a, d):
    """(x, y) with a x^2 + d y^2 = target, or None."""
    r = _piforge.quadform_rep(str(target), a, d)
    return None if r is None else (int(r[0]), int(r[1]))


def verify_identity(identity_id, n_max):
    rows = _piforge.verify_identity(identity_id, n_max)
    for row in rows:
        row["lhs"] = _num(row["lhs"])
        row["rhs"] = _num(row["rhs"])
    return rows


def check_convergence(series_id, digits=30, max_terms=2000):
    return _piforge.check_convergence(series_id, digits, max_terms)


def check_case(case_id, p):
    return _piforge.check_case(case_id, p)


def run(command, ids=(), **options):
    """Runs a CLI command in-process; returns (exit_code, report body dict)."""
    code, body = _piforge.run(command, list(ids), **options)
    return code, json.loads(body)
