"""Exact integer sequences and asymptotic comparators.

The closed-form binomial sums are checked against an independent oracle:
Taylor coefficients of the generating functions, produced by an exact
rational power-series square root (Newton iteration).  Ratio tests against
the asymptotic comparators run in high-precision arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .errors import Unsupported


@dataclass
class ExactSequence:
    name: str
    terms: list
    closed_form: str = ""


def hopf_c_seq(length: int) -> ExactSequence:
    """c_m = (-2)^m * sum_r C(m,r) C(2r,r) (-1)^r, exact."""
    if length > 2000:
        raise Unsupported("sequence computed for at most 2000 terms")
    terms = []
    for m in range(length + 1):
        total = sum(math.comb(m, r) * math.comb(2 * r, r) * (-1) ** r
                    for r in range(m + 1))
        terms.append((-2) ** m * total)
    return ExactSequence("hopf-c", terms, "sqrt(3)*6^m / (2*sqrt(pi*m))")


def _series_mul(a: list, b: list, order: int) -> list:
    out = [Fraction(0)] * order
    for i, ai in enumerate(a[:order]):
        if not ai:
            continue
        for j, bj in enumerate(b[:order - i]):
            out[i + j] += ai * bj
    return out


def _series_inv_sqrt(f: list, order: int) -> list:
    """1/sqrt(f) for a series with constant term 1, by Newton iteration
    y <- y*(3 - f*y^2)/2 with doubling precision."""
    y = [Fraction(1)]
    prec = 1
    while prec < order:
        prec = min(2 * prec, order)
        fy2 = _series_mul(f[:prec], _series_mul(y, y, prec), prec)
        three_minus = [-c for c in fy2]
        three_minus[0] += 3
        y = [c / 2 for c in _series_mul(y, three_minus, prec)]
    return y[:order]


def series_coeffs(kind: str, length: int) -> ExactSequence:
    """Taylor coefficients of the generating function, exact rationals."""
    if length > 500:
        raise Unsupported("series expanded for at most 500 terms")
    order = length + 1
    if kind == "hopf":
        f = [Fraction(1), Fraction(-4), Fraction(-12)] + [Fraction(0)] * (order - 3)
        scale = Fraction(1)
    elif kind == "sl3":
        f = [Fraction(1), Fraction(-26), Fraction(25)] + [Fraction(0)] * (order - 3)
        scale = Fraction(3)
    else:
        raise Unsupported(f"unknown series kind {kind!r}")
    coeffs = [scale * c for c in _series_inv_sqrt(f[:order], order)]
    return ExactSequence(f"series-{kind}", coeffs)


# -- asymptotic comparators ------------------------------------------------------


def _mp(x):
    return mpmath.mpf(x)


def comparator(name: str) -> Callable:
    """Closed-form comparator by family name, evaluated in mpmath."""
    pi = mpmath.pi
    table = {
        "hopf-c": lambda m: mpmath.sqrt(3) * _mp(6) ** m / (2 * mpmath.sqrt(pi * m)),
        "iterated-hopf-n": lambda m: mpmath.sqrt(3) * _mp(6) ** (2 * m)
        / (2 * mpmath.sqrt(2 * pi * m)),
        "sl3-n": lambda m: 15 * _mp(25) ** m / (2 * mpmath.sqrt(6 * pi * m)),
        "tree-unlink-n": lambda m: mpmath.sqrt(_mp(6) / (pi * m)) * _mp(6) ** m,
        # the central coefficient of ((1+2t)(1+2/t))^m carries a factor 1/2
        # that the published formula drops; both forms are exposed
        "branched-unknot-n": lambda m: _mp(3) ** (2 * m + 1)
        / (2 * mpmath.sqrt(2 * pi * m)),
        "branched-unknot-n-published": lambda m: _mp(3) ** (2 * m + 1)
        / mpmath.sqrt(2 * pi * m),
    }
    if name not in table:
        raise Unsupported(f"unknown comparator {name!r}")
    return table[name]


def ratio_convergence(term, comparator_fn, index: int) -> float:
    """|term / comparator(index) - 1| with 64+ fractional bits."""
    with mpmath.workprec(128):
        exact = mpmath.mpf(int(term))
        approx = comparator_fn(index)
        return float(abs(exact / approx - 1))


def asymptotics_table(name: str, indices) -> list[dict]:
    """Rows of (index, exact term, comparator value, relative error)."""
    from .products import closed_form_params

    def exact_term(idx):
        if name == "hopf-c":
            return hopf_c_seq(idx).terms[idx]
        if name == "iterated-hopf-n":
            return closed_form_params("iterated-hopf", (idx,)).n
        if name == "sl3-n":
            from .sl3 import sl3_n_formula
            return sl3_n_formula(idx)
        if name == "tree-unlink-n":
            return closed_form_params("tree-unlink", (idx,)).n
        if name == "branched-unknot-n":
            return closed_form_params("branched-unknot", (1, idx)).n
        raise Unsupported(f"unknown sequence {name!r}")

    comp = comparator(name)
    rows = []
    for idx in indices:
        term = exact_term(idx)
        with mpmath.workprec(128):
            approx = comp(idx)
            err = float(abs(mpmath.mpf(int(term)) / approx - 1))
        rows.append({"index": idx, "term": term,
                     "comparator": mpmath.nstr(approx, 12), "rel_error": err})
    return rows
