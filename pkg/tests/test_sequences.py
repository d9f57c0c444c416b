"""Integer sequences, generating-function oracle, asymptotics."""

from fractions import Fraction

import pytest

from khoco.errors import Unsupported
from khoco.sequences import (asymptotics_table, comparator, hopf_c_seq,
                             ratio_convergence, series_coeffs)
from khoco.sl3 import sl3_n_formula


def test_hopf_c_values():
    c = hopf_c_seq(4).terms
    assert c == [1, 2, 12, 56, 304]


def test_hopf_seq_matches_series_oracle():
    c = hopf_c_seq(80).terms
    s = series_coeffs("hopf", 80).terms
    assert [Fraction(t) for t in c] == s


def test_sl3_series_matches_formula():
    s = series_coeffs("sl3", 60).terms
    for m in range(61):
        assert s[m] == sl3_n_formula(m)


def test_series_guard():
    with pytest.raises(Unsupported):
        series_coeffs("hopf", 501)
    with pytest.raises(Unsupported):
        series_coeffs("nope", 10)


def test_ratio_convergence_hopf():
    c = hopf_c_seq(200).terms
    comp = comparator("hopf-c")
    assert ratio_convergence(c[200], comp, 200) <= 0.01


def test_ratio_roughly_decreasing():
    c = hopf_c_seq(200).terms
    comp = comparator("hopf-c")
    errs = [ratio_convergence(c[m], comp, m) for m in (50, 100, 200)]
    assert errs[1] <= errs[0] + 1e-3
    assert errs[2] <= errs[1] + 1e-3


def test_asymptotics_table_rows():
    rows = asymptotics_table("tree-unlink-n", [100, 400])
    assert [r["index"] for r in rows] == [100, 400]
    assert rows[-1]["rel_error"] <= 0.01


def test_published_branched_constant_is_off_by_two():
    # the printed comparator misses a factor 1/2; both are exposed
    rows = asymptotics_table("branched-unknot-n", [200])
    assert rows[0]["rel_error"] <= 0.01
    from khoco.products import closed_form_params
    n = closed_form_params("branched-unknot", (1, 200)).n
    published = comparator("branched-unknot-n-published")
    err = ratio_convergence(n, published, 200)
    assert abs(err - 0.5) < 0.01
