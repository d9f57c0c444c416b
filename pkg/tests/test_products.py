"""Tensor products, connect sums, recursion, code families."""

import math

import pytest

from khoco import builders
from khoco.distance import css_distance, homology_dims, min_weight_nontrivial
from khoco.errors import BadFamily, FieldMismatch, Unsupported
from khoco.khovanov import build_complex
from khoco.products import (closed_form_params, connect_sum_check,
                            factor_distances, family_cross_check,
                            hopf_recursion_check, tensor, tensor_upper_bound)


def reduced_hopf():
    return build_complex(builders.hopf(pointed=True), reduced=True)


def test_tensor_unknots():
    c = build_complex(builders.unknot())
    t = tensor(c, c)
    assert t.group_dims() == {0: 4}


def test_tensor_hopf_dims_match_polynomial():
    # (2 + 2t + 2t^2)^2 has coefficient 12 at t^2
    t = tensor(reduced_hopf(), reduced_hopf())
    assert t.group_dims() == {0: 4, 1: 8, 2: 12, 3: 8, 4: 4}


def test_kunneth_convolution():
    t = tensor(reduced_hopf(), reduced_hopf())
    hom = homology_dims(t)
    # (1 + t^2)^2
    assert {d: h for d, h in hom.items() if h} == {0: 1, 2: 2, 4: 1}


def test_kunneth_general():
    a = build_complex(builders.trefoil(pointed=True), reduced=True)
    b = reduced_hopf()
    t = tensor(a, b)
    ha, hb, ht = homology_dims(a), homology_dims(b), homology_dims(t)
    for k in t.degrees():
        assert ht.get(k, 0) == sum(
            ha.get(i, 0) * hb.get(k - i, 0) for i in ha)


def test_tensor_field_mismatch():
    from khoco.sl3 import build_sl3_complex
    with pytest.raises(FieldMismatch):
        tensor(reduced_hopf(), build_sl3_complex(1, 1))


def test_tensor_upper_bound_examples():
    hopf_d = {0: 2, 2: 1}
    assert tensor_upper_bound(hopf_d, hopf_d, 2) == 2
    assert tensor_upper_bound(hopf_d, hopf_d, 0) == 4
    assert tensor_upper_bound(hopf_d, hopf_d, 1) == math.inf


def test_factor_distances_reduced_hopf():
    dist = factor_distances(reduced_hopf())
    assert dist == {0: 2, 1: math.inf, 2: 1}


def test_connect_sum_checks():
    pairs = [
        (builders.unknot(pointed=True), builders.unknot(pointed=True)),
        (builders.hopf(pointed=True), builders.unknot(pointed=True)),
        (builders.hopf(pointed=True), builders.hopf(pointed=True)),
    ]
    for a, b in pairs:
        assert connect_sum_check(a, b)["ok"]


def test_hopf_recursion_base_values():
    rep = hopf_recursion_check(builders.unknot(pointed=True))
    assert rep["ok"]
    lhs = {r["shifted_degree"]: r["lhs"] for r in rep["rows"]}
    assert lhs[0] == 2 and lhs[2] == 1


def test_hopf_recursion_hopf_values():
    rep = hopf_recursion_check(builders.hopf(pointed=True))
    assert rep["ok"]
    lhs = {r["shifted_degree"]: r["lhs"] for r in rep["rows"]}
    assert lhs[0] == 4 and lhs[2] == 2 and lhs[4] == 1


def test_hopf_recursion_trefoil():
    assert hopf_recursion_check(builders.trefoil(pointed=True))["ok"]


def test_closed_forms():
    assert closed_form_params("iterated-hopf", (1,)) \
        == closed_form_params("iterated-hopf", (1,))
    p = closed_form_params("iterated-hopf", (1,))
    assert (p.n, p.k, p.d) == (12, 2, 2)
    p = closed_form_params("iterated-hopf", (2,))
    assert (p.n, p.k, p.d) == (304, 6, 4)
    p = closed_form_params("tree-unlink", (1,))
    assert (p.n, p.k, p.d) == (8, 4, 2)
    p = closed_form_params("branched-unknot", (1, 1))
    assert (p.n, p.k, p.d) == (5, 1, 2)
    p = closed_form_params("torus-reduced", (4, 2))
    assert (p.n, p.k, p.d) == (12, 1, 6)
    with pytest.raises(BadFamily):
        closed_form_params("nope", (1,))
    with pytest.raises(Unsupported):
        closed_form_params("torus-reduced", (4, 1))


def test_family_cross_checks_small():
    assert family_cross_check("iterated-hopf", (1,))["ok"]
    assert family_cross_check("tree-unlink", (1,))["ok"]
    assert family_cross_check("tree-unlink", (2,))["ok"]
    assert family_cross_check("branched-unknot", (1, 1))["ok"]
    assert family_cross_check("torus-reduced", (4, 2))["ok"]
    assert family_cross_check("torus-reduced", (3, 3))["ok"]


def test_family_csv_row():
    p = closed_form_params("iterated-hopf", (2,))
    assert p.csv_row() == "iterated-hopf,2,304,6,4"


def test_rii_overlap_doubles_unknot():
    base = builders.unlink(2)
    joined = builders.tree_unlink(builders.path_tree(1))
    d0 = css_distance(base, 0, check_mirror_agrees=False).d
    d1 = css_distance(joined, 0, check_mirror_agrees=False).d
    assert (d0, d1) == (1, 2)


def test_overstrand_choice_has_equal_distances():
    from khoco.diagram import disjoint_union
    base = disjoint_union(builders.hopf(), builders.unknot())
    circle = [fl.arc for fl in base.free_loops][-1]
    under = builders.overlap(base, 0, circle)
    over = builders.overlap(base, circle, 0)
    cu, co = build_complex(under), build_complex(over)
    for deg in cu.degrees():
        assert (min_weight_nontrivial(cu, deg).d_hat
                == min_weight_nontrivial(co, deg).d_hat)
