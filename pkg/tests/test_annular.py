"""Annular complexes at fixed annular degree."""

import pytest

from khoco import builders
from khoco.annular import (annular_unlink_family, build_annular_complex,
                           tangle_closure_iso_check)
from khoco.distance import homology_dims, min_weight_nontrivial
from khoco.errors import NotAnnular, Unsupported
from khoco.khovanov import build_complex


def test_needs_ray_counts():
    with pytest.raises(NotAnnular):
        build_annular_complex(builders.hopf(), 0)


def test_single_essential_loop():
    d = builders.unknot(ray=True)
    cx = build_annular_complex(d, +1)
    assert cx.group_dims() == {0: 1}
    assert cx.differential(0).is_zero()


def test_adeg_grading_of_basis():
    d = builders.annular_unlink(3)
    cx = build_annular_complex(d, +1)
    for deg in cx.degrees():
        for elt in cx.groups[deg]:
            assert elt.adeg() == +1


def test_torus_closure_matches_reduced_trefoil():
    fx = builders.annular_tangle_closure("s1 s1 s1")
    annular = build_annular_complex(fx, +1)
    reduced = build_complex(fx, reduced=True)
    assert annular.group_dims() == reduced.group_dims()
    assert homology_dims(annular) == homology_dims(reduced)


def test_tangle_closure_iso_fixtures():
    for word, strands in (("", 1), ("s1 s1 s1", 2), ("s1 s1 s1 s1", 2)):
        fx = builders.annular_tangle_closure(word, strands)
        rep = tangle_closure_iso_check(fx)
        assert rep["ok"], rep


def test_no_zero_columns_at_fixed_adeg_one():
    for word in ("s1 s1 s1", "s1 s1 s1 s1"):
        fx = builders.annular_tangle_closure(word)
        for k in (+1, -1):
            assert not build_annular_complex(fx, k).has_zero_column()


def test_annular_homology_invariance_under_far_moves():
    # an RII pair inserted away from the puncture
    a = builders.annular_tangle_closure("s1 s1 s1")
    b = builders.annular_tangle_closure("s1 s1 s1 s1 s1^-1")
    for k in (+1, -1):
        ha = {d: h for d, h in homology_dims(build_annular_complex(a, k)).items() if h}
        hb = {d: h for d, h in homology_dims(build_annular_complex(b, k)).items() if h}
        assert ha == hb


def test_d2_distance():
    d = builders.annular_unlink(2)
    cx = build_annular_complex(d, 0)
    assert min_weight_nontrivial(cx, 0).d_hat == 2


def test_unlink_family_matches_brute_oracle():
    from khoco.distance import brute_oracle
    for ell, adeg in ((2, 0), (3, 1)):
        cx = build_annular_complex(builders.annular_unlink(ell), adeg)
        assert cx.dim(0) <= 20
        assert brute_oracle(cx, 0)[0] == min_weight_nontrivial(cx, 0).d_hat


def test_unlink_family_small_values():
    for ell, want in ((1, 1), (2, 2), (3, 3)):
        rep = annular_unlink_family(ell)
        assert rep.exact and rep.d == want


def test_unlink_family_guard():
    with pytest.raises(Unsupported):
        annular_unlink_family(6)


def test_differential_preserves_adeg():
    d = builders.annular_unlink(3)
    for k in (-1, +1, 3):
        cx = build_annular_complex(d, k)
        for deg in cx.degrees():
            m = cx.differential(deg)
            if not m.rows:
                continue
            nxt = cx.groups[deg + 1]
            for j in range(m.cols):
                for row, _ in m.column_vector(j).support:
                    assert nxt[row].adeg() == cx.groups[deg][j].adeg() == k
