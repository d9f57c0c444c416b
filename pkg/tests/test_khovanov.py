"""Khovanov complexes in the plus/minus basis."""

import pytest

from khoco import builders
from khoco.diagram import from_braid
from khoco.distance import homology_dims
from khoco.errors import NoBasepoint
from khoco.khovanov import (MINUS, PLUS, build_complex,
                            comultiply_label, dual_complex, mirror_matches_dual,
                            multiply_labels, reduction_iso)


def test_multiply_labels_table():
    assert multiply_labels(PLUS, MINUS) == PLUS
    assert multiply_labels(MINUS, PLUS) == PLUS
    assert multiply_labels(PLUS, PLUS) == MINUS
    assert multiply_labels(MINUS, MINUS) == MINUS


def test_comultiply_label_table():
    assert set(comultiply_label(MINUS)) == {(MINUS, PLUS), (PLUS, MINUS)}
    assert set(comultiply_label(PLUS)) == {(MINUS, MINUS), (PLUS, PLUS)}


def test_unreduced_unknot():
    cx = build_complex(builders.unknot())
    assert cx.group_dims() == {0: 2}
    assert cx.differential(0).is_zero()


def test_reduced_hopf_dims():
    cx = build_complex(builders.hopf(pointed=True), reduced=True)
    assert cx.group_dims() == {0: 2, 1: 2, 2: 2}


def test_unreduced_hopf_dims():
    cx = build_complex(builders.hopf())
    assert cx.group_dims() == {0: 4, 1: 4, 2: 4}


def test_reduced_needs_basepoint():
    with pytest.raises(NoBasepoint):
        build_complex(builders.hopf(), reduced=True)


def test_no_zero_columns():
    for d in (builders.hopf(pointed=True), builders.trefoil(pointed=True),
              from_braid("s1 s2^-1 s1^-1 s2", 3).pointed()):
        assert not build_complex(d).has_zero_column()
        assert not build_complex(d, reduced=True).has_zero_column()


def test_dims_by_circle_count():
    d = builders.trefoil()
    cx = build_complex(d)
    n_minus = d.n_minus
    for deg, dim in cx.group_dims().items():
        total = 0
        for u_int in range(1 << d.n_crossings):
            u = tuple((u_int >> i) & 1 for i in range(d.n_crossings))
            if sum(u) - n_minus == deg:
                total += 2 ** d.resolve(u).n_circles
        assert total == dim


def test_reduced_halves_every_group():
    for d in (builders.trefoil(pointed=True), builders.torus_link(4, pointed=True),
              from_braid("s1 s2^-1 s1^-1 s2", 3).pointed()):
        unred = build_complex(d).group_dims()
        red = build_complex(d, reduced=True).group_dims()
        assert unred == {deg: 2 * dim for deg, dim in red.items()}


def test_shift_flag():
    d = from_braid("s1^-1 s1^-1", 2)
    raw = build_complex(d)
    shifted = build_complex(d, shift_nminus_up=True)
    assert sorted(raw.group_dims()) == [-2, -1, 0]
    assert sorted(shifted.group_dims()) == [0, 1, 2]


def test_dual_is_involution():
    cx = build_complex(builders.hopf(pointed=True), reduced=True)
    dd = dual_complex(dual_complex(cx))
    assert dd.group_dims() == cx.group_dims()
    for deg in cx.degrees():
        assert dd.differential(deg) == cx.differential(deg)
    assert dual_complex(cx).group_dims() == cx.group_dims()


def test_mirror_matches_dual_on_fixtures():
    for d in (builders.hopf(), builders.trefoil(),
              from_braid("s1 s2^-1 s1^-1 s2", 3)):
        assert mirror_matches_dual(d)
        assert mirror_matches_dual(d.pointed(), reduced=True)


def test_reduction_iso_relabels_by_sign_product():
    # a three-circle resolution with labels minus, plus on the unmarked
    # circles and zero merges maps the marked circle to the product sign
    d = builders.unlink(3).pointed(0)
    iso = reduction_iso(d)
    red = iso.domain
    block = iso.blocks[0]
    labels = {b: i for i, b in enumerate(iso.codomain.groups[0])}
    for col, (copy, elt) in enumerate(red.groups[0]):
        target_rows = block.column_vector(col).support
        assert len(target_rows) == 1
        row = target_rows[0][0]
        image = iso.codomain.groups[0][row]
        minus_count = sum(1 for s in elt.labels[1:] if s == MINUS)
        sign_plus = (minus_count + copy) % 2 == 0
        assert image.labels[0] == (PLUS if sign_plus else MINUS)
        assert image.labels[1:] == elt.labels[1:]


def test_reduction_iso_is_bijection_and_chain_map():
    for d in (builders.unknot(pointed=True), builders.hopf(pointed=True),
              builders.trefoil(pointed=True),
              from_braid("s1 s2^-1 s1^-1 s2", 3).pointed()):
        iso = reduction_iso(d)
        assert iso.commutes()
        for deg, block in iso.blocks.items():
            rows = set()
            for j in range(block.cols):
                sup = block.column_vector(j).support
                assert len(sup) == 1
                rows.add(sup[0][0])
            assert len(rows) == block.cols == block.rows


def test_random_braid_closures_build_clean():
    # differential squares to zero at build time; the plus/minus basis never
    # kills a basis vector; reduction halves the groups
    words = ["s1 s2 s1", "s2^-1 s1 s2^-1", "s1 s1 s2^-1 s2^-1",
             "s2 s2 s1^-1 s2", "s1^-1 s2^-1 s1 s2 s1"]
    for word in words:
        d = from_braid(word, 3).pointed()
        unred = build_complex(d)
        red = build_complex(d, reduced=True)
        assert not unred.has_zero_column()
        assert not red.has_zero_column()
        assert unred.group_dims() == {deg: 2 * dim
                                      for deg, dim in red.group_dims().items()}


def test_homology_invariant_across_reidemeister_fixtures():
    # kinked unknots, the slide chain, and the braid pair all have the
    # homology of their underlying links at matching raw degrees
    groups = [
        [builders.unknot_with_kinks(1, 0), builders.unknot_with_kinks(0, 1),
         builders.unknot_with_kinks(2, 1)],
        [from_braid("s1", 3), from_braid("s2 s1 s2^-1", 3),
         from_braid("s1^-1 s2 s1", 3)],
        [from_braid("s2^-1 s1^-1 s2 s2", 3), from_braid("s1 s2^-1 s1^-1 s2", 3)],
    ]
    for family in groups:
        dims = [
            {deg: h for deg, h in homology_dims(build_complex(d)).items() if h}
            for d in family]
        assert all(h == dims[0] for h in dims[1:])
