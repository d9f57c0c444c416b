"""Annular Khovanov complexes at a fixed annular degree.

Essential circles (odd number of ray crossings) carry labels v-/v+ of
annular degree -1/+1; trivial circles keep the plus/minus labels.  Only the
annular-degree-preserving part of each saddle map is kept, so the fixed
degree subspace is a complex on its own:

  merge  trivial+trivial   -> multiply labels
         essential+trivial -> absorb the trivial circle
         essential pair    -> equal labels die, opposite labels emit both
                              trivial labels
  split  trivial           -> comultiply
         essential         -> keep the essential label, emit both trivial
                              labels on the circle that splits off
         trivial -> ess+ess -> emit v+v- and v-v+ (input label forgotten)

Circle order inside a vertex: essential circles first, both classes sorted
by smallest arc id.  For a (1,1)-tangle closure whose ray arc is also the
basepoint this makes the fixed-degree bases index-identical to the reduced
ones, so the closure isomorphism check is literal matrix equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .diagram import LinkDiagram, classify_edge
from .errors import NotAnnular, Unsupported
from .gflinear import GFMatrix
from .khovanov import ChainComplex, build_complex
from .distance import (SUPPORT_GROWTH, CodeReport, min_weight_nontrivial,
                       homology_dims)
from . import builders

V_MINUS, V_PLUS = 0, 1


@dataclass(frozen=True)
class AnnularBasisElement:
    vertex: tuple[int, ...]
    labels: tuple  # essential labels first ("v-"/"v+"), then trivial (0/1)

    def adeg(self) -> int:
        return (sum(1 for s in self.labels if s == "v+")
                - sum(1 for s in self.labels if s == "v-"))


class _AnnularVertex:
    __slots__ = ("resolution", "essential", "trivial", "epos", "tpos",
                 "ebits_list", "ebits_index", "offset", "degree")

    def __init__(self, resolution, adeg: int, n_minus: int):
        self.resolution = resolution
        flags = resolution.essential_flags
        self.essential = [i for i, f in enumerate(flags) if f]
        self.trivial = [i for i, f in enumerate(flags) if not f]
        self.epos = {c: p for p, c in enumerate(self.essential)}
        self.tpos = {c: p for p, c in enumerate(self.trivial)}
        e = len(self.essential)
        self.ebits_list = []
        if (adeg + e) % 2 == 0 and -e <= adeg <= e:
            plus = (adeg + e) // 2
            for pos in combinations(range(e), plus):
                bits = 0
                for p in pos:
                    bits |= 1 << p
                self.ebits_list.append(bits)
            self.ebits_list.sort()
        self.ebits_index = {b: i for i, b in enumerate(self.ebits_list)}
        self.degree = sum(resolution.vertex) - n_minus
        self.offset = 0

    def block_dim(self) -> int:
        return len(self.ebits_list) << len(self.trivial)

    def index_of(self, ebits: int, tbits: int) -> int:
        return (self.ebits_index[ebits] << len(self.trivial)) + tbits


def build_annular_complex(diagram: LinkDiagram, adeg: int) -> ChainComplex:
    """Subcomplex of the annular complex at one annular degree."""
    if not diagram.is_annular:
        raise NotAnnular("diagram carries no ray counts")
    n = diagram.n_crossings
    n_minus = diagram.n_minus

    vdata: dict[int, _AnnularVertex] = {}
    for u_int in range(1 << n):
        u = tuple((u_int >> i) & 1 for i in range(n))
        vdata[u_int] = _AnnularVertex(diagram.resolve(u), adeg, n_minus)

    groups: dict[int, list[AnnularBasisElement]] = {}
    for u_int in sorted(vdata):
        vd = vdata[u_int]
        deg = vd.degree
        basis = groups.setdefault(deg, [])
        vd.offset = len(basis)
        tr = len(vd.trivial)
        for ebits in vd.ebits_list:
            for tbits in range(1 << tr):
                labels = tuple("v+" if (ebits >> p) & 1 else "v-"
                               for p in range(len(vd.essential)))
                labels += tuple((tbits >> p) & 1 for p in range(tr))
                basis.append(AnnularBasisElement(vd.resolution.vertex, labels))

    cols: dict[int, list] = {d: [0] * len(b) for d, b in groups.items()}
    for u_int in sorted(vdata):
        vd = vdata[u_int]
        if not vd.ebits_list:
            continue
        deg = vd.degree
        for i in range(n):
            if (u_int >> i) & 1:
                continue
            wd = vdata[u_int | (1 << i)]
            edge = classify_edge(diagram, vd.resolution, wd.resolution, i)
            eflags_u = vd.resolution.essential_flags
            eflags_w = wd.resolution.essential_flags
            for ebits in vd.ebits_list:
                for tbits in range(1 << len(vd.trivial)):
                    col = vd.offset + vd.index_of(ebits, tbits)
                    for t_ebits, t_tbits in _edge_terms(
                            edge, vd, wd, eflags_u, eflags_w, ebits, tbits):
                        row = wd.offset + wd.index_of(t_ebits, t_tbits)
                        cols[deg][col] ^= 1 << row

    diffs = {}
    for deg, data in cols.items():
        rows = len(groups.get(deg + 1, ()))
        if rows:
            diffs[deg] = GFMatrix(2, rows, len(groups[deg]), data)
    cx = ChainComplex(2, +1, groups, diffs,
                      provenance=f"annular adeg={adeg} {diagram.name}")
    cx.validate()
    return cx


def _edge_terms(edge, vd, wd, eflags_u, eflags_w, ebits, tbits):
    """Target (ebits, tbits) pairs for one basis element along one edge."""
    c_ebits = 0
    c_tbits = 0
    for c, p in vd.epos.items():
        tgt = edge.carry.get(c)
        if tgt is not None and (ebits >> p) & 1:
            c_ebits |= 1 << wd.epos[tgt]
    for c, p in vd.tpos.items():
        tgt = edge.carry.get(c)
        if tgt is not None and (tbits >> p) & 1:
            c_tbits |= 1 << wd.tpos[tgt]

    if edge.kind == "merge":
        c1, c2, tgt = edge.circles
        f1, f2 = eflags_u[c1], eflags_u[c2]
        if f1 and f2:
            b1 = (ebits >> vd.epos[c1]) & 1
            b2 = (ebits >> vd.epos[c2]) & 1
            if b1 == b2:
                return []  # equal essential labels die under the merge
            p = wd.tpos[tgt]
            return [(c_ebits, c_tbits), (c_ebits, c_tbits | (1 << p))]
        if f1 or f2:
            ess = c1 if f1 else c2
            b = (ebits >> vd.epos[ess]) & 1
            return [(c_ebits | (b << wd.epos[tgt]), c_tbits)]
        b = ((tbits >> vd.tpos[c1]) & 1) ^ ((tbits >> vd.tpos[c2]) & 1)
        return [(c_ebits, c_tbits | (b << wd.tpos[tgt]))]

    src, t1, t2 = edge.circles
    f_src = eflags_u[src]
    f1, f2 = eflags_w[t1], eflags_w[t2]
    if f_src:
        ess, triv = (t1, t2) if f1 else (t2, t1)
        b = (ebits >> vd.epos[src]) & 1
        base = c_ebits | (b << wd.epos[ess])
        p = wd.tpos[triv]
        return [(base, c_tbits), (base, c_tbits | (1 << p))]
    if f1 and f2:
        p1, p2 = wd.epos[t1], wd.epos[t2]
        return [(c_ebits | (1 << p1), c_tbits), (c_ebits | (1 << p2), c_tbits)]
    b = (tbits >> vd.tpos[src]) & 1
    p1, p2 = wd.tpos[t1], wd.tpos[t2]
    return [(c_ebits, c_tbits | ((b ^ 1) << p2)),
            (c_ebits, c_tbits | (1 << p1) | (b << p2))]


# -- checks and families -------------------------------------------------------


def tangle_closure_iso_check(fixture: LinkDiagram) -> dict:
    """A (1,1)-tangle closure fixture carries both the ray data and the
    basepoint on the closure arc; its fixed-degree annular complexes at +1
    and -1 must equal the reduced complex literally."""
    if fixture.basepoint is None or not fixture.is_annular:
        raise Unsupported("fixture needs both a basepoint and ray counts")
    reduced = build_complex(fixture, reduced=True)
    report = {"fixture": fixture.name, "ok": True}
    for k in (+1, -1):
        annular = build_annular_complex(fixture, k)
        dims_ok = annular.group_dims() == reduced.group_dims()
        mats_ok = all(
            annular.differential(d) == reduced.differential(d)
            for d in reduced.degrees())
        zero_ok = not annular.has_zero_column()
        report[f"adeg{k:+d}"] = {"dims_equal": dims_ok,
                                 "differentials_equal": mats_ok,
                                 "no_zero_column": zero_ok}
        report["ok"] = report["ok"] and dims_ok and mats_ok and zero_ok
    return report


def annular_unlink_family(ell: int, budget_ms=None,
                          method: str = SUPPORT_GROWTH) -> CodeReport:
    """Code report for the concentric-unlink family at its middle degree,
    fixing annular degree 0 for even ell and +1 for odd ell."""
    if not 1 <= ell <= 5:
        raise Unsupported("family computed for 1 <= ell <= 5")
    adeg = 0 if ell % 2 == 0 else 1
    diagram = builders.annular_unlink(ell)
    cx = build_annular_complex(diagram, adeg)
    degree = 0
    primal = min_weight_nontrivial(cx, degree, method, budget_ms)
    dual = min_weight_nontrivial(cx.dual(), degree, method, budget_ms)
    k = homology_dims(cx).get(degree, 0)

    def as_int(x):
        return None if x == math.inf else int(x)

    d = None
    if min(primal.d_hat, dual.d_hat) != math.inf:
        d = int(min(primal.d_hat, dual.d_hat))
    return CodeReport(
        degree=degree, n=cx.dim(degree), k=k,
        d_hat=as_int(primal.d_hat), d_hat_dual=as_int(dual.d_hat), d=d,
        witness=primal.witness, method=method,
        exact=primal.exact and dual.exact,
        budget={"budget_ms": budget_ms, "adeg": adeg,
                "lower_bound": min(primal.lower_bound, dual.lower_bound)})
