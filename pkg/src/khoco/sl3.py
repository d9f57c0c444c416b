"""GF(3) machinery: box basis, theta webs, foam evaluation, unknot codes.

The only webs that occur are disjoint unions of generalized theta webs
(ladder chains), and the only closed foams are chain spheres: a sphere cut
by parallel singular circles into zones, with one membrane disk per circle.
Such a foam evaluates by bursting the rightmost bubble repeatedly (the
bubble relations fix the coefficient and may drop dots on the zone to the
left) and finishing with the two-dotted-sphere rule.

Chain complexes of the kinked unknot diagrams are modelled on the ladder:
crossing c owns rung position c; smoothing a crossing removes its rung and
cuts the chain there, so the components at a cube vertex are the runs of
surviving rungs between smoothed positions.  Edge maps are computed
entrywise by closing the composite foam against reflected dual-basis caps:
the chosen bases pair off (up to sign) with the opposite basis, box j
against box 2-j and each dot against its complement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import Unsupported, UnsupportedFoam
from .gflinear import GFMatrix
from .khovanov import ChainComplex
from .distance import SUPPORT_GROWTH, homology_dims, min_weight_nontrivial
from .products import FamilyParams

B1, B2 = "B1", "B2"

# box polynomials: dot-count -> coefficient mod 3
_BOX_POLY = {
    0: ((0, 1),),
    1: ((0, 1), (1, 2)),
    2: ((0, 1), (1, 1), (2, 1)),
}

# bubble burst at the rightmost singular circle, keyed by
# (dots on the right zone, dots on the membrane) -> (coefficient, dots
# dropped onto the zone to the left); missing keys evaluate to zero.
_BURST = {
    (1, 0): (1, 0), (0, 1): (2, 0),
    (0, 2): (1, 1), (2, 0): (2, 1),
    (2, 1): (1, 2), (1, 2): (2, 2),
}


def box_mul(i: int, j: int) -> int:
    """Closure of the box basis under the algebra product."""
    return (i + j) % 3


def box_dual(i: int) -> tuple[int, int]:
    """Dual basis vector as (coefficient mod 3, box index): minus box 2-i."""
    return 2, (2 - i) % 3


@dataclass(frozen=True)
class ChainSphere:
    """One sphere with len(membranes) singular circles.

    zones[t] is the dot polynomial of the t-th zone (tuples of
    (dot count, coefficient)); membranes[t-1] is the dot count of the
    membrane at circle t.
    """
    zones: tuple
    membranes: tuple


@dataclass(frozen=True)
class ClosedThetaFoam:
    spheres: tuple


def sphere_foam(dots: int) -> ClosedThetaFoam:
    return ClosedThetaFoam((ChainSphere((((dots, 1),),), ()),))


def theta_foam(a: int, b: int, c: int) -> ClosedThetaFoam:
    return ClosedThetaFoam((ChainSphere((((a, 1),), ((b, 1),)), (c,)),))


def _eval_monomial(zone_dots: list[int], membranes) -> int:
    coeff = 1
    zones = list(zone_dots)
    for t in range(len(membranes), 0, -1):
        key = (zones[t], membranes[t - 1])
        hit = _BURST.get(key)
        if hit is None:
            return 0
        c, extra = hit
        coeff = (coeff * c) % 3
        zones[t - 1] += extra
        zones.pop()
    return (coeff * 2) % 3 if zones[0] == 2 else 0


def _eval_sphere(zones, membranes) -> int:
    total = 0
    for picks in product(*zones):
        coeff = 1
        dots = []
        for d, c in picks:
            dots.append(d)
            coeff = (coeff * c) % 3
        if coeff:
            total = (total + coeff * _eval_monomial(dots, membranes)) % 3
    return total


def evaluate_closed_foam(foam: ClosedThetaFoam) -> int:
    """Scalar in GF(3); multiplicative over disjoint union of spheres."""
    result = 1
    for sphere in foam.spheres:
        if len(sphere.zones) != len(sphere.membranes) + 1:
            raise UnsupportedFoam("zone count must exceed membrane count by one")
        for zone in sphere.zones:
            for d, _ in zone:
                if d < 0:
                    raise UnsupportedFoam("negative dot count")
        result = (result * _eval_sphere(sphere.zones, sphere.membranes)) % 3
    return result


# -- theta bases and pairing ---------------------------------------------------


@dataclass(frozen=True)
class ThetaBasisVector:
    basis_tag: str
    s: int
    box: int
    dots: tuple


def theta_basis(s: int, basis: str) -> list[ThetaBasisVector]:
    return [ThetaBasisVector(basis, s, box,
                             tuple((d >> t) & 1 for t in range(s)))
            for box in range(3) for d in range(1 << s)]


def _poly_shift(poly, extra: int):
    return tuple((d + extra, c) for d, c in poly)


def _pairing_value(s: int, cup_box: int, cup_dots: int, cup_basis: str,
                   cap_box: int, cap_dots: int) -> int:
    """Close a basis cup against a reflected cap of the opposite basis."""
    zones = [None] * (s + 1)
    membranes = [0] * s
    box_prod = []
    for da, ca in _BOX_POLY[cup_box]:
        for db, cb in _BOX_POLY[cap_box]:
            box_prod.append((da + db, (ca * cb) % 3))
    zones[0] = tuple(box_prod)
    if cup_basis == B1:
        # cup dots on zones, cap (B2) dots on membranes
        for t in range(1, s + 1):
            zones[t] = (((cup_dots >> (t - 1)) & 1, 1),)
            membranes[t - 1] = (cap_dots >> (t - 1)) & 1
    else:
        for t in range(1, s + 1):
            zones[t] = (((cap_dots >> (t - 1)) & 1, 1),)
            membranes[t - 1] = (cup_dots >> (t - 1)) & 1
    return _eval_sphere(zones, membranes)


def theta_pairing_matrix(s: int, cup_basis: str = B1) -> GFMatrix:
    """Gram matrix of one basis against reflected caps of the other; a
    signed permutation exactly when both families are bases."""
    if s > 8:
        raise Unsupported("pairing matrices computed for s <= 8")
    dim = 3 << s
    entries = []
    for i, cup in enumerate(theta_basis(s, cup_basis)):
        cup_bits = sum(b << t for t, b in enumerate(cup.dots))
        for j, cap in enumerate(theta_basis(s, B2 if cup_basis == B1 else B1)):
            cap_bits = sum(b << t for t, b in enumerate(cap.dots))
            v = _pairing_value(s, cup.box, cup_bits, cup_basis,
                               cap.box, cap_bits)
            if v:
                entries.append((j, i, v))
    return GFMatrix.from_entries(3, dim, dim, entries)


def is_signed_permutation(m: GFMatrix) -> bool:
    rows_seen = set()
    for j in range(m.cols):
        sup = m.column_vector(j).support
        if len(sup) != 1:
            return False
        rows_seen.add(sup[0][0])
    return len(rows_seen) == m.rows == m.cols


@lru_cache(maxsize=None)
def _norm(s: int, basis: str, box: int, dots: int) -> int:
    """Pairing of a basis element against its dual partner; always nonzero."""
    v = _pairing_value(s, box, dots, basis,
                       (2 - box) % 3, ((1 << s) - 1) ^ dots)
    if v == 0:
        raise AssertionError("dual partner pairing vanished")
    return v


def _dual_cap(s: int, box: int, dots: int) -> tuple[int, int]:
    return (2 - box) % 3, ((1 << s) - 1) ^ dots


# -- local saddle maps ----------------------------------------------------------


@lru_cache(maxsize=None)
def merge_map(a: int, b: int, basis: str):
    """Matrix of the zip of a circle chain pair Theta_a + Theta_b into
    Theta_{a+b+1}, the new rung landing between them."""
    s = a + b + 1
    p = a + 1
    table = {}
    for jA, jB in product(range(3), range(3)):
        for dA in range(1 << a):
            for dB in range(1 << b):
                outs = []
                for o in range(3):
                    for dO in range(1 << s):
                        cap_box, cap_dots = _dual_cap(s, o, dO)
                        zones = [None] * (s + 1)
                        membranes = [0] * s
                        z0 = []
                        for d1, c1 in _BOX_POLY[jA]:
                            for d2, c2 in _BOX_POLY[cap_box]:
                                z0.append((d1 + d2, (c1 * c2) % 3))
                        zones[0] = tuple(z0)
                        if basis == B1:
                            for t in range(1, a + 1):
                                zones[t] = (((dA >> (t - 1)) & 1, 1),)
                            zones[p] = _BOX_POLY[jB]
                            for m in range(1, b + 1):
                                zones[p + m] = (((dB >> (m - 1)) & 1, 1),)
                            for t in range(1, s + 1):
                                membranes[t - 1] = (cap_dots >> (t - 1)) & 1
                        else:
                            for t in range(1, s + 1):
                                cap_dot = (cap_dots >> (t - 1)) & 1
                                if t == p:
                                    zones[t] = _poly_shift(_BOX_POLY[jB], cap_dot)
                                else:
                                    zones[t] = ((cap_dot, 1),)
                                if t < p:
                                    membranes[t - 1] = (dA >> (t - 1)) & 1
                                elif t > p:
                                    membranes[t - 1] = (dB >> (t - p - 1)) & 1
                        val = _eval_sphere(tuple(zones), tuple(membranes))
                        if val:
                            coeff = (val * _norm(s, basis, o, dO)) % 3
                            outs.append(((o, dO), coeff))
                table[(jA, dA, jB, dB)] = outs
    return table


@lru_cache(maxsize=None)
def split_map(s: int, p: int, basis: str):
    """Matrix of the unzip of Theta_s at rung p into Theta_{p-1} + Theta_{s-p}."""
    a, b = p - 1, s - p
    table = {}
    for j in range(3):
        for d in range(1 << s):
            outs = []
            for jA, jB in product(range(3), range(3)):
                for dA in range(1 << a):
                    for dB in range(1 << b):
                        capA_box, capA_dots = _dual_cap(a, jA, dA)
                        capB_box, capB_dots = _dual_cap(b, jB, dB)
                        zones = [None] * (s + 1)
                        membranes = [0] * s
                        z0 = []
                        for d1, c1 in _BOX_POLY[j]:
                            for d2, c2 in _BOX_POLY[capA_box]:
                                z0.append((d1 + d2, (c1 * c2) % 3))
                        zones[0] = tuple(z0)
                        if basis == B1:
                            for t in range(1, s + 1):
                                cup_dot = (d >> (t - 1)) & 1
                                if t == p:
                                    zones[t] = _poly_shift(_BOX_POLY[capB_box], cup_dot)
                                else:
                                    zones[t] = ((cup_dot, 1),)
                                if t < p:
                                    membranes[t - 1] = (capA_dots >> (t - 1)) & 1
                                elif t > p:
                                    membranes[t - 1] = (capB_dots >> (t - p - 1)) & 1
                        else:
                            for t in range(1, s + 1):
                                membranes[t - 1] = (d >> (t - 1)) & 1
                                if t < p:
                                    zones[t] = (((capA_dots >> (t - 1)) & 1, 1),)
                                elif t == p:
                                    zones[t] = _BOX_POLY[capB_box]
                                else:
                                    zones[t] = (((capB_dots >> (t - p - 1)) & 1, 1),)
                        val = _eval_sphere(tuple(zones), tuple(membranes))
                        if val:
                            coeff = (val * _norm(a, basis, jA, dA)
                                     * _norm(b, basis, jB, dB)) % 3
                            outs.append(((jA, dA, jB, dB), coeff))
            table[(j, d)] = outs
    return table


# -- the kinked unknot complexes -------------------------------------------------


class _Sl3Vertex:
    __slots__ = ("blocks", "degree", "offset", "index", "labels")

    def __init__(self, n: int, k_pos: int, u: tuple[int, ...]):
        webbed = [c for c in range(1, n + 1)
                  if (u[c - 1] == 0) == (c <= k_pos)]
        smoothed = sorted(set(range(1, n + 1)) - set(webbed))
        cuts = [0] + smoothed + [n + 1]
        self.blocks = []
        for lo, hi in zip(cuts, cuts[1:]):
            self.blocks.append([c for c in webbed if lo < c < hi])
        self.degree = sum(u) - k_pos
        self.offset = 0
        ranges = [[(box, dots) for box in range(3)
                   for dots in range(1 << len(blk))] for blk in self.blocks]
        self.labels = [tuple(lab) for lab in product(*ranges)]
        self.index = {lab: i for i, lab in enumerate(self.labels)}


def build_sl3_complex(k: int, l: int, basis: str = B1) -> ChainComplex:
    """Total complex of the unknot diagram with k positive and l negative
    kinks, over GF(3), in the chosen theta basis."""
    n = k + l
    if n > 4:
        raise Unsupported("sl3 complexes built for k + l <= 4")
    if basis not in (B1, B2):
        raise Unsupported("basis must be B1 or B2")

    vdata = {}
    for u_int in range(1 << n):
        u = tuple((u_int >> i) & 1 for i in range(n))
        vdata[u_int] = _Sl3Vertex(n, k, u)

    groups: dict[int, list] = {}
    for u_int in sorted(vdata):
        vd = vdata[u_int]
        basis_list = groups.setdefault(vd.degree, [])
        vd.offset = len(basis_list)
        u = tuple((u_int >> i) & 1 for i in range(n))
        for lab in vd.labels:
            basis_list.append((u, lab))

    entries: dict[int, list] = {d: [] for d in groups}
    for u_int in sorted(vdata):
        vd = vdata[u_int]
        deg = vd.degree
        for c in range(1, n + 1):
            if (u_int >> (c - 1)) & 1:
                continue
            v_int = u_int | (1 << (c - 1))
            wd = vdata[v_int]
            sign = 2 if bin(u_int & ((1 << (c - 1)) - 1)).count("1") % 2 else 1
            positive = c <= k
            if positive:
                bi = next(i for i, blk in enumerate(vd.blocks) if c in blk)
                blk = vd.blocks[bi]
                pos = blk.index(c) + 1
                local = split_map(len(blk), pos, basis)
                for col_i, lab in enumerate(vd.labels):
                    j, d = lab[bi]
                    for (jA, dA, jB, dB), coeff in local[(j, d)]:
                        new_lab = lab[:bi] + ((jA, dA), (jB, dB)) + lab[bi + 1:]
                        row = wd.offset + wd.index[new_lab]
                        entries[deg].append(
                            (row, vd.offset + col_i, coeff * sign))
            else:
                ti = sorted(c2 for c2 in range(1, n + 1)
                            if ((u_int >> (c2 - 1)) & 1) == (1 if c2 <= k else 0)
                            ).index(c)
                blkA, blkB = vd.blocks[ti], vd.blocks[ti + 1]
                local = merge_map(len(blkA), len(blkB), basis)
                for col_i, lab in enumerate(vd.labels):
                    jA, dA = lab[ti]
                    jB, dB = lab[ti + 1]
                    for (o, dO), coeff in local[(jA, dA, jB, dB)]:
                        new_lab = lab[:ti] + ((o, dO),) + lab[ti + 2:]
                        row = wd.offset + wd.index[new_lab]
                        entries[deg].append(
                            (row, vd.offset + col_i, coeff * sign))

    diffs = {}
    for deg, ent in entries.items():
        rows = len(groups.get(deg + 1, ()))
        if rows and ent:
            diffs[deg] = GFMatrix.from_entries(3, rows, len(groups[deg]), ent)
    cx = ChainComplex(3, +1, groups, diffs,
                      provenance=f"sl3 D_{{{k},{l}}} basis {basis}")
    cx.validate()
    return cx


# -- homology generators of the negative-kink diagrams ---------------------------


@dataclass
class BoxVector:
    """Element of the (l+1)-fold box tensor power, with dense coefficients
    indexed by base-3 encoded box sequences."""
    ell: int
    coeffs: np.ndarray

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.coeffs % 3))

    def support(self) -> dict[tuple, int]:
        out = {}
        for idx in np.nonzero(self.coeffs % 3)[0]:
            seq = []
            x = int(idx)
            for _ in range(self.ell + 1):
                seq.append(x % 3)
                x //= 3
            out[tuple(seq)] = int(self.coeffs[idx] % 3)
        return out


# per-dot-power box coordinates: X^e = sum_b coeff * box_b
_X_POWER_BOX = {0: (1, 0, 0), 1: (1, 2, 0), 2: (1, 1, 1)}


def expand_F(i: int, ell: int) -> BoxVector:
    """Box-basis expansion of the i-th homology generator of the all-negative
    unknot diagram: the sum of all slotwise dot powers of total degree
    2*ell + i, expanded by direct tensor convolution."""
    if not 0 <= i <= 2:
        raise Unsupported("generator index must be 0, 1 or 2")
    if ell > 12:
        raise Unsupported("expansion computed for ell <= 12")
    slots = ell + 1
    max_deg = 2 * slots
    state = np.zeros((1, max_deg + 1), dtype=np.int64)
    state[0, 0] = 1
    size = 1
    for m in range(slots):
        nxt = np.zeros((size * 3, max_deg + 1), dtype=np.int64)
        for e in range(3):
            row = _X_POWER_BOX[e]
            for b in range(3):
                if row[b]:
                    nxt[b * size:(b + 1) * size, e:] += row[b] * state[:, :max_deg + 1 - e]
        state = nxt % 3
        size *= 3
    return BoxVector(ell, state[:, 2 * ell + i] % 3)


def coefficient_formula(i: int, n0: int, n1: int) -> int:
    """Closed form for the box coefficient of a sequence with n0 zeros and
    n1 ones."""
    if i == 0:
        return (n0 + math.comb(n0, 2) + math.comb(n1, 2) - n0 * n1) % 3
    if i == 1:
        return (n0 - n1) % 3
    return 1


def _residue_counts(slots: int) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for n0 in range(slots + 1):
        for n1 in range(slots + 1 - n0):
            key = (n0 % 3, n1 % 3)
            counts[key] = counts.get(key, 0) + \
                math.factorial(slots) // (math.factorial(n0) * math.factorial(n1)
                                          * math.factorial(slots - n0 - n1))
    return counts


def min_combo_weight(ell: int) -> int:
    """Exact minimum weight over the 26 nonzero combinations of the three
    homology generators, via the residue-class counting of coefficients."""
    if ell > 12:
        raise Unsupported("computed for ell <= 12")
    counts = _residue_counts(ell + 1)
    best = None
    for alpha, beta, gamma in product(range(3), repeat=3):
        if (alpha, beta, gamma) == (0, 0, 0):
            continue
        weight = 0
        for (r0, r1), cnt in counts.items():
            c = (alpha * coefficient_formula(0, r0, r1)
                 + beta * (r0 - r1) + gamma) % 3
            if c:
                weight += cnt
        if best is None or weight < best:
            best = weight
    return best


def sl3_n_formula(ell: int) -> int:
    return sum(math.comb(ell, k) ** 2 * 3 ** (2 * k + 1) * 2 ** (2 * ell - 2 * k)
               for k in range(ell + 1))


def sl3_unknot_params(ell: int, tier: int = 1,
                      budget_ms=None) -> tuple[FamilyParams, dict]:
    """Parameters of the ell-th unknot code; tier 2 also proves the distance
    by search on the built complexes in both bases."""
    if tier == 1:
        if ell > 12:
            raise Unsupported("tier 1 closed forms computed for ell <= 12")
        params = FamilyParams("sl3-unknot", (ell,), sl3_n_formula(ell), 3, 3 ** ell)
        detail = {"min_combo_weight": min_combo_weight(ell)}
        return params, detail
    if tier != 2:
        raise Unsupported("tier must be 1 or 2")
    if ell > 2:
        raise Unsupported("tier 2 builds full complexes only for ell <= 2")
    if budget_ms is None and ell >= 2:
        # the distance-9 certification exceeds desk scale; keep the search
        # bounded so the report comes back with exact=False instead
        import os
        budget_ms = float(os.environ.get("KHOCO_BUDGET_MS", 600000))
    detail: dict = {"bases": {}}
    d_by_basis = {}
    witness = None
    for basis in (B1, B2):
        cx = build_sl3_complex(ell, ell, basis)
        hom = homology_dims(cx)
        found = min_weight_nontrivial(cx, 0, SUPPORT_GROWTH, budget_ms)
        d_by_basis[basis] = found.d_hat
        if basis == B1:
            witness = found.witness
        detail["bases"][basis] = {
            "homology": {d: h for d, h in hom.items() if h},
            "d_hat": None if found.d_hat == math.inf else int(found.d_hat),
            "exact": found.exact,
        }
        detail.setdefault("n", cx.dim(0))
    # the diagram equals its own mirror; the dual distance in one basis is
    # the distance in the other
    d = min(d_by_basis.values())
    params = FamilyParams("sl3-unknot", (ell,), detail["n"], 3,
                          None if d == math.inf else int(d))
    detail["witness"] = witness
    return params, detail


def ri_invariance_check(k: int, l: int, basis: str = B1,
                        budget_ms=None) -> dict:
    """Compare the degree-zero distance of the (k, l)-kink diagram with the
    kink-free reference D_{0,l}; a positive kink is one Reidemeister I twist."""
    cx = build_sl3_complex(k, l, basis)
    ref = build_sl3_complex(0, l, basis)
    got = min_weight_nontrivial(cx, 0, SUPPORT_GROWTH, budget_ms)
    want = min_weight_nontrivial(ref, 0, SUPPORT_GROWTH, budget_ms)
    return {"k": k, "l": l, "basis": basis,
            "d_hat": None if got.d_hat == math.inf else int(got.d_hat),
            "reference": None if want.d_hat == math.inf else int(want.d_hat),
            "exact": got.exact and want.exact,
            "ok": (not (got.exact and want.exact)) or got.d_hat == want.d_hat}
