"""Khovanov chain complexes over GF(2) in the non-homogeneous plus/minus basis.

Circle labels are stored as bits: 0 is the minus label (the algebra element
1), 1 is the plus label (1+X).  Merging two circles XORs their bits; a split
emits the two label pairs (0, 1-b) and (1, b).  In the reduced complex the
marked circle carries the fixed label X and no bit; merging into it forgets
the other circle's bit and splitting it off emits both labels on the new
circle.  No basis vector is ever sent to zero, which is the point of this
basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import LinkDiagram, Resolution, classify_edge, mirror
from .errors import NoBasepoint
from .gflinear import GFMatrix

MINUS, PLUS = 0, 1


def multiply_labels(b1: int, b2: int) -> int:
    """Merge rule: opposite labels give plus, equal labels give minus."""
    return b1 ^ b2


def comultiply_label(b: int) -> list[tuple[int, int]]:
    """Split rule: label b becomes (minus, flip b) + (plus, b)."""
    return [(MINUS, b ^ 1), (PLUS, b)]


@dataclass(frozen=True)
class BasisElement:
    vertex: tuple[int, ...]
    labels: tuple  # one symbol per labeled circle, in circle order

    def __repr__(self):
        v = "".join(str(b) for b in self.vertex)
        lab = "".join(str(s) for s in self.labels)
        return f"<u={v}|{lab}>"


class ChainComplex:
    """Graded based GF(q) spaces with differentials of direction epsilon."""

    def __init__(self, q: int, epsilon: int, groups: dict,
                 differentials: dict, provenance: str = ""):
        self.q = q
        self.epsilon = epsilon
        self.groups = groups              # degree -> list of basis labels
        self.differentials = differentials  # degree -> GFMatrix
        self.provenance = provenance

    def degrees(self) -> list[int]:
        return sorted(self.groups)

    def dim(self, degree: int) -> int:
        g = self.groups.get(degree)
        return 0 if g is None else len(g)

    def group_dims(self) -> dict[int, int]:
        return {d: len(g) for d, g in sorted(self.groups.items())}

    def differential(self, degree: int) -> GFMatrix:
        m = self.differentials.get(degree)
        if m is None:
            m = GFMatrix(self.q, self.dim(degree + self.epsilon), self.dim(degree))
        return m

    def validate(self):
        """Assert that consecutive differentials compose to zero."""
        for d in self.degrees():
            first = self.differential(d)
            second = self.differential(d + self.epsilon)
            if first.cols and second.rows:
                comp = second.compose(first)
                if not comp.is_zero():
                    raise AssertionError(
                        f"d^2 != 0 between degrees {d} and {d + 2 * self.epsilon} "
                        f"({self.provenance})")
        return self

    def has_zero_column(self) -> bool:
        for d in self.degrees():
            m = self.differential(d)
            if m.rows == 0:
                continue
            zero = 0 if self.q == 2 else (0, 0)
            for j in range(m.cols):
                if m.column(j) == zero:
                    return True
        return False

    def shifted(self, offset: int) -> "ChainComplex":
        return ChainComplex(
            self.q, self.epsilon,
            {d + offset: g for d, g in self.groups.items()},
            {d + offset: m for d, m in self.differentials.items()},
            provenance=f"{self.provenance} shifted by {offset}")

    def dual(self) -> "ChainComplex":
        """Transpose all differentials; the dual basis keeps the indexing."""
        diffs = {}
        for d, m in self.differentials.items():
            # map (C^{d+eps})* -> (C^d)*, recorded at its source degree
            diffs[d + self.epsilon] = m.transpose()
        return ChainComplex(self.q, -self.epsilon, dict(self.groups), diffs,
                            provenance=f"dual({self.provenance})")

    def to_debug_json(self) -> dict:
        return {
            "field": self.q,
            "epsilon": self.epsilon,
            "dims": {str(d): len(g) for d, g in sorted(self.groups.items())},
            "differentials": {
                str(d): {"rows": m.rows, "cols": m.cols,
                         "entries": m.entries()}
                for d, m in sorted(self.differentials.items())},
        }


def dual_complex(complex_: ChainComplex) -> ChainComplex:
    return complex_.dual()


@dataclass
class ChainMap:
    domain: ChainComplex
    codomain: ChainComplex
    blocks: dict  # degree -> GFMatrix

    def commutes(self) -> bool:
        eps = self.domain.epsilon
        if eps != self.codomain.epsilon:
            return False
        for d in self.domain.degrees():
            f_here = self.blocks.get(d)
            f_next = self.blocks.get(d + eps)
            if f_here is None:
                continue
            left = self.codomain.differential(d).compose(f_here)
            if f_next is None:
                f_next = GFMatrix(self.domain.q,
                                  self.codomain.dim(d + eps),
                                  self.domain.dim(d + eps))
            right = f_next.compose(self.domain.differential(d))
            lhs = {(i, j, v) for i, j, v in left.entries()}
            if lhs != {(i, j, v) for i, j, v in right.entries()}:
                return False
        return True


class _VertexData:
    __slots__ = ("resolution", "labeled", "bitpos", "offset", "n_bits", "degree")

    def __init__(self, resolution: Resolution, reduced: bool, n_minus: int):
        self.resolution = resolution
        marked = resolution.marked_circle
        if reduced:
            self.labeled = [i for i in range(resolution.n_circles) if i != marked]
        else:
            self.labeled = list(range(resolution.n_circles))
        self.bitpos = {c: p for p, c in enumerate(self.labeled)}
        self.n_bits = len(self.labeled)
        self.degree = sum(resolution.vertex) - n_minus
        self.offset = 0


def build_complex(diagram: LinkDiagram, reduced: bool = False,
                  shift_nminus_up: bool = False) -> ChainComplex:
    """Khovanov complex of an oriented diagram over GF(2).

    Degrees run over |u| - n_minus unless shift_nminus_up re-indexes them to
    0..n.  The reduced complex requires a basepoint and halves every group.
    """
    if reduced and diagram.basepoint is None:
        raise NoBasepoint("reduced complex needs a pointed diagram")
    n = diagram.n_crossings
    n_minus = diagram.n_minus

    vdata: dict[int, _VertexData] = {}
    for u_int in range(1 << n):
        u = tuple((u_int >> i) & 1 for i in range(n))
        vdata[u_int] = _VertexData(diagram.resolve(u), reduced, n_minus)

    # group bases: vertices in ascending integer order within each degree
    groups: dict[int, list[BasisElement]] = {}
    order: dict[int, list[int]] = {}
    for u_int in sorted(vdata):
        vd = vdata[u_int]
        order.setdefault(vd.degree, []).append(u_int)
    for deg, verts in order.items():
        basis = []
        for u_int in verts:
            vd = vdata[u_int]
            vd.offset = len(basis)
            for bits in range(1 << vd.n_bits):
                labels = tuple((bits >> p) & 1 for p in range(vd.n_bits))
                if reduced:
                    labels = ("X",) + labels
                basis.append(BasisElement(vd.resolution.vertex, labels))
        groups[deg] = basis

    # differentials
    cols: dict[int, list[int]] = {
        deg: [0] * len(basis) for deg, basis in groups.items()}
    for u_int in sorted(vdata):
        vd = vdata[u_int]
        deg = vd.degree
        for i in range(n):
            if (u_int >> i) & 1:
                continue
            v_int = u_int | (1 << i)
            wd = vdata[v_int]
            edge = classify_edge(diagram, vd.resolution, wd.resolution, i)
            marked_u = vd.resolution.marked_circle
            marked_v = wd.resolution.marked_circle
            for bits in range(1 << vd.n_bits):
                col = vd.offset + bits
                carried = 0
                for c, p in vd.bitpos.items():
                    if c in edge.carry and edge.carry[c] in wd.bitpos:
                        if (bits >> p) & 1:
                            carried |= 1 << wd.bitpos[edge.carry[c]]
                terms = []
                if edge.kind == "merge":
                    c1, c2, tgt = edge.circles
                    if reduced and marked_u in (c1, c2):
                        terms.append(carried)  # X times anything is X
                    else:
                        b = ((bits >> vd.bitpos[c1]) & 1) ^ ((bits >> vd.bitpos[c2]) & 1)
                        terms.append(carried | (b << wd.bitpos[tgt]))
                else:
                    src, t1, t2 = edge.circles
                    if reduced and src == marked_u:
                        new = t1 if t1 != marked_v else t2
                        pos = wd.bitpos[new]
                        terms.append(carried)             # new circle minus
                        terms.append(carried | (1 << pos))  # new circle plus
                    else:
                        b = (bits >> vd.bitpos[src]) & 1
                        p1, p2 = wd.bitpos[t1], wd.bitpos[t2]
                        for lab1, lab2 in comultiply_label(b):
                            terms.append(carried | (lab1 << p1) | (lab2 << p2))
                for t in terms:
                    cols[deg][col] ^= 1 << (wd.offset + t)

    differentials = {}
    for deg, data in cols.items():
        rows = len(groups.get(deg + 1, ()))
        if rows:
            differentials[deg] = GFMatrix(2, rows, len(groups[deg]), data)
    mode = "reduced" if reduced else "unreduced"
    cx = ChainComplex(2, +1, groups, differentials,
                      provenance=f"khovanov {mode} {diagram.name}")
    cx.validate()
    if shift_nminus_up:
        cx = cx.shifted(n_minus)
    return cx


def reduction_iso(diagram: LinkDiagram) -> ChainMap:
    """The weight-preserving isomorphism from two reduced copies onto the
    unreduced complex: the first copy relabels the marked circle by the sign
    product (with merge-count parity), the second by its opposite."""
    if diagram.basepoint is None:
        raise NoBasepoint("reduction iso needs a pointed diagram")
    red = build_complex(diagram, reduced=True)
    unred = build_complex(diagram, reduced=False)
    n = diagram.n_crossings
    n_minus = diagram.n_minus

    # merge-count parity of any path from the all-zero vertex
    base_circles = diagram.resolve((0,) * n).n_circles

    blocks = {}
    domain_groups = {}
    domain_diffs = {}
    for deg in red.degrees():
        red_basis = red.groups[deg]
        m = len(red_basis)
        domain_groups[deg] = [(0, b) for b in red_basis] + [(1, b) for b in red_basis]
        rows = len(unred.groups[deg])
        index_unred = {b: i for i, b in enumerate(unred.groups[deg])}
        columns = []
        for copy in (0, 1):
            for b in red_basis:
                u = b.vertex
                circles = diagram.resolve(u)
                marked = circles.marked_circle
                weight = sum(u)
                merges = (weight - (circles.n_circles - base_circles)) // 2
                minus_count = sum(1 for s in b.labels[1:] if s == 0)
                sign_plus = (merges + minus_count + copy) % 2 == 0
                labels = []
                k = 1
                for c in range(circles.n_circles):
                    if c == marked:
                        labels.append(PLUS if sign_plus else MINUS)
                    else:
                        labels.append(b.labels[k])
                        k += 1
                target = BasisElement(u, tuple(labels))
                columns.append(1 << index_unred[target])
        blocks[deg] = GFMatrix(2, rows, 2 * m, columns)
    for deg in red.degrees():
        m = red.differential(deg)
        rows2, cols2 = 2 * m.rows, 2 * m.cols
        data = [m.column(j) for j in range(m.cols)]
        data += [c << m.rows for c in data[:m.cols]]
        domain_diffs[deg] = GFMatrix(2, rows2, cols2, data)
    domain = ChainComplex(2, +1, domain_groups, domain_diffs,
                          provenance=f"reduced^2 {diagram.name}")
    return ChainMap(domain, unred, blocks)


def mirror_matches_dual(diagram: LinkDiagram, reduced: bool = False) -> bool:
    """Check the mirror complex equals the degree-negated dual complex under
    the label swap, entry by entry."""
    c = build_complex(diagram, reduced=reduced)
    cm = build_complex(mirror(diagram), reduced=reduced)

    def partner(b: BasisElement) -> BasisElement:
        vertex = tuple(1 - x for x in b.vertex)
        labels = tuple(s if s == "X" else s ^ 1 for s in b.labels)
        return BasisElement(vertex, labels)

    for deg in cm.degrees():
        src = cm.groups[deg]
        tgt = c.groups.get(-deg)
        if tgt is None or len(tgt) != len(src):
            return False
        index_c = {b: i for i, b in enumerate(tgt)}
        maps_to = [index_c.get(partner(b)) for b in src]
        if any(i is None for i in maps_to):
            return False
        # mirror differential at deg must transpose to c's at -deg-1
        m_mirror = cm.differential(deg)
        m_c = c.differential(-deg - 1)
        nxt = cm.groups.get(deg + 1)
        if m_mirror.rows == 0:
            continue
        index_cn = {b: i for i, b in enumerate(c.groups.get(-deg - 1, ()))}
        rows_to = [index_cn.get(partner(b)) for b in nxt]
        if any(i is None for i in rows_to):
            return False
        want = {(i, j, v) for i, j, v in m_c.entries()}
        got = set()
        for i, j, v in m_mirror.entries():
            got.add((maps_to[j], rows_to[i], v))
        if want != got:
            return False
    return True
