"""Oriented link diagrams: parsing, braids, resolutions, cube structure.

A diagram is a list of crossings over small-integer arc ids plus optional
crossingless free loops.  Every arc leaves exactly one crossing slot
(``*_out``) and enters exactly one (``*_in``); free loops carry no slots and
receive implicit arc ids above the crossing arcs so that basepoints and ray
counts can refer to them.

Crossing signs are part of the input.  Resolutions follow the convention
that the 0-smoothing of a positive crossing is the oriented smoothing: it
joins ``over_in`` with ``under_out`` and ``under_in`` with ``over_out``; the
roles of the two smoothings swap for negative crossings.  This table is
pinned globally by the Hopf-link tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .errors import (BadBraidWord, MalformedDiagram, OrientationError,
                     UnknownArc)


@dataclass(frozen=True)
class Crossing:
    under_in: int
    over_in: int
    under_out: int
    over_out: int
    sign: int

    def smoothing_pairs(self, bit: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """Arc identifications made by resolving this crossing.

        bit 0 on a positive crossing (and bit 1 on a negative one) gives the
        oriented smoothing; the other choice joins inputs to inputs.
        """
        oriented = (bit == 0) if self.sign > 0 else (bit == 1)
        if oriented:
            return (self.over_in, self.under_out), (self.under_in, self.over_out)
        return (self.over_in, self.under_in), (self.over_out, self.under_out)

    def slots(self) -> tuple[tuple[int, bool], ...]:
        """(arc, is_out) for the four slots."""
        return ((self.under_in, False), (self.over_in, False),
                (self.under_out, True), (self.over_out, True))


@dataclass(frozen=True)
class FreeLoop:
    arc: int
    ray_count: int = 0


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    free_loops: tuple[FreeLoop, ...] = ()
    basepoint: Optional[int] = None
    ray_counts: Optional[dict] = None
    name: str = ""

    def __post_init__(self):
        _validate(self)

    # -- derived data -----------------------------------------------------

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for c in self.crossings if c.sign > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for c in self.crossings if c.sign < 0)

    @property
    def crossing_arcs(self) -> set[int]:
        out = set()
        for c in self.crossings:
            out.update((c.under_in, c.over_in, c.under_out, c.over_out))
        return out

    @property
    def arcs(self) -> set[int]:
        return self.crossing_arcs | {fl.arc for fl in self.free_loops}

    @property
    def is_annular(self) -> bool:
        return self.ray_counts is not None

    def arc_ray_count(self, arc: int) -> int:
        for fl in self.free_loops:
            if fl.arc == arc:
                return fl.ray_count
        if self.ray_counts is None:
            return 0
        return self.ray_counts.get(arc, 0)

    def components(self) -> list[tuple[int, ...]]:
        """Oriented cycles of arcs, one per link component."""
        succ = {}
        for c in self.crossings:
            succ[c.under_in] = c.under_out
            succ[c.over_in] = c.over_out
        seen = set()
        cycles = []
        for start in sorted(succ):
            if start in seen:
                continue
            cyc = []
            a = start
            while a not in seen:
                seen.add(a)
                cyc.append(a)
                a = succ[a]
            cycles.append(tuple(cyc))
        for fl in self.free_loops:
            cycles.append((fl.arc,))
        return cycles

    # -- resolutions ------------------------------------------------------

    def resolve(self, vertex: Sequence[int]) -> "Resolution":
        if len(vertex) != self.n_crossings:
            raise ValueError("vertex length must equal the number of crossings")
        parent = {a: a for a in self.arcs}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c, bit in zip(self.crossings, vertex):
            for a, b in c.smoothing_pairs(bit):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for a in self.arcs:
            groups.setdefault(find(a), []).append(a)
        circles = tuple(tuple(sorted(g)) for g in sorted(groups.values()))
        marked = None
        if self.basepoint is not None:
            for i, circ in enumerate(circles):
                if self.basepoint in circ:
                    marked = i
                    break
        essential = None
        if self.is_annular:
            essential = tuple(
                sum(self.arc_ray_count(a) for a in circ) % 2 == 1
                for circ in circles)
        return Resolution(tuple(vertex), circles, marked, essential)

    def cube_edges(self) -> list["CubeEdge"]:
        n = self.n_crossings
        edges = []
        for u_int in range(1 << n):
            u = tuple((u_int >> i) & 1 for i in range(n))
            ru = self.resolve(u)
            for i in range(n):
                if u[i]:
                    continue
                v = u[:i] + (1,) + u[i + 1:]
                edges.append(classify_edge(self, ru, self.resolve(v), i))
        return edges

    # -- basic rewrites ---------------------------------------------------

    def relabeled(self, offset: int) -> "LinkDiagram":
        def f(a):
            return a + offset
        return LinkDiagram(
            crossings=tuple(Crossing(f(c.under_in), f(c.over_in),
                                     f(c.under_out), f(c.over_out), c.sign)
                            for c in self.crossings),
            free_loops=tuple(FreeLoop(f(fl.arc), fl.ray_count)
                             for fl in self.free_loops),
            basepoint=None if self.basepoint is None else f(self.basepoint),
            ray_counts=None if self.ray_counts is None
            else {f(a): k for a, k in self.ray_counts.items()},
            name=self.name)

    def pointed(self, arc: Optional[int] = None) -> "LinkDiagram":
        if arc is None:
            arc = min(self.arcs)
        if arc not in self.arcs:
            raise UnknownArc(f"arc {arc} not in diagram")
        return replace(self, basepoint=arc)


@dataclass(frozen=True)
class Resolution:
    vertex: tuple[int, ...]
    circles: tuple[tuple[int, ...], ...]
    marked_circle: Optional[int] = None
    essential_flags: Optional[tuple[bool, ...]] = None

    @property
    def n_circles(self) -> int:
        return len(self.circles)

    def circle_of(self, arc: int) -> int:
        for i, circ in enumerate(self.circles):
            if arc in circ:
                return i
        raise UnknownArc(f"arc {arc} not in resolution")


@dataclass(frozen=True)
class CubeEdge:
    from_vertex: tuple[int, ...]
    to_vertex: tuple[int, ...]
    crossing: int
    kind: str  # "merge" or "split"
    # merge: (c1, c2, c); split: (c, c1, c2) -- circle indices on each side
    circles: tuple[int, int, int]
    # position map for untouched circles: source index -> target index
    carry: dict = field(compare=False, default_factory=dict)


def classify_edge(diagram: LinkDiagram, ru: Resolution, rv: Resolution,
                  crossing: int) -> CubeEdge:
    cu = {circ: i for i, circ in enumerate(ru.circles)}
    cv = {circ: i for i, circ in enumerate(rv.circles)}
    gone = [c for c in cu if c not in cv]
    new = [c for c in cv if c not in cu]
    carry = {cu[c]: cv[c] for c in cu if c in cv}
    if len(gone) == 2 and len(new) == 1:
        c1, c2 = sorted((cu[gone[0]], cu[gone[1]]))
        edge = CubeEdge(ru.vertex, rv.vertex, crossing, "merge",
                        (c1, c2, cv[new[0]]), carry)
    elif len(gone) == 1 and len(new) == 2:
        d1, d2 = sorted((cv[new[0]], cv[new[1]]))
        edge = CubeEdge(ru.vertex, rv.vertex, crossing, "split",
                        (cu[gone[0]], d1, d2), carry)
    else:
        raise MalformedDiagram(
            f"edge at crossing {crossing} from {ru.vertex} is neither a "
            f"merge nor a split; the diagram is not planar-consistent")
    return edge


# -- validation -------------------------------------------------------------


def _validate(d: LinkDiagram):
    ins: dict[int, int] = {}
    outs: dict[int, int] = {}
    for c in d.crossings:
        if c.sign not in (1, -1):
            raise OrientationError(f"crossing sign must be +1 or -1, got {c.sign}")
        for arc, is_out in c.slots():
            (outs if is_out else ins)[arc] = (outs if is_out else ins).get(arc, 0) + 1
    loop_arcs = [fl.arc for fl in d.free_loops]
    if len(set(loop_arcs)) != len(loop_arcs):
        raise MalformedDiagram("duplicate free-loop arc ids")
    for arc in loop_arcs:
        if arc in ins or arc in outs:
            raise MalformedDiagram(f"free-loop arc {arc} also appears at a crossing")
    for arc in set(ins) | set(outs):
        n_in, n_out = ins.get(arc, 0), outs.get(arc, 0)
        if n_in + n_out != 2:
            raise MalformedDiagram(
                f"arc {arc} appears {n_in + n_out} times across crossing slots")
        if n_in != 1 or n_out != 1:
            raise OrientationError(
                f"arc {arc} enters {n_in} and leaves {n_out} crossings; "
                f"orientations along it are inconsistent")
    if d.basepoint is not None and d.basepoint not in d.arcs:
        raise MalformedDiagram(f"basepoint {d.basepoint} is not an arc")
    if d.ray_counts is not None:
        missing = d.crossing_arcs - set(d.ray_counts)
        if missing:
            raise MalformedDiagram(f"ray_counts missing arcs {sorted(missing)}")


# -- JSON parsing ------------------------------------------------------------


def parse_diagram(text: str) -> LinkDiagram:
    """Parse the JSON document format; see the README for the schema."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDiagram(f"invalid JSON: {e}") from e
    crossings = tuple(
        Crossing(int(c["under_in"]), int(c["over_in"]),
                 int(c["under_out"]), int(c["over_out"]), int(c["sign"]))
        for c in doc.get("crossings", ()))
    arc_ids = set()
    for c in crossings:
        arc_ids.update((c.under_in, c.over_in, c.under_out, c.over_out))
    next_arc = max(arc_ids, default=-1) + 1
    free_loops = []
    for fl in doc.get("free_loops", ()):
        free_loops.append(FreeLoop(next_arc, int(fl.get("ray_count", 0))))
        next_arc += 1
    ray_counts = doc.get("ray_counts")
    if ray_counts is not None:
        ray_counts = {int(a): int(k) for a, k in ray_counts.items()}
    return LinkDiagram(
        crossings=crossings,
        free_loops=tuple(free_loops),
        basepoint=doc.get("basepoint"),
        ray_counts=ray_counts,
        name=doc.get("name", ""))


def to_json(d: LinkDiagram) -> str:
    doc = {
        "name": d.name,
        "crossings": [
            {"under_in": c.under_in, "over_in": c.over_in,
             "under_out": c.under_out, "over_out": c.over_out, "sign": c.sign}
            for c in d.crossings],
        "free_loops": [{"ray_count": fl.ray_count} for fl in d.free_loops],
        "basepoint": d.basepoint,
        "ray_counts": None if d.ray_counts is None
        else {str(a): k for a, k in d.ray_counts.items()},
    }
    return json.dumps(doc, indent=1)


# -- braids -----------------------------------------------------------------


def from_braid(word: str | Sequence[str], strands: int) -> LinkDiagram:
    """Standard closure of a braid word, all strands oriented downward.

    Tokens are ``s<k>`` / ``s<k>^-1`` with 1 <= k < strands; ``s<k>`` yields a
    positive crossing.
    """
    if strands < 1:
        raise BadBraidWord("need at least one strand")
    tokens = word.split() if isinstance(word, str) else list(word)
    letters = []
    for tok in tokens:
        inv = False
        body = tok
        if tok.endswith("^-1"):
            inv = True
            body = tok[:-3]
        if not body.startswith("s"):
            raise BadBraidWord(f"bad token {tok!r}")
        try:
            k = int(body[1:])
        except ValueError as e:
            raise BadBraidWord(f"bad token {tok!r}") from e
        if not 1 <= k < strands:
            raise BadBraidWord(f"generator s{k} needs 1 <= {k} < {strands}")
        letters.append((k, inv))

    current = list(range(strands))
    next_arc = strands
    raw = []  # slots with arcs to be identified by the closure
    used = [False] * strands
    for k, inv in letters:
        i = k - 1
        left, right = next_arc, next_arc + 1
        next_arc += 2
        a, b = current[i], current[i + 1]
        used[i] = used[i + 1] = True
        if not inv:
            # right strand crosses over, moving to position i
            raw.append({"over_in": b, "over_out": left,
                        "under_in": a, "under_out": right, "sign": 1})
        else:
            raw.append({"over_in": a, "over_out": right,
                        "under_in": b, "under_out": left, "sign": -1})
        current[i], current[i + 1] = left, right

    # close up: final arc at position i is the same arc as the initial one
    ident = {current[i]: i for i in range(strands)}

    def f(a):
        return ident.get(a, a)

    crossings = tuple(
        Crossing(f(r["under_in"]), f(r["over_in"]),
                 f(r["under_out"]), f(r["over_out"]), r["sign"])
        for r in raw)
    free_loops = tuple(FreeLoop(i) for i in range(strands) if not used[i])
    name = f"closure({' '.join(tokens)}; B{strands})" if tokens else f"unlink{strands}"
    return LinkDiagram(crossings=crossings, free_loops=free_loops, name=name)


# -- mirror, unions, connect sums --------------------------------------------


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Switch over- and under-strand at every crossing (signs negate)."""
    return replace(d, crossings=tuple(
        Crossing(under_in=c.over_in, over_in=c.under_in,
                 under_out=c.over_out, over_out=c.under_out, sign=-c.sign)
        for c in d.crossings),
        name=f"mirror({d.name})" if d.name else "")


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Place d2 next to d1, relabelling its arcs to fresh ids."""
    offset = max(d1.arcs, default=-1) + 1 - min(d2.arcs, default=0)
    d2r = d2.relabeled(offset)
    ray = None
    if d1.ray_counts is not None or d2.ray_counts is not None:
        ray = dict(d1.ray_counts or {})
        ray.update(d2r.ray_counts or {})
    return LinkDiagram(
        crossings=d1.crossings + d2r.crossings,
        free_loops=d1.free_loops + d2r.free_loops,
        basepoint=d1.basepoint if d1.basepoint is not None else d2r.basepoint,
        ray_counts=ray,
        name=f"{d1.name} + {d2.name}")


def connect_sum(d1: LinkDiagram, a1: int, d2: LinkDiagram, a2: int) -> LinkDiagram:
    """Cut arcs a1, a2 and splice the diagrams into one component there.

    The surviving basepoint is d1's if present, else d2's; a basepoint
    sitting on a cut arc moves to one of the splice arcs.
    """
    if a1 not in d1.arcs:
        raise UnknownArc(f"arc {a1} not in first diagram")
    if a2 not in d2.arcs:
        raise UnknownArc(f"arc {a2} not in second diagram")
    offset = max(d1.arcs, default=-1) + 1 - min(d2.arcs, default=0)
    d2r = d2.relabeled(offset)
    b2 = a2 + offset

    loops1 = {fl.arc: fl for fl in d1.free_loops}
    loops2 = {fl.arc: fl for fl in d2r.free_loops}

    if a1 in loops1 and b2 in loops2:
        # two crossingless circles splice into one
        merged = FreeLoop(a1, loops1[a1].ray_count + loops2[b2].ray_count)
        free = tuple(fl for fl in d1.free_loops + d2r.free_loops
                     if fl.arc not in (a1, b2)) + (merged,)
        base = d1.basepoint if d1.basepoint is not None else d2r.basepoint
        if base == b2:
            base = a1
        return LinkDiagram(d1.crossings + d2r.crossings, free,
                           base, _merge_rays(d1, d2r),
                           name=f"{d1.name} # {d2.name}")
    if a1 in loops1 or b2 in loops2:
        # splicing a bare circle into an arc only extends that arc
        if a1 in loops1:
            host, loop_arc, other = d2r, a1, d1
            keep_arc = b2
        else:
            host, loop_arc, other = d1, b2, d2r
            keep_arc = a1
        free = tuple(fl for fl in d1.free_loops + d2r.free_loops
                     if fl.arc != loop_arc)
        base = d1.basepoint if d1.basepoint is not None else d2r.basepoint
        if base == loop_arc:
            base = keep_arc
        return LinkDiagram(d1.crossings + d2r.crossings, free,
                           base, _merge_rays(d1, d2r),
                           name=f"{d1.name} # {d2.name}")

    # generic case: swap the sinks of the two arcs
    def resplice(crossings, cut_a, cut_b):
        out = []
        for c in crossings:
            kw = {"under_in": c.under_in, "over_in": c.over_in,
                  "under_out": c.under_out, "over_out": c.over_out,
                  "sign": c.sign}
            for slot in ("under_in", "over_in"):
                if kw[slot] == cut_a:
                    kw[slot] = cut_b
                elif kw[slot] == cut_b:
                    kw[slot] = cut_a
            out.append(Crossing(**kw))
        return tuple(out)

    crossings = resplice(d1.crossings + d2r.crossings, a1, b2)
    base = d1.basepoint if d1.basepoint is not None else d2r.basepoint
    return LinkDiagram(crossings, d1.free_loops + d2r.free_loops,
                       base, _merge_rays(d1, d2r),
                       name=f"{d1.name} # {d2.name}")


def _merge_rays(d1: LinkDiagram, d2r: LinkDiagram):
    if d1.ray_counts is None and d2r.ray_counts is None:
        return None
    ray = dict(d1.ray_counts or {})
    ray.update(d2r.ray_counts or {})
    return ray
