"""Constructors for the diagram families used by the tests and fixtures.

Everything here is assembled from two combinatorial gadgets: kinks added to
an arc, and the two-crossing overlap of one arc sliding across another.
Annular data (ray counts from a fixed ray out of the puncture) is attached
where a family needs it.
"""

from __future__ import annotations

from dataclasses import replace

from .diagram import Crossing, FreeLoop, LinkDiagram, from_braid
from .errors import UnknownArc, Unsupported


def unknot(pointed: bool = False, ray: bool = False) -> LinkDiagram:
    """Crossingless unknot (one free loop)."""
    d = LinkDiagram(crossings=(), free_loops=(FreeLoop(0, 1 if ray else 0),),
                    basepoint=0 if pointed else None,
                    ray_counts={} if ray else None,
                    name="unknot")
    return d


def unlink(components: int) -> LinkDiagram:
    return LinkDiagram(crossings=(),
                       free_loops=tuple(FreeLoop(i) for i in range(components)),
                       name=f"unlink{components}")


def hopf(positive: bool = True, pointed: bool = False) -> LinkDiagram:
    word = "s1 s1" if positive else "s1^-1 s1^-1"
    d = from_braid(word, 2)
    d = replace(d, name="hopf" if positive else "hopf-negative")
    return d.pointed() if pointed else d


def trefoil(pointed: bool = False) -> LinkDiagram:
    d = replace(from_braid("s1 s1 s1", 2), name="trefoil")
    return d.pointed() if pointed else d


def torus_link(ell: int, pointed: bool = False) -> LinkDiagram:
    """Positively oriented (2, ell) torus link as a braid closure."""
    d = replace(from_braid(" ".join(["s1"] * ell), 2), name=f"torus(2,{ell})")
    return d.pointed() if pointed else d


def add_kink(diagram: LinkDiagram, arc: int, sign: int) -> LinkDiagram:
    """Put a curl on the given arc; the new crossing has the given sign.

    The loop arc runs from the crossing's over-out back into its under-in,
    which is realizable for either sign.
    """
    if arc not in diagram.arcs:
        raise UnknownArc(f"arc {arc} not in diagram")
    fresh = max(diagram.arcs) + 1
    loop, tail = fresh, fresh + 1
    loops = {fl.arc: fl for fl in diagram.free_loops}
    if arc in loops:
        # the loop arc and the continuing arc make up the old circle
        crossings = diagram.crossings + (
            Crossing(under_in=loop, over_in=arc, under_out=arc,
                     over_out=loop, sign=sign),)
        free = tuple(fl for fl in diagram.free_loops if fl.arc != arc)
        return LinkDiagram(crossings, free, diagram.basepoint,
                           _extend_rays(diagram, {loop: 0}),
                           name=diagram.name)
    crossings = []
    for c in diagram.crossings:
        kw = dict(under_in=c.under_in, over_in=c.over_in,
                  under_out=c.under_out, over_out=c.over_out, sign=c.sign)
        for slot in ("under_in", "over_in"):
            if kw[slot] == arc:
                kw[slot] = tail
        crossings.append(Crossing(**kw))
    crossings.append(Crossing(under_in=loop, over_in=arc,
                              under_out=tail, over_out=loop, sign=sign))
    return LinkDiagram(tuple(crossings), diagram.free_loops, diagram.basepoint,
                       _extend_rays(diagram, {loop: 0, tail: 0}),
                       name=diagram.name)


def _extend_rays(diagram: LinkDiagram, new_arcs: dict):
    # a subdivided arc keeps its count on the first piece; new pieces sit
    # away from the ray
    if diagram.ray_counts is None:
        return None
    rays = dict(diagram.ray_counts)
    rays.update(new_arcs)
    return rays


def unknot_with_kinks(positive: int, negative: int,
                      pointed: bool = False) -> LinkDiagram:
    d = unknot()
    arc = 0
    for _ in range(positive):
        d = add_kink(d, arc, +1)
    for _ in range(negative):
        d = add_kink(d, arc, -1)
    d = replace(d, name=f"unknot+{positive}k-{negative}k")
    return d.pointed(arc) if pointed else d


def overlap(diagram: LinkDiagram, over_arc: int, under_arc: int,
            signs: tuple[int, int] = (-1, 1)) -> LinkDiagram:
    """Slide the strand carrying over_arc across under_arc (one RII move).

    Adds the crossing pair (by default one negative then one positive along
    the over strand), subdividing both arcs.  The two possible overstrand
    choices of the move are `overlap(d, a, b)` and `overlap(d, b, a)`.
    """
    if over_arc not in diagram.arcs or under_arc not in diagram.arcs:
        raise UnknownArc("overlap arcs must belong to the diagram")
    if over_arc == under_arc:
        raise Unsupported("overlap needs two distinct arcs")
    fresh = max(diagram.arcs) + 1
    loops = {fl.arc for fl in diagram.free_loops}

    def pieces(arc):
        nonlocal fresh
        if arc in loops:
            mid = fresh
            fresh += 1
            return arc, mid, arc          # a loop is cut into two arcs
        mid, tail = fresh, fresh + 1
        fresh += 2
        return arc, mid, tail

    o1, o2, o3 = pieces(over_arc)
    u1, u2, u3 = pieces(under_arc)

    crossings = []
    for c in diagram.crossings:
        kw = dict(under_in=c.under_in, over_in=c.over_in,
                  under_out=c.under_out, over_out=c.over_out, sign=c.sign)
        for slot in ("under_in", "over_in"):
            if kw[slot] == over_arc:
                kw[slot] = o3
            elif kw[slot] == under_arc:
                kw[slot] = u3
        crossings.append(Crossing(**kw))
    s1, s2 = signs
    crossings.append(Crossing(under_in=u1, over_in=o1,
                              under_out=u2, over_out=o2, sign=s1))
    crossings.append(Crossing(under_in=u2, over_in=o2,
                              under_out=u3, over_out=o3, sign=s2))
    free = tuple(fl for fl in diagram.free_loops
                 if fl.arc not in (over_arc, under_arc))
    rays = None
    if diagram.ray_counts is not None:
        rays = dict(diagram.ray_counts)
        for a in (o2, o3, u2, u3):
            rays.setdefault(a, 0)
    return LinkDiagram(tuple(crossings), free, diagram.basepoint, rays,
                       name=diagram.name)


def tree_unlink(edges: list[tuple[int, int]], pointed: bool = False) -> LinkDiagram:
    """Unknots at the vertices of a tree, joined by one RII overlap per edge;
    the first-listed circle of each edge slides over the other.

    Circle k's original arc keeps id k through every overlap, so repeated
    edges at a vertex put their bumps side by side on that arc.
    """
    n_vertices = max(max(e) for e in edges) + 1 if edges else 1
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            raise Unsupported("edge list must form a tree")
        parent[ri] = rj
    if len(edges) != n_vertices - 1:
        raise Unsupported("edge list must form a tree")
    d = unlink(n_vertices)
    for i, j in edges:
        d = overlap(d, i, j)
    d = replace(d, name=f"tree-unlink{len(edges)}")
    return d.pointed(0) if pointed else d


def path_tree(ell: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(ell)]


def star_tree(ell: int) -> list[tuple[int, int]]:
    return [(0, i + 1) for i in range(ell)]


def branched_unknot(m: int, pointed: bool = True) -> LinkDiagram:
    """Serial clasp form: a circle carrying m positive and m negative kinks."""
    d = unknot()
    for _ in range(m):
        d = add_kink(d, 0, +1)
    for _ in range(m):
        d = add_kink(d, 0, -1)
    d = replace(d, name=f"branched-unknot({m})")
    return d.pointed(0) if pointed else d


def iterated_hopf(copies: int) -> LinkDiagram:
    """Connect sum of `copies` pointed positive Hopf links."""
    from .diagram import connect_sum
    d = hopf(pointed=True)
    for _ in range(copies - 1):
        nxt = hopf(pointed=True)
        d = connect_sum(d, max(d.arcs), nxt, 0)
    return replace(d, name=f"hopf^#{copies}")


# -- annular families ---------------------------------------------------------


def annular_unlink(ell: int) -> LinkDiagram:
    """ell-component annular unlink: ell - 1 concentric circles around the
    puncture with an ellipse over the puncture and their left halves.

    Ray counts come from the eastward ray: it crosses the ellipse tip once
    and each circle's right arc once.
    """
    if ell < 1:
        raise Unsupported("need at least one component")
    if ell == 1:
        return replace(unknot(ray=True), name="annular-D1")
    n_circ = ell - 1
    # arc ids: circle i has right arc r_i = 2i, left arc l_i = 2i+1
    # ellipse arcs: a0 (tip), upper arcs, west swing, lower arcs
    base = 2 * n_circ
    a0 = base
    uppers = [base + 1 + i for i in range(n_circ - 1)]   # after U_1 .. U_{n-1}
    west = base + n_circ
    lowers = [base + n_circ + 1 + i for i in range(n_circ - 1)]  # after L_{i+1}

    def upper_after(i):  # arc leaving U_i along the ellipse, i = 1..n_circ
        return uppers[i - 1] if i < n_circ else west

    def upper_before(i):
        return a0 if i == 1 else uppers[i - 2]

    def lower_after(i):  # arc leaving L_i, i = n_circ..1
        return a0 if i == 1 else lowers[i - 2]

    def lower_before(i):
        return west if i == n_circ else lowers[i - 1]

    crossings = []
    for i in range(1, n_circ + 1):
        r_i, l_i = 2 * (i - 1), 2 * (i - 1) + 1
        crossings.append(Crossing(under_in=r_i, over_in=upper_before(i),
                                  under_out=l_i, over_out=upper_after(i),
                                  sign=+1))
        crossings.append(Crossing(under_in=l_i, over_in=lower_before(i),
                                  under_out=r_i, over_out=lower_after(i),
                                  sign=-1))
    rays = {a: 0 for a in range(base, base + 2 * n_circ)}
    rays[a0] = 1
    for i in range(n_circ):
        rays[2 * i] = 1      # right arcs
        rays[2 * i + 1] = 0  # left arcs
    return LinkDiagram(tuple(crossings), (), None, rays, name=f"annular-D{ell}")


def annular_tangle_closure(word: str, strands: int = 2) -> LinkDiagram:
    """Braid closure with the puncture next to one closure arc: that arc gets
    ray count 1 and the basepoint, every resolution then has exactly one
    essential circle."""
    d = from_braid(word, strands)
    seam = strands - 1
    if seam not in d.arcs:
        seam = min(d.arcs)
    rays = {a: 0 for a in d.crossing_arcs}
    if seam in rays:
        rays[seam] = 1
        free = d.free_loops
    else:
        free = tuple(FreeLoop(fl.arc, 1 if fl.arc == seam else fl.ray_count)
                     for fl in d.free_loops)
    return LinkDiagram(d.crossings, free, seam, rays,
                       name=f"annular-closure({word or 'trivial'})")
