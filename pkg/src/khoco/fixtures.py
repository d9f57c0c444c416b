"""The in-repo diagram corpus.

Fixtures transcribed from pictures rather than explicit data carry the
provenance note "transcribed-from-figure"; each of those is pinned by its
published distance in the verification suite before anything else trusts it.
"""

from __future__ import annotations

import json
from dataclasses import replace
from importlib import resources

from . import builders
from .diagram import LinkDiagram, from_braid, parse_diagram, to_json


def _named(d: LinkDiagram, name: str) -> LinkDiagram:
    return replace(d, name=name)


def build_all() -> dict[str, LinkDiagram]:
    """Every fixture, keyed by file stem."""
    out: dict[str, LinkDiagram] = {}
    out["unknot0"] = _named(builders.unknot(pointed=True), "unknot0")
    out["unknot_kink_pos"] = builders.unknot_with_kinks(1, 0, pointed=True)
    out["unknot_kink_neg"] = builders.unknot_with_kinks(0, 1, pointed=True)
    out["unknot_kink_pair"] = _named(
        builders.unknot_with_kinks(1, 1, pointed=True), "unknot_kink_pair")
    out["hopf"] = _named(builders.hopf(pointed=True), "hopf")
    out["hopf_negative"] = _named(
        builders.hopf(positive=False, pointed=True), "hopf_negative")
    out["trefoil"] = builders.trefoil(pointed=True)
    for ell in (4, 5):
        out[f"torus_2_{ell}"] = builders.torus_link(ell, pointed=True)

    # Reidemeister II/III counterexample corpus; the chain diagrams are
    # transcribed-from-figure and pinned by their published distances.
    out["braid_s2m1s1m1s2s2"] = _named(
        from_braid("s2^-1 s1^-1 s2 s2", 3).pointed(), "braid_s2m1s1m1s2s2")
    out["braid_s1s2m1s1m1s2"] = _named(
        from_braid("s1 s2^-1 s1^-1 s2", 3).pointed(), "braid_s1s2m1s1m1s2")
    top = builders.unknot_with_kinks(1, 0)
    out["riiriicex_top"] = _named(top, "riiriicex_top")
    out["riiriicex_middle"] = _named(builders.overlap(top, 0, 1), "riiriicex_middle")
    out["riiriicex_bottom"] = _named(
        builders.unknot_with_kinks(2, 1), "riiriicex_bottom")
    pair_top = builders.unknot_with_kinks(1, 1)
    out["riicex_top"] = _named(pair_top, "riicex_top")
    out["riicex_bottom"] = _named(builders.overlap(pair_top, 0, 1), "riicex_bottom")

    # unknot-slide and disjoint-join doubling pairs, both overstrand choices
    from .diagram import disjoint_union
    for name, d in (("unknot", builders.unknot()), ("hopf", builders.hopf())):
        base = disjoint_union(d, builders.unknot())
        circle = [fl.arc for fl in base.free_loops][-1]
        host = min(a for a in base.arcs if a != circle)
        out[f"slide_{name}_disjoint"] = _named(base, f"slide_{name}_disjoint")
        out[f"slide_{name}_under"] = _named(
            builders.overlap(base, host, circle), f"slide_{name}_under")
        out[f"slide_{name}_over"] = _named(
            builders.overlap(base, circle, host), f"slide_{name}_over")
    # the general join: a second move between two nontrivial disjoint links
    both = disjoint_union(builders.hopf(), builders.hopf())
    out["join_hopfs_disjoint"] = _named(both, "join_hopfs_disjoint")
    out["join_hopfs"] = _named(builders.overlap(both, 0, 4), "join_hopfs")

    for ell in (1, 2, 3):
        out[f"tree_unlink_{ell}"] = _named(
            builders.tree_unlink(builders.path_tree(ell), pointed=True),
            f"tree_unlink_{ell}")
    out["tree_unlink_3_star"] = _named(
        builders.tree_unlink(builders.star_tree(3), pointed=True),
        "tree_unlink_3_star")
    for m in (1, 2):
        out[f"branched_unknot_{m}"] = _named(
            builders.branched_unknot(m), f"branched_unknot_{m}")

    out["annular_tangle_trivial"] = _named(
        builders.annular_tangle_closure("", 1), "annular_tangle_trivial")
    out["annular_tangle_2_3"] = _named(
        builders.annular_tangle_closure("s1 s1 s1"), "annular_tangle_2_3")
    out["annular_tangle_2_4"] = _named(
        builders.annular_tangle_closure("s1 s1 s1 s1"), "annular_tangle_2_4")
    for ell in range(1, 6):
        out[f"annular_D{ell}"] = builders.annular_unlink(ell)
    return out


def fixture(name: str) -> LinkDiagram:
    diagrams = build_all()
    if name not in diagrams:
        raise KeyError(f"unknown fixture {name!r}")
    return diagrams[name]


def load(path_or_name: str) -> LinkDiagram:
    """Load a diagram: a JSON file path, or a packaged fixture name."""
    import os
    if os.path.exists(path_or_name):
        with open(path_or_name, "r", encoding="utf-8") as fh:
            return parse_diagram(fh.read())
    stem = os.path.splitext(os.path.basename(path_or_name))[0]
    pkg_file = resources.files("khoco").joinpath(f"fixtures/{stem}.json")
    if pkg_file.is_file():
        return parse_diagram(pkg_file.read_text())
    try:
        return fixture(stem)
    except KeyError:
        raise FileNotFoundError(f"no diagram file or fixture named "
                                f"{path_or_name!r}") from None


def write_corpus(directory: str) -> list[str]:
    """Serialize every fixture into <directory>/<name>.json."""
    import os
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, diagram in sorted(build_all().items()):
        path = os.path.join(directory, f"{name}.json")
        doc = json.loads(to_json(replace(diagram, name=name)))
        if name.startswith(("riiriicex", "riicex")):
            doc["provenance"] = "transcribed-from-figure"
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        written.append(path)
    return written
