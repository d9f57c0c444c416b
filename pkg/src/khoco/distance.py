"""Homology dimensions and minimum-weight searches for chain-complex codes.

The default exact search ("support-growth") interleaves two certified
enumeration strategies over supports of growing size: information-set
rounds over the kernel and literal weight stages matched by half-support
syndromes; see _support_growth_gf2.  Boundaries are excluded by fixed
homology functionals, and the first minimal-weight survivor in fixed
enumeration order is the witness, so reports are reproducible.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass, field
from typing import Optional

from .diagram import LinkDiagram, classify_edge, mirror
from .errors import NotApplicable, OracleRefused
from .gflinear import GFMatrix, GFVector, gf3_add, gf3_get, gf3_scale
from .khovanov import ChainComplex, build_complex

EXHAUSTIVE_KERNEL = "exhaustive-kernel"
SUPPORT_GROWTH = "support-growth"
BRUTE_ORACLE = "brute-oracle"

_EXHAUSTIVE_GUARD = {2: 24, 3: 12}
_ORACLE_GUARD = {2: 20, 3: 12}


def homology_dims(complex_: ChainComplex) -> dict[int, int]:
    """dim ker of the outgoing differential minus rank of the incoming one."""
    out = {}
    eps = complex_.epsilon
    for d in complex_.degrees():
        n = complex_.dim(d)
        rank_out = complex_.differential(d).rank()
        rank_in = complex_.differential(d - eps).rank()
        out[d] = n - rank_out - rank_in
    return out


@dataclass
class SearchResult:
    d_hat: float  # int, or math.inf when there is no homology
    witness: Optional[GFVector]
    exact: bool
    method: str
    lower_bound: int = 0
    enumerated: int = 0

    @property
    def unbounded(self) -> bool:
        return self.d_hat == math.inf


class _Budget:
    def __init__(self, budget_ms: Optional[float]):
        if budget_ms is None:
            env = os.environ.get("KHOCO_BUDGET_MS")
            budget_ms = float(env) if env else None
        self.budget_ms = budget_ms
        self.deadline = (time.monotonic() + budget_ms / 1000.0
                         if budget_ms else None)

    def exceeded(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


def _kernel_and_image(complex_: ChainComplex, degree: int):
    eps = complex_.epsilon
    boundary_out = complex_.differential(degree)
    boundary_in = complex_.differential(degree - eps)
    kernel = boundary_out.kernel_basis()
    return boundary_out, boundary_in, kernel


def _not_in_image(boundary_in: GFMatrix, vec: GFVector) -> bool:
    residual, _ = boundary_in.reduce_against_image(vec)
    return not residual.is_zero()


class _NontrivialTest:
    """Constant-time boundary test for kernel vectors.

    Writing ker = im + span(reps), a kernel vector is a boundary exactly
    when the k functionals dual to the reps (and vanishing on the image)
    kill it; each functional evaluation is a handful of popcounts.
    """

    def __init__(self, q: int, n: int, kernel: list[GFVector],
                 boundary_in: GFMatrix):
        self.q = q
        rows = []  # echelon basis of im followed by homology reps
        n_image = 0
        if q == 2:
            pivots = {}
            columns = ([boundary_in.column(j) for j in range(boundary_in.cols)]
                       if boundary_in.rows else [])
            for stage, vecs in ((0, columns), (1, [v.data for v in kernel])):
                for v in vecs:
                    while v:
                        p = (v & -v).bit_length() - 1
                        hit = pivots.get(p)
                        if hit is None:
                            pivots[p] = v
                            rows.append((stage, v))
                            break
                        v ^= hit
                if stage == 0:
                    n_image = len(rows)
        else:
            pivots = {}
            columns = ([boundary_in.column(j) for j in range(boundary_in.cols)]
                       if boundary_in.rows else [])
            for stage, vecs in ((0, columns), (1, [v.data for v in kernel])):
                for v in vecs:
                    while v != (0, 0):
                        mask = v[0] | v[1]
                        p = (mask & -mask).bit_length() - 1
                        hit = pivots.get(p)
                        if hit is None:
                            pivots[p] = v
                            rows.append((stage, v))
                            break
                        m = (gf3_get(v, p) * gf3_get(hit, p)) % 3
                        v = gf3_add(v, gf3_scale(hit, 3 - m))
                if stage == 0:
                    n_image = len(rows)
        kappa = len(rows)
        self.k = kappa - n_image
        # functionals solve M^T(lambda) = unit on each rep coordinate
        matrix = GFMatrix.from_entries(
            q, kappa, n,
            ((t, j, val) for t, (_, row) in enumerate(rows)
             for j, val in GFVector(q, n, row).support))
        self.functionals = []
        for j in range(self.k):
            e = GFVector.from_support(q, kappa, [(n_image + j, 1)])
            residual, combo = matrix.reduce_against_image(e)
            if not residual.is_zero():
                raise AssertionError("homology functional solve failed")
            self.functionals.append(combo.data)

    def nontrivial(self, packed) -> bool:
        if self.q == 2:
            for lam in self.functionals:
                if (lam & packed).bit_count() & 1:
                    return True
            return False
        x1, x2 = packed
        for l1, l2 in self.functionals:
            n1 = (l1 & x1).bit_count() + (l2 & x2).bit_count()
            n2 = (l1 & x2).bit_count() + (l2 & x1).bit_count()
            if (n1 + 2 * n2) % 3:
                return True
        return False



def min_weight_nontrivial(complex_: ChainComplex, degree: int,
                          method: str = SUPPORT_GROWTH,
                          budget_ms: Optional[float] = None) -> SearchResult:
    """Minimum weight of a cycle at `degree` that is not a boundary.

    Returns d_hat = inf when the homology vanishes there.  The result is
    exact unless the time budget truncated the proof of minimality.
    """
    n = complex_.dim(degree)
    boundary_out, boundary_in, kernel = _kernel_and_image(complex_, degree)
    k_hom = len(kernel) - boundary_in.rank()
    if k_hom <= 0:
        return SearchResult(math.inf, None, True, method)
    budget = _Budget(budget_ms)
    if method == BRUTE_ORACLE:
        d, w = brute_oracle(complex_, degree)
        return SearchResult(d, w, True, method)
    test = _NontrivialTest(complex_.q, n, kernel, boundary_in)
    if test.k != k_hom:
        raise AssertionError("homology dimension mismatch in functional setup")
    if method == EXHAUSTIVE_KERNEL:
        guard = _EXHAUSTIVE_GUARD[complex_.q]
        if len(kernel) > guard:
            raise OracleRefused(
                f"kernel dimension {len(kernel)} exceeds the exhaustive guard {guard}")
        return _exhaustive_kernel(complex_.q, n, kernel, test, budget)
    if method != SUPPORT_GROWTH:
        raise ValueError(f"unknown method {method!r}")
    if complex_.q == 2:
        cols = [boundary_out.column(j) for j in range(n)]
        return _support_growth_gf2(n, kernel, cols, test, budget)
    return _support_growth_gf3(n, kernel, test, budget)


# -- exhaustive kernel enumeration -------------------------------------------


def _exhaustive_kernel(q, n, kernel, test, budget) -> SearchResult:
    best = math.inf
    best_vec = None
    count = 0
    if q == 2:
        rows = [v.data for v in kernel]
        x = 0
        for g in range(1, 1 << len(rows)):
            x ^= rows[(g & -g).bit_length() - 1]
            count += 1
            w = x.bit_count()
            if w < best and test.nontrivial(x):
                best, best_vec = w, GFVector(2, n, x)
    else:
        rows = [v.data for v in kernel]

        def rec(idx, acc):
            nonlocal best, best_vec, count
            if idx == len(rows):
                if acc != (0, 0):
                    count += 1
                    w = (acc[0] | acc[1]).bit_count()
                    if w < best and test.nontrivial(acc):
                        best, best_vec = w, GFVector(3, n, acc)
                return
            rec(idx + 1, acc)
            rec(idx + 1, gf3_add(acc, rows[idx]))
            rec(idx + 1, gf3_add(acc, gf3_scale(rows[idx], 2)))

        rec(0, (0, 0))
    return SearchResult(int(best), best_vec, True, EXHAUSTIVE_KERNEL,
                        enumerated=count)


# -- support growth over information sets ------------------------------------


def _rref_rounds_gf2(kernel_ints: list[int], n: int):
    """Disjoint-information-set bases: (rows, rank) per round."""
    rounds = []
    used = 0
    while True:
        rows = list(kernel_ints)
        pivots = []  # (column bit, row index)
        for i in range(len(rows)):
            v = rows[i]
            for bit, j in pivots:
                if v & bit:
                    v ^= rows[j]
            free = v & ~used
            if free:
                bit = free & -free
                # clear this column from all earlier pivot rows
                rows[i] = v
                for pbit, j in pivots:
                    if rows[j] & bit:
                        rows[j] ^= v
                pivots.append((bit, i))
                used |= bit
            else:
                rows[i] = v
        rank = len(pivots)
        if rank == 0:
            break
        rounds.append((rows, rank))
        if used.bit_count() >= n:
            break
    return rounds


def _xor_combos(rows, t):
    n = len(rows)

    def rec(start, depth, acc):
        last = n - (t - depth)
        for j in range(start, last + 1):
            v = acc ^ rows[j]
            if depth + 1 == t:
                yield v
            else:
                yield from rec(j + 1, depth + 1, v)

    if t <= n:
        yield from rec(0, 0, 0)


_MITM_TABLE_CAP = 6_000_000
_MITM_COST_FACTOR = 4  # a hashed syndrome insert costs a few basis XORs


def _support_growth_gf2(n, kernel, syndrome_cols, test, budget) -> SearchResult:
    """Cost-adaptive staged search, exact on termination.

    Two certificates are interleaved, each step taking whichever is cheaper:
    an information-set round (every codeword outside the enumerated row
    combinations is heavier than the rank-corrected bound) or a literal
    weight stage (all supports of one weight scanned via half-syndrome
    matching).  Both state "no nontrivial cycle lighter than X", so the
    floors combine by max.
    """
    kappa = len(kernel)
    rounds = _rref_rounds_gf2([v.data for v in kernel], n)
    best = math.inf
    best_vec = None
    count = 0
    done_to = [0] * len(rounds)
    lower = 0
    t = 0
    while best > lower:
        if budget.exceeded():
            return SearchResult(best if best_vec else math.inf, best_vec,
                                False, SUPPORT_GROWTH, lower_bound=lower,
                                enumerated=count)
        w = max(1, lower)
        bz_cost = sum(
            sum(math.comb(kappa, size)
                for size in range(done_to[i] + 1, t + 2))
            for i, (_, rank) in enumerate(rounds)
            if i == 0 or t + 2 - (kappa - rank) > 0)
        table_side = math.comb(n, w // 2)
        mitm_cost = math.inf
        if table_side <= _MITM_TABLE_CAP:
            mitm_cost = _MITM_COST_FACTOR * (table_side
                                             + math.comb(n, (w + 1) // 2))
        if bz_cost <= mitm_cost:
            t += 1
            for i, (rows, rank) in enumerate(rounds):
                if t + 1 - (kappa - rank) <= 0 and i > 0:
                    continue  # cannot raise the bound yet
                for size in range(done_to[i] + 1, t + 1):
                    for x in _xor_combos(rows, size):
                        count += 1
                        if not count % 8192 and budget.exceeded():
                            return SearchResult(
                                best if best_vec else math.inf, best_vec,
                                False, SUPPORT_GROWTH, lower_bound=lower,
                                enumerated=count)
                        wt = x.bit_count()
                        if wt < best and test.nontrivial(x):
                            best, best_vec = wt, GFVector(2, n, x)
                done_to[i] = t
            lower = max(lower, sum(
                max(0, t + 1 - (kappa - rank))
                for i, (_, rank) in enumerate(rounds) if done_to[i] >= t))
        else:
            hit, scanned = _mitm_stage_gf2(syndrome_cols, n, w, test, budget)
            count += abs(scanned)
            if scanned < 0:
                return SearchResult(best if best_vec else math.inf, best_vec,
                                    False, SUPPORT_GROWTH, lower_bound=lower,
                                    enumerated=count)
            if hit is not None and w < best:
                best, best_vec = w, GFVector(2, n, hit)
            lower = w if hit is not None else w + 1
    return SearchResult(int(best), best_vec, True, SUPPORT_GROWTH,
                        lower_bound=lower, enumerated=count)


def _mitm_stage_gf2(cols, n, w, test, budget):
    """Search weight exactly w; sound given no lighter nontrivial cycle.

    The smaller half-support goes into a syndrome table, the larger half
    streams against it.  Returns (support mask or None, combos scanned);
    a negative count flags a budget stop mid-stage.
    """
    from itertools import combinations

    w1 = w // 2
    w2 = w - w1
    scanned = 0
    if w1 == 0:
        for j in range(n):
            scanned += 1
            if cols[j] == 0 and test.nontrivial(1 << j):
                return 1 << j, scanned
        return None, scanned
    table: dict = {}
    for combo in combinations(range(n), w1):
        scanned += 1
        if not scanned % 65536 and budget.exceeded():
            return None, -scanned
        syndrome = 0
        mask = 0
        for j in combo:
            syndrome ^= cols[j]
            mask |= 1 << j
        table.setdefault(syndrome, []).append(mask)
    for combo in combinations(range(n), w2):
        scanned += 1
        if not scanned % 65536 and budget.exceeded():
            return None, -scanned
        syndrome = 0
        mask = 0
        for j in combo:
            syndrome ^= cols[j]
            mask |= 1 << j
        bucket = table.get(syndrome)
        if not bucket:
            continue
        for other in bucket:
            if other & mask:
                continue  # lighter weights were settled by earlier stages
            x = other | mask
            if test.nontrivial(x):
                return x, scanned
    return None, scanned


def _rref_rounds_gf3(kernel_pairs, n):
    rounds = []
    used = 0
    while True:
        rows = list(kernel_pairs)
        pivots = []  # (column index, row index)
        for i in range(len(rows)):
            v = rows[i]
            for col, j in pivots:
                val = 1 if (v[0] >> col) & 1 else (2 if (v[1] >> col) & 1 else 0)
                if val:
                    pv = rows[j]
                    pval = 1 if (pv[0] >> col) & 1 else 2
                    m = (val * pval) % 3
                    v = gf3_add(v, gf3_scale(pv, 3 - m))
            free = (v[0] | v[1]) & ~used
            if free:
                col = (free & -free).bit_length() - 1
                rows[i] = v
                for pcol, j in pivots:
                    pv = rows[j]
                    val = 1 if (pv[0] >> col) & 1 else (2 if (pv[1] >> col) & 1 else 0)
                    if val:
                        myval = 1 if (v[0] >> col) & 1 else 2
                        m = (val * myval) % 3
                        rows[j] = gf3_add(pv, gf3_scale(v, 3 - m))
                pivots.append((col, i))
                used |= 1 << col
            else:
                rows[i] = v
        rank = len(pivots)
        if rank == 0:
            break
        rounds.append((rows, rank))
        if used.bit_count() >= n:
            break
    return rounds


def _gf3_combos(rows, t):
    """All combinations of t rows with coefficients, first coefficient 1."""
    n = len(rows)

    def rec(start, depth, acc):
        last = n - (t - depth)
        for j in range(start, last + 1):
            for coeff in ((1,) if depth == 0 else (1, 2)):
                v = gf3_add(acc, rows[j] if coeff == 1 else (rows[j][1], rows[j][0]))
                if depth + 1 == t:
                    yield v
                else:
                    yield from rec(j + 1, depth + 1, v)

    if t <= n:
        yield from rec(0, 0, (0, 0))


def _support_growth_gf3(n, kernel, test, budget) -> SearchResult:
    kappa = len(kernel)
    rounds = _rref_rounds_gf3([v.data for v in kernel], n)
    best = math.inf
    best_vec = None
    count = 0
    done_to = [0] * len(rounds)
    lower = 0
    t = 0
    while best > lower:
        t += 1
        for i, (rows, rank) in enumerate(rounds):
            contribution = t + 1 - (kappa - rank)
            if contribution <= 0 and i > 0:
                continue
            for size in range(done_to[i] + 1, t + 1):
                for x in _gf3_combos(rows, size):
                    count += 1
                    if not count % 8192 and budget.exceeded():
                        return SearchResult(
                            best if best_vec else math.inf, best_vec, False,
                            SUPPORT_GROWTH, lower_bound=lower, enumerated=count)
                    w = (x[0] | x[1]).bit_count()
                    if w < best and test.nontrivial(x):
                        best, best_vec = w, GFVector(3, n, x)
            done_to[i] = t
        lower = sum(max(0, t + 1 - (kappa - rank))
                    for i, (rows, rank) in enumerate(rounds) if done_to[i] >= t)
    return SearchResult(int(best), best_vec, True, SUPPORT_GROWTH,
                        lower_bound=lower, enumerated=count)


# -- full enumeration oracle --------------------------------------------------


def brute_oracle(complex_: ChainComplex, degree: int):
    """Ground truth by enumerating every vector of the chain group."""
    n = complex_.dim(degree)
    q = complex_.q
    if n > _ORACLE_GUARD[q]:
        raise OracleRefused(f"dimension {n} over GF({q}) is too large to enumerate")
    boundary_out = complex_.differential(degree)
    boundary_in = complex_.differential(degree - complex_.epsilon)
    best = math.inf
    best_vec = None
    if q == 2:
        cols = [boundary_out.column(j) for j in range(n)]
        x = 0
        syndrome = 0
        for g in range(1, 1 << n):
            j = (g & -g).bit_length() - 1
            x ^= 1 << j
            syndrome ^= cols[j]
            if syndrome == 0:
                w = x.bit_count()
                if w < best:
                    vec = GFVector(2, n, x)
                    if _not_in_image(boundary_in, vec):
                        best, best_vec = w, vec
    else:
        cols = [boundary_out.column(j) for j in range(n)]
        digits = [0] * n
        x = (0, 0)
        syndrome = (0, 0)
        while True:
            # odometer increment in base 3
            pos = 0
            while pos < n and digits[pos] == 2:
                digits[pos] = 0
                x = gf3_add(x, (1 << pos, 0))          # 2 + 1 = 0
                syndrome = gf3_add(syndrome, cols[pos])
                pos += 1
            if pos == n:
                break
            digits[pos] += 1
            x = gf3_add(x, (1 << pos, 0))
            syndrome = gf3_add(syndrome, cols[pos])
            if syndrome == (0, 0):
                w = (x[0] | x[1]).bit_count()
                if w < best:
                    vec = GFVector(3, n, x)
                    if _not_in_image(boundary_in, vec):
                        best, best_vec = w, vec
    # the oracle keeps the slow, fully independent membership reduction
    if best_vec is None:
        return math.inf, None
    return int(best), best_vec


# -- CSS reports ---------------------------------------------------------------


@dataclass
class CodeReport:
    degree: int
    n: int
    k: int
    d_hat: Optional[int]
    d_hat_dual: Optional[int]
    d: Optional[int]
    witness: Optional[GFVector]
    method: str
    exact: bool
    budget: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "n": self.n,
            "k": self.k,
            "d_hat": self.d_hat,
            "d_hat_dual": self.d_hat_dual,
            "d": self.d,
            "witness": None if self.witness is None else {
                "length": self.witness.length,
                "support": self.witness.support,
            },
            "method": self.method,
            "exact": self.exact,
            "budget": self.budget,
        }


def verify_witness(complex_: ChainComplex, degree: int, witness: GFVector) -> bool:
    """Independent re-check: a cycle, not a boundary."""
    if not complex_.differential(degree).apply(witness).is_zero():
        return False
    boundary_in = complex_.differential(degree - complex_.epsilon)
    return _not_in_image(boundary_in, witness)


def css_distance(diagram: LinkDiagram, degree: int, reduced: bool = False,
                 method: str = SUPPORT_GROWTH,
                 budget_ms: Optional[float] = None,
                 check_mirror_agrees: bool = True) -> CodeReport:
    """Full code report at a raw homological degree.

    The dual distance is computed on the transposed complex and, as a
    consistency check, recomputed on the mirror diagram at the negated
    degree; the two must agree.
    """
    cx = build_complex(diagram, reduced=reduced)
    n = cx.dim(degree)
    primal = min_weight_nontrivial(cx, degree, method, budget_ms)
    k = len(cx.differential(degree).kernel_basis()) - \
        cx.differential(degree - cx.epsilon).rank()

    dual_cx = cx.dual()
    dual = min_weight_nontrivial(dual_cx, degree, method, budget_ms)
    if check_mirror_agrees:
        mirror_cx = build_complex(mirror(diagram), reduced=reduced)
        via_mirror = min_weight_nontrivial(mirror_cx, -degree, method, budget_ms)
        if dual.exact and via_mirror.exact and dual.d_hat != via_mirror.d_hat:
            raise AssertionError(
                f"dual distance {dual.d_hat} disagrees with the mirror "
                f"diagram's distance {via_mirror.d_hat} at degree {-degree}")

    def as_int(x):
        return None if x == math.inf else int(x)

    d = None
    if primal.d_hat != math.inf or dual.d_hat != math.inf:
        d = as_int(min(primal.d_hat, dual.d_hat))
    report = CodeReport(
        degree=degree, n=n, k=k,
        d_hat=as_int(primal.d_hat), d_hat_dual=as_int(dual.d_hat), d=d,
        witness=primal.witness, method=method,
        exact=primal.exact and dual.exact,
        budget={"budget_ms": budget_ms,
                "enumerated": primal.enumerated + dual.enumerated,
                "lower_bound": primal.lower_bound})
    if report.witness is not None and not verify_witness(cx, degree, report.witness):
        raise AssertionError("witness failed independent re-verification")
    return report


def dist2_necessary(diagram: LinkDiagram, degree: int) -> bool:
    """Necessary condition for the unreduced homological distance to be 2:
    some vertex at this degree must send all its outgoing edges into merges
    of one fixed pair of circles."""
    n = diagram.n_crossings
    n_minus = diagram.n_minus
    weight = degree + n_minus
    if degree > n - n_minus - 2 or weight < 0 or weight > n:
        raise NotApplicable(
            "requires at least two outgoing edges at every vertex of the degree")
    for u_int in range(1 << n):
        u = tuple((u_int >> i) & 1 for i in range(n))
        if sum(u) != weight:
            continue
        ru = diagram.resolve(u)
        pair = None
        ok = True
        for i in range(n):
            if u[i]:
                continue
            v = u[:i] + (1,) + u[i + 1:]
            edge = classify_edge(diagram, ru, diagram.resolve(v), i)
            if edge.kind != "merge":
                ok = False
                break
            this_pair = (edge.circles[0], edge.circles[1])
            if pair is None:
                pair = this_pair
            elif pair != this_pair:
                ok = False
                break
        if ok and pair is not None:
            return True
    return False
