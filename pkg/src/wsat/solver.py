"""Exact weak saturation numbers by exhaustion, plus engine-verified upper bounds.

wsat_exact enumerates subgraphs of the complete (n, r) universe by ascending
edge count, in colex order within each count, and returns the first (hence
colex-least) percolating subgraph.  Forward exhaustion is the only obviously
correct oracle here: deletion orders from the complete graph are not
confluent for general patterns.  The budget counts percolation checks; when
it runs out the result says which edge counts were fully excluded instead of
guessing.

Optional isomorphism rejection canonicalizes each candidate to the
lexicographic minimum of its edge-rank multiset over all n! vertex
relabelings and skips repeats.  It never changes the returned value, only
the work done, and at these scales the mask-based percolation test is
usually cheaper than canonicalizing, so it is off by default.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from math import comb

from .constructions import clique_extremal, padded_example, s1_construction
from .hypergraph import (
    Hypergraph,
    Pattern,
    complete_graph,
    edge_universe,
    graph_of_mask,
    rank_table,
)
from .percolation import (
    SaturationCertificate,
    closure,
    is_weakly_saturated,
    witness_index,
)

DEFAULT_BUDGET = 10_000_000
MAX_SOLVER_UNIVERSE = 30
EXACT_TABLE_UNIVERSE = 20  # ratio_table switches to upper bounds beyond this
MAX_CANONICAL_N = 8


@dataclass(frozen=True)
class WsatResult:
    """Outcome of an exact search.

    status is "exact" when the search finished; "inconclusive" means the
    budget ran out and only edge counts up to excluded_up_to are ruled out.
    """

    value: int | None
    witness: Hypergraph | None
    certificate: SaturationCertificate | None
    explored: int
    status: str
    excluded_up_to: int | None = None


def colex_combinations(universe: int, size: int):
    """All size-subsets of range(universe) as increasing tuples, in colex order."""
    if size == 0:
        yield ()
        return
    if size > universe:
        return
    idx = list(range(size))
    while True:
        yield tuple(idx)
        i = 0
        while i + 1 < size and idx[i] + 1 == idx[i + 1]:
            i += 1
        if idx[i] + 1 == universe:
            return
        idx[i] += 1
        for j in range(i):
            idx[j] = j


@lru_cache(maxsize=8)
def _perm_rank_tables(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    if n > MAX_CANONICAL_N:
        raise ValueError(f"isomorphism rejection supported for n <= {MAX_CANONICAL_N}")
    universe = edge_universe(n, r)
    ranks = rank_table(n, r)
    tables = []
    for p in permutations(range(n)):
        tables.append(tuple(ranks[tuple(sorted(p[v] for v in e))] for e in universe))
    return tuple(tables)


def canonical_edge_ranks(n: int, r: int, ranks) -> tuple[int, ...]:
    """Lexicographic minimum of the sorted edge-rank tuple over all vertex
    relabelings; an isomorphism invariant."""
    best = None
    for table in _perm_rank_tables(n, r):
        cand = tuple(sorted(table[rk] for rk in ranks))
        if best is None or cand < best:
            best = cand
    return best


def wsat_exact(n: int, pattern: Pattern, budget: int = DEFAULT_BUDGET,
               *, prune: bool = False) -> WsatResult:
    """Smallest edge count of a weakly saturated r-graph on n vertices,
    established by exhaustion, with the colex-least witness."""
    universe = comb(n, pattern.r)
    if universe > MAX_SOLVER_UNIVERSE:
        raise ValueError(
            f"edge universe C({n},{pattern.r}) = {universe} exceeds the "
            f"solver limit {MAX_SOLVER_UNIVERSE}")
    if budget < 1:
        raise ValueError("budget must be positive")
    idx = witness_index(n, pattern)
    full = idx.full_mask
    explored = 0
    for m in range(universe + 1):
        seen: set[tuple[int, ...]] | None = set() if prune else None
        for ranks in colex_combinations(universe, m):
            if prune:
                key = canonical_edge_ranks(n, pattern.r, ranks)
                if key in seen:
                    continue
                seen.add(key)
            if explored >= budget:
                return WsatResult(None, None, None, explored,
                                  "inconclusive", m - 1)
            explored += 1
            mask = 0
            for rk in ranks:
                mask |= 1 << rk
            if idx.close(mask) == full:
                witness = graph_of_mask(n, pattern.r, mask)
                cert = closure(witness, pattern).certificate
                return WsatResult(m, witness, cert, explored, "exact")
    raise AssertionError("unreachable: the complete graph percolates")


def wsat_upper_witness(n: int, pattern: Pattern) -> tuple[int, Hypergraph]:
    """Best engine-verified upper bound among the generator pipelines, with
    the graph achieving it."""
    r, h, s = pattern.r, pattern.h, pattern.s
    candidates: list[Hypergraph] = []
    if n >= r:
        candidates.append(complete_graph(n, r))
    else:
        candidates.append(Hypergraph(n, r))  # empty universe, vacuously complete
    if n >= h:
        candidates.append(clique_extremal(n, h, r))
        if s == 1:
            candidates.append(s1_construction(pattern, n))
        if s >= 2:
            k1 = max(h, (n + 1) // 2)
            k2 = n - k1
            if 0 < k2 <= k1:
                candidates.append(padded_example(clique_extremal(k1, h, r),
                                                 k2, pattern))
    best = None
    for g in candidates:
        if is_weakly_saturated(g, pattern):
            if best is None or g.edge_count < best.edge_count:
                best = g
    assert best is not None  # the complete graph always qualifies
    return best.edge_count, best


def wsat_upper(n: int, pattern: Pattern) -> int:
    return wsat_upper_witness(n, pattern)[0]


@dataclass(frozen=True)
class RatioRow:
    n: int
    value: int
    ratio: float
    method: str  # "exact" | "upper"


def ratio_table(pattern: Pattern, sizes, budget: int = DEFAULT_BUDGET
                ) -> list[RatioRow]:
    """Normalized values value / n^(s-1) across sizes, exact where the
    universe is small enough and upper bounds elsewhere."""
    rows = []
    for n in sizes:
        method = "exact" if comb(n, pattern.r) <= EXACT_TABLE_UNIVERSE else "upper"
        if method == "exact":
            result = wsat_exact(n, pattern, budget)
            if result.status != "exact":
                method = "upper"
        if method == "exact":
            value = result.value
        else:
            value = wsat_upper(n, pattern)
        rows.append(RatioRow(n, value, value / n ** (pattern.s - 1), method))
    return rows
