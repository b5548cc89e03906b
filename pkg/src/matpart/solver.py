"""Exact decision procedures: embedding search, minimality tests, and
enumeration of minimal obstructions and edge-homomorphisms.

The search is a plain backtracking solver over vertex assignments with
optional forward checking; everything is complete (no heuristics that lose
solutions), and a node limit turns the answer into a tri-state so a timeout
is never mistaken for "no embedding".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Callable, Iterator, Sequence

import numpy as np

from .model import (
    BLUE,
    GREEN,
    RED,
    SimpleGraph,
    TypeGraph,
    is_edge_homomorphism,
    is_embedding,
    vertex_pairs,
)

SAT = "embeddable"
UNSAT = "no-embedding"
UNKNOWN = "limit-exceeded"

BRUTE_FORCE_LIMIT = 10**8


@dataclass(frozen=True)
class SolverConfig:
    use_forward_checking: bool = True
    variable_order: str = "most-constrained"  # or "static"
    node_limit: int | None = None

    def __post_init__(self) -> None:
        if self.variable_order not in ("static", "most-constrained"):
            raise ValueError(f"unknown variable order {self.variable_order!r}")
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node limit must be positive")


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an embedding search.

    status is SAT/UNSAT/UNKNOWN; map is set only on SAT.  nodes counts
    attempted assignments, depth is the deepest partial assignment reached.
    """

    status: str
    map: tuple[int, ...] | None
    nodes: int
    depth: int

    @property
    def found(self) -> bool:
        return self.status == SAT


def _compatibility_tables(tau: TypeGraph) -> tuple[list[list[bool]], list[list[bool]]]:
    """edge_ok[s][t]: a graph edge may map onto (s, t); nonedge_ok likewise."""
    n = tau.n
    edge_ok = [[False] * n for _ in range(n)]
    nonedge_ok = [[False] * n for _ in range(n)]
    for s in range(n):
        edge_ok[s][s] = tau.vertex_colors[s] == BLUE
        nonedge_ok[s][s] = tau.vertex_colors[s] == RED
    for s, t in vertex_pairs(n):
        c = tau.edge(s, t)
        edge_ok[s][t] = edge_ok[t][s] = c != RED
        nonedge_ok[s][t] = nonedge_ok[t][s] = c != BLUE
    return edge_ok, nonedge_ok


def find_embedding(
    g: SimpleGraph, tau: TypeGraph, config: SolverConfig | None = None
) -> SearchResult:
    """Complete backtracking search for an embedding of g into tau."""
    cfg = config or SolverConfig()
    if g.n == 0:
        return SearchResult(SAT, (), 0, 0)
    if tau.n == 0:
        return SearchResult(UNSAT, None, 0, 0)

    edge_ok, nonedge_ok = _compatibility_tables(tau)
    adjacent = [[False] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        adjacent[u][v] = adjacent[v][u] = True

    candidates: list[set[int]] = [set(range(tau.n)) for _ in range(g.n)]
    assignment: list[int] = [-1] * g.n
    stats = {"nodes": 0, "depth": 0}
    limit = cfg.node_limit

    def pick_vertex() -> int:
        free = [u for u in range(g.n) if assignment[u] == -1]
        if cfg.variable_order == "static":
            return free[0]
        return min(free, key=lambda u: (len(candidates[u]), u))

    def consistent(u: int, t: int) -> bool:
        for v in range(g.n):
            s = assignment[v]
            if s == -1:
                continue
            ok = edge_ok[t][s] if adjacent[u][v] else nonedge_ok[t][s]
            if not ok:
                return False
        return True

    def search(depth: int) -> str:
        if depth == g.n:
            return SAT
        stats["depth"] = max(stats["depth"], depth)
        u = pick_vertex()
        for t in sorted(candidates[u]):
            stats["nodes"] += 1
            if limit is not None and stats["nodes"] > limit:
                return UNKNOWN
            if not cfg.use_forward_checking and not consistent(u, t):
                continue
            assignment[u] = t
            removed: list[tuple[int, int]] = []
            feasible = True
            if cfg.use_forward_checking:
                for v in range(g.n):
                    if assignment[v] != -1 or v == u:
                        continue
                    table = edge_ok if adjacent[u][v] else nonedge_ok
                    for s in list(candidates[v]):
                        if not table[s][t]:
                            candidates[v].discard(s)
                            removed.append((v, s))
                    if not candidates[v]:
                        feasible = False
                        break
            if feasible:
                outcome = search(depth + 1)
                if outcome != UNSAT:
                    assignment_restore = outcome == UNKNOWN
                    if assignment_restore:
                        # propagate the limit signal without unwinding state
                        for v, s in removed:
                            candidates[v].add(s)
                        assignment[u] = -1
                    return outcome
            for v, s in removed:
                candidates[v].add(s)
            assignment[u] = -1
        return UNSAT

    outcome = search(0)
    if outcome == SAT:
        return SearchResult(SAT, tuple(assignment), stats["nodes"], stats["depth"])
    return SearchResult(outcome, None, stats["nodes"], stats["depth"])


def brute_force_has_embedding(g: SimpleGraph, tau: TypeGraph) -> bool:
    """Exhaustive oracle over all |V(tau)|^|V(g)| maps; guarded by size."""
    if g.n == 0:
        return True
    if tau.n == 0:
        return False
    if tau.n**g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"search space {tau.n}^{g.n} exceeds the brute-force guard")
    psi = [0] * g.n
    while True:
        if is_embedding(g, tau, psi):
            return True
        k = g.n - 1
        while k >= 0 and psi[k] == tau.n - 1:
            psi[k] = 0
            k -= 1
        if k < 0:
            return False
        psi[k] += 1


def has_embedding(g: SimpleGraph, tau: TypeGraph) -> bool:
    """Complete search without node limit, reduced to a boolean."""
    return find_embedding(g, tau).found


def is_minimal_obstruction(g: SimpleGraph, tau: TypeGraph) -> bool:
    """g has no embedding into tau but every one-vertex-deleted subgraph does."""
    if has_embedding(g, tau):
        return False
    return all(has_embedding(g.delete_vertex(v), tau) for v in range(g.n))


# ---------------------------------------------------------------------------
# canonical forms (desk scale: n <= 8, minimum adjacency bitstring)

MAX_CANONICAL_N = 8


@lru_cache(maxsize=None)
def _perm_array(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.int64)


@lru_cache(maxsize=None)
def _pair_weights(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    iu = np.triu_indices(n, 1)
    k = len(iu[0])
    weights = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)  # (0,1) is the top bit
    return iu[0], iu[1], weights


def canonical_code(g: SimpleGraph) -> int:
    """Minimum adjacency bitstring over all vertex relabelings, as an integer.

    Bit order is lexicographic over pairs with (0,1) most significant.
    """
    n = g.n
    if n > MAX_CANONICAL_N:
        raise ValueError(f"canonical form supported up to {MAX_CANONICAL_N} vertices")
    if n <= 1:
        return 0
    adj = np.zeros((n, n), dtype=np.int64)
    for u, v in g.edges:
        adj[u, v] = adj[v, u] = 1
    perms = _perm_array(n)
    rows, cols, weights = _pair_weights(n)
    bits = adj[perms[:, rows], perms[:, cols]]
    return int((bits @ weights).min())


def graph_from_code(n: int, code: int) -> SimpleGraph:
    """Inverse of canonical_code's bit layout for a given vertex count."""
    pairs = list(vertex_pairs(n))
    k = len(pairs)
    edges = [pairs[i] for i in range(k) if code >> (k - 1 - i) & 1]
    return SimpleGraph.from_edges(n, edges)


def canonical_graph(g: SimpleGraph) -> SimpleGraph:
    return graph_from_code(g.n, canonical_code(g))


def are_isomorphic(a: SimpleGraph, b: SimpleGraph) -> bool:
    return a.n == b.n and canonical_code(a) == canonical_code(b)


# ---------------------------------------------------------------------------
# minimal obstruction enumeration


def _extensions(g: SimpleGraph) -> Iterator[SimpleGraph]:
    """All graphs formed by adding one vertex with an arbitrary neighborhood."""
    n = g.n
    base = list(g.edges)
    for mask in range(1 << n):
        extra = [(v, n) for v in range(n) if mask >> v & 1]
        yield SimpleGraph(n + 1, frozenset(base + extra))


def enumerate_minimal_obstructions(
    tau: TypeGraph, max_vertices: int
) -> list[SimpleGraph]:
    """All minimal obstructions with at most max_vertices vertices, one
    canonical representative per isomorphism class, sorted by (order, code).

    Grows candidates level by level: every embeddable graph and every
    minimal obstruction on k vertices is a one-vertex extension of an
    embeddable graph on k-1 vertices, because embeddability is hereditary
    and minimality demands embeddable deletions.
    """
    if not 1 <= max_vertices <= MAX_CANONICAL_N:
        raise ValueError(f"max_vertices must be in 1..{MAX_CANONICAL_N}")
    found: list[tuple[int, int]] = []
    embeddable = {0: SimpleGraph.empty(0)}  # canonical code -> representative
    for size in range(1, max_vertices + 1):
        seen: set[int] = set()
        next_embeddable: dict[int, SimpleGraph] = {}
        for parent in embeddable.values():
            for cand in _extensions(parent):
                code = canonical_code(cand)
                if code in seen:
                    continue
                seen.add(code)
                if has_embedding(cand, tau):
                    next_embeddable[code] = graph_from_code(size, code)
                elif all(
                    has_embedding(cand.delete_vertex(v), tau) for v in range(size)
                ):
                    found.append((size, code))
        embeddable = next_embeddable
    return [graph_from_code(n, code) for n, code in sorted(found)]


# ---------------------------------------------------------------------------
# edge-homomorphism enumeration and fixed-point scan

EDGE_HOM_LIMIT = 10**8
MAX_FIXED_POINT_N = 7


def _constraint_ok(tau: TypeGraph, c: int, s: int, t: int) -> bool:
    """May an edge of color c map onto target vertices (s, t)?"""
    if c == GREEN:
        return True
    if s == t:
        return tau.vertex_colors[s] == c
    d = tau.edge(s, t)
    return d == c or d == GREEN


def enumerate_edge_homomorphisms(
    sigma: TypeGraph, tau: TypeGraph
) -> Iterator[tuple[int, ...]]:
    """All edge-homomorphisms sigma -> tau in lexicographic order."""
    if sigma.n > 0 and tau.n == 0:
        return
    if tau.n > 1 and tau.n**sigma.n > EDGE_HOM_LIMIT:
        raise ValueError(f"search space {tau.n}^{sigma.n} exceeds the guard")
    phi: list[int] = []

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == sigma.n:
            yield tuple(phi)
            return
        for t in range(tau.n):
            if all(
                _constraint_ok(tau, sigma.edge(l, k), phi[l], t) for l in range(k)
            ):
                phi.append(t)
                yield from extend(k + 1)
                phi.pop()

    yield from extend(0)


@dataclass(frozen=True)
class FixedPointReport:
    """Minimizing witness of the fixed-point scan over large subtypes."""

    subtype_vertices: tuple[int, ...]
    map: tuple[int, ...]
    fixed_count: int
    alpha: Fraction
    beta: Fraction

    @property
    def subtype_size(self) -> int:
        return len(self.subtype_vertices)

    def __post_init__(self) -> None:
        if self.fixed_count > self.subtype_size:
            raise ValueError("fixed points exceed subtype size")


def min_fixed_points(tau: TypeGraph, alpha: Fraction | float) -> FixedPointReport:
    """Scan every subtype with at least alpha * |V(tau)| vertices and every
    edge-homomorphism from it into tau; return the witness with the fewest
    fixed points (first found in lexicographic scan order on ties)."""
    alpha = Fraction(alpha).limit_denominator(10**6) if not isinstance(alpha, Fraction) else alpha
    if not 0 < alpha <= 1:
        raise ValueError("alpha must be in (0, 1]")
    n = tau.n
    if n == 0:
        raise ValueError("type is empty")
    if n > MAX_FIXED_POINT_N:
        raise ValueError(f"exhaustive scan supported up to {MAX_FIXED_POINT_N} vertices")
    kmin = 1
    while Fraction(kmin) < alpha * n:
        kmin += 1

    best: FixedPointReport | None = None
    phi: list[int] = []

    def scan(vertices: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        k = len(phi)
        if k == len(vertices):
            yield tuple(phi)
            return
        for t in range(n):
            if all(
                _constraint_ok(tau, tau.edge(vertices[l], vertices[k]), phi[l], t)
                for l in range(k)
            ):
                phi.append(t)
                yield from scan(vertices)
                phi.pop()

    for size in range(kmin, n + 1):
        for vertices in combinations(range(n), size):
            for mapping in scan(vertices):
                fixed = sum(1 for a, t in zip(vertices, mapping) if a == t)
                if best is None or fixed < best.fixed_count:
                    best = FixedPointReport(
                        vertices, mapping, fixed, alpha, Fraction(fixed, n)
                    )
    assert best is not None  # kmin <= n guarantees at least the identity scan
    return best
