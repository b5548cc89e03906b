"""Core data model: partition matrices, colored types, graphs, and maps.

A partition matrix is a symmetric table over {0, 1, *} with no * on the
diagonal; it specifies which vertex classes of a partition must span
non-edges (0), edges (1), or anything (*).  The equivalent *type* view is a
complete graph whose vertices are colored red or blue and whose edges are
colored red, blue or green; 0, 1 and * correspond to red, blue and green.
All values here are immutable and hashable, and every operation is a pure
function, so everything is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

RED, BLUE, GREEN = 0, 1, 2
ZERO, ONE, STAR = 0, 1, 2  # matrix entries, aligned with the color correspondence

COLOR_NAMES = ("red", "blue", "green")
ENTRY_CHARS = "01*"

VertexMap = tuple  # map from vertices 0..k-1 of a domain to target vertex indices


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the pair (i, j), i < j, in lexicographic pair order."""
    if not 0 <= i < j < n:
        raise ValueError(f"bad pair ({i}, {j}) for n={n}")
    return i * (n - 1) - i * (i - 1) // 2 + (j - i - 1)


def vertex_pairs(n: int):
    """All pairs (i, j) with i < j < n, in lexicographic order."""
    return combinations(range(n), 2)


@dataclass(frozen=True)
class PartitionMatrix:
    """Symmetric m x m table over {ZERO, ONE, STAR}, no STAR on the diagonal."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        m = len(self.entries)
        for i, row in enumerate(self.entries):
            if len(row) != m:
                raise ValueError(f"row {i} has length {len(row)}, expected {m}")
            for j, e in enumerate(row):
                if e not in (ZERO, ONE, STAR):
                    raise ValueError(f"bad entry {e!r} at ({i}, {j})")
        for i in range(m):
            if self.entries[i][i] == STAR:
                raise ValueError(f"star on diagonal {i}")
            for j in range(i + 1, m):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(f"not symmetric ({i},{j})")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "PartitionMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def m(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]


@dataclass(frozen=True)
class TypeGraph:
    """Complete graph with red/blue vertices and red/blue/green edges.

    Edge colors are stored in lexicographic pair order: (0,1), (0,2), ...,
    (0,n-1), (1,2), ...
    """

    vertex_colors: tuple[int, ...]
    edge_colors: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.vertex_colors)
        for i, c in enumerate(self.vertex_colors):
            if c not in (RED, BLUE):
                raise ValueError(f"bad vertex color {c!r} at {i}")
        if len(self.edge_colors) != n * (n - 1) // 2:
            raise ValueError(
                f"expected {n * (n - 1) // 2} edge colors, got {len(self.edge_colors)}"
            )
        for k, c in enumerate(self.edge_colors):
            if c not in (RED, BLUE, GREEN):
                raise ValueError(f"bad edge color {c!r} at pair index {k}")

    @property
    def n(self) -> int:
        return len(self.vertex_colors)

    def edge(self, i: int, j: int) -> int:
        """Color of the edge between distinct vertices i and j."""
        if i > j:
            i, j = j, i
        return self.edge_colors[pair_index(i, j, self.n)]

    def vertices(self) -> range:
        return range(self.n)

    def red_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.vertex_colors) if c == RED)

    def blue_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.vertex_colors) if c == BLUE)


def type_from_edges(
    vertex_colors: Sequence[int],
    edges: dict[tuple[int, int], int],
    default: int,
) -> TypeGraph:
    """Build a type from explicit edge colors; unlisted pairs get `default`."""
    n = len(vertex_colors)
    colors = [default] * (n * (n - 1) // 2)
    for (i, j), c in edges.items():
        if i > j:
            i, j = j, i
        colors[pair_index(i, j, n)] = c
    return TypeGraph(tuple(vertex_colors), tuple(colors))


@dataclass(frozen=True)
class SimpleGraph:
    """Finite simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative vertex count")
        for e in self.edges:
            u, v = e
            if not 0 <= u < v < self.n:
                raise ValueError(f"bad edge {e!r} for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "SimpleGraph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at {u}")
            if u > v:
                u, v = v, u
            norm.add((u, v))
        return cls(n, frozenset(norm))

    @classmethod
    def empty(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset())

    @classmethod
    def complete(cls, n: int) -> "SimpleGraph":
        return cls(n, frozenset((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "SimpleGraph":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return cls.from_edges(n, [(v, (v + 1) % n) for v in range(n)])

    @classmethod
    def path(cls, n: int) -> "SimpleGraph":
        return cls.from_edges(n, [(v, v + 1) for v in range(n - 1)])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edges

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(u + w - v for (u, w) in self.edges if v in (u, w)))

    def induced(self, keep: Sequence[int]) -> "SimpleGraph":
        """Induced subgraph on `keep`, reindexed in the given order."""
        pos = {v: k for k, v in enumerate(keep)}
        if len(pos) != len(keep):
            raise ValueError("duplicate vertices in keep")
        edges = [
            (pos[u], pos[v])
            for (u, v) in self.edges
            if u in pos and v in pos
        ]
        return SimpleGraph.from_edges(len(keep), edges)

    def delete_vertex(self, v: int) -> "SimpleGraph":
        """Remove vertex v; remaining vertices keep their relative order."""
        return self.induced([u for u in range(self.n) if u != v])

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class SubtypeCopy:
    """An exact injective copy of `pattern` inside `host`.

    image[k] is the host vertex playing the role of pattern vertex k; vertex
    colors match and every pattern pair keeps its exact edge color in the
    host.
    """

    pattern: TypeGraph
    host: TypeGraph
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.image) != self.pattern.n:
            raise ValueError("image length does not match pattern order")
        if len(set(self.image)) != len(self.image):
            raise ValueError("image is not injective")
        for k, h in enumerate(self.image):
            if not 0 <= h < self.host.n:
                raise ValueError(f"image vertex {h} outside host")
            if self.pattern.vertex_colors[k] != self.host.vertex_colors[h]:
                raise ValueError(f"vertex color mismatch at pattern vertex {k}")
        for k, l in vertex_pairs(self.pattern.n):
            if self.pattern.edge(k, l) != self.host.edge(self.image[k], self.image[l]):
                raise ValueError(f"edge color mismatch on pattern pair ({k},{l})")


# ---------------------------------------------------------------------------
# matrix <-> type correspondence


def type_from_matrix(mat: PartitionMatrix) -> TypeGraph:
    """Type view of a matrix: diagonal 0/1 -> red/blue vertex, entries -> edge colors."""
    m = mat.m
    vertex_colors = tuple(mat.entries[i][i] for i in range(m))
    edge_colors = tuple(mat.entries[i][j] for i, j in vertex_pairs(m))
    return TypeGraph(vertex_colors, edge_colors)


def matrix_from_type(tau: TypeGraph) -> PartitionMatrix:
    """Exact inverse of type_from_matrix."""
    n = tau.n
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = tau.vertex_colors[i]
    for i, j in vertex_pairs(n):
        rows[i][j] = rows[j][i] = tau.edge(i, j)
    return PartitionMatrix.from_rows(rows)


def coloring_matrix(k: int) -> PartitionMatrix:
    """k x k matrix with 0 diagonal and * elsewhere (k-coloring problem)."""
    if k < 1:
        raise ValueError("k must be positive")
    rows = [[ZERO if i == j else STAR for j in range(k)] for i in range(k)]
    return PartitionMatrix.from_rows(rows)


def homomorphism_matrix(h: SimpleGraph) -> PartitionMatrix:
    """Matrix whose partition problem is homomorphism into h: * on edges, 0 elsewhere."""
    n = h.n
    rows = [
        [STAR if i != j and h.has_edge(i, j) else ZERO for j in range(n)]
        for i in range(n)
    ]
    return PartitionMatrix.from_rows(rows)


def is_friendly(mat: PartitionMatrix) -> bool:
    """False iff some 2x2 principal submatrix is [[0,*],[*,0]] or [[1,*],[*,1]]."""
    for i, j in vertex_pairs(mat.m):
        if mat.entries[i][j] == STAR and mat.entries[i][i] == mat.entries[j][j]:
            return False
    return True


def type_is_friendly(tau: TypeGraph) -> bool:
    """No green edge between two red vertices or between two blue vertices."""
    for i, j in vertex_pairs(tau.n):
        if tau.edge(i, j) == GREEN and tau.vertex_colors[i] == tau.vertex_colors[j]:
            return False
    return True


# ---------------------------------------------------------------------------
# neighborhoods and subtypes


def common_neighborhood(tau: TypeGraph, member_set: Iterable[int]) -> frozenset:
    """Vertices outside the set with no red edge to one member and blue edge to another.

    For the empty set every vertex qualifies vacuously.
    """
    members = frozenset(member_set)
    for a in members:
        if not 0 <= a < tau.n:
            raise ValueError(f"vertex {a} outside type")
    result = []
    for v in range(tau.n):
        if v in members:
            continue
        saw_red = saw_blue = False
        for a in members:
            c = tau.edge(v, a)
            if c == RED:
                saw_red = True
            elif c == BLUE:
                saw_blue = True
        if not (saw_red and saw_blue):
            result.append(v)
    return frozenset(result)


def subtype(tau: TypeGraph, vertex_set: Iterable[int]) -> TypeGraph:
    """Induced type on the given vertices, reindexed in ascending host order."""
    keep = sorted(set(vertex_set))
    for a in keep:
        if not 0 <= a < tau.n:
            raise ValueError(f"vertex {a} outside type")
    vertex_colors = tuple(tau.vertex_colors[a] for a in keep)
    edge_colors = tuple(tau.edge(keep[i], keep[j]) for i, j in vertex_pairs(len(keep)))
    return TypeGraph(vertex_colors, edge_colors)


def subtype_copy(tau: TypeGraph, vertex_set: Iterable[int]) -> SubtypeCopy:
    """Subtype of tau on the set, packaged with its host-index translation."""
    keep = tuple(sorted(set(vertex_set)))
    return SubtypeCopy(subtype(tau, keep), tau, keep)


def find_subtype_copy(host: TypeGraph, pattern: TypeGraph) -> SubtypeCopy | None:
    """Search for an exact color-preserving injective copy of pattern in host.

    Returns the copy with lexicographically least image, or None.
    """
    p = pattern.n
    image: list[int] = []
    used = [False] * host.n

    def extend(k: int) -> bool:
        if k == p:
            return True
        for cand in range(host.n):
            if used[cand]:
                continue
            if host.vertex_colors[cand] != pattern.vertex_colors[k]:
                continue
            if any(
                host.edge(image[l], cand) != pattern.edge(l, k) for l in range(k)
            ):
                continue
            image.append(cand)
            used[cand] = True
            if extend(k + 1):
                return True
            used[cand] = False
            image.pop()
        return False

    if extend(0):
        return SubtypeCopy(pattern, host, tuple(image))
    return None


# ---------------------------------------------------------------------------
# embeddings and homomorphisms


def is_embedding(g: SimpleGraph, tau: TypeGraph, psi: Sequence[int]) -> bool:
    """Does psi embed g into tau?

    Edges must land on one blue vertex or across a blue/green edge; non-edges
    on one red vertex or across a red/green edge.
    """
    if len(psi) != g.n:
        raise ValueError(f"map has {len(psi)} entries, graph has {g.n} vertices")
    for t in psi:
        if not 0 <= t < tau.n:
            raise ValueError(f"image vertex {t} outside type")
    for u, v in vertex_pairs(g.n):
        s, t = psi[u], psi[v]
        if g.has_edge(u, v):
            if s == t:
                if tau.vertex_colors[s] != BLUE:
                    return False
            elif tau.edge(s, t) == RED:
                return False
        else:
            if s == t:
                if tau.vertex_colors[s] != RED:
                    return False
            elif tau.edge(s, t) == BLUE:
                return False
    return True


def is_edge_homomorphism(
    sigma: TypeGraph, tau: TypeGraph, phi: Sequence[int]
) -> bool:
    """Red edges may collapse into red vertices or cross red/green edges;
    blue edges likewise with blue; green edges are unconstrained."""
    if len(phi) != sigma.n:
        raise ValueError(f"map has {len(phi)} entries, type has {sigma.n} vertices")
    for t in phi:
        if not 0 <= t < tau.n:
            raise ValueError(f"image vertex {t} outside target type")
    for v, w in vertex_pairs(sigma.n):
        c = sigma.edge(v, w)
        if c == GREEN:
            continue
        s, t = phi[v], phi[w]
        if s == t:
            if tau.vertex_colors[s] != c:
                return False
        else:
            d = tau.edge(s, t)
            if d != c and d != GREEN:
                return False
    return True


def is_type_homomorphism(
    sigma: TypeGraph, tau: TypeGraph, phi: Sequence[int]
) -> bool:
    """Edge-homomorphism that preserves vertex colors and sends green edges
    across green edges (never collapsing them)."""
    if not is_edge_homomorphism(sigma, tau, phi):
        return False
    for v in range(sigma.n):
        if sigma.vertex_colors[v] != tau.vertex_colors[phi[v]]:
            return False
    for v, w in vertex_pairs(sigma.n):
        if sigma.edge(v, w) == GREEN:
            s, t = phi[v], phi[w]
            if s == t or tau.edge(s, t) != GREEN:
                return False
    return True


def compose(outer: Sequence[int], inner: Sequence[int]) -> tuple[int, ...]:
    """Composition outer(inner(.)) of two vertex maps."""
    return tuple(outer[x] for x in inner)


# ---------------------------------------------------------------------------
# matrix block structure and split graphs


@dataclass(frozen=True)
class BlockRowReport:
    """Equality structure of the diagonal-0 (A) and diagonal-1 (B) row blocks."""

    a_rows_distinct: bool
    b_rows_distinct: bool
    no_three_rows_equal_a: bool
    no_three_rows_equal_b: bool


def block_row_distinctness(mat: PartitionMatrix) -> BlockRowReport:
    """Compare full matrix rows within the diagonal-0 and diagonal-1 blocks."""

    def stats(rows: list[tuple[int, ...]]) -> tuple[bool, bool]:
        counts: dict[tuple[int, ...], int] = {}
        for r in rows:
            counts[r] = counts.get(r, 0) + 1
        mult = max(counts.values(), default=0)
        return mult <= 1, mult <= 2

    a_rows = [mat.entries[i] for i in range(mat.m) if mat.entries[i][i] == ZERO]
    b_rows = [mat.entries[i] for i in range(mat.m) if mat.entries[i][i] == ONE]
    a2, a3 = stats(a_rows)
    b2, b3 = stats(b_rows)
    return BlockRowReport(a2, b2, a3, b3)


def is_split_graph(g: SimpleGraph) -> bool:
    """Can the vertices be partitioned into a clique and an independent set?

    Uses the degree-sequence characterization: with degrees sorted
    descending and m = max{i : d_i >= i-1}, the graph is split iff
    sum_{i<=m} d_i = m(m-1) + sum_{i>m} d_i.
    """
    degrees = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    m = 0
    for i, d in enumerate(degrees, start=1):
        if d >= i - 1:
            m = i
    head = sum(degrees[:m])
    tail = sum(degrees[m:])
    return head == m * (m - 1) + tail
