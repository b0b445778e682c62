"""Simple undirected graphs on at most 64 vertices, stored as neighbour bitsets.

Vertices are ``0..n-1``. ``adj[i]`` is an int whose bit ``j`` is set iff ``i ~ j``.
Graphs are immutable; every operation returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple, Union

MAX_VERTICES = 64


class GraphError(ValueError):
    """Invalid graph data (asymmetric adjacency, loops, bad vertex index)."""


class CapacityError(GraphError):
    """Requested graph exceeds the 64-vertex bitset capacity."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: Tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"n={self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows, expected {self.n}")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"vertex {i} has a neighbour outside 0..{self.n - 1}")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")
            r = row
            while r:
                low = r & -r
                j = low.bit_length() - 1
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"edge {i}-{j} is not symmetric")
                r ^= low

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        if n > MAX_VERTICES:
            raise CapacityError(f"n={n} exceeds {MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[Tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i] >> (i + 1) << (i + 1))]

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, tuple(full & ~row & ~(1 << i) for i, row in enumerate(self.adj)))

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabelling must be a permutation of 0..n-1")
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def induced(self, keep: Iterable[int]) -> "Graph":
        """Induced subgraph on ``keep``, relabelled in increasing vertex order."""
        keep = sorted(set(keep))
        index = {v: i for i, v in enumerate(keep)}
        return Graph.from_edges(
            len(keep), ((index[u], index[v]) for u, v in self.edges() if u in index and v in index)
        )

    def remove_vertices(self, removed: Iterable[int]) -> "Graph":
        removed = set(removed)
        return self.induced(v for v in range(self.n) if v not in removed)


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# --- constructed families -------------------------------------------------


@dataclass(frozen=True)
class Complete:
    n: int


@dataclass(frozen=True)
class EmptyGraph:
    n: int


@dataclass(frozen=True)
class CompleteBipartite:
    s: int
    t: int


@dataclass(frozen=True)
class Complement:
    inner: "GraphFamilySpec"


@dataclass(frozen=True)
class Join:
    left: "GraphFamilySpec"
    right: "GraphFamilySpec"


GraphFamilySpec = Union[Complete, EmptyGraph, CompleteBipartite, Complement, Join]


def family_order(spec: GraphFamilySpec) -> int:
    """Vertex count of ``spec`` without building it."""
    if isinstance(spec, (Complete, EmptyGraph)):
        sizes = [spec.n]
    elif isinstance(spec, CompleteBipartite):
        sizes = [spec.s, spec.t]
    elif isinstance(spec, Complement):
        return family_order(spec.inner)
    elif isinstance(spec, Join):
        return family_order(spec.left) + family_order(spec.right)
    else:
        raise TypeError(f"not a graph family spec: {spec!r}")
    if any(size < 1 for size in sizes):
        raise GraphError(f"size parameters must be >= 1 in {spec!r}")
    return sum(sizes)


def build(spec: GraphFamilySpec) -> Graph:
    """Realise a family spec; join operands are labelled left block first."""
    total = family_order(spec)
    if total > MAX_VERTICES:
        raise CapacityError(f"{spec!r} has {total} vertices, capacity is {MAX_VERTICES}")
    return _build(spec)


def _build(spec: GraphFamilySpec) -> Graph:
    if isinstance(spec, Complete):
        return complete_graph(spec.n)
    if isinstance(spec, EmptyGraph):
        return Graph.empty(spec.n)
    if isinstance(spec, CompleteBipartite):
        return join(Graph.empty(spec.s), Graph.empty(spec.t))
    if isinstance(spec, Complement):
        return _build(spec.inner).complement()
    return join(_build(spec.left), _build(spec.right))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    if g.n + h.n > MAX_VERTICES:
        raise CapacityError(f"union has {g.n + h.n} vertices")
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    """``g ∨ h``: disjoint union plus every edge between the two vertex sets."""
    if g.n + h.n > MAX_VERTICES:
        raise CapacityError(f"join has {g.n + h.n} vertices")
    left = (1 << g.n) - 1
    right = ((1 << h.n) - 1) << g.n
    rows = tuple(row | right for row in g.adj) + tuple((row << g.n) | left for row in h.adj)
    return Graph(g.n + h.n, rows)


# --- connectivity and bipartiteness ----------------------------------------


def component_masks(g: Graph, within: Optional[int] = None) -> list[int]:
    """Vertex masks of the connected components of the subgraph induced by ``within``."""
    remaining = (1 << g.n) - 1 if within is None else within
    comps = []
    while remaining:
        seed = remaining & -remaining
        comp = frontier = seed
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = g.adj[low.bit_length() - 1] & remaining & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        remaining &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    if g.n < 1:
        raise GraphError("connectivity is undefined for the null graph")
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    reached = 1
    while queue:
        v = queue.popleft()
        for w in bits(g.adj[v]):
            if not seen[w]:
                seen[w] = True
                reached += 1
                queue.append(w)
    return reached == g.n


def two_coloring(g: Graph, within: Optional[int] = None) -> Optional[int]:
    """Mask of colour-1 vertices of a proper 2-colouring of ``g[within]``, or None.

    Each component's lowest vertex gets colour 0.
    """
    remaining = (1 << g.n) - 1 if within is None else within
    ones = 0
    while remaining:
        seed = remaining & -remaining
        side = [seed, 0]
        seen = frontier = seed
        colour = 0
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= remaining
            if nxt & side[colour]:
                return None
            colour ^= 1
            frontier = nxt & ~seen
            side[colour] |= frontier
            seen |= frontier
        if side[0] & side[1] or any(g.adj[v] & side[c] for c in (0, 1) for v in bits(side[c])):
            return None
        ones |= side[1]
        remaining &= ~seen
    return ones


def is_bipartite(g: Graph) -> Optional[Tuple[list[int], list[int]]]:
    """A proper 2-colouring as two vertex lists, or None when ``g`` has an odd cycle."""
    ones = two_coloring(g)
    if ones is None:
        return None
    zeros = ((1 << g.n) - 1) & ~ones
    return bits(zeros), bits(ones)


def vertex_bipartiteness(g: Graph, limit: Optional[int] = None) -> Tuple[int, list[int]]:
    """Minimum number of vertices whose deletion leaves a bipartite graph.

    Subsets are tried in increasing size (lexicographic within a size), so the
    witness is the lexicographically first minimum odd cycle transversal.
    With ``limit`` set, returns ``(limit + 1, [])`` once every set of size
    ``<= limit`` has failed.
    """
    full = (1 << g.n) - 1
    top = g.n if limit is None else min(limit, g.n)
    for size in range(top + 1):
        for removed in combinations(range(g.n), size):
            mask = full
            for v in removed:
                mask &= ~(1 << v)
            if two_coloring(g, mask) is not None:
                return size, list(removed)
    return top + 1, []


def in_sigma_k(g: Graph, k: int) -> bool:
    """Connected and at most ``k`` vertex deletions away from bipartite."""
    if k < 0:
        raise GraphError("k must be nonnegative")
    return is_connected(g) and vertex_bipartiteness(g, limit=k)[0] <= k
