"""Vertex partitions, quotient matrices and eigenvalue interlacing.

For a partition with blocks ``B_1..B_m`` of a symmetric ``M``, the quotient
entry ``(i, j)`` is the average over rows of ``B_i`` of the row sum taken
over columns of ``B_j``. The quotient has the same eigenvalues as
``S^T M S`` where ``S`` is the characteristic matrix with columns scaled to
unit length, so spectra here are always computed from that symmetric form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .graph import Graph
from .linalg import DEFAULT_TOL, SymmetricMatrix, adjacency_matrix, eigenvalues_symmetric

INTERLACE_SLACK = 1e-8


class ContractError(ValueError):
    """A documented precondition does not hold."""


@dataclass(frozen=True)
class VertexPartition:
    blocks: Tuple[Tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]]):
        normalised = tuple(tuple(sorted(b)) for b in blocks)
        object.__setattr__(self, "blocks", normalised)
        seen = set()
        for i, b in enumerate(normalised):
            if not b:
                raise ContractError(f"block {i} is empty")
            overlap = seen.intersection(b)
            if overlap:
                raise ContractError(f"vertex {min(overlap)} appears in more than one block")
            seen.update(b)
        if seen != set(range(len(seen))):
            raise ContractError("blocks must cover exactly 0..n-1")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]

    def __len__(self):
        return len(self.blocks)

    @classmethod
    def singletons(cls, n: int) -> "VertexPartition":
        return cls([v] for v in range(n))

    @classmethod
    def trivial(cls, n: int) -> "VertexPartition":
        return cls([range(n)])

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "VertexPartition":
        """Blocks ordered by first appearance of each label."""
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        return cls(groups.values())

    def permuted(self, perm: Sequence[int]) -> "VertexPartition":
        return VertexPartition([perm[v] for v in b] for b in self.blocks)

    def characteristic_matrix(self, normalised: bool = True) -> np.ndarray:
        s = np.zeros((self.n, len(self.blocks)))
        for j, b in enumerate(self.blocks):
            s[list(b), j] = 1.0 / math.sqrt(len(b)) if normalised else 1.0
        return s


@dataclass(frozen=True)
class QuotientMatrix:
    entries: np.ndarray
    sizes: Tuple[int, ...]
    source_equitable: bool

    @property
    def order(self) -> int:
        return self.entries.shape[0]

    def tolist(self) -> list[list[float]]:
        return self.entries.tolist()

    def symmetrized(self) -> SymmetricMatrix:
        """``D^{1/2} Q D^{-1/2}`` with ``D`` the block sizes; equals ``S^T M S``."""
        r = np.sqrt(np.asarray(self.sizes, dtype=float))
        b = self.entries * r[:, None] / r[None, :]
        return SymmetricMatrix((b + b.T) / 2.0)

    def eigenvalues(self, tol: float = DEFAULT_TOL) -> list[float]:
        return eigenvalues_symmetric(self.symmetrized(), tol)


def _check_covers(p: VertexPartition, n: int) -> None:
    if p.n != n:
        raise ContractError(f"partition covers {p.n} vertices, matrix has order {n}")


def block_counts(g: Graph, p: VertexPartition) -> list[list[list[int]]]:
    """``counts[i][j]`` lists, for each vertex of block i, its neighbour count in block j."""
    _check_covers(p, g.n)
    masks = [sum(1 << v for v in b) for b in p.blocks]
    return [[[(g.adj[v] & mj).bit_count() for v in bi] for mj in masks] for bi in p.blocks]


def nonequitable_pair(g: Graph, p: VertexPartition) -> Optional[Tuple[int, int]]:
    """First block pair ``(i, j)`` whose vertices disagree on neighbours in ``j``."""
    for i, row in enumerate(block_counts(g, p)):
        for j, counts in enumerate(row):
            if min(counts) != max(counts):
                return i, j
    return None


def is_equitable(g: Graph, p: VertexPartition) -> bool:
    return nonequitable_pair(g, p) is None


def quotient_matrix(m: SymmetricMatrix, p: VertexPartition) -> QuotientMatrix:
    _check_covers(p, m.order)
    a = m.entries
    k = len(p.blocks)
    q = np.zeros((k, k))
    equitable = True
    for i, bi in enumerate(p.blocks):
        rows = a[list(bi), :]
        for j, bj in enumerate(p.blocks):
            sums = rows[:, list(bj)].sum(axis=1)
            q[i, j] = sums.mean()
            if sums.max() - sums.min() > 1e-12 * max(1.0, float(np.abs(sums).max())):
                equitable = False
    q.setflags(write=False)
    return QuotientMatrix(q, tuple(p.sizes), equitable)


def symmetrized_quotient(m: SymmetricMatrix, p: VertexPartition) -> SymmetricMatrix:
    """``S^T M S`` for the normalised characteristic matrix ``S``."""
    _check_covers(p, m.order)
    s = p.characteristic_matrix()
    b = s.T @ m.entries @ s
    return SymmetricMatrix((b + b.T) / 2.0)


def quotient_eigenvalues(m: SymmetricMatrix, p: VertexPartition, tol: float = DEFAULT_TOL) -> list[float]:
    return eigenvalues_symmetric(symmetrized_quotient(m, p), tol)


def interlacing_check(full: Sequence[float], quot: Sequence[float], slack: float = INTERLACE_SLACK) -> bool:
    """``full[i] >= quot[i] >= full[i + n - m]`` for every i (both descending)."""
    n, m = len(full), len(quot)
    if m > n:
        raise ContractError(f"quotient has {m} eigenvalues but the full matrix only {n}")
    return all(full[i] + slack >= quot[i] >= full[i + n - m] - slack for i in range(m))


def interlacing_is_tight(full: Sequence[float], quot: Sequence[float], slack: float = INTERLACE_SLACK) -> bool:
    """Some ``l`` with ``quot[i] = full[i]`` for ``i < l`` and ``quot[i] = full[i + n - m]`` after.

    Diagnostic only; tight interlacing indicates an equitable partition.
    """
    n, m = len(full), len(quot)
    if m > n:
        raise ContractError(f"quotient has {m} eigenvalues but the full matrix only {n}")
    for split in range(m + 1):
        if all(abs(quot[i] - full[i]) <= slack for i in range(split)) and all(
            abs(quot[i] - full[i + n - m]) <= slack for i in range(split, m)
        ):
            return True
    return False


def equitable_eigenvalue_containment(g: Graph, p: VertexPartition, tol: float = 1e-7) -> bool:
    """Every quotient eigenvalue lies within ``tol`` of an adjacency eigenvalue."""
    bad = nonequitable_pair(g, p)
    if bad is not None:
        i, j = bad
        raise ContractError(f"partition is not equitable: block {i} vertices differ in neighbours in block {j}")
    a = adjacency_matrix(g)
    full = np.asarray(eigenvalues_symmetric(a))
    quot = quotient_matrix(a, p).eigenvalues()
    return all(float(np.min(np.abs(full - mu))) <= tol for mu in quot)


def degree_partition(g: Graph) -> VertexPartition:
    return VertexPartition.from_labels(g.degrees())


def color_refinement(g: Graph, initial: Optional[VertexPartition] = None) -> VertexPartition:
    """Coarsest equitable refinement of ``initial`` (default: one block).

    Internal helper for generating equitable partitions in tests.
    """
    labels = [0] * g.n
    if initial is not None:
        for i, b in enumerate(initial.blocks):
            for v in b:
                labels[v] = i
    while True:
        sig = [
            (labels[v], tuple(sorted(labels[w] for w in g.neighbors(v)))) for v in range(g.n)
        ]
        ids = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ids[s] for s in sig]
        if len(set(new)) == len(set(labels)):
            return VertexPartition.from_labels(new)
        labels = new
