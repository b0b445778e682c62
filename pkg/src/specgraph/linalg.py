"""Dense symmetric matrices, graph matrices and a cyclic Jacobi eigensolver."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from .graph import Graph

DEFAULT_TOL = 1e-12
DEFAULT_CLUSTER_TOL = 1e-6
MAX_SWEEPS = 50


class NumericalError(ArithmeticError):
    """The eigensolver failed to converge within its sweep budget."""


class SymmetricMatrix:
    """Real symmetric matrix; construction rejects anything not exactly symmetric."""

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"need a nonempty square matrix, got shape {a.shape}")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not symmetric")
        a.setflags(write=False)
        self._a = a

    @property
    def order(self) -> int:
        return self._a.shape[0]

    @property
    def entries(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    def to_array(self) -> np.ndarray:
        return self._a.copy()

    def trace(self) -> float:
        return float(np.trace(self._a))

    def __getitem__(self, idx):
        return self._a[idx]

    def __eq__(self, other):
        return isinstance(other, SymmetricMatrix) and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash(self._a.tobytes())

    def __repr__(self):
        return f"SymmetricMatrix({self._a.tolist()!r})"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues as descending ``(value, multiplicity)`` clusters."""

    eigenvalues: Tuple[Tuple[float, int], ...]
    cluster_tolerance: float = DEFAULT_CLUSTER_TOL

    @classmethod
    def from_values(cls, values: Iterable[float], cluster_tol: float = DEFAULT_CLUSTER_TOL) -> "Spectrum":
        """Cluster a list of eigenvalues; neighbours within ``cluster_tol`` chain together."""
        if cluster_tol <= 0:
            raise ValueError("cluster_tol must be positive")
        ordered = sorted((float(v) for v in values), reverse=True)
        clusters: list[list[float]] = []
        for v in ordered:
            if clusters and clusters[-1][-1] - v <= cluster_tol:
                clusters[-1].append(v)
            else:
                clusters.append([v])
        return cls(tuple((math.fsum(c) / len(c), len(c)) for c in clusters), cluster_tol)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[float, int]], cluster_tol: float = DEFAULT_CLUSTER_TOL) -> "Spectrum":
        values = []
        for value, mult in pairs:
            values.extend([value] * mult)
        return cls.from_values(values, cluster_tol)

    @property
    def order(self) -> int:
        return sum(m for _, m in self.eigenvalues)

    def values(self) -> list[float]:
        """Flattened descending eigenvalue list."""
        return [v for v, m in self.eigenvalues for _ in range(m)]

    def matches(self, other: "Spectrum", tol: float) -> bool:
        """Same cluster count and multiplicities, values within ``tol``."""
        if len(self.eigenvalues) != len(other.eigenvalues):
            return False
        return all(
            m1 == m2 and abs(v1 - v2) <= tol
            for (v1, m1), (v2, m2) in zip(self.eigenvalues, other.eigenvalues)
        )

    def to_json(self) -> list[list]:
        return [[v, m] for v, m in self.eigenvalues]

    def __str__(self):
        return "{" + ", ".join(f"{v:.12g}^[{m}]" for v, m in self.eigenvalues) + "}"


def adjacency_matrix(g: Graph) -> SymmetricMatrix:
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1.0
    return SymmetricMatrix(a)


def signless_laplacian(g: Graph) -> SymmetricMatrix:
    a = adjacency_matrix(g).to_array()
    a[np.diag_indices(g.n)] = g.degrees()
    return SymmetricMatrix(a)


def jacobi_eigen(m: SymmetricMatrix, tol: float = DEFAULT_TOL, vectors: bool = False):
    """Cyclic Jacobi diagonalisation.

    Sweeps over all pairs ``p < q`` in row order, zeroing ``a[p, q]`` with a
    plane rotation, until ``||offdiag||_F < tol * (||diag|| + 1)``.
    Returns eigenvalues in descending order, and the matching eigenvector
    columns when ``vectors`` is set.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = m.to_array()
    n = a.shape[0]
    v = np.eye(n) if vectors else None
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(MAX_SWEEPS + 1):
        d = np.diag(a)
        off = math.sqrt(float(np.sum(a[offdiag] ** 2)))
        if off < tol * (math.sqrt(float(np.dot(d, d))) + 1.0):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-18 * abs(diff):
                    # theta*theta would overflow; t ~ 1/(2 theta)
                    t = apq / diff
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J with J the (p, q) rotation [[c, s], [-s, c]]
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                if v is not None:
                    vp = v[:, p].copy()
                    v[:, p] = c * vp - s * v[:, q]
                    v[:, q] = s * vp + c * v[:, q]
    else:
        raise NumericalError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (order {n})")
    evals = np.diag(a).copy()
    order = np.argsort(-evals, kind="stable")
    if vectors:
        return evals[order], v[:, order]
    return evals[order]


def eigenvalues_symmetric(m: SymmetricMatrix, tol: float = DEFAULT_TOL) -> list[float]:
    return jacobi_eigen(m, tol).tolist()


def spectrum(m: SymmetricMatrix, cluster_tol: float = DEFAULT_CLUSTER_TOL, tol: float = DEFAULT_TOL) -> Spectrum:
    return Spectrum.from_values(eigenvalues_symmetric(m, tol), cluster_tol)


def spectral_radius(m: SymmetricMatrix, tol: float = DEFAULT_TOL) -> float:
    evals = jacobi_eigen(m, tol)
    return float(max(abs(evals[0]), abs(evals[-1])))


def adjacency_spectral_radius(g: Graph) -> float:
    return spectral_radius(adjacency_matrix(g))


def frobenius_sq(m: SymmetricMatrix) -> float:
    return float(np.sum(m.entries * m.entries))


def as_symmetric(rows: Sequence[Sequence[float]]) -> SymmetricMatrix:
    """Symmetric matrix from rows, averaging rounding-level asymmetry away."""
    a = np.array(rows, dtype=float)
    return SymmetricMatrix((a + a.T) / 2.0)
