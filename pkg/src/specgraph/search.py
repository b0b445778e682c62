"""Exhaustive search for the spectral-radius maximiser of Σ_k(n), n <= 8.

A labelled graph is an edge bitmask: bit ``j(j-1)/2 + i`` is the edge
``{i, j}``, ``i < j`` (graph6 column order). The canonical form of a graph
is the smallest mask in its orbit under all n! relabellings.

The mask range ``[0, 2^C(n,2))`` is cut into contiguous chunks. A worker
scans its chunk in increasing order; the first unseen mask starts a new
orbit, which is generated in full (vectorised over the permutation table),
marked seen inside the chunk, and kept only when the mask is the orbit
minimum. Every isomorphism class is therefore reported by exactly one
chunk, whatever the chunking.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from typing import Optional

import numpy as np

from .extremal import build_extremal, check_parameters
from .graph import Graph, is_connected, vertex_bipartiteness
from .graph6 import to_graph6
from .linalg import adjacency_matrix, spectral_radius
from .quotient import ContractError

MIN_N, MAX_N = 4, 8
DEFAULT_TIE_TOL = 1e-7


def edge_index(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def mask_to_graph(n: int, mask: int) -> Graph:
    rows = [0] * n
    for j in range(1, n):
        for i in range(j):
            if mask >> edge_index(i, j) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def graph_to_mask(g: Graph) -> int:
    mask = 0
    for i, j in g.edges():
        mask |= 1 << edge_index(i, j)
    return mask


@lru_cache(maxsize=None)
def _edge_weights(n: int) -> np.ndarray:
    """``w[p, e] = 2**(image of edge e under permutation p)`` for all n! permutations."""
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    perms = np.array(list(permutations(range(n))), dtype=np.int64)
    ii = np.array([i for i, _ in pairs])
    jj = np.array([j for _, j in pairs])
    pi, pj = perms[:, ii], perms[:, jj]
    lo, hi = np.minimum(pi, pj), np.maximum(pi, pj)
    return np.left_shift(np.int64(1), hi * (hi - 1) // 2 + lo)


def orbit(n: int, mask: int) -> np.ndarray:
    """Images of ``mask`` under every relabelling (with repeats)."""
    w = _edge_weights(n)
    edges = [e for e in range(w.shape[1]) if mask >> e & 1]
    if not edges:
        return np.zeros(w.shape[0], dtype=np.int64)
    return w[:, edges].sum(axis=1)


def canonical_mask(g: Graph) -> int:
    return int(orbit(g.n, graph_to_mask(g)).min())


def canonical_masks_in_range(n: int, lo: int, hi: int) -> list[int]:
    """Orbit-minimal masks in ``[lo, hi)``, ascending."""
    seen = bytearray(hi - lo)
    view = np.frombuffer(seen, dtype=np.uint8)
    reps = []
    pos = seen.find(0)
    while pos != -1:
        mask = lo + pos
        images = orbit(n, mask)
        if int(images.min()) == mask:
            reps.append(mask)
        inside = images[(images >= lo) & (images < hi)] - lo
        view[inside] = 1
        pos = seen.find(0, pos + 1)
    return reps


def chunk_bounds(total: int, chunks: int) -> list[tuple[int, int]]:
    chunks = max(1, min(chunks, total))
    step = -(-total // chunks)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


@dataclass
class PartialResult:
    classes: int = 0
    family: int = 0
    best: float = -math.inf
    # (rho, canonical mask) within tol of ``best``
    near_best: list = field(default_factory=list)


def _scan_chunk(args) -> PartialResult:
    n, k, lo, hi, tol = args
    out = PartialResult()
    for mask in canonical_masks_in_range(n, lo, hi):
        out.classes += 1
        g = mask_to_graph(n, mask)
        if not is_connected(g) or vertex_bipartiteness(g, limit=k)[0] > k:
            continue
        out.family += 1
        rho = spectral_radius(adjacency_matrix(g))
        if rho > out.best:
            out.best = rho
            out.near_best = [(r, m) for r, m in out.near_best if r >= rho - tol]
        if rho >= out.best - tol:
            out.near_best.append((rho, mask))
    return out


def merge_partials(parts: list[PartialResult], tol: float) -> PartialResult:
    merged = PartialResult()
    for p in parts:
        merged.classes += p.classes
        merged.family += p.family
        merged.best = max(merged.best, p.best)
    merged.near_best = sorted(
        {(r, m) for p in parts for r, m in p.near_best if r >= merged.best - tol}, key=lambda t: t[1]
    )
    return merged


@dataclass
class SearchCertificate:
    n: int
    k: int
    graphs_enumerated: int
    isomorphism_classes: int
    graphs_in_family: int
    max_spectral_radius: float
    maximizers: list[str]
    candidate_graph6: str
    candidate_rho: float
    candidate_matches: bool
    elapsed_seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "enumerated": self.graphs_enumerated,
            "family_count": self.graphs_in_family,
            "max_rho": self.max_spectral_radius,
            "maximizers": list(self.maximizers),
            "candidate_matches": self.candidate_matches,
            "elapsed_seconds": self.elapsed_seconds,
        }


def extremal_search(n: int, k: int, tol: float = DEFAULT_TIE_TOL, workers: Optional[int] = 1) -> SearchCertificate:
    """Certify whether ``build_extremal(n, k)`` is the unique maximiser of ρ over Σ_k(n).

    ``workers=None`` uses every available CPU. The certificate apart from
    ``elapsed_seconds`` does not depend on ``workers``.
    """
    if not isinstance(n, int) or not MIN_N <= n <= MAX_N:
        raise ContractError(f"exhaustive search needs {MIN_N} <= n <= {MAX_N}, got n={n}")
    check_parameters(n, k)
    if tol < 0:
        raise ContractError("tol must be nonnegative")
    if workers is None:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise ContractError("workers must be >= 1")

    start = time.perf_counter()
    total = 1 << (n * (n - 1) // 2)
    jobs = [(n, k, lo, hi, tol) for lo, hi in chunk_bounds(total, workers)]
    if workers == 1 or len(jobs) == 1:
        parts = [_scan_chunk(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_scan_chunk, jobs))
    merged = merge_partials(parts, tol)

    candidate = build_extremal(n, k)
    cand_mask = canonical_mask(candidate)
    winners = [m for _, m in merged.near_best]
    maximizers = sorted(to_graph6(mask_to_graph(n, m)) for m in winners)
    return SearchCertificate(
        n=n,
        k=k,
        graphs_enumerated=total,
        isomorphism_classes=merged.classes,
        graphs_in_family=merged.family,
        max_spectral_radius=merged.best,
        maximizers=maximizers,
        candidate_graph6=to_graph6(mask_to_graph(n, cand_mask)),
        candidate_rho=spectral_radius(adjacency_matrix(candidate)),
        candidate_matches=winners == [cand_mask],
        elapsed_seconds=time.perf_counter() - start,
    )
