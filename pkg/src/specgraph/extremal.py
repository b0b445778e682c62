"""The extremal graph K_k ∨ (E_r ∨ E_s) of Σ_k(n) and its spectral radius.

Σ_k(n) is the family of connected n-vertex graphs that become bipartite
after deleting at most k vertices. For 1 <= k <= n-3 the candidate maximiser
of the adjacency spectral radius is a clique on k vertices joined to a
complete bipartite graph whose sides split the remaining n-k vertices as
evenly as possible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .graph import Complete, EmptyGraph, Graph, Join, build, is_connected
from .graph6 import to_graph6
from .linalg import (
    Spectrum,
    SymmetricMatrix,
    adjacency_matrix,
    spectral_radius,
    spectrum,
)
from .quotient import (
    ContractError,
    QuotientMatrix,
    VertexPartition,
    nonequitable_pair,
    quotient_matrix,
)

MATCH_TOL = 1e-8


@dataclass(frozen=True)
class ExtremalInstance:
    """Parameters of the candidate graph.

    ``block_sizes`` is (clique, first independent set, second independent
    set) in vertex-label order; for odd n-k the first set is the smaller one.
    """

    n: int
    k: int
    parity: str = field(init=False)
    block_sizes: Tuple[int, int, int] = field(init=False)

    def __post_init__(self):
        check_parameters(self.n, self.k)
        rest = self.n - self.k
        object.__setattr__(self, "parity", "even" if rest % 2 == 0 else "odd")
        object.__setattr__(self, "block_sizes", (self.k, rest // 2, (rest + 1) // 2))

    @property
    def s(self) -> int:
        """Size of the smaller independent set, ``floor((n-k)/2)``."""
        return self.block_sizes[1]

    def graph(self) -> Graph:
        k, r, t = self.block_sizes
        return build(Join(Complete(k), Join(EmptyGraph(r), EmptyGraph(t))))

    def natural_partition(self) -> VertexPartition:
        """Blocks (clique, larger independent set, smaller independent set)."""
        k, r, t = self.block_sizes
        clique = range(k)
        smaller = range(k, k + r)
        larger = range(k + r, k + r + t)
        return VertexPartition([clique, larger, smaller])


def check_parameters(n: int, k: int) -> None:
    if not (isinstance(n, int) and isinstance(k, int)):
        raise ContractError("n and k must be integers")
    if not 1 <= k <= n - 3:
        raise ContractError(f"need 1 <= k <= n-3, got n={n}, k={k}")
    if n > 64:
        raise ContractError(f"n={n} exceeds the 64-vertex capacity")


def _require_even(n: int, k: int) -> None:
    if (n - k) % 2:
        raise ContractError(
            f"n-k={n - k} is odd; use the quotient matrix (max_quotient_eigenvalue) instead"
        )


def build_extremal(n: int, k: int) -> Graph:
    return ExtremalInstance(n, k).graph()


def corrected_formula_even(n: int, k: int) -> float:
    """(n + k - 2 + sqrt(-7k^2 + 10kn - 12k + n^2 + 4n + 4)) / 4."""
    check_parameters(n, k)
    _require_even(n, k)
    return (n + k - 2 + math.sqrt(_discriminant(n, k))) / 4


def original_formula_even(n: int, k: int) -> float:
    """The older closed form, kept for comparison. It overestimates the spectral radius."""
    _require_even(n, k)
    return 0.5 * ((n + k - 2) / 2 + math.sqrt(k * k + (3 * k - 1) * (n - k) + ((n - k + 2) / 2) ** 2))


def _discriminant(n: int, k: int) -> int:
    return -7 * k * k + 10 * k * n - 12 * k + n * n + 4 * n + 4


def quotient_matrix_for_extremal(n: int, k: int) -> QuotientMatrix:
    """3×3 quotient over (clique, larger set, smaller set).

    Even n-k, m=(n-k)/2: [[k-1, m, m], [k, 0, m], [k, m, 0]].
    Odd n-k, s=(n-k-1)/2: [[k-1, s+1, s], [k, 0, s], [k, s+1, 0]].
    """
    inst = ExtremalInstance(n, k)
    s = inst.s
    big = inst.block_sizes[2]
    q = np.array([[k - 1, big, s], [k, 0, s], [k, big, 0]], dtype=float)
    q.setflags(write=False)
    return QuotientMatrix(q, (k, big, s), True)


def max_quotient_eigenvalue(n: int, k: int) -> float:
    """Largest eigenvalue of the extremal quotient; this is ρ for either parity."""
    return quotient_matrix_for_extremal(n, k).eigenvalues()[0]


def char_poly_even_factored(n: int, k: int, lam: float) -> float:
    """(λ + m)(λ² + (1 - m - k)λ - (k+1)m) with m = (n-k)/2, i.e. det(λI - Q)."""
    _require_even(n, k)
    m = (n - k) / 2
    return (lam + m) * (lam * lam + (1 - m - k) * lam - (k + 1) * m)


def char_poly_even_scale(n: int, k: int, lam: float) -> float:
    """Magnitude of the factored polynomial's terms; denominator for relative residuals."""
    m = (n - k) / 2
    return (abs(lam) + m) * (lam * lam + abs(1 - m - k) * abs(lam) + (k + 1) * m)


def char_poly_even_roots(n: int, k: int) -> list[float]:
    """Roots of the expanded cubic, via the companion matrix (numpy), descending."""
    _require_even(n, k)
    m = (n - k) / 2
    coeffs = np.polymul([1.0, m], [1.0, 1 - m - k, -(k + 1) * m])
    return sorted(np.roots(coeffs).real.tolist(), reverse=True)


def quotient_spectrum_even_closed_form(n: int, k: int) -> list[float]:
    check_parameters(n, k)
    _require_even(n, k)
    disc = _discriminant(n, k)
    if disc < 0:
        raise ContractError(f"negative discriminant {disc} for n={n}, k={k}")
    root = math.sqrt(disc)
    vals = [(n + k - 2 + root) / 4, (n + k - 2 - root) / 4, (k - n) / 2]
    return sorted(vals, reverse=True)


def predicted_full_spectrum_even(n: int, k: int, cluster_tol: float = 1e-6) -> Spectrum:
    """Quotient eigenvalues, plus -1 with multiplicity k-1 and 0 with multiplicity n-k-2.

    The clique block contributes k-1 eigenvalues -1 (vectors summing to zero
    on the clique) and each independent set of size m contributes m-1 zeros.
    """
    pairs = [(v, 1) for v in quotient_spectrum_even_closed_form(n, k)]
    pairs += [(-1.0, k - 1), (0.0, n - k - 2)]
    return Spectrum.from_pairs([(v, m) for v, m in pairs if m > 0], cluster_tol)


def power_iteration(
    a: SymmetricMatrix, shift: float = 1.0, tol: float = 1e-13, max_iter: int = 100_000
) -> Tuple[float, np.ndarray, int]:
    """Dominant eigenpair of a nonnegative matrix by iterating ``A + shift·I``.

    The shift makes irreducible nonnegative matrices primitive, so bipartite
    graphs converge too. Returns (rayleigh quotient, unit vector, iterations).
    """
    m = a.entries
    n = m.shape[0]
    x = 1.0 + 0.5 * np.sin(np.arange(1, n + 1))
    x /= np.linalg.norm(x)
    for it in range(1, max_iter + 1):
        y = m @ x + shift * x
        y /= np.linalg.norm(y)
        if np.linalg.norm(y - x) < tol:
            x = y
            break
        x = y
    return float(x @ m @ x), x, it


@dataclass
class PerronReport:
    quotient_max: float
    spectral_radius: float
    rayleigh: float
    residual: float
    min_entry: float
    iterations: int

    @property
    def ok(self) -> bool:
        return (
            abs(self.quotient_max - self.spectral_radius) <= MATCH_TOL
            and abs(self.rayleigh - self.spectral_radius) <= MATCH_TOL
            and self.residual <= 1e-6
            and self.min_entry > 0
        )


def perron_report(g: Graph, p: VertexPartition) -> PerronReport:
    if g.n < 1 or not is_connected(g):
        raise ContractError("perron_check needs a connected graph")
    bad = nonequitable_pair(g, p)
    if bad is not None:
        raise ContractError(f"partition is not equitable at block pair {bad}")
    a = adjacency_matrix(g)
    rho = spectral_radius(a)
    qmax = quotient_matrix(a, p).eigenvalues()[0]
    lam, x, its = power_iteration(a)
    if x.sum() < 0:
        x = -x
    residual = float(np.linalg.norm(a.entries @ x - lam * x))
    return PerronReport(qmax, rho, lam, residual, float(x.min()), its)


def perron_check(g: Graph, p: VertexPartition) -> bool:
    """Quotient's largest eigenvalue equals ρ(A), and the dominant eigenvector is positive."""
    return perron_report(g, p).ok


# --- counterexamples to the older closed form ------------------------------

_SQRT6 = 2.449489742783178098197284074705891391965947480656670128432692567
# spectra as listed for K4 ∨ (E3 ∨ E3) and K5 ∨ (E3 ∨ E3); values to 1e-16
KNOWN_COUNTEREXAMPLES = {
    "2.1": {
        "n": 10,
        "k": 4,
        "spectrum": ((3 + 2 * _SQRT6, 1), (0.0, 4), (-1.0, 3), (3 - 2 * _SQRT6, 1), (-3.0, 1)),
        "rho": 7.898979485566356196,
        "original": 7.949747468305832671,
    },
    "2.2": {
        "n": 11,
        "k": 5,
        "spectrum": ((9.0, 1), (0.0, 4), (-1.0, 4), (-2.0, 1), (-3.0, 1)),
        "rho": 9.0,
        "original": 9.090169943749474241,
    },
}


@dataclass
class CounterexampleReport:
    which: str
    n: int
    k: int
    graph6: str
    spectrum: Spectrum
    rho: float
    original_formula: float
    corrected_formula: float
    spectrum_matches: bool
    original_matches: bool
    corrected_matches: bool
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.spectrum_matches and not self.original_matches and self.corrected_matches

    def to_json(self) -> dict:
        return {
            "example": self.which,
            "n": self.n,
            "k": self.k,
            "graph6": self.graph6,
            "spectrum": self.spectrum.to_json(),
            "rho": self.rho,
            "original_formula": self.original_formula,
            "corrected_formula": self.corrected_formula,
            "original_minus_rho": self.original_formula - self.rho,
            "spectrum_matches": self.spectrum_matches,
            "original_matches": self.original_matches,
            "corrected_matches": self.corrected_matches,
            "problems": list(self.problems),
        }


def reproduce_counterexample(which: str, tol: float = MATCH_TOL) -> CounterexampleReport:
    """Rebuild a stored counterexample and compare both formulas with its true spectral radius."""
    if which not in KNOWN_COUNTEREXAMPLES:
        raise ContractError(f"unknown example {which!r}; choose from {sorted(KNOWN_COUNTEREXAMPLES)}")
    ex = KNOWN_COUNTEREXAMPLES[which]
    n, k = ex["n"], ex["k"]
    g = build_extremal(n, k)
    a = adjacency_matrix(g)
    spec = spectrum(a)
    rho = spectral_radius(a)
    expected = Spectrum.from_pairs(ex["spectrum"])
    original = original_formula_even(n, k)
    corrected = corrected_formula_even(n, k)
    report = CounterexampleReport(
        which, n, k, to_graph6(g), spec, rho, original, corrected,
        spectrum_matches=spec.matches(expected, tol),
        original_matches=abs(original - rho) <= tol,
        corrected_matches=abs(corrected - rho) <= tol,
    )
    if not report.spectrum_matches:
        report.problems.append(f"spectrum {spec} differs from expected {expected}")
    if report.original_matches:
        report.problems.append(f"original formula {original!r} unexpectedly equals rho {rho!r}")
    if not report.corrected_matches:
        report.problems.append(f"corrected formula {corrected!r} differs from rho {rho!r}")
    return report


# --- formula / eigensolver sweep ---------------------------------------------


def sweep_row(n: int, k: int, tol: float = MATCH_TOL) -> dict:
    """Compare every available route to ρ(Ĝ) for one (n, k)."""
    g = build_extremal(n, k)
    rho = spectral_radius(adjacency_matrix(g))
    quotient_max = max_quotient_eigenvalue(n, k)
    row = {"n": n, "k": k, "parity": ExtremalInstance(n, k).parity, "rho": rho, "quotient_max": quotient_max}
    deviations = [abs(quotient_max - rho)]
    if row["parity"] == "even":
        closed = quotient_spectrum_even_closed_form(n, k)
        roots = char_poly_even_roots(n, k)
        row["corrected_formula"] = corrected_formula_even(n, k)
        row["closed_form_max"] = closed[0]
        row["char_poly_root_max"] = roots[0]
        deviations += [abs(row["corrected_formula"] - rho), abs(closed[0] - rho), abs(roots[0] - rho)]
        residual = max(
            abs(char_poly_even_factored(n, k, lam)) / char_poly_even_scale(n, k, lam) for lam in closed
        )
        row["char_poly_residual"] = residual
        row["pass"] = max(deviations) <= tol and residual <= 1e-6
    else:
        row["pass"] = max(deviations) <= tol
    row["max_deviation"] = max(deviations)
    return row


def sweep(n_max: int, parity: Optional[str] = None, tol: float = MATCH_TOL) -> list[dict]:
    if parity not in (None, "even", "odd"):
        raise ContractError(f"parity must be 'even', 'odd' or None, got {parity!r}")
    rows = []
    for n in range(4, n_max + 1):
        for k in range(1, n - 2):
            if parity is not None and ((n - k) % 2 == 0) != (parity == "even"):
                continue
            rows.append(sweep_row(n, k, tol))
    return rows

