"""Spectral radius of graphs with bounded vertex bipartiteness."""

from .extremal import (
    ExtremalInstance,
    build_extremal,
    char_poly_even_factored,
    corrected_formula_even,
    original_formula_even,
    perron_check,
    predicted_full_spectrum_even,
    quotient_matrix_for_extremal,
    quotient_spectrum_even_closed_form,
    reproduce_counterexample,
)
from .graph import (
    Complement,
    Complete,
    CompleteBipartite,
    EmptyGraph,
    Graph,
    Join,
    build,
    in_sigma_k,
    is_bipartite,
    is_connected,
    vertex_bipartiteness,
)
from .graph6 import from_graph6, to_graph6
from .linalg import (
    Spectrum,
    SymmetricMatrix,
    adjacency_matrix,
    eigenvalues_symmetric,
    signless_laplacian,
    spectral_radius,
    spectrum,
)
from .quotient import (
    ContractError,
    QuotientMatrix,
    VertexPartition,
    equitable_eigenvalue_containment,
    interlacing_check,
    is_equitable,
    quotient_matrix,
)
from .search import SearchCertificate, extremal_search

__version__ = "0.1.0"
