"""Tropical secant varieties of linear spaces via regular subdivisions."""

from .complex import (AbstractSubdivision, ComplexStats, SecantComplex, assemble_subdivisions, batch_witness,
                      build_secant_complex, complex_stats, cone_dim, enumerate_candidate_cells,
                      enumerate_regular_subdivisions, is_regular)
from .config import (PointConfig, config_from_basis, heights_from_matrix, is_convex_position,
                     is_general_position, product_simplices_config)
from .envelope import Cell, Functional, Subdivision, is_refinement, upper_envelope
from .kernel import FeasibilityResult, LinearSystem, RatMatrix, feasible, mat_rank, relint_point, solution_dim
from .onedim import bars_from_heights, gale_lower_facets, onedim_secant_complex, reduce_line_config
from .secant import (CoverResult, Decomposition, barvinok_rank, barvinok_rank_oracle, min_facet_cover,
                     secant_decompose, secant_membership)

__version__ = "0.1.0"
