"""Exact toolkit for eigenschemes of partially symmetric tensors.

The eigenpoints of a tensor are cut out by the 2x2 minors of the matrix
whose rows are the coordinates and the tensor's form tuple.  This package
computes those minors exactly over the rationals, decides which form
tuples arise that way, recovers tensors from their minors, predicts and
verifies Hilbert functions of the minor ideals, enumerates eigenpoints at
desk scale, and checks the line/curve configuration constraints that
finite eigenschemes must satisfy.
"""

from .characterize import (
    CharacterizationVerdict,
    TwoTermSolver,
    WitnessResult,
    alpha_kernel,
    basis_change_search,
    check_equations,
    derham_check,
    eigenvariety_dimension_bound,
    fit_tensor_to_points,
    koszul_check,
    recover_partially_symmetric,
    recover_symmetric,
)
from .geometry import (
    ConfigReport,
    IndeterminacyError,
    PluckerVector,
    collinearity_report,
    curve_incidence_report,
    fiber_line,
    full_report,
    laguerre,
    rank_A_omega,
)
from .hilbert import (
    BettiTable,
    HilbertRecord,
    actual_hilbert,
    dimension_probe,
    hilbert_table,
    predicted_betti,
    predicted_hilbert,
)
from .linalg import RatMatrix, determinant, kernel_basis, rank, solve
from .polynomials import Poly, format_poly, grevlex_key, monomial_basis, parse_poly
from .solver import (
    EigenpointSet,
    fermat_eigenpoints,
    fermat_form,
    fermat_tensor,
    solve_eigenpoints_p1,
    solve_eigenpoints_p2,
)
from .tensors import (
    DetTuple,
    ProjPoint,
    PSTensor,
    SymTensor,
    determinantal_generators,
    eigenpoint_residual,
    gradient_tensor,
    is_eigenpoint,
    normalize_matrix,
    pair_index,
    point_from_json,
    point_to_json,
    random_ps_tensor,
    random_sym_tensor,
    same_determinantal_equations,
    tensor_from_json,
    tensor_to_json,
    triple_index,
    trivial_family_dimension,
    w_count,
)

__version__ = "0.1.0"
