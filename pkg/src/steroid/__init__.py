"""Symmetric tensor decomposition into symmetric rank-1 terms via eigendecompositions."""

from .decomposition import (
    Decomposition,
    IterationRecord,
    PurePowerSet,
    SteroidReport,
    build_x,
    decompose,
    harvest_pure_powers,
    r_max,
    reconstruct,
)
from .estimator import SteroidDecomposition, check_symmetric_tensor
from .exceptions import (
    ConstructionError,
    NumericError,
    OrderError,
    ParseError,
    ShapeError,
    SteroidError,
    SymmetryError,
)
from .linalg import EigResult, LsqResult, lstsq, numerical_zero_mask, sym_eig
from .symtensor import (
    embed,
    extract_slice,
    frobenius_norm,
    inner_product,
    is_symmetric,
    kron_power,
    new_symmetric,
    rank1,
    reshape_square,
    reshape_tensor_to_matrix,
    unvectorize,
    vectorize,
)

__version__ = "0.1.0"
