"""Exact matroid path-width: finite-field towers, rank oracles, an exact
subset DP, and an optimal-decomposition self-reduction with represented and
rank-oracle gadget variants."""

from .fields import GF, FieldElement, FieldSpec, find_irreducible
from .generators import generate, named
from .linalg import MatrixOverField, SubspaceBasis, extend_ambient
from .matroid import (
    LinearMatroid,
    MatroidError,
    RankOracle,
    UniformOracle,
    closure,
    components,
    lambda_,
    minor,
    mu,
)
from .pathwidth import (
    DEFAULT_GUARD,
    GuardExceeded,
    PathDecomposition,
    decide_prefix_extendable,
    decide_pw_le,
    pathwidth_exact,
    width_of_order,
)
from .selfreduce import (
    GadgetAbstract,
    GadgetLinear,
    SelfReduceError,
    SelfReduceTrace,
    build_gadget_abstract,
    build_gadget_linear,
    decompose_connected,
    decompose_full,
    pathwidth_value,
)

__version__ = "1.0.0"

__all__ = [
    "GF",
    "FieldElement",
    "FieldSpec",
    "find_irreducible",
    "generate",
    "named",
    "MatrixOverField",
    "SubspaceBasis",
    "extend_ambient",
    "LinearMatroid",
    "MatroidError",
    "RankOracle",
    "UniformOracle",
    "closure",
    "components",
    "lambda_",
    "minor",
    "mu",
    "DEFAULT_GUARD",
    "GuardExceeded",
    "PathDecomposition",
    "decide_prefix_extendable",
    "decide_pw_le",
    "pathwidth_exact",
    "width_of_order",
    "GadgetAbstract",
    "GadgetLinear",
    "SelfReduceError",
    "SelfReduceTrace",
    "build_gadget_abstract",
    "build_gadget_linear",
    "decompose_connected",
    "decompose_full",
    "pathwidth_value",
]
