"""Exact decomposition of one-variable functional identities on n x n matrices.

Maps are represented by their values on the generic matrix, so every check
here is an exact polynomial identity over the rationals.
"""

__version__ = "0.1.0"

from .decompose import (
    FIDecomposition,
    StandardForm,
    adjugate_solve,
    certify,
    engel_check,
    fi_decompose,
    fi_verify,
    is_commuting,
    l2_reduce,
    standard_form,
)
from .errors import (
    FIError,
    InputError,
    NotAnIdentity,
    NotHomogeneous,
    ParseError,
    PreconditionFailed,
    TheoremViolation,
)
from .expr import elaborate, parse, pretty
from .identities import IdentitySpec, load_identity, parse_identity
from .oracle import fi_decompose_oracle
from .polymat import (
    CharPolyData,
    PolyMatrix,
    cayley_hamilton_check,
    faddeev_leverrier,
    generic_matrix,
)
from .polyring import Polynomial, VarIndex
from .tracemaps import ScalarPoly, TraceMap, make_trace_map, partial

__all__ = [
    "CharPolyData", "FIDecomposition", "FIError", "IdentitySpec", "InputError",
    "NotAnIdentity", "NotHomogeneous", "ParseError", "PolyMatrix", "Polynomial",
    "PreconditionFailed", "ScalarPoly", "StandardForm", "TheoremViolation", "TraceMap",
    "VarIndex", "adjugate_solve", "cayley_hamilton_check", "certify", "elaborate",
    "engel_check", "faddeev_leverrier", "fi_decompose", "fi_decompose_oracle", "fi_verify",
    "generic_matrix", "is_commuting", "l2_reduce", "load_identity", "make_trace_map",
    "parse", "parse_identity", "partial", "pretty", "standard_form",
]
