"""Exact arithmetic for tropical spectrahedra.

Signed max-plus numbers and polynomials, Puiseux-polynomial ground truth,
pencil membership predicates, tangent-hypergraph genericity certificates,
and grid cross-validation against an exact PSD oracle.
"""

from .errors import (
    CirculationExists,
    DimensionTooLarge,
    NotCertified,
    NotMetzler,
    OppositeSigns,
    PencilFormatError,
)
from .signed import (
    MINUS_INF,
    SignedTrop,
    TROP_MINUS_INF,
    format_signed,
    modulus,
    neg,
    parse_signed,
    pos,
    tadd,
    tmul,
)
from .puiseux import (
    PuiseuxPoly,
    PuiseuxSymMatrix,
    SeriesPolynomial,
    is_psd,
    principal_minor,
    sign_of,
    sval,
    val,
)
from .polynomials import VANISHES, TropPoly, argmax, eval_part, evaluate, tropicalize
from .pencils import (
    SigmaChoice,
    TropicalPencil,
    check_assumption_nondeg,
    decompose,
    enumerate_choices,
    general_member,
    homogenize,
    load_pencil,
    metzler_member,
    metzler_strict_member,
    pencil_from_obj,
    pencil_to_obj,
    qij_poly,
    stratum_restrict,
)
from .hypergraphs import (
    Certificate,
    Circulation,
    Edge,
    Hypergraph,
    Witness,
    build_tangent_hypergraph,
    canonical_lift,
    certify_generic_general,
    certify_generic_metzler,
    farkas_direction,
    find_circulation,
    perturb_to_interior,
    result_to_obj,
)
from .oracle import (
    PuiseuxPencil,
    SandwichVerdict,
    cross_validate,
    default_grid,
    entrywise_lift,
    evaluate_pencil,
    grid_points,
    monomial_lift,
    psd_member,
    sin_member,
    sout_member,
    sval_pencil,
    valuation_sandwich_check,
)

__version__ = "0.1.0"

__all__ = [
    "CirculationExists",
    "DimensionTooLarge",
    "NotCertified",
    "NotMetzler",
    "OppositeSigns",
    "PencilFormatError",
    "MINUS_INF",
    "SignedTrop",
    "TROP_MINUS_INF",
    "format_signed",
    "modulus",
    "neg",
    "parse_signed",
    "pos",
    "tadd",
    "tmul",
    "PuiseuxPoly",
    "PuiseuxSymMatrix",
    "SeriesPolynomial",
    "is_psd",
    "principal_minor",
    "sign_of",
    "sval",
    "val",
    "VANISHES",
    "TropPoly",
    "argmax",
    "eval_part",
    "evaluate",
    "tropicalize",
    "SigmaChoice",
    "TropicalPencil",
    "check_assumption_nondeg",
    "decompose",
    "enumerate_choices",
    "general_member",
    "homogenize",
    "load_pencil",
    "metzler_member",
    "metzler_strict_member",
    "pencil_from_obj",
    "pencil_to_obj",
    "qij_poly",
    "stratum_restrict",
    "Certificate",
    "Circulation",
    "Edge",
    "Hypergraph",
    "Witness",
    "build_tangent_hypergraph",
    "canonical_lift",
    "certify_generic_general",
    "certify_generic_metzler",
    "farkas_direction",
    "find_circulation",
    "perturb_to_interior",
    "result_to_obj",
    "PuiseuxPencil",
    "SandwichVerdict",
    "cross_validate",
    "default_grid",
    "entrywise_lift",
    "evaluate_pencil",
    "grid_points",
    "monomial_lift",
    "psd_member",
    "sin_member",
    "sout_member",
    "sval_pencil",
    "valuation_sandwich_check",
]
