"""Trivalent diagrams modulo IHX/AS, clasper pairings and framing constants."""

from .constants import (
    ConstantsReport,
    LPolynomial,
    a_parity,
    bernoulli,
    constants_report,
    delta2_theta,
    framing_correction,
    l_polynomial,
    l_top_coefficient,
    p_framing_dependence,
    zeta2_framing_dependence,
)
from .diagram import (
    AutInfo,
    CanonicalClass,
    Diagram,
    automorphisms,
    build_diagram,
    canonicalize,
    has_tadpole,
)
from .jgd import parse_jgd, serialize
from .linalg import RationalMatrix, rank_exact, rank_modular, row_reduce
from .pairing import SurgeryGraph, VertexForm, contract, contract_full, zeta_evaluate, zeta_vector
from .relations import (
    ASpaceBasis,
    DiagramVector,
    a_space_basis,
    enumerate_diagrams,
    ihx_relations,
    poly_ring_dims,
    reduce,
)

__version__ = "0.1.0"
