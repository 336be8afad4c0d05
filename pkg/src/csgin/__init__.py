"""Multigraded generic initial ideals and Cartwright-Sturmfels checks over prime fields."""

__version__ = "0.1.0"

from .algebra import (
    CROSS_CHECK_PRIME,
    DEFAULT_PRIME,
    DEGREVLEX,
    LEX,
    BlockChange,
    FieldElement,
    ParseError,
    Polynomial,
    RingConfig,
    TermOrder,
    Variable,
    multidegree,
    parse_polynomial,
    random_block_change,
)
from .classify import Classification, classify_blocks, classify_hypergraph, lead_coprime_regular_sequence
from .combinatorics import (
    Graph,
    Hypergraph,
    obstruction_hypergraph,
    predict_gin_generators,
    window_hypergraph,
)
from .groebner import GroebnerTimeout, Ideal, MonomialIdeal, buchberger, component_basis, initial_ideal
from .hilbert import BoundedMonomialIdeal, KPolynomial, alexander_dual, k_polynomial, psi, psi_inverse
from .models import binomial_edge_ideal, hypergraph_minor_ideal, minor
from .multigrading import CsStatus, CsVerdict, check_cs, multigraded_gin
