"""Combinatorial CS classification of hypergraph minor ideals and block sums."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .algebra import LEX, Polynomial, TermOrder, multidegree
from .combinatorics import (
    Hypergraph,
    build_label_graph,
    has_nonconstant_label_cycle,
    is_forest_of_clusters,
    is_forest_of_complete,
    is_single_cycle,
)
from .groebner import Ideal, initial_ideal
from .hilbert import codimension
from .models import MinorBlock, hypergraph_minor_ideal


class Classification(str, Enum):
    CS_BY_FOREST = "CS_BY_FOREST"
    CS_MAXIMAL_MINORS = "CS_MAXIMAL_MINORS"
    CS_BINOMIAL_EDGE = "CS_BINOMIAL_EDGE"
    NOT_CS_BY_CYCLE = "NOT_CS_BY_CYCLE"
    UNKNOWN = "UNKNOWN"

    @property
    def decisive(self) -> bool:
        return self is not Classification.UNKNOWN

    @property
    def claims_cs(self) -> bool:
        return self in (
            Classification.CS_BY_FOREST,
            Classification.CS_MAXIMAL_MINORS,
            Classification.CS_BINOMIAL_EDGE,
        )


def lead_coprime_regular_sequence(gens: Sequence[Polynomial], order: TermOrder = LEX) -> bool:
    """True when the leading monomials are pairwise coprime (a regular-sequence certificate)."""
    leads = [set(k for k, e in enumerate(g.leading_monomial(order)) if e) for g in gens]
    return all(not (a & b) for a, b in itertools.combinations(leads, 2))


@dataclass
class RegularSequenceCertificate:
    regular: bool
    method: str
    codimension: int | float | None = None
    generators: int = 0


def regular_sequence_certificate(I: Ideal, order: TermOrder = LEX) -> RegularSequenceCertificate:
    """Pairwise coprime leading terms, else codim(in(I)) == #generators (homogeneous I)."""
    gens = list(I.generators)
    if lead_coprime_regular_sequence(gens, order):
        return RegularSequenceCertificate(True, "lead-coprime", len(gens), len(gens))
    codim = codimension(initial_ideal(I, order))
    return RegularSequenceCertificate(codim == len(gens), "codimension", codim, len(gens))


@dataclass
class ClassifyReport:
    verdict: Classification
    details: dict = field(default_factory=dict)


def _column_support(f: Polynomial) -> frozenset[int]:
    m, _ = f.leading_term(LEX)
    return frozenset(j + 1 for j, d in enumerate(multidegree(m, f.ring)) if d)


def classify_hypergraph(H: Hypergraph, m: int) -> ClassifyReport:
    n, s = H.n, H.s
    details: dict = {"n": n, "s": s, "m": m}
    if H.is_complete() and s in (1, 2, min(m, n)):
        details["reason"] = "complete uniform hypergraph with s in {1, 2, min(m, n)}"
        return ClassifyReport(Classification.CS_MAXIMAL_MINORS, details)
    if s == 2 and m >= 2:
        details["reason"] = "generalized binomial edge ideal"
        return ClassifyReport(Classification.CS_BINOMIAL_EDGE, details)
    if s == m:
        forest = is_forest_of_complete(H)
        details["forest"] = forest.is_forest
        if forest.is_forest:
            details["trace"] = forest.trace
            return ClassifyReport(Classification.CS_BY_FOREST, details)
    if s > m:
        details["reason"] = "no s-minors exist"
        return ClassifyReport(Classification.UNKNOWN, details)
    I = hypergraph_minor_ideal(H, m)
    cert = regular_sequence_certificate(I)
    details["regular_sequence"] = {
        "regular": cert.regular,
        "method": cert.method,
        "codimension": cert.codimension,
        "generators": cert.generators,
    }
    family = [sorted(_column_support(g)) for g in I.generators]
    label_graph = build_label_graph(family)
    found, cycle = has_nonconstant_label_cycle(label_graph)
    single = is_single_cycle(label_graph)
    details["degree_family"] = family
    details["nonconstant_label_cycle"] = [list(e) for e in cycle] if cycle else None
    details["label_graph_is_single_cycle"] = single
    # Only the shape of the known obstruction family is claimed: the label
    # graph itself is one cycle with non-constant labels.
    if cert.regular and found and single:
        return ClassifyReport(Classification.NOT_CS_BY_CYCLE, details)
    return ClassifyReport(Classification.UNKNOWN, details)


def classify_blocks(blocks: Sequence[MinorBlock]) -> ClassifyReport:
    """Sums of maximal-minor ideals glued along column supports meeting in <= 1 column."""
    supports = [b.cols for b in blocks]
    forest = is_forest_of_clusters(supports)
    details = {"column_supports": [list(c) for c in supports], "trace": forest.trace}
    if forest.is_forest:
        return ClassifyReport(Classification.CS_BY_FOREST, details)
    return ClassifyReport(Classification.UNKNOWN, details)
