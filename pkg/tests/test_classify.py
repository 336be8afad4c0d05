from importlib import resources

import pytest

from csgin.algebra import LEX, RingConfig
from csgin.classify import (
    Classification,
    classify_blocks,
    classify_hypergraph,
    lead_coprime_regular_sequence,
    regular_sequence_certificate,
)
from csgin.combinatorics import (
    Hypergraph,
    complete_hypergraph,
    load_hypergraph,
    obstruction_hypergraph,
    window_hypergraph,
)
from csgin.models import MinorSpec, hypergraph_minor_ideal, minor, parse_blocks_text


def fixture(name):
    return resources.files("csgin") / "fixtures" / name


STRANGE = Hypergraph(6, 3, ((1, 2, 3), (3, 4, 5), (1, 5, 6), (2, 4, 6)))


@pytest.mark.parametrize("m", [2, 3, 4])
def test_complete_graph_is_maximal_minors(m):
    assert classify_hypergraph(complete_hypergraph(4, 2), m).verdict is Classification.CS_MAXIMAL_MINORS


def test_complete_uniform_with_s_equal_m():
    assert classify_hypergraph(complete_hypergraph(4, 3), 3).verdict is Classification.CS_MAXIMAL_MINORS


def test_graphs_are_binomial_edge_ideals():
    H = Hypergraph(4, 2, ((1, 2), (3, 4)))
    assert classify_hypergraph(H, 3).verdict is Classification.CS_BINOMIAL_EDGE


def test_fig_complete_is_unknown():
    H = load_hypergraph(fixture("fig_complete.txt"))
    assert H.edges == window_hypergraph((1, 3, 5), 5, 9).edges
    rep = classify_hypergraph(H, 5)
    assert rep.verdict is Classification.UNKNOWN
    assert rep.details["regular_sequence"]["regular"]
    assert rep.details["nonconstant_label_cycle"] is not None


@pytest.mark.parametrize("m,t,n", [(3, 1, 5), (3, 2, 7), (3, 3, 9), (4, 1, 7)])
def test_obstruction_family_is_cycle(m, t, n):
    rep = classify_hypergraph(obstruction_hypergraph(m, t, n), m)
    assert rep.verdict is Classification.NOT_CS_BY_CYCLE
    assert rep.details["label_graph_is_single_cycle"]


@pytest.mark.parametrize("name", ["obstruction_m3_t1.txt", "obstruction_m3_t3.txt"])
def test_figure_panels_are_cycles(name):
    H = load_hypergraph(fixture(name))
    assert classify_hypergraph(H, 3).verdict is Classification.NOT_CS_BY_CYCLE


def test_strange_is_unknown_with_cycle_reported():
    rep = classify_hypergraph(STRANGE, 3)
    assert rep.verdict is Classification.UNKNOWN
    assert rep.details["regular_sequence"]["regular"]
    assert rep.details["nonconstant_label_cycle"] is not None
    assert not rep.details["label_graph_is_single_cycle"]


def test_forest_of_complete_pieces():
    edges = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4), (4, 5, 6)]
    rep = classify_hypergraph(Hypergraph(6, 3, tuple(edges)), 3)
    assert rep.verdict is Classification.CS_BY_FOREST


def test_too_few_rows_is_unknown():
    assert classify_hypergraph(Hypergraph(4, 3, ((1, 2, 3),)), 2).verdict is Classification.UNKNOWN


def test_fig_minors_blocks_are_forest():
    _, _, blocks = parse_blocks_text(fixture("fig_minors_blocks.txt").read_text())
    assert classify_blocks(blocks).verdict is Classification.CS_BY_FOREST


def test_blocks_sharing_two_columns_are_unknown():
    _, _, blocks = parse_blocks_text("3 5\n1-3 | 1-3\n1-3 | 2-4\n")
    assert classify_blocks(blocks).verdict is Classification.UNKNOWN


def test_lead_coprime_examples():
    ring = RingConfig.uniform(5, 3)
    a = minor(MinorSpec((1, 2, 3), (1, 2, 3)), ring)
    b = minor(MinorSpec((1, 2, 3), (3, 4, 5)), ring)
    assert lead_coprime_regular_sequence([a, b])
    c = minor(MinorSpec((1, 2), (1, 4)), ring)
    assert not lead_coprime_regular_sequence([a, c])


def test_obstruction_leads_share_a_variable():
    # diagonals x11 x22 x33 and x11 x23 x34 share x11
    I = hypergraph_minor_ideal(obstruction_hypergraph(3, 1, 5), 3)
    assert not lead_coprime_regular_sequence(list(I.generators), LEX)
    cert = regular_sequence_certificate(I)
    assert cert.regular and cert.method == "codimension" and cert.codimension == 2
