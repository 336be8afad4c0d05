import itertools

import pytest
import sympy

from csgin.algebra import DEGREVLEX, LEX, Polynomial, RingConfig
from csgin.combinatorics import (
    Graph,
    Hypergraph,
    complete_hypergraph,
    connected_subsets,
    obstruction_hypergraph,
    path_graph,
)
from csgin.groebner import Ideal, ideal_membership, ideals_equal
from csgin.models import (
    MinorBlock,
    MinorSpec,
    binomial_edge_ideal,
    block_minor_ideal,
    degree_family_ideal,
    generic_minor_ideal,
    hypergraph_minor_ideal,
    is_union_closed,
    maximal_minors,
    minor,
    parse_blocks_text,
    parse_generators_text,
    transpose,
)

from .conftest import sympy_symbols, to_sympy


def test_two_by_two_minor():
    ring = RingConfig.uniform(2, 2)
    f = minor(MinorSpec((1, 2), (1, 2)), ring)
    assert f.terms == {ring.monomial([(1, 1), (2, 2)]): 1, ring.monomial([(2, 1), (1, 2)]): ring.prime - 1}


def test_one_by_one_minor_is_variable():
    ring = RingConfig.uniform(3, 3)
    assert minor(MinorSpec((2,), (3,)), ring) == Polynomial.var(ring, 2, 3)


@pytest.mark.parametrize("rows,cols", [((1, 2, 3), (1, 2, 3)), ((1, 3, 4), (2, 4, 5))])
def test_minor_matches_sympy_det(rows, cols):
    ring = RingConfig.uniform(5, 4)
    f = minor(MinorSpec(rows, cols), ring)
    assert len(f) == 6
    xs = sympy_symbols(ring)
    M = sympy.Matrix([[xs[ring.var_index(i, j)] for j in cols] for i in rows])
    diff = sympy.expand(to_sympy(f, ring) - M.det())
    assert sympy.Poly(diff, *xs, modulus=ring.prime).is_zero


def test_minor_alternates_under_row_swap():
    ring = RingConfig.uniform(3, 3)
    f = minor(MinorSpec((1, 2), (1, 3)), ring)
    g = minor(MinorSpec((2, 1), (1, 3)), ring, check_order=False)
    assert f + g == Polynomial.zero(ring)


def test_minor_spec_validation():
    with pytest.raises(ValueError):
        MinorSpec((1, 2), (1,))
    with pytest.raises(ValueError):
        MinorSpec((1, 1), (1, 2))
    with pytest.raises(ValueError):
        minor(MinorSpec((2, 1), (1, 2)), RingConfig.uniform(2, 2))


def test_binomial_edge_ideal_sizes():
    assert len(binomial_edge_ideal(Graph(2, [(1, 2)]), 2).generators) == 1
    assert len(binomial_edge_ideal(Graph(2, [(1, 2)]), 3).generators) == 3
    I = binomial_edge_ideal(path_graph(3), 2)
    assert len(I.generators) == 2 and I.ring.nvars == 6


def test_binomial_edge_ideal_rejects_hypergraph():
    with pytest.raises(ValueError):
        binomial_edge_ideal(complete_hypergraph(3, 3), 3)


def test_hypergraph_minor_ideal_examples():
    strange = Hypergraph(6, 3, ((1, 2, 3), (3, 4, 5), (1, 5, 6), (2, 4, 6)))
    assert len(hypergraph_minor_ideal(strange, 3).generators) == 4
    I = hypergraph_minor_ideal(obstruction_hypergraph(3, 1, 5), 3)
    ring = I.ring
    assert list(I.generators) == [
        minor(MinorSpec((1, 2, 3), (1, 2, 3)), ring),
        minor(MinorSpec((1, 2, 3), (1, 3, 4)), ring),
    ]


def test_complete_graph_gives_all_two_minors():
    I = hypergraph_minor_ideal(complete_hypergraph(4, 2), 3)
    ring = I.ring
    expected = [
        minor(MinorSpec(r, c), ring)
        for c in itertools.combinations(range(1, 5), 2)
        for r in itertools.combinations(range(1, 4), 2)
    ]
    assert sorted(map(str, I.generators)) == sorted(map(str, expected))


def test_maximal_minors_of_wide_block():
    ring = RingConfig.uniform(4, 2)
    assert len(maximal_minors((1, 2), (1, 2, 3, 4), ring)) == 6


def test_degree_family_single_degree():
    I = generic_minor_ideal(2, 3, 2)
    J = degree_family_ideal(I, [{1, 2}])
    assert ideals_equal(J, Ideal(I.ring, [minor(MinorSpec((1, 2), (1, 2)), I.ring)]))


def test_degree_family_empty_degrees():
    I = generic_minor_ideal(2, 3, 2)
    assert not degree_family_ideal(I, [{1}, {2}]).generators


@pytest.mark.parametrize("order", [LEX, DEGREVLEX], ids=["lex", "degrevlex"])
@pytest.mark.parametrize("m", [2, 3])
def test_degree_family_of_connected_subsets_is_binomial_edge_ideal(order, m):
    G = path_graph(3)
    I2 = generic_minor_ideal(m, 3, 2)
    J = degree_family_ideal(I2, connected_subsets(G), order)
    B = binomial_edge_ideal(G, m)
    assert all(ideal_membership(f, B, order) for f in J.generators)
    assert all(ideal_membership(f, J, order) for f in B.generators)


def test_union_closed():
    assert is_union_closed(connected_subsets(path_graph(3)))
    assert not is_union_closed([{1, 2}, {2, 3}])


def test_transpose_swaps_grading():
    I = binomial_edge_ideal(Graph(4, [(1, 2), (3, 4)]), 2)
    T = transpose(I)
    assert T.ring.blocks == (4, 4)
    assert all(len(g.multidegrees()) == 1 for g in T.generators)
    assert transpose(T).generators == I.generators


def test_blocks_text():
    m, n, blocks = parse_blocks_text("3 5\n1-3 | 1-3\n1 2 3 | 3 4 5\n")
    assert (m, n) == (3, 5)
    assert blocks == [MinorBlock((1, 2, 3), (1, 2, 3)), MinorBlock((1, 2, 3), (3, 4, 5))]
    assert len(block_minor_ideal(blocks, RingConfig.uniform(n, m)).generators) == 2
    with pytest.raises(ValueError):
        parse_blocks_text("3 5\n1-4 | 1-3\n")
    with pytest.raises(ValueError):
        parse_blocks_text("3 5\n1-3 1-3\n")


def test_generators_text():
    ring = RingConfig.uniform(2, 2)
    I = parse_generators_text("# det\nx[1,1]*x[2,2] - x[1,2]*x[2,1]\n\n", ring)
    assert list(I.generators) == [minor(MinorSpec((1, 2), (1, 2)), ring)]
