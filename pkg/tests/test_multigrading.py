import itertools
import random

import pytest
from hypothesis import given, strategies as st

from csgin.algebra import CROSS_CHECK_PRIME, DEGREVLEX, LEX, Polynomial, RingConfig, Variable, parse_polynomial
from csgin.combinatorics import Graph, complete_hypergraph, path_graph, predict_gin_generators
from csgin.groebner import Ideal, MonomialIdeal
from csgin.hilbert import k_polynomial
from csgin.models import MinorSpec, binomial_edge_ideal, generic_minor_ideal, minor
from csgin.multigrading import (
    ContractError,
    CsStatus,
    check_cs,
    check_cs_time_limited,
    compress_rows,
    in_brad,
    is_borel_fixed,
    is_radical_monomial,
    lift_monomial_ideal,
    multidegree_multiplicity_free,
    multigraded_gin,
    substitute_linear,
)

R22 = RingConfig.uniform(2, 2)
R32 = RingConfig.uniform(3, 2)


def mono_ideal(ring, *gens):
    return MonomialIdeal.from_pairs(ring, gens)


PATH_GIN = [[(1, 1), (1, 2)], [(1, 2), (1, 3)], [(1, 1), (2, 2), (1, 3)]]


def test_gin_of_variable():
    rep = multigraded_gin(Ideal(R22, [Polynomial.var(R22, 2, 1)]))
    assert rep.stable
    assert rep.gin == mono_ideal(R22, [(1, 1)])


def test_gin_of_det():
    rep = multigraded_gin(generic_minor_ideal(2, 2, 2))
    assert rep.stable
    assert rep.gin == mono_ideal(R22, [(1, 1), (1, 2)])


@pytest.mark.parametrize("order", [LEX, DEGREVLEX], ids=["lex", "degrevlex"])
def test_gin_of_path(order):
    rep = multigraded_gin(binomial_edge_ideal(path_graph(3), 2), order)
    assert rep.stable
    assert rep.gin == mono_ideal(R32, *PATH_GIN)
    assert rep.gin == predict_gin_generators(path_graph(3), 2)


def test_gin_is_deterministic_in_seed():
    I = binomial_edge_ideal(Graph(3, [(1, 2), (2, 3), (1, 3)]), 3)
    a = multigraded_gin(I, samples=2, seed=5)
    b = multigraded_gin(I, samples=2, seed=5)
    assert a.ideals == b.ideals and a.sample_seeds == b.sample_seeds == [6, 7]


def test_radical_examples():
    assert not is_radical_monomial(mono_ideal(R22, [(1, 1), (1, 1)]))
    assert is_radical_monomial(mono_ideal(R22, [(1, 1), (1, 2)]))


def test_borel_examples():
    assert is_borel_fixed(mono_ideal(R22, [(1, 1), (1, 2)]))
    assert not is_borel_fixed(mono_ideal(R22, [(2, 1), (1, 2)]))
    assert is_borel_fixed(mono_ideal(R32, *PATH_GIN))
    assert in_brad(mono_ideal(R32, *PATH_GIN))


def test_multiplicity_free_examples():
    assert not multidegree_multiplicity_free(mono_ideal(R22, [(1, 1), (2, 1)]))
    assert multidegree_multiplicity_free(mono_ideal(R22, [(1, 1), (1, 2)]))
    assert multidegree_multiplicity_free(mono_ideal(R32, *PATH_GIN))


def test_check_cs_maximal_minors():
    for n in (2, 3, 4):
        v = check_cs(generic_minor_ideal(2, n, 2))
        assert v.status is CsStatus.CS_CERTIFIED
        assert v.recheck()


def test_check_cs_zero_ideal():
    v = check_cs(Ideal(R22, []))
    assert v.status is CsStatus.CS_CERTIFIED
    assert v.witness.is_zero()


def test_check_cs_records_prime_and_order():
    I = generic_minor_ideal(2, 2, 2, prime=CROSS_CHECK_PRIME)
    v = check_cs(I, DEGREVLEX)
    assert v.prime == CROSS_CHECK_PRIME and v.order == DEGREVLEX


def test_check_cs_rejects_inhomogeneous_input():
    f = parse_polynomial("x[1,1] + x[1,2]", R22)
    with pytest.raises(ContractError):
        check_cs(Ideal(R22, [f]))


def test_check_cs_unknown_method():
    with pytest.raises(ValueError):
        check_cs(generic_minor_ideal(2, 2, 2), method="magic")


def test_check_cs_timeout_is_inconclusive():
    v = check_cs_time_limited(generic_minor_ideal(3, 5, 3), timeout=0.0)
    assert v.status is CsStatus.INCONCLUSIVE and v.reason == "timeout"


def test_early_exit_witness_is_marked_truncated():
    from csgin.combinatorics import obstruction_hypergraph
    from csgin.models import hypergraph_minor_ideal

    I = hypergraph_minor_ideal(obstruction_hypergraph(3, 1, 5), 3)
    v = check_cs(I, samples=1)
    assert v.status is CsStatus.NOT_CS
    assert not v.witness.is_squarefree()
    assert v.recheck()
    full = check_cs(I, samples=1, early_exit=False)
    assert full.status is CsStatus.NOT_CS and full.witness_complete
    # the truncated witness is contained in the complete one
    assert full.witness.contains_ideal(v.witness)


def test_substitute_variable_renames():
    ring = RingConfig((2, 2))
    I = Ideal(ring, [parse_polynomial("x[1,1]*x[2,2] - x[2,1]*x[1,2]", ring)])
    out = substitute_linear(I, Variable(2, 1), Polynomial.var(ring, 1, 1))
    assert out.ring.blocks == (1, 2)
    expected = parse_polynomial("x[1,1]*x[2,2] - x[1,1]*x[1,2]", out.ring)
    assert list(out.generators) == [expected]


def test_substitute_rejects_foreign_column():
    with pytest.raises(ValueError):
        substitute_linear(Ideal(R22, []), Variable(2, 1), Polynomial.var(R22, 1, 2))


def test_general_linear_section_keeps_cs():
    # maximal minors of a 3 x 3 matrix stay CS after cutting a column by a
    # general linear form
    ring = RingConfig.uniform(3, 3)
    I = Ideal(ring, [minor(MinorSpec((1, 2, 3), (1, 2, 3)), ring)])
    L = parse_polynomial("5*x[1,2] + 17*x[2,2]", ring)
    out = substitute_linear(I, Variable(3, 2), L)
    assert check_cs(I).status is CsStatus.CS_CERTIFIED
    assert check_cs(out).status is CsStatus.CS_CERTIFIED


def det_of(ring, cells):
    """Determinant of the square matrix whose entries are the variables ``cells[r][c]``."""
    size = len(cells)
    out = Polynomial.zero(ring)
    for perm in itertools.permutations(range(size)):
        inversions = sum(perm[a] > perm[b] for a in range(size) for b in range(a + 1, size))
        term = Polynomial.constant(ring, -1 if inversions % 2 else 1)
        for r, c in enumerate(perm):
            term = term * Polynomial.var(ring, *cells[r][c])
        out = out + term
    return out


def test_unduplicating_columns_keeps_cs():
    # J uses rows 4..6 of column 3; folding them back onto rows 1..3 keeps CS
    ring = RingConfig((3, 3, 6, 3, 3))
    I = minor(MinorSpec((1, 2, 3), (1, 2, 3)), ring)
    J = det_of(ring, [[(i + 3, 3), (i, 4), (i, 5)] for i in (1, 2, 3)])
    ideal = Ideal(ring, [I, J])
    assert check_cs(ideal).status is CsStatus.CS_CERTIFIED
    step = ideal
    for src, dst in ((6, 3), (5, 2), (4, 1)):
        step = substitute_linear(step, Variable(src, 3), Polynomial.var(step.ring, dst, 3))
    assert step.ring.blocks == (3, 3, 3, 3, 3)
    assert step.generators[1] == minor(MinorSpec((1, 2, 3), (3, 4, 5)), step.ring)
    assert check_cs(step).status is CsStatus.CS_CERTIFIED


def test_compress_rows_and_lift():
    ring = RingConfig.uniform(2, 4)
    f = parse_polynomial("x[1,1]*x[3,2] - x[3,1]*x[1,2]", ring)
    small, mapping = compress_rows(Ideal(ring, [f]))
    assert small.ring.blocks == (2, 2)
    assert mapping[Variable(3, 1)] == Variable(2, 1)
    J = multigraded_gin(small).gin
    assert lift_monomial_ideal(J, ring) == multigraded_gin(Ideal(ring, [f])).gin


@given(seed=st.integers(0, 10_000), edges=st.sets(st.sampled_from([(1, 2), (1, 3), (2, 3), (3, 4), (2, 4), (1, 4)]), min_size=1))
def test_borel_closure_under_moves(seed, edges):
    # any upward row move of a multiple of a generator stays in the ideal
    G = Graph(4, sorted(edges))
    J = predict_gin_generators(G, 3)
    assert is_borel_fixed(J)
    rng = random.Random(seed)
    ring = J.ring
    u = list(rng.choice(J.gens))
    for _ in range(rng.randint(0, 3)):
        u[rng.randrange(ring.nvars)] += 1
    for _ in range(rng.randint(1, 4)):
        k = rng.choice([k for k, e in enumerate(u) if e])
        i, j = ring.variables[k]
        if i == 1:
            continue
        u[k] -= 1
        u[ring.var_index(rng.randint(1, i - 1), j)] += 1
        assert J.contains(tuple(u))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_gin_shares_hilbert_series(seed):
    I = binomial_edge_ideal(complete_hypergraph(3, 2), 3)
    rep = multigraded_gin(I, samples=1, seed=seed)
    from csgin.hilbert import k_polynomial_monomial

    assert k_polynomial_monomial(rep.gin) == k_polynomial(I)
