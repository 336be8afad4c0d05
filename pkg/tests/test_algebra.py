import random

import pytest
import sympy
from hypothesis import given, strategies as st

from csgin.algebra import (
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
    mat_inverse,
    mat_mul,
    mat_rank,
    multidegree,
    parse_polynomial,
    random_block_change,
)

from .conftest import sympy_symbols, to_sympy

R22 = RingConfig.uniform(2, 2)
DET = "x[1,1]*x[2,2]-x[1,2]*x[2,1]"


def test_det_parses_to_two_terms():
    f = parse_polynomial(DET, R22)
    assert len(f) == 2
    assert f.terms[R22.monomial([(1, 1), (2, 2)])] == 1
    assert f.terms[R22.monomial([(1, 2), (2, 1)])] == DEFAULT_PRIME - 1


def test_zero_parses_to_zero():
    assert parse_polynomial("0", R22).is_zero()


def test_like_terms_collect():
    f = parse_polynomial("3*x[1,1]^2 + x[1,1]^2", R22)
    assert f.terms == {R22.monomial([(1, 1), (1, 1)]): 4}


def test_coefficients_reduce_mod_p():
    f = parse_polynomial(f"{DEFAULT_PRIME + 5}*x[1,1]", R22)
    assert f.terms == {R22.var_monomial(1, 1): 5}
    assert parse_polynomial(f"{DEFAULT_PRIME}*x[1,1]", R22).is_zero()


def test_parse_error_reports_offset():
    with pytest.raises(ParseError) as err:
        parse_polynomial("x[1,1] + * x[2,2]", R22)
    assert err.value.offset == 9


def test_parse_rejects_out_of_range_variable():
    with pytest.raises(ValueError):
        parse_polynomial("x[3,1]", R22)


def test_multidegree_examples():
    assert multidegree(R22.monomial([(1, 1), (2, 2)]), R22) == (1, 1)
    assert multidegree(R22.one(), R22) == (0, 0)
    assert multidegree(R22.monomial([(1, 1), (1, 1), (2, 1)]), R22) == (3, 0)


def test_row_major_lex_ranks_first_row_first():
    a, b = R22.var_monomial(1, 1), R22.var_monomial(1, 2)
    assert LEX.compare(R22, a, b) == 1
    assert LEX.compare(R22, b, a) == -1
    assert DEGREVLEX.compare(R22, a, a) == 0


def test_det_leading_term_is_main_diagonal():
    f = parse_polynomial(DET, R22)
    assert f.leading_monomial(LEX) == R22.monomial([(1, 1), (2, 2)])


def test_priority_must_respect_column_order():
    bad = TermOrder("lex", (2, 1, 0, 3))
    with pytest.raises(ValueError):
        bad.ranking(R22)


def test_ring_rejects_composite_prime():
    with pytest.raises(ValueError):
        RingConfig((2, 2), 32004)


monomials = st.lists(st.integers(0, 3), min_size=6, max_size=6).map(tuple)
R32 = RingConfig.uniform(3, 2)


@pytest.mark.parametrize("order", [LEX, DEGREVLEX], ids=["lex", "degrevlex"])
@given(a=monomials, b=monomials, c=monomials)
def test_order_is_multiplicative(order, a, b, c):
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    assert order.compare(R32, ac, bc) == order.compare(R32, a, b)


@pytest.mark.parametrize("order", [LEX, DEGREVLEX], ids=["lex", "degrevlex"])
@given(a=monomials)
def test_one_is_minimal(order, a):
    assert order.compare(R32, a, R32.one()) >= 0


@given(a=monomials, b=monomials)
def test_orders_agree_with_sympy(a, b):
    # sympy ranks its generators in the order given, which is row-major here
    gens = sympy_symbols(R32)
    for order, name in ((LEX, "lex"), (DEGREVLEX, "grevlex")):
        key = sympy.polys.orderings.monomial_key(name)
        ours = order.compare(R32, a, b)
        theirs = (key(a) > key(b)) - (key(a) < key(b))
        assert ours == theirs, (order.kind, a, b, gens)


elements = st.integers(0, DEFAULT_PRIME - 1).map(lambda v: FieldElement(v, DEFAULT_PRIME))


@given(a=elements, b=elements, c=elements)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == FieldElement(0, DEFAULT_PRIME)
    if int(a):
        assert a * a.inverse() == FieldElement(1, DEFAULT_PRIME)


def test_block_change_is_deterministic():
    assert random_block_change(R22, 7) == random_block_change(R22, 7)
    assert random_block_change(R22, 7) != random_block_change(R22, 8)


def test_block_change_depends_on_prime():
    other = R22.with_prime(CROSS_CHECK_PRIME)
    assert random_block_change(R22, 1).matrices != random_block_change(other, 1).matrices


def test_identity_block_change_fixes_polynomials():
    f = parse_polynomial(DET + " + 5*x[1,1]*x[1,2]", R22)
    assert BlockChange.identity(R22).apply(f) == f


def test_block_change_inverse_restores_det():
    f = parse_polynomial(DET, R22)
    g = random_block_change(R22, 3)
    assert g.inverse().apply(g.apply(f)) == f


def test_block_change_matches_sympy_substitution():
    ring = RingConfig((2, 3))
    f = parse_polynomial("x[1,1]*x[3,2] - 2*x[2,1]*x[1,2] + x[1,1]^2", RingConfig((2, 3)))
    g = random_block_change(ring, 11)
    xs = sympy_symbols(ring)
    subs = {}
    for k, v in enumerate(ring.variables):
        mat = g.matrices[v.col - 1]
        subs[xs[k]] = sum(mat[v.row - 1][r] * xs[ring.var_index(r + 1, v.col)] for r in range(ring.blocks[v.col - 1]))
    expected = sympy.Poly(to_sympy(f, ring).subs(subs, simultaneous=True), *xs, modulus=ring.prime)
    got = sympy.Poly(to_sympy(g.apply(f), ring), *xs, modulus=ring.prime)
    assert got == expected


@given(seed=st.integers(0, 10_000))
def test_block_change_preserves_homogeneity(seed):
    f = parse_polynomial("x[1,1]*x[2,2]*x[1,3] - 3*x[2,1]*x[1,2]*x[2,3]", RingConfig.uniform(3, 2))
    image = random_block_change(f.ring, seed).apply(f)
    assert image.multidegrees() == {(1, 1, 1)}


@given(seed=st.integers(0, 10_000))
def test_render_parse_roundtrip(seed):
    rng = random.Random(seed)
    terms = {}
    for _ in range(rng.randint(0, 5)):
        mono = tuple(rng.randint(0, 2) for _ in range(R32.nvars))
        terms[mono] = rng.randrange(1, DEFAULT_PRIME)
    f = Polynomial(R32, terms)
    assert parse_polynomial(f.render(), R32) == f


def test_matrix_helpers():
    p = 101
    rng = random.Random(0)
    while True:
        a = [[rng.randrange(p) for _ in range(3)] for _ in range(3)]
        if mat_rank(a, p) == 3:
            break
    ident = [[int(i == j) for j in range(3)] for i in range(3)]
    assert mat_mul(a, mat_inverse(a, p), p) == ident
    assert mat_rank([[1, 2], [2, 4]], p) == 1
