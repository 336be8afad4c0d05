"""K-polynomials of monomial ideals, polarization, Alexander duality and the
bijection psi between bounded monomial ideals of K[y_1..y_n] and Brad(S)."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .algebra import LEX, RingConfig, TermOrder, support
from .groebner import GroebnerTimeout, Ideal, MonomialIdeal, buchberger, initial_ideal, minimalize
from .multigrading import ContractError, CsStatus, CsVerdict, in_brad


class KPolynomial:
    """Integer polynomial in Z_1..Z_n, stored as {exponent vector: coefficient}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[tuple[int, ...], int] | None = None):
        self.n = n
        self.terms = {tuple(e): c for e, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, n: int) -> "KPolynomial":
        return cls(n, {(0,) * n: 1})

    @classmethod
    def zero(cls, n: int) -> "KPolynomial":
        return cls(n, {})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: int = 1) -> "KPolynomial":
        return cls(len(exps), {tuple(exps): c})

    def __eq__(self, other) -> bool:
        if not isinstance(other, KPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other: "KPolynomial") -> "KPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return KPolynomial(self.n, out)

    def __neg__(self) -> "KPolynomial":
        return KPolynomial(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "KPolynomial") -> "KPolynomial":
        return self + (-other)

    def __mul__(self, other: "KPolynomial") -> "KPolynomial":
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return KPolynomial(self.n, out)

    def shift(self, exps: Sequence[int]) -> "KPolynomial":
        return KPolynomial(
            self.n, {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()}
        )

    def evaluate(self, point: Sequence[int]) -> int:
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                v *= x**k
            total += v
        return total

    def one_minus(self) -> "KPolynomial":
        """Substitute Z_i -> 1 - Z_i, expanded exactly, one variable at a time."""
        terms = dict(self.terms)
        for i in range(self.n):
            out: dict = {}
            for e, c in terms.items():
                a = e[i]
                for k in range(a + 1):
                    key = e[:i] + (k,) + e[i + 1 :]
                    out[key] = out.get(key, 0) + c * (-1) ** k * comb(a, k)
            terms = {e: c for e, c in out.items() if c}
        return KPolynomial(self.n, terms)

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": c} for e, c in sorted(self.terms.items())]

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            mono = "*".join(f"Z{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            a = abs(c)
            body = mono if mono and a == 1 else (f"{a}*{mono}" if mono else str(a))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {b}" for s, b in parts[1:]])

    def __repr__(self) -> str:
        return f"KPolynomial({self.render()})"


def _product_of(n: int, degs: Iterable[Sequence[int]]) -> KPolynomial:
    out = KPolynomial.one(n)
    for d in degs:
        out = out * (KPolynomial.one(n) - KPolynomial.monomial(d))
    return out


def k_polynomial_monomial(J: MonomialIdeal) -> KPolynomial:
    """K-polynomial of S/J by the pivot recursion
    K(S/J) = K(S/(J + x)) + Z^deg(x) K(S/(J : x)), pivoting on the most frequent variable."""
    ring = J.ring
    n = ring.n
    cols = ring.columns
    memo: dict[tuple, KPolynomial] = {}

    def degree(u) -> tuple[int, ...]:
        d = [0] * n
        for k, e in enumerate(u):
            if e:
                d[cols[k]] += e
        return tuple(d)

    def rec(gens: tuple) -> KPolynomial:
        if not gens:
            return KPolynomial.one(n)
        if any(not any(u) for u in gens):
            return KPolynomial.zero(n)
        hit = memo.get(gens)
        if hit is not None:
            return hit
        counts: dict[int, int] = {}
        for u in gens:
            for k in support(u):
                counts[k] = counts.get(k, 0) + 1
        if all(c == 1 for c in counts.values()):
            result = _product_of(n, (degree(u) for u in gens))
        else:
            x = min(counts, key=lambda k: (-counts[k], k))
            ex = [0] * len(gens[0])
            ex[x] = 1
            ex = tuple(ex)
            plus = minimalize([u for u in gens if not u[x]] + [ex])
            colon = minimalize(
                [u[:x] + (u[x] - 1,) + u[x + 1 :] if u[x] else u for u in gens]
            )
            dx = [0] * n
            dx[cols[x]] = 1
            result = rec(plus) + rec(colon).shift(dx)
        memo[gens] = result
        return result

    return rec(tuple(J.gens))


def k_polynomial(I: Ideal, order: TermOrder = LEX) -> KPolynomial:
    if not I.is_homogeneous():
        raise ContractError("K-polynomials need a Z^n-homogeneous ideal")
    return k_polynomial_monomial(initial_ideal(I, order))


def t_ring(n: int, prime: int | None = None) -> RingConfig:
    """K[y_1..y_n] with deg y_j = e_j, realised as the ring with one row per column."""
    return RingConfig((1,) * n) if prime is None else RingConfig((1,) * n, prime)


@dataclass(frozen=True)
class BoundedMonomialIdeal:
    """Monomial ideal of K[y_1..y_n] whose minimal generators have exponents <= bounds."""

    bounds: tuple[int, ...]
    gens: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "bounds", tuple(self.bounds))
        gens = minimalize(tuple(g) for g in self.gens)
        for g in gens:
            if len(g) != len(self.bounds):
                raise ValueError("generator length does not match the number of bounds")
            if any(a > b for a, b in zip(g, self.bounds)):
                raise ValueError(f"exponent vector {g} exceeds the bound {self.bounds}")
        object.__setattr__(self, "gens", gens)

    @property
    def n(self) -> int:
        return len(self.bounds)

    def as_monomial_ideal(self) -> MonomialIdeal:
        return MonomialIdeal(t_ring(self.n), self.gens)

    def render(self) -> list[str]:
        out = []
        for g in self.gens:
            parts = [f"y{j + 1}" + (f"^{a}" if a > 1 else "") for j, a in enumerate(g) if a]
            out.append("*".join(parts) if parts else "1")
        return out


_Y_POWER = re.compile(r"y(\d+)(?:\^(\d+))?$")


def parse_t_ideal(text: str, bounds: Sequence[int]) -> BoundedMonomialIdeal:
    """Comma-separated monomials in y1..yn such as ``y1*y2, y1^2``; ``1`` is the unit."""
    n = len(bounds)
    gens = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        exps = [0] * n
        if item != "1":
            for factor in item.split("*"):
                hit = _Y_POWER.match(factor.strip())
                if not hit:
                    raise ValueError(f"cannot read {factor.strip()!r} as a power of some y_j")
                j = int(hit.group(1))
                if not 1 <= j <= n:
                    raise ValueError(f"y{j} is outside y1..y{n}")
                exps[j - 1] += int(hit.group(2) or 1)
        gens.append(tuple(exps))
    return BoundedMonomialIdeal(tuple(bounds), tuple(gens))


def k_of_t_ideal(I: BoundedMonomialIdeal) -> KPolynomial:
    """K_I(Z) := 1 - K_{T/I}(Z)."""
    return KPolynomial.one(I.n) - k_polynomial_monomial(I.as_monomial_ideal())


def polarize(I: BoundedMonomialIdeal) -> MonomialIdeal:
    """y_j^a -> x[1,j] x[2,j] ... x[a,j] inside the ring with blocks = bounds."""
    ring = RingConfig(I.bounds)
    gens = []
    for g in I.gens:
        gens.append(ring.monomial((i, j + 1) for j, a in enumerate(g) for i in range(1, a + 1)))
    return MonomialIdeal(ring, tuple(gens))


def _minimal_masks(masks: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for t in sorted(set(masks), key=lambda t: (bin(t).count("1"), t)):
        if not any(k & t == k for k in kept):
            kept.append(t)
    return kept


def alexander_dual(J: MonomialIdeal) -> MonomialIdeal:
    """Intersection of the primes generated by the supports of the generators."""
    if not J.is_squarefree():
        raise ContractError("Alexander duality is defined here for squarefree ideals")
    ring = J.ring
    current = [0]
    for u in J.gens:
        su = 0
        for k in support(u):
            su |= 1 << k
        nxt = []
        for t in current:
            if t & su:
                nxt.append(t)
            else:
                bit = su
                while bit:
                    low = bit & -bit
                    nxt.append(t | low)
                    bit ^= low
        current = _minimal_masks(nxt)
    gens = []
    for t in current:
        gens.append(tuple((t >> k) & 1 for k in range(ring.nvars)))
    return MonomialIdeal(ring, tuple(gens))


def codimension(J: MonomialIdeal) -> int | float:
    """Height of a monomial ideal: the smallest vertex cover of the generator supports."""
    if J.is_zero():
        return 0
    if J.is_unit():
        return float("inf")
    radical = MonomialIdeal(J.ring, tuple(tuple(min(e, 1) for e in u) for u in J.gens))
    return min(sum(u) for u in alexander_dual(radical).gens)


def psi(I: BoundedMonomialIdeal) -> MonomialIdeal:
    return alexander_dual(polarize(I))


def depolarize(J: MonomialIdeal) -> BoundedMonomialIdeal:
    """Inverse of polarization on products of initial column segments."""
    ring = J.ring
    gens = []
    for u in J.gens:
        exps = []
        for j in range(1, ring.n + 1):
            rows = [i for i in range(1, ring.blocks[j - 1] + 1) if u[ring.var_index(i, j)]]
            if any(u[ring.var_index(i, j)] > 1 for i in rows) or rows != list(range(1, len(rows) + 1)):
                raise ContractError(f"generator {u} is not a polarized monomial")
            exps.append(len(rows))
        gens.append(tuple(exps))
    return BoundedMonomialIdeal(ring.blocks, tuple(gens))


def psi_inverse(J: MonomialIdeal) -> BoundedMonomialIdeal:
    if not in_brad(J):
        raise ContractError("psi^-1 is only defined on radical Borel-fixed ideals")
    return depolarize(alexander_dual(J))


def verify_jande(I: BoundedMonomialIdeal, J: MonomialIdeal) -> bool:
    """K_{S/J}(1 - Z) == K_I(Z), which holds exactly when psi(I) = J."""
    if len(I.bounds) != J.ring.n:
        return False
    return k_polynomial_monomial(J).one_minus() == k_of_t_ideal(I)


def k_multiplicativity_check(I: Ideal, J: Ideal, order: TermOrder = LEX) -> bool:
    """K_{S/(I+J)} == K_{S/I} K_{S/J} for ideals in disjoint sets of variables."""
    vi = set().union(*(g.variables_used() for g in I.generators)) if I.generators else set()
    vj = set().union(*(g.variables_used() for g in J.generators)) if J.generators else set()
    if vi & vj:
        raise ContractError("ideals must be generated in disjoint sets of variables")
    return k_polynomial(I + J, order) == k_polynomial(I, order) * k_polynomial(J, order)


# ---------------------------------------------------------------- CS from the Hilbert series


def brad_ideal_with_k_polynomial(K: KPolynomial, ring: RingConfig) -> MonomialIdeal | None:
    """The radical Borel-fixed ideal J of ``ring`` with K_{S/J} = K, or None.

    Writing J = psi(I'), the bounded ideal I' of T has K_{T/I'} = 1 - K(1 - Z)
    and a 0/1 Hilbert series.  Each minimal generator of I' is a term of
    K_{T/I'} with coefficient -1, so those terms are the only candidates; a
    candidate u is a minimal generator when the series vanishes at u but not
    at any u - e_j.  The result is checked exactly before it is returned.
    """
    n = ring.n
    if K.n != n:
        raise ValueError("K-polynomial and ring disagree on the number of columns")
    TK = KPolynomial.one(n) - K.one_minus()
    if not TK.terms:
        # K = 1: the zero ideal, whose T-side partner is the unit ideal
        return MonomialIdeal(ring, ())
    exps = np.array(list(TK.terms), dtype=np.int64)
    big = max(abs(c) for c in TK.terms.values())
    coeffs = np.array(list(TK.terms.values()), dtype=np.int64 if big < 2**62 // len(TK.terms) else object)

    def series(u) -> int:
        return int(coeffs[(exps <= np.asarray(u)).all(axis=1)].sum())

    bounds = ring.blocks
    gens = []
    for u, c in TK.terms.items():
        if c != -1 or any(a > b for a, b in zip(u, bounds)):
            continue
        if series(u) != 0:
            continue
        if all(series(u[:j] + (u[j] - 1,) + u[j + 1 :]) == 1 for j in range(n) if u[j]):
            gens.append(u)
    T = BoundedMonomialIdeal(bounds, tuple(gens))
    if k_polynomial_monomial(T.as_monomial_ideal()) != TK:
        return None
    J = psi(T)
    J = MonomialIdeal(ring, J.gens)
    if not in_brad(J) or k_polynomial_monomial(J) != K:
        return None
    return J


def check_cs_by_hilbert_series(
    I: Ideal, order: TermOrder = LEX, deadline: float | None = None
) -> CsVerdict:
    """CS verdict from the Hilbert series alone (no coordinate change).

    I is CS exactly when some radical Borel-fixed ideal shares its Hilbert
    series.  The series comes from an initial ideal in the given coordinates;
    a matching ideal is the certificate.  No match means I is not CS, but
    there is no non-squarefree witness to show for it, so that outcome is
    reported as INCONCLUSIVE with the reason spelled out.
    """
    if not I.is_homogeneous():
        raise ContractError("check_cs needs a Z^n-homogeneous ideal")
    prime = I.ring.prime
    try:
        res = buchberger(I.generators, order, homogeneous=True, deadline=deadline)
    except GroebnerTimeout:
        return CsVerdict(CsStatus.INCONCLUSIVE, prime, order, reason="timeout", method="hilbert")
    K = k_polynomial_monomial(MonomialIdeal(I.ring, tuple(res.leads)))
    if deadline is not None and time.monotonic() > deadline:
        return CsVerdict(CsStatus.INCONCLUSIVE, prime, order, reason="timeout", method="hilbert")
    J = brad_ideal_with_k_polynomial(K, I.ring)
    if J is None:
        return CsVerdict(
            CsStatus.INCONCLUSIVE,
            prime,
            order,
            reason="no radical Borel-fixed ideal has this Hilbert series",
            method="hilbert",
            k_polynomial=K,
        )
    return CsVerdict(
        CsStatus.CS_CERTIFIED, prime, order, witness=J, stable=None, method="hilbert", k_polynomial=K
    )
