"""Buchberger's algorithm over F_p, normal forms and initial ideals.

Inside the engine a monomial is a single Python int.  The high part holds the
order's weight rows (so ``<`` on ints is the term order), the low part holds
the exponent vector in 8-bit fields with a guard bit, so that multiplication
is addition and divisibility is one subtraction and mask.
"""

from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .algebra import (
    LEX,
    Monomial,
    Polynomial,
    RingConfig,
    TermOrder,
    divides,
    is_squarefree,
    left_kernel,
    multidegree,
    render_monomial,
    support,
)

_EXP_BITS = 8
_KEY_BITS = 8
MAX_DEGREE = (1 << (_EXP_BITS - 1)) - 1


class GroebnerTimeout(RuntimeError):
    pass


class _Encoder:
    def __init__(self, ring: RingConfig, order: TermOrder):
        self.ring = ring
        self.order = order
        N = ring.nvars
        rows = order.weight_rows(ring)
        low_bits = _EXP_BITS * N
        self.low_mask = (1 << low_bits) - 1
        self.guard = sum(1 << (_EXP_BITS * i + _EXP_BITS - 1) for i in range(N))
        units = []
        for i in range(N):
            u = 1 << (_EXP_BITS * i)
            for r, row in enumerate(rows):
                if row[i]:
                    u += row[i] << (low_bits + _KEY_BITS * (N - 1 - r))
            units.append(u)
        self.units = units
        self.N = N
        self._decode_cache: dict[int, Monomial] = {}

    def encode(self, m: Monomial) -> int:
        if sum(m) > MAX_DEGREE:
            raise OverflowError(f"monomial degree {sum(m)} exceeds engine limit {MAX_DEGREE}")
        units = self.units
        return sum(e * units[i] for i, e in enumerate(m) if e)

    def decode(self, packed: int) -> Monomial:
        m = self._decode_cache.get(packed)
        if m is None:
            low = packed & self.low_mask
            m = tuple((low >> (_EXP_BITS * i)) & 0x7F for i in range(self.N))
            self._decode_cache[packed] = m
        return m

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        lm = self.low_mask
        return (((b & lm) | g) - (a & lm)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.encode(tuple(max(x, y) for x, y in zip(self.decode(a), self.decode(b))))

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.decode(a), self.decode(b)))

    def degree(self, a: int) -> int:
        return sum(self.decode(a))

    def encode_poly(self, f: Polynomial) -> dict[int, int]:
        return {self.encode(m): c for m, c in f.terms.items()}

    def decode_poly(self, terms: dict[int, int]) -> Polynomial:
        return Polynomial._raw(self.ring, {self.decode(m): c for m, c in terms.items()})


class _Reducer:
    """Division by a growing list of monic polynomials, first divisor wins."""

    def __init__(self, enc: _Encoder, p: int):
        self.enc = enc
        self.p = p
        self.leads: list[int] = []
        self.leads_low: list[int] = []
        self.tails: list[list[tuple[int, int]]] = []
        self._cache: dict[int, tuple[int, int]] = {}

    def add(self, lead: int, tail: list[tuple[int, int]]) -> int:
        self.leads.append(lead)
        self.leads_low.append(lead & self.enc.low_mask)
        self.tails.append(tail)
        return len(self.leads) - 1

    def find(self, m: int) -> int:
        hit = self._cache.get(m)
        start = 0
        if hit is not None:
            if hit[0] >= 0:
                return hit[0]
            start = hit[1]
        enc = self.enc
        g = enc.guard
        bl = (m & enc.low_mask) | g
        lows = self.leads_low
        for idx in range(start, len(lows)):
            if (bl - lows[idx]) & g == g:
                self._cache[m] = (idx, 0)
                return idx
        self._cache[m] = (-1, len(lows))
        return -1

    def reduce(self, f: dict[int, int], full: bool = True) -> dict[int, int]:
        """Remainder of ``f`` (consumed) on division by the stored polynomials."""
        p = self.p
        heap = [-m for m in f]
        heapq.heapify(heap)
        pop, push = heapq.heappop, heapq.heappush
        out: dict[int, int] = {}
        find = self.find
        leads, tails = self.leads, self.tails
        while heap:
            m = -pop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            idx = find(m)
            if idx < 0:
                out[m] = c
                if not full:
                    for k, v in f.items():
                        out[k] = v
                    return out
                continue
            q = m - leads[idx]
            for t, a in tails[idx]:
                nm = t + q
                v = f.get(nm)
                if v is None:
                    f[nm] = (-c * a) % p
                    push(heap, -nm)
                else:
                    v = (v - c * a) % p
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
        return out


def _split_monic(terms: dict[int, int], p: int) -> tuple[int, list[tuple[int, int]]]:
    lead = max(terms)
    inv = pow(terms[lead], -1, p)
    tail = sorted(((m, c * inv % p) for m, c in terms.items() if m != lead), reverse=True)
    return lead, tail


@dataclass
class GroebnerResult:
    basis: list[Polynomial]
    leads: list[Monomial]
    complete: bool = True
    truncated_degree: int | None = None
    stats: dict = field(default_factory=dict)


def _check_homogeneous(enc: _Encoder, terms: Iterable[int]):
    ring = enc.ring
    degs = {multidegree(enc.decode(m), ring) for m in terms}
    if len(degs) > 1:
        raise AssertionError(f"homogeneity violated: multidegrees {sorted(degs)}")


def buchberger(
    gens: Sequence[Polynomial],
    order: TermOrder = LEX,
    *,
    homogeneous: bool = False,
    stop_on_lead: Callable[[Monomial], bool] | None = None,
    deadline: float | None = None,
) -> GroebnerResult:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Generators and S-pairs are processed in increasing degree (normal
    strategy); pairs are pruned with the Gebauer-Moeller criteria, which
    include the coprime-leading-term criterion.  With ``stop_on_lead`` the run
    finishes the current degree once a new leading monomial satisfies the
    predicate and returns a basis that is only complete up to that degree.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerResult([], [])
    ring = gens[0].ring
    p = ring.prime
    enc = _Encoder(ring, order)
    red = _Reducer(enc, p)
    stats = {"pairs": 0, "zero_reductions": 0, "product_criterion": 0}

    pending = []
    for k, g in enumerate(gens):
        if g.ring != ring:
            raise ValueError("generators live in different rings")
        terms = enc.encode_poly(g)
        if homogeneous:
            _check_homogeneous(enc, terms)
        pending.append((enc.degree(max(terms)), k, terms))
    pending.sort(key=lambda t: (t[0], t[1]))

    G: list[int] = []
    B: list[tuple[int, int, int, int]] = []  # (degree, lcm, i, j)
    lcm_cache: dict[tuple[int, int], int] = {}

    def lcm_of(i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        v = lcm_cache.get(key)
        if v is None:
            v = enc.lcm(red.leads[i], red.leads[j])
            lcm_cache[key] = v
        return v

    def update(ih: int):
        nonlocal G, B
        mh = red.leads[ih]
        C = list(G)
        D: list[int] = []
        while C:
            ig = C.pop(0)
            if enc.coprime(mh, red.leads[ig]):
                D.append(ig)
                continue
            lhg = lcm_of(ih, ig)
            if any(enc.divides(lcm_of(ih, ix), lhg) for ix in C) or any(
                enc.divides(lcm_of(ih, ix), lhg) for ix in D
            ):
                continue
            D.append(ig)
        E = []
        for ig in D:
            if enc.coprime(mh, red.leads[ig]):
                stats["product_criterion"] += 1
            else:
                lhg = lcm_of(ih, ig)
                E.append((enc.degree(lhg), lhg, ig, ih))
        newB = []
        for pair in B:
            _, l12, i1, i2 = pair
            if (
                not enc.divides(mh, l12)
                or lcm_of(i1, ih) == l12
                or lcm_of(i2, ih) == l12
            ):
                newB.append(pair)
        newB.extend(E)
        B = newB
        G = [ig for ig in G if not enc.divides(mh, red.leads[ig])] + [ih]

    def insert(terms: dict[int, int]):
        lead, tail = _split_monic(terms, p)
        if homogeneous:
            _check_homogeneous(enc, terms)
        ih = red.add(lead, tail)
        update(ih)
        return lead

    stop_degree = None
    while B or pending:
        if deadline is not None and time.monotonic() > deadline:
            raise GroebnerTimeout("Groebner basis computation exceeded its time budget")
        if B:
            bi = min(range(len(B)), key=lambda k: (B[k][0], B[k][1]))
            pair_deg = B[bi][0]
        else:
            pair_deg = None
        use_gen = pending and (pair_deg is None or pending[0][0] <= pair_deg)
        deg = pending[0][0] if use_gen else pair_deg
        if stop_degree is not None and deg > stop_degree:
            break
        if use_gen:
            _, _, terms = pending.pop(0)
            h = red.reduce(dict(terms))
        else:
            _, l12, i, j = B.pop(bi)
            stats["pairs"] += 1
            li, lj = red.leads[i], red.leads[j]
            f: dict[int, int] = {}
            qi, qj = l12 - li, l12 - lj
            for t, a in red.tails[i]:
                f[t + qi] = a
            for t, a in red.tails[j]:
                k = t + qj
                v = (f.get(k, 0) - a) % p
                if v:
                    f[k] = v
                else:
                    f.pop(k, None)
            h = red.reduce(f)
            if not h:
                stats["zero_reductions"] += 1
        if h:
            lead = insert(h)
            if stop_on_lead is not None and stop_degree is None and stop_on_lead(enc.decode(lead)):
                stop_degree = deg

    # interreduce the tails against the final minimal set
    final = _Reducer(enc, p)
    G_sorted = sorted(G, key=lambda i: red.leads[i])
    for i in G_sorted:
        final.add(red.leads[i], red.tails[i])
    basis = []
    leads = []
    for i in G_sorted:
        tail = final.reduce(dict(red.tails[i]))
        terms = dict(tail)
        terms[red.leads[i]] = 1
        basis.append(enc.decode_poly(terms))
        leads.append(enc.decode(red.leads[i]))
    stats["basis_size"] = len(basis)
    return GroebnerResult(
        basis,
        leads,
        complete=stop_degree is None or not (B or pending),
        truncated_degree=stop_degree if (B or pending) else None,
        stats=stats,
    )


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: TermOrder = LEX) -> Polynomial:
    """Remainder of f on division by G (first listed divisor wins)."""
    if f.is_zero():
        return f
    enc = _Encoder(f.ring, order)
    red = _Reducer(enc, f.ring.prime)
    for g in G:
        if g.is_zero():
            raise ValueError("cannot divide by the zero polynomial")
        red.add(*_split_monic(enc.encode_poly(g), f.ring.prime))
    return enc.decode_poly(red.reduce(enc.encode_poly(f)))


# ---------------------------------------------------------------- monomial ideals


def minimalize(monos: Iterable[Monomial]) -> tuple[Monomial, ...]:
    uniq = sorted(set(tuple(m) for m in monos), key=lambda m: (sum(m), tuple(-e for e in m)))
    kept: list[Monomial] = []
    masks: list[int] = []
    for m in uniq:
        mm = 0
        for k, e in enumerate(m):
            if e:
                mm |= 1 << k
        if not any(
            km & mm == km and all(a <= b for a, b in zip(k, m)) for k, km in zip(kept, masks)
        ):
            kept.append(m)
            masks.append(mm)
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators (canonically sorted)."""

    ring: RingConfig
    gens: tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "gens", minimalize(self.gens))

    @classmethod
    def from_pairs(cls, ring: RingConfig, gens: Iterable[Iterable[tuple[int, int]]]):
        return cls(ring, tuple(ring.monomial(g) for g in gens))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.gens + other.gens)

    def is_squarefree(self) -> bool:
        return all(is_squarefree(g) for g in self.gens)

    def multidegrees(self) -> list[tuple[int, ...]]:
        return [multidegree(g, self.ring) for g in self.gens]

    def variables_used(self) -> set[int]:
        used: set[int] = set()
        for g in self.gens:
            used.update(support(g))
        return used

    def as_pairs(self) -> list[list[list[int]]]:
        """Generators as lists of [row, col] pairs, repeated for powers."""
        out = []
        for g in self.gens:
            item = []
            for k, e in enumerate(g):
                v = self.ring.variables[k]
                item.extend([[v.row, v.col]] * e)
            out.append(item)
        return out

    def render(self) -> list[str]:
        return [render_monomial(g, self.ring) for g in self.gens]

    def __str__(self) -> str:
        return "(" + ", ".join(self.render()) + ")"


# ---------------------------------------------------------------- ideals


class Ideal:
    """Polynomial ideal with Groebner bases cached per term order."""

    def __init__(self, ring: RingConfig, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        for g in generators:
            if g.ring != ring:
                raise ValueError("generator is not in the ideal's ring")
            if not g.is_zero():
                gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._gb: dict[TermOrder, GroebnerResult] = {}

    def __repr__(self) -> str:
        return f"Ideal({len(self.generators)} generators, blocks={self.ring.blocks})"

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def groebner(self, order: TermOrder = LEX, deadline: float | None = None) -> GroebnerResult:
        if order not in self._gb:
            self._gb[order] = buchberger(
                self.generators, order, homogeneous=self.is_homogeneous(), deadline=deadline
            )
        return self._gb[order]

    def groebner_basis(self, order: TermOrder = LEX) -> list[Polynomial]:
        return self.groebner(order).basis

    def __add__(self, other: "Ideal") -> "Ideal":
        if other.ring != self.ring:
            raise ValueError("ideals live in different rings")
        return Ideal(self.ring, self.generators + other.generators)

    def map(self, fn: Callable[[Polynomial], Polynomial], ring: RingConfig | None = None) -> "Ideal":
        return Ideal(ring or self.ring, [fn(g) for g in self.generators])


def initial_ideal(I: Ideal, order: TermOrder = LEX) -> MonomialIdeal:
    return MonomialIdeal(I.ring, tuple(I.groebner(order).leads))


def ideal_membership(f: Polynomial, I: Ideal, order: TermOrder = LEX) -> bool:
    return normal_form(f, I.groebner_basis(order), order).is_zero()


def ideals_equal(I: Ideal, J: Ideal, order: TermOrder = LEX) -> bool:
    """Equality of ideals through their reduced Groebner bases."""
    gi = I.groebner_basis(order)
    gj = J.groebner_basis(order)
    return sorted(g.render() for g in gi) == sorted(g.render() for g in gj)


def degree_monomials(ring: RingConfig, A: Iterable[int]) -> list[Monomial]:
    """All products x[i_j, j] over j in A, i.e. the monomials of degree A."""
    cols = sorted(A)
    out = []
    for rows in itertools.product(*(range(1, ring.blocks[j - 1] + 1) for j in cols)):
        out.append(ring.monomial(zip(rows, cols)))
    return out


def component_basis(I: Ideal, A: Iterable[int], order: TermOrder = LEX) -> list[Polynomial]:
    """Basis of the degree-A graded piece I_A, with pairwise distinct monic leading terms."""
    A = sorted(set(A))
    if not A:
        raise ValueError("degree set A must be nonempty")
    ring = I.ring
    if any(j < 1 or j > ring.n for j in A):
        raise ValueError(f"degree set {A} outside [1, {ring.n}]")
    if not I.generators:
        return []
    G = I.groebner_basis(order)
    key = order.key(ring)
    monos = sorted(degree_monomials(ring, A), key=key, reverse=True)
    forms = [normal_form(Polynomial.monomial(ring, u), G, order) for u in monos]
    columns = sorted({m for f in forms for m in f.terms}, key=key, reverse=True)
    col_index = {m: k for k, m in enumerate(columns)}
    matrix = []
    for f in forms:
        row = [0] * len(columns)
        for m, c in f.terms.items():
            row[col_index[m]] = c
        matrix.append(row)
    if not columns:
        kernel = [[int(i == k) for k in range(len(monos))] for i in range(len(monos))]
    else:
        kernel = left_kernel(matrix, ring.prime, len(columns))
    basis = []
    for vec in kernel:
        basis.append(Polynomial(ring, {u: c for u, c in zip(monos, vec) if c}))
    return basis
