"""Rings, monomials, polynomials and term orders over a prime field.

Variables are the entries x[i,j] of a generic matrix with column j holding
``blocks[j-1]`` rows.  Each variable has Z^n-degree e_j.  Monomials are dense
exponent tuples indexed by the ring's row-major variable order, so that
``x[1,1] > x[1,2] > ... > x[1,n] > x[2,1] > ...`` is the natural ranking.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

DEFAULT_PRIME = 32003
CROSS_CHECK_PRIME = 1000003

Monomial = tuple  # dense exponent tuple, length = ring.nvars


class Variable(NamedTuple):
    row: int
    col: int

    def __str__(self) -> str:
        return f"x[{self.row},{self.col}]"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingConfig:
    """Polynomial ring K[x_ij : 1 <= j <= n, 1 <= i <= m_j] with K = F_p."""

    blocks: tuple[int, ...]
    prime: int = DEFAULT_PRIME

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(int(b) for b in self.blocks))
        if len(self.blocks) < 1:
            raise ValueError("ring needs at least one column")
        if any(b < 1 for b in self.blocks):
            raise ValueError(f"block sizes must be positive, got {self.blocks}")
        if self.prime <= 2 or not is_prime(self.prime):
            raise ValueError(f"characteristic must be an odd prime, got {self.prime}")

    @classmethod
    def uniform(cls, cols: int, rows: int, prime: int = DEFAULT_PRIME) -> "RingConfig":
        return cls((rows,) * cols, prime)

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def max_rows(self) -> int:
        return max(self.blocks)

    @cached_property
    def variables(self) -> tuple[Variable, ...]:
        return tuple(
            Variable(i, j)
            for i in range(1, self.max_rows + 1)
            for j in range(1, self.n + 1)
            if i <= self.blocks[j - 1]
        )

    @cached_property
    def index(self) -> dict[Variable, int]:
        return {v: k for k, v in enumerate(self.variables)}

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """0-based column of each variable index."""
        return tuple(v.col - 1 for v in self.variables)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def var_index(self, row: int, col: int) -> int:
        try:
            return self.index[Variable(row, col)]
        except KeyError:
            raise IndexError(f"x[{row},{col}] is outside the ring with blocks {self.blocks}") from None

    def one(self) -> Monomial:
        return (0,) * self.nvars

    def var_monomial(self, row: int, col: int) -> Monomial:
        e = [0] * self.nvars
        e[self.var_index(row, col)] = 1
        return tuple(e)

    def monomial(self, factors: Iterable[tuple[int, int]]) -> Monomial:
        """Monomial from (row, col) pairs, repeated pairs give powers."""
        e = [0] * self.nvars
        for i, j in factors:
            e[self.var_index(i, j)] += 1
        return tuple(e)

    def with_prime(self, prime: int) -> "RingConfig":
        return RingConfig(self.blocks, prime)


# ---------------------------------------------------------------- field


@dataclass(frozen=True)
class FieldElement:
    value: int
    prime: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.prime)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.prime != self.prime:
                raise ValueError("mixing elements of different prime fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement(self.value + self._coerce(other), self.prime)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.value - self._coerce(other), self.prime)

    def __rsub__(self, other):
        return FieldElement(self._coerce(other) - self.value, self.prime)

    def __mul__(self, other):
        return FieldElement(self.value * self._coerce(other), self.prime)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.prime)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("zero has no inverse")
        return FieldElement(pow(self.value, -1, self.prime), self.prime)

    def __truediv__(self, other):
        return self * FieldElement(self._coerce(other), self.prime).inverse()

    def __int__(self) -> int:
        return self.value


# ---------------------------------------------------------------- monomials


def multidegree(m: Monomial, ring: RingConfig) -> tuple[int, ...]:
    """Column-count vector of a monomial."""
    deg = [0] * ring.n
    cols = ring.columns
    for k, e in enumerate(m):
        if e:
            deg[cols[k]] += e
    return tuple(deg)


def total_degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def support(m: Monomial) -> tuple[int, ...]:
    return tuple(k for k, e in enumerate(m) if e)


def is_squarefree(m: Monomial) -> bool:
    return all(e <= 1 for e in m)


def render_monomial(m: Monomial, ring: RingConfig) -> str:
    parts = []
    for k, e in enumerate(m):
        if e:
            v = ring.variables[k]
            parts.append(str(v) if e == 1 else f"{v}^{e}")
    return "*".join(parts) if parts else "1"


# ---------------------------------------------------------------- term orders


@dataclass(frozen=True)
class TermOrder:
    """Lex or degrevlex with respect to a priority ranking of the variables.

    ``priority`` lists variable indices from highest to lowest.  ``None`` means
    the ring's row-major ranking.
    """

    kind: str = "lex"
    priority: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown term order {self.kind!r}")

    def ranking(self, ring: RingConfig) -> tuple[int, ...]:
        if self.priority is None:
            return tuple(range(ring.nvars))
        rank = tuple(self.priority)
        if sorted(rank) != list(range(ring.nvars)):
            raise ValueError("priority must be a permutation of the ring variables")
        pos = {k: r for r, k in enumerate(rank)}
        for j in range(1, ring.n + 1):
            for i in range(1, ring.blocks[j - 1]):
                if pos[ring.var_index(i, j)] > pos[ring.var_index(i + 1, j)]:
                    raise ValueError(f"order must rank x[{i},{j}] above x[{i + 1},{j}]")
        return rank

    def weight_rows(self, ring: RingConfig) -> list[list[int]]:
        """Nonnegative integer weight matrix realising the order.

        Degrevlex is encoded by the partial sums over the top-ranked
        variables, which turns it into a lex comparison of linear forms.
        """
        rank = self.ranking(ring)
        N = ring.nvars
        rows = []
        if self.kind == "lex":
            for k in rank:
                row = [0] * N
                row[k] = 1
                rows.append(row)
        else:
            for length in range(N, 0, -1):
                row = [0] * N
                for k in rank[:length]:
                    row[k] = 1
                rows.append(row)
        return rows

    def key(self, ring: RingConfig):
        rank = self.ranking(ring)
        if self.kind == "lex":
            return lambda m: tuple(m[k] for k in rank)

        def drl(m):
            out = []
            s = 0
            for k in rank:
                s += m[k]
                out.append(s)
            out.reverse()
            return tuple(out)

        return drl

    def compare(self, ring: RingConfig, a: Monomial, b: Monomial) -> int:
        """-1, 0 or 1 as a is less than, equal to or greater than b."""
        key = self.key(ring)
        ka, kb = key(a), key(b)
        return (ka > kb) - (ka < kb)


LEX = TermOrder("lex")
DEGREVLEX = TermOrder("degrevlex")


def order_from_name(name: str) -> TermOrder:
    return TermOrder(name)


# ---------------------------------------------------------------- polynomials


class Polynomial:
    """Sparse polynomial over F_p.  Treated as immutable after construction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingConfig, terms: Mapping[Monomial, int] | None = None):
        self.ring = ring
        p = ring.prime
        clean = {}
        if terms:
            for m, c in terms.items():
                c %= p
                if c:
                    clean[tuple(m)] = c
        self.terms: dict[Monomial, int] = clean

    @classmethod
    def _raw(cls, ring: RingConfig, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, ring: RingConfig) -> "Polynomial":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, ring: RingConfig, c: int) -> "Polynomial":
        return cls(ring, {ring.one(): c})

    @classmethod
    def var(cls, ring: RingConfig, row: int, col: int) -> "Polynomial":
        return cls._raw(ring, {ring.var_monomial(row, col): 1})

    @classmethod
    def monomial(cls, ring: RingConfig, m: Monomial, c: int = 1) -> "Polynomial":
        return cls(ring, {m: c})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        p = self.ring.prime
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.ring, out)

    def __neg__(self) -> "Polynomial":
        p = self.ring.prime
        return Polynomial._raw(self.ring, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.prime
        c %= p
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(self.ring, {m: v * c % p for m, v in self.terms.items()})

    def mul_monomial(self, u: Monomial, c: int = 1) -> "Polynomial":
        p = self.ring.prime
        c %= p
        if not c:
            return Polynomial.zero(self.ring)
        return Polynomial._raw(
            self.ring, {mono_mul(m, u): v * c % p for m, v in self.terms.items()}
        )

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.ring.prime
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = (out.get(m, 0) + c1 * c2) % p
        return Polynomial._raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial.constant(self.ring, 1)
        for _ in range(e):
            result = result * self
        return result

    def leading_term(self, order: TermOrder) -> tuple[Monomial, int]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key(self.ring)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def leading_monomial(self, order: TermOrder) -> Monomial:
        return self.leading_term(order)[0]

    def multidegrees(self) -> set[tuple[int, ...]]:
        return {multidegree(m, self.ring) for m in self.terms}

    def is_homogeneous(self) -> bool:
        """Z^n-homogeneous: all terms share one multidegree."""
        return len(self.multidegrees()) <= 1

    def variables_used(self) -> set[int]:
        used = set()
        for m in self.terms:
            used.update(support(m))
        return used

    def monic(self, order: TermOrder) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(pow(c, -1, self.ring.prime))

    def render(self, order: TermOrder | None = None) -> str:
        if not self.terms:
            return "0"
        key = (order or LEX).key(self.ring)
        p = self.ring.prime
        out = []
        for m in sorted(self.terms, key=key, reverse=True):
            c = self.terms[m]
            neg = c > p // 2
            a = p - c if neg else c
            body = render_monomial(m, self.ring)
            if body == "1":
                text = str(a)
            elif a == 1:
                text = body
            else:
                text = f"{a}*{body}"
            if not out:
                out.append(f"-{text}" if neg else text)
            else:
                out.append(f"- {text}" if neg else f"+ {text}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Polynomial({self.render()!r})"


# ---------------------------------------------------------------- parsing


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


_TOKEN = re.compile(
    r"(?P<int>\d+)|(?P<var>x\s*\[\s*(?P<i>\d+)\s*,\s*(?P<j>\d+)\s*\])|(?P<op>[-+*^])"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        offset = len(text[:pos].encode())
        if pos == len(text):
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos]!r}", offset)
        if mt.group("int") is not None:
            tokens.append(("int", int(mt.group("int")), offset))
        elif mt.group("var") is not None:
            tokens.append(("var", (int(mt.group("i")), int(mt.group("j"))), offset))
        else:
            tokens.append((mt.group("op"), None, offset))
        pos = mt.end()
    tokens.append(("end", None, offset))
    return tokens


def parse_polynomial(text: str, ring: RingConfig) -> Polynomial:
    """Parse ``3*x[1,1]^2 - x[1,2]*x[2,1] + 5`` into a polynomial over F_p."""
    toks = _tokenize(text)
    pos = 0
    p = ring.prime
    terms: dict[Monomial, int] = {}

    def peek():
        return toks[pos]

    def take(kind=None):
        nonlocal pos
        tok = toks[pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[0]}", tok[2])
        pos += 1
        return tok

    def factor(exps: list[int]) -> int:
        tok = peek()
        if tok[0] == "int":
            take()
            return tok[1]
        if tok[0] == "var":
            take()
            i, j = tok[1]
            try:
                k = ring.var_index(i, j)
            except IndexError as exc:
                raise ParseError(str(exc), tok[2]) from None
            e = 1
            if peek()[0] == "^":
                take()
                e = take("int")[1]
            exps[k] += e
            return 1
        raise ParseError(f"expected coefficient or variable, found {tok[0]}", tok[2])

    sign = 1
    first = True
    while True:
        tok = peek()
        if tok[0] in ("+", "-"):
            take()
            sign = -1 if tok[0] == "-" else 1
        elif not first:
            raise ParseError(f"expected '+' or '-', found {tok[0]}", tok[2])
        first = False
        exps = [0] * ring.nvars
        coeff = factor(exps)
        while peek()[0] == "*":
            take()
            coeff *= factor(exps)
        m = tuple(exps)
        terms[m] = (terms.get(m, 0) + sign * coeff) % p
        sign = 1
        if peek()[0] == "end":
            break
    return Polynomial(ring, terms)


# ---------------------------------------------------------------- linear algebra mod p


def _rref(rows: list[list[int]], p: int, ncols: int):
    """Row-reduce in place; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(rows)) if rows[k][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [(a - f * b) % p for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def mat_rank(mat: Sequence[Sequence[int]], p: int) -> int:
    if not mat:
        return 0
    rows = [[v % p for v in row] for row in mat]
    return len(_rref(rows, p, len(rows[0])))


def mat_inverse(mat: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    n = len(mat)
    rows = [[v % p for v in row] + [int(i == k) for k in range(n)] for i, row in enumerate(mat)]
    pivots = _rref(rows, p, n)
    if len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in rows]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    return [
        [sum(x * y for x, y in zip(row, col)) % p for col in zip(*b)]
        for row in a
    ]


def left_kernel(mat: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {c : c^T mat = 0} in reduced echelon form."""
    nrows = len(mat)
    if nrows == 0:
        return []
    # augment with the identity and eliminate on the left block
    rows = [[v % p for v in mat[i]] + [int(i == k) for k in range(nrows)] for i in range(nrows)]
    pivots = _rref(rows, p, ncols)
    kernel = [row[ncols:] for row in rows[len(pivots):]]
    if kernel:
        _rref(kernel, p, nrows)
    return kernel


# ---------------------------------------------------------------- coordinate changes

_MAX_RESAMPLES = 64


@dataclass(frozen=True)
class BlockChange:
    """One invertible matrix per column block; x_ij -> sum_k g[i][k] x_kj."""

    ring: RingConfig
    matrices: tuple[tuple[tuple[int, ...], ...], ...]
    _images: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def identity(cls, ring: RingConfig) -> "BlockChange":
        mats = tuple(
            tuple(tuple(int(i == k) for k in range(m)) for i in range(m)) for m in ring.blocks
        )
        return cls(ring, mats)

    def inverse(self) -> "BlockChange":
        p = self.ring.prime
        return BlockChange(
            self.ring,
            tuple(tuple(tuple(r) for r in mat_inverse(g, p)) for g in self.matrices),
        )

    def image(self, k: int) -> Polynomial:
        """Image of the k-th ring variable."""
        if k not in self._images:
            ring = self.ring
            i, j = ring.variables[k]
            g = self.matrices[j - 1]
            terms = {}
            for r in range(ring.blocks[j - 1]):
                c = g[i - 1][r]
                if c:
                    terms[ring.var_monomial(r + 1, j)] = c
            self._images[k] = Polynomial(ring, terms)
        return self._images[k]

    def apply(self, f: Polynomial) -> Polynomial:
        ring = self.ring
        if f.ring != ring:
            raise ValueError("polynomial is not in the ring of the coordinate change")
        p = ring.prime
        powers: dict[tuple[int, int], dict] = {}

        def power_terms(k: int, e: int) -> dict:
            key = (k, e)
            if key not in powers:
                powers[key] = (self.image(k) ** e).terms
            return powers[key]

        out: dict = {}
        for m, c in f.terms.items():
            acc = {ring.one(): c}
            for k, e in enumerate(m):
                if not e:
                    continue
                nxt: dict = {}
                for m1, c1 in acc.items():
                    for m2, c2 in power_terms(k, e).items():
                        mm = tuple(a + b for a, b in zip(m1, m2))
                        nxt[mm] = (nxt.get(mm, 0) + c1 * c2) % p
                acc = nxt
            for mm, cc in acc.items():
                out[mm] = (out.get(mm, 0) + cc) % p
        return Polynomial._raw(ring, {m: c for m, c in out.items() if c})


def random_block_change(ring: RingConfig, seed: int) -> BlockChange:
    """Dense random invertible block matrices, deterministic in ``seed``."""
    rng = random.Random(f"block-change:{seed}:{ring.prime}:{ring.blocks}")
    p = ring.prime
    mats = []
    for m in ring.blocks:
        for _ in range(_MAX_RESAMPLES):
            g = [[rng.randrange(p) for _ in range(m)] for _ in range(m)]
            if mat_rank(g, p) == m:
                break
        else:
            raise RuntimeError("could not draw an invertible block matrix")
        mats.append(tuple(tuple(r) for r in g))
    return BlockChange(ring, tuple(mats))
