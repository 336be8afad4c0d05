"""Determinantal ideals of a generic matrix: minors, binomial edge ideals,
hypergraph minor ideals, sums of maximal-minor blocks and degree-family subideals."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .algebra import LEX, Polynomial, RingConfig, TermOrder, parse_polynomial
from .combinatorics import Hypergraph
from .groebner import Ideal, component_basis


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        if len(self.rows) != len(self.cols) or not self.rows:
            raise ValueError("a minor needs equally many (and at least one) rows and columns")
        if len(set(self.rows)) != len(self.rows) or len(set(self.cols)) != len(self.cols):
            raise ValueError("minor rows and columns must be distinct")

    def is_sorted(self) -> bool:
        return list(self.rows) == sorted(self.rows) and list(self.cols) == sorted(self.cols)

    @property
    def size(self) -> int:
        return len(self.rows)


def minor(spec: MinorSpec, ring: RingConfig, *, check_order: bool = True) -> Polynomial:
    """Determinant of the rows x cols submatrix, by Laplace expansion along the first row.

    ``check_order=False`` accepts any row order (used to test alternation).
    """
    if check_order and not spec.is_sorted():
        raise ValueError("minor rows and columns must be strictly increasing")
    rows, cols = tuple(spec.rows), tuple(spec.cols)
    for i in rows:
        for j in cols:
            ring.var_index(i, j)  # bounds check
    memo: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

    def det(depth: int, cs: tuple[int, ...]) -> Polynomial:
        key = (depth, cs)
        if key in memo:
            return memo[key]
        i = rows[depth]
        if len(cs) == 1:
            out = Polynomial.var(ring, i, cs[0])
        else:
            out = Polynomial.zero(ring)
            for k, j in enumerate(cs):
                sub = det(depth + 1, cs[:k] + cs[k + 1 :])
                term = sub.mul_monomial(ring.var_monomial(i, j), -1 if k % 2 else 1)
                out = out + term
        memo[key] = out
        return out

    return det(0, cols)


def maximal_minors(rows: Sequence[int], cols: Sequence[int], ring: RingConfig) -> list[Polynomial]:
    """All s-minors of the rows x cols submatrix with s = min(#rows, #cols)."""
    s = min(len(rows), len(cols))
    return [
        minor(MinorSpec(r, c), ring)
        for c in itertools.combinations(sorted(cols), s)
        for r in itertools.combinations(sorted(rows), s)
    ]


def binomial_edge_ideal(G: Hypergraph, m: int, prime: int | None = None) -> Ideal:
    """I_G(m): all 2-minors on columns {j, k} for every edge."""
    if m < 2:
        raise ValueError("binomial edge ideals need m >= 2 rows")
    if G.s != 2:
        raise ValueError("binomial edge ideals are defined for graphs")
    return hypergraph_minor_ideal(G, m, prime)


def hypergraph_minor_ideal(H: Hypergraph, m: int, prime: int | None = None) -> Ideal:
    """I_H(m): for each edge, all s-minors on its columns over every row subset."""
    if H.s > m:
        raise ValueError(f"cannot take {H.s}-minors of a matrix with {m} rows")
    ring = RingConfig.uniform(H.n, m) if prime is None else RingConfig.uniform(H.n, m, prime)
    gens = []
    for cols in H.edges:
        for rows in itertools.combinations(range(1, m + 1), H.s):
            gens.append(minor(MinorSpec(rows, cols), ring))
    return Ideal(ring, gens)


def generic_minor_ideal(m: int, n: int, s: int, prime: int | None = None) -> Ideal:
    """I_s(X) for a generic m x n matrix."""
    from .combinatorics import complete_hypergraph

    return hypergraph_minor_ideal(complete_hypergraph(n, s), m, prime)


# ---------------------------------------------------------------- sums of maximal-minor blocks


@dataclass(frozen=True)
class MinorBlock:
    """Maximal minors of the submatrix on the given rows and columns."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    @property
    def size(self) -> int:
        return min(len(self.rows), len(self.cols))


def parse_blocks_text(text: str) -> tuple[int, int, list[MinorBlock]]:
    """``m n`` header, then lines ``rows | cols`` (space separated, ``a-b`` ranges allowed)."""

    def ints(field: str) -> tuple[int, ...]:
        out: list[int] = []
        for tok in field.split():
            if "-" in tok:
                a, b = tok.split("-")
                out.extend(range(int(a), int(b) + 1))
            else:
                out.append(int(tok))
        return tuple(sorted(set(out)))

    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty blocks file")
    m, n = (int(t) for t in lines[0].split())
    blocks = []
    for ln in lines[1:]:
        if "|" not in ln:
            raise ValueError(f"block line needs 'rows | cols': {ln!r}")
        r, c = ln.split("|")
        block = MinorBlock(ints(r), ints(c))
        if not block.rows or not block.cols:
            raise ValueError(f"empty block: {ln!r}")
        if block.rows[-1] > m or block.cols[-1] > n or block.rows[0] < 1 or block.cols[0] < 1:
            raise ValueError(f"block outside the {m} x {n} matrix: {ln!r}")
        blocks.append(block)
    return m, n, blocks


def block_minor_ideal(blocks: Sequence[MinorBlock], ring: RingConfig) -> Ideal:
    gens = []
    for b in blocks:
        gens.extend(maximal_minors(b.rows, b.cols, ring))
    return Ideal(ring, gens)


# ---------------------------------------------------------------- degree families


def is_union_closed(family: Iterable[Iterable[int]]) -> bool:
    """Whether A, B in F with A & B nonempty implies A | B in F."""
    F = {frozenset(A) for A in family}
    return all(not (A & B) or (A | B) in F for A in F for B in F)


def degree_family_ideal(I: Ideal, family: Iterable[Iterable[int]], order: TermOrder = LEX) -> Ideal:
    """Ideal generated by the graded pieces I_A for A in the family."""
    gens: list[Polynomial] = []
    for A in family:
        gens.extend(component_basis(I, A, order))
    return Ideal(I.ring, gens)


# ---------------------------------------------------------------- gradings and input files


def transpose(I: Ideal) -> Ideal:
    """Rebuild I on the transposed matrix so that rows become the graded columns."""
    ring = I.ring
    if len(set(ring.blocks)) != 1:
        raise ValueError("transposition needs a rectangular matrix")
    m, n = ring.blocks[0], ring.n
    tring = RingConfig.uniform(m, n, ring.prime)
    perm = [tring.var_index(v.col, v.row) for v in ring.variables]

    def move(f: Polynomial) -> Polynomial:
        terms = {}
        for mono, c in f.terms.items():
            e = [0] * tring.nvars
            for k, x in enumerate(mono):
                if x:
                    e[perm[k]] = x
            terms[tuple(e)] = c
        return Polynomial._raw(tring, terms)

    return Ideal(tring, [move(g) for g in I.generators])


def parse_generators_text(text: str, ring: RingConfig) -> Ideal:
    """One polynomial expression per line; ``#`` comments and blank lines ignored."""
    gens = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            gens.append(parse_polynomial(line, ring))
    return Ideal(ring, gens)


def load_generators(path: str | Path, ring: RingConfig) -> Ideal:
    return parse_generators_text(Path(path).read_text(), ring)
