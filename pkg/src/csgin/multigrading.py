"""Multigraded generic initial ideals by random block coordinate changes,
and Cartwright-Sturmfels verdicts with re-checkable witnesses."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

from .algebra import (
    LEX,
    Polynomial,
    RingConfig,
    TermOrder,
    Variable,
    is_squarefree,
    multidegree,
    random_block_change,
    support,
)
from .groebner import GroebnerTimeout, Ideal, MonomialIdeal, buchberger


class ContractError(ValueError):
    """An operation was called outside its precondition."""


def is_radical_monomial(J: MonomialIdeal) -> bool:
    return J.is_squarefree()


def is_borel_fixed(J: MonomialIdeal) -> bool:
    """Exchange condition: x_kj * u / x_ij lies in J for every generator u, x_ij | u, k < i."""
    if not is_radical_monomial(J):
        raise ContractError("the exchange test characterises Borel-fixedness only for radical ideals")
    ring = J.ring
    for u in J.gens:
        for idx in support(u):
            i, j = ring.variables[idx]
            for k in range(1, i):
                w = list(u)
                w[idx] -= 1
                w[ring.var_index(k, j)] += 1
                if not J.contains(tuple(w)):
                    return False
    return True


def in_brad(J: MonomialIdeal) -> bool:
    return is_radical_monomial(J) and is_borel_fixed(J)


def multidegree_multiplicity_free(J: MonomialIdeal) -> bool:
    return all(max(d, default=0) <= 1 for d in J.multidegrees())


# ---------------------------------------------------------------- gins


@dataclass
class GinReport:
    samples: int
    seed: int
    prime: int
    order: TermOrder
    ideals: list[MonomialIdeal]
    sample_seeds: list[int]
    stable: bool
    gin: MonomialIdeal | None


def transformed_ideal(I: Ideal, seed: int) -> Ideal:
    g = random_block_change(I.ring, seed)
    return I.map(g.apply)


def multigraded_gin(
    I: Ideal, order: TermOrder = LEX, samples: int = 3, seed: int = 0, deadline: float | None = None
) -> GinReport:
    """Initial ideals of I after ``samples`` random block changes drawn from seed+1, seed+2, ..."""
    if samples < 1:
        raise ValueError("need at least one sample")
    ideals = []
    seeds = []
    for k in range(1, samples + 1):
        gI = transformed_ideal(I, seed + k)
        res = buchberger(gI.generators, order, homogeneous=gI.is_homogeneous(), deadline=deadline)
        ideals.append(MonomialIdeal(I.ring, tuple(res.leads)))
        seeds.append(seed + k)
    stable = all(J == ideals[0] for J in ideals)
    return GinReport(
        samples=samples,
        seed=seed,
        prime=I.ring.prime,
        order=order,
        ideals=ideals,
        sample_seeds=seeds,
        stable=stable,
        gin=ideals[0] if stable else None,
    )


class CsStatus(str, Enum):
    CS_CERTIFIED = "CS_CERTIFIED"
    NOT_CS = "NOT_CS"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class SampleOutcome:
    seed: int
    initial_ideal: MonomialIdeal
    complete: bool
    truncated_degree: int | None
    radical: bool
    borel: bool | None


@dataclass
class CsVerdict:
    status: CsStatus
    prime: int
    order: TermOrder
    witness: MonomialIdeal | None = None
    witness_seed: int | None = None
    witness_complete: bool = True
    reason: str | None = None
    stable: bool | None = None
    samples: list[SampleOutcome] = field(default_factory=list)
    method: str = "gin"
    k_polynomial: object = None

    def recheck(self) -> bool:
        """Re-verify the witness independently of the computation that produced it."""
        if self.status is CsStatus.CS_CERTIFIED:
            if self.witness is None or not in_brad(self.witness):
                return False
            if self.method == "hilbert":
                from .hilbert import k_polynomial_monomial

                return k_polynomial_monomial(self.witness) == self.k_polynomial
            return True
        if self.status is CsStatus.NOT_CS:
            return self.witness is not None and not is_radical_monomial(self.witness)
        return True


def check_cs(
    I: Ideal,
    order: TermOrder = LEX,
    samples: int = 3,
    seed: int = 0,
    deadline: float | None = None,
    early_exit: bool = True,
    method: str = "gin",
) -> CsVerdict:
    """CS verdict from sampled initial ideals in random block coordinates.

    A non-squarefree initial ideal refutes CS; a radical Borel-fixed one
    certifies it (it shares the Hilbert series of I).  With ``early_exit`` a
    sample stops after the degree in which a non-squarefree leading monomial
    first appears; that monomial is then a minimal generator of the initial
    ideal and the truncated ideal is the witness.

    ``method="hilbert"`` instead matches the Hilbert series of I against a
    radical Borel-fixed ideal (see ``hilbert.check_cs_by_hilbert_series``).
    """
    if method == "hilbert":
        from .hilbert import check_cs_by_hilbert_series

        return check_cs_by_hilbert_series(I, order, deadline)
    if method != "gin":
        raise ValueError(f"unknown method {method!r}")
    if samples < 1:
        raise ValueError("need at least one sample")
    if not I.is_homogeneous():
        raise ContractError("check_cs needs a Z^n-homogeneous ideal")
    prime = I.ring.prime
    outcomes: list[SampleOutcome] = []
    stop = (lambda m: not is_squarefree(m)) if early_exit else None
    try:
        for k in range(1, samples + 1):
            gI = transformed_ideal(I, seed + k)
            res = buchberger(
                gI.generators, order, homogeneous=True, stop_on_lead=stop, deadline=deadline
            )
            J = MonomialIdeal(I.ring, tuple(res.leads))
            radical = is_radical_monomial(J)
            borel = is_borel_fixed(J) if radical else None
            outcomes.append(
                SampleOutcome(seed + k, J, res.complete, res.truncated_degree, radical, borel)
            )
    except GroebnerTimeout:
        return CsVerdict(
            CsStatus.INCONCLUSIVE, prime, order, reason="timeout", samples=outcomes
        )

    complete = [o for o in outcomes if o.complete]
    stable = bool(complete) and len(complete) == len(outcomes) and all(
        o.initial_ideal == complete[0].initial_ideal for o in complete
    )
    for o in outcomes:
        if not o.radical:
            return CsVerdict(
                CsStatus.NOT_CS,
                prime,
                order,
                witness=o.initial_ideal,
                witness_seed=o.seed,
                witness_complete=o.complete,
                stable=stable,
                samples=outcomes,
            )
    for o in outcomes:
        if o.borel:
            return CsVerdict(
                CsStatus.CS_CERTIFIED,
                prime,
                order,
                witness=o.initial_ideal,
                witness_seed=o.seed,
                stable=stable,
                reason=None if stable else "unstable samples",
                samples=outcomes,
            )
    reason = "unstable samples" if not stable else "radical but not Borel-fixed"
    return CsVerdict(CsStatus.INCONCLUSIVE, prime, order, reason=reason, stable=stable, samples=outcomes)


def check_cs_time_limited(I: Ideal, timeout: float | None, **kwargs) -> CsVerdict:
    deadline = None if timeout is None else time.monotonic() + timeout
    return check_cs(I, deadline=deadline, **kwargs)


# ---------------------------------------------------------------- linear sections


def substitute_linear(I: Ideal, v: Variable, L: Polynomial) -> Ideal:
    """Replace the variable v by the linear form L and drop v from the ring.

    L must be a linear form in the same column as v that does not involve v
    (or zero).  Rows below v in its column move up by one.
    """
    ring = I.ring
    vi, vj = v
    vk = ring.var_index(vi, vj)
    if L.ring != ring:
        raise ValueError("linear form lives in a different ring")
    for m in L.terms:
        if sum(m) != 1 or multidegree(m, ring) != multidegree(ring.var_monomial(vi, vj), ring):
            raise ValueError("substitute must be a linear form of the same multidegree as the variable")
        if m[vk]:
            raise ValueError("linear form must not involve the substituted variable")
    if ring.blocks[vj - 1] == 1:
        raise ValueError("cannot remove the only variable of a column")
    blocks = list(ring.blocks)
    blocks[vj - 1] -= 1
    new_ring = RingConfig(tuple(blocks), ring.prime)

    def rename(k: int) -> int:
        i, j = ring.variables[k]
        if j == vj and i > vi:
            i -= 1
        return new_ring.var_index(i, j)

    targets = [None if k == vk else rename(k) for k in range(ring.nvars)]
    powers = {0: {ring.one(): 1}}

    def L_power(e: int) -> dict:
        if e not in powers:
            powers[e] = (L ** e).terms
        return powers[e]

    p = ring.prime

    def move(f: Polynomial) -> Polynomial:
        out: dict = {}
        for mono, c in f.terms.items():
            e = mono[vk]
            base = list(mono)
            base[vk] = 0
            for lm, lc in L_power(e).items():
                full = [a + b for a, b in zip(base, lm)]
                new = [0] * new_ring.nvars
                for k, x in enumerate(full):
                    if x:
                        new[targets[k]] = x
                key = tuple(new)
                out[key] = (out.get(key, 0) + c * lc) % p
        return Polynomial._raw(new_ring, {m: c for m, c in out.items() if c})

    return Ideal(new_ring, [move(g) for g in I.generators])


def compress_rows(I: Ideal) -> tuple[Ideal, dict[Variable, Variable]]:
    """Drop the rows a column never uses and renumber the used ones from the top.

    Row renumbering inside a column is a block coordinate change, and an
    ideal extended from the top rows keeps its initial ideal (and the exchange
    condition) when unused rows are added back, so CS verdicts transfer.
    """
    ring = I.ring
    used: dict[int, set[int]] = {j: set() for j in range(1, ring.n + 1)}
    for g in I.generators:
        for k in g.variables_used():
            i, j = ring.variables[k]
            used[j].add(i)
    blocks = tuple(max(1, len(used[j])) for j in range(1, ring.n + 1))
    new_ring = RingConfig(blocks, ring.prime)
    mapping: dict[Variable, Variable] = {}
    for j in range(1, ring.n + 1):
        for r, i in enumerate(sorted(used[j]), start=1):
            mapping[Variable(i, j)] = Variable(r, j)
    targets = {
        ring.index[old]: new_ring.var_index(*new) for old, new in mapping.items()
    }

    def move(f: Polynomial) -> Polynomial:
        terms = {}
        for mono, c in f.terms.items():
            e = [0] * new_ring.nvars
            for k, x in enumerate(mono):
                if x:
                    e[targets[k]] = x
            terms[tuple(e)] = c
        return Polynomial._raw(new_ring, terms)

    return Ideal(new_ring, [move(g) for g in I.generators]), mapping


def lift_monomial_ideal(J: MonomialIdeal, ring: RingConfig) -> MonomialIdeal:
    """View a monomial ideal of a ring with fewer rows per column inside ``ring``."""
    gens = []
    for u in J.gens:
        pairs = []
        for k, e in enumerate(u):
            if e:
                v = J.ring.variables[k]
                pairs.extend([(v.row, v.col)] * e)
        gens.append(ring.monomial(pairs))
    return MonomialIdeal(ring, tuple(gens))


__all__ = [
    "ContractError",
    "CsStatus",
    "CsVerdict",
    "GinReport",
    "check_cs",
    "check_cs_time_limited",
    "compress_rows",
    "in_brad",
    "is_borel_fixed",
    "is_radical_monomial",
    "lift_monomial_ideal",
    "multidegree_multiplicity_free",
    "multigraded_gin",
    "substitute_linear",
    "transformed_ideal",
]
