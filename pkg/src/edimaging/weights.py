"""Weight functions for distance-weighted belief change, and their checker.

A weight function maps (evidence worlds, target world, source world, prior
state) to a rational in [0, 1]. All ten operator instantiations share this
one evaluation signature: pure functions simply ignore the evidence and/or
the prior. Evidence arrives as a world mask, never as a formula, so
syntactically different but equivalent formulas cannot yield different
weights.

``check_weight_properties`` verifies claimed properties exhaustively over a
suite of evidence sets and priors, reporting a concrete witness tuple for
every violation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .belief import BeliefState, mass, support
from .classical import ClassicalOperator
from .errors import (
    EmptyEvidence,
    InvalidParameter,
    RejectedWeight,
    SuiteTooLarge,
)
from .logic import Vocabulary
from .metric import PseudoDistance, d_max, hamming, li_closest, min_worlds

ZERO = Fraction(0)
ONE = Fraction(1)

NON_NEGATIVITY = "non-negativity"
IDENTITY = "identity"
SYMMETRY = "symmetry"
WEAK_INVERSITY = "weak-inversity"
STRICT_INVERSITY = "strict-inversity"
EQUI_DISTANCE = "equi-distance"
FAITHFULNESS = "faithfulness"
E_RELAXED = "e-relaxed"
NE_RELAXED = "n-e-relaxed"
RETENTION = "retention"
INVERSE_DISTANCE = "inverse-distance"
RELAXED = "relaxed"

ATOMIC_PROPERTIES = (
    NON_NEGATIVITY,
    IDENTITY,
    SYMMETRY,
    WEAK_INVERSITY,
    STRICT_INVERSITY,
    EQUI_DISTANCE,
    FAITHFULNESS,
    E_RELAXED,
    NE_RELAXED,
    RETENTION,
)
DERIVED_PROPERTIES = (INVERSE_DISTANCE, RELAXED)
ALL_PROPERTIES = ATOMIC_PROPERTIES + DERIVED_PROPERTIES

_INVERSE_DISTANCE_SET = frozenset(
    {NON_NEGATIVITY, IDENTITY, SYMMETRY, WEAK_INVERSITY}
)


@dataclass(frozen=True)
class WeightFunction:
    """A named weight evaluator plus the properties its builder claims."""

    name: str
    fn: Callable[[int, int, int, Optional[BeliefState]], Fraction]
    declared: frozenset[str]
    distance: Optional[PseudoDistance] = None
    evidence_dependent: bool = True
    prior_dependent: bool = False

    def __call__(self, evidence: int, w: int, w_prime: int,
                 prior: Optional[BeliefState] = None) -> Fraction:
        return self.fn(evidence, w, w_prime, prior)

    def declares(self, *props: str) -> bool:
        return all(p in self.declared for p in props)


def _check_eta(eta) -> Fraction:
    eta = Fraction(eta)
    if eta <= 0:
        raise InvalidParameter("eta must be positive")
    return eta


def rcp_weight(distance: PseudoDistance, eta) -> WeightFunction:
    """Reciprocal-of-distance weight: eta / (d + eta)."""
    eta = _check_eta(eta)
    values = {dist: eta / (dist + eta) for row in distance.table for dist in row}
    table = distance.table

    def fn(evidence, w, w_prime, prior):
        return values[table[w][w_prime]]

    declared = {NON_NEGATIVITY, IDENTITY, SYMMETRY, WEAK_INVERSITY,
                STRICT_INVERSITY, EQUI_DISTANCE, E_RELAXED, NE_RELAXED}
    if distance.faithful:
        declared.add(FAITHFULNESS)
    return WeightFunction(
        name=f"rcp(eta={eta})", fn=fn, declared=frozenset(declared),
        distance=distance, evidence_dependent=False,
    )


def dfr_weight(distance: PseudoDistance, eta) -> WeightFunction:
    """Difference-from-maximum weight: (dmax + eta - d) / (dmax + eta)."""
    eta = _check_eta(eta)
    ceiling = d_max(distance) + eta
    values = {dist: (ceiling - dist) / ceiling for row in distance.table for dist in row}
    table = distance.table

    def fn(evidence, w, w_prime, prior):
        return values[table[w][w_prime]]

    declared = {NON_NEGATIVITY, IDENTITY, SYMMETRY, WEAK_INVERSITY,
                STRICT_INVERSITY, EQUI_DISTANCE, E_RELAXED, NE_RELAXED}
    if distance.faithful:
        declared.add(FAITHFULNESS)
    return WeightFunction(
        name=f"dfr(eta={eta})", fn=fn, declared=frozenset(declared),
        distance=distance, evidence_dependent=False,
    )


def bc_weight() -> WeightFunction:
    """Conditioning as a weight: 1 on the diagonal, 0 elsewhere."""

    def fn(evidence, w, w_prime, prior):
        return ONE if w == w_prime else ZERO

    declared = frozenset({NON_NEGATIVITY, IDENTITY, SYMMETRY, WEAK_INVERSITY,
                          EQUI_DISTANCE, FAITHFULNESS, RETENTION})
    return WeightFunction(name="bc", fn=fn, declared=declared,
                          evidence_dependent=False)


def li_weight(base: PseudoDistance, x=ZERO) -> WeightFunction:
    """Unique-closest-world weight.

    ``x`` is the (inert inside the imaging engine) value used on rows whose
    target world falsifies the evidence.
    """
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise InvalidParameter("x must lie in [0, 1]")
    closest_cache: dict[tuple[int, int], int] = {}

    def fn(evidence, w, w_prime, prior):
        if evidence == 0:
            raise EmptyEvidence("no evidence world to move to")
        if not evidence >> w & 1:
            return x
        key = (evidence, w_prime)
        target = closest_cache.get(key)
        if target is None:
            target = li_closest(evidence, w_prime, base)
            closest_cache[key] = target
        return ONE if w == target else ZERO

    return WeightFunction(
        name=f"li(x={x})", fn=fn,
        declared=frozenset({NON_NEGATIVITY, RETENTION}),
        distance=base,
    )


def gi_weight(distance: PseudoDistance) -> WeightFunction:
    """Equal-split closest-worlds weight; retentive exactly when the
    distance is faithful."""
    min_cache: dict[tuple[int, int], int] = {}

    def fn(evidence, w, w_prime, prior):
        if evidence == 0:
            raise EmptyEvidence("no evidence world to move to")
        if w == w_prime and not evidence >> w & 1:
            return ONE
        key = (evidence, w_prime)
        closest = min_cache.get(key)
        if closest is None:
            closest = min_worlds(evidence, w_prime, distance)
            min_cache[key] = closest
        if closest >> w & 1:
            return Fraction(1, closest.bit_count())
        return ZERO

    declared = {NON_NEGATIVITY}
    if distance.faithful:
        declared |= {IDENTITY, RETENTION}
    return WeightFunction(
        name="gi", fn=fn, declared=frozenset(declared), distance=distance,
    )


def zero_weight(inner: WeightFunction) -> WeightFunction:
    """Force retention onto an inverse-distance weight: pairs of distinct
    evidence worlds get weight 0, everything else falls through to ``inner``
    (with the diagonal pinned at 1)."""

    def fn(evidence, w, w_prime, prior):
        if w == w_prime:
            return ONE
        if not evidence >> w & 1 or not evidence >> w_prime & 1:
            return inner.fn(evidence, w, w_prime, prior)
        return ZERO

    declared = {NON_NEGATIVITY, IDENTITY, RETENTION}
    for prop in (SYMMETRY, FAITHFULNESS, NE_RELAXED):
        if prop in inner.declared:
            declared.add(prop)
    return WeightFunction(
        name=f"zero({inner.name})", fn=fn, declared=frozenset(declared),
        distance=inner.distance, prior_dependent=inner.prior_dependent,
    )


def dct_rev_weight(inner: WeightFunction) -> WeightFunction:
    """Direct revision weight: conditioning when the evidence has positive
    prior mass, retention-forced ``inner`` otherwise.

    ``inner`` should be a non-evidence-relaxed inverse-distance weight.
    """
    zeroed = zero_weight(inner)

    def fn(evidence, w, w_prime, prior):
        if prior is None:
            raise InvalidParameter("this weight needs the prior belief state")
        if mass(prior, evidence) > 0:
            return ONE if w == w_prime else ZERO
        return zeroed.fn(evidence, w, w_prime, prior)

    declared = {NON_NEGATIVITY, IDENTITY, SYMMETRY, RETENTION}
    if FAITHFULNESS in inner.declared:
        declared.add(FAITHFULNESS)
    return WeightFunction(
        name=f"dct-rev({inner.name})", fn=fn, declared=frozenset(declared),
        distance=inner.distance, prior_dependent=True,
    )


def cls_rev_weight(rev: ClassicalOperator, inner: WeightFunction) -> WeightFunction:
    """Classical-revision-guided weight: targets chosen by revising the
    prior's support, weights inside the chosen set from ``inner``.

    ``inner`` should be a non-evidence-relaxed, retentive weight (e.g. a
    ``zero_weight`` of an inverse-distance weight).
    """
    target_cache: dict[tuple[int, int], int] = {}

    def fn(evidence, w, w_prime, prior):
        if prior is None:
            raise InvalidParameter("this weight needs the prior belief state")
        if w == w_prime:
            return ONE
        key = (support(prior), evidence)
        target = target_cache.get(key)
        if target is None:
            target = rev.apply(key[0], evidence)
            target_cache[key] = target
        if target >> w & 1:
            return inner.fn(evidence, w, w_prime, prior)
        return ZERO

    declared = {NON_NEGATIVITY, IDENTITY}
    if RETENTION in inner.declared:
        declared.add(RETENTION)
    return WeightFunction(
        name=f"cls-rev({rev.name},{inner.name})", fn=fn,
        declared=frozenset(declared), distance=inner.distance,
        prior_dependent=True,
    )


def cls_upd_weight(upd: ClassicalOperator, inner: WeightFunction) -> WeightFunction:
    """Classical-update-guided weight: like the revision-guided one but with
    an update operator choosing the target worlds and a relaxed ``inner``."""
    target_cache: dict[tuple[int, int], int] = {}

    def fn(evidence, w, w_prime, prior):
        if prior is None:
            raise InvalidParameter("this weight needs the prior belief state")
        if w == w_prime:
            return ONE
        key = (support(prior), evidence)
        target = target_cache.get(key)
        if target is None:
            target = upd.apply(key[0], evidence)
            target_cache[key] = target
        if target >> w & 1:
            return inner.fn(evidence, w, w_prime, prior)
        return ZERO

    return WeightFunction(
        name=f"cls-upd({upd.name},{inner.name})", fn=fn,
        declared=frozenset({NON_NEGATIVITY, IDENTITY}),
        distance=inner.distance, prior_dependent=True,
    )


def dct_upd_weight(inner: WeightFunction) -> WeightFunction:
    """Direct update: any relaxed inverse-distance weight, used as-is."""
    required = _INVERSE_DISTANCE_SET | {E_RELAXED, NE_RELAXED}
    missing = sorted(required - inner.declared)
    if missing:
        raise RejectedWeight(
            f"{inner.name} is not a relaxed inverse-distance weight "
            f"(missing {', '.join(missing)})"
        )
    return replace(inner, name=f"dct-upd({inner.name})")


# --- property checking -------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    """A concrete violating instance: evidence mask, the world tuple the
    property quantifies over (unused slots None), the observed weight
    values, and which prior (by suite index) produced them."""

    evidence: int
    worlds: tuple[Optional[int], ...]
    values: tuple[Fraction, ...]
    prior_index: Optional[int] = None

    def describe(self, vocab: Vocabulary) -> str:
        names = ",".join(
            "-" if w is None else vocab.world_name(w) for w in self.worlds
        )
        evidence = "{" + ",".join(
            vocab.world_name(w) for w in vocab.worlds() if self.evidence >> w & 1
        ) + "}"
        vals = ",".join(str(v) for v in self.values)
        return f"evidence={evidence} worlds=({names}) values=({vals})"


@dataclass(frozen=True)
class PropertyVerdict:
    prop: str
    holds: bool
    witness: Optional[Witness] = None


@dataclass(frozen=True, eq=False)
class PropertyReport:
    """Per-property verdicts for one weight function over a checked suite."""

    weight_name: str
    vocab: Vocabulary
    domain: dict
    verdicts: dict

    def holds(self, prop: str) -> bool:
        return self.verdicts[prop].holds

    def witness(self, prop: str) -> Optional[Witness]:
        return self.verdicts[prop].witness

    def holding(self) -> frozenset[str]:
        return frozenset(p for p, v in self.verdicts.items() if v.holds)

    def to_dict(self) -> dict:
        out = {
            "weight": self.weight_name,
            "domain": dict(self.domain),
            "properties": {},
        }
        for prop in ALL_PROPERTIES:
            verdict = self.verdicts[prop]
            entry = {"verdict": "holds-on-suite" if verdict.holds else "violated"}
            if verdict.witness is not None:
                entry["witness"] = verdict.witness.describe(self.vocab)
            out["properties"][prop] = entry
        return out


def _world_pairs(count: int):
    for w in range(count):
        for v in range(count):
            yield w, v


def check_weight_properties(
    weight: WeightFunction,
    vocab: Vocabulary,
    evidence_suite: Optional[Sequence[int]] = None,
    priors: Optional[Sequence[BeliefState]] = None,
    distance: Optional[PseudoDistance] = None,
) -> PropertyReport:
    """Exhaustively check every property over the given suite.

    The quadruple properties (weak/strict inversity, equi-distance) are
    judged against ``distance`` (default: the weight's own distance, else
    Hamming). A ``holds`` verdict means no violation anywhere on the suite;
    the first violation found, scanning evidence sets, priors, then world
    tuples in ascending order, becomes the canonical witness.
    """
    n = vocab.n
    if n > 4:
        raise SuiteTooLarge("exhaustive property checks support at most 4 atoms")
    count = vocab.world_count
    if evidence_suite is None:
        evidence_suite = range(1, vocab.full_mask + 1)
    evidence_suite = tuple(evidence_suite)
    if priors is None:
        priors = (BeliefState.uniform(vocab),)
    d = distance or weight.distance or hamming(vocab)

    failures: dict[str, Witness] = {}
    table_cache: dict[tuple, list[list[Fraction]]] = {}
    quad_done: set[tuple] = set()

    def note(prop: str, witness: Witness) -> None:
        if prop not in failures:
            failures[prop] = witness

    for evidence in evidence_suite:
        for prior_index, prior in enumerate(priors):
            cache_key = (
                evidence if weight.evidence_dependent else None,
                prior_index if weight.prior_dependent else None,
            )
            table = table_cache.get(cache_key)
            fresh = table is None
            if fresh:
                table = [
                    [weight(evidence, w, v, prior) for v in range(count)]
                    for w in range(count)
                ]
                table_cache[cache_key] = table

            w_index = prior_index if weight.prior_dependent else None

            def witness2(w, v, *vals):
                return Witness(evidence, (w, v, None, None), tuple(vals), w_index)

            if fresh or weight.evidence_dependent or weight.prior_dependent:
                for w, v in _world_pairs(count):
                    val = table[w][v]
                    if NON_NEGATIVITY not in failures and val < 0:
                        note(NON_NEGATIVITY, witness2(w, v, val))
                    if IDENTITY not in failures and w == v and val != 1:
                        note(IDENTITY, witness2(w, v, val))
                    if SYMMETRY not in failures and val != table[v][w]:
                        note(SYMMETRY, witness2(w, v, val, table[v][w]))
                    if FAITHFULNESS not in failures and w != v and val >= 1:
                        note(FAITHFULNESS, witness2(w, v, val))

            # relaxation and retention quantify over the evidence itself, so
            # they are rescanned for every evidence set even when the weight
            # values do not depend on it
            for w, v in _world_pairs(count):
                w_in = bool(evidence >> w & 1)
                v_in = bool(evidence >> v & 1)
                val = table[w][v]
                if E_RELAXED not in failures and w_in and v_in and val == 0:
                    note(E_RELAXED, witness2(w, v, val))
                if NE_RELAXED not in failures and w_in and not v_in and val == 0:
                    note(NE_RELAXED, witness2(w, v, val))
                if RETENTION not in failures and w_in and v_in and w != v and val != 0:
                    note(RETENTION, witness2(w, v, val))

            quad_key = cache_key
            if quad_key not in quad_done:
                quad_done.add(quad_key)
                _check_quadruples(table, d, evidence, w_index, failures, note)

    verdicts = {
        prop: PropertyVerdict(prop, prop not in failures, failures.get(prop))
        for prop in ATOMIC_PROPERTIES
    }
    inverse = all(verdicts[p].holds for p in _INVERSE_DISTANCE_SET)
    inverse_witness = next(
        (verdicts[p].witness for p in (NON_NEGATIVITY, IDENTITY, SYMMETRY,
                                       WEAK_INVERSITY)
         if not verdicts[p].holds),
        None,
    )
    verdicts[INVERSE_DISTANCE] = PropertyVerdict(INVERSE_DISTANCE, inverse,
                                                 inverse_witness)
    relaxed = verdicts[E_RELAXED].holds and verdicts[NE_RELAXED].holds
    relaxed_witness = next(
        (verdicts[p].witness for p in (E_RELAXED, NE_RELAXED)
         if not verdicts[p].holds),
        None,
    )
    verdicts[RELAXED] = PropertyVerdict(RELAXED, relaxed, relaxed_witness)

    if verdicts[E_RELAXED].holds and verdicts[RETENTION].holds:
        # impossible whenever some evidence set has two or more worlds
        if any(e.bit_count() >= 2 for e in evidence_suite):
            raise RuntimeError(
                "checker inconsistency: e-relaxation and retention both held"
            )

    domain = {
        "atoms": n,
        "worlds": count,
        "evidence_sets": len(evidence_suite),
        "priors": len(priors),
    }
    return PropertyReport(weight.name, vocab, domain, verdicts)


def _check_quadruples(table, d: PseudoDistance, evidence: int,
                      prior_index, failures, note) -> None:
    """Weak/strict inversity and equi-distance for one value table.

    A min/max-per-distance prepass decides the verdicts; only on violation
    is a full lexicographic scan run to pin the canonical witness.
    """
    count = len(table)
    by_dist: dict[int, tuple] = {}
    for w, v in _world_pairs(count):
        dist = d.table[w][v]
        val = table[w][v]
        entry = by_dist.get(dist)
        if entry is None:
            by_dist[dist] = (val, (w, v), val, (w, v))
        else:
            lo, lo_at, hi, hi_at = entry
            if val < lo:
                lo, lo_at = val, (w, v)
            if val > hi:
                hi, hi_at = val, (w, v)
            by_dist[dist] = (lo, lo_at, hi, hi_at)

    def scan(prop, violates):
        if prop in failures:
            return
        for w, v in _world_pairs(count):
            for w2, v2 in _world_pairs(count):
                if violates(d.table[w][v], d.table[w2][v2],
                            table[w][v], table[w2][v2]):
                    note(prop, Witness(evidence, (w, v, w2, v2),
                                       (table[w][v], table[w2][v2]),
                                       prior_index))
                    return

    weak_bad = any(
        d1 >= d2 and by_dist[d1][2] > by_dist[d2][0]
        for d1 in by_dist for d2 in by_dist
    )
    if weak_bad:
        scan(WEAK_INVERSITY, lambda d1, d2, v1, v2: d1 >= d2 and v1 > v2)

    strict_bad = any(
        d1 > d2 and by_dist[d1][2] >= by_dist[d2][0]
        for d1 in by_dist for d2 in by_dist
    )
    if strict_bad:
        scan(STRICT_INVERSITY, lambda d1, d2, v1, v2: d1 > d2 and v1 >= v2)

    equi_bad = any(entry[0] != entry[2] for entry in by_dist.values())
    if equi_bad:
        scan(EQUI_DISTANCE, lambda d1, d2, v1, v2: d1 == d2 and v1 != v2)
