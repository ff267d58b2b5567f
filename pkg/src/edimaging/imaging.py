"""The distance-weighted imaging engine, plus the direct movers it subsumes.

``edi`` computes, for every evidence world, the weighted sum of all prior
world masses and normalizes by the total. The normalizer is computed and
exposed rather than assumed positive: a weight function that starves every
evidence world of mass is reported as a degenerate combination instead of
silently producing garbage.

``lewis_imaging`` and ``generalized_imaging`` are independent direct
implementations (mass moved world by world, no normalization) used to
cross-check the engine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .belief import BeliefState
from .errors import DegenerateNormalization, EmptyEvidence
from .logic import Evidence, evidence_mask
from .metric import PseudoDistance, UniqueClosestMap, min_worlds
from .weights import WeightFunction

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ChangeResult:
    """Posterior state plus the normalizer that produced it."""

    posterior: BeliefState
    gamma: Fraction
    operator: str
    evidence: int


def edi(b: BeliefState, evidence: Evidence, f: WeightFunction) -> ChangeResult:
    """Distance-weighted imaging of ``b`` on the evidence via ``f``."""
    mask = evidence_mask(evidence, b.vocab)
    if mask == 0:
        raise EmptyEvidence("evidence has no models")
    count = b.vocab.world_count
    sums = {}
    gamma = ZERO
    for w in range(count):
        if not mask >> w & 1:
            continue
        total = ZERO
        for w_prime in range(count):
            p = b.probs[w_prime]
            if p != 0:
                total += p * f(mask, w, w_prime, b)
        sums[w] = total
        gamma += total
    if gamma == 0:
        raise DegenerateNormalization(
            f"weight {f.name} assigns no mass to any evidence world"
        )
    probs = tuple(
        sums[w] / gamma if w in sums else ZERO for w in range(count)
    )
    return ChangeResult(BeliefState(b.vocab, probs), gamma, f.name, mask)


def lewis_imaging(b: BeliefState, evidence: Evidence,
                  m: UniqueClosestMap | PseudoDistance) -> ChangeResult:
    """Every world sends all its mass to its unique closest evidence world."""
    if isinstance(m, PseudoDistance):
        m = UniqueClosestMap(m)
    mask = evidence_mask(evidence, b.vocab)
    if mask == 0:
        raise EmptyEvidence("evidence has no models")
    count = b.vocab.world_count
    probs = [ZERO] * count
    for w_prime in range(count):
        p = b.probs[w_prime]
        if p != 0:
            probs[m.closest(mask, w_prime)] += p
    return ChangeResult(BeliefState(b.vocab, tuple(probs)), ONE, "li", mask)


def generalized_imaging(b: BeliefState, evidence: Evidence,
                        d: PseudoDistance) -> ChangeResult:
    """Every world splits its mass equally among its closest evidence worlds."""
    mask = evidence_mask(evidence, b.vocab)
    if mask == 0:
        raise EmptyEvidence("evidence has no models")
    count = b.vocab.world_count
    probs = [ZERO] * count
    for w_prime in range(count):
        p = b.probs[w_prime]
        if p == 0:
            continue
        closest = min_worlds(mask, w_prime, d)
        share = p / closest.bit_count()
        for w in range(count):
            if closest >> w & 1:
                probs[w] += share
    return ChangeResult(BeliefState(b.vocab, tuple(probs)), ONE, "gi", mask)


def iterate(b: BeliefState, evidence: Evidence, f: WeightFunction,
            t: int) -> list[ChangeResult]:
    """Apply ``edi`` ``t`` times, each step feeding the next.

    Prior-dependent weights are re-evaluated against each intermediate
    state.
    """
    if t < 1:
        raise ValueError("need at least one application")
    results = []
    current = b
    for _ in range(t):
        step = edi(current, evidence, f)
        results.append(step)
        current = step.posterior
    return results
