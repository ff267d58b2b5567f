"""Exact-rational belief states and Bayesian conditioning.

A belief state stores one probability per world of the universe, indexed by
world value, all as ``fractions.Fraction``. Sums are required to be exactly
1 with no tolerance, which is what lets every downstream comparison be an
equality instead of an approximation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .errors import ConditioningUndefined, InvalidBeliefState
from .logic import Evidence, Vocabulary, evidence_mask

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class BeliefState:
    """A probability distribution over all ``2**n`` worlds."""

    vocab: Vocabulary
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        probs = tuple(Fraction(p) for p in self.probs)
        object.__setattr__(self, "probs", probs)
        if len(probs) != self.vocab.world_count:
            raise InvalidBeliefState(
                f"expected {self.vocab.world_count} probabilities, got {len(probs)}"
            )
        if any(p < 0 for p in probs):
            raise InvalidBeliefState("probabilities must be non-negative")
        total = sum(probs)
        if total != 1:
            raise InvalidBeliefState(f"probabilities sum to {total}, not 1")

    @classmethod
    def from_display(cls, vocab: Vocabulary, values) -> "BeliefState":
        """Build from probabilities listed in display order (all-true first)."""
        values = [Fraction(v) for v in values]
        if len(values) != vocab.world_count:
            raise InvalidBeliefState(
                f"expected {vocab.world_count} probabilities, got {len(values)}"
            )
        probs = [ZERO] * vocab.world_count
        for w, p in zip(vocab.worlds(), values):
            probs[w] = p
        return cls(vocab, tuple(probs))

    @classmethod
    def point_mass(cls, vocab: Vocabulary, w: int) -> "BeliefState":
        probs = [ZERO] * vocab.world_count
        probs[w] = ONE
        return cls(vocab, tuple(probs))

    @classmethod
    def uniform(cls, vocab: Vocabulary) -> "BeliefState":
        share = Fraction(1, vocab.world_count)
        return cls(vocab, (share,) * vocab.world_count)

    def __call__(self, w: int) -> Fraction:
        return self.probs[w]

    def display(self) -> tuple[Fraction, ...]:
        """Probabilities in display order (all-true world first)."""
        return tuple(self.probs[w] for w in self.vocab.worlds())

    def as_mapping(self) -> dict[str, Fraction]:
        return {self.vocab.world_name(w): self.probs[w] for w in self.vocab.worlds()}


def mass(b: BeliefState, evidence: Evidence) -> Fraction:
    """Total probability of the worlds satisfying ``evidence``."""
    m = evidence_mask(evidence, b.vocab)
    return sum((b.probs[w] for w in range(b.vocab.world_count) if m >> w & 1), ZERO)


def support(b: BeliefState) -> int:
    """Bitmask of the worlds with strictly positive probability."""
    s = 0
    for w, p in enumerate(b.probs):
        if p > 0:
            s |= 1 << w
    return s


def bayesian_conditioning(b: BeliefState, evidence: Evidence) -> BeliefState:
    """Renormalize onto the evidence worlds; undefined at zero prior mass."""
    m = evidence_mask(evidence, b.vocab)
    total = mass(b, m)
    if total == 0:
        raise ConditioningUndefined("evidence has zero prior probability")
    probs = tuple(
        b.probs[w] / total if m >> w & 1 else ZERO
        for w in range(b.vocab.world_count)
    )
    return BeliefState(b.vocab, probs)


def expansion(b: BeliefState, evidence: Evidence) -> BeliefState:
    """Probabilistic expansion; identified with Bayesian conditioning."""
    return bayesian_conditioning(b, evidence)


# --- file format -------------------------------------------------------------
#
# {"atoms": ["q", "r"], "probabilities": {"11": "3/10", "10": "0.7"}}
# Values are rational strings "p/q" or decimal strings converted exactly;
# worlds not listed default to probability 0.


def belief_state_from_dict(data: Mapping) -> BeliefState:
    try:
        vocab = Vocabulary(tuple(data["atoms"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidBeliefState(f"bad atoms list: {exc}") from None
    raw = data.get("probabilities", {})
    if not isinstance(raw, Mapping):
        raise InvalidBeliefState("probabilities must be a world -> value map")
    probs = [ZERO] * vocab.world_count
    for name, value in raw.items():
        try:
            w = vocab.world_from_name(str(name))
        except ValueError as exc:
            raise InvalidBeliefState(str(exc)) from None
        try:
            probs[w] = Fraction(str(value))
        except (ValueError, ZeroDivisionError):
            raise InvalidBeliefState(f"bad probability {value!r} for world {name}") from None
    return BeliefState(vocab, tuple(probs))


def belief_state_to_dict(b: BeliefState) -> dict:
    return {
        "atoms": list(b.vocab.atoms),
        "probabilities": {name: str(p) for name, p in b.as_mapping().items()},
    }


def load_belief_state(path: str | Path) -> BeliefState:
    with open(path, encoding="utf-8") as fh:
        return belief_state_from_dict(json.load(fh))


def save_belief_state(b: BeliefState, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(belief_state_to_dict(b), fh, indent=2)
        fh.write("\n")
