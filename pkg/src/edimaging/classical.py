"""Classical base-change operators over world sets.

These supply the model-level revision and update steps consumed by the
classically-guided weight functions: revision picks the evidence worlds at
globally minimal distance from the base (Dalal style), update takes each
base world's closest evidence worlds separately and unites them (Winslett
style). A table-driven operator is also provided so scenario tests can pin
the chosen world set outright.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .belief import BeliefState, support
from .errors import EmptyEvidence
from .logic import Evidence, evidence_mask
from .metric import PseudoDistance, min_worlds


@dataclass(frozen=True)
class ClassicalOperator:
    """A named model-set transformer of kind ``revision`` or ``update``."""

    kind: str
    name: str
    apply: Callable[[int, int], int]


def dalal_revision(d: PseudoDistance) -> ClassicalOperator:
    """Evidence worlds whose distance to the nearest base world is globally
    minimal."""

    def apply(base: int, evidence: int) -> int:
        if evidence == 0:
            raise EmptyEvidence("cannot revise with unsatisfiable evidence")
        if base == 0:
            return evidence
        scored = []
        for w in range(d.size):
            if not evidence >> w & 1:
                continue
            nearest = min(d.table[w][v] for v in range(d.size) if base >> v & 1)
            scored.append((nearest, w))
        best = min(score for score, _ in scored)
        result = 0
        for score, w in scored:
            if score == best:
                result |= 1 << w
        return result

    return ClassicalOperator("revision", "dalal", apply)


def pma_update(d: PseudoDistance) -> ClassicalOperator:
    """Union over base worlds of their closest evidence worlds."""

    def apply(base: int, evidence: int) -> int:
        if evidence == 0:
            raise EmptyEvidence("cannot update with unsatisfiable evidence")
        if base == 0:
            return evidence
        result = 0
        for v in range(d.size):
            if base >> v & 1:
                result |= min_worlds(evidence, v, d)
        return result

    return ClassicalOperator("update", "pma", apply)


def table_operator(kind: str, name: str,
                   mapping: Mapping[tuple[int, int], int]) -> ClassicalOperator:
    """An operator fixed by an explicit (base, evidence) -> result table."""
    fixed = dict(mapping)

    def apply(base: int, evidence: int) -> int:
        try:
            return fixed[(base, evidence)]
        except KeyError:
            raise KeyError(
                f"table operator {name!r} has no entry for "
                f"base={base:#x}, evidence={evidence:#x}"
            ) from None

    return ClassicalOperator(kind, name, apply)


def apply_to_state(op: ClassicalOperator, b: BeliefState,
                   evidence: Evidence) -> int:
    """Apply ``op`` to the support of ``b`` and the models of the evidence."""
    return op.apply(support(b), evidence_mask(evidence, b.vocab))
