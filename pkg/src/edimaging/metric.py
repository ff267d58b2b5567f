"""Pseudo-distances between worlds and closest-world selection.

A pseudo-distance is a total table of non-negative integers that is zero on
the diagonal, symmetric, and satisfies the triangle inequality; it is
*faithful* when distinct worlds are at positive distance. The table is kept
explicit (the universe is at most ``2**16`` worlds) so arbitrary tables can
be loaded for counterexample construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import EmptyEvidence, InvalidDistance
from .logic import Evidence, Vocabulary, evidence_mask

CONDITIONS = (
    "non-negativity",
    "identity",
    "symmetry",
    "triangle-inequality",
    "faithfulness",
)


@dataclass(frozen=True)
class PseudoDistance:
    """A symmetric integer distance table over the world universe."""

    table: tuple[tuple[int, ...], ...]
    faithful: bool

    @property
    def size(self) -> int:
        return len(self.table)

    def dist(self, w: int, w_prime: int) -> int:
        return self.table[w][w_prime]

    @classmethod
    def from_table(cls, rows, faithful: Optional[bool] = None) -> "PseudoDistance":
        table = tuple(tuple(int(v) for v in row) for row in rows)
        if faithful is None:
            faithful = all(
                table[w][v] > 0
                for w in range(len(table))
                for v in range(len(table))
                if w != v
            )
        return cls(table, faithful)


def hamming(vocab: Vocabulary) -> PseudoDistance:
    """Number of differing atom assignments; faithful by construction."""
    count = vocab.world_count
    table = tuple(
        tuple((w ^ v).bit_count() for v in range(count)) for w in range(count)
    )
    return PseudoDistance(table, faithful=True)


@dataclass(frozen=True)
class ConditionVerdict:
    condition: str
    ok: bool
    witness: tuple[int, ...] | None


@dataclass(frozen=True)
class DistanceReport:
    verdicts: tuple[ConditionVerdict, ...]

    def ok(self, condition: str | None = None) -> bool:
        if condition is None:
            return all(v.ok for v in self.verdicts)
        return next(v for v in self.verdicts if v.condition == condition).ok

    def failures(self) -> list[ConditionVerdict]:
        return [v for v in self.verdicts if not v.ok]


def validate_pseudo_distance(d: PseudoDistance) -> DistanceReport:
    """Check all table conditions, witnessing each violation by world tuple."""
    size = d.size
    t = d.table
    verdicts = []

    witness = None
    for w in range(size):
        for v in range(size):
            if t[w][v] < 0:
                witness = (w, v)
                break
        if witness:
            break
    verdicts.append(ConditionVerdict("non-negativity", witness is None, witness))

    witness = next(((w,) for w in range(size) if t[w][w] != 0), None)
    verdicts.append(ConditionVerdict("identity", witness is None, witness))

    witness = None
    for w in range(size):
        for v in range(w + 1, size):
            if t[w][v] != t[v][w]:
                witness = (w, v)
                break
        if witness:
            break
    verdicts.append(ConditionVerdict("symmetry", witness is None, witness))

    witness = None
    for w in range(size):
        for v in range(size):
            for u in range(size):
                if t[w][v] + t[v][u] < t[w][u]:
                    witness = (w, v, u)
                    break
            if witness:
                break
        if witness:
            break
    verdicts.append(ConditionVerdict("triangle-inequality", witness is None, witness))

    witness = None
    for w in range(size):
        for v in range(size):
            if w != v and t[w][v] == 0:
                witness = (w, v)
                break
        if witness:
            break
    verdicts.append(ConditionVerdict("faithfulness", witness is None, witness))

    return DistanceReport(tuple(verdicts))


def d_max(d: PseudoDistance) -> int:
    return max(max(row) for row in d.table)


def min_worlds(evidence: Evidence, w: int, d: PseudoDistance,
               vocab: Vocabulary | None = None) -> int:
    """Bitmask of the evidence worlds at minimal distance from ``w``."""
    mask = evidence if isinstance(evidence, int) else evidence_mask(evidence, vocab)
    if mask == 0:
        raise EmptyEvidence("no evidence world to move to")
    best = None
    result = 0
    for v in range(d.size):
        if not mask >> v & 1:
            continue
        dv = d.table[v][w]
        if best is None or dv < best:
            best = dv
            result = 1 << v
        elif dv == best:
            result |= 1 << v
    return result


def li_closest(evidence: Evidence, w: int, base: PseudoDistance,
               vocab: Vocabulary | None = None) -> int:
    """The unique closest evidence world to ``w``.

    Ties in the base distance are broken by display order (descending
    truth-vector value), which refines the distance preorder into a total
    order per source world.
    """
    mask = evidence if isinstance(evidence, int) else evidence_mask(evidence, vocab)
    if mask == 0:
        raise EmptyEvidence("no evidence world to move to")
    best_world = None
    best_dist = None
    for v in range(base.size - 1, -1, -1):
        if not mask >> v & 1:
            continue
        dv = base.table[v][w]
        if best_dist is None or dv < best_dist:
            best_dist = dv
            best_world = v
    return best_world


@dataclass(frozen=True)
class UniqueClosestMap:
    """Total-order closest-world selection derived from a base distance."""

    base: PseudoDistance

    def closest(self, evidence_mask: int, w: int) -> int:
        return li_closest(evidence_mask, w, self.base)


# --- file format -------------------------------------------------------------
#
# {"atoms": ["q", "r"], "entries": {"11,00": "2"}}
# Pairs not listed are mirrored from their symmetric counterpart; a missing
# diagonal defaults to 0. The loader validates the table conditions and
# rejects a table violating any of them (faithfulness is recorded, not
# required).


def distance_from_dict(data) -> PseudoDistance:
    try:
        vocab = Vocabulary(tuple(data["atoms"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidDistance(f"bad atoms list: {exc}") from None
    count = vocab.world_count
    entries = data.get("entries", {})
    if not isinstance(entries, dict):
        raise InvalidDistance("entries must be a pair -> value map")
    rows = [[None] * count for _ in range(count)]
    for key, value in entries.items():
        try:
            left, right = str(key).split(",")
            w = vocab.world_from_name(left.strip())
            v = vocab.world_from_name(right.strip())
        except ValueError as exc:
            raise InvalidDistance(f"bad entry key {key!r}: {exc}") from None
        try:
            rows[w][v] = int(str(value))
        except ValueError:
            raise InvalidDistance(f"bad entry value {value!r} for {key}") from None
    for w in range(count):
        if rows[w][w] is None:
            rows[w][w] = 0
        for v in range(count):
            if rows[w][v] is None and rows[v][w] is not None:
                rows[w][v] = rows[v][w]
    missing = [(w, v) for w in range(count) for v in range(count) if rows[w][v] is None]
    if missing:
        w, v = missing[0]
        raise InvalidDistance(
            f"no distance given for worlds {vocab.world_name(w)},{vocab.world_name(v)}"
        )
    d = PseudoDistance.from_table(rows)
    report = validate_pseudo_distance(d)
    core_failures = [v for v in report.failures() if v.condition != "faithfulness"]
    if core_failures:
        first = core_failures[0]
        names = ",".join(vocab.world_name(w) for w in first.witness)
        raise InvalidDistance(f"{first.condition} violated at ({names})")
    return d


def load_distance(path: str | Path) -> PseudoDistance:
    with open(path, encoding="utf-8") as fh:
        return distance_from_dict(json.load(fh))
