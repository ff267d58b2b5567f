"""Executable rationality-postulate checkers for revision and update.

A check sweeps an operator over an exhaustive suite: every belief state on
a rational grid (all compositions of a fixed denominator over the worlds,
which includes every point mass) crossed with every satisfiable evidence
set. Verdicts are per postulate; a violation always carries a re-runnable
witness. Nothing is asserted here: callers decide which postulates are
load-bearing.

Postulate ids: ``rev1``..``rev6`` for revision, ``upd1``, ``upd2a``,
``upd2b``, ``upd2c``, ``upd3``, ``upd4``, ``upd5``, ``upd6a``, ``upd6b``,
``upd7`` for update.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .belief import BeliefState, bayesian_conditioning, mass
from .errors import DomainError, SuiteTooLarge
from .logic import (
    And,
    Bottom,
    Not,
    Or,
    Top,
    Vocabulary,
    default_vocabulary,
    formula_of_world_set,
    worlds_of,
)
from .operators import BeliefChangeOperator, make_operator

HOLDS = "holds-on-suite"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"

REVISION_IDS = ("rev1", "rev2", "rev3", "rev4", "rev5", "rev6")
UPDATE_IDS = ("upd1", "upd2a", "upd2b", "upd2c", "upd3", "upd4",
              "upd5", "upd6a", "upd6b", "upd7")
CORE_REVISION = ("rev1", "rev2", "rev3")
CORE_UPDATE = ("upd1", "upd3", "upd4")

LABELS = {
    "rev1": "revised state is a belief state",
    "rev2": "revised state gives the evidence probability 1",
    "rev3": "equivalent evidence yields identical revisions",
    "rev4": "revision is expansion when the evidence has positive mass",
    "rev5": "conjunctive revision matches expanding the revised state",
    "rev6": "revision never lowers belief in evidence-entailing sentences",
    "upd1": "updated state gives the evidence probability 1",
    "upd2a": "updating with certain evidence changes nothing",
    "upd2b": "evidence-entailing sentences keep positive mass both ways",
    "upd2c": "evidence-entailing sentences keep positive mass forward",
    "upd3": "updated state is a belief state",
    "upd4": "equivalent evidence yields identical updates",
    "upd5": "strengthened evidence never lowers entailed-sentence mass",
    "upd6a": "mutually certain updates coincide",
    "upd6b": "mutually certain updates share support",
    "upd7": "point-mass update of a disjunction is bracketed by the disjuncts",
}


@dataclass(frozen=True)
class SuiteConfig:
    """Grid and evidence configuration for one exhaustive sweep."""

    atoms: int = 2
    grid_denominator: Optional[int] = None
    variants_per_evidence: int = 3

    def __post_init__(self):
        if self.grid_denominator is None:
            object.__setattr__(
                self, "grid_denominator", 4 if self.atoms <= 2 else 2
            )

    @property
    def vocab(self) -> Vocabulary:
        return default_vocabulary(self.atoms)


@dataclass(frozen=True)
class PostulateVerdict:
    postulate: str
    verdict: str
    witness: Optional[dict] = None


@dataclass(frozen=True, eq=False)
class PostulateReport:
    suite: dict
    entries: dict

    def verdict(self, postulate: str) -> str:
        return self.entries[postulate].verdict

    def witness(self, postulate: str) -> Optional[dict]:
        return self.entries[postulate].witness

    def violated(self) -> list[str]:
        return [p for p, e in self.entries.items() if e.verdict == VIOLATED]

    def cores_hold(self) -> bool:
        core = CORE_REVISION if "rev1" in self.entries else CORE_UPDATE
        return all(self.entries[p].verdict == HOLDS for p in core)

    def to_dict(self) -> dict:
        out = {"suite": dict(self.suite), "postulates": {}}
        for pid, entry in self.entries.items():
            record = {"label": LABELS[pid], "verdict": entry.verdict}
            if entry.witness is not None:
                record["witness"] = entry.witness
            out["postulates"][pid] = record
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def belief_grid(vocab: Vocabulary, denominator: int) -> list[BeliefState]:
    """All probability vectors with the given common denominator.

    Every point mass appears (as ``denominator`` in a single slot).
    """
    count = vocab.world_count
    states = []

    def fill(slot: int, remaining: int, acc: list[int]):
        if slot == count - 1:
            states.append(acc + [remaining])
            return
        for k in range(remaining + 1):
            fill(slot + 1, remaining - k, acc + [k])

    fill(0, denominator, [])
    return [
        BeliefState(vocab, tuple(Fraction(k, denominator) for k in row))
        for row in states
    ]


def _syntactic_variants(mask: int, vocab: Vocabulary, how_many: int):
    base = formula_of_world_set(mask, vocab)
    variants = [base, Not(Not(base)), And(base, Top()), Or(base, Bottom())]
    return variants[: max(how_many, 1)]


def _state_dict(b) -> dict:
    vocab = b.vocab
    return {vocab.world_name(w): str(b.probs[w]) for w in vocab.worlds()}


def _set_names(mask: int, vocab: Vocabulary) -> list[str]:
    return [vocab.world_name(w) for w in worlds_of(mask, vocab)]


class _Sweep:
    """Shared plumbing: cached operator runs and first-witness bookkeeping."""

    def __init__(self, op: BeliefChangeOperator, vocab: Vocabulary):
        self.op = op
        self.vocab = vocab
        self.cache: dict[tuple[int, int], object] = {}
        self.mass_cache: dict[tuple[int, int], Fraction] = {}
        self.failures: dict[str, dict] = {}

    def run(self, state_index: int, b: BeliefState, mask: int):
        key = (state_index, mask)
        if key not in self.cache:
            try:
                self.cache[key] = self.op.change(b, mask)
            except DomainError as exc:
                self.cache[key] = exc
        return self.cache[key]

    def note(self, postulate: str, witness: dict) -> None:
        if postulate not in self.failures:
            self.failures[postulate] = witness

    @staticmethod
    def total(result) -> Fraction:
        return sum(result.posterior.probs, Fraction(0))

    def posterior_mass(self, result, mask: int) -> Fraction:
        key = (id(result), mask)
        cached = self.mass_cache.get(key)
        if cached is None:
            probs = result.posterior.probs
            cached = sum(
                (probs[w] for w in range(len(probs)) if mask >> w & 1),
                Fraction(0),
            )
            self.mass_cache[key] = cached
        return cached


def _suite_descriptor(op_name: str, cfg: SuiteConfig, kind: str,
                      states: int, evidences: int) -> dict:
    return {
        "kind": kind,
        "operator": op_name,
        "atoms": cfg.atoms,
        "grid_denominator": cfg.grid_denominator,
        "states": states,
        "evidence_sets": evidences,
    }


def check_revision(op: Union[str, BeliefChangeOperator],
                   config: SuiteConfig = SuiteConfig()) -> PostulateReport:
    """Sweep the revision postulates over the configured grid."""
    if config.atoms > 3:
        raise SuiteTooLarge("postulate sweeps support at most 3 atoms")
    vocab = config.vocab
    if isinstance(op, str):
        op = make_operator(op, vocab)
    grid = belief_grid(vocab, config.grid_denominator)
    evidences = list(range(1, vocab.full_mask + 1))
    sweep = _Sweep(op, vocab)
    applicable = {pid: False for pid in REVISION_IDS}

    for bi, b in enumerate(grid):
        for a in evidences:
            result = sweep.run(bi, b, a)
            base_witness = {
                "state": _state_dict(b),
                "evidence": _set_names(a, vocab),
            }
            if isinstance(result, DomainError):
                applicable["rev1"] = True
                sweep.note("rev1", base_witness | {"error": type(result).__name__})
                continue

            applicable["rev1"] = applicable["rev2"] = True
            if sweep.total(result) != 1:
                sweep.note("rev1", base_witness | {
                    "total": str(sweep.total(result))})
            if sweep.posterior_mass(result, a) != 1:
                sweep.note("rev2", base_witness | {
                    "evidence_mass": str(sweep.posterior_mass(result, a))})

            applicable["rev3"] = True
            for variant in _syntactic_variants(a, vocab,
                                               config.variants_per_evidence):
                other = op.change(b, variant)
                if other.posterior.probs != result.posterior.probs:
                    sweep.note("rev3", base_witness | {
                        "variant": str(variant)})
                    break

            if mass(b, a) > 0:
                applicable["rev4"] = True
                expanded = bayesian_conditioning(b, a)
                if result.posterior.probs != expanded.probs:
                    sweep.note("rev4", base_witness | {
                        "revised": _state_dict(result.posterior),
                        "expanded": _state_dict(expanded)})

            for beta in evidences:
                if sweep.posterior_mass(result, beta) > 0:
                    combined_mask = a & beta
                    if combined_mask == 0:
                        continue
                    applicable["rev5"] = True
                    lhs = sweep.run(bi, b, combined_mask)
                    rhs = bayesian_conditioning(result.posterior, beta)
                    if isinstance(lhs, DomainError) or \
                            lhs.posterior.probs != rhs.probs:
                        sweep.note("rev5", base_witness | {
                            "beta": _set_names(beta, vocab)})
                        break

            for beta in evidences:
                if beta & ~a == 0:
                    applicable["rev6"] = True
                    if sweep.posterior_mass(result, beta) < mass(b, beta):
                        sweep.note("rev6", base_witness | {
                            "beta": _set_names(beta, vocab)})
                        break

    entries = {}
    for pid in REVISION_IDS:
        if pid in sweep.failures:
            entries[pid] = PostulateVerdict(pid, VIOLATED, sweep.failures[pid])
        elif applicable[pid]:
            entries[pid] = PostulateVerdict(pid, HOLDS)
        else:
            entries[pid] = PostulateVerdict(pid, NOT_APPLICABLE)
    suite = _suite_descriptor(op.name, config, "revision",
                              len(grid), len(evidences))
    return PostulateReport(suite, entries)


def check_update(op: Union[str, BeliefChangeOperator],
                 config: SuiteConfig = SuiteConfig()) -> PostulateReport:
    """Sweep the update postulates over the configured grid."""
    if config.atoms > 3:
        raise SuiteTooLarge("postulate sweeps support at most 3 atoms")
    vocab = config.vocab
    if isinstance(op, str):
        op = make_operator(op, vocab)
    grid = belief_grid(vocab, config.grid_denominator)
    evidences = list(range(1, vocab.full_mask + 1))
    sweep = _Sweep(op, vocab)
    applicable = {pid: False for pid in UPDATE_IDS}

    for bi, b in enumerate(grid):
        is_point_mass = any(p == 1 for p in b.probs)
        for a in evidences:
            result = sweep.run(bi, b, a)
            base_witness = {
                "state": _state_dict(b),
                "evidence": _set_names(a, vocab),
            }
            if isinstance(result, DomainError):
                applicable["upd3"] = True
                sweep.note("upd3", base_witness | {"error": type(result).__name__})
                continue

            applicable["upd1"] = applicable["upd3"] = True
            if sweep.posterior_mass(result, a) != 1:
                sweep.note("upd1", base_witness | {
                    "evidence_mass": str(sweep.posterior_mass(result, a))})
            if sweep.total(result) != 1:
                sweep.note("upd3", base_witness | {
                    "total": str(sweep.total(result))})

            if mass(b, a) == 1:
                applicable["upd2a"] = True
                if result.posterior.probs != b.probs:
                    sweep.note("upd2a", base_witness | {
                        "updated": _state_dict(result.posterior)})

            for phi in evidences:
                if phi & ~a:
                    continue
                prior_positive = mass(b, phi) > 0
                posterior_positive = sweep.posterior_mass(result, phi) > 0
                applicable["upd2b"] = applicable["upd2c"] = True
                if prior_positive != posterior_positive:
                    sweep.note("upd2b", base_witness | {
                        "phi": _set_names(phi, vocab)})
                if prior_positive and not posterior_positive:
                    sweep.note("upd2c", base_witness | {
                        "phi": _set_names(phi, vocab)})

            applicable["upd4"] = True
            for variant in _syntactic_variants(a, vocab,
                                               config.variants_per_evidence):
                other = op.change(b, variant)
                if other.posterior.probs != result.posterior.probs:
                    sweep.note("upd4", base_witness | {
                        "variant": str(variant)})
                    break

            for phi in evidences:
                strengthened_mask = a & phi
                if strengthened_mask == 0:
                    continue
                strengthened = sweep.run(bi, b, strengthened_mask)
                if isinstance(strengthened, DomainError):
                    continue
                for psi in evidences:
                    if psi & ~phi:
                        continue
                    applicable["upd5"] = True
                    if sweep.posterior_mass(strengthened, psi) < \
                            sweep.posterior_mass(result, psi):
                        sweep.note("upd5", base_witness | {
                            "phi": _set_names(phi, vocab),
                            "psi": _set_names(psi, vocab)})
                        break

        for a1 in evidences:
            r1 = sweep.run(bi, b, a1)
            if isinstance(r1, DomainError):
                continue
            for a2 in evidences:
                r2 = sweep.run(bi, b, a2)
                if isinstance(r2, DomainError):
                    continue
                if sweep.posterior_mass(r1, a2) == 1 and \
                        sweep.posterior_mass(r2, a1) == 1:
                    applicable["upd6a"] = applicable["upd6b"] = True
                    pair_witness = {
                        "state": _state_dict(b),
                        "evidence1": _set_names(a1, vocab),
                        "evidence2": _set_names(a2, vocab),
                    }
                    if r1.posterior.probs != r2.posterior.probs:
                        sweep.note("upd6a", pair_witness)
                    support1 = tuple(p > 0 for p in r1.posterior.probs)
                    support2 = tuple(p > 0 for p in r2.posterior.probs)
                    if support1 != support2:
                        sweep.note("upd6b", pair_witness)

                if is_point_mass:
                    union = sweep.run(bi, b, a1 | a2)
                    if isinstance(union, DomainError):
                        continue
                    for phi in evidences:
                        applicable["upd7"] = True
                        lo = min(sweep.posterior_mass(r1, phi),
                                 sweep.posterior_mass(r2, phi))
                        hi = sweep.posterior_mass(r1, phi) + \
                            sweep.posterior_mass(r2, phi)
                        got = sweep.posterior_mass(union, phi)
                        if not lo <= got <= hi:
                            sweep.note("upd7", {
                                "state": _state_dict(b),
                                "evidence1": _set_names(a1, vocab),
                                "evidence2": _set_names(a2, vocab),
                                "phi": _set_names(phi, vocab)})
                            break

    entries = {}
    for pid in UPDATE_IDS:
        if pid in sweep.failures:
            entries[pid] = PostulateVerdict(pid, VIOLATED, sweep.failures[pid])
        elif applicable[pid]:
            entries[pid] = PostulateVerdict(pid, HOLDS)
        else:
            entries[pid] = PostulateVerdict(pid, NOT_APPLICABLE)
    suite = _suite_descriptor(op.name, config, "update",
                              len(grid), len(evidences))
    return PostulateReport(suite, entries)
