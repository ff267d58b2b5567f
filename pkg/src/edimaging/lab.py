"""Repeated-change convergence experiments with reproducible randomness.

Each trial draws a random belief state (uniform on the simplex via
exponential spacings, snapped to denominator 10**6 and re-normalized
exactly) and a random satisfiable, non-tautological evidence set, then
applies a relaxed change operator a fixed number of times. The tracked
quantity is the per-step mean absolute probability change across all
worlds, averaged over trials.

Determinism: every trial re-seeds its own generator from the run seed and
the trial index through a fixed 64-bit mixing function, so results do not
depend on execution order or worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Optional

from .belief import BeliefState
from .errors import InvalidParameter
from .imaging import edi
from .logic import Vocabulary, default_vocabulary
from .metric import hamming
from .weights import WeightFunction, dfr_weight, rcp_weight

ZERO = Fraction(0)
GRANULARITY = 10**6

WEIGHT_BUILDERS = {"rcp": rcp_weight, "dfr": dfr_weight}

_MASK64 = (1 << 64) - 1


def _mix64(value: int) -> int:
    """splitmix64 finalizer; the fixed per-trial seed splitting function."""
    z = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def trial_seed(seed: int, trial_index: int) -> int:
    return _mix64((seed & _MASK64) ^ trial_index)


@dataclass(frozen=True)
class TrialConfig:
    """One experiment configuration; equal configs give identical output."""

    weight: str = "rcp"
    eta: Fraction = Fraction(1)
    atoms: int = 3
    trials: int = 100
    iterations: int = 10
    seed: int = 42

    def __post_init__(self):
        object.__setattr__(self, "eta", Fraction(self.eta))
        if self.weight not in WEIGHT_BUILDERS:
            raise InvalidParameter(f"unknown weight {self.weight!r}")
        if self.eta <= 0:
            raise InvalidParameter("eta must be positive")
        if not 1 <= self.atoms <= 16:
            raise InvalidParameter("atoms must be between 1 and 16")
        if self.trials < 1:
            raise InvalidParameter("need at least one trial")
        if self.iterations < 2:
            raise InvalidParameter("need at least two iterations")

    def build_weight(self, vocab: Vocabulary) -> WeightFunction:
        return WEIGHT_BUILDERS[self.weight](hamming(vocab), self.eta)


@dataclass(frozen=True)
class ConvergenceTable:
    """Per-iteration mean absolute world-probability change."""

    config: TrialConfig
    mean_abs_diff: tuple[Fraction, ...]
    trial_rows: Optional[tuple[tuple[Fraction, ...], ...]] = None


def sample_belief_state(rng: Random, vocab: Vocabulary) -> BeliefState:
    """Uniform simplex draw snapped to an exact rational distribution."""
    count = vocab.world_count
    spacings = [rng.expovariate(1.0) for _ in range(count)]
    total = sum(spacings)
    shares = [s / total for s in spacings]
    units = [int(s * GRANULARITY) for s in shares]
    remainder = GRANULARITY - sum(units)
    # hand the leftover units to the largest fractional parts, ties by index
    by_fraction = sorted(
        range(count), key=lambda w: (-(shares[w] * GRANULARITY - units[w]), w)
    )
    for w in by_fraction[:remainder]:
        units[w] += 1
    return BeliefState(
        vocab, tuple(Fraction(u, GRANULARITY) for u in units)
    )


def sample_evidence(rng: Random, vocab: Vocabulary) -> int:
    """Uniform non-empty proper subset of the world universe."""
    return rng.randrange(1, vocab.full_mask)


def _run_trial(config: TrialConfig, trial_index: int) -> tuple[Fraction, ...]:
    vocab = default_vocabulary(config.atoms)
    weight = config.build_weight(vocab)
    rng = Random(trial_seed(config.seed, trial_index))
    state = sample_belief_state(rng, vocab)
    evidence = sample_evidence(rng, vocab)
    count = vocab.world_count
    diffs = []
    for _ in range(config.iterations):
        nxt = edi(state, evidence, weight).posterior
        step = sum(
            (abs(nxt.probs[w] - state.probs[w]) for w in range(count)), ZERO
        )
        diffs.append(step / count)
        state = nxt
    return tuple(diffs)


def run_convergence(config: TrialConfig, workers: int = 1,
                    keep_trials: bool = False) -> ConvergenceTable:
    """Run all trials and average the per-iteration differences."""
    indices = range(config.trials)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_trial, [config] * config.trials, indices))
    else:
        rows = [_run_trial(config, i) for i in indices]
    means = tuple(
        sum((row[i] for row in rows), ZERO) / config.trials
        for i in range(config.iterations)
    )
    return ConvergenceTable(
        config, means, tuple(rows) if keep_trials else None
    )


def decimal_str(value: Fraction, significant: int = 12) -> str:
    """Plain decimal rendering with the given number of significant digits."""
    with localcontext() as ctx:
        ctx.prec = significant
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return format(quotient, "f")


def csv_filename(config: TrialConfig) -> str:
    eta = config.eta
    return (
        f"{config.weight}_eta{eta.numerator}-{eta.denominator}"
        f"_seed{config.seed}.csv"
    )


def render_csv(table: ConvergenceTable) -> str:
    lines = ["iteration,mean_abs_diff"]
    for i, value in enumerate(table.mean_abs_diff, start=1):
        lines.append(f"{i},{decimal_str(value)}")
    return "\n".join(lines) + "\n"


def emit_csv(table: ConvergenceTable, path: str | Path) -> None:
    if not table.mean_abs_diff:
        raise InvalidParameter("nothing to emit: table has no rows")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_csv(table))


def emit_summary(table: ConvergenceTable) -> str:
    if not table.mean_abs_diff:
        raise InvalidParameter("nothing to summarize: table has no rows")
    first = table.mean_abs_diff[0]
    last = table.mean_abs_diff[-1]
    ratio = "inf" if first == 0 else decimal_str(last / first, 6)
    cfg = table.config
    return (
        f"weight={cfg.weight} eta={cfg.eta} atoms={cfg.atoms} "
        f"trials={cfg.trials} iterations={cfg.iterations} seed={cfg.seed}\n"
        f"first mean |diff| = {decimal_str(first)}\n"
        f"last  mean |diff| = {decimal_str(last)}\n"
        f"last/first       = {ratio}\n"
    )
