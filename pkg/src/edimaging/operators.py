"""Named belief-change operators assembled from the engine and weight zoo.

One registry serves the CLI, the postulate checkers, and the tests, so an
operator name means the same thing everywhere: ``bc``, ``li``, ``gi``,
``edi-rcp``, ``edi-dfr``, ``cls-rev``, ``dct-rev``, ``cls-upd``,
``dct-upd``. Composite operators take an inner weight (``rcp`` or ``dfr``)
plus its ``eta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .belief import BeliefState, bayesian_conditioning, mass
from .classical import dalal_revision, pma_update
from .errors import InvalidParameter
from .imaging import ChangeResult, edi, generalized_imaging, lewis_imaging
from .logic import Evidence, Vocabulary, evidence_mask
from .metric import PseudoDistance, UniqueClosestMap, hamming
from .weights import (
    bc_weight,
    cls_rev_weight,
    cls_upd_weight,
    dct_rev_weight,
    dct_upd_weight,
    dfr_weight,
    gi_weight,
    li_weight,
    rcp_weight,
    zero_weight,
)

OPERATOR_NAMES = (
    "bc", "li", "gi",
    "edi-rcp", "edi-dfr",
    "cls-rev", "dct-rev", "cls-upd", "dct-upd",
)

INNER_NAMES = ("rcp", "dfr")


@dataclass(frozen=True)
class BeliefChangeOperator:
    """A named end-to-end change operation on belief states."""

    name: str
    change: Callable[[BeliefState, Evidence], ChangeResult]
    retentive: bool


def _bc_change(b: BeliefState, evidence: Evidence) -> ChangeResult:
    mask = evidence_mask(evidence, b.vocab)
    posterior = bayesian_conditioning(b, mask)
    return ChangeResult(posterior, mass(b, mask), "bc", mask)


def make_operator(
    name: str,
    vocab: Vocabulary,
    distance: Optional[PseudoDistance] = None,
    inner: str = "rcp",
    eta=Fraction(1),
) -> BeliefChangeOperator:
    d = distance or hamming(vocab)
    if inner not in INNER_NAMES:
        raise InvalidParameter(f"unknown inner weight {inner!r}")
    make_inner = rcp_weight if inner == "rcp" else dfr_weight

    if name == "bc":
        return BeliefChangeOperator("bc", _bc_change, retentive=True)
    if name == "li":
        closest = UniqueClosestMap(d)
        return BeliefChangeOperator(
            "li", lambda b, a: lewis_imaging(b, a, closest), retentive=True
        )
    if name == "gi":
        return BeliefChangeOperator(
            "gi", lambda b, a: generalized_imaging(b, a, d),
            retentive=d.faithful,
        )
    if name == "edi-rcp":
        weight = rcp_weight(d, eta)
    elif name == "edi-dfr":
        weight = dfr_weight(d, eta)
    elif name == "cls-rev":
        weight = cls_rev_weight(dalal_revision(d), zero_weight(make_inner(d, eta)))
    elif name == "dct-rev":
        weight = dct_rev_weight(make_inner(d, eta))
    elif name == "cls-upd":
        weight = cls_upd_weight(pma_update(d), make_inner(d, eta))
    elif name == "dct-upd":
        weight = dct_upd_weight(make_inner(d, eta))
    else:
        raise InvalidParameter(f"unknown operator {name!r}")

    retentive = name in ("cls-rev", "dct-rev")
    return BeliefChangeOperator(
        name, lambda b, a, w=weight: edi(b, a, w), retentive=retentive
    )
