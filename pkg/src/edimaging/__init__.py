"""Probabilistic belief revision and update by distance-weighted imaging."""

from .belief import (
    BeliefState,
    bayesian_conditioning,
    belief_state_from_dict,
    belief_state_to_dict,
    expansion,
    load_belief_state,
    mass,
    save_belief_state,
    support,
)
from .classical import (
    ClassicalOperator,
    apply_to_state,
    dalal_revision,
    pma_update,
    table_operator,
)
from .errors import (
    ConditioningUndefined,
    DegenerateNormalization,
    DomainError,
    EmptyEvidence,
    FormulaSyntaxError,
    InvalidBeliefState,
    InvalidDistance,
    InvalidParameter,
    RejectedWeight,
    SuiteTooLarge,
    UnknownAtomError,
)
from .imaging import (
    ChangeResult,
    edi,
    generalized_imaging,
    iterate,
    lewis_imaging,
)
from .lab import (
    ConvergenceTable,
    TrialConfig,
    csv_filename,
    emit_csv,
    emit_summary,
    run_convergence,
    sample_belief_state,
    sample_evidence,
)
from .logic import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Bottom,
    Formula,
    Iff,
    Implies,
    Not,
    Or,
    Top,
    Vocabulary,
    default_vocabulary,
    entails,
    equivalent,
    evidence_mask,
    formula_of_world_set,
    models,
    parse_formula,
    render,
    world_formula,
    worlds_of,
)
from .metric import (
    PseudoDistance,
    UniqueClosestMap,
    d_max,
    distance_from_dict,
    hamming,
    li_closest,
    load_distance,
    min_worlds,
    validate_pseudo_distance,
)
from .operators import OPERATOR_NAMES, BeliefChangeOperator, make_operator
from .postulates import (
    PostulateReport,
    SuiteConfig,
    belief_grid,
    check_revision,
    check_update,
)
from .weights import (
    PropertyReport,
    WeightFunction,
    bc_weight,
    check_weight_properties,
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

__version__ = "0.1.0"
