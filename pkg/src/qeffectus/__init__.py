"""Weighted distributions over relational structures, in three instances
(bits, probabilities, projections), with graded composition, quantum graph
homomorphisms, nonlocal-game evaluation, and the categorical law checks
that tie them together."""

__version__ = "0.1.0"

from .linalg import (
    DEFAULT_TOL,
    CheckResult,
    Pvm,
    adjoint,
    as_matrix,
    commutes,
    identity,
    is_projection,
    kron,
    mat_close,
    matmul,
    max_norm,
    validate_pvm,
    zero_matrix,
)
from .semiring import (
    BOOLEAN,
    UNIT_INTERVAL,
    BooleanSemiring,
    ProjectionSemiring,
    Semiring,
    UnitIntervalSemiring,
    semiring_by_name,
)
from .rstruct import (
    Relation,
    RelationalStructure,
    StructureMap,
    bang,
    complete_graph,
    compose,
    coproduct,
    coproduct_components,
    cycle_graph,
    find_classical_hom,
    graph,
    identity_map,
    initial,
    is_graph,
    is_homomorphism,
    same_signature,
    signature,
    structure,
    sum_map,
    terminal,
)
from .kleisli import (
    Distribution,
    KleisliMap,
    UndefinedSumError,
    cotuple,
    dist_close,
    dist_residual,
    distribution,
    graded_compose,
    graded_mu,
    induced_function,
    is_qd_kleisli_hom,
    kleisli_close,
    kleisli_extend,
    kleisli_residual,
    lift,
    postcompose,
    pushforward,
    unit,
    unit_map,
)
from .games import (
    GameEvaluation,
    QuantumHomomorphism,
    Strategy,
    block_diagonal_qhom,
    evaluate_game,
    qhom_from_classical,
    strategy_from_functions,
    strategy_from_qhom,
    strategy_is_projective,
    verify_perfect_strategy,
    verify_quantum_homomorphism,
)
from .laws import (
    LawCheck,
    LawReport,
    LawSuiteConfig,
    MediatorHypothesisError,
    MediatorProblem,
    MonicityResult,
    check_joint_monicity,
    check_uniqueness,
    gamma_maps,
    mediator_requirements,
    mediator_square1,
    mediator_square2,
    perturb_kleisli,
    run_law_suite,
)
from .logic import (
    Conditioned,
    Predicate,
    Scalar,
    State,
    condition,
    deterministic_state,
    indicator_predicate,
    pred_transform,
    stat_transform,
    truth_predicate,
    validity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
