from _coxmy import (
    BatchService,
    BlockingPolicy,
    CoxianArrival,
    Dm1Distribution,
    FiniteSolution,
    MetricsRow,
    NoConvergence,
    NotErgodic,
    OracleReport,
    QueueModel,
    RootMethod,
    SchemaError,
    SpectralSolution,
    StationaryDistribution,
    calibrate,
    compare_with_oracle,
    dm1_distribution,
    fixpoint_F,
    gamma_star,
    is_ergodic,
    mean_interarrival,
    metrics,
    model_from_json,
    model_to_json,
    oracle_stationary,
    solve_finite,
    solve_gamma,
)

__all__ = [
    "BatchService",
    "BlockingPolicy",
    "CoxianArrival",
    "Dm1Distribution",
    "FiniteSolution",
    "MetricsRow",
    "NoConvergence",
    "NotErgodic",
    "OracleReport",
    "QueueModel",
    "RootMethod",
    "SchemaError",
    "SpectralSolution",
    "StationaryDistribution",
    "calibrate",
    "compare_with_oracle",
    "dm1_distribution",
    "fixpoint_F",
    "gamma_star",
    "is_ergodic",
    "mean_interarrival",
    "metrics",
    "model_from_json",
    "model_to_json",
    "oracle_stationary",
    "solve_finite",
    "solve_gamma",
]
