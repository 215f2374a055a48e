"""MTTDL estimation toolkit for k-of-n repairable storage systems."""

from .errors import (
    InvalidArgumentError,
    InvalidConfigError,
    ModelOverflowError,
    MttdlError,
    NumericInstabilityError,
)
from .harness import (
    ComparisonRow,
    ReferenceTable,
    SweepResult,
    SweepSpec,
    TableResult,
    compare_models,
    reproduce_reference_tables,
    run_sweep,
)
from .models import (
    MAX_DEVICES,
    MODEL_NAMES,
    Prediction,
    StateVector,
    SystemConfig,
    angus_mttdl,
    angus_simplified_mttdl,
    chen_mttdl,
    correlated_chen_mttdl,
    markov_mttdl_closed_form,
    markov_mttdl_linear_system,
    predict,
    rebuild_time_floor,
    reliability_at,
    ure_survival_probability,
)
from .sim import (
    RNG_NAME,
    SimulationResult,
    SimulationSpec,
    TrialOutcome,
    count_failures,
    random_ttf,
    run_simulation,
    run_trials,
    simulate_time_to_data_loss,
    substream,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DEVICES",
    "MODEL_NAMES",
    "RNG_NAME",
    "ComparisonRow",
    "InvalidArgumentError",
    "InvalidConfigError",
    "ModelOverflowError",
    "MttdlError",
    "NumericInstabilityError",
    "Prediction",
    "ReferenceTable",
    "SimulationResult",
    "SimulationSpec",
    "StateVector",
    "SweepResult",
    "SweepSpec",
    "SystemConfig",
    "TableResult",
    "TrialOutcome",
    "angus_mttdl",
    "angus_simplified_mttdl",
    "chen_mttdl",
    "compare_models",
    "correlated_chen_mttdl",
    "count_failures",
    "markov_mttdl_closed_form",
    "markov_mttdl_linear_system",
    "predict",
    "random_ttf",
    "rebuild_time_floor",
    "reliability_at",
    "reproduce_reference_tables",
    "run_simulation",
    "run_sweep",
    "run_trials",
    "simulate_time_to_data_loss",
    "substream",
    "ure_survival_probability",
    "__version__",
]
