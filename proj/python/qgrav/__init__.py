from ._qgrav import (
    ConfigError,
    DerivedParams,
    DeviceInput,
    ParameterError,
    ScenarioError,
    TruncationError,
    crb_delta_g,
    derive,
    evaluate_config,
    linear_entropy,
    load_scenarios,
    oracle_qfi,
    qfi_closed_form,
    qfi_decohered,
    qfi_revival,
    run_cli,
    visibility,
)

__all__ = [
    "ConfigError",
    "DerivedParams",
    "DeviceInput",
    "ParameterError",
    "ScenarioError",
    "TruncationError",
    "crb_delta_g",
    "derive",
    "evaluate_config",
    "linear_entropy",
    "load_scenarios",
    "oracle_qfi",
    "qfi_closed_form",
    "qfi_decohered",
    "qfi_revival",
    "run_cli",
    "visibility",
]
