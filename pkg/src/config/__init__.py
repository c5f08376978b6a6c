from .problem_config import (
    ProblemConfig, StrataConfig, SystemConfig, ParametrizationConfig, ProblemConfigSchema,
    apply_overrides, parse_problem_config, load_problem_config,
)

__all__ = [
    "ProblemConfig", "StrataConfig", "SystemConfig", "ParametrizationConfig", "ProblemConfigSchema",
    "apply_overrides", "parse_problem_config", "load_problem_config",
]
