from .agent import PropertiesAgent
from .checks import (
    CheckResult,
    EmpiricalProperty,
    HiddenProperty,
    ProbProperty,
    Violation,
    check_empirical,
    check_hidden,
    check_prob,
    outcome_independence_forms,
)
