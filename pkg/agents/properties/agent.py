from typing import Any, Dict, List, Optional, Sequence, Tuple, Type

from agents.base_agent import BaseAgent
from models.errors import ModelTypeError
from models.probabilistic import ProbEmpiricalModel, ProbHVModel
from models.relational import EmpiricalModel, HiddenVariableModel

from .checks import (
    CheckResult,
    EmpiricalProperty,
    HiddenProperty,
    ProbProperty,
    check_empirical,
    check_hidden,
    check_prob,
    outcome_independence_forms,
)


def property_family(model: Any) -> Type:
    if isinstance(model, EmpiricalModel):
        return EmpiricalProperty
    if isinstance(model, HiddenVariableModel):
        return HiddenProperty
    if isinstance(model, (ProbEmpiricalModel, ProbHVModel)):
        return ProbProperty
    raise ModelTypeError(f"no properties are defined for {type(model).__name__}")


class PropertiesAgent(BaseAgent):
    """Agent for deciding model properties by direct evaluation."""

    operations = {
        "check": "check",
        "check_all": "check_all",
        "oi_forms": "oi_forms",
    }

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("properties", config)

    def check(self, model: Any, prop: str) -> CheckResult:
        family = property_family(model)
        try:
            prop = family(prop.upper() if isinstance(prop, str) else prop)
        except ValueError:
            names = ", ".join(p.value for p in family)
            raise ModelTypeError(f"unknown property {prop!r} for this model kind (expected one of {names})") from None

        if family is EmpiricalProperty:
            result = check_empirical(model, prop)
        elif family is HiddenProperty:
            result = check_hidden(model, prop)
        else:
            result = check_prob(model, prop)
        self.log_activity(f"{prop.value}: {'holds' if result else 'fails'}", "debug")
        return result

    def check_all(self, model: Any, properties: Optional[Sequence[str]] = None) -> List[Tuple[str, CheckResult]]:
        """Check ``properties`` (default: every property of the model's kind) in order."""
        family = property_family(model)
        names = list(properties) if properties else [p.value for p in family]
        return [(name.upper(), self.check(model, name)) for name in names]

    def oi_forms(self, h: HiddenVariableModel) -> Dict[str, bool]:
        return outcome_independence_forms(h)
