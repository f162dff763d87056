from typing import Any, Dict, Optional

from agents.base_agent import BaseAgent
from agents.properties.checks import HiddenProperty, check_hidden
from models.errors import InternalConsistencyError, ModelTypeError
from models.relational import EmpiricalModel, HiddenVariableModel, induced_model

from .realizations import (
    DEFAULT_MAX_LAMBDA,
    equivalent,
    realize_sd,
    realize_sv,
    realize_wd_li,
    transform_li_loc_to_sd,
)

# Properties each construction guarantees
ADVERTISED = {
    "sv": (HiddenProperty.SV,),
    "sd": (HiddenProperty.SD,),
    "wdli": (HiddenProperty.WD, HiddenProperty.LI),
    "upgrade": (HiddenProperty.LI, HiddenProperty.SD),
}


class ConstructionsAgent(BaseAgent):
    """Agent for building hidden-variable realizations of empirical models."""

    operations = {"realize": "realize", "equivalent": "equivalent"}

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("constructions", config)
        self.max_lambda = int(self.section("constructions").get("max_lambda", DEFAULT_MAX_LAMBDA))

    def realize(self, model: Any, method: str = "sd") -> Dict[str, Any]:
        """Run one construction and report the properties its output passes."""
        method = method.lower()
        if method not in ADVERTISED:
            raise ModelTypeError(f"unknown construction method {method!r}")

        if method == "upgrade":
            if not isinstance(model, HiddenVariableModel):
                raise ModelTypeError("the upgrade construction takes a hidden-variable model")
            target = induced_model(model)
            h = transform_li_loc_to_sd(model, self.max_lambda)
        else:
            if not isinstance(model, EmpiricalModel):
                raise ModelTypeError(f"the {method} construction takes an empirical model")
            target = model
            h = {"sv": realize_sv, "sd": realize_sd, "wdli": lambda e: realize_wd_li(e, self.max_lambda)}[method](model)

        if induced_model(h) != target:
            raise InternalConsistencyError(f"the {method} construction does not realize its input")
        passed = {prop.value: check_hidden(h, prop).holds for prop in ADVERTISED[method]}
        if not all(passed.values()):
            raise InternalConsistencyError(f"the {method} construction lost one of {sorted(passed)}")

        self.log_activity(f"Built {method} realization with {len(h.lambdas)} lambda values")
        return {"model": h, "method": method, "properties": passed}

    def equivalent(self, pair) -> bool:
        h1, h2 = pair
        return equivalent(h1, h2)
