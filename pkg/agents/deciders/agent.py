from typing import Any, Dict, List, Optional

from agents.base_agent import BaseAgent
from models.grids import LocalGridFamily
from models.relational import EmpiricalModel

from .classify import Classification, classify
from .hardy import HardyVariant, hardy_axioms
from .lhv import DEFAULT_MAX_INSTRUCTIONS, LhvVerdict, decide_lhv, enumerate_instructions
from .nsp import NspVerdict, decide_nsp


class DecidersAgent(BaseAgent):
    """Agent for class membership: LHV, NS^p and the Hardy axioms."""

    operations = {
        "lhv": "decide_lhv",
        "nsp": "decide_nsp",
        "instructions": "enumerate_instructions",
        "hardy": "hardy_axioms",
        "classify": "classify",
    }

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("deciders", config)
        self.max_instructions = int(self.section("deciders").get("max_instructions", DEFAULT_MAX_INSTRUCTIONS))

    def decide_lhv(self, e: EmpiricalModel) -> LhvVerdict:
        verdict = decide_lhv(e)
        if verdict.non_total:
            self.log_activity("LHV decided against dom(e) for a non-total model", "debug")
        return verdict

    def decide_nsp(self, e: EmpiricalModel, witness_objective=None) -> NspVerdict:
        return decide_nsp(e, witness_objective)

    def enumerate_instructions(self, e: EmpiricalModel) -> List[LocalGridFamily]:
        instructions = enumerate_instructions(e, self.max_instructions)
        self.log_activity(f"Found {len(instructions)} admissible instructions")
        return instructions

    def hardy_axioms(self, e: EmpiricalModel) -> List[HardyVariant]:
        return hardy_axioms(e)

    def classify(self, e: EmpiricalModel) -> Classification:
        result = classify(e)
        self.log_activity(f"Classes: {result.classes()}")
        return result
