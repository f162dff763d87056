from typing import Any, Dict, Optional

from agents.base_agent import BaseAgent
from agents.deciders.lhv import decide_lhv
from models.probabilistic import ProbEmpiricalModel, ProbHVModel
from models.relational import HiddenVariableModel

from .operations import (
    MEASUREMENTS,
    Decomposition,
    MaxEntropyReport,
    build_qh,
    chsh_report,
    decompose,
    max_entropy_report,
    possibilistic_collapse,
    realizes,
)


class ProbabilisticAgent(BaseAgent):
    """Agent for the probabilistic models: collapse, q^h, entropy bounds and CHSH."""

    operations = {
        "collapse": "collapse",
        "decompose": "decompose",
        "build_qh": "build_qh",
        "realizes": "realizes",
        "chsh": "chsh",
        "max_entropy": "max_entropy",
        "lifted_no_go": "lifted_no_go",
    }

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("probabilistic", config)
        self.entropy_tolerance = float(self.section("probabilistic").get("entropy_tolerance", 1e-9))

    def collapse(self, p):
        return possibilistic_collapse(p)

    def decompose(self, p, axis: str = MEASUREMENTS) -> Decomposition:
        return decompose(p, axis)

    def build_qh(self, h: HiddenVariableModel) -> ProbHVModel:
        q = build_qh(h)
        self.log_activity(f"Built q^h over {len(q.weights)} triples", "debug")
        return q

    def realizes(self, pair) -> bool:
        q, p = pair
        return realizes(q, p)

    def chsh(self, p: ProbEmpiricalModel) -> Dict[str, Any]:
        return chsh_report(p)

    def max_entropy(self, pair) -> MaxEntropyReport:
        h, q = pair
        return max_entropy_report(h, q, self.entropy_tolerance)

    def lifted_no_go(self, p: ProbEmpiricalModel) -> Dict[str, Any]:
        """Whether p's collapse already rules out every PλI ∧ PL realization of p.

        Collapse carries PλI and PL to λI and L, and a realization of p
        collapses to a realization of collapse(p), so a collapse outside LHV
        leaves p without such a realization.
        """
        e = possibilistic_collapse(p)
        verdict = decide_lhv(e)
        result = {
            "collapse_lhv": verdict.member,
            "excluded": not verdict.member,
            "refuter": verdict.to_dict(e)["refuter"],
        }
        self.log_activity(
            "No PLI and PL realization exists" if result["excluded"] else "The collapse admits an LHV realization"
        )
        return result
