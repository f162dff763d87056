"""Executable witnesses for the strict chain LHV ⊂ QM ⊂ NS^p ⊂ NS ⊂ EM."""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional

from agents.probabilistic.operations import TSIRELSON_BOUND, chsh_sum, possibilistic_collapse
from agents.properties.checks import EmpiricalProperty, check_empirical
from agents.quantum.agent import QuantumAgent
from agents.quantum.systems import ghz_system
from models import catalog

from .lhv import decide_lhv
from .nsp import decide_nsp

logger = logging.getLogger(__name__)


@dataclass
class Separation:
    name: str
    inclusion: str
    claim: str
    expected: Dict[str, Any]
    observed: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.observed == self.expected

    def diff(self) -> Dict[str, Any]:
        return {
            key: {"expected": value, "observed": self.observed.get(key)}
            for key, value in self.expected.items()
            if self.observed.get(key) != value
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "inclusion": self.inclusion,
            "claim": self.claim,
            "expected": self.expected,
            "observed": self.observed,
            "ok": self.ok,
        }


def _default_witnesses() -> Dict[str, Any]:
    return {
        "epr": catalog.epr_model(),
        "ghz": catalog.ghz_model(),
        "pr": catalog.pr_box_relational(),
        "pr-prob": catalog.pr_box_probabilistic(),
        "ns4x4": catalog.ns_counterexample_4x4(),
        "ks": catalog.ks_model(),
    }


def run_hierarchy_demo(
    witnesses: Optional[Mapping[str, Any]] = None, config: Optional[Dict[str, Any]] = None
) -> List[Separation]:
    """Check each witness against the class boundary it separates; ``witnesses`` overrides catalog entries."""
    models = {**_default_witnesses(), **(witnesses or {})}
    separations = []

    epr = Separation("epr", "LHV", "the EPR model has a local hidden-variable realization", {"lhv": True})
    epr.observed = {"lhv": decide_lhv(models["epr"]).member}
    separations.append(epr)

    ghz = Separation(
        "ghz",
        "LHV ⊂ QM",
        "the GHZ state collapses to a GHZ model, which has no local hidden-variable realization",
        {"quantum_collapse": True, "lhv": False},
    )
    measurements = [*catalog.GHZ_P, ("1", "1", "1")]
    collapse = QuantumAgent(config).collapse_quantum(ghz_system(), measurements)
    ghz.observed = {"quantum_collapse": collapse == models["ghz"], "lhv": decide_lhv(models["ghz"]).member}
    separations.append(ghz)

    pr = Separation(
        "pr",
        "QM ⊂ NS^p",
        "the PR box is in NS^p and its CHSH sum exceeds the Tsirelson bound, so no quantum system yields it",
        {"nsp": True, "collapse_matches": True, "exceeds_tsirelson": True},
    )
    value = chsh_sum(models["pr-prob"])
    pr.observed = {
        "nsp": decide_nsp(models["pr"]).member,
        "collapse_matches": possibilistic_collapse(models["pr-prob"]) == models["pr"],
        "exceeds_tsirelson": float(abs(value)) > TSIRELSON_BOUND,
    }
    separations.append(pr)

    ns4x4 = Separation(
        "ns4x4",
        "NS^p ⊂ NS",
        "the 4x4 table satisfies NS but is not the collapse of any PNS model",
        {"ns": True, "nsp": False},
    )
    ns4x4.observed = {
        "ns": check_empirical(models["ns4x4"], EmpiricalProperty.NS).holds,
        "nsp": decide_nsp(models["ns4x4"]).member,
    }
    separations.append(ns4x4)

    ks = Separation("ks", "NS ⊂ EM", "every Kochen-Specker model violates NS", {"ns": False})
    ks.observed = {"ns": check_empirical(models["ks"], EmpiricalProperty.NS).holds}
    separations.append(ks)

    for separation in separations:
        if not separation.ok:
            logger.warning("Separation %s does not hold: %s", separation.name, separation.diff())
    return separations
