import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from agents.properties.checks import EmpiricalProperty, check_empirical
from models.errors import InternalConsistencyError
from models.relational import EmpiricalModel

from .hardy import HardyVariant, hardy_axioms, has_hardy_shape
from .lhv import LhvVerdict, decide_lhv
from .nsp import NspVerdict, decide_nsp

logger = logging.getLogger(__name__)

QM_STATUS = "not decided"


@dataclass
class Classification:
    total: bool
    ns: bool
    nsp: NspVerdict
    lhv: LhvVerdict
    hardy_violations: Optional[List[HardyVariant]] = field(default=None)

    def classes(self) -> Dict[str, Any]:
        return {"TOTAL": self.total, "NS": self.ns, "NS^p": self.nsp.member, "QM": QM_STATUS, "LHV": self.lhv.member}

    def to_dict(self, e: EmpiricalModel) -> Dict[str, Any]:
        return {
            "classes": self.classes(),
            "non_total": self.lhv.non_total,
            "lhv": self.lhv.to_dict(e),
            "nsp": self.nsp.to_dict(e),
            "hardy_violations": (
                None if self.hardy_violations is None else [v.to_dict(e) for v in self.hardy_violations]
            ),
        }


def classify(e: EmpiricalModel) -> Classification:
    """Place e in LHV ⊂ NS^p ⊂ NS ⊂ EM; quantum membership is not decided."""
    ns = bool(check_empirical(e, EmpiricalProperty.NS))
    nsp = decide_nsp(e)
    lhv = decide_lhv(e)
    if lhv.member and not nsp.member:
        raise InternalConsistencyError("internal inconsistency: LHV member outside NS^p")
    if nsp.member and not ns:
        raise InternalConsistencyError("internal inconsistency: NS^p member violates NS")

    hardy = hardy_axioms(e) if has_hardy_shape(e) else None
    logger.debug("Classified model: NS=%s NS^p=%s LHV=%s", ns, nsp.member, lhv.member)
    return Classification(e.is_total(), ns, nsp, lhv, hardy)
