from .errors import NonlocError
from .probabilistic import ProbEmpiricalModel, ProbHVModel
from .relational import EmpiricalModel, HiddenVariableModel, PartialTuple, defined, equivariant, induced_model, restrict
from .system_type import SystemType, act, compose

__all__ = [
    "NonlocError",
    "SystemType",
    "act",
    "compose",
    "EmpiricalModel",
    "HiddenVariableModel",
    "PartialTuple",
    "defined",
    "equivariant",
    "induced_model",
    "restrict",
    "ProbEmpiricalModel",
    "ProbHVModel",
]
