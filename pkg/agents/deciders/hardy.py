from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Tuple

from models.errors import ModelTypeError
from models.relational import Cell, EmpiricalModel

# a → b ∨ c ∨ d over (first measurement, second measurement, outcome pair)
_PATTERN = {
    "a": ((0, 0), (0, 0)),
    "b": ((0, 1), (0, 0)),
    "c": ((1, 0), (0, 0)),
    "d": ((1, 1), (1, 1)),
}


@dataclass(frozen=True)
class HardyVariant:
    swap_x: bool
    swap_y: bool
    swap_outcomes: bool

    @property
    def is_base(self) -> bool:
        return not (self.swap_x or self.swap_y or self.swap_outcomes)

    def cell(self, name: str) -> Cell:
        (mx, my), (ox, oy) = _PATTERN[name]
        flip = int(self.swap_outcomes)
        return (mx ^ int(self.swap_x), my ^ int(self.swap_y)), (ox ^ flip, oy ^ flip)

    def violated_by(self, e: EmpiricalModel) -> bool:
        return self.cell("a") in e and not any(self.cell(name) in e for name in "bcd")

    def to_dict(self, e: EmpiricalModel) -> Dict[str, Any]:
        st = e.system_type
        cells = {}
        for name in "abcd":
            m, o = self.cell(name)
            cells[name] = {"m": list(st.decode_measurement(m)), "o": list(st.decode_outcome(o))}
        return {
            "swap_x": self.swap_x,
            "swap_y": self.swap_y,
            "swap_outcomes": self.swap_outcomes,
            "cells": cells,
        }


VARIANTS: Tuple[HardyVariant, ...] = tuple(HardyVariant(*flags) for flags in product((False, True), repeat=3))


def has_hardy_shape(e: EmpiricalModel) -> bool:
    st = e.system_type
    return st.arity == 2 and all(len(ms) == 2 for ms in st.measurements) and all(len(os) == 2 for os in st.outcomes)


def hardy_axioms(e: EmpiricalModel) -> List[HardyVariant]:
    """The symmetry images of the Hardy constraint that e violates, base variant first."""
    if not has_hardy_shape(e):
        raise ModelTypeError("the Hardy axioms need two sites with two measurements and two outcomes each")
    return [variant for variant in VARIANTS if variant.violated_by(e)]
