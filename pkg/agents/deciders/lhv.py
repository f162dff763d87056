"""Local hidden-variable membership by covering the support with instructions.

An instruction is a grid family f = (f_1, …, f_n) with each f_i total on
proj_i(dom(e)). It is admissible for e when f(m̄) ∈ e(m̄) for every m̄ in
dom(e). e has a λI ∧ L realization exactly when every support cell is the
value of some admissible instruction.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Tuple

from models.errors import PreconditionError, SizeLimitError
from models.grids import LocalGridFamily
from models.relational import Cell, EmpiricalModel

logger = logging.getLogger(__name__)

DEFAULT_MAX_INSTRUCTIONS = 2**20


@dataclass
class LhvVerdict:
    member: bool
    witness: List[LocalGridFamily] = field(default_factory=list)
    refuter: Optional[Cell] = None
    # dom(e) is not all of M, so grids are only total on the projections of dom(e)
    non_total: bool = False

    def to_dict(self, e: EmpiricalModel) -> Dict[str, Any]:
        st = e.system_type
        return {
            "member": self.member,
            "witness": [grid.to_labels(st) for grid in self.witness],
            "refuter": (
                {"m": list(st.decode_measurement(self.refuter[0])), "o": list(st.decode_outcome(self.refuter[1]))}
                if self.refuter
                else None
            ),
            "non_total": self.non_total,
        }


class _GridSearch:
    """Backtracking over per-site values with forward pruning on dom(e) rows."""

    def __init__(self, e: EmpiricalModel):
        st = e.system_type
        self.e = e
        self.domain = e.domain()
        self.variables: List[Tuple[int, int]] = [
            (site, m) for site in range(st.arity) for m in e.projection(site)
        ]
        position = {var: k for k, var in enumerate(self.variables)}
        self.domains = [range(len(st.outcomes[site])) for site, _ in self.variables]
        self.row_vars = {m: tuple(position[(site, mk)] for site, mk in enumerate(m)) for m in self.domain}
        self.row_outcomes = {m: sorted(e.outcomes_at(m)) for m in self.domain}
        self.rows_of: List[List] = [[] for _ in self.variables]
        for m, positions in self.row_vars.items():
            for k in set(positions):
                self.rows_of[k].append(m)
        self.nodes = 0

    def _compatible(self, values: List[Optional[int]], m) -> bool:
        positions = self.row_vars[m]
        return any(
            all(values[k] is None or values[k] == o[site] for site, k in enumerate(positions))
            for o in self.row_outcomes[m]
        )

    def _grid(self, values: List[int]) -> LocalGridFamily:
        maps: List[Dict[int, int]] = [{} for _ in range(self.e.system_type.arity)]
        for (site, m), value in zip(self.variables, values):
            maps[site][m] = value
        return LocalGridFamily.from_maps(maps)

    def solutions(self, cell: Optional[Cell] = None) -> Iterator[LocalGridFamily]:
        """Admissible instructions in lexicographic order, optionally through ``cell``."""
        values: List[Optional[int]] = [None] * len(self.variables)
        fixed: Dict[int, int] = {}
        if cell is not None:
            m, o = cell
            for site, k in enumerate(self.row_vars[m]):
                fixed[k] = o[site]
            for k, value in fixed.items():
                values[k] = value
            if not all(self._compatible(values, row) for k in fixed for row in self.rows_of[k]):
                return
        yield from self._extend(values, 0, fixed)

    def _extend(self, values, k, fixed) -> Iterator[LocalGridFamily]:
        if k == len(values):
            yield self._grid(values)
            return
        if k in fixed:
            yield from self._extend(values, k + 1, fixed)
            return
        for value in self.domains[k]:
            self.nodes += 1
            values[k] = value
            if all(self._compatible(values, row) for row in self.rows_of[k]):
                yield from self._extend(values, k + 1, fixed)
        values[k] = None


def decide_lhv(e: EmpiricalModel) -> LhvVerdict:
    non_total = not e.is_total()
    if not e.support:
        return LhvVerdict(True, non_total=non_total)

    search = _GridSearch(e)
    witness: List[LocalGridFamily] = []
    covered = set()
    for cell in e.cells():
        if cell in covered:
            continue
        grid = next(search.solutions(cell), None)
        if grid is None:
            logger.debug("No admissible instruction through %s after %d nodes", cell, search.nodes)
            return LhvVerdict(False, refuter=cell, non_total=non_total)
        witness.append(grid)
        covered.update(grid.graph(search.domain))

    logger.debug("Covered %d cells with %d instructions", len(covered), len(witness))
    return LhvVerdict(True, witness=witness, non_total=non_total)


def enumerate_instructions(e: EmpiricalModel, max_instructions: int = DEFAULT_MAX_INSTRUCTIONS) -> List[LocalGridFamily]:
    if not e.support:
        raise PreconditionError("instructions are only enumerated for a nonempty domain")
    found = []
    for grid in _GridSearch(e).solutions():
        found.append(grid)
        if len(found) > max_instructions:
            raise SizeLimitError("the instruction count", len(found), max_instructions)
    return found


def covered_by_instructions(e: EmpiricalModel, instructions: List[LocalGridFamily]) -> bool:
    """Whether the union of the instructions' graphs on dom(e) is exactly e."""
    union = set()
    for grid in instructions:
        union.update(grid.graph(e.domain()))
    return union == set(e.support)
