from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ModelTypeError
from .relational import EmpiricalModel
from .system_type import IndexTuple, SystemType

SiteFunction = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True, order=True)
class LocalGridFamily:
    """Per-site partial functions f_i : D_i → O_i, as sorted (measurement, outcome) index pairs.

    A family is a Mermin-style instruction when every f_i is total on the
    measurements it is asked about. Ordering is lexicographic on the
    per-site graphs, which is the enumeration order of the deciders.
    """

    sites: Tuple[SiteFunction, ...]

    @classmethod
    def from_maps(cls, maps: Sequence[Mapping[int, int]]) -> "LocalGridFamily":
        return cls(tuple(tuple(sorted(f.items())) for f in maps))

    @classmethod
    def from_labels(cls, system_type: SystemType, maps: Sequence[Mapping[str, str]]) -> "LocalGridFamily":
        if len(maps) != system_type.arity:
            raise ModelTypeError(f"expected {system_type.arity} site functions, got {len(maps)}")
        return cls.from_maps(
            [
                {system_type.measurement_index(i, m): system_type.outcome_index(i, o) for m, o in f.items()}
                for i, f in enumerate(maps)
            ]
        )

    def site_map(self, site: int) -> Dict[int, int]:
        return dict(self.sites[site])

    def outcome(self, m: IndexTuple) -> Optional[IndexTuple]:
        """(f_1(m̄_1), …, f_n(m̄_n)), or None when some f_i is undefined at m̄_i."""
        result = []
        for site, k in zip(self.sites, m):
            value = dict(site).get(k)
            if value is None:
                return None
            result.append(value)
        return tuple(result)

    def graph(self, measurements: Iterable[IndexTuple]) -> List[Tuple[IndexTuple, IndexTuple]]:
        cells = []
        for m in measurements:
            o = self.outcome(m)
            if o is not None:
                cells.append((tuple(m), o))
        return sorted(cells)

    def admissible_for(self, e: EmpiricalModel) -> bool:
        """Total on dom(e) and its graph there lies inside e."""
        return all(
            (o := self.outcome(m)) is not None and o in e.outcomes_at(m) for m in e.domain()
        )

    def to_labels(self, system_type: SystemType) -> List[Dict[str, str]]:
        return [
            {system_type.measurements[i][m]: system_type.outcomes[i][o] for m, o in site}
            for i, site in enumerate(self.sites)
        ]


@dataclass(frozen=True, order=True)
class ChoiceFunction:
    """A total Φ : dom(e) → O with Φ(m̄) ∈ e(m̄)."""

    graph: Tuple[Tuple[IndexTuple, IndexTuple], ...]

    @classmethod
    def checked(cls, e: EmpiricalModel, assignment: Mapping[IndexTuple, IndexTuple]) -> "ChoiceFunction":
        domain = e.domain()
        if sorted(assignment) != domain:
            raise ModelTypeError("a choice function must be defined on exactly dom(e)")
        for m, o in assignment.items():
            if o not in e.outcomes_at(m):
                raise ModelTypeError(f"choice {o} at {m} is not a possible outcome")
        return cls(tuple(sorted(assignment.items())))

    def __call__(self, m: IndexTuple) -> IndexTuple:
        return dict(self.graph)[tuple(m)]
