from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import ModelTypeError
from .system_type import IndexTuple, Labels, SystemType, act

Cell = Tuple[IndexTuple, IndexTuple]
Triple = Tuple[IndexTuple, IndexTuple, int]


class EmpiricalModel:
    """A relation e ⊆ M × O over a system type.

    The support is kept as a frozenset of (measurement indices, outcome
    indices) pairs; rows e(m̄) are derived once at construction.
    """

    def __init__(self, system_type: SystemType, support: Iterable[Cell] = ()):
        self.system_type = system_type
        cells = set()
        for m, o in support:
            m, o = tuple(m), tuple(o)
            system_type.check_measurement(m)
            system_type.check_outcome(o)
            cells.add((m, o))
        self.support: FrozenSet[Cell] = frozenset(cells)

        rows: Dict[IndexTuple, set] = defaultdict(set)
        for m, o in self.support:
            rows[m].add(o)
        self._rows = {m: frozenset(os) for m, os in rows.items()}

    @classmethod
    def from_labels(cls, system_type: SystemType, cells: Iterable[Tuple[Sequence[str], Sequence[str]]]):
        return cls(
            system_type,
            ((system_type.encode_measurement(m), system_type.encode_outcome(o)) for m, o in cells),
        )

    @classmethod
    def full(cls, system_type: SystemType) -> "EmpiricalModel":
        """The full relation M × O."""
        outcomes = list(system_type.joint_outcomes())
        return cls(system_type, ((m, o) for m in system_type.joint_measurements() for o in outcomes))

    def __eq__(self, other):
        if not isinstance(other, EmpiricalModel):
            return NotImplemented
        return self.system_type == other.system_type and self.support == other.support

    def __hash__(self):
        return hash((self.system_type, self.support))

    def __len__(self):
        return len(self.support)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells())

    def __contains__(self, cell) -> bool:
        return cell in self.support

    def __repr__(self):
        return f"EmpiricalModel(arity={self.system_type.arity}, support={len(self.support)})"

    def cells(self) -> List[Cell]:
        return sorted(self.support)

    @property
    def rows(self) -> Mapping[IndexTuple, FrozenSet[IndexTuple]]:
        return self._rows

    def outcomes_at(self, m: IndexTuple) -> FrozenSet[IndexTuple]:
        return self._rows.get(tuple(m), frozenset())

    def domain(self) -> List[IndexTuple]:
        """dom(e): joint measurements with at least one possible outcome."""
        return sorted(self._rows)

    def projection(self, site: int) -> List[int]:
        """Measurements of ``site`` occurring in dom(e)."""
        return sorted({m[site] for m in self._rows})

    def is_total(self) -> bool:
        return len(self._rows) == self.system_type.measurement_count()

    def restrict(self, measurements: Iterable[IndexTuple]) -> "EmpiricalModel":
        keep = set()
        for m in measurements:
            m = tuple(m)
            self.system_type.check_measurement(m)
            keep.add(m)
        return EmpiricalModel(self.system_type, ((m, o) for m, o in self.support if m in keep))

    def labelled_cells(self) -> List[Tuple[Labels, Labels]]:
        st = self.system_type
        return [(st.decode_measurement(m), st.decode_outcome(o)) for m, o in self.cells()]


class HiddenVariableModel:
    """A relation h ⊆ M × O × Λ; λ values are stored by their index in ``lambdas``."""

    def __init__(self, system_type: SystemType, lambdas: Sequence[str], support: Iterable[Triple] = ()):
        lambdas = tuple(str(label) for label in lambdas)
        if not lambdas:
            raise ModelTypeError("a hidden-variable model needs at least one lambda value")
        if len(set(lambdas)) != len(lambdas):
            raise ModelTypeError(f"lambda labels are not unique: {list(lambdas)}")
        self.system_type = system_type
        self.lambdas = lambdas

        triples = set()
        for m, o, lam in support:
            m, o = tuple(m), tuple(o)
            system_type.check_measurement(m)
            system_type.check_outcome(o)
            if not isinstance(lam, int) or not 0 <= lam < len(lambdas):
                raise ModelTypeError(f"lambda index {lam!r} is out of range")
            triples.add((m, o, lam))
        self.support: FrozenSet[Triple] = frozenset(triples)

        rows: Dict[Tuple[IndexTuple, int], set] = defaultdict(set)
        for m, o, lam in self.support:
            rows[(m, lam)].add(o)
        self._rows = {key: frozenset(os) for key, os in rows.items()}

    @classmethod
    def from_labels(
        cls,
        system_type: SystemType,
        lambdas: Sequence[str],
        triples: Iterable[Tuple[Sequence[str], Sequence[str], str]],
    ) -> "HiddenVariableModel":
        index = {label: k for k, label in enumerate(lambdas)}
        encoded = []
        for m, o, lam in triples:
            if lam not in index:
                raise ModelTypeError(f"lambda {lam!r} is not declared")
            encoded.append((system_type.encode_measurement(m), system_type.encode_outcome(o), index[lam]))
        return cls(system_type, lambdas, encoded)

    def __eq__(self, other):
        if not isinstance(other, HiddenVariableModel):
            return NotImplemented
        return (
            self.system_type == other.system_type
            and self.lambdas == other.lambdas
            and self.support == other.support
        )

    def __hash__(self):
        return hash((self.system_type, self.lambdas, self.support))

    def __len__(self):
        return len(self.support)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.cells())

    def __repr__(self):
        return (
            f"HiddenVariableModel(arity={self.system_type.arity}, "
            f"lambdas={len(self.lambdas)}, support={len(self.support)})"
        )

    def cells(self) -> List[Triple]:
        return sorted(self.support)

    @property
    def rows(self) -> Mapping[Tuple[IndexTuple, int], FrozenSet[IndexTuple]]:
        """h(m̄, λ) as a map from (m̄, λ) to the set of possible ō."""
        return self._rows

    def outcomes_at(self, m: IndexTuple, lam: int) -> FrozenSet[IndexTuple]:
        return self._rows.get((tuple(m), lam), frozenset())

    def domain(self) -> List[IndexTuple]:
        return sorted({m for m, _ in self._rows})

    def lambda_support(self) -> List[int]:
        """Λ⁺: the λ values occurring in some triple."""
        return sorted({lam for _, lam in self._rows})

    def fiber(self, lam: int) -> Dict[IndexTuple, FrozenSet[IndexTuple]]:
        return {m: os for (m, l), os in self._rows.items() if l == lam}

    def labelled_cells(self) -> List[Tuple[Labels, Labels, str]]:
        st = self.system_type
        return [
            (st.decode_measurement(m), st.decode_outcome(o), self.lambdas[lam]) for m, o, lam in self.cells()
        ]


Model = Union[EmpiricalModel, HiddenVariableModel]


@dataclass(frozen=True)
class PartialTuple:
    """A partial assignment of argument positions, used for e(s̄)↓.

    ``measurements`` and ``outcomes`` map site indices to labels; ``hidden``
    optionally fixes λ for hidden-variable models.
    """

    measurements: Mapping[int, str] = field(default_factory=dict)
    outcomes: Mapping[int, str] = field(default_factory=dict)
    hidden: Optional[str] = None

    def extends(self, other: "PartialTuple") -> bool:
        """True when every position fixed by ``other`` is fixed identically here."""
        return (
            all(self.measurements.get(i) == v for i, v in other.measurements.items())
            and all(self.outcomes.get(i) == v for i, v in other.outcomes.items())
            and (other.hidden is None or self.hidden == other.hidden)
        )


def defined(model: Model, s: PartialTuple) -> bool:
    """e(s̄)↓: some element of the support agrees with ``s`` on its positions."""
    st = model.system_type
    m_fixed = {i: st.measurement_index(i, label) for i, label in s.measurements.items()}
    o_fixed = {i: st.outcome_index(i, label) for i, label in s.outcomes.items()}

    lam_fixed = None
    if s.hidden is not None:
        if not isinstance(model, HiddenVariableModel):
            raise ModelTypeError("an empirical model has no hidden-variable position")
        if s.hidden not in model.lambdas:
            raise ModelTypeError(f"lambda {s.hidden!r} is not declared")
        lam_fixed = model.lambdas.index(s.hidden)

    for element in model.support:
        m, o = element[0], element[1]
        if lam_fixed is not None and element[2] != lam_fixed:
            continue
        if all(m[i] == k for i, k in m_fixed.items()) and all(o[i] == k for i, k in o_fixed.items()):
            return True
    return False


def induced_model(h: HiddenVariableModel) -> EmpiricalModel:
    return EmpiricalModel(h.system_type, ((m, o) for m, o, _ in h.support))


def restrict(e: EmpiricalModel, measurements: Iterable[Sequence[str]]) -> EmpiricalModel:
    """e_S for a set S of joint measurements given by labels."""
    st = e.system_type
    return e.restrict(st.encode_measurement(m) for m in measurements)


def transpositions(n: int) -> List[Tuple[int, ...]]:
    """Adjacent transpositions, which generate S_n."""
    result = []
    for j in range(n - 1):
        perm = list(range(n))
        perm[j], perm[j + 1] = j + 1, j
        result.append(tuple(perm))
    return result


def permute_cell(e: EmpiricalModel, permutation: Sequence[int], cell: Cell) -> Cell:
    st = e.system_type
    m, o = cell
    return (
        st.encode_measurement(act(permutation, st.decode_measurement(m), st)),
        st.encode_outcome(act(permutation, st.decode_outcome(o), st)),
    )


def equivariant(e: EmpiricalModel) -> bool:
    """True iff the support is closed under the diagonal S_n action."""
    e.system_type.require_homogeneous()
    for permutation in transpositions(e.system_type.arity):
        for cell in e.support:
            if permute_cell(e, permutation, cell) not in e.support:
                return False
    return True
