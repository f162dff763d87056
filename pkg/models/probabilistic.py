from collections import defaultdict
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Sequence, Tuple, Union

from .errors import ModelTypeError, NormalizationError
from .relational import Cell, Triple
from .system_type import IndexTuple, SystemType

Weight = Union[Fraction, int, str]


def to_fraction(value: Weight) -> Fraction:
    if isinstance(value, float):
        raise ModelTypeError(f"probability {value!r} must be an exact rational, not a float")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelTypeError(f"{value!r} is not a rational number") from exc


def _normalized(weights: Mapping[Hashable, Weight]) -> Dict[Hashable, Fraction]:
    result = {}
    for key, value in weights.items():
        w = to_fraction(value)
        if w < 0:
            raise NormalizationError(f"negative weight {w} at {key}")
        if w > 0:
            result[key] = w
    total = sum(result.values(), Fraction(0))
    if total != 1:
        raise NormalizationError(f"weights sum to {total}, expected exactly 1")
    return result


def marginalize(weights: Mapping[Hashable, Fraction], key) -> Dict[Hashable, Fraction]:
    """Sum ``weights`` over entries with the same ``key(entry)``."""
    result: Dict[Hashable, Fraction] = defaultdict(Fraction)
    for entry, w in weights.items():
        result[key(entry)] += w
    return dict(result)


class ProbEmpiricalModel:
    """An exact-rational distribution p on M × O; only positive cells are stored."""

    def __init__(self, system_type: SystemType, weights: Mapping[Cell, Weight]):
        self.system_type = system_type
        checked = {}
        for (m, o), w in weights.items():
            m, o = tuple(m), tuple(o)
            system_type.check_measurement(m)
            system_type.check_outcome(o)
            if (m, o) in checked:
                raise ModelTypeError(f"cell {(m, o)} given twice")
            checked[(m, o)] = w
        self.weights: Dict[Cell, Fraction] = _normalized(checked)

    @classmethod
    def from_labels(cls, system_type: SystemType, entries: Iterable[Tuple[Sequence[str], Sequence[str], Weight]]):
        weights = {}
        for m, o, w in entries:
            cell = (system_type.encode_measurement(m), system_type.encode_outcome(o))
            if cell in weights:
                raise ModelTypeError(f"cell {(tuple(m), tuple(o))} given twice")
            weights[cell] = w
        return cls(system_type, weights)

    def __eq__(self, other):
        if not isinstance(other, ProbEmpiricalModel):
            return NotImplemented
        return self.system_type == other.system_type and self.weights == other.weights

    def __hash__(self):
        return hash((self.system_type, frozenset(self.weights.items())))

    def __repr__(self):
        return f"ProbEmpiricalModel(arity={self.system_type.arity}, support={len(self.weights)})"

    def weight(self, m: IndexTuple, o: IndexTuple) -> Fraction:
        return self.weights.get((tuple(m), tuple(o)), Fraction(0))

    def cells(self) -> List[Cell]:
        return sorted(self.weights)

    def measurement_marginal(self) -> Dict[IndexTuple, Fraction]:
        """The measurement prior p(m̄)."""
        return marginalize(self.weights, lambda cell: cell[0])

    def conditional(self, m: IndexTuple) -> Dict[IndexTuple, Fraction]:
        """p(· | m̄); requires p(m̄) > 0."""
        m = tuple(m)
        row = {o: w for (mm, o), w in self.weights.items() if mm == m}
        total = sum(row.values(), Fraction(0))
        if total == 0:
            raise ModelTypeError(f"measurement {m} has probability zero")
        return {o: w / total for o, w in row.items()}


class ProbHVModel:
    """An exact-rational distribution q on M × O × Λ."""

    def __init__(self, system_type: SystemType, lambdas: Sequence[str], weights: Mapping[Triple, Weight]):
        lambdas = tuple(str(label) for label in lambdas)
        if not lambdas:
            raise ModelTypeError("a hidden-variable model needs at least one lambda value")
        if len(set(lambdas)) != len(lambdas):
            raise ModelTypeError(f"lambda labels are not unique: {list(lambdas)}")
        self.system_type = system_type
        self.lambdas = lambdas
        checked = {}
        for (m, o, lam), w in weights.items():
            m, o = tuple(m), tuple(o)
            system_type.check_measurement(m)
            system_type.check_outcome(o)
            if not isinstance(lam, int) or not 0 <= lam < len(lambdas):
                raise ModelTypeError(f"lambda index {lam!r} is out of range")
            checked[(m, o, lam)] = w
        self.weights: Dict[Triple, Fraction] = _normalized(checked)

    @classmethod
    def from_labels(
        cls,
        system_type: SystemType,
        lambdas: Sequence[str],
        entries: Iterable[Tuple[Sequence[str], Sequence[str], str, Weight]],
    ) -> "ProbHVModel":
        index = {label: k for k, label in enumerate(lambdas)}
        weights = {}
        for m, o, lam, w in entries:
            if lam not in index:
                raise ModelTypeError(f"lambda {lam!r} is not declared")
            key = (system_type.encode_measurement(m), system_type.encode_outcome(o), index[lam])
            if key in weights:
                raise ModelTypeError(f"triple {(tuple(m), tuple(o), lam)} given twice")
            weights[key] = w
        return cls(system_type, lambdas, weights)

    def __eq__(self, other):
        if not isinstance(other, ProbHVModel):
            return NotImplemented
        return (
            self.system_type == other.system_type
            and self.lambdas == other.lambdas
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.system_type, self.lambdas, frozenset(self.weights.items())))

    def __repr__(self):
        return (
            f"ProbHVModel(arity={self.system_type.arity}, lambdas={len(self.lambdas)}, "
            f"support={len(self.weights)})"
        )

    def weight(self, m: IndexTuple, o: IndexTuple, lam: int) -> Fraction:
        return self.weights.get((tuple(m), tuple(o), lam), Fraction(0))

    def cells(self) -> List[Triple]:
        return sorted(self.weights)

    def measurement_marginal(self) -> Dict[IndexTuple, Fraction]:
        return marginalize(self.weights, lambda t: t[0])

    def measurement_lambda_marginal(self) -> Dict[Tuple[IndexTuple, int], Fraction]:
        """q(m̄, λ)."""
        return marginalize(self.weights, lambda t: (t[0], t[2]))

    def empirical_marginal(self) -> ProbEmpiricalModel:
        """Σ_λ q(m̄, ō, λ) as a probabilistic empirical model."""
        return ProbEmpiricalModel(self.system_type, marginalize(self.weights, lambda t: (t[0], t[1])))

    @classmethod
    def lift(cls, p: ProbEmpiricalModel, label: str = "l0") -> "ProbHVModel":
        """``p`` with all of its mass on a single λ."""
        return cls(p.system_type, (label,), {(m, o, 0): w for (m, o), w in p.weights.items()})


ProbModel = Union[ProbEmpiricalModel, ProbHVModel]
