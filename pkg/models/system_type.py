from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, Sequence, Tuple

from .errors import HeterogeneousAlphabetError, ModelTypeError

Labels = Tuple[str, ...]
IndexTuple = Tuple[int, ...]


@dataclass(frozen=True)
class SystemType:
    """Measurement and outcome alphabets for each of the n sites.

    Joint measurements and joint outcomes are handled as tuples of indices
    into these lists; the labels themselves are opaque strings.
    """

    measurements: Tuple[Labels, ...]
    outcomes: Tuple[Labels, ...]
    _measurement_index: Tuple[Dict[str, int], ...] = field(init=False, repr=False, compare=False, hash=False)
    _outcome_index: Tuple[Dict[str, int], ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        measurements = tuple(tuple(str(label) for label in site) for site in self.measurements)
        outcomes = tuple(tuple(str(label) for label in site) for site in self.outcomes)
        if not measurements:
            raise ModelTypeError("a system type needs at least one site")
        if len(measurements) != len(outcomes):
            raise ModelTypeError(
                f"{len(measurements)} measurement lists but {len(outcomes)} outcome lists"
            )
        for kind, sites in (("measurement", measurements), ("outcome", outcomes)):
            for i, labels in enumerate(sites):
                if not labels:
                    raise ModelTypeError(f"site {i} has an empty {kind} list")
                if len(set(labels)) != len(labels):
                    raise ModelTypeError(f"site {i} repeats a {kind} label: {list(labels)}")

        object.__setattr__(self, "measurements", measurements)
        object.__setattr__(self, "outcomes", outcomes)
        object.__setattr__(
            self, "_measurement_index", tuple({label: k for k, label in enumerate(site)} for site in measurements)
        )
        object.__setattr__(
            self, "_outcome_index", tuple({label: k for k, label in enumerate(site)} for site in outcomes)
        )

    @classmethod
    def uniform(cls, arity: int, measurements: Sequence[str], outcomes: Sequence[str]) -> "SystemType":
        """Type whose sites all share the same alphabets."""
        if arity < 1:
            raise ModelTypeError("arity must be a positive integer")
        return cls(tuple(tuple(measurements) for _ in range(arity)), tuple(tuple(outcomes) for _ in range(arity)))

    @property
    def arity(self) -> int:
        return len(self.measurements)

    def measurement_index(self, site: int, label: str) -> int:
        self._check_site(site)
        try:
            return self._measurement_index[site][label]
        except KeyError:
            raise ModelTypeError(f"measurement {label!r} is not declared at site {site}") from None

    def outcome_index(self, site: int, label: str) -> int:
        self._check_site(site)
        try:
            return self._outcome_index[site][label]
        except KeyError:
            raise ModelTypeError(f"outcome {label!r} is not declared at site {site}") from None

    def encode_measurement(self, labels: Sequence[str]) -> IndexTuple:
        self._check_length(labels, "joint measurement")
        return tuple(self.measurement_index(i, label) for i, label in enumerate(labels))

    def encode_outcome(self, labels: Sequence[str]) -> IndexTuple:
        self._check_length(labels, "joint outcome")
        return tuple(self.outcome_index(i, label) for i, label in enumerate(labels))

    def decode_measurement(self, indices: IndexTuple) -> Labels:
        return tuple(self.measurements[i][k] for i, k in enumerate(indices))

    def decode_outcome(self, indices: IndexTuple) -> Labels:
        return tuple(self.outcomes[i][k] for i, k in enumerate(indices))

    def check_measurement(self, indices: IndexTuple) -> None:
        self._check_indices(indices, self.measurements, "joint measurement")

    def check_outcome(self, indices: IndexTuple) -> None:
        self._check_indices(indices, self.outcomes, "joint outcome")

    def joint_measurements(self) -> Iterator[IndexTuple]:
        return product(*(range(len(site)) for site in self.measurements))

    def joint_outcomes(self) -> Iterator[IndexTuple]:
        return product(*(range(len(site)) for site in self.outcomes))

    def measurement_count(self) -> int:
        count = 1
        for site in self.measurements:
            count *= len(site)
        return count

    def is_homogeneous(self) -> bool:
        first_m, first_o = set(self.measurements[0]), set(self.outcomes[0])
        return all(set(site) == first_m for site in self.measurements) and all(
            set(site) == first_o for site in self.outcomes
        )

    def require_homogeneous(self) -> None:
        if not self.is_homogeneous():
            raise HeterogeneousAlphabetError(
                "the symmetric group only acts on types whose sites share measurement and outcome labels"
            )

    def _check_site(self, site: int) -> None:
        if not 0 <= site < self.arity:
            raise ModelTypeError(f"site index {site} is out of range for arity {self.arity}")

    def _check_length(self, labels: Sequence, what: str) -> None:
        if len(labels) != self.arity:
            raise ModelTypeError(f"{what} {tuple(labels)} has {len(labels)} components, expected {self.arity}")

    def _check_indices(self, indices: IndexTuple, sites: Tuple[Labels, ...], what: str) -> None:
        self._check_length(indices, what)
        for i, k in enumerate(indices):
            if not isinstance(k, int) or not 0 <= k < len(sites[i]):
                raise ModelTypeError(f"{what} {tuple(indices)} is out of range at site {i}")


def _check_permutation(permutation: Sequence[int], n: int) -> None:
    if sorted(permutation) != list(range(n)):
        raise ModelTypeError(f"{tuple(permutation)} is not a permutation of {n} sites")


def act(permutation: Sequence[int], labels: Sequence[str], system_type: SystemType) -> Labels:
    """Apply a site permutation to a joint measurement or outcome of ``system_type``.

    ``permutation[j]`` is the image of site j, so the result satisfies
    ``result[i] == labels[inverse(i)]``.
    """
    system_type.require_homogeneous()
    if len(labels) != system_type.arity:
        raise ModelTypeError(f"{tuple(labels)} does not have arity {system_type.arity}")
    _check_permutation(permutation, len(labels))
    result = [None] * len(labels)
    for j, value in enumerate(labels):
        result[permutation[j]] = value
    return tuple(result)


def compose(outer: Sequence[int], inner: Sequence[int]) -> Tuple[int, ...]:
    """The permutation ``outer ∘ inner``."""
    _check_permutation(outer, len(outer))
    _check_permutation(inner, len(outer))
    return tuple(outer[inner[j]] for j in range(len(inner)))
