from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

from agents.base_agent import BaseAgent
from models.errors import ModelTypeError, RationalizationError, ToleranceAmbiguityError
from models.probabilistic import ProbEmpiricalModel, to_fraction
from models.quantum_runner import QuantumRealization, QuantumRunner, ValidationReport
from models.relational import EmpiricalModel
from models.system_type import IndexTuple


class QuantumAgent(BaseAgent):
    """Agent for turning quantum realizations into probabilistic and relational models."""

    operations = {
        "validate": "validate",
        "probabilities": "probabilities",
        "prob_from_quantum": "prob_from_quantum",
        "collapse": "collapse_quantum",
    }

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        super().__init__("quantum", config)
        quantum_config = self.section("quantum")
        self.epsilon = float(quantum_config.get("epsilon", 1e-6))
        self.max_denominator = int(quantum_config.get("max_denominator", 10**6))
        self.snap_tolerance = float(quantum_config.get("snap_tolerance", 1e-9))
        self.runner = QuantumRunner(self.config)

    def validate(self, realization: QuantumRealization, eta: Optional[float] = None) -> ValidationReport:
        return self.runner.validate(realization, eta)

    def statistical_algorithm(self, realization: QuantumRealization, m: Sequence[str], o: Sequence[str]) -> float:
        st = realization.system_type
        return self.runner.probability(realization, st.encode_measurement(m), st.encode_outcome(o))

    def _subset(self, realization: QuantumRealization, measurements: Optional[Iterable[Sequence[str]]]) -> List[IndexTuple]:
        st = realization.system_type
        if measurements is None:
            return list(st.joint_measurements())
        subset = sorted({st.encode_measurement(m) for m in measurements})
        if not subset:
            raise ModelTypeError("the measurement subset is empty")
        return subset

    def probabilities(
        self, realization: QuantumRealization, measurements: Optional[Iterable[Sequence[str]]] = None
    ) -> Dict[IndexTuple, Dict[IndexTuple, float]]:
        """p_m̄(ō) as floats for each requested row."""
        self.runner.require_valid(realization)
        return {m: self.runner.distribution(realization, m, validated=True) for m in self._subset(realization, measurements)}

    def _snap(self, value: float, m: IndexTuple, o: IndexTuple) -> Fraction:
        snapped = Fraction(value).limit_denominator(self.max_denominator)
        if abs(float(snapped) - value) > self.snap_tolerance:
            raise RationalizationError(
                f"probability {value!r} at {m}, {o} has no rational within {self.snap_tolerance:g} "
                f"and denominator at most {self.max_denominator}"
            )
        return snapped

    def prob_from_quantum(
        self,
        realization: QuantumRealization,
        measurements: Optional[Iterable[Sequence[str]]] = None,
        prior: Optional[Mapping[Sequence[str], Any]] = None,
    ) -> ProbEmpiricalModel:
        """The joint model prior(m̄)·p_m̄(ō) over the subset, with rationalized rows."""
        st = realization.system_type
        table = self.probabilities(realization, measurements)
        rows = sorted(table)

        if prior is None:
            theta = {m: Fraction(1, len(rows)) for m in rows}
        else:
            theta = {st.encode_measurement(m): to_fraction(w) for m, w in prior.items()}
            if set(theta) != set(rows) or sum(theta.values()) != 1 or any(w <= 0 for w in theta.values()):
                raise ModelTypeError("the prior must be a positive rational distribution on the measurement subset")

        weights = {}
        for m in rows:
            snapped = {o: self._snap(p, m, o) for o, p in table[m].items()}
            mass = sum(snapped.values(), Fraction(0))
            if mass < 1 - 10 * Fraction(self.snap_tolerance):
                raise RationalizationError(f"row {st.decode_measurement(m)} keeps only {float(mass):.12f} of its mass")
            for o, p in snapped.items():
                if p > 0:
                    weights[(m, o)] = theta[m] * p / mass
        self.log_activity(f"Rationalized {len(rows)} rows into {len(weights)} weighted cells", "debug")
        return ProbEmpiricalModel(st, weights)

    def collapse_quantum(
        self,
        realization: QuantumRealization,
        measurements: Optional[Iterable[Sequence[str]]] = None,
        epsilon: Optional[float] = None,
    ) -> EmpiricalModel:
        """Support {(m̄, ō) | p_m̄(ō) > ε}, refusing values inside [ε/10, 10ε]."""
        epsilon = self.epsilon if epsilon is None else float(epsilon)
        st = realization.system_type
        table = self.probabilities(realization, measurements)
        cells = []
        for m, row in sorted(table.items()):
            for o, p in sorted(row.items()):
                if epsilon / 10 <= p <= 10 * epsilon:
                    raise ToleranceAmbiguityError(
                        f"p{st.decode_measurement(m)}{st.decode_outcome(o)} = {p:.3e} is within the guard band "
                        f"of epsilon={epsilon:g}; choose a different epsilon"
                    )
                if p > epsilon:
                    cells.append((m, o))
        self.log_activity(f"Collapsed {len(table)} rows to {len(cells)} possible cells")
        return EmpiricalModel(st, cells)
