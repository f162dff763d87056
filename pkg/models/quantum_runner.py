import logging
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import InternalConsistencyError, QuantumDimensionError, UnvalidatedRealizationError
from .system_type import IndexTuple, SystemType

OperatorKey = Tuple[int, int, int]


@dataclass
class QuantumRealization:
    """Measurement operators A_{m,o} on each site's Hilbert space plus a density operator ρ.

    ``operators`` is keyed by (site, measurement index, outcome index). When the
    realization is a pure state measured projectively, ``state_vector`` and
    ``basis_vectors`` enable the |⟨ψ | ψ_{m̄,ō}⟩|² shortcut.
    """

    system_type: SystemType
    dims: Tuple[int, ...]
    operators: Dict[OperatorKey, np.ndarray]
    state: np.ndarray
    state_vector: Optional[np.ndarray] = None
    basis_vectors: Optional[Dict[OperatorKey, np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        st = self.system_type
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != st.arity:
            raise QuantumDimensionError(f"{len(self.dims)} dimensions given for arity {st.arity}")
        if any(d < 1 for d in self.dims):
            raise QuantumDimensionError(f"dimensions must be positive: {self.dims}")

        for site in range(st.arity):
            for m in range(len(st.measurements[site])):
                for o in range(len(st.outcomes[site])):
                    key = (site, m, o)
                    if key not in self.operators:
                        raise QuantumDimensionError(
                            f"missing operator for site {site}, measurement "
                            f"{st.measurements[site][m]!r}, outcome {st.outcomes[site][o]!r}"
                        )
        for (site, m, o), matrix in list(self.operators.items()):
            matrix = np.asarray(matrix, dtype=complex)
            if matrix.shape != (self.dims[site], self.dims[site]):
                raise QuantumDimensionError(
                    f"operator at site {site} has shape {matrix.shape}, expected {(self.dims[site],) * 2}"
                )
            if not np.all(np.isfinite(matrix)):
                raise QuantumDimensionError(f"operator at site {site} has non-finite entries")
            self.operators[(site, m, o)] = matrix

        self.state = np.asarray(self.state, dtype=complex)
        total = self.total_dimension
        if self.state.shape != (total, total):
            raise QuantumDimensionError(f"state has shape {self.state.shape}, expected {(total, total)}")

    @property
    def total_dimension(self) -> int:
        return int(np.prod(self.dims))

    def effect(self, m: IndexTuple, o: IndexTuple) -> np.ndarray:
        """A†_{m̄,ō} A_{m̄,ō} as the Kronecker product of the site effects."""
        factors = []
        for site, (mk, ok) in enumerate(zip(m, o)):
            a = self.operators[(site, mk, ok)]
            factors.append(a.conj().T @ a)
        return reduce(np.kron, factors)


@dataclass
class ValidationReport:
    completeness_deviation: float
    hermitian_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    eta: float
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "eta": self.eta,
            "completeness_deviation": self.completeness_deviation,
            "hermitian_deviation": self.hermitian_deviation,
            "trace_deviation": self.trace_deviation,
            "min_eigenvalue": self.min_eigenvalue,
            "failures": list(self.failures),
        }


class QuantumRunner:
    """Evaluates the quantum statistical algorithm p_m̄(ō) = Tr(A†_{m̄,ō} A_{m̄,ō} ρ)."""

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self.logger = logging.getLogger(__name__)

        quantum_config = self.config.get("quantum", {})
        self.eta = float(quantum_config.get("eta", 1e-9))

    def validate(self, realization: QuantumRealization, eta: Optional[float] = None) -> ValidationReport:
        eta = self.eta if eta is None else eta
        st = realization.system_type

        completeness = 0.0
        for site in range(st.arity):
            identity = np.eye(realization.dims[site])
            for m in range(len(st.measurements[site])):
                total = sum(
                    realization.operators[(site, m, o)].conj().T @ realization.operators[(site, m, o)]
                    for o in range(len(st.outcomes[site]))
                )
                completeness = max(completeness, float(np.max(np.abs(total - identity))))

        rho = realization.state
        hermitian = float(np.max(np.abs(rho - rho.conj().T)))
        trace = float(abs(np.trace(rho) - 1))
        min_eigenvalue = float(np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2)))

        report = ValidationReport(completeness, hermitian, trace, min_eigenvalue, eta)
        if completeness > eta:
            report.failures.append(f"completeness deviates by {completeness:.3e}")
        if hermitian > eta:
            report.failures.append(f"state is not Hermitian (deviation {hermitian:.3e})")
        if trace > eta:
            report.failures.append(f"state trace deviates from 1 by {trace:.3e}")
        if min_eigenvalue < -eta:
            report.failures.append(f"state has negative eigenvalue {min_eigenvalue:.3e}")

        if report.passed:
            self.logger.debug("Realization with dims %s validated at eta=%g", realization.dims, eta)
        else:
            self.logger.warning("Realization failed validation: %s", "; ".join(report.failures))
        return report

    def require_valid(self, realization: QuantumRealization) -> None:
        report = self.validate(realization)
        if not report.passed:
            raise UnvalidatedRealizationError("; ".join(report.failures))

    def probability(self, realization: QuantumRealization, m: IndexTuple, o: IndexTuple, validated: bool = False) -> float:
        if not validated:
            self.require_valid(realization)
        value = float(np.real(np.trace(realization.effect(m, o) @ realization.state)))
        if value < -self.eta or value > 1 + self.eta:
            raise InternalConsistencyError(f"probability {value} at {m}, {o} is outside [0, 1]")
        return min(1.0, max(0.0, value))

    def distribution(self, realization: QuantumRealization, m: IndexTuple, validated: bool = False) -> Dict[IndexTuple, float]:
        """p_m̄(ō) for every joint outcome of one measurement row."""
        if not validated:
            self.require_valid(realization)
        st = realization.system_type
        row = {o: self.probability(realization, m, o, validated=True) for o in st.joint_outcomes()}
        total = sum(row.values())
        if abs(total - 1) > st.arity * self.eta + 1e-12:
            raise InternalConsistencyError(f"row {m} sums to {total}")
        return row

    def pure_probability(self, realization: QuantumRealization, m: IndexTuple, o: IndexTuple) -> float:
        """|⟨ψ_{m̄,ō} | ψ⟩|² for pure states measured in orthonormal bases."""
        if realization.state_vector is None or realization.basis_vectors is None:
            raise UnvalidatedRealizationError("realization carries no pure state and basis vectors")
        vector = reduce(
            np.kron, [realization.basis_vectors[(site, mk, ok)] for site, (mk, ok) in enumerate(zip(m, o))]
        )
        return float(abs(np.vdot(vector, realization.state_vector)) ** 2)
