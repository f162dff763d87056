"""Quantum realizations of the EPR, GHZ and Hardy models.

Every system here is a pure state measured projectively, so each carries
its state vector and measurement bases alongside the operator form.
"""

from functools import reduce
from typing import Callable, Dict, Sequence

import numpy as np

from models.catalog import GHZ_TYPE, HARDY_TYPE, epr_model
from models.quantum_runner import QuantumRealization
from models.system_type import SystemType

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)


def _ket(bits: str) -> np.ndarray:
    return reduce(np.kron, [KET1 if b == "1" else KET0 for b in bits])


def projective_realization(
    system_type: SystemType, bases: Sequence[Sequence[Sequence[np.ndarray]]], psi: np.ndarray
) -> QuantumRealization:
    """``bases[site][m][o]`` is the eigenvector for outcome o of measurement m."""
    operators, vectors = {}, {}
    for site, site_bases in enumerate(bases):
        for m, basis in enumerate(site_bases):
            for o, v in enumerate(basis):
                v = np.asarray(v, dtype=complex)
                vectors[(site, m, o)] = v
                operators[(site, m, o)] = np.outer(v, v.conj())
    psi = np.asarray(psi, dtype=complex)
    dims = tuple(len(site_bases[0][0]) for site_bases in bases)
    return QuantumRealization(
        system_type,
        dims,
        operators,
        np.outer(psi, psi.conj()),
        state_vector=psi,
        basis_vectors=vectors,
    )


def epr_system() -> QuantumRealization:
    """(|01⟩ + |10⟩)/√2 in the computational basis, a = 0 and b = 1."""
    st = epr_model().system_type
    computational = [[KET0, KET1]]
    psi = (_ket("01") + _ket("10")) / np.sqrt(2)
    return projective_realization(st, [computational, computational], psi)


def ghz_system() -> QuantumRealization:
    """(|000⟩ + |111⟩)/√2 with 1 ↦ X and 2 ↦ Y; G is spin Right/Forward, R the other direction."""
    s = 1 / np.sqrt(2)
    x_basis = [s * (KET0 - KET1), s * (KET0 + KET1)]
    y_basis = [s * (KET0 - 1j * KET1), s * (KET0 + 1j * KET1)]
    psi = (_ket("000") + _ket("111")) / np.sqrt(2)
    return projective_realization(GHZ_TYPE, [[x_basis, y_basis]] * 3, psi)


def hardy_system() -> QuantumRealization:
    """X₂, Y₂ computational; X₁, Y₁ rotated; state √(3/8)|10⟩ + √(3/8)|01⟩ − ½|00⟩; R = 0, G = 1."""
    rotated = [np.sqrt(3 / 5) * KET0 + np.sqrt(2 / 5) * KET1, -np.sqrt(2 / 5) * KET0 + np.sqrt(3 / 5) * KET1]
    computational = [KET0, KET1]
    psi = np.sqrt(3 / 8) * _ket("10") + np.sqrt(3 / 8) * _ket("01") - 0.5 * _ket("00")
    return projective_realization(HARDY_TYPE, [[rotated, computational]] * 2, psi)


QUANTUM_BUILTINS: Dict[str, Callable[[], QuantumRealization]] = {
    "epr": epr_system,
    "ghz": ghz_system,
    "hardy": hardy_system,
}
