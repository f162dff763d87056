"""Membership in NS^p: collapses of probabilistically no-signalling models.

The conditionals p(ō | m̄) on the support of e must satisfy the row sums and
the single-site marginal equalities, all strictly positive. Positivity is
handled by maximizing the least entry t over the exact simplex; e is a
member iff t* > 0. Non-members get a Farkas certificate: multipliers y over
the equation system E x = b with Eᵀy ≥ 0, bᵀy ≤ 0 and Σ(Eᵀy) − bᵀy ≥ 1,
which rules out every x > 0.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional

from agents.properties.checks import EmpiricalProperty, check_empirical
from models.errors import InternalConsistencyError
from models.probabilistic import ProbEmpiricalModel
from models.relational import Cell, EmpiricalModel
from models.system_type import SystemType

from .simplex import maximize

logger = logging.getLogger(__name__)


def _rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Equation:
    """Σ coefficients[c]·p(c) = rhs over support cells c."""

    kind: str
    coefficients: Dict[Cell, int]
    rhs: int
    m: tuple
    m_prime: Optional[tuple] = None
    site: Optional[int] = None
    outcome: Optional[int] = None

    def describe(self, st: SystemType) -> Dict[str, Any]:
        data = {"kind": self.kind, "m": list(st.decode_measurement(self.m))}
        if self.kind == "marginal":
            data["m_prime"] = list(st.decode_measurement(self.m_prime))
            data["site"] = self.site
            data["outcome"] = st.outcomes[self.site][self.outcome]
        return data


def pns_equations(e: EmpiricalModel) -> List[Equation]:
    """Row normalizations, then marginal equalities against each group's first row."""
    st = e.system_type
    domain = e.domain()
    equations = [
        Equation("normalization", {(m, o): 1 for o in sorted(e.outcomes_at(m))}, 1, m) for m in domain
    ]
    for site in range(st.arity):
        groups: Dict[int, List[tuple]] = defaultdict(list)
        for m in domain:
            groups[m[site]].append(m)
        for rows in groups.values():
            first = rows[0]
            for m in rows[1:]:
                for k in range(len(st.outcomes[site])):
                    coefficients: Dict[Cell, int] = {}
                    for o in e.outcomes_at(first):
                        if o[site] == k:
                            coefficients[(first, o)] = 1
                    for o in e.outcomes_at(m):
                        if o[site] == k:
                            coefficients[(m, o)] = -1
                    if coefficients:
                        equations.append(Equation("marginal", coefficients, 0, first, m, site, k))
    return equations


@dataclass
class FarkasCertificate:
    equations: List[Equation]
    multipliers: List[Fraction]

    def combination(self) -> Dict[Cell, Fraction]:
        total: Dict[Cell, Fraction] = defaultdict(Fraction)
        for eq, y in zip(self.equations, self.multipliers):
            for cell, a in eq.coefficients.items():
                total[cell] += a * y
        return dict(total)

    def rhs(self) -> Fraction:
        return sum((eq.rhs * y for eq, y in zip(self.equations, self.multipliers)), Fraction(0))

    def verify(self, e: EmpiricalModel) -> bool:
        """Re-check the alternative by arithmetic; no strictly positive solution can exist."""
        if any(not set(eq.coefficients) <= e.support for eq in self.equations):
            return False
        combination = self.combination()
        if any(value < 0 for value in combination.values()):
            return False
        rhs = self.rhs()
        return rhs <= 0 and sum(combination.values(), Fraction(0)) - rhs >= 1

    def to_dict(self, st: SystemType) -> Dict[str, Any]:
        return {
            "equations": [
                {**eq.describe(st), "multiplier": _rational(y)}
                for eq, y in zip(self.equations, self.multipliers)
            ],
            "rhs": _rational(self.rhs()),
        }


@dataclass
class NspVerdict:
    member: bool
    witness: Optional[ProbEmpiricalModel] = None
    conditionals: Dict[Cell, Fraction] = field(default_factory=dict)
    certificate: Optional[FarkasCertificate] = None
    # least conditional on the support; 0 for non-members
    margin: Fraction = Fraction(0)

    def to_dict(self, e: EmpiricalModel) -> Dict[str, Any]:
        st = e.system_type
        return {
            "member": self.member,
            "margin": _rational(self.margin),
            "conditionals": [
                {"m": list(st.decode_measurement(m)), "o": list(st.decode_outcome(o)), "p": _rational(value)}
                for (m, o), value in sorted(self.conditionals.items())
            ],
            "certificate": self.certificate.to_dict(st) if self.certificate else None,
        }


def _sign_definite(equations: List[Equation]) -> Optional[FarkasCertificate]:
    """A single homogeneous equation whose coefficients share one sign."""
    for eq in equations:
        if eq.rhs != 0:
            continue
        signs = set(eq.coefficients.values())
        if signs == {1}:
            return FarkasCertificate([eq], [Fraction(1)])
        if signs == {-1}:
            return FarkasCertificate([eq], [Fraction(-1)])
    return None


def farkas_certificate(e: EmpiricalModel, equations: List[Equation]) -> FarkasCertificate:
    """Solve for y with Eᵀy ≥ 0, bᵀy ≤ 0, Σ(Eᵀy) − bᵀy ≥ 1, preferring small Σ|y|."""
    cells = e.cells()
    k = len(equations)
    # columns: y⁺ (k), y⁻ (k), cell surpluses, rhs surplus, normalization surplus
    width = 2 * k + len(cells) + 2
    A, b = [], []
    for j, cell in enumerate(cells):
        row = [Fraction(0)] * width
        for r, eq in enumerate(equations):
            a = eq.coefficients.get(cell, 0)
            row[r], row[k + r] = Fraction(a), Fraction(-a)
        row[2 * k + j] = Fraction(-1)
        A.append(row)
        b.append(0)

    row = [Fraction(0)] * width
    for r, eq in enumerate(equations):
        row[r], row[k + r] = Fraction(-eq.rhs), Fraction(eq.rhs)
    row[2 * k + len(cells)] = Fraction(-1)
    A.append(row)
    b.append(0)

    row = [Fraction(0)] * width
    for r, eq in enumerate(equations):
        weight = sum(eq.coefficients.values()) - eq.rhs
        row[r], row[k + r] = Fraction(weight), Fraction(-weight)
    row[width - 1] = Fraction(-1)
    A.append(row)
    b.append(1)

    cost = [Fraction(-1)] * (2 * k) + [Fraction(0)] * (len(cells) + 2)
    result = maximize(A, b, cost)
    if not result.optimal:
        raise InternalConsistencyError("no strictly positive solution exists, yet no Farkas certificate was found")

    used, multipliers = [], []
    for r, eq in enumerate(equations):
        y = result.x[r] - result.x[k + r]
        if y != 0:
            used.append(eq)
            multipliers.append(y)
    return FarkasCertificate(used, multipliers)


def _solve_positive(cells: List[Cell], equations: List[Equation], floor: Optional[Fraction] = None,
                    objective: Optional[Mapping[Cell, Fraction]] = None):
    """Variables x_c = t + s_c; maximize t, or the objective with t pinned to ``floor``."""
    index = {cell: j + 1 for j, cell in enumerate(cells)}
    width = len(cells) + 1
    A, b = [], []
    for eq in equations:
        row = [Fraction(0)] * width
        for cell, a in eq.coefficients.items():
            row[0] += a
            row[index[cell]] += a
        A.append(row)
        b.append(eq.rhs)

    if floor is None:
        cost = [Fraction(1)] + [Fraction(0)] * len(cells)
    else:
        pin = [Fraction(1)] + [Fraction(0)] * len(cells)
        A.append(pin)
        b.append(floor)
        cost = [Fraction(0)] + [Fraction(objective.get(cell, 0)) for cell in cells]
    return maximize(A, b, cost)


def decide_nsp(e: EmpiricalModel, witness_objective: Optional[Mapping[Cell, Fraction]] = None) -> NspVerdict:
    """Decide NS^p membership; ``witness_objective`` picks among witnesses with the optimal margin."""
    if not e.support:
        return NspVerdict(True)

    equations = pns_equations(e)
    if not check_empirical(e, EmpiricalProperty.NS):
        certificate = _sign_definite(equations)
        if certificate is not None:
            logger.debug("NS fails; one-equation certificate on %s", certificate.equations[0].m)
            return NspVerdict(False, certificate=certificate)

    cells = e.cells()
    result = _solve_positive(cells, equations)
    if not result.optimal or result.value <= 0:
        certificate = farkas_certificate(e, equations)
        if not certificate.verify(e):
            raise InternalConsistencyError("the extracted Farkas certificate does not verify")
        logger.debug("No positive solution; certificate uses %d equations", len(certificate.equations))
        return NspVerdict(False, certificate=certificate)

    t = result.value
    x = result.x
    if witness_objective:
        refined = _solve_positive(cells, equations, floor=t, objective=witness_objective)
        if not refined.optimal:
            raise InternalConsistencyError("re-optimizing the witness lost feasibility")
        x = refined.x

    conditionals = {cell: x[0] + x[j + 1] for j, cell in enumerate(cells)}
    n = len(e.domain())
    witness = ProbEmpiricalModel(e.system_type, {cell: p / n for cell, p in conditionals.items()})
    return NspVerdict(True, witness=witness, conditionals=conditionals, margin=min(conditionals.values()))
