"""Exact-rational operations on probabilistic models.

All probability algebra stays in :class:`fractions.Fraction`; only entropies
and the Tsirelson comparison are floating point.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from scipy.stats import entropy as scipy_entropy

from agents.properties.checks import HiddenProperty, check_hidden
from models.errors import CollapseMismatchError, InternalConsistencyError, ModelTypeError, PreconditionError
from models.probabilistic import ProbEmpiricalModel, ProbHVModel, ProbModel, marginalize, to_fraction
from models.relational import EmpiricalModel, HiddenVariableModel
from models.system_type import SystemType

logger = logging.getLogger(__name__)

CLASSICAL_BOUND = 2
TSIRELSON_BOUND = 2 * math.sqrt(2)

MEASUREMENTS = "measurements"
MEASUREMENTS_LAMBDA = "measurements_lambda"


def possibilistic_collapse(p: ProbModel) -> Union[EmpiricalModel, HiddenVariableModel]:
    """The relation of strictly positive cells."""
    if isinstance(p, ProbEmpiricalModel):
        return EmpiricalModel(p.system_type, p.weights)
    if isinstance(p, ProbHVModel):
        return HiddenVariableModel(p.system_type, p.lambdas, p.weights)
    raise ModelTypeError(f"cannot collapse {type(p).__name__}")


@dataclass
class Decomposition:
    """A prior θ on X and conditionals p_x on Y for each x with θ(x) > 0."""

    system_type: SystemType
    axis: str
    prior: Dict[Hashable, Fraction]
    conditionals: Dict[Hashable, Dict[Hashable, Fraction]]
    lambdas: Optional[Tuple[str, ...]] = None


def _split(p: ProbModel, axis: str):
    """(x, y) coordinates of each stored cell along ``axis``."""
    if isinstance(p, ProbEmpiricalModel):
        if axis != MEASUREMENTS:
            raise ModelTypeError("an empirical model only decomposes along its measurements")
        return lambda cell: (cell[0], cell[1])
    if axis == MEASUREMENTS:
        return lambda t: (t[0], (t[1], t[2]))
    if axis == MEASUREMENTS_LAMBDA:
        return lambda t: ((t[0], t[2]), t[1])
    raise ModelTypeError(f"unknown decomposition axis {axis!r}")


def decompose(p: ProbModel, axis: str = MEASUREMENTS) -> Decomposition:
    split = _split(p, axis)
    prior = marginalize(p.weights, lambda cell: split(cell)[0])
    conditionals: Dict[Hashable, Dict[Hashable, Fraction]] = {x: {} for x in prior}
    for cell, w in p.weights.items():
        x, y = split(cell)
        conditionals[x][y] = w / prior[x]
    return Decomposition(p.system_type, axis, prior, conditionals, getattr(p, "lambdas", None))


def recompose(d: Decomposition) -> ProbModel:
    """p′(x, y) = θ(x)·p_x(y)."""
    weights = {}
    for x, theta in d.prior.items():
        for y, w in d.conditionals[x].items():
            if d.lambdas is None:
                weights[(x, y)] = theta * w
            elif d.axis == MEASUREMENTS:
                weights[(x, y[0], y[1])] = theta * w
            else:
                weights[(x[0], y, x[1])] = theta * w
    if d.lambdas is None:
        return ProbEmpiricalModel(d.system_type, weights)
    return ProbHVModel(d.system_type, d.lambdas, weights)


def entropy(distribution: Union[Mapping[Any, Any], Sequence[Any]]) -> float:
    """Shannon entropy in bits, with 0·log 0 = 0."""
    values = list(distribution.values()) if isinstance(distribution, Mapping) else list(distribution)
    if not values:
        raise ModelTypeError("entropy of an empty distribution")
    if any(v < 0 for v in values):
        raise ModelTypeError("a distribution cannot have negative entries")
    total = sum(values)
    if abs(float(total) - 1) > 1e-9:
        raise ModelTypeError(f"distribution sums to {float(total)}, not 1")
    return float(scipy_entropy([float(v) for v in values], base=2))


def build_qh(h: HiddenVariableModel) -> ProbHVModel:
    """q^h(m̄, ō, λ) = 1/(K_{m̄,λ}·L·N) on the support of a λI model h."""
    result = check_hidden(h, HiddenProperty.LI)
    if not result:
        raise PreconditionError("q^h needs a lambda-independent model", result.violation)
    if not h.support:
        raise PreconditionError("q^h of an empty model is not a distribution")

    L = len(h.lambda_support())
    N = len(h.domain())
    weights = {}
    for (m, lam), outcomes in h.rows.items():
        K = len(outcomes)
        for o in outcomes:
            weights[(m, o, lam)] = Fraction(1, K * L * N)
    return ProbHVModel(h.system_type, h.lambdas, weights)


def realizes(q: ProbHVModel, p: ProbEmpiricalModel) -> bool:
    """q(m̄) > 0 ↔ p(m̄) > 0, and q(ō | m̄) = p(ō | m̄) exactly on those rows."""
    if q.system_type != p.system_type:
        raise ModelTypeError("models of different system types cannot realize one another")
    q_rows = q.measurement_marginal()
    p_rows = p.measurement_marginal()
    if set(q_rows) != set(p_rows):
        return False
    joint = q.empirical_marginal()
    return all(joint.conditional(m) == p.conditional(m) for m in p_rows)


def uniform_on_support(e: EmpiricalModel) -> ProbEmpiricalModel:
    if not e.support:
        raise PreconditionError("the empty relation carries no distribution")
    return ProbEmpiricalModel(e.system_type, {cell: Fraction(1, len(e.support)) for cell in e.support})


def join_conditionals(system_type: SystemType, rows: Mapping[Sequence[str], Mapping[Sequence[str], Any]]) -> ProbEmpiricalModel:
    """p(m̄, ō) = p_m̄(ō)/N with the uniform prior over the given rows."""
    if not rows:
        raise ModelTypeError("no conditional rows given")
    n = len(rows)
    weights = {}
    for m, row in rows.items():
        if sum((to_fraction(w) for w in row.values()), Fraction(0)) != 1:
            raise ModelTypeError(f"conditional row {tuple(m)} does not sum to 1")
        for o, w in row.items():
            weights[(system_type.encode_measurement(m), system_type.encode_outcome(o))] = to_fraction(w) / n
    return ProbEmpiricalModel(system_type, weights)


def _binary_shape(p: ProbEmpiricalModel) -> None:
    st = p.system_type
    if st.arity != 2 or any(len(os) != 2 for os in st.outcomes):
        raise ModelTypeError("correlations need a bipartite model with two outcomes per site")


def correlation_E(p: ProbEmpiricalModel, x: str, y: str) -> Fraction:
    """E(x, y) = Σ (−1)^(a+b) p(a, b | x, y), outcomes read as 0/1 by declaration order."""
    _binary_shape(p)
    m = p.system_type.encode_measurement((x, y))
    conditional = p.conditional(m)
    return sum(((-1) ** (a + b) * w for (a, b), w in conditional.items()), Fraction(0))


def chsh_sum(p: ProbEmpiricalModel) -> Fraction:
    """E(0,0) + E(1,0) + E(0,1) − E(1,1) over the first two measurements of each site."""
    _binary_shape(p)
    st = p.system_type
    if any(len(ms) != 2 for ms in st.measurements):
        raise ModelTypeError("CHSH needs two measurements per site")
    (x0, x1), (y0, y1) = st.measurements
    return correlation_E(p, x0, y0) + correlation_E(p, x1, y0) + correlation_E(p, x0, y1) - correlation_E(p, x1, y1)


def chsh_report(p: ProbEmpiricalModel) -> Dict[str, Any]:
    value = chsh_sum(p)
    magnitude = abs(value)
    return {
        "chsh": f"{value.numerator}/{value.denominator}",
        "value": float(value),
        "classical_bound": CLASSICAL_BOUND,
        "tsirelson_bound": TSIRELSON_BOUND,
        "exceeds_classical": magnitude > CLASSICAL_BOUND,
        "exceeds_tsirelson": float(magnitude) > TSIRELSON_BOUND,
    }


@dataclass
class MaxEntropyReport:
    prior_entropy_qh: float
    prior_entropy_q: float
    conditional_margins: Dict[Tuple, float] = field(default_factory=dict)

    @property
    def prior_margin(self) -> float:
        return self.prior_entropy_qh - self.prior_entropy_q

    def to_dict(self) -> Dict[str, Any]:
        return {
            "prior_entropy_qh": self.prior_entropy_qh,
            "prior_entropy_q": self.prior_entropy_q,
            "prior_margin": self.prior_margin,
            "conditional_margins": [
                {"m": list(m), "lambda": lam, "margin": margin}
                for (m, lam), margin in sorted(self.conditional_margins.items())
            ],
        }


def max_entropy_report(h: HiddenVariableModel, q: ProbHVModel, tolerance: float = 1e-9) -> MaxEntropyReport:
    """Compare q with q^h: prior entropy over (m̄, λ) and each conditional entropy."""
    if possibilistic_collapse(q) != h:
        raise CollapseMismatchError("q does not collapse to the given hidden-variable model")
    qh = build_qh(h)
    d_qh = decompose(qh, MEASUREMENTS_LAMBDA)
    d_q = decompose(q, MEASUREMENTS_LAMBDA)

    report = MaxEntropyReport(entropy(d_qh.prior), entropy(d_q.prior))
    for x in sorted(d_qh.prior):
        report.conditional_margins[x] = entropy(d_qh.conditionals[x]) - entropy(d_q.conditionals[x])

    worst = min([report.prior_margin, *report.conditional_margins.values()])
    if worst < -tolerance:
        raise InternalConsistencyError(f"q has more entropy than q^h (margin {worst:.3e})")
    logger.debug("Max-entropy margins: prior %.3e, worst %.3e", report.prior_margin, worst)
    return report
