"""Direct evaluation of the relational and probabilistic model properties.

Every checker enumerates its quantifier domain in index order and reports the
first instantiation that falsifies the definition.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from models.errors import InternalConsistencyError, ModelTypeError
from models.probabilistic import ProbEmpiricalModel, ProbHVModel, marginalize
from models.relational import EmpiricalModel, HiddenVariableModel
from models.system_type import IndexTuple, SystemType


class EmpiricalProperty(str, Enum):
    WD = "WD"
    SD = "SD"
    NS = "NS"
    ML = "ML"
    TOTAL = "TOTAL"


class HiddenProperty(str, Enum):
    WD = "WD"
    SD = "SD"
    SV = "SV"
    LI = "LI"
    OI = "OI"
    PI = "PI"
    L = "L"
    ML = "ML"


class ProbProperty(str, Enum):
    PNS = "PNS"
    PLI = "PLI"
    POI = "POI"
    PPI = "PPI"
    PL = "PL"
    PML = "PML"


@dataclass(frozen=True)
class Violation:
    """The failing property and the labelled tuples instantiating its quantifiers."""

    property: str
    witness: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"property": self.property, "witness": _jsonable(self.witness)}


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> Dict[str, Any]:
        return {"holds": self.holds, "violation": self.violation.to_dict() if self.violation else None}


HOLDS = CheckResult(True)


def _jsonable(value):
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _fail(prop: Enum, **witness) -> CheckResult:
    return CheckResult(False, Violation(prop.value, witness))


def _local(row: Iterable[IndexTuple], site: int) -> set:
    return {o[site] for o in row}


def _outcome_label(st: SystemType, site: int, k: int) -> str:
    return st.outcomes[site][k]


def _measurement_label(st: SystemType, site: int, k: int) -> str:
    return st.measurements[site][k]


# Shared relational clauses; ``rows`` maps joint measurements to outcome sets.


def _weak_determinism(st, rows, prop, lam=None):
    for m in sorted(rows):
        outcomes = sorted(rows[m])
        if len(outcomes) > 1:
            witness = {"m": st.decode_measurement(m), "o": st.decode_outcome(outcomes[0]),
                       "o_prime": st.decode_outcome(outcomes[1])}
            if lam is not None:
                witness["lambda"] = lam
            return _fail(prop, **witness)
    return None


def _strong_determinism(st, rows, prop, lam=None):
    cells = sorted((m, o) for m, os in rows.items() for o in os)
    for site in range(st.arity):
        first: Dict[int, Tuple[IndexTuple, IndexTuple]] = {}
        for m, o in cells:
            seen = first.setdefault(m[site], (m, o))
            if seen[1][site] != o[site]:
                witness = {
                    "site": site,
                    "m": st.decode_measurement(seen[0]),
                    "o": st.decode_outcome(seen[1]),
                    "m_prime": st.decode_measurement(m),
                    "o_prime": st.decode_outcome(o),
                }
                if lam is not None:
                    witness["lambda"] = lam
                return _fail(prop, **witness)
    return None


def _no_signalling(st, rows, prop, lam=None):
    domain = sorted(rows)
    for site in range(st.arity):
        for m in domain:
            local = _local(rows[m], site)
            for m_prime in domain:
                if m_prime[site] != m[site] or m_prime == m:
                    continue
                missing = sorted(local - _local(rows[m_prime], site))
                if missing:
                    witness = {
                        "site": site,
                        "m": st.decode_measurement(m),
                        "m_prime": st.decode_measurement(m_prime),
                        "outcome": _outcome_label(st, site, missing[0]),
                    }
                    if lam is not None:
                        witness["lambda"] = lam
                    return _fail(prop, **witness)
    return None


def _measurement_locality(st, domain, prop, lam=None):
    domain = set(domain)
    projections = [sorted({m[i] for m in domain}) for i in range(st.arity)]
    for m in product(*projections):
        if m not in domain:
            witness = {"m": st.decode_measurement(m)}
            if lam is not None:
                witness["lambda"] = lam
            return _fail(prop, **witness)
    return None


def check_empirical(e: EmpiricalModel, prop: Union[EmpiricalProperty, str]) -> CheckResult:
    prop = EmpiricalProperty(prop)
    st = e.system_type
    if prop is EmpiricalProperty.WD:
        result = _weak_determinism(st, e.rows, prop)
    elif prop is EmpiricalProperty.SD:
        result = _strong_determinism(st, e.rows, prop)
    elif prop is EmpiricalProperty.NS:
        result = _no_signalling(st, e.rows, prop)
    elif prop is EmpiricalProperty.ML:
        result = _measurement_locality(st, e.domain(), prop)
    else:
        result = None
        for m in st.joint_measurements():
            if m not in e.rows:
                result = _fail(prop, m=st.decode_measurement(m))
                break
    return result or HOLDS


def _fibers(h: HiddenVariableModel) -> List[Tuple[int, Dict[IndexTuple, frozenset]]]:
    return [(lam, h.fiber(lam)) for lam in h.lambda_support()]


def _oi_primary(h: HiddenVariableModel) -> CheckResult:
    st = h.system_type
    for (m, lam), row in sorted(h.rows.items()):
        outcomes = sorted(row)
        for site in range(st.arity):
            for o1 in outcomes:
                for o2 in outcomes:
                    spliced = o2[:site] + (o1[site],) + o2[site + 1:]
                    if spliced not in row:
                        return _fail(
                            HiddenProperty.OI,
                            m=st.decode_measurement(m),
                            site=site,
                            o=st.decode_outcome(o1),
                            o_prime=st.decode_outcome(o2),
                            missing=st.decode_outcome(spliced),
                            **{"lambda": h.lambdas[lam]},
                        )
    return HOLDS


def _oi_product(h: HiddenVariableModel) -> CheckResult:
    st = h.system_type
    for (m, lam), row in sorted(h.rows.items()):
        locals_ = [sorted(_local(row, site)) for site in range(st.arity)]
        for o in product(*locals_):
            if o not in row:
                return _fail(
                    HiddenProperty.OI,
                    m=st.decode_measurement(m),
                    missing=st.decode_outcome(o),
                    **{"lambda": h.lambdas[lam]},
                )
    return HOLDS


def outcome_independence_forms(h: HiddenVariableModel) -> Dict[str, bool]:
    """Verdicts of the splice form and the product form of Outcome Independence."""
    return {"primary": _oi_primary(h).holds, "product": _oi_product(h).holds}


def check_hidden(h: HiddenVariableModel, prop: Union[HiddenProperty, str]) -> CheckResult:
    prop = HiddenProperty(prop)
    st = h.system_type

    if prop is HiddenProperty.SV:
        return HOLDS if len(h.lambdas) == 1 else _fail(prop, lambdas=list(h.lambdas))

    if prop is HiddenProperty.OI:
        primary, product_form = _oi_primary(h), _oi_product(h)
        if primary.holds != product_form.holds:
            raise InternalConsistencyError("the two forms of Outcome Independence disagree")
        return primary

    if prop is HiddenProperty.LI:
        domain = h.domain()
        for lam, fiber in _fibers(h):
            for m in domain:
                if m not in fiber:
                    return _fail(prop, m=st.decode_measurement(m), **{"lambda": h.lambdas[lam]})
        return HOLDS

    if prop is HiddenProperty.L:
        for lam, fiber in _fibers(h):
            local: Dict[Tuple[int, int], set] = defaultdict(set)
            for m, row in fiber.items():
                for site in range(st.arity):
                    local[(site, m[site])] |= _local(row, site)
            for m in sorted(fiber):
                choices = [sorted(local[(site, m[site])]) for site in range(st.arity)]
                for o in product(*choices):
                    if o not in fiber[m]:
                        return _fail(
                            prop, m=st.decode_measurement(m), o=st.decode_outcome(o), **{"lambda": h.lambdas[lam]}
                        )
        return HOLDS

    clause = {
        HiddenProperty.WD: lambda fiber, lam: _weak_determinism(st, fiber, prop, lam),
        HiddenProperty.SD: lambda fiber, lam: _strong_determinism(st, fiber, prop, lam),
        HiddenProperty.PI: lambda fiber, lam: _no_signalling(st, fiber, prop, lam),
        HiddenProperty.ML: lambda fiber, lam: _measurement_locality(st, fiber, prop, lam),
    }[prop]
    for lam, fiber in _fibers(h):
        result = clause(fiber, h.lambdas[lam])
        if result is not None:
            return result
    return HOLDS


# Probabilistic properties, in exact rational arithmetic.


def _pns(p: ProbEmpiricalModel) -> CheckResult:
    st = p.system_type
    prior = p.measurement_marginal()
    for site in range(st.arity):
        reference: Dict[int, IndexTuple] = {}
        for m in sorted(prior):
            local = marginalize(p.conditional(m), lambda o: o[site])
            first = reference.setdefault(m[site], m)
            if first == m:
                continue
            ref_local = marginalize(p.conditional(first), lambda o: o[site])
            for k in range(len(st.outcomes[site])):
                if local.get(k, 0) != ref_local.get(k, 0):
                    return _fail(
                        ProbProperty.PNS,
                        site=site,
                        m=st.decode_measurement(first),
                        m_prime=st.decode_measurement(m),
                        outcome=_outcome_label(st, site, k),
                        p=ref_local.get(k, Fraction(0)),
                        p_prime=local.get(k, Fraction(0)),
                    )
    return HOLDS


def _pml(p: ProbEmpiricalModel) -> CheckResult:
    st = p.system_type
    prior = p.measurement_marginal()
    site_marginals = [marginalize(prior, lambda m, i=i: m[i]) for i in range(st.arity)]
    for m in product(*(sorted(marginal) for marginal in site_marginals)):
        expected = Fraction(1)
        for i, k in enumerate(m):
            expected *= site_marginals[i][k]
        actual = prior.get(m, Fraction(0))
        if actual != expected:
            return _fail(ProbProperty.PML, m=st.decode_measurement(m), p=actual, product=expected)
    return HOLDS


def _pli(q: ProbHVModel) -> CheckResult:
    st = q.system_type
    prior = q.measurement_marginal()
    joint = q.measurement_lambda_marginal()
    domain = sorted(prior)
    if not domain:
        return HOLDS
    first = domain[0]
    for m in domain[1:]:
        for lam in range(len(q.lambdas)):
            a = joint.get((first, lam), Fraction(0)) / prior[first]
            b = joint.get((m, lam), Fraction(0)) / prior[m]
            if a != b:
                return _fail(
                    ProbProperty.PLI,
                    m=st.decode_measurement(first),
                    m_prime=st.decode_measurement(m),
                    p=a,
                    p_prime=b,
                    **{"lambda": q.lambdas[lam]},
                )
    return HOLDS


def _rows_by_measurement_lambda(q: ProbHVModel) -> Dict[Tuple[IndexTuple, int], Dict[IndexTuple, Fraction]]:
    rows: Dict[Tuple[IndexTuple, int], Dict[IndexTuple, Fraction]] = defaultdict(dict)
    for (m, o, lam), w in q.weights.items():
        rows[(m, lam)][o] = w
    return rows


def _site_marginals(q: ProbHVModel):
    """q(m_i, o_i, λ) and q(m_i, λ), marginalizing every other argument."""
    st = q.system_type
    with_outcome = [marginalize(q.weights, lambda t, i=i: (t[0][i], t[1][i], t[2])) for i in range(st.arity)]
    without = [marginalize(q.weights, lambda t, i=i: (t[0][i], t[2])) for i in range(st.arity)]
    return with_outcome, without


def _poi(q: ProbHVModel) -> CheckResult:
    st = q.system_type
    for (m, lam), row in sorted(_rows_by_measurement_lambda(q).items()):
        mass = sum(row.values(), Fraction(0))
        for site in range(st.arity):
            local = marginalize(row, lambda o: o[site])
            rest_mass = marginalize(row, lambda o: o[:site] + o[site + 1:])
            for rest in sorted(rest_mass):
                for k in range(len(st.outcomes[site])):
                    o = rest[:site] + (k,) + rest[site:]
                    given = row.get(o, Fraction(0)) / rest_mass[rest]
                    unconditioned = local.get(k, Fraction(0)) / mass
                    if given != unconditioned:
                        return _fail(
                            ProbProperty.POI,
                            m=st.decode_measurement(m),
                            site=site,
                            outcome=_outcome_label(st, site, k),
                            others=st.decode_outcome(o),
                            p=unconditioned,
                            p_given=given,
                            **{"lambda": q.lambdas[lam]},
                        )
    return HOLDS


def _ppi(q: ProbHVModel) -> CheckResult:
    st = q.system_type
    with_outcome, without = _site_marginals(q)
    for (m, lam), row in sorted(_rows_by_measurement_lambda(q).items()):
        mass = sum(row.values(), Fraction(0))
        for site in range(st.arity):
            local = marginalize(row, lambda o: o[site])
            for k in range(len(st.outcomes[site])):
                joint = local.get(k, Fraction(0)) / mass
                marginal = with_outcome[site].get((m[site], k, lam), Fraction(0)) / without[site][(m[site], lam)]
                if joint != marginal:
                    return _fail(
                        ProbProperty.PPI,
                        m=st.decode_measurement(m),
                        site=site,
                        outcome=_outcome_label(st, site, k),
                        p=joint,
                        p_local=marginal,
                        **{"lambda": q.lambdas[lam]},
                    )
    return HOLDS


def _pl(q: ProbHVModel) -> CheckResult:
    st = q.system_type
    with_outcome, without = _site_marginals(q)
    for (m, lam), row in sorted(_rows_by_measurement_lambda(q).items()):
        mass = sum(row.values(), Fraction(0))
        choices = [
            sorted(k for (mi, k, l) in with_outcome[site] if mi == m[site] and l == lam)
            for site in range(st.arity)
        ]
        for o in sorted(set(row) | set(product(*choices))):
            expected = Fraction(1)
            for site, k in enumerate(o):
                expected *= with_outcome[site].get((m[site], k, lam), Fraction(0)) / without[site][(m[site], lam)]
            actual = row.get(o, Fraction(0)) / mass
            if actual != expected:
                return _fail(
                    ProbProperty.PL,
                    m=st.decode_measurement(m),
                    o=st.decode_outcome(o),
                    p=actual,
                    product=expected,
                    **{"lambda": q.lambdas[lam]},
                )
    return HOLDS


def check_prob(q: Union[ProbEmpiricalModel, ProbHVModel], prop: Union[ProbProperty, str]) -> CheckResult:
    """Check a probabilistic property.

    Empirical models are lifted to a single hidden value for the
    hidden-variable properties; hidden-variable models are marginalized over
    λ for PNS and PML.
    """
    prop = ProbProperty(prop)
    if not isinstance(q, (ProbEmpiricalModel, ProbHVModel)):
        raise ModelTypeError(f"{type(q).__name__} is not a probabilistic model")

    if prop in (ProbProperty.PNS, ProbProperty.PML):
        p = q.empirical_marginal() if isinstance(q, ProbHVModel) else q
        return _pns(p) if prop is ProbProperty.PNS else _pml(p)

    hv = ProbHVModel.lift(q) if isinstance(q, ProbEmpiricalModel) else q
    return {
        ProbProperty.PLI: _pli,
        ProbProperty.POI: _poi,
        ProbProperty.PPI: _ppi,
        ProbProperty.PL: _pl,
    }[prop](hv)
