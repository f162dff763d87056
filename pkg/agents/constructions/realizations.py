import logging
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

from agents.properties.checks import HiddenProperty, check_hidden
from models.errors import InternalConsistencyError, ModelTypeError, PreconditionError, SizeLimitError
from models.grids import ChoiceFunction, LocalGridFamily
from models.relational import EmpiricalModel, HiddenVariableModel, induced_model

logger = logging.getLogger(__name__)

DEFAULT_MAX_LAMBDA = 2**20


def _labels(count: int) -> Tuple[str, ...]:
    return tuple(f"l{k}" for k in range(max(count, 1)))


def realize_sv(e: EmpiricalModel) -> HiddenVariableModel:
    return HiddenVariableModel(e.system_type, ("l0",), ((m, o, 0) for m, o in e.support))


def realize_sd(e: EmpiricalModel) -> HiddenVariableModel:
    """One strongly deterministic λ per support cell: φ_i = {(m̄_i, ō_i)}."""
    cells = e.cells()
    return HiddenVariableModel(e.system_type, _labels(len(cells)), ((m, o, k) for k, (m, o) in enumerate(cells)))


def choice_function_count(e: EmpiricalModel) -> int:
    count = 1
    for os in e.rows.values():
        count *= len(os)
    return count


def choice_functions(e: EmpiricalModel) -> Iterator[ChoiceFunction]:
    """Every Φ : dom(e) → O with graph inside e, in lexicographic order."""
    domain = e.domain()
    for choice in product(*(sorted(e.rows[m]) for m in domain)):
        yield ChoiceFunction(tuple(zip(domain, choice)))


def realize_wd_li(e: EmpiricalModel, max_lambda: int = DEFAULT_MAX_LAMBDA) -> HiddenVariableModel:
    """λ ranges over every choice function Φ : dom(e) → O with graph inside e."""
    count = choice_function_count(e)
    if count > max_lambda:
        raise SizeLimitError("the choice-function space", count, max_lambda)

    triples = []
    for k, phi in enumerate(choice_functions(e)):
        triples.extend((m, o, k) for m, o in phi.graph)
    logger.debug("Built %d choice functions over %d rows", count, len(e.domain()))
    return HiddenVariableModel(e.system_type, _labels(count), triples)


def local_outcome_sets(h: HiddenVariableModel) -> Dict[Tuple[int, int, int], List[int]]:
    """O^i_{m,λ}, keyed by (λ, site, m), for λ ∈ Λ⁺ and m ∈ M⁺_i."""
    st = h.system_type
    sets: Dict[Tuple[int, int, int], set] = {}
    for m, o, lam in h.support:
        for site in range(st.arity):
            sets.setdefault((lam, site, m[site]), set()).add(o[site])
    return {key: sorted(value) for key, value in sets.items()}


def _require(h: HiddenVariableModel, prop: HiddenProperty) -> None:
    result = check_hidden(h, prop)
    if not result:
        raise PreconditionError(f"the model does not satisfy {prop.value}", result.violation)


def upgrade_lambda_space(h: HiddenVariableModel, max_lambda: int = DEFAULT_MAX_LAMBDA) -> List[Tuple[int, LocalGridFamily]]:
    """Λ′: pairs (λ, Φ) with λ ∈ Λ⁺ and Φ_i(m) ∈ O^i_{m,λ} for every m ∈ M⁺_i."""
    _require(h, HiddenProperty.LI)
    _require(h, HiddenProperty.L)

    st = h.system_type
    domain = h.domain()
    site_domains = [sorted({m[site] for m in domain}) for site in range(st.arity)]
    local = local_outcome_sets(h)

    for lam in h.lambda_support():
        for m in domain:
            expected = set(product(*(local[(lam, site, m[site])] for site in range(st.arity))))
            if expected != set(h.outcomes_at(m, lam)):
                raise InternalConsistencyError(f"row {m} under lambda {h.lambdas[lam]} is not a product of local sets")

    total = 0
    for lam in h.lambda_support():
        size = 1
        for site, measurements in enumerate(site_domains):
            for mk in measurements:
                size *= len(local[(lam, site, mk)])
        total += size
    if total > max_lambda:
        raise SizeLimitError("the upgraded lambda space", total, max_lambda)

    space = []
    for lam in h.lambda_support():
        keys = [(site, mk) for site, measurements in enumerate(site_domains) for mk in measurements]
        for values in product(*(local[(lam, site, mk)] for site, mk in keys)):
            maps: List[Dict[int, int]] = [{} for _ in range(st.arity)]
            for (site, mk), value in zip(keys, values):
                maps[site][mk] = value
            space.append((lam, LocalGridFamily.from_maps(maps)))
    return space


def transform_li_loc_to_sd(h: HiddenVariableModel, max_lambda: int = DEFAULT_MAX_LAMBDA) -> HiddenVariableModel:
    """An equivalent λI ∧ SD model for a λI ∧ L model."""
    space = upgrade_lambda_space(h, max_lambda)
    domain = h.domain()
    triples = [(m, grid.outcome(m), k) for k, (_, grid) in enumerate(space) for m in domain]
    return HiddenVariableModel(h.system_type, _labels(len(space)), triples)


def grids_to_hidden(e: EmpiricalModel, grids: Sequence[LocalGridFamily]) -> HiddenVariableModel:
    """One λ per grid family, h(m̄, ō, λ) iff the grid maps m̄ ∈ dom(e) to ō."""
    domain = e.domain()
    triples = []
    for k, grid in enumerate(grids):
        for m in domain:
            o = grid.outcome(m)
            if o is not None:
                triples.append((m, o, k))
    return HiddenVariableModel(e.system_type, _labels(len(grids)), triples)


def equivalent(h1: HiddenVariableModel, h2: HiddenVariableModel) -> bool:
    if h1.system_type != h2.system_type:
        raise ModelTypeError("models of different system types cannot be compared")
    return induced_model(h1) == induced_model(h2)
