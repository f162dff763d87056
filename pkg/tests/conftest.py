"""Seeded model generators and hypothesis strategies shared by the suite."""

import os
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence

import numpy as np
import pytest
from hypothesis import strategies as st

from config import load_settings
from models.probabilistic import ProbEmpiricalModel, ProbHVModel
from models.relational import EmpiricalModel, HiddenVariableModel
from models.system_type import SystemType

SEED = int(os.environ.get("NONLOC_SEED", "20240601"))


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture(scope="session")
def settings():
    return load_settings()


def random_system_type(rng, max_arity: int = 3, max_labels: int = 3, min_arity: int = 1) -> SystemType:
    arity = int(rng.integers(min_arity, max_arity + 1))
    measurements = [tuple(f"x{k}" for k in range(int(rng.integers(1, max_labels + 1)))) for _ in range(arity)]
    outcomes = [tuple(f"o{k}" for k in range(int(rng.integers(1, max_labels + 1)))) for _ in range(arity)]
    return SystemType(tuple(measurements), tuple(outcomes))


def _nonempty_subset(rng, items: Sequence, density: float) -> List:
    chosen = [item for item in items if rng.random() < density]
    return chosen or [items[int(rng.integers(len(items)))]]


def random_empirical(rng, system_type: SystemType, density: Optional[float] = None) -> EmpiricalModel:
    density = rng.random() if density is None else density
    cells = [
        (m, o)
        for m in system_type.joint_measurements()
        for o in system_type.joint_outcomes()
        if rng.random() < density
    ]
    return EmpiricalModel(system_type, cells)


def _site_functions(rng, system_type: SystemType, sets: bool = False):
    """Per-site random outcome (or nonempty outcome set) for every measurement."""
    result = []
    for site in range(system_type.arity):
        outcomes = list(range(len(system_type.outcomes[site])))
        values = {}
        for m in range(len(system_type.measurements[site])):
            if sets:
                values[m] = _nonempty_subset(rng, outcomes, 0.5)
            else:
                values[m] = [int(rng.integers(len(outcomes)))]
        result.append(values)
    return result


def random_hidden(rng, system_type: SystemType, n_lambda: int, style: str = "random") -> HiddenVariableModel:
    """A random hidden-variable model.

    Styles: ``random`` (independent cells), ``wd`` (one outcome per row),
    ``sd`` (per-site functions), ``local`` (rows are products of per-site sets),
    ``li`` (every λ on one common domain, arbitrary rows).
    """
    measurements = list(system_type.joint_measurements())
    outcomes = list(system_type.joint_outcomes())
    lambdas = tuple(f"l{k}" for k in range(n_lambda))
    triples = []
    if style == "random":
        density = rng.random()
        triples = [
            (m, o, lam)
            for lam in range(n_lambda)
            for m in measurements
            for o in outcomes
            if rng.random() < density
        ]
    elif style == "li":
        domain = _nonempty_subset(rng, measurements, 0.7)
        lams = _nonempty_subset(rng, list(range(n_lambda)), 0.7)
        for lam in lams:
            for m in domain:
                triples.extend((m, o, lam) for o in _nonempty_subset(rng, outcomes, rng.random()))
    else:
        for lam in range(n_lambda):
            domain = _nonempty_subset(rng, measurements, 0.7)
            if style == "wd":
                triples.extend((m, outcomes[int(rng.integers(len(outcomes)))], lam) for m in domain)
                continue
            functions = _site_functions(rng, system_type, sets=(style == "local"))
            for m in domain:
                for o in product(*(functions[site][mk] for site, mk in enumerate(m))):
                    triples.append((m, o, lam))
    return HiddenVariableModel(system_type, lambdas, triples)


def random_local_li_ml(rng, system_type: SystemType, n_lambda: int) -> HiddenVariableModel:
    """ML ∧ λI ∧ L: every λ on all of M, rows are products of per-(site, m, λ) sets."""
    triples = []
    for lam in range(n_lambda):
        functions = _site_functions(rng, system_type, sets=True)
        for m in system_type.joint_measurements():
            for o in product(*(functions[site][mk] for site, mk in enumerate(m))):
                triples.append((m, o, lam))
    return HiddenVariableModel(system_type, tuple(f"l{k}" for k in range(n_lambda)), triples)


def random_weights(rng, keys: Sequence, max_weight: int = 6) -> dict:
    raw = {key: int(rng.integers(1, max_weight + 1)) for key in keys}
    total = sum(raw.values())
    return {key: Fraction(w, total) for key, w in raw.items()}


def _local_distribution(rng, size: int, zeros: bool) -> List[Fraction]:
    raw = [int(rng.integers(0 if zeros else 1, 4)) for _ in range(size)]
    if sum(raw) == 0:
        raw[int(rng.integers(size))] = 1
    total = sum(raw)
    return [Fraction(w, total) for w in raw]


def random_prob_hidden(rng, system_type: SystemType, n_lambda: int) -> ProbHVModel:
    """A random rational q on M × O × Λ that satisfies some of the P-properties by construction."""
    measurements = list(system_type.joint_measurements())
    outcomes = list(system_type.joint_outcomes())
    lambdas = tuple(f"l{k}" for k in range(n_lambda))
    local = rng.random() < 0.5
    independent = rng.random() < 0.5
    product_prior = rng.random() < 0.5

    if product_prior:
        site_priors = [_local_distribution(rng, len(ms), zeros=False) for ms in system_type.measurements]
        prior = {}
        for m in measurements:
            w = Fraction(1)
            for site, k in enumerate(m):
                w *= site_priors[site][k]
            prior[m] = w
    else:
        prior = random_weights(rng, _nonempty_subset(rng, measurements, 0.7))

    lambda_weights = random_weights(rng, list(range(n_lambda)))
    tables = {}
    weights = {}
    for m, pm in prior.items():
        given_m = lambda_weights if independent else random_weights(rng, _nonempty_subset(rng, list(range(n_lambda)), 0.6))
        for lam, pl in given_m.items():
            if local:
                site_tables = [
                    tables.setdefault(
                        (site, m[site], lam), _local_distribution(rng, len(system_type.outcomes[site]), zeros=True)
                    )
                    for site in range(system_type.arity)
                ]
                for o in outcomes:
                    w = Fraction(1)
                    for site, k in enumerate(o):
                        w *= site_tables[site][k]
                    if w:
                        weights[(m, o, lam)] = pm * pl * w
            else:
                for o, w in random_weights(rng, _nonempty_subset(rng, outcomes, 0.5)).items():
                    weights[(m, o, lam)] = pm * pl * w
    return ProbHVModel(system_type, lambdas, weights)


def random_prob_empirical(rng, system_type: SystemType) -> ProbEmpiricalModel:
    return random_prob_hidden(rng, system_type, 1).empirical_marginal()


# hypothesis strategies


@st.composite
def system_types(draw, max_arity: int = 3, max_labels: int = 3):
    arity = draw(st.integers(1, max_arity))
    measurements = tuple(
        tuple(f"x{k}" for k in range(draw(st.integers(1, max_labels)))) for _ in range(arity)
    )
    outcomes = tuple(tuple(f"o{k}" for k in range(draw(st.integers(1, max_labels)))) for _ in range(arity))
    return SystemType(measurements, outcomes)


@st.composite
def empirical_models(draw, max_arity: int = 2, max_labels: int = 3, max_rows: int = 4):
    system_type = draw(system_types(max_arity, max_labels))
    measurements = list(system_type.joint_measurements())[:max_rows]
    cells = [(m, o) for m in measurements for o in system_type.joint_outcomes()]
    chosen = draw(st.lists(st.sampled_from(cells), unique=True, max_size=len(cells)))
    return EmpiricalModel(system_type, chosen)


@st.composite
def rational_models(draw, max_arity: int = 2, max_labels: int = 2):
    system_type = draw(system_types(max_arity, max_labels))
    cells = [(m, o) for m in system_type.joint_measurements() for o in system_type.joint_outcomes()]
    raw = draw(st.lists(st.integers(0, 5), min_size=len(cells), max_size=len(cells)).filter(any))
    total = sum(raw)
    return ProbEmpiricalModel(system_type, {cell: Fraction(w, total) for cell, w in zip(cells, raw) if w})
