from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose

from agents.properties import ProbProperty, check_prob
from agents.quantum import QuantumAgent, epr_system, ghz_system, hardy_system
from agents.quantum.systems import KET0, KET1, projective_realization
from models.catalog import GHZ_P, GHZ_P_OUTCOMES, GHZ_TYPE, HARDY_TYPE, epr_model, ghz_model, hardy_model
from models.errors import (
    ModelTypeError,
    QuantumDimensionError,
    RationalizationError,
    ToleranceAmbiguityError,
    UnvalidatedRealizationError,
)
from models.quantum_runner import QuantumRealization, QuantumRunner
from models.system_type import SystemType

GHZ_ROWS = list(GHZ_P) + [("1", "1", "1")]


@pytest.fixture
def agent(settings):
    return QuantumAgent(settings)


def qubit_system(psi):
    st = SystemType.uniform(1, ["z"], ["0", "1"])
    return projective_realization(st, [[[KET0, KET1]]], psi)


class TestValidation:
    @pytest.mark.parametrize("build", [epr_system, ghz_system, hardy_system])
    def test_builtins_validate(self, agent, build):
        report = agent.validate(build())
        assert report.passed, report.failures

    def test_unnormalized_state_fails(self, agent):
        realization = qubit_system(np.array([1, 1], dtype=complex))
        report = agent.validate(realization)
        assert not report.passed
        assert any("trace" in failure for failure in report.failures)
        with pytest.raises(UnvalidatedRealizationError):
            agent.probabilities(realization)

    def test_incomplete_measurement_fails(self, agent):
        st = SystemType.uniform(1, ["z"], ["0", "1"])
        operators = {(0, 0, 0): np.diag([1, 0]), (0, 0, 1): np.zeros((2, 2))}
        realization = QuantumRealization(st, (2,), operators, np.diag([1, 0]))
        assert "completeness" in agent.validate(realization).failures[0]

    def test_shape_mismatch(self):
        st = SystemType.uniform(1, ["z"], ["0", "1"])
        operators = {(0, 0, 0): np.eye(3), (0, 0, 1): np.eye(3)}
        with pytest.raises(QuantumDimensionError):
            QuantumRealization(st, (2,), operators, np.eye(2) / 2)

    def test_missing_operator(self):
        st = SystemType.uniform(1, ["z"], ["0", "1"])
        with pytest.raises(QuantumDimensionError):
            QuantumRealization(st, (2,), {(0, 0, 0): np.eye(2)}, np.eye(2) / 2)


class TestStatisticalAlgorithm:
    def test_ghz_xyy_row(self, agent):
        realization = ghz_system()
        m = GHZ_TYPE.encode_measurement(("1", "2", "2"))
        row = agent.probabilities(realization, [("1", "2", "2")])[m]
        for o, p in row.items():
            if GHZ_TYPE.decode_outcome(o) in GHZ_P_OUTCOMES:
                assert_allclose(p, 0.25, atol=1e-9)
            else:
                assert_allclose(p, 0.0, atol=1e-12)

    def test_ghz_every_p_row(self, agent):
        table = agent.probabilities(ghz_system(), GHZ_P)
        assert len(table) == 3
        for row in table.values():
            support = sorted(GHZ_TYPE.decode_outcome(o) for o, p in row.items() if p > 1e-12)
            assert support == sorted(GHZ_P_OUTCOMES)

    def test_hardy_values(self, agent):
        realization = hardy_system()
        assert_allclose(agent.statistical_algorithm(realization, ("X1", "Y1"), ("R", "R")), 0.09, atol=1e-9)
        for m, o in [(("X1", "Y2"), ("R", "R")), (("X2", "Y1"), ("R", "R")), (("X2", "Y2"), ("G", "G"))]:
            assert_allclose(agent.statistical_algorithm(realization, m, o), 0.0, atol=1e-12)
        assert_allclose(agent.statistical_algorithm(realization, ("X1", "Y1"), ("G", "G")), 0.64, atol=1e-9)

    def test_rows_sum_to_one(self, agent):
        for row in agent.probabilities(hardy_system()).values():
            assert_allclose(sum(row.values()), 1.0, atol=1e-12)

    def test_pure_shortcut_agrees_with_trace(self):
        runner = QuantumRunner()
        realization = hardy_system()
        for m in HARDY_TYPE.joint_measurements():
            for o in HARDY_TYPE.joint_outcomes():
                assert_allclose(
                    runner.pure_probability(realization, m, o), runner.probability(realization, m, o), atol=1e-12
                )

    def test_empty_subset_rejected(self, agent):
        with pytest.raises(ModelTypeError):
            agent.probabilities(ghz_system(), [])


class TestCollapse:
    def test_epr(self, agent):
        assert agent.collapse_quantum(epr_system()) == epr_model()

    def test_ghz_on_fixed_rows(self, agent):
        assert agent.collapse_quantum(ghz_system(), GHZ_ROWS) == ghz_model()

    def test_hardy(self, agent):
        assert agent.collapse_quantum(hardy_system()) == hardy_model()

    def test_guard_band(self, agent):
        with pytest.raises(ToleranceAmbiguityError):
            agent.collapse_quantum(ghz_system(), GHZ_ROWS, epsilon=0.1)

    def test_agent_process(self, agent):
        result = agent.process(ghz_system(), operation="collapse", measurements=GHZ_ROWS)
        assert result["success"]
        assert result["result"] == ghz_model()


class TestProbFromQuantum:
    def test_ghz_uniform_prior(self, agent):
        p = agent.prob_from_quantum(ghz_system(), GHZ_P)
        assert set(p.weights.values()) == {Fraction(1, 12)}
        assert len(p.weights) == 12

    def test_hardy_is_exact(self, agent):
        p = agent.prob_from_quantum(hardy_system())
        m = HARDY_TYPE.encode_measurement(("X1", "Y1"))
        assert p.conditional(m)[HARDY_TYPE.encode_outcome(("R", "R"))] == Fraction(9, 100)
        assert sum(p.weights.values()) == 1

    @pytest.mark.parametrize("build", [ghz_system, hardy_system, epr_system])
    def test_quantum_models_are_no_signalling(self, agent, rng, build):
        realization = build()
        st = realization.system_type
        rows = [st.decode_measurement(m) for m in st.joint_measurements()]
        for _ in range(10):
            subset = [row for row in rows if rng.random() < 0.5] or [rows[int(rng.integers(len(rows)))]]
            p = agent.prob_from_quantum(realization, subset)
            assert check_prob(p, ProbProperty.PNS), subset
        assert check_prob(agent.prob_from_quantum(realization), ProbProperty.PNS)

    def test_custom_prior(self, agent):
        prior = {GHZ_P[0]: "1/2", GHZ_P[1]: "1/4", GHZ_P[2]: "1/4"}
        p = agent.prob_from_quantum(ghz_system(), GHZ_P, prior)
        marginal = p.measurement_marginal()
        assert marginal[GHZ_TYPE.encode_measurement(GHZ_P[0])] == Fraction(1, 2)

    def test_prior_off_subset(self, agent):
        with pytest.raises(ModelTypeError):
            agent.prob_from_quantum(ghz_system(), GHZ_P, {GHZ_P[0]: 1})

    def test_irrational_row_refused(self):
        agent = QuantumAgent({"quantum": {"max_denominator": 10}})
        theta = np.pi / 8
        realization = qubit_system(np.cos(theta) * KET0 + np.sin(theta) * KET1)
        with pytest.raises(RationalizationError):
            agent.prob_from_quantum(realization)
