import pytest

from agents.constructions import (
    ConstructionsAgent,
    equivalent,
    grids_to_hidden,
    realize_sd,
    realize_sv,
    realize_wd_li,
    transform_li_loc_to_sd,
    upgrade_lambda_space,
)
from agents.constructions.realizations import choice_function_count, choice_functions, local_outcome_sets
from agents.properties import HiddenProperty, check_hidden
from conftest import random_empirical, random_hidden, random_local_li_ml, random_system_type
from models.catalog import GHZ_P, PR_TYPE, epr_model, ghz_model, hardy_model, mermin_instruction_table
from models.errors import ModelTypeError, PreconditionError, SizeLimitError
from models.grids import ChoiceFunction
from models.relational import EmpiricalModel, HiddenVariableModel, induced_model, restrict


class TestRealizations:
    def test_sv_and_sd_realize_random_models(self, rng):
        for _ in range(200):
            e = random_empirical(rng, random_system_type(rng))
            for build, prop in ((realize_sv, HiddenProperty.SV), (realize_sd, HiddenProperty.SD)):
                h = build(e)
                assert induced_model(h) == e
                assert check_hidden(h, prop)

    def test_sd_uses_one_lambda_per_cell(self):
        h = realize_sd(ghz_model())
        assert len(h.lambdas) == len(ghz_model())

    def test_wd_li_realizes_random_models(self, rng):
        for _ in range(100):
            e = random_empirical(rng, random_system_type(rng, max_arity=2, max_labels=2))
            h = realize_wd_li(e)
            assert induced_model(h) == e
            assert check_hidden(h, HiddenProperty.WD)
            assert check_hidden(h, HiddenProperty.LI)
            if e.support:
                assert len(h.lambda_support()) == choice_function_count(e)

    def test_wd_li_ghz_has_one_lambda_per_choice(self):
        assert len(realize_wd_li(ghz_model()).lambdas) == 4**4

    def test_wd_li_size_guard(self):
        with pytest.raises(SizeLimitError) as info:
            realize_wd_li(hardy_model(), max_lambda=10)
        assert info.value.limit == 10

    def test_empty_model(self):
        h = realize_wd_li(EmpiricalModel(epr_model().system_type))
        assert len(h) == 0
        assert induced_model(h) == EmpiricalModel(epr_model().system_type)

    def test_choice_functions_are_checked(self):
        e = epr_model()
        phis = list(choice_functions(e))
        assert len(phis) == 2
        for phi in phis:
            assert ChoiceFunction.checked(e, dict(phi.graph)) == phi
        with pytest.raises(ModelTypeError):
            ChoiceFunction.checked(e, {(0, 0): (0, 0)})
        with pytest.raises(ModelTypeError):
            ChoiceFunction.checked(e, {})


class TestUpgrade:
    def test_local_li_models_become_sd(self, rng):
        for _ in range(100):
            st = random_system_type(rng, max_arity=3, max_labels=2)
            h = random_local_li_ml(rng, st, int(rng.integers(1, 3)))
            sd = transform_li_loc_to_sd(h)
            assert check_hidden(sd, HiddenProperty.SD)
            assert check_hidden(sd, HiddenProperty.LI)
            assert equivalent(h, sd)

    def test_space_enumerates_local_choices(self):
        h = grids_to_hidden(restrict(ghz_model(), GHZ_P), mermin_instruction_table())
        space = upgrade_lambda_space(h)
        assert len(space) == 8
        assert [grid for _, grid in space] == mermin_instruction_table()

    def test_local_outcome_sets(self):
        st = epr_model().system_type
        h = HiddenVariableModel(st, ("l0",), [((0, 0), (0, 0), 0), ((0, 0), (1, 1), 0)])
        assert local_outcome_sets(h) == {(0, 0, 0): [0, 1], (0, 1, 0): [0, 1]}

    def test_requires_locality(self):
        with pytest.raises(PreconditionError) as info:
            transform_li_loc_to_sd(realize_sv(epr_model()))
        assert info.value.violation.property == "L"

    def test_requires_lambda_independence(self):
        h = HiddenVariableModel(PR_TYPE, ("l0", "l1"), [((0, 0), (0, 0), 0), ((0, 1), (0, 0), 1)])
        with pytest.raises(PreconditionError) as info:
            upgrade_lambda_space(h)
        assert info.value.violation.property == "LI"

    def test_size_guard(self):
        h = HiddenVariableModel(
            PR_TYPE, ("l0",), [(m, o, 0) for m in PR_TYPE.joint_measurements() for o in PR_TYPE.joint_outcomes()]
        )
        assert len(upgrade_lambda_space(h)) == 2**4
        with pytest.raises(SizeLimitError):
            upgrade_lambda_space(h, max_lambda=10)


class TestEquivalence:
    def test_realizations_are_equivalent(self):
        e = hardy_model()
        assert equivalent(realize_sv(e), realize_sd(e))

    def test_different_types(self):
        with pytest.raises(ModelTypeError):
            equivalent(realize_sv(epr_model()), realize_sv(ghz_model()))

    def test_random_styles(self, rng):
        st = random_system_type(rng, max_arity=2)
        h = random_hidden(rng, st, 3, style="local")
        assert equivalent(h, realize_sd(induced_model(h)))


class TestConstructionsAgent:
    @pytest.mark.parametrize("method", ["sv", "sd", "wdli"])
    def test_empirical_methods(self, method):
        report = ConstructionsAgent().realize(epr_model(), method)
        assert report["method"] == method
        assert all(report["properties"].values())
        assert induced_model(report["model"]) == epr_model()

    def test_upgrade(self):
        report = ConstructionsAgent().realize(realize_wd_li(epr_model()), "upgrade")
        assert report["properties"] == {"LI": True, "SD": True}
        assert len(report["model"].lambdas) == 2

    def test_method_kind_mismatch(self):
        agent = ConstructionsAgent()
        with pytest.raises(ModelTypeError):
            agent.realize(epr_model(), "upgrade")
        with pytest.raises(ModelTypeError):
            agent.realize(realize_sv(epr_model()), "sd")
        with pytest.raises(ModelTypeError):
            agent.realize(epr_model(), "magic")

    def test_size_guard_from_settings(self):
        agent = ConstructionsAgent({"constructions": {"max_lambda": 2}})
        result = agent.process(ghz_model(), operation="realize", method="wdli")
        assert not result["success"]
        assert result["error"] == "SizeLimitError"
