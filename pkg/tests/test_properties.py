import pytest

from agents.constructions import realize_sv
from agents.deciders import decide_lhv
from agents.properties import (
    EmpiricalProperty,
    HiddenProperty,
    PropertiesAgent,
    ProbProperty,
    check_empirical,
    check_hidden,
    check_prob,
    outcome_independence_forms,
)
from conftest import random_empirical, random_hidden, random_local_li_ml, random_system_type
from models.catalog import (
    GHZ_TYPE,
    epr_model,
    ghz_model,
    hardy_model,
    ks_model,
    pr_box_probabilistic,
    pr_box_relational,
)
from models.errors import HeterogeneousAlphabetError, ModelTypeError
from models.relational import (
    EmpiricalModel,
    HiddenVariableModel,
    PartialTuple,
    defined,
    equivariant,
    induced_model,
    restrict,
)
from models.system_type import SystemType

STYLES = ("random", "wd", "sd", "local", "li")


def holds(h, prop):
    return check_hidden(h, prop).holds


class TestImplicationSuite:
    def test_random_hidden_models(self, rng):
        antecedents = {"wd": 0, "sd": 0, "l": 0, "li_pi": 0}
        for k in range(10_000):
            st = random_system_type(rng, max_arity=3, max_labels=3)
            h = random_hidden(rng, st, int(rng.integers(1, 5)), style=STYLES[k % len(STYLES)])
            wd, sd = holds(h, HiddenProperty.WD), holds(h, HiddenProperty.SD)
            oi, pi, loc = holds(h, HiddenProperty.OI), holds(h, HiddenProperty.PI), holds(h, HiddenProperty.L)
            li = holds(h, HiddenProperty.LI)

            if wd:
                antecedents["wd"] += 1
                assert oi, h.labelled_cells()
            assert sd == (wd and pi), h.labelled_cells()
            assert loc == (pi and oi), h.labelled_cells()
            if sd:
                antecedents["sd"] += 1
                assert loc, h.labelled_cells()
            if loc:
                antecedents["l"] += 1
            if li and pi:
                antecedents["li_pi"] += 1
                assert check_empirical(induced_model(h), EmpiricalProperty.NS), h.labelled_cells()
        assert all(count > 0 for count in antecedents.values()), antecedents

    def test_oi_forms_agree(self, rng):
        for k in range(2_000):
            st = random_system_type(rng, max_arity=3, max_labels=3)
            h = random_hidden(rng, st, int(rng.integers(1, 4)), style=STYLES[k % len(STYLES)])
            forms = outcome_independence_forms(h)
            assert forms["primary"] == forms["product"]


class TestEmpiricalProperties:
    def test_epr(self):
        e = epr_model()
        assert check_empirical(e, EmpiricalProperty.NS)
        assert check_empirical(e, EmpiricalProperty.ML)
        assert check_empirical(e, EmpiricalProperty.TOTAL)
        assert not check_empirical(e, EmpiricalProperty.WD)

    def test_ghz_partial_domain(self):
        e = ghz_model()
        assert check_empirical(e, EmpiricalProperty.NS)
        assert not check_empirical(e, EmpiricalProperty.TOTAL)
        result = check_empirical(e, EmpiricalProperty.ML)
        assert not result
        assert result.violation.property == "ML"

    def test_ks_signals(self):
        result = check_empirical(ks_model(), EmpiricalProperty.NS)
        assert not result
        witness = result.violation.witness
        assert {"site", "m", "m_prime", "outcome"} <= set(witness)

    def test_deterministic_model(self):
        st = GHZ_TYPE
        e = EmpiricalModel.from_labels(st, [(("1", "1", "1"), ("R", "R", "R")), (("2", "2", "2"), ("G", "G", "G"))])
        assert check_empirical(e, EmpiricalProperty.WD)
        assert check_empirical(e, EmpiricalProperty.SD)

    def test_wd_but_not_sd(self):
        e = EmpiricalModel.from_labels(
            GHZ_TYPE, [(("1", "1", "1"), ("R", "R", "R")), (("1", "2", "2"), ("G", "R", "R"))]
        )
        assert check_empirical(e, EmpiricalProperty.WD)
        result = check_empirical(e, EmpiricalProperty.SD)
        assert not result
        assert result.violation.witness["site"] == 0

    def test_empty_model_satisfies_everything_but_totality(self):
        e = EmpiricalModel(GHZ_TYPE)
        for prop in (EmpiricalProperty.WD, EmpiricalProperty.SD, EmpiricalProperty.NS, EmpiricalProperty.ML):
            assert check_empirical(e, prop)
        assert not check_empirical(e, EmpiricalProperty.TOTAL)

    def test_violation_serializes(self):
        data = check_empirical(ks_model(), EmpiricalProperty.NS).to_dict()
        assert data["holds"] is False
        assert data["violation"]["property"] == "NS"
        assert isinstance(data["violation"]["witness"]["m"], list)

    def test_restriction_keeps_no_signalling(self, rng):
        restricted = 0
        for k in range(2_000):
            st = random_system_type(rng, max_arity=3, max_labels=3)
            if k % 2:
                e = induced_model(random_local_li_ml(rng, st, int(rng.integers(1, 4))))
            else:
                e = random_empirical(rng, st)
            if not check_empirical(e, EmpiricalProperty.NS):
                continue
            rows = [st.decode_measurement(m) for m in st.joint_measurements()]
            subset = [row for row in rows if rng.random() < 0.5]
            assert check_empirical(restrict(e, subset), EmpiricalProperty.NS), (e, subset)
            restricted += 1
        assert restricted > 500


class TestHiddenProperties:
    def test_epr_single_value_realization_breaks_oi(self):
        assert decide_lhv(epr_model()).member
        h = realize_sv(epr_model())
        assert check_hidden(h, HiddenProperty.SV)
        assert not check_hidden(h, HiddenProperty.OI)

    def test_li_violation_names_lambda(self):
        st = pr_box_relational().system_type
        h = HiddenVariableModel(st, ("l0", "l1"), [((0, 0), (0, 0), 0), ((0, 1), (0, 0), 1)])
        result = check_hidden(h, HiddenProperty.LI)
        assert not result
        assert result.violation.witness["lambda"] in ("l0", "l1")

    def test_sv_counts_declared_lambdas(self):
        st = epr_model().system_type
        h = HiddenVariableModel(st, ("l0", "l1"), [((0, 0), (0, 1), 0)])
        assert not check_hidden(h, HiddenProperty.SV)

    def test_locality_of_product_rows(self):
        st = pr_box_relational().system_type
        rows = [((0, 0), (a, b), 0) for a in (0, 1) for b in (0, 1)]
        h = HiddenVariableModel(st, ("l0",), rows)
        assert check_hidden(h, HiddenProperty.L)
        assert check_hidden(h, HiddenProperty.OI)
        assert not check_hidden(h, HiddenProperty.WD)


class TestProbProperties:
    def test_pr_box(self):
        p = pr_box_probabilistic()
        assert check_prob(p, ProbProperty.PNS)
        assert check_prob(p, ProbProperty.PML)
        assert not check_prob(p, ProbProperty.POI)

    def test_rejects_relations(self):
        with pytest.raises(ModelTypeError):
            check_prob(epr_model(), ProbProperty.PNS)


class TestDefinedAndEquivariance:
    def test_defined(self):
        e = epr_model()
        assert defined(e, PartialTuple(measurements={0: "X"}, outcomes={1: "b"}))
        h = realize_sv(e)
        assert defined(h, PartialTuple(outcomes={0: "a"}, hidden="l0"))
        with pytest.raises(ModelTypeError):
            defined(e, PartialTuple(hidden="l0"))

    def test_extends(self):
        wide = PartialTuple(measurements={0: "X", 1: "Y"}, outcomes={0: "a"})
        assert wide.extends(PartialTuple(measurements={0: "X"}))
        assert not PartialTuple(measurements={0: "X"}).extends(wide)

    def test_catalog_symmetry(self):
        assert equivariant(ks_model())
        assert equivariant(ghz_model())
        with pytest.raises(HeterogeneousAlphabetError):
            equivariant(hardy_model())

    def test_random_full_relation_is_equivariant(self, rng):
        st = random_system_type(rng, max_arity=3, max_labels=2, min_arity=2)
        uniform = SystemType.uniform(st.arity, st.measurements[0], st.outcomes[0])
        assert equivariant(EmpiricalModel.full(uniform))
        assert random_empirical(rng, uniform, density=1.0) == EmpiricalModel.full(uniform)


class TestPropertiesAgent:
    def test_check_all_defaults_to_every_property(self):
        results = PropertiesAgent().check_all(ghz_model())
        assert [name for name, _ in results] == [p.value for p in EmpiricalProperty]

    def test_lowercase_names(self):
        assert PropertiesAgent().check(epr_model(), "ns")

    def test_unknown_property(self):
        result = PropertiesAgent().process(epr_model(), operation="check", prop="PL")
        assert not result["success"]
        assert result["error"] == "ModelTypeError"

    def test_unknown_operation(self):
        assert not PropertiesAgent().process(epr_model(), operation="nope")["success"]
