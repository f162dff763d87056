import pytest

from agents.deciders.hierarchy import run_hierarchy_demo
from models.catalog import epr_model, ghz_model, pr_box_relational


class TestHierarchyDemo:
    def test_every_separation_holds(self, settings):
        separations = run_hierarchy_demo(config=settings)
        assert [s.name for s in separations] == ["epr", "ghz", "pr", "ns4x4", "ks"]
        assert all(s.ok for s in separations), [s.diff() for s in separations if not s.ok]

    @pytest.mark.parametrize(
        "name, replacement",
        [("epr", ghz_model()), ("ns4x4", pr_box_relational()), ("ks", epr_model()), ("ghz", epr_model())],
    )
    def test_tampered_witness_is_reported(self, settings, name, replacement):
        separations = {s.name: s for s in run_hierarchy_demo({name: replacement}, settings)}
        assert not separations[name].ok
        assert separations[name].diff()
        assert all(s.ok for key, s in separations.items() if key != name)

    def test_report_shape(self, settings):
        data = run_hierarchy_demo(config=settings)[2].to_dict()
        assert data["inclusion"] == "QM ⊂ NS^p"
        assert data["expected"] == data["observed"]
        assert data["ok"] is True
