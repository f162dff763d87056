"""Exhaustive comparison of the LHV decider with a direct global-assignment cover."""

from itertools import product

import pytest

from agents.deciders import decide_lhv
from models.relational import EmpiricalModel
from models.system_type import SystemType

BIPARTITE = SystemType.uniform(2, ["0", "1"], ["0", "1"])
CELLS = [(m, o) for m in BIPARTITE.joint_measurements() for o in BIPARTITE.joint_outcomes()]
# every global assignment (site, measurement) -> outcome
ASSIGNMENTS = list(product((0, 1), repeat=4))


def covered(support) -> bool:
    domain = {m for m, _ in support}
    graphs = [
        {(m, (g[m[0]], g[2 + m[1]])) for m in domain}
        for g in ASSIGNMENTS
    ]
    usable = [graph for graph in graphs if graph <= support]
    return all(any(cell in graph for graph in usable) for cell in support)


@pytest.mark.slow
def test_all_bipartite_binary_models():
    mismatches = []
    members = 0
    for mask in range(1 << len(CELLS)):
        support = {cell for k, cell in enumerate(CELLS) if mask >> k & 1}
        verdict = decide_lhv(EmpiricalModel(BIPARTITE, support))
        members += verdict.member
        if verdict.member != covered(support):
            mismatches.append(mask)
    assert not mismatches, mismatches[:10]
    assert 0 < members < 1 << len(CELLS)
