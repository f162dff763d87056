"""Named constructors for the standard relational models."""

from fractions import Fraction
from itertools import permutations, product
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ConflictError, ModelTypeError
from .grids import LocalGridFamily
from .probabilistic import ProbEmpiricalModel
from .relational import EmpiricalModel
from .system_type import Labels, SystemType, act

GHZ_TYPE = SystemType.uniform(3, ["1", "2"], ["R", "G"])
GHZ_P = (("1", "2", "2"), ("2", "1", "2"), ("2", "2", "1"))
GHZ_P_OUTCOMES = (("R", "R", "R"), ("R", "G", "G"), ("G", "R", "G"), ("G", "G", "R"))
GHZ_111_OUTCOMES = (("R", "R", "G"), ("R", "G", "R"), ("G", "R", "R"), ("G", "G", "G"))

# (top row, bottom row): outcomes when every site measures 1, resp. 2
MERMIN_INSTRUCTIONS = (
    ("RRR", "RRR"),
    ("RGG", "RGG"),
    ("GRG", "GRG"),
    ("GGR", "GGR"),
    ("RGG", "GRR"),
    ("RRR", "GGG"),
    ("GGR", "RRG"),
    ("GRG", "RGR"),
)

HARDY_TYPE = SystemType((("X1", "X2"), ("Y1", "Y2")), (("R", "G"), ("R", "G")))
HARDY_POSSIBLE = ((("X1", "Y1"), ("R", "R")),)
HARDY_IMPOSSIBLE = (
    (("X1", "Y2"), ("R", "R")),
    (("X2", "Y1"), ("R", "R")),
    (("X2", "Y2"), ("G", "G")),
)

KS_LABELS = tuple(f"m{k}" for k in range(1, 19))
KS_TYPE = SystemType.uniform(4, KS_LABELS, ["0", "1"])
KS_COLUMNS = (
    ("m1", "m2", "m3", "m4"),
    ("m1", "m5", "m6", "m7"),
    ("m8", "m9", "m3", "m10"),
    ("m8", "m11", "m7", "m12"),
    ("m2", "m5", "m13", "m14"),
    ("m9", "m11", "m14", "m15"),
    ("m16", "m17", "m4", "m10"),
    ("m16", "m18", "m6", "m12"),
    ("m17", "m18", "m13", "m15"),
)
KS_Q = tuple(tuple("1" if j == k else "0" for j in range(4)) for k in range(4))

PR_TYPE = SystemType.uniform(2, ["0", "1"], ["0", "1"])


def epr_model() -> EmpiricalModel:
    st = SystemType((("X",), ("Y",)), (("a", "b"), ("a", "b")))
    return EmpiricalModel.from_labels(st, [(("X", "Y"), ("a", "b")), (("X", "Y"), ("b", "a"))])


def ghz_model(extension: Optional[Mapping[Sequence[str], Iterable[Sequence[str]]]] = None) -> EmpiricalModel:
    """GHZ model: fixed on P ∪ {111}, ``extension`` gives rows for any other measurement."""
    rows: Dict[Labels, set] = {m: set(GHZ_P_OUTCOMES) for m in GHZ_P}
    rows[("1", "1", "1")] = set(GHZ_111_OUTCOMES)
    for m, outcomes in (extension or {}).items():
        m = tuple(m)
        outcomes = {tuple(o) for o in outcomes}
        if m in rows:
            if outcomes != rows[m]:
                raise ConflictError(f"extension row {m} contradicts the fixed GHZ row")
            continue
        rows[m] = outcomes
    return EmpiricalModel.from_labels(GHZ_TYPE, [(m, o) for m, outcomes in rows.items() for o in outcomes])


def mermin_instruction_table() -> List[LocalGridFamily]:
    return [
        LocalGridFamily.from_labels(GHZ_TYPE, [{"1": top[i], "2": bottom[i]} for i in range(3)])
        for top, bottom in MERMIN_INSTRUCTIONS
    ]


def hardy_model(free: Optional[Iterable[Tuple[Sequence[str], Sequence[str]]]] = None) -> EmpiricalModel:
    """Hardy model; ``free`` lists the possible cells outside the four fixed ones.

    By default every unconstrained cell is possible.
    """
    fixed = {(m, o) for m, o in HARDY_POSSIBLE + HARDY_IMPOSSIBLE}
    if free is None:
        cells = {
            (HARDY_TYPE.decode_measurement(m), HARDY_TYPE.decode_outcome(o))
            for m in HARDY_TYPE.joint_measurements()
            for o in HARDY_TYPE.joint_outcomes()
        }
        free = cells - fixed
    else:
        free = {(tuple(m), tuple(o)) for m, o in free}
        clash = sorted(free & fixed)
        if clash:
            raise ConflictError(f"cell {clash[0]} is fixed by the Hardy conditions")

    e = EmpiricalModel.from_labels(HARDY_TYPE, set(HARDY_POSSIBLE) | free)
    if not e.is_total():
        missing = sorted(set(HARDY_TYPE.joint_measurements()) - set(e.domain()))[0]
        raise ConflictError(
            f"completion is not total: {HARDY_TYPE.decode_measurement(missing)} has no possible outcome"
        )
    return e


def ks_table() -> Tuple[Labels, ...]:
    return KS_COLUMNS


def ks_assignment(positions: Sequence[int]) -> Dict[Labels, Labels]:
    """f : P → Q putting the single 1 of column k at row ``positions[k]``."""
    if len(positions) != len(KS_COLUMNS):
        raise ModelTypeError(f"expected {len(KS_COLUMNS)} positions, got {len(positions)}")
    return {column: KS_Q[k] for column, k in zip(KS_COLUMNS, positions)}


def ks_model(f: Optional[Mapping[Sequence[str], Sequence[str]]] = None, extension_policy: str = "orbit") -> EmpiricalModel:
    """KS model: e agrees with f on the table columns and is equivariant.

    Only the orbit closure of f's graph is possible; every other row is empty.
    """
    if extension_policy != "orbit":
        raise ConflictError(f"unknown extension policy {extension_policy!r}")
    f = ks_assignment([0] * len(KS_COLUMNS)) if f is None else {tuple(k): tuple(v) for k, v in f.items()}
    if set(f) != set(KS_COLUMNS):
        raise ConflictError("f must be defined on exactly the nine table columns")

    cells = set()
    for column, value in f.items():
        if value not in KS_Q:
            raise ConflictError(f"f{column} = {value} is not one of the one-hot outcomes")
        for permutation in permutations(range(4)):
            cells.add((act(permutation, column, KS_TYPE), act(permutation, value, KS_TYPE)))
    return EmpiricalModel.from_labels(KS_TYPE, cells)


def ks_parity(f: Optional[Mapping[Sequence[str], Sequence[str]]] = None) -> Dict[str, object]:
    """Parity bookkeeping behind the KS contradiction.

    Each column carries exactly one 1, so the table holds an odd number of
    ones; a non-contextual assignment counts every label twice, so its count
    is even. The labels f assigns both values are reported as contextual.
    """
    f = ks_assignment([0] * len(KS_COLUMNS)) if f is None else {tuple(k): tuple(v) for k, v in f.items()}
    values: Dict[str, set] = {}
    ones = 0
    for column in KS_COLUMNS:
        for label, value in zip(column, f[column]):
            values.setdefault(label, set()).add(value)
            ones += value == "1"
    occurrences = {label: sum(column.count(label) for column in KS_COLUMNS) for label in KS_LABELS}
    return {
        "ones": ones,
        "ones_odd": ones % 2 == 1,
        "occurrences": occurrences,
        "contextual_labels": sorted((label for label, v in values.items() if len(v) > 1), key=KS_LABELS.index),
    }


def noncontextual_count(valuation: Mapping[str, int]) -> int:
    """Number of ones a global label valuation puts on the table; always even."""
    return sum(int(valuation[label]) for column in KS_COLUMNS for label in column)


def ns_counterexample_4x4() -> EmpiricalModel:
    st = SystemType((("X1", "X2"), ("Y1", "Y2")), (("a1", "a2"), ("b1", "b2")))
    outcomes = [("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2")]
    table = {
        ("X1", "Y1"): (1, 1, 0, 1),
        ("X1", "Y2"): (1, 0, 1, 1),
        ("X2", "Y1"): (1, 0, 1, 1),
        ("X2", "Y2"): (1, 1, 0, 1),
    }
    return EmpiricalModel.from_labels(st, [(m, o) for m, row in table.items() for o, bit in zip(outcomes, row) if bit])


def ns_counterexample_tripartite() -> EmpiricalModel:
    st = SystemType((("X",), ("Y",), ("Z1", "Z2")), (("a1", "a2"), ("b1", "b2"), ("c",)))
    table = {
        ("X", "Y", "Z1"): [("a1", "b1", "c"), ("a1", "b2", "c"), ("a2", "b2", "c")],
        ("X", "Y", "Z2"): [("a1", "b1", "c"), ("a2", "b1", "c"), ("a2", "b2", "c")],
    }
    return EmpiricalModel.from_labels(st, [(m, o) for m, row in table.items() for o in row])


def _pr_cells() -> List[Tuple[Labels, Labels]]:
    return [
        ((str(x), str(y)), (str(a), str(b)))
        for x, y, a, b in product((0, 1), repeat=4)
        if a ^ b == x * y
    ]


def pr_box_relational() -> EmpiricalModel:
    return EmpiricalModel.from_labels(PR_TYPE, _pr_cells())


def pr_box_probabilistic() -> ProbEmpiricalModel:
    """PR box with uniform measurement prior: each support cell weighs 1/4 · 1/2."""
    return ProbEmpiricalModel.from_labels(PR_TYPE, [(m, o, Fraction(1, 8)) for m, o in _pr_cells()])


BUILTINS: Dict[str, Callable[[], object]] = {
    "epr": epr_model,
    "ghz": ghz_model,
    "hardy": hardy_model,
    "ks": ks_model,
    "ns4x4": ns_counterexample_4x4,
    "ns3": ns_counterexample_tripartite,
    "pr": pr_box_relational,
    "pr-prob": pr_box_probabilistic,
}
