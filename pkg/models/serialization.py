"""JSON file format for relational, probabilistic and quantum models."""

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator

from .errors import ModelFormatError, ModelTypeError
from .probabilistic import ProbEmpiricalModel, ProbHVModel
from .quantum_runner import QuantumRealization
from .relational import EmpiricalModel, HiddenVariableModel
from .system_type import SystemType

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

AnyModel = Union[EmpiricalModel, HiddenVariableModel, ProbEmpiricalModel, ProbHVModel]

ComplexEntry = Tuple[float, float]


class SupportEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    m: List[str]
    o: List[str]
    l: Optional[str] = None
    p: Optional[str] = None

    @field_validator("p")
    @classmethod
    def _rational(cls, value):
        if value is not None and not _RATIONAL.match(value.strip()):
            raise ValueError(f"{value!r} is not a rational of the form num/den")
        return value


class ModelFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["empirical", "hidden", "probabilistic", "probabilistic_hidden"]
    measurements: List[List[str]]
    outcomes: List[List[str]]
    lambdas: Optional[List[str]] = None
    support: List[SupportEntry] = []


class OperatorEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    site: int
    measurement: str
    outcome: str
    matrix: List[List[ComplexEntry]]


class QuantumFile(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["quantum"]
    dims: List[int]
    measurements: List[List[str]]
    outcomes: List[List[str]]
    operators: List[OperatorEntry]
    state: List[List[ComplexEntry]]


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc


def _validation_message(exc: ValidationError) -> str:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}" if location else first["msg"]


def _system_type(measurements, outcomes) -> SystemType:
    try:
        return SystemType(tuple(map(tuple, measurements)), tuple(map(tuple, outcomes)))
    except ModelTypeError as exc:
        raise ModelFormatError(str(exc)) from exc


def parse_model(text: str) -> AnyModel:
    """Parse the JSON text of an empirical, hidden-variable or probabilistic model."""
    data = _load_json(text)
    if isinstance(data, dict) and "verdict" in data and "model" in data:
        data = data["model"]
    try:
        spec = ModelFile.model_validate(data)
    except ValidationError as exc:
        raise ModelFormatError(_validation_message(exc)) from exc

    st = _system_type(spec.measurements, spec.outcomes)
    hidden = spec.kind in ("hidden", "probabilistic_hidden")
    weighted = spec.kind in ("probabilistic", "probabilistic_hidden")
    if hidden and not spec.lambdas:
        raise ModelFormatError(f"a {spec.kind} model needs a nonempty 'lambdas' list")
    if not hidden and spec.lambdas is not None:
        raise ModelFormatError(f"a {spec.kind} model does not take 'lambdas'")

    seen = set()
    entries = []
    for position, entry in enumerate(spec.support):
        if hidden != (entry.l is not None):
            raise ModelFormatError(f"support[{position}]: 'l' is {'required' if hidden else 'not allowed'}")
        if weighted != (entry.p is not None):
            raise ModelFormatError(f"support[{position}]: 'p' is {'required' if weighted else 'not allowed'}")
        key = (tuple(entry.m), tuple(entry.o), entry.l)
        if key in seen:
            raise ModelFormatError(f"support[{position}]: duplicate tuple {key}")
        seen.add(key)
        entries.append((position, entry))

    try:
        if spec.kind == "empirical":
            return EmpiricalModel.from_labels(st, [(e.m, e.o) for _, e in entries])
        if spec.kind == "hidden":
            return HiddenVariableModel.from_labels(st, spec.lambdas, [(e.m, e.o, e.l) for _, e in entries])
        if spec.kind == "probabilistic":
            return ProbEmpiricalModel.from_labels(st, [(e.m, e.o, Fraction(e.p.strip())) for _, e in entries])
        return ProbHVModel.from_labels(st, spec.lambdas, [(e.m, e.o, e.l, Fraction(e.p.strip())) for _, e in entries])
    except ModelFormatError:
        raise
    except (ModelTypeError, ZeroDivisionError) as exc:
        raise ModelFormatError(str(exc)) from exc


def _rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def model_to_dict(model: AnyModel) -> Dict[str, Any]:
    st = model.system_type
    data: Dict[str, Any] = {
        "measurements": [list(site) for site in st.measurements],
        "outcomes": [list(site) for site in st.outcomes],
    }
    if isinstance(model, EmpiricalModel):
        data["kind"] = "empirical"
        data["support"] = [{"m": list(m), "o": list(o)} for m, o in model.labelled_cells()]
    elif isinstance(model, HiddenVariableModel):
        data["kind"] = "hidden"
        data["lambdas"] = list(model.lambdas)
        data["support"] = [{"m": list(m), "o": list(o), "l": lam} for m, o, lam in model.labelled_cells()]
    elif isinstance(model, ProbEmpiricalModel):
        data["kind"] = "probabilistic"
        data["support"] = [
            {"m": list(st.decode_measurement(m)), "o": list(st.decode_outcome(o)), "p": _rational(model.weights[(m, o)])}
            for m, o in model.cells()
        ]
    elif isinstance(model, ProbHVModel):
        data["kind"] = "probabilistic_hidden"
        data["lambdas"] = list(model.lambdas)
        data["support"] = [
            {
                "m": list(st.decode_measurement(m)),
                "o": list(st.decode_outcome(o)),
                "l": model.lambdas[lam],
                "p": _rational(model.weights[(m, o, lam)]),
            }
            for m, o, lam in model.cells()
        ]
    else:
        raise ModelTypeError(f"cannot serialize {type(model).__name__}")
    return data


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize_model(model: AnyModel) -> str:
    """Canonical JSON text: sorted keys and support in index order."""
    return dumps(model_to_dict(model))


def serialize_verdict(verdict: Dict[str, Any], model: Optional[AnyModel] = None) -> str:
    """A certificate or witness wrapped together with the model it refers to."""
    data: Dict[str, Any] = {"verdict": verdict}
    if model is not None:
        data["model"] = model_to_dict(model)
    return dumps(data)


def _matrix(rows: List[List[ComplexEntry]]) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def _entries(matrix: np.ndarray) -> List[List[List[float]]]:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(matrix)]


def parse_quantum(text: str) -> QuantumRealization:
    data = _load_json(text)
    try:
        spec = QuantumFile.model_validate(data)
    except ValidationError as exc:
        raise ModelFormatError(_validation_message(exc)) from exc

    st = _system_type(spec.measurements, spec.outcomes)
    operators = {}
    try:
        for position, entry in enumerate(spec.operators):
            key = (entry.site, st.measurement_index(entry.site, entry.measurement), st.outcome_index(entry.site, entry.outcome))
            if key in operators:
                raise ModelFormatError(f"operators[{position}]: duplicate operator")
            operators[key] = _matrix(entry.matrix)
        return QuantumRealization(st, tuple(spec.dims), operators, _matrix(spec.state))
    except ModelTypeError as exc:
        raise ModelFormatError(str(exc)) from exc


def serialize_quantum(realization: QuantumRealization) -> str:
    st = realization.system_type
    operators = [
        {
            "site": site,
            "measurement": st.measurements[site][m],
            "outcome": st.outcomes[site][o],
            "matrix": _entries(realization.operators[(site, m, o)]),
        }
        for site, m, o in sorted(realization.operators)
    ]
    return dumps(
        {
            "kind": "quantum",
            "dims": list(realization.dims),
            "measurements": [list(site) for site in st.measurements],
            "outcomes": [list(site) for site in st.outcomes],
            "operators": operators,
            "state": _entries(realization.state),
        }
    )


def load_model(path: Union[str, Path]) -> AnyModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"{path} is not UTF-8 text: {exc.reason} at byte {exc.start}") from exc
    return parse_model(text)


def load_quantum(path: Union[str, Path]) -> QuantumRealization:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc.strerror}") from exc
    except UnicodeDecodeError as exc:
        raise ModelFormatError(f"{path} is not UTF-8 text: {exc.reason} at byte {exc.start}") from exc
    return parse_quantum(text)
