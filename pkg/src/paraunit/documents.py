"""JSON document format shared by the command-line tools.

Every file is one JSON object ``{"format_version": "paraunit/1", "kind":
..., "payload": ...}``.  Complex scalars are two-element ``[re, im]``
arrays; matrices are row-major nested arrays with explicit ``rows`` and
``cols`` fields.  Numbers survive a write/read round trip bit-exactly.
"""

from __future__ import annotations

import json

import numpy as np

from .analysis import Certificate
from .errors import DocumentError
from .fit import SampleSet
from .forms import (
    BlaschkePotapovForm,
    LaurentPolyForm,
    MFDForm,
    Pole,
    StateSpaceRealization,
)
from .params import ParaunitaryParam, PoleParam

FORMAT_VERSION = "paraunit/1"
KINDS = ("bp", "ss", "mfd", "laurent", "params", "samples", "report")


def _encode_complex(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _encode_matrix(a) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a[:, None]
    rows, cols = a.shape
    entries = [[_encode_complex(a[i, j]) for j in range(cols)] for i in range(rows)]
    return {"rows": rows, "cols": cols, "entries": entries}


def _decode_complex(value, path: str) -> complex:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) for x in value)
    ):
        raise DocumentError(f"{path}: expected a [re, im] pair, got {value!r}")
    return complex(float(value[0]), float(value[1]))


def _decode_matrix(value, path: str) -> np.ndarray:
    if not isinstance(value, dict):
        raise DocumentError(f"{path}: expected a matrix object")
    for key in ("rows", "cols", "entries"):
        if key not in value:
            raise DocumentError(f"{path}.{key}: missing field")
    rows, cols = value["rows"], value["cols"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 0 or cols < 0:
        raise DocumentError(f"{path}: rows/cols must be non-negative integers")
    entries = value["entries"]
    if not isinstance(entries, list) or len(entries) != rows:
        raise DocumentError(f"{path}.entries: expected {rows} rows")
    out = np.zeros((rows, cols), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"{path}.entries[{i}]: expected {cols} entries")
        for j, cell in enumerate(row):
            out[i, j] = _decode_complex(cell, f"{path}.entries[{i}][{j}]")
    return out


def _encode_pole(pole: Pole) -> dict:
    if pole.is_infinity:
        return {"type": "infinity"}
    return {"type": "finite", "value": _encode_complex(pole.value)}


def _decode_pole(value, path: str) -> Pole:
    if not isinstance(value, dict) or "type" not in value:
        raise DocumentError(f"{path}: expected a pole object with a 'type' field")
    if value["type"] == "infinity":
        return Pole.infinity()
    if value["type"] == "finite":
        if "value" not in value:
            raise DocumentError(f"{path}.value: missing field")
        return Pole(_decode_complex(value["value"], f"{path}.value"))
    raise DocumentError(f"{path}.type: unknown pole type {value['type']!r}")


def kind_of(obj) -> str:
    """Document kind string for a serializable object."""
    if isinstance(obj, BlaschkePotapovForm):
        return "bp"
    if isinstance(obj, StateSpaceRealization):
        return "ss"
    if isinstance(obj, MFDForm):
        return "mfd"
    if isinstance(obj, LaurentPolyForm):
        return "laurent"
    if isinstance(obj, ParaunitaryParam):
        return "params"
    if isinstance(obj, SampleSet):
        return "samples"
    if isinstance(obj, (list, tuple)) and all(isinstance(c, Certificate) for c in obj):
        return "report"
    raise DocumentError(f"cannot serialize object of type {type(obj).__name__}")


def encode_document(obj) -> dict:
    kind = kind_of(obj)
    if kind == "bp":
        payload = {
            "side": obj.side,
            "p": obj.p,
            "m": obj.m,
            "factors": [
                {"pole": _encode_pole(pole), "direction": _encode_matrix(v)}
                for pole, v in obj.factors
            ],
            "constant": _encode_matrix(obj.constant),
        }
    elif kind == "ss":
        payload = {
            "a": _encode_matrix(obj.a),
            "b": _encode_matrix(obj.b),
            "c": _encode_matrix(obj.c),
            "d": _encode_matrix(obj.d),
        }
    elif kind == "mfd":
        payload = {
            "side": obj.side,
            "num": [_encode_matrix(x) for x in obj.num],
            "den": [_encode_matrix(x) for x in obj.den],
        }
    elif kind == "laurent":
        payload = {"q": obj.q, "coeffs": [_encode_matrix(x) for x in obj.coeffs]}
    elif kind == "params":
        poles = []
        for pole in obj.poles:
            entry = {"kind": pole.kind}
            if pole.kind == "polar":
                entry["r"] = pole.r
                entry["theta"] = pole.theta
            poles.append(entry)
        payload = {
            "side": obj.side,
            "p": obj.p,
            "m": obj.m,
            "d": obj.d,
            "poles": poles,
            "directions": [list(row) for row in obj.directions],
            "frame": list(obj.frame),
        }
    elif kind == "samples":
        payload = {
            "points": [
                {"z": _encode_complex(z), "value": _encode_matrix(g)}
                for z, g in obj.pairs()
            ]
        }
    else:
        payload = {
            "certificates": [
                {
                    "name": c.name,
                    "residual": c.residual,
                    "tolerance": c.tolerance,
                    "verdict": c.verdict,
                }
                for c in obj
            ]
        }
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": payload}


def _payload_field(payload, key, path="payload"):
    if key not in payload:
        raise DocumentError(f"{path}.{key}: missing field")
    return payload[key]


def decode_document(data: dict):
    """Rebuild the typed object from a parsed document dictionary."""
    if not isinstance(data, dict):
        raise DocumentError("document root must be a JSON object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise DocumentError(f"format_version: expected {FORMAT_VERSION!r}, got {version!r}")
    kind = data.get("kind")
    if kind not in KINDS:
        raise DocumentError(f"kind: expected one of {KINDS}, got {kind!r}")
    payload = data.get("payload")
    if not isinstance(payload, dict):
        raise DocumentError("payload: missing or not an object")
    if kind == "bp":
        factors = []
        for i, item in enumerate(_payload_field(payload, "factors")):
            pole = _decode_pole(_payload_field(item, "pole", f"payload.factors[{i}]"), f"payload.factors[{i}].pole")
            direction = _decode_matrix(
                _payload_field(item, "direction", f"payload.factors[{i}]"),
                f"payload.factors[{i}].direction",
            )
            factors.append((pole, direction.reshape(-1)))
        return BlaschkePotapovForm(
            _payload_field(payload, "side"),
            _payload_field(payload, "p"),
            _payload_field(payload, "m"),
            factors,
            _decode_matrix(_payload_field(payload, "constant"), "payload.constant"),
        )
    if kind == "ss":
        return StateSpaceRealization(
            _decode_matrix(_payload_field(payload, "a"), "payload.a"),
            _decode_matrix(_payload_field(payload, "b"), "payload.b"),
            _decode_matrix(_payload_field(payload, "c"), "payload.c"),
            _decode_matrix(_payload_field(payload, "d"), "payload.d"),
        )
    if kind == "mfd":
        return MFDForm(
            _payload_field(payload, "side"),
            [
                _decode_matrix(x, f"payload.num[{i}]")
                for i, x in enumerate(_payload_field(payload, "num"))
            ],
            [
                _decode_matrix(x, f"payload.den[{i}]")
                for i, x in enumerate(_payload_field(payload, "den"))
            ],
        )
    if kind == "laurent":
        return LaurentPolyForm(
            _payload_field(payload, "q"),
            [
                _decode_matrix(x, f"payload.coeffs[{i}]")
                for i, x in enumerate(_payload_field(payload, "coeffs"))
            ],
        )
    if kind == "params":
        poles = []
        for i, entry in enumerate(_payload_field(payload, "poles")):
            pole_kind = _payload_field(entry, "kind", f"payload.poles[{i}]")
            if pole_kind == "polar":
                poles.append(
                    PoleParam.polar(
                        _payload_field(entry, "r", f"payload.poles[{i}]"),
                        _payload_field(entry, "theta", f"payload.poles[{i}]"),
                    )
                )
            elif pole_kind == "zero":
                poles.append(PoleParam.zero())
            elif pole_kind == "infinity":
                poles.append(PoleParam.infinity())
            else:
                raise DocumentError(f"payload.poles[{i}].kind: unknown kind {pole_kind!r}")
        return ParaunitaryParam(
            _payload_field(payload, "side"),
            _payload_field(payload, "p"),
            _payload_field(payload, "m"),
            _payload_field(payload, "d"),
            tuple(poles),
            tuple(tuple(row) for row in _payload_field(payload, "directions")),
            tuple(_payload_field(payload, "frame")),
        )
    if kind == "samples":
        pairs = []
        for i, point in enumerate(_payload_field(payload, "points")):
            z = _decode_complex(_payload_field(point, "z", f"payload.points[{i}]"), f"payload.points[{i}].z")
            value = _decode_matrix(
                _payload_field(point, "value", f"payload.points[{i}]"),
                f"payload.points[{i}].value",
            )
            pairs.append((z, value))
        return SampleSet(pairs)
    certificates = []
    for i, entry in enumerate(_payload_field(payload, "certificates")):
        certificates.append(
            Certificate(
                _payload_field(entry, "name", f"payload.certificates[{i}]"),
                _payload_field(entry, "residual", f"payload.certificates[{i}]"),
                _payload_field(entry, "tolerance", f"payload.certificates[{i}]"),
            )
        )
    return certificates


def write_document(path, obj) -> None:
    """Serialize ``obj`` to ``path`` as a document of its natural kind."""
    data = encode_document(obj)
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(data, handle, indent=1)
        handle.write("\n")


def read_document(path):
    """Load and rebuild the typed object stored at ``path``."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise DocumentError(
                f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
            ) from exc
    try:
        return decode_document(data)
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from exc
