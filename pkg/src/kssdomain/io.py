"""JSON reading and writing.  Every number crosses the boundary as an exact
rational string."""

from __future__ import annotations

import json
from pathlib import Path

from .domains import Model, ValuationTable, make_table
from .errors import InputError
from .exact import qvec, rat
from .polytope import Halfspace
from .toric import validate_model

_TORIC_KEYS = {"kind", "name", "dim", "rays", "divisors"}
_TABLE_KEYS = {"kind", "name", "k", "rows", "lc_halfspaces", "certified"}


def _reject_unknown(obj: dict, allowed: set, what: str) -> None:
    extra = set(obj) - allowed
    if extra:
        raise InputError(f"unknown keys in {what}: {sorted(extra)}")


def _require(obj: dict, key: str, what: str):
    if key not in obj:
        raise InputError(f"{what} is missing {key!r}")
    return obj[key]


def model_from_json(obj: dict, default_name: str = "model") -> Model:
    if not isinstance(obj, dict):
        raise InputError("model must be a JSON object")
    kind = obj.get("kind")
    name = obj.get("name", default_name)
    if kind == "toric":
        _reject_unknown(obj, _TORIC_KEYS, "toric model")
        rays = _require(obj, "rays", "toric model")
        if not isinstance(rays, list) or not all(isinstance(r, list) for r in rays):
            raise InputError("rays must be a list of integer lists")
        if any(not isinstance(c, int) or isinstance(c, bool) for r in rays for c in r):
            raise InputError("ray entries must be JSON integers")
        if "dim" in obj and any(len(r) != obj["dim"] for r in rays):
            raise InputError("ray length does not match dim")
        divisors = []
        for j, D in enumerate(obj.get("divisors", [])):
            _reject_unknown(D, {"name", "coeffs"}, "divisor")
            divisors.append((str(D.get("name", f"D{j + 1}")), qvec(_require(D, "coeffs", "divisor"))))
        return validate_model(rays, divisors, name=name)
    if kind == "table":
        _reject_unknown(obj, _TABLE_KEYS, "valuation table")
        rows = []
        for r in _require(obj, "rows", "valuation table"):
            _reject_unknown(r, {"label", "A", "S", "ord"}, "table row")
            rows.append((_require(r, "label", "row"), rat(_require(r, "A", "row")), rat(_require(r, "S", "row")), qvec(_require(r, "ord", "row"))))
        lc = [Halfspace.from_json(h) for h in obj.get("lc_halfspaces", [])]
        certified = obj.get("certified", False)
        if not isinstance(certified, bool):
            raise InputError("certified must be a boolean")
        return make_table(_require(obj, "k", "valuation table"), rows, lc, certified, name)
    raise InputError(f"unknown model kind {kind!r}")


def model_to_json(model: Model) -> dict:
    return model.to_json()


def _read_json(path: Path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def load_model(path) -> Model:
    path = Path(path)
    return model_from_json(_read_json(path), default_name=path.stem)


def load_family(path) -> list[Model]:
    path = Path(path)
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise InputError("family must be a JSON object")
    _reject_unknown(obj, {"models"}, "family")
    models = []
    for entry in _require(obj, "models", "family"):
        if isinstance(entry, str):
            models.append(load_model(path.parent / entry))
        else:
            models.append(model_from_json(entry, default_name=f"model{len(models)}"))
    return models


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def table_from_json(obj: dict) -> ValuationTable:
    m = model_from_json(obj)
    if not isinstance(m, ValuationTable):
        raise InputError("expected a valuation table")
    return m
