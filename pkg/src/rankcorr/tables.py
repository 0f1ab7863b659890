"""Distribution-parameter tables: lookup, serialization, bundled data.

A table holds one entry per weighted configuration.  Each entry stores the
exact parameters for n = 3..10 plus three regression models (mean,
variance, left variance) for larger lengths.  Unweighted coefficients
never need a table: their null distribution is symmetric, so the mean is
0, the variance has a closed form, and the left variance is half the
variance.

The JSON format stores every real number as a decimal string, so a table
round-trips through serialization without any change, bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .coefficients import (
    CoefficientConfig,
    CoefficientKind,
    WeightFunction,
    WeightKind,
    WeightScheme,
)
from .errors import (
    InvalidLengthError,
    SchemaError,
    UnknownConfigError,
    VersionMismatchError,
)
from .estimate import N_EXACT, LengthTransform, RegressionModel
from .standardize import DistributionParams

FORMAT_VERSION = 1

_EXACT_RANGE = tuple(range(3, N_EXACT + 1))


class Provenance(Enum):
    """Where looked-up parameters came from."""

    EXACT = "exact"
    SYMMETRIC = "symmetric"
    REGRESSION = "regression"
    EXTRAPOLATED = "extrapolated"


@dataclass(frozen=True)
class ParameterEntry:
    """Table entry for one coefficient configuration.

    The bundled table only carries weighted configurations (unweighted
    ones never need it), but estimation runs may produce and store
    unweighted entries too, e.g. as a symmetry check.
    """

    config: CoefficientConfig
    exact: Mapping[int, DistributionParams]
    gamma: RegressionModel
    variance: RegressionModel
    left_variance: RegressionModel
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if tuple(sorted(self.exact)) != _EXACT_RANGE:
            missing = sorted(set(_EXACT_RANGE) - set(self.exact))
            extra = sorted(set(self.exact) - set(_EXACT_RANGE))
            raise SchemaError(
                f"exact cells must cover n = 3..{N_EXACT}; "
                f"missing {missing}, unexpected {extra}"
            )


@dataclass(frozen=True)
class ParameterTable:
    entries: tuple[ParameterEntry, ...]
    notes: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for entry in self.entries:
            if entry.config in seen:
                raise SchemaError(
                    f"duplicate table entry for {entry.config.describe()}"
                )
            seen.add(entry.config)

    def find(self, config: CoefficientConfig) -> ParameterEntry:
        for entry in self.entries:
            if entry.config == config:
                return entry
        raise UnknownConfigError(f"no table entry for {config.describe()}")


def evaluate_model(model: RegressionModel, n: int) -> tuple[float, bool]:
    """Model value at length n plus a flag marking extrapolation beyond
    the trained range."""
    value = model.predict(n)
    extrapolated = model.n_max is not None and n > model.n_max
    return value, extrapolated


def unweighted_params(kind: CoefficientKind, n: int) -> DistributionParams:
    """Closed-form null moments of the classical coefficients.

    Both distributions are symmetric about 0, so the left variance is
    half the variance.
    """
    if n < 2:
        raise InvalidLengthError("need n >= 2")
    if kind is CoefficientKind.SPEARMAN:
        variance = 1.0 / (n - 1)
    else:
        variance = 2.0 * (2 * n + 5) / (9.0 * n * (n - 1))
    return DistributionParams(0.0, variance, variance / 2.0)


def lookup_params(
    config: CoefficientConfig,
    n: int,
    table: ParameterTable | None = None,
) -> tuple[DistributionParams, Provenance]:
    """Null-distribution parameters for a configuration at length n.

    Resolution order: symmetric closed forms (unweighted configurations,
    or any configuration at n = 2), exact cells (n <= 10), regression
    models (n > 10, flagged when beyond the trained range).
    """
    if n < 2:
        raise InvalidLengthError(f"need n >= 2, got {n}")
    if not config.weighted:
        return unweighted_params(config.kind, n), Provenance.SYMMETRIC
    if n == 2:
        # One possible exchange: the distribution is two points at -1, 1
        # for every weighting.
        return DistributionParams(0.0, 1.0, 0.5), Provenance.SYMMETRIC
    entry = (table if table is not None else bundled_table()).find(config)
    if n <= N_EXACT:
        return entry.exact[n], Provenance.EXACT
    gamma, flag_g = evaluate_model(entry.gamma, n)
    variance, flag_v = evaluate_model(entry.variance, n)
    left, flag_l = evaluate_model(entry.left_variance, n)
    provenance = (
        Provenance.EXTRAPOLATED
        if (flag_g or flag_v or flag_l)
        else Provenance.REGRESSION
    )
    return DistributionParams(gamma, variance, left), provenance


# ---------------------------------------------------------------------------
# serialization


def _format_float(value: float) -> str:
    # repr of a Python float is the shortest string that parses back to
    # the same bits, which keeps the file minimal and round-trip exact.
    return repr(float(value))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def _parse_decimal(value: Any, where: str) -> float:
    _require(isinstance(value, str), f"{where}: numbers must be decimal strings")
    try:
        return float(value)
    except ValueError as exc:
        raise SchemaError(f"{where}: not a decimal number: {value!r}") from exc


def _config_to_json(config: CoefficientConfig) -> dict[str, Any]:
    if not config.weighted:
        return {
            "coefficient": config.kind.value,
            "scheme": None,
            "weight_function": None,
        }
    return {
        "coefficient": config.kind.value,
        "scheme": config.scheme.value,
        "weight_function": {
            "kind": config.weight_function.kind.value,
            "n0": config.weight_function.n0,
        },
    }


def _config_from_json(obj: Mapping[str, Any], where: str) -> CoefficientConfig:
    _require("coefficient" in obj, f"{where}: missing 'coefficient'")
    _require("scheme" in obj, f"{where}: missing 'scheme'")
    _require("weight_function" in obj, f"{where}: missing 'weight_function'")
    try:
        kind = CoefficientKind(obj["coefficient"])
    except ValueError as exc:
        raise SchemaError(f"{where}: unknown coefficient {obj['coefficient']!r}") from exc
    if obj["scheme"] is None and obj["weight_function"] is None:
        return CoefficientConfig(kind)
    try:
        scheme = WeightScheme(obj["scheme"])
    except ValueError as exc:
        raise SchemaError(f"{where}: unknown scheme {obj['scheme']!r}") from exc
    wf = obj["weight_function"]
    _require(isinstance(wf, dict), f"{where}: weight_function must be an object")
    try:
        wkind = WeightKind(wf.get("kind"))
    except ValueError as exc:
        raise SchemaError(f"{where}: unknown weight kind {wf.get('kind')!r}") from exc
    n0 = wf.get("n0", 0)
    _require(isinstance(n0, int) and not isinstance(n0, bool), f"{where}: n0 must be an integer")
    return CoefficientConfig(kind, WeightFunction(wkind, n0), scheme)


def _params_to_json(params: DistributionParams) -> dict[str, str]:
    return {
        "gamma_bar": _format_float(params.gamma_bar),
        "variance": _format_float(params.variance),
        "left_variance": _format_float(params.left_variance),
    }


def _params_from_json(obj: Any, where: str) -> DistributionParams:
    _require(isinstance(obj, dict), f"{where}: cell must be an object")
    for key in ("gamma_bar", "variance", "left_variance"):
        _require(key in obj, f"{where}: missing '{key}'")
    try:
        return DistributionParams(
            _parse_decimal(obj["gamma_bar"], where),
            _parse_decimal(obj["variance"], where),
            _parse_decimal(obj["left_variance"], where),
        )
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(f"{where}: invalid parameters: {exc}") from exc


def _model_to_json(model: RegressionModel) -> dict[str, Any]:
    return {
        "transform": model.transform.value,
        "n_max": model.n_max,
        "coefficients": [_format_float(c) for c in model.coefficients],
    }


def _model_from_json(obj: Any, where: str) -> RegressionModel:
    _require(isinstance(obj, dict), f"{where}: model must be an object")
    for key in ("transform", "n_max", "coefficients"):
        _require(key in obj, f"{where}: missing '{key}'")
    try:
        transform = LengthTransform(obj["transform"])
    except ValueError as exc:
        raise SchemaError(f"{where}: unknown transform {obj['transform']!r}") from exc
    n_max = obj["n_max"]
    if n_max is not None:
        _require(
            isinstance(n_max, int) and not isinstance(n_max, bool) and n_max >= 2,
            f"{where}: n_max must be null or an integer >= 2",
        )
    coeffs = obj["coefficients"]
    _require(isinstance(coeffs, list) and coeffs, f"{where}: coefficients must be a non-empty list")
    values = tuple(_parse_decimal(c, where) for c in coeffs)
    return RegressionModel(transform, values, n_max)


def _entry_to_json(entry: ParameterEntry) -> dict[str, Any]:
    obj = _config_to_json(entry.config)
    obj["exact"] = {str(n): _params_to_json(entry.exact[n]) for n in _EXACT_RANGE}
    obj["models"] = {
        "gamma": _model_to_json(entry.gamma),
        "variance": _model_to_json(entry.variance),
        "left_variance": _model_to_json(entry.left_variance),
    }
    if entry.notes:
        obj["notes"] = list(entry.notes)
    return obj


def _entry_from_json(obj: Any, index: int) -> ParameterEntry:
    where = f"entries[{index}]"
    _require(isinstance(obj, dict), f"{where}: entry must be an object")
    config = _config_from_json(obj, where)
    _require("exact" in obj, f"{where}: missing 'exact'")
    exact_obj = obj["exact"]
    _require(isinstance(exact_obj, dict), f"{where}: exact must be an object")
    expected = {str(n) for n in _EXACT_RANGE}
    got = set(exact_obj)
    _require(
        got == expected,
        f"{where}: exact cells must be n = 3..{N_EXACT}; "
        f"missing {sorted(expected - got)}, unexpected {sorted(got - expected)}",
    )
    exact = {
        int(k): _params_from_json(v, f"{where}.exact[{k}]")
        for k, v in exact_obj.items()
    }
    _require("models" in obj, f"{where}: missing 'models'")
    models = obj["models"]
    _require(isinstance(models, dict), f"{where}: models must be an object")
    for key in ("gamma", "variance", "left_variance"):
        _require(key in models, f"{where}: missing model '{key}'")
    notes = obj.get("notes", [])
    _require(
        isinstance(notes, list) and all(isinstance(s, str) for s in notes),
        f"{where}: notes must be a list of strings",
    )
    return ParameterEntry(
        config=config,
        exact=exact,
        gamma=_model_from_json(models["gamma"], f"{where}.models.gamma"),
        variance=_model_from_json(models["variance"], f"{where}.models.variance"),
        left_variance=_model_from_json(
            models["left_variance"], f"{where}.models.left_variance"
        ),
        notes=tuple(notes),
    )


def serialize_table(table: ParameterTable) -> str:
    """Canonical JSON text: fixed key order, two-space indent, decimal
    strings for every real number, trailing newline."""
    obj: dict[str, Any] = {"format_version": FORMAT_VERSION}
    if table.notes:
        obj["notes"] = list(table.notes)
    obj["entries"] = [_entry_to_json(e) for e in table.entries]
    return json.dumps(obj, indent=2) + "\n"


def parse_table(text: str) -> ParameterTable:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}") from exc
    _require(isinstance(obj, dict), "top level must be an object")
    _require("format_version" in obj, "missing 'format_version'")
    version = obj["format_version"]
    if version != FORMAT_VERSION:
        raise VersionMismatchError(
            f"unsupported format_version {version!r}; this build reads {FORMAT_VERSION}"
        )
    _require("entries" in obj, "missing 'entries'")
    entries_obj = obj["entries"]
    _require(isinstance(entries_obj, list), "'entries' must be a list")
    notes = obj.get("notes", [])
    _require(
        isinstance(notes, list) and all(isinstance(s, str) for s in notes),
        "notes must be a list of strings",
    )
    entries = tuple(_entry_from_json(e, i) for i, e in enumerate(entries_obj))
    return ParameterTable(entries=entries, notes=tuple(notes))


def load_table(path: str | Path) -> ParameterTable:
    return parse_table(Path(path).read_text(encoding="utf-8"))


def save_table(table: ParameterTable, path: str | Path) -> None:
    Path(path).write_text(serialize_table(table), encoding="utf-8")


_BUNDLED: ParameterTable | None = None


def bundled_table() -> ParameterTable:
    """The parameter table shipped with the package (cached)."""
    global _BUNDLED
    if _BUNDLED is None:
        text = (
            resources.files("rankcorr")
            .joinpath("data/parameter_table.json")
            .read_text(encoding="utf-8")
        )
        _BUNDLED = parse_table(text)
    return _BUNDLED
