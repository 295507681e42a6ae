"""Constructors for the classical families as :class:`SeriesSpec` values.

Group conventions (Srivastava-Karlsson):

* pFq: every parameter has weight ``(1,)``.
* Kampe de Feriet ``F^{p:q;k}_{l:m;n}``: coupled parameters ``(1, 1)``,
  row parameters ``(1, 0)``, column parameters ``(0, 1)``.
* Srivastava-Daoust: the same three groups, but each parameter carries an
  explicit weight pair, so ``[a: 1,2]`` enters as ``(a)_{r+2s}``.
* Srivastava F(3): groups coupled to all three indices, to the index pairs
  (1,2), (2,3), (3,1), and to single indices.  An empty group ("-") is an
  empty list.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidSpec
from .numeric import as_rational
from .series import ArgMonomial, SeriesSpec, WeightedParam, arg_from_json, _rational_field


def _params(values, weights):
    return tuple(WeightedParam(as_rational(v), weights) for v in values)


def _as_arg(arg) -> ArgMonomial:
    if isinstance(arg, ArgMonomial):
        return arg
    coeff, degree = arg
    return ArgMonomial(as_rational(coeff), degree)


def make_pfq(num: Sequence, den: Sequence, arg=ArgMonomial(1, 1)) -> SeriesSpec:
    return SeriesSpec(1, _params(num, (1,)), _params(den, (1,)), (_as_arg(arg),))


@dataclass(frozen=True)
class KdfShape:
    coupled_num: Sequence = ()
    row_num: Sequence = ()
    col_num: Sequence = ()
    coupled_den: Sequence = ()
    row_den: Sequence = ()
    col_den: Sequence = ()
    arg1: ArgMonomial = ArgMonomial(1, 1)
    arg2: ArgMonomial = ArgMonomial(1, 1)


def make_kdf(shape: KdfShape) -> SeriesSpec:
    num = (
        _params(shape.coupled_num, (1, 1))
        + _params(shape.row_num, (1, 0))
        + _params(shape.col_num, (0, 1))
    )
    den = (
        _params(shape.coupled_den, (1, 1))
        + _params(shape.row_den, (1, 0))
        + _params(shape.col_den, (0, 1))
    )
    return SeriesSpec(2, num, den, (_as_arg(shape.arg1), _as_arg(shape.arg2)))


@dataclass(frozen=True)
class SdShape:
    """Double series whose parameters are ``(value, (w1, w2))`` pairs."""

    coupled_num: Sequence = ()
    row_num: Sequence = ()
    col_num: Sequence = ()
    coupled_den: Sequence = ()
    row_den: Sequence = ()
    col_den: Sequence = ()
    arg1: ArgMonomial = ArgMonomial(1, 1)
    arg2: ArgMonomial = ArgMonomial(1, 1)

    GROUPS = ("coupled_num", "row_num", "col_num", "coupled_den", "row_den", "col_den")


def _weighted(group_name, entries):
    out = []
    for i, entry in enumerate(entries):
        if isinstance(entry, WeightedParam):
            value, weights = entry.value, entry.weights
        else:
            value, weights = entry
        weights = tuple(weights)
        if len(weights) != 2:
            raise InvalidSpec(f"{group_name}[{i}] needs a weight pair, got {weights}")
        if not any(weights):
            raise InvalidSpec(f"{group_name}[{i}] (value {value}) has all-zero weights {weights}")
        out.append(WeightedParam(as_rational(value), weights))
    return tuple(out)


def make_sd(shape: SdShape) -> SeriesSpec:
    num = sum((_weighted(g, getattr(shape, g)) for g in SdShape.GROUPS[:3]), ())
    den = sum((_weighted(g, getattr(shape, g)) for g in SdShape.GROUPS[3:]), ())
    return SeriesSpec(2, num, den, (_as_arg(shape.arg1), _as_arg(shape.arg2)))


@dataclass(frozen=True)
class F3Shape:
    all_num: Sequence = ()
    pair12_num: Sequence = ()
    pair23_num: Sequence = ()
    pair31_num: Sequence = ()
    single1_num: Sequence = ()
    single2_num: Sequence = ()
    single3_num: Sequence = ()
    all_den: Sequence = ()
    pair12_den: Sequence = ()
    pair23_den: Sequence = ()
    pair31_den: Sequence = ()
    single1_den: Sequence = ()
    single2_den: Sequence = ()
    single3_den: Sequence = ()
    arg1: ArgMonomial = ArgMonomial(1, 1)
    arg2: ArgMonomial = ArgMonomial(1, 1)
    arg3: ArgMonomial = ArgMonomial(1, 1)


_F3_WEIGHTS = {
    "all": (1, 1, 1),
    "pair12": (1, 1, 0),
    "pair23": (0, 1, 1),
    "pair31": (1, 0, 1),
    "single1": (1, 0, 0),
    "single2": (0, 1, 0),
    "single3": (0, 0, 1),
}


def make_f3(shape: F3Shape) -> SeriesSpec:
    num = sum((_params(getattr(shape, g + "_num"), w) for g, w in _F3_WEIGHTS.items()), ())
    den = sum((_params(getattr(shape, g + "_den"), w) for g, w in _F3_WEIGHTS.items()), ())
    args = (_as_arg(shape.arg1), _as_arg(shape.arg2), _as_arg(shape.arg3))
    return SeriesSpec(3, num, den, args)


# -- JSON bodies for the CLI ----------------------------------------------------


def _rational_list(obj, key):
    raw = obj.get(key, [])
    if not isinstance(raw, list):
        raise InvalidSpec(f"{key} must be a list")
    return [_rational_field({"v": v}, "v", f"{key}[{i}]") for i, v in enumerate(raw)]


def _arg(obj, key):
    raw = obj.get(key, {"coeff": "1", "degree": 1})
    if not isinstance(raw, dict):
        raise InvalidSpec(f"{key} must be an object with 'coeff' and 'degree'")
    return arg_from_json(raw, key)


def _sd_list(obj, key):
    raw = obj.get(key, [])
    if not isinstance(raw, list):
        raise InvalidSpec(f"{key} must be a list")
    out = []
    for i, item in enumerate(raw):
        where = f"{key}[{i}]"
        if not isinstance(item, dict):
            raise InvalidSpec(f"{where} must be an object with 'value' and 'weights'")
        value = _rational_field(item, "value", where)
        weights = item.get("weights")
        if not isinstance(weights, list) or not all(isinstance(w, int) for w in weights):
            raise InvalidSpec(f"{where}.weights must be a list of integers")
        if not any(weights):
            raise InvalidSpec(f"{where} (value {item['value']}) has all-zero weights {weights}")
        out.append((value, tuple(weights)))
    return out


def build_from_json(fn: str, body: dict) -> SeriesSpec:
    """Build a series from a CLI body; ``fn`` is pfq | kdf | sd | f3 | series."""
    from .series import spec_from_json

    if not isinstance(body, dict):
        raise InvalidSpec("function body must be a JSON object")
    if fn == "series":
        return spec_from_json(body)
    if fn == "pfq":
        return make_pfq(_rational_list(body, "num"), _rational_list(body, "den"), _arg(body, "arg"))
    if fn == "kdf":
        groups = {g: _rational_list(body, g) for g in SdShape.GROUPS}
        return make_kdf(KdfShape(**groups, arg1=_arg(body, "arg1"), arg2=_arg(body, "arg2")))
    if fn == "sd":
        groups = {g: _sd_list(body, g) for g in SdShape.GROUPS}
        return make_sd(SdShape(**groups, arg1=_arg(body, "arg1"), arg2=_arg(body, "arg2")))
    if fn == "f3":
        groups = {}
        for g in _F3_WEIGHTS:
            groups[g + "_num"] = _rational_list(body, g + "_num")
            groups[g + "_den"] = _rational_list(body, g + "_den")
        args = {a: _arg(body, a) for a in ("arg1", "arg2", "arg3")}
        return make_f3(F3Shape(**groups, **args))
    raise InvalidSpec(f"unknown function {fn!r}; expected pfq, kdf, sd, f3 or series")
