"""JSON text formats.

Rationals travel as strings ``"p/q"`` or ``"n"``; scalars as ``[re, im]``
string pairs; labels as strings, ints, or arrays (tuple labels).  Every
``*_to_json`` has a matching ``*_from_json`` that reproduces an equal value.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .category import CategoryFlags, ConstructionResult, MorphismReport
from .errors import ParseError
from .free_algebra import MatrixAlgebra, TensorAlgebra, TensorElement
from .free_space import CoordinateSpace, FreeSpace, FreeVector, ScalarField
from .normed_sets import NormedMap, NormedSet
from .scalars import DEFAULT_PRECISION, BoundValue, Scalar, bound_text, format_rational

_RATIONAL = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?")


def parse_rational(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string like '3/2', got {text!r}")
    m = _RATIONAL.fullmatch(text)
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def parse_label(value):
    if isinstance(value, bool) or value is None:
        raise ParseError(f"invalid label {value!r}")
    if isinstance(value, (str, int)):
        return value
    if isinstance(value, list):
        return tuple(parse_label(x) for x in value)
    raise ParseError(f"invalid label {value!r}")


def label_to_json(label):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    return label


def scalar_to_json(c: Scalar) -> list:
    return [format_rational(c.re), format_rational(c.im)]


def parse_scalar(value, mode: str = "complex") -> Scalar:
    if isinstance(value, list):
        if len(value) != 2:
            raise ParseError(f"a scalar is a [re, im] pair, got {value!r}")
        c = Scalar(parse_rational(value[0]), parse_rational(value[1]))
    else:
        c = Scalar(parse_rational(value))
    if mode == "real" and not c.is_real:
        raise ParseError(f"complex scalar {c} given in real mode (use --mode complex)")
    return c


def _expect(obj, key: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return value


# -- normed sets and maps ------------------------------------------------------


def normed_set_to_json(S: NormedSet) -> dict:
    return {"elements": [{"label": label_to_json(s), "norm": format_rational(f)} for s, f in S.items()]}


def normed_set_from_json(obj) -> NormedSet:
    elements = _expect(obj, "elements", list)
    pairs = []
    for e in elements:
        norm = _expect(e, "norm")
        if isinstance(norm, float) or norm in ("inf", "Infinity", "oo"):
            raise ParseError("norm values must be finite exact rationals")
        pairs.append((parse_label(_expect(e, "label")), parse_rational(norm)))
    return NormedSet(pairs)


def normed_map_to_json(phi: NormedMap) -> dict:
    return {
        "domain": normed_set_to_json(phi.domain),
        "codomain": normed_set_to_json(phi.codomain),
        "map": [[label_to_json(s), label_to_json(t)] for s, t in phi.items()],
    }


def normed_map_from_json(obj) -> NormedMap:
    pairs = _expect(obj, "map", list)
    if any(not isinstance(p, list) or len(p) != 2 for p in pairs):
        raise ParseError("map entries are [source, target] pairs")
    return NormedMap(
        normed_set_from_json(_expect(obj, "domain")),
        normed_set_from_json(_expect(obj, "codomain")),
        [(parse_label(a), parse_label(b)) for a, b in pairs],
    )


def bound_to_json(value: BoundValue, precision=DEFAULT_PRECISION) -> str:
    return bound_text(value, precision)


def construction_to_json(result: ConstructionResult) -> dict:
    return {
        "kind": result.kind,
        "object": normed_set_to_json(result.obj),
        "legs": [normed_map_to_json(leg) for leg in result.legs],
    }


def construction_from_json(obj) -> ConstructionResult:
    return ConstructionResult(
        _expect(obj, "kind", str),
        normed_set_from_json(_expect(obj, "object")),
        tuple(normed_map_from_json(leg) for leg in _expect(obj, "legs", list)),
    )


def _flags_to_json(flags: CategoryFlags | None):
    return None if flags is None else flags.as_dict()


def report_to_json(report: MorphismReport, precision=DEFAULT_PRECISION) -> dict:
    return {
        "injective": report.injective,
        "surjective": report.surjective,
        "norm_preserving": report.norm_preserving,
        "crh": bound_to_json(report.crh, precision),
        "lambda": bound_to_json(report.lower_ratio, precision),
        "complement": normed_set_to_json(report.complement),
        "cset1": _flags_to_json(report.cset1),
        "csetinf": _flags_to_json(report.csetinf),
    }


# -- vectors and tensor elements --------------------------------------------------


def vector_to_json(v: FreeVector) -> dict:
    return {
        "base": normed_set_to_json(v.base),
        "coeffs": [[label_to_json(s), *scalar_to_json(c)] for s, c in v.items()],
    }


def _coeff_entries(entries, mode: str) -> list:
    out = []
    for entry in entries:
        if not isinstance(entry, list) or len(entry) not in (2, 3):
            raise ParseError("vector coefficients are [label, re] or [label, re, im]")
        label = parse_label(entry[0])
        out.append((label, parse_scalar(entry[1:] if len(entry) == 3 else entry[1], mode)))
    return out


def vector_from_json(obj, mode: str = "complex") -> FreeVector:
    base = normed_set_from_json(_expect(obj, "base"))
    return FreeVector(base, _coeff_entries(_expect(obj, "coeffs", list), mode))


def _terms_to_json(x: TensorElement) -> list:
    return [{"word": [label_to_json(s) for s in w], "coeff": scalar_to_json(c)} for w, c in x.items()]


def _terms_from_json(terms, mode: str) -> list:
    out = []
    for term in terms:
        word = tuple(parse_label(s) for s in _expect(term, "word", list))
        out.append((word, parse_scalar(_expect(term, "coeff"), mode)))
    return out


def tensor_to_json(x: TensorElement) -> dict:
    return {"base": normed_set_to_json(x.base), "terms": _terms_to_json(x)}


def tensor_from_json(obj, mode: str = "complex") -> TensorElement:
    base = normed_set_from_json(_expect(obj, "base"))
    return TensorElement(base, _terms_from_json(_expect(obj, "terms", list), mode))


# -- targets and their elements ---------------------------------------------------


def target_from_json(obj):
    kind = _expect(obj, "kind", str)
    if kind == "scalar":
        return ScalarField()
    if kind == "free":
        return FreeSpace(normed_set_from_json(_expect(obj, "base")))
    if kind == "coords":
        return CoordinateSpace(tuple(parse_rational(w) for w in _expect(obj, "weights", list)))
    if kind == "algebra":
        return TensorAlgebra(normed_set_from_json(_expect(obj, "base")))
    if kind == "matrix":
        n = _expect(obj, "n", int)
        return MatrixAlgebra(n)
    raise ParseError(f"unknown target kind {kind!r}")


def target_to_json(target) -> dict:
    if isinstance(target, ScalarField):
        return {"kind": "scalar"}
    if isinstance(target, FreeSpace):
        return {"kind": "free", "base": normed_set_to_json(target.base)}
    if isinstance(target, CoordinateSpace):
        return {"kind": "coords", "weights": [format_rational(w) for w in target.weights]}
    if isinstance(target, TensorAlgebra):
        return {"kind": "algebra", "base": normed_set_to_json(target.base)}
    if isinstance(target, MatrixAlgebra):
        return {"kind": "matrix", "n": target.n}
    raise TypeError(f"no text format for {type(target).__name__}")


def element_from_json(target, value, mode: str = "complex"):
    """Decode a target element; the encoding depends on the target kind."""
    if isinstance(target, ScalarField):
        return parse_scalar(value, mode)
    if isinstance(target, FreeSpace):
        if not isinstance(value, list):
            raise ParseError("a free-space element is a list of coefficient entries")
        return FreeVector(target.base, _coeff_entries(value, mode))
    if isinstance(target, CoordinateSpace):
        if not isinstance(value, list):
            raise ParseError("a coordinate vector is a list of scalars")
        return target.validate([parse_scalar(a, mode) for a in value])
    if isinstance(target, TensorAlgebra):
        if not isinstance(value, list):
            raise ParseError("an algebra element is a list of terms")
        return TensorElement(target.base, _terms_from_json(value, mode))
    if isinstance(target, MatrixAlgebra):
        if not isinstance(value, list) or not all(isinstance(r, list) for r in value):
            raise ParseError("a matrix is a list of rows")
        return target.validate([[parse_scalar(a, mode) for a in row] for row in value])
    raise TypeError(f"no text format for {type(target).__name__}")


def element_to_json(target, value) -> Any:
    if isinstance(target, ScalarField):
        return scalar_to_json(Scalar.coerce(value))
    if isinstance(target, FreeSpace):
        return [[label_to_json(s), *scalar_to_json(c)] for s, c in value.items()]
    if isinstance(target, CoordinateSpace):
        return [scalar_to_json(a) for a in value]
    if isinstance(target, TensorAlgebra):
        return _terms_to_json(value)
    if isinstance(target, MatrixAlgebra):
        return [[scalar_to_json(a) for a in row] for row in value]
    raise TypeError(f"no text format for {type(target).__name__}")


# -- files ------------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None


def load_file(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None

