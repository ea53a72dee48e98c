"""Normed sets and bounded maps between them.

A normed set is a finite table ``label -> norm`` with exact nonnegative
rational norms.  A :class:`NormedMap` is a total function table between two
normed sets; its bound constant is the least ``M`` with
``g(phi(s)) <= M * f(s)`` for every ``s``.
"""
from __future__ import annotations

import numbers
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Tuple, Union

from .errors import DomainMismatchError, InvalidNormError, UnknownLabelError
from .scalars import UNBOUNDED, BoundValue, NormValue, format_rational

Label = Hashable


def label_key(label) -> tuple:
    """Total order on labels: ints, then strings, then tuples (recursively)."""
    if isinstance(label, bool):
        raise TypeError("bool is not a valid label")
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(x) for x in label))
    raise TypeError(f"unsupported label type: {type(label).__name__}")


def label_text(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(label_text(x) for x in label) + ")"
    return str(label)


def _check_norm(label, value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, numbers.Rational):
        raise InvalidNormError(
            f"norm of {label_text(label)!s} must be an exact finite rational, got {value!r}"
        )
    q = Fraction(value)
    if q < 0:
        raise InvalidNormError(f"norm of {label_text(label)} is negative: {format_rational(q)}")
    return q


class NormedSet:
    """A finite set with a norm function ``f: S -> [0, oo)``.

    >>> S = NormedSet({"a": 1, "b": Fraction(1, 2), "z": 0})
    >>> S.norm("b")
    Fraction(1, 2)
    >>> S.support
    ('a', 'b')
    """

    __slots__ = ("_norms", "_labels", "_hash")

    def __init__(self, norms: Mapping[Label, Union[int, Fraction]] | Iterable = ()):
        items = norms.items() if isinstance(norms, Mapping) else norms
        table: dict = {}
        for label, value in items:
            label_key(label)
            if label in table:
                raise DomainMismatchError(f"duplicate label {label_text(label)}")
            table[label] = _check_norm(label, value)
        self._labels = tuple(sorted(table, key=label_key))
        self._norms = {label: table[label] for label in self._labels}
        self._hash = None

    @classmethod
    def singleton(cls, label: Label, norm=0) -> NormedSet:
        return cls({label: norm})

    @property
    def labels(self) -> tuple:
        return self._labels

    def norm(self, label: Label) -> Fraction:
        try:
            return self._norms[label]
        except (KeyError, TypeError):
            raise UnknownLabelError(f"unknown label {label_text(label)}") from None

    def items(self) -> Iterator[tuple[Label, Fraction]]:
        return iter(self._norms.items())

    @property
    def zero_set(self) -> tuple:
        """Labels of norm zero (the kernel of the free-space embedding)."""
        return tuple(s for s in self._labels if self._norms[s] == 0)

    @property
    def support(self) -> tuple:
        """Labels of nonzero norm."""
        return tuple(s for s in self._labels if self._norms[s] != 0)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self._norms.values())

    def restrict(self, labels: Iterable[Label]) -> NormedSet:
        return NormedSet({s: self.norm(s) for s in labels})

    def __contains__(self, label) -> bool:
        try:
            return label in self._norms
        except TypeError:
            return False

    def __iter__(self) -> Iterator:
        return iter(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormedSet):
            return NotImplemented
        return self._norms == other._norms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._norms.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{label_text(s)}: {format_rational(f)}" for s, f in self._norms.items())
        return f"NormedSet({{{body}}})"


Ratio = Tuple[Fraction, Union[NormValue, Fraction, int]]


def bound_constant(pairs: Iterable[Ratio]) -> BoundValue:
    """Bound constant from ``(source_norm, image_norm)`` pairs.

    Returns the largest ``image/source`` ratio over nonzero sources (or 0), or
    ``UNBOUNDED`` when a zero-norm source has an image of nonzero norm.
    """
    best = NormValue(0)
    for source, image in pairs:
        if source == 0:
            if image != 0:
                return UNBOUNDED
            continue
        ratio = NormValue.coerce(image) / source
        if ratio > best:
            best = ratio
    return best


class NormedMap:
    """A total function between normed sets.

    >>> S, T = NormedSet({"a": 1, "b": 2}), NormedSet({"x": 3})
    >>> NormedMap(S, T, {"a": "x", "b": "x"}).crh
    NormValue(3)
    """

    def __init__(self, domain: NormedSet, codomain: NormedSet, assignment: Mapping | Iterable):
        items = dict(assignment.items() if isinstance(assignment, Mapping) else assignment)
        for s in items:
            if s not in domain:
                raise UnknownLabelError(f"map assigns unknown domain label {label_text(s)}")
        table = {}
        for s in domain:
            if s not in items:
                raise DomainMismatchError(f"map is not total: {label_text(s)} has no image")
            t = items[s]
            if t not in codomain:
                raise UnknownLabelError(f"image {label_text(t)} of {label_text(s)} is not in the codomain")
            table[s] = t
        self.domain = domain
        self.codomain = codomain
        self._table = table

    @classmethod
    def identity(cls, obj: NormedSet) -> NormedMap:
        return cls(obj, obj, {s: s for s in obj})

    def __call__(self, label: Label):
        try:
            return self._table[label]
        except (KeyError, TypeError):
            raise UnknownLabelError(f"unknown label {label_text(label)}") from None

    def items(self) -> Iterator[tuple]:
        return iter(self._table.items())

    @property
    def image(self) -> frozenset:
        return frozenset(self._table.values())

    @cached_property
    def crh(self) -> BoundValue:
        """Bound constant of the map; ``UNBOUNDED`` if no bound exists."""
        return bound_constant(
            (self.domain.norm(s), self.codomain.norm(t)) for s, t in self._table.items()
        )

    @property
    def is_bounded(self) -> bool:
        return self.crh is not UNBOUNDED

    @property
    def is_contractive(self) -> bool:
        return is_contractive(self)

    @property
    def is_injective(self) -> bool:
        return len(self.image) == len(self._table)

    @property
    def is_surjective(self) -> bool:
        return len(self.image) == len(self.codomain)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NormedMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self._table == other._table
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.codomain, tuple(self._table.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{label_text(s)}->{label_text(t)}" for s, t in self._table.items())
        return f"NormedMap({body})"


def crh(phi: NormedMap) -> BoundValue:
    return phi.crh


def is_contractive(phi: NormedMap) -> bool:
    c = phi.crh
    return c is not UNBOUNDED and c <= 1


def compose(second: NormedMap, first: NormedMap) -> NormedMap:
    """``second o first``; the codomain of ``first`` must equal the domain of ``second``."""
    if first.codomain != second.domain:
        raise DomainMismatchError("cannot compose: codomain of the first map is not the domain of the second")
    return NormedMap(first.domain, second.codomain, {s: second(t) for s, t in first.items()})


def identity(obj: NormedSet) -> NormedMap:
    return NormedMap.identity(obj)
