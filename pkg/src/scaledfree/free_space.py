"""Weighted l1 spaces over normed sets and their universal linear extensions.

The free space on ``(S, f)`` has the nonzero-norm labels as a basis and the
norm ``||sum c_s d_s|| = sum |c_s| f(s)``.  Vectors are finitely supported,
which is all of the space when ``S`` is finite.

A generator map ``phi: S -> W`` into a normed target extends to a unique
linear map on the free space exactly when it is bounded, and the operator
norm of the extension equals the bound constant of ``phi``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, Protocol, Sequence

from .errors import (
    BaseMismatchError,
    DomainMismatchError,
    IrrationalNormError,
    NotContractiveError,
    UnboundedError,
    UnknownLabelError,
)
from .normed_sets import NormedMap, NormedSet, bound_constant, label_text
from .scalars import UNBOUNDED, ZERO, BoundValue, NormValue, Scalar, as_fraction


class FreeVector:
    """A finitely supported combination of basis vectors of a free space.

    Coefficients on zero-norm labels are dropped on construction (the
    embedding sends those labels to 0), as are zero coefficients.

    >>> V = NormedSet({"a": Fraction(1, 2), "b": 1})
    >>> (2 * zeta(V, "a") - 3 * zeta(V, "b")).norm()
    NormValue(4)
    """

    __slots__ = ("base", "_coeffs")

    def __init__(self, base: NormedSet, coeffs: Mapping | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict = {}
        for label, c in items:
            if base.norm(label) == 0:
                continue
            acc[label] = acc.get(label, ZERO) + Scalar.coerce(c)
        self.base = base
        self._coeffs = {s: acc[s] for s in base.labels if s in acc and acc[s]}

    @classmethod
    def zero(cls, base: NormedSet) -> FreeVector:
        return cls(base)

    def coefficient(self, label) -> Scalar:
        self.base.norm(label)
        return self._coeffs.get(label, ZERO)

    def items(self) -> Iterator[tuple[Any, Scalar]]:
        return iter(self._coeffs.items())

    @property
    def support(self) -> tuple:
        return tuple(self._coeffs)

    def norm(self) -> NormValue:
        return sum(
            (c.modulus() * self.base.norm(s) for s, c in self._coeffs.items()),
            NormValue(0),
        )

    def _check(self, other: FreeVector) -> None:
        if not isinstance(other, FreeVector) or other.base != self.base:
            raise BaseMismatchError("vectors live over different normed sets")

    def __add__(self, other: FreeVector) -> FreeVector:
        self._check(other)
        return FreeVector(self.base, [*self.items(), *other.items()])

    def __sub__(self, other: FreeVector) -> FreeVector:
        return self + (-other)

    def __neg__(self) -> FreeVector:
        return FreeVector(self.base, {s: -c for s, c in self.items()})

    def __rmul__(self, scalar) -> FreeVector:
        try:
            scalar = Scalar.coerce(scalar)
        except TypeError:
            return NotImplemented
        return FreeVector(self.base, {s: scalar * c for s, c in self.items()})

    __mul__ = __rmul__

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeVector):
            return NotImplemented
        return self.base == other.base and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.base, tuple(self._coeffs.items())))

    def __repr__(self) -> str:
        if not self._coeffs:
            return "FreeVector(0)"
        return "FreeVector(" + " + ".join(f"({c})*{label_text(s)}" for s, c in self.items()) + ")"


def zeta(base: NormedSet, label) -> FreeVector:
    """Canonical embedding: the basis vector at ``label``, or 0 if its norm is 0."""
    base.norm(label)
    return FreeVector(base, {label: 1})


def vector_norm(v: FreeVector) -> NormValue:
    return v.norm()


def linear_combine(terms: Iterable[tuple[Any, FreeVector]]) -> FreeVector:
    terms = list(terms)
    if not terms:
        raise ValueError("linear_combine needs at least one term to fix the base")
    base = terms[0][1].base
    acc = []
    for c, v in terms:
        if v.base != base:
            raise BaseMismatchError("vectors live over different normed sets")
        c = Scalar.coerce(c)
        acc.extend((s, c * x) for s, x in v.items())
    return FreeVector(base, acc)


# -- normed targets ----------------------------------------------------------


class NormedTarget(Protocol):
    def zero(self) -> Any: ...
    def add(self, u, v) -> Any: ...
    def scale(self, c: Scalar, v) -> Any: ...
    def norm(self, v) -> NormValue: ...
    def validate(self, v) -> Any: ...


@dataclass(frozen=True)
class ScalarField:
    """The scalars with the modulus norm (also an algebra)."""

    def zero(self) -> Scalar:
        return ZERO

    def add(self, u, v) -> Scalar:
        return Scalar.coerce(u) + v

    def scale(self, c, v) -> Scalar:
        return Scalar.coerce(c) * v

    def multiply(self, u, v) -> Scalar:
        return Scalar.coerce(u) * v

    def norm(self, v) -> NormValue:
        return Scalar.coerce(v).modulus()

    def validate(self, v) -> Scalar:
        return Scalar.coerce(v)


@dataclass(frozen=True)
class FreeSpace:
    """The free space on ``base`` viewed as a normed target."""

    base: NormedSet

    def zero(self) -> FreeVector:
        return FreeVector(self.base)

    def add(self, u: FreeVector, v: FreeVector) -> FreeVector:
        return u + v

    def scale(self, c, v: FreeVector) -> FreeVector:
        return Scalar.coerce(c) * v

    def norm(self, v: FreeVector) -> NormValue:
        return v.norm()

    def validate(self, v) -> FreeVector:
        if not isinstance(v, FreeVector) or v.base != self.base:
            raise BaseMismatchError("element does not belong to this free space")
        return v

    def basis(self) -> dict:
        return {s: zeta(self.base, s) for s in self.base.support}


@dataclass(frozen=True)
class CoordinateSpace:
    """``F^n`` with the weighted l1 norm ``sum |x_i| w_i`` (weights positive)."""

    weights: tuple

    def __post_init__(self):
        weights = tuple(as_fraction(w) for w in self.weights)
        if any(w <= 0 for w in weights):
            raise ValueError("coordinate weights must be positive")
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def zero(self) -> tuple:
        return (ZERO,) * self.dim

    def add(self, u, v) -> tuple:
        return tuple(a + b for a, b in zip(u, v))

    def scale(self, c, v) -> tuple:
        c = Scalar.coerce(c)
        return tuple(c * a for a in v)

    def norm(self, v) -> NormValue:
        return sum((a.modulus() * w for a, w in zip(v, self.weights)), NormValue(0))

    def validate(self, v) -> tuple:
        v = tuple(Scalar.coerce(a) for a in v)
        if len(v) != self.dim:
            raise DomainMismatchError(f"expected {self.dim} coordinates, got {len(v)}")
        return v


# -- extensions ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearExtension:
    """The linear map on ``FreeSpace(base)`` determined by basis images."""

    source: FreeSpace
    target: Any
    images: Mapping = field(repr=False)
    operator_norm: NormValue

    def __call__(self, v: FreeVector) -> Any:
        self.source.validate(v)
        out = self.target.zero()
        for s, c in v.items():
            out = self.target.add(out, self.target.scale(c, self.images[s]))
        return out

    def on_generators(self) -> dict:
        """The composite ``extension o zeta`` as a table on all of ``base``."""
        return {s: self(zeta(self.source.base, s)) for s in self.source.base}


def _generator_bound(images: Mapping, base: NormedSet, target) -> BoundValue:
    return bound_constant((base.norm(s), target.norm(images[s])) for s in base)


def _validated_images(images: Mapping, base: NormedSet, target) -> dict:
    for s in images:
        if s not in base:
            raise UnknownLabelError(f"image given for unknown label {label_text(s)}")
    missing = [s for s in base if s not in images]
    if missing:
        raise DomainMismatchError(f"no image given for {', '.join(label_text(s) for s in missing)}")
    return {s: target.validate(images[s]) for s in base}


def extend(images: Mapping, base: NormedSet, target, *, contractive: bool = False) -> LinearExtension:
    """Unique linear extension of the generator map ``s -> images[s]``.

    Raises UnboundedError when a zero-norm generator has an image of nonzero
    norm, and, with ``contractive=True``, NotContractiveError when the bound
    constant exceeds 1.
    """
    images = _validated_images(images, base, target)
    c = _generator_bound(images, base, target)
    if c is UNBOUNDED:
        bad = next(s for s in base if base.norm(s) == 0 and target.norm(images[s]) != 0)
        raise UnboundedError(
            f"generator {label_text(bad)} has norm 0 but its image has norm {target.norm(images[bad])}"
        )
    if contractive and c > 1:
        raise NotContractiveError(f"generator map has bound constant {c} > 1")
    return LinearExtension(
        FreeSpace(base), target, {s: images[s] for s in base.support}, c
    )


def compose_extensions(second: LinearExtension, first: LinearExtension) -> LinearExtension:
    """``second o first`` where ``first`` lands in the free space ``second`` starts from."""
    if first.target != second.source:
        raise DomainMismatchError("extensions are not composable")
    return extend(
        {s: second(first(zeta(first.source.base, s))) for s in first.source.base},
        first.source.base,
        second.target,
    )


def identity_extension(base: NormedSet) -> LinearExtension:
    return extend({s: zeta(base, s) for s in base}, base, FreeSpace(base))


def functor_on_map(alpha: NormedMap, *, contractive: bool = False) -> LinearExtension:
    """The free-space functor on a bounded map: ``d_s -> zeta(alpha(s))``."""
    return extend(
        {s: zeta(alpha.codomain, alpha(s)) for s in alpha.domain},
        alpha.domain,
        FreeSpace(alpha.codomain),
        contractive=contractive,
    )


def scaled_free_extend(images: Mapping, base: NormedSet, target) -> LinearExtension:
    """Contractive extension after rescaling each image to the norm of its generator.

    ``phi'(s) = (f(s) / ||phi(s)||) * phi(s)`` (0 when ``phi(s) = 0``), so that
    ``||phi(s)|| * ext(zeta(s)) == f(s) * phi(s)`` for every ``s``.  Image norms
    must be rational; otherwise IrrationalNormError is raised rather than
    approximating.
    """
    images = _validated_images(images, base, target)
    rescaled = {}
    for s in base:
        n = target.norm(images[s])
        if n == 0:
            rescaled[s] = target.zero()
            continue
        if not n.is_exact:
            raise IrrationalNormError(
                f"image of {label_text(s)} has irrational norm {n}; refusing to rescale"
            )
        rescaled[s] = target.scale(Scalar(base.norm(s) / n.exact), images[s])
    return extend(rescaled, base, target, contractive=True)


@dataclass
class RoundTripReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def hom_roundtrip_check(
    base: NormedSet,
    target,
    maps: Sequence[Mapping],
    vectors: Sequence[FreeVector] = (),
    *,
    contractive: bool = False,
) -> RoundTripReport:
    """Check both directions of the extension/restriction bijection.

    For each generator map ``phi`` in ``maps``: ``extend(phi) o zeta == phi``
    on every label, and re-extending ``L o zeta`` for ``L = extend(phi)``
    reproduces ``L`` on every vector in ``vectors`` and every basis vector.
    """
    report = RoundTripReport()
    vectors = list(vectors) + [zeta(base, s) for s in base.support]
    for k, phi in enumerate(maps):
        L = extend(phi, base, target, contractive=contractive)
        restricted = L.on_generators()
        for s in base:
            report.checked += 1
            if restricted[s] != target.validate(phi[s]):
                report.failures.append(f"map {k}: extension o zeta differs from phi at {label_text(s)}")
        again = extend(restricted, base, target, contractive=contractive)
        for j, v in enumerate(vectors):
            report.checked += 1
            if again(v) != L(v):
                report.failures.append(f"map {k}: re-extension differs on vector {j}")
        if again.operator_norm != L.operator_norm:
            report.failures.append(f"map {k}: operator norms differ after round trip")
    return report


def unit_ball_basis(labels: Iterable) -> NormedSet:
    """The normed set with constant norm 1, whose free space is plain l1."""
    return NormedSet({s: 1 for s in labels})


__all__ = [
    "CoordinateSpace",
    "FreeSpace",
    "FreeVector",
    "LinearExtension",
    "NormedTarget",
    "RoundTripReport",
    "ScalarField",
    "compose_extensions",
    "extend",
    "functor_on_map",
    "hom_roundtrip_check",
    "identity_extension",
    "linear_combine",
    "scaled_free_extend",
    "unit_ball_basis",
    "vector_norm",
    "zeta",
]
