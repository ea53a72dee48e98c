"""Morphism classification and finite (co)limits of normed sets.

Two categories share the objects: ``cset1`` (contractive maps) and ``csetinf``
(bounded maps).  Finite products, coproducts, equalizers and coequalizers are
built the same way in both.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParallelMismatchError
from .normed_sets import NormedMap, NormedSet, is_contractive, label_key
from .scalars import UNBOUNDED, BoundValue, NormValue

CATEGORIES = ("cset1", "csetinf")


@dataclass(frozen=True)
class CategoryFlags:
    mono: bool
    epi: bool
    section: bool
    retraction: bool
    iso: bool

    def as_dict(self) -> dict:
        return {
            "mono": self.mono,
            "epi": self.epi,
            "section": self.section,
            "retraction": self.retraction,
            "iso": self.iso,
        }


@dataclass(frozen=True)
class MorphismReport:
    """Set-level facts about a map plus its flags in each category.

    ``cset1`` is None when the map is not contractive and ``csetinf`` is None
    when it is unbounded.  ``lower_ratio`` is the infimum of ``g(phi(s))/f(s)``
    over nonzero-norm ``s``; it is ``UNBOUNDED`` (an empty infimum) when there
    is no such ``s``.
    """

    injective: bool
    surjective: bool
    norm_preserving: bool
    crh: BoundValue
    lower_ratio: BoundValue
    complement: NormedSet
    cset1: CategoryFlags | None
    csetinf: CategoryFlags | None

    def flags(self, category: str) -> CategoryFlags | None:
        if category not in CATEGORIES:
            raise ValueError(f"unknown category {category!r}")
        return getattr(self, category)


def lower_ratio(phi: NormedMap) -> BoundValue:
    ratios = [
        NormValue(phi.codomain.norm(t) / phi.domain.norm(s))
        for s, t in phi.items()
        if phi.domain.norm(s) != 0
    ]
    return min(ratios) if ratios else UNBOUNDED


def _has_bounded_map(source: NormedSet, target: NormedSet) -> bool:
    # a function between finite sets is bounded iff zero-norm points land on zero-norm points
    if len(source) == 0:
        return True
    if len(target) == 0:
        return False
    if source.zero_set and not target.zero_set:
        return False
    return True


def classify(phi: NormedMap) -> MorphismReport:
    S, T = phi.domain, phi.codomain
    f, g = S.norm, T.norm
    injective = phi.is_injective
    surjective = phi.is_surjective
    norm_preserving = all(g(t) == f(s) for s, t in phi.items())
    lam = lower_ratio(phi)
    complement = T.restrict(t for t in T if t not in phi.image)
    preimages: dict = {t: [] for t in T}
    for s, t in phi.items():
        preimages[t].append(s)

    cset1 = None
    if is_contractive(phi):
        section = (
            injective
            and norm_preserving
            and all(any(f(s) <= g(t) for s in S) for t in complement)
        )
        retraction = all(any(f(s) == g(t) for s in preimages[t]) for t in T)
        cset1 = CategoryFlags(
            mono=injective,
            epi=surjective,
            section=section,
            retraction=retraction,
            iso=injective and surjective and norm_preserving,
        )

    csetinf = None
    if phi.is_bounded:
        positive = lam > 0
        retraction = all(
            preimages[t] and (g(t) != 0 or any(f(s) == 0 for s in preimages[t])) for t in T
        )
        csetinf = CategoryFlags(
            mono=injective,
            epi=surjective,
            section=injective and positive and _has_bounded_map(complement, S),
            retraction=bool(retraction),
            iso=injective and surjective and positive,
        )

    return MorphismReport(
        injective=injective,
        surjective=surjective,
        norm_preserving=norm_preserving,
        crh=phi.crh,
        lower_ratio=lam,
        complement=complement,
        cset1=cset1,
        csetinf=csetinf,
    )


@dataclass(frozen=True)
class ConstructionResult:
    """A (co)limit object with its legs.

    Products carry one projection per factor, coproducts one injection per
    summand, equalizers the inclusion and coequalizers the quotient map.
    """

    kind: str
    obj: NormedSet
    legs: tuple[NormedMap, ...]


def product(factors: Sequence[NormedSet]) -> ConstructionResult:
    """Finite product: label tuples normed by the max of the component norms.

    The empty family gives the terminal object, a singleton of norm zero.
    """
    factors = list(factors)
    tuples: list[tuple] = [()]
    for factor in factors:
        tuples = [t + (s,) for t in tuples for s in factor]
    obj = NormedSet(
        {t: max((F.norm(s) for F, s in zip(factors, t)), default=Fraction(0)) for t in tuples}
    )
    legs = tuple(
        NormedMap(obj, factor, {t: t[i] for t in obj}) for i, factor in enumerate(factors)
    )
    return ConstructionResult("product", obj, legs)


def coproduct(summands: Sequence[NormedSet]) -> ConstructionResult:
    """Disjoint union with labels ``(index, label)`` and inherited norms."""
    summands = list(summands)
    obj = NormedSet({(i, s): S.norm(s) for i, S in enumerate(summands) for s in S})
    legs = tuple(NormedMap(S, obj, {s: (i, s) for s in S}) for i, S in enumerate(summands))
    return ConstructionResult("coproduct", obj, legs)


def singleton_decomposition(obj: NormedSet) -> tuple[ConstructionResult, NormedMap]:
    """Write ``obj`` as the coproduct of its singletons.

    Returns the coproduct and the norm-preserving bijection back onto ``obj``.
    """
    result = coproduct([obj.restrict([s]) for s in obj])
    back = NormedMap(result.obj, obj, {(i, s): s for i, s in enumerate(obj)})
    return result, back


def _check_parallel(phi: NormedMap, psi: NormedMap) -> None:
    if phi.domain != psi.domain or phi.codomain != psi.codomain:
        raise ParallelMismatchError("maps are not parallel (domains or codomains differ)")


def equalizer(phi: NormedMap, psi: NormedMap) -> ConstructionResult:
    _check_parallel(phi, psi)
    sub = phi.domain.restrict(s for s in phi.domain if phi(s) == psi(s))
    return ConstructionResult("equalizer", sub, (NormedMap(sub, phi.domain, {s: s for s in sub}),))


def coequalizer(phi: NormedMap, psi: NormedMap) -> ConstructionResult:
    """Quotient of the codomain by the equivalence generated by ``phi(s) ~ psi(s)``.

    Each class is labelled by its least member and normed by the minimum norm
    of its members.
    """
    _check_parallel(phi, psi)
    T = phi.codomain
    parent = {t: t for t in T}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for s in phi.domain:
        a, b = find(phi(s)), find(psi(s))
        if a != b:
            if label_key(b) < label_key(a):
                a, b = b, a
            parent[b] = a

    classes: dict = {}
    for t in T:
        classes.setdefault(find(t), []).append(t)
    quotient = NormedSet({rep: min(T.norm(t) for t in members) for rep, members in classes.items()})
    leg = NormedMap(T, quotient, {t: find(t) for t in T})
    return ConstructionResult("coequalizer", quotient, (leg,))


# -- mediating maps ---------------------------------------------------------


def mediate_product(result: ConstructionResult, cone: Sequence[NormedMap]) -> NormedMap:
    apex = cone[0].domain if cone else None
    if apex is None:
        raise ValueError("an empty cone has no apex; pass the terminal map explicitly")
    return NormedMap(apex, result.obj, {x: tuple(c(x) for c in cone) for x in apex})


def mediate_coproduct(result: ConstructionResult, cocone: Sequence[NormedMap]) -> NormedMap:
    if not cocone:
        raise ValueError("an empty cocone has no target; pass the initial map explicitly")
    target = cocone[0].codomain
    return NormedMap(result.obj, target, {(i, s): cocone[i](s) for (i, s) in result.obj})


def mediate_equalizer(result: ConstructionResult, leg: NormedMap) -> NormedMap:
    return NormedMap(leg.domain, result.obj, {x: leg(x) for x in leg.domain})


def mediate_coequalizer(result: ConstructionResult, leg: NormedMap) -> NormedMap:
    quotient = result.legs[0]
    table = {}
    for t in quotient.domain:
        table.setdefault(quotient(t), leg(t))
    return NormedMap(result.obj, leg.codomain, table)


# -- projective and injective objects ---------------------------------------


def is_projective_cset1(obj: NormedSet) -> bool:
    """Projective relative to all epimorphisms of ``cset1`` iff empty."""
    return len(obj) == 0


def is_injective_cset1(obj: NormedSet) -> bool:
    """Injective relative to all monomorphisms of ``cset1`` iff nonempty with zero norm."""
    return len(obj) > 0 and obj.is_zero


__all__ = [
    "CATEGORIES",
    "CategoryFlags",
    "ConstructionResult",
    "MorphismReport",
    "classify",
    "coequalizer",
    "coproduct",
    "equalizer",
    "is_injective_cset1",
    "is_projective_cset1",
    "lower_ratio",
    "mediate_coequalizer",
    "mediate_coproduct",
    "mediate_equalizer",
    "mediate_product",
    "product",
    "singleton_decomposition",
]
