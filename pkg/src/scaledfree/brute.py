"""Exhaustive verifiers over small finite universes.

Everything here decides a categorical statement by enumerating functions
between finite carriers and testing the defining condition literally.  None of
it calls the closed-form characterizations in :mod:`scaledfree.category`, so
the two routes can be checked against each other.

On finite carriers the morphism condition of either category is a
conjunction of one inequality per source point (for ``csetinf`` against a
single admissible constant chosen up front).  Counting all maps that satisfy
pointwise constraints therefore factors as a product over source points;
:func:`count_maps` uses that to keep universal-property checks cheap while
still counting every candidate map.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Callable, Iterable, Iterator, Sequence

from .category import CATEGORIES, CategoryFlags, ConstructionResult
from .free_space import FreeVector
from .normed_sets import NormedMap, NormedSet
from .scalars import UNBOUNDED, BoundValue, NormValue, Scalar

DEFAULT_PALETTE = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3))


def normed_sets(palette: Iterable, max_size: int, *, canonical: bool = True, prefix: str = "e") -> list[NormedSet]:
    """All normed sets with at most ``max_size`` elements and norms from ``palette``.

    With ``canonical=True`` only one representative per norm multiset is
    produced (every labelled normed set is isomorphic to one of them by a
    norm-preserving relabelling).
    """
    palette = sorted({Fraction(p) for p in palette})
    out = []
    for n in range(max_size + 1):
        source = (
            itertools.combinations_with_replacement(palette, n)
            if canonical
            else itertools.product(palette, repeat=n)
        )
        for norms in source:
            out.append(NormedSet({f"{prefix}{i}": v for i, v in enumerate(norms)}))
    return out


# -- the definitions, literally ------------------------------------------------


def _admissible(M: Fraction, pairs: Iterable[tuple[Fraction, Fraction]]) -> bool:
    return all(image <= M * source for source, image in pairs)


def brute_crh(phi: NormedMap) -> BoundValue:
    """Least admissible constant ``M``, found by testing every candidate.

    The admissible set is a closed ray or empty; its least element, when it
    exists, is 0 or one of the ratios ``g(phi(s))/f(s)``.
    """
    pairs = [(phi.domain.norm(s), phi.codomain.norm(t)) for s, t in phi.items()]
    candidates = {Fraction(0)} | {g / f for f, g in pairs if f != 0}
    admissible = [M for M in candidates if _admissible(M, pairs)]
    return NormValue(min(admissible)) if admissible else UNBOUNDED


def _universal_bound(source_norms: Sequence[Fraction], target_norms: Sequence[Fraction]) -> Fraction:
    # admissible for every bounded map source -> target, if any map is bounded
    positive = [f for f in source_norms if f != 0]
    if not positive or not target_norms:
        return Fraction(0)
    return max(target_norms) / min(positive)


def _morphism_constant(category: str, source_norms, target_norms) -> Fraction:
    if category == "cset1":
        return Fraction(1)
    if category == "csetinf":
        return _universal_bound(source_norms, target_norms)
    raise ValueError(f"unknown category {category!r}")


def count_maps(
    source: NormedSet,
    target: NormedSet,
    category: str,
    allowed: Callable[[object, object], bool] = lambda x, y: True,
) -> int:
    """Number of morphisms ``u: source -> target`` with ``allowed(x, u(x))`` for all ``x``."""
    M = _morphism_constant(category, [source.norm(x) for x in source], [target.norm(y) for y in target])
    return prod(
        sum(1 for y in target if target.norm(y) <= M * source.norm(x) and allowed(x, y))
        for x in source
    )


def _raw_morphisms(fs: Sequence[Fraction], gs: Sequence[Fraction], category: str) -> list[tuple[int, ...]]:
    M = _morphism_constant(category, fs, gs)
    choices = [[j for j, g in enumerate(gs) if g <= M * f] for f in fs]
    return list(itertools.product(*choices))


def morphisms(source: NormedSet, target: NormedSet, category: str) -> Iterator[NormedMap]:
    """Every morphism ``source -> target`` of the category."""
    fs = [source.norm(x) for x in source]
    gs = [target.norm(y) for y in target]
    labels_t = target.labels
    for fun in _raw_morphisms(fs, gs, category):
        yield NormedMap(source, target, {x: labels_t[j] for x, j in zip(source.labels, fun)})


def is_morphism(phi: NormedMap, category: str) -> bool:
    fs = [phi.domain.norm(s) for s in phi.domain]
    gs = [phi.codomain.norm(t) for t in phi.codomain]
    M = _morphism_constant(category, fs, gs)
    return _admissible(M, ((phi.domain.norm(s), phi.codomain.norm(t)) for s, t in phi.items()))


def brute_classify(phi: NormedMap, test_objects: Sequence[NormedSet]) -> dict[str, CategoryFlags | None]:
    """Flags per category by searching for inverses and separating maps.

    Mono and epi are decided against the given test objects only: a
    collision ``phi o a == phi o b`` with ``a != b`` (resp. ``b o phi ==
    c o phi``) refutes them.
    """
    S, T = phi.domain, phi.codomain
    fs = [S.norm(s) for s in S]
    gs = [T.norm(t) for t in T]
    index_t = {t: j for j, t in enumerate(T.labels)}
    table = tuple(index_t[phi(s)] for s in S.labels)
    ident_s = tuple(range(len(S)))
    ident_t = tuple(range(len(T)))
    out: dict[str, CategoryFlags | None] = {}
    for category in CATEGORIES:
        if not is_morphism(phi, category):
            out[category] = None
            continue
        mono = True
        for X in test_objects:
            xs = [X.norm(x) for x in X]
            seen = set()
            for a in _raw_morphisms(xs, fs, category):
                key = tuple(table[i] for i in a)
                if key in seen:
                    mono = False
                    break
                seen.add(key)
            if not mono:
                break
        epi = True
        for Y in test_objects:
            ys = [Y.norm(y) for y in Y]
            seen = set()
            for b in _raw_morphisms(gs, ys, category):
                key = tuple(b[j] for j in table)
                if key in seen:
                    epi = False
                    break
                seen.add(key)
            if not epi:
                break
        backward = _raw_morphisms(gs, fs, category)
        left = [psi for psi in backward if tuple(psi[j] for j in table) == ident_s]
        right = [psi for psi in backward if tuple(table[i] for i in psi) == ident_t]
        out[category] = CategoryFlags(
            mono=mono,
            epi=epi,
            section=bool(left),
            retraction=bool(right),
            iso=any(psi in right for psi in left),
        )
    return out


# -- universal properties --------------------------------------------------------


@dataclass
class UniversalReport:
    kind: str
    category: str
    cones_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _legs_ok(result: ConstructionResult, category: str) -> bool:
    return all(is_morphism(leg, category) for leg in result.legs)


def verify_universal_property(
    result: ConstructionResult,
    diagram: Sequence,
    apexes: Sequence[NormedSet],
    category: str = "cset1",
) -> UniversalReport:
    """Check existence and uniqueness of mediating maps against every test (co)cone.

    ``diagram`` is the list of factors/summands for (co)products and the
    parallel pair ``(phi, psi)`` for (co)equalizers.  Every morphism (or tuple
    of morphisms) from or to each apex that forms a (co)cone is tried, and the
    mediating morphisms compatible with it are counted; the count must be 1.
    """
    report = UniversalReport(result.kind, category)
    if not _legs_ok(result, category):
        report.failures.append(("legs are not morphisms", None))
        return report
    kind, P, legs = result.kind, result.obj, result.legs

    if kind == "equalizer":
        phi, psi = diagram
        if any(phi(legs[0](e)) != psi(legs[0](e)) for e in P):
            report.failures.append(("inclusion does not equalize", None))
    if kind == "coequalizer":
        phi, psi = diagram
        if any(legs[0](phi(s)) != legs[0](psi(s)) for s in phi.domain):
            report.failures.append(("quotient does not coequalize", None))

    for X in apexes:
        if kind == "product":
            for cone in itertools.product(*(list(morphisms(X, F, category)) for F in diagram)):
                n = count_maps(
                    X, P, category,
                    lambda x, p, cone=cone: all(leg(p) == c(x) for leg, c in zip(legs, cone)),
                )
                report.cones_checked += 1
                if n != 1:
                    report.failures.append((X, cone, n))
        elif kind == "equalizer":
            phi, psi = diagram
            for c in morphisms(X, phi.domain, category):
                if any(phi(c(x)) != psi(c(x)) for x in X):
                    continue
                n = count_maps(X, P, category, lambda x, p, c=c: legs[0](p) == c(x))
                report.cones_checked += 1
                if n != 1:
                    report.failures.append((X, c, n))
        elif kind in ("coproduct", "coequalizer"):
            if kind == "coproduct":
                cocones = itertools.product(*(list(morphisms(S, X, category)) for S in diagram))
            else:
                phi, psi = diagram
                cocones = (
                    (c,)
                    for c in morphisms(phi.codomain, X, category)
                    if all(c(phi(s)) == c(psi(s)) for s in phi.domain)
                )
            for cocone in cocones:
                fibres: dict = {p: [] for p in P}
                for leg, c in zip(legs, cocone):
                    for y in leg.domain:
                        fibres[leg(y)].append(c(y))
                n = count_maps(P, X, category, lambda p, x: all(v == x for v in fibres[p]))
                report.cones_checked += 1
                if n != 1:
                    report.failures.append((X, cocone, n))
        else:
            raise ValueError(f"unknown construction kind {kind!r}")
    return report


# -- projective and injective objects --------------------------------------------


def epimorphisms(universe: Sequence[NormedSet]) -> list[NormedMap]:
    """Every surjective contraction between members of ``universe``."""
    return [
        alpha
        for A in universe
        for B in universe
        for alpha in morphisms(A, B, "cset1")
        if alpha.is_surjective
    ]


def lifting_counterexample(obj: NormedSet, universe: Sequence[NormedSet], epis=None):
    """First ``(epi, phi)`` of ``cset1`` through which ``phi: obj -> B`` has no lift, else None.

    ``epis`` may pass a precomputed :func:`epimorphisms` list for the universe.
    """
    if epis is None:
        epis = epimorphisms(universe)
    for alpha in epis:
        for phi in morphisms(obj, alpha.codomain, "cset1"):
            if count_maps(obj, alpha.domain, "cset1", lambda s, a: alpha(a) == phi(s)) == 0:
                return alpha, phi
    return None


def extension_counterexample(obj: NormedSet, universe: Sequence[NormedSet]):
    """First ``(mono, phi)`` of ``cset1`` along which ``phi: T -> obj`` does not extend, else None."""
    for T in universe:
        for U in universe:
            for alpha in morphisms(T, U, "cset1"):
                if not alpha.is_injective:
                    continue
                back = {alpha(t): t for t in T}
                for phi in morphisms(T, obj, "cset1"):
                    n = count_maps(U, obj, "cset1", lambda u, s: u not in back or phi(back[u]) == s)
                    if n == 0:
                        return alpha, phi
    return None


def brute_is_projective(obj: NormedSet, universe: Sequence[NormedSet], epis=None) -> bool:
    return lifting_counterexample(obj, universe, epis) is None


def brute_is_injective(obj: NormedSet, universe: Sequence[NormedSet]) -> bool:
    return extension_counterexample(obj, universe) is None


@dataclass(frozen=True)
class LiftingObstruction:
    """The lifting problem ``id: (S, f) -> (S, 0)`` through ``id: (S, n) -> (S, 0)``."""

    n: int
    epi: NormedMap
    target: NormedMap
    lifts: int
    violated_at: object  # a label s with f(s) < n, or None

    @property
    def obstructs(self) -> bool:
        return self.lifts == 0


def lifting_obstruction(obj: NormedSet, n: int) -> LiftingObstruction:
    zero = NormedSet({s: 0 for s in obj})
    heavy = NormedSet({s: n for s in obj})
    epi = NormedMap(heavy, zero, {s: s for s in obj})
    target = NormedMap(obj, zero, {s: s for s in obj})
    lifts = sum(
        1
        for lift in morphisms(obj, heavy, "cset1")
        if all(epi(lift(s)) == target(s) for s in obj)
    )
    violated = next((s for s in obj if obj.norm(s) < n), None)
    return LiftingObstruction(n, epi, target, lifts, violated)


def extreme_point_norm(L, base: NormedSet) -> NormValue:
    """Operator norm of ``L`` read off the unit ball of the weighted l1 space.

    The unit ball is the closed convex hull of ``+-zeta(s) / f(s)`` over labels
    with ``f(s) > 0``, so the supremum of ``||L v||`` over it is attained at one
    of those points.  ``L`` is only evaluated, never asked for its stored norm.
    """
    best = NormValue(0)
    for s in base.support:
        v = FreeVector(base, {s: Scalar(1)})
        value = L.target.norm(L(v)) / base.norm(s)
        if value > best:
            best = value
    return best
