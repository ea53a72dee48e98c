"""Acceptance gate: one test per criterion, each run at its full stated size.

Every value compared here comes from two independent routes: the closed-form
library code and either an exhaustive search (``scaledfree.brute``) or a
direct computation written out in this file.
"""
import itertools
import random
from fractions import Fraction

import pytest

from scaledfree import (
    UNBOUNDED,
    CoordinateSpace,
    FreeSpace,
    FreeVector,
    NormedMap,
    NormedSet,
    NormValue,
    Scalar,
    ScalarField,
    TensorElement,
    alg_mul,
    alg_norm,
    classify,
    coequalizer,
    compose,
    coproduct,
    equalizer,
    extend,
    extend_to_algebra,
    functor_on_map,
    hom_roundtrip_check,
    identity,
    is_injective_cset1,
    is_projective_cset1,
    kappa,
    one_generator_convolution_check,
    product,
    scaled_free_extend,
    witness_banalg_bounded,
    witness_csetinf_incompleteness,
    witness_hilbert,
    witness_set_reflection,
    zeta,
)
from scaledfree import brute
from scaledfree.free_space import compose_extensions, identity_extension

CRH_PALETTE = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(5))
CLASSIFY_PALETTE = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def random_set(rng, max_size, palette, prefix, min_size=0):
    n = rng.randint(min_size, max_size)
    return NormedSet({f"{prefix}{i}": rng.choice(palette) for i in range(n)})


def random_map(rng, S, T):
    return NormedMap(S, T, {s: rng.choice(T.labels) for s in S})


def all_maps(S, T):
    for image in itertools.product(T.labels, repeat=len(S)):
        yield NormedMap(S, T, dict(zip(S.labels, image)))


def ratio_max(pairs):
    """max g/f over f > 0, or UNBOUNDED if some f = 0 has g != 0 (direct scan)."""
    best = NormValue(0)
    for f, g in pairs:
        if f == 0:
            if g != 0:
                return UNBOUNDED
            continue
        if g / f > best:
            best = g / f
    return best


# -- 1 ------------------------------------------------------------------------------


@criterion(1, "crh equals brute-force ratio enumeration on 1000 random maps; unbounded marker exact")
def test_crh_oracle_equivalence():
    rng = random.Random(1)
    mismatches = marker_errors = 0
    for _ in range(1000):
        S = random_set(rng, 5, CRH_PALETTE, "a")
        T = random_set(rng, 5, CRH_PALETTE, "x", min_size=1)
        phi = random_map(rng, S, T)
        if phi.crh != brute.brute_crh(phi):
            mismatches += 1
        criterion_fires = any(S.norm(s) == 0 and T.norm(phi(s)) != 0 for s in S)
        if (phi.crh is UNBOUNDED) != criterion_fires:
            marker_errors += 1
    assert (mismatches, marker_errors) == (0, 0)


# -- 2 ------------------------------------------------------------------------------


@criterion(2, "crh(psi o phi) <= crh(psi) crh(phi) on all sampled composable pairs")
def test_composition_law():
    rng = random.Random(2)
    violations = checked = 0
    for _ in range(2000):
        S = random_set(rng, 4, CRH_PALETTE, "a")
        T = random_set(rng, 4, CRH_PALETTE, "b", min_size=1)
        U = random_set(rng, 4, CRH_PALETTE, "c", min_size=1)
        phi, psi = random_map(rng, S, T), random_map(rng, T, U)
        if phi.crh is UNBOUNDED or psi.crh is UNBOUNDED:
            continue
        checked += 1
        if compose(psi, phi).crh > psi.crh * phi.crh:
            violations += 1
    # exhaustive over the two-element universe as well
    universe = brute.normed_sets(CLASSIFY_PALETTE, 2)
    bounded = [phi for S in universe for T in universe for phi in all_maps(S, T) if phi.is_bounded]
    for phi in bounded:
        for psi in bounded:
            if psi.domain == phi.codomain:
                checked += 1
                if compose(psi, phi).crh > psi.crh * phi.crh:
                    violations += 1
    assert checked > 2000
    assert violations == 0


# -- 3 ------------------------------------------------------------------------------


@criterion(3, "classify matches inverse/factorization brute force on all pairs with <= 3 elements, both categories")
def test_classification_exhaustive():
    universe = brute.normed_sets(CLASSIFY_PALETTE, 3)
    disagreements = []
    total = 0
    for S in universe:
        for T in universe:
            for phi in all_maps(S, T):
                total += 1
                report = classify(phi)
                expected = brute.brute_classify(phi, universe)
                for category in ("cset1", "csetinf"):
                    if report.flags(category) != expected[category]:
                        disagreements.append((phi, category))
    assert total == 15091
    assert disagreements == []


# -- 4 ------------------------------------------------------------------------------


@criterion(4, "product, coproduct, equalizer, coequalizer: unique mediators for every test cone, apex <= 3")
def test_universal_properties():
    apexes = brute.normed_sets(brute.DEFAULT_PALETTE, 3, prefix="p")
    objects = brute.normed_sets((0, 1, 2), 2)
    failures = []
    cones = 0

    def record(report):
        nonlocal cones
        cones += report.cones_checked
        if not report.ok:
            failures.append(report)

    for build in (product, coproduct):
        for category in ("cset1", "csetinf"):
            record(brute.verify_universal_property(build([]), [], apexes, category))
            for A in objects:
                for B in objects:
                    record(brute.verify_universal_property(build([A, B]), [A, B], apexes, category))
        triple = [NormedSet({"a": 1}), NormedSet({"b": 0, "c": 2}), NormedSet({"d": Fraction(1, 2)})]
        record(brute.verify_universal_property(build(triple), triple, apexes))

    for S in objects:
        for T in objects:
            contractions = [phi for phi in all_maps(S, T) if phi.is_contractive]
            for phi in contractions:
                for psi in contractions:
                    record(brute.verify_universal_property(equalizer(phi, psi), (phi, psi), apexes))
                    record(brute.verify_universal_property(coequalizer(phi, psi), (phi, psi), apexes))

    chain_d = NormedSet({"s": 0, "t": 0})
    chain_x = NormedSet({"p": 3, "q": 4, "r": 2})
    phi = NormedMap(chain_d, chain_x, {"s": "p", "t": "q"})
    psi = NormedMap(chain_d, chain_x, {"s": "q", "t": "r"})
    record(brute.verify_universal_property(coequalizer(phi, psi), (phi, psi), apexes))
    assert cones > 100_000
    assert failures == []


# -- 5 ------------------------------------------------------------------------------


@criterion(5, "projective/injective predicates match lifting/extension brute force; h_n obstruction at n = 2")
def test_projective_injective():
    # candidates carry norms in {0,1,2}; the test universe reaches norm 3 so that
    # every lifting obstruction (which needs a preimage heavier than f(s)) is visible
    universe = brute.normed_sets((0, 1, 2, 3), 3)
    epis = brute.epimorphisms(universe)
    mismatches = []
    for S in brute.normed_sets((0, 1, 2), 3, prefix="o"):
        if brute.brute_is_projective(S, universe, epis) != is_projective_cset1(S):
            mismatches.append(("projective", S))
        if brute.brute_is_injective(S, universe) != is_injective_cset1(S):
            mismatches.append(("injective", S))
    assert mismatches == []

    single = NormedSet({"a": 1})
    obstruction = brute.lifting_obstruction(single, 2)
    assert obstruction.obstructs and obstruction.violated_at == "a"
    assert classify(obstruction.epi).cset1.epi
    found = brute.lifting_counterexample(single, brute.normed_sets((0, 1, 2), 1), None)
    assert found is not None


# -- 6 ------------------------------------------------------------------------------


def _random_scalar(rng, complex_):
    re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    im = Fraction(rng.randint(-5, 5), rng.randint(1, 4)) if complex_ else Fraction(0)
    return Scalar(re, im)


def _random_target(rng):
    kind = rng.choice(("scalar", "free", "coords"))
    if kind == "scalar":
        return ScalarField()
    if kind == "free":
        return FreeSpace(random_set(rng, 3, CRH_PALETTE, "t", min_size=1))
    return CoordinateSpace(tuple(rng.choice(CRH_PALETTE[1:]) for _ in range(rng.randint(1, 3))))


def _random_element(rng, target, complex_):
    if isinstance(target, ScalarField):
        return _random_scalar(rng, complex_)
    if isinstance(target, FreeSpace):
        return FreeVector(target.base, {t: _random_scalar(rng, complex_) for t in target.base if rng.random() < 0.7})
    return tuple(_random_scalar(rng, complex_) for _ in range(target.dim))


def _random_bounded_images(rng, base, target, complex_):
    return {
        s: (_random_element(rng, target, complex_) if base.norm(s) != 0 else target.zero())
        for s in base
    }


def _random_vector(rng, base, complex_):
    return FreeVector(base, {s: _random_scalar(rng, complex_) for s in base if rng.random() < 0.8})


@criterion(6, "operator_norm(extend(phi)) = crh(phi) on 500 maps; uniqueness, round trips, functor laws exact")
def test_free_space_extension():
    rng = random.Random(6)
    problems = []
    for k in range(500):
        complex_ = k % 2 == 1
        base = random_set(rng, 4, CRH_PALETTE, "s", min_size=1)
        target = _random_target(rng)
        images = _random_bounded_images(rng, base, target, complex_)
        L = extend(images, base, target)
        expected = ratio_max((base.norm(s), target.norm(images[s])) for s in base)
        if L.operator_norm != expected or L.operator_norm != brute.extreme_point_norm(L, base):
            problems.append(("norm", k))
        # uniqueness: a linear map fixed by its generator values, evaluated by hand
        for _ in range(3):
            v = _random_vector(rng, base, complex_)
            by_hand = target.zero()
            for s, c in v.items():
                by_hand = target.add(by_hand, target.scale(c, images[s]))
            if L(v) != by_hand:
                problems.append(("unique", k))
            if target.norm(L(v)) > L.operator_norm * v.norm():
                problems.append(("bound", k))
        report = hom_roundtrip_check(base, target, [images], [_random_vector(rng, base, complex_)])
        if not report.ok:
            problems.append(("roundtrip", k, report.failures))

    for k in range(100):
        S = random_set(rng, 3, CRH_PALETTE, "a")
        T = random_set(rng, 3, CRH_PALETTE, "b", min_size=1)
        U = random_set(rng, 3, CRH_PALETTE, "c", min_size=1)
        alpha, beta = random_map(rng, S, T), random_map(rng, T, U)
        if not (alpha.is_bounded and beta.is_bounded):
            continue
        composite = compose_extensions(functor_on_map(beta), functor_on_map(alpha))
        direct = functor_on_map(compose(beta, alpha))
        v = _random_vector(rng, S, True)
        if composite(v) != direct(v):
            problems.append(("functor composition", k))
        if functor_on_map(identity(S))(v) != identity_extension(S)(v) or identity_extension(S)(v) != v:
            problems.append(("functor identity", k))
        if functor_on_map(alpha).operator_norm != alpha.crh:
            problems.append(("functor norm", k))
    assert problems == []


# -- 7 ------------------------------------------------------------------------------


@criterion(7, "scaled-free identity ||phi(s)|| (ext o zeta)(s) = f(s) phi(s) on 200 maps")
def test_scaled_free_identity():
    rng = random.Random(7)
    pythagorean = [Scalar(3, 4), Scalar(5, -12), Scalar(-8, 15), Scalar(0, 1), Scalar(1)]
    failures = 0
    for k in range(200):
        base = random_set(rng, 4, CRH_PALETTE, "s", min_size=1)
        if k % 2:
            target = ScalarField()
            images = {s: rng.choice(pythagorean) * Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for s in base}
        else:
            target = FreeSpace(random_set(rng, 3, CRH_PALETTE, "t", min_size=1))
            images = {s: _random_element(rng, target, False) for s in base}
        L = scaled_free_extend(images, base, target)
        for s in base:
            lhs = target.scale(Scalar(target.norm(images[s]).exact), L(zeta(base, s)))
            rhs = target.scale(Scalar(base.norm(s)), images[s])
            if lhs != rhs:
                failures += 1
    assert failures == 0


# -- 8 ------------------------------------------------------------------------------


def _random_tensor(rng, base, degree, terms=4, complex_=True):
    coeffs = {}
    for _ in range(rng.randint(0, terms)):
        n = rng.randint(1, degree)
        coeffs[tuple(rng.choice(base.labels) for _ in range(n))] = _random_scalar(rng, complex_)
    return TensorElement(base, coeffs)


def _substitute(images, x):
    """Evaluate a scalar-valued word map term by term, products written out."""
    total = Scalar(0)
    for word, c in x.items():
        value = Scalar(1)
        for letter in word:
            value = value * images[letter]
        total = total + c * value
    return total


@criterion(8, "algebra laws to degree 6; norm multiplicative on nonnegative coefficients; algebra extension laws")
def test_algebra_laws():
    rng = random.Random(8)
    F = ScalarField()
    problems = []
    for k in range(300):
        base = random_set(rng, 3, CRH_PALETTE, "g", min_size=1)
        x, y, z = (_random_tensor(rng, base, 2) for _ in range(3))
        if alg_mul(alg_mul(x, y), z) != alg_mul(x, alg_mul(y, z)):
            problems.append(("assoc", k))
        d = rng.randint(1, 5)
        u, v, w = _random_tensor(rng, base, d), _random_tensor(rng, base, 6 - d), _random_tensor(rng, base, 6 - d)
        c = _random_scalar(rng, True)
        if alg_mul(u, v + c * w) != alg_mul(u, v) + c * alg_mul(u, w):
            problems.append(("bilinear right", k))
        if alg_mul(c * v + w, u) != c * alg_mul(v, u) + alg_mul(w, u):
            problems.append(("bilinear left", k))
        if alg_norm(alg_mul(u, v)) > alg_norm(u) * alg_norm(v):
            problems.append(("submultiplicative", k))
        pu = TensorElement(base, {word: Scalar(abs(a.re)) for word, a in u.items()})
        pv = TensorElement(base, {word: Scalar(abs(a.re)) for word, a in v.items()})
        if alg_norm(alg_mul(pu, pv)) != alg_norm(pu) * alg_norm(pv):
            problems.append(("nonnegative equality", k))

        images = {s: Scalar(base.norm(s) * Fraction(rng.randint(-3, 3), 3)) for s in base}
        H = extend_to_algebra(images, base, F)
        if H(alg_mul(u, v)) != H(u) * H(v):
            problems.append(("multiplicative", k))
        if F.norm(H(u)) > alg_norm(u):
            problems.append(("contractive", k))
        if H(u) != _substitute(images, u):
            problems.append(("unique", k))
        L = extend(images, base, F)
        if any(H(kappa(base, s)) != L(zeta(base, s)) for s in base):
            problems.append(("degree one", k))
    assert problems == []


# -- 9 ------------------------------------------------------------------------------


@criterion(9, "one-generator free algebra equals positive-integer convolution, exhaustively to degree 20")
def test_one_generator_convolution():
    reports = [one_generator_convolution_check(w, 20, samples=25, seed=9) for w in (1, Fraction(1, 2), Fraction(3))]
    assert all(r.pairs_checked == 425 for r in reports)
    assert [r.failures for r in reports] == [[], [], []]


# -- 10 -----------------------------------------------------------------------------


@criterion(10, "counterexample witnesses: 2^n for n=1..20, Hilbert gap 2 f_s f_t, increasing stage bounds")
def test_counterexample_reproductions():
    for n in range(1, 21):
        w = witness_banalg_bounded(1, n)
        assert w.required_bound == 2**n and w.established

    rng = random.Random(10)
    for _ in range(100):
        a = Fraction(rng.randint(1, 50), rng.randint(1, 50))
        b = Fraction(rng.randint(1, 50), rng.randint(1, 50))
        w = witness_hilbert(a, b)
        assert w.gap == 2 * a * b
        assert w.required_bound == (a + b) ** 2 and w.violated_bound == a * a + b * b

    previous = None
    for k in range(1, 11):
        w = witness_set_reflection(Fraction(1, 2), k)
        assert w.required_bound == 2 * k
        assert previous is None or w.required_bound > previous
        previous = w.required_bound

    for kind in ("product", "coproduct"):
        previous = None
        for stage in range(1, 21):
            w = witness_csetinf_incompleteness(kind, stage)
            assert w.required_bound == stage and w.established
            assert previous is None or w.required_bound > previous
            previous = w.required_bound
