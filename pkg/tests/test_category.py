from fractions import Fraction

import pytest
from hypothesis import given, settings

from scaledfree import (
    NormedMap,
    NormedSet,
    classify,
    coequalizer,
    coproduct,
    equalizer,
    identity,
    is_injective_cset1,
    is_projective_cset1,
    product,
    singleton_decomposition,
)
from scaledfree.brute import (
    brute_classify,
    brute_is_injective,
    lifting_obstruction,
    normed_sets as universe_of,
    verify_universal_property,
)
from scaledfree.category import mediate_coequalizer, mediate_product
from scaledfree.errors import ParallelMismatchError

from strategies import normed_maps, normed_sets

SMALL = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
TEST_OBJECTS = universe_of(SMALL, 2)
APEXES = universe_of((0, 1, 2, 3, 5), 2)


def test_identity_is_iso_everywhere():
    report = classify(identity(NormedSet({"a": 1, "b": 0})))
    for flags in (report.cset1, report.csetinf):
        assert all(flags.as_dict().values())


def test_norm_preserving_injection_is_section():
    phi = NormedMap(NormedSet({"a": 1}), NormedSet({"x": 1, "y": 2}), {"a": "x"})
    report = classify(phi)
    assert report.cset1.section
    assert not report.cset1.retraction
    assert brute_classify(phi, TEST_OBJECTS)["cset1"].section


def test_section_needs_complement_dominated():
    # y has norm 1/2 < f(a), so no contraction back onto a exists
    phi = NormedMap(NormedSet({"a": 1}), NormedSet({"x": 1, "y": Fraction(1, 2)}), {"a": "x"})
    assert not classify(phi).cset1.section


def test_rescaled_bijection():
    phi = NormedMap(NormedSet({"a": 2}), NormedSet({"x": 1}), {"a": "x"})
    report = classify(phi)
    assert report.cset1.mono and report.cset1.epi
    assert not report.cset1.iso
    assert report.csetinf.iso
    assert report.lower_ratio == Fraction(1, 2)


def test_unbounded_map_has_no_flags():
    phi = NormedMap(NormedSet({"a": 0}), NormedSet({"x": 1}), {"a": "x"})
    report = classify(phi)
    assert report.cset1 is None and report.csetinf is None


def test_bounded_not_contractive_only_in_csetinf():
    phi = NormedMap(NormedSet({"a": 1}), NormedSet({"x": 3}), {"a": "x"})
    report = classify(phi)
    assert report.cset1 is None
    assert report.csetinf.iso


@settings(max_examples=150)
@given(normed_maps(max_size=3, palette=SMALL))
def test_classify_matches_brute_force(phi):
    expected = brute_classify(phi, TEST_OBJECTS)
    report = classify(phi)
    assert report.cset1 == expected["cset1"]
    assert report.csetinf == expected["csetinf"]


def test_product_example():
    r = product([NormedSet({"a": 2}), NormedSet({"b": 3})])
    assert r.obj == NormedSet({("a", "b"): 3})
    assert verify_universal_property(r, [NormedSet({"a": 2}), NormedSet({"b": 3})], APEXES).ok


def test_empty_product_is_terminal():
    r = product([])
    assert r.obj == NormedSet({(): 0})
    assert verify_universal_property(r, [], APEXES).ok


def test_product_with_zero_singleton_is_isomorphic():
    S = NormedSet({"a": 1, "b": Fraction(1, 2)})
    r = product([S, NormedSet({"*": 0})])
    assert classify(r.legs[0]).cset1.iso


def test_mediator_of_product():
    A, B = NormedSet({"a": 1}), NormedSet({"b": 2, "c": 0})
    r = product([A, B])
    apex = NormedSet({"p": 2})
    m = mediate_product(r, [NormedMap(apex, A, {"p": "a"}), NormedMap(apex, B, {"p": "c"})])
    assert m("p") == ("a", "c")
    assert m.is_contractive


def test_coproduct_example():
    r = coproduct([NormedSet({"a": 1}), NormedSet({"a": 2})])
    assert r.obj == NormedSet({(0, "a"): 1, (1, "a"): 2})
    assert verify_universal_property(r, [NormedSet({"a": 1}), NormedSet({"a": 2})], APEXES).ok


def test_empty_coproduct_is_initial():
    r = coproduct([])
    assert len(r.obj) == 0
    assert verify_universal_property(r, [], APEXES).ok


def test_singleton_decomposition():
    S = NormedSet({"a": 1, "b": 3})
    r, back = singleton_decomposition(S)
    assert classify(back).cset1.iso
    assert len(r.legs) == 2


def test_equalizer_examples():
    S, T = NormedSet({"a": 1, "b": 2}), NormedSet({"x": 1, "y": 2})
    phi = NormedMap(S, T, {"a": "x", "b": "y"})
    psi = NormedMap(S, T, {"a": "x", "b": "x"})
    r = equalizer(phi, psi)
    assert r.obj == NormedSet({"a": 1})
    assert verify_universal_property(r, (phi, psi), APEXES).ok
    assert equalizer(phi, phi).obj == S
    other = NormedMap(S, T, {"a": "y", "b": "x"})
    assert len(equalizer(phi, other).obj) == 0


def test_equalizer_rejects_non_parallel():
    S, T = NormedSet({"a": 1}), NormedSet({"x": 1})
    with pytest.raises(ParallelMismatchError):
        equalizer(identity(S), identity(T))


def test_coequalizer_examples():
    D, X = NormedSet({"s": 1}), NormedSet({"x": 1, "y": 5})
    phi, psi = NormedMap(D, X, {"s": "x"}), NormedMap(D, X, {"s": "y"})
    r = coequalizer(phi, psi)
    assert r.obj == NormedSet({"x": 1})
    assert verify_universal_property(r, (phi, psi), APEXES).ok
    assert coequalizer(phi, phi).obj == X


def test_coequalizer_chain_merge():
    D = NormedSet({"s": 0, "t": 0})
    X = NormedSet({"p": 3, "q": 4, "r": 2})
    phi = NormedMap(D, X, {"s": "p", "t": "q"})
    psi = NormedMap(D, X, {"s": "q", "t": "r"})
    r = coequalizer(phi, psi)
    assert r.obj == NormedSet({"p": 2})
    assert verify_universal_property(r, (phi, psi), APEXES).ok
    leg = NormedMap(X, NormedSet({"z": 2}), {"p": "z", "q": "z", "r": "z"})
    assert mediate_coequalizer(r, leg).is_contractive


@settings(max_examples=40, deadline=None)
@given(normed_sets(0, 2, palette=SMALL, prefix="a"), normed_sets(0, 2, palette=SMALL, prefix="b"))
def test_binary_products_and_coproducts_are_universal(A, B):
    apexes = universe_of(SMALL, 2)
    for build in (product, coproduct):
        r = build([A, B])
        assert verify_universal_property(r, [A, B], apexes).ok


def test_projective_and_injective_examples():
    assert is_projective_cset1(NormedSet())
    assert is_injective_cset1(NormedSet({"a": 0, "b": 0}))
    S = NormedSet({"a": 1})
    assert not is_projective_cset1(S) and not is_injective_cset1(S)
    assert not is_injective_cset1(NormedSet())


def test_lifting_obstruction_at_two():
    obs = lifting_obstruction(NormedSet({"a": 1}), 2)
    assert obs.obstructs
    assert obs.violated_at == "a"
    assert classify(obs.epi).cset1.epi


def test_lifting_succeeds_when_norms_are_large():
    assert not lifting_obstruction(NormedSet({"a": 3}), 2).obstructs


def test_injectivity_brute_force():
    universe = universe_of((0, 1, 2), 2)
    assert brute_is_injective(NormedSet({"a": 0}), universe)
    assert not brute_is_injective(NormedSet({"a": 1}), universe)
    assert not brute_is_injective(NormedSet(), universe)
