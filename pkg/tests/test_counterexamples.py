from fractions import Fraction

import pytest
from hypothesis import given

from scaledfree import (
    witness_banalg_bounded,
    witness_csetinf_incompleteness,
    witness_hilbert,
    witness_set_reflection,
)
from scaledfree.errors import ZeroNormError

from strategies import positive_rationals


def test_set_reflection_examples():
    w = witness_set_reflection(1, 10)
    assert w.required_bound == 10 and w.established
    assert witness_set_reflection(Fraction(1, 2), 3).required_bound == 6
    zero = witness_set_reflection(1, 0)
    assert zero.required_bound == 0 and not zero.established


def test_banalg_examples():
    assert witness_banalg_bounded(1, 3).required_bound == 8
    assert witness_banalg_bounded(1, 1).required_bound == 2
    w = witness_banalg_bounded(Fraction(1, 2), 4)
    assert w.required_bound == 16
    assert any("= 1 " in step or step.endswith("= 1") for step in w.narrative)


def test_banalg_respects_degree_cap():
    with pytest.raises(ValueError):
        witness_banalg_bounded(1, 5, degree_cap=4)


def test_hilbert_examples():
    assert witness_hilbert(1, 1).gap == 2
    w = witness_hilbert(1, 2)
    assert (w.required_bound, w.violated_bound, w.gap) == (9, 5, 4)
    assert w.parameters["inner_product"] == 0


def test_hilbert_needs_two_nonzero_generators():
    with pytest.raises(ZeroNormError):
        witness_hilbert(1, 0)


@given(positive_rationals, positive_rationals)
def test_hilbert_gap_both_fields(a, b):
    for field in ("complex", "real"):
        assert witness_hilbert(a, b, field=field).gap == 2 * a * b


def test_csetinf_examples():
    assert witness_csetinf_incompleteness("product", 5).required_bound >= 5
    assert witness_csetinf_incompleteness("coproduct", 1).required_bound == 1
    assert (
        witness_csetinf_incompleteness("coproduct", 8).required_bound
        > witness_csetinf_incompleteness("coproduct", 4).required_bound
    )


def test_csetinf_leg_bound_scales_demand():
    w = witness_csetinf_incompleteness("product", 6, leg_bound=2)
    assert w.required_bound == 3


def test_csetinf_rejects_bad_kind():
    with pytest.raises(ValueError):
        witness_csetinf_incompleteness("limit", 2)
