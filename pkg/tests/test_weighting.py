import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import unit
from widar.errors import EmptyDocument, LengthMismatch
from widar.weighting import combine_weights, coverage_weights, redundancy_weights, sentence_weights

DOC = (
    ("storm", "hits", "coast"),
    ("the", "mayor", "declared", "an", "emergency"),
    ("schools", "closed", "friday"),
)


def test_coverage_verbatim_copy_of_one_sentence():
    R = (DOC[1],)
    assert coverage_weights(R, DOC, 0.1) == [1 / 3]


def test_coverage_vacuous_threshold_and_no_overlap():
    R = (("unrelated", "words"), DOC[0])
    assert coverage_weights(R, DOC, 0.0) == [1.0, 1.0]
    assert coverage_weights(R, DOC, 0.1)[0] == 0.0


def test_coverage_needs_document():
    with pytest.raises(EmptyDocument):
        coverage_weights((("a",),), (), 0.1)


def test_coverage_uses_recall_of_reference_sentence():
    # "a b c d" vs "a x c y": 2 of 4 reference tokens covered
    R = (("a", "b", "c", "d"),)
    D = (("a", "x", "c", "y"),)
    assert coverage_weights(R, D, 0.5) == [1.0]
    assert coverage_weights(R, D, 0.51) == [0.0]


def test_redundancy_examples():
    twin = ("a", "b", "c")
    R = (twin, twin, ("x", "y"))
    assert redundancy_weights(R, 0.3) == pytest.approx([2 / 3, 2 / 3, 1.0], abs=1e-15)
    assert redundancy_weights((twin,), 0.3) == [1.0]
    same = (twin,) * 4
    assert redundancy_weights(same, 0.3) == pytest.approx([1 / 4] * 4)


def test_combine_examples():
    assert combine_weights([0.3], [0.9]).w == (1.0,)
    sw = combine_weights([1, 0], [1, 1])
    assert sw.w == pytest.approx((4 / 3, 2 / 3), abs=1e-15)
    assert sum(sw.w) == pytest.approx(2)
    assert combine_weights([0, 0], [0, 0]).w == (1.0, 1.0)
    with pytest.raises(LengthMismatch):
        combine_weights([1], [1, 1])


def test_combine_single_parts():
    sw = combine_weights([1.0, 0.0], [0.5, 0.5], "coverage")
    assert sw.w == (2.0, 0.0)
    sw = combine_weights([1.0, 0.0], [0.5, 0.5], "redundancy")
    assert sw.w == (1.0, 1.0)
    with pytest.raises(ValueError):
        combine_weights([1.0], [1.0], "nope")


@given(unit, unit, st.floats(0, 1), st.floats(0, 1))
def test_weight_contract(R, D, t1, t2):
    sw = sentence_weights(R, D, t1, t2)
    assert len(sw.w_cov) == len(sw.w_red) == len(sw.w) == len(R)
    assert all(0 <= v <= 1 for v in sw.w_cov + sw.w_red)
    assert all(v >= 0 for v in sw.w)
    if sw.w == (1.0,) * len(R):
        return
    assert sum(sw.w) == pytest.approx(len(R), abs=1e-9)


@given(unit, st.floats(0, 1), st.randoms())
def test_redundancy_permutation_equivariant(R, t2, rnd):
    order = list(range(len(R)))
    rnd.shuffle(order)
    base = redundancy_weights(R, t2)
    perm = redundancy_weights(tuple(R[i] for i in order), t2)
    assert perm == [base[i] for i in order]


@given(unit, unit, st.floats(0, 1), st.floats(0, 1))
def test_threshold_monotonicity(R, D, a, b):
    lo, hi = sorted((a, b))
    assert all(x >= y for x, y in zip(coverage_weights(R, D, lo), coverage_weights(R, D, hi)))
    assert all(x <= y for x, y in zip(redundancy_weights(R, lo), redundancy_weights(R, hi)))
