from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import small_unit, unit
from widar.errors import EmptyInput, LengthMismatch, NoReferences
from widar.metric import (
    MetricConfig,
    combine,
    idss,
    rouge_l_sl,
    rouge_n_sl,
    widar,
    widar_multi,
    widar_score,
)
from widar.records import EvalRecord
from widar.rouge import RougeScore, rouge_l_summary, rouge_n
from widar.weighting import combine_weights

WORKED_REF = (("w1", "w2", "w3", "w4", "w5"),)
WORKED_CAND = (("w1", "w2", "w6", "w7", "w8"), ("w1", "w3", "w8", "w9", "w5"))

weights_for = st.lists(st.floats(0.05, 3.0), min_size=4, max_size=4)


def rec(S, R, D, rid="x"):
    refs = R if isinstance(R[0][0], tuple) else (R,)
    return EvalRecord(rid, D, refs, S)


def test_bridge_ngrams_are_discarded():
    S = (("a", "b"), ("c", "d"))
    R = (("b", "c"),)
    assert rouge_n_sl(S, R, 2).as_tuple() == (0.0, 0.0, 0.0)
    # the concatenated stream would contain the bridge bigram (b, c)
    flat = (tuple(t for s in S for t in s),)
    assert rouge_n(flat, R, 2).recall == 1.0


def test_rouge_n_sl_identity_and_worked_l():
    x = (("a", "b", "c"), ("d", "e"))
    assert rouge_n_sl(x, x, 2, [1.0, 1.0]).as_tuple() == (1.0, 1.0, 1.0)
    s = rouge_l_sl(WORKED_CAND, WORKED_REF)
    assert s.as_tuple() == rouge_l_summary(WORKED_CAND, WORKED_REF).as_tuple()
    assert s.recall == pytest.approx(0.8) and s.precision == pytest.approx(0.4)


def test_weight_length_checked():
    with pytest.raises(LengthMismatch):
        rouge_n_sl(WORKED_CAND, WORKED_REF, 1, [1.0, 1.0])


def test_weights_shift_recall_toward_heavy_sentences():
    S = (("a", "b"),)
    R = (("a", "b"), ("x", "y"))
    assert rouge_l_sl(S, R).recall == 0.5
    assert rouge_l_sl(S, R, [1.5, 0.5]).recall == pytest.approx(0.75)
    assert rouge_n_sl(S, R, 1, [1.5, 0.5]).recall == pytest.approx(0.75)


def test_weighted_precision_saturates():
    S = (("a",),)
    R = (("a",), ("z",))
    s = rouge_l_sl(S, R, [2.0, 0.0])
    assert s.precision == 1.0 and s.recall == 1.0


def test_literal_denominators():
    s = rouge_l_sl(WORKED_CAND, WORKED_REF, literal=True)
    # 4 union hits over 1 reference sentence and 2 candidate sentences
    assert s.recall == 4.0 and s.precision == 2.0


@given(unit, unit)
def test_rouge1_sl_is_rouge1(S, R):
    assert rouge_n_sl(S, R, 1) == rouge_n(S, R, 1)


@given(unit, unit, st.sampled_from([1, 2, "L"]))
def test_weight_neutrality(S, R, k):
    ones = [1.0] * len(R)
    if k == "L":
        assert rouge_l_sl(S, R, ones) == rouge_l_sl(S, R)
    else:
        assert rouge_n_sl(S, R, k, ones) == rouge_n_sl(S, R, k)


@given(unit, unit, weights_for, st.sampled_from([0.25, 0.5, 2.0, 8.0]), st.sampled_from([1, 2, "L"]))
def test_weight_scaling_leaves_recall_unchanged(S, R, w, c, k):
    w = w[: len(R)] + [1.0] * (len(R) - len(w))
    scaled = [c * x for x in w]
    if k == "L":
        assert rouge_l_sl(S, R, scaled).recall == rouge_l_sl(S, R, w).recall
    else:
        assert rouge_n_sl(S, R, k, scaled).recall == rouge_n_sl(S, R, k, w).recall


@given(unit, unit, unit)
def test_components_in_unit_interval(S, R, D):
    for k in ("1", "2", "L"):
        res = widar(rec(S, R, D), MetricConfig(variant=k))
        for score in (res.widar, res.rouge_w, res.idss):
            assert all(0.0 <= v <= 1.0 for v in score.as_tuple())


@settings(max_examples=200)
@given(small_unit, small_unit, weights_for)
def test_sentence_level_matches_brute_force(S, R, w):
    w = w[: len(R)]
    for n in (1, 2):
        got = rouge_n_sl(S, R, n, w).as_tuple()
        exp = oracles.rouge_n_sl(S, R, n, w)
        assert got == pytest.approx([float(v) for v in exp], abs=1e-12)
    got = rouge_l_sl(S, R, w).as_tuple()
    assert got == pytest.approx([float(v) for v in oracles.rouge_l(S, R, w)], abs=1e-12)


def test_idss():
    D = (("a", "b"), ("c",))
    assert idss(D, D).fscore == 1.0
    assert idss((("z",),), D).fscore == 0.0
    with pytest.raises(EmptyInput):
        idss((), D)


def test_combine_arithmetic():
    rw = RougeScore(0.1, 0.9, 0.4)
    assert combine(0.2, rw, 0.5).fscore == pytest.approx(0.3)
    assert combine(0.2, rw, 1.0).as_tuple() == rw.as_tuple()
    assert combine(0.2, rw, 0.0).as_tuple() == (0.2, 0.2, 0.2)


@given(unit, unit, unit, st.sampled_from(["1", "2", "L"]))
def test_lambda_is_affine(S, R, D, k):
    r = rec(S, R, D)
    at = {lam: widar(r, MetricConfig(variant=k, lam=lam)) for lam in (0.0, 0.5, 1.0)}
    assert at[1.0].widar.as_tuple() == at[1.0].rouge_w.as_tuple()
    assert at[0.0].widar.as_tuple() == (at[0.0].idss.fscore,) * 3
    mid = [(a + b) / 2 for a, b in zip(at[0.0].widar.as_tuple(), at[1.0].widar.as_tuple())]
    assert at[0.5].widar.as_tuple() == pytest.approx(mid, abs=1e-12)


def test_lambda_strategies():
    D = (("a", "b"), ("c", "d"), ("e", "f"), ("g", "h"))
    R = (("a", "b"), ("c", "x"), ("y", "z"))
    S = (("a", "b", "c"),)
    r = rec(S, R, D)
    res = widar(r, MetricConfig(lambda_strategy="max_cov", lam=0.9))
    assert res.weights[0].w_cov == (0.25, 0.25, 0.0)
    assert res.lambda_used == 0.25
    res = widar(r, MetricConfig(lambda_strategy="mean_cov"))
    assert res.lambda_used == pytest.approx(1 / 6)
    assert res.widar.fscore == pytest.approx((1 - 1 / 6) * res.idss.fscore + res.rouge_w.fscore / 6)


def test_uniform_weighting_is_sentence_level_rouge():
    D = (("a", "b"), ("c", "d"))
    R = (("a", "b"), ("q", "r"))
    S = (("a", "b"),)
    res = widar(rec(S, R, D), MetricConfig(weighting="uniform", lam=1.0))
    assert res.widar == rouge_l_sl(S, R)


def test_widar_multi_aggregation():
    D = (("a", "b", "c", "d"),)
    S = (("a", "b"),)
    refs = ((("a", "b", "x", "y"),), (("a", "q", "r", "s"),))
    one = [widar(EvalRecord("x", D, (r,), S)).widar.fscore for r in refs]
    multi = EvalRecord("x", D, refs, S)
    assert widar_multi(multi).widar.fscore == pytest.approx(sum(one) / 2)
    assert widar_multi(multi, MetricConfig(multi_ref_agg="max")).widar.fscore == max(one)
    single = EvalRecord("x", D, refs[:1], S)
    assert widar_multi(single) == widar(single)
    with pytest.raises(NoReferences):
        widar_multi(EvalRecord("x", D, (), S))
    with pytest.raises(ValueError):
        widar(multi)


def test_config_validation_and_fingerprint():
    cfg = MetricConfig()
    assert (cfg.variant, cfg.component, cfg.lam, cfg.theta1, cfg.theta2) == ("L", "f", 0.5, 0.1, 0.3)
    assert cfg.fingerprint() == MetricConfig().fingerprint()
    assert cfg.fingerprint() != replace(cfg, lam=0.4).fingerprint()
    assert MetricConfig(variant="l").variant == "L"
    for bad in ({"lam": 1.5}, {"variant": "3"}, {"theta1": -0.1}, {"lambda_strategy": "x"}):
        with pytest.raises(ValueError):
            MetricConfig(**bad)


def test_widar_score_text_entry_point():
    doc = "Storm hits coast. The mayor declared an emergency."
    res = widar_score(doc, [doc, doc], doc)
    assert res.widar.fscore == pytest.approx(1.0)
    assert widar_score("x y", "x y", doc, lam=0.0).widar.fscore == 0.0
