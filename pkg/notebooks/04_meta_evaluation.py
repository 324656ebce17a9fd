# %% [markdown]
# # Meta-evaluation against judgments
#
# Kendall's tau between metric scores and human ratings, here on a small
# synthetic corpus whose "ratings" are a noisy function of how much of the
# reference survives in the summary. Pass real SummEval annotations to
# `load_corpus(path, "summeval")` to run the same cells on real data.

# %%
import numpy as np

from widar.bench import synthetic_corpus
from widar.metaeval import correlate, format_table, run_ablation, score_corpus, with_lambda
from widar.metric import MetricConfig
from widar.records import EvalRecord, JudgmentRecord
from widar.rouge import rouge_n

rng = np.random.default_rng(7)
base = synthetic_corpus(60, doc_sents=12, seed=7)
corpus = []
for rec in base:
    signal = rouge_n(rec.summary, rec.references[0], 1).fscore
    rate = lambda: float(np.clip(1 + 4 * signal + rng.normal(0, 0.8), 1, 5))
    judg = JudgmentRecord(rec.record_id, rate(), rate(), rate(), rate())
    corpus.append(EvalRecord(rec.record_id, rec.document, rec.references, rec.summary, judg))

# %%
judgments = [r.judgments for r in corpus]
reports = {
    name: correlate(score_corpus(corpus, cfg), judgments)
    for name, cfg in [("WIDAR_L", MetricConfig()), ("WIDAR_1", MetricConfig(variant="1"))]
}
print(format_table(reports))

# %% [markdown]
# Ablation rows drop one ingredient at a time.

# %%
print(format_table(run_ablation(corpus, MetricConfig())))

# %% [markdown]
# Average tau as lambda varies.

# %%
for lam in np.linspace(0, 1, 5):
    rep = correlate(score_corpus(corpus, with_lambda(MetricConfig(), float(lam))), judgments)
    print(f"lambda={lam:.2f} average tau={rep.average:.4f}")
