"""WIDAR: weighted, input-document augmented ROUGE and its meta-evaluation."""

from .metaeval import CorrelationReport, correlate, judgment_intercorrelation, kendall_tau, run_ablation
from .metric import MetricConfig, WidarResult, idss, rouge_l_sl, rouge_n_sl, widar, widar_multi, widar_score
from .records import DIMENSIONS, EvalRecord, JudgmentRecord
from .rouge import RougeScore, rouge_l_pair, rouge_l_summary, rouge_n
from .text import as_unit, lcs_len, ngrams, split_sentences, tokenize_sentence, union_lcs
from .weighting import SentenceWeights, combine_weights, coverage_weights, redundancy_weights

__version__ = "0.1.0"
