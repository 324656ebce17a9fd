# %% [markdown]
# # ROUGE variants side by side
#
# Summary-level ROUGE-L, the flat LCS over concatenated tokens, and the
# sentence-level scores that keep each reference sentence's matches apart
# so they can be weighted.

# %%
from widar.rouge import rouge_l_flat, rouge_l_summary, rouge_n
from widar.metric import rouge_l_sl, rouge_n_sl
from widar.text import as_unit, union_lcs_positions

reference = as_unit("The police arrested two men. The men were released on bail.")
candidate = as_unit("Two men were released on bail. The police had arrested them.")

# %% [markdown]
# n-grams are always taken within a sentence, so without weights the
# sentence-level scores agree with plain ROUGE-N.

# %%
for name, score in [
    ("ROUGE-2", rouge_n(candidate, reference, 2)),
    ("ROUGE-2_SL", rouge_n_sl(candidate, reference, 2)),
    ("ROUGE-1", rouge_n(candidate, reference, 1)),
    ("ROUGE-1_SL", rouge_n_sl(candidate, reference, 1)),
]:
    print(f"{name:<11} r={score.recall:.4f} p={score.precision:.4f} f={score.fscore:.4f}")

# %% [markdown]
# Weights change that. Doubling the first reference sentence and halving
# the second shifts recall toward whatever the first sentence shares.

# %%
for w in ([1.0, 1.0], [1.5, 0.5], [0.5, 1.5]):
    print(w, round(rouge_n_sl(candidate, reference, 1, w).recall, 4))

# %% [markdown]
# For ROUGE-L, each reference sentence is matched against every candidate
# sentence and the union of matched positions is kept.

# %%
for i, ref_sent in enumerate(reference):
    hits = sorted(union_lcs_positions(ref_sent, candidate))
    print(i, " ".join(ref_sent), "->", [ref_sent[k] for k in hits])

# %% [markdown]
# Unweighted, the sentence-level score is summary-level ROUGE-L. The flat
# LCS runs over the concatenated token streams, so a candidate that tells
# the story in the opposite order can only get credit for one sentence.

# %%
for name, score in [
    ("summary-level", rouge_l_summary(candidate, reference)),
    ("sentence-level", rouge_l_sl(candidate, reference)),
    ("flat LCS", rouge_l_flat(candidate, reference)),
]:
    print(f"{name:<15} f={score.fscore:.4f}")
