# %% [markdown]
# # Scoring summaries
#
# WIDAR blends the summary's similarity to the source document with a
# weighted, sentence-level ROUGE against the reference.

# %%
from widar import widar_score

document = (
    "Heavy rain flooded the valley on Monday. Rescue teams evacuated three villages. "
    "The river rose two metres above its usual level. Officials expect the water to recede by Friday."
)
reference = "Rain flooded the valley and villages were evacuated. Water should recede by Friday."
summaries = {
    "faithful": "Floods forced the evacuation of three villages. The water should recede by Friday.",
    "copy of lead": "Heavy rain flooded the valley on Monday.",
    "off topic": "A local bakery gave away free bread on Friday.",
}

# %%
for name, text in summaries.items():
    res = widar_score(text, reference, document)
    print(f"{name:<13} widar={res.widar.fscore:.4f} rouge_w={res.rouge_w.fscore:.4f} idss={res.idss.fscore:.4f}")

# %% [markdown]
# Sweeping lambda moves each score in a straight line from IDSS (lambda=0)
# to the weighted ROUGE (lambda=1).

# %%
for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
    row = [widar_score(t, reference, document, lam=lam).widar.fscore for t in summaries.values()]
    print(f"lambda={lam:.2f}", " ".join(f"{v:.4f}" for v in row))

# %% [markdown]
# Several references are scored one at a time and averaged (or maxed).

# %%
refs = [reference, "Three villages were evacuated after the valley flooded."]
for agg in ("mean", "max"):
    print(agg, round(widar_score(summaries["faithful"], refs, document, multi_ref_agg=agg).widar.fscore, 4))
