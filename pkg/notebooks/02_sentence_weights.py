# %% [markdown]
# # Reference sentence weights
#
# A reference sentence earns coverage when it resembles many document
# sentences and loses redundancy credit when a sibling already says the same.

# %%
from widar.text import as_unit
from widar.weighting import sentence_weights

document = as_unit(
    "Heavy rain flooded the valley on Monday. "
    "Rescue teams evacuated three villages. "
    "The river rose two metres above its usual level. "
    "Officials expect the water to recede by Friday."
)
reference = as_unit(
    "Rain flooded the valley. "
    "Floods hit the valley after heavy rain. "
    "A local bakery gave away free bread."
)

# %%
sw = sentence_weights(reference, document)
for sent, c, r, w in zip(reference, sw.w_cov, sw.w_red, sw.w):
    print(f"cov={c:.3f} red={r:.3f} w={w:.3f}  {' '.join(sent)}")
print("sum of weights:", round(sum(sw.w), 12), "sentences:", len(reference))

# %% [markdown]
# The off-topic bakery sentence matches no document sentence and gets the
# lowest coverage. The two near-duplicates pull each other's redundancy down.
#
# Raising the thresholds makes a match harder to earn.

# %%
for t1 in (0.0, 0.1, 0.3, 0.6):
    print("theta1", t1, [round(x, 3) for x in sentence_weights(reference, document, theta1=t1).w_cov])
for t2 in (0.1, 0.3, 0.6, 1.0):
    print("theta2", t2, [round(x, 3) for x in sentence_weights(reference, document, theta2=t2).w_red])
