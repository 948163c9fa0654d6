"""
Estimating a distribution from left-truncated pairs
===================================================

A pair (x, y) is only recorded when y <= x. Small x values are therefore
under-represented, and the plain ECDF of x is biased upwards.
"""

# %%
import numpy as np

from truncstat import detect_holes, lynden_bell, modified_weights, validate_and_sort
from truncstat.models import make_model
from truncstat.simulation import draw_observed_sample

# %% A three-row sample, small enough to check by hand.
pairs = [(1.0, 0.5), (2.0, 0.4), (3.0, 2.5)]
s = validate_and_sort(pairs)
est = lynden_bell(s)
print("points      ", est.points)
print("risk counts ", est.risk)
print("weights     ", est.weights)
print("cdf         ", est.cdf)

# %%
# The third pair starts at 2.5, so nothing except the second pair covers 2.
# The risk count there equals the multiplicity: an empty inner risk set.
# Every point to its right gets weight zero.
print(detect_holes(s))

# %%
# The modified estimator adds one to each risk count inside the product, so
# mass can pass the hole. Its weights need not sum to one.
mod = modified_weights(s)
print("modified weights", mod.weights, "total", mod.total_mass)

# %% A simulated sample from Exp(1) lifetimes truncated by Exp(1).
model = make_model("exp-exp:1,1")
sample = draw_observed_sample(model, 400, seed=0)
est = lynden_bell(sample)
grid = np.array([0.25, 0.5, 1.0, 2.0])
print("naive ECDF  ", np.mean(sample.x[:, None] <= grid, axis=0).round(3))
print("Lynden-Bell ", est(grid).round(3))
print("true F      ", (1 - np.exp(-grid)).round(3))
