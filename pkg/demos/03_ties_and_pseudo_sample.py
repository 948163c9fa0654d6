"""
Ties and the pseudo-sample
==========================

With tied x values the tie-free product formula does not apply. Spreading
each tie group over the jump of F* gives a tie-free pseudo-sample whose
estimate carries the same integrals.
"""

# %%
import numpy as np

from truncstat import ScoreFunction, build_pseudo_sample, lb_integral, lynden_bell
from truncstat.estimator import risk_counts
from truncstat.sample import empirical_fstar, validate_and_sort

pairs = [(2.0, 0.0), (2.0, 1.0), (3.0, 0.5), (1.0, 0.0), (3.0, 3.0), (4.0, 1.0)]
s = validate_and_sort(pairs)
ps = build_pseudo_sample(s, empirical_fstar(s), placement="even")
print("u    ", ps.u.round(4))
print("x    ", ps.x)

# %%
# Within a tie group the pseudo risk counts start at the original count and
# drop by one per tie.
print("original risk counts", risk_counts(s))
print("pseudo risk counts  ", risk_counts(ps.as_sorted()))

# %%
phi = ScoreFunction.power(2)
est_u = lynden_bell(ps.as_sorted())
print("pseudo integral  ", float(est_u.weights @ phi(ps.x)))
print("original integral", lb_integral(s, phi))
assert np.isclose(float(est_u.weights @ phi(ps.x)), lb_integral(s, phi), atol=1e-12)
