"""
Linear representation and its remainder
=======================================

The scaled error sqrt(n)(estimate - truth) splits into a mean of independent
terms plus a remainder. The remainder shrinks as n grows, so the mean of
independent terms carries the limiting normal law.
"""

# %%
from truncstat import ScoreFunction
from truncstat.inference import representation_terms
from truncstat.models import make_model
from truncstat.simulation import draw_observed_sample, remainder_decay_study

model = make_model("uniform-uniform:1,2,0,2")
phi = ScoreFunction.identity()

t = representation_terms(draw_observed_sample(model, 800, seed=3), model, phi)
print(f"lhs {t.lhs:.4f}  linear part {t.lhs - t.remainder:.4f}  remainder {t.remainder:.5f}")

# %%
# Without truncation the representation is exact.
flat = make_model("no-truncation:1")
t0 = representation_terms(draw_observed_sample(flat, 800, seed=3), flat, phi)
print(f"no truncation: remainder {t0.remainder:.2e}")

# %%
rep = remainder_decay_study(model, phi, [100, 400, 1600], reps=100, seed=4)
for r in rep.records:
    print(f"n={r.n:5d}  median |remainder| {r.median_abs_remainder:.4f}"
          f"  90% quantile {r.q90_abs_remainder:.4f}")
