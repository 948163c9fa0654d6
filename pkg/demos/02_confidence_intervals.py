"""
Plug-in variance and normal intervals
=====================================

``confidence_interval`` returns the estimate of the integral of phi under
F, the plug-in variance of the influence terms, and a normal interval.
"""

# %%
from truncstat import ScoreFunction, confidence_interval
from truncstat.models import make_model
from truncstat.simulation import coverage_study, draw_observed_sample

model = make_model("uniform-uniform:1,2,0,2")
sample = draw_observed_sample(model, 500, seed=1)

for phi in (ScoreFunction.identity(), ScoreFunction.indicator(1.5)):
    res = confidence_interval(sample, phi, level=0.95)
    print(f"{phi.spec:16s} estimate {res.estimate:.4f}  truth {model.mean_phi(phi):.4f}"
          f"  95% CI ({res.ci[0]:.4f}, {res.ci[1]:.4f})")

# %%
# Coverage over repeated samples. The Monte Carlo variance of the scaled
# error should match the average plug-in variance.
rep = coverage_study(model, ScoreFunction.identity(), 500, reps=400, seed=2)
r = rep.records[0]
print(f"coverage {r.coverage:.3f} +- {r.mc_se:.3f}")
print(f"mean plug-in variance {r.mean_sigma2:.4f}  Monte Carlo variance {r.mc_variance:.4f}")
