"""Lynden-Bell estimation and inference for left-truncated data."""

__version__ = "0.1.0"

from .errors import AssumptionWarning, TruncstatError
from .estimator import (HoleReport, LBEstimate, ModifiedEstimate, StepFunction, c_n,
                        cumulative_hazard, detect_holes, fstar_mass, fstar_n, gamma_n,
                        lynden_bell, lynden_bell_tie_free, modified_weights, risk_counts)
from .inference import (InferenceResult, RepresentationTerms, confidence_interval,
                        eta_plugin, lb_integral, modified_integral, psi_model, psi_plugin,
                        representation_terms, sigma2_plugin)
from .models import TruncationModel, make_model
from .sample import (PseudoSample, SortedSample, TruncatedSample, build_pseudo_sample,
                     empirical_fstar, validate_and_sort)
from .scores import ScoreFunction
from .simulation import (StudyReport, coverage_study, draw_observed_sample, mse_study,
                         remainder_decay_study)
