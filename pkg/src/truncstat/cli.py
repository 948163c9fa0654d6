"""Command line front end.

    truncstat estimate  --input data.csv [--output est.json] [--estimator both]
    truncstat integrate --input data.csv --phi indicator:1.5 [--level 0.95]
    truncstat holes     --input data.csv
    truncstat simulate  --model exp-exp --phi identity --n 10,20 --reps 10000 --seed 42
    truncstat coverage  --model uniform-uniform --n 500 --reps 2000 --level 0.95
    truncstat represent --model uniform-uniform (--input data.csv | --n 400 --seed 1)

Failures print one line ``error: <module>.<Error>: <message>`` to stderr.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .errors import ConfigError, TruncstatError
from .estimator import lynden_bell, modified_weights
from .inference import confidence_interval, lb_integral, modified_integral, representation_terms
from .io import dumps_report, estimate_report, holes_report, parse_csv, parse_table
from .models import make_model
from .scores import ScoreFunction
from .simulation import coverage_study, draw_observed_sample, mse_study

SUBCOMMANDS = ("estimate", "integrate", "simulate", "coverage", "represent", "holes")
ESTIMATOR_CHOICES = ("lynden-bell", "modified", "both")


def parse_phi(text) -> ScoreFunction:
    """``identity``, ``indicator:<t>``, ``power:<k>`` or ``table:<path>``."""
    kind, _, arg = str(text).partition(":")
    try:
        if kind == "identity" and not arg:
            return ScoreFunction.identity()
        if kind == "indicator":
            return ScoreFunction.indicator(float(arg))
        if kind == "power":
            return ScoreFunction.power(float(arg))
    except ValueError:
        raise ConfigError(f"bad score argument in {text!r}") from None
    if kind == "table" and arg:
        return ScoreFunction.tabulated(parse_table(arg))
    raise ConfigError(f"unknown score {text!r}")


@dataclass
class RunConfig:
    subcommand: str
    input: Path | None = None
    output: Path | None = None
    phi: ScoreFunction | None = None
    model: object = None
    n: tuple = ()
    reps: int = 0
    seed: int = 0
    level: float = 0.95
    estimator: str = "both"
    workers: int | None = None

    @classmethod
    def from_args(cls, args):
        """Validate every option before any computation starts."""
        cmd = args.subcommand
        cfg = cls(subcommand=cmd, output=Path(args.output) if args.output else None,
                  seed=args.seed, level=args.level, estimator=args.estimator,
                  workers=args.workers)
        if not 0 < args.level < 1:
            raise ConfigError(f"--level must lie in (0, 1), got {args.level}")
        if args.seed < 0:
            raise ConfigError("--seed must be nonnegative")
        if args.input:
            cfg.input = Path(args.input)
        if cmd in ("estimate", "integrate", "holes") and cfg.input is None:
            raise ConfigError(f"{cmd} requires --input")
        if cmd in ("simulate", "coverage", "represent"):
            if not args.model:
                raise ConfigError(f"{cmd} requires --model")
            cfg.model = make_model(args.model)
        cfg.phi = parse_phi(args.phi)
        if args.n:
            try:
                cfg.n = tuple(int(v) for v in args.n.split(","))
            except ValueError:
                raise ConfigError(f"--n must be a comma-separated list of integers, got {args.n!r}") from None
            if any(v < 1 for v in cfg.n):
                raise ConfigError("--n values must be positive")
        if cmd in ("simulate", "coverage") and not cfg.n:
            raise ConfigError(f"{cmd} requires --n")
        if cmd == "represent" and cfg.input is None and len(cfg.n) != 1:
            raise ConfigError("represent needs --input or a single --n")
        cfg.reps = args.reps if args.reps is not None else (10000 if cmd == "simulate" else 2000)
        if cfg.reps < 1:
            raise ConfigError("--reps must be positive")
        if args.workers is not None and args.workers < 1:
            raise ConfigError("--workers must be positive")
        return cfg


def build_parser():
    p = argparse.ArgumentParser(prog="truncstat", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--phi", default="identity")
    p.add_argument("--model")
    p.add_argument("--n")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--estimator", choices=ESTIMATOR_CHOICES, default="both")
    p.add_argument("--workers", type=int,
                   help="parallel processes (default: $TRUNCSTAT_THREADS or CPU count)")
    return p


def _estimators(cfg):
    return ("lynden-bell", "modified") if cfg.estimator == "both" else (cfg.estimator,)


def run(cfg: RunConfig) -> str:
    """Execute a validated configuration and return the report text."""
    cmd = cfg.subcommand
    if cmd in ("estimate", "integrate", "holes"):
        sample = parse_csv(cfg.input)
        est = lynden_bell(sample)
        if cmd == "holes":
            return dumps_report({"kind": "holes", "n": est.n, "m": est.m,
                                 **holes_report(est.holes)})
        if cmd == "estimate":
            mod = modified_weights(sample) if "modified" in _estimators(cfg) else None
            return dumps_report(estimate_report(sample, est, mod))
        report = {"kind": "integrate", "phi": cfg.phi.spec, "n": est.n, "level": cfg.level}
        if "lynden-bell" in _estimators(cfg):
            res = confidence_interval(sample, cfg.phi, cfg.level)
            report["lynden_bell"] = {"estimate": res.estimate, "sigma2": res.sigma2,
                                     "ci_lo": res.ci[0], "ci_hi": res.ci[1]}
        if "modified" in _estimators(cfg):
            report["modified"] = {"estimate": modified_integral(modified_weights(sample), cfg.phi)}
        return dumps_report(report)

    if cmd == "simulate":
        rep = mse_study(cfg.model, cfg.phi, cfg.n, cfg.reps, cfg.seed,
                        workers=cfg.workers, estimators=_estimators(cfg))
        return rep.to_csv()
    if cmd == "coverage":
        rep = coverage_study(cfg.model, cfg.phi, cfg.n, cfg.reps, cfg.level, cfg.seed,
                             workers=cfg.workers)
        return rep.to_csv()

    # represent
    if cfg.input is not None:
        sample = parse_csv(cfg.input)
    else:
        sample = draw_observed_sample(cfg.model, cfg.n[0], cfg.seed)
    terms = representation_terms(sample, cfg.model, cfg.phi)
    return dumps_report({
        "kind": "represent", "model": cfg.model.name, "phi": cfg.phi.spec, "n": terms.n,
        "estimate": lb_integral(sample, cfg.phi), "truth": cfg.model.mean_phi(cfg.phi),
        "lhs": terms.lhs, "l1": terms.l1, "l2": terms.l2, "remainder": terms.remainder,
        "per_obs_mean": float(terms.per_obs.mean()), "per_obs_var": float(terms.per_obs.var()),
    })


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        text = run(cfg)
    except TruncstatError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    if cfg.output is None:
        sys.stdout.write(text)
    else:
        cfg.output.write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
