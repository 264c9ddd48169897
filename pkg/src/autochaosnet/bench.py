"""Model dispatch and the repeated-run timing harness.

Timing wraps the in-memory pipeline run (normalization, extraction,
prototypes, prediction, scoring) and excludes file parsing.  The chaosnet
model times its whole documented tuning grid per iteration, since grid
search is part of what that model costs; the training-free models have
nothing comparable to tune.
"""

from __future__ import annotations

import json
import statistics
import time
from dataclasses import dataclass

from .chaosnet import evaluate_chaosnet_grid
from .features import AutochaosFeatures
from .pipeline import DEFAULT_SEED, DEFAULT_TEST_FRACTION, EvalReport, run_pipeline

MODELS = ("tm", "tmfr", "chaosnet")


def evaluate(
    dataset,
    model: str,
    *,
    mode: str = "bound",
    rule: str = "max",
    scope: str = "full",
    seed: int = DEFAULT_SEED,
    test_fraction: float = DEFAULT_TEST_FRACTION,
    grid=None,
) -> EvalReport:
    """One evaluation run of the named model on an in-memory dataset."""
    if model in ("tm", "tmfr"):
        transformer = AutochaosFeatures(variant=model, mode=mode)
        return run_pipeline(
            dataset,
            transformer,
            model_id=model,
            rule=rule,
            scope=scope,
            seed=seed,
            test_fraction=test_fraction,
        )
    if model == "chaosnet":
        return evaluate_chaosnet_grid(
            dataset, grid, rule=rule, scope=scope, seed=seed, test_fraction=test_fraction
        )
    raise ValueError(f"model must be one of {MODELS}, got {model!r}")


@dataclass
class BenchReport:
    """Timing summary for one (dataset, model) cell."""

    dataset: str
    model: str
    macro_f1: float
    per_class_f1: tuple[float, ...]
    iterations: int
    mean_s: float
    std_s: float
    config: dict

    CSV_HEADER = (
        "dataset,model,macro_f1,per_class_f1,iterations,mean_s,std_s,seed,split,mode,rule,scope"
    )

    def to_csv_row(self) -> str:
        scores = ";".join(f"{s:.6f}" for s in self.per_class_f1)
        cfg = self.config
        return ",".join(
            [
                self.dataset,
                self.model,
                f"{self.macro_f1:.6f}",
                scores,
                str(self.iterations),
                f"{self.mean_s:.6f}",
                f"{self.std_s:.6f}",
                str(cfg.get("seed", "")),
                str(cfg.get("split", "")),
                str(cfg.get("mode", "")),
                str(cfg.get("rule", "")),
                str(cfg.get("scope", "")),
            ]
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "dataset": self.dataset,
                "model": self.model,
                "macro_f1": self.macro_f1,
                "per_class_f1": list(self.per_class_f1),
                "iterations": self.iterations,
                "mean_s": self.mean_s,
                "std_s": self.std_s,
                "config": self.config,
            },
            sort_keys=True,
        )


def run_benchmark(dataset, model: str, iterations: int = 50, **options) -> BenchReport:
    """Time repeated evaluation runs of one model on one loaded dataset.

    Reports the sample (n-1) standard deviation; a single iteration reports
    a standard deviation of 0 by convention.
    """
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    elapsed = []
    report = None
    for _ in range(iterations):
        start = time.perf_counter()
        report = evaluate(dataset, model, **options)
        elapsed.append(time.perf_counter() - start)
    std = statistics.stdev(elapsed) if iterations > 1 else 0.0
    return BenchReport(
        dataset=report.dataset,
        model=report.model,
        macro_f1=report.macro_f1,
        per_class_f1=report.per_class_f1,
        iterations=iterations,
        mean_s=statistics.fmean(elapsed),
        std_s=std,
        config=report.config,
    )
