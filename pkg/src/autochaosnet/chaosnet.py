"""Simplified skew-tent-map comparator with noise-threshold halting.

One trace starts at the initial condition q and iterates the skew tent map
until the value lands within ``noise`` of the stimulus (or a step cap).
Four features summarize the trace: firing time (halting step count), firing
rate, energy (mean squared value), and a two-bin entropy of the trace
thresholded at the discrimination threshold.

The trace values themselves depend only on (q, b), never on the stimulus,
so one trajectory per configuration is shared by every stimulus; only the
halting index differs.  Energy and entropy here follow the conventional
forms from the chaotic-feature-extraction literature, reconstructed because
no single canonical definition is pinned for this comparator.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils import check_array

from .pipeline import (
    DEFAULT_SEED,
    DEFAULT_TEST_FRACTION,
    EvalReport,
    run_pipeline,
)

DEFAULT_CAP = 10_000


@dataclass(frozen=True)
class ChaosNetConfig:
    """Hyperparameters of the comparator.

    q: initial condition in (0, 1); b: skew in (0, 1); noise: halting
    threshold > 0; threshold: rate/entropy discrimination level; cap:
    maximum trace length.
    """

    q: float = 0.34
    b: float = 0.499
    noise: float = 0.01
    threshold: float = 0.5
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ValueError(f"q must be in (0, 1), got {self.q}")
        if not 0.0 < self.b < 1.0:
            raise ValueError(f"b must be in (0, 1), got {self.b}")
        if not self.noise > 0.0:
            raise ValueError(f"noise must be positive, got {self.noise}")
        if self.cap < 1:
            raise ValueError(f"cap must be >= 1, got {self.cap}")


def skew_tent(x: float, b: float) -> float:
    """Skew tent map: x/b below the peak at b, else (1-x)/(1-b)."""
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must be in [0, 1], got {x}")
    if not 0.0 < b < 1.0:
        raise ValueError(f"b must be in (0, 1), got {b}")
    return x / b if x < b else (1.0 - x) / (1.0 - b)


@lru_cache(maxsize=1024)
def _trajectory_tables(q: float, b: float, threshold: float, cap: int):
    """(trajectory, prefix count above threshold, prefix sum of squares, scan length).

    ``scan length`` is how far a first-hit search must look: once the float
    trajectory reaches an exact fixed point (e.g. 0 for dyadic skews) no new
    values appear, so scanning past the first repeat is pointless.
    """
    traj = np.empty(cap)
    x = q
    for t in range(cap):
        traj[t] = x
        x = x / b if x < b else (1.0 - x) / (1.0 - b)
    prefix_cnt = np.concatenate([[0.0], np.cumsum(traj > threshold)])
    prefix_sq = np.concatenate([[0.0], np.cumsum(traj * traj)])
    repeats = np.flatnonzero(traj[1:] == traj[:-1])
    scan_len = int(repeats[0]) + 1 if repeats.size else cap
    for arr in (traj, prefix_cnt, prefix_sq):
        arr.setflags(write=False)
    return traj, prefix_cnt, prefix_sq, scan_len


def _halting_lengths(traj: np.ndarray, stimuli: np.ndarray, noise: float, scan_len: int | None = None):
    """Trace length per stimulus: index of the first trajectory value within
    ``noise`` of the stimulus plus one, or the cap when never reached.

    Returns (lengths, converged mask)."""
    n = len(stimuli)
    cap = len(traj)
    scan_len = cap if scan_len is None else scan_len
    lengths = np.full(n, cap, dtype=np.int64)
    converged = np.zeros(n, dtype=bool)
    active = np.arange(n)
    start, chunk = 0, 128
    while start < scan_len and active.size:
        block = traj[start : min(start + chunk, scan_len)]
        hits = np.abs(stimuli[active, None] - block[None, :]) < noise
        found = hits.any(axis=1)
        first = hits.argmax(axis=1)
        idx = active[found]
        lengths[idx] = start + first[found] + 1
        converged[idx] = True
        active = active[~found]
        start += len(block)
        chunk = min(chunk * 4, 8192)
    return lengths, converged


def chaosnet_features(stimulus: float, cfg: ChaosNetConfig) -> tuple[float, float, float, float]:
    """(firing time, firing rate, energy, entropy) for one stimulus.

    If the trace never enters the noise band the features are computed on
    the full capped trace; callers that need the distinction should use
    ``ChaosNetFeatures`` which counts non-convergences.
    """
    if not 0.0 <= stimulus <= 1.0:
        raise ValueError(f"stimulus must be in [0, 1], got {stimulus}")
    traj, prefix_cnt, prefix_sq, scan_len = _trajectory_tables(cfg.q, cfg.b, cfg.threshold, cfg.cap)
    lengths, _ = _halting_lengths(traj, np.asarray([stimulus]), cfg.noise, scan_len)
    t = int(lengths[0])
    rate = prefix_cnt[t] / t
    energy = prefix_sq[t] / t
    return float(t), float(rate), float(energy), float(_binary_entropy(np.asarray([rate]))[0])


class ChaosNetFeatures(TransformerMixin, BaseEstimator):
    """Transformer mapping (m, n) stimuli in [0, 1] to (m, 4n) features.

    Output blocks are [firing times | rates | energies | entropies].
    ``n_unconverged_`` counts stimuli whose trace hit the cap since fit.
    """

    def __init__(
        self,
        q: float = 0.34,
        b: float = 0.499,
        noise: float = 0.01,
        threshold: float = 0.5,
        cap: int = DEFAULT_CAP,
    ):
        self.q = q
        self.b = b
        self.noise = noise
        self.threshold = threshold
        self.cap = cap

    def _config(self) -> ChaosNetConfig:
        return ChaosNetConfig(
            q=self.q, b=self.b, noise=self.noise, threshold=self.threshold, cap=self.cap
        )

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        self._config()
        self.n_features_in_ = X.shape[1]
        self.n_unconverged_ = 0
        return self

    def transform(self, X) -> np.ndarray:
        X = check_array(X, dtype=np.float64)
        if X.min() < 0.0 or X.max() > 1.0:
            raise ValueError("stimuli must lie in [0, 1]; normalize first")
        cfg = self._config()
        traj, prefix_cnt, prefix_sq, scan_len = _trajectory_tables(cfg.q, cfg.b, cfg.threshold, cfg.cap)
        flat = X.ravel()
        lengths, converged = _halting_lengths(traj, flat, cfg.noise, scan_len)
        self.n_unconverged_ = getattr(self, "n_unconverged_", 0) + int((~converged).sum())
        times = lengths.astype(np.float64)
        rates = prefix_cnt[lengths] / times
        energies = prefix_sq[lengths] / times
        entropies = _binary_entropy(rates)
        m, n = X.shape
        return np.concatenate(
            [
                times.reshape(m, n),
                rates.reshape(m, n),
                energies.reshape(m, n),
                entropies.reshape(m, n),
            ],
            axis=1,
        )


def default_grid() -> tuple[ChaosNetConfig, ...]:
    """The documented tuning grid: 15 q values x 15 b values x 3 noise levels."""
    levels = np.round(np.arange(0.01, 1.0, 0.07), 2)
    return tuple(
        ChaosNetConfig(q=float(q), b=float(b), noise=noise)
        for noise in (0.1, 0.01, 0.001)
        for q in levels
        for b in levels
    )


def grid_from_file(path) -> tuple[ChaosNetConfig, ...]:
    """Read a tuning grid from a JSON config file.

    Two layouts are accepted: a list of per-configuration objects
    (``[{"q": 0.1, "b": 0.3, "noise": 0.01}, ...]``), or an object of value
    lists expanded as a cartesian product
    (``{"q": [...], "b": [...], "noise": [...], "threshold": 0.5, "cap": 10000}``).
    """
    import itertools
    import json

    with open(path, encoding="utf-8") as fh:
        spec = json.load(fh)
    if isinstance(spec, list):
        return tuple(ChaosNetConfig(**entry) for entry in spec)
    if isinstance(spec, dict):
        axes = {
            key: spec.get(key, [getattr(ChaosNetConfig, key)])
            for key in ("q", "b", "noise", "threshold", "cap")
        }
        axes = {k: v if isinstance(v, list) else [v] for k, v in axes.items()}
        return tuple(
            ChaosNetConfig(**dict(zip(axes, combo)))
            for combo in itertools.product(*axes.values())
        )
    raise ValueError(f"grid file must hold a JSON list or object, got {type(spec).__name__}")


def chaosnet_pipeline(
    dataset,
    cfg: ChaosNetConfig | None = None,
    *,
    rule: str = "max",
    scope: str = "full",
    seed: int = DEFAULT_SEED,
    test_fraction: float = DEFAULT_TEST_FRACTION,
) -> EvalReport:
    """Evaluation run with a single fixed configuration."""
    cfg = cfg or ChaosNetConfig()
    transformer = ChaosNetFeatures(**asdict(cfg))
    return run_pipeline(
        dataset,
        transformer,
        model_id="chaosnet",
        rule=rule,
        scope=scope,
        seed=seed,
        test_fraction=test_fraction,
    )


def evaluate_chaosnet_grid(
    dataset,
    grid=None,
    *,
    rule: str = "max",
    scope: str = "full",
    seed: int = DEFAULT_SEED,
    test_fraction: float = DEFAULT_TEST_FRACTION,
) -> EvalReport:
    """Grid-tuned evaluation run.

    Each configuration is scored by macro F1 on the training split
    (prototypes fitted and applied on the same rows); the first best config
    wins and is then evaluated once on the held-out split.  The report
    echoes the winning configuration, the grid size, and its training score.
    """
    from .pipeline import (
        CosinePrototypeClassifier,
        MinMaxNormalizer,
        macro_f1,
        per_class_f1,
        stratified_split,
    )

    grid = tuple(default_grid() if grid is None else grid)
    if not grid:
        raise ValueError("grid must contain at least one configuration")
    train_idx, test_idx = stratified_split(dataset.labels, test_fraction, seed)
    X, y = dataset.samples, dataset.labels
    raw_norm = MinMaxNormalizer(scope=scope)
    raw_norm.fit(X if scope == "full" else X[train_idx])
    Z_train = raw_norm.transform(X[train_idx])
    Z_test = raw_norm.transform(X[test_idx])

    best = None
    for cfg in grid:
        transformer = ChaosNetFeatures(**asdict(cfg)).fit(Z_train)
        F_train = transformer.transform(Z_train)
        feature_norm = MinMaxNormalizer(scope="train").fit(F_train)
        G_train = feature_norm.transform(F_train)
        clf = CosinePrototypeClassifier(rule=rule).fit(G_train, y[train_idx])
        train_score = macro_f1(clf.predict(G_train), y[train_idx], n_classes=dataset.n_classes)
        if best is None or train_score > best[0]:
            best = (train_score, cfg, transformer, feature_norm, clf)

    train_score, cfg, transformer, feature_norm, clf = best
    F_test = transformer.transform(Z_test)
    predicted = clf.predict(feature_norm.transform(F_test))
    scores = per_class_f1(predicted, y[test_idx], n_classes=dataset.n_classes)
    config = {
        "seed": seed,
        "split": test_fraction,
        "rule": rule,
        "scope": scope,
        "grid_size": len(grid),
        "train_f1": round(train_score, 6),
        "unconverged": transformer.n_unconverged_,
        **asdict(cfg),
    }
    return EvalReport(
        dataset=dataset.dataset_id,
        model="chaosnet",
        macro_f1=float(scores.mean()),
        per_class_f1=tuple(float(s) for s in scores),
        class_names=tuple(dataset.class_names),
        n_train=len(train_idx),
        n_test=len(test_idx),
        config=config,
    )


def _binary_entropy(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    interior = (p > 0.0) & (p < 1.0)
    q = p[interior]
    out[interior] = -(q * np.log2(q) + (1.0 - q) * np.log2(1.0 - q))
    return out
