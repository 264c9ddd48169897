"""Normalization, prototype classification, scoring, and the evaluation run.

The end-to-end run is: stratified split -> min-max normalize the raw data
-> chaotic feature extraction -> min-max normalize the extracted features
(fit on train) -> per-class mean prototypes -> cosine-similarity decision
-> macro F1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.model_selection import train_test_split
from sklearn.utils import check_array

DEFAULT_SEED = 59
DEFAULT_TEST_FRACTION = 0.2
RULES = ("max", "min")
SCOPES = ("full", "train")


class MinMaxNormalizer(TransformerMixin, BaseEstimator):
    """Per-feature min-max scaling to [0, 1] with clamping.

    Values outside the fitted range (possible when fitting on train only)
    clamp to the interval edges; constant features map to 0.  ``scope`` is a
    label recording which rows the normalizer was fitted on.
    """

    def __init__(self, scope: str | None = None):
        self.scope = scope

    def fit(self, X, y=None):
        X = _as_matrix(X)
        if X.shape[0] == 0:
            raise ValueError("cannot fit normalizer on an empty selection of rows")
        self.min_ = X.min(axis=0)
        self.max_ = X.max(axis=0)
        return self

    def transform(self, X) -> np.ndarray:
        if not hasattr(self, "min_"):
            raise ValueError("normalizer is not fitted; call fit first")
        X = np.asarray(X, dtype=np.float64)
        squeeze = X.ndim == 1
        X = _as_matrix(X)
        span = self.max_ - self.min_
        constant = span == 0
        z = (X - self.min_) / np.where(constant, 1.0, span)
        z[:, constant] = 0.0
        np.clip(z, 0.0, 1.0, out=z)
        return z[0] if squeeze else z


def class_prototypes(features, labels, n_classes: int | None = None) -> np.ndarray:
    """Componentwise mean feature vector per class, shape (k, p).

    Every class in 0..k-1 must have at least one sample; an unrepresented
    class is rejected because its prototype would be undefined.
    """
    F = _as_matrix(features)
    y = np.asarray(labels, dtype=np.int64)
    if len(F) != len(y):
        raise ValueError(f"features ({len(F)}) and labels ({len(y)}) differ in length")
    k = int(n_classes) if n_classes is not None else int(y.max()) + 1
    counts = np.bincount(y, minlength=k)
    if (counts == 0).any():
        missing = int(np.argmin(counts))
        raise ValueError(f"class {missing} has no training samples; use a stratified split")
    prototypes = np.zeros((k, F.shape[1]))
    np.add.at(prototypes, y, F)
    return prototypes / counts[:, None]


def cosine_similarity(a, b) -> float:
    """Cosine of the angle between two vectors; 0 if either has zero norm."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def similarity_matrix(features, prototypes) -> np.ndarray:
    """Cosine similarities, shape (m, k); zero-norm rows give all zeros."""
    F = _unit_rows(_as_matrix(features))
    P = _unit_rows(_as_matrix(prototypes))
    return F @ P.T


def predict_labels(prototypes, features, rule: str = "max") -> np.ndarray:
    """Class index per row by cosine similarity.

    ``max`` (default) picks the most similar prototype; ``min`` picks the
    least similar one, the literal reading of the source description, kept
    behind this flag.  Ties resolve to the lowest class index.
    """
    if rule not in RULES:
        raise ValueError(f"rule must be one of {RULES}, got {rule!r}")
    sims = similarity_matrix(features, prototypes)
    return np.argmax(sims, axis=1) if rule == "max" else np.argmin(sims, axis=1)


def per_class_f1(predicted, actual, n_classes: int | None = None) -> np.ndarray:
    """F1 per class; a class with no predictions and no truth scores 0."""
    p = np.asarray(predicted, dtype=np.int64)
    a = np.asarray(actual, dtype=np.int64)
    if p.shape != a.shape:
        raise ValueError(f"predicted ({p.shape}) and actual ({a.shape}) differ in shape")
    if p.size == 0:
        raise ValueError("cannot score empty label lists")
    if n_classes is not None:
        classes = np.arange(int(n_classes))
    else:
        classes = np.unique(np.concatenate([a, p]))
    scores = np.zeros(len(classes))
    for i, c in enumerate(classes):
        tp = np.count_nonzero((p == c) & (a == c))
        fp = np.count_nonzero((p == c) & (a != c))
        fn = np.count_nonzero((p != c) & (a == c))
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        if precision + recall:
            scores[i] = 2 * precision * recall / (precision + recall)
    return scores


def macro_f1(predicted, actual, n_classes: int | None = None) -> float:
    """Unweighted mean of per-class F1 scores."""
    return float(per_class_f1(predicted, actual, n_classes).mean())


class CosinePrototypeClassifier(ClassifierMixin, BaseEstimator):
    """Nearest-prototype classifier under cosine similarity.

    ``fit`` stores one mean representation vector per class; ``predict``
    assigns each row to the prototype chosen by ``rule``.
    """

    def __init__(self, rule: str = "max"):
        self.rule = rule

    def fit(self, X, y):
        X = check_array(X, dtype=np.float64)
        y = np.asarray(y)
        if len(X) != len(y):
            raise ValueError("X and y differ in length")
        if self.rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}, got {self.rule!r}")
        self.classes_ = np.unique(y)
        encoded = np.searchsorted(self.classes_, y)
        self.prototypes_ = class_prototypes(X, encoded, n_classes=len(self.classes_))
        self.n_features_in_ = X.shape[1]
        return self

    def decision_function(self, X) -> np.ndarray:
        if not hasattr(self, "prototypes_"):
            raise ValueError("classifier is not fitted; call fit first")
        X = check_array(X, dtype=np.float64)
        return similarity_matrix(X, self.prototypes_)

    def predict(self, X) -> np.ndarray:
        if not hasattr(self, "prototypes_"):
            raise ValueError("classifier is not fitted; call fit first")
        X = check_array(X, dtype=np.float64)
        return self.classes_[predict_labels(self.prototypes_, X, self.rule)]


def stratified_split(labels, test_fraction: float = DEFAULT_TEST_FRACTION, seed: int = DEFAULT_SEED):
    """Deterministic stratified train/test index split."""
    y = np.asarray(labels)
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test fraction must lie strictly in (0, 1), got {test_fraction}")
    train_idx, test_idx = train_test_split(
        np.arange(len(y)), test_size=test_fraction, random_state=seed, stratify=y
    )
    return np.sort(train_idx), np.sort(test_idx)


@dataclass
class EvalReport:
    """One classification run: scores plus the configuration that made them."""

    dataset: str
    model: str
    macro_f1: float
    per_class_f1: tuple[float, ...]
    class_names: tuple[str, ...]
    n_train: int
    n_test: int
    config: dict

    CSV_HEADER = (
        "dataset,model,macro_f1,per_class_f1,n_train,n_test,seed,split,mode,rule,scope"
    )

    def to_text(self) -> str:
        lines = [
            f"dataset: {self.dataset}",
            f"model: {self.model}",
            f"macro_f1: {self.macro_f1:.6f}",
            "per_class_f1:",
        ]
        for name, score in zip(self.class_names, self.per_class_f1):
            lines.append(f"  {name}: {score:.6f}")
        lines.append(f"n_train: {self.n_train}")
        lines.append(f"n_test: {self.n_test}")
        lines.append("config:")
        for key in sorted(self.config):
            lines.append(f"  {key}: {self.config[key]}")
        return "\n".join(lines)

    def to_csv_row(self) -> str:
        scores = ";".join(f"{s:.6f}" for s in self.per_class_f1)
        cfg = self.config
        return ",".join(
            [
                self.dataset,
                self.model,
                f"{self.macro_f1:.6f}",
                scores,
                str(self.n_train),
                str(self.n_test),
                str(cfg.get("seed", "")),
                str(cfg.get("split", "")),
                str(cfg.get("mode", "")),
                str(cfg.get("rule", "")),
                str(cfg.get("scope", "")),
            ]
        )

    def to_json(self) -> str:
        payload = {
            "dataset": self.dataset,
            "model": self.model,
            "macro_f1": self.macro_f1,
            "per_class_f1": list(self.per_class_f1),
            "class_names": list(self.class_names),
            "n_train": self.n_train,
            "n_test": self.n_test,
            "config": self.config,
        }
        return json.dumps(payload, sort_keys=True)


def run_pipeline(
    dataset,
    transformer,
    *,
    model_id: str,
    rule: str = "max",
    scope: str = "full",
    seed: int = DEFAULT_SEED,
    test_fraction: float = DEFAULT_TEST_FRACTION,
    extra_config: Mapping | None = None,
) -> EvalReport:
    """Run the full normalize/extract/classify/score loop on one dataset.

    ``scope`` controls which rows fit the raw-data normalizer: ``full`` fits
    on the entire dataset, ``train`` fits on training rows only (test rows
    then clamp into [0, 1]).  The extracted-feature normalizer always fits
    on training rows.
    """
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    train_idx, test_idx = stratified_split(dataset.labels, test_fraction, seed)
    X, y = dataset.samples, dataset.labels

    raw_norm = MinMaxNormalizer(scope=scope)
    raw_norm.fit(X if scope == "full" else X[train_idx])
    Z = raw_norm.transform(X)

    transformer.fit(Z[train_idx])
    F_train = transformer.transform(Z[train_idx])
    F_test = transformer.transform(Z[test_idx])

    feature_norm = MinMaxNormalizer(scope="train").fit(F_train)
    G_train = feature_norm.transform(F_train)
    G_test = feature_norm.transform(F_test)

    clf = CosinePrototypeClassifier(rule=rule).fit(G_train, y[train_idx])
    predicted = clf.predict(G_test)

    k = len(dataset.class_names)
    scores = per_class_f1(predicted, y[test_idx], n_classes=k)
    config = {
        "seed": seed,
        "split": test_fraction,
        "rule": rule,
        "scope": scope,
        **transformer.get_params(),
    }
    if hasattr(transformer, "n_unconverged_"):
        config["unconverged"] = transformer.n_unconverged_
    if extra_config:
        config.update(extra_config)
    return EvalReport(
        dataset=dataset.dataset_id,
        model=model_id,
        macro_f1=float(scores.mean()),
        per_class_f1=tuple(float(s) for s in scores),
        class_names=tuple(dataset.class_names),
        n_train=len(train_idx),
        n_test=len(test_idx),
        config=config,
    )


def _as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {X.shape}")
    return X


def _unit_rows(X: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(X, axis=1, keepdims=True)
    return np.divide(X, norms, out=np.zeros_like(X), where=norms > 0)
