"""Manifest-driven CSV ingestion for the ten benchmark datasets.

Each manifest pins one documented raw-file variant (the standard public
repository export, normalized to comma-separated text by
``scripts/fetch_datasets.py``), plus the expected shape and per-class
counts.  Loading validates everything before any experiment runs; a file
that parses but disagrees with the expectations is an error, not a warning.

Raw files are user-supplied: the library never touches the network.  The
directory is taken from the ``AUTOCHAOSNET_DATA`` environment variable
(default ``./data``).  ``write_bundled_datasets`` materializes the three
datasets whose canonical copies ship inside scikit-learn.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

DATA_DIR_ENV = "AUTOCHAOSNET_DATA"
MISSING_TOKENS = {"", "na", "nan"}


class IngestError(ValueError):
    """Raised when a raw file is absent, malformed, or fails validation."""


@dataclass(frozen=True)
class Dataset:
    """Numeric samples with integer class labels in 0..k-1."""

    dataset_id: str
    samples: np.ndarray
    labels: np.ndarray
    class_names: tuple[str, ...]
    feature_names: tuple[str, ...]

    @property
    def n_samples(self) -> int:
        return self.samples.shape[0]

    @property
    def n_features(self) -> int:
        return self.samples.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.class_names)


@dataclass(frozen=True)
class DatasetManifest:
    """Where one dataset lives and what it must look like."""

    dataset_id: str
    filename: str
    label_column: int | str
    label_map: dict
    class_names: tuple[str, ...]
    n_features: int
    n_classes: int
    n_samples: int
    class_counts: tuple[int, ...]
    delimiter: str = ","
    header: bool = False
    drop_columns: tuple = ()
    drop_missing_rows: bool = False
    notes: str = ""


def builtin_manifests() -> tuple[DatasetManifest, ...]:
    """The ten benchmark manifests, shapes pinned to the published tables."""
    return _BUILTIN


def get_manifest(dataset_id: str) -> DatasetManifest | None:
    for m in _BUILTIN:
        if m.dataset_id == dataset_id:
            return m
    return None


def manifests_from_file(path) -> tuple[DatasetManifest, ...]:
    """Read dataset manifests from a JSON document.

    The document maps dataset id to an object with the DatasetManifest
    fields (``filename``, ``label_column``, ``label_map``, ``class_names``,
    ``n_features``, ``n_classes``, ``n_samples``, ``class_counts``, and
    optionally ``delimiter``, ``header``, ``drop_columns``,
    ``drop_missing_rows``, ``notes``); see README for the schema.
    """
    import json

    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise IngestError(f"manifest file must hold a JSON object, got {type(doc).__name__}")
    manifests = []
    for dataset_id, entry in doc.items():
        try:
            manifests.append(
                DatasetManifest(
                    dataset_id=dataset_id,
                    filename=entry["filename"],
                    label_column=entry["label_column"],
                    label_map=dict(entry["label_map"]),
                    class_names=tuple(entry["class_names"]),
                    n_features=int(entry["n_features"]),
                    n_classes=int(entry["n_classes"]),
                    n_samples=int(entry["n_samples"]),
                    class_counts=tuple(int(c) for c in entry["class_counts"]),
                    delimiter=entry.get("delimiter", ","),
                    header=bool(entry.get("header", False)),
                    drop_columns=tuple(entry.get("drop_columns", ())),
                    drop_missing_rows=bool(entry.get("drop_missing_rows", False)),
                    notes=entry.get("notes", ""),
                )
            )
        except KeyError as exc:
            raise IngestError(f"manifest {dataset_id!r}: missing field {exc}") from None
    return tuple(manifests)


def data_dir(path: str | os.PathLike | None = None) -> Path:
    """Resolve the dataset directory: explicit arg, env var, or ./data."""
    if path is not None:
        return Path(path)
    return Path(os.environ.get(DATA_DIR_ENV, "data"))


def load_dataset(manifest: DatasetManifest, directory: str | os.PathLike | None = None) -> Dataset:
    """Load and validate one dataset per its manifest.

    Raises IngestError with row/column context for schema mismatches,
    unknown labels, non-numeric cells, and count mismatches.
    """
    path = data_dir(directory) / manifest.filename
    if not path.is_file():
        raise IngestError(f"{manifest.dataset_id}: file not found: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh, delimiter=manifest.delimiter))
    rows = [r for r in rows if r]
    if not rows:
        raise IngestError(f"{manifest.dataset_id}: {path} is empty")

    if manifest.header:
        columns = [c.strip() for c in rows[0]]
        body = rows[1:]
    else:
        columns = [str(i) for i in range(len(rows[0]))]
        body = rows

    label_idx = _column_index(manifest, columns, manifest.label_column)
    drop_idx = {_column_index(manifest, columns, c) for c in manifest.drop_columns}
    drop_idx.add(label_idx)
    feature_idx = [i for i in range(len(columns)) if i not in drop_idx]
    feature_names = tuple(columns[i] for i in feature_idx)

    samples: list[list[float]] = []
    labels: list[int] = []
    dropped = 0
    for row_no, row in enumerate(body, start=2 if manifest.header else 1):
        if len(row) != len(columns):
            raise IngestError(
                f"{manifest.dataset_id}: row {row_no} has {len(row)} columns, expected {len(columns)}"
            )
        cells = [c.strip() for c in row]
        missing = [i for i in feature_idx if cells[i].lower() in MISSING_TOKENS]
        if missing:
            if manifest.drop_missing_rows:
                dropped += 1
                continue
            raise IngestError(
                f"{manifest.dataset_id}: missing value at row {row_no}, column {columns[missing[0]]!r}"
            )
        raw_label = cells[label_idx]
        if raw_label not in manifest.label_map:
            raise IngestError(
                f"{manifest.dataset_id}: unknown label {raw_label!r} at row {row_no}"
            )
        labels.append(manifest.label_map[raw_label])
        values = []
        for i in feature_idx:
            try:
                values.append(float(cells[i]))
            except ValueError:
                raise IngestError(
                    f"{manifest.dataset_id}: non-numeric value {cells[i]!r} "
                    f"at row {row_no}, column {columns[i]!r}"
                ) from None
        samples.append(values)

    X = np.asarray(samples, dtype=np.float64)
    y = np.asarray(labels, dtype=np.int64)
    _validate_shape(manifest, X, y, dropped)
    return Dataset(
        dataset_id=manifest.dataset_id,
        samples=X,
        labels=y,
        class_names=manifest.class_names,
        feature_names=feature_names,
    )


def _column_index(manifest: DatasetManifest, columns: list[str], column) -> int:
    if isinstance(column, int):
        idx = column if column >= 0 else len(columns) + column
        if not 0 <= idx < len(columns):
            raise IngestError(
                f"{manifest.dataset_id}: column index {column} out of range for {len(columns)} columns"
            )
        return idx
    if column not in columns:
        raise IngestError(f"{manifest.dataset_id}: no column named {column!r} in header")
    return columns.index(column)


def _validate_shape(manifest: DatasetManifest, X: np.ndarray, y: np.ndarray, dropped: int) -> None:
    if X.shape[1] != manifest.n_features:
        raise IngestError(
            f"{manifest.dataset_id}: expected {manifest.n_features} features, found {X.shape[1]}"
        )
    if X.shape[0] != manifest.n_samples:
        raise IngestError(
            f"{manifest.dataset_id}: expected {manifest.n_samples} samples, "
            f"found {X.shape[0]} ({dropped} rows dropped for missing values)"
        )
    counts = tuple(int(c) for c in np.bincount(y, minlength=manifest.n_classes))
    if len(counts) != manifest.n_classes or counts != manifest.class_counts:
        raise IngestError(
            f"{manifest.dataset_id}: class counts {counts} do not match expected {manifest.class_counts}"
        )


def write_bundled_datasets(directory: str | os.PathLike) -> list[str]:
    """Write the datasets scikit-learn ships (iris, wine, breast cancer).

    These are the canonical public copies, re-serialized into the documented
    raw layouts.  The breast cancer export carries a sequential surrogate id
    column because scikit-learn drops the original patient ids; the id is an
    identifier, not a measurement, and the manifest treats it as the first
    feature either way.  Returns the dataset ids written.
    """
    from sklearn.datasets import load_breast_cancer, load_iris, load_wine

    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)

    iris = load_iris()
    iris_names = {0: "Iris-setosa", 1: "Iris-versicolor", 2: "Iris-virginica"}
    _write_csv(
        out / "iris.csv",
        ([*(_fmt(v) for v in row), iris_names[t]] for row, t in zip(iris.data, iris.target)),
    )

    wine = load_wine()
    _write_csv(
        out / "wine.csv",
        ([str(t + 1), *(_fmt(v) for v in row)] for row, t in zip(wine.data, wine.target)),
    )

    cancer = load_breast_cancer()
    diag = {0: "M", 1: "B"}
    _write_csv(
        out / "wdbc.csv",
        (
            [str(i + 1), diag[t], *(_fmt(v) for v in row)]
            for i, (row, t) in enumerate(zip(cancer.data, cancer.target))
        ),
    )
    return ["iris", "wine", "breast_cancer"]


def _fmt(value: float) -> str:
    return format(value, ".17g")


def _write_csv(path: Path, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerows(rows)


_BUILTIN: tuple[DatasetManifest, ...] = (
    DatasetManifest(
        dataset_id="iris",
        filename="iris.csv",
        label_column=-1,
        label_map={"Iris-setosa": 0, "Iris-versicolor": 1, "Iris-virginica": 2},
        class_names=("Iris Setosa", "Iris Versicolor", "Iris Virginica"),
        n_features=4,
        n_classes=3,
        n_samples=150,
        class_counts=(50, 50, 50),
    ),
    DatasetManifest(
        dataset_id="haberman",
        filename="haberman.csv",
        label_column=-1,
        label_map={"1": 0, "2": 1},
        class_names=("Less than 5 years", "Greater than or equal to 5 years"),
        n_features=3,
        n_classes=2,
        n_samples=306,
        class_counts=(225, 81),
    ),
    DatasetManifest(
        dataset_id="seeds",
        filename="seeds.csv",
        label_column=-1,
        label_map={"1": 0, "2": 1, "3": 2},
        class_names=("Kama", "Rosa", "Canadian"),
        n_features=7,
        n_classes=3,
        n_samples=210,
        class_counts=(70, 70, 70),
    ),
    DatasetManifest(
        dataset_id="statlog",
        filename="statlog_heart.csv",
        label_column=-1,
        label_map={"1": 0, "2": 1},
        class_names=("Absence", "Presence"),
        n_features=13,
        n_classes=2,
        n_samples=270,
        class_counts=(150, 120),
    ),
    DatasetManifest(
        dataset_id="ionosphere",
        filename="ionosphere.csv",
        label_column=-1,
        label_map={"b": 0, "g": 1},
        class_names=("Bad", "Good"),
        n_features=34,
        n_classes=2,
        n_samples=351,
        class_counts=(126, 225),
    ),
    DatasetManifest(
        dataset_id="banknote",
        filename="banknote.csv",
        label_column=-1,
        label_map={"0": 0, "1": 1},
        class_names=("Genuine", "Forgery"),
        n_features=4,
        n_classes=2,
        n_samples=1372,
        class_counts=(762, 610),
    ),
    DatasetManifest(
        dataset_id="breast_cancer",
        filename="wdbc.csv",
        label_column=1,
        label_map={"M": 0, "B": 1},
        class_names=("Malignant", "Benign"),
        n_features=31,
        n_classes=2,
        n_samples=569,
        class_counts=(212, 357),
        notes="id column kept as the first feature to match the published feature count of 31",
    ),
    DatasetManifest(
        dataset_id="wine",
        filename="wine.csv",
        label_column=0,
        label_map={"1": 0, "2": 1, "3": 2},
        class_names=("1", "2", "3"),
        n_features=13,
        n_classes=3,
        n_samples=178,
        class_counts=(59, 71, 48),
    ),
    DatasetManifest(
        dataset_id="penguin",
        filename="penguin.csv",
        header=True,
        label_column="species",
        label_map={"Adelie": 0, "Chinstrap": 1, "Gentoo": 2},
        class_names=("Adelie Penguin", "Chinstrap Penguin", "Gentoo Penguin"),
        drop_columns=("island", "sex"),
        drop_missing_rows=True,
        n_features=4,
        n_classes=3,
        n_samples=342,
        class_counts=(151, 68, 123),
        notes="two rows lacking all body measurements are dropped (344 -> 342)",
    ),
    DatasetManifest(
        dataset_id="sonar",
        filename="sonar.csv",
        label_column=-1,
        label_map={"M": 0, "R": 1},
        class_names=("Mine", "Rock"),
        n_features=60,
        n_classes=2,
        n_samples=208,
        class_counts=(111, 97),
    ),
)
