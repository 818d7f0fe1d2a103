"""Classification-based utility measurement for raw versus protected data.

Datasets are encoded into numeric matrices (standardized numerics plus
one-hot categoricals/intervals), then scored with two classifiers written
against plain numpy: a k-nearest-neighbour voter and full-batch
gradient-descent logistic regression.  Reports carry confusion matrices,
the four derived metrics, and deltas against the raw baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .dataset import AttributeRole, ColumnKind, Dataset, render_cell, split_indices
from .errors import DegenerateFoldError, DivergedError, NoUsableFeaturesError


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    tn: int
    fp: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


@dataclass(frozen=True)
class Metrics:
    accuracy: float
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class KNNSpec:
    k: int = 5

    label = "knn"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class LogRegSpec:
    learning_rate: float = 0.1
    epochs: int = 1000
    l2: float = 0.0

    label = "logreg"

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.epochs < 0:
            raise ValueError("epochs must be >= 0")
        if self.l2 < 0:
            raise ValueError("l2 must be >= 0")


ClassifierSpec = Union[KNNSpec, LogRegSpec]


# ---------------------------------------------------------------------------
# Feature encoding


@dataclass
class FeatureEncoder:
    """Column encodings fit on a training fold and reused on test folds."""

    numeric_stats: dict = field(default_factory=dict)   # name -> (mean, std)
    levels: dict = field(default_factory=dict)          # name -> ordered token list
    dropped: list = field(default_factory=list)
    feature_names: list = field(default_factory=list)

    def fit(self, ds: Dataset) -> "FeatureEncoder":
        for a in ds.schema.attributes:
            if a.role is AttributeRole.TARGET:
                continue
            col = ds.column(a.name)
            if a.kind is ColumnKind.NUMERIC:
                values = np.asarray(col, dtype=float)
                self.numeric_stats[a.name] = (float(values.mean()), float(values.std()))
                self.feature_names.append(a.name)
            else:
                tokens = [render_cell(c, a.kind) for c in col]
                lv = sorted(set(tokens))
                if a.kind is ColumnKind.MASKED and len(lv) == 1:
                    # constant masked column: zero variance, nothing to learn
                    self.dropped.append(a.name)
                    continue
                self.levels[a.name] = lv
                self.feature_names.extend(f"{a.name}={t}" for t in lv)
        if not self.feature_names:
            raise NoUsableFeaturesError("no usable feature columns after encoding")
        return self

    def transform(self, ds: Dataset) -> np.ndarray:
        blocks = []
        for a in ds.schema.attributes:
            if a.role is AttributeRole.TARGET or a.name in self.dropped:
                continue
            col = ds.column(a.name)
            if a.name in self.numeric_stats:
                mean, std = self.numeric_stats[a.name]
                values = np.asarray(col, dtype=float)
                blocks.append(np.zeros(len(values)) if std == 0.0 else (values - mean) / std)
            else:
                lv = self.levels[a.name]
                index = {t: i for i, t in enumerate(lv)}
                onehot = np.zeros((len(col), len(lv)))
                for r, c in enumerate(col):
                    i = index.get(render_cell(c, a.kind))
                    if i is not None:  # unseen test levels stay all-zero
                        onehot[r, i] = 1.0
                blocks.append(onehot)
        return np.column_stack([b.reshape(len(b), -1) for b in blocks])


def encode_features(ds: Dataset, encoder: Optional[FeatureEncoder] = None
                    ) -> tuple[np.ndarray, np.ndarray, FeatureEncoder]:
    """Numeric design matrix plus 0/1 target vector.

    Without an encoder the encoding map is fit on ``ds`` (training fold)
    and returned for reuse; with one, the stored map is applied unchanged.
    """
    if encoder is None:
        encoder = FeatureEncoder().fit(ds)
    return encoder.transform(ds), ds.target, encoder


# ---------------------------------------------------------------------------
# Classifiers


def knn_predict(train_x: np.ndarray, train_y: np.ndarray, test_x: np.ndarray, k: int) -> np.ndarray:
    """Majority vote of the k nearest training rows under Euclidean distance.

    Equal distances resolve toward the lower training-row index; vote ties
    resolve toward label 0.  Fully deterministic given row order.
    """
    if len(train_x) == 0:
        raise ValueError("empty training set")
    if k > len(train_x):
        raise ValueError(f"k={k} exceeds {len(train_x)} training rows")
    train_y = np.asarray(train_y, dtype=int)
    preds = np.empty(len(test_x), dtype=int)
    for i, row in enumerate(test_x):
        d = np.sqrt(((train_x - row) ** 2).sum(axis=1))
        nearest = np.argsort(d, kind="stable")[:k]
        ones = int(train_y[nearest].sum())
        preds[i] = 1 if ones * 2 > k else 0
    return preds


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logreg_loss(w: np.ndarray, b: float, x: np.ndarray, y: np.ndarray, l2: float = 0.0) -> float:
    """Mean cross-entropy plus (l2/2)*||w||^2, computed stably via logaddexp."""
    z = x @ w + b
    return float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * float(w @ w))


def logreg_gradient(w: np.ndarray, b: float, x: np.ndarray, y: np.ndarray,
                    l2: float = 0.0) -> tuple[np.ndarray, float]:
    p = _sigmoid(x @ w + b)
    err = p - y
    dw = x.T @ err / len(y) + l2 * w
    db = float(err.mean())
    return dw, db


def logreg_fit(train_x: np.ndarray, train_y: np.ndarray, spec: LogRegSpec
               ) -> tuple[np.ndarray, float, list[float]]:
    """Full-batch gradient descent from zero weights; returns the loss trace."""
    w = np.zeros(train_x.shape[1])
    b = 0.0
    y = np.asarray(train_y, dtype=float)
    losses = [logreg_loss(w, b, train_x, y, spec.l2)]
    for epoch in range(spec.epochs):
        dw, db = logreg_gradient(w, b, train_x, y, spec.l2)
        w = w - spec.learning_rate * dw
        b = b - spec.learning_rate * db
        loss = logreg_loss(w, b, train_x, y, spec.l2)
        if not np.isfinite(loss):
            raise DivergedError(epoch)
        losses.append(loss)
    return w, b, losses


def logreg_predict(x: np.ndarray, w: np.ndarray, b: float) -> np.ndarray:
    return (_sigmoid(x @ w + b) >= 0.5).astype(int)


def logreg_fit_predict(train_x: np.ndarray, train_y: np.ndarray, test_x: np.ndarray,
                       spec: LogRegSpec) -> np.ndarray:
    w, b, _ = logreg_fit(train_x, train_y, spec)
    return logreg_predict(test_x, w, b)


# ---------------------------------------------------------------------------
# Metrics


def confusion_matrix(y_true: Sequence[int], y_pred: Sequence[int]) -> ConfusionMatrix:
    yt = np.asarray(y_true, dtype=int)
    yp = np.asarray(y_pred, dtype=int)
    if len(yt) != len(yp):
        raise ValueError(f"length mismatch: {len(yt)} vs {len(yp)}")
    for arr, label in ((yt, "y_true"), (yp, "y_pred")):
        if not set(np.unique(arr)) <= {0, 1}:
            raise ValueError(f"{label} contains non-binary labels")
    return ConfusionMatrix(
        tp=int(((yt == 1) & (yp == 1)).sum()),
        tn=int(((yt == 0) & (yp == 0)).sum()),
        fp=int(((yt == 0) & (yp == 1)).sum()),
        fn=int(((yt == 1) & (yp == 0)).sum()),
    )


def metrics_from_cm(cm: ConfusionMatrix) -> Metrics:
    """Accuracy, precision, recall and f1; zero denominators yield 0."""
    if cm.total == 0:
        raise ValueError("empty confusion matrix")
    accuracy = (cm.tp + cm.tn) / cm.total
    precision = cm.tp / (cm.tp + cm.fp) if cm.tp + cm.fp > 0 else 0.0
    recall = cm.tp / (cm.tp + cm.fn) if cm.tp + cm.fn > 0 else 0.0
    f1 = (2 * precision * recall / (precision + recall)) if precision + recall > 0 else 0.0
    return Metrics(accuracy, precision, recall, f1)


# ---------------------------------------------------------------------------
# The per-variant utility report


@dataclass(frozen=True)
class PublishedVariant:
    """A protected dataset plus the raw-row indices its plan suppressed."""

    dataset: Dataset
    suppressed: tuple = ()


@dataclass
class UtilityRow:
    variant: str
    classifier: str
    cm: Optional[ConfusionMatrix] = None
    metrics: Optional[Metrics] = None
    deltas: Optional[Metrics] = None
    error: Optional[str] = None


@dataclass
class UtilityReport:
    rows: list
    split_seed: int
    test_fraction: float

    def row(self, variant: str, classifier: str) -> UtilityRow:
        for r in self.rows:
            if r.variant == variant and r.classifier == classifier:
                return r
        raise KeyError((variant, classifier))

    def to_json(self) -> dict:
        rows = []
        for r in self.rows:
            d = {"variant": r.variant, "classifier": r.classifier}
            if r.error is not None:
                d["error"] = r.error
            else:
                d["confusion"] = {"tp": r.cm.tp, "tn": r.cm.tn, "fp": r.cm.fp, "fn": r.cm.fn}
                d["metrics"] = vars(r.metrics).copy()
                d["deltas"] = {f"delta_{k}": v for k, v in vars(r.deltas).items()}
            rows.append(d)
        return {"split": {"test_fraction": self.test_fraction, "seed": self.split_seed},
                "rows": rows}

    def to_csv(self) -> str:
        header = ("variant,classifier,accuracy,precision,recall,f1,"
                  "delta_accuracy,delta_precision,delta_recall,delta_f1,error")
        lines = [header]
        for r in self.rows:
            if r.error is not None:
                lines.append(f"{r.variant},{r.classifier},,,,,,,,,{r.error}")
            else:
                m, d = r.metrics, r.deltas
                lines.append(f"{r.variant},{r.classifier},"
                             f"{m.accuracy:.6f},{m.precision:.6f},{m.recall:.6f},{m.f1:.6f},"
                             f"{d.accuracy:.6f},{d.precision:.6f},{d.recall:.6f},{d.f1:.6f},")
        return "\n".join(lines) + "\n"


def _fold_positions(retained: np.ndarray, fold_raw: np.ndarray) -> np.ndarray:
    pos = {int(raw): p for p, raw in enumerate(retained)}
    return np.asarray([pos[int(i)] for i in fold_raw if int(i) in pos], dtype=int)


def utility_report(raw: Dataset, variants: dict, specs: Sequence[ClassifierSpec],
                   test_fraction: float = 0.2, seed: int = 0) -> UtilityReport:
    """Evaluate every classifier on the raw data and each protected variant.

    One stratified split, computed on the raw rows, is shared by all
    variants; rows a variant suppressed are removed from both of its folds.
    Variants whose encoding yields no usable features are reported as error
    rows rather than metrics.
    """
    train_raw, test_raw = split_indices(raw.target, test_fraction, seed)
    raw_variant = PublishedVariant(dataset=raw, suppressed=())
    ordered = [("raw", raw_variant)] + [(n, v) for n, v in variants.items() if n != "raw"]

    rows: list[UtilityRow] = []
    baseline: dict[str, Metrics] = {}
    raw_target = raw.target
    for name, variant in ordered:
        ds = variant.dataset
        suppressed = set(int(i) for i in variant.suppressed)
        retained = np.asarray([i for i in range(raw.n_rows) if i not in suppressed], dtype=int)
        if len(retained) != ds.n_rows:
            raise ValueError(f"variant {name!r}: {ds.n_rows} rows but "
                             f"{len(retained)} retained raw rows")
        if not np.array_equal(ds.target, raw_target[retained]):
            raise ValueError(f"variant {name!r} changed target values on retained rows")
        train_pos = _fold_positions(retained, train_raw)
        test_pos = _fold_positions(retained, test_raw)
        y_test = ds.target[test_pos]
        if len(set(y_test.tolist())) < 2:
            raise DegenerateFoldError(f"variant {name!r}: test fold lost an entire class")
        try:
            train_ds = ds.take_rows(train_pos.tolist())
            test_ds = ds.take_rows(test_pos.tolist())
            train_x, train_y, encoder = encode_features(train_ds)
            test_x, _, _ = encode_features(test_ds, encoder)
        except NoUsableFeaturesError:
            for spec in specs:
                rows.append(UtilityRow(name, spec.label, error="NoUsableFeatures"))
            continue
        for spec in specs:
            if isinstance(spec, KNNSpec):
                preds = knn_predict(train_x, train_y, test_x, spec.k)
            else:
                preds = logreg_fit_predict(train_x, train_y, test_x, spec)
            cm = confusion_matrix(y_test, preds)
            metrics = metrics_from_cm(cm)
            if name == "raw":
                baseline[spec.label] = metrics
            base = baseline.get(spec.label)
            deltas = Metrics(*(getattr(metrics, f) - getattr(base, f)
                               for f in ("accuracy", "precision", "recall", "f1")))
            rows.append(UtilityRow(name, spec.label, cm=cm, metrics=metrics, deltas=deltas))
    return UtilityReport(rows=rows, split_seed=seed, test_fraction=test_fraction)
