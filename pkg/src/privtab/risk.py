"""Disclosure-risk scoring via mutual information with the target.

Each non-target attribute is scored by the plug-in MI estimator over a
joint histogram of discretized attribute values against the binary target;
the dataset-level risk-reduced ratio compares the summed scores of raw and
published data.  A Kraskov-style k-nearest-neighbour estimator is provided
to cross-check the plug-in on continuous pairs.  All values are in nats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree
from scipy.special import digamma

from .dataset import AttributeRole, ColumnKind, Dataset, render_cell

# Tiny negatives from floating rounding are clamped to zero; anything more
# negative indicates a real bug and is allowed through for tests to catch.
_ROUNDING_EPS = 1e-12


@dataclass(frozen=True)
class JointHistogram:
    """Empirical joint counts of two token columns."""

    x_levels: tuple
    y_levels: tuple
    counts: tuple  # row-major |x_levels| x |y_levels| grid
    n: int

    @classmethod
    def from_tokens(cls, x: Sequence, y: Sequence) -> "JointHistogram":
        if len(x) != len(y):
            raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
        if len(x) == 0:
            raise ValueError("cannot build a histogram from zero rows")
        x_levels = tuple(sorted(set(x)))
        y_levels = tuple(sorted(set(y)))
        xi = {t: i for i, t in enumerate(x_levels)}
        yi = {t: i for i, t in enumerate(y_levels)}
        grid = np.zeros((len(x_levels), len(y_levels)), dtype=int)
        for a, b in zip(x, y):
            grid[xi[a], yi[b]] += 1
        return cls(x_levels, y_levels, tuple(map(tuple, grid.tolist())), len(x))

    def count_grid(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float)

    def merge_x_levels(self, i: int, j: int) -> "JointHistogram":
        """Coarsen the histogram by pooling two x levels into one."""
        if i == j:
            raise ValueError("cannot merge a level with itself")
        i, j = sorted((i, j))
        grid = self.count_grid().astype(int)
        grid[i] += grid[j]
        grid = np.delete(grid, j, axis=0)
        levels = tuple(t for p, t in enumerate(self.x_levels) if p != j)
        return JointHistogram(levels, self.y_levels, tuple(map(tuple, grid.tolist())), self.n)


def entropy_from_counts(counts: np.ndarray) -> float:
    p = np.asarray(counts, dtype=float)
    p = p[p > 0] / p.sum()
    return float(-(p * np.log(p)).sum())


def plugin_mi_from_histogram(hist: JointHistogram) -> float:
    grid = hist.count_grid()
    n = grid.sum()
    pxy = grid / n
    px = pxy.sum(axis=1, keepdims=True)
    py = pxy.sum(axis=0, keepdims=True)
    nz = pxy > 0
    mi = float((pxy[nz] * np.log(pxy[nz] / (px @ py)[nz])).sum())
    if -_ROUNDING_EPS < mi < 0.0:
        mi = 0.0
    return mi


def mutual_information_plugin(x: Sequence, y: Sequence) -> float:
    """Plug-in MI of two token columns, in nats."""
    return plugin_mi_from_histogram(JointHistogram.from_tokens(x, y))


def mutual_information_knn(x: Sequence[float], y: Sequence[float], k_neighbors: int = 3) -> float:
    """Kraskov-Stoegbauer-Grassberger estimator (first variant), in nats.

    MI = psi(k) + psi(N) - <psi(n_x + 1) + psi(n_y + 1)> with max-norm
    neighbourhoods; marginal counts use strict inequality against the
    distance to the k-th joint neighbour.  Small negative estimates are
    reported unclamped.
    """
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    if xv.ndim != 1 or yv.ndim != 1:
        raise ValueError("inputs must be one-dimensional")
    if len(xv) != len(yv):
        raise ValueError(f"length mismatch: {len(xv)} vs {len(yv)}")
    n = len(xv)
    if k_neighbors >= n:
        raise ValueError(f"k_neighbors={k_neighbors} must be < N={n}")
    points = np.column_stack([xv, yv])
    tree = cKDTree(points)
    dist, _ = tree.query(points, k=k_neighbors + 1, p=np.inf)
    eps = dist[:, -1]

    xs = np.sort(xv)
    ys = np.sort(yv)
    # strictly-within counts exclude the point itself
    nx = (np.searchsorted(xs, xv + eps, side="left")
          - np.searchsorted(xs, xv - eps, side="right"))
    ny = (np.searchsorted(ys, yv + eps, side="left")
          - np.searchsorted(ys, yv - eps, side="right"))
    nx = np.maximum(nx - 1, 0)
    ny = np.maximum(ny - 1, 0)
    return float(digamma(k_neighbors) + digamma(n)
                 - np.mean(digamma(nx + 1) + digamma(ny + 1)))


def discretize_for_mi(cells: Sequence, kind: ColumnKind, n_bins: int = 10) -> list[str]:
    """Token view of a column for histogram estimation.

    Numeric columns turn into equal-frequency bin labels; a column whose
    distinct values already fit in n_bins keeps one token per value, so
    discrete-coded columns are never pooled below their natural levels.
    Duplicate quantile cut points are merged, which can reduce the bin
    count.  Every other kind passes through as its canonical rendering.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    if kind is not ColumnKind.NUMERIC:
        return [render_cell(c, kind) for c in cells]
    values = np.asarray(cells, dtype=float)
    distinct = np.unique(values)
    if len(distinct) <= n_bins:
        index = {v: i for i, v in enumerate(distinct.tolist())}
        return [f"b{index[float(v)]}" for v in values]
    lo, hi = float(values.min()), float(values.max())
    qs = [i / n_bins for i in range(1, n_bins)]
    cuts = np.unique(np.quantile(values, qs))
    cuts = cuts[(cuts > lo) & (cuts < hi)]
    idx = np.searchsorted(cuts, values, side="right")
    return [f"b{i}" for i in idx]


@dataclass(frozen=True)
class EstimatorConfig:
    kind: str = "plugin"  # "plugin" | "knn"
    n_bins: int = 10
    k_neighbors: int = 3

    def label(self) -> str:
        return self.kind


@dataclass(frozen=True)
class MIScore:
    attribute: str
    nats: float
    estimator: str
    n_bins_used: Optional[int] = None


@dataclass
class RiskReport:
    """Per-attribute MI scores plus dataset-level totals."""

    scores: list  # MIScore, sorted descending by nats
    bands: dict  # attribute -> "Low" | "Medium" | "High"
    estimator: str
    baseline_total: Optional[float] = None
    risk_reduced: Optional[float] = None
    scope: str = "all"

    @property
    def total_mi(self) -> float:
        return float(sum(s.nats for s in self.scores))

    def score_of(self, attribute: str) -> float:
        for s in self.scores:
            if s.attribute == attribute:
                return s.nats
        raise KeyError(attribute)

    def attribute_names(self) -> set[str]:
        return {s.attribute for s in self.scores}

    def to_json(self) -> dict:
        out = {
            "estimator": self.estimator,
            "scope": self.scope,
            "scores": [{"attribute": s.attribute, "mi_nats": s.nats, "band": self.bands[s.attribute]}
                       for s in self.scores],
            "total_mi": self.total_mi,
        }
        if self.baseline_total is not None:
            out["baseline_total"] = self.baseline_total
        if self.risk_reduced is not None:
            out["risk_reduced"] = self.risk_reduced
        return out


def risk_band(nats: float, max_nats: float) -> str:
    """Band a score by thirds of the report's maximum score."""
    if max_nats <= 0.0:
        return "Low"
    r = nats / max_nats
    if r < 1.0 / 3.0:
        return "Low"
    if r < 2.0 / 3.0:
        return "Medium"
    return "High"


def attribute_risk_scores(ds: Dataset, estimator: EstimatorConfig = EstimatorConfig(),
                          scope: str = "all") -> RiskReport:
    """Score MI(attribute; target) for every non-target attribute.

    ``scope`` restricts the report to quasi-identifier and sensitive
    attributes when set to "qs"; the default covers all non-target
    attributes.  Scores are sorted descending, ties keeping schema order.
    """
    if scope not in ("all", "qs"):
        raise ValueError(f"unknown scope {scope!r}")
    y_tokens = [render_cell(c, ColumnKind.NUMERIC) for c in ds.column(ds.schema.target_name)]
    scores = []
    for a in ds.schema.attributes:
        if a.role is AttributeRole.TARGET:
            continue
        if scope == "qs" and a.role not in (AttributeRole.QID, AttributeRole.SENSITIVE):
            continue
        if estimator.kind == "knn" and a.kind is ColumnKind.NUMERIC:
            y_num = np.asarray(ds.column(ds.schema.target_name), dtype=float)
            nats = mutual_information_knn(ds.column(a.name), y_num, estimator.k_neighbors)
            scores.append(MIScore(a.name, nats, "knn", None))
            continue
        tokens = discretize_for_mi(ds.column(a.name), a.kind, estimator.n_bins)
        bins_used = len(set(tokens)) if a.kind is ColumnKind.NUMERIC else None
        nats = mutual_information_plugin(tokens, y_tokens)
        scores.append(MIScore(a.name, nats, "plugin", bins_used))
    scores.sort(key=lambda s: -s.nats)
    max_nats = scores[0].nats if scores else 0.0
    bands = {s.attribute: risk_band(s.nats, max_nats) for s in scores}
    return RiskReport(scores=scores, bands=bands, estimator=estimator.label(), scope=scope)


def risk_reduced_ratio(raw: RiskReport, published: RiskReport) -> float:
    """Fraction of summed attribute-target MI removed by protection.

    (sum_raw - sum_published) / sum_raw; at most 1, and negative when noise
    spuriously raises the published estimate.
    """
    if raw.attribute_names() != published.attribute_names():
        missing = raw.attribute_names() ^ published.attribute_names()
        raise ValueError(f"reports cover different attributes: {sorted(missing)}")
    if raw.total_mi == 0.0:
        raise ValueError("raw total MI is zero; the ratio is undefined")
    return (raw.total_mi - published.total_mi) / raw.total_mi


def with_baseline(published: RiskReport, raw: RiskReport) -> RiskReport:
    """Attach the raw totals and the risk-reduced ratio to a published report."""
    return RiskReport(scores=published.scores, bands=published.bands,
                      estimator=published.estimator,
                      baseline_total=raw.total_mi,
                      risk_reduced=risk_reduced_ratio(raw, published),
                      scope=published.scope)
