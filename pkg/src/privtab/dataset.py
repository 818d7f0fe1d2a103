"""Column-oriented tabular datasets with role-annotated schemas.

A :class:`Dataset` is immutable after construction: every operation in this
package returns a new value, so datasets are safe to share across threads.
Cells are plain Python values whose type depends on the column kind:

* ``NUMERIC``     -> float
* ``CATEGORICAL`` -> str
* ``INTERVAL``    -> (low, high) pair of floats, low <= high
* ``MASKED``      -> opaque str token
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import LoadError, TargetNotBinaryError

_INTERVAL_RE = re.compile(r"^\[(.+?),(.+?)\]$")


class ColumnKind(Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"
    INTERVAL = "interval"
    MASKED = "masked"


class AttributeRole(Enum):
    IDENTIFIER = "identifier"
    QID = "qid"
    SENSITIVE = "sensitive"
    NONSENSITIVE = "nonsensitive"
    TARGET = "target"


@dataclass(frozen=True)
class Attribute:
    name: str
    kind: ColumnKind
    role: AttributeRole


@dataclass(frozen=True)
class Schema:
    """Ordered attribute list; exactly one attribute carries the Target role."""

    attributes: tuple[Attribute, ...]

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise LoadError("attribute names must be unique")
        targets = [a for a in self.attributes if a.role is AttributeRole.TARGET]
        if len(targets) != 1:
            raise LoadError(f"schema must carry exactly one target, found {len(targets)}")

    @property
    def m(self) -> int:
        """Attribute count excluding the target."""
        return len(self.attributes) - 1

    @property
    def target_name(self) -> str:
        return next(a.name for a in self.attributes if a.role is AttributeRole.TARGET)

    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def index(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise KeyError(name)

    def attribute(self, name: str) -> Attribute:
        return self.attributes[self.index(name)]


@dataclass(frozen=True)
class Dataset:
    """Immutable column-store; all columns share one length."""

    schema: Schema
    columns: tuple[tuple, ...]

    def __post_init__(self):
        if len(self.columns) != len(self.schema.attributes):
            raise LoadError("column count does not match schema")
        lengths = {len(c) for c in self.columns}
        if len(lengths) > 1:
            raise LoadError(f"ragged columns: lengths {sorted(lengths)}")

    @property
    def n_rows(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    def column(self, name: str) -> tuple:
        return self.columns[self.schema.index(name)]

    def kind(self, name: str) -> ColumnKind:
        return self.schema.attribute(name).kind

    def role(self, name: str) -> AttributeRole:
        return self.schema.attribute(name).role

    @property
    def target(self) -> np.ndarray:
        """Target labels as an int array of 0/1."""
        return np.asarray(self.column(self.schema.target_name), dtype=float).astype(int)

    def feature_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.schema.attributes if a.role is not AttributeRole.TARGET)

    def replace_column(self, name: str, cells: Sequence, kind: ColumnKind) -> "Dataset":
        i = self.schema.index(name)
        old = self.schema.attributes[i]
        attrs = list(self.schema.attributes)
        attrs[i] = Attribute(old.name, kind, old.role)
        cols = list(self.columns)
        cols[i] = tuple(cells)
        return Dataset(Schema(tuple(attrs)), tuple(cols))

    def take_rows(self, indices: Sequence[int]) -> "Dataset":
        idx = list(indices)
        cols = tuple(tuple(col[i] for i in idx) for col in self.columns)
        return Dataset(self.schema, cols)

    def row(self, i: int) -> tuple:
        return tuple(col[i] for col in self.columns)


@dataclass(frozen=True)
class PartitionView:
    """The Q / S / M split of a dataset's non-target attributes."""

    q: frozenset[str]
    s: frozenset[str]
    m_set: frozenset[str]
    y: str


def render_cell(cell, kind: ColumnKind) -> str:
    """Canonical string form of a cell, used for masking and CSV output.

    Integral floats render without a decimal point so that e.g. an age of
    170.0 masks to "1**" rather than "1****".
    """
    if kind is ColumnKind.NUMERIC:
        return _render_number(float(cell))
    if kind is ColumnKind.INTERVAL:
        lo, hi = cell
        return f"[{_render_number(float(lo))},{_render_number(float(hi))}]"
    return str(cell)


def _render_number(v: float) -> str:
    if math.isfinite(v) and v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def parse_interval(token: str) -> Optional[tuple[float, float]]:
    m = _INTERVAL_RE.match(token)
    if not m:
        return None
    try:
        lo, hi = float(m.group(1)), float(m.group(2))
    except ValueError:
        return None
    return (lo, hi) if lo <= hi else None


_ROLES = {r.value: r for r in AttributeRole}


def load_csv(path, role_config: dict, positive_label: Optional[str] = None) -> Dataset:
    """Load a UTF-8, comma-delimited CSV with a header row.

    ``role_config`` maps every header name onto one of
    ``identifier | qid | sensitive | nonsensitive | target``.  Column kinds
    are inferred per column: interval strings "[lo,hi]", masked tokens
    containing "*", all-numeric, and categorical otherwise.  The target
    column is coerced to {0, 1}; two arbitrary distinct tokens are accepted
    when ``positive_label`` names the token that maps to 1.

    Missing cells are rejected with their row/column coordinates: this
    package expects pre-cleaned input and does not impute.
    """
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise LoadError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise LoadError(f"{path}: empty file") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(header):
                raise LoadError(f"{path}: ragged row at line {lineno}: "
                                f"expected {len(header)} cells, got {len(row)}")
            rows.append(row)

    roles = _resolve_roles(header, role_config)
    raw_cols = [tuple(r[j] for r in rows) for j in range(len(header))]
    for j, name in enumerate(header):
        for i, cell in enumerate(raw_cols[j]):
            if cell.strip() == "":
                raise LoadError(f"missing cell at row {i + 1}, column {name!r}")

    attrs = []
    cols = []
    for name, raw in zip(header, raw_cols):
        role = roles[name]
        if role is AttributeRole.TARGET:
            cells = _coerce_target(raw, positive_label)
            attrs.append(Attribute(name, ColumnKind.NUMERIC, role))
            cols.append(cells)
            continue
        kind, cells = _infer_column(raw)
        attrs.append(Attribute(name, kind, role))
        cols.append(cells)
    return Dataset(Schema(tuple(attrs)), tuple(cols))


def _resolve_roles(header: list[str], role_config: dict) -> dict[str, AttributeRole]:
    unknown = set(role_config) - set(header)
    if unknown:
        raise LoadError(f"role config names unknown attributes: {sorted(unknown)}")
    missing = set(header) - set(role_config)
    if missing:
        raise LoadError(f"role config does not cover attributes: {sorted(missing)}")
    roles = {}
    for name, value in role_config.items():
        if value not in _ROLES:
            raise LoadError(f"unknown role {value!r} for attribute {name!r}")
        roles[name] = _ROLES[value]
    n_targets = sum(1 for r in roles.values() if r is AttributeRole.TARGET)
    if n_targets != 1:
        raise LoadError(f"role config must mark exactly one target, found {n_targets}")
    return roles


def _infer_column(raw: tuple[str, ...]) -> tuple[ColumnKind, tuple]:
    intervals = [parse_interval(c) for c in raw]
    if all(iv is not None for iv in intervals):
        return ColumnKind.INTERVAL, tuple(intervals)
    if any("*" in c for c in raw):
        return ColumnKind.MASKED, raw
    try:
        return ColumnKind.NUMERIC, tuple(float(c) for c in raw)
    except ValueError:
        return ColumnKind.CATEGORICAL, raw


def _coerce_target(raw: tuple[str, ...], positive_label: Optional[str]) -> tuple[float, ...]:
    distinct = sorted(set(raw))
    if len(distinct) > 2:
        raise TargetNotBinaryError(f"target has {len(distinct)} distinct values: {distinct[:5]}")
    as_float = {}
    for tok in distinct:
        try:
            as_float[tok] = float(tok)
        except ValueError:
            as_float = None
            break
    if as_float is not None and set(as_float.values()) <= {0.0, 1.0}:
        return tuple(as_float[c] for c in raw)
    if positive_label is not None:
        if positive_label not in distinct:
            raise TargetNotBinaryError(
                f"positive label {positive_label!r} not among target values {distinct}")
        return tuple(1.0 if c == positive_label else 0.0 for c in raw)
    raise TargetNotBinaryError(
        f"target values {distinct} are not 0/1 and no positive label was configured")


def drop_identifiers(ds: Dataset) -> Dataset:
    """Remove every identifier-role column; row count is unchanged."""
    keep = [i for i, a in enumerate(ds.schema.attributes) if a.role is not AttributeRole.IDENTIFIER]
    attrs = tuple(ds.schema.attributes[i] for i in keep)
    cols = tuple(ds.columns[i] for i in keep)
    return Dataset(Schema(attrs), cols)


def partition(ds: Dataset) -> PartitionView:
    """Split the schema into quasi-identifier, sensitive, and non-sensitive sets."""
    q, s, m = set(), set(), set()
    for a in ds.schema.attributes:
        if a.role is AttributeRole.IDENTIFIER:
            raise LoadError(f"identifier column {a.name!r} must be dropped before partitioning")
        if a.role is AttributeRole.QID:
            q.add(a.name)
        elif a.role is AttributeRole.SENSITIVE:
            s.add(a.name)
        elif a.role is AttributeRole.NONSENSITIVE:
            m.add(a.name)
    return PartitionView(frozenset(q), frozenset(s), frozenset(m), ds.schema.target_name)


def split_indices(labels: np.ndarray, test_fraction: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Stratified train/test row indices, deterministic for a fixed seed.

    The train side holds ceil(n * (1 - f)) rows overall; per-class counts are
    allocated by largest remainder so the global size is exact.  Returned
    indices are sorted, so row order within each side follows the input.
    """
    labels = np.asarray(labels)
    n = len(labels)
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must lie in (0, 1), got {test_fraction}")
    if n < 2:
        raise ValueError("need at least 2 rows to split")
    classes = [0, 1]
    per_class = {c: np.flatnonzero(labels == c) for c in classes}
    for c in classes:
        if len(per_class[c]) == 0:
            raise ValueError(f"target class {c} has zero rows")

    n_train = math.ceil(n * (1.0 - test_fraction))
    quotas = {c: len(per_class[c]) * (1.0 - test_fraction) for c in classes}
    take = {c: min(int(quotas[c]), len(per_class[c])) for c in classes}
    leftover = n_train - sum(take.values())
    by_remainder = sorted(classes, key=lambda c: quotas[c] - int(quotas[c]), reverse=True)
    while leftover > 0:
        for c in by_remainder:
            if leftover == 0:
                break
            if take[c] < len(per_class[c]):
                take[c] += 1
                leftover -= 1

    rng = np.random.default_rng(seed)
    train_parts, test_parts = [], []
    for c in classes:
        idx = per_class[c].copy()
        rng.shuffle(idx)
        train_parts.append(idx[: take[c]])
        test_parts.append(idx[take[c]:])
    train = np.sort(np.concatenate(train_parts))
    test = np.sort(np.concatenate(test_parts))
    return train, test


def train_test_split(ds: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Stratified row split; concatenating both sides reproduces the input rows."""
    train, test = split_indices(ds.target, test_fraction, seed)
    return ds.take_rows(train), ds.take_rows(test)


def standardize_numeric(
    ds: Dataset,
    stats: Optional[dict[str, tuple[float, float]]] = None,
) -> tuple[Dataset, dict[str, tuple[float, float]]]:
    """Map each numeric feature column to (x - mean) / std.

    Population (1/N) standard deviation is used for reproducibility.  When
    ``stats`` is supplied (test folds) those moments are applied unchanged;
    otherwise they are computed from ``ds`` and returned for reuse.
    Zero-variance columns map to all zeros.  The target column is left
    untouched so that labels stay {0, 1}.
    """
    out = ds
    fitted = {} if stats is None else dict(stats)
    for a in ds.schema.attributes:
        if a.kind is not ColumnKind.NUMERIC or a.role is AttributeRole.TARGET:
            continue
        values = np.asarray(ds.column(a.name), dtype=float)
        if stats is None:
            mean = float(values.mean())
            std = float(values.std())
            fitted[a.name] = (mean, std)
        else:
            mean, std = fitted[a.name]
        if std == 0.0:
            scaled = np.zeros_like(values)
        else:
            scaled = (values - mean) / std
        out = out.replace_column(a.name, [float(v) for v in scaled], ColumnKind.NUMERIC)
    return out, fitted


def dataset_to_csv(ds: Dataset) -> str:
    """Render a dataset back to CSV text using the canonical cell renderings."""
    lines = [",".join(ds.schema.names())]
    kinds = [a.kind for a in ds.schema.attributes]
    for i in range(ds.n_rows):
        lines.append(",".join(render_cell(col[i], k) for col, k in zip(ds.columns, kinds)))
    return "\n".join(lines) + "\n"
