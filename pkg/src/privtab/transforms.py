"""The six privacy-protection transforms and their composition into plans.

Noise steps (additive / multiplicative randomisation) perturb numeric
columns; binning and masking coarsen or hide single columns; k-anonymity
and l-diversity operate on quasi-identifier groups and may suppress rows.
A :class:`ProtectionPlan` applies steps strictly in order with noise
streams derived from (plan seed, step index, column index), so the same
plan on the same data is byte-for-byte reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .dataset import AttributeRole, ColumnKind, Dataset, render_cell
from .errors import AllSuppressedError, PlanError, TransformError, UnsatisfiableError

ALL_NUMERIC = "ALL_NUMERIC"

# Default parameters for preset plans.  The paper-style hybrid methods use
# noise scaled to each column's own spread; sigma for the multiplicative
# variant stays small because it multiplies cell magnitudes directly.
DEFAULT_SIGMA_ADDITIVE = 1.0
DEFAULT_SIGMA_MULTIPLICATIVE = 0.1
DEFAULT_K = 5
DEFAULT_L = 2
DEFAULT_BINS = 5

Targets = Union[str, tuple]


def _norm_targets(targets: Targets) -> Targets:
    if targets == ALL_NUMERIC:
        return ALL_NUMERIC
    if isinstance(targets, str):
        return (targets,)
    return tuple(targets)


@dataclass(frozen=True)
class RandAdditive:
    sigma_rel: float = DEFAULT_SIGMA_ADDITIVE
    targets: Targets = ALL_NUMERIC

    op = "ra"

    def __post_init__(self):
        if self.sigma_rel < 0:
            raise PlanError("sigma_rel must be >= 0")
        object.__setattr__(self, "targets", _norm_targets(self.targets))


@dataclass(frozen=True)
class RandMultiplicative:
    sigma_rel: float = DEFAULT_SIGMA_MULTIPLICATIVE
    targets: Targets = ALL_NUMERIC

    op = "rm"

    def __post_init__(self):
        if self.sigma_rel < 0:
            raise PlanError("sigma_rel must be >= 0")
        object.__setattr__(self, "targets", _norm_targets(self.targets))


@dataclass(frozen=True)
class KAnonymize:
    k: int = DEFAULT_K
    qids: tuple = ()

    op = "k"

    def __post_init__(self):
        if self.k < 1:
            raise PlanError("k must be >= 1")
        object.__setattr__(self, "qids", tuple(self.qids))
        if not self.qids:
            raise PlanError("k-anonymity needs at least one quasi-identifier")


@dataclass(frozen=True)
class LDiversify:
    l: int = DEFAULT_L
    sensitive: str = ""
    qids: tuple = ()

    op = "l"

    def __post_init__(self):
        if self.l < 1:
            raise PlanError("l must be >= 1")
        if not self.sensitive:
            raise PlanError("l-diversity needs a sensitive attribute")
        object.__setattr__(self, "qids", tuple(self.qids))
        if not self.qids:
            raise PlanError("l-diversity needs at least one quasi-identifier")


@dataclass(frozen=True)
class Bin:
    n_bins: int = DEFAULT_BINS
    strategy: str = "equal_width"
    targets: Targets = ()

    op = "bin"

    def __post_init__(self):
        if self.n_bins < 1:
            raise PlanError("n_bins must be >= 1")
        if self.strategy not in ("equal_width", "equal_frequency"):
            raise PlanError(f"unknown binning strategy {self.strategy!r}")
        object.__setattr__(self, "targets", _norm_targets(self.targets))


@dataclass(frozen=True)
class Mask:
    mode: str = "full"
    keep_prefix: int = 0
    targets: Targets = ()

    op = "mask"

    def __post_init__(self):
        if self.mode not in ("full", "partial"):
            raise PlanError(f"unknown mask mode {self.mode!r}")
        if self.keep_prefix < 0:
            raise PlanError("keep_prefix must be >= 0")
        object.__setattr__(self, "targets", _norm_targets(self.targets))


TransformStep = Union[RandAdditive, RandMultiplicative, KAnonymize, LDiversify, Bin, Mask]


@dataclass(frozen=True)
class ProtectionPlan:
    name: str
    seed: int
    steps: tuple = ()

    def __post_init__(self):
        if self.seed < 0:
            raise PlanError("plan seed must be a non-negative integer")
        object.__setattr__(self, "steps", tuple(self.steps))

    def to_json(self) -> dict:
        return {"name": self.name, "seed": self.seed,
                "steps": [step_to_json(s) for s in self.steps]}

    @classmethod
    def from_json(cls, obj: dict) -> "ProtectionPlan":
        try:
            steps = tuple(step_from_json(s) for s in obj["steps"])
            return cls(name=obj["name"], seed=int(obj["seed"]), steps=steps)
        except (KeyError, TypeError) as exc:
            raise PlanError(f"malformed plan JSON: {exc}") from exc


@dataclass
class SuppressionLog:
    """Rows removed by group-based steps, indexed into the pre-plan dataset."""

    entries: list = field(default_factory=list)  # (row_index, reason) pairs

    @property
    def suppressed_row_indices(self) -> list[int]:
        return [i for i, _ in self.entries]

    def add(self, indices: Sequence[int], reason: str):
        self.entries.extend((int(i), reason) for i in indices)

    def extend(self, other: "SuppressionLog"):
        self.entries.extend(other.entries)

    def to_json(self) -> list[dict]:
        return [{"row": i, "reason": r} for i, r in sorted(self.entries)]


def step_to_json(step: TransformStep) -> dict:
    d = {"op": step.op}
    if isinstance(step, (RandAdditive, RandMultiplicative)):
        d["sigma_rel"] = step.sigma_rel
        d["targets"] = step.targets if step.targets == ALL_NUMERIC else list(step.targets)
    elif isinstance(step, KAnonymize):
        d["k"] = step.k
        d["qids"] = list(step.qids)
    elif isinstance(step, LDiversify):
        d["l"] = step.l
        d["sensitive"] = step.sensitive
        d["qids"] = list(step.qids)
    elif isinstance(step, Bin):
        d["n_bins"] = step.n_bins
        d["strategy"] = step.strategy
        d["targets"] = step.targets if step.targets == ALL_NUMERIC else list(step.targets)
    elif isinstance(step, Mask):
        d["mode"] = step.mode
        if step.mode == "partial":
            d["keep_prefix"] = step.keep_prefix
        d["targets"] = step.targets if step.targets == ALL_NUMERIC else list(step.targets)
    return d


def step_from_json(obj: dict) -> TransformStep:
    op = obj.get("op")
    try:
        if op == "ra":
            return RandAdditive(sigma_rel=float(obj["sigma_rel"]), targets=obj["targets"])
        if op == "rm":
            return RandMultiplicative(sigma_rel=float(obj["sigma_rel"]), targets=obj["targets"])
        if op == "k":
            return KAnonymize(k=int(obj["k"]), qids=tuple(obj["qids"]))
        if op == "l":
            return LDiversify(l=int(obj["l"]), sensitive=obj["sensitive"], qids=tuple(obj["qids"]))
        if op == "bin":
            return Bin(n_bins=int(obj["n_bins"]), strategy=obj.get("strategy", "equal_width"),
                       targets=obj["targets"])
        if op == "mask":
            return Mask(mode=obj.get("mode", "full"), keep_prefix=int(obj.get("keep_prefix", 0)),
                        targets=obj["targets"])
    except (KeyError, TypeError, ValueError) as exc:
        raise PlanError(f"malformed step {obj!r}: {exc}") from exc
    raise PlanError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# Column-level operations


def rand_additive(cells: Sequence[float], sigma_rel: float, rng: np.random.Generator) -> list[float]:
    """x' = x + eps with eps ~ Normal(0, (sigma_rel * population std)^2)."""
    if sigma_rel < 0:
        raise ValueError("sigma_rel must be >= 0")
    values = np.asarray(cells, dtype=float)
    scale = sigma_rel * float(values.std())
    if scale == 0.0:
        return [float(v) for v in values]
    return [float(v) for v in values + rng.normal(0.0, scale, size=len(values))]


def rand_multiplicative(cells: Sequence[float], sigma_rel: float, rng: np.random.Generator) -> list[float]:
    """x' = x * (1 + eps) with eps ~ Normal(0, sigma_rel^2)."""
    if sigma_rel < 0:
        raise ValueError("sigma_rel must be >= 0")
    values = np.asarray(cells, dtype=float)
    if sigma_rel == 0.0:
        return [float(v) for v in values]
    return [float(v) for v in values * (1.0 + rng.normal(0.0, sigma_rel, size=len(values)))]


def bin_column(cells: Sequence[float], n_bins: int, strategy: str = "equal_width") -> list[tuple[float, float]]:
    """Replace each numeric cell by its containing interval.

    equal_width splits [min, max] into n_bins half-open intervals (the last
    one closed); equal_frequency cuts at quantiles, merging duplicate cut
    points.  A constant column collapses to a single degenerate interval.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    values = np.asarray(cells, dtype=float)
    if len(values) == 0:
        raise ValueError("cannot bin an empty column")
    lo, hi = float(values.min()), float(values.max())
    if lo == hi or n_bins == 1:
        return [(lo, hi)] * len(values)
    if strategy == "equal_width":
        edges = np.linspace(lo, hi, n_bins + 1)
    elif strategy == "equal_frequency":
        qs = [i / n_bins for i in range(1, n_bins)]
        cuts = np.unique(np.quantile(values, qs))
        cuts = cuts[(cuts > lo) & (cuts < hi)]
        edges = np.concatenate([[lo], cuts, [hi]])
    else:
        raise ValueError(f"unknown binning strategy {strategy!r}")
    idx = np.searchsorted(edges[1:-1], values, side="right")
    return [(float(edges[i]), float(edges[i + 1])) for i in idx]


def mask_column(cells: Sequence, kind: ColumnKind, mode: str = "full", keep_prefix: int = 0) -> list[str]:
    """Full masking yields the constant token "*"; partial masking keeps a
    prefix of the cell's string rendering and stars out the rest."""
    if mode == "full":
        return ["*"] * len(cells)
    if mode != "partial":
        raise ValueError(f"unknown mask mode {mode!r}")
    out = []
    for cell in cells:
        s = render_cell(cell, kind)
        out.append(s[:keep_prefix] + "*" * max(0, len(s) - keep_prefix))
    return out


# ---------------------------------------------------------------------------
# k-anonymity (greedy Mondrian-style strict partitioning)


def _normalized_span(ds: Dataset, qid: str, rows: np.ndarray, global_span: float) -> float:
    kind = ds.kind(qid)
    col = ds.column(qid)
    if kind is ColumnKind.NUMERIC:
        vals = np.asarray([col[i] for i in rows], dtype=float)
        if global_span == 0.0:
            return 0.0
        return float(vals.max() - vals.min()) / global_span
    distinct = len({col[i] for i in rows})
    if global_span <= 0.0:
        return 0.0
    return (distinct - 1) / global_span


def _global_span(ds: Dataset, qid: str) -> float:
    col = ds.column(qid)
    if ds.kind(qid) is ColumnKind.NUMERIC:
        vals = np.asarray(col, dtype=float)
        return float(vals.max() - vals.min())
    return float(len(set(col)) - 1)


def _try_split(ds: Dataset, qid: str, rows: np.ndarray, k: int) -> Optional[tuple[np.ndarray, np.ndarray]]:
    col = ds.column(qid)
    if ds.kind(qid) is ColumnKind.NUMERIC:
        vals = np.asarray([col[i] for i in rows], dtype=float)
        median = float(np.median(vals))
        left = rows[vals <= median]
        right = rows[vals > median]
    else:
        distinct = sorted({col[i] for i in rows})
        if len(distinct) < 2:
            return None
        left_set = set(distinct[: len(distinct) // 2])
        mask = np.array([col[i] in left_set for i in rows])
        left = rows[mask]
        right = rows[~mask]
    if len(left) >= k and len(right) >= k:
        return left, right
    return None


def k_anonymize(ds: Dataset, qids: Sequence[str], k: int) -> tuple[Dataset, SuppressionLog]:
    """Generalize quasi-identifiers until every released QID tuple occurs
    at least k times.

    Numeric QIDs are recursively median-split on the attribute with the
    widest normalized span (splits that would leave a group under k are
    skipped); each final group renders as the interval [group min, group
    max].  Categorical QIDs split on sorted value halves and render as
    sorted token unions.  Rows in groups that cannot reach size k are
    suppressed and logged.
    """
    qids = tuple(qids)
    if k < 1:
        raise PlanError("k must be >= 1")
    if not qids:
        raise PlanError("k-anonymity needs at least one quasi-identifier")
    for q in qids:
        kind = ds.kind(q)
        if kind not in (ColumnKind.NUMERIC, ColumnKind.CATEGORICAL):
            raise PlanError(f"quasi-identifier {q!r} must be numeric or categorical, is {kind.value}")
    if k > ds.n_rows:
        raise AllSuppressedError(f"k={k} exceeds the {ds.n_rows} available rows")
    log = SuppressionLog()
    if k == 1:
        return ds, log

    spans = {q: _global_span(ds, q) for q in qids}
    leaves: list[np.ndarray] = []
    stack = [np.arange(ds.n_rows)]
    while stack:
        rows = stack.pop()
        order = sorted(qids, key=lambda q: (-_normalized_span(ds, q, rows, spans[q]), ds.schema.index(q)))
        for q in order:
            split = _try_split(ds, q, rows, k)
            if split is not None:
                stack.extend(split)
                break
        else:
            leaves.append(rows)

    retained_leaves = []
    for rows in leaves:
        if len(rows) >= k:
            retained_leaves.append(rows)
        else:
            log.add(rows.tolist(), "k_anonymity")

    generalized: dict[str, dict[int, object]] = {q: {} for q in qids}
    for rows in retained_leaves:
        for q in qids:
            col = ds.column(q)
            if ds.kind(q) is ColumnKind.NUMERIC:
                vals = [float(col[i]) for i in rows]
                cell = (min(vals), max(vals))
            else:
                distinct = sorted({col[i] for i in rows})
                cell = distinct[0] if len(distinct) == 1 else "|".join(distinct)
            for i in rows:
                generalized[q][int(i)] = cell

    kept = np.sort(np.concatenate(retained_leaves)) if retained_leaves else np.array([], dtype=int)
    if len(kept) == 0:
        raise AllSuppressedError("every group fell below k")
    out = ds
    for q in qids:
        cells = [generalized[q][int(i)] for i in kept]
        kind = ColumnKind.INTERVAL if ds.kind(q) is ColumnKind.NUMERIC else ColumnKind.CATEGORICAL
        full = list(ds.column(q))
        for pos, i in enumerate(kept):
            full[int(i)] = cells[pos]
        out = out.replace_column(q, full, kind)
    out = out.take_rows(kept.tolist())
    return out, log


# ---------------------------------------------------------------------------
# l-diversity (distinct variant, merge-then-suppress repair)


def _class_midpoint(ds: Dataset, qids: tuple, key: tuple) -> list:
    mids = []
    for q, cell in zip(qids, key):
        kind = ds.kind(q)
        if kind is ColumnKind.INTERVAL:
            mids.append((cell[0] + cell[1]) / 2.0)
        elif kind is ColumnKind.NUMERIC:
            mids.append(float(cell))
        else:
            mids.append(cell)
    return mids


def _class_distance(a: list, b: list) -> float:
    d = 0.0
    for x, y in zip(a, b):
        if isinstance(x, float) and isinstance(y, float):
            d += (x - y) ** 2
        else:
            d += 0.0 if x == y else 1.0
    return d ** 0.5


def _merge_key(ds: Dataset, qids: tuple, key_a: tuple, key_b: tuple) -> tuple:
    merged = []
    for q, ca, cb in zip(qids, key_a, key_b):
        kind = ds.kind(q)
        if kind in (ColumnKind.INTERVAL, ColumnKind.NUMERIC):
            lo_a, hi_a = (ca if isinstance(ca, tuple) else (float(ca), float(ca)))
            lo_b, hi_b = (cb if isinstance(cb, tuple) else (float(cb), float(cb)))
            merged.append((min(lo_a, lo_b), max(hi_a, hi_b)))
        else:
            tokens = set()
            for c in (ca, cb):
                tokens.update(str(c).split("|"))
            merged.append("|".join(sorted(tokens)))
    return tuple(merged)


def enforce_l_diversity(ds: Dataset, qids: Sequence[str], sensitive: str, l: int) -> tuple[Dataset, SuppressionLog]:
    """Ensure every equivalence class holds >= l distinct sensitive values.

    Classes are rows sharing one (generalized) QID tuple; expected to run
    after k-anonymization on the same QIDs.  A violating class merges with
    its nearest neighbour by generalization-interval midpoint distance,
    widening the merged generalization to the hull; classes that still
    cannot reach l are suppressed.
    """
    qids = tuple(qids)
    if l < 1:
        raise PlanError("l must be >= 1")
    if sensitive not in ds.schema.names():
        raise PlanError(f"unknown sensitive attribute {sensitive!r}")
    for q in qids:
        if q not in ds.schema.names():
            raise PlanError(f"unknown quasi-identifier {q!r}")
    log = SuppressionLog()
    if l == 1:
        return ds, log
    sens_col = ds.column(sensitive)
    if len(set(sens_col)) < l:
        raise UnsatisfiableError(
            f"l={l} exceeds the {len(set(sens_col))} distinct values of {sensitive!r}")

    qid_cols = [ds.column(q) for q in qids]
    classes: dict[tuple, list[int]] = {}
    for i in range(ds.n_rows):
        key = tuple(col[i] for col in qid_cols)
        classes.setdefault(key, []).append(i)

    def diversity(rows: list[int]) -> int:
        return len({sens_col[i] for i in rows})

    merged_numeric = {q: False for q in qids}
    while True:
        violating = [key for key, rows in classes.items() if diversity(rows) < l]
        if not violating:
            break
        key = min(violating, key=lambda kk: (diversity(classes[kk]), min(classes[kk])))
        others = [kk for kk in classes if kk != key]
        if not others:
            log.add(classes[key], "l_diversity")
            del classes[key]
            break
        mid = _class_midpoint(ds, qids, key)
        nearest = min(others, key=lambda kk: (_class_distance(mid, _class_midpoint(ds, qids, kk)),
                                              min(classes[kk])))
        new_key = _merge_key(ds, qids, key, nearest)
        rows = sorted(classes.pop(key) + classes.pop(nearest))
        for q, cell in zip(qids, new_key):
            if isinstance(cell, tuple) and ds.kind(q) is ColumnKind.NUMERIC:
                merged_numeric[q] = True
        if new_key in classes:
            classes[new_key] = sorted(classes[new_key] + rows)
        else:
            classes[new_key] = rows

    assignments: dict[int, tuple] = {}
    for key, rows in classes.items():
        for i in rows:
            assignments[i] = key
    kept = sorted(assignments)

    out = ds
    for pos, q in enumerate(qids):
        kind = ds.kind(q)
        needs_interval = kind is ColumnKind.INTERVAL or merged_numeric[q]
        full = list(ds.column(q))
        for i in kept:
            cell = assignments[i][pos]
            if needs_interval and not isinstance(cell, tuple):
                cell = (float(cell), float(cell))
            full[i] = cell
        new_kind = ColumnKind.INTERVAL if needs_interval else kind
        out = out.replace_column(q, full, new_kind)
    out = out.take_rows(kept)
    return out, log


# ---------------------------------------------------------------------------
# Plan application and presets


def _resolve_targets(ds: Dataset, targets: Targets, numeric_only: bool, step_label: str) -> list[str]:
    if targets == ALL_NUMERIC:
        return [a.name for a in ds.schema.attributes
                if a.kind is ColumnKind.NUMERIC and a.role is not AttributeRole.TARGET]
    names = []
    for name in targets:
        if name not in ds.schema.names():
            raise PlanError(f"{step_label}: unknown attribute {name!r}")
        if ds.role(name) is AttributeRole.TARGET:
            raise PlanError(f"{step_label}: refusing to transform the target column {name!r}")
        if numeric_only and ds.kind(name) is not ColumnKind.NUMERIC:
            raise PlanError(f"{step_label}: attribute {name!r} must be numeric, "
                            f"is {ds.kind(name).value}")
        names.append(name)
    return names


def apply_plan(ds: Dataset, plan: ProtectionPlan) -> tuple[Dataset, SuppressionLog]:
    """Apply plan steps in order; suppression indices refer to the input rows."""
    current = ds
    orig_index = np.arange(ds.n_rows)
    log = SuppressionLog()
    for step_index, step in enumerate(plan.steps):
        label = f"step {step_index} [{step.op}]"
        try:
            if isinstance(step, (RandAdditive, RandMultiplicative)):
                names = _resolve_targets(current, step.targets, True, label)
                for name in names:
                    col_index = current.schema.index(name)
                    rng = np.random.default_rng([plan.seed, step_index, col_index])
                    if isinstance(step, RandAdditive):
                        cells = rand_additive(current.column(name), step.sigma_rel, rng)
                    else:
                        cells = rand_multiplicative(current.column(name), step.sigma_rel, rng)
                    current = current.replace_column(name, cells, ColumnKind.NUMERIC)
            elif isinstance(step, Bin):
                names = _resolve_targets(current, step.targets, True, label)
                for name in names:
                    cells = bin_column(current.column(name), step.n_bins, step.strategy)
                    current = current.replace_column(name, cells, ColumnKind.INTERVAL)
            elif isinstance(step, Mask):
                names = _resolve_targets(current, step.targets, False, label)
                for name in names:
                    cells = mask_column(current.column(name), current.kind(name),
                                        step.mode, step.keep_prefix)
                    current = current.replace_column(name, cells, ColumnKind.MASKED)
            elif isinstance(step, KAnonymize):
                _resolve_targets(current, step.qids, False, label)
                current, step_log = k_anonymize(current, step.qids, step.k)
                orig_index = _consume_suppressions(orig_index, step_log, log)
            elif isinstance(step, LDiversify):
                _resolve_targets(current, step.qids, False, label)
                current, step_log = enforce_l_diversity(current, step.qids, step.sensitive, step.l)
                orig_index = _consume_suppressions(orig_index, step_log, log)
            else:
                raise PlanError(f"unknown step type {type(step).__name__}")
        except TransformError as exc:
            raise type(exc)(f"{label}: {exc}") from exc
    return current, log


def _consume_suppressions(orig_index: np.ndarray, step_log: SuppressionLog,
                          total: SuppressionLog) -> np.ndarray:
    if not step_log.entries:
        return orig_index
    local = sorted(step_log.entries)
    removed = {i for i, _ in local}
    for i, reason in local:
        total.add([int(orig_index[i])], reason)
    keep = [p for p in range(len(orig_index)) if p not in removed]
    return orig_index[keep]


PRESET_NAMES = ("BIN_MASK", "K_L", "RA", "RM", "RA_K_BIN_MASK")

_PRESET_ATTRS = {
    "heart": {"bin": "age", "mask": "thalach", "k_qid": "age", "l_sensitive": "cp",
              "hybrid_bin": "cp", "hybrid_mask": "ca"},
    "diabetes": {"bin": "Glucose", "mask": "Age", "k_qid": "Age", "l_sensitive": "BMI",
                 "hybrid_bin": "BMI", "hybrid_mask": "Glucose"},
}


def preset_plan(name: str, dataset_family: str, seed: int = 0) -> ProtectionPlan:
    """Build one of the five named hybrid protection plans for a dataset family.

    BIN_MASK bins/masks the family's headline attribute pair; K_L runs
    k-anonymity then l-diversity on the family's QID/sensitive pair; RA and
    RM add noise to every numeric column; RA_K_BIN_MASK chains all four.
    """
    key = name.upper()
    if key not in PRESET_NAMES:
        raise PlanError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    family = dataset_family.lower()
    if family not in _PRESET_ATTRS:
        raise PlanError(f"unknown dataset family {dataset_family!r}; choose heart or diabetes")
    a = _PRESET_ATTRS[family]
    if key == "BIN_MASK":
        steps = (Bin(targets=(a["bin"],)), Mask(targets=(a["mask"],)))
    elif key == "K_L":
        steps = (KAnonymize(qids=(a["k_qid"],)),
                 LDiversify(sensitive=a["l_sensitive"], qids=(a["k_qid"],)))
    elif key == "RA":
        steps = (RandAdditive(),)
    elif key == "RM":
        steps = (RandMultiplicative(),)
    else:
        steps = (RandAdditive(), KAnonymize(qids=(a["k_qid"],)),
                 Bin(targets=(a["hybrid_bin"],)), Mask(targets=(a["hybrid_mask"],)))
    return ProtectionPlan(name=key, seed=seed, steps=steps)
