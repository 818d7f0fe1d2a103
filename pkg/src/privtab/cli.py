"""Command-line workflow: assess raw data, protect it, evaluate the result.

    privtab assess   --config cfg.json [--out DIR]
    privtab protect  --config cfg.json [--preset NAME] [--out DIR]
    privtab evaluate --config cfg.json [--published FILE] [--out DIR]
    privtab compare  --config cfg.json [--preset NAME ...] [--out DIR]

Exit codes: 0 success, 2 configuration or load error, 3 infeasible
transform, 4 evaluation degeneracy.  All output files are written
atomically and are byte-identical across re-runs with the same config.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .dataset import Dataset, drop_identifiers, load_csv, dataset_to_csv
from .errors import (
    ConfigError,
    EvaluationError,
    LoadError,
    NoUsableFeaturesError,
    PrivtabError,
    TransformError,
)
from .risk import EstimatorConfig, RiskReport, attribute_risk_scores, with_baseline
from .transforms import PRESET_NAMES, ProtectionPlan, SuppressionLog, apply_plan, preset_plan
from .utility import KNNSpec, LogRegSpec, PublishedVariant, utility_report

EXIT_CONFIG = 2
EXIT_TRANSFORM = 3
EXIT_EVALUATION = 4


@dataclass
class RunConfig:
    input_csv: str
    roles: dict
    seed: int
    output_dir: str = "out"
    positive_label: Optional[str] = None
    dataset_family: Optional[str] = None
    preset: Optional[str] = None
    plan: Optional[dict] = None
    estimator: EstimatorConfig = field(default_factory=EstimatorConfig)
    classifiers: tuple = (KNNSpec(), LogRegSpec())
    test_fraction: float = 0.2
    risk_scope: str = "all"

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(raw)

    @classmethod
    def from_dict(cls, raw: dict) -> "RunConfig":
        for key in ("input_csv", "seed"):
            if key not in raw:
                raise ConfigError(f"config is missing required key {key!r}")
        if "roles" in raw:
            roles = raw["roles"]
        elif "roles_file" in raw:
            rp = Path(raw["roles_file"])
            if not rp.exists():
                raise ConfigError(f"roles file not found: {rp}")
            try:
                roles = json.loads(rp.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise ConfigError(f"roles file {rp} is not valid JSON: {exc}") from exc
        else:
            raise ConfigError("config needs either 'roles' or 'roles_file'")
        if not isinstance(roles, dict):
            raise ConfigError("roles must be a JSON object of attribute -> role")

        est_raw = raw.get("estimator", {})
        estimator = EstimatorConfig(
            kind=est_raw.get("type", "plugin"),
            n_bins=int(est_raw.get("n_bins", 10)),
            k_neighbors=int(est_raw.get("k", 3)),
        )
        if estimator.kind not in ("plugin", "knn"):
            raise ConfigError(f"unknown estimator type {estimator.kind!r}")

        classifiers = []
        for c in raw.get("classifiers", [{"type": "knn"}, {"type": "logreg"}]):
            kind = c.get("type")
            if kind == "knn":
                classifiers.append(KNNSpec(k=int(c.get("k", 5))))
            elif kind == "logreg":
                classifiers.append(LogRegSpec(
                    learning_rate=float(c.get("learning_rate", 0.1)),
                    epochs=int(c.get("epochs", 1000)),
                    l2=float(c.get("l2", 0.0))))
            else:
                raise ConfigError(f"unknown classifier type {kind!r}")

        split = raw.get("split", {})
        scope = raw.get("risk_scope", "all")
        if scope not in ("all", "qs"):
            raise ConfigError(f"risk_scope must be 'all' or 'qs', got {scope!r}")
        return cls(
            input_csv=raw["input_csv"],
            roles=roles,
            seed=int(raw["seed"]),
            output_dir=raw.get("output_dir", "out"),
            positive_label=raw.get("positive_label"),
            dataset_family=raw.get("dataset_family"),
            preset=raw.get("preset"),
            plan=raw.get("plan"),
            estimator=estimator,
            classifiers=tuple(classifiers),
            test_fraction=float(split.get("test_fraction", 0.2)),
            risk_scope=scope,
        )


def _write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_json(path: Path, obj: dict):
    _write_atomic(path, json.dumps(obj, indent=2) + "\n")


def _load_input(cfg: RunConfig) -> Dataset:
    ds = load_csv(cfg.input_csv, cfg.roles, cfg.positive_label)
    return drop_identifiers(ds)


def _resolve_plan(cfg: RunConfig) -> ProtectionPlan:
    if cfg.preset:
        if cfg.dataset_family is None:
            raise ConfigError("presets need 'dataset_family' in the config")
        return preset_plan(cfg.preset, cfg.dataset_family, seed=cfg.seed)
    if cfg.plan is not None:
        return ProtectionPlan.from_json(cfg.plan)
    raise ConfigError("config needs either 'preset' or 'plan' for this command")


def _print_risk_table(report: RiskReport, title: str):
    print(title)
    print(f"{'attribute':<24}{'MI (nats)':>12}  band")
    for s in report.scores:
        print(f"{s.attribute:<24}{s.nats:>12.6f}  {report.bands[s.attribute]}")
    print(f"{'total':<24}{report.total_mi:>12.6f}")


def cmd_assess(cfg: RunConfig, out_dir: Path) -> int:
    ds = _load_input(cfg)
    report = attribute_risk_scores(ds, cfg.estimator, cfg.risk_scope)
    payload = {"seed": cfg.seed, "input": cfg.input_csv} | report.to_json()
    _write_json(out_dir / "risk_raw.json", payload)
    _print_risk_table(report, f"Disclosure risk for {cfg.input_csv} ({report.estimator} estimator)")
    print(f"wrote {out_dir / 'risk_raw.json'}")
    return 0


def cmd_protect(cfg: RunConfig, out_dir: Path) -> int:
    ds = _load_input(cfg)
    plan = _resolve_plan(cfg)
    published, log = apply_plan(ds, plan)
    _write_atomic(out_dir / "published.csv", dataset_to_csv(published))
    _write_json(out_dir / "suppression.json", {
        "seed": plan.seed,
        "plan": plan.to_json(),
        "input_rows": ds.n_rows,
        "published_rows": published.n_rows,
        "suppressed_count": len(log.entries),
        "suppressed": log.to_json(),
    })
    print(f"plan {plan.name}: {published.n_rows}/{ds.n_rows} rows published, "
          f"{len(log.entries)} suppressed")
    print(f"wrote {out_dir / 'published.csv'} and {out_dir / 'suppression.json'}")
    return 0


def _published_roles(cfg: RunConfig) -> dict:
    return {name: role for name, role in cfg.roles.items() if role != "identifier"}


def _load_published(cfg: RunConfig, published_path: Path, raw: Dataset) -> PublishedVariant:
    published = load_csv(published_path, _published_roles(cfg), cfg.positive_label)
    if published.schema.names() != raw.schema.names():
        raise ConfigError(
            f"schema mismatch: published columns {published.schema.names()} "
            f"!= raw columns {raw.schema.names()}")
    suppressed: tuple = ()
    sidecar = published_path.parent / "suppression.json"
    if sidecar.exists():
        info = json.loads(sidecar.read_text(encoding="utf-8"))
        suppressed = tuple(entry["row"] for entry in info.get("suppressed", []))
    if raw.n_rows - len(suppressed) != published.n_rows:
        raise ConfigError(
            f"row mismatch: raw has {raw.n_rows}, published has {published.n_rows}, "
            f"suppression log lists {len(suppressed)}")
    return PublishedVariant(dataset=published, suppressed=suppressed)


def _evaluate_variant(cfg: RunConfig, raw: Dataset, name: str, variant: PublishedVariant):
    raw_report = attribute_risk_scores(raw, cfg.estimator, cfg.risk_scope)
    pub_report = with_baseline(
        attribute_risk_scores(variant.dataset, cfg.estimator, cfg.risk_scope), raw_report)
    util = utility_report(raw, {name: variant}, cfg.classifiers,
                          cfg.test_fraction, cfg.seed)
    return raw_report, pub_report, util


def cmd_evaluate(cfg: RunConfig, out_dir: Path, published_path: Path) -> int:
    raw = _load_input(cfg)
    variant = _load_published(cfg, published_path, raw)
    raw_report, pub_report, util = _evaluate_variant(cfg, raw, "published", variant)

    _write_json(out_dir / "risk_published.json",
                {"seed": cfg.seed, "input": str(published_path)} | pub_report.to_json())
    deltas = [{"attribute": s.attribute,
               "mi_raw": raw_report.score_of(s.attribute),
               "mi_published": s.nats,
               "delta": raw_report.score_of(s.attribute) - s.nats}
              for s in raw_report.scores]
    _write_json(out_dir / "risk_delta.json", {
        "seed": cfg.seed,
        "scope": cfg.risk_scope,
        "total_mi_raw": raw_report.total_mi,
        "total_mi_published": pub_report.total_mi,
        "risk_reduced": pub_report.risk_reduced,
        "attributes": deltas,
    })
    _write_json(out_dir / "utility.json", {"seed": cfg.seed} | util.to_json())
    _write_atomic(out_dir / "utility.csv", f"# seed={cfg.seed}\n" + util.to_csv())
    print(f"risk_reduced = {pub_report.risk_reduced:.4f}")
    print(f"wrote risk_published.json, risk_delta.json, utility.json, utility.csv in {out_dir}")
    return 0


def cmd_compare(cfg: RunConfig, out_dir: Path, presets: list[str]) -> int:
    raw = _load_input(cfg)
    raw_report = attribute_risk_scores(raw, cfg.estimator, cfg.risk_scope)
    labels = [c.label for c in cfg.classifiers]
    results = []
    for preset in presets:
        try:
            plan = preset_plan(preset, cfg.dataset_family or "", seed=cfg.seed)
            published, log = apply_plan(raw, plan)
            variant = PublishedVariant(published, tuple(sorted(log.suppressed_row_indices)))
            pub_report = with_baseline(
                attribute_risk_scores(published, cfg.estimator, cfg.risk_scope), raw_report)
            util = utility_report(raw, {plan.name: variant}, cfg.classifiers,
                                  cfg.test_fraction, cfg.seed)
            metrics = {}
            for label in labels:
                row = util.row(plan.name, label)
                if row.error is not None:
                    metrics[label] = None
                else:
                    metrics[label] = row.metrics
            results.append((plan.name, pub_report.risk_reduced, metrics, ""))
        except PrivtabError as exc:
            results.append((preset.upper(), None, {}, f"{type(exc).__name__}: {exc}"))

    results.sort(key=lambda r: (r[1] is None, r[1] if r[1] is not None else 0.0, r[0]))
    header = ["preset", "risk_reduced"]
    for label in labels:
        header += [f"{label}_accuracy", f"{label}_precision", f"{label}_recall", f"{label}_f1"]
    header.append("error")
    lines = [f"# seed={cfg.seed}", ",".join(header)]
    for name, risk, metrics, error in results:
        cells = [name, f"{risk:.6f}" if risk is not None else ""]
        for label in labels:
            m = metrics.get(label)
            if m is None:
                cells += ["", "", "", ""]
            else:
                cells += [f"{m.accuracy:.6f}", f"{m.precision:.6f}", f"{m.recall:.6f}", f"{m.f1:.6f}"]
        cells.append(error)
        lines.append(",".join(cells))
    _write_atomic(out_dir / "compare.csv", "\n".join(lines) + "\n")

    print(f"{'preset':<16}{'risk_reduced':>14}  " + "  ".join(f"{l}_f1" for l in labels))
    for name, risk, metrics, error in results:
        if error:
            print(f"{name:<16}{'-':>14}  {error}")
        else:
            f1s = "  ".join(f"{metrics[l].f1:.4f}" if metrics.get(l) else "-" for l in labels)
            print(f"{name:<16}{risk:>14.4f}  {f1s}")
    ok = [r for r in results if r[1] is not None]
    if len(ok) > 1:
        lo, hi = ok[0], ok[-1]
        print(f"trade-off: {lo[0]} keeps the most information "
              f"(risk_reduced {lo[1]:.2f}), {hi[0]} removes the most ({hi[1]:.2f})")
    print(f"wrote {out_dir / 'compare.csv'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="privtab", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("assess", "score per-attribute disclosure risk of the raw data"),
                            ("protect", "apply a protection plan and write published.csv"),
                            ("evaluate", "re-assess risk and utility of published data"),
                            ("compare", "run several presets and tabulate the trade-off")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the run-config JSON")
        p.add_argument("--out", help="output directory (overrides config output_dir)")
        if name in ("protect", "evaluate"):
            p.add_argument("--preset", help="preset plan name")
        if name == "compare":
            p.add_argument("--preset", action="append",
                           help="preset to include (repeatable; default: all five)")
        if name == "evaluate":
            p.add_argument("--published", help="published CSV (default: <out>/published.csv)")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_file(args.config)
        if getattr(args, "preset", None) and args.command != "compare":
            cfg.preset = args.preset
        out_dir = Path(args.out) if args.out else Path(cfg.output_dir)
        if args.command == "assess":
            return cmd_assess(cfg, out_dir)
        if args.command == "protect":
            return cmd_protect(cfg, out_dir)
        if args.command == "evaluate":
            published = Path(args.published) if args.published else out_dir / "published.csv"
            return cmd_evaluate(cfg, out_dir, published)
        if args.command == "compare":
            presets = args.preset if args.preset else list(PRESET_NAMES)
            return cmd_compare(cfg, out_dir, presets)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, LoadError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TransformError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRANSFORM
    except (EvaluationError, NoUsableFeaturesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVALUATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVALUATION


if __name__ == "__main__":
    sys.exit(main())
