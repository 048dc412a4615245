"""Experiment pipeline: proxies -> transformation -> constrained downstream
training over a relaxation grid, with tradeoff tables, Pareto frontiers,
and plot-ready files written to a result bundle.

The manifest echoes the fully resolved configuration, so replaying it
reproduces the bundle byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import data as data_mod
from .data import Dataset, SynthSpec, load_csv, load_raw_csv, apply_binning, acs_recipes, split, synth_cond_independent
from .downstream import Ensemble, ReductionsConfig, TradeoffPoint, expected_stats, fit_reductions, pareto_frontier
from .errors import ConfigError, DataError, NoResults, NonPositiveInput, ProxyFairError, TrainingError
from .fairness import FairnessSpec, audit_axis_thresholds, audit_random_thresholds, measure_alpha
from .proxy import ProxyModel, save_proxy, stack_proxies, train_proxy

log = logging.getLogger("proxyfair")

PROXY_KINDS = ("true_labels", "baseline", "mse", "h_proxy", "ftpl", "alg2")
REAL_VALUED_KINDS = ("mse", "h_proxy", "ftpl", "alg2")


def default_gamma_grid():
    """Ten relaxation values, 0 through 0.045 in steps of 0.005."""
    return tuple(i * 0.005 for i in range(10))


@dataclass(frozen=True)
class ExperimentConfig:
    data: dict
    proxy_kinds: tuple = ("true_labels", "h_proxy")
    sensitive_attribute: int | None = 0
    fairness: str = "equalized_error"
    gamma_grid: tuple = field(default_factory=default_gamma_grid)
    split_fraction: float = 0.5
    task: int = 0
    seed: int = 0
    jobs: int = 1
    downstream: dict = field(default_factory=dict)
    proxy_options: dict = field(default_factory=dict)
    audit_random: int = 200

    def __post_init__(self):
        if not self.gamma_grid:
            raise NonPositiveInput("gamma_grid", self.gamma_grid)
        for g in self.gamma_grid:
            if not 0.0 <= g <= 1.0:
                raise NonPositiveInput("gamma", g)
        for kind in self.proxy_kinds:
            if kind not in PROXY_KINDS:
                raise NonPositiveInput("proxy kind", kind)
        object.__setattr__(self, "proxy_kinds", tuple(self.proxy_kinds))
        object.__setattr__(self, "gamma_grid", tuple(float(g) for g in self.gamma_grid))

    def to_dict(self) -> dict:
        return {
            "data": self.data,
            "proxy_kinds": list(self.proxy_kinds),
            "sensitive_attribute": self.sensitive_attribute,
            "fairness": self.fairness,
            "gamma_grid": list(self.gamma_grid),
            "split_fraction": self.split_fraction,
            "task": self.task,
            "seed": self.seed,
            "jobs": self.jobs,
            "downstream": self.downstream,
            "proxy_options": self.proxy_options,
            "audit_random": self.audit_random,
        }


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if "config" in doc and isinstance(doc["config"], dict):
        doc = doc["config"]  # manifests replay as configs
    known = {f for f in ExperimentConfig.__dataclass_fields__}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "data" not in doc:
        raise ConfigError("config is missing the 'data' section")
    doc = dict(doc)
    for key in ("proxy_kinds", "gamma_grid"):
        if key in doc and doc[key] is not None:
            doc[key] = tuple(doc[key])
    if doc.get("gamma_grid") is None:
        doc.pop("gamma_grid", None)
    try:
        return ExperimentConfig(**doc)
    except (TypeError, NonPositiveInput) as exc:
        raise ConfigError(str(exc)) from None


def _load_dataset(spec: dict) -> Dataset:
    if "synthetic" in spec:
        s = dict(spec["synthetic"])
        seed = s.pop("seed", 0)
        n = s.pop("n")
        d = s.pop("d")
        K = s.pop("K")
        ds, _ = synth_cond_independent(seed, n, d, K, SynthSpec(**s))
        return ds
    if "csv" in spec:
        c = spec["csv"]
        schema = c.get("schema")
        if schema is None:
            schema = data_mod.load_schema(c["schema_path"])
        table = load_raw_csv(c["path"])
        if c.get("binning") == "acs":
            table = apply_binning(table, acs_recipes())
        return load_csv(table, schema)
    raise NonPositiveInput("data section", "must contain 'synthetic' or 'csv'")


def with_group_pair(dataset: Dataset, k: int) -> Dataset:
    """Restrict groups to one attribute and its complement."""
    z = dataset.sensitive[:, k]
    return replace(dataset, sensitive=np.column_stack([z, 1.0 - z]))


def _cell_seed(master: int, kind_index: int, gamma_index: int) -> int:
    return int(np.random.SeedSequence([master, kind_index, gamma_index]).generate_state(1)[0])


def _proxy_weights(kind: str, model: ProxyModel | None, dataset: Dataset) -> np.ndarray:
    if kind == "true_labels":
        return dataset.sensitive
    return model.predict_matrix(dataset.features)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def run_experiment(config: ExperimentConfig, out_dir) -> dict:
    """Run the full pipeline and write the result bundle; returns the manifest."""
    os.makedirs(out_dir, exist_ok=True)
    os.makedirs(os.path.join(out_dir, "proxy_models"), exist_ok=True)
    spec = FairnessSpec(config.fairness)
    full = _load_dataset(config.data)
    if config.sensitive_attribute is not None:
        full = with_group_pair(full, config.sensitive_attribute)
    train, test = split(full, config.split_fraction, config.seed)
    log.info("dataset: n=%d d=%d groups=%d tasks=%d (train %d / test %d)",
             full.n, full.d, full.num_groups, full.num_tasks, train.n, test.n)

    models: dict[str, ProxyModel | None] = {}
    theory: dict[str, dict] = {}
    for kind in config.proxy_kinds:
        if kind == "true_labels":
            models[kind] = None
            continue
        options = dict(config.proxy_options.get(kind, {}))
        options.setdefault("seed", config.seed)
        parts = [train_proxy(train, kind, k, options) for k in range(train.num_groups)]
        model = stack_proxies(parts)
        models[kind] = model
        save_proxy(model, os.path.join(out_dir, "proxy_models", f"{kind}.json"))
        extras = [entry.extras for entry in model.log if entry.extras]
        if extras:
            theory[kind] = {key: extras[0][key] for key in ("C", "C0", "T_theory", "W_theory", "T", "W")
                            if key in extras[0]}
        log.info("trained %s proxy for %d groups", kind, train.num_groups)

    _write_violations(config, out_dir, spec, train, models)

    work = [(ki, kind, gi, gamma)
            for ki, kind in enumerate(config.proxy_kinds)
            for gi, gamma in enumerate(config.gamma_grid)]

    def run_cell(cell):
        ki, kind, gi, gamma = cell
        ds_cfg = dict(config.downstream)
        red_cfg = ReductionsConfig(gamma=gamma, seed=_cell_seed(config.seed, ki, gi), **ds_cfg)
        weights_train = _proxy_weights(kind, models[kind], train)
        ensemble = fit_reductions(train, spec, red_cfg, config.task, group_weights=weights_train)
        points = []
        for split_name, ds in (("train", train), ("test", test)):
            weights_eval = _proxy_weights(kind, models[kind], ds)
            err, disp_true = expected_stats(ensemble, ds, spec, "true", config.task)
            _, disp_proxy = expected_stats(ensemble, ds, spec, weights_eval, config.task)
            points.append(TradeoffPoint(gamma, err, disp_true, disp_proxy, split_name, kind))
        return cell, ensemble, points

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(run_cell, work))
    else:
        results = [run_cell(c) for c in work]
    results.sort(key=lambda r: (r[0][0], r[0][2]))

    points = [p for _, _, pts in results for p in pts]
    _write_tradeoff(os.path.join(out_dir, "tradeoff.csv"), config, points)
    _write_pareto(os.path.join(out_dir, "pareto.csv"), config, points)
    _write_ensembles(os.path.join(out_dir, "ensembles.json"), results)

    manifest = {"config": config.to_dict(), "derived": {"theory": theory,
                "train_rows": train.n, "test_rows": test.n}}
    with open(os.path.join(out_dir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=1, sort_keys=True)
    log.info("bundle written to %s", out_dir)
    return manifest


def _write_violations(config, out_dir, spec, train, models):
    audit = list(audit_random_thresholds(train.d, config.audit_random, config.seed,
                                         tasks=tuple(range(train.num_tasks))))
    if train.d == 1:
        audit += audit_axis_thresholds(train.features, tasks=tuple(range(train.num_tasks)))
    rows = []
    for kind, model in models.items():
        if model is None:
            continue
        kind_audit = list(audit)
        for entry in model.log:
            kind_audit.extend(entry.audit)
        report = measure_alpha(train, model, kind_audit, spec)
        for r in report.rows:
            rows.append((kind,) + r)
    with open(os.path.join(out_dir, "violations.csv"), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "k", "h_id", "task_j", "true_rate", "proxy_rate", "violation"])
        for row in rows:
            writer.writerow(list(row[:4]) + [_fmt(v) for v in row[4:]])


def _write_tradeoff(path, config, points):
    order = {"train": 0, "test": 1}
    kind_order = {k: i for i, k in enumerate(config.proxy_kinds)}
    gamma_order = {g: i for i, g in enumerate(config.gamma_grid)}
    points = sorted(points, key=lambda p: (kind_order[p.kind], gamma_order[p.gamma], order[p.split]))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "gamma", "split", "error", "disparity_true", "disparity_proxy"])
        for p in points:
            writer.writerow([p.kind, _fmt(p.gamma), p.split,
                             _fmt(p.error), _fmt(p.disparity_true), _fmt(p.disparity_proxy)])


def _write_pareto(path, config, points):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["kind", "split", "gamma", "error", "disparity_true"])
        for kind in config.proxy_kinds:
            for split_name in ("train", "test"):
                subset = [p for p in points if p.kind == kind and p.split == split_name]
                frontier, _ = pareto_frontier(subset)
                for p in frontier:
                    writer.writerow([kind, split_name, _fmt(p.gamma), _fmt(p.error), _fmt(p.disparity_true)])


def _write_ensembles(path, results):
    doc = {}
    for (ki, kind, gi, gamma), ensemble, _ in results:
        doc.setdefault(kind, {})[_fmt(gamma)] = ensemble.to_json_dict()
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)


def emit_plot_data(bundle_dir, out_dir=None) -> list:
    """Split tradeoff.csv into per-(kind, split) whitespace-separated files.

    Each output row is "gamma error disparity_true disparity_proxy"; values
    round-trip losslessly. Returns the written paths.
    """
    out_dir = bundle_dir if out_dir is None else out_dir
    path = os.path.join(bundle_dir, "tradeoff.csv")
    if not os.path.exists(path):
        raise NoResults(bundle_dir)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise NoResults(path)
    groups: dict[tuple, list] = {}
    for r in rows:
        groups.setdefault((r["kind"], r["split"]), []).append(r)
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for (kind, split_name), rs in sorted(groups.items()):
        rs.sort(key=lambda r: float(r["gamma"]))
        target = os.path.join(out_dir, f"{kind}_{split_name}.dat")
        with open(target, "w", encoding="utf-8") as fh:
            for r in rs:
                fh.write(f'{r["gamma"]} {r["error"]} {r["disparity_true"]} {r["disparity_proxy"]}\n')
        written.append(target)
    return written


def _setup_logging():
    level = os.environ.get("PROXYFAIR_LOG", "error").lower()
    mapping = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(stream=sys.stderr, level=mapping.get(level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    parser = argparse.ArgumentParser(prog="proxyfair",
                                     description="proxy-based fair training pipeline")
    sub = parser.add_subparsers(dest="command", required=True)
    run_p = sub.add_parser("run", help="run an experiment from a config file")
    run_p.add_argument("--config", required=True, help="config or manifest JSON path")
    run_p.add_argument("--out", default="results", help="output bundle directory")
    run_p.add_argument("--seed", type=int, default=None, help="override the master seed")
    run_p.add_argument("--jobs", type=int, default=None, help="concurrent grid cells")
    run_p.add_argument("--grid", default=None, help="comma-separated gamma values")
    plot_p = sub.add_parser("plot-data", help="emit per-kind plot data from a bundle")
    plot_p.add_argument("bundle", help="bundle directory containing tradeoff.csv")
    plot_p.add_argument("--out", default=None, help="directory for the .dat files")
    args = parser.parse_args(argv)

    try:
        if args.command == "run":
            config = load_config(args.config)
            if args.seed is not None:
                config = replace(config, seed=args.seed)
            if args.jobs is not None:
                config = replace(config, jobs=args.jobs)
            if args.grid is not None:
                grid = tuple(float(v) for v in args.grid.split(",") if v.strip())
                config = replace(config, gamma_grid=grid)
            run_experiment(config, args.out)
        else:
            emit_plot_data(args.bundle, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except TrainingError as exc:
        print(f"training error: {exc}", file=sys.stderr)
        return 4
    except ProxyFairError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
