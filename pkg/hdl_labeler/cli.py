"""
Command line interface of the labeling engine.

Usage:

```shell
hdl-labeler label --method hdl --k auto --labeled L.emb --labels L.csv \
    --unlabeled U.emb --out O.csv --seed 1
hdl-labeler select-k --labeled L.emb --labels L.csv --p 0.1 --e 0.15 --k-upper-limit 20 --seed 1
hdl-labeler estimate-mu --labeled L.emb --labels L.csv --k-max 10 --seed 1
hdl-labeler gen-synth --out-dir data --num-classes 4 --dim 16 --per-class 100 --seed 3
hdl-labeler eval --output O.csv --truth data/truth.csv --method hdl
hdl-labeler compare --num-classes 4 --dim 16 --per-class 225 --k 3 --trials 20 --seed 0
```

Exit status: 0 on success, 2 on usage errors, 1 on data errors.
Results go to standard output; logs and the run manifest go to standard error.
"""
import argparse
import json
import sys
import time
from argparse import RawTextHelpFormatter
from dataclasses import asdict
from io import StringIO
from pathlib import Path
from typing import Sequence

import pandas as pd
from pydantic import ValidationError

from .adaptive import clusterability_profile, mu_statistics, select_k
from .config import Config
from .labelers import run_hdl, run_knn_dv
from .store import load_embeddings, load_labels, read_output, write_embeddings, write_labels, write_output
from .synth import compare_clusterability, evaluate, generate, long_tailed_counts, make_spec, run_trials
from .utils.enum import ImbalanceType, Method, Metric
from .utils.errors import InvalidSpec, LabelingError
from .utils.logger import get_formatted_logger, set_log_level
from .utils.logging_config import RunManifest
from .utils.validators import RunConfig
from .utils.workers import WorkerPool

logger = get_formatted_logger("hdl_labeler.cli")


class UsageError(Exception):
    """Bad flags or configuration; exit status 2."""


def parse_k(value: str) -> int | str:
    try:
        return Config.parse_k(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--k must be a positive integer or 'auto', got {value!r}")


def parse_counts(value: str) -> list[int]:
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--class-counts must be comma-separated integers, got {value!r}")


# =============================================================================
# CLI
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    # =====================================
    # Shared flags
    # =====================================

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, default=None, help="JSON config file merged over the defaults.")
    common.add_argument("--verbose", action="store_true", help="Log per-level details (DEBUG).")
    common.add_argument("--threads", type=int, default=None, help="Maximum worker threads (default from config: 1).")

    metric_choices = [m.value for m in Metric]

    labeled_inputs = argparse.ArgumentParser(add_help=False)
    labeled_inputs.add_argument("--labeled", type=Path, required=True, help="Labeled embeddings (EMB1).")
    labeled_inputs.add_argument("--labels", type=Path, required=True, help="Labels CSV with header index,label.")
    labeled_inputs.add_argument("--metric", choices=metric_choices, default=None, help="Distance metric (default: cosine).")
    labeled_inputs.add_argument("--seed", type=int, required=True, help="Seed of the center sampling.")
    labeled_inputs.add_argument("--p", type=float, default=None, help="Fraction of labeled points sampled as centers.")
    labeled_inputs.add_argument("--num-classes", type=int, default=None, help="Override the class count C.")
    labeled_inputs.add_argument(
        "--without-replacement", action="store_true", help="Sample centers without replacement."
    )

    synth_inputs = argparse.ArgumentParser(add_help=False)
    synth_inputs.add_argument("--num-classes", type=int, default=4, help="Number of classes C.")
    synth_inputs.add_argument("--dim", type=int, default=16, help="Embedding dimension d.")
    synth_inputs.add_argument("--per-class", type=int, default=100, help="Points per class (head class when imbalanced).")
    synth_inputs.add_argument("--class-counts", type=parse_counts, default=None, help="Explicit counts, e.g. \"500,50,5\".")
    synth_inputs.add_argument("--imbalance-factor", type=float, default=None, help="IF = n_1 / n_C.")
    synth_inputs.add_argument(
        "--imbalance-type",
        choices=[t.value for t in ImbalanceType],
        default=ImbalanceType.Exp.value,
        help="Count profile used with --imbalance-factor.",
    )
    synth_inputs.add_argument("--sigma", type=float, default=None, help="Cluster standard deviation.")
    synth_inputs.add_argument("--radius", type=float, default=None, help="Norm of the one-hot cluster means.")
    synth_inputs.add_argument(
        "--axis-sigma", type=float, default=None, help="Standard deviation along the last axis (elongated clusters)."
    )
    synth_inputs.add_argument("--labeled-fraction", type=float, default=0.1, help="Labeled fraction per class.")
    synth_inputs.add_argument("--seed", type=int, required=True, help="Generator seed.")

    cli = argparse.ArgumentParser(
        prog="hdl-labeler",
        description="Label unlabeled embeddings by neighbor voting (HDL or kNN-DV).",
        # Enables the use of newlines in the help message
        formatter_class=RawTextHelpFormatter,
    )
    commands = cli.add_subparsers(dest="command", required=True)

    # =====================================
    # Command: label
    # =====================================

    label = commands.add_parser("label", parents=[common], help="Label an unlabeled embedding set.")
    label.add_argument(
        "--method",
        choices=[m.value for m in Method],
        default=None,
        help="Options:\n  hdl: Hierarchical Dynamic Labeling\n  knn-dv: vote among labeled neighbors only",
    )
    label.add_argument("--k", type=parse_k, default=None, help="Neighbor count or 'auto' (default: auto).")
    label.add_argument("--metric", choices=metric_choices, default=None, help="Distance metric (default: cosine).")
    label.add_argument("--labeled", type=Path, required=True, help="Labeled embeddings (EMB1).")
    label.add_argument("--labels", type=Path, required=True, help="Labels CSV with header index,label.")
    label.add_argument("--unlabeled", type=Path, required=True, help="Unlabeled embeddings (EMB1).")
    label.add_argument("--out", type=Path, required=True, help="Output CSV.")
    label.add_argument("--seed", type=int, required=True, help="Seed of adaptive k selection.")
    label.add_argument("--p", type=float, default=None, help="Adaptive k: sampled fraction.")
    label.add_argument("--e", type=float, default=None, help="Adaptive k: assumed label-error rate.")
    label.add_argument("--k-upper-limit", type=int, default=None, help="Adaptive k: candidates are 1..limit-1.")
    label.add_argument("--num-classes", type=int, default=None, help="Override the class count C.")
    label.add_argument("--manifest", type=Path, default=None, help="Also write the run manifest here.")
    label.add_argument("--without-replacement", action="store_true", help="Adaptive k: sample without replacement.")
    label.set_defaults(handler=cmd_label)

    # =====================================
    # Command: select-k
    # =====================================

    select = commands.add_parser("select-k", parents=[common, labeled_inputs], help="Report the adaptive k table.")
    select.add_argument("--e", type=float, default=None, help="Assumed label-error rate.")
    select.add_argument("--k-upper-limit", type=int, default=None, help="Candidates are 1..limit-1.")
    select.set_defaults(handler=cmd_select_k)

    # =====================================
    # Command: estimate-mu
    # =====================================

    estimate = commands.add_parser("estimate-mu", parents=[common, labeled_inputs], help="Print mu_k for k=1..k-max.")
    estimate.add_argument("--k-max", type=int, default=None, help="Largest k (default from config: 10).")
    estimate.add_argument("--repeats", type=int, default=1, help="Repeat with R seeds and print k,mu,std.")
    estimate.set_defaults(handler=cmd_estimate_mu)

    # =====================================
    # Command: gen-synth
    # =====================================

    synth = commands.add_parser("gen-synth", parents=[common, synth_inputs], help="Write a synthetic data set.")
    synth.add_argument("--out-dir", type=Path, required=True, help="Directory for the generated files.")
    synth.set_defaults(handler=cmd_gen_synth)

    # =====================================
    # Command: eval
    # =====================================

    evaluation = commands.add_parser("eval", parents=[common], help="Score an output CSV against ground truth.")
    evaluation.add_argument("--output", type=Path, required=True, help="Output CSV of a label run.")
    evaluation.add_argument("--truth", type=Path, required=True, help="Ground-truth CSV with header index,label.")
    evaluation.add_argument("--method", type=str, default="", help="Method name recorded in the result.")
    evaluation.set_defaults(handler=cmd_eval)

    # =====================================
    # Command: compare
    # =====================================

    compare = commands.add_parser("compare", parents=[common, synth_inputs], help="HDL vs kNN-DV on synthetic trials.")
    compare.add_argument("--k", type=int, default=3, help="Neighbor count of both methods.")
    compare.add_argument("--trials", type=int, default=20, help="Number of seeded trials.")
    compare.add_argument("--metric", choices=metric_choices, default=None, help="Distance metric (default: cosine).")
    compare.set_defaults(handler=cmd_compare)

    return cli


# =============================================================================
# Commands
# =============================================================================

def _pick(flag, configured):
    return configured if flag is None else flag


def load_config(args: argparse.Namespace) -> Config:
    try:
        config = Config(args.config)
    except (OSError, ValueError) as e:
        raise UsageError(f"--config: {e}") from e
    set_log_level("DEBUG" if args.verbose else config.log_level)
    return config


def _threads(args: argparse.Namespace, config: Config) -> int:
    threads = _pick(args.threads, config.threads)
    if threads < 1:
        raise UsageError(f"--threads must be >= 1, got {threads}")
    return threads


def cmd_label(args: argparse.Namespace) -> int:
    config = load_config(args)
    run = RunConfig(
        subcommand="label",
        method=_pick(args.method, config.method.value),
        k=_pick(args.k, config.k),
        metric=_pick(args.metric, config.metric.value),
        labeled=args.labeled,
        labels=args.labels,
        unlabeled=args.unlabeled,
        out=args.out,
        seed=args.seed,
        p=_pick(args.p, config.p),
        e=_pick(args.e, config.e),
        k_upper_limit=_pick(args.k_upper_limit, config.k_upper_limit),
        sample_with_replacement=config.sample_with_replacement and not args.without_replacement,
        num_classes=args.num_classes,
        threads=_pick(args.threads, config.threads),
    )
    manifest = RunManifest("label", json_file=args.manifest)
    manifest.update_content("config", run.model_dump(mode="json"))
    start = time.perf_counter()

    labeled = load_embeddings(run.labeled)
    labels = load_labels(run.labels, labeled.count, run.num_classes)
    unlabeled = load_embeddings(run.unlabeled)
    manifest.log_event("inputs_loaded", {"labeled": labeled.count, "unlabeled": unlabeled.count, "dim": labeled.dim})

    with WorkerPool(run.threads) as pool:
        k = run.k
        if k == "auto":
            report = select_k(
                labeled,
                labels,
                p=run.p,
                e=run.e,
                k_upper_limit=run.k_upper_limit,
                seed=run.seed,
                metric=run.metric,
                replace=run.sample_with_replacement,
                pool=pool,
                chunk_size=config.chunk_size,
            )
            k = report.chosen_k
            manifest.log_event("k_selected", {"chosen_k": k, "candidates": [asdict(c) for c in report.candidates]})

        labeler = run_hdl if run.method is Method.HDL else run_knn_dv
        output = labeler(labeled, labels, unlabeled, k, run.metric, pool=pool, chunk_size=config.chunk_size)

    write_output(output, run.out)
    manifest.update_content("chosen_k", k)
    manifest.update_content("level_count", output.level_count)
    manifest.update_content("fallback_count", output.fallback_count)
    manifest.update_content("tie_count", output.tie_count)
    manifest.update_content("wall_time", round(time.perf_counter() - start, 6))
    manifest.emit()
    logger.info(f"Wrote {len(output)} labels to {run.out}")
    return 0


def _labeled_inputs(args: argparse.Namespace, config: Config):
    labeled = load_embeddings(args.labeled)
    labels = load_labels(args.labels, labeled.count, args.num_classes)
    metric = Config.parse_metric(_pick(args.metric, config.metric.value))
    p = _pick(args.p, config.p)
    replace = config.sample_with_replacement and not args.without_replacement
    return labeled, labels, metric, p, replace


def cmd_select_k(args: argparse.Namespace) -> int:
    config = load_config(args)
    labeled, labels, metric, p, replace = _labeled_inputs(args, config)
    with WorkerPool(_threads(args, config)) as pool:
        report = select_k(
            labeled,
            labels,
            p=p,
            e=_pick(args.e, config.e),
            k_upper_limit=_pick(args.k_upper_limit, config.k_upper_limit),
            seed=args.seed,
            metric=metric,
            replace=replace,
            pool=pool,
            chunk_size=config.chunk_size,
        )
    sys.stdout.write(report.to_csv())
    return 0


def cmd_estimate_mu(args: argparse.Namespace) -> int:
    config = load_config(args)
    labeled, labels, metric, p, replace = _labeled_inputs(args, config)
    k_max = _pick(args.k_max, config.mu_k_max)
    if k_max < 1:
        raise UsageError(f"--k-max must be >= 1, got {k_max}")
    if args.repeats < 1:
        raise UsageError(f"--repeats must be >= 1, got {args.repeats}")

    k_values = range(1, k_max + 1)
    profiles = []
    with WorkerPool(_threads(args, config)) as pool:
        for r in range(args.repeats):
            # seed + k per candidate, so repeats step past every k
            seed = args.seed + r * (k_max + 1)
            profiles.append(
                clusterability_profile(
                    labeled, labels, k_values, p, seed, metric=metric, replace=replace, pool=pool,
                    chunk_size=config.chunk_size,
                )
            )

    if args.repeats == 1:
        frame = pd.DataFrame(profiles[0], columns=["k", "mu"])
    else:
        frame = pd.DataFrame(mu_statistics(profiles), columns=["k", "mu", "std"])
    buffer = StringIO()
    frame.to_csv(buffer, index=False, float_format="%.6f", lineterminator="\n")
    sys.stdout.write(buffer.getvalue())
    return 0


def _synth_spec(args: argparse.Namespace, config: Config, seed: int | None = None):
    if args.class_counts is not None:
        counts = args.class_counts
    elif args.imbalance_factor is not None:
        counts = long_tailed_counts(args.per_class, args.num_classes, args.imbalance_factor, args.imbalance_type)
    else:
        counts = [args.per_class] * args.num_classes
    return make_spec(
        num_classes=args.num_classes,
        dim=args.dim,
        class_counts=counts,
        radius=_pick(args.radius, config.synth_radius),
        sigma=_pick(args.sigma, config.synth_sigma),
        axis_sigma=args.axis_sigma,
        labeled_fraction=args.labeled_fraction,
        seed=args.seed if seed is None else seed,
    )


def cmd_gen_synth(args: argparse.Namespace) -> int:
    config = load_config(args)
    spec = _synth_spec(args, config)
    dataset = generate(spec)
    out_dir = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    write_embeddings(dataset.labeled, out_dir / "labeled.emb")
    write_labels(dataset.labels, out_dir / "labels.csv")
    write_embeddings(dataset.unlabeled, out_dir / "unlabeled.emb")
    write_labels(dataset.truth, out_dir / "truth.csv")
    logger.info(
        f"Wrote {dataset.labeled.count} labeled and {dataset.unlabeled.count} unlabeled points to {out_dir} "
        f"(IF={spec.imbalance_factor:g})"
    )
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    load_config(args)
    output = read_output(args.output)
    truth = load_labels(args.truth, len(output))
    result = evaluate(output, truth, method=args.method)
    sys.stdout.write(json.dumps(result.to_dict()) + "\n")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    config = load_config(args)
    if args.trials < 1:
        raise UsageError(f"--trials must be >= 1, got {args.trials}")
    spec = _synth_spec(args, config)
    metric = Config.parse_metric(_pick(args.metric, config.metric.value))
    with WorkerPool(_threads(args, config)) as pool:
        summary = run_trials(spec, args.k, args.trials, metric, pool=pool)
    result = summary.to_dict()
    result["clusterability"] = asdict(compare_clusterability(generate(spec), args.k, metric))
    sys.stdout.write(json.dumps(result) + "\n")
    return 0


# =============================================================================
# Main
# =============================================================================

def main(argv: Sequence[str] | None = None) -> int:
    """Run one subcommand and return its exit status."""
    cli = build_parser()
    try:
        args = cli.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        return args.handler(args)
    except (UsageError, ValidationError, InvalidSpec) as e:
        logger.error(str(e))
        return 2
    except (LabelingError, OSError) as e:
        logger.error(str(e))
        return 1


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
