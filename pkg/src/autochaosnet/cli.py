"""Command-line interface.

Subcommands: digits (inspect the digit source), extract (dump chaotic
features to CSV), eval (one classification run), bench (repeated timing
runs), manifests (list the built-in dataset manifests).

Dataset files are looked up in the directory named by the
``AUTOCHAOSNET_DATA`` environment variable (default ``./data``).

Exit status: 0 success, 2 configuration error, 3 ingestion error,
4 runtime failure.
"""

from __future__ import annotations

import argparse
import sys

from .bench import MODELS, BenchReport, evaluate, run_benchmark
from .champernowne import DIGIT_COUNT, build_source
from .datasets import IngestError, builtin_manifests, get_manifest, load_dataset
from .features import AutochaosFeatures
from .pipeline import DEFAULT_SEED, DEFAULT_TEST_FRACTION, MinMaxNormalizer

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INGEST = 3
EXIT_RUNTIME = 4

FORMATS = ("table", "csv", "json-lines")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="autochaosnet",
        description="Training-free chaotic feature classification on the "
        "decimal shift map orbit of the truncated Champernowne constant.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digits", help="print a slice of the 1389-digit source")
    p.add_argument("--count", type=int, required=True, help="number of digits to print")
    p.add_argument("--offset", type=int, default=0, help="starting digit offset (default 0)")

    p = sub.add_parser("extract", help="write extracted chaotic features to CSV")
    p.add_argument("--dataset", required=True, help="dataset id (see manifests)")
    p.add_argument("--model", choices=("tm", "tmfr"), default="tmfr")
    p.add_argument("--mode", choices=("bound", "match"), default="bound")
    p.add_argument("--out", required=True, help="output CSV path")

    p = sub.add_parser("eval", help="run one classification experiment")
    _add_run_options(p)
    p.add_argument("--dataset", required=True, help="dataset id (see manifests)")
    p.add_argument("--model", choices=MODELS, default="tmfr")
    p.add_argument("--grid", help="JSON grid config for the chaosnet model")
    p.add_argument("--format", choices=FORMATS, default="table")
    p.add_argument("--out", help="also write the report to this path")

    p = sub.add_parser("bench", help="time repeated pipeline runs")
    _add_run_options(p)
    p.add_argument("--dataset", nargs="+", required=True, help="dataset ids")
    p.add_argument("--model", nargs="+", choices=MODELS, required=True, help="model ids")
    p.add_argument("--iterations", type=int, default=50)
    p.add_argument("--grid", help="JSON grid config for the chaosnet model")
    p.add_argument("--format", choices=FORMATS, default="csv", help="file format for --out")
    p.add_argument("--out", help="write report rows to this path")

    p = sub.add_parser("manifests", help="list built-in dataset manifests")
    p.add_argument("--format", choices=FORMATS, default="table")
    return parser


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mode", choices=("bound", "match"), default="bound")
    p.add_argument("--rule", choices=("max", "min"), default="max")
    p.add_argument("--scope", choices=("full", "train"), default="full")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--split", type=float, default=DEFAULT_TEST_FRACTION,
                   help="held-out test fraction (default 0.2)")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except IngestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INGEST
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # pragma: no cover - defensive
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def entrypoint() -> None:  # pragma: no cover - console script shim
    raise SystemExit(main())


def cmd_digits(args) -> int:
    if args.count < 0 or args.offset < 0 or args.offset + args.count > DIGIT_COUNT:
        print(
            f"error: slice [{args.offset}, {args.offset + args.count}) exceeds the "
            f"{DIGIT_COUNT}-digit source",
            file=sys.stderr,
        )
        return EXIT_CONFIG
    source = build_source()
    print(f"digits: {source.text[args.offset : args.offset + args.count]}")
    print(f"length: {source.length}")
    return EXIT_OK


def cmd_extract(args) -> int:
    dataset = _load(args.dataset)
    stimuli = MinMaxNormalizer(scope="full").fit_transform(dataset.samples)
    transformer = AutochaosFeatures(variant=args.model, mode=args.mode).fit(stimuli)
    features = transformer.transform(stimuli)
    header = ["label", *transformer.get_feature_names_out()]
    lines = [",".join(header)]
    for label, row in zip(dataset.labels, features):
        lines.append(",".join([str(int(label)), *(format(v, ".15g") for v in row)]))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {len(features)} rows to {args.out}")
    return EXIT_OK


def cmd_eval(args) -> int:
    dataset = _load(args.dataset)
    report = evaluate(
        dataset,
        args.model,
        mode=args.mode,
        rule=args.rule,
        scope=args.scope,
        seed=args.seed,
        test_fraction=args.split,
        grid=_load_grid(args),
    )
    rendered = _render_eval(report, args.format)
    print(rendered)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rendered + "\n")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {args.iterations}")
    grid = _load_grid(args)
    reports: list[BenchReport] = []
    failures = []
    for dataset_id in args.dataset:
        try:
            dataset = _load(dataset_id)
        except IngestError as exc:
            print(f"error: {exc}", file=sys.stderr)
            failures.extend((dataset_id, model) for model in args.model)
            continue
        for model in args.model:
            try:
                reports.append(
                    run_benchmark(
                        dataset,
                        model,
                        iterations=args.iterations,
                        mode=args.mode,
                        rule=args.rule,
                        scope=args.scope,
                        seed=args.seed,
                        test_fraction=args.split,
                        grid=grid,
                    )
                )
            except Exception as exc:
                print(f"error: {dataset_id}/{model}: {exc}", file=sys.stderr)
                failures.append((dataset_id, model))
    _print_bench_table(reports)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_render_bench(reports, args.format) + "\n")
    return EXIT_RUNTIME if failures else EXIT_OK


def cmd_manifests(args) -> int:
    manifests = builtin_manifests()
    if args.format == "json-lines":
        import json

        for m in manifests:
            print(
                json.dumps(
                    {
                        "dataset": m.dataset_id,
                        "filename": m.filename,
                        "n_features": m.n_features,
                        "n_classes": m.n_classes,
                        "n_samples": m.n_samples,
                        "class_counts": list(m.class_counts),
                    },
                    sort_keys=True,
                )
            )
        return EXIT_OK
    rows = [
        (m.dataset_id, str(m.n_features), str(m.n_classes), str(m.n_samples),
         "/".join(str(c) for c in m.class_counts), m.filename)
        for m in manifests
    ]
    header = ("dataset", "n", "k", "m", "class_counts", "filename")
    if args.format == "csv":
        print(",".join(header))
        for row in rows:
            print(",".join(row))
        return EXIT_OK
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    for row in [header, *rows]:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return EXIT_OK


def _load(dataset_id: str):
    manifest = get_manifest(dataset_id)
    if manifest is None:
        known = ", ".join(m.dataset_id for m in builtin_manifests())
        raise ValueError(f"unknown dataset {dataset_id!r}; known ids: {known}")
    return load_dataset(manifest)


def _load_grid(args):
    if getattr(args, "grid", None) is None:
        return None
    from .chaosnet import grid_from_file

    return grid_from_file(args.grid)


def _render_eval(report, fmt: str) -> str:
    if fmt == "table":
        return report.to_text()
    if fmt == "csv":
        return report.CSV_HEADER + "\n" + report.to_csv_row()
    return report.to_json()


def _render_bench(reports: list[BenchReport], fmt: str) -> str:
    if fmt == "json-lines":
        return "\n".join(r.to_json() for r in reports)
    if fmt == "csv":
        return "\n".join([BenchReport.CSV_HEADER, *(r.to_csv_row() for r in reports)])
    return _bench_table(reports)


def _bench_table(reports: list[BenchReport]) -> str:
    header = ("dataset", "model", "macro_f1", "iterations", "mean_s", "std_s")
    rows = [
        (r.dataset, r.model, f"{r.macro_f1:.3f}", str(r.iterations),
         f"{r.mean_s:.4f}", f"{r.std_s:.4f}")
        for r in reports
    ]
    widths = [max(len(r[i]) for r in [header, *rows]) for i in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in [header, *rows]
    )


def _print_bench_table(reports: list[BenchReport]) -> None:
    if reports:
        print(_bench_table(reports))


_COMMANDS = {
    "digits": cmd_digits,
    "extract": cmd_extract,
    "eval": cmd_eval,
    "bench": cmd_bench,
    "manifests": cmd_manifests,
}
