"""Command-line entry point.

Subcommands: cluster (one batch run), bench (cross-validated sweep over
super-instance counts), baseline (full / closure querying strategies), and
serve (the interactive HTTP service).

Every flag can be overridden by an environment variable named
COBRA_<SUBCOMMAND>_<FLAG> (e.g. COBRA_CLUSTER_N_SUPER=50).

Exit codes: 0 success, 2 bad configuration, 3 unusable data or I/O failure,
4 oracle contradiction or replay divergence.
"""

from __future__ import annotations

import functools
import math
import time

import click

from .constraints import InconsistentConstraintError
from .core import query_bounds, run_cobra
from .dataset import DataError, dedupe, load_csv, normalize
from .documents import (
    bench_report,
    dataset_fingerprint,
    format_bench_table,
    result_document,
    write_document,
)
from .evaluation import ari, baseline_closure, baseline_full, cross_validate
from .oracles import (
    ReplayDivergenceError,
    label_oracle,
    load_query_log,
    replay_oracle,
    save_query_log,
)


def exit_coded(func):
    """Map domain failures to the documented exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (DataError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(3) from exc
        except (InconsistentConstraintError, ReplayDivergenceError) as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(4) from exc
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(2) from exc

    return wrapper


@click.group(context_settings={"auto_envvar_prefix": "COBRA"})
def main():
    """Active clustering that spends human queries only where they matter."""


def _prepare(data, label_column, delimiter):
    return normalize(dedupe(load_csv(data, label_column=label_column, delimiter=delimiter)))


data_options = [
    click.option("--data", required=True, help="CSV file with a header row."),
    click.option("--label-column", default=None, help="Name of the class column."),
    click.option("--delimiter", default=",", show_default=True, help="CSV delimiter."),
]


def with_options(options):
    def wrap(func):
        for option in reversed(options):
            func = option(func)
        return func

    return wrap


@main.command()
@with_options(data_options)
@click.option("--n-super", type=int, required=True, help="Number of super-instances.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--oracle",
    type=click.Choice(["label", "replay"]),
    default="label",
    show_default=True,
    help="Answer source: ground-truth labels or a recorded query log.",
)
@click.option("--replay", default=None, help="Query log to replay (with --oracle replay).")
@click.option("--out", default="cobra-result.json", show_default=True, help="Result document path.")
@click.option("--log", "log_path", default=None, help="Query log output path [default: <out>.log].")
@exit_coded
def cluster(data, label_column, delimiter, n_super, seed, oracle, replay, out, log_path):
    """Run one clustering and write its result document and query log."""
    if n_super < 2:
        raise click.UsageError(f"--n-super must be at least 2, got {n_super}")
    if oracle == "label" and label_column is None:
        raise click.UsageError("--oracle label needs --label-column")
    if oracle == "replay" and replay is None:
        raise click.UsageError("--oracle replay needs --replay")
    prepared = _prepare(data, label_column, delimiter)
    if oracle == "label":
        answers = label_oracle(prepared.labels)
    else:
        answers = replay_oracle(load_query_log(replay))
    started = time.perf_counter()
    run = run_cobra(prepared, n_super, answers, seed=seed)
    wall_time = time.perf_counter() - started
    config = {
        "data": data,
        "label_column": label_column,
        "delimiter": delimiter,
        "n_super": n_super,
        "seed": seed,
    }
    doc = result_document(config, run, wall_time, dataset_fingerprint(data))
    write_document(doc, out)
    if log_path is None:
        log_path = out + ".log"
    save_query_log(run.query_log, log_path)
    found = run.clustering.n_clusters
    lower, upper = query_bounds(run.super_instances.n_super, found)
    click.echo(f"oracle queries: {run.query_log.oracle_count}")
    click.echo(f"clusters found: {found}")
    click.echo(f"query bounds for {found} clusters over "
               f"{run.super_instances.n_super} super-instances: [{lower}, {upper}]")
    click.echo(f"result document: {out}")
    click.echo(f"query log: {log_path}")


@main.command()
@with_options(data_options)
@click.option(
    "--n-super",
    "n_super_list",
    type=int,
    multiple=True,
    default=(25, 50, 100),
    show_default=True,
    help="Super-instance counts to sweep (repeatable).",
)
@click.option("--folds", type=int, default=5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", default=None, help="Write the JSON report here.")
@exit_coded
def bench(data, label_column, delimiter, n_super_list, folds, seed, out):
    """Cross-validated query-count and accuracy sweep."""
    if label_column is None:
        raise click.UsageError("bench needs --label-column")
    if folds < 2:
        raise click.UsageError(f"--folds must be at least 2, got {folds}")
    if any(ns < 2 for ns in n_super_list):
        raise click.UsageError("every --n-super must be at least 2")
    prepared = _prepare(data, label_column, delimiter)
    started = time.perf_counter()
    rows = []
    for ns in n_super_list:
        rows.append((ns, cross_validate(prepared, ns, folds, seed)))
    wall_time = time.perf_counter() - started
    config = {
        "data": data,
        "label_column": label_column,
        "delimiter": delimiter,
        "n_super": list(n_super_list),
        "folds": folds,
        "seed": seed,
    }
    report = bench_report(config, dataset_fingerprint(data), rows, wall_time)
    click.echo(format_bench_table(report))
    if out is not None:
        write_document(report, out)
        click.echo(f"report: {out}")


@main.command()
@with_options(data_options)
@click.option(
    "--strategy",
    type=click.Choice(["full", "closure-random", "closure-closest"]),
    default="closure-closest",
    show_default=True,
    help="full queries all pairs; the closure strategies skip derivable ones.",
)
@click.option("--seed", type=int, default=0, show_default=True,
              help="Pair-order seed for closure-random.")
@click.option("--out", default=None, help="Write a summary document here.")
@exit_coded
def baseline(data, label_column, delimiter, strategy, seed, out):
    """Non-selective querying baselines over all instance pairs."""
    if label_column is None:
        raise click.UsageError("baseline needs --label-column")
    prepared = _prepare(data, label_column, delimiter)
    answers = label_oracle(prepared.labels)
    started = time.perf_counter()
    if strategy == "full":
        clustering, count = baseline_full(prepared, answers)
    elif strategy == "closure-random":
        clustering, count = baseline_closure(prepared, answers, "random", seed)
    else:
        clustering, count = baseline_closure(prepared, answers, "closest_first")
    wall_time = time.perf_counter() - started
    score = ari(clustering.assignment, prepared.labels)
    click.echo(f"strategy: {strategy}")
    click.echo(f"oracle queries: {count} (all pairs: {math.comb(prepared.n, 2)})")
    click.echo(f"clusters found: {clustering.n_clusters}")
    click.echo(f"ari vs labels: {score:.4f}")
    if out is not None:
        from .documents import SCHEMA_VERSION

        write_document(
            {
                "schema_version": SCHEMA_VERSION,
                "dataset_fingerprint": dataset_fingerprint(data),
                "config": {
                    "data": data,
                    "label_column": label_column,
                    "delimiter": delimiter,
                    "strategy": strategy,
                    "seed": seed,
                },
                "oracle_count": count,
                "n_clusters_found": clustering.n_clusters,
                "ari": score,
                "assignment": [int(c) for c in clustering.assignment],
                "wall_time": wall_time,
            },
            out,
        )
        click.echo(f"summary: {out}")


@main.command()
@with_options(data_options)
@click.option("--n-super", type=int, default=25, show_default=True,
              help="Default super-instance count for new sessions.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--port", type=int, default=8125, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui", default=None, help="Directory with the built web UI to serve at /.")
@click.option("--max-sessions", type=int, default=8, show_default=True)
@exit_coded
def serve(data, label_column, delimiter, n_super, seed, port, host, ui, max_sessions):
    """Host interactive sessions where a human answers the queries."""
    import uvicorn

    from .service import create_app

    if n_super < 2:
        raise click.UsageError(f"--n-super must be at least 2, got {n_super}")
    app = create_app(
        data_path=data,
        label_column=label_column,
        delimiter=delimiter,
        n_super=n_super,
        seed=seed,
        ui_dir=ui,
        max_sessions=max_sessions,
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
