"""Result and report documents: the on-disk contract of the CLI.

Documents are JSON with a schema_version field, written with sorted keys and
fixed indentation so identical runs produce identical bytes.  Wall-clock
fields are the one sanctioned source of nondeterminism; strip_volatile
removes them wherever they appear so documents can be compared.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional

import numpy as np

from .core import CobraRun
from .evaluation import FoldResult

SCHEMA_VERSION = 1


def dataset_fingerprint(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return f"sha256:{digest.hexdigest()}"


def result_document(
    config: dict, run: CobraRun, wall_time: float, fingerprint: str
) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "dataset_fingerprint": fingerprint,
        "config": dict(config),
        "assignment": [int(c) for c in run.clustering.assignment],
        "super_instances": [list(group) for group in run.super_instances.groups],
        "medoids": [int(m) for m in run.super_instances.medoids],
        "query_log": [
            {"a": e.a, "b": e.b, "answer": e.answer.value, "source": e.source}
            for e in run.query_log
        ],
        "oracle_count": run.query_log.oracle_count,
        "n_clusters_found": run.clustering.n_clusters,
        "derived_stats": run.store.derived_stats(),
        "wall_time": wall_time,
    }


def bench_report(
    config: dict,
    fingerprint: str,
    rows: list[tuple[int, list[FoldResult]]],
    wall_time: float,
) -> dict:
    report_rows = []
    for n_super, folds in rows:
        aris = np.array([f.ari_test for f in folds])
        counts = np.array([f.oracle_count for f in folds], dtype=float)
        report_rows.append(
            {
                "n_super": n_super,
                "folds": [
                    {
                        "fold_index": f.fold_index,
                        "ari_test": f.ari_test,
                        "oracle_count": f.oracle_count,
                        "n_clusters_found": f.n_clusters_found,
                        "wall_time": f.wall_time,
                    }
                    for f in folds
                ],
                "mean_ari": float(aris.mean()),
                "std_ari": float(aris.std()),
                "mean_oracle_count": float(counts.mean()),
                "std_oracle_count": float(counts.std()),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "dataset_fingerprint": fingerprint,
        "config": dict(config),
        "rows": report_rows,
        "wall_time": wall_time,
    }


def format_bench_table(report: dict) -> str:
    """Aligned plain-text rendering of a benchmark report."""
    header = f"{'n_super':>8} {'mean_ari':>9} {'std_ari':>8} {'mean_queries':>12} {'std_queries':>11}"
    lines = [header, "-" * len(header)]
    for row in report["rows"]:
        lines.append(
            f"{row['n_super']:>8d} {row['mean_ari']:>9.4f} {row['std_ari']:>8.4f} "
            f"{row['mean_oracle_count']:>12.1f} {row['std_oracle_count']:>11.1f}"
        )
    return "\n".join(lines)


def write_document(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(json.dumps(doc, indent=2, sort_keys=True))
        fh.write("\n")


def read_document(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def strip_volatile(doc):
    """A copy of the document with every wall-time field removed."""
    if isinstance(doc, dict):
        return {
            key: strip_volatile(value)
            for key, value in doc.items()
            if key != "wall_time"
        }
    if isinstance(doc, list):
        return [strip_volatile(item) for item in doc]
    return doc
