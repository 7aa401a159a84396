"""Machine-readable run reports: JSON report schema, front hash, CSV sweeps."""

from __future__ import annotations

import hashlib
import json

from .results import SolveResult

SCHEMA_VERSION = 1

CSV_COLUMNS = [
    "graph", "algo", "threads", "num_pop", "queue", "exec", "lb", "rep",
    "labels_extracted", "candidates_generated", "dominance_comparisons",
    "front_size", "time_total", "time_open_extract", "time_updates",
    "time_label_processing", "time_communication", "front_hash",
]


def front_hash(costs) -> str:
    """Order-insensitive hash of a cost-vector set.

    Vectors are sorted lexicographically and rendered in full-precision
    canonical decimal form (shortest round-trip representation), so the
    hash is reproducible across runs and processes.
    """
    canon = sorted(tuple(c) for c in costs)
    text = ";".join(",".join(repr(float(x)) for x in vec) for vec in canon)
    return hashlib.sha256(text.encode("ascii")).hexdigest()


def config_echo(algo: str, graph_path, cfg=None, queue_kind: str = "pq") -> dict:
    echo = {"graph": str(graph_path), "algo": algo}
    if cfg is not None:
        echo.update({
            "threads": cfg.num_threads,
            "workers": cfg.workers,
            "num_pop": cfg.num_pop,
            "queue": cfg.queue_kind,
            "exec": cfg.exec_model,
            "lb": cfg.lb_policy,
        })
    else:
        echo["queue"] = queue_kind
    return echo


def build_report(result: SolveResult, config: dict, emit_paths: bool = False,
                 include_trace: bool = False) -> dict:
    """Assemble the versioned run report emitted by the CLI."""
    front = []
    for cost, path in result.front:
        entry = {"cost": list(cost)}
        if emit_paths:
            entry["path"] = list(path)
        front.append(entry)
    report = {
        "schema_version": SCHEMA_VERSION,
        "config": config,
        "front_size": len(result.front),
        "front_hash": front_hash(result.front_costs()),
        "front": front,
        "stats": result.stats.to_dict(),
    }
    if include_trace and result.trace is not None:
        report["trace"] = result.trace
    return report


def write_json(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False)
        fh.write("\n")


def csv_row(graph_path, algo, cfg, rep, result: SolveResult) -> list:
    s = result.stats
    return [
        str(graph_path), algo,
        cfg.num_threads if cfg else 1,
        cfg.num_pop if cfg else 1,
        cfg.queue_kind if cfg else "pq",
        cfg.exec_model if cfg else "-",
        cfg.lb_policy if cfg else "-",
        rep,
        s.labels_extracted, s.candidates_generated, s.dominance_comparisons,
        s.front_size, s.time_total, s.time_open_extract, s.time_updates,
        s.time_label_processing, s.time_communication,
        front_hash(result.front_costs()),
    ]
