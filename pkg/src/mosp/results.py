"""Solve results: counters, timing breakdown, and front finalization."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .core import IN_FRONT, PRUNED, LabelArena, reconstruct_path


@dataclass
class Stats:
    """Work counters and a nanosecond timing breakdown.

    ``dominance_comparisons`` counts label records consulted by dominance,
    duplicate and prune scans (one per record per scan).  The four time
    components sum to ``time_total`` up to clamping of negative residuals;
    ``time_communication`` is the residual not attributable to queue
    extraction, queue/set updates, or label processing (synchronization
    waits and loop bookkeeping).
    """

    labels_extracted: int = 0
    candidates_generated: int = 0
    dominance_comparisons: int = 0
    front_size: int = 0
    time_total: int = 0
    time_open_extract: int = 0
    time_updates: int = 0
    time_label_processing: int = 0
    time_communication: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SolveResult:
    """Pareto front (cost vector, node path) pairs plus run statistics."""

    front: list = field(default_factory=list)
    stats: Stats = field(default_factory=Stats)
    trace: list | None = None

    def front_costs(self) -> list[tuple]:
        return [cost for cost, _ in self.front]


def pareto_filter_costs(entries):
    """Filter ``(cost_tuple, payload)`` pairs to the cost-unique Pareto set.

    Input order breaks exact-cost ties (first occurrence wins); output is
    sorted lexicographically by cost.  Because dominance implies
    lexicographic precedence, a single forward sweep over the sorted
    entries needs to test each cost only against already-kept ones.
    """
    if not entries:
        return []
    ordered = sorted(range(len(entries)), key=lambda i: (entries[i][0], i))
    kept = []
    kept_costs = set()
    d = len(entries[ordered[0]][0])
    mat = np.empty((len(entries), d))
    m = 0
    for i in ordered:
        cost = entries[i][0]
        if cost in kept_costs:
            continue
        if m:
            vec = np.asarray(cost)
            block = mat[:m]
            if bool(((block <= vec).all(axis=1) & (block < vec).any(axis=1)).any()):
                continue
        kept.append(entries[i])
        kept_costs.add(cost)
        mat[m] = cost
        m += 1
    return kept


def finalize_front(arena: LabelArena, front_set, stats: Stats,
                   trace=None) -> SolveResult:
    """Re-filter the goal front and reconstruct solution paths.

    Removes members dominated by other members and deduplicates equal
    cost vectors keeping the lowest label id.  Under fully ordered
    execution the front is already clean and this is the identity; under
    concurrent goal handling it repairs the transient races the solver
    tolerates by design.
    """
    ids, _, _, gt, _, n = front_set.view
    entries = []
    for i in range(n):
        lid = int(ids[i])
        if arena.test(lid, IN_FRONT) and not arena.test(lid, PRUNED):
            entries.append((gt[i], lid))
    entries.sort(key=lambda e: (e[0], e[1]))
    kept = pareto_filter_costs(entries)
    front = [(cost, reconstruct_path(arena, lid)) for cost, lid in kept]
    stats.front_size = len(front)
    return SolveResult(front=front, stats=stats, trace=trace)
