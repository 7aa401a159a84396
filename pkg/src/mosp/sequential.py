"""Sequential exact multi-objective A* solver.

One label is extracted per iteration in lexicographic priority order (or
insertion order with the FIFO queue variant).  Goal labels prune the open
queue via a full index scan and update the goal front; regular labels are
expanded into candidates vetted against per-node frontier sets and the
front.  Queue removals are keyed and in-place: the baseline deliberately
does not use lazy deletion.
"""

from __future__ import annotations

from time import perf_counter_ns

import numpy as np

from .core import (CLOSED, IN_FRONT, IN_OPEN, PRUNED, READY, Candidate,
                   FrontierStore, LabelArena, any_dominator, dominates,
                   make_queue, relate_all)
from .graph import Graph
from .results import SolveResult, Stats, finalize_front


class SeqState:
    """Mutable solver state; exposed so the per-step operations are testable."""

    def __init__(self, graph: Graph, queue_kind: str = "pq"):
        if graph.heuristics is None:
            raise ValueError("heuristics must be computed before solving")
        self.graph = graph
        self.arena = LabelArena(graph.num_objectives)
        self.fs = FrontierStore(graph.num_nodes, graph.num_objectives)
        self.queue = make_queue(queue_kind, removable=True)
        self.reachable = graph.reachable_mask()
        self.stats = Stats()
        # queue mutations are deferred to the update phase of each iteration
        self.queue_inserts: list = []
        self.queue_removes: list = []

    def admit(self, c: Candidate) -> int:
        lid = self.arena.new_label(c.node, c.gvec, c.gtup, c.fvec, c.ftup,
                                   c.parent, c.edge, flags=IN_OPEN | READY)
        self.fs.open_sets[c.node].append(lid, c.gvec, c.gtup, c.fvec, c.ftup)
        self.fs.visited[c.node] = 1
        self.queue_inserts.append((c.ftup, lid))
        return lid

    def drop_from_open(self, lid: int):
        arena = self.arena
        arena.set_flags(lid, PRUNED)
        arena.clear_flags(lid, IN_OPEN)
        self.fs.open_sets[arena.node_of(lid)].note_removed(arena)
        self.queue_removes.append(lid)


def expand_label(state: SeqState, lid: int) -> list[Candidate]:
    """One candidate per outgoing edge; goal-unreachable targets dropped."""
    arena, graph = state.arena, state.graph
    gvec = arena.g_row(lid)
    h = graph.heuristics
    out = []
    for v, eid in graph.adjacency[arena.node_of(lid)]:
        state.stats.candidates_generated += 1
        if not state.reachable[v]:
            continue
        g2 = gvec + graph.edge_costs[eid]
        f2 = g2 + h[v]
        out.append(Candidate(v, g2, tuple(g2.tolist()), f2, tuple(f2.tolist()),
                             lid, eid))
    return out


def process_goal_label(state: SeqState, lid: int):
    """Goal-front bookkeeping for an extracted goal label.

    Prunes open-queue labels whose priority vector the goal cost
    dominates (full index scan of the queue), prunes front members the
    goal cost dominates, then inserts the label unless it is dominated
    by or cost-equal to a front member.
    """
    arena, fs, stats = state.arena, state.fs, state.stats
    gt = arena.g_tuple(lid)
    gv = arena.g_row(lid)
    doomed = []
    for key, oid in state.queue.entries():
        stats.dominance_comparisons += 1
        if dominates(gt, key):
            doomed.append(oid)
    for oid in doomed:
        state.drop_from_open(oid)
    fview = fs.front.view
    stats.dominance_comparisons += fview[5]
    equal, dominated, prunable = relate_all(fview, gv, gt)
    for pos in prunable:
        pid = int(fview[0][pos])
        if arena.test(pid, IN_FRONT) and not arena.test(pid, PRUNED):
            arena.set_flags(pid, PRUNED)
            fs.front.note_removed(arena)
    if not equal and not dominated:
        arena.set_flags(lid, IN_FRONT)
        fs.front.append(lid, gv, gt)


def process_regular_candidate(state: SeqState, c: Candidate):
    """Admission ladder for a freshly expanded candidate.

    First visit of the node admits on the front check alone.  Otherwise:
    drop exact duplicates, drop if dominated at the node, else prune the
    node's closed and open labels the candidate dominates (open prunes
    also leave the queue), and admit if the front does not dominate the
    candidate's priority vector.
    """
    arena, fs, stats = state.arena, state.fs, state.stats
    front = fs.front
    if not fs.visited[c.node]:
        stats.dominance_comparisons += front.view[5]
        if not any_dominator(front.view, c.fvec, c.ftup):
            state.admit(c)
        return
    oset, cset = fs.open_sets[c.node], fs.closed_sets[c.node]
    oview, cview = oset.view, cset.view
    stats.dominance_comparisons += oview[5] + cview[5]
    eq_o, dom_o, prune_o = relate_all(oview, c.gvec, c.gtup)
    if eq_o:
        return
    eq_c, dom_c, prune_c = relate_all(cview, c.gvec, c.gtup)
    if eq_c or dom_o or dom_c:
        return
    for pos in prune_c:
        cid = int(cview[0][pos])
        if arena.test(cid, CLOSED) and not arena.test(cid, PRUNED):
            arena.set_flags(cid, PRUNED)
            cset.note_removed(arena)
    for pos in prune_o:
        oid = int(oview[0][pos])
        if arena.test(oid, IN_OPEN) and not arena.test(oid, PRUNED):
            state.drop_from_open(oid)
    stats.dominance_comparisons += front.view[5]
    if not any_dominator(front.view, c.fvec, c.ftup):
        state.admit(c)


def _check_frontier_invariant(state: SeqState):
    arena = state.arena
    for u in range(state.graph.num_nodes):
        ids = (state.fs.live_open_ids(arena, u)
               + state.fs.live_closed_ids(arena, u))
        for a in ids:
            for b in ids:
                if a != b:
                    assert not dominates(arena.g_tuple(a), arena.g_tuple(b)), \
                        f"frontier at node {u} holds a dominated label"


def solve_sequential(graph: Graph, queue_kind: str = "pq",
                     invariant_checks: bool = False) -> SolveResult:
    """Exact cost-unique Pareto front from source to goal.

    Returns an empty front when the goal is unreachable.  Deterministic:
    repeated runs produce identical fronts, paths, and counters.
    """
    state = SeqState(graph, queue_kind)
    arena, fs, queue, stats = state.arena, state.fs, state.queue, state.stats
    t_start = perf_counter_ns()
    if state.reachable[graph.source]:
        g0 = np.zeros(graph.num_objectives)
        f0 = graph.heuristics[graph.source].copy()
        start = Candidate(graph.source, g0, tuple(g0.tolist()),
                          f0, tuple(f0.tolist()), -1, -1)
        state.admit(start)
        for key, nid in state.queue_inserts:
            queue.push(nid, key)
        state.queue_inserts.clear()
    t_extract = t_process = t_update = 0
    goal = graph.goal
    while len(queue):
        t0 = perf_counter_ns()
        _, lid = queue.pop()
        t1 = perf_counter_ns()
        node = arena.node_of(lid)
        arena.clear_flags(lid, IN_OPEN)
        arena.set_flags(lid, CLOSED)
        fs.open_sets[node].note_removed(arena)
        fs.closed_sets[node].append(lid, arena.g_row(lid), arena.g_tuple(lid))
        stats.labels_extracted += 1
        if node == goal:
            process_goal_label(state, lid)
        else:
            for cand in expand_label(state, lid):
                process_regular_candidate(state, cand)
        t2 = perf_counter_ns()
        for key, nid in state.queue_inserts:
            queue.push(nid, key)
        state.queue_inserts.clear()
        for oid in state.queue_removes:
            queue.remove(oid)
        state.queue_removes.clear()
        t3 = perf_counter_ns()
        t_extract += t1 - t0
        t_process += t2 - t1
        t_update += t3 - t2
        if invariant_checks:
            _check_frontier_invariant(state)
    stats.time_total = perf_counter_ns() - t_start
    stats.time_open_extract = t_extract
    stats.time_label_processing = t_process
    stats.time_updates = t_update
    stats.time_communication = max(
        0, stats.time_total - t_extract - t_process - t_update)
    return finalize_front(arena, fs.front, stats)
