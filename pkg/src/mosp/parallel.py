"""Ordered-parallel multi-objective shortest-path solver.

One coordinator thread owns the open queue and all structural mutation of
the shared label sets; ``num_threads - 1`` worker threads perform the
dominance, pruning, and candidate-vetting work.  Per iteration the
coordinator extracts up to ``num_pop`` labels into next-iteration bags
(regular and goal) while workers process the bags extracted in the
previous iteration, writing their results into per-worker update buffers
that the coordinator drains and applies.  Queue deletes are lazy by
default: a pruned label keeps its queue entry and is discarded when
popped.

Concurrency contract (single coordinator, W workers):

* the graph and heuristic table are immutable shared reads;
* label records publish via their flag word (written last on creation)
  and packed-set views publish atomically, so a reader never observes a
  partially written label;
* each update buffer has one writer (its worker) and one reader (the
  coordinator), handed off through a ready flag under a condition
  variable;
* the open queue is touched only by the coordinator;
* per-node open/closed sets are structurally mutated only by the
  coordinator; workers read snapshots and route prunes through buffers;
* for each goal label exactly one worker computes the front update, and
  readers tolerate transiently dominated front entries, repaired by the
  final Pareto filter;
* iteration boundaries are full barriers.

The front cost-vector set equals the sequential solver's for every
configuration; counters and paths may differ run to run under the
asynchronous models because buffer application order is readiness order.
"""

from __future__ import annotations

import os
import threading
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate
from time import perf_counter_ns

import numpy as np

from .core import (CLOSED, IN_FRONT, IN_OPEN, PRUNED, READY, FrontierStore,
                   LabelArena, any_dominator, collect_dominated_f, dominates,
                   make_queue, relate_all)
from .graph import Graph
from .results import SolveResult, Stats, finalize_front

EXEC_MODELS = ("async", "in_place_deletes", "async_open_sync_upd",
               "sync_open_sync_upd", "dup_dom")
LB_POLICIES = ("opmos", "label_centric", "neighbor_centric", "goal_priority")
QUEUE_KINDS = ("pq", "fifo")


@dataclass(frozen=True)
class RunConfig:
    """Parallel run parameters.

    ``num_threads`` counts the coordinator, so there are
    ``num_threads - 1`` workers.  ``num_pop`` caps labels extracted per
    iteration.  Execution models: ``async`` (pipelined extraction,
    updates applied as each worker finishes, lazy queue deletes),
    ``in_place_deletes`` (same but queue deletes are immediate keyed
    removals), ``async_open_sync_upd`` (pipelined extraction, updates
    applied only after every worker finishes), ``sync_open_sync_upd``
    (no pipelining: extract, process, then update), and ``dup_dom``
    (synchronous updates with cross-worker duplicate/dominance reduction
    of the candidate batch before application).
    """

    num_threads: int = 2
    num_pop: int = 1
    queue_kind: str = "pq"
    exec_model: str = "async"
    lb_policy: str = "opmos"
    collect_trace: bool = False
    audit_goal_prunes: bool = False

    @property
    def workers(self) -> int:
        return self.num_threads - 1

    def validate(self):
        if self.num_threads < 2:
            raise ValueError("num_threads must be >= 2 (coordinator + workers)")
        if self.num_pop < 1:
            raise ValueError("num_pop must be >= 1")
        if self.queue_kind not in QUEUE_KINDS:
            raise ValueError(f"queue_kind must be one of {QUEUE_KINDS}")
        if self.exec_model not in EXEC_MODELS:
            raise ValueError(f"exec_model must be one of {EXEC_MODELS}")
        if self.lb_policy not in LB_POLICIES:
            raise ValueError(f"lb_policy must be one of {LB_POLICIES}")


@dataclass(frozen=True)
class WorkerSlice:
    """Contiguous range of (bag label, neighbor) pairs owned by one worker."""

    s_label: int
    s_nbr: int
    e_label: int
    e_nbr: int


def nbr_splitting(out_degrees, tid: int, num_workers: int) -> WorkerSlice:
    """Neighbor-granularity partition of a regular bag.

    The global neighbor index range [floor(tid*T/W), floor((tid+1)*T/W))
    over T = sum of bag out-degrees is mapped back to label/neighbor
    coordinates by prefix-sum search; the slices of all workers partition
    the bag's (label, neighbor) pairs exactly.
    """
    total = sum(out_degrees)
    prefix = [0, *accumulate(out_degrees)][:-1] if out_degrees else []
    lo = tid * total // num_workers
    hi = (tid + 1) * total // num_workers

    def locate(x):
        if x >= total:
            return len(out_degrees), 0
        i = bisect_right(prefix, x) - 1
        return i, x - prefix[i]

    sl, sn = locate(lo)
    el, en = locate(hi)
    return WorkerSlice(sl, sn, el, en)


def iter_slice(sl: WorkerSlice, out_degrees):
    """Yield the (label index, neighbor index) pairs of a slice in order."""
    li, ni = sl.s_label, sl.s_nbr
    end = (sl.e_label, sl.e_nbr)
    while (li, ni) < end:
        if li >= len(out_degrees):
            return
        if ni >= out_degrees[li]:
            li += 1
            ni = 0
            continue
        yield li, ni
        ni += 1


def goal_stripe(tid: int, bid: int, num_workers: int, num_nodes: int) -> range:
    """Round-robin node stripe for goal-label pruning, biased by bag index."""
    return range((tid + bid) % num_workers, num_nodes, num_workers)


def goal_owner(bid: int, num_workers: int) -> int:
    """Worker responsible for the front update of goal-bag entry ``bid``."""
    return bid % num_workers


class UpdateBuffers:
    """Per-worker update lists, single-writer (worker) single-reader (coordinator)."""

    __slots__ = ("p_ins", "p_del", "open_ins", "open_del", "gcl_del",
                 "candidates", "comparisons", "audit_goal")

    def __init__(self):
        self.p_ins: list[int] = []
        self.p_del: list[int] = []
        self.open_ins: list[tuple] = []
        self.open_del: list[int] = []
        self.gcl_del: list[int] = []
        self.candidates = 0
        self.comparisons = 0
        self.audit_goal: list[tuple] = []

    def clear(self):
        self.p_ins.clear()
        self.p_del.clear()
        self.open_ins.clear()
        self.open_del.clear()
        self.gcl_del.clear()
        self.candidates = 0
        self.comparisons = 0
        self.audit_goal.clear()


class _PoolWorker(threading.Thread):
    """Reusable daemon thread: runs one submitted job at a time."""

    def __init__(self):
        super().__init__(daemon=True, name="solver-pool-worker")
        self._wake = threading.Event()
        self._job = None
        self.start()

    def submit(self, fn) -> threading.Event:
        done = threading.Event()
        self._job = (fn, done)
        self._wake.set()
        return done

    def run(self):
        while True:
            self._wake.wait()
            self._wake.clear()
            fn, done = self._job
            self._job = None
            fn()  # worker loops trap their own exceptions
            done.set()


class _WorkerPool:
    """Process-wide pool so repeated solves do not pay thread start-up."""

    def __init__(self):
        self._lock = threading.Lock()
        self._idle: list[_PoolWorker] = []
        os.register_at_fork(after_in_child=self._reset)

    def _reset(self):
        # threads do not survive fork; drop stale handles in the child
        self._lock = threading.Lock()
        self._idle = []

    def acquire(self, n: int) -> list[_PoolWorker]:
        with self._lock:
            out = [self._idle.pop() for _ in range(min(n, len(self._idle)))]
        while len(out) < n:
            out.append(_PoolWorker())
        return out

    def release(self, workers):
        with self._lock:
            self._idle.extend(workers)


_POOL = _WorkerPool()


class ParallelEngine:
    """One parallel solve: shared state, coordinator loop, worker loops.

    Constructing the engine fully initializes solver state without
    starting threads, so individual phases are unit-testable; ``run``
    drives the whole solve.
    """

    def __init__(self, graph: Graph, cfg: RunConfig):
        cfg.validate()
        if graph.heuristics is None:
            raise ValueError("heuristics must be computed before solving")
        self.graph = graph
        self.cfg = cfg
        self.workers = cfg.workers
        d = graph.num_objectives
        self.arena = LabelArena(d)
        self.fs = FrontierStore(graph.num_nodes, d)
        self.queue = make_queue(cfg.queue_kind,
                                removable=cfg.exec_model == "in_place_deletes")
        self.reachable = graph.reachable_mask()
        self.buffers = [UpdateBuffers() for _ in range(self.workers)]
        self.ready = [False] * self.workers
        self.busy_ns = [0] * self.workers
        # UpdatesRdy handoff: a worker publishes its buffers, sets its ready
        # flag, and releases the semaphore once per iteration.
        self.ready_sem = threading.Semaphore(0)
        # Iteration boundaries are logical full barriers: workers block on a
        # generation counter the coordinator bumps only after every worker
        # of the previous iteration reported ready and had its buffer applied.
        self.gen_cond = threading.Condition()
        self.generation = 0
        self.goal_barrier = threading.Barrier(self.workers)
        self.cur_reg: list[int] = []
        self.cur_goal: list[int] = []
        self.cur_degs: list[int] = []
        self.done = False
        self.errors: list[BaseException] = []
        self.trace: list | None = [] if cfg.collect_trace else None
        self.audit_failures: list[tuple] = []
        self._round_admitted: set = set()
        self._front_round: set = set()
        self._extracted = 0
        self._candidates = 0
        self._comparisons = 0
        self._t_extract = 0
        self._t_updates = 0
        self._t_label = 0
        self._iteration = 0

    # ----- coordinator side -------------------------------------------------

    def seed_start_label(self):
        g = self.graph
        g0 = np.zeros(g.num_objectives)
        f0 = g.heuristics[g.source].copy()
        lid = self.arena.new_label(g.source, g0, tuple(g0.tolist()),
                                   f0, tuple(f0.tolist()),
                                   flags=IN_OPEN | READY)
        self.fs.open_sets[g.source].append(lid, g0, tuple(g0.tolist()),
                                           f0, tuple(f0.tolist()))
        self.fs.visited[g.source] = 1
        self.queue.push(lid, tuple(f0.tolist()))

    def extract_bags(self, reg_bag: list, goal_bag: list) -> int:
        """Pop until ``num_pop`` live labels are collected or the queue empties.

        Lazily pruned labels are discarded without counting.  Each kept
        label moves from its node's open set to the closed set and lands
        in the goal or regular bag.
        """
        arena, fs, queue = self.arena, self.fs, self.queue
        goal = self.graph.goal
        kept = 0
        while kept < self.cfg.num_pop and len(queue):
            _, lid = queue.pop()
            if arena.test(lid, PRUNED):
                continue
            node = arena.node_of(lid)
            arena.clear_flags(lid, IN_OPEN)
            arena.set_flags(lid, CLOSED)
            fs.open_sets[node].note_removed(arena)
            fs.closed_sets[node].append(lid, arena.g_row(lid), arena.g_tuple(lid))
            (goal_bag if node == goal else reg_bag).append(lid)
            kept += 1
        self._extracted += kept
        return kept

    def apply_worker_updates(self, tid: int, keep_open=None):
        """Drain one worker's buffers into the shared structures.

        Front and closed-set deletions are flag flips; admissions create
        the label record (published by its flag word), enter the node's
        open set, and join the queue; open-set deletions set the pruned
        flag (and remove the queue entry under in-place deletes).  Exact
        (node, cost) duplicates of an admission already applied this
        iteration are dropped to keep frontiers cost-unique.
        """
        arena, fs, queue = self.arena, self.fs, self.queue
        buf = self.buffers[tid]
        self._candidates += buf.candidates
        self._comparisons += buf.comparisons
        for lid in buf.p_del:
            if arena.test(lid, IN_FRONT) and not arena.test(lid, PRUNED):
                arena.set_flags(lid, PRUNED)
                fs.front.note_removed(arena)
        for lid in buf.p_ins:
            gt = arena.g_tuple(lid)
            if gt in self._front_round:
                continue
            arena.set_flags(lid, IN_FRONT)
            fs.front.append(lid, arena.g_row(lid), gt)
            self._front_round.add(gt)
        for cid in buf.gcl_del:
            if arena.test(cid, CLOSED) and not arena.test(cid, PRUNED):
                arena.set_flags(cid, PRUNED)
                fs.closed_sets[arena.node_of(cid)].note_removed(arena)
        in_place = self.cfg.exec_model == "in_place_deletes"
        for idx, rec in enumerate(buf.open_ins):
            if keep_open is not None and idx not in keep_open:
                continue
            node, g2, gt2, f2, ft2, parent, eid = rec
            dup_key = (node, gt2)
            if dup_key in self._round_admitted:
                continue
            lid = arena.new_label(node, g2, gt2, f2, ft2, parent, eid,
                                  flags=IN_OPEN | READY)
            fs.open_sets[node].append(lid, g2, gt2, f2, ft2)
            fs.visited[node] = 1
            queue.push(lid, ft2)
            self._round_admitted.add(dup_key)
        for oid in buf.open_del:
            if arena.test(oid, IN_OPEN) and not arena.test(oid, PRUNED):
                arena.set_flags(oid, PRUNED)
                fs.open_sets[arena.node_of(oid)].note_removed(arena)
                if in_place:
                    self.queue.remove(oid)
        if self.cfg.audit_goal_prunes:
            for oid, glid in buf.audit_goal:
                if not dominates(arena.g_tuple(glid), arena.f_tuple(oid)):
                    self.audit_failures.append((oid, glid))
        buf.clear()
        self.ready[tid] = False

    def _dupdom_reduce(self):
        """Cross-worker reduction of this iteration's candidate admissions.

        Per node, drops exact duplicates and candidates dominated by
        another candidate in the merged batch; returns per-worker keep
        index sets.
        """
        by_node: dict[int, list] = {}
        for tid in range(self.workers):
            for idx, rec in enumerate(self.buffers[tid].open_ins):
                by_node.setdefault(rec[0], []).append((tid, idx, rec[2]))
        keep = [set() for _ in range(self.workers)]
        for items in by_node.values():
            seen = set()
            uniq = []
            for tid, idx, gt in items:
                if gt in seen:
                    continue
                seen.add(gt)
                uniq.append((tid, idx, gt))
            for tid, idx, gt in uniq:
                if not any(dominates(other, gt) for _, _, other in uniq
                           if other != gt):
                    keep[tid].add(idx)
        return keep

    def _raise_worker_error(self):
        if not self.errors:
            raise RuntimeError("barrier broken without a recorded worker error")
        for e in self.errors:
            if not isinstance(e, threading.BrokenBarrierError):
                raise e
        raise self.errors[0]

    def _await_signal(self):
        while not self.ready_sem.acquire(timeout=0.2):
            if self.errors:
                break
        if self.errors:
            self._raise_worker_error()

    def _collect_and_apply(self):
        """Poll worker ready flags and apply buffers per the execution model."""
        model = self.cfg.exec_model
        w = self.workers
        apply_ns = 0
        if model in ("async", "in_place_deletes"):
            applied = [False] * w
            done = 0
            while done < w:
                self._await_signal()
                for t in range(w):
                    if self.ready[t] and not applied[t]:
                        applied[t] = True
                        done += 1
                        t0 = perf_counter_ns()
                        self.apply_worker_updates(t)
                        apply_ns += perf_counter_ns() - t0
            # one acquire may have covered several signals; drop leftovers
            while self.ready_sem.acquire(blocking=False):
                pass
        else:
            for _ in range(w):
                self._await_signal()
            keep = self._dupdom_reduce() if model == "dup_dom" else None
            for t in range(w):
                t0 = perf_counter_ns()
                self.apply_worker_updates(t, keep[t] if keep else None)
                apply_ns += perf_counter_ns() - t0
        worst = max(self.busy_ns) if self.busy_ns else 0
        return apply_ns, worst

    def _publish_iteration(self, reg, goal_bag, done):
        self.cur_reg = reg
        self.cur_goal = goal_bag
        node_of = self.arena.node_of
        adj = self.graph.adjacency
        self.cur_degs = [len(adj[node_of(lid)]) for lid in reg]
        self.done = done
        self._round_admitted.clear()
        self._front_round.clear()
        for t in range(self.workers):
            self.busy_ns[t] = 0
        with self.gen_cond:
            self.generation += 1
            self.gen_cond.notify_all()

    def _account(self, extract_ns, apply_ns, worst_ns, overlap):
        if overlap:
            unhidden_e = max(0, extract_ns - worst_ns)
            remaining = max(0, worst_ns - extract_ns)
            unhidden_u = max(0, apply_ns - remaining)
        else:
            unhidden_e, unhidden_u = extract_ns, apply_ns
        self._t_extract += unhidden_e
        self._t_updates += unhidden_u
        self._t_label += worst_ns

    def _trace_row(self, extracted, worst_ns):
        if self.trace is not None:
            self.trace.append({
                "iteration": self._iteration,
                "reg_bag": len(self.cur_reg),
                "goal_bag": len(self.cur_goal),
                "extracted": extracted,
                "worst_worker_ns": worst_ns,
            })

    def _coordinator_pipelined(self):
        cur_reg: list[int] = []
        cur_goal: list[int] = []
        while True:
            done = not cur_reg and not cur_goal and len(self.queue) == 0
            self._publish_iteration(cur_reg, cur_goal, done)
            if done:
                return
            t0 = perf_counter_ns()
            nxt_reg: list[int] = []
            nxt_goal: list[int] = []
            extracted = self.extract_bags(nxt_reg, nxt_goal)
            t1 = perf_counter_ns()
            apply_ns, worst = self._collect_and_apply()
            self._account(t1 - t0, apply_ns, worst, overlap=True)
            self._trace_row(extracted, worst)
            self._iteration += 1
            cur_reg, cur_goal = nxt_reg, nxt_goal

    def _coordinator_sync(self):
        while True:
            t0 = perf_counter_ns()
            cur_reg: list[int] = []
            cur_goal: list[int] = []
            extracted = self.extract_bags(cur_reg, cur_goal)
            t1 = perf_counter_ns()
            done = not cur_reg and not cur_goal
            self._publish_iteration(cur_reg, cur_goal, done)
            if done:
                return
            apply_ns, worst = self._collect_and_apply()
            self._account(t1 - t0, apply_ns, worst, overlap=False)
            self._trace_row(extracted, worst)
            self._iteration += 1

    # ----- worker side ------------------------------------------------------

    def _prune_open_stripe(self, lid, nodes, buf):
        """Record open-set labels whose priority the goal label dominates."""
        arena, fs = self.arena, self.fs
        gt = arena.g_tuple(lid)
        gv = arena.g_row(lid)
        audit = self.cfg.audit_goal_prunes
        for i in nodes:
            view = fs.open_sets[i].view
            n = view[5]
            if n == 0:
                continue
            buf.comparisons += n
            for pos in collect_dominated_f(view, gv, gt):
                oid = int(view[0][pos])
                buf.open_del.append(oid)
                if audit:
                    buf.audit_goal.append((oid, lid))

    def _decide_front(self, lid, buf):
        """Front prune/insert decision for one goal label (owner worker only)."""
        arena, fs = self.arena, self.fs
        gt = arena.g_tuple(lid)
        gv = arena.g_row(lid)
        view = fs.front.view
        buf.comparisons += view[5]
        equal, dominated, prunable = relate_all(view, gv, gt)
        if not equal and not dominated:
            for plid in buf.p_ins:
                pt = arena.g_tuple(plid)
                if pt == gt or dominates(pt, gt):
                    return
            for pos in prunable:
                buf.p_del.append(int(view[0][pos]))
            buf.p_ins.append(lid)

    def _worker_goal_phase(self, tid, buf):
        goal_bag = self.cur_goal
        w = self.workers
        policy = self.cfg.lb_policy
        n = self.graph.num_nodes
        if policy == "opmos":
            for bid, lid in enumerate(goal_bag):
                self._prune_open_stripe(lid, goal_stripe(tid, bid, w, n), buf)
                if goal_owner(bid, w) == tid:
                    self._decide_front(lid, buf)
        elif policy == "goal_priority":
            for bid, lid in enumerate(goal_bag):
                owner = goal_owner(bid, w)
                if w == 1:
                    self._prune_open_stripe(lid, range(n), buf)
                    self._decide_front(lid, buf)
                elif tid == owner:
                    self._decide_front(lid, buf)
                else:
                    rank = tid if tid < owner else tid - 1
                    start = (rank + bid) % (w - 1)
                    self._prune_open_stripe(lid, range(start, n, w - 1), buf)
                self.goal_barrier.wait()
        else:  # label_centric / neighbor_centric: goal labels round-robin, whole
            for bid, lid in enumerate(goal_bag):
                if bid % w == tid:
                    self._prune_open_stripe(lid, range(n), buf)
                    self._decide_front(lid, buf)

    def _vet_candidate(self, buf, parent_lid, parent_g, node, eid):
        """Admission ladder against snapshot views, writes routed to buffers."""
        buf.candidates += 1
        if not self.reachable[node]:
            return
        arena, fs, graph = self.arena, self.fs, self.graph
        g2 = parent_g + graph.edge_costs[eid]
        f2 = g2 + graph.heuristics[node]
        gt2 = tuple(g2.tolist())
        ft2 = tuple(f2.tolist())
        if not fs.visited[node]:
            fview = fs.front.view
            buf.comparisons += fview[5]
            if not any_dominator(fview, f2, ft2):
                buf.open_ins.append((node, g2, gt2, f2, ft2, parent_lid, eid))
            return
        oview = fs.open_sets[node].view
        cview = fs.closed_sets[node].view
        buf.comparisons += oview[5] + cview[5]
        eq_o, dom_o, prune_o = relate_all(oview, g2, gt2)
        if eq_o:
            return
        eq_c, dom_c, prune_c = relate_all(cview, g2, gt2)
        if eq_c or dom_o or dom_c:
            return
        for pos in prune_c:
            cid = int(cview[0][pos])
            if arena.test(cid, CLOSED) and not arena.test(cid, PRUNED):
                buf.gcl_del.append(cid)
        for pos in prune_o:
            oid = int(oview[0][pos])
            if arena.test(oid, IN_OPEN) and not arena.test(oid, PRUNED):
                buf.open_del.append(oid)
        fview = fs.front.view
        buf.comparisons += fview[5]
        if not any_dominator(fview, f2, ft2):
            buf.open_ins.append((node, g2, gt2, f2, ft2, parent_lid, eid))

    def _worker_regular_phase(self, tid, buf):
        reg = self.cur_reg
        if not reg:
            return
        arena, adj = self.arena, self.graph.adjacency
        w = self.workers
        if self.cfg.lb_policy in ("opmos", "neighbor_centric"):
            degs = self.cur_degs
            sl = nbr_splitting(degs, tid, w)
            last_li = -1
            parent_g = nbrs = lid = None
            for li, ni in iter_slice(sl, degs):
                if li != last_li:
                    lid = reg[li]
                    parent_g = arena.g_row(lid)
                    nbrs = adj[arena.node_of(lid)]
                    last_li = li
                v, eid = nbrs[ni]
                self._vet_candidate(buf, lid, parent_g, v, eid)
        else:  # label_centric / goal_priority: whole labels round-robin
            for li in range(tid, len(reg), w):
                lid = reg[li]
                parent_g = arena.g_row(lid)
                for v, eid in adj[arena.node_of(lid)]:
                    self._vet_candidate(buf, lid, parent_g, v, eid)

    def _worker_main(self, tid):
        seen_gen = 0
        try:
            while True:
                with self.gen_cond:
                    while self.generation <= seen_gen and not self.errors:
                        self.gen_cond.wait(0.2)
                    seen_gen = self.generation
                if self.done or self.errors:
                    return
                t0 = perf_counter_ns()
                buf = self.buffers[tid]
                self._worker_goal_phase(tid, buf)
                if self.cur_goal:
                    # goal-bag results must be visible before regular work
                    self.goal_barrier.wait()
                self._worker_regular_phase(tid, buf)
                self.busy_ns[tid] = perf_counter_ns() - t0
                self.ready[tid] = True
                self.ready_sem.release()
        except BaseException as exc:  # pragma: no cover - defensive
            self.errors.append(exc)
            self.goal_barrier.abort()
            self.ready_sem.release(self.workers)
            with self.gen_cond:
                self.gen_cond.notify_all()

    # ----- driver -----------------------------------------------------------

    def run(self) -> SolveResult:
        stats = Stats()
        if not self.reachable[self.graph.source]:
            return finalize_front(self.arena, self.fs.front, stats, self.trace)
        self.seed_start_label()
        threads = [threading.Thread(target=self._worker_main, args=(t,),
                                    daemon=True, name=f"worker-{t}")
                   for t in range(self.workers)]
        for th in threads:
            th.start()
        t_start = perf_counter_ns()
        try:
            if self.cfg.exec_model == "sync_open_sync_upd":
                self._coordinator_sync()
            else:
                self._coordinator_pipelined()
        except threading.BrokenBarrierError:
            self._raise_worker_error()
        finally:
            self.done = True
            with self.gen_cond:  # releases workers if the coordinator failed
                self.generation += 1
                self.gen_cond.notify_all()
            for th in threads:
                th.join(timeout=5.0)
        total = perf_counter_ns() - t_start
        stats.labels_extracted = self._extracted
        stats.candidates_generated = self._candidates
        stats.dominance_comparisons = self._comparisons
        stats.time_total = total
        stats.time_open_extract = self._t_extract
        stats.time_updates = self._t_updates
        stats.time_label_processing = self._t_label
        stats.time_communication = max(
            0, total - self._t_extract - self._t_updates - self._t_label)
        if self.cfg.audit_goal_prunes:
            assert not self.audit_failures, \
                f"goal prune audit failed: {self.audit_failures[:5]}"
        return finalize_front(self.arena, self.fs.front, stats, self.trace)


def solve_parallel(graph: Graph, cfg: RunConfig | None = None) -> SolveResult:
    """Solve with the ordered-parallel engine; front matches the sequential solver."""
    return ParallelEngine(graph, cfg or RunConfig()).run()
