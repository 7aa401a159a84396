"""Shared search primitives for multi-objective shortest-path solvers.

Cost vectors are float64 sequences compared exactly (no epsilon): every
value reaching a comparison is a sum of input edge costs accumulated in
path order, so equal paths yield bit-identical vectors.

Labels live in an append-only arena indexed by creation id.  Per-node
open/closed sets and the goal front are packed row stores over that
arena.  Membership changes are flag flips plus bookkeeping, never data
moves that a concurrent reader could observe half-done: readers snapshot
an immutable ``view`` tuple, and rows of removed labels linger (their
flags mark them dead) until the owning thread compacts and publishes a
fresh view.  A stale row can only describe a label that was strictly
dominated by a still-live one, so dominance and duplicate decisions made
against a stale snapshot remain sound; the cost is bounded extra scan
work, which is exactly the price lazy deletion is expected to pay.
"""

from __future__ import annotations

from collections import OrderedDict
from heapq import heappop as _heappop, heappush as _heappush
from typing import NamedTuple, Sequence

import numpy as np

# Label lifecycle flag bits.
IN_OPEN = 1    # member of its node's open set (and of the open queue)
PRUNED = 2     # dominated: lazily removed, discarded when next observed
READY = 4      # record fully written; safe to read from other threads
CLOSED = 8     # extracted from the open queue, moved to the closed set
IN_FRONT = 16  # member of the goal front

_BLOCK_SHIFT = 14
_BLOCK = 1 << _BLOCK_SHIFT
_BLOCK_MASK = _BLOCK - 1

# Below this many rows a plain Python scan beats a vectorized one.
_SMALL_SCAN = 32


def dominates(a: Sequence[float], b: Sequence[float]) -> bool:
    """True iff ``a`` dominates ``b``: a[i] <= b[i] everywhere, a[i] < b[i] somewhere.

    Equal vectors do not dominate each other.  Comparisons are exact.
    """
    assert len(a) == len(b), "objective count mismatch"
    strict = False
    for x, y in zip(a, b):
        if x > y:
            return False
        if x < y:
            strict = True
    return strict


def lex_less(a: Sequence[float], b: Sequence[float]) -> bool:
    """Strict lexicographic order on cost vectors, objective order as given."""
    return tuple(a) < tuple(b)


class Candidate(NamedTuple):
    """A label freshly produced by expansion, not yet admitted anywhere."""

    node: int
    gvec: np.ndarray
    gtup: tuple
    fvec: np.ndarray
    ftup: tuple
    parent: int
    edge: int


class LabelArena:
    """Append-only label store indexed by creation id.

    Storage is block-chunked so published rows are never reallocated: any
    reference a reader holds stays valid and stable.  A label is immutable
    once its flags are written (the READY bit is part of the initial flag
    store, which is the last write of ``new_label``); only lifecycle flags
    mutate afterwards, and only the coordinating thread mutates them.
    """

    __slots__ = ("d", "n", "_node", "_parent", "_edge", "_flags",
                 "_g", "_f", "_gt", "_ft")

    def __init__(self, num_objectives: int):
        self.d = num_objectives
        self.n = 0
        self._node: list[list[int]] = []
        self._parent: list[list[int]] = []
        self._edge: list[list[int]] = []
        self._flags: list[np.ndarray] = []
        self._g: list[np.ndarray] = []
        self._f: list[np.ndarray] = []
        self._gt: list[list[tuple]] = []
        self._ft: list[list[tuple]] = []

    def __len__(self) -> int:
        return self.n

    def _grow(self):
        self._node.append([0] * _BLOCK)
        self._parent.append([-1] * _BLOCK)
        self._edge.append([-1] * _BLOCK)
        self._flags.append(np.zeros(_BLOCK, np.uint8))
        self._g.append(np.empty((_BLOCK, self.d)))
        self._f.append(np.empty((_BLOCK, self.d)))
        self._gt.append([()] * _BLOCK)
        self._ft.append([()] * _BLOCK)

    def new_label(self, node, gvec, gtup, fvec, ftup, parent=-1, edge=-1,
                  flags=READY) -> int:
        i = self.n
        b, o = i >> _BLOCK_SHIFT, i & _BLOCK_MASK
        if o == 0:
            self._grow()
        self._node[b][o] = node
        self._parent[b][o] = parent
        self._edge[b][o] = edge
        self._g[b][o] = gvec
        self._f[b][o] = fvec
        self._gt[b][o] = gtup
        self._ft[b][o] = ftup
        # Flag store publishes the record (READY is expected in `flags`).
        self._flags[b][o] = flags
        self.n = i + 1
        return i

    def node_of(self, i) -> int:
        return self._node[i >> _BLOCK_SHIFT][i & _BLOCK_MASK]

    def parent_of(self, i) -> int:
        return self._parent[i >> _BLOCK_SHIFT][i & _BLOCK_MASK]

    def edge_of(self, i) -> int:
        return self._edge[i >> _BLOCK_SHIFT][i & _BLOCK_MASK]

    def g_row(self, i) -> np.ndarray:
        return self._g[i >> _BLOCK_SHIFT][i & _BLOCK_MASK]

    def f_row(self, i) -> np.ndarray:
        return self._f[i >> _BLOCK_SHIFT][i & _BLOCK_MASK]

    def g_tuple(self, i) -> tuple:
        return self._gt[i >> _BLOCK_SHIFT][i & _BLOCK_MASK]

    def f_tuple(self, i) -> tuple:
        return self._ft[i >> _BLOCK_SHIFT][i & _BLOCK_MASK]

    def test(self, i, bits) -> bool:
        return bool(self._flags[i >> _BLOCK_SHIFT][i & _BLOCK_MASK] & bits)

    def set_flags(self, i, bits):
        self._flags[i >> _BLOCK_SHIFT][i & _BLOCK_MASK] |= bits

    def clear_flags(self, i, bits):
        self._flags[i >> _BLOCK_SHIFT][i & _BLOCK_MASK] &= ~np.uint8(bits)


_EMPTY_IDS = np.empty(0, np.int64)


class PackedSet:
    """Packed label set (one per node per kind, plus one for the goal front).

    ``view`` is a 6-tuple ``(ids, g, f, gtup, ftup, n)`` published
    atomically; readers grab it once per scan.  Rows ``[0, n)`` of the
    arrays and lists are immutable once published.  Only the owning
    thread appends (write row, then publish a view with ``n + 1``) or
    compacts (build fresh arrays, publish).  ``live`` counts members
    whose flags still satisfy ``required`` and lack PRUNED; it exists
    only to trigger compaction.
    """

    __slots__ = ("live", "required", "with_f", "d", "view")

    def __init__(self, d: int, with_f: bool, required: int):
        self.d = d
        self.with_f = with_f
        self.required = required
        self.live = 0
        g0 = np.empty((0, d))
        self.view = (_EMPTY_IDS, g0, g0 if with_f else None, [],
                     [] if with_f else None, 0)

    def __len__(self) -> int:
        return self.view[5]

    def append(self, lid, gvec, gtup, fvec=None, ftup=None):
        ids, g, f, gt, ft, n = self.view
        if n == len(ids):
            cap = max(4, 2 * n)
            ids2 = np.empty(cap, np.int64)
            ids2[:n] = ids
            g2 = np.empty((cap, self.d))
            g2[:n] = g[:n]
            if self.with_f:
                f2 = np.empty((cap, self.d))
                f2[:n] = f[:n]
            else:
                f2 = None
            ids, g, f = ids2, g2, f2
        ids[n] = lid
        g[n] = gvec
        gt.append(gtup)
        if self.with_f:
            f[n] = fvec
            ft.append(ftup)
        self.view = (ids, g, f, gt, ft, n + 1)
        self.live += 1

    def note_removed(self, arena: LabelArena):
        """Record that one member's flags no longer satisfy membership."""
        self.live -= 1
        n = self.view[5]
        if n >= 32 and 2 * self.live < n:
            self.compact(arena)

    def compact(self, arena: LabelArena):
        ids, g, f, gt, ft, n = self.view
        keep = [i for i in range(n)
                if arena.test(ids[i], self.required)
                and not arena.test(ids[i], PRUNED)]
        m = len(keep)
        ids2 = np.empty(max(4, m), np.int64)
        g2 = np.empty((max(4, m), self.d))
        gt2 = []
        f2 = np.empty((max(4, m), self.d)) if self.with_f else None
        ft2 = [] if self.with_f else None
        for j, i in enumerate(keep):
            ids2[j] = ids[i]
            g2[j] = g[i]
            gt2.append(gt[i])
            if self.with_f:
                f2[j] = f[i]
                ft2.append(ft[i])
        self.view = (ids2, g2, f2, gt2, ft2, m)
        self.live = m

    def live_ids(self, arena: LabelArena) -> list[int]:
        ids, _, _, _, _, n = self.view
        return [int(ids[i]) for i in range(n)
                if arena.test(ids[i], self.required)
                and not arena.test(ids[i], PRUNED)]


def relate_all(view, vec, tup):
    """Relate ``vec``/``tup`` to every row of a packed-set view.

    Returns ``(equal_found, dominator_found, prunable_positions)`` where
    prunable positions are row indexes whose cost is dominated by the
    probe.  Stops early once an equal row or a dominating row is found
    (either outcome drops the probe, so the prune list is moot).
    """
    n = view[5]
    if n == 0:
        return False, False, ()
    if n <= _SMALL_SCAN:
        gt = view[3]
        prune = []
        for i in range(n):
            r = gt[i]
            le = ge = True
            for x, y in zip(r, tup):
                if x > y:
                    le = False
                    if not ge:
                        break
                elif x < y:
                    ge = False
                    if not le:
                        break
            if le:
                if ge:
                    return True, False, ()
                return False, True, ()
            if ge:
                prune.append(i)
        return False, False, prune
    m = view[1][:n]
    le = (m <= vec).all(axis=1)
    ge = (m >= vec).all(axis=1)
    if bool((le & ge).any()):
        return True, False, ()
    if bool((le & ~ge).any()):
        return False, True, ()
    return False, False, np.nonzero(ge & ~le)[0]


def any_dominator(view, vec, tup) -> bool:
    """True iff some row of the view strictly dominates the probe."""
    n = view[5]
    if n == 0:
        return False
    if n <= _SMALL_SCAN:
        gt = view[3]
        for i in range(n):
            r = gt[i]
            le = ge = True
            for x, y in zip(r, tup):
                if x > y:
                    le = False
                    break
                if x < y:
                    ge = False
            if le and not ge:
                return True
        return False
    m = view[1][:n]
    le = (m <= vec).all(axis=1)
    ge = (m >= vec).all(axis=1)
    return bool((le & ~ge).any())


def collect_dominated_f(view, vec, tup):
    """Row positions whose priority vector is dominated by the probe."""
    n = view[5]
    if n == 0:
        return ()
    if n <= _SMALL_SCAN:
        ft = view[4]
        out = []
        for i in range(n):
            r = ft[i]
            le = ge = True
            for x, y in zip(tup, r):
                if x > y:
                    le = False
                    break
                if x < y:
                    ge = False
            if le and not ge:
                out.append(i)
        return out
    m = view[2][:n]
    le = (vec <= m).all(axis=1)
    ge = (vec >= m).all(axis=1)
    return np.nonzero(le & ~ge)[0]


class FrontierStore:
    """Per-node open/closed label sets plus the goal front."""

    __slots__ = ("open_sets", "closed_sets", "front", "visited")

    def __init__(self, num_nodes: int, d: int):
        self.open_sets = [PackedSet(d, True, IN_OPEN) for _ in range(num_nodes)]
        self.closed_sets = [PackedSet(d, False, CLOSED) for _ in range(num_nodes)]
        self.front = PackedSet(d, False, IN_FRONT)
        self.visited = bytearray(num_nodes)

    def live_open_ids(self, arena, u) -> list[int]:
        return self.open_sets[u].live_ids(arena)

    def live_closed_ids(self, arena, u) -> list[int]:
        return self.closed_sets[u].live_ids(arena)

    def live_front_ids(self, arena) -> list[int]:
        return self.front.live_ids(arena)


def not_dominated(arena: LabelArena, cost: Sequence[float], label_ids) -> bool:
    """True unless some READY label among ``label_ids`` dominates ``cost``."""
    c = tuple(cost)
    for lid in label_ids:
        if arena.test(lid, READY) and dominates(arena.g_tuple(lid), c):
            return False
    return True


def prune_set(arena: LabelArena, label_ids: set, cost: Sequence[float]) -> list[int]:
    """Remove from ``label_ids`` every label dominated by ``cost``.

    Returns the removed ids so the caller can propagate the removal to
    the open queue or other bookkeeping.
    """
    c = tuple(cost)
    removed = [lid for lid in label_ids
               if arena.test(lid, READY) and dominates(c, arena.g_tuple(lid))]
    for lid in removed:
        label_ids.discard(lid)
    return removed


def is_duplicate(arena: LabelArena, cost: Sequence[float], node: int,
                 fs: FrontierStore) -> bool:
    """True iff some open or closed label at ``node`` has exactly this cost."""
    c = tuple(cost)
    for lid in fs.live_open_ids(arena, node):
        if arena.g_tuple(lid) == c:
            return True
    for lid in fs.live_closed_ids(arena, node):
        if arena.g_tuple(lid) == c:
            return True
    return False


def reconstruct_path(arena: LabelArena, lid: int) -> list[int]:
    """Node sequence from the start label to ``lid`` via parent links."""
    path = []
    cur = lid
    steps = 0
    while cur != -1:
        path.append(arena.node_of(cur))
        cur = arena.parent_of(cur)
        steps += 1
        assert steps <= arena.n, "parent chain corrupt (cycle)"
    path.reverse()
    return path


class LazyLexQueue:
    """Lexicographic min-queue without keyed removal.

    Pops may surface labels that were lazily pruned after insertion; the
    caller checks the PRUNED flag and discards them.
    """

    __slots__ = ("_h",)

    def __init__(self):
        self._h: list[tuple] = []

    def push(self, lid, key):
        _heappush(self._h, (key, lid))

    def pop(self):
        return _heappop(self._h)

    def __len__(self):
        return len(self._h)


class IndexedLexQueue:
    """Lexicographic min-queue with keyed removal (positional binary heap).

    Entries are ``(key, lid)`` pairs ordered by key, then id.  ``entries``
    exposes the raw heap for full-index scans; callers must defer any
    ``remove`` until after the scan completes.
    """

    __slots__ = ("_e", "_pos")

    def __init__(self):
        self._e: list[tuple] = []
        self._pos: dict[int, int] = {}

    def __len__(self):
        return len(self._e)

    def entries(self):
        return iter(self._e)

    def push(self, lid, key):
        e = (key, lid)
        self._e.append(e)
        self._pos[lid] = len(self._e) - 1
        self._siftdown(0, len(self._e) - 1)

    def pop(self):
        e = self._e
        last = e.pop()
        if not e:
            del self._pos[last[1]]
            return last
        top = e[0]
        del self._pos[top[1]]
        e[0] = last
        self._pos[last[1]] = 0
        self._siftup(0)
        return top

    def remove(self, lid) -> bool:
        pos = self._pos.pop(lid, None)
        if pos is None:
            return False
        e = self._e
        last = e.pop()
        if pos == len(e):
            return True
        e[pos] = last
        self._pos[last[1]] = pos
        self._siftup(pos)
        self._siftdown(0, self._pos[last[1]])
        return True

    def _siftdown(self, startpos, pos):
        e = self._e
        item = e[pos]
        while pos > startpos:
            parentpos = (pos - 1) >> 1
            parent = e[parentpos]
            if item < parent:
                e[pos] = parent
                self._pos[parent[1]] = pos
                pos = parentpos
                continue
            break
        e[pos] = item
        self._pos[item[1]] = pos

    def _siftup(self, pos):
        e = self._e
        endpos = len(e)
        item = e[pos]
        childpos = 2 * pos + 1
        while childpos < endpos:
            rightpos = childpos + 1
            if rightpos < endpos and e[rightpos] < e[childpos]:
                childpos = rightpos
            if e[childpos] < item:
                e[pos] = e[childpos]
                self._pos[e[pos][1]] = pos
                pos = childpos
                childpos = 2 * pos + 1
            else:
                break
        e[pos] = item
        self._pos[item[1]] = pos


class FifoQueue:
    """Insertion-ordered queue with O(1) keyed removal."""

    __slots__ = ("_d",)

    def __init__(self):
        self._d: OrderedDict[int, tuple] = OrderedDict()

    def __len__(self):
        return len(self._d)

    def entries(self):
        return ((key, lid) for lid, key in self._d.items())

    def push(self, lid, key):
        self._d[lid] = key

    def pop(self):
        lid, key = self._d.popitem(last=False)
        return key, lid

    def remove(self, lid) -> bool:
        return self._d.pop(lid, None) is not None


def make_queue(kind: str, removable: bool):
    """Open-queue factory: ``kind`` in {"pq", "fifo"}."""
    if kind == "pq":
        return IndexedLexQueue() if removable else LazyLexQueue()
    if kind == "fifo":
        return FifoQueue()
    raise ValueError(f"unknown queue kind: {kind!r}")
