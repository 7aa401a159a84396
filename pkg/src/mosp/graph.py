"""Multi-objective graph model: file format, validation, heuristics, generators.

The on-disk format is MOG v1, a whitespace-separated text format with
``#`` comments::

    MOG 1
    nodes <N> edges <E> objectives <d>
    source <id> goal <id>
    edge <u> <v> <c1> ... <cd>        (E lines)
    h <v> <h1> ... <hd>               (optional, N lines)

Node ids are 0-based.  Costs are decimal, non-negative and finite.
Graphs are immutable after construction; heuristic computation returns a
new graph rather than mutating shared state, so a constructed graph can
be shared across threads without synchronization.
"""

from __future__ import annotations

import dataclasses
import heapq
import math
import random
import re
from dataclasses import dataclass
from math import isqrt

import numpy as np


class GraphFormatError(Exception):
    """Raised for malformed MOG input; carries a 1-based line/column."""

    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}" + (f", col {col}" if col is not None else "")
            where += ": "
        super().__init__(where + message)


class GraphValidationError(Exception):
    """Raised when a structurally parsed graph violates an invariant."""


@dataclass(frozen=True)
class Graph:
    """Immutable directed graph with d-dimensional non-negative edge costs.

    ``adjacency[u]`` lists ``(v, edge_id)`` pairs; ``edge_costs[edge_id]``
    is the cost vector.  ``heuristics`` is a per-node lower-bound vector
    on remaining cost to the goal, or None until computed; rows of +inf
    mark nodes that cannot reach the goal.
    """

    num_nodes: int
    num_objectives: int
    adjacency: list
    edge_tail: np.ndarray
    edge_head: np.ndarray
    edge_costs: np.ndarray
    source: int
    goal: int
    heuristics: np.ndarray | None = None

    @property
    def num_edges(self) -> int:
        return len(self.edge_costs)

    def reachable_mask(self) -> np.ndarray:
        """Per-node bool: can this node reach the goal?  Requires heuristics."""
        if self.heuristics is None:
            raise ValueError("heuristics not computed")
        return np.isfinite(self.heuristics[:, 0])


@dataclass(frozen=True)
class GenParams:
    """Parameters for the deterministic synthetic generator.

    ``correlation`` in [-1, 1] steers how objectives relate per edge:
    +1 makes all components of an edge cost equal (fronts collapse to a
    single entry), -1 makes odd and even objectives move in opposition
    (fronts grow large), 0 draws them independently.
    """

    topology: str = "random-digraph"
    num_nodes: int = 50
    avg_out_degree: int = 4
    num_objectives: int = 2
    correlation: float = 0.0
    seed: int = 0

    def validate(self):
        if self.topology not in ("grid", "random-digraph"):
            raise ValueError(f"unknown topology: {self.topology!r}")
        if self.num_nodes < 2:
            raise ValueError("num_nodes must be >= 2")
        if self.num_objectives < 1:
            raise ValueError("num_objectives must be >= 1")
        if not -1.0 <= self.correlation <= 1.0:
            raise ValueError("correlation must be in [-1, 1]")
        if self.topology == "random-digraph" and self.avg_out_degree >= self.num_nodes:
            raise ValueError("avg_out_degree must be < num_nodes")
        if self.avg_out_degree < 1:
            raise ValueError("avg_out_degree must be >= 1")


def build_graph(num_nodes, num_objectives, edges, source, goal,
                heuristics=None) -> Graph:
    """Construct and validate a graph from ``(u, v, cost_vector)`` triples."""
    adjacency = [[] for _ in range(num_nodes)]
    tails = np.empty(len(edges), np.int64)
    heads = np.empty(len(edges), np.int64)
    costs = np.empty((len(edges), num_objectives))
    for eid, (u, v, c) in enumerate(edges):
        tails[eid] = u
        heads[eid] = v
        if len(c) != num_objectives:
            raise GraphValidationError(
                f"edge {eid}: expected {num_objectives} cost components, got {len(c)}")
        costs[eid] = c
    g = Graph(num_nodes, num_objectives, adjacency, tails, heads, costs,
              source, goal,
              None if heuristics is None else np.asarray(heuristics, float))
    for eid in range(len(edges)):
        u, v = int(tails[eid]), int(heads[eid])
        if not (0 <= u < num_nodes and 0 <= v < num_nodes):
            raise GraphValidationError(f"edge {eid}: dangling node id ({u} -> {v})")
        adjacency[u].append((v, eid))
    validate_graph(g)
    return g


def validate_graph(g: Graph):
    """Check graph invariants; raises GraphValidationError on violation."""
    if g.num_objectives < 1:
        raise GraphValidationError("objective count must be >= 1")
    if not (0 <= g.source < g.num_nodes and 0 <= g.goal < g.num_nodes):
        raise GraphValidationError("source/goal outside node range")
    costs = g.edge_costs
    if costs.size:
        if not np.isfinite(costs).all():
            raise GraphValidationError("non-finite cost component")
        if (costs < 0).any():
            eid = int(np.nonzero((costs < 0).any(axis=1))[0][0])
            raise GraphValidationError(f"edge {eid}: negative cost component")
    for eid in range(g.num_edges):
        if g.edge_tail[eid] == g.edge_head[eid] and not costs[eid].any():
            raise GraphValidationError(
                f"edge {eid}: zero-cost self-loop is not allowed")
    if g.heuristics is not None:
        h = g.heuristics
        if h.shape != (g.num_nodes, g.num_objectives):
            raise GraphValidationError("heuristic table has wrong shape")
        if (h[g.goal] != 0).any():
            raise GraphValidationError("heuristic at the goal must be zero")
        finite = np.isfinite(h)
        if (h[finite] < 0).any():
            raise GraphValidationError("negative heuristic component")
        if not check_heuristic_consistency(g):
            raise GraphValidationError("heuristic violates edge consistency")


def check_heuristic_consistency(g: Graph) -> bool:
    """Full edge scan: h(u)[i] <= c(u,v)[i] + h(v)[i] for every edge, exactly."""
    h = g.heuristics
    if h is None:
        return False
    for eid in range(g.num_edges):
        u, v = int(g.edge_tail[eid]), int(g.edge_head[eid])
        hu, hv, c = h[u], h[v], g.edge_costs[eid]
        for i in range(g.num_objectives):
            if hu[i] > c[i] + hv[i]:
                return False
    return True


def compute_heuristic(g: Graph) -> Graph:
    """Per-objective reverse shortest-path preprocessing.

    For each objective independently, runs Dijkstra from the goal over
    reversed edges using only that objective's component.  Nodes that
    cannot reach the goal get +inf rows and are skipped by the solvers.
    Idempotent: recomputing yields the same table.
    """
    rev = [[] for _ in range(g.num_nodes)]
    for eid in range(g.num_edges):
        rev[int(g.edge_head[eid])].append((int(g.edge_tail[eid]), eid))
    h = np.full((g.num_nodes, g.num_objectives), math.inf)
    for i in range(g.num_objectives):
        dist = h[:, i]
        dist[g.goal] = 0.0
        heap = [(0.0, g.goal)]
        while heap:
            du, u = heapq.heappop(heap)
            if du > dist[u]:
                continue
            for v, eid in rev[u]:
                nd = du + g.edge_costs[eid, i]
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
    return dataclasses.replace(g, heuristics=h)


_TOKEN = re.compile(r"\S+")


def _tokenize(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.group(0), lineno, m.start() + 1) for m in _TOKEN.finditer(body)]
        if toks:
            yield toks


def _want_int(tok, what):
    word, line, col = tok
    try:
        return int(word)
    except ValueError:
        raise GraphFormatError(f"expected integer {what}, got {word!r}", line, col)


def _want_float(tok, what):
    word, line, col = tok
    try:
        return float(word)
    except ValueError:
        raise GraphFormatError(f"expected number {what}, got {word!r}", line, col)


def load_graph(path) -> Graph:
    """Parse and validate a MOG v1 file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_graph(text)


def parse_graph(text: str) -> Graph:
    lines = list(_tokenize(text))
    pos = 0

    def next_line(expect):
        nonlocal pos
        if pos >= len(lines):
            raise GraphFormatError(f"unexpected end of file, expected {expect}")
        toks = lines[pos]
        pos += 1
        return toks

    toks = next_line("'MOG 1' header")
    if [t[0] for t in toks] != ["MOG", "1"]:
        raise GraphFormatError("expected 'MOG 1' header", toks[0][1], toks[0][2])

    toks = next_line("'nodes N edges E objectives d'")
    if len(toks) != 6 or toks[0][0] != "nodes" or toks[2][0] != "edges" \
            or toks[4][0] != "objectives":
        raise GraphFormatError("expected 'nodes N edges E objectives d'",
                               toks[0][1], toks[0][2])
    n = _want_int(toks[1], "node count")
    m = _want_int(toks[3], "edge count")
    d = _want_int(toks[5], "objective count")
    if n < 1 or m < 0 or d < 1:
        raise GraphFormatError("counts out of range", toks[0][1], toks[0][2])

    toks = next_line("'source i goal j'")
    if len(toks) != 4 or toks[0][0] != "source" or toks[2][0] != "goal":
        raise GraphFormatError("expected 'source i goal j'", toks[0][1], toks[0][2])
    source = _want_int(toks[1], "source id")
    goal = _want_int(toks[3], "goal id")

    edges = []
    for k in range(m):
        toks = next_line(f"edge record {k + 1} of {m}")
        if toks[0][0] != "edge" or len(toks) != 3 + d:
            raise GraphFormatError(
                f"expected 'edge u v' followed by {d} costs", toks[0][1], toks[0][2])
        u = _want_int(toks[1], "edge tail")
        v = _want_int(toks[2], "edge head")
        c = [_want_float(t, "edge cost") for t in toks[3:]]
        for t, x in zip(toks[3:], c):
            if x < 0:
                raise GraphFormatError("negative cost", t[1], t[2])
            if not math.isfinite(x):
                raise GraphFormatError("non-finite cost", t[1], t[2])
        edges.append((u, v, c))

    heur = None
    if pos < len(lines):
        heur = np.full((n, d), math.nan)
        seen = 0
        while pos < len(lines):
            toks = next_line("heuristic record")
            if toks[0][0] != "h" or len(toks) != 2 + d:
                raise GraphFormatError(
                    f"expected 'h v' followed by {d} values", toks[0][1], toks[0][2])
            v = _want_int(toks[1], "node id")
            if not 0 <= v < n:
                raise GraphFormatError(f"heuristic node id {v} out of range",
                                       toks[1][1], toks[1][2])
            heur[v] = [_want_float(t, "heuristic value") for t in toks[2:]]
            seen += 1
        if seen != n or np.isnan(heur).any():
            raise GraphFormatError(
                f"heuristic section must cover every node exactly once "
                f"({seen} records for {n} nodes)")

    return build_graph(n, d, edges, source, goal, heuristics=heur)


def _fmt(x: float) -> str:
    return repr(float(x))


def write_graph(g: Graph, path):
    """Serialize a graph in MOG v1 form (deterministic byte output)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_graph(g))


def dump_graph(g: Graph) -> str:
    out = ["MOG 1",
           f"nodes {g.num_nodes} edges {g.num_edges} objectives {g.num_objectives}",
           f"source {g.source} goal {g.goal}"]
    for eid in range(g.num_edges):
        cost = " ".join(_fmt(x) for x in g.edge_costs[eid])
        out.append(f"edge {int(g.edge_tail[eid])} {int(g.edge_head[eid])} {cost}")
    if g.heuristics is not None:
        for v in range(g.num_nodes):
            row = " ".join(_fmt(x) for x in g.heuristics[v])
            out.append(f"h {v} {row}")
    return "\n".join(out) + "\n"


def goal_reachable(g: Graph) -> bool:
    """BFS check that the goal is reachable from the source."""
    seen = bytearray(g.num_nodes)
    seen[g.source] = 1
    stack = [g.source]
    while stack:
        u = stack.pop()
        if u == g.goal:
            return True
        for v, _ in g.adjacency[u]:
            if not seen[v]:
                seen[v] = 1
                stack.append(v)
    return False


_COST_LO = 0.5
_COST_HI = 10.0


def _edge_cost(rng: random.Random, d: int, corr: float) -> list[float]:
    base = rng.random()
    w = abs(corr)
    cost = []
    for i in range(d):
        e = rng.random()
        anchor = base if (corr >= 0 or i % 2 == 0) else 1.0 - base
        x = w * anchor + (1.0 - w) * e
        cost.append(_COST_LO + (_COST_HI - _COST_LO) * x)
    return cost


def generate_synthetic(p: GenParams) -> Graph:
    """Deterministic synthetic instance: same params, bit-identical graph.

    Grid topology lays nodes on the largest W x H lattice with
    W = isqrt(num_nodes) and H = num_nodes // W (the node count is rounded
    down to W*H), edges pointing right and down, source at the top-left
    and goal at the bottom-right corner, so the goal is reachable by
    construction.  Random digraphs sample ``avg_out_degree`` distinct
    targets per node and, if needed, stitch a short extra path from
    source to goal to guarantee reachability.
    """
    p.validate()
    rng = random.Random(p.seed)
    d = p.num_objectives
    if p.topology == "grid":
        w = max(1, isqrt(p.num_nodes))
        h = max(1, p.num_nodes // w)
        if w * h < 2:
            h = 2
        n = w * h
        edges = []
        for r in range(h):
            for c in range(w):
                u = r * w + c
                if c + 1 < w:
                    edges.append((u, u + 1, _edge_cost(rng, d, p.correlation)))
                if r + 1 < h:
                    edges.append((u, u + w, _edge_cost(rng, d, p.correlation)))
        return build_graph(n, d, edges, 0, n - 1)

    n = p.num_nodes
    edges = []
    for u in range(n):
        k = min(p.avg_out_degree, n - 1)
        others = [v for v in range(n) if v != u]
        for v in rng.sample(others, k):
            edges.append((u, v, _edge_cost(rng, d, p.correlation)))
    source, goal = 0, n - 1
    g = build_graph(n, d, edges, source, goal)
    if not goal_reachable(g):
        mids = rng.sample(range(1, n - 1), min(2, max(0, n - 2)))
        chain = [source, *mids, goal]
        for a, b in zip(chain, chain[1:]):
            edges.append((a, b, _edge_cost(rng, d, p.correlation)))
        g = build_graph(n, d, edges, source, goal)
    return g
