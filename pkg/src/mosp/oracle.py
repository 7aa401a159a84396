"""Independent brute-force Pareto-front computation and front comparison.

The enumeration shares no code with the solvers: it walks every
node-simple path from source to goal by depth-first search and filters
the collected cost vectors pairwise.  Restriction to node-simple paths
is sound because edge costs are non-negative and instances with
zero-cost cycles are rejected: revisiting a node can only add cost (or,
for an all-zero cycle, duplicate a cost vector, which the cost-unique
front discards anyway -- and such cycles are refused up front).
Heuristic values are never read.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph

ORACLE_NODE_LIMIT = 14


class OracleGuardError(Exception):
    """Raised when an instance is too large for exhaustive enumeration."""


@dataclass
class FrontDiff:
    """Exact set difference between two cost-vector fronts."""

    only_in_a: list = field(default_factory=list)
    only_in_b: list = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return not self.only_in_a and not self.only_in_b


def _has_zero_cost_cycle(g: Graph) -> bool:
    zero_adj = [[] for _ in range(g.num_nodes)]
    for eid in range(g.num_edges):
        if not g.edge_costs[eid].any():
            zero_adj[int(g.edge_tail[eid])].append(int(g.edge_head[eid]))
    color = [0] * g.num_nodes  # 0 unseen, 1 on stack, 2 done
    for root in range(g.num_nodes):
        if color[root]:
            continue
        stack = [(root, iter(zero_adj[root]))]
        color[root] = 1
        while stack:
            u, it = stack[-1]
            advanced = False
            for v in it:
                if color[v] == 1:
                    return True
                if color[v] == 0:
                    color[v] = 1
                    stack.append((v, iter(zero_adj[v])))
                    advanced = True
                    break
            if not advanced:
                color[u] = 2
                stack.pop()
    return False


def brute_force_pareto(g: Graph, max_hops: int | None = None,
                       allow_large: bool = False) -> set[tuple]:
    """Cost-unique Pareto front by exhaustive node-simple path enumeration.

    Guarded to instances of at most ORACLE_NODE_LIMIT nodes unless
    ``allow_large`` overrides.  ``max_hops`` bounds path length in edges
    (default: num_nodes - 1, which covers every node-simple path).
    """
    if g.num_nodes > ORACLE_NODE_LIMIT and not allow_large:
        raise OracleGuardError(
            f"{g.num_nodes} nodes exceeds the enumeration guard "
            f"({ORACLE_NODE_LIMIT}); pass allow_large to override")
    if _has_zero_cost_cycle(g):
        raise OracleGuardError("graph has a zero-cost cycle; enumeration of "
                               "node-simple paths would not be exhaustive")
    if max_hops is None:
        max_hops = g.num_nodes - 1
    costs = [tuple(float(x) for x in g.edge_costs[eid])
             for eid in range(g.num_edges)]
    found: list[tuple] = []
    on_path = bytearray(g.num_nodes)

    def walk(u, acc, hops):
        if u == g.goal:
            found.append(acc)
            return
        if hops == max_hops:
            return
        on_path[u] = 1
        for v, eid in g.adjacency[u]:
            if on_path[v]:
                continue
            walk(v, tuple(a + b for a, b in zip(acc, costs[eid])), hops + 1)
        on_path[u] = 0

    walk(g.source, (0.0,) * g.num_objectives, 0)
    front: set[tuple] = set()
    for c in found:
        dominated = False
        for other in found:
            if other != c and all(x <= y for x, y in zip(other, c)):
                dominated = True
                break
        if not dominated:
            front.add(c)
    return front


def compare_fronts(a, b) -> FrontDiff:
    """Order-insensitive exact comparison of two cost-vector sets."""
    sa = {tuple(c) for c in a}
    sb = {tuple(c) for c in b}
    dims = {len(c) for c in sa | sb}
    if len(dims) > 1:
        raise ValueError(f"objective-count mismatch between fronts: {sorted(dims)}")
    return FrontDiff(only_in_a=sorted(sa - sb), only_in_b=sorted(sb - sa))
