"""Exact maximum-density vertex set of a weighted graph via min-cut.

The decision "is there a set with density above c / (n (n-1))" reduces to a
source/sink max-flow instance; binary search over the integer numerator c
pins the optimum because two distinct density values of an integer-weighted
graph on n vertices differ by at least 1 / (n (n-1)).  All capacities are
pre-scaled by 2 n (n-1) so every comparison stays in integer arithmetic.
"""

import numpy as np

from ._kernels import dinic_maxflow, residual_reachable


class FlowNetwork:
    """Arc-list flow network; arc i and arc i^1 are a residual pair."""

    def __init__(self, num_nodes):
        self.num_nodes = num_nodes
        self.head = np.full(num_nodes, -1, dtype=np.int64)
        self._nxt = []
        self._to = []

    def add_edge(self, u, v):
        """Append the arc pair u->v, v->u; capacities are supplied at solve
        time, indexed in insertion order."""
        for a, b in ((u, v), (v, u)):
            self._nxt.append(self.head[a])
            self.head[a] = len(self._to)
            self._to.append(b)

    def freeze(self):
        self.nxt = np.asarray(self._nxt, dtype=np.int64)
        self.to = np.asarray(self._to, dtype=np.int64)
        return self

    def max_flow(self, cap, s, t):
        """Flow value and residual capacities for the given capacity vector."""
        residual = cap.astype(np.int64).copy()
        value = dinic_maxflow(self.head, self.nxt, self.to, residual, s, t)
        return int(value), residual

    def min_cut_source_side(self, residual, s):
        return residual_reachable(self.head, self.nxt, self.to, residual, s)


def densest_subgraph_exact(n, edges, weights=None):
    """Vertex set maximizing total induced edge weight over set size.

    edges is an (m, 2) integer array of distinct undirected pairs; weights
    default to 1.  Returns a sorted vertex-id array; a graph without edges
    yields a single vertex (density 0).
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if weights is None:
        weights = np.ones(len(edges), dtype=np.int64)
    weights = np.asarray(weights, dtype=np.int64)
    total_w = int(weights.sum())
    if n == 1 or total_w == 0:
        return np.array([0], dtype=np.int64)

    deg_w = np.zeros(n, dtype=np.int64)
    np.add.at(deg_w, edges[:, 0], weights)
    np.add.at(deg_w, edges[:, 1], weights)

    source, sink = n, n + 1
    net = FlowNetwork(n + 2)
    for v in range(n):
        net.add_edge(source, v)
    for v in range(n):
        net.add_edge(v, sink)
    for u, v in edges:
        net.add_edge(int(u), int(v))
    net.freeze()

    denom = n * (n - 1)
    scale = 2 * denom
    base = np.zeros(net.to.size, dtype=np.int64)
    base[0 : 2 * n : 2] = scale * total_w                      # source -> v
    base[2 * n : 4 * n : 2] = scale * total_w - scale * deg_w  # v -> sink, plus 4c
    # undirected edge arcs carry the scaled weight in both directions
    base[4 * n :] = scale * np.repeat(weights, 2)

    saturated = n * scale * total_w

    def admits_denser(c):
        cap = base.copy()
        cap[2 * n : 4 * n : 2] += 4 * c
        value, residual = net.max_flow(cap, source, sink)
        return value < saturated, residual

    lo, hi = 0, total_w * denom
    while hi - lo > 1:
        mid = (lo + hi) // 2
        yes, _ = admits_denser(mid)
        if yes:
            lo = mid
        else:
            hi = mid
    yes, residual = admits_denser(lo)
    assert yes
    reach = net.min_cut_source_side(residual, source)
    members = np.flatnonzero(reach[:n]).astype(np.int64)
    assert members.size >= 1
    return members
