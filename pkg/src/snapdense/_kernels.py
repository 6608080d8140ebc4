"""Hot numeric kernels: plain loops over numpy arrays, numba-compiled when
enabled (see ``accel``).  Everything here must stay valid as interpreted
python so the fallback path gives identical results.
"""

import numpy as np

from .accel import maybe_jit


@maybe_jit
def count_induced_edges(indptr, indices, mask):
    """Number of edges with both endpoints selected by mask (each edge once)."""
    total = 0
    for u in range(indptr.size - 1):
        if mask[u]:
            for p in range(indptr[u], indptr[u + 1]):
                w = indices[p]
                if w > u and mask[w]:
                    total += 1
    return total


@maybe_jit
def induced_degrees(indptr, indices, mask):
    """Degree of every selected vertex inside the induced subgraph.

    Entries of unselected vertices are 0.
    """
    deg = np.zeros(indptr.size - 1, np.int64)
    for u in range(indptr.size - 1):
        if mask[u]:
            d = 0
            for p in range(indptr[u], indptr[u + 1]):
                if mask[indices[p]]:
                    d += 1
            deg[u] = d
    return deg


@maybe_jit
def subset_edge_counts(nbr):
    """Tables E[mask], pc[mask] for every vertex subset of a small graph.

    nbr[v] is the adjacency bitmask of vertex v; E[mask] counts edges with
    both endpoints in mask, pc[mask] is the subset size.  Only sane for
    nbr.size <= ~22.
    """
    n = nbr.size
    size = 1 << n
    edge_cnt = np.zeros(size, np.int64)
    pc = np.zeros(size, np.int64)
    for mask in range(1, size):
        low = mask & (-mask)
        rest = mask ^ low
        b = 0
        while (low >> b) & 1 == 0:
            b += 1
        pc[mask] = pc[rest] + 1
        edge_cnt[mask] = edge_cnt[rest] + pc[nbr[b] & rest]
    return edge_cnt, pc


@maybe_jit
def densest_scan(edge_cnt, pc):
    """Exhaustive max-density subset given precomputed tables.

    Density compared exactly by cross multiplication; ties prefer smaller
    size, then the smaller bitmask (scan order is ascending).
    """
    best_mask = 1
    best_e = 0
    best_s = 1
    for mask in range(1, edge_cnt.size):
        e = edge_cnt[mask]
        s = pc[mask]
        if e * best_s > best_e * s or (e * best_s == best_e * s and s < best_s):
            best_mask = mask
            best_e = e
            best_s = s
    return best_mask, best_e, best_s


@maybe_jit
def jwds_enum(dens, pc, lam):
    """Exhaustive search over all nonempty subset choices per snapshot.

    dens[i, mask] is the density of the subset in snapshot i; the objective
    adds lam times every pairwise Jaccard index.  States are visited in
    lexicographically ascending (mask_1, ..., mask_k) order and strict
    improvement keeps the first maximizer, so ties resolve to the smallest
    encoding.  Returns (best_masks, best_score, states_examined).
    """
    k = dens.shape[0]
    top = dens.shape[1] - 1
    masks = np.ones(k, np.int64)
    best = np.ones(k, np.int64)
    best_score = -1.0
    states = 0
    while True:
        states += 1
        d = 0.0
        for i in range(k):
            d += dens[i, masks[i]]
        jac = 0.0
        for i in range(k):
            for j in range(i + 1, k):
                jac += pc[masks[i] & masks[j]] / pc[masks[i] | masks[j]]
        s = d + lam * jac
        if s > best_score:
            best_score = s
            for i in range(k):
                best[i] = masks[i]
        d = k - 1
        while d >= 0:
            if masks[d] < top:
                masks[d] += 1
                break
            masks[d] = 1
            d -= 1
        if d < 0:
            return best, best_score, states


@maybe_jit
def dinic_maxflow(head, nxt, to, cap, source, sink):
    """Max flow on an arc-list residual graph; arc i pairs with arc i^1.

    Mutates cap in place to the residual capacities and returns the flow
    value.
    """
    n = head.size
    level = np.empty(n, np.int64)
    it = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    stack = np.empty(n + 1, np.int64)
    total = 0
    while True:
        for i in range(n):
            level[i] = -1
        level[source] = 0
        queue[0] = source
        qh = 0
        qt = 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            e = head[u]
            while e != -1:
                v = to[e]
                if cap[e] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[qt] = v
                    qt += 1
                e = nxt[e]
        if level[sink] < 0:
            return total
        for i in range(n):
            it[i] = head[i]
        depth = 0
        v = source
        while True:
            if v == sink:
                b = cap[stack[0]]
                for i in range(1, depth):
                    if cap[stack[i]] < b:
                        b = cap[stack[i]]
                for i in range(depth):
                    a = stack[i]
                    cap[a] -= b
                    cap[a ^ 1] += b
                total += b
                i = 0
                while cap[stack[i]] > 0:
                    i += 1
                depth = i
                v = to[stack[i] ^ 1]
                continue
            e = it[v]
            while e != -1 and not (cap[e] > 0 and level[to[e]] == level[v] + 1):
                e = nxt[e]
            it[v] = e
            if e == -1:
                if v == source:
                    break
                level[v] = -1
                depth -= 1
                pe = stack[depth]
                v = to[pe ^ 1]
                it[v] = nxt[pe]
            else:
                stack[depth] = e
                depth += 1
                v = to[e]


@maybe_jit
def residual_reachable(head, nxt, to, cap, source):
    """Vertices reachable from source through positive residual capacity."""
    n = head.size
    seen = np.zeros(n, np.bool_)
    queue = np.empty(n, np.int64)
    seen[source] = True
    queue[0] = source
    qh = 0
    qt = 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        e = head[u]
        while e != -1:
            v = to[e]
            if cap[e] > 0 and not seen[v]:
                seen[v] = True
                queue[qt] = v
                qt += 1
            e = nxt[e]
    return seen
