"""Temporal graph data model: a sequence of undirected snapshots over one
shared vertex universe, with text ingestion.

Vertices carry external string labels; internally they are dense integer
ids assigned by sorting the labels lexicographically (deterministic across
runs).  Vertices missing from a snapshot's edge file are isolated there.
"""

import logging
import os

import numpy as np

from ._kernels import count_induced_edges, induced_degrees

log = logging.getLogger(__name__)

TRIPLES = "triples"
PER_SNAPSHOT = "dir"


class FormatError(ValueError):
    """Malformed input file; message carries the offending line number."""


class Snapshot:
    """One undirected simple graph in CSR form over n vertices.

    Adjacency lists are sorted, symmetric, without self-loops or duplicate
    edges.  ``m`` is the edge count.
    """

    __slots__ = ("n", "indptr", "indices", "m")

    def __init__(self, n, indptr, indices):
        self.n = n
        self.indptr = indptr
        self.indices = indices
        self.m = indices.size // 2

    @classmethod
    def from_edges(cls, n, edges):
        """Build from an iterable of (u, v) pairs.

        Self-loops are dropped and duplicates collapsed silently; loaders
        count them before calling this.
        """
        pairs = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if pairs.size:
            pairs = pairs[pairs[:, 0] != pairs[:, 1]]
        if pairs.size:
            lo = np.minimum(pairs[:, 0], pairs[:, 1])
            hi = np.maximum(pairs[:, 0], pairs[:, 1])
            pairs = np.unique(np.stack([lo, hi], axis=1), axis=0)
            both = np.concatenate([pairs, pairs[:, ::-1]])
        else:
            both = np.empty((0, 2), dtype=np.int64)
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, both[:, 0] + 1, 1)
        np.cumsum(indptr, out=indptr)
        return cls(n, indptr, both[:, 1].copy())

    def neighbors(self, v):
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degree(self, v):
        return int(self.indptr[v + 1] - self.indptr[v])

    def edges(self):
        """(m, 2) array of edges with u < v, sorted."""
        u = np.repeat(np.arange(self.n), np.diff(self.indptr))
        keep = u < self.indices
        return np.stack([u[keep], self.indices[keep]], axis=1)

    def induced_degrees(self, mask):
        return induced_degrees(self.indptr, self.indices, mask)

    def check(self):
        assert self.m * 2 == self.indices.size
        rev = {}
        for u in range(self.n):
            for w in self.neighbors(u):
                assert w != u, "self-loop"
                rev.setdefault((min(u, w), max(u, w)), 0)
                rev[(min(u, w), max(u, w))] += 1
        assert all(c == 2 for c in rev.values()), "asymmetric adjacency"
        assert len(rev) == self.m


def induced_edge_count(snapshot, s):
    """|E(S)|: edges of the snapshot with both endpoints in s.

    s may be a boolean mask of length n or any iterable of vertex ids.
    """
    mask = as_mask(snapshot.n, s)
    return int(count_induced_edges(snapshot.indptr, snapshot.indices, mask))


def as_mask(n, s):
    """Normalize a vertex set to a boolean membership array of length n."""
    if isinstance(s, (set, frozenset)):
        s = sorted(s)
    arr = np.asarray(s)
    if arr.dtype == np.bool_:
        if arr.size != n:
            raise ValueError(f"mask length {arr.size} != n {n}")
        return arr
    arr = arr.astype(np.int64).reshape(-1)
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError("vertex id out of range")
    mask = np.zeros(n, dtype=np.bool_)
    mask[arr] = True
    return mask


class TemporalGraph:
    """k snapshots over a shared vertex universe of size n.

    Immutable after construction; snapshots share the id space defined by
    ``labels`` (id -> name) and ``label_index`` (name -> id).
    """

    def __init__(self, snapshots, labels, self_loops_dropped=0):
        if not snapshots:
            raise ValueError("need at least one snapshot")
        n = snapshots[0].n
        if any(s.n != n for s in snapshots):
            raise ValueError("snapshots disagree on vertex count")
        if n < 1:
            raise ValueError("need at least one vertex")
        self.n = n
        self.snapshots = list(snapshots)
        self.labels = list(labels)
        self.label_index = {name: i for i, name in enumerate(self.labels)}
        self.self_loops_dropped = self_loops_dropped

    @property
    def k(self):
        return len(self.snapshots)

    @property
    def edge_counts(self):
        return [s.m for s in self.snapshots]

    @classmethod
    def from_edge_labels(cls, snapshot_edges, self_loops_dropped=0):
        """Build from k lists of (label_u, label_v) pairs.

        The vertex universe is the union of endpoint labels over all
        snapshots, sorted lexicographically before id assignment.
        """
        names = set()
        for edges in snapshot_edges:
            for u, v in edges:
                names.add(u)
                names.add(v)
        if not names:
            raise ValueError("no vertices found")
        labels = sorted(names)
        index = {name: i for i, name in enumerate(labels)}
        n = len(labels)
        snaps = [
            Snapshot.from_edges(n, [(index[u], index[v]) for u, v in edges])
            for edges in snapshot_edges
        ]
        return cls(snaps, labels, self_loops_dropped)

    def ids_of(self, names):
        return np.array([self.label_index[x] for x in names], dtype=np.int64)

    def names_of(self, ids):
        return [self.labels[int(v)] for v in ids]


def load_temporal_edgelist(path, format=TRIPLES):
    """Read a temporal graph from disk.

    ``triples``: one edge per line as ``u v t`` with t a 0-based snapshot
    index; ``#`` starts a comment line.  ``dir``: a directory holding
    ``0.edges``, ``1.edges``, ... each a ``u v`` edge list.
    Self-loops are dropped (warned with a count); duplicate edges within a
    snapshot collapse to one.
    """
    if format == TRIPLES:
        snapshot_edges, dropped = _read_triples(path)
    elif format == PER_SNAPSHOT:
        snapshot_edges, dropped = _read_snapshot_dir(path)
    else:
        raise ValueError(f"unknown format {format!r}")
    if dropped:
        log.warning("%s: dropped %d self-loop edge(s)", path, dropped)
    return TemporalGraph.from_edge_labels(snapshot_edges, self_loops_dropped=dropped)


def _read_triples(path):
    by_snapshot = {}
    dropped = 0
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise FormatError(f"{path}:{lineno}: expected 'u v t', got {line!r}")
            u, v, t_str = parts
            try:
                t = int(t_str)
            except ValueError:
                raise FormatError(
                    f"{path}:{lineno}: snapshot index {t_str!r} is not an integer"
                ) from None
            if t < 0:
                raise FormatError(f"{path}:{lineno}: negative snapshot index {t}")
            if u == v:
                dropped += 1
                continue
            by_snapshot.setdefault(t, []).append((u, v))
    if not by_snapshot:
        raise FormatError(f"{path}: no edges found")
    k = max(by_snapshot) + 1
    return [by_snapshot.get(t, []) for t in range(k)], dropped


def _read_snapshot_dir(path):
    files = []
    t = 0
    while True:
        f = os.path.join(path, f"{t}.edges")
        if not os.path.exists(f):
            break
        files.append(f)
        t += 1
    if not files:
        raise FormatError(f"{path}: no 0.edges file found")
    snapshot_edges = []
    dropped = 0
    for f in files:
        edges = []
        with open(f, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 2:
                    raise FormatError(f"{f}:{lineno}: expected 'u v', got {line!r}")
                u, v = parts
                if u == v:
                    dropped += 1
                    continue
                edges.append((u, v))
        snapshot_edges.append(edges)
    return snapshot_edges, dropped


def write_triples(g, path):
    """Serialize to the triples format (round-trips through the loader)."""
    with open(path, "w", encoding="utf-8") as fh:
        for t, snap in enumerate(g.snapshots):
            for u, v in snap.edges():
                fh.write(f"{g.labels[u]} {g.labels[v]} {t}\n")
