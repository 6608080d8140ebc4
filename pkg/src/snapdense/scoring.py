"""Objective pieces: per-snapshot density, pairwise Jaccard similarity, the
combined weighted score, and the exact score change from deleting one
vertex from one snapshot's set.

All set sizes and edge counts stay integers; division happens only at the
point of comparison or reporting, so repeated evaluation cannot drift.
Empty sets are rejected rather than given conventional values.
"""

from dataclasses import dataclass

import numpy as np

from .graph import as_mask, induced_edge_count


@dataclass
class SubgraphSequence:
    """One vertex subset per snapshot, stored as a (k, n) membership array."""

    member: np.ndarray

    @classmethod
    def from_sets(cls, n, sets):
        member = np.zeros((len(sets), n), dtype=np.bool_)
        for i, s in enumerate(sets):
            member[i] = as_mask(n, s)
        return cls(member)

    @classmethod
    def full(cls, n, k):
        """All snapshots set to the whole vertex universe."""
        return cls(np.ones((k, n), dtype=np.bool_))

    @classmethod
    def coerce(cls, n, seq):
        if isinstance(seq, cls):
            return seq
        return cls.from_sets(n, list(seq))

    @property
    def k(self):
        return self.member.shape[0]

    @property
    def n(self):
        return self.member.shape[1]

    def sizes(self):
        return self.member.sum(axis=1).astype(np.int64)

    def sets(self):
        """Sorted vertex-id array per snapshot."""
        return [np.flatnonzero(self.member[i]) for i in range(self.k)]

    def copy(self):
        return SubgraphSequence(self.member.copy())

    def replaced(self, i, s):
        out = self.copy()
        out.member[i] = as_mask(self.n, s)
        return out

    def to_labels(self, g):
        return [g.names_of(ids) for ids in self.sets()]

    def __eq__(self, other):
        return isinstance(other, SubgraphSequence) and np.array_equal(
            self.member, other.member
        )


@dataclass
class ScoreBreakdown:
    """Score split into its density part and similarity part.

    total == density_sum + lam * jaccard_sum by construction.
    """

    density_sum: float
    jaccard_sum: float
    lam: float

    @property
    def total(self):
        return self.density_sum + self.lam * self.jaccard_sum

    def as_dict(self):
        return {
            "density_sum": self.density_sum,
            "jaccard_sum": self.jaccard_sum,
            "lambda": self.lam,
            "total": self.total,
        }


def density(snapshot, s):
    """Induced edge count over vertex count, |E(S)| / |S|."""
    mask = as_mask(snapshot.n, s)
    size = int(mask.sum())
    assert size >= 1, "density of the empty set is undefined"
    return induced_edge_count(snapshot, mask) / size


def jaccard(s, t, n=None):
    """|S intersect T| / |S union T|; both sets empty is rejected."""
    if n is None:
        sa, ta = np.asarray(s), np.asarray(t)
        n = 0
        if sa.dtype == np.bool_:
            n = sa.size
        elif sa.size:
            n = int(sa.max()) + 1
        if ta.dtype == np.bool_:
            n = max(n, ta.size)
        elif ta.size:
            n = max(n, int(ta.max()) + 1)
        n = max(n, 1)
    sm = as_mask(n, s)
    tm = as_mask(n, t)
    union = int((sm | tm).sum())
    assert union >= 1, "Jaccard of two empty sets is undefined"
    return int((sm & tm).sum()) / union


def pair_counts(member):
    """Intersection and union size matrices for the k membership rows."""
    m = member.astype(np.int64)
    inter = m @ m.T
    sizes = m.sum(axis=1)
    uni = sizes[:, None] + sizes[None, :] - inter
    return inter, uni


def score(g, seq, lam):
    """Sum of per-snapshot densities plus lam times all pairwise Jaccards."""
    seq = SubgraphSequence.coerce(g.n, seq)
    assert lam >= 0
    sizes = seq.sizes()
    assert sizes.min() >= 1, "every snapshot's set must be nonempty"
    dens = 0.0
    for i, snap in enumerate(g.snapshots):
        dens += induced_edge_count(snap, seq.member[i]) / int(sizes[i])
    inter, uni = pair_counts(seq.member)
    jac = 0.0
    k = seq.k
    for i in range(k):
        for j in range(i + 1, k):
            jac += int(inter[i, j]) / int(uni[i, j])
    return ScoreBreakdown(density_sum=dens, jaccard_sum=jac, lam=lam)


def removal_gain(g, seq, i, v, lam):
    """Exact score change from removing vertex v from snapshot i's set.

    Closed form: the density of S_i drops from |E|/|S| to (|E| - deg v) /
    (|S| - 1) with deg taken inside the induced subgraph, and each pairwise
    Jaccard term against snapshot j loses 1/|union| when v is shared with
    S_j, or grows by |inter| / (|union| (|union| - 1)) when it is not.
    """
    seq = SubgraphSequence.coerce(g.n, seq)
    mask = seq.member[i]
    if not mask[v]:
        raise ValueError(f"vertex {v} is not in snapshot {i}'s set")
    size = int(mask.sum())
    if size < 2:
        raise ValueError("cannot remove the last vertex of a set")
    snap = g.snapshots[i]
    edges = induced_edge_count(snap, mask)
    nbrs = snap.neighbors(v)
    deg = int(mask[nbrs].sum())
    gain = (edges - deg) / (size - 1) - edges / size
    inter, uni = pair_counts(seq.member)
    jac_delta = 0.0
    for j in range(seq.k):
        if j == i:
            continue
        ii, uu = int(inter[i, j]), int(uni[i, j])
        if seq.member[j, v]:
            jac_delta += -1.0 / uu
        else:
            jac_delta += ii / (uu - 1) - ii / uu
    return gain + lam * jac_delta
