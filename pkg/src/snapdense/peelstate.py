"""Incremental bookkeeping that makes repeated best-vertex-removal queries
cheap while peeling a sequence of vertex sets.

Vertices of each snapshot's set are partitioned into groups by their full
membership pattern across all snapshots (two vertices share a group when
they sit in exactly the same sets).  The similarity part of the removal
gain is identical for every vertex of a group, so the best candidate of a
group is simply its minimum-degree member: each group keeps a lazy-deletion
min-heap keyed by induced degree, and candidate selection compares one heap
top per group.  Pairwise intersection and union sizes are maintained as
integer matrices; per-group similarity deltas are cached as per-pair term
arrays and refreshed from the integer counters whenever a removal touches
them, so cached floats never accumulate across removals.
"""

import heapq
import json

import numpy as np

from .graph import induced_edge_count
from .scoring import SubgraphSequence, pair_counts


class Group:
    """Vertices of one snapshot's set sharing a membership signature.

    ``terms[j]`` holds the change of the Jaccard term against snapshot j
    caused by removing any member; ``delta`` is their sum.  ``heap`` is a
    lazy min-heap of (induced degree, vertex): entries turn stale when the
    vertex leaves the group or its degree shrinks, and are skipped on pop.
    """

    __slots__ = ("signature", "members", "heap", "terms", "delta")

    def __init__(self, signature, k):
        self.signature = signature
        self.members = set()
        self.heap = []
        self.terms = np.zeros(k, dtype=np.float64)
        self.delta = 0.0


class PeelState:
    """Mutable peeling state for one temporal graph and one set sequence.

    Single-writer: mutate only through remove().  delta_max tracks the
    largest number of groups any snapshot ever had, the quantity that
    drives per-step selection cost.
    """

    def __init__(self, g, seq, lam=0.0, debug=False):
        seq = SubgraphSequence.coerce(g.n, seq)
        sizes = seq.sizes()
        if sizes.min() < 1:
            raise ValueError("every snapshot's set must be nonempty")
        self.g = g
        self.lam = lam
        self.debug = debug
        self.k = seq.k
        self.n = seq.n
        self.member = seq.member.copy()
        self.sizes = sizes
        self.inter, self.uni = pair_counts(self.member)
        self.edge_counts = np.array(
            [induced_edge_count(s, self.member[i]) for i, s in enumerate(g.snapshots)],
            dtype=np.int64,
        )
        self.degrees = np.stack(
            [s.induced_degrees(self.member[i]) for i, s in enumerate(g.snapshots)]
        )
        # membership signature per vertex: bit j set iff v in S_j
        self.sig = [0] * self.n
        for j in range(self.k):
            bit = 1 << j
            for v in np.flatnonzero(self.member[j]):
                self.sig[v] |= bit
        self.groups = [dict() for _ in range(self.k)]
        for i in range(self.k):
            for v in np.flatnonzero(self.member[i]):
                grp = self._group_for(i, self.sig[v])
                grp.members.add(int(v))
                heapq.heappush(grp.heap, (int(self.degrees[i, v]), int(v)))
        self.delta_max = max(len(gs) for gs in self.groups)
        self.removals = 0

    # -- group plumbing ----------------------------------------------------

    def _group_for(self, i, signature):
        grp = self.groups[i].get(signature)
        if grp is None:
            grp = Group(signature, self.k)
            self._refresh_all_terms(i, grp)
            self.groups[i][signature] = grp
        return grp

    def _term(self, i, j, signature):
        """Jaccard-term change against snapshot j for a member of snapshot i."""
        uu = int(self.uni[i, j])
        if signature >> j & 1:
            return -1.0 / uu
        ii = int(self.inter[i, j])
        return ii / (uu - 1) - ii / uu

    def _refresh_all_terms(self, i, grp):
        for j in range(self.k):
            grp.terms[j] = 0.0 if j == i else self._term(i, j, grp.signature)
        grp.delta = float(grp.terms.sum())

    def _refresh_one_term(self, i, grp, j):
        grp.terms[j] = self._term(i, j, grp.signature)
        grp.delta = float(grp.terms.sum())

    def _group_min(self, i, grp):
        """Current (degree, vertex) minimum of a group, skipping stale entries."""
        heap = grp.heap
        while heap:
            deg, v = heap[0]
            if v in grp.members and deg == self.degrees[i, v]:
                return deg, v
            heapq.heappop(heap)
        return None

    # -- queries -----------------------------------------------------------

    def gain_of(self, i, deg, delta, lam):
        e = int(self.edge_counts[i])
        s = int(self.sizes[i])
        return (e - deg) / (s - 1) - e / s + lam * delta

    def best_candidate_in_snapshot(self, i, lam=None):
        """Vertex of snapshot i whose removal changes the score the most.

        Returns (vertex, gain).  Ties on gain resolve to the smaller vertex
        id.  Requires at least two vertices in the set.
        """
        lam = self.lam if lam is None else lam
        if self.sizes[i] < 2:
            raise ValueError(f"snapshot {i} has fewer than two vertices")
        best = None
        for grp in self.groups[i].values():
            top = self._group_min(i, grp)
            if top is None:
                continue
            deg, v = top
            gain = self.gain_of(i, deg, grp.delta, lam)
            if best is None or gain > best[1] or (gain == best[1] and v < best[0]):
                best = (v, gain)
        assert best is not None
        return best

    def best_candidate_global(self, lam=None, forbidden=()):
        """Best (snapshot, vertex, gain) over all peelable snapshots.

        Snapshots down to one vertex or listed in forbidden are skipped;
        raises when nothing is eligible.  Ties resolve to the smaller
        snapshot index, then the smaller vertex id.
        """
        lam = self.lam if lam is None else lam
        forbidden = set(forbidden)
        best = None
        for i in range(self.k):
            if i in forbidden or self.sizes[i] < 2:
                continue
            v, gain = self.best_candidate_in_snapshot(i, lam)
            if best is None or gain > best[2]:
                best = (i, v, gain)
        if best is None:
            raise ValueError("no snapshot is eligible for removal")
        return best

    def score_breakdown(self, lam=None):
        """Exact current score recomputed from the integer counters."""
        from .scoring import ScoreBreakdown

        lam = self.lam if lam is None else lam
        dens = 0.0
        for i in range(self.k):
            dens += int(self.edge_counts[i]) / int(self.sizes[i])
        jac = 0.0
        for i in range(self.k):
            for j in range(i + 1, self.k):
                jac += int(self.inter[i, j]) / int(self.uni[i, j])
        return ScoreBreakdown(density_sum=dens, jaccard_sum=jac, lam=lam)

    def sequence(self):
        return SubgraphSequence(self.member.copy())

    # -- mutation ----------------------------------------------------------

    def remove(self, i, v):
        """Delete vertex v from snapshot i's set and restore all caches."""
        v = int(v)
        if not self.member[i, v]:
            raise ValueError(f"vertex {v} is not in snapshot {i}'s set")
        if self.sizes[i] < 2:
            raise ValueError("cannot remove the last vertex of a set")

        old_sig = self.sig[v]
        new_sig = old_sig & ~(1 << i)

        # degree and edge-count maintenance inside snapshot i
        deg_v = int(self.degrees[i, v])
        self.edge_counts[i] -= deg_v
        snap = self.g.snapshots[i]
        for w in snap.neighbors(v):
            w = int(w)
            if w != v and self.member[i, w]:
                self.degrees[i, w] -= 1
                grp_w = self.groups[i][self.sig[w]]
                heapq.heappush(grp_w.heap, (int(self.degrees[i, w]), w))
        self.degrees[i, v] = 0

        # pairwise intersection / union counters, row and column i
        for j in range(self.k):
            if j == i:
                continue
            if self.member[j, v]:
                self.inter[i, j] -= 1
                self.inter[j, i] -= 1
            else:
                self.uni[i, j] -= 1
                self.uni[j, i] -= 1
        self.member[i, v] = False
        self.sizes[i] -= 1
        self.inter[i, i] = self.uni[i, i] = self.sizes[i]
        self.sig[v] = new_sig

        # v leaves its group in snapshot i outright
        src = self.groups[i][old_sig]
        src.members.discard(v)
        if not src.members:
            del self.groups[i][old_sig]

        # v moves to the group matching its new signature everywhere else
        for j in range(self.k):
            if j == i or not self.member[j, v]:
                continue
            src = self.groups[j][old_sig]
            src.members.discard(v)
            if not src.members:
                del self.groups[j][old_sig]
            dst = self._group_for(j, new_sig)
            dst.members.add(v)
            heapq.heappush(dst.heap, (int(self.degrees[j, v]), v))

        # similarity caches: snapshot i's groups see all pair terms move,
        # every other snapshot's groups see only the term against i move
        for grp in self.groups[i].values():
            self._refresh_all_terms(i, grp)
        for j in range(self.k):
            if j == i:
                continue
            for grp in self.groups[j].values():
                self._refresh_one_term(j, grp, i)

        self.delta_max = max(self.delta_max, max(len(gs) for gs in self.groups))
        self.removals += 1
        if self.debug and self.removals % 100 == 0:
            self.validate()

    # -- inspection --------------------------------------------------------

    def validate(self):
        """Assert every counter, group, queue key, and cache is consistent."""
        seq = SubgraphSequence(self.member)
        sizes = seq.sizes()
        assert np.array_equal(sizes, self.sizes)
        inter, uni = pair_counts(self.member)
        assert np.array_equal(inter, self.inter), "intersection counters drifted"
        assert np.array_equal(uni, self.uni), "union counters drifted"
        for i, snap in enumerate(self.g.snapshots):
            assert self.edge_counts[i] == induced_edge_count(snap, self.member[i])
            deg = snap.induced_degrees(self.member[i])
            assert np.array_equal(deg, self.degrees[i]), f"degrees drifted in {i}"
            seen = set()
            for signature, grp in self.groups[i].items():
                assert grp.members, "empty group retained"
                assert signature >> i & 1, "group signature excludes its snapshot"
                for v in grp.members:
                    assert self.sig[v] == signature
                    assert self.member[i, v]
                    seen.add(v)
                fresh = np.zeros(self.k)
                for j in range(self.k):
                    if j != i:
                        fresh[j] = self._term(i, j, signature)
                assert np.allclose(fresh, grp.terms, atol=1e-12)
                top = self._group_min(i, grp)
                assert top is not None
                assert top[0] == self.degrees[i, top[1]]
            assert seen == set(np.flatnonzero(self.member[i]).tolist())
            assert len(self.groups[i]) <= min(int(sizes[i]), 2 ** max(self.k - 1, 0))
        assert self.delta_max >= max(len(gs) for gs in self.groups)

    def to_debug_json(self):
        """JSON-serializable snapshot of sets, counters, and the group table."""
        return json.loads(
            json.dumps(
                {
                    "sets": [sorted(map(int, np.flatnonzero(self.member[i])))
                             for i in range(self.k)],
                    "edge_counts": self.edge_counts.tolist(),
                    "intersection": self.inter.tolist(),
                    "union": self.uni.tolist(),
                    "delta_max": self.delta_max,
                    "removals": self.removals,
                    "groups": [
                        {
                            format(signature, "b"): {
                                "members": sorted(grp.members),
                                "jaccard_delta": grp.delta,
                            }
                            for signature, grp in self.groups[i].items()
                        }
                        for i in range(self.k)
                    ],
                }
            )
        )
