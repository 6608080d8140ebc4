"""Brute-force reference solvers for tiny instances.

These enumerate subsets directly and share no peeling or flow logic with
the real solvers; they exist to pin down ground truth in tests and for
manual spot checks through the hidden CLI subcommand.
"""

from dataclasses import dataclass

import numpy as np

from ._kernels import densest_scan, jwds_enum, subset_edge_counts
from .scoring import SubgraphSequence, score

DEFAULT_STATE_LIMIT = 10**7


@dataclass
class OracleResult:
    best_seq: SubgraphSequence
    best_score: float
    states_examined: int


def _adjacency_bitmasks(snap):
    nbr = np.zeros(snap.n, dtype=np.int64)
    for v in range(snap.n):
        for w in snap.neighbors(v):
            nbr[v] |= 1 << int(w)
    return nbr


def _mask_to_ids(mask):
    return np.array([b for b in range(mask.bit_length()) if mask >> b & 1],
                    dtype=np.int64)


def brute_force_densest(snap):
    """(vertex set, density) maximizing |E(S)|/|S| by full enumeration.

    Ties prefer the smaller set, then the smallest membership bitmask.
    Guarded to n <= 20.
    """
    if snap.n > 20:
        raise ValueError(f"n={snap.n} too large for exhaustive enumeration")
    edge_cnt, pc = subset_edge_counts(_adjacency_bitmasks(snap))
    mask, best_e, best_s = densest_scan(edge_cnt, pc)
    return _mask_to_ids(int(mask)), int(best_e) / int(best_s)


def brute_force_jwds(g, lam, limit=DEFAULT_STATE_LIMIT):
    """Exact optimum of the weighted objective by enumerating every choice
    of one nonempty subset per snapshot.

    With lam == 0 the objective separates and each snapshot is enumerated
    on its own, which widens the feasible n.  Ties keep the sequence with
    the lexicographically smallest (mask_1, ..., mask_k) encoding.  Raises
    when the state count would exceed the limit.
    """
    assert lam >= 0
    n, k = g.n, g.k
    per_snapshot = (1 << n) - 1
    tables = [subset_edge_counts(_adjacency_bitmasks(s)) for s in g.snapshots]
    pc = tables[0][1]

    if lam == 0:
        if k * per_snapshot > limit:
            raise ValueError("state budget exceeded")
        best_masks = []
        for edge_cnt, pc_i in tables:
            best_mask, best_e, best_s = 1, 0, 1
            for mask in range(1, per_snapshot + 1):
                e, s = int(edge_cnt[mask]), int(pc_i[mask])
                if e * best_s > best_e * s:
                    best_mask, best_e, best_s = mask, e, s
            best_masks.append(best_mask)
        states = k * per_snapshot
    else:
        if per_snapshot**k > limit:
            raise ValueError("state budget exceeded")
        dens = np.zeros((k, per_snapshot + 1), dtype=np.float64)
        for i, (edge_cnt, pc_i) in enumerate(tables):
            dens[i, 1:] = edge_cnt[1:] / pc_i[1:]
        best, _kernel_score, states = jwds_enum(dens, pc, float(lam))
        best_masks = [int(m) for m in best]

    seq = SubgraphSequence.from_sets(n, [_mask_to_ids(m) for m in best_masks])
    return OracleResult(
        best_seq=seq,
        best_score=score(g, seq, lam).total,
        states_examined=int(states),
    )
