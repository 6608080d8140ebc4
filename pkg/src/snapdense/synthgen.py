"""Synthetic temporal graphs with a planted dense block.

The vertex universe splits into a dense core and a sparse remainder.  Each
snapshot promotes every sparse vertex into the core independently with a
per-snapshot migration probability drawn uniformly from ``eta_range``, then
samples edges with a stochastic block model: probability ``p_d`` inside the
snapshot's core, ``p_s`` inside the remainder, ``p_c`` across.  Generation
is a pure function of the spec (numpy PCG64 stream seeded with ``seed``,
fixed draw order), so identical specs give byte-identical datasets.
"""

import json
import os
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from .graph import Snapshot, TemporalGraph, write_triples


@dataclass
class SynthSpec:
    n_dense: int
    n_sparse: int
    k: int
    p_d: float
    p_s: float
    p_c: float
    eta_range: Tuple[float, float] = (0.01, 0.09)
    seed: int = field(default=None)

    def __post_init__(self):
        if self.n_dense < 1 or self.n_sparse < 1 or self.k < 1:
            raise ValueError("counts must be at least 1")
        for name in ("p_d", "p_s", "p_c"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name}={p} outside [0, 1]")
        lo, hi = self.eta_range
        if not (0.0 <= lo <= hi <= 1.0):
            raise ValueError(f"eta_range {self.eta_range} invalid")
        if self.seed is None:
            raise ValueError("an explicit seed is required for reproducibility")

    @property
    def n(self):
        return self.n_dense + self.n_sparse

    def as_dict(self):
        return {
            "n_dense": self.n_dense,
            "n_sparse": self.n_sparse,
            "k": self.k,
            "p_d": self.p_d,
            "p_s": self.p_s,
            "p_c": self.p_c,
            "eta_range": list(self.eta_range),
            "seed": self.seed,
        }


@dataclass
class GroundTruth:
    """Planted core per snapshot plus the migration draws that shaped it."""

    dense_sets: list
    etas: list


def vertex_labels(n):
    width = len(str(n - 1))
    return [f"v{i:0{width}d}" for i in range(n)]


def generate(spec):
    """Sample one dataset; returns (graph, ground truth).

    Vertex ids 0..n_dense-1 form the base core; labels are zero-padded so
    lexicographic id assignment on reload preserves order.
    """
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    base_dense = np.zeros(n, dtype=np.bool_)
    base_dense[: spec.n_dense] = True
    iu, iv = np.triu_indices(n, 1)
    lo, hi = spec.eta_range

    snapshots = []
    dense_sets = []
    etas = []
    for _ in range(spec.k):
        eta = float(rng.uniform(lo, hi))
        moved = rng.random(spec.n_sparse) < eta
        dense_mask = base_dense.copy()
        dense_mask[spec.n_dense :] = moved
        du, dv = dense_mask[iu], dense_mask[iv]
        prob = np.where(du & dv, spec.p_d, np.where(~du & ~dv, spec.p_s, spec.p_c))
        keep = rng.random(iu.size) < prob
        snapshots.append(
            Snapshot.from_edges(n, np.stack([iu[keep], iv[keep]], axis=1))
        )
        dense_sets.append(np.flatnonzero(dense_mask).astype(np.int64))
        etas.append(eta)

    g = TemporalGraph(snapshots, vertex_labels(n))
    return g, GroundTruth(dense_sets=dense_sets, etas=etas)


def expected_edges(spec):
    """Analytic expected total edge count, with the migration probability
    taken at the midpoint of eta_range."""
    eta = 0.5 * (spec.eta_range[0] + spec.eta_range[1])
    nd, ns = spec.n_dense, spec.n_sparse
    pairs_dd = nd * (nd - 1) / 2
    pairs_ss = ns * (ns - 1) / 2
    pairs_cross = nd * ns
    # both-in-core / both-outside / mixed probabilities per base pair type
    e_dense = pairs_dd + pairs_cross * eta + pairs_ss * eta * eta
    e_sparse = pairs_ss * (1 - eta) ** 2
    e_cross = pairs_cross * (1 - eta) + pairs_ss * 2 * eta * (1 - eta)
    per_snapshot = spec.p_d * e_dense + spec.p_s * e_sparse + spec.p_c * e_cross
    return spec.k * per_snapshot


def edge_count_std(spec):
    """Standard deviation of the total edge count when eta_range is a
    point mass (independent Bernoulli edges with mixed probabilities)."""
    lo, hi = spec.eta_range
    if lo != hi:
        raise ValueError("closed form implemented only for a fixed eta")
    eta = lo
    nd, ns = spec.n_dense, spec.n_sparse

    def bern_var(p):
        return p * (1 - p)

    # per-pair marginal edge probability by base pair type
    q_dd = spec.p_d
    q_cross = eta * spec.p_d + (1 - eta) * spec.p_c
    q_ss = (
        eta * eta * spec.p_d
        + 2 * eta * (1 - eta) * spec.p_c
        + (1 - eta) * (1 - eta) * spec.p_s
    )
    var = (
        nd * (nd - 1) / 2 * bern_var(q_dd)
        + nd * ns * bern_var(q_cross)
        + ns * (ns - 1) / 2 * bern_var(q_ss)
    )
    return float(np.sqrt(spec.k * var))


def write_dataset(g, truth, spec, out_dir, name):
    """Write the triples file plus a ground-truth JSON sidecar; returns
    (triples path, truth path)."""
    os.makedirs(out_dir, exist_ok=True)
    triples = os.path.join(out_dir, f"{name}.triples")
    truth_path = os.path.join(out_dir, f"{name}.truth.json")
    write_triples(g, triples)
    payload = {
        "schema": 1,
        "spec": spec.as_dict(),
        "etas": truth.etas,
        "dense_sets": [g.names_of(ids) for ids in truth.dense_sets],
    }
    with open(truth_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
    return triples, truth_path


def load_ground_truth(path, g):
    """Read a ground-truth sidecar back against a loaded graph."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    dense_sets = [g.ids_of(names) for names in payload["dense_sets"]]
    return GroundTruth(dense_sets=dense_sets, etas=list(payload["etas"]))
