"""
Distributions of the vertex count and genus of random origamis.

Exact laws come from enumerating every pair of gluings (small n) or from the
character sum for the commutator class; sampled laws from a seeded sampler
that gives the same histogram for any worker count.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import young

EULER_GAMMA = 0.57721566490153286061
MAX_EXACT_N = 6
MAX_STIRLING_N = 64
MAX_CHARACTER_N = 20
MAX_SEED = 2**64 - 1

Mode = Literal["reject-disconnected", "raw-pairs"]
MODES = ("reject-disconnected", "raw-pairs")


@dataclass(frozen=True)
class DiscreteDistribution:
    support: tuple[int, ...]
    mass: tuple  # Fractions (exact) or floats (sampled)
    counts: tuple[int, ...] | None = None

    def __post_init__(self):
        if len(self.support) != len(self.mass):
            raise ValueError("support and mass differ in length")
        if list(self.support) != sorted(set(self.support)):
            raise ValueError("support must be strictly increasing")
        if any(m < 0 for m in self.mass):
            raise ValueError("negative mass")
        if not self.support:
            return  # empty law, e.g. no connected pair among raw samples
        total = sum(self.mass)
        if self.exact:
            if total != 1:
                raise ValueError(f"masses sum to {total}, not 1")
        elif abs(total - 1) >= 1e-12:
            raise ValueError(f"masses sum to {total}, not 1")

    @property
    def exact(self) -> bool:
        return all(isinstance(m, (int, Fraction)) for m in self.mass)

    @classmethod
    def from_counts(cls, counts: dict[int, int], exact: bool = False) -> DiscreteDistribution:
        total = sum(counts.values())
        if total <= 0:
            raise ValueError("empty histogram")
        keys = sorted(k for k, c in counts.items() if c)
        if exact:
            mass = tuple(Fraction(counts[k], total) for k in keys)
        else:
            mass = tuple(counts[k] / total for k in keys)
        return cls(tuple(keys), mass, tuple(counts[k] for k in keys))

    def pmf(self, x: int):
        try:
            return self.mass[self.support.index(x)]
        except ValueError:
            return Fraction(0) if self.exact else 0.0

    def as_dict(self) -> dict[int, object]:
        return dict(zip(self.support, self.mass))

    def mean(self) -> float:
        return float(sum(x * m for x, m in zip(self.support, self.mass)))

    def stddev(self) -> float:
        mu = sum(Fraction(x) * Fraction(m) for x, m in zip(self.support, self.mass))
        var = sum((Fraction(x) - mu) ** 2 * Fraction(m) for x, m in zip(self.support, self.mass))
        return math.sqrt(var)

    def cdf(self, x: float) -> float:
        return float(sum(m for s, m in zip(self.support, self.mass) if s <= x))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if self.counts is not None:
            w.writerow(["value", "probability", "count"])
            for x, m, c in zip(self.support, self.mass, self.counts):
                w.writerow([x, _fmt(m), c])
        else:
            w.writerow(["value", "probability"])
            for x, m in zip(self.support, self.mass):
                w.writerow([x, _fmt(m)])
        return buf.getvalue()

    def to_json_obj(self) -> dict:
        out = {"support": list(self.support), "probability": [_fmt(m) for m in self.mass]}
        if self.counts is not None:
            out["count"] = list(self.counts)
        return out


def _fmt(m) -> str:
    if isinstance(m, Fraction):
        return str(m)
    return repr(float(m))


# ---------------------------------------------------------------------------
# Oracles


def stirling_first_kind(n: int) -> list[int]:
    """Unsigned c(n, k) for k = 1..n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_STIRLING_N:
        raise ValueError(f"n = {n} exceeds {MAX_STIRLING_N}")
    row = [1]  # c(1, 1)
    for m in range(2, n + 1):
        new = [0] * m
        for k in range(1, m + 1):
            prev_km1 = row[k - 2] if k >= 2 else 0
            prev_k = row[k - 1] if k <= m - 1 else 0
            new[k - 1] = prev_km1 + (m - 1) * prev_k
        row = new
    return row


def alternating_cycle_distribution(n: int) -> DiscreteDistribution:
    """Cycle count of a uniform even permutation: ``P(k) = 2 c(n, k) / n!`` for k = n mod 2."""
    c = stirling_first_kind(n)
    if n == 1:
        return DiscreteDistribution((1,), (Fraction(1),))
    fact = math.factorial(n)
    support, mass = [], []
    for k in range(1, n + 1):
        if (n - k) % 2 == 0:
            support.append(k)
            mass.append(Fraction(2 * c[k - 1], fact))
    return DiscreteDistribution(tuple(support), tuple(mass))


def character_vertex_distribution(n: int) -> DiscreteDistribution:
    """Exact commutator cycle-count law over all pairs, from characters:
    ``P(E = k) = sum over classes rho with k cycles of |C_rho|/n! * sum_lambda chi^lambda(rho)/f^lambda``."""
    if n > MAX_CHARACTER_N:
        raise ValueError(f"n = {n} exceeds {MAX_CHARACTER_N}")
    table = young.character_table(n)
    dims = table.dimensions()
    fact = math.factorial(n)
    probs: Counter = Counter()
    for col, (rho, size) in enumerate(zip(table.labels, table.class_sizes)):
        s = sum(Fraction(row[col], d) for row, d in zip(table.values, dims))
        if s:
            probs[len(rho)] += Fraction(size, fact) * s
    keys = sorted(probs)
    return DiscreteDistribution(tuple(keys), tuple(probs[k] for k in keys))


def genus_from_vertex_distribution(n: int, dist: DiscreteDistribution) -> DiscreteDistribution:
    pairs = sorted(((2 - e + n) // 2, m) for e, m in zip(dist.support, dist.mass))
    return DiscreteDistribution(tuple(g for g, _ in pairs), tuple(m for _, m in pairs), None)


# ---------------------------------------------------------------------------
# Vectorized permutation kernels (rows are 0-based image arrays)


def _components(edges: list[np.ndarray], b: int, n: int) -> np.ndarray:
    # component count of each row's graph on n nodes; rows become disjoint blocks
    offset = (np.arange(b, dtype=np.int64) * n)[:, None]
    src = np.tile((np.arange(n, dtype=np.int64) + offset).ravel(), len(edges))
    dst = np.concatenate([(e + offset).ravel() for e in edges])
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(b * n, b * n)).tocsr()
    k, labels = connected_components(graph, directed=True, connection="weak")
    # blocks are disjoint, so each component lies in exactly one row
    row_of = np.empty(k, dtype=np.int64)
    row_of[labels] = np.repeat(np.arange(b), n)
    return np.bincount(row_of, minlength=b)


def batch_cycle_counts(p: np.ndarray) -> np.ndarray:
    """Cycle count of each row (fixed points included)."""
    p = np.asarray(p)
    return _components([p], *p.shape)


def batch_inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    rows = np.arange(p.shape[0])[:, None]
    inv[rows, p] = np.arange(p.shape[1])
    return inv


def batch_commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Rows of ``a b a^-1 b^-1`` (right factor applied first)."""
    rows = np.arange(a.shape[0])[:, None]
    ia, ib = batch_inverse(a), batch_inverse(b)
    x = ia[rows, ib]
    x = b[rows, x]
    return a[rows, x]


def batch_connected(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Whether <a, b> is transitive, per row."""
    return _components([a, b], *a.shape) == 1


# ---------------------------------------------------------------------------
# Exact enumeration


def _all_perm_array(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def exact_genus_distribution(n: int, mode: Mode = "reject-disconnected") -> tuple[DiscreteDistribution, DiscreteDistribution]:
    """Vertex and genus laws over every (sigma_a, sigma_b) in S_n x S_n.

    ``reject-disconnected`` conditions both laws on transitivity.  ``raw-pairs``
    keeps every pair in the vertex law; the genus law is then taken over the
    connected pairs only, since genus is undefined otherwise.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_EXACT_N:
        raise ValueError(f"exhaustive enumeration supports n <= {MAX_EXACT_N}")
    perms = _all_perm_array(n)
    m = len(perms)
    vertex_all: Counter = Counter()
    vertex_conn: Counter = Counter()
    for i in range(m):
        a = np.broadcast_to(perms[i], (m, n))
        e = batch_cycle_counts(batch_commutator(a, perms))
        conn = batch_connected(a, perms)
        vertex_all.update(e.tolist())
        vertex_conn.update(e[conn].tolist())
    genus_counts = Counter({(2 - e + n) // 2: c for e, c in vertex_conn.items()})
    vertex = vertex_all if mode == "raw-pairs" else vertex_conn
    return (
        DiscreteDistribution.from_counts(vertex, exact=True),
        DiscreteDistribution.from_counts(genus_counts, exact=True),
    )


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class SamplerConfig:
    n: int
    samples: int
    seed: int = 0
    mode: Mode = "reject-disconnected"
    workers: int = 1
    chunk: int = 4096

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.seed <= MAX_SEED:
            raise ValueError("seed must fit in 64 bits")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.chunk < 1:
            raise ValueError("chunk must be >= 1")


def sample_stream(seed: int, index: int) -> np.random.Generator:
    """Independent counter-based stream for one sample: Philox keyed by (seed, index)."""
    return np.random.Generator(np.random.Philox(key=seed | (index << 64)))


def _draw(cfg: SamplerConfig, indices: Sequence[int]) -> tuple[Counter, Counter, int]:
    n = cfg.n
    a = np.empty((len(indices), n), dtype=np.int64)
    b = np.empty_like(a)
    streams = []
    for r, idx in enumerate(indices):
        rng = sample_stream(cfg.seed, idx)
        a[r] = rng.permutation(n)
        b[r] = rng.permutation(n)
        streams.append(rng)
    rejected = 0
    conn = batch_connected(a, b)
    if cfg.mode == "reject-disconnected":
        # each sample redraws from its own stream until its pair is transitive
        pending = np.flatnonzero(~conn)
        while pending.size:
            rejected += int(pending.size)
            for r in pending:
                a[r] = streams[r].permutation(n)
                b[r] = streams[r].permutation(n)
            ok = batch_connected(a[pending], b[pending])
            conn[pending] = ok
            pending = pending[~ok]
    e = batch_cycle_counts(batch_commutator(a, b))
    vertex = Counter(e.tolist())
    genus = Counter(((2 - e[conn] + n) // 2).tolist())
    return vertex, genus, rejected


def _worker(cfg: SamplerConfig, w: int) -> tuple[Counter, Counter, int]:
    vertex: Counter = Counter()
    genus: Counter = Counter()
    rejected = 0
    mine = range(w, cfg.samples, cfg.workers)
    for start in range(0, len(mine), cfg.chunk):
        v, g, r = _draw(cfg, mine[start:start + cfg.chunk])
        vertex.update(v)
        genus.update(g)
        rejected += r
    return vertex, genus, rejected


@dataclass
class SampleResult:
    config: SamplerConfig
    vertex: DiscreteDistribution
    genus: DiscreteDistribution
    rejected: int
    genus_counts: dict[int, int] = field(default_factory=dict)

    @property
    def mean(self) -> float:
        return _hist_mean(self.genus_counts)

    @property
    def stddev(self) -> float:
        return _hist_std(self.genus_counts)

    def summary(self) -> dict:
        cfg = self.config
        out = {
            "n": cfg.n,
            "mode": cfg.mode,
            "samples": cfg.samples,
            "seed": cfg.seed,
            "rejected": self.rejected,
            "mean": self.mean,
            "stddev": self.stddev,
            "theoretical_mean": None,
            "theoretical_stddev": None,
            "tv_vs_oracle": None,
            "ks_vs_normal": None,
        }
        if cfg.n >= 2:
            th = theoretical_genus_stats(cfg.n)
            out["theoretical_mean"] = th.mean
            out["theoretical_stddev"] = th.stddev
            out["ks_vs_normal"] = ks_vs_normal(self.genus, th.mean, th.stddev)
        if cfg.n <= MAX_STIRLING_N:
            out["tv_vs_oracle"] = compare_distributions(self.vertex, alternating_cycle_distribution(cfg.n))[0]
        return out


def _hist_mean(counts: dict[int, int]) -> float:
    total = sum(counts.values())
    return float(Fraction(sum(k * c for k, c in counts.items()), total)) if total else math.nan


def _hist_std(counts: dict[int, int]) -> float:
    total = sum(counts.values())
    if total < 2:
        return 0.0
    s1 = sum(k * c for k, c in counts.items())
    s2 = sum(k * k * c for k, c in counts.items())
    # sample variance, exact in rationals
    var = Fraction(s2 * total - s1 * s1, total * (total - 1))
    return math.sqrt(var)


def sample_genus_distribution(cfg: SamplerConfig) -> SampleResult:
    """Draw ``cfg.samples`` uniform pairs; sample i uses its own stream, worker w takes i = w mod workers.

    Histograms are merged as integer counts, so the result is independent of
    the worker count.
    """
    if cfg.workers == 1:
        parts = [_worker(cfg, 0)]
    else:
        with ProcessPoolExecutor(max_workers=cfg.workers) as ex:
            parts = list(ex.map(_worker, [cfg] * cfg.workers, range(cfg.workers)))
    vertex: Counter = Counter()
    genus: Counter = Counter()
    rejected = 0
    for v, g, r in parts:
        vertex.update(v)
        genus.update(g)
        rejected += r
    return SampleResult(
        cfg,
        DiscreteDistribution.from_counts(vertex),
        DiscreteDistribution.from_counts(genus) if genus else DiscreteDistribution((), ()),
        rejected,
        dict(sorted(genus.items())),
    )


# ---------------------------------------------------------------------------
# Asymptotic statistics


@dataclass(frozen=True)
class TheoreticalStats:
    mean: float
    stddev: float
    n: int
    kind: Literal["vertex-count", "genus"]


def theoretical_cycle_stats(n: int) -> TheoreticalStats:
    """Mean ``log n + gamma`` and stddev ``sqrt(log n) - (pi^2/12 - gamma/2)/sqrt(log n)``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    ln = math.log(n)
    mean = ln + EULER_GAMMA
    sd = math.sqrt(ln) - (math.pi**2 / 12 - EULER_GAMMA / 2) / math.sqrt(ln)
    return TheoreticalStats(mean, sd, n, "vertex-count")


def theoretical_genus_stats(n: int) -> TheoreticalStats:
    """Genus = -E/2 + 1 + n/2 applied to the cycle statistics."""
    c = theoretical_cycle_stats(n)
    return TheoreticalStats(-c.mean / 2 + 1 + n / 2, c.stddev / 2, n, "genus")


def harmonic_number(n: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, n + 1)), Fraction(0))


# ---------------------------------------------------------------------------
# Comparison


def compare_distributions(a: DiscreteDistribution, b: DiscreteDistribution) -> tuple[float, float]:
    """Total variation and Kolmogorov-Smirnov distance over the union support."""
    pa, pb = a.as_dict(), b.as_dict()
    support = sorted(set(pa) | set(pb))
    tv = Fraction(0)
    ks = Fraction(0)
    ca = cb = Fraction(0)
    for x in support:
        ma, mb = Fraction(pa.get(x, 0)), Fraction(pb.get(x, 0))
        tv += abs(ma - mb)
        ca += ma
        cb += mb
        ks = max(ks, abs(ca - cb))
    return float(tv / 2), float(ks)


def normal_cdf(x: float, mean: float = 0.0, stddev: float = 1.0) -> float:
    """Normal CDF through ``math.erf`` (double precision, error far below 1e-7)."""
    if stddev <= 0:
        raise ValueError("stddev must be positive")
    return 0.5 * (1.0 + math.erf((x - mean) / (stddev * math.sqrt(2.0))))


def ks_vs_normal(dist: DiscreteDistribution, mean: float, stddev: float) -> float:
    """KS distance between an integer-valued law and N(mean, stddev^2).

    The normal CDF is read at x + 1/2 (continuity correction), so a lattice
    law that is close to normal scores close to zero.
    """
    if not dist.support:
        return math.nan
    pmf = dist.as_dict()
    worst = 0.0
    acc = 0.0
    for x in range(dist.support[0] - 1, dist.support[-1] + 1):
        acc += float(pmf.get(x, 0))
        worst = max(worst, abs(acc - normal_cdf(x + 0.5, mean, stddev)))
    return worst


def distribution_json(result: SampleResult) -> str:
    return json.dumps(
        {"summary": result.summary(), "vertex": result.vertex.to_json_obj(), "genus": result.genus.to_json_obj()},
        indent=1,
    )
