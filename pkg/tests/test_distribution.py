import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from origami_genus.distribution import (
    DiscreteDistribution,
    EULER_GAMMA,
    SamplerConfig,
    alternating_cycle_distribution,
    batch_commutator,
    batch_connected,
    batch_cycle_counts,
    character_vertex_distribution,
    compare_distributions,
    distribution_json,
    exact_genus_distribution,
    harmonic_number,
    ks_vs_normal,
    normal_cdf,
    sample_genus_distribution,
    stirling_first_kind,
    theoretical_cycle_stats,
    theoretical_genus_stats,
)
from origami_genus.perm import Permutation, all_permutations, commutator, count_cycles, is_transitive

# exhaustive n = 5 raw-pair TV to the A_5 law is 1/15 = 0.0667; frozen threshold
TV_N5_TOLERANCE = 0.12


def test_stirling_examples():
    assert stirling_first_kind(1) == [1]
    assert stirling_first_kind(3) == [2, 3, 1]
    assert sum(stirling_first_kind(5)) == 120
    for n in range(1, 9):
        counts = [0] * n
        for p in all_permutations(n):
            counts[p.num_cycles() - 1] += 1
        assert counts == stirling_first_kind(n)
    with pytest.raises(ValueError):
        stirling_first_kind(65)


def test_alternating_examples():
    d2 = alternating_cycle_distribution(2)
    assert d2.pmf(2) == 1 and d2.pmf(1) == 0
    d3 = alternating_cycle_distribution(3)
    assert d3.as_dict() == {1: Fraction(2, 3), 3: Fraction(1, 3)}
    for n in range(1, 31):
        assert sum(alternating_cycle_distribution(n).mass) == 1


def test_alternating_matches_enumeration():
    for n in range(2, 7):
        counts = {}
        for p in all_permutations(n):
            if (n - p.num_cycles()) % 2 == 0:
                counts[p.num_cycles()] = counts.get(p.num_cycles(), 0) + 1
        assert DiscreteDistribution.from_counts(counts, exact=True).as_dict() == alternating_cycle_distribution(n).as_dict()


def test_distribution_validation():
    with pytest.raises(ValueError):
        DiscreteDistribution((1, 2), (Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValueError):
        DiscreteDistribution((2, 1), (0.5, 0.5))
    with pytest.raises(ValueError):
        DiscreteDistribution((1,), (-1.0,))
    DiscreteDistribution((1, 2), (0.1, 0.9))


def test_exact_examples():
    v, g = exact_genus_distribution(2, "reject-disconnected")
    assert g.as_dict() == {1: 1}
    assert v.counts == (3,)
    _, g1 = exact_genus_distribution(1)
    assert g1.as_dict() == {1: 1}
    v5, _ = exact_genus_distribution(5, "raw-pairs")
    tv, _ = compare_distributions(v5, alternating_cycle_distribution(5))
    assert tv < TV_N5_TOLERANCE
    assert tv == pytest.approx(1 / 15)
    with pytest.raises(ValueError):
        exact_genus_distribution(7)
    with pytest.raises(ValueError):
        exact_genus_distribution(3, "bogus")


def test_exact_against_pure_python():
    n = 4
    raw, conn = {}, {}
    for a in all_permutations(n):
        for b in all_permutations(n):
            e = commutator(a, b).num_cycles()
            raw[e] = raw.get(e, 0) + 1
            if is_transitive([a, b], n):
                conn[e] = conn.get(e, 0) + 1
    v_raw, _ = exact_genus_distribution(n, "raw-pairs")
    v_conn, g = exact_genus_distribution(n, "reject-disconnected")
    assert dict(zip(v_raw.support, v_raw.counts)) == raw
    assert dict(zip(v_conn.support, v_conn.counts)) == conn
    assert dict(zip(g.support, g.counts)) == {(2 - e + n) // 2: c for e, c in conn.items()}


@pytest.mark.parametrize("n", range(1, 7))
def test_character_law_matches_enumeration(n):
    v, _ = exact_genus_distribution(n, "raw-pairs")
    assert character_vertex_distribution(n).as_dict() == v.as_dict()


def test_support_and_parity():
    for n in range(1, 7):
        v, g = exact_genus_distribution(n, "raw-pairs")
        assert all(e % 2 == n % 2 for e in v.support)
        assert all(1 <= x <= (2 - 1 + n) // 2 for x in g.support)


def test_batch_kernels_match_scalar():
    rng = np.random.default_rng(4)
    a = np.array([rng.permutation(9) for _ in range(500)])
    b = np.array([rng.permutation(9) for _ in range(500)])
    c = batch_commutator(a, b)
    cyc = batch_cycle_counts(c)
    conn = batch_connected(a, b)
    for i in range(500):
        pa, pb = Permutation(tuple(a[i].tolist())), Permutation(tuple(b[i].tolist()))
        assert tuple(c[i].tolist()) == commutator(pa, pb).img
        assert cyc[i] == count_cycles(c[i].tolist())
        assert conn[i] == is_transitive([pa, pb], 9)


def test_sampler_small_n():
    for seed in (0, 1, 99):
        res = sample_genus_distribution(SamplerConfig(2, 500, seed))
        assert res.genus.as_dict() == {1: 1.0}
    res = sample_genus_distribution(SamplerConfig(1, 10, 3))
    assert res.genus.as_dict() == {1: 1.0}


def test_sampler_reject_counts_and_raw_mode():
    rej = sample_genus_distribution(SamplerConfig(3, 3000, 5))
    assert rej.rejected > 0
    assert sum(rej.genus.counts) == 3000
    raw = sample_genus_distribution(SamplerConfig(3, 3000, 5, mode="raw-pairs"))
    assert raw.rejected == 0
    assert sum(raw.vertex.counts) == 3000
    assert sum(raw.genus.counts) < 3000


def test_sampler_deterministic_across_workers_and_chunks():
    base = SamplerConfig(30, 4000, 42, workers=1)
    a = distribution_json(sample_genus_distribution(base))
    b = distribution_json(sample_genus_distribution(SamplerConfig(30, 4000, 42, workers=3)))
    c = distribution_json(sample_genus_distribution(SamplerConfig(30, 4000, 42, workers=1, chunk=333)))
    assert a == b == c
    d = distribution_json(sample_genus_distribution(SamplerConfig(30, 4000, 43)))
    assert a != d


def test_sampler_config_validation():
    for bad in (dict(n=0, samples=1), dict(n=3, samples=0), dict(n=3, samples=1, seed=-1),
                dict(n=3, samples=1, mode="x"), dict(n=3, samples=1, workers=0)):
        with pytest.raises(ValueError):
            SamplerConfig(**bad)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_sampled_matches_exact(n):
    _, exact = exact_genus_distribution(n)
    res = sample_genus_distribution(SamplerConfig(n, 200_000, 11))
    tv, _ = compare_distributions(res.genus, exact)
    assert tv < 0.01


@pytest.mark.slow
def test_sampled_matches_exact_million_samples():
    _, exact = exact_genus_distribution(6)
    res = sample_genus_distribution(SamplerConfig(6, 1_000_000, 17, workers=4))
    assert compare_distributions(res.genus, exact)[0] < 0.01


def test_theoretical_stats():
    s = theoretical_cycle_stats(round(math.e ** 4))
    assert s.mean == pytest.approx(4 + EULER_GAMMA, abs=0.01)
    assert abs(float(harmonic_number(10_000)) - theoretical_cycle_stats(10_000).mean) < 0.01
    sds = [theoretical_cycle_stats(n).stddev for n in np.unique(np.logspace(1, 6, 200).astype(int))]
    assert all(x > 0 for x in sds) and all(b > a for a, b in zip(sds, sds[1:]))
    g = theoretical_genus_stats(100)
    assert g.mean == pytest.approx(48.409, abs=5e-4)
    c = theoretical_cycle_stats(100)
    assert g.mean == -c.mean / 2 + 1 + 50
    assert g.stddev == c.stddev / 2
    with pytest.raises(ValueError):
        theoretical_cycle_stats(1)
    assert EULER_GAMMA == 0.57721566490153286061


def test_compare_examples():
    a = DiscreteDistribution((0, 1), (Fraction(1, 2), Fraction(1, 2)))
    assert compare_distributions(a, a) == (0.0, 0.0)
    p0 = DiscreteDistribution((0,), (Fraction(1),))
    p1 = DiscreteDistribution((1,), (Fraction(1),))
    assert compare_distributions(p0, p1) == (1.0, 1.0)


def test_normal_cdf():
    assert normal_cdf(3.0, 3.0, 2.0) == 0.5
    assert normal_cdf(1.0) == pytest.approx(0.8413447460685429, abs=1e-7)
    assert normal_cdf(-1.96) == pytest.approx(0.024997895148220435, abs=1e-7)
    grid = [normal_cdf(x) for x in np.linspace(-8, 8, 1000)]
    assert all(b >= a for a, b in zip(grid, grid[1:]))
    with pytest.raises(ValueError):
        normal_cdf(0, 0, 0)


def test_ks_vs_normal_lattice():
    # a discretized normal scores near zero, a shifted one does not
    support = list(range(-10, 11))
    mass = [normal_cdf(x + 0.5, 0, 3) - normal_cdf(x - 0.5, 0, 3) for x in support]
    mass[-1] += 1 - sum(mass)
    d = DiscreteDistribution(tuple(support), tuple(mass))
    assert ks_vs_normal(d, 0, 3) < 1e-3
    assert ks_vs_normal(d, 2, 3) > 0.2


def test_csv_output():
    _, g = exact_genus_distribution(4)
    lines = g.to_csv().splitlines()
    assert lines[0] == "value,probability,count"
    assert lines[1].startswith("1,")


@settings(max_examples=25)
@given(st.integers(1, 60))
def test_stirling_row_sum(n):
    assert sum(stirling_first_kind(n)) == math.factorial(n)
