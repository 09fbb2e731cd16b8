import itertools
import json
import math
from fractions import Fraction

import pytest

from origami_genus import wreath_chars as wc
from origami_genus.gaussian import GaussianRational as G
from origami_genus.origami import make_origami, sigma_element, sigma_tau
from origami_genus.perm import Permutation, all_permutations, compose, cycle_type, inverse
from origami_genus.wreath import C4, TopGroup, WreathElement, enumerate_wreath, w_conjugate, w_inverse, w_multiply
from origami_genus.young import f_lambda, partitions

R0, R1, R2, R3 = C4.elements
I = G(0, 1)


@pytest.fixture(scope="module")
def ctx2():
    return wc.irreducible_system(2)


@pytest.fixture(scope="module")
def ctx3():
    return wc.irreducible_system(3)


def test_c4_table_rows():
    table = [[wc.c4_character(k, g) for g in C4.elements] for k in (1, 2, 3, 4)]
    assert table == [[1, 1, 1, 1], [1, I, -1, -I], [1, -1, 1, -1], [1, -I, -1, I]]
    for a, b in itertools.product(range(4), repeat=2):
        ip = sum((x * y.conjugate() for x, y in zip(table[a], table[b])), G(0)) / 4
        assert ip == (1 if a == b else 0)
    with pytest.raises(ValueError):
        wc.c4_character(5, R0)
    with pytest.raises(ValueError):
        wc.c4_character(1, Permutation.parse("(1 2)", 4))


def test_c4_collapse_factor():
    # chi((13)(24)) chi((1234))^2 / chi(1) is 1 for every C4 character
    assert all(wc.c4_collapse_factor(k) == 1 for k in (1, 2, 3, 4))


def test_gaussian_arithmetic():
    a, b = G(Fraction(1, 2), 3), G(-2, Fraction(1, 3))
    assert (a * b) / b == a
    assert a - a == 0
    assert G.i_power(5) == I
    assert complex(a) == complex(0.5, 3)
    assert G(2, 0).to_json() == {"re_num": 2, "re_den": 1, "im_num": 0, "im_den": 1}
    with pytest.raises(ZeroDivisionError):
        a / 0


def test_extended_character_generic_top():
    s3 = TopGroup.symmetric(3)
    base = ((2, 1), (2, 1), (1, 1, 1))
    elem = WreathElement(Permutation.parse("(1 2)", 3),
                         (Permutation.parse("(1 2)", 3), Permutation.identity(3), Permutation.parse("(1 2 3)", 3)))
    assert elem.top in s3
    assert wc.extended_character(base, elem) == 0
    bad = WreathElement(Permutation.parse("(2 3)", 3), elem.bottom)
    with pytest.raises(ValueError):
        wc.extended_character(base, bad)


def test_extended_character_trivial_cases():
    for lam in partitions(3):
        assert wc.extended_character((lam,) * 4, WreathElement.identity(4, 3)) == f_lambda(lam) ** 4
    triv = ((3,),) * 4
    for g in list(enumerate_wreath(C4, 3))[::97]:
        assert wc.extended_character(triv, g) == 1


def test_irrep_labels():
    irreps1 = wc.wreath_irreps(1)
    assert len(irreps1) == 4 and all(d.inertia_label == "C4" and d.dimension() == 1 for d in irreps1)
    irreps2 = wc.wreath_irreps(2)
    assert sum(1 for d in irreps2 if d.inertia_label == "C4") == 8
    assert len(irreps2) == 13
    assert len(wc.wreath_irreps(3)) == 36
    free = next(d for d in irreps2 if d.inertia_label == "1")
    assert free.dimension() == 4 * math.prod(f_lambda(p) for p in free.base)
    with pytest.raises(ValueError):
        wc.WreathIrrep(((2,), (2,), (2,), (1, 1)), 1)  # not the least rotation
    with pytest.raises(ValueError):
        wc.WreathIrrep(((1, 1), (2,), (1, 1), (2,)), 3)  # period 2 has two top characters


def test_trivial_irrep_is_one(ctx2):
    triv = wc.WreathIrrep(((2,),) * 4, 1)
    assert all(wc.irrep_character(triv, g) == 1 for g in ctx2.elements[::5])


def test_system_n1():
    ctx = wc.irreducible_system(1)
    assert len(ctx.irreducibles) == 4 == len(ctx.class_sizes)
    assert sum(d.dimension() ** 2 for d in ctx.irreducibles) == 4


def test_system_n2_counts(ctx2):
    assert len(ctx2.irreducibles) == len(ctx2.class_sizes) == 13
    assert sum(ctx2.class_sizes) == 64 == ctx2.order
    assert sum(d.dimension() ** 2 for d in ctx2.irreducibles) == 64
    assert [v.re for v in ctx2.dimensions()] == [d.dimension() for d in ctx2.irreducibles]


def test_orthonormal_n2(ctx2):
    k = len(ctx2.values)
    for a, b in itertools.product(range(k), repeat=2):
        assert ctx2.inner_product(a, b) == (1 if a == b else 0)


def test_average_matches_transversal(ctx2):
    for d in ctx2.irreducibles:
        for rep in ctx2.representatives:
            assert wc.irrep_character(d, rep, ctx2, method="average") == wc.irrep_character(d, rep)


def test_class_functions_exhaustive_n2(ctx2):
    for d in ctx2.irreducibles:
        row = ctx2.values[ctx2.irreducibles.index(d)]
        for g in ctx2.elements:
            assert wc.irrep_character(d, g) == row[ctx2.classify(g)]


def test_diagonal_mode():
    ctx = wc.irreducible_system(10, full=False)
    assert len(ctx.irreducibles) == 4 * len(partitions(10))
    assert ctx.values == []
    with pytest.raises(ValueError):
        wc.irreducible_system(4)
    with pytest.raises(ValueError):
        wc.irreducible_system(16, full=False)


def test_frobenius_s3_examples():
    ctx = wc.symmetric_class_table(3)
    t = Permutation.parse("(1 2)", 3)
    c3 = Permutation.parse("(1 2 3)", 3)
    e = Permutation.identity(3)
    assert wc.frobenius_count(ctx, ctx.classify(t), ctx.classify(t), e) == 3
    brute = sum(1 for x in all_permutations(3) for y in all_permutations(3)
                if cycle_type(x) == (2, 1) and cycle_type(y) == (3,) and compose(x, y) == t)
    assert wc.frobenius_count(ctx, ctx.classify(t), ctx.classify(c3), t) == brute


def test_frobenius_sigma_tau_classes_n2(ctx2):
    cs = ctx2.classify(wc.sigma_element(2))
    ct = ctx2.classify(wc.tau_element(2))
    for z in ctx2.elements:
        brute = sum(1 for x in ctx2.elements for y in ctx2.elements
                    if ctx2.classify(x) == cs and ctx2.classify(y) == ct and w_multiply(x, y) == z)
        assert wc.frobenius_count(ctx2, cs, ct, z) == brute


def test_frobenius_rejects_corrupt_table(ctx2):
    broken = wc.ClassTable(ctx2.order, ctx2.class_sizes, [list(r) for r in ctx2.values], ctx2.classify,
                           identity_class=ctx2.identity_class)
    broken.values[3][5] = broken.values[3][5] + G(0, 1)
    with pytest.raises(ValueError):
        for c1, c2 in itertools.product(range(13), repeat=2):
            wc.frobenius_count(broken, c1, c2, ctx2.representatives[5])


def test_sigma_class_is_independent_of_pair(ctx3):
    target = ctx3.classify(wc.sigma_element(3))
    for a, b in itertools.product(all_permutations(3), repeat=2):
        o = make_origami(3, a, b, allow_disconnected=True)
        assert ctx3.classify(sigma_element(o)) == target


def test_sigma_tau_probability_examples(ctx2):
    assert wc.sigma_tau_probability(WreathElement(R3, (Permutation.identity(1),) * 4), wc.irreducible_system(1)) == 1
    st_ = sigma_tau(make_origami(2, Permutation.parse("(1 2)", 2), Permutation.parse("(1 2)", 2)))
    assert wc.sigma_tau_probability(st_, ctx2) == wc.reduced_probability(Permutation.identity(2)) == Fraction(1, 8)
    for g in ctx2.elements:
        if g.top != R3:
            assert wc.sigma_tau_probability(g, ctx2) == 0


def test_sigma_tau_sums_to_one(ctx2, ctx3):
    for ctx in (ctx2, ctx3):
        total = sum((wc.sigma_tau_probability(rep, ctx) * size
                     for rep, size in zip(ctx.representatives, ctx.class_sizes)), Fraction(0))
        assert total == 1


def test_reduced_examples():
    assert wc.reduced_probability(Permutation.identity(1)) == 1
    assert wc.reduced_probability(Permutation.identity(2)) == Fraction(1, 8)


def test_reduced_matches_wreath_sum_n3(ctx3):
    e = Permutation.identity(3)
    for p in all_permutations(3):
        elem = WreathElement(R3, (p, e, e, e))
        assert wc.sigma_tau_probability(elem, ctx3) == wc.reduced_probability(p)


def test_reduced_is_class_uniform_over_fibre(ctx3):
    # every bottom with the same cycle product gives the same probability
    p = Permutation.parse("(1 2 3)", 3)
    perms = all_permutations(3)
    for f2, f3 in itertools.product(perms[:3], perms[2:5]):
        # top (1432) sends 2 -> 1, so the cycle product is f1 f2 f3 f4
        f4 = perms[1]
        f1 = compose(p, inverse(compose(f2, compose(f3, f4))))
        elem = WreathElement(R3, (f1, f2, f3, f4))
        assert wc.sigma_tau_probability(elem, ctx3) == wc.reduced_probability(p)


@pytest.mark.parametrize("n", [2, 3])
def test_pair_normalization(n):
    counts = {}
    perms = all_permutations(n)
    for a, b in itertools.product(perms, repeat=2):
        c = compose(compose(a, b), compose(inverse(a), inverse(b)))
        counts[c] = counts.get(c, 0) + 1
    for p in perms:
        brute = Fraction(counts.get(p, 0), len(perms) ** 2)
        assert brute == wc.pair_commutator_probability(p)
        assert brute == math.factorial(n) ** 3 * wc.reduced_probability(p)


def test_refined_examples():
    c5 = Permutation.parse("(1 2 3 4 5)", 5)
    lead, rest = wc.refined_probability(c5)
    assert lead == Fraction(2, 120 ** 4) * Fraction(3, 4)
    assert lead == wc.four_term_contribution(c5)
    t = Permutation.parse("(1 2)", 4)
    assert wc.refined_probability(t)[0] == 0
    e8 = Permutation.identity(8)
    lead, rest = wc.refined_probability(e8)
    assert lead + rest == wc.reduced_probability(e8)
    for n in (1, 2, 3):
        with pytest.raises(ValueError):
            wc.refined_probability(Permutation.identity(n))


def test_json_export(ctx2):
    data = json.loads(ctx2.to_json())
    assert data["order"] == 64 and len(data["classes"]) == 13 and len(data["values"]) == 13
    assert set(data["values"][0][0]) == {"re_num", "re_den", "im_num", "im_den"}
