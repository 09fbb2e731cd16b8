import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from origami_genus.perm import Permutation, all_permutations, cycle_type
from origami_genus.wreath import (
    C4,
    TopGroup,
    WreathElement,
    conjugacy_classes_bruteforce,
    cycle_products,
    enumerate_wreath,
    w_act,
    w_class_key,
    w_conjugate,
    w_cycle_type,
    w_inverse,
    w_is_conjugate,
    w_multiply,
    wreath_generators,
)


def P(text, n):
    return Permutation.parse(text, n)


def W(text, n):
    return WreathElement.parse(text, n)


SIGMA_O1 = W("top=(1 3)(2 4); f1=(1 2); f2=(1 2); f3=(1 2); f4=(1 2)", 2)
TAU_2 = W("top=(1 2 3 4); f1=id; f2=id; f3=id; f4=id", 2)


def random_element(group, n, r):
    top = r.choice(group.elements)
    perms = all_permutations(n) if n <= 5 else None
    bottom = []
    for _ in range(group.degree):
        if perms:
            bottom.append(r.choice(perms))
        else:
            img = list(range(n))
            r.shuffle(img)
            bottom.append(Permutation(tuple(img)))
    return WreathElement(top, tuple(bottom))


def test_multiply_example():
    st_ = w_multiply(SIGMA_O1, TAU_2)
    assert st_ == W("top=(1 4 3 2); f1=(1 2); f2=(1 2); f3=(1 2); f4=(1 2)", 2)


def test_identity_and_inverse():
    e = WreathElement.identity(4, 2)
    assert w_multiply(SIGMA_O1, e) == SIGMA_O1
    assert w_multiply(SIGMA_O1, w_inverse(SIGMA_O1)) == e
    assert w_inverse(e) == e


def test_inverse_k2_formula():
    p, q = P("(1 2 3)", 3), P("(1 2)", 3)
    a = WreathElement(P("(1 2)", 2), (p, q))
    assert w_inverse(a) == WreathElement(P("(1 2)", 2), (q ** -1, p ** -1))


def test_double_inverse_exhaustive_k2_n3():
    for a in enumerate_wreath(TopGroup.symmetric(2), 3):
        assert w_inverse(w_inverse(a)) == a


def test_shape_mismatch():
    with pytest.raises(ValueError):
        w_multiply(SIGMA_O1, WreathElement.identity(4, 3))
    with pytest.raises(ValueError):
        WreathElement(P("(1 2)", 2), (P("(1 2)", 2),))


def test_action_examples():
    st_ = w_multiply(SIGMA_O1, TAU_2)
    assert w_act(st_, 1, 1) == (4, 2)
    assert w_act(st_, 4, 2) == (3, 1)
    e = WreathElement.identity(4, 3)
    assert all(w_act(e, i, j) == (i, j) for i in range(1, 5) for j in range(1, 4))
    with pytest.raises(ValueError):
        w_act(e, 5, 1)


def test_cycle_products_examples():
    ps = [P("(1 2)", 3), P("(2 3)", 3), P("(1 2 3)", 3), Permutation.identity(3)]
    assert cycle_products(WreathElement(Permutation.identity(4), tuple(ps))) == ps
    st_ = w_multiply(SIGMA_O1, TAU_2)
    assert [g.is_identity() for g in cycle_products(st_)] == [True]
    p, q = P("(1 2 3)", 3), P("(1 2)", 3)
    assert cycle_products(WreathElement(P("(1 2)", 2), (p, q))) == [p * q]


def test_cycle_type_examples():
    assert w_cycle_type(WreathElement.identity(4, 2)).as_dict() == {((1, 1), 1): 4}
    assert w_cycle_type(w_multiply(SIGMA_O1, TAU_2)).as_dict() == {((1, 1), 4): 1}
    tau5 = WreathElement(C4.elements[1], (Permutation.identity(5),) * 4)
    assert w_cycle_type(tau5).as_dict() == {((1, 1, 1, 1, 1), 4): 1}
    assert w_cycle_type(tau5).degree() == 4


def test_parse_round_trip():
    text = "top=(1 2 3 4); f1=(1 2); f2=id; f3=(1 2); f4=id"
    assert str(W(text, 2)) == text
    with pytest.raises(ValueError):
        W("top=(1 2); f1=id; f3=id", 2)


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_wreath(C4, 1)) == 4
    assert sum(1 for _ in enumerate_wreath(C4, 2)) == 64
    elems = list(enumerate_wreath(C4, 3))
    assert len(elems) == 5184 == len(set(elems))
    with pytest.raises(ValueError):
        next(enumerate_wreath(C4, 3, bound=1000))


def test_top_group_validation():
    with pytest.raises(ValueError):
        TopGroup((Permutation.identity(4), C4.elements[1]))
    assert C4.elements == (
        Permutation.identity(4), P("(1 2 3 4)", 4), P("(1 3)(2 4)", 4), P("(1 4 3 2)", 4)
    )


def test_associative_and_action_exhaustive_n2():
    elems = list(enumerate_wreath(C4, 2))
    r = random.Random(1)
    for a, b in itertools.product(elems, repeat=2):
        ab = w_multiply(a, b)
        for i, j in ((1, 1), (3, 2)):
            assert w_act(ab, i, j) == w_act(a, *w_act(b, i, j))
    for _ in range(2000):
        a, b, c = r.choice(elems), r.choice(elems), r.choice(elems)
        assert w_multiply(w_multiply(a, b), c) == w_multiply(a, w_multiply(b, c))


def test_associative_random_n5():
    r = random.Random(2)
    for _ in range(200):
        a, b, c = (random_element(C4, 5, r) for _ in range(3))
        assert w_multiply(w_multiply(a, b), c) == w_multiply(a, w_multiply(b, c))
        i, j = r.randint(1, 4), r.randint(1, 5)
        assert w_act(w_multiply(a, b), i, j) == w_act(a, *w_act(b, i, j))


def _brute_conjugacy(group, n):
    elems = list(enumerate_wreath(group, n))
    classes = conjugacy_classes_bruteforce(elems, wreath_generators(group, n))
    return elems, {g: k for k, cls in enumerate(classes) for g in cls}, classes


def test_class_key_exhaustive_c4_s2():
    elems, cls_of, classes = _brute_conjugacy(C4, 2)
    assert len(classes) == 13
    for a, b in itertools.product(elems, repeat=2):
        assert w_is_conjugate(a, b, C4) == (cls_of[a] == cls_of[b])


def test_cycle_type_conjugation_invariant_c4_s2():
    elems, cls_of, classes = _brute_conjugacy(C4, 2)
    for cls in classes:
        assert len({w_cycle_type(g) for g in cls}) == 1


def test_cycle_type_complete_for_symmetric_top():
    for k, n in ((2, 2), (2, 3), (3, 2)):
        group = TopGroup.symmetric(k)
        elems, cls_of, classes = _brute_conjugacy(group, n)
        assert len({w_cycle_type(g) for g in elems}) == len(classes)
        for a, b in itertools.product(elems[::3], repeat=2):
            assert w_is_conjugate(a, b) == (cls_of[a] == cls_of[b])


def test_cycle_type_coarser_than_classes_for_c4_top():
    # r and r^-1 share a cycle type but are not conjugate under a cyclic top
    elems, _, classes = _brute_conjugacy(C4, 2)
    assert len({w_cycle_type(g) for g in elems}) == 10 < len(classes)
    r, r3 = (WreathElement(C4.elements[e], (Permutation.identity(2),) * 4) for e in (1, 3))
    assert w_cycle_type(r) == w_cycle_type(r3)
    assert not w_is_conjugate(r, r3, C4)


def test_identity_not_conjugate_to_others():
    e = WreathElement.identity(4, 2)
    for a in enumerate_wreath(C4, 2):
        if a != e:
            assert not w_is_conjugate(e, a) and not w_is_conjugate(e, a, C4)


def test_class_key_rejects_foreign_top():
    a = WreathElement(P("(1 2)", 4), (Permutation.identity(2),) * 4)
    with pytest.raises(ValueError):
        w_class_key(a, C4)


@settings(max_examples=60)
@given(st.randoms(use_true_random=False))
def test_conjugates_share_type_random_n4(r):
    a = random_element(C4, 4, r)
    x = random_element(C4, 4, r)
    b = w_conjugate(a, x)
    assert w_is_conjugate(a, b) and w_is_conjugate(a, b, C4)
    # cycle products move within their S_n classes
    assert sorted(map(cycle_type, cycle_products(a))) == sorted(map(cycle_type, cycle_products(b)))


@settings(max_examples=30)
@given(st.randoms(use_true_random=False))
def test_conjugates_share_type_k2_exhaustive_like(r):
    group = TopGroup.symmetric(2)
    a = random_element(group, 2, r)
    x = random_element(group, 2, r)
    assert w_is_conjugate(a, w_conjugate(a, x))
