from hypothesis import strategies as st

from origami_genus.perm import Permutation


@st.composite
def perms(draw, n=None, max_n=12):
    if n is None:
        n = draw(st.integers(1, max_n))
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def perm_pairs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    return draw(perms(n)), draw(perms(n))
