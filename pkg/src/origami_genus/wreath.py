"""
Wreath products H wr S_n with H a permutation group on k symbols.

An element ``(h; f_1, ..., f_k)`` has a top permutation ``h`` of degree k and
one bottom permutation of degree n per top symbol.  Multiplication twists the
bottom of the right factor by the top of the left one::

    (h; f)(h'; f') = (h h'; f * f'_h),   f'_h(i) = f'(h^-1(i))
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .perm import Permutation, all_permutations, compose, cycle_type, inverse
from .young import Partition

MAX_ENUMERATION = 10**7


@dataclass(frozen=True, slots=True)
class WreathElement:
    top: Permutation
    bottom: tuple[Permutation, ...]

    def __post_init__(self):
        if len(self.bottom) != self.top.degree:
            raise ValueError(f"top of degree {self.top.degree} needs {self.top.degree} bottoms, got {len(self.bottom)}")
        if len({b.degree for b in self.bottom}) > 1:
            raise ValueError("bottom permutations must share one degree")

    @property
    def k(self) -> int:
        return self.top.degree

    @property
    def n(self) -> int:
        return self.bottom[0].degree

    @classmethod
    def identity(cls, k: int, n: int) -> WreathElement:
        e = Permutation.identity(n)
        return cls(Permutation.identity(k), (e,) * k)

    @classmethod
    def parse(cls, text: str, n: int) -> WreathElement:
        """Parse ``top=(1 2 3 4); f1=(1 2); f2=id; f3=(1 2); f4=id``."""
        fields = {}
        for chunk in text.split(";"):
            if not chunk.strip():
                continue
            key, sep, value = chunk.partition("=")
            if not sep:
                raise ValueError(f"expected key=value, got {chunk!r}")
            fields[key.strip()] = value.strip()
        if "top" not in fields:
            raise ValueError("missing top=")
        keys = sorted((k for k in fields if k != "top"), key=lambda s: int(s[1:]) if re.fullmatch(r"f\d+", s) else -1)
        k = len(keys)
        if keys != [f"f{i}" for i in range(1, k + 1)]:
            raise ValueError(f"bottom entries must be f1..f{k}, got {keys}")
        top = Permutation.parse(fields["top"], k)
        return cls(top, tuple(Permutation.parse(fields[f"f{i}"], n) for i in range(1, k + 1)))

    def __str__(self) -> str:
        parts = [f"top={self.top}"] + [f"f{i}={b}" for i, b in enumerate(self.bottom, 1)]
        return "; ".join(parts)

    def __mul__(self, other: WreathElement) -> WreathElement:
        return w_multiply(self, other)


def _check_shape(a: WreathElement, b: WreathElement) -> None:
    if (a.k, a.n) != (b.k, b.n):
        raise ValueError(f"shape mismatch: (k, n) = {(a.k, a.n)} vs {(b.k, b.n)}")


def w_multiply(a: WreathElement, b: WreathElement) -> WreathElement:
    _check_shape(a, b)
    hinv = inverse(a.top).img
    bottom = tuple(compose(a.bottom[i], b.bottom[hinv[i]]) for i in range(a.k))
    return WreathElement(compose(a.top, b.top), bottom)


def w_inverse(a: WreathElement) -> WreathElement:
    h = a.top.img
    return WreathElement(inverse(a.top), tuple(inverse(a.bottom[h[i]]) for i in range(a.k)))


def w_conjugate(a: WreathElement, x: WreathElement) -> WreathElement:
    """``x a x^-1``."""
    return w_multiply(w_multiply(x, a), w_inverse(x))


def w_act(a: WreathElement, i: int, j: int) -> tuple[int, int]:
    """Image of the pair (i, j) in [k] x [n] (1-based): ``(h(i), f_{h(i)}(j))``."""
    if not (1 <= i <= a.k and 1 <= j <= a.n):
        raise ValueError(f"({i}, {j}) outside [{a.k}] x [{a.n}]")
    hi = a.top.img[i - 1]
    return hi + 1, a.bottom[hi].img[j - 1] + 1


def cycle_products(a: WreathElement) -> list[Permutation]:
    """One product per top cycle, ordered by cycle leader j:
    ``f(j) f(h^-1(j)) ... f(h^-(l-1)(j))``."""
    hinv = inverse(a.top).img
    out = []
    for cyc in a.top.cycles():
        j = cyc[0] - 1
        g = a.bottom[j]
        x = hinv[j]
        for _ in range(len(cyc) - 1):
            g = compose(g, a.bottom[x])
            x = hinv[x]
        out.append(g)
    return out


@dataclass(frozen=True)
class WreathCycleType:
    """Sparse map (bottom class, top cycle length) -> count, stored sorted."""

    entries: tuple[tuple[tuple[Partition, int], int], ...]

    @classmethod
    def from_counts(cls, counts: dict[tuple[Partition, int], int]) -> WreathCycleType:
        return cls(tuple(sorted((key, c) for key, c in counts.items() if c)))

    def as_dict(self) -> dict[tuple[Partition, int], int]:
        return dict(self.entries)

    def degree(self) -> int:
        return sum(length * c for (_, length), c in self.entries)

    def __str__(self) -> str:
        return ", ".join(f"{'+'.join(map(str, cls))}@{length}:{c}" for (cls, length), c in self.entries)


def w_cycle_type(a: WreathElement) -> WreathCycleType:
    counts: Counter = Counter()
    for cyc, g in zip(a.top.cycles(), cycle_products(a)):
        counts[(cycle_type(g), len(cyc))] += 1
    return WreathCycleType.from_counts(counts)


def _slot_classes(a: WreathElement) -> list[Partition]:
    # class of the cycle product of the top cycle through each slot
    out: list[Partition] = [()] * a.k
    for cyc, g in zip(a.top.cycles(), cycle_products(a)):
        ct = cycle_type(g)
        for i in cyc:
            out[i - 1] = ct
    return out


def w_class_key(a: WreathElement, group: TopGroup) -> tuple:
    """Complete conjugacy invariant of ``a`` in ``group wr S_n``.

    Conjugating by a base element only conjugates the cycle products, and
    conjugating by ``(x; e)`` relabels the slots by x, so the least relabelling
    of (top, slot classes) over x in the top group identifies the class.
    """
    if a.top not in group:
        raise ValueError(f"top {a.top} is not in the top group")
    h = a.top.img
    labels = _slot_classes(a)
    best = None
    for x in group.elements:
        xi = x.img
        new_top = [0] * a.k
        new_labels: list[Partition] = [()] * a.k
        for i in range(a.k):
            new_top[xi[i]] = xi[h[i]]
            new_labels[xi[i]] = labels[i]
        key = (tuple(new_top), tuple(new_labels))
        if best is None or key < best:
            best = key
    return best


def w_is_conjugate(a: WreathElement, b: WreathElement, group: TopGroup | None = None) -> bool:
    """Conjugacy in ``group wr S_n``.

    With no group the top is the full symmetric group and equal cycle types
    decide it.  For a smaller top group the cycle type can merge classes (in
    C_4 wr S_n it does not separate r from r^-1), so the finer key is used.
    """
    _check_shape(a, b)
    if group is None:
        return w_cycle_type(a) == w_cycle_type(b)
    return w_class_key(a, group) == w_class_key(b, group)


@dataclass(frozen=True)
class TopGroup:
    """A permutation group given by its full element list; closure is checked."""

    elements: tuple[Permutation, ...]

    def __post_init__(self):
        if not self.elements:
            raise ValueError("empty group")
        k = self.elements[0].degree
        if any(g.degree != k for g in self.elements):
            raise ValueError("elements of mixed degree")
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise ValueError("repeated elements")
        if Permutation.identity(k) not in elems:
            raise ValueError("identity missing")
        for g in self.elements:
            for h in self.elements:
                if compose(g, h) not in elems:
                    raise ValueError(f"not closed: {g} * {h}")

    @property
    def degree(self) -> int:
        return self.elements[0].degree

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in set(self.elements)

    @classmethod
    def cyclic(cls, k: int) -> TopGroup:
        """``<(1 2 ... k)>``, listed as powers 0..k-1."""
        r = Permutation(tuple((i + 1) % k for i in range(k)))
        elems = [Permutation.identity(k)]
        for _ in range(k - 1):
            elems.append(compose(r, elems[-1]))
        return cls(tuple(elems))

    @classmethod
    def symmetric(cls, k: int) -> TopGroup:
        return cls(tuple(all_permutations(k)))


C4 = TopGroup.cyclic(4)


def wreath_order(group: TopGroup, n: int) -> int:
    return group.order * math.factorial(n) ** group.degree


def enumerate_wreath(group: TopGroup, n: int, bound: int = MAX_ENUMERATION) -> Iterator[WreathElement]:
    """Every element of ``group wr S_n`` exactly once, top-major order."""
    size = wreath_order(group, n)
    if size > bound:
        raise ValueError(f"|H wr S_{n}| = {size} exceeds enumeration bound {bound}")
    sn = all_permutations(n)
    for h in group.elements:
        for bottom in itertools.product(sn, repeat=group.degree):
            yield WreathElement(h, bottom)


def wreath_generators(group: TopGroup, n: int) -> list[WreathElement]:
    """A generating set: ``(h; e)`` for h in the top group, plus S_n generators in slot 1."""
    k = group.degree
    e = Permutation.identity(n)
    gens = [WreathElement(h, (e,) * k) for h in group.elements if not h.is_identity()]
    if n > 1:
        for s in (Permutation.parse("(1 2)", n), Permutation(tuple((i + 1) % n for i in range(n)))):
            gens.append(WreathElement(Permutation.identity(k), (s,) + (e,) * (k - 1)))
    return gens


def conjugacy_classes_bruteforce(
    elements: Iterable[WreathElement], generators: Sequence[WreathElement]
) -> list[list[WreathElement]]:
    """Orbits of conjugation by ``generators`` on ``elements``; no cycle-type theory used."""
    remaining = set(elements)
    classes = []
    while remaining:
        seed = min(remaining, key=str)
        cls = {seed}
        queue = deque([seed])
        while queue:
            a = queue.popleft()
            for x in generators:
                b = w_conjugate(a, x)
                if b not in cls:
                    cls.add(b)
                    queue.append(b)
        remaining -= cls
        classes.append(sorted(cls, key=str))
    return classes
