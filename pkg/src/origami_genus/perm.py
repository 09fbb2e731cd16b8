"""
Permutations of the symbols 1..n.

A :class:`Permutation` stores its images 0-based internally but every public
entry point (calling, cycle notation, ``images``) speaks 1-based symbols.

Composition applies the right factor first::

    >>> p = Permutation.parse("(1 2 3 4)", 4)
    >>> q = Permutation.parse("(1 3)(2 4)", 4)
    >>> print(q * p)
    (1 4 3 2)
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {1..n}; ``img[i]`` is the 0-based image of 0-based symbol ``i``."""

    img: tuple[int, ...]

    def __post_init__(self):
        n = len(self.img)
        if n == 0:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(self.img) != list(range(n)):
            raise ValueError(f"not a bijection of 0..{n - 1}: {self.img}")

    # -- construction -----------------------------------------------------

    @classmethod
    def _trusted(cls, img: tuple[int, ...]) -> Permutation:
        # internal results of compose/inverse are bijections by construction
        p = object.__new__(cls)
        object.__setattr__(p, "img", img)
        return p

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """From the 1-based image list ``[p(1), ..., p(n)]``."""
        return cls(tuple(int(x) - 1 for x in images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], n: int) -> Permutation:
        img = list(range(n))
        seen: set[int] = set()
        for cyc in cycles:
            for x in cyc:
                if not 1 <= x <= n:
                    raise ValueError(f"symbol {x} out of range 1..{n}")
                if x in seen:
                    raise ValueError(f"symbol {x} appears twice")
                seen.add(x)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                img[a - 1] = b - 1
        return cls(tuple(img))

    @classmethod
    def parse(cls, text: str, n: int) -> Permutation:
        """Parse cycle notation such as ``(1 2 3)(4 5)``; ``id`` and ``()`` give the identity."""
        s = text.strip()
        if s in ("", "id", "()"):
            return cls.identity(n)
        if _CYCLE_RE.sub("", s).strip():
            raise ValueError(f"cannot parse cycle notation: {text!r}")
        cycles = []
        for body in _CYCLE_RE.findall(s):
            parts = body.replace(",", " ").split()
            try:
                cycles.append([int(x) for x in parts])
            except ValueError:
                raise ValueError(f"cannot parse cycle notation: {text!r}") from None
        return cls.from_cycles(cycles, n)

    # -- basic protocol -----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.img)

    def __call__(self, x: int) -> int:
        return self.img[x - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else inverse(self)
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = compose(base, result)
        return result

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.img))

    def cycles(self, include_fixed: bool = True) -> list[tuple[int, ...]]:
        """Canonical cycle decomposition: each cycle led by its minimum, sorted by minimum."""
        n = len(self.img)
        seen = [False] * n
        out = []
        for start in range(n):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.img[j]
            if include_fixed or len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def num_cycles(self) -> int:
        return count_cycles(self.img)

    def fixed_points(self) -> int:
        return sum(1 for i, x in enumerate(self.img) if i == x)

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation.parse({format_cycles(self)!r}, {self.degree})"


def count_cycles(img: Sequence[int]) -> int:
    """Number of cycles (fixed points included) of a 0-based image sequence."""
    n = len(img)
    seen = bytearray(n)
    c = 0
    for i in range(n):
        if not seen[i]:
            c += 1
            j = i
            while not seen[j]:
                seen[j] = 1
                j = img[j]
    return c


def format_cycles(p: Permutation) -> str:
    cycles = p.cycles(include_fixed=False)
    if not cycles:
        return "id"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``x -> p(q(x))``."""
    _check_degrees(p, q)
    pi = p.img
    return Permutation._trusted(tuple(pi[x] for x in q.img))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.img):
        inv[x] = i
    return Permutation._trusted(tuple(inv))


def commutator(p: Permutation, q: Permutation) -> Permutation:
    """``p q p^-1 q^-1``."""
    _check_degrees(p, q)
    return compose(compose(p, q), compose(inverse(p), inverse(q)))


def conjugate(p: Permutation, s: Permutation) -> Permutation:
    """``s p s^-1``."""
    return compose(compose(s, p), inverse(s))


def cycle_type(p: Permutation) -> tuple[int, ...]:
    """Cycle lengths (fixed points included) as a weakly decreasing partition of n."""
    return tuple(sorted((len(c) for c in p.cycles()), reverse=True))


def sign(p: Permutation) -> int:
    return -1 if (p.degree - p.num_cycles()) % 2 else 1


def random_permutation(n: int, rng: np.random.Generator) -> Permutation:
    """Uniform permutation of degree n drawn by a Fisher-Yates shuffle from ``rng``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return Permutation(tuple(int(x) for x in rng.permutation(n)))


def orbit(generators: Sequence[Permutation], start: int, n: int) -> set[int]:
    """Orbit of the 1-based symbol ``start`` under the group generated by ``generators``."""
    gens = [g.img for g in generators] + [inverse(g).img for g in generators]
    seen = {start - 1}
    queue = deque([start - 1])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return {x + 1 for x in seen}


def is_transitive(generators: Sequence[Permutation], n: int) -> bool:
    for g in generators:
        if g.degree != n:
            raise ValueError(f"generator of degree {g.degree}, expected {n}")
    return len(orbit(generators, 1, n)) == n


def all_permutations(n: int) -> list[Permutation]:
    """Every element of S_n, in lexicographic order of image lists."""
    from itertools import permutations

    return [Permutation(p) for p in permutations(range(n))]
