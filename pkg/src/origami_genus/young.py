"""
Partitions, Young diagrams and the characters of the symmetric group.

Partitions are plain tuples of weakly decreasing positive ints; ``()`` is the
empty partition of 0.  The same tuple labels an irreducible character
``chi^lambda`` and a conjugacy class (cycle type) of S_n.

Character values come from the Murnaghan-Nakayama recursion on border
strips and are exact Python ints throughout.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np

Partition = tuple[int, ...]

MAX_PARTITION_N = 30
MAX_TABLE_N = 15
MAX_TABLEAUX = 10_000


class BoundExceeded(ValueError):
    """A size guard on an enumeration was hit."""


def is_partition(parts: Sequence[int]) -> bool:
    return all(p > 0 for p in parts) and all(a >= b for a, b in zip(parts, parts[1:]))


def partition_label(p: Partition) -> str:
    """``(3, 1, 1)`` -> ``"3+1+1"``; the empty partition renders as ``"0"``."""
    return "+".join(map(str, p)) if p else "0"


def parse_partition(text: str) -> Partition:
    text = text.strip().strip("()[]")
    parts = [int(x) for x in text.replace("+", ",").replace(" ", ",").split(",") if x]
    parts = [x for x in parts if x != 0]
    if not is_partition(parts):
        raise ValueError(f"not a partition: {text!r}")
    return tuple(parts)


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int, bound: int = MAX_PARTITION_N) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order, ``(n)`` first and ``(1^n)`` last."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds partition bound {bound}")
    return list(_partitions(n, n))


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part >= j) for j in range(1, lam[0] + 1))


def hook_lengths(lam: Partition) -> list[list[int]]:
    """``h[i][j]`` = arm + leg + 1 for every cell, rows indexed from the top."""
    conj = conjugate(lam)
    return [[(lam[i] - j - 1) + (conj[j] - i - 1) + 1 for j in range(lam[i])] for i in range(len(lam))]


def f_lambda(lam: Partition) -> int:
    """Number of standard tableaux of shape ``lam``, from the first-column hook lengths.

    >>> f_lambda((2, 2))
    2
    """
    n = sum(lam)
    first_col = [row[0] for row in hook_lengths(lam)]
    num = math.factorial(n)
    for i in range(len(first_col)):
        for k in range(i + 1, len(first_col)):
            num *= first_col[i] - first_col[k]
    den = 1
    for h in first_col:
        den *= math.factorial(h)
    q, r = divmod(num, den)
    assert r == 0
    return q


# ---------------------------------------------------------------------------
# Standard tableaux


def _reading_word(t: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(x for row in t for x in row)


def standard_tableaux(lam: Partition, bound: int = MAX_TABLEAUX) -> list[tuple[tuple[int, ...], ...]]:
    """Standard tableaux of shape ``lam``, greatest first under the row-major order.

    Two tableaux are compared on their row-by-row reading words; the one with
    the larger entry at the first difference is the greater.  Listing the
    greater tableau first reproduces ``[[1, 3], [2, 4]], [[1, 2], [3, 4]]`` for
    shape (2, 2).
    """
    f = f_lambda(lam)
    if f > bound:
        raise BoundExceeded(f"f^lambda={f} exceeds tableau bound {bound}")
    n = sum(lam)
    out: list[tuple[tuple[int, ...], ...]] = []
    rows: list[list[int]] = [[] for _ in lam]

    def place(k: int) -> None:
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i, r in enumerate(rows):
            if len(r) < lam[i] and (i == 0 or len(rows[i - 1]) > len(r)):
                r.append(k)
                place(k + 1)
                r.pop()

    place(1)
    out.sort(key=_reading_word, reverse=True)
    return out


# ---------------------------------------------------------------------------
# Border strips and Murnaghan-Nakayama


@dataclass(frozen=True)
class BorderStrip:
    result: Partition
    length: int
    leg: int


def border_strips(lam: Partition, k: int) -> list[BorderStrip]:
    """Every removable border strip of length ``k``, one per hook of length ``k``.

    The strip belonging to the hook at cell (i, j) runs along the rim from the
    end of row i down to row i + leg; row r of that range shrinks to
    ``lam[r + 1] - 1`` and the last one to ``j``.
    """
    conj = conjugate(lam)
    strips = []
    for i, row in enumerate(lam):
        for j in range(row):
            arm = row - j - 1
            leg = conj[j] - i - 1
            if arm + leg + 1 != k:
                continue
            new = list(lam)
            for r in range(i, i + leg):
                new[r] = lam[r + 1] - 1
            new[i + leg] = j
            strips.append(BorderStrip(tuple(x for x in new if x), k, leg))
    return strips


@lru_cache(maxsize=None)
def _mn(lam: Partition, rho: Partition) -> int:
    # rho sorted descending; peel its largest cycle
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    total = 0
    for strip in border_strips(lam, k):
        total += (-1) ** strip.leg * _mn(strip.result, rest)
    return total


def mn_character(lam: Partition, rho: Sequence[int]) -> int:
    """``chi^lam`` on the class of cycle type ``rho`` (any order of cycle lengths).

    >>> mn_character((3, 1), (2, 2))
    -1
    """
    if sum(lam) != sum(rho):
        raise ValueError(f"weight mismatch: |{lam}| != |{tuple(rho)}|")
    return _mn(tuple(lam), tuple(sorted(rho, reverse=True)))


def mn_character_ordered(lam: Partition, cycles: Sequence[int]) -> int:
    """Murnaghan-Nakayama peeling the cycles in the order given (no sorting, no cache)."""
    if sum(lam) != sum(cycles):
        raise ValueError("weight mismatch")
    if not cycles:
        return 1
    return sum((-1) ** s.leg * mn_character_ordered(s.result, cycles[1:]) for s in border_strips(lam, cycles[0]))


def multiplicities(rho: Partition) -> dict[int, int]:
    m: dict[int, int] = {}
    for part in rho:
        m[part] = m.get(part, 0) + 1
    return m


def centralizer_order(rho: Partition) -> int:
    z = 1
    for k, a in multiplicities(rho).items():
        z *= k**a * math.factorial(a)
    return z


def class_size(rho: Partition) -> int:
    """Size of the S_n class of cycle type rho: n! / prod(k^a_k a_k!)."""
    return math.factorial(sum(rho)) // centralizer_order(rho)


@dataclass(frozen=True)
class CharacterTable:
    n: int
    labels: tuple[Partition, ...]
    values: tuple[tuple[int, ...], ...]  # values[row = irreducible][col = class]

    def value(self, lam: Partition, rho: Partition) -> int:
        return self.values[self.labels.index(tuple(lam))][self.labels.index(tuple(rho))]

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(class_size(rho) for rho in self.labels)

    def dimensions(self) -> tuple[int, ...]:
        idx = self.labels.index((1,) * self.n)
        return tuple(row[idx] for row in self.values)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["irreducible"] + [partition_label(r) for r in self.labels])
        for lam, row in zip(self.labels, self.values):
            w.writerow([partition_label(lam)] + list(row))
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "classes": [partition_label(r) for r in self.labels],
                "class_sizes": list(self.class_sizes),
                "irreducibles": [partition_label(lam) for lam in self.labels],
                "values": [list(row) for row in self.values],
            },
            indent=1,
        )


@lru_cache(maxsize=None)
def character_table(n: int, bound: int = MAX_TABLE_N) -> CharacterTable:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds character table bound {bound}")
    labels = tuple(partitions(n))
    values = tuple(tuple(_mn(lam, rho) for rho in labels) for lam in labels)
    return CharacterTable(n, labels, values)


# ---------------------------------------------------------------------------
# Young's matrices for adjacent transpositions


def _position(t: Sequence[Sequence[int]], x: int) -> tuple[int, int]:
    for i, row in enumerate(t):
        if x in row:
            return i, row.index(x)
    raise KeyError(x)


def _swap(t, a: int, b: int):
    return tuple(tuple(b if x == a else a if x == b else x for x in row) for row in t)


def young_transposition_matrix(
    lam: Partition, r: int, form: Literal["orthogonal", "seminormal"] = "orthogonal"
) -> np.ndarray:
    """Matrix of the transposition (r, r+1) in the irreducible ``[lam]``.

    Rows and columns follow :func:`standard_tableaux`.  When r sits strictly
    above and to the right of r+1 in a tableau t (cells (k, l) and (m, n)),
    ``1/p`` is the axial distance ``(l - k) - (n - m)`` and the 2x2 block on
    (t, t') with t' = t(r r+1) is ``[[-p, 1 - p^2], [1, p]]`` (seminormal,
    exact Fractions) or ``[[-p, s], [s, p]]`` with ``s = sqrt(1 - p^2)``.
    """
    n = sum(lam)
    if not 1 <= r < n:
        raise ValueError(f"r={r} out of range 1..{n - 1}")
    if form not in ("orthogonal", "seminormal"):
        raise ValueError(f"unknown form {form!r}")
    tabs = standard_tableaux(lam)
    index = {t: i for i, t in enumerate(tabs)}
    f = len(tabs)
    exact = form == "seminormal"
    one = Fraction(1) if exact else 1.0
    m = np.zeros((f, f), dtype=object if exact else float)
    if exact:
        m[:] = Fraction(0)
    for i, t in enumerate(tabs):
        (k, l), (mm, nn) = _position(t, r), _position(t, r + 1)
        if k == mm:
            m[i, i] = one
        elif l == nn:
            m[i, i] = -one
        elif k < mm and l > nn:
            j = index[_swap(t, r, r + 1)]
            p = Fraction(1, (l - k) - (nn - mm))
            if exact:
                m[i, i], m[j, j] = -p, p
                m[i, j], m[j, i] = 1 - p * p, Fraction(1)
            else:
                s = math.sqrt(1 - float(p) ** 2)
                m[i, i], m[j, j] = -float(p), float(p)
                m[i, j], m[j, i] = s, s
    return m


# ---------------------------------------------------------------------------
# Dimension sums and character bounds


def dimension_power_sum(n: int, c: float, first_row_above: int | None = None) -> float:
    """``sum (f^lambda)^-c``; with ``first_row_above=A`` only over lambda with lambda_1 > n - A."""
    table = character_table(n)
    total = 0.0
    for lam, dim in zip(table.labels, table.dimensions()):
        if first_row_above is not None and not lam[0] > n - first_row_above:
            continue
        total += dim ** (-c)
    return total


@dataclass(frozen=True)
class BoundCheck:
    name: str
    max_ratio: float  # max over checked cells of |chi| / bound
    witness: tuple[Partition, Partition] | None  # cell attaining max_ratio
    violations: tuple[tuple[Partition, Partition], ...]
    cells: int

    @property
    def ok(self) -> bool:
        return not self.violations


def _record(name, rows) -> BoundCheck:
    # rows: (lam, rho, |chi|, bound)
    best, witness, bad = 0.0, None, []
    for lam, rho, value, bound in rows:
        ratio = value / bound
        if ratio > best:
            best, witness = ratio, (lam, rho)
        if value > bound * (1 + 1e-12):
            bad.append((lam, rho))
    return BoundCheck(name, best, witness, tuple(bad), len(rows))


def check_character_bounds(n: int, *, table: CharacterTable | None = None) -> list[BoundCheck]:
    """Check ``|chi(pi)| <= (2n)^(m/2)`` (m = cycle count) on the whole table, and for each
    r >= 2 dividing n the rectangular-class bound ``|chi| <= m! r^m / (n!)^(1/r) * (f^lambda)^(1/r)``.
    """
    if n > 10:
        raise BoundExceeded("bound checks are limited to n <= 10")
    table = table or character_table(n)
    dims = table.dimensions()
    rows = []
    for lam, vals in zip(table.labels, table.values):
        for rho, v in zip(table.labels, vals):
            rows.append((lam, rho, abs(v), (2 * n) ** (len(rho) / 2)))
    out = [_record("cycle_count_bound", rows)]
    log_nfact = math.lgamma(n + 1)
    for r in range(2, n + 1):
        if n % r:
            continue
        m = n // r
        rho = (r,) * m
        col = table.labels.index(rho)
        rect = []
        for lam, vals, dim in zip(table.labels, table.values, dims):
            coeff = math.factorial(m) * r**m / math.exp(log_nfact / r)
            rect.append((lam, rho, abs(vals[col]), coeff * dim ** (1 / r)))
        out.append(_record(f"rectangular_bound_r{r}", rect))
    return out
