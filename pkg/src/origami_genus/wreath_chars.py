"""
Irreducible characters of C_4 wr S_n and the probability formulas built on them.

Irreducibles are labelled by a C_4-orbit of 4-tuples of partitions of n (the
base), together with a character of the inertia quotient: C_4 itself when all
four partitions agree, {e, (13)(24)} when the tuple has period 2, and the
trivial group otherwise.  Characters with full inertia are the product of a
C_4 character and the extended base character; the others are induced.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Literal, Sequence

from .gaussian import GaussianRational
from .perm import Permutation, cycle_type, sign
from .wreath import (
    C4,
    TopGroup,
    WreathCycleType,
    WreathElement,
    cycle_products,
    enumerate_wreath,
    w_conjugate,
    w_class_key,
    w_cycle_type,
    w_inverse,
    wreath_order,
)
from .young import Partition, character_table, f_lambda, mn_character, partition_label, partitions

MAX_FULL_N = 3
MAX_DIAGONAL_N = 15

# C_4 = <(1 2 3 4)>; element r^e sits at index e
R = C4.elements[1]
C4_INDEX = {g: e for e, g in enumerate(C4.elements)}
C4_LABELS = ("id", "(1 2 3 4)", "(1 3)(2 4)", "(1 4 3 2)")


def c4_character(idx: int, elem: Permutation) -> GaussianRational:
    """``chi^idx(r^e) = i^((idx - 1) e)``; rows chi^1..chi^4 of the usual C_4 table."""
    if idx not in (1, 2, 3, 4):
        raise ValueError(f"character index {idx} not in 1..4")
    if elem not in C4_INDEX:
        raise ValueError(f"{elem} is not in C_4")
    return GaussianRational.i_power((idx - 1) * C4_INDEX[elem])


def c4_collapse_factor(idx: int) -> GaussianRational:
    """``chi((13)(24)) chi((1234))^2 / chi(1)`` for the C_4 character ``idx``."""
    r1, r2 = C4.elements[1], C4.elements[2]
    return c4_character(idx, r2) * c4_character(idx, r1) * c4_character(idx, r1) / c4_character(idx, C4.elements[0])


# ---------------------------------------------------------------------------
# Irreducible labels


def _rotate(base: tuple, e: int) -> tuple:
    # tuple carried by the top element r^e: entry at position r^e(i) is base[i]
    k = len(base)
    return tuple(base[(i - e) % k] for i in range(k))


def canonical_base(base: Sequence[Partition]) -> tuple[Partition, ...]:
    """Lexicographically least rotation of a 4-tuple."""
    base = tuple(tuple(p) for p in base)
    return min(_rotate(base, e) for e in range(len(base)))


def inertia_exponents(base: Sequence[Partition]) -> tuple[int, ...]:
    """Exponents e with r^e fixing the tuple: (0, 1, 2, 3), (0, 2) or (0,)."""
    base = tuple(base)
    return tuple(e for e in range(4) if _rotate(base, e) == base)


INERTIA_LABEL = {4: "C4", 2: "C2", 1: "1"}


@dataclass(frozen=True)
class WreathIrrep:
    base: tuple[Partition, Partition, Partition, Partition]
    top_char: int = 1

    def __post_init__(self):
        if len(self.base) != 4 or len({sum(p) for p in self.base}) != 1:
            raise ValueError("base must be four partitions of one n")
        if canonical_base(self.base) != self.base:
            raise ValueError("base is not the canonical rotation")
        if not 1 <= self.top_char <= len(self.inertia):
            raise ValueError(f"top_char {self.top_char} out of range for inertia {self.inertia_label}")

    @property
    def n(self) -> int:
        return sum(self.base[0])

    @property
    def inertia(self) -> tuple[int, ...]:
        return inertia_exponents(self.base)

    @property
    def inertia_label(self) -> str:
        return INERTIA_LABEL[len(self.inertia)]

    def top_character(self, e: int) -> GaussianRational:
        """Character of the inertia quotient at r^e (r^e assumed in the inertia group)."""
        order = len(self.inertia)
        if order == 4:
            return GaussianRational.i_power((self.top_char - 1) * e)
        if order == 2:
            return GaussianRational(-1 if self.top_char == 2 and e == 2 else 1)
        return GaussianRational(1)

    def dimension(self) -> int:
        return (4 // len(self.inertia)) * math.prod(f_lambda(p) for p in self.base)

    def describe(self) -> dict[str, Any]:
        return {
            "base": [partition_label(p) for p in self.base],
            "inertia": self.inertia_label,
            "top_character": self.top_char,
        }

    def __str__(self) -> str:
        return f"[{' | '.join(partition_label(p) for p in self.base)}]/{self.inertia_label}#{self.top_char}"


def wreath_irreps(n: int, diagonal_only: bool = False) -> list[WreathIrrep]:
    """All irreducibles of C_4 wr S_n (one per orbit and inertia character)."""
    parts = partitions(n)
    if diagonal_only:
        bases = [(p,) * 4 for p in parts]
    else:
        bases = sorted({canonical_base(t) for t in itertools.product(parts, repeat=4)}, key=lambda b: [parts.index(p) for p in b])
    out = []
    for b in bases:
        for c in range(1, len(inertia_exponents(b)) + 1):
            out.append(WreathIrrep(b, c))
    return out


# ---------------------------------------------------------------------------
# Character evaluation


def extended_character(base: Sequence[Partition], elem: WreathElement) -> int:
    """Product over top cycles of ``chi^{base[j]}(g_j)``, j the cycle leader.

    Defined only when the top permutation maps every slot to one carrying the
    same partition.
    """
    base = tuple(base)
    if len(base) != elem.k:
        raise ValueError(f"base has {len(base)} factors, element has top degree {elem.k}")
    h = elem.top.img
    if any(base[h[i]] != base[i] for i in range(elem.k)):
        raise ValueError(f"top {elem.top} moves the base {base}; the extension is undefined there")
    value = 1
    for cyc, g in zip(elem.top.cycles(), cycle_products(elem)):
        value *= mn_character(base[cyc[0] - 1], cycle_type(g))
        if value == 0:
            break
    return value


def _top_exponent(elem: WreathElement) -> int:
    if elem.k != 4 or elem.top not in C4_INDEX:
        raise ValueError(f"top {elem.top} is not an element of C_4")
    return C4_INDEX[elem.top]


def _dotted(irrep: WreathIrrep, elem: WreathElement) -> GaussianRational:
    e = _top_exponent(elem)
    if e not in irrep.inertia:
        return GaussianRational(0)
    return irrep.top_character(e) * extended_character(irrep.base, elem)


def irrep_character(
    irrep: WreathIrrep,
    elem: WreathElement,
    ctx: GroupClassData | None = None,
    method: Literal["transversal", "average"] = "transversal",
) -> GaussianRational:
    """``chi^D(elem)``.

    Full inertia: no induction.  Otherwise the induced value, either as the
    average of the dotted character over all conjugates ``x elem x^-1``
    (``method="average"``, enumerates the group) or as the sum over the top
    rotations r^e forming a transversal of the inertia subgroup.
    """
    if elem.n != irrep.n:
        raise ValueError("degree mismatch between irrep and element")
    inertia = irrep.inertia
    if len(inertia) == 4:
        return _dotted(irrep, elem)
    if method == "average":
        if elem.n > MAX_FULL_N:
            raise ValueError(f"averaging over C4 wr S_{elem.n} exceeds the enumeration bound (n <= {MAX_FULL_N})")
        elements = ctx.elements if ctx is not None and ctx.elements else list(enumerate_wreath(C4, elem.n))
        total = GaussianRational(0)
        for x in elements:
            total += _dotted(irrep, w_conjugate(elem, x))
        inertia_order = len(inertia) * math.factorial(elem.n) ** 4
        return total / inertia_order
    if method != "transversal":
        raise ValueError(f"unknown method {method!r}")
    e_id = Permutation.identity(elem.n)
    total = GaussianRational(0)
    for e in range(4 // len(inertia)):
        s = WreathElement(C4.elements[e], (e_id,) * 4)
        total += _dotted(irrep, w_conjugate(elem, s))
    return total


# ---------------------------------------------------------------------------
# Class data and character tables


@dataclass
class ClassTable:
    """Character table of a finite group with a classifier for its elements."""

    order: int
    class_sizes: tuple[int, ...]
    values: list[list[GaussianRational]]  # [irreducible][class]
    classify: Callable[[Any], int]
    class_labels: tuple[str, ...] = ()
    identity_class: int = 0

    def dimensions(self) -> list[GaussianRational]:
        return [row[self.identity_class] for row in self.values]

    def inner_product(self, a: int, b: int) -> GaussianRational:
        """``(1/|G|) sum_C |C| chi_a(C) conj(chi_b(C))``."""
        total = GaussianRational(0)
        for size, va, vb in zip(self.class_sizes, self.values[a], self.values[b]):
            total += size * va * vb.conjugate()
        return total / self.order


def symmetric_class_table(n: int) -> ClassTable:
    table = character_table(n)
    index = {rho: i for i, rho in enumerate(table.labels)}
    return ClassTable(
        order=math.factorial(n),
        class_sizes=table.class_sizes,
        values=[[GaussianRational(v) for v in row] for row in table.values],
        classify=lambda p: index[cycle_type(p)],
        class_labels=tuple(partition_label(r) for r in table.labels),
        identity_class=index[(1,) * n],
    )


@dataclass
class GroupClassData(ClassTable):
    """Classes and irreducibles of C_4 wr S_n."""

    n: int = 0
    representatives: tuple[WreathElement, ...] = ()
    cycle_types: tuple[WreathCycleType, ...] = ()
    irreducibles: tuple[WreathIrrep, ...] = ()
    elements: list[WreathElement] = field(default_factory=list, repr=False)

    def to_json(self) -> str:
        classes = [
            {"label": label, "cycle_type": [[list(cls), length, count] for (cls, length), count in ct.entries],
             "size": size, "representative": str(rep)}
            for label, ct, size, rep in zip(self.class_labels, self.cycle_types, self.class_sizes, self.representatives)
        ]
        return json.dumps(
            {
                "group": f"C4 wr S{self.n}",
                "order": self.order,
                "classes": classes,
                "irreducibles": [d.describe() for d in self.irreducibles],
                "values": [[v.to_json() for v in row] for row in self.values],
            },
            indent=1,
        )


def irreducible_system(n: int, full: bool = True) -> GroupClassData:
    """Irreducibles of C_4 wr S_n.

    ``full=True`` (n <= 3) also enumerates the group, groups it into classes by
    wreath cycle type and fills the character table.  ``full=False`` (n <= 15)
    only lists the irreducibles whose base is constant, the ones that do not
    vanish on (1234; e).
    """
    if full and n > MAX_FULL_N:
        raise ValueError(f"full mode supports n <= {MAX_FULL_N}")
    if not full and n > MAX_DIAGONAL_N:
        raise ValueError(f"diagonal mode supports n <= {MAX_DIAGONAL_N}")
    irreps = tuple(wreath_irreps(n, diagonal_only=not full))
    if not full:
        return GroupClassData(
            order=wreath_order(C4, n), class_sizes=(), values=[], classify=_no_classes, n=n, irreducibles=irreps
        )
    elements = list(enumerate_wreath(C4, n))
    buckets: dict[tuple, list[WreathElement]] = {}
    for g in elements:
        buckets.setdefault(w_class_key(g, C4), []).append(g)
    keys = sorted(buckets)
    index = {t: i for i, t in enumerate(keys)}
    reps = tuple(buckets[t][0] for t in keys)
    values = [[irrep_character(d, rep) for rep in reps] for d in irreps]
    return GroupClassData(
        order=len(elements),
        class_sizes=tuple(len(buckets[t]) for t in keys),
        values=values,
        classify=lambda g: index[w_class_key(g, C4)],
        class_labels=tuple(class_label(r) for r in reps),
        identity_class=index[w_class_key(WreathElement.identity(4, n), C4)],
        n=n,
        representatives=reps,
        cycle_types=tuple(w_cycle_type(r) for r in reps),
        irreducibles=irreps,
        elements=elements,
    )


def class_label(rep: WreathElement) -> str:
    """Top rotation and the classes of the cycle products, e.g. ``r^2[2+1|1+1+1]``."""
    e = C4_INDEX[rep.top]
    prods = "|".join(partition_label(cycle_type(g)) for g in cycle_products(rep))
    return f"r^{e}[{prods}]"


def _no_classes(_):
    raise ValueError("class data not computed in diagonal-only mode")


# ---------------------------------------------------------------------------
# Counting and probabilities


def frobenius_count(ctx: ClassTable, c1: int, c2: int, z) -> int:
    """Number of pairs (x, y) in C1 x C2 with x y = z:
    ``|C1||C2|/|G| * sum_chi chi(C1) chi(C2) conj(chi(z)) / chi(1)``."""
    cz = ctx.classify(z)
    ident = ctx.identity_class
    total = GaussianRational(0)
    for row in ctx.values:
        total += row[c1] * row[c2] * row[cz].conjugate() / row[ident]
    total = total * ctx.class_sizes[c1] * ctx.class_sizes[c2] / ctx.order
    if not total.is_real() or total.re.denominator != 1 or total.re < 0:
        raise ValueError(f"character sum gives {total}, not a count; the table is inconsistent")
    return int(total.re)


def sigma_element(n: int) -> WreathElement:
    """Representative ``((13)(24); e)`` of the class of every sigma built from an origami."""
    e = Permutation.identity(n)
    return WreathElement(C4.elements[2], (e,) * 4)


def tau_element(n: int) -> WreathElement:
    e = Permutation.identity(n)
    return WreathElement(C4.elements[1], (e,) * 4)


def sigma_tau_probability(pi: WreathElement, ctx: GroupClassData) -> Fraction:
    """``1/|G| sum_D chi(sigma) chi(tau) chi(pi^-1) / chi(1)`` over all irreducibles of C_4 wr S_n.

    This is the probability that x y = pi for x, y drawn uniformly from the
    classes of sigma and tau.
    """
    if not ctx.values:
        raise ValueError("sigma_tau_probability needs the full character table")
    cs, ct, cp = ctx.classify(sigma_element(ctx.n)), ctx.classify(tau_element(ctx.n)), ctx.classify(pi)
    ident = ctx.identity_class
    total = GaussianRational(0)
    for row in ctx.values:
        total += row[cs] * row[ct] * row[cp].conjugate() / row[ident]
    total = total / ctx.order
    if not total.is_real():
        raise ValueError(f"non-real probability {total}")
    return total.re


def reduced_probability(pi_prime: Permutation) -> Fraction:
    """``1/n!^4 sum_lambda chi^lambda(pi') / f^lambda``."""
    n = pi_prime.degree
    rho = cycle_type(pi_prime)
    table = character_table(n)
    dims = table.dimensions()
    col = table.labels.index(rho)
    s = sum(Fraction(row[col], d) for row, d in zip(table.values, dims))
    return s / math.factorial(n) ** 4


def extracted_partitions(n: int) -> tuple[Partition, ...]:
    """(n), (1^n), (n-1, 1) and (2, 1^(n-2))."""
    return ((n,), (1,) * n, (n - 1, 1), (2,) + (1,) * (n - 2))


def refined_probability(pi_prime: Permutation) -> tuple[Fraction, Fraction]:
    """Split the reduced probability into ``(leading, remainder)``.

    ``leading = (1 + sgn)(1 + (l - 1)/(n - 1)) / n!^4`` with l the number of
    fixed points; the remainder sums the other irreducibles.
    """
    n = pi_prime.degree
    if n < 4:
        raise ValueError("the four extracted partitions are distinct only for n >= 4")
    l = pi_prime.fixed_points()
    scale = Fraction(1, math.factorial(n) ** 4)
    leading = scale * (1 + sign(pi_prime)) * (1 + Fraction(l - 1, n - 1))
    skip = set(extracted_partitions(n))
    rho = cycle_type(pi_prime)
    remainder = scale * sum(
        (Fraction(mn_character(lam, rho), f_lambda(lam)) for lam in partitions(n) if lam not in skip), Fraction(0)
    )
    return leading, remainder


def four_term_contribution(pi_prime: Permutation) -> Fraction:
    """The part of the reduced probability carried by the four extracted partitions."""
    n = pi_prime.degree
    rho = cycle_type(pi_prime)
    s = sum(Fraction(mn_character(lam, rho), f_lambda(lam)) for lam in extracted_partitions(n))
    return s / math.factorial(n) ** 4


PAIR_FIBRE_EXPONENT = 3


def pair_commutator_probability(pi_prime: Permutation) -> Fraction:
    """P([sigma_a, sigma_b] = pi') for uniform pairs, from the class-uniform probability.

    Each pi' is the bottom product of n!^3 elements with top (1432), so the
    pair-uniform probability is ``n!^3`` times the reduced probability.
    """
    return math.factorial(pi_prime.degree) ** PAIR_FIBRE_EXPONENT * reduced_probability(pi_prime)
