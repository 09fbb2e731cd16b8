"""
Self-verification suite behind ``verify``.

Every check returns a :class:`CheckResult`; a failing one carries the first
counterexample as a JSON-serializable dict.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Literal

import numpy as np

from . import distribution, origami, wreath, wreath_chars, young
from .perm import Permutation, all_permutations, compose, cycle_type, inverse
from .young import partition_label

Level = Literal["quick", "full"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    seconds: float = 0.0
    detail: str = ""
    counterexample: dict | None = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "seconds": round(self.seconds, 3), "detail": self.detail}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


class CheckFailure(Exception):
    def __init__(self, detail: str, counterexample: dict):
        super().__init__(detail)
        self.counterexample = counterexample


def _cell(lam, rho) -> dict:
    return {"irreducible": partition_label(lam), "class": partition_label(rho)}


# ---------------------------------------------------------------------------
# Character engine


def check_table_cells(n: int) -> str:
    """Each table entry against an uncached evaluation with the cycles in ascending order."""
    table = young.character_table(n)
    for lam, row in zip(table.labels, table.values):
        for rho, v in zip(table.labels, row):
            ref = young.mn_character_ordered(lam, tuple(reversed(rho)))
            if v != ref:
                raise CheckFailure(
                    f"chi^{partition_label(lam)} at class {partition_label(rho)} is {v}, expected {ref}",
                    {**_cell(lam, rho), "value": v, "expected": ref},
                )
    return f"{len(table.labels) ** 2} cells"


def check_orthogonality(n: int) -> str:
    table = young.character_table(n)
    sizes = table.class_sizes
    order = math.factorial(n)
    k = len(table.labels)
    for a in range(k):
        for b in range(a, k):
            s = sum(c * x * y for c, x, y in zip(sizes, table.values[a], table.values[b]))
            if s != (order if a == b else 0):
                la, lb = table.labels[a], table.labels[b]
                raise CheckFailure(
                    f"rows {partition_label(la)} and {partition_label(lb)}: inner product {Fraction(s, order)}",
                    {"rows": [partition_label(la), partition_label(lb)], "inner_product": str(Fraction(s, order))},
                )
    return f"{k} rows"


def check_dimensions(n: int, tableaux_up_to: int = 8) -> str:
    table = young.character_table(n)
    dims = table.dimensions()
    total = sum(d * d for d in dims)
    if total != math.factorial(n):
        raise CheckFailure(f"sum of squared dimensions {total} != {n}!", {"n": n, "sum": total})
    for lam, d in zip(table.labels, dims):
        if young.f_lambda(lam) != d:
            raise CheckFailure(
                f"hook formula gives {young.f_lambda(lam)} for {partition_label(lam)}, table says {d}",
                {**_cell(lam, (1,) * n), "value": d, "expected": young.f_lambda(lam)},
            )
        if n <= tableaux_up_to and len(young.standard_tableaux(lam)) != d:
            raise CheckFailure(
                f"{len(young.standard_tableaux(lam))} standard tableaux of shape {partition_label(lam)}, expected {d}",
                {"shape": partition_label(lam), "tableaux": len(young.standard_tableaux(lam)), "dimension": d},
            )
    return f"sum f^2 = {n}!"


def _class_representative(rho) -> list[int]:
    # adjacent transpositions whose product has cycle type rho
    word, start = [], 1
    for part in rho:
        word.extend(range(start, start + part - 1))
        start += part
    return word


def check_matrix_traces(n: int) -> str:
    """Traces of products of Young's seminormal matrices against the table."""
    table = young.character_table(n)
    for lam, row in zip(table.labels, table.values):
        mats = {r: young.young_transposition_matrix(lam, r, form="seminormal") for r in range(1, n)}
        dim = young.f_lambda(lam)
        for rho, v in zip(table.labels, row):
            m = np.identity(dim, dtype=object) * Fraction(1)
            for r in _class_representative(rho):
                m = m.dot(mats[r])
            tr = sum(m[i, i] for i in range(dim))
            if tr != v:
                raise CheckFailure(
                    f"chi^{partition_label(lam)} at class {partition_label(rho)} is {v}, matrix trace gives {tr}",
                    {**_cell(lam, rho), "value": v, "expected": int(tr)},
                )
    return f"{len(table.labels)} irreducibles"


def check_known_values() -> str:
    pairs = [((2, 1), (2, 1), 0), ((3, 1), (2, 2), -1)]
    for lam, rho, want in pairs:
        got = young.character_table(sum(lam)).value(lam, rho)
        if got != want:
            raise CheckFailure(f"chi^{partition_label(lam)}({partition_label(rho)}) = {got}, expected {want}",
                               {**_cell(lam, rho), "value": got, "expected": want})
    m = young.young_transposition_matrix((2, 2), 1, form="seminormal")
    if [[int(x) for x in r] for r in m] != [[-1, 0], [0, 1]]:
        raise CheckFailure("[2,2]((12)) is not diag(-1, 1)", {"matrix": [[str(x) for x in r] for r in m]})
    return "3 values"


def check_bounds(n: int) -> str:
    for chk in young.check_character_bounds(n, table=young.character_table(n)):
        if not chk.ok:
            lam, rho = chk.violations[0]
            raise CheckFailure(f"{chk.name} violated at {partition_label(lam)}, {partition_label(rho)}",
                               {"bound": chk.name, **_cell(lam, rho)})
    return "all cells within bounds"


# ---------------------------------------------------------------------------
# Origamis


def check_dual_method(n: int, random_samples: int = 0, seed: int = 0) -> str:
    checked = 0
    pairs = origami.all_pairs(n) if random_samples == 0 else _random_pairs(n, random_samples, seed)
    for a, b in pairs:
        o = origami.make_origami(n, a, b, allow_disconnected=True)
        e1 = len(origami.vertex_orbits(o))
        e2 = origami.vertex_count_commutator(o)
        if e1 != e2:
            raise CheckFailure(f"{e1} orbits vs {e2} commutator cycles",
                               {"n": n, "sigma_a": str(a), "sigma_b": str(b), "orbits": e1, "cycles": e2})
        checked += 1
    return f"{checked} pairs"


def _random_pairs(n: int, count: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield (Permutation(tuple(int(x) for x in rng.permutation(n))),
               Permutation(tuple(int(x) for x in rng.permutation(n))))


def check_examples() -> str:
    want = {"O0": (1, [4]), "O1": (1, [4, 4]), "D": (2, [8, 8, 4])}
    for name, (g, sizes) in want.items():
        o = origami.named_example(name)
        got = origami.genus(o).genus
        got_sizes = origami.orbit_sizes(o)
        if got != g or got_sizes != sizes:
            raise CheckFailure(f"{name}: genus {got}, orbit sizes {got_sizes}",
                               {"origami": name, "genus": got, "orbit_sizes": got_sizes})
    return "O0, O1, D"


# ---------------------------------------------------------------------------
# Wreath characters and probabilities


def _brute_count(c1: list, c2_test: Callable, z, mul, inv) -> int:
    return sum(1 for x in c1 if c2_test(mul(inv(x), z)))


def check_frobenius_symmetric(n: int) -> str:
    ctx = wreath_chars.symmetric_class_table(n)
    elems = all_permutations(n)
    classes: dict[int, list] = {}
    for g in elems:
        classes.setdefault(ctx.classify(g), []).append(g)
    reps = {c: v[0] for c, v in classes.items()}
    k = len(classes)
    for c1, c2, c3 in itertools.product(range(k), repeat=3):
        z = reps[c3]
        got = wreath_chars.frobenius_count(ctx, c1, c2, z)
        want = _brute_count(classes[c1], lambda y: ctx.classify(y) == c2, z, compose, inverse)
        if got != want:
            raise CheckFailure(f"S_{n} classes {c1},{c2} onto {z}: {got} vs {want}",
                               {"classes": [c1, c2, c3], "formula": got, "brute_force": want})
    return f"{k ** 3} triples"


def check_frobenius_wreath(n: int, random_triples: int | None = None, seed: int = 0) -> str:
    ctx = wreath_chars.irreducible_system(n)
    classes: dict[int, list] = {}
    for g in ctx.elements:
        classes.setdefault(ctx.classify(g), []).append(g)
    k = len(classes)
    if random_triples is None:
        triples = list(itertools.product(range(k), repeat=3))
    else:
        rng = np.random.default_rng(seed)
        triples = [tuple(int(x) for x in rng.integers(0, k, 3)) for _ in range(random_triples)]
    for c1, c2, c3 in triples:
        z = ctx.representatives[c3]
        got = wreath_chars.frobenius_count(ctx, c1, c2, z)
        want = _brute_count(classes[c1], lambda y: ctx.classify(y) == c2, z, wreath.w_multiply, wreath.w_inverse)
        if got != want:
            raise CheckFailure(f"C4 wr S_{n} classes {c1},{c2} onto class {c3}: {got} vs {want}",
                               {"classes": [c1, c2, c3], "formula": got, "brute_force": want})
    return f"{len(triples)} triples"


def check_wreath_system(n: int) -> str:
    ctx = wreath_chars.irreducible_system(n)
    brute = wreath.conjugacy_classes_bruteforce(ctx.elements, wreath.wreath_generators(wreath.C4, n))
    if len(brute) != len(ctx.irreducibles):
        raise CheckFailure(f"{len(ctx.irreducibles)} irreducibles, {len(brute)} classes",
                           {"n": n, "irreducibles": len(ctx.irreducibles), "classes": len(brute)})
    dims = sum(d.dimension() ** 2 for d in ctx.irreducibles)
    if dims != 4 * math.factorial(n) ** 4:
        raise CheckFailure(f"sum of squared dimensions {dims}", {"n": n, "sum": dims})
    k = len(ctx.values)
    for a in range(k):
        for b in range(k):
            ip = ctx.inner_product(a, b)
            if ip != (1 if a == b else 0):
                raise CheckFailure(f"rows {ctx.irreducibles[a]} and {ctx.irreducibles[b]}: inner product {ip}",
                                   {"rows": [str(ctx.irreducibles[a]), str(ctx.irreducibles[b])], "inner_product": repr(ip)})
    return f"{k} irreducibles"


def pair_commutator_counts(n: int) -> dict[tuple[int, ...], int]:
    """Number of pairs (a, b) in S_n x S_n whose commutator has each cycle type."""
    perms = distribution._all_perm_array(n)
    m = len(perms)
    counts: dict[tuple[int, ...], int] = {}
    for i in range(m):
        a = np.broadcast_to(perms[i], (m, n))
        for row in distribution.batch_commutator(a, perms):
            ct = cycle_type(Permutation(tuple(int(x) for x in row)))
            counts[ct] = counts.get(ct, 0) + 1
    return counts


def check_reduction(n: int) -> str:
    ctx = wreath_chars.irreducible_system(n)
    e = Permutation.identity(n)
    counts = pair_commutator_counts(n)
    total = math.factorial(n) ** 2
    for rho in young.partitions(n):
        pi = Permutation.from_cycles(_cycles_of_type(rho), n)
        full = wreath_chars.sigma_tau_probability(wreath.WreathElement(wreath.C4.elements[3], (pi, e, e, e)), ctx)
        red = wreath_chars.reduced_probability(pi)
        if full != red:
            raise CheckFailure(f"class {partition_label(rho)}: wreath sum {full} vs reduced {red}",
                               {"class": partition_label(rho), "wreath_sum": str(full), "reduced": str(red)})
        brute = Fraction(counts.get(rho, 0), total) / young.class_size(rho)
        if wreath_chars.pair_commutator_probability(pi) != brute:
            raise CheckFailure(f"class {partition_label(rho)}: pair probability {brute} is not n!^3 x {red}",
                               {"class": partition_label(rho), "pairs": str(brute), "reduced": str(red)})
    return f"{len(young.partitions(n))} classes"


def _cycles_of_type(rho):
    out, start = [], 1
    for part in rho:
        out.append(list(range(start, start + part)))
        start += part
    return out


def check_refined(n: int) -> str:
    for rho in young.partitions(n):
        pi = Permutation.from_cycles(_cycles_of_type(rho), n)
        lead, rest = wreath_chars.refined_probability(pi)
        red = wreath_chars.reduced_probability(pi)
        if lead + rest != red or lead != wreath_chars.four_term_contribution(pi):
            raise CheckFailure(f"class {partition_label(rho)}: {lead} + {rest} != {red}",
                               {"class": partition_label(rho), "leading": str(lead), "remainder": str(rest),
                                "reduced": str(red)})
    return f"{len(young.partitions(n))} classes"


def check_exact_distribution(n: int) -> str:
    v, _ = distribution.exact_genus_distribution(n, "raw-pairs")
    c = distribution.character_vertex_distribution(n)
    if v.as_dict() != c.as_dict():
        raise CheckFailure(f"enumerated vertex law differs from the character sum at n={n}",
                           {"n": n, "enumerated": {k: str(m) for k, m in v.as_dict().items()},
                            "characters": {k: str(m) for k, m in c.as_dict().items()}})
    return f"{len(v.support)} values"


# ---------------------------------------------------------------------------
# Suite


@dataclass
class Suite:
    checks: list[tuple[str, Callable[[], str]]] = field(default_factory=list)

    def add(self, name: str, fn: Callable[[], str]) -> None:
        self.checks.append((name, fn))


def build_suite(level: Level = "quick") -> Suite:
    full = level == "full"
    s = Suite()
    s.add("worked examples", check_examples)
    s.add("known character values", check_known_values)
    for n in range(1, (10 if full else 8) + 1):
        s.add(f"table cells n={n}", lambda n=n: check_table_cells(n))
        s.add(f"orthogonality n={n}", lambda n=n: check_orthogonality(n))
        s.add(f"dimensions n={n}", lambda n=n: check_dimensions(n))
    for n in range(1, (6 if full else 5) + 1):
        s.add(f"matrix traces n={n}", lambda n=n: check_matrix_traces(n))
    for n in range(2, 9 if full else 7):
        s.add(f"character bounds n={n}", lambda n=n: check_bounds(n))
    for n in range(1, (4 if full else 3) + 1):
        s.add(f"dual vertex count n={n} exhaustive", lambda n=n: check_dual_method(n))
    for n in (5, 10, 50):
        s.add(f"dual vertex count n={n} random", lambda n=n: check_dual_method(n, 10_000 if full else 500, seed=n))
    s.add("frobenius S_4", lambda: check_frobenius_symmetric(4))
    s.add("frobenius C4 wr S_2", lambda: check_frobenius_wreath(2))
    if full:
        s.add("frobenius C4 wr S_3 random", lambda: check_frobenius_wreath(3, random_triples=100))
    for n in (1, 2, 3) if full else (1, 2):
        s.add(f"wreath irreducibles n={n}", lambda n=n: check_wreath_system(n))
    for n in (2, 3) if full else (2,):
        s.add(f"reduction identity n={n}", lambda n=n: check_reduction(n))
    for n in range(5, 9 if full else 7):
        s.add(f"refined decomposition n={n}", lambda n=n: check_refined(n))
    for n in range(1, (6 if full else 5) + 1):
        s.add(f"exact vertex law n={n}", lambda n=n: check_exact_distribution(n))
    return s


def run_suite(level: Level = "quick", stop_on_failure: bool = False, report: Callable[[CheckResult], None] | None = None) -> list[CheckResult]:
    results = []
    for name, fn in build_suite(level).checks:
        t = time.perf_counter()
        try:
            detail = fn()
            res = CheckResult(name, True, time.perf_counter() - t, detail)
        except CheckFailure as exc:
            res = CheckResult(name, False, time.perf_counter() - t, str(exc), exc.counterexample)
        except Exception as exc:  # a crash inside a check is a failure of that check
            res = CheckResult(name, False, time.perf_counter() - t, f"{type(exc).__name__}: {exc}",
                              {"error": type(exc).__name__, "message": str(exc)})
        results.append(res)
        if report:
            report(res)
        if stop_on_failure and not res.ok:
            break
    return results
