"""
Origamis given by two gluing permutations, and their vertex count and genus.

Square j is glued on its right edge to square ``sigma_a(j)`` and on its top
edge to square ``sigma_b(j)``.  Edge slots of a square are numbered 1 = left,
2 = bottom, 3 = right, 4 = top.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from pathlib import Path

from .perm import Permutation, all_permutations, commutator, conjugate, count_cycles, inverse, orbit
from .wreath import C4, WreathElement, w_multiply

MAX_EQUIVALENCE_N = 8
DUAL_METHOD_MAX_N = 1000


class DisconnectedOrigamiError(ValueError):
    def __init__(self, n: int, unreachable: int):
        self.n = n
        self.unreachable = unreachable
        super().__init__(f"square {unreachable} is not reachable from square 1; the gluing is disconnected")


class MethodDisagreement(RuntimeError):
    pass


@dataclass(frozen=True)
class Origami:
    n: int
    sigma_a: Permutation
    sigma_b: Permutation
    connected: bool = True

    def __str__(self) -> str:
        return f"n = {self.n}\nsigma_a = {self.sigma_a}\nsigma_b = {self.sigma_b}\n"

    def to_text(self) -> str:
        return str(self)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "sigma_a": list(self.sigma_a.images), "sigma_b": list(self.sigma_b.images)})

    @classmethod
    def from_text(cls, text: str) -> Origami:
        fields = {}
        for line in text.splitlines():
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"expected 'key = value', got {line!r}")
            fields[key.strip()] = value.strip()
        missing = {"n", "sigma_a", "sigma_b"} - fields.keys()
        if missing:
            raise ValueError(f"missing field(s): {', '.join(sorted(missing))}")
        n = int(fields["n"])
        return make_origami(n, Permutation.parse(fields["sigma_a"], n), Permutation.parse(fields["sigma_b"], n))

    @classmethod
    def from_json(cls, text: str) -> Origami:
        data = json.loads(text)
        n = int(data["n"])
        return make_origami(n, Permutation.from_images(data["sigma_a"]), Permutation.from_images(data["sigma_b"]))


def make_origami(n: int, sigma_a: Permutation, sigma_b: Permutation, allow_disconnected: bool = False) -> Origami:
    if n < 1:
        raise ValueError("an origami needs at least one square")
    if sigma_a.degree != n or sigma_b.degree != n:
        raise ValueError(f"degree mismatch: n = {n}, sigma_a has {sigma_a.degree}, sigma_b has {sigma_b.degree}")
    reach = orbit([sigma_a, sigma_b], 1, n)
    if len(reach) < n and not allow_disconnected:
        raise DisconnectedOrigamiError(n, min(set(range(1, n + 1)) - reach))
    return Origami(n, sigma_a, sigma_b, len(reach) == n)


def load_origami(path: str | Path) -> Origami:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return Origami.from_json(text)
    return Origami.from_text(text)


def parse_origami_inline(text: str) -> Origami:
    """Inline form ``n=5; sigma_a=(1 2 3); sigma_b=(1 4 5)(2 3)``."""
    return Origami.from_text(re.sub(r"\s*;\s*", "\n", text))


def sigma_element(o: Origami) -> WreathElement:
    return WreathElement(C4.elements[2], (o.sigma_a, o.sigma_b, inverse(o.sigma_a), inverse(o.sigma_b)))


def tau_element(n: int) -> WreathElement:
    e = Permutation.identity(n)
    return WreathElement(C4.elements[1], (e,) * 4)


def sigma_tau(o: Origami) -> WreathElement:
    return w_multiply(sigma_element(o), tau_element(o.n))


def vertex_orbits(o: Origami) -> list[list[tuple[int, int]]]:
    """Orbits of <sigma tau> on the 4n (slot, square) pairs, in traversal order.

    Seeds are taken slot-major, square-minor, skipping visited pairs.
    """
    st = sigma_tau(o)
    n = o.n
    h = st.top.img
    bottoms = [b.img for b in st.bottom]
    seen = [bytearray(n) for _ in range(4)]
    out = []
    for i0 in range(4):
        for j0 in range(n):
            if seen[i0][j0]:
                continue
            orb = []
            i, j = i0, j0
            while not seen[i][j]:
                seen[i][j] = 1
                orb.append((i + 1, j + 1))
                i = h[i]
                j = bottoms[i][j]
            out.append(orb)
    return out


def vertex_count_commutator(o: Origami) -> int:
    return commutator(o.sigma_a, o.sigma_b).num_cycles()


def commutator_cycles_fast(sa: list[int] | tuple[int, ...], sb: list[int] | tuple[int, ...]) -> int:
    """Cycle count of sa sb sa^-1 sb^-1 on 0-based image lists."""
    n = len(sa)
    ia = [0] * n
    ib = [0] * n
    for x in range(n):
        ia[sa[x]] = x
        ib[sb[x]] = x
    c = [sa[sb[ia[ib[x]]]] for x in range(n)]
    return count_cycles(c)


@dataclass(frozen=True)
class SurfaceInvariants:
    vertices: int
    edges: int
    faces: int
    euler_characteristic: int
    genus: int
    method: str = "orbits+commutator"

    def as_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "faces": self.faces,
            "euler_characteristic": self.euler_characteristic,
            "genus": self.genus,
            "method": self.method,
        }


def invariants_from_vertices(n: int, vertices: int, method: str) -> SurfaceInvariants:
    euler = vertices - 2 * n + n
    if euler % 2:
        raise ArithmeticError(f"odd Euler characteristic {euler}; genus would not be an integer")
    return SurfaceInvariants(vertices, 2 * n, n, euler, (2 - euler) // 2, method)


def genus(o: Origami, verify: bool | None = None) -> SurfaceInvariants:
    """Vertex count, Euler characteristic and genus.

    Both vertex counts (orbits of sigma tau, cycles of the commutator) are
    computed and compared up to n = 1000 or whenever ``verify`` is set.
    """
    if not o.connected:
        missing = min(set(range(1, o.n + 1)) - orbit([o.sigma_a, o.sigma_b], 1, o.n))
        raise DisconnectedOrigamiError(o.n, missing)
    e_comm = vertex_count_commutator(o)
    if verify is None:
        verify = o.n <= DUAL_METHOD_MAX_N
    if not verify:
        return invariants_from_vertices(o.n, e_comm, "commutator")
    e_orb = len(vertex_orbits(o))
    if e_orb != e_comm:
        raise MethodDisagreement(f"{e_orb} vertex orbits but {e_comm} commutator cycles")
    return invariants_from_vertices(o.n, e_comm, "orbits+commutator")


def are_equivalent(o1: Origami, o2: Origami) -> bool:
    """True iff one s in S_n conjugates both gluings of o2 onto those of o1."""
    if o1.n != o2.n:
        return False
    n = o1.n
    if n > MAX_EQUIVALENCE_N:
        raise ValueError(f"equivalence test enumerates S_n; n = {n} exceeds {MAX_EQUIVALENCE_N}")
    if o1.sigma_a.num_cycles() != o2.sigma_a.num_cycles() or o1.sigma_b.num_cycles() != o2.sigma_b.num_cycles():
        return False
    for s in all_permutations(n):
        if conjugate(o2.sigma_a, s) == o1.sigma_a and conjugate(o2.sigma_b, s) == o1.sigma_b:
            return True
    return False


def all_pairs(n: int):
    """Every (sigma_a, sigma_b) in S_n x S_n."""
    perms = all_permutations(n)
    return itertools.product(perms, perms)


EXAMPLES = {
    "O0": (1, "id", "id"),
    "O1": (2, "(1 2)", "(1 2)"),
    "D": (5, "(1 2 3)", "(1 4 5)(2 3)"),
}


def named_example(name: str) -> Origami:
    n, a, b = EXAMPLES[name]
    return make_origami(n, Permutation.parse(a, n), Permutation.parse(b, n))


def orbit_sizes(o: Origami) -> list[int]:
    return sorted((len(x) for x in vertex_orbits(o)), reverse=True)


def genus_from_vertices(n: int, vertices: int) -> int:
    return (2 - vertices + n) // 2


def max_genus(n: int) -> int:
    # the commutator has at least one cycle and the parity of n
    return genus_from_vertices(n, 2 - n % 2)

