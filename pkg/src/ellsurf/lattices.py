"""Integral lattices given by Gram matrices, trivial lattices of fibrations, and the U^3 embedding."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt
from typing import Sequence

from .kodaira import FiberConfiguration, InconsistencyError

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def det_bareiss(m: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def inertia(m: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia by exact congruence diagonalization."""
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            # all diagonal entries zero: combine two rows with a nonzero off-diagonal entry
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # e_i <- e_i + e_j gives diagonal entry 2*a[i][j] != 0
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
                for k in range(n):
                    a[k][i] -= f * a[k][piv]
    return pos, neg, len(m) - pos - neg


@dataclass(frozen=True)
class GramLattice:
    """A lattice presented by a symmetric integer Gram matrix."""

    gram: Matrix
    name: str = ""

    def __post_init__(self):
        g = _as_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        n = len(g)
        if any(len(r) != n for r in g):
            raise ValueError("Gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise ValueError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def discriminant(self) -> int:
        return det_bareiss(self.gram)

    @cached_property
    def signature(self) -> tuple[int, int]:
        p, q, _ = inertia(self.gram)
        return p, q

    def is_positive_definite(self) -> bool:
        return self.signature == (self.rank, 0)

    def is_negative_definite(self) -> bool:
        return self.signature == (0, self.rank)

    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def scaled(self, k: int) -> "GramLattice":
        return GramLattice(tuple(tuple(k * x for x in r) for r in self.gram), f"{self.name}({k})" if self.name else "")

    def __add__(self, other: "GramLattice") -> "GramLattice":
        return direct_sum(self, other)

    def to_json(self) -> dict:
        return {
            "gram": [list(r) for r in self.gram],
            "rank": self.rank,
            "signature": list(self.signature),
            "disc": self.discriminant,
        }


def direct_sum(*parts: GramLattice) -> GramLattice:
    n = sum(p.rank for p in parts)
    rows = [[0] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i, r in enumerate(p.gram):
            rows[off + i][off:off + p.rank] = r
        off += p.rank
    return GramLattice(_as_matrix(rows), "+".join(p.name for p in parts if p.name))


def _cartan_from_edges(n: int, edges) -> GramLattice:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -2
    for i, j in edges:
        rows[i][j] = rows[j][i] = 1
    return GramLattice(_as_matrix(rows))


def root_lattice(kind: str, n: int) -> GramLattice:
    """Negative-definite root lattice A_n, D_n (n >= 4) or E_6, E_7, E_8."""
    if kind == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        lat = _cartan_from_edges(n, [(i, i + 1) for i in range(n - 1)])
    elif kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        lat = _cartan_from_edges(n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)])
    elif kind == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in {6, 7, 8}")
        # chain 0-2-3-...-(n-1) with node 1 attached to node 3 (Bourbaki labels shifted by one)
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        lat = _cartan_from_edges(n, edges)
    else:
        raise ValueError(f"unknown root lattice type {kind!r}")
    return GramLattice(lat.gram, f"{kind}{n}")


def hyperbolic_plane(k: int = 1) -> GramLattice:
    if k < 1:
        raise ValueError("U(k) needs k >= 1")
    return GramLattice(((0, k), (k, 0)), "U" if k == 1 else f"U({k})")


def rank_one(value: int) -> GramLattice:
    if value == 0:
        raise ValueError("rank-one lattice must be nondegenerate")
    return GramLattice(((value,),), f"<{value}>")


def transcendental_T(k: int, m: int, n: int) -> GramLattice:
    """``U(k) + U(m) + <-2n>``."""
    if min(k, m, n) < 1:
        raise ValueError("T(k,m,n) needs positive parameters")
    lat = direct_sum(hyperbolic_plane(k), hyperbolic_plane(m), rank_one(-2 * n))
    return GramLattice(lat.gram, f"T({k},{m},{n})")


def named_lattice(name: str) -> GramLattice:
    """Build a lattice from a name such as ``U``, ``U(3)``, ``A2``, ``D(5)``, ``E8``, ``<-4>``, ``N``, ``T(1,1,1)``."""
    s = name.replace(" ", "")
    if s == "U":
        return hyperbolic_plane(1)
    if s == "N":
        lat = direct_sum(hyperbolic_plane(1), root_lattice("E", 7), root_lattice("E", 8))
        return GramLattice(lat.gram, "N")
    if m := re.fullmatch(r"U\((\d+)\)", s):
        return hyperbolic_plane(int(m.group(1)))
    if m := re.fullmatch(r"([ADE])\(?(\d+)\)?", s):
        return root_lattice(m.group(1), int(m.group(2)))
    if m := re.fullmatch(r"(?:<|rank1\()(-?\d+)(?:>|\))", s):
        return rank_one(int(m.group(1)))
    if m := re.fullmatch(r"T\((\d+),(\d+),(\d+)\)", s):
        return transcendental_T(*(int(g) for g in m.groups()))
    raise ValueError(f"unknown lattice name {name!r}")


@dataclass(frozen=True)
class TrivialLatticeReport:
    lattice: GramLattice
    rank: int
    disc: int

    def to_json(self) -> dict:
        return {"rank": self.rank, "disc": self.disc, "lattice": self.lattice.to_json()}


def trivial_lattice(c: FiberConfiguration) -> TrivialLatticeReport:
    """Zero section and fiber class, plus the root lattice of each reducible geometric fiber."""
    parts = [GramLattice(((-c.chi, 1), (1, 0)), "<O,F>")]
    for f in c.geometric_fibers():
        rl = f.root_lattice
        if rl is not None:
            parts.append(root_lattice(*rl))
    lat = direct_sum(*parts)
    expected_rank = 2 + sum(f.m_v - 1 for f in c.geometric_fibers())
    if lat.rank != expected_rank:
        raise InconsistencyError("trivial lattice rank mismatch")
    return TrivialLatticeReport(lat, lat.rank, lat.discriminant)


def shioda_tate_rank(rho: int, c: FiberConfiguration) -> int:
    """Mordell-Weil rank ``rho - 2 - sum(m_v - 1)``."""
    r = rho - 2 - sum(f.m_v - 1 for f in c.geometric_fibers())
    if r < 0:
        raise ValueError(f"Picard number {rho} is smaller than the trivial lattice rank")
    return r


def extremality_check(c: FiberConfiguration, mw_order: int) -> bool:
    """True iff disc(T) = -(mw_order)^2 and the Mordell-Weil rank (rho = 10) vanishes."""
    if shioda_tate_rank(10, c) != 0:
        return False
    return trivial_lattice(c).disc == -(mw_order ** 2)


def is_perfect_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


# --- Smith normal form ---------------------------------------------------


def smith_normal_form(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Smith normal form (diagonal, each entry dividing the next, nonnegative)."""
    a = [list(map(int, r)) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(t, cols):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        done = False
            if done:
                # pivot must divide the remaining block
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                i, _ = bad
                for j in range(t, cols):
                    a[t][j] += a[i][j]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        t += 1
    return a


def elementary_divisors(m: Sequence[Sequence[int]]) -> list[int]:
    s = smith_normal_form(m)
    return [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]


# --- the U^3 embedding -----------------------------------------------------


@dataclass(frozen=True)
class EmbeddingCertificate:
    n: int
    coords: Matrix
    source: GramLattice
    target: GramLattice
    image_gram: Matrix
    elementary_divisors: tuple[int, ...]

    @property
    def preserves_gram(self) -> bool:
        return self.image_gram == self.source.gram

    @property
    def primitive(self) -> bool:
        return all(d == 1 for d in self.elementary_divisors) and len(self.elementary_divisors) == self.source.rank

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coords": [list(r) for r in self.coords],
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "gram_preserved": self.preserves_gram,
            "elementary_divisors": list(self.elementary_divisors),
            "primitive": self.primitive,
        }


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def embed_T_in_U3(n: int) -> EmbeddingCertificate:
    """Primitive embedding of ``U + U + <-2n>`` into ``U^3``.

    The two hyperbolic planes go to the first two copies identically; the
    generator of ``<-2n>`` goes to ``e_1 - n e_2`` of the third copy.
    Raises InconsistencyError if either certificate check fails.
    """
    if n < 1:
        raise ValueError("n must be positive")
    source = transcendental_T(1, 1, n)
    target = direct_sum(hyperbolic_plane(), hyperbolic_plane(), hyperbolic_plane())
    coords = (
        (1, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
        (0, 0, 0, 1, 0, 0),
        (0, 0, 0, 0, 1, -n),
    )
    cg = _matmul(coords, target.gram)
    image = _as_matrix(_matmul(cg, [list(r) for r in zip(*coords)]))
    cert = EmbeddingCertificate(n, coords, source, target, image, tuple(elementary_divisors(coords)))
    if not cert.preserves_gram:
        raise InconsistencyError("embedding does not preserve the Gram matrix")
    if not cert.primitive:
        raise InconsistencyError("embedding is not primitive")
    return cert


def gcd_of_maximal_minors(m: Sequence[Sequence[int]]) -> int:
    """gcd of all r x r minors of an r x c integer matrix (r <= c)."""
    from itertools import combinations

    r = len(m)
    g = 0
    for cols in combinations(range(len(m[0])), r):
        g = gcd(g, det_bareiss([[row[c] for c in cols] for row in m]))
    return abs(g)
