"""Finite abelian groups as products of cyclic groups."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import gcd, prod
from typing import Iterable, Sequence


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def invariant_factors(cyclic_orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors ``d1 | d2 | ...`` (all > 1) of a product of cyclic groups."""
    by_prime: dict[int, list[int]] = {}
    for n in cyclic_orders:
        if n < 1:
            raise ValueError("cyclic orders must be positive")
        for p, e in factorize(n).items():
            by_prime.setdefault(p, []).append(e)
    width = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * width
    for p, exps in by_prime.items():
        exps = sorted(exps, reverse=True)
        for i, e in enumerate(exps):
            factors[width - 1 - i] *= p ** e
    return tuple(f for f in factors if f > 1)


def abelian_groups(order: int) -> list[tuple[int, ...]]:
    """All abelian groups of the given order, as invariant-factor tuples."""
    if order == 1:
        return [()]
    per_prime = []
    for p, e in sorted(factorize(order).items()):
        per_prime.append([[p ** k for k in part] for part in _partitions(e)])
    out = []
    for combo in product(*per_prime):
        out.append(invariant_factors([q for part in combo for q in part]))
    return sorted(set(out), key=lambda f: (len(f), f))


@dataclass(frozen=True)
class ComponentGroup:
    """Finite abelian group ``Z/d1 x Z/d2 x ...``; the empty tuple is the trivial group."""

    cyclic_orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cyclic_orders", tuple(int(d) for d in self.cyclic_orders if int(d) != 1))

    @property
    def order(self) -> int:
        return prod(self.cyclic_orders)

    @property
    def invariants(self) -> tuple[int, ...]:
        return invariant_factors(self.cyclic_orders)

    @property
    def exponent(self) -> int:
        e = 1
        for d in self.cyclic_orders:
            e = e * d // gcd(e, d)
        return e

    def is_trivial(self) -> bool:
        return not self.cyclic_orders

    def isomorphic(self, other: "ComponentGroup") -> bool:
        return self.invariants == other.invariants

    def has_two_torsion(self) -> bool:
        return self.order % 2 == 0

    def canonical(self) -> "ComponentGroup":
        return ComponentGroup(tuple(sorted(self.invariants, reverse=True)))

    def elements(self):
        return product(*(range(d) for d in self.cyclic_orders))

    def format(self) -> str:
        inv = sorted(self.invariants, reverse=True)
        if not inv:
            return "{0}"
        counts = Counter(inv)
        parts = []
        for d in sorted(counts, reverse=True):
            k = counts[d]
            parts.append(f"(Z/{d})^{k}" if k > 1 else f"Z/{d}")
        return " x ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def to_json(self) -> list[int]:
        return sorted(self.invariants, reverse=True)


def subgroup_invariants(elements: Sequence[tuple[int, ...]], moduli: Sequence[int]) -> tuple[int, ...]:
    """Isomorphism type of a finite subgroup of ``prod Z/moduli`` given by its elements.

    Uses the counts ``|H[p^k]|``, which determine a finite abelian group.
    """
    elems = [tuple(e) for e in elements]
    n = len(elems)
    if n == 1:
        return ()

    def killed(m: int) -> int:
        return sum(1 for e in elems if all((m * x) % d == 0 for x, d in zip(e, moduli)))

    cyclic = []
    for p, e in factorize(n).items():
        # number of cyclic factors of order >= p^k equals log_p(|H[p^k]| / |H[p^(k-1)]|)
        prev = 1
        ge = []
        for k in range(1, e + 1):
            cur = killed(p ** k)
            ratio = cur // prev
            r = 0
            while ratio > 1:
                ratio //= p
                r += 1
            ge.append(r)
            prev = cur
        for k in range(len(ge)):
            nxt = ge[k + 1] if k + 1 < len(ge) else 0
            cyclic.extend([p ** (k + 1)] * (ge[k] - nxt))
    return invariant_factors(cyclic)
