"""Minimal sparse multivariate polynomials over Q for identity checks.

Only what the cover verifications need: ring operations, substitution of
a variable by a polynomial, and splitting by the degree in one variable.
Monomials are sorted tuples of ``(name, exponent)`` pairs.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Monomial = tuple[tuple[str, int], ...]
Scalar = Union[int, Fraction]


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in d.items() if e))


class MPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: dict[Monomial, Fraction] = {m: Fraction(c) for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: Scalar) -> "MPoly":
        return cls({(): c})

    @classmethod
    def lift(cls, x) -> "MPoly":
        return x if isinstance(x, MPoly) else cls.const(x)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def __add__(self, other) -> "MPoly":
        other = MPoly.lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-MPoly.lift(other))

    def __rsub__(self, other) -> "MPoly":
        return MPoly.lift(other) - self

    def __mul__(self, other) -> "MPoly":
        other = MPoly.lift(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    def coefficients_in(self, name: str) -> dict[int, "MPoly"]:
        """Split as ``sum_k c_k * name^k``; returns ``{k: c_k}``."""
        out: dict[int, dict] = {}
        for m, c in self.terms.items():
            d = dict(m)
            k = d.pop(name, 0)
            out.setdefault(k, {})[tuple(sorted(d.items()))] = c
        return {k: MPoly(v) for k, v in out.items()}

    def subs(self, name: str, value) -> "MPoly":
        value = MPoly.lift(value)
        parts = self.coefficients_in(name)
        out = MPoly()
        powers = {0: MPoly.const(1)}
        for k in sorted(parts):
            while max(powers) < k:
                top = max(powers)
                powers[top + 1] = powers[top] * value
            out = out + parts[k] * powers[k]
        return out

    def evaluate(self, values: dict) -> "MPoly":
        out = self
        for name, v in values.items():
            out = out.subs(name, v)
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            mono = "*".join(f"{v}^{e}" if e > 1 else v for v, e in m)
            c = self.terms[m]
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def poly_from_coeffs(coeffs: Iterable, name: str) -> MPoly:
    """``sum coeffs[k] * name^k`` with coefficients lifted to MPoly."""
    x = MPoly.var(name)
    out = MPoly()
    for k, c in enumerate(coeffs):
        out = out + MPoly.lift(c) * x ** k
    return out


def reduce_hyperelliptic(p: MPoly, y: str, lead: MPoly, rhs: MPoly) -> tuple[MPoly, MPoly]:
    """Reduce ``p`` modulo ``lead * y^2 - rhs``, after scaling by a power of ``lead``.

    Returns ``(r0, r1)`` with ``lead^N * p == r0 + r1 * y`` modulo the relation;
    ``lead`` must not vanish, so p lies in the ideal iff both parts are zero.
    """
    parts = p.coefficients_in(y)
    top = max(parts, default=0) // 2
    r0, r1 = MPoly(), MPoly()
    for e, c in parts.items():
        term = c * lead ** (top - e // 2) * rhs ** (e // 2)
        if e % 2:
            r1 = r1 + term
        else:
            r0 = r0 + term
    return r0, r1
