"""Dense univariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Polynomial:
    """Immutable polynomial in one parameter, coefficients in ascending degree.

    The zero polynomial has an empty coefficient tuple; otherwise the leading
    coefficient is nonzero.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls([0] * degree + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @classmethod
    def coerce(cls, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            return value
        return cls([value])

    # basic properties
    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    # arithmetic
    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                other = Polynomial.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            try:
                c = as_fraction(other)
            except TypeError:
                return NotImplemented
            return Polynomial([c * a for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other) -> tuple["Polynomial", "Polynomial"]:
        other = Polynomial.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv = 1 / other.lc
        if len(rem) - 1 < db:
            return Polynomial(), self
        quot = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] * inv
            quot[k] = q
            if q:
                for j in range(db + 1):
                    rem[k + j] -= q * bc[j]
        return Polynomial(quot), Polynomial(rem[:db])

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Polynomial") -> bool:
        """True if ``self`` divides ``other``."""
        return not (Polynomial.coerce(other) % self)

    # evaluation and composition
    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """Return ``self(inner)``."""
        acc = Polynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + Polynomial([c])
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return Polynomial([c * inv for c in self.coeffs])

    def reversed(self, degree: int | None = None) -> "Polynomial":
        """Coefficient reversal ``t**d * p(1/t)`` with ``d`` defaulting to the degree."""
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        padded = list(self.coeffs) + [Fraction(0)] * (d + 1 - len(self.coeffs))
        return Polynomial(reversed(padded))

    def integer_primitive(self) -> tuple[Fraction, list[int]]:
        """Split as ``scale * q`` with ``q`` integral, primitive, positive leading coefficient."""
        from math import gcd, lcm

        if self.is_zero():
            return Fraction(0), []
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [v // g for v in ints]

    # display / serialisation
    def to_json(self) -> list[list[str]]:
        return [[str(c.numerator), str(c.denominator)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "Polynomial":
        if not isinstance(data, (list, tuple)):
            raise ValueError("polynomial JSON must be an array")
        coeffs = []
        for item in data:
            if isinstance(item, (list, tuple)):
                if len(item) != 2:
                    raise ValueError(f"bad coefficient pair {item!r}")
                num, den = int(item[0]), int(item[1])
                if den == 0:
                    raise ValueError("zero denominator in coefficient")
                coeffs.append(Fraction(num, den))
            elif isinstance(item, (int, str)) and not isinstance(item, bool):
                coeffs.append(Fraction(item))
            else:
                raise ValueError(f"bad coefficient {item!r}")
        return cls(coeffs)

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if mono and a == 1:
                body = mono
            elif mono:
                body = f"{a}*{mono}"
            else:
                body = str(a)
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Polynomial({self.format()!r})"


T = Polynomial([0, 1])
ONE = Polynomial([1])
ZERO = Polynomial()


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    a, b = Polynomial.coerce(a), Polynomial.coerce(b)
    while b:
        a, b = b, a % b
        if b:
            b = b.monic()
    return a.monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: ``p = lc * prod(q_i ** i)`` with monic, squarefree, pairwise coprime ``q_i``.

    Only non-constant factors are returned.
    """
    if p.is_zero():
        raise ValueError("squarefree decomposition of zero")
    f = p.monic()
    out: list[tuple[Polynomial, int]] = []
    if f.degree < 1:
        return out
    df = f.derivative()
    a = poly_gcd(f, df)
    b = f // a
    c = df // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def resultant(a: Polynomial, b: Polynomial) -> Fraction:
    """Resultant by the Euclidean recurrence over the rationals."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    res = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return res * b.lc ** da
        r = a % b
        if r.is_zero():
            return Fraction(0)
        if da % 2 == 1 and db % 2 == 1:
            res = -res
        res *= b.lc ** (da - r.degree)
        a, b = b, r


def discriminant(p: Polynomial) -> Fraction:
    """Polynomial discriminant ``(-1)^(n(n-1)/2) res(p, p') / lc``."""
    n = p.degree
    if n < 1:
        raise ValueError("discriminant needs positive degree")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(p, p.derivative()) / p.lc
