"""Elements of the rational function field Q(t)."""
from __future__ import annotations

from fractions import Fraction

from .polynomial import Polynomial, as_fraction, poly_gcd


class RationalFunction:
    """Reduced fraction ``num/den`` with ``den`` monic and ``gcd(num, den) = 1``.

    Construct through :func:`normalize_rf` or the constructor (which normalizes).
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = Polynomial.coerce(num) if not isinstance(num, Polynomial) else num
        den = Polynomial([1]) if den is None else Polynomial.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Polynomial([1])
            else:
                g = poly_gcd(num, den)
                if g.degree > 0:
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                lc = den.lc
                if lc != 1:
                    num = num * (1 / lc)
                    den = den * (1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def coerce(cls, value) -> "RationalFunction":
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, Polynomial):
            return cls(value, Polynomial([1]), _reduced=True)
        return cls(Polynomial([as_fraction(value)]), Polynomial([1]), _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0]

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Polynomial, int, Fraction)):
            return self == RationalFunction.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __add__(self, other) -> "RationalFunction":
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den, _reduced=other != 0)
        try:
            o = RationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.degree == 0 and o.den.degree == 0:
            return RationalFunction(self.num * o.num, Polynomial([1]), _reduced=True)
        # cross-cancel before multiplying to keep degrees small
        g1 = poly_gcd(self.num, o.den) if self.num and o.den.degree > 0 else Polynomial([1])
        g2 = poly_gcd(o.num, self.den) if o.num and self.den.degree > 0 else Polynomial([1])
        n = self.num.exact_div(g1) * o.num.exact_div(g2)
        d = self.den.exact_div(g2) * o.den.exact_div(g1)
        if n.is_zero():
            return RationalFunction(n, Polynomial([1]), _reduced=True)
        lc = d.lc
        if lc != 1:
            n, d = n * (1 / lc), d * (1 / lc)
        return RationalFunction(n, d, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other) -> "RationalFunction":
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, _reduced=True)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / as_fraction(d) if isinstance(d, int) else self.num(x) / d

    def subs_reciprocal(self) -> "RationalFunction":
        """Return ``f(1/s)`` as a rational function in ``s``."""
        dn, dd = self.num.degree, self.den.degree
        if self.is_zero():
            return self
        num = self.num.reversed()
        den = self.den.reversed()
        shift = dd - dn
        if shift > 0:
            num = num * Polynomial.monomial(shift)
        elif shift < 0:
            den = den * Polynomial.monomial(-shift)
        return RationalFunction(num, den)

    def format(self, var: str = "t") -> str:
        if self.den.degree == 0:
            return self.num.format(var)
        return f"({self.num.format(var)})/({self.den.format(var)})"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"RationalFunction({self.format()!r})"

    def to_json(self):
        if self.den.degree == 0:
            return self.num.to_json()
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        if isinstance(data, dict):
            if set(data) != {"num", "den"}:
                raise ValueError("rational function JSON needs exactly 'num' and 'den'")
            return normalize_rf(Polynomial.from_json(data["num"]), Polynomial.from_json(data["den"]))
        return cls.coerce(Polynomial.from_json(data))


def normalize_rf(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Reduce ``num/den`` to lowest terms with monic denominator.

    Raises ZeroDivisionError (a domain error) when ``den`` is zero.
    """
    return RationalFunction(Polynomial.coerce(num), Polynomial.coerce(den))
