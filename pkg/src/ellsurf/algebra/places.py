"""Places of Q(t): decomposition of polynomials and valuations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import mpmath

from .polynomial import Polynomial, poly_gcd, squarefree_decomposition
from .rational_function import RationalFunction


@dataclass(frozen=True)
class Place:
    """A closed point of the t-line: a monic squarefree polynomial, or infinity (``poly is None``)."""

    poly: Optional[Polynomial] = None

    def __post_init__(self):
        if self.poly is not None:
            if self.poly.degree < 1:
                raise ValueError("finite place polynomial must be non-constant")
            if self.poly.lc != 1:
                object.__setattr__(self, "poly", self.poly.monic())

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def at(cls, root) -> "Place":
        """Linear place ``t - root``."""
        return cls(Polynomial([-Fraction(root), 1]))

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def residue_degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        if self.poly is None:
            return (1, 0, ())
        if self.poly.degree == 1:
            # linear places are ordered by their root
            return (0, 1, (-self.poly[0],))
        return (0, self.poly.degree, self.poly.coeffs)

    def label(self, var: str = "t") -> str:
        if self.poly is None:
            return "inf"
        if self.poly.degree == 1:
            root = -self.poly[0]
            return f"{var}={root}"
        return self.poly.format(var)

    def __str__(self) -> str:
        return self.label()

    def to_json(self):
        return "inf" if self.poly is None else self.poly.to_json()

    @classmethod
    def from_json(cls, data) -> "Place":
        if data == "inf":
            return cls.infinity()
        return cls(Polynomial.from_json(data))


def _rational_roots_squarefree(p: Polynomial) -> list[Fraction]:
    """Rational roots of a squarefree polynomial.

    Candidates come from high-precision complex roots; every candidate is
    confirmed by exact evaluation, so no false roots are returned.
    """
    roots: list[Fraction] = []
    if p.degree < 1:
        return roots
    if p[0] == 0:
        roots.append(Fraction(0))
        p = p // Polynomial([0, 1])
    if p.degree < 1:
        return roots
    if p.degree == 1:
        return roots + [-p[0] / p[1]]
    _, ints = p.integer_primitive()
    lead = abs(ints[-1])
    dps = 30 + 2 * max(len(str(abs(c))) for c in ints if c)
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c) for c in reversed(ints)]
        try:
            approx = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
        except mpmath.libmp.NoConvergence:
            approx = mpmath.polyroots(coeffs, maxsteps=4000, extraprec=16 * dps, error=False)
        found = set()
        for z in approx:
            if abs(mpmath.im(z)) > mpmath.mpf(10) ** (-(dps // 3)) * (1 + abs(z)):
                continue
            x = mpmath.re(z)
            sign, man, exp, _ = x._mpf_
            base = (-1) ** sign * Fraction(int(man)) * Fraction(2) ** int(exp) if x else Fraction(0)
            for cand in {base.limit_denominator(lead), round(base)}:
                cand = Fraction(cand)
                if cand not in found and p(cand) == 0:
                    found.add(cand)
    return roots + sorted(found)


def coprime_base(polys: Iterable[Polynomial]) -> list[Polynomial]:
    """Refine polynomials into monic squarefree pairwise-coprime factors.

    Every input is, up to a constant, a product of powers of the returned
    factors.
    """
    base: list[Polynomial] = []
    for p in polys:
        if p.is_zero():
            raise ValueError("coprime base of the zero polynomial")
        for q, _ in squarefree_decomposition(p):
            pending = [q]
            while pending:
                f = pending.pop()
                if f.degree < 1:
                    continue
                for idx, b in enumerate(base):
                    g = poly_gcd(f, b)
                    if g.degree > 0:
                        base.pop(idx)
                        pending.extend(x for x in (g, b // g, f // g) if x.degree > 0)
                        break
                else:
                    base.append(f)
    return base


def _split_rational_roots(q: Polynomial) -> list[Polynomial]:
    parts = []
    rest = q
    for r in _rational_roots_squarefree(q):
        lin = Polynomial([-r, 1])
        parts.append(lin)
        rest = rest // lin
    if rest.degree > 0:
        parts.append(rest.monic())
    return parts


def split_places(polys: Iterable[Polynomial]) -> list[Place]:
    """Places supporting a family of polynomials, sorted by degree, then root or coefficients."""
    places = []
    for q in coprime_base(polys):
        places.extend(Place(f) for f in _split_rational_roots(q))
    return sorted(set(places), key=Place.sort_key)


def place_decompose(p: Polynomial) -> list[tuple[Place, int]]:
    """Decompose ``p`` into finite places with multiplicities.

    Rational roots become linear places; what remains of each squarefree
    part is kept whole. Raises ValueError on the zero polynomial.
    """
    p = Polynomial.coerce(p)
    if p.is_zero():
        raise ValueError("place decomposition of the zero polynomial")
    out = []
    for q, mult in squarefree_decomposition(p):
        for f in _split_rational_roots(q):
            out.append((Place(f), mult))
    return sorted(out, key=lambda pm: pm[0].sort_key())


def _poly_multiplicity(f: Polynomial, place_poly: Polynomial) -> int:
    k = 0
    while True:
        q, r = divmod(f, place_poly)
        if r:
            return k
        f = q
        k += 1


def valuation(f, v: Place) -> int:
    """Order of vanishing of a nonzero rational function at a place.

    The valuation of zero is rejected with ValueError.
    """
    f = RationalFunction.coerce(f)
    if f.is_zero():
        raise ValueError("valuation of zero is undefined")
    if v.is_infinity:
        return f.den.degree - f.num.degree
    return _poly_multiplicity(f.num, v.poly) - _poly_multiplicity(f.den, v.poly)


def valuation_or_none(f, v: Place) -> Optional[int]:
    """Valuation with ``None`` standing for +infinity (f = 0)."""
    f = RationalFunction.coerce(f)
    return None if f.is_zero() else valuation(f, v)


def expand_places(decomp: Iterable[tuple[Place, int]]) -> Polynomial:
    """Inverse of :func:`place_decompose` up to a constant."""
    acc = Polynomial([1])
    for place, mult in decomp:
        acc = acc * place.poly ** mult
    return acc
