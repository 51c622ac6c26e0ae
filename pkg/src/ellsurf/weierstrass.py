"""Long Weierstrass models over Q(t), their invariants and coordinate changes."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Polynomial, RationalFunction, T

AFFINE = "affine-t"
INFINITY = "infinity-s"

_KEYS = ("a1", "a2", "a3", "a4", "a6")
_WEIGHTS = {"a1": 1, "a2": 2, "a3": 3, "a4": 4, "a6": 6}


class NotEllipticError(ValueError):
    """The discriminant vanishes identically."""


def _rf(x) -> RationalFunction:
    return RationalFunction.coerce(x)


@dataclass(frozen=True)
class ModelInvariants:
    b2: RationalFunction
    b4: RationalFunction
    b6: RationalFunction
    b8: RationalFunction
    c4: RationalFunction
    c6: RationalFunction
    delta: RationalFunction
    j: RationalFunction


@dataclass(frozen=True)
class WeierstrassModel:
    """``y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`` over Q(t).

    Coefficients are stored as rational functions so that non-integral models
    (such as the j-line curve) are representable; ``chart`` records whether
    the parameter is ``t`` or the coordinate ``s = 1/t`` at infinity.
    """

    a1: RationalFunction
    a2: RationalFunction
    a3: RationalFunction
    a4: RationalFunction
    a6: RationalFunction
    chart: str = AFFINE

    def __post_init__(self):
        for k in _KEYS:
            object.__setattr__(self, k, _rf(getattr(self, k)))
        if self.chart not in (AFFINE, INFINITY):
            raise ValueError(f"unknown chart {self.chart!r}")

    @classmethod
    def from_coeffs(cls, a1=0, a2=0, a3=0, a4=0, a6=0, chart: str = AFFINE) -> "WeierstrassModel":
        return cls(a1, a2, a3, a4, a6, chart)

    @classmethod
    def short(cls, A, B, chart: str = AFFINE) -> "WeierstrassModel":
        return cls(0, 0, 0, A, B, chart)

    @property
    def coeffs(self) -> tuple[RationalFunction, ...]:
        return tuple(getattr(self, k) for k in _KEYS)

    @property
    def var(self) -> str:
        return "t" if self.chart == AFFINE else "s"

    def is_integral(self) -> bool:
        return all(c.is_polynomial() for c in self.coeffs)

    def is_short(self) -> bool:
        return not (self.a1 or self.a2 or self.a3)

    def to_json(self) -> dict:
        out = {k: getattr(self, k).to_json() for k in _KEYS}
        if self.chart != AFFINE:
            out["chart"] = self.chart
        return out

    @classmethod
    def from_json(cls, data: dict) -> "WeierstrassModel":
        if not isinstance(data, dict):
            raise ValueError("model JSON must be an object")
        unknown = set(data) - set(_KEYS) - {"chart"}
        if unknown:
            raise ValueError(f"unknown model keys: {sorted(unknown)}")
        coeffs = [RationalFunction.from_json(data.get(k, [])) for k in _KEYS]
        return cls(*coeffs, chart=data.get("chart", AFFINE))

    def format(self) -> str:
        v = self.var
        lhs = "y^2"
        for c, mono in ((self.a1, "xy"), (self.a3, "y")):
            if c:
                lhs += f" + ({c.format(v)})*{mono}"
        rhs = "x^3"
        for c, mono in ((self.a2, "x^2"), (self.a4, "x"), (self.a6, "")):
            if c:
                rhs += f" + ({c.format(v)})" + (f"*{mono}" if mono else "")
        return f"{lhs} = {rhs}"

    def __str__(self) -> str:
        return self.format()


def compute_invariants(m: WeierstrassModel, *, check: bool = True) -> ModelInvariants:
    """Standard b-, c-invariants, discriminant and j of a long Weierstrass model.

    Raises NotEllipticError if the discriminant is identically zero.
    """
    a1, a2, a3, a4, a6 = m.coeffs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2 ** 3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2 * b2) * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if delta.is_zero():
        raise NotEllipticError("discriminant vanishes identically: not an elliptic surface")
    j = c4 ** 3 / delta
    if check:
        assert 1728 * delta == c4 ** 3 - c6 * c6, "1728*delta != c4^3 - c6^2"
        assert 4 * b8 == b2 * b6 - b4 * b4, "4*b8 != b2*b6 - b4^2"
    return ModelInvariants(b2, b4, b6, b8, c4, c6, delta, j)


def transform_model(m: WeierstrassModel, u, r=0, s=0, w=0) -> WeierstrassModel:
    """Change of coordinates ``x = x'/u^2 + r``, ``y = y'/u^3 + s x'/u^2 + w``.

    With this orientation the new coefficients are ``a_i' = u^i a_i`` when
    ``r = s = w = 0``, so the discriminant gets multiplied by ``u^12`` and j is
    unchanged.
    """
    u, r, s, w = _rf(u), _rf(r), _rf(s), _rf(w)
    if u.is_zero():
        raise ValueError("transform_model: u must be nonzero")
    a1, a2, a3, a4, a6 = m.coeffs
    n1 = a1 + 2 * s
    n2 = a2 - s * a1 + 3 * r - s * s
    n3 = a3 + r * a1 + 2 * w
    n4 = a4 - s * a3 + 2 * r * a2 - (w + r * s) * a1 + 3 * r * r - 2 * s * w
    n6 = a6 + r * a4 + r * r * a2 + r ** 3 - w * a3 - w * w - r * w * a1
    return WeierstrassModel(n1 * u, n2 * u ** 2, n3 * u ** 3, n4 * u ** 4, n6 * u ** 6, m.chart)


def infinity_chart(m: WeierstrassModel) -> WeierstrassModel:
    """Model in the coordinate ``s = 1/t``, rescaled by the least power of ``s`` making it integral at s = 0.

    The returned model's discriminant valuation at ``s = 0`` is the
    valuation of the discriminant at infinity for the chosen scaling.
    """
    if m.chart != AFFINE:
        raise ValueError("infinity_chart expects an affine-t model")
    subs = [c.subs_reciprocal() for c in m.coeffs]
    # least k >= 0 with ord_s(a_i) + i*k >= 0 for every coefficient
    k = 0
    for c, key in zip(subs, _KEYS):
        if not c.is_zero():
            k = max(k, -(_order_at_zero(c) // _WEIGHTS[key]))
    scaled = [c * RationalFunction(Polynomial.monomial(_WEIGHTS[key] * k)) for c, key in zip(subs, _KEYS)]
    return WeierstrassModel(*scaled, chart=INFINITY)


def _order_at_zero(f: RationalFunction) -> int:
    def mult(p: Polynomial) -> int:
        k = 0
        while k < len(p.coeffs) and p.coeffs[k] == 0:
            k += 1
        return k

    return mult(f.num) - mult(f.den)


def to_short_form(m: WeierstrassModel) -> WeierstrassModel:
    """``y^2 = x^3 - c4/48 x - c6/864``; same j, discriminant unchanged."""
    inv = compute_invariants(m)
    return WeierstrassModel.short(inv.c4 * Fraction(-1, 48), inv.c6 * Fraction(-1, 864), chart=m.chart)


def j_line_family() -> tuple[WeierstrassModel, WeierstrassModel]:
    """The curve with j-invariant t and its integral model.

    Returns ``(E, S)`` with ``E: y^2 + xy = x^3 - 36/(t-1728) x - 1/(t-1728)``
    and ``S`` obtained by scaling with ``u = t - 1728``.
    """
    shift = T - 1728
    inv = RationalFunction(Polynomial([1]), shift)
    E = WeierstrassModel.from_coeffs(a1=1, a4=-36 * inv, a6=-inv)
    S = transform_model(E, shift)
    return E, S


def special_j_curves() -> dict[str, WeierstrassModel]:
    """Curves with extra automorphisms: j = 0 and j = 1728."""
    return {
        "j=0": WeierstrassModel.from_coeffs(a3=1),
        "j=1728": WeierstrassModel.from_coeffs(a4=1),
    }
