"""Beauville's six semistable pencils of plane cubics and their Weierstrass models."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Optional, Sequence

from .algebra import Polynomial, RationalFunction, T
from .groups import ComponentGroup
from .kodaira import FiberConfiguration, InconsistencyError, euler_number, fiber_configuration
from .lattices import extremality_check, trivial_lattice
from .mordell_weil import TorsionAssignment, narrow_and_quotient, solve_torsion
from .weierstrass import WeierstrassModel, compute_invariants, j_line_family, special_j_curves

DEFAULT_SEARCH_BOUND = 8

Exponent = tuple[int, int, int]


# ---------------------------------------------------------------------------
# ternary forms


class TernaryForm:
    """Homogeneous polynomial in X, Y, Z as a dict from exponent triples to coefficients.

    Coefficients may be Fractions or rational functions in t.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def variable(cls, k: int) -> "TernaryForm":
        e = [0, 0, 0]
        e[k] = 1
        return cls({tuple(e): Fraction(1)})

    @classmethod
    def scalar(cls, c) -> "TernaryForm":
        return cls({(0, 0, 0): c})

    def _lift(self, other) -> "TernaryForm":
        return other if isinstance(other, TernaryForm) else TernaryForm.scalar(other)

    def __add__(self, other) -> "TernaryForm":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return TernaryForm(out)

    __radd__ = __add__

    def __neg__(self) -> "TernaryForm":
        return TernaryForm({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "TernaryForm":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TernaryForm":
        return self._lift(other) - self

    def __mul__(self, other) -> "TernaryForm":
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return TernaryForm(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TernaryForm":
        out = TernaryForm.scalar(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, TernaryForm) and self.terms == other.terms

    def coeff(self, e: Exponent):
        return self.terms.get(e, 0)

    def __call__(self, x, y, z):
        total = 0
        for (i, j, k), c in self.terms.items():
            total = total + c * x ** i * y ** j * z ** k
        return total

    def partial(self, k: int) -> "TernaryForm":
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                d = list(e)
                d[k] -= 1
                out[tuple(d)] = c * e[k]
        return TernaryForm(out)

    def linear_substitute(self, M: Sequence[Sequence[int]]) -> "TernaryForm":
        """Compose with ``(X, Y, Z)^T = M (x, y, z)^T``."""
        lin = [sum((M[r][c] * TernaryForm.variable(c) for c in range(3)), TernaryForm()) for r in range(3)]
        out = TernaryForm()
        for (i, j, k), c in self.terms.items():
            out = out + (lin[0] ** i) * (lin[1] ** j) * (lin[2] ** k) * c
        return out

    def format(self) -> str:
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"{v}^{p}" if p > 1 else v for v, p in zip("XYZ", e) if p)
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts) if parts else "0"


X, Y, Z = (TernaryForm.variable(k) for k in range(3))


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class PencilEntry:
    """The pencil ``F + t G = 0`` together with its expected fibration data."""

    label: str
    display: str
    F: TernaryForm = field(compare=False)
    G: TernaryForm = field(compare=False)
    expected_components: tuple[int, int, int, int]
    expected_group: ComponentGroup

    def member(self) -> TernaryForm:
        """The generic member as a form with coefficients in Q(t)."""
        t = RationalFunction.coerce(T)
        out = {}
        for e in set(self.F.terms) | set(self.G.terms):
            out[e] = RationalFunction.coerce(self.F.coeff(e)) + t * self.G.coeff(e)
        return TernaryForm(out)

    @property
    def aliases(self) -> tuple[str, ...]:
        return (self.label, self.display, ",".join(map(str, self.expected_components)))


def catalog() -> list[PencilEntry]:
    """The six semistable extremal pencils, with components and torsion groups."""
    rows = [
        ("Gamma(3)", "Γ(3)", X ** 3 + Y ** 3 + Z ** 3, X * Y * Z, (3, 3, 3, 3), (3, 3)),
        (
            "Gamma1(4)&Gamma(2)",
            "Γ₀⁰(4)∩Γ(2)",
            X * (X ** 2 + Z ** 2 + 2 * Z * Y),
            Z * (X ** 2 - Y ** 2),
            (4, 4, 2, 2),
            (4, 2),
        ),
        ("Gamma1(5)", "Γ₀⁰(5)", X * (X - Z) * (Y - Z), Z * Y * (X - Y), (5, 5, 1, 1), (5,)),
        ("Gamma1(6)", "Γ₀⁰(6)", (X + Y) * (Y + Z) * (Z + X), X * Y * Z, (6, 3, 2, 1), (6,)),
        ("Gamma0(8)", "Γ₀(8)", (X + Y) * (X * Y - Z ** 2), X * Y * Z, (8, 2, 1, 1), (4,)),
        ("Gamma0(9)&Gamma1(3)", "Γ₀(9)∩Γ₀⁰(3)", X ** 2 * Y + Y ** 2 * Z + Z ** 2 * X, X * Y * Z, (9, 1, 1, 1), (3,)),
    ]
    return [PencilEntry(lab, disp, F, G, comps, ComponentGroup(grp)) for lab, disp, F, G, comps, grp in rows]


def get_entry(label: str) -> PencilEntry:
    key = label.replace(" ", "")
    for e in catalog():
        if key in e.aliases or key.lower() == e.label.lower():
            return e
    raise KeyError(f"unknown catalog entry {label!r}")


# ---------------------------------------------------------------------------
# base points


def search_bound() -> int:
    raw = os.environ.get("ELLSURF_SEARCH_BOUND")
    if raw is None or raw == "":
        return DEFAULT_SEARCH_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"ELLSURF_SEARCH_BOUND must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("ELLSURF_SEARCH_BOUND must be positive")
    return value


def _candidate_points(bound: int):
    """Primitive integer triples up to sign, by height, then L1 norm, then lexicographically."""
    pts = []
    for p in product(range(-bound, bound + 1), repeat=3):
        if p == (0, 0, 0) or gcd(gcd(p[0], p[1]), p[2]) != 1:
            continue
        first = next(c for c in p if c)
        if first < 0:
            continue
        pts.append(p)
    pts.sort(key=lambda p: (max(map(abs, p)), sum(map(abs, p)), p))
    return pts


def is_smooth_base_point(e: PencilEntry, p: Sequence[int]) -> bool:
    """F(p) = G(p) = 0 and the gradient of F + tG at p is not identically zero in t."""
    if e.F(*p) != 0 or e.G(*p) != 0:
        return False
    grads = [(e.F.partial(k)(*p), e.G.partial(k)(*p)) for k in range(3)]
    return any(a != 0 or b != 0 for a, b in grads)


def base_points(e: PencilEntry, bound: Optional[int] = None) -> list[tuple[int, int, int]]:
    bound = search_bound() if bound is None else bound
    return [p for p in _candidate_points(bound) if is_smooth_base_point(e, p)]


def find_base_point(e: PencilEntry, bound: Optional[int] = None) -> tuple[int, int, int]:
    """First rational base point of the pencil that is smooth on the generic member."""
    bound = search_bound() if bound is None else bound
    for p in _candidate_points(bound):
        if is_smooth_base_point(e, p):
            return p
    raise ValueError(f"no smooth rational base point with coordinates bounded by {bound}")


# ---------------------------------------------------------------------------
# Nagell reduction


def _completion_matrix(p: Sequence[int]) -> list[list[int]]:
    """Invertible integer matrix whose third column is ``p``."""
    basis = ([1, 0, 0], [0, 1, 0], [0, 0, 1])
    for a, b in ((0, 1), (0, 2), (1, 2)):
        M = [[basis[a][r], basis[b][r], p[r]] for r in range(3)]
        det = (
            M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
        )
        if det:
            return M
    raise ValueError("base point must be nonzero")


def _upoly_mul(a, b):
    out = [RationalFunction.coerce(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _upoly_add(a, b):
    n = max(len(a), len(b))
    zero = RationalFunction.coerce(0)
    return [(a[i] if i < len(a) else zero) + (b[i] if i < len(b) else zero) for i in range(n)]


def _upoly_shift(a, m0):
    """Coefficients of a(m0 + u) in u."""
    out = [RationalFunction.coerce(0)]
    for c in reversed(a):
        out = _upoly_add(_upoly_mul(out, [m0, RationalFunction.coerce(1)]), [c])
    return out


@dataclass(frozen=True)
class QuarticModel:
    """``v^2 = sum coeffs[k] u^k`` (degree <= 4) birational to a plane cubic."""

    coeffs: tuple

    def padded(self) -> list:
        zero = RationalFunction.coerce(0)
        c = list(self.coeffs) + [zero] * (5 - len(self.coeffs))
        return c[:5]


def discriminant_quartic(cubic: TernaryForm, p: Sequence[int]) -> tuple[QuarticModel, bool]:
    """Quartic from the pencil of lines through the smooth point ``p``, shifted to the tangent slope.

    Returns the quartic in ``u`` (constant term a square) and whether the
    coordinates were swapped to avoid a vertical tangent.
    """
    f = cubic.linear_substitute(_completion_matrix(p))
    zero = RationalFunction.coerce(0)
    c = {e: RationalFunction.coerce(v) for e, v in f.terms.items()}

    def get(i, j):
        # coefficient of x^i y^j in the affine chart z = 1
        return c.get((i, j, 3 - i - j), zero)

    if get(0, 0) != 0:
        raise InconsistencyError("base point does not lie on the cubic")
    if get(1, 0) == 0 and get(0, 1) == 0:
        raise ValueError("base point is singular on the generic member")
    swapped = get(0, 1) == 0
    if swapped:
        # vertical tangent: exchange x and y so the tangent has a finite slope
        c = {(e[1], e[0], e[2]): v for e, v in c.items()}
    # restrictions to the line y = m x, as polynomials in m
    f1 = [get(1, 0), get(0, 1)]
    f2 = [get(2, 0), get(1, 1), get(0, 2)]
    f3 = [get(3, 0), get(2, 1), get(1, 2), get(0, 3)]
    D = _upoly_add(_upoly_mul(f2, f2), [x * -4 for x in _upoly_mul(f1, f3)])
    m0 = -f1[0] / f1[1]
    shifted = _upoly_shift(D, m0)
    while len(shifted) > 1 and shifted[-1] == 0:
        shifted.pop()
    return QuarticModel(tuple(shifted)), swapped


def quartic_to_weierstrass(q: QuarticModel) -> WeierstrassModel:
    """Weierstrass model of ``v^2 = a u^4 + b u^3 + c u^2 + d u + e`` with ``e`` a square.

    ``e = q0^2 != 0`` uses Connell's formulas; ``e = 0`` sends the rational
    root u = 0 to infinity.
    """
    e, d, c, b, a = q.padded()
    if e == 0:
        if d == 0:
            raise InconsistencyError("quartic has a double root at the base point")
        return WeierstrassModel.from_coeffs(a2=c, a4=b * d, a6=a * d * d)
    q0 = _square_root(e)
    a2 = c - d * d / (4 * q0 * q0)
    a4 = -4 * q0 * q0 * a
    return WeierstrassModel.from_coeffs(a1=d / q0, a2=a2, a3=2 * q0 * b, a4=a4, a6=a2 * a4)


def _square_root(f: RationalFunction) -> RationalFunction:
    from .algebra import squarefree_decomposition

    def poly_sqrt(p: Polynomial) -> Polynomial:
        out = Polynomial([1])
        for fac, mult in squarefree_decomposition(p):
            if mult % 2:
                raise ValueError("not a square")
            out = out * fac ** (mult // 2)
        lc = p.lc / out.lc ** 2
        r = Fraction(_isqrt_exact(lc.numerator), _isqrt_exact(lc.denominator))
        return out * r

    return RationalFunction(poly_sqrt(f.num), poly_sqrt(f.den))


def _isqrt_exact(n: int) -> int:
    from math import isqrt

    if n < 0:
        raise ValueError("not a square")
    r = isqrt(n)
    if r * r != n:
        raise ValueError("not a square")
    return r


def quartic_j_invariant(q: QuarticModel) -> RationalFunction:
    """j-invariant of the Jacobian of ``v^2 = quartic`` from the invariants I and J."""
    e, d, c, b, a = q.padded()
    I = 12 * a * e - 3 * b * d + c * c
    J = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * e * b * b - 2 * c ** 3
    A, B = -27 * I, -27 * J
    den = 4 * A ** 3 + 27 * B * B
    if den == 0:
        raise ValueError("singular quartic: the plane cubic is singular")
    return 1728 * 4 * A ** 3 / den


def cubic_j_invariant(cubic: TernaryForm, p: Sequence[int]) -> RationalFunction:
    """j-invariant of the plane cubic, computed through the lines at ``p``."""
    return quartic_j_invariant(discriminant_quartic(cubic, p)[0])


def pencil_to_weierstrass(e: PencilEntry, p: Optional[Sequence[int]] = None) -> WeierstrassModel:
    """Nagell reduction of the generic member at the base point ``p``."""
    p = find_base_point(e) if p is None else tuple(p)
    if not is_smooth_base_point(e, p):
        raise ValueError(f"{p} is not a smooth base point of the pencil")
    quartic, _ = discriminant_quartic(e.member(), p)
    model = quartic_to_weierstrass(quartic)
    if compute_invariants(model).j != quartic_j_invariant(quartic):
        raise InconsistencyError("Weierstrass model and quartic disagree on j")
    return model


# ---------------------------------------------------------------------------
# verification


@dataclass
class CatalogReport:
    entry: PencilEntry
    base_point: tuple[int, int, int]
    model: WeierstrassModel
    configuration: FiberConfiguration
    euler: int
    trivial_disc: int
    torsion: TorsionAssignment
    checks: dict
    flags: dict

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        narrow, quotient = narrow_and_quotient(self.torsion)
        lat = trivial_lattice(self.configuration)
        return {
            "label": self.entry.label,
            "display": self.entry.display,
            "pencil": {"F": self.entry.F.format(), "G": self.entry.G.format()},
            "base_point": list(self.base_point),
            "model": self.model.to_json(),
            "configuration": self.configuration.to_json(),
            "components": self.configuration.components(),
            "euler": self.euler,
            "trivial_lattice": {"rank": lat.rank, "disc": lat.disc},
            "torsion": self.torsion.to_json(),
            "narrow": narrow.to_json(),
            "quotient": quotient.to_json(),
            "checks": dict(self.checks),
            "flags": dict(self.flags),
            "passed": self.passed,
        }


def verify_catalog_entry(e: PencilEntry, p: Optional[Sequence[int]] = None) -> CatalogReport:
    """Run the whole pipeline on one pencil and record each claim as a check."""
    pts = base_points(e) if p is None else [tuple(p)]
    if not pts:
        raise ValueError("no smooth rational base point found")
    p = pts[0]
    model = pencil_to_weierstrass(e, p)
    j = compute_invariants(model).j
    member = e.member()
    # an independent base point recomputes j through a different quartic
    others = [q for q in base_points(e) if q != p][:1]
    j_other = cubic_j_invariant(member, others[0]) if others else j
    conf = fiber_configuration(model)
    euler = euler_number(conf)
    torsion = solve_torsion(conf)
    order = torsion.group.order
    lat = trivial_lattice(conf)
    checks = {
        "j_matches_cubic": j == j_other,
        "semistable": conf.is_semistable(),
        "components": tuple(conf.components()) == tuple(sorted(e.expected_components, reverse=True)),
        "euler_12": euler == 12,
        "extremal": extremality_check(conf, order),
        "group": torsion.group.isomorphic(e.expected_group),
        "heights_zero": torsion.verify(),
    }
    flags = {
        "van_geemen_sarti": torsion.group.has_two_torsion(),
        "van_geemen_sarti_reference_row": tuple(e.expected_components) == (4, 4, 2, 2),
    }
    return CatalogReport(e, p, model, conf, euler, lat.disc, torsion, checks, flags)


# ---------------------------------------------------------------------------
# auxiliary models


def named_models() -> dict[str, WeierstrassModel]:
    """Named auxiliary models: the 3-torsion pair, the j-line pair and the j = 0, 1728 curves."""
    E, S = j_line_family()
    out = {
        "S": WeierstrassModel.from_coeffs(a1=1, a3=T),
        "S'": WeierstrassModel.from_coeffs(a3=T),
        "E_j": E,
        "S_j": S,
    }
    out.update(special_j_curves())
    return out


def three_torsion_criterion(m: WeierstrassModel) -> bool:
    """For ``y^2 + a1 xy + a3 y = x^3 + a2 x^2`` decide whether (0, 0) has order 3.

    The tangent at (0, 0) is ``y = 0`` exactly when a4 = 0, meeting the curve
    again at ``(-a2, 0)``; so 2P = (-a2, -a3) and 3P = O iff ``-2P = P`` iff a2 = 0.
    """
    if m.a4 != 0 or m.a6 != 0:
        raise ValueError("three_torsion_criterion needs a4 = a6 = 0")
    if m.a3 == 0:
        raise ValueError("a3 = 0 makes (0, 0) a 2-torsion point")
    return m.a2 == 0
