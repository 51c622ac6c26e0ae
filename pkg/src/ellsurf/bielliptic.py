"""Genus-2 bielliptic curves and their degree-2 elliptic subcovers.

Curves are stored as ``lead * y^2 = R(x)`` with ``lead`` and the coefficients
of ``R`` polynomials in the parameters, so the same code handles rational
parameters and indeterminates. Square roots never appear: a map whose
y-image carries ``sqrt(lam)`` records ``lam`` and only its square enters
the verification.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Union

from ._symbolic import MPoly, poly_from_coeffs, reduce_hyperelliptic
from .algebra import Polynomial, discriminant
from .weierstrass import WeierstrassModel

Param = Union[int, Fraction, MPoly]
INF = "inf"


def _p(x) -> MPoly:
    return MPoly.lift(x)


def _frac(x) -> Fraction:
    return Fraction(x) if not isinstance(x, Fraction) else x


@dataclass(frozen=True)
class CurveEquation:
    """``lead * y^2 = sum coeffs[k] * x^k`` in the named variables."""

    x: str
    y: str
    lead: MPoly
    coeffs: tuple[MPoly, ...]

    @classmethod
    def make(cls, x: str, y: str, coeffs, lead=1) -> "CurveEquation":
        cs = [_p(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        return cls(x, y, _p(lead), tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def rhs(self) -> MPoly:
        return poly_from_coeffs(self.coeffs, self.x)

    def relation(self) -> MPoly:
        return self.lead * MPoly.var(self.y) ** 2 - self.rhs()

    def numeric_rhs(self) -> Polynomial:
        """The right side divided by ``lead`` as a univariate polynomial (rational parameters only)."""
        lead = self.lead.constant_value()
        return Polynomial([c.constant_value() / lead for c in self.coeffs])

    def format(self) -> str:
        lead = "" if self.lead == 1 else f"({self.lead})*"
        return f"{lead}{self.y}^2 = {self.numeric_rhs().format(self.x) if self._numeric() else self.rhs()}"

    def _numeric(self) -> bool:
        return self.lead.is_constant() and all(c.is_constant() for c in self.coeffs)

    def to_json(self) -> dict:
        if not self._numeric():
            return {"x": self.x, "y": self.y, "symbolic": repr(self.relation())}
        return {"x": self.x, "y": self.y, "rhs": self.numeric_rhs().to_json()}


@dataclass(frozen=True)
class CoverMap:
    """A rational map ``source -> target`` given by ``x -> x_num/x_den`` and
    ``y -> sqrt(y_scale) * y_num/y_den``, with ``y_scale = scale_num/scale_den``."""

    name: str
    source: CurveEquation
    target: CurveEquation
    x_num: MPoly
    x_den: MPoly
    y_num: MPoly
    y_den: MPoly
    scale_num: MPoly = field(default_factory=lambda: MPoly.const(1))
    scale_den: MPoly = field(default_factory=lambda: MPoly.const(1))

    def residual(self) -> tuple[MPoly, MPoly]:
        """Target relation pulled back and reduced modulo the source relation."""
        k = self.target.degree
        lhs = self.target.lead * self.scale_num * self.y_num ** 2 * self.x_den ** k
        rhs = MPoly()
        for i, c in enumerate(self.target.coeffs):
            rhs = rhs + c * self.x_num ** i * self.x_den ** (k - i)
        rhs = rhs * self.y_den ** 2 * self.scale_den
        return reduce_hyperelliptic(lhs - rhs, self.source.y, self.source.lead, self.source.rhs())

    def describe(self) -> dict:
        return {
            "name": self.name,
            "x": f"({self.x_num})/({self.x_den})",
            "y": f"({self.y_num})/({self.y_den})",
            "y_scale_square": f"({self.scale_num})/({self.scale_den})",
        }


def verify_cover(m: CoverMap) -> bool:
    """True iff the images satisfy the target equation on the source curve."""
    r0, r1 = m.residual()
    return r0.is_zero() and r1.is_zero()


# ---------------------------------------------------------------------------
# Jacobi form


@dataclass(frozen=True)
class JacobiSextic:
    """``y^2 = c0 x^6 + c1 x^4 + c2 x^2 + c3``."""

    c0: Param
    c1: Param
    c2: Param
    c3: Param

    def __post_init__(self):
        if _p(self.c0).is_zero():
            raise ValueError("c0 must be nonzero")

    @property
    def coeffs(self) -> tuple:
        return (self.c0, self.c1, self.c2, self.c3)

    def equation(self, x: str = "xi", y: str = "y") -> CurveEquation:
        c0, c1, c2, c3 = self.coeffs
        return CurveEquation.make(x, y, [c3, 0, c2, 0, c1, 0, c0])

    def polynomial(self) -> Polynomial:
        c0, c1, c2, c3 = (_p(c).constant_value() for c in self.coeffs)
        return Polynomial([c3, 0, c2, 0, c1, 0, c0])

    def discriminant(self) -> Fraction:
        return discriminant(self.polynomial())

    def is_genus_two(self) -> bool:
        return self.discriminant() != 0

    def to_json(self) -> dict:
        return {"coeffs": [[str(_frac(c).numerator), str(_frac(c).denominator)] for c in self.coeffs]}


@dataclass(frozen=True)
class JacobiSplit:
    E1: CurveEquation
    E2: CurveEquation
    pi1: CoverMap
    pi2: CoverMap


def split_jacobi(s: JacobiSextic, x: str = "xi", y: str = "y") -> JacobiSplit:
    """The two subcovers ``(x, y) -> (x^2, y)`` and ``(x, y) -> (1/x^2, y/x^3)``."""
    if _p(s.c3).is_zero():
        raise ValueError("c3 = 0: the second subcover degenerates")
    C = s.equation(x, y)
    c0, c1, c2, c3 = s.coeffs
    E1 = CurveEquation.make("x1", "y1", [c3, c2, c1, c0])
    E2 = CurveEquation.make("x2", "y2", [c0, c1, c2, c3])
    X, Yv = MPoly.var(x), MPoly.var(y)
    one = MPoly.const(1)
    pi1 = CoverMap("pi1", C, E1, X ** 2, one, Yv, one)
    pi2 = CoverMap("pi2", C, E2, one, X ** 2, Yv, X ** 3)
    return JacobiSplit(E1, E2, pi1, pi2)


def jacobi_from_cubic(E1: CurveEquation) -> JacobiSextic:
    """Inverse of the first subcover: read ``c0..c3`` back from ``y^2 = c0 x^3 + ... + c3``."""
    if E1.degree != 3 or not E1.lead == 1:
        raise ValueError("expected a monic-lead cubic y^2 = c0 x^3 + c1 x^2 + c2 x + c3")
    c3, c2, c1, c0 = E1.coeffs
    return JacobiSextic(*(c.constant_value() if c.is_constant() else c for c in (c0, c1, c2, c3)))


def cubic_to_weierstrass(E: CurveEquation) -> WeierstrassModel:
    """``y^2 = a x^3 + b x^2 + c x + d`` as ``Y^2 = X^3 + b X^2 + a c X + a^2 d`` (X = a x, Y = a y)."""
    if E.degree != 3:
        raise ValueError("expected a cubic")
    lead = E.lead.constant_value()
    d, c, b, a = (k.constant_value() / lead for k in E.coeffs)
    return WeierstrassModel.from_coeffs(a2=b, a4=a * c, a6=a * a * d)


# ---------------------------------------------------------------------------
# Legendre pairs


@dataclass(frozen=True)
class LegendrePair:
    """Subcovers ``y_i^2 = x (x - 1)(x - t_i)``; parameters may be indeterminates."""

    t1: Param
    t2: Param

    def __post_init__(self):
        for t in (self.t1, self.t2):
            tp = _p(t)
            if tp.is_constant() and tp.constant_value() in (0, 1):
                raise ValueError("t_i must avoid 0 and 1")
        if (_p(self.t1) - _p(self.t2)).is_zero():
            raise ValueError("t1 and t2 must differ")

    @classmethod
    def symbolic(cls) -> "LegendrePair":
        return cls(MPoly.var("t1"), MPoly.var("t2"))

    def roots(self) -> tuple[tuple[MPoly, MPoly], ...]:
        """Roots ``t2/t1``, ``(1-t2)/(1-t1)``, ``1`` of the cubic in xi^2, as (num, den)."""
        t1, t2 = _p(self.t1), _p(self.t2)
        one = MPoly.const(1)
        return ((t2, t1), (1 - t2, 1 - t1), (one, one))

    def numeric_roots(self) -> tuple[Fraction, ...]:
        return tuple(n.constant_value() / d.constant_value() for n, d in self.roots())


def _product_of_linears(roots, reciprocal: bool = False) -> list[MPoly]:
    """Coefficients of ``prod (d_k x - n_k)`` or, reciprocally, ``prod (d_k - n_k x)``."""
    coeffs = [MPoly.const(1)]
    for n, d in roots:
        lin = [d, -n] if reciprocal else [-n, d]
        out = [MPoly()] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            out[i] = out[i] + c * lin[0]
            out[i + 1] = out[i + 1] + c * lin[1]
        coeffs = out
    return coeffs


def _lead(p: LegendrePair) -> MPoly:
    lead = MPoly.const(1)
    for _, d in p.roots():
        lead = lead * d
    return lead


def curve_from_legendre_pair(p: LegendrePair) -> JacobiSextic:
    """``eta^2 = (xi^2 - t2/t1)(xi^2 - (1-t2)/(1-t1))(xi^2 - 1)`` in Jacobi form (rational t_i)."""
    r = p.numeric_roots()
    if len(set(r)) < 3 or 0 in r:
        raise ValueError("the quadratic factors must have distinct nonzero roots")
    r1, r2, r3 = r
    return JacobiSextic(Fraction(1), -(r1 + r2 + r3), r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3)


def legendre_curve(t: Param, x: str = "x", y: str = "y") -> CurveEquation:
    """``y^2 = x (x - 1)(x - t)``."""
    t = _p(t)
    return CurveEquation.make(x, y, [0, t, -(1 + t), 1])


@dataclass(frozen=True)
class SubcoverData:
    C: CurveEquation
    E1_tilde: CurveEquation
    E2_tilde: CurveEquation
    changes: tuple[CoverMap, CoverMap]
    pi1: CoverMap
    pi2: CoverMap
    printed_scale_checks: tuple[bool, bool]

    def all_verified(self) -> bool:
        return all(verify_cover(m) for m in (*self.changes, self.pi1, self.pi2))


def _scale(ti: MPoly, tj: MPoly) -> tuple[MPoly, MPoly]:
    return (tj - ti) ** 3, ti * (1 - ti)


def subcover_equations(p: LegendrePair) -> SubcoverData:
    """Normalized subcovers and the coordinate changes from the Legendre forms.

    The change for E_i is ``x~ = (x - t_j)/(x - t_i)``, ``y~ = sqrt(lam) y/(x - t_i)^2``.
    For i = 1, ``lam = (t2 - t1)^3/(t1 (1 - t1))``. For i = 2 the same ``lam``
    is needed: the printed variant with the indices exchanged differs from it
    by the factor ``-t2 (1 - t2)/(t1 (1 - t1))``, which is recorded in
    ``printed_scale_checks``.
    """
    t1, t2 = _p(p.t1), _p(p.t2)
    roots = p.roots()
    lead = _lead(p)
    E1t = CurveEquation.make("u1", "v1", _product_of_linears(roots), lead)
    E2t = CurveEquation.make("u2", "v2", _product_of_linears(roots, reciprocal=True), lead)
    # C: lead * eta^2 = prod (d xi^2 - n)
    cubic = _product_of_linears(roots)
    sextic = []
    for c in cubic:
        sextic.extend([c, MPoly()])
    C = CurveEquation.make("xi", "eta", sextic[:-1], lead)

    changes = []
    printed = []
    for i, (ti, tj, target) in enumerate(((t1, t2, E1t), (t2, t1, E2t)), start=1):
        src = legendre_curve(ti, f"x{i}", f"y{i}")
        xv, yv = MPoly.var(f"x{i}"), MPoly.var(f"y{i}")
        sn, sd = _scale(t1, t2)
        changes.append(CoverMap(f"E{i}->E{i}~", src, target, xv - tj, xv - ti, yv, (xv - ti) ** 2, sn, sd))
        pn, pd = _scale(ti, tj)
        printed.append(verify_cover(CoverMap(f"E{i}->E{i}~ (printed scale)", src, target, xv - tj, xv - ti, yv, (xv - ti) ** 2, pn, pd)))

    xi, eta = MPoly.var("xi"), MPoly.var("eta")
    one = MPoly.const(1)
    pi1 = CoverMap("pi1", C, E1t, xi ** 2, one, eta, one)
    pi2 = CoverMap("pi2", C, E2t, one, xi ** 2, eta, xi ** 3)
    return SubcoverData(C, E1t, E2t, (changes[0], changes[1]), pi1, pi2, (printed[0], printed[1]))


# ---------------------------------------------------------------------------
# fibered product


@dataclass(frozen=True)
class LocalBranches:
    """Near a node, ``x = f_i(y_i) y_i^2``; the branches are ``sqrt(f1) y1 = +-sqrt(f2) y2``."""

    point: object
    leading: tuple[Fraction, Fraction]

    @property
    def transversal(self) -> bool:
        return all(c != 0 for c in self.leading)


@dataclass(frozen=True)
class FiberedProduct:
    equations: tuple[CurveEquation, CurveEquation]
    branch_loci: tuple[tuple, tuple]
    nodes: tuple
    local: tuple[LocalBranches, ...]

    def normalization_points(self) -> list[str]:
        """Labels of the two points over each transversal node (0+, 0-, ...); counted only."""
        out = []
        for b in self.local:
            if b.transversal:
                v = b.point if b.point == INF else str(b.point)
                out.extend((f"{v}+", f"{v}-"))
        return out

    def to_json(self) -> dict:
        def lab(v):
            return v if v == INF else str(v)

        return {
            "normalization_points": self.normalization_points(),
            "equations": [e.to_json() for e in self.equations],
            "branch_loci": [[lab(v) for v in b] for b in self.branch_loci],
            "nodes": [lab(v) for v in self.nodes],
            "local_branches": [
                {"point": lab(b.point), "leading": [str(c) for c in b.leading], "transversal": b.transversal}
                for b in self.local
            ],
        }


def _branch_order(v):
    return (1, 0) if v == INF else (0, v)


def fibered_product(p: LegendrePair) -> FiberedProduct:
    """``E1 x_P1 E2``: nodes over the common branch points of the two x-projections."""
    t1, t2 = (_frac(_p(t).constant_value()) for t in (p.t1, p.t2))
    loci = []
    for t in (t1, t2):
        loci.append(tuple(sorted({Fraction(0), Fraction(1), t, INF}, key=_branch_order)))
    nodes = tuple(sorted(set(loci[0]) & set(loci[1]), key=_branch_order))
    local = []
    for v in nodes:
        lead = []
        for t in (t1, t2):
            # y^2 = x (x - 1)(x - t) ~ c (x - v) near a root, so x - v ~ y^2 / c
            if v == INF:
                # with s = 1/x and w = y/x^2 one has w^2 = s (1 - s)(1 - t s) ~ s
                lead.append(Fraction(1))
            else:
                others = [r for r in (Fraction(0), Fraction(1), t) if r != v]
                c = (v - others[0]) * (v - others[1])
                lead.append(1 / c)
        local.append(LocalBranches(v, (lead[0], lead[1])))
    eqs = (legendre_curve(p.t1, "x", "y1"), legendre_curve(p.t2, "x", "y2"))
    return FiberedProduct(eqs, (loci[0], loci[1]), nodes, tuple(local))


# ---------------------------------------------------------------------------
# the normalized cover C -> E


@dataclass(frozen=True)
class NewsettingCover:
    t: Fraction
    tp: Fraction
    C: CurveEquation
    E: CurveEquation
    f: CoverMap
    y0_squared: Fraction
    branch_points: tuple
    ramification_points: tuple
    ramified_at_infinity: bool
    E_prime_cubic: CurveEquation
    E_prime_quartic: CurveEquation
    E_prime_branch: tuple
    to_E_prime: CoverMap
    homography: CoverMap
    quartic_scale: Fraction

    def sextic(self) -> JacobiSextic:
        c = self.C.coeffs
        return JacobiSextic(*(c[k].constant_value() for k in (6, 4, 2, 0)))

    def verify(self) -> bool:
        return all(verify_cover(m) for m in (self.f, self.to_E_prime, self.homography))


def newsetting_cover(t, tp) -> NewsettingCover:
    """``C: y^2 = (t'-xi^2)(t'-1-xi^2)(t'-t-xi^2)`` with ``f: (xi, y) -> (t' - xi^2, y)``.

    The second subcover E' comes from the reciprocal cubic; the homography
    ``w = t' - 1/x`` carries its branch points to ``0, 1, t, t'`` and lands on
    ``y^2 = -w (w - 1)(w - t)(w - t')``, i.e. the quartic up to the scalar -1.
    """
    t, tp = Fraction(t), Fraction(tp)
    if t in (0, 1) or tp in (0, 1) or t == tp:
        raise ValueError("need t, t' outside {0, 1} and t != t'")
    xi = MPoly.var("xi")
    X = xi ** 2
    rhs = (tp - X) * (tp - 1 - X) * (tp - t - X)
    C = CurveEquation.make("xi", "y", [rhs.coefficients_in("xi").get(k, MPoly()) for k in range(7)])
    E = legendre_curve(t, "x", "y")
    one = MPoly.const(1)
    f = CoverMap("f", C, E, tp - X, one, MPoly.var("y"), one)
    y0sq = tp * (tp - 1) * (tp - t)

    # E' via the second Jacobi subcover: y2^2 = prod ((tp - r) x2 - 1)
    cubic = [MPoly.const(c) for c in _numeric_reciprocal(tp, t)]
    Ep = CurveEquation.make("x2", "y2", cubic)
    to_Ep = CoverMap("C->E'", C, Ep, one, X, MPoly.var("y"), xi ** 3)
    quartic = Polynomial.from_roots([0, 1, t, tp])
    Eq = CurveEquation.make("w", "Y", list(quartic.coeffs))
    x2, y2 = MPoly.var("x2"), MPoly.var("y2")
    hom = CoverMap("E'->quartic", Ep, Eq, tp * x2 - 1, x2, y2, x2 ** 2, MPoly.const(-1), one)
    branch_Ep = tuple(sorted(1 / (tp - r) for r in (0, 1, t))) + (INF,)
    return NewsettingCover(
        t, tp, C, E, f, y0sq,
        branch_points=((tp, "+y0"), (tp, "-y0")),
        ramification_points=((Fraction(0), "+y0"), (Fraction(0), "-y0")),
        ramified_at_infinity=False,
        E_prime_cubic=Ep,
        E_prime_quartic=Eq,
        E_prime_branch=branch_Ep,
        to_E_prime=to_Ep,
        homography=hom,
        quartic_scale=Fraction(-1),
    )


def _numeric_reciprocal(tp: Fraction, t: Fraction) -> list[Fraction]:
    # coefficients of prod_r ((tp - r) x - 1) over r in {0, 1, t}
    poly = Polynomial([1])
    for r in (0, 1, t):
        poly = poly * Polynomial([-1, tp - r])
    return list(poly.coeffs)


# ---------------------------------------------------------------------------
# Weierstrass points


@dataclass(frozen=True)
class ParityRule:
    degree: int
    residue: int
    total: int
    admissible: tuple[tuple[int, ...], ...]

    def holds(self, counts) -> bool:
        counts = list(counts)
        return sum(counts) == self.total and all(c % 2 == self.residue for c in counts)


def weierstrass_parity(n: int) -> ParityRule:
    """Counts ``|phi^-1(Q) & W|`` over the four 2-torsion points Q for a degree-n cover.

    Odd n: every count is odd; even n: every count is even; they total 6.
    """
    if n < 2:
        raise ValueError("cover degree must be at least 2")
    residue = n % 2
    parts = tuple(
        combo
        for combo in combinations_with_replacement(range(7), 4)
        if sum(combo) == 6 and all(c % 2 == residue for c in combo)
    )
    return ParityRule(n, residue, 6, parts)


def weierstrass_counts(cover: NewsettingCover) -> dict:
    """Images of the six Weierstrass points of C under f, tallied over E[2].

    The Weierstrass points are the roots of the sextic, i.e. ``xi^2 = t' - r``
    for r in {0, 1, t}; f sends them to ``x = r``.
    """
    counts = {Fraction(0): 0, Fraction(1): 0, cover.t: 0, INF: 0}
    for r in (Fraction(0), Fraction(1), cover.t):
        xi_sq = cover.tp - r
        image = cover.tp - xi_sq
        counts[image] += 2
    return counts
