"""Kodaira fiber types, classification from valuations, and fiber transformation rules."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .algebra import Place, split_places, valuation_or_none
from .weierstrass import WeierstrassModel, compute_invariants


class InconsistencyError(RuntimeError):
    """An internal invariant (table lookup, Euler sum, certificate) failed."""


_ADDITIVE_COMPONENTS = {"II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}
_ROOT = {"III": ("A", 1), "IV": ("A", 2), "IV*": ("E", 6), "III*": ("E", 7), "II*": ("E", 8)}
_GROUP = {"II": (), "II*": (), "III": (2,), "III*": (2,), "IV": (3,), "IV*": (3,)}
_TWIST = {"II": "IV*", "IV*": "II", "III": "III*", "III*": "III", "IV": "II*", "II*": "IV"}


@dataclass(frozen=True, order=True)
class KodairaType:
    """A Kodaira fiber type.

    ``family`` is one of ``I``, ``II``, ``III``, ``IV``, ``I*``, ``IV*``,
    ``III*``, ``II*``; ``n`` is the index for ``I_n`` and ``I*_n`` (0 otherwise).
    """

    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in ("I", "I*") and self.family not in _ADDITIVE_COMPONENTS:
            raise ValueError(f"unknown Kodaira family {self.family!r}")
        if self.n < 0 or (self.family not in ("I", "I*") and self.n):
            raise ValueError(f"bad index {self.n} for {self.family}")

    @classmethod
    def I(cls, n: int) -> "KodairaType":  # noqa: E743
        return cls("I", n)

    @classmethod
    def Istar(cls, m: int) -> "KodairaType":
        return cls("I*", m)

    @classmethod
    def parse(cls, name: str) -> "KodairaType":
        """Parse ``I3``, ``I_3``, ``I0*``, ``I*2``, ``IV*``, ``II`` ..."""
        s = name.replace("_", "").strip()
        if s in _ADDITIVE_COMPONENTS:
            return cls(s)
        m = re.fullmatch(r"I(\d+)", s)
        if m:
            return cls("I", int(m.group(1)))
        m = re.fullmatch(r"I(\d+)\*|I\*(\d+)", s)
        if m:
            return cls("I*", int(m.group(1) or m.group(2)))
        raise ValueError(f"cannot parse Kodaira type {name!r}")

    @property
    def name(self) -> str:
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family

    def __str__(self) -> str:
        return self.name

    @property
    def is_smooth(self) -> bool:
        return self.family == "I" and self.n == 0

    @property
    def is_multiplicative(self) -> bool:
        return self.family == "I" and self.n > 0

    @property
    def is_additive(self) -> bool:
        return self.family != "I"

    @property
    def m_v(self) -> int:
        """Number of irreducible components."""
        if self.family == "I":
            return max(self.n, 1)
        if self.family == "I*":
            return self.n + 5
        return _ADDITIVE_COMPONENTS[self.family]

    @property
    def euler(self) -> int:
        if self.is_smooth:
            return 0
        if self.is_multiplicative:
            return self.m_v
        return self.m_v + 1

    @property
    def delta_v(self) -> int:
        # wild ramification never occurs in characteristic zero
        return 0

    @property
    def component_group(self) -> tuple[int, ...]:
        """Cyclic orders of the component group G(F_v)."""
        if self.family == "I":
            return (self.n,) if self.n > 1 else ()
        if self.family == "I*":
            return (4,) if self.n % 2 else (2, 2)
        return _GROUP[self.family]

    @property
    def root_lattice(self) -> Optional[tuple[str, int]]:
        """Root lattice spanned by non-identity components, e.g. ``("A", 8)``."""
        if self.family == "I":
            return ("A", self.n - 1) if self.n >= 2 else None
        if self.family == "I*":
            return ("D", self.n + 4)
        return _ROOT.get(self.family)

    @property
    def discriminant_valuation(self) -> int:
        """v(Delta) of a minimal model in characteristic zero."""
        return self.euler


@dataclass(frozen=True)
class FiberConfiguration:
    """Singular fibers by place; ``chi`` is the holomorphic Euler characteristic (1 for rational)."""

    entries: tuple[tuple[Place, KodairaType], ...]
    chi: int = 1
    valuations: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @classmethod
    def from_components(cls, components: Sequence[int], chi: int = 1) -> "FiberConfiguration":
        """All-multiplicative configuration ``[n1, n2, ...]`` on placeholder places t = 0, 1, 2, ..."""
        return cls.from_types([KodairaType.I(n) for n in components], chi)

    @classmethod
    def from_types(cls, types: Sequence, chi: int = 1) -> "FiberConfiguration":
        entries = []
        for i, f in enumerate(types):
            f = KodairaType.parse(f) if isinstance(f, str) else f
            entries.append((Place.at(i), f))
        return cls(tuple(entries), chi)

    def geometric_fibers(self) -> list[KodairaType]:
        """Fiber types with a degree-d place repeated d times."""
        out = []
        for place, f in self.entries:
            out.extend([f] * place.residue_degree)
        return out

    def singular(self) -> list[tuple[Place, KodairaType]]:
        return [(p, f) for p, f in self.entries if not f.is_smooth]

    def components(self) -> list[int]:
        """Component counts of the geometric singular fibers, largest first."""
        return sorted((f.m_v for f in self.geometric_fibers() if not f.is_smooth), reverse=True)

    def type_names(self) -> list[str]:
        return [f.name for f in self.geometric_fibers() if not f.is_smooth]

    def is_semistable(self) -> bool:
        return all(not f.is_additive for f in self.geometric_fibers())

    def to_json(self) -> list[dict]:
        rows = []
        for place, f in self.entries:
            row = {
                "place": place.label(),
                "type": f.name,
                "m_v": f.m_v,
                "e": f.euler,
                "residue_degree": place.residue_degree,
            }
            if place in self.valuations:
                vc4, vd = self.valuations[place]
                row["v_c4"] = vc4
                row["v_delta"] = vd
            rows.append(row)
        return rows


def classify_profile(v_c4: Optional[int], v_delta: int) -> KodairaType:
    """Kodaira type of a minimal model from ``(v(c4), v(Delta))``; ``None`` means c4 = 0.

    The II* row is Tate's terminal step: any profile with ``v(c4) >= 4`` and
    ``10 <= v(Delta) < 12`` ends there.
    """
    a = 10 ** 9 if v_c4 is None else v_c4
    d = v_delta
    if d < 0 or a < 0:
        raise InconsistencyError(f"non-integral profile v(c4)={v_c4}, v(Delta)={d}")
    if d == 0:
        return KodairaType.I(0)
    if a == 0:
        return KodairaType.I(d)
    if d == 2:
        return KodairaType("II")
    if a == 1 and d == 3:
        return KodairaType("III")
    if a >= 2 and d == 4:
        return KodairaType("IV")
    if a >= 2 and d == 6:
        return KodairaType.Istar(0)
    if a == 2 and d > 6:
        return KodairaType.Istar(d - 6)
    if a >= 3 and d == 8:
        return KodairaType("IV*")
    if a == 3 and d == 9:
        return KodairaType("III*")
    if a >= 4 and 10 <= d < 12:
        return KodairaType("II*")
    raise InconsistencyError(f"valuation profile v(c4)={v_c4}, v(Delta)={d} is outside Tate's table")


def minimal_profile(v_c4: Optional[int], v_c6: Optional[int], v_delta: int) -> tuple[Optional[int], int]:
    """Rescale a valuation profile to an integral minimal model at the place.

    First scale up until c4 and c6 are integral, then scale down while
    ``v(c4) >= 4`` and ``v(Delta) >= 12``.
    """
    k = 0
    while (v_c4 is not None and v_c4 + 4 * k < 0) or (v_c6 is not None and v_c6 + 6 * k < 0) or v_delta + 12 * k < 0:
        k += 1
    a = None if v_c4 is None else v_c4 + 4 * k
    d = v_delta + 12 * k
    while (a is None or a >= 4) and d >= 12:
        a = None if a is None else a - 4
        d -= 12
    return a, d


def merge_profiles(*profiles: tuple[Optional[int], int]) -> tuple[Optional[int], int]:
    """Valuation profile of fibers colliding at one place (valuations add)."""
    a: Optional[int] = 0
    d = 0
    for pa, pd in profiles:
        a = None if (a is None or pa is None) else a + pa
        d += pd
    return a, d


def local_profile(m: WeierstrassModel, v: Place) -> tuple[Optional[int], int]:
    inv = compute_invariants(m, check=False)
    return minimal_profile(valuation_or_none(inv.c4, v), valuation_or_none(inv.c6, v), valuation_or_none(inv.delta, v))


def classify_fiber(m: WeierstrassModel, v: Place) -> KodairaType:
    """Kodaira type of the fiber of ``m`` at ``v`` (characteristic zero)."""
    return classify_profile(*local_profile(m, v))


def fiber_configuration(m: WeierstrassModel, chi: int = 1) -> FiberConfiguration:
    """Classify every place where c4, c6 or Delta has a zero or pole, plus infinity.

    Raises InconsistencyError if the Euler numbers do not sum to ``12 chi``.
    """
    inv = compute_invariants(m)
    polys = [inv.delta.num, inv.delta.den, inv.c4.den, inv.c6.den]
    places = split_places(p for p in polys if p.degree > 0) + [Place.infinity()]
    entries = []
    vals = {}
    for v in places:
        prof = minimal_profile(
            valuation_or_none(inv.c4, v), valuation_or_none(inv.c6, v), valuation_or_none(inv.delta, v)
        )
        f = classify_profile(*prof)
        if not f.is_smooth:
            entries.append((v, f))
            vals[v] = prof
    conf = FiberConfiguration(tuple(entries), chi, vals)
    total = euler_number(conf)
    if total != 12 * chi:
        raise InconsistencyError(f"Euler number {total} != 12*chi = {12 * chi} for {conf.type_names()}")
    return conf


def euler_number(c: FiberConfiguration) -> int:
    return sum(f.euler + f.delta_v for f in c.geometric_fibers())


def base_change_fiber(f: KodairaType, d: int) -> KodairaType:
    """Pull back a multiplicative or smooth fiber along a cover ramified to order ``d``."""
    if d < 1:
        raise ValueError("ramification index must be positive")
    if f.is_additive:
        raise NotImplementedError("base change of additive fibers is not supported")
    return KodairaType.I(f.n * d)


def quotient_fiber_by_translation(f: KodairaType, m: int, meets_zero: bool) -> KodairaType:
    """Fiber of the quotient by translation by an order-``m`` torsion section.

    A section meeting the identity component gives ``I_{mn}``; otherwise the
    cycle is rotated and the quotient is ``I_{n/m}``.
    """
    if not f.is_multiplicative:
        raise ValueError("quotient rule implemented for multiplicative fibers only")
    if m < 2 or any(m % p == 0 for p in range(2, int(m ** 0.5) + 1)):
        raise ValueError("translation order must be prime")
    if meets_zero:
        return KodairaType.I(m * f.n)
    if f.n % m:
        raise ValueError(f"order {m} does not divide {f.n} for a section off the identity component")
    return KodairaType.I(f.n // m)


def quadratic_twist_fiber(f: KodairaType) -> KodairaType:
    """Fiber type after a quadratic twist ramified at the place."""
    if f.family == "I":
        return KodairaType.Istar(f.n)
    if f.family == "I*":
        return KodairaType.I(f.n)
    return KodairaType(_TWIST[f.family])


def semistable_counts(n: int, g_base: int, card_r: int) -> tuple[int, int]:
    """Number and genus of singular fibers of the double-cover construction over a degree-``n`` map."""
    if n < 2 or card_r < 0 or g_base < 0:
        raise ValueError("need n >= 2, g >= 0, Card(R) >= 0")
    return card_r + 2, n - 1 + 2 * g_base
