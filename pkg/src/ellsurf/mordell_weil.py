"""Component groups, local contributions, the height pairing and the torsion solver."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt, lcm
from typing import Optional, Sequence

from . import kernels
from .groups import ComponentGroup, abelian_groups, subgroup_invariants
from .kodaira import FiberConfiguration, InconsistencyError, KodairaType, quotient_fiber_by_translation
from .lattices import GramLattice, shioda_tate_rank


# ---------------------------------------------------------------------------
# local data per fiber type


def group_size(f: KodairaType) -> int:
    """Order of the component group G(F_v)."""
    size = 1
    for d in f.component_group:
        size *= d
    return size


def group_add(f: KodairaType, a: int, b: int) -> int:
    """Addition in G(F_v) on component indices.

    ``I*_m`` with m even is (Z/2)^2 indexed 0..3 under XOR (1 is the near
    component); every other type is cyclic and indices add mod the order.
    """
    s = group_size(f)
    _check_index(f, a)
    _check_index(f, b)
    if f.family == "I*" and f.n % 2 == 0:
        return a ^ b
    return (a + b) % s


def _check_index(f: KodairaType, i: int) -> None:
    if not 0 <= i < group_size(f):
        raise ValueError(f"component index {i} is invalid for {f.name}")


def _dstar_kind(f: KodairaType, i: int) -> str:
    if i == 0:
        return "zero"
    near = 1 if f.n % 2 == 0 else 2
    return "near" if i == near else "far"


def contribution(f: KodairaType, i: int, j: Optional[int] = None) -> Fraction:
    """Local correction term contr_v for sections through components ``i`` (and ``j``).

    With ``j`` omitted this is the self term entering <P, P>.
    """
    _check_index(f, i)
    if j is None:
        j = i
    _check_index(f, j)
    if i == 0 or j == 0:
        return Fraction(0)
    fam = f.family
    if fam == "I":
        n = f.n
        a, b = sorted((i, j))
        return Fraction(a * (n - b), n)
    if fam == "I*":
        m = f.n
        ki, kj = _dstar_kind(f, i), _dstar_kind(f, j)
        if i == j:
            return Fraction(1) if ki == "near" else 1 + Fraction(m, 4)
        if "near" in (ki, kj):
            return Fraction(1, 2)
        return Fraction(1, 2) + Fraction(m, 4)
    if fam in ("III", "III*"):
        return Fraction(1, 2) if fam == "III" else Fraction(3, 2)
    if fam in ("IV", "IV*"):
        base = Fraction(1, 3) if fam == "IV" else Fraction(2, 3)
        return 2 * base if i == j else base
    raise ValueError(f"{f.name} has a trivial component group")


def reducible_fibers(c: FiberConfiguration) -> list[tuple[str, KodairaType]]:
    """Geometric fibers with a nontrivial component group, labelled ``type@place``.

    A place of residue degree d contributes d fibers, suffixed ``#1..#d``.
    """
    out = []
    for place, f in c.entries:
        if group_size(f) == 1:
            continue
        d = place.residue_degree
        base = f"{f.name}@{place.label()}"
        if d == 1:
            out.append((base, f))
        else:
            out.extend((f"{base}#{k}", f) for k in range(1, d + 1))
    return out


def torsion_injection_target(c: FiberConfiguration) -> ComponentGroup:
    """The product of G(F_v) over the geometric fibers, into which torsion injects."""
    orders: list[int] = []
    for _, f in reducible_fibers(c):
        orders.extend(f.component_group)
    return ComponentGroup(tuple(orders))


# ---------------------------------------------------------------------------
# sections and heights


@dataclass(frozen=True)
class SectionData:
    """Intersection data of a section: component index per reducible fiber and ``P.O``.

    ``components`` is indexed like ``reducible_fibers`` of the configuration;
    missing entries mean the identity component.
    """

    components: tuple[int, ...] = ()
    po: int = 0

    @classmethod
    def zero(cls, chi: int = 1) -> "SectionData":
        # O.O = -chi
        return cls((), -chi)

    def component(self, k: int) -> int:
        return self.components[k] if k < len(self.components) else 0


def _contr_sum(P: SectionData, Q: SectionData, fibers: Sequence[tuple[str, KodairaType]]) -> Fraction:
    if max(len(P.components), len(Q.components)) > len(fibers):
        raise ValueError("section data lists more components than there are reducible fibers")
    return sum(
        (contribution(f, P.component(k), Q.component(k)) for k, (_, f) in enumerate(fibers)),
        Fraction(0),
    )


def height_pairing(
    P: SectionData, Q: SectionData, config: FiberConfiguration, chi: Optional[int] = None, pq: int = 0
) -> Fraction:
    """<P, Q> = chi + P.O + Q.O - P.Q - sum_v contr_v(P, Q)."""
    chi = config.chi if chi is None else chi
    return chi + P.po + Q.po - pq - _contr_sum(P, Q, reducible_fibers(config))


def self_height(P: SectionData, config: FiberConfiguration, chi: Optional[int] = None) -> Fraction:
    """<P, P> = 2 chi + 2 P.O - sum_v contr_v(P)."""
    chi = config.chi if chi is None else chi
    return 2 * chi + 2 * P.po - _contr_sum(P, P, reducible_fibers(config))


# ---------------------------------------------------------------------------
# torsion solver


@dataclass(frozen=True)
class TorsionAssignment:
    """A finite group with generator images in the product of component groups.

    ``images[g][k]`` is the component index of generator ``g`` on reducible
    fiber ``k`` (ordered as in ``fibers``).
    """

    config: FiberConfiguration
    group: ComponentGroup
    fibers: tuple[tuple[str, KodairaType], ...]
    images: tuple[tuple[int, ...], ...]
    chi: int = 1

    def _add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        return tuple(group_add(f, x, y) for (_, f), x, y in zip(self.fibers, a, b))

    def _multiple(self, img: Sequence[int], k: int) -> tuple[int, ...]:
        acc = tuple(0 for _ in self.fibers)
        for _ in range(k):
            acc = self._add(acc, img)
        return acc

    def elements(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Pairs (coefficient vector, image) for every group element, in lexicographic order."""
        out = []
        for coeffs in product(*(range(d) for d in self.group.cyclic_orders)):
            img = tuple(0 for _ in self.fibers)
            for c, gen in zip(coeffs, self.images):
                img = self._add(img, self._multiple(gen, c))
            out.append((coeffs, img))
        return out

    def sections(self) -> list[SectionData]:
        """Nonzero elements as sections disjoint from O."""
        return [SectionData(img, 0) for coeffs, img in self.elements() if any(coeffs)]

    def is_injective(self) -> bool:
        imgs = [img for _, img in self.elements()]
        return len(set(imgs)) == len(imgs)

    def heights_vanish(self) -> bool:
        """Every self height and every pair height is exactly zero (pq = 0)."""
        secs = self.sections()
        for i, P in enumerate(secs):
            if self_height(P, self.config, self.chi) != 0:
                return False
            for Q in secs[i + 1:]:
                if height_pairing(P, Q, self.config, self.chi, pq=0) != 0:
                    return False
        return True

    def verify(self) -> bool:
        return self.is_injective() and self.heights_vanish()

    def to_json(self) -> dict:
        c = self.config
        conf = c.components() if c.is_semistable() else c.type_names()
        assignment = {}
        for k, (label, _) in enumerate(self.fibers):
            vals = [img[k] for img in self.images]
            assignment[label] = vals[0] if len(vals) == 1 else vals
        return {
            "config": conf,
            "group": self.group.to_json(),
            "assignment": assignment,
            "heights_verified": self.verify(),
        }


def _tables(fibers: Sequence[tuple[str, KodairaType]], chi: int):
    sizes = [group_size(f) for _, f in fibers]
    denom = 1
    for (_, f), s in zip(fibers, sizes):
        for i in range(s):
            for j in range(s):
                denom = lcm(denom, contribution(f, i, j).denominator)
    add_tables, contr_tables = [], []
    for (_, f), s in zip(fibers, sizes):
        add_tables.append([group_add(f, i, j) for i in range(s) for j in range(s)])
        contr_tables.append([int(contribution(f, i, j) * denom) for i in range(s) for j in range(s)])
    return sizes, add_tables, contr_tables, 2 * chi * denom, chi * denom


def _decode(e: int, sizes: Sequence[int]) -> tuple[int, ...]:
    out = []
    for s in sizes:
        out.append(e % s)
        e //= s
    return tuple(out)


def candidate_order(c: FiberConfiguration) -> int:
    """sqrt(|disc T|) = sqrt(prod |G(F_v)|); requires a perfect square."""
    n = torsion_injection_target(c).order
    r = isqrt(n)
    if r * r != n:
        raise ValueError(f"prod |G(F_v)| = {n} is not a perfect square; the configuration is not extremal")
    return r


def search_group(c: FiberConfiguration, invariants: Sequence[int], chi: Optional[int] = None) -> Optional[TorsionAssignment]:
    """Witness embedding of the group with the given invariant factors, or None."""
    chi = c.chi if chi is None else chi
    fibers = tuple(reducible_fibers(c))
    # largest factor first: matches the JSON ordering and prunes earlier
    invariants = sorted(invariants, reverse=True)
    group = ComponentGroup(tuple(invariants))
    if not invariants:
        return TorsionAssignment(c, group, fibers, (), chi)
    sizes, add_t, con_t, t_self, t_pair = _tables(fibers, chi)
    gens = kernels.find_embedding(sizes, add_t, con_t, t_self, t_pair, list(invariants))
    if gens is None:
        return None
    return TorsionAssignment(c, group, fibers, tuple(_decode(g, sizes) for g in gens), chi)


def solve_torsion(c: FiberConfiguration, chi: Optional[int] = None, rho: int = 10) -> TorsionAssignment:
    """Torsion group of an extremal configuration from height vanishing.

    Tries every abelian group of order sqrt(prod |G(F_v)|) and keeps those
    admitting an injective homomorphism into prod G(F_v) whose nonzero
    elements have self-contribution 2 chi and whose distinct pairs have
    mutual contribution chi. Exactly one isomorphism class must survive.
    """
    chi = c.chi if chi is None else chi
    if shioda_tate_rank(rho, c) != 0:
        raise ValueError("solve_torsion needs Mordell-Weil rank 0")
    order = candidate_order(c)
    hits = []
    for inv in abelian_groups(order):
        found = search_group(c, inv, chi)
        if found is not None:
            hits.append(found)
    if not hits:
        raise InconsistencyError(f"no torsion group of order {order} fits {c.type_names()}")
    if len(hits) > 1:
        names = ", ".join(h.group.format() for h in hits)
        raise InconsistencyError(f"several non-isomorphic torsion groups fit {c.type_names()}: {names}")
    result = hits[0]
    if not result.verify():
        raise InconsistencyError("solver witness failed exact height verification")
    return result


def _cyclic_coords(t: TorsionAssignment, img: Sequence[int]) -> tuple[int, ...]:
    # (Z/2)^2 indices split into two bits so every coordinate is cyclic
    out: list[int] = []
    for (_, f), i in zip(t.fibers, img):
        if f.family == "I*" and f.n % 2 == 0:
            out.extend((i & 1, i >> 1))
        else:
            out.append(i)
    return tuple(out)


def narrow_and_quotient(t: TorsionAssignment) -> tuple[ComponentGroup, ComponentGroup]:
    """(torsion part of E(K)^0, E(K)/E(K)^0) for a rank-0 surface.

    The narrow part is the kernel of the component map and the quotient is
    its image in the product of component groups.
    """
    elems = t.elements()
    kernel = [coeffs for coeffs, img in elems if not any(img)]
    narrow = ComponentGroup(subgroup_invariants(kernel, t.group.cyclic_orders))
    moduli: list[int] = []
    for _, f in t.fibers:
        moduli.extend(f.component_group)
    images = sorted({_cyclic_coords(t, img) for _, img in elems})
    quotient = ComponentGroup(subgroup_invariants(images, moduli))
    return narrow, quotient


def mwl_invariants(M: Optional[GramLattice], chi: int = 1, min_po: Optional[int] = None):
    """(rank, det, mu) of the narrow lattice; the empty lattice has det 1 and no mu."""
    if M is None or M.rank == 0:
        return 0, 1, None
    if not M.is_positive_definite():
        raise ValueError("narrow Mordell-Weil lattice must be positive definite")
    mu = None if min_po is None else 2 * chi + 2 * min_po
    return M.rank, M.discriminant, mu


def quotient_configuration(t: TorsionAssignment, coeffs: Sequence[int]) -> FiberConfiguration:
    """Fiber configuration of the quotient by translation by a prime-order element."""
    lookup = dict(t.elements())
    img = lookup[tuple(coeffs)]
    order = 1
    acc = tuple(0 for _ in t.fibers)
    acc = t._add(acc, img)
    while any(acc):
        acc = t._add(acc, img)
        order += 1
    if order < 2:
        raise ValueError("cannot quotient by the zero element")
    by_label = {label: k for k, (label, _) in enumerate(t.fibers)}
    entries = []
    for place, f in t.config.entries:
        if not f.is_multiplicative:
            raise ValueError("quotient rule implemented for multiplicative fibers only")
        comps = []
        for k in range(1, place.residue_degree + 1):
            label = f"{f.name}@{place.label()}" + (f"#{k}" if place.residue_degree > 1 else "")
            comps.append(img[by_label[label]] if label in by_label else 0)
        new = {quotient_fiber_by_translation(f, order, comp == 0) for comp in comps}
        if len(new) != 1:
            raise InconsistencyError(f"conjugate fibers at {place.label()} disagree under the quotient")
        entries.append((place, new.pop()))
    return FiberConfiguration(tuple(entries), t.config.chi)
