"""Transporting a fixed-length factorization family from a submonoid to a
submonoid with the full Grothendieck group.

Non-group ambient: adjoin the divisor-complement ideal ``I_b(M)`` of all
elements that do not divide ``b``.  Group ambient: repeatedly perturb
``S -> S + N0 (2b + u)`` along directions ``u`` that satisfy one of the two
side conditions, checking at each step that no unit appears and no fixed
atom splits.  The maximal element of the survival order is never computed;
only finite forcing chains are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Sequence

from .extensions import (
    ContainmentError,
    FactorizationFamily,
    check_contained,
    group_lattice,
    is_admissible,
    persistence_map,
)
from .lattice import IntegerLattice, Vector, add, neg, scale, sub, vec, zero
from .monoid import GradedMonoid, MonoidBase, find_grading
from .verdict import (
    DEFAULT_BOUND,
    BecomesUnit,
    BoundExhausted,
    InversePair,
    Relation,
    SplitWitness,
    UnitWitness,
    Verdict,
)


class UnboundedLevelError(ValueError):
    """Level sets modulo the declared units are infinite."""


# ---------------------------------------------------------------------------
# divisor-complement enlargement


def in_divisor_complement(m_ambient: GradedMonoid, b: Sequence[int], m: Sequence[int]) -> bool:
    """Whether ``m`` fails to divide ``b`` in the ambient monoid."""
    return not m_ambient.divides(m, b)


class IdealEnlargement(MonoidBase):
    """``W = N ∪ {m in M : m does not divide b}``.

    Membership is exact.  Units are those of N, and level sets are computed
    modulo U(N), which needs U(N) to have finite index in U(M).
    """

    def __init__(self, ambient: GradedMonoid, base: GradedMonoid, element: Sequence[int]):
        self.ambient = ambient
        self.base = base
        self.element = vec(element)
        self._levels: dict[int, frozenset[Vector]] = {}

    @property
    def dim(self) -> int:
        return self.ambient.dim

    def value(self, v: Sequence[int]) -> int:
        return self.ambient.value(v)

    def in_ideal(self, m: Sequence[int]) -> bool:
        return self.ambient.contains(m) and not self.ambient.contains(sub(self.element, m))

    def contains(self, v: Sequence[int]) -> bool:
        self._check_dim(v)
        return self.base.contains(v) or self.in_ideal(v)

    def unit_lattice(self) -> IntegerLattice:
        return self.base.unit_lattice()

    def ideal_witness(self) -> Vector:
        """``b + g`` for a positive generator g of M; never divides b."""
        return add(self.element, self.ambient.posgens[0])

    def group_lattice(self) -> IntegerLattice:
        """G(W), generated by ``c`` and ``c + g`` for every generator g of M
        where ``c`` is an ideal element."""
        c = self.ideal_witness()
        rows = [c] + [add(c, g) for g in self.ambient.generators()]
        missing = [r for r in rows if not self.contains(r)]
        if missing:
            raise AssertionError(f"ideal elements {missing} fell outside W")
        return self.base.group_lattice().join(rows)

    @cached_property
    def _unit_cosets(self) -> list[Vector]:
        big = self.ambient.unit_lattice()
        small = self.base.unit_lattice()
        if big.rank != small.rank:
            raise UnboundedLevelError(
                "U(N) has infinite index in U(M); level sets of W are infinite")
        return big.coset_representatives(small)

    def level_elements(self, level: int) -> frozenset[Vector]:
        if level < 0:
            return frozenset()
        if level not in self._levels:
            units = self.base.unit_lattice()
            out = set(self.base.level_elements(level))
            for rep in self.ambient.level_elements(level):
                if self.in_ideal(rep):
                    out.update(units.reduce(add(rep, c)) for c in self._unit_cosets)
            self._levels[level] = frozenset(out)
        return self._levels[level]

    def __repr__(self) -> str:
        return f"IdealEnlargement(base={self.base!r}, element={list(self.element)})"


def _require_nongroup(ambient: GradedMonoid) -> None:
    if ambient.is_group:
        raise ValueError("the ambient monoid is a group; use the perturbation construction")


def _regrade(n: GradedMonoid, ambient: GradedMonoid) -> GradedMonoid:
    if n.grading == ambient.grading:
        return n
    try:
        return n.regraded(ambient.grading)
    except ValueError as exc:
        raise ValueError("the submonoid's generators must have positive ambient level") from exc


def enlarge_nongroup(n: GradedMonoid, ambient: GradedMonoid, b: Sequence[int]) -> IdealEnlargement:
    _require_nongroup(ambient)
    b = vec(b)
    check_contained(n, ambient)
    if not n.contains(b):
        raise ValueError(f"{b} is not in the submonoid")
    return IdealEnlargement(ambient, _regrade(n, ambient), b)


@dataclass
class IdealReport:
    nonempty: Verdict
    ideal: Verdict
    avoids_units: Verdict
    submonoid: Verdict
    units: Verdict
    undermonoid: Verdict
    level_bound: int

    def items(self) -> list[tuple[str, Verdict]]:
        return [(k, getattr(self, k)) for k in
                ("nonempty", "ideal", "avoids_units", "submonoid", "units", "undermonoid")]

    @property
    def all_hold(self) -> bool:
        return all(v.holds for _, v in self.items())

    def to_dict(self) -> dict:
        out = {k: v.to_dict() for k, v in self.items()}
        out["level_bound"] = self.level_bound
        return out


def _unit_samples(lattice: IntegerLattice, radius: int = 2) -> list[Vector]:
    if lattice.rank == 0:
        return [zero(lattice.dim)]
    out = []
    for cs in product(range(-radius, radius + 1), repeat=lattice.rank):
        v = zero(lattice.dim)
        for c, row in zip(cs, lattice.basis):
            v = add(v, scale(c, row))
        out.append(v)
    return out


def verify_ideal_properties(
    ambient: GradedMonoid,
    b: Sequence[int],
    n: GradedMonoid,
    level_bound: int,
) -> IdealReport:
    """Check, at levels up to ``level_bound``, that I_b(M) is a nonempty
    ideal avoiding U(M), that W = N ∪ I is a submonoid with U(W) = U(N), and
    that G(W) = G(M)."""
    w = enlarge_nongroup(n, ambient, b)
    b = w.element
    m_units = ambient.unit_lattice()
    window = f"levels <= {level_bound}"

    c = w.ideal_witness()
    nonempty = (Verdict.holding(c, "b + g never divides b") if w.in_ideal(c)
                else Verdict.failing(c, "b + g divides b"))

    ambient_classes = [(lv, x) for lv in range(level_bound + 1)
                       for x in sorted(ambient.level_elements(lv))]
    ideal_classes = [(lv, x) for lv, x in ambient_classes if w.in_ideal(x)]
    ideal = Verdict.holding(note=f"I + M ⊆ I on {window}")
    for lv, x in ideal_classes:
        bad = next((q for lq, q in ambient_classes
                    if lv + lq <= level_bound and not w.in_ideal(add(x, q))), None)
        if bad is not None:
            ideal = Verdict.failing((x, bad), "m in I, q in M but m + q not in I")
            break

    bad_unit = next((u for u in _unit_samples(m_units) if w.in_ideal(u)), None)
    avoids_units = (Verdict.holding(note="sampled units all divide b") if bad_unit is None
                    else Verdict.failing(bad_unit, "a unit of M lies in I"))

    try:
        w_classes = [(lv, x) for lv in range(level_bound + 1) for x in sorted(w.level_elements(lv))]
    except UnboundedLevelError:
        w_classes = [(lv, x) for lv, x in ambient_classes if w.contains(x)]
    submonoid = Verdict.holding(note=f"W + W ⊆ W on {window}")
    for lv, x in w_classes:
        bad = next((y for ly, y in w_classes if lv + ly <= level_bound and not w.contains(add(x, y))), None)
        if bad is not None:
            submonoid = Verdict.failing((x, bad), "W is not closed under addition")
            break

    n_units = n.unit_lattice()
    if m_units.rank == n_units.rank:
        gained = [r for r in m_units.coset_representatives(n_units) if any(r) and w.contains(r)]
        units = (Verdict.holding(note="no level-0 element of W outside U(N)") if not gained
                 else Verdict.failing(UnitWitness(gained[0]), "W gained a unit"))
    else:
        samples = [u for u in _unit_samples(m_units, 3) if not n_units.contains(u)]
        gained = [u for u in samples if w.contains(u)]
        units = (Verdict.failing(UnitWitness(gained[0]), "W gained a unit") if gained
                 else Verdict.undecided(3, "U(N) has infinite index in U(M); sampled only"))

    under = undermonoid_check(w, ambient)
    return IdealReport(nonempty, ideal, avoids_units, submonoid, units, under, level_bound)


def preserve_atoms_check(n: GradedMonoid, w: IdealEnlargement, omega: FactorizationFamily) -> Verdict:
    """Every lift used by ``omega`` is still an atom of W (exact, since a
    split only involves elements of lower level)."""
    if not isinstance(w, IdealEnlargement):
        raise TypeError("expected the output of enlarge_nongroup")
    if w.element != omega.element:
        raise ValueError("the enlargement was built for a different element")
    if not w.base.same_as(n) or not omega.base.same_as(n):
        raise ValueError("the enlargement was built over a different submonoid")
    for a in omega.support:
        split = w.find_split(a.lift)
        if split is not None:
            return Verdict.failing(SplitWitness(a.lift, *split), "a fixed atom splits in W")
    return Verdict.holding(note=f"{len(omega.support)} fixed atoms remain atoms of W")


# ---------------------------------------------------------------------------
# perturbation S -> S + N0 (2b + u)


class Perturbed(MonoidBase):
    """``S' = S + N0 w`` with ``w = 2b + u``.

    When S's grading is positive on ``w`` (or another grading can be found
    that vanishes on U(S) and is positive on every generator), S' is again a
    graded monoid with the same units and everything is exact.  Otherwise
    membership and units come from bounded searches.
    """

    def __init__(self, base: GradedMonoid, element: Sequence[int], direction: Sequence[int],
                 bound: int = DEFAULT_BOUND):
        self.base = base
        self.element = vec(element)
        self.direction = vec(direction)
        self.step = add(scale(2, self.element), self.direction)
        self.bound = bound

    @property
    def dim(self) -> int:
        return self.base.dim

    @cached_property
    def _new_unit_multiple(self) -> int | None:
        """Smallest K in 1..bound with -K w in S, if any."""
        s, w = self.base, self.step
        if s.units.contains(w):
            return None
        lv = s.value(w)
        if lv > 0:
            return None
        if lv == 0:
            return s.units.order_of(w)
        return next((k for k in range(1, self.bound + 1) if s.contains(scale(-k, w))), None)

    @cached_property
    def _presentation(self) -> GradedMonoid | None:
        s, w = self.base, self.step
        if s.units.contains(w):
            return s
        if s.value(w) > 0:
            return s.with_generators([w])
        if self._new_unit_multiple is not None:
            return None
        gens = s.posgens + (w,)
        lam = s.grading if all(s.value(g) > 0 for g in gens) else find_grading(s.units, gens)
        if lam is None:
            return None
        return GradedMonoid(s.units, gens, lam)

    def presentation(self) -> GradedMonoid | None:
        """Exact graded presentation with the units of S, when certified."""
        return self._presentation

    def member_by_scan(self, v: Sequence[int]) -> bool:
        """``v - k w`` in S for some ``0 <= k``; k is capped by the grading
        of S when ``w`` has positive level and by ``bound`` otherwise."""
        self._check_dim(v)
        s, w = self.base, self.step
        lw = s.value(w)
        top = s.value(v) // lw if lw > 0 else self.bound
        return any(s.contains(sub(v, scale(k, w))) for k in range(0, max(top, 0) + 1))

    def contains(self, v: Sequence[int]) -> bool:
        p = self._presentation
        if p is not None:
            return p.contains(v)
        return self.member_by_scan(v)

    def generators(self) -> list[Vector]:
        return self.base.generators() + [self.step]

    def group_lattice(self) -> IntegerLattice:
        return self.base.group_lattice().join([self.step])

    def value(self, v: Sequence[int]) -> int:
        p = self._presentation
        if p is None:
            raise BoundExhausted(self.bound, "no grading certified for the perturbed monoid")
        return p.value(v)

    def unit_lattice(self) -> IntegerLattice:
        p = self._presentation
        if p is not None:
            return p.units
        s, w = self.base, self.step
        if self._new_unit_multiple is None:
            raise BoundExhausted(self.bound, "units of the perturbed monoid not certified")
        # w is a unit, so S' = S + Z w; a positive generator g is a unit iff
        # -g - k w lies in S for some integer k
        rows = list(s.units.basis) + [w]
        for g in s.posgens:
            k = next((k for k in range(-self.bound, self.bound + 1)
                      if s.contains(sub(neg(g), scale(k, w)))), None)
            if k is None:
                raise BoundExhausted(self.bound, f"cannot decide whether {g} became a unit")
            rows.append(g)
        return IntegerLattice.from_generators(rows, self.dim)

    def level_elements(self, level: int) -> frozenset[Vector]:
        p = self._presentation
        if p is None:
            raise BoundExhausted(self.bound, "no grading certified for the perturbed monoid")
        return p.level_elements(level)

    def find_split(self, v: Sequence[int]):
        p = self._presentation
        if p is None:
            raise BoundExhausted(self.bound, "no grading certified for the perturbed monoid")
        return p.find_split(v)

    def atoms_up_to_level(self, max_level: int):
        p = self._presentation
        if p is None:
            raise BoundExhausted(self.bound, "no grading certified for the perturbed monoid")
        return p.atoms_up_to_level(max_level)

    def __repr__(self) -> str:
        return f"Perturbed(base={self.base!r}, w={list(self.step)})"


def perturb(s: GradedMonoid, b: Sequence[int], u: Sequence[int], bound: int = DEFAULT_BOUND) -> Perturbed:
    b, u = vec(b), vec(u)
    if len(u) != s.dim:
        raise ValueError("dimension mismatch")
    if not s.contains(b):
        raise ValueError(f"{b} is not in the monoid")
    if s.is_unit(b):
        raise ValueError(f"{b} is a unit of the monoid")
    return Perturbed(s, b, u, bound)


def condition_i(s: GradedMonoid, u: Sequence[int], nmax: int = DEFAULT_BOUND) -> Verdict:
    """Some positive multiple ``n0 u`` lies in S (searched up to ``nmax``)."""
    u = vec(u)
    if s.value(u) >= 0:
        for n0 in range(1, nmax + 1):
            if s.contains(scale(n0, u)):
                return Verdict.holding(n0, f"{n0}*u lies in S")
    return Verdict.undecided(nmax, "no positive multiple of u found in S")


def condition_ii(s: GradedMonoid, u: Sequence[int], bound: int = DEFAULT_BOUND) -> Verdict:
    """``n u + q != 0`` for every ``n >= 1`` and ``q`` in S."""
    u = vec(u)
    lv = s.value(u)
    if lv > 0:
        return Verdict.holding(note="u has positive level, so n*u + q has positive level")
    if lv == 0:
        n = s.units.order_of(u)
        if n is None:
            return Verdict.holding(note="u has infinite order modulo U(S)")
        return Verdict.failing(Relation(n, scale(-n, u)), "a multiple of u is a unit of S")
    for n in range(1, bound + 1):
        q = scale(-n, u)
        if s.contains(q):
            return Verdict.failing(Relation(n, q), "n*u + q = 0")
    return Verdict.undecided(bound, "no relation n*u + q = 0 found")


def no_new_units_check(s: GradedMonoid, sprime: Perturbed, bound: int = DEFAULT_BOUND) -> Verdict:
    """Whether U(S') = U(S); a failure comes with an inverse pair in S'."""
    w = sprime.step
    if s.units.contains(w):
        return Verdict.holding(note="w is already a unit of S, so S' = S")
    lv = s.value(w)
    if lv > 0:
        return Verdict.holding(note="w has positive level; only level-0 elements are invertible")
    if lv == 0:
        k = s.units.order_of(w)
        if k is None:
            return Verdict.holding(note="w has infinite order modulo U(S)")
        # w + (-k w + (k - 1) w) = 0 with -k w a unit of S
        t = scale(-k, w)
        return Verdict.failing(InversePair(w, neg(w), zero(s.dim), 1, t, k - 1),
                               "w became a unit")
    for k in range(1, bound + 1):
        x = scale(-k, w)
        if s.contains(x):
            return Verdict.failing(InversePair(x, neg(x), x, 0, zero(s.dim), k),
                                   "an element of S became invertible")
    lam = find_grading(s.units, s.posgens + (w,))
    if lam is not None:
        return Verdict.holding(lam, "grading positive on all generators of S'")
    return Verdict.undecided(bound, "no inverse pair found and no grading certificate")


def atoms_no_split_check(s: GradedMonoid, sprime: Perturbed, omega: FactorizationFamily,
                         bound: int = DEFAULT_BOUND) -> Verdict:
    """No lift used by ``omega`` becomes a unit or splits in S'."""
    p = sprime.presentation()
    if p is not None:
        for a in omega.support:
            if p.is_unit(a.lift):
                return Verdict.failing(BecomesUnit(a.lift, neg(a.lift)), "a fixed atom became a unit")
            split = p.find_split(a.lift)
            if split is not None:
                return Verdict.failing(SplitWitness(a.lift, *split), "a fixed atom splits in S'")
        return Verdict.holding(note="exact check in a graded presentation of S'")
    w = sprime.step
    for a in omega.support:
        inv = neg(a.lift)
        if any(s.contains(sub(inv, scale(k, w))) for k in range(bound + 1)):
            return Verdict.failing(BecomesUnit(a.lift, inv), "a fixed atom became a unit")
    return Verdict.undecided(bound, "no grading for S'; splits not settled")


# ---------------------------------------------------------------------------
# survival order, forcing and the undermonoid test


def _graded(m: MonoidBase) -> GradedMonoid | None:
    if isinstance(m, GradedMonoid):
        return m
    if isinstance(m, Perturbed):
        return m.presentation()
    return None


def survival_leq(s1: MonoidBase, s2: MonoidBase, omega: FactorizationFamily | None = None) -> Verdict:
    """``S1 ⊆ S2`` and no element of S1 becomes a unit of S2."""
    if omega is not None:
        for s in (s1, s2):
            try:
                check_contained(omega.base, s)
            except ContainmentError as exc:
                raise ValueError("both monoids must contain the base of the family") from exc
    g1 = _graded(s1)
    if g1 is None:
        return Verdict.undecided(getattr(s1, "bound", DEFAULT_BOUND), "S1 has no certified presentation")
    for g in g1.generators():
        if not s2.contains(g):
            return Verdict.failing(g, "S1 is not contained in S2")
    try:
        u2 = s2.unit_lattice()
    except BoundExhausted as exc:
        return Verdict.undecided(exc.bound, "units of S2 not certified")
    for g in g1.posgens:
        if u2.contains(g):
            return Verdict.failing(BecomesUnit(g, neg(g)), "an element of S1 became a unit of S2")
    if _graded(s2) is None:
        return Verdict.undecided(getattr(s2, "bound", DEFAULT_BOUND), "S2 has no grading")
    return Verdict.holding(note="U(S1) = S1 ∩ U(S2)")


@dataclass
class ForcingCertificate:
    """S is not maximal: ``enlarged`` is strictly bigger and still admissible."""

    enlarged: GradedMonoid
    step: Vector
    no_new_units: Verdict
    no_split: Verdict
    order: Verdict

    def to_dict(self) -> dict:
        return {
            "enlarged": self.enlarged.to_dict(),
            "step": list(self.step),
            "no_new_units": self.no_new_units.to_dict(),
            "no_split": self.no_split.to_dict(),
            "order": self.order.to_dict(),
        }


def maximal_forcing_probe(s: GradedMonoid, b: Sequence[int], u: Sequence[int],
                          omega: FactorizationFamily, bound: int = DEFAULT_BOUND) -> Verdict:
    """Holds when ``2b + u`` already lies in S.  Otherwise, the failing verdict
    carries a strictly larger admissible monoid, so S was not maximal."""
    b, u = vec(b), vec(u)
    ci = condition_i(s, u, bound)
    cii = condition_ii(s, u, bound) if not ci.holds else None
    if not ci.holds and not cii.holds:
        raise ValueError(f"neither side condition is established for u = {u}")
    w = add(scale(2, b), u)
    if s.contains(w):
        return Verdict.holding(w, "2b + u already lies in S")
    base_ok = is_admissible(omega.base, s, omega)
    if not base_ok.holds:
        raise ValueError(f"S is not admissible for the family: {base_ok}")
    sp = perturb(s, b, u, bound)
    nn = no_new_units_check(s, sp, bound)
    ns = atoms_no_split_check(s, sp, omega, bound)
    if nn.fails or ns.fails:
        raise AssertionError(f"side condition held but the perturbation broke survival: {nn}; {ns}")
    p = sp.presentation()
    if p is None or not (nn.holds and ns.holds):
        return Verdict.undecided(bound, "perturbation could not be certified")
    order = survival_leq(s, p, omega)
    return Verdict.failing(ForcingCertificate(p, w, nn, ns, order), "S + N0(2b+u) is strictly larger")


def undermonoid_check(s: MonoidBase, ambient: GradedMonoid, level_bound: int = 12) -> Verdict:
    """Whether G(S) = G(M).

    Graded monoids, enlargements and perturbations all know their group
    lattice exactly.  Anything else is sampled by level, and a negative
    answer from samples is reported as Unknown.
    """
    gm = ambient.group_lattice()
    if hasattr(s, "group_lattice"):
        if isinstance(s, GradedMonoid):
            check_contained(s, ambient)
        gs = s.group_lattice()
        if gs == gm:
            return Verdict.holding(gs.basis, "G(S) = G(M)")
        missing = next(v for v in gm.basis if not gs.contains(v))
        return Verdict.failing(missing, f"G(S) = {list(map(list, gs.basis))} misses this vector")
    rows = [x for lv in range(level_bound + 1) for x in s.level_elements(lv)]
    gs = s.unit_lattice().join(rows)
    if gs == gm:
        return Verdict.holding(gs.basis, "sampled members generate G(M)")
    return Verdict.undecided(level_bound, "sampled members generate a proper subgroup")


# ---------------------------------------------------------------------------
# end-to-end pipeline


def default_directions(b: Sequence[int]) -> list[Vector]:
    """``±e_i`` and ``±b ± e_i`` for each coordinate, without repeats."""
    b = vec(b)
    out: list[Vector] = []
    for i in range(len(b)):
        e = tuple(int(i == j) for j in range(len(b)))
        for cand in (e, neg(e), add(b, e), sub(b, e), add(neg(b), e), sub(neg(b), e)):
            if cand not in out:
                out.append(cand)
    return out


@dataclass
class ForcingStep:
    direction: Vector
    outcome: str
    verdict: Verdict | None = None

    def to_dict(self) -> dict:
        out = {"direction": list(self.direction), "outcome": self.outcome}
        if self.verdict is not None:
            out["verdict"] = self.verdict.to_dict()
        return out


@dataclass
class ObstructionReport:
    case: str
    element: Vector
    length: int | None
    family_size: int
    image_size: int
    final: MonoidBase
    undermonoid: Verdict
    admissible: Verdict
    checks: dict[str, Verdict] = field(default_factory=dict)
    steps: list[ForcingStep] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def injective(self) -> bool:
        return self.image_size == self.family_size

    def to_dict(self) -> dict:
        final = self.final.to_dict() if hasattr(self.final, "to_dict") else repr(self.final)
        return {
            "case": self.case,
            "element": list(self.element),
            "length": self.length,
            "family_size": self.family_size,
            "image_size": self.image_size,
            "injective": self.injective,
            "final": final,
            "undermonoid": self.undermonoid.to_dict(),
            "admissible": self.admissible.to_dict(),
            "checks": {k: v.to_dict() for k, v in self.checks.items()},
            "steps": [s.to_dict() for s in self.steps],
            "notes": list(self.notes),
        }


def local_obstruction_pipeline(
    n: GradedMonoid,
    ambient: GradedMonoid,
    b: Sequence[int],
    length: int | None,
    omega: FactorizationFamily,
    directions: Sequence[Sequence[int]] | None = None,
    bound: int = DEFAULT_BOUND,
    level_bound: int | None = None,
) -> ObstructionReport:
    """Carry ``omega`` into a submonoid of ``ambient`` with full group.

    ``directions`` only matters for a group ambient; None means the default
    list, an empty list means no forcing at all.
    """
    b = vec(b)
    if not len(omega):
        raise ValueError("the family is empty")
    if omega.element != b or omega.length != length:
        raise ValueError("the family does not match the element and length")
    check_contained(n, ambient)

    if not ambient.is_group:
        w = enlarge_nongroup(n, ambient, b)
        lb = level_bound if level_bound is not None else min(4 * ambient.value(b), 40)
        ideal = verify_ideal_properties(ambient, b, n, lb)
        atoms = preserve_atoms_check(w.base, w, omega)
        admissible = is_admissible(n, w, omega)
        image = persistence_map(n, w, omega) if admissible.holds else None
        checks = {f"ideal.{k}": v for k, v in ideal.items()}
        checks["atoms_preserved"] = atoms
        return ObstructionReport(
            case="non-group",
            element=b,
            length=length,
            family_size=len(omega),
            image_size=len(image) if image is not None else 0,
            final=w,
            undermonoid=undermonoid_check(w, ambient),
            admissible=admissible,
            checks=checks,
        )

    dirs = default_directions(b) if directions is None else [vec(d) for d in directions]
    s = n
    steps: list[ForcingStep] = []
    notes = []
    if not dirs:
        notes.append("no forcing applied")
    for _ in range(len(dirs) + 1):
        changed = False
        for u in dirs:
            if s.contains(add(scale(2, b), u)):
                steps.append(ForcingStep(u, "absorbed"))
                continue
            ci = condition_i(s, u, bound)
            cii = ci if ci.holds else condition_ii(s, u, bound)
            if not cii.holds:
                steps.append(ForcingStep(u, "skipped", cii))
                continue
            verdict = maximal_forcing_probe(s, b, u, omega, bound)
            if verdict.fails:
                s = verdict.witness.enlarged
                steps.append(ForcingStep(u, "enlarged", verdict))
                changed = True
            else:
                steps.append(ForcingStep(u, "undecided" if verdict.unknown else "absorbed", verdict))
        if not changed:
            break
    admissible = is_admissible(n, s, omega)
    image = persistence_map(n, s, omega) if admissible.holds else None
    under = undermonoid_check(s, ambient)
    if under.fails:
        under = Verdict.undecided(bound, "forcing chain ended below G(M); the maximal element is not computed")
    return ObstructionReport(
        case="group",
        element=b,
        length=length,
        family_size=len(omega),
        image_size=len(image) if image is not None else 0,
        final=s,
        undermonoid=under,
        admissible=admissible,
        steps=steps,
        notes=notes,
    )
