"""Unit-reflecting extensions ``N ⊆ S``, admissibility of ``S`` for a fixed
factorization family, and the persistence map that carries the family
into the factorizations of ``S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .factorization import Factorization, enumerate_Z_ell, verify_lift
from .lattice import IntegerLattice, Vector, sub, vec
from .monoid import AtomClass, GradedMonoid, MonoidBase
from .verdict import BoundExhausted, SplitWitness, UnitWitness, Verdict


class ContainmentError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FactorizationFamily:
    """A finite family of factorizations of one element in a base monoid.

    ``support`` lists every atom class used by some member, each carrying its
    chosen lift; ``witnesses`` maps a class to ``(r, eps)`` with
    ``element = lift + r + eps``.  ``length`` is None for a family whose
    members have mixed lengths.
    """

    base: MonoidBase
    element: Vector
    length: int | None
    members: tuple[Factorization, ...]
    support: tuple[AtomClass, ...]
    witnesses: dict[Vector, tuple[Vector, Vector]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def lifts(self) -> dict[Vector, Vector]:
        return {a.rep: a.lift for a in self.support}

    def subfamily(self, members: Iterable[Factorization]) -> "FactorizationFamily":
        return build_family(self.base, self.element, self.length, list(members))


def group_lattice(m: MonoidBase) -> IntegerLattice:
    if hasattr(m, "group_lattice"):
        return m.group_lattice()
    raise TypeError(f"{type(m).__name__} does not expose its group lattice")


def check_contained(n: MonoidBase, s: MonoidBase) -> None:
    """Raise ContainmentError unless every generator of ``n`` lies in ``s``."""
    if n is s:
        return
    gens = n.generators() if hasattr(n, "generators") else None
    if gens is None:
        raise TypeError(f"cannot list generators of {type(n).__name__}")
    for g in gens:
        if not s.contains(g):
            raise ContainmentError(f"generator {g} of the smaller monoid is not in the larger one")


def reduction_map(n: MonoidBase, s: MonoidBase, cls: Sequence[int]) -> Vector:
    """Send an N-class to the S-class of any representative."""
    check_contained(n, s)
    cls = vec(cls)
    if not n.contains(cls):
        raise ValueError(f"{cls} is not an element of the smaller monoid")
    return s.unit_lattice().reduce(cls)


def is_unit_reflecting(n: GradedMonoid, s: MonoidBase) -> Verdict:
    """Compare ``U(S) ∩ G(N)`` with ``U(N)``; the witness is a unit of S in
    G(N) that was not a unit of N."""
    check_contained(n, s)
    try:
        us = s.unit_lattice()
    except BoundExhausted as exc:
        return Verdict.undecided(exc.bound, "units of the larger monoid not certified")
    meet = us.intersect(group_lattice(n))
    un = n.unit_lattice()
    if meet == un:
        return Verdict.holding(note="U(S) ∩ G(N) = U(N)")
    gap = next(v for v in meet.basis if not un.contains(v))
    return Verdict.failing(UnitWitness(gap), "new unit relation among elements of G(N)")


def reduction_collisions(n: GradedMonoid, s: MonoidBase, max_level: int) -> list[tuple[Vector, Vector]]:
    """Pairs of distinct N-classes (levels up to ``max_level``) that the
    reduction map identifies in S."""
    us = s.unit_lattice()
    seen: dict[Vector, Vector] = {}
    out = []
    for level in range(max_level + 1):
        for x in sorted(n.level_elements(level)):
            image = us.reduce(x)
            if image in seen:
                out.append((seen[image], x))
            else:
                seen[image] = x
    return out


def build_family(
    n: MonoidBase,
    b: Sequence[int],
    length: int | None,
    members: Iterable[Factorization] | None = None,
) -> FactorizationFamily:
    """Assemble a family, its support, chosen lifts and divisor witnesses.

    With ``members=None`` the whole fiber of the given length is used.  The
    first member (in canonical order) containing a class supplies that
    class's lift and its witness ``(r, eps)``.
    """
    b = vec(b)
    if members is None:
        if length is None:
            raise ValueError("a length is needed to enumerate the whole fiber")
        members = enumerate_Z_ell(n, b, length)
    members = sorted(set(members))
    units = n.unit_lattice()
    chosen: dict[Vector, AtomClass] = {}
    for z in members:
        if length is not None and z.length != length:
            raise ValueError(f"member {z} has length {z.length}, expected {length}")
        if not verify_lift(n, b, z):
            raise ValueError(f"member {z} is not a factorization of {b}")
        for a in z.atoms():
            if units.reduce(a.lift) != a.rep:
                raise ValueError(f"lift {a.lift} does not represent class {a.rep}")
            if a.rep not in chosen:
                if not n.contains(a.lift) or n.is_unit(a.lift) or not n.is_atom(a.lift):
                    raise ValueError(f"{a.lift} is not an atom of the base monoid")
                chosen[a.rep] = a
    # re-express every member through the chosen lifts
    members = [Factorization.of(chosen[a.rep] for a in z.atoms()) for z in members]
    witnesses = {}
    for z in members:
        for a, _ in z.parts:
            if a.rep not in witnesses:
                r = z.without_one(a.rep).lift_sum(n.dim)
                eps = sub(sub(b, a.lift), r)
                witnesses[a.rep] = (r, eps)
    support = tuple(sorted(chosen.values()))
    return FactorizationFamily(n, b, length, tuple(members), support, witnesses)


def is_admissible(n: GradedMonoid, s: MonoidBase, omega: FactorizationFamily) -> Verdict:
    """Unit reflection plus atomicity in S of every lift used by ``omega``."""
    reflect = is_unit_reflecting(n, s)
    if not reflect.holds:
        return reflect
    for a in omega.support:
        try:
            if s.is_unit(a.lift):
                return Verdict.failing(UnitWitness(a.lift), "a fixed atom became a unit")
            split = s.find_split(a.lift)
        except BoundExhausted as exc:
            return Verdict.undecided(exc.bound, f"atomicity of {a.lift} not settled")
        if split is not None:
            return Verdict.failing(SplitWitness(a.lift, *split), "a fixed atom splits")
    return Verdict.holding(note="unit-reflecting and every fixed atom survives")


def _image(s: MonoidBase, z: Factorization) -> Factorization:
    units = s.unit_lattice()
    return Factorization.of(AtomClass(units.reduce(a.lift), a.lift, s.value(a.lift))
                            for a in z.atoms())


def persistence_map(n: GradedMonoid, s: MonoidBase, omega: FactorizationFamily) -> FactorizationFamily:
    """Image of ``omega`` among the factorizations of the same element in S."""
    verdict = is_admissible(n, s, omega)
    if not verdict.holds:
        raise ValueError(f"extension is not admissible for this family: {verdict}")
    images = sorted({_image(s, z) for z in omega.members})
    units = s.unit_lattice()
    support = tuple(sorted(AtomClass(units.reduce(a.lift), a.lift, s.value(a.lift))
                           for a in omega.support))
    lifts = omega.lifts
    witnesses = {units.reduce(lifts[rep]): w for rep, w in omega.witnesses.items()}
    return FactorizationFamily(s, omega.element, omega.length, tuple(images), support, witnesses)


def multiplicity_vector(z: Factorization, support: Sequence[AtomClass]) -> tuple[int, ...]:
    index = {a.rep: i for i, a in enumerate(support)}
    out = [0] * len(support)
    for a, k in z.parts:
        if a.rep not in index:
            raise ValueError(f"class {a.rep} is not in the support")
        out[index[a.rep]] += k
    return tuple(out)


def check_lift_independence(
    n: GradedMonoid,
    s: MonoidBase,
    omega: FactorizationFamily,
    alt_lifts: Mapping[Sequence[int], Sequence[int]],
) -> bool:
    """Whether an alternative lift system gives the same S-classes and the
    same atomicity answers as the chosen one."""
    un = n.unit_lattice()
    us = s.unit_lattice()
    for a in omega.support:
        alt = vec(alt_lifts.get(a.rep, a.lift))
        if not n.contains(alt) or not un.contains(sub(alt, a.lift)):
            raise ValueError(f"{alt} is not another lift of class {a.rep}")
        if us.reduce(alt) != us.reduce(a.lift):
            return False
        if s.is_atom(alt) != s.is_atom(a.lift):
            return False
    return True


def check_intermediate(
    n: GradedMonoid,
    s: GradedMonoid,
    t: MonoidBase,
    omega: FactorizationFamily,
) -> Verdict:
    """Admissibility over N passes from S to T when T is unit-reflecting over S
    and the fixed atoms stay atoms in T.

    The conclusion is cross-checked by computing admissibility of T directly.
    """
    check_contained(n, s)
    check_contained(s, t)
    lower = is_admissible(n, s, omega)
    if not lower.holds:
        return lower
    upper = is_unit_reflecting(s, t)
    if not upper.holds:
        return upper
    for a in omega.support:
        split = t.find_split(a.lift)
        if split is not None:
            return Verdict.failing(SplitWitness(a.lift, *split), "a fixed atom splits in T")
    direct = is_admissible(n, t, omega)
    if not direct.holds:
        raise AssertionError(f"hypotheses hold but T is not admissible: {direct}")
    return Verdict.holding(note="T is admissible over N")
