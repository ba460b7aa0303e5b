"""Graded presentations of finitely generated cancellative commutative
monoids inside Z^d.

A presentation is a unit lattice U, a list of positive generators and an
integer grading that vanishes on U and is strictly positive on every
generator.  The grading is what makes membership, divisibility, atoms and
factorization enumeration finite: every element of level ``l`` is a sum of
generators whose levels add up to ``l``, and level 0 is exactly U.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from .lattice import IntegerLattice, Vector, dot, hnf, neg, sub, vec


@dataclass(frozen=True, order=True)
class AtomClass:
    """An atom of the reduced monoid together with its chosen lift.

    Ordering and equality only look at the class representative, so two
    different lifts of the same class compare equal.
    """

    rep: Vector
    lift: Vector = field(compare=False)
    level: int = field(compare=False)


class MonoidBase:
    """Shared algorithms for anything exposing a membership oracle, a unit
    lattice, a grading and finite level sets.

    Subclasses provide ``dim``, ``value``, ``contains``, ``unit_lattice`` and
    ``level_elements``.  Level sets are sets of canonical representatives
    modulo the unit lattice.
    """

    dim: int

    def value(self, v: Sequence[int]) -> int:
        raise NotImplementedError

    def contains(self, v: Sequence[int]) -> bool:
        raise NotImplementedError

    def unit_lattice(self) -> IntegerLattice:
        raise NotImplementedError

    def level_elements(self, level: int) -> frozenset[Vector]:
        raise NotImplementedError

    def __contains__(self, v: Sequence[int]) -> bool:
        return self.contains(v)

    @property
    def is_group(self) -> bool:
        return False

    def _check_dim(self, v: Sequence[int]) -> None:
        if len(v) != self.dim:
            raise ValueError(f"dimension mismatch: monoid dim {self.dim}, vector dim {len(v)}")

    def _require(self, v: Sequence[int], what: str = "element") -> None:
        if not self.contains(v):
            raise ValueError(f"{what} {tuple(v)} is not in the monoid")

    def reduce(self, v: Sequence[int], check: bool = True) -> Vector:
        """Canonical representative of ``v + U``."""
        self._check_dim(v)
        if check:
            self._require(v)
        return self.unit_lattice().reduce(v)

    def is_unit(self, v: Sequence[int]) -> bool:
        self._check_dim(v)
        return self.unit_lattice().contains(v)

    def divides(self, a: Sequence[int], b: Sequence[int]) -> bool:
        self._require(a, "divisor")
        self._require(b, "dividend")
        return self.contains(sub(b, a))

    def find_split(self, v: Sequence[int]) -> tuple[Vector, Vector, Vector] | None:
        """A decomposition ``v = x + y + eps`` with x, y non-units, or None.

        Generic version: scan every class at levels ``1 .. value(v) - 1``
        and test the complement for membership.
        """
        v = vec(v)
        self._require(v)
        if self.is_unit(v):
            raise ValueError(f"{v} is a unit; units are neither atoms nor splittable")
        t = self.value(v)
        for i in range(1, t):
            for x in sorted(self.level_elements(i)):
                y = sub(v, x)
                if self.contains(y):
                    return x, y, (0,) * self.dim
        return None

    def is_atom(self, v: Sequence[int]) -> bool:
        return self.find_split(v) is None

    def atoms_up_to_level(self, max_level: int) -> list[AtomClass]:
        out = []
        for level in range(1, max_level + 1):
            for rep in sorted(self.level_elements(level)):
                if self.find_split(rep) is None:
                    out.append(AtomClass(rep, rep, level))
        return out

    def min_level(self, cap: int = 10_000) -> int | None:
        """Smallest positive level that carries an element."""
        for level in range(1, cap + 1):
            if self.level_elements(level):
                return level
        return None


@dataclass(frozen=True, eq=False)
class GradedMonoid(MonoidBase):
    """``U + N0 g_1 + ... + N0 g_k`` with a grading certifying ``U`` is the
    whole unit group.

    The pure group Z^d is the case ``posgens == ()`` with ``U`` full.
    """

    units: IntegerLattice
    posgens: tuple[Vector, ...]
    grading: Vector
    _levels: list = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self) -> None:
        d = self.units.dim
        if len(self.grading) != d:
            raise ValueError(f"grading has length {len(self.grading)}, expected {d}")
        for g in self.posgens:
            if len(g) != d:
                raise ValueError(f"generator {g} has the wrong dimension (expected {d})")
        for u in self.units.basis:
            if dot(self.grading, u) != 0:
                raise ValueError(f"grading {self.grading} does not vanish on unit {u}")
        for g in self.posgens:
            if dot(self.grading, g) <= 0:
                raise ValueError(f"grading {self.grading} is not positive on generator {g}")

    @classmethod
    def create(
        cls,
        posgens: Iterable[Sequence[int]] = (),
        units: Iterable[Sequence[int]] | IntegerLattice = (),
        grading: Sequence[int] | None = None,
        dim: int | None = None,
    ) -> "GradedMonoid":
        """Validated constructor. ``grading`` is searched for when omitted."""
        gens = tuple(vec(g) for g in posgens)
        if isinstance(units, IntegerLattice):
            lat = units
        else:
            rows = [vec(u) for u in units]
            if dim is None:
                dim = len(rows[0]) if rows else (len(gens[0]) if gens else None)
            if dim is None:
                raise ValueError("cannot infer the dimension; pass dim")
            lat = IntegerLattice.from_generators(rows, dim)
        if grading is None:
            grading = find_grading(lat, gens)
            if grading is None:
                raise ValueError("no grading found; supply one explicitly")
        return cls(lat, gens, vec(grading))

    @classmethod
    def group(cls, dim: int) -> "GradedMonoid":
        return cls(IntegerLattice.full(dim), (), (0,) * dim)

    @classmethod
    def numerical(cls, *gens: int) -> "GradedMonoid":
        """The submonoid of N0 generated by ``gens``, graded by the identity."""
        return cls(IntegerLattice.zero(1), tuple((g,) for g in gens), (1,))

    @property
    def dim(self) -> int:
        return self.units.dim

    @property
    def is_group(self) -> bool:
        return not self.posgens

    @property
    def minpos(self) -> int | None:
        return min((self.value(g) for g in self.posgens), default=None)

    def min_level(self, cap: int = 10_000) -> int | None:
        return self.minpos

    def value(self, v: Sequence[int]) -> int:
        return dot(self.grading, v)

    def unit_lattice(self) -> IntegerLattice:
        return self.units

    def group_lattice(self) -> IntegerLattice:
        return self.units.join(self.posgens)

    def generators(self) -> list[Vector]:
        """Monoid generators: the positive ones plus both signs of each unit."""
        out = list(self.posgens)
        for u in self.units.basis:
            out += [u, neg(u)]
        return out

    def regraded(self, grading: Sequence[int]) -> "GradedMonoid":
        return GradedMonoid(self.units, self.posgens, vec(grading))

    def with_generators(self, extra: Iterable[Sequence[int]]) -> "GradedMonoid":
        return GradedMonoid(self.units, self.posgens + tuple(vec(g) for g in extra), self.grading)

    def level_elements(self, level: int) -> frozenset[Vector]:
        if level < 0:
            return frozenset()
        with self._lock:
            levels = self._levels
            if not levels:
                levels.append(frozenset([self.units.reduce((0,) * self.dim)]))
            weighted = [(self.value(g), g) for g in self.posgens]
            while len(levels) <= level:
                t = len(levels)
                cur = set()
                for w, g in weighted:
                    if w <= t:
                        for x in levels[t - w]:
                            cur.add(self.units.reduce(tuple(a + b for a, b in zip(x, g))))
                levels.append(frozenset(cur))
            return levels[level]

    def contains(self, v: Sequence[int]) -> bool:
        self._check_dim(v)
        t = self.value(v)
        if t < 0:
            return False
        if t == 0:
            return self.units.contains(v)
        return self.units.reduce(v) in self.level_elements(t)

    def find_split(self, v: Sequence[int]) -> tuple[Vector, Vector, Vector] | None:
        """Peel one generator: ``v`` splits iff ``v - g`` is a non-unit member
        for some positive generator ``g``."""
        v = vec(v)
        self._require(v)
        t = self.value(v)
        if t == 0:
            raise ValueError(f"{v} is a unit; units are neither atoms nor splittable")
        for g in self.posgens:
            rest = t - self.value(g)
            if rest > 0:
                x = sub(v, g)
                if self.units.reduce(x) in self.level_elements(rest):
                    return x, g, (0,) * self.dim
        return None

    def atoms_up_to_level(self, max_level: int) -> list[AtomClass]:
        """Atom classes of level at most ``max_level``.

        Every atom is associated to a generator, so only generator classes
        are tested.  The lift is the canonical representative.
        """
        seen = {}
        for g in self.posgens:
            t = self.value(g)
            if t <= max_level:
                rep = self.units.reduce(g)
                if rep not in seen and self.find_split(rep) is None:
                    seen[rep] = AtomClass(rep, rep, t)
        return sorted(seen.values(), key=lambda a: (a.level, a.rep))

    def includes(self, other: "GradedMonoid") -> bool:
        """Whether ``other`` is a submonoid of ``self`` (generator check)."""
        return all(self.contains(g) for g in other.generators())

    def same_as(self, other: "GradedMonoid") -> bool:
        return self.includes(other) and other.includes(self)

    def to_dict(self) -> dict:
        return {
            "units": [list(u) for u in self.units.basis],
            "generators": [list(g) for g in self.posgens],
            "grading": list(self.grading),
        }

    def __repr__(self) -> str:
        gens = ", ".join(str(list(g)) for g in self.posgens)
        units = ", ".join(str(list(u)) for u in self.units.basis)
        return f"GradedMonoid(<{gens}>, units=<{units}>, grading={list(self.grading)})"


def contains(m: MonoidBase, v: Sequence[int]) -> bool:
    return m.contains(v)


def divides(m: MonoidBase, a: Sequence[int], b: Sequence[int]) -> bool:
    return m.divides(a, b)


def reduce(m: MonoidBase, v: Sequence[int]) -> Vector:
    return m.reduce(v)


def level_elements(m: MonoidBase, level: int) -> frozenset[Vector]:
    return m.level_elements(level)


def is_atom(m: MonoidBase, v: Sequence[int]) -> bool:
    if m.is_unit(v):
        raise ValueError(f"{tuple(v)} is a unit")
    return m.is_atom(v)


def atoms_up_to_level(m: MonoidBase, max_level: int) -> list[AtomClass]:
    return m.atoms_up_to_level(max_level)


def orthogonal_complement(lattice: IntegerLattice) -> list[Vector]:
    """Integer basis of ``{lam : lam . u = 0 for all u in lattice}``."""
    d = lattice.dim
    if lattice.rank == 0:
        return [tuple(int(i == j) for j in range(d)) for i in range(d)]
    cols = [[row[j] for row in lattice.basis] for j in range(d)]
    h, u = hnf(cols, lattice.rank)
    return [tuple(r) for r in u[h.rank:]]


def find_grading(units: IntegerLattice, posgens: Sequence[Sequence[int]],
                 radius: int = 4) -> Vector | None:
    """Search for an integer grading vanishing on ``units`` and positive on
    every generator.

    Tries the coordinate sum of the generators first, then small integer
    combinations of a basis of the orthogonal complement.  Returns None when
    nothing in the search box works, which does not prove none exists.
    """
    d = units.dim
    if not posgens:
        return (0,) * d
    ker = orthogonal_complement(units)
    if not ker:
        return None

    def ok(lam: Vector) -> bool:
        return all(dot(lam, g) > 0 for g in posgens)

    # project sum of generators onto the complement basis
    total = [sum(g[i] for g in posgens) for i in range(d)]
    guess = tuple(sum(dot(total, k) * k[i] for k in ker) for i in range(d))
    if any(guess) and ok(guess):
        return guess
    for r in range(1, radius + 1):
        for coeffs in product(range(-r, r + 1), repeat=len(ker)):
            if max(map(abs, coeffs)) != r:
                continue
            lam = tuple(sum(c * k[i] for c, k in zip(coeffs, ker)) for i in range(d))
            if ok(lam):
                return lam
    return None
