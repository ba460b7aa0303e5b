"""Factorizations, fixed-length fibers and length sets over any graded monoid.

Enumeration happens in the reduced monoid: an atom class is picked with
multiplicity, its chosen lift is added up, and the whole multiset counts
as a factorization of ``b`` when the lift sum differs from ``b`` by a unit.
The grading bounds the search, since the levels of the parts must add up
to the level of ``b``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .lattice import Vector, sub, vec, vsum
from .monoid import AtomClass, MonoidBase


@dataclass(frozen=True, order=True)
class Factorization:
    """A multiset of atom classes, stored as sorted ``(atom, multiplicity)``
    pairs so that equality is structural."""

    parts: tuple[tuple[AtomClass, int], ...] = ()

    @classmethod
    def of(cls, atoms: Iterable[AtomClass]) -> "Factorization":
        counts = Counter(atoms)
        # Counter keys keep the first lift seen for each class
        return cls(tuple(sorted(counts.items(), key=lambda p: p[0].rep)))

    @property
    def length(self) -> int:
        return sum(k for _, k in self.parts)

    def __len__(self) -> int:
        return self.length

    def atoms(self) -> list[AtomClass]:
        return [a for a, k in self.parts for _ in range(k)]

    def classes(self) -> tuple[Vector, ...]:
        return tuple(a.rep for a in self.atoms())

    def lift_sum(self, dim: int) -> Vector:
        return vsum((a.lift for a in self.atoms()), dim)

    def multiplicity(self, rep: Sequence[int]) -> int:
        rep = vec(rep)
        return sum(k for a, k in self.parts if a.rep == rep)

    def without_one(self, rep: Sequence[int]) -> "Factorization":
        rep = vec(rep)
        out = []
        removed = False
        for a, k in self.parts:
            if a.rep == rep and not removed:
                removed = True
                if k > 1:
                    out.append((a, k - 1))
            else:
                out.append((a, k))
        if not removed:
            raise ValueError(f"class {rep} does not occur in the factorization")
        return Factorization(tuple(out))

    def __str__(self) -> str:
        if not self.parts:
            return "()"
        terms = []
        for a, k in self.parts:
            rep = a.rep[0] if len(a.rep) == 1 else list(a.rep)
            terms.append(f"{k}*{rep}" if k > 1 else f"{rep}")
        return " + ".join(terms)


@dataclass(frozen=True)
class LengthSet:
    lengths: frozenset[int]
    window: int

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.lengths))


@dataclass(frozen=True)
class WindowReport:
    element: Vector
    window: int
    fibers: dict[int, int]
    lengths: LengthSet
    threshold: int
    complete: bool

    @property
    def total(self) -> int:
        return sum(self.fibers.values())


def _atoms_for(m: MonoidBase, b: Vector) -> list[AtomClass]:
    # atoms above the level of b cannot occur in a factorization of b
    return m.atoms_up_to_level(m.value(b))


def _search(m: MonoidBase, b: Vector, lengths: range) -> set[Factorization]:
    b = vec(b)
    m._require(b)
    target = m.unit_lattice().reduce(b)
    total = m.value(b)
    if total == 0:
        return {Factorization()} if 0 in lengths else set()
    atoms = _atoms_for(m, b)
    if not atoms:
        return set()
    lo_len, hi_len = lengths.start, lengths.stop - 1
    min_lv = min(a.level for a in atoms)
    max_lv = max(a.level for a in atoms)
    dim = m.dim
    units = m.unit_lattice()
    found: set[Factorization] = set()
    chosen: list[AtomClass] = []

    def walk(start: int, remaining: int, acc: list[int]) -> None:
        used = len(chosen)
        if remaining == 0:
            if used >= lo_len and units.reduce(acc) == target:
                found.add(Factorization.of(chosen))
            return
        room = hi_len - used
        # every further part costs between min_lv and max_lv
        if room <= 0 or remaining > room * max_lv:
            return
        if remaining < min_lv:
            return
        for i in range(start, len(atoms)):
            a = atoms[i]
            if a.level > remaining:
                break
            chosen.append(a)
            walk(i, remaining - a.level, [x + y for x, y in zip(acc, a.lift)])
            chosen.pop()

    walk(0, total, [0] * dim)
    return found


def enumerate_Z_ell(m: MonoidBase, b: Sequence[int], length: int) -> set[Factorization]:
    """All factorizations of ``b`` of the given length."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    return _search(m, vec(b), range(length, length + 1))


def enumerate_Z_window(m: MonoidBase, b: Sequence[int], max_length: int) -> set[Factorization]:
    """All factorizations of ``b`` of length at most ``max_length``."""
    if max_length < 0:
        raise ValueError("window must be nonnegative")
    return _search(m, vec(b), range(0, max_length + 1))


def window_threshold(m: MonoidBase, b: Sequence[int]) -> int:
    """Smallest window that is guaranteed to contain every factorization."""
    t = m.value(b)
    if t == 0:
        return 0
    lo = m.min_level()
    if lo is None:
        return 0
    return -(-t // lo)


def lengths(m: MonoidBase, b: Sequence[int], max_length: int) -> LengthSet:
    zs = enumerate_Z_window(m, b, max_length)
    return LengthSet(frozenset(z.length for z in zs), max_length)


def verify_lift(m: MonoidBase, b: Sequence[int], z: Factorization) -> bool:
    """Whether ``b`` minus the lift sum of ``z`` is a unit."""
    return m.unit_lattice().contains(sub(vec(b), z.lift_sum(m.dim)))


def classify_window(m: MonoidBase, b: Sequence[int], max_length: int) -> WindowReport:
    b = vec(b)
    zs = enumerate_Z_window(m, b, max_length)
    fibers = Counter(z.length for z in zs)
    threshold = window_threshold(m, b)
    return WindowReport(
        element=b,
        window=max_length,
        fibers=dict(sorted(fibers.items())),
        lengths=LengthSet(frozenset(fibers), max_length),
        threshold=threshold,
        complete=max_length >= threshold,
    )
