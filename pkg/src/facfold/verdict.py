"""Three-valued outcomes for checks that are only semi-decidable at desk
scale, plus the witness records they carry."""

from __future__ import annotations

from dataclasses import asdict, dataclass, is_dataclass
from enum import Enum
from typing import Any

from .lattice import Vector

DEFAULT_BOUND = 64


class State(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """``Holds``, ``Fails`` with a witness, or ``Unknown`` at a search bound.

    Unknown is only produced by bounded searches; exact lattice computations
    always settle to Holds or Fails.
    """

    state: State
    witness: Any = None
    bound: int | None = None
    note: str = ""

    @classmethod
    def holding(cls, witness: Any = None, note: str = "") -> "Verdict":
        return cls(State.HOLDS, witness, None, note)

    @classmethod
    def failing(cls, witness: Any, note: str = "") -> "Verdict":
        if witness is None:
            raise ValueError("a failing verdict needs a witness")
        return cls(State.FAILS, witness, None, note)

    @classmethod
    def undecided(cls, bound: int, note: str = "") -> "Verdict":
        return cls(State.UNKNOWN, None, bound, note)

    @property
    def holds(self) -> bool:
        return self.state is State.HOLDS

    @property
    def fails(self) -> bool:
        return self.state is State.FAILS

    @property
    def unknown(self) -> bool:
        return self.state is State.UNKNOWN

    def __str__(self) -> str:
        if self.holds:
            text = "Holds"
        elif self.fails:
            text = f"Fails({describe(self.witness)})"
        else:
            text = f"Unknown(bound={self.bound})"
        return f"{text}: {self.note}" if self.note else text

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"state": self.state.value}
        if self.witness is not None:
            out["witness"] = plain(self.witness)
        if self.bound is not None:
            out["bound"] = self.bound
        if self.note:
            out["note"] = self.note
        return out


class BoundExhausted(Exception):
    """Raised by predicate monoids when a bounded search cannot certify an
    answer. Verdict-producing checks turn it into ``Unknown``."""

    def __init__(self, bound: int, message: str = ""):
        super().__init__(message or f"search bound {bound} exhausted")
        self.bound = bound


@dataclass(frozen=True)
class UnitWitness:
    """``unit`` lies in U(S) and in G(N) but not in U(N)."""

    unit: Vector


@dataclass(frozen=True)
class SplitWitness:
    """``atom = x + y + eps`` with x, y non-units and eps a unit."""

    atom: Vector
    x: Vector
    y: Vector
    eps: Vector


@dataclass(frozen=True)
class BecomesUnit:
    """``element + inverse = 0`` inside the larger monoid."""

    element: Vector
    inverse: Vector


@dataclass(frozen=True)
class InversePair:
    """``x + y = 0`` with ``x = s + k w`` and ``y = t + m w`` (s, t in S)."""

    x: Vector
    y: Vector
    s: Vector
    k: int
    t: Vector
    m: int


@dataclass(frozen=True)
class Relation:
    """``n * u + q = 0`` with ``q`` in S."""

    n: int
    q: Vector


def plain(obj: Any) -> Any:
    """Convert witnesses into JSON-friendly structures."""
    if isinstance(obj, Verdict):
        return obj.to_dict()
    if is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return {k: plain(v) for k, v in asdict(obj).items()}
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [plain(v) for v in obj]
        return sorted(items) if isinstance(obj, (set, frozenset)) else items
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    return obj


def describe(obj: Any) -> str:
    if isinstance(obj, (UnitWitness, SplitWitness, BecomesUnit, InversePair, Relation)):
        return repr(obj)
    return str(obj)
