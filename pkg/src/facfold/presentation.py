"""Presentation documents: a YAML file describing an ambient monoid, named
submonoids (explicit or built by a recipe), named elements and named
factorization families.

Schema::

    ambient:
      dim: 1
      grading: [1]          # optional; searched for when absent
      units: []             # rows, or the string "full"
      generators: [[1]]
    monoids:
      N: {generators: [[2], [3]]}                 # units/grading optional
      W: {recipe: enlarge, base: N, element: b}
      S: {recipe: perturb, base: N, element: b, direction: [3], bound: 64}
    elements:
      b: [6]
    families:
      omega: {monoid: N, element: b, length: 2, members: all}

Family members are lists of atom lifts, e.g. ``[[2], [2], [2]]``.  Integers
may be of any size.  The name ``ambient`` refers to the ambient monoid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import yaml

from .constructions import IdealEnlargement, Perturbed, enlarge_nongroup, perturb
from .extensions import FactorizationFamily, build_family
from .factorization import Factorization
from .lattice import IntegerLattice, Vector
from .monoid import AtomClass, GradedMonoid, MonoidBase
from .verdict import DEFAULT_BOUND

AMBIENT = "ambient"
RECIPES = ("enlarge", "perturb")


class PresentationError(ValueError):
    """Malformed document; ``location`` names the offending key path."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
        self.message = message


# ---------------------------------------------------------------------------
# low-level field readers


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise PresentationError(where, f"expected an integer, got {x!r}")
    return x


def _row(x: Any, dim: int, where: str) -> list[int]:
    if isinstance(x, int) and not isinstance(x, bool) and dim == 1:
        return [x]
    if not isinstance(x, list):
        raise PresentationError(where, f"expected a list of {dim} integers, got {x!r}")
    if len(x) != dim:
        raise PresentationError(where, f"expected {dim} entries, got {len(x)}")
    return [_int(v, f"{where}[{i}]") for i, v in enumerate(x)]


def _rows(x: Any, dim: int, where: str) -> list[list[int]]:
    if x is None:
        return []
    if not isinstance(x, list):
        raise PresentationError(where, "expected a list of rows")
    return [_row(r, dim, f"{where}[{i}]") for i, r in enumerate(x)]


def _mapping(x: Any, where: str) -> dict:
    if x is None:
        return {}
    if not isinstance(x, dict):
        raise PresentationError(where, "expected a mapping")
    for k in x:
        if not isinstance(k, str):
            raise PresentationError(where, f"keys must be strings, got {k!r}")
    return x


def _no_extra(spec: dict, allowed: set[str], where: str) -> None:
    extra = sorted(set(spec) - allowed)
    if extra:
        raise PresentationError(f"{where}.{extra[0]}", "unknown key")


# ---------------------------------------------------------------------------
# the document


@dataclass
class Document:
    """A parsed presentation.  ``canonical`` is the normalized source, from
    which ``dump`` regenerates an equivalent file."""

    canonical: dict
    ambient: GradedMonoid
    monoids: dict[str, MonoidBase] = field(default_factory=dict)
    elements: dict[str, Vector] = field(default_factory=dict)
    families: dict[str, FactorizationFamily] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.ambient.dim

    def monoid(self, name: str) -> MonoidBase:
        if name == AMBIENT:
            return self.ambient
        try:
            return self.monoids[name]
        except KeyError:
            raise KeyError(f"unknown monoid {name!r}") from None

    def family(self, name: str) -> FactorizationFamily:
        try:
            return self.families[name]
        except KeyError:
            raise KeyError(f"unknown family {name!r}") from None

    def element(self, ref: Any) -> Vector:
        """A named element, a list, or a string such as ``"12"`` or ``"1,2"``."""
        if isinstance(ref, str) and ref in self.elements:
            return self.elements[ref]
        if isinstance(ref, str):
            try:
                ref = [int(t) for t in ref.replace(" ", "").split(",")]
            except ValueError:
                raise KeyError(f"unknown element {ref!r}") from None
        return tuple(_row(ref, self.dim, "element"))


def _graded(spec: dict, dim: int, where: str, default_grading: list[int] | None) -> tuple[dict, GradedMonoid]:
    _no_extra(spec, {"generators", "units", "grading"}, where)
    gens = _rows(spec.get("generators"), dim, f"{where}.generators")
    units_raw = spec.get("units")
    if units_raw == "full":
        units = IntegerLattice.full(dim)
    else:
        units = IntegerLattice.from_generators(_rows(units_raw, dim, f"{where}.units"), dim)
    grading = spec.get("grading")
    if grading is not None:
        grading = _row(grading, dim, f"{where}.grading")
    elif default_grading is not None and _fits(default_grading, units, gens):
        grading = default_grading
    try:
        m = GradedMonoid.create(gens, units, grading)
    except ValueError as exc:
        raise PresentationError(where, str(exc)) from None
    canon = {
        "generators": [list(g) for g in m.posgens],
        "units": [list(u) for u in m.units.basis],
        "grading": list(m.grading),
    }
    return canon, m


def _fits(grading: list[int], units: IntegerLattice, gens: list[list[int]]) -> bool:
    def val(v):
        return sum(a * b for a, b in zip(grading, v))
    return all(val(u) == 0 for u in units.basis) and all(val(g) > 0 for g in gens)


def _element_ref(raw: Any, elements: dict[str, Vector], dim: int, where: str) -> tuple[Any, Vector]:
    if isinstance(raw, str):
        if raw not in elements:
            raise PresentationError(where, f"unknown element {raw!r}")
        return raw, elements[raw]
    row = _row(raw, dim, where)
    return row, tuple(row)


def from_dict(data: Any) -> Document:
    data = _mapping(data, "")
    _no_extra(data, {AMBIENT, "monoids", "elements", "families"}, "")
    if AMBIENT not in data:
        raise PresentationError(AMBIENT, "missing ambient monoid")
    amb = _mapping(data[AMBIENT], AMBIENT)
    if "dim" not in amb:
        raise PresentationError(f"{AMBIENT}.dim", "missing")
    dim = _int(amb["dim"], f"{AMBIENT}.dim")
    if dim < 1:
        raise PresentationError(f"{AMBIENT}.dim", "must be positive")
    amb_spec = {k: v for k, v in amb.items() if k != "dim"}
    amb_canon, ambient = _graded(amb_spec, dim, AMBIENT, None)
    if amb.get("units") == "full":
        amb_canon["units"] = "full"
    amb_canon = {"dim": dim, **amb_canon}

    canon: dict[str, Any] = {AMBIENT: amb_canon, "monoids": {}, "elements": {}, "families": {}}
    doc = Document(canon, ambient)

    for name, raw in _mapping(data.get("elements"), "elements").items():
        where = f"elements.{name}"
        row = _row(raw, dim, where)
        doc.elements[name] = tuple(row)
        canon["elements"][name] = row

    specs = _mapping(data.get("monoids"), "monoids")
    if AMBIENT in specs:
        raise PresentationError(f"monoids.{AMBIENT}", "name is reserved")
    visiting: set[str] = set()

    def resolve(name: str, where: str) -> MonoidBase:
        if name == AMBIENT:
            return ambient
        if name in doc.monoids:
            return doc.monoids[name]
        if name not in specs:
            raise PresentationError(where, f"unknown monoid {name!r}")
        if name in visiting:
            raise PresentationError(where, f"cyclic reference through {name!r}")
        visiting.add(name)
        spec = _mapping(specs[name], f"monoids.{name}")
        doc.monoids[name], canon["monoids"][name] = build_monoid(name, spec)
        visiting.discard(name)
        return doc.monoids[name]

    def build_monoid(name: str, spec: dict) -> tuple[MonoidBase, dict]:
        where = f"monoids.{name}"
        recipe = spec.get("recipe")
        if recipe is None:
            c, m = _graded(spec, dim, where, list(ambient.grading))
            return m, c
        if recipe not in RECIPES:
            raise PresentationError(f"{where}.recipe", f"expected one of {RECIPES}")
        allowed = {"recipe", "base", "element"} | ({"direction", "bound"} if recipe == "perturb" else set())
        _no_extra(spec, allowed, where)
        for key in ("base", "element"):
            if key not in spec:
                raise PresentationError(f"{where}.{key}", "missing")
        base_name = spec["base"]
        if not isinstance(base_name, str):
            raise PresentationError(f"{where}.base", "expected a monoid name")
        base = resolve(base_name, f"{where}.base")
        if not isinstance(base, GradedMonoid):
            raise PresentationError(f"{where}.base", "the base must be an explicit presentation")
        eref, b = _element_ref(spec["element"], doc.elements, dim, f"{where}.element")
        c = {"recipe": recipe, "base": base_name, "element": eref}
        try:
            if recipe == "enlarge":
                return enlarge_nongroup(base, ambient, b), c
            if "direction" not in spec:
                raise PresentationError(f"{where}.direction", "missing")
            u = _row(spec["direction"], dim, f"{where}.direction")
            bound = _int(spec.get("bound", DEFAULT_BOUND), f"{where}.bound")
            c.update(direction=u, bound=bound)
            p = perturb(base, b, u, bound)
            return (p.presentation() or p), c
        except PresentationError:
            raise
        except ValueError as exc:
            raise PresentationError(where, str(exc)) from None

    for name in specs:
        resolve(name, f"monoids.{name}")
    canon["monoids"] = {k: canon["monoids"][k] for k in specs}

    for name, raw in _mapping(data.get("families"), "families").items():
        where = f"families.{name}"
        spec = _mapping(raw, where)
        _no_extra(spec, {"monoid", "element", "length", "members"}, where)
        for key in ("monoid", "element"):
            if key not in spec:
                raise PresentationError(f"{where}.{key}", "missing")
        mname = spec["monoid"]
        if not isinstance(mname, str):
            raise PresentationError(f"{where}.monoid", "expected a monoid name")
        m = resolve(mname, f"{where}.monoid")
        eref, b = _element_ref(spec["element"], doc.elements, dim, f"{where}.element")
        length = spec.get("length")
        if length is not None:
            length = _int(length, f"{where}.length")
        members_raw = spec.get("members", "all")
        c = {"monoid": mname, "element": eref, "length": length}
        try:
            if members_raw == "all":
                members = None
                c["members"] = "all"
            else:
                if not isinstance(members_raw, list):
                    raise PresentationError(f"{where}.members", 'expected "all" or a list')
                members = []
                for i, z in enumerate(members_raw):
                    lifts = _rows(z, dim, f"{where}.members[{i}]")
                    members.append(_factorization(m, lifts))
                c["members"] = [[list(a.lift) for a in z.atoms()] for z in sorted(set(members))]
            doc.families[name] = build_family(m, b, length, members)
        except PresentationError:
            raise
        except ValueError as exc:
            raise PresentationError(where, str(exc)) from None
        canon["families"][name] = c

    for key in ("monoids", "elements", "families"):
        if not canon[key]:
            del canon[key]
    return doc


def _factorization(m: MonoidBase, lifts: list[list[int]]) -> Factorization:
    units = m.unit_lattice()
    return Factorization.of(AtomClass(units.reduce(a), tuple(a), m.value(a)) for a in lifts)


def loads(text: str, source: str = "<string>") -> Document:
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"{source}:{mark.line + 1}:{mark.column + 1}" if mark else source
        problem = getattr(exc, "problem", None) or str(exc)
        raise PresentationError(where, problem) from None
    try:
        return from_dict(data)
    except PresentationError as exc:
        raise PresentationError(f"{source}:{exc.location}" if exc.location else source,
                                exc.message) from None


def load(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), path)


def dumps(doc: Document) -> str:
    return yaml.safe_dump(doc.canonical, sort_keys=False, default_flow_style=None)


def monoid_dict(m: MonoidBase) -> dict | str:
    if isinstance(m, IdealEnlargement):
        return {"recipe": "enlarge", "base": m.base.to_dict(), "element": list(m.element)}
    if isinstance(m, GradedMonoid):
        return m.to_dict()
    if isinstance(m, Perturbed):
        return {"base": m.base.to_dict(), "step": list(m.step), "bound": m.bound}
    return repr(m)
