"""Command-line front end.

Every command reads a presentation file (see ``facfold.presentation``) and
prints a report, either as indented text or as JSON with
``--format structured``.  The exit status is 0 unless an error occurred;
an Unknown verdict is a normal answer.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import constructions as con
from . import extensions as ext
from . import factorization as fac
from .monoid import GradedMonoid
from .presentation import Document, PresentationError, load, monoid_dict
from .verdict import DEFAULT_BOUND, BoundExhausted, plain


class UsageError(Exception):
    pass


def default_bound() -> int:
    raw = os.environ.get("FACFOLD_DEFAULT_BOUND")
    if raw is None:
        return DEFAULT_BOUND
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"FACFOLD_DEFAULT_BOUND must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("FACFOLD_DEFAULT_BOUND must be positive")
    return value


def parse_directions(text: str, dim: int) -> list[tuple[int, ...]]:
    """``"3;-1"`` or ``"1,0;0,1"``: vectors separated by semicolons."""
    out = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            v = tuple(int(t) for t in chunk.split(","))
        except ValueError:
            raise UsageError(f"bad direction {chunk!r}") from None
        if len(v) != dim:
            raise UsageError(f"direction {chunk!r} has {len(v)} entries, expected {dim}")
        out.append(v)
    return out


def _factorization_rows(zs) -> list[dict]:
    return [{"length": z.length, "atoms": [list(a.lift) for a in z.atoms()]} for z in sorted(zs, key=lambda z: (z.length, z))]


def _monoid(doc: Document, name: str):
    try:
        return doc.monoid(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _graded(doc: Document, name: str) -> GradedMonoid:
    m = _monoid(doc, name)
    if not isinstance(m, GradedMonoid):
        raise UsageError(f"{name!r} is not an explicit presentation")
    return m


def _element(doc: Document, ref: str):
    try:
        return doc.element(ref)
    except (KeyError, PresentationError) as exc:
        raise UsageError(str(exc).strip("'\"")) from None


def _family(doc: Document, name: str):
    try:
        return doc.family(name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


# ---------------------------------------------------------------------------
# commands; each returns (results, bounds)


def cmd_atoms(doc: Document, args) -> tuple[dict, dict]:
    m = _monoid(doc, args.monoid)
    level = args.level
    atoms = m.atoms_up_to_level(level)
    return {"atoms": [{"lift": list(a.lift), "level": a.level} for a in atoms],
            "count": len(atoms)}, {"level": level}


def cmd_factorize(doc: Document, args) -> tuple[dict, dict]:
    m = _monoid(doc, args.monoid)
    b = _element(doc, args.element)
    if args.length is not None:
        zs = fac.enumerate_Z_ell(m, b, args.length)
        bounds = {"length": args.length}
        complete = True
    else:
        window = args.window if args.window is not None else fac.window_threshold(m, b)
        zs = fac.enumerate_Z_window(m, b, window)
        bounds = {"window": window}
        complete = window >= fac.window_threshold(m, b)
    return {"element": list(b), "count": len(zs), "factorizations": _factorization_rows(zs),
            "lengths": sorted({z.length for z in zs}), "complete": complete}, bounds


def cmd_lengths(doc: Document, args) -> tuple[dict, dict]:
    m = _monoid(doc, args.monoid)
    b = _element(doc, args.element)
    threshold = fac.window_threshold(m, b)
    window = args.window if args.window is not None else threshold
    ls = fac.lengths(m, b, window)
    return {"element": list(b), "lengths": sorted(ls), "complete": window >= threshold}, {"window": window}


def cmd_classify(doc: Document, args) -> tuple[dict, dict]:
    m = _monoid(doc, args.monoid)
    b = _element(doc, args.element)
    window = args.window if args.window is not None else fac.window_threshold(m, b)
    rep = fac.classify_window(m, b, window)
    return {
        "element": list(b),
        "fibers": {str(k): v for k, v in rep.fibers.items()},
        "total": rep.total,
        "lengths": sorted(rep.lengths),
        "threshold": rep.threshold,
        "complete": rep.complete,
    }, {"window": window}


def cmd_reflect(doc: Document, args) -> tuple[dict, dict]:
    n = _graded(doc, args.sub)
    s = _monoid(doc, args.sup)
    v = ext.is_unit_reflecting(n, s)
    out: dict[str, Any] = {"verdict": v.to_dict()}
    if args.level is not None:
        out["collisions"] = [[list(x), list(y)] for x, y in ext.reduction_collisions(n, s, args.level)]
    return out, {"level": args.level}


def cmd_admissible(doc: Document, args) -> tuple[dict, dict]:
    omega = _family(doc, args.family)
    s = _monoid(doc, args.sup)
    v = ext.is_admissible(omega.base, s, omega)
    out: dict[str, Any] = {"verdict": v.to_dict(), "family_size": len(omega)}
    if v.holds:
        out["image_size"] = len(ext.persistence_map(omega.base, s, omega))
    return out, {}


def cmd_transport(doc: Document, args) -> tuple[dict, dict]:
    omega = _family(doc, args.family)
    n = omega.base
    if not isinstance(n, GradedMonoid):
        raise UsageError("the family's monoid must be an explicit presentation")
    dirs = None if args.directions is None else parse_directions(args.directions, doc.dim)
    rep = con.local_obstruction_pipeline(n, doc.ambient, omega.element, omega.length, omega,
                                         directions=dirs, bound=args.bound, level_bound=args.level)
    out = rep.to_dict()
    out["final"] = monoid_dict(rep.final)
    return out, {"bound": args.bound, "level": args.level}


def cmd_undermonoid(doc: Document, args) -> tuple[dict, dict]:
    s = _monoid(doc, args.sub)
    m = _graded(doc, args.ambient)
    v = con.undermonoid_check(s, m)
    return {"verdict": v.to_dict(), "undermonoid": v.holds}, {}


def cmd_selftest(args) -> tuple[dict, dict]:
    from .selftest import run_selftest
    checks = run_selftest()
    failed = [name for name, ok, _ in checks if not ok]
    return {"checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in checks],
            "passed": not failed}, {}


COMMANDS = {
    "atoms": cmd_atoms,
    "factorize": cmd_factorize,
    "lengths": cmd_lengths,
    "classify": cmd_classify,
    "reflect": cmd_reflect,
    "admissible": cmd_admissible,
    "transport": cmd_transport,
    "undermonoid": cmd_undermonoid,
}


def build_parser(bound: int) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="facfold", description="Factorizations in monoids of Z^d.")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, help_text, *positionals):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--format", choices=("text", "structured"), default=argparse.SUPPRESS)
        if name != "selftest":
            sp.add_argument("file", help="presentation document (YAML)")
        for pos in positionals:
            sp.add_argument(pos)
        return sp

    cmd("atoms", "list atom classes up to a level", "monoid").add_argument("--level", type=int, required=True)
    sp = cmd("factorize", "enumerate factorizations", "monoid", "element")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--length", type=int)
    g.add_argument("--window", type=int)
    cmd("lengths", "length set within a window", "monoid", "element").add_argument("--window", type=int)
    cmd("classify", "fiber sizes per length", "monoid", "element").add_argument("--window", type=int)
    cmd("reflect", "unit-reflection test for sub in sup", "sub", "sup").add_argument("--level", type=int)
    cmd("admissible", "admissibility of sup for a family", "family", "sup")
    sp = cmd("transport", "run the local obstruction pipeline", "family")
    sp.add_argument("--directions", help='perturbation directions, e.g. "3;-1" or "1,0;0,1"')
    sp.add_argument("--bound", type=int, default=bound)
    sp.add_argument("--level", type=int, help="level window for the ideal checks")
    sp = cmd("undermonoid", "compare group lattices", "sub")
    sp.add_argument("ambient", nargs="?", default="ambient")
    cmd("selftest", "run built-in consistency checks")
    return p


def _text(value: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                sub_lines = _text(v, indent + 1)
                lines.append(f"{pad}- {sub_lines[0].strip()}")
                lines += sub_lines[1:]
            else:
                lines.append(f"{pad}- {_inline(v)}")
        return lines
    return [f"{pad}{_inline(value)}"]


def _flat(v: Any) -> bool:
    if isinstance(v, list):
        return all(isinstance(x, (int, str, bool)) or x is None or
                   (isinstance(x, list) and all(isinstance(y, int) for y in x)) for x in v)
    return False


def _inline(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    return str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(report, indent=2, sort_keys=False)
    return "\n".join(_text(report))


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        bound = default_bound()
    except UsageError as exc:
        print(f"facfold: error: {exc}", file=sys.stderr)
        return 2
    args = build_parser(bound).parse_args(argv)
    try:
        if args.command == "selftest":
            results, bounds = cmd_selftest(args)
        else:
            doc = load(args.file)
            results, bounds = COMMANDS[args.command](doc, args)
    except PresentationError as exc:
        print(f"facfold: parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"facfold: error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ValueError, BoundExhausted) as exc:
        print(f"facfold: error: {exc}", file=sys.stderr)
        return 1
    echo = {k: v for k, v in vars(args).items() if k != "format"}
    report = {
        "command": echo,
        "results": plain(results),
        "bounds": {k: v for k, v in bounds.items() if v is not None},
    }
    print(render(report, args.format))
    if args.command == "selftest" and not results["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
