"""Quick consistency checks run by ``facfold selftest``."""

from __future__ import annotations

from .constructions import (
    condition_i,
    condition_ii,
    local_obstruction_pipeline,
    no_new_units_check,
    perturb,
    undermonoid_check,
)
from .extensions import build_family, is_unit_reflecting
from .factorization import enumerate_Z_ell, enumerate_Z_window
from .lattice import IntegerLattice, hnf, matmul, snf
from .monoid import GradedMonoid


def _numerical_fiber():
    m = GradedMonoid.numerical(2, 3)
    zs = enumerate_Z_window(m, (12,), 10)
    got = (len(zs), sorted({z.length for z in zs}))
    return got == (3, [4, 5, 6]), f"<2,3>, b=12: {got}"


def _scaled_pairs():
    got = []
    for d in (4, 10, 20):
        h = GradedMonoid.numerical(*range(d, 2 * d))
        got.append(len(enumerate_Z_ell(h, (3 * d,), 2)))
    return got == [2, 5, 10], f"length-2 fibers of 3D: {got}"


def _normal_forms():
    a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    d, left, right = snf(a)
    diag = [d[i][i] for i in range(3)]
    lat, u = hnf(a)
    ok = matmul(matmul(left, d), right) == a and diag == [2, 6, 12]
    ok = ok and lat == IntegerLattice.from_generators(matmul(u, a)[: lat.rank], 3)
    return ok, f"SNF diagonal {diag}"


def _transport():
    n = GradedMonoid.numerical(2, 3)
    omega = build_family(n, (6,), None, enumerate_Z_window(n, (6,), 3))
    rep = local_obstruction_pipeline(n, GradedMonoid.numerical(1), (6,), None, omega)
    return rep.injective and rep.undermonoid.holds, f"|Omega| = {rep.family_size}, |image| = {rep.image_size}"


def _perturbation():
    s = GradedMonoid.numerical(2)
    omega = build_family(s, (2,), 1)
    rep = local_obstruction_pipeline(s, GradedMonoid.group(1), (2,), 1, omega, directions=[(3,)])
    ok = rep.final.same_as(GradedMonoid.numerical(2, 7)) and rep.undermonoid.holds
    ok = ok and undermonoid_check(s, GradedMonoid.group(1)).fails
    return ok, f"final {rep.final!r}"


def _negative_control():
    s = GradedMonoid.numerical(3)
    ci, cii = condition_i(s, (-7,)), condition_ii(s, (-7,))
    nn = no_new_units_check(s, perturb(s, (3,), (-7,)))
    ok = not ci.holds and cii.fails and (cii.witness.n, cii.witness.q) == (3, (21,)) and nn.fails
    return ok, f"condition (ii): {cii}"


def _unit_reflection():
    n = GradedMonoid.create([(1, 0), (1, 1)], [], dim=2)
    t = GradedMonoid.create([(1, 0)], [(0, 1)])
    v = is_unit_reflecting(n, t)
    return v.fails and v.witness.unit == (0, 1), str(v)


CHECKS = [
    ("numerical fiber", _numerical_fiber),
    ("scaled obstruction", _scaled_pairs),
    ("normal forms", _normal_forms),
    ("non-group transport", _transport),
    ("perturbation", _perturbation),
    ("negative control", _negative_control),
    ("unit reflection", _unit_reflection),
]


def run_selftest() -> list[tuple[str, bool, str]]:
    out = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # report, do not abort the remaining checks
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
