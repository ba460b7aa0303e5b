"""
Moving a family into an undermonoid
===================================

Inside the nonnegative integers, <2,3> already has group Z, but the same
construction works for any submonoid: add every element that does not
divide b.  The new monoid keeps the units of the old one, the fixed atoms
stay atoms, and its group is the whole ambient group.
"""

from facfold import (
    GradedMonoid,
    build_family,
    enlarge_nongroup,
    enumerate_Z_window,
    local_obstruction_pipeline,
    persistence_map,
)

ambient = GradedMonoid.numerical(1)
n = GradedMonoid.numerical(2, 3)
b = (6,)

w = enlarge_nongroup(n, ambient, b)
print("W on [0, 20]:", [m for m in range(21) if w.contains((m,))])
print("ideal part:  ", [m for m in range(21) if w.in_ideal((m,))])

omega = build_family(n, b, None, enumerate_Z_window(n, b, 3))
print("family:", [str(z) for z in omega])
print("image: ", [str(z) for z in persistence_map(n, w, omega)])

# the same thing through the pipeline, for the scaled example
h = GradedMonoid.numerical(*range(10, 20))
rep = local_obstruction_pipeline(h, ambient, (30,), 2, build_family(h, (30,), 2))
print(f"H_10, b = 30: |family| = {rep.family_size}, |image| = {rep.image_size}, "
      f"undermonoid: {rep.undermonoid}")
for name, verdict in rep.checks.items():
    print(f"  {name:22s} {verdict}")
