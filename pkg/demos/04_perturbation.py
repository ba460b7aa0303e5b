"""
Perturbing inside a group
=========================

In Z every submonoid is a candidate.  Adding w = 2b + u keeps the fixed
atoms alive as long as some multiple of u lies in S, or no multiple of u
can be cancelled by S.  When neither holds, things can collapse.
"""

from facfold import (
    GradedMonoid,
    build_family,
    condition_i,
    condition_ii,
    local_obstruction_pipeline,
    no_new_units_check,
    perturb,
    undermonoid_check,
)

Z = GradedMonoid.group(1)
s = GradedMonoid.create([(2,)], [], dim=1)
omega = build_family(s, (2,), 1)

print("u = 3:", condition_i(s, (3,)))
sp = perturb(s, (2,), (3,))
print("  S' =", sp.presentation())
print("  units:", no_new_units_check(s, sp))
print("  undermonoid before:", undermonoid_check(s, Z))
print("  undermonoid after: ", undermonoid_check(sp.presentation(), Z))

# the negative control: 3 and -1 generate all of Z
s3 = GradedMonoid.create([(3,)], [], dim=1)
print("u = -7:", condition_i(s3, (-7,)), "|", condition_ii(s3, (-7,)))
print("  units:", no_new_units_check(s3, perturb(s3, (3,), (-7,))))

# a forcing chain over the default directions
rep = local_obstruction_pipeline(s3, Z, (3,), 1, build_family(s3, (3,), 1))
for step in rep.steps:
    print(f"  direction {step.direction[0]:3d}: {step.outcome}")
print("final:", rep.final, "|", rep.undermonoid)
