"""
Why units matter
================

N = <(1,0), (1,1)> sits inside T = <(1,0)> + Z(0,1).  Nothing in N becomes
invertible in T, so T is above N in the survival order.  Still, (0,1) is a
new unit inside the group of N, and the two atoms (1,0) and (1,1) become
the same class of T.
"""

from facfold import GradedMonoid, is_unit_reflecting, reduction_map, survival_leq

n = GradedMonoid.create([(1, 0), (1, 1)], [], dim=2)
t = GradedMonoid.create([(1, 0)], [(0, 1)])

print("unit reflecting:", is_unit_reflecting(n, t))
print("survival order: ", survival_leq(n, t))
print("classes in T:   ", reduction_map(n, t, (1, 0)), reduction_map(n, t, (1, 1)))
