"""
A fixed length with many factorizations
=======================================

H_D is generated by D, D+1, ..., 2D-1.  Every generator is an atom, and 3D
splits into two atoms in floor(D/2) ways.  Letting D grow, the length-2
fiber of the same "shape" of element grows without bound.
"""

from facfold import GradedMonoid, enumerate_Z_ell

for d in (4, 10, 20, 40):
    h = GradedMonoid.numerical(*range(d, 2 * d))
    pairs = sorted(tuple(a.rep[0] for a in z.atoms()) for z in enumerate_Z_ell(h, (3 * d,), 2))
    print(f"D = {d:2d}: {len(pairs):2d} pairs, first {pairs[0]}, last {pairs[-1]}")
