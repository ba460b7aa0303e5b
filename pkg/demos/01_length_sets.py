"""
Factorizations in a numerical monoid
====================================

The monoid generated by 2 and 3 inside the nonnegative integers.
"""

from facfold import GradedMonoid, classify_window, enumerate_Z_window

m = GradedMonoid.numerical(2, 3)
print(m)

# 12 can be written with four, five or six atoms
for z in sorted(enumerate_Z_window(m, (12,), 10), key=len):
    print(f"  length {len(z)}: {z}")

# fiber sizes grow slowly with the element; the window covers every length
for b in (6, 12, 24, 48):
    rep = classify_window(m, (b,), b // 2)
    print(f"b = {b:2d}  fibers {rep.fibers}  complete={rep.complete}")
