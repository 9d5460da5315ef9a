"""
Twists and discriminants along the tower
========================================

Each orbit value phi^n(gamma) = u d y^2 puts a point on the twist of
Y^2 = (X - c) phi(X) by u d.  The discriminant of phi^m differs from the
square of the previous one by phi^m(gamma) and a power of two; we fit
that power on a few random maps.
"""

import random
from collections import Counter

from arboreal.dynamics import QuadMap
from arboreal.exact_arith import Poly
from arboreal.tower import discriminant_tower, obstruction, verify_curve_identity

phi = QuadMap.parse("t^2 + 1", "t^3 - t")
for n in range(2, 6):
    o = obstruction(phi, n)
    chk = verify_curve_identity(phi, n)
    print(f"n={n}: deg d = {o.d.degree}, deg y = {o.y.degree}, unit {o.u}, identity holds {chk.holds}")

rng = random.Random(1)
seen = Counter()
for _ in range(10):
    g = Poly([rng.randint(-4, 4) for _ in range(3)])
    c = Poly([rng.randint(-4, 4) for _ in range(2)] + [rng.choice([-1, 1])])
    tower = discriminant_tower(QuadMap(g, c), 4)
    seen.update((s.m, s.sign, s.exponent) for s in tower.steps)
for (m, sign, e), k in sorted(seen.items()):
    print(f"m={m}: Delta_m / (Delta_(m-1)^2 phi^m(gamma)) = {'+' if sign > 0 else '-'}2^{e}  ({k} maps)")
