"""
Isotrivial maps (x - t^d)^2 + t^d + m
=====================================

Here gamma - c is the constant -m, so every orbit value is c plus a
rational constant.  For m = 1, 2, 3 those constants escape to infinity,
the orbit values are pairwise coprime and every level is maximal.
The last map is tuned so that phi^2(gamma) = 2 t^2.  Level 2 is flagged
as a candidate, but 2 is not a rational square and the level survives.
"""

from arboreal.bounds import part3_count_bound, pink_bound
from arboreal.dynamics import QuadMap, constant_orbit
from arboreal.stability import certify
from arboreal.tower import certify_levels, isotrivial_candidate_levels, pairwise_coprime_orbit

for d in (1, 2, 3, 4):
    for m in (1, 2, 3):
        phi = QuadMap.parse(f"t^{d}", f"t^{d} + {m}")
        cert = certify(phi)
        reps = certify_levels(phi, 8, cert)
        ok = all(r.verdict.value == "certified_maximal" for r in reps)
        print(f"d={d} m={m}: stable {cert.is_stable}, levels 1..8 maximal {ok}, "
              f"coprime orbit {pairwise_coprime_orbit(phi, 8)}, "
              f"part3 count {part3_count_bound(phi).log2_bound}, pink 2^{pink_bound(phi).log2_bound}")

phi = QuadMap.parse("2*t^2 - 6", "2*t^2 - 9")
print("constants added to c along the orbit:", [str(x) for x in constant_orbit(phi, 4)])
cand = isotrivial_candidate_levels(phi, 10)
print("disc_t(c + s) =", cand.p, "  flagged levels:", cand.levels)
for r in certify_levels(phi, 5, certify(phi)):
    print(f"  level {r.n}: {r.verdict.value} ({r.witness.description})")
