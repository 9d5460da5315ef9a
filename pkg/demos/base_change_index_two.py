"""
Base change: an index of exactly two, and a reducible specialisation
====================================================================

Substituting t -> -t^2 - 1 into x^2 + t gives x^2 - t^2 - 1.  Level 2
falls short by one, every other level we can reach is maximal.
Substituting t -> 1/t^2 into (x - t^3 + 1)^2 - t even splits the
quadratic, while the index stays finite.
"""

from arboreal.bounds import base_change_bound, part1_bound
from arboreal.cli import RunConfig, run_classify
from arboreal.dynamics import QuadMap, base_change, factor_quadratic
from arboreal.exact_arith import parse_ratfunc, render

rep = run_classify(RunConfig("0", "t", max_level=8, base_change_f="-t^2-1"))
bc = rep.base_change
print("phi_f =", "(x - (%s))^2 + (%s)" % (bc["map"]["gamma"], bc["map"]["c"]))
for lv in bc["levels"]:
    print(f"  level {lv['n']}: {lv['verdict']}", "" if not lv["deficit"] else f"(deficit {lv['deficit']})")
ix = bc["index"]
print("log2 index: lower", ix["log2_lower"], "conditional upper", ix["log2_conditional_upper"])
print("index =", 2 ** ix["sharp_log2"])

# the generic bound only picks up the degree of t -> -t^2 - 1
print("generic bound after base change:", base_change_bound(part1_bound(), parse_ratfunc("-t^2-1")).log2_bound)

phi = QuadMap.parse("t^3 - 1", "-t")
psi = base_change(phi, parse_ratfunc("1/t^2"))
print("gamma_f =", render(psi.gamma), " c_f =", render(psi.c))
fac = factor_quadratic(psi)
print("irreducible:", fac.irreducible)
for lin in fac.linear_factors():
    print("  ", lin)
