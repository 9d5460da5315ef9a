"""Index bounds for G_inf inside Aut(T_inf), all reported as log2 of the index.

A level j that is not maximal costs at most 2^(j-1) - 1 in log2 of the
index once the map is stable (stability gives [K_j : K_{j-1}] >= 2).  The
uniform bounds below fix a horizon beyond which every level is known to be
maximal; the accumulator then adds up what the per-level reports leave open.
Threshold decisions compare exact powers of two, never floats.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .dynamics import QuadMap
from .exact_arith import RatFunc, height
from .tower import CandidateLevels, LevelVerdict

PART1_HORIZON = 17
PART2_CONSTANT = 78


class BoundKind(enum.Enum):
    PART1 = "part1"
    PART2 = "part2"
    PART3_COUNT = "part3_count"
    PART3_LOCALIZED = "part3_localized"
    PINK = "pink"
    BASE_CHANGE = "base_change"
    ACCUMULATED = "accumulated"


@dataclass(frozen=True, eq=True)
class IndexBound:
    """``log2_bound`` bounds log2 |Aut(T_inf) : G_inf|; for PART3_COUNT it is a level count."""

    kind: BoundKind
    log2_bound: int
    threshold_level: int = None
    inputs: dict = field(default_factory=dict, hash=False, compare=False)
    note: str = ""
    # BASE_CHANGE only: the index is at most 2^(base log2 bound) * factor
    factor: int = None


def worst_case(j: int) -> int:
    """Largest possible log2 shortfall at level j of a stable tower."""
    return 2 ** (j - 1) - 1


def part1_bound() -> IndexBound:
    """h(gamma) != h(c): every level from 17 on is maximal, index <= 2^(2^16 - 17)."""
    log2 = sum(worst_case(j) for j in range(1, PART1_HORIZON))
    return IndexBound(BoundKind.PART1, log2, PART1_HORIZON)


def part2_threshold(h_gamma, h_b) -> int:
    """Least n with n > 2 log2(78 h_gamma / h_b) + 9, i.e. 2^(n-9) > (78 h_gamma / h_b)^2."""
    if h_b <= 0:
        raise ValueError("h(gamma - c) must be positive; h(gamma - c) = 0 is the isotrivial case")
    target = (PART2_CONSTANT * Fraction(h_gamma) / Fraction(h_b)) ** 2
    n = 0
    while Fraction(2) ** (n - 9) <= target:
        n += 1
    return n


def accumulate_index(levels, stable: bool, horizon: int) -> IndexBound:
    """Add worst-case shortfalls of the levels below ``horizon`` left open by ``levels``.

    ``horizon`` is the first level assumed maximal.  Levels with an exact
    verdict contribute their exact shortfall, missing levels count as
    undetermined.
    """
    if not stable:
        raise ValueError("the accumulator needs a certified-stable map")
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    by_level = {r.n: r for r in levels}
    total = 0
    open_levels = []
    for j in range(1, horizon):
        r = by_level.get(j)
        if r is not None and r.deficit is not None:
            total += r.deficit
        else:
            total += worst_case(j)
            open_levels.append(j)
    return IndexBound(BoundKind.ACCUMULATED, total, horizon,
                      {"open_levels": open_levels, "horizon": horizon})


def part2_bound(phi: QuadMap, levels, stable: bool) -> IndexBound:
    """Accumulated bound with the part-2 horizon, a derived realization of the constant C."""
    if phi.h_gamma != phi.h_c or phi.is_isotrivial:
        raise ValueError("part 2 needs h(gamma) = h(c) and h(gamma - c) > 0")
    n0 = part2_threshold(phi.h_gamma, phi.h_b)
    acc = accumulate_index(levels, stable, n0)
    return IndexBound(BoundKind.PART2, acc.log2_bound, n0,
                      {"h_gamma": phi.h_gamma, "h_b": phi.h_b, **acc.inputs},
                      note="derived realization of C: accumulated shortfall below the threshold")


def _check_isotrivial(phi: QuadMap):
    if not phi.is_isotrivial:
        raise ValueError("needs an isotrivial map")
    if phi.h_gamma == 0:
        raise ValueError("needs h(phi) > 0")


def part3_count_bound(phi: QuadMap) -> IndexBound:
    """At most h(gamma) - 1 non-maximal levels."""
    _check_isotrivial(phi)
    return IndexBound(BoundKind.PART3_COUNT, phi.h_gamma - 1, inputs={"h_gamma": phi.h_gamma},
                      note="count of levels that can fail to be maximal")


def part3_localized_bound(candidates: CandidateLevels, levels) -> IndexBound:
    """Worst-case shortfall summed over the flagged levels that stay uncertified.

    Only meaningful when the candidate scan is complete.
    """
    if not candidates.complete:
        raise ValueError("candidate scan did not reach the escape level")
    by_level = {r.n: r for r in levels}
    total = 0
    for j in candidates.levels:
        r = by_level.get(j)
        total += r.deficit if r is not None and r.deficit is not None else worst_case(j)
    return IndexBound(BoundKind.PART3_LOCALIZED, total,
                      inputs={"flagged_levels": list(candidates.levels)})


def ord2(n: int) -> int:
    return (n & -n).bit_length() - 1


def pink_bound(phi: QuadMap) -> IndexBound:
    """Index at most 2^e with e the 2-adic valuation of h(gamma)."""
    _check_isotrivial(phi)
    return IndexBound(BoundKind.PINK, ord2(phi.h_gamma), inputs={"h_gamma": phi.h_gamma})


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def base_change_bound(base: IndexBound, f: RatFunc) -> IndexBound:
    """Index over Q(t) after t -> f(t): multiply by [Q(t) : Q(f)] = h(f)."""
    if f.is_constant:
        raise ValueError("base change needs a non-constant f")
    hf = height(f)
    return IndexBound(BoundKind.BASE_CHANGE, base.log2_bound + ceil_log2(hf), base.threshold_level,
                      {"h_f": hf, "base_kind": base.kind.value, "base_log2_bound": base.log2_bound},
                      factor=hf)


@dataclass(frozen=True)
class FiniteLevelIndex:
    """log2 |Aut(T_n) : G_n| for n = ``level``: exact when every level up to n is decided."""

    level: int
    lower: int
    upper: int

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def finite_level_index(levels, n: int) -> FiniteLevelIndex:
    by_level = {r.n: r for r in levels}
    lower = upper = 0
    for j in range(1, n + 1):
        r = by_level.get(j)
        if r is not None and r.deficit is not None:
            lower += r.deficit
            upper += r.deficit
        else:
            upper += worst_case(j)
    return FiniteLevelIndex(n, lower, upper)


def exact_deficit_sum(levels) -> int:
    """Lower bound for log2 of the full index: shortfalls proven at individual levels."""
    return sum(r.deficit for r in levels if r.verdict is LevelVerdict.NON_MAXIMAL_EXACT)
