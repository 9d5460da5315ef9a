"""Command-line front end: classify a map, certify stability and levels, report bounds."""

import argparse
import json
import shlex
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from . import bounds as B
from .dynamics import (
    HeightCase,
    MapClass,
    QuadMap,
    base_change,
    classify,
    factor_quadratic,
)
from .exact_arith import ParseError, height, parse_poly, parse_ratfunc, render
from .stability import StabilityCertificate, certify
from .tower import (
    certify_level,
    discriminant_tower,
    isotrivial_candidate_levels,
    verify_curve_identity,
)

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2

CURVE_CHECK_MAX = 5


@dataclass(frozen=True)
class RunConfig:
    gamma_text: str
    c_text: str
    max_level: int = 10
    pcf_bound: int = 64
    modular_fastpath: bool = True
    output: str = "text"
    base_change_f: str = None

    def __post_init__(self):
        if self.max_level < 1:
            raise ValueError("max_level must be at least 1")
        if self.pcf_bound < 1:
            raise ValueError("pcf_bound must be at least 1")
        if self.output not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output!r}")


@dataclass
class Report:
    map: dict
    classification: dict
    stability: dict
    levels: list
    bounds: list
    identities: dict
    index: dict = None
    base_change: dict = None
    timings: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        # timings stay out so that the JSON is reproducible byte for byte
        out = {
            "map": self.map,
            "class": self.classification,
            "stability": self.stability,
            "levels": self.levels,
            "bounds": self.bounds,
            "identities": self.identities,
            "index": self.index,
            "version": __version__,
        }
        if self.base_change is not None:
            out["base_change"] = self.base_change
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def to_text(self, show_timings: bool = False) -> str:
        return render_text(self, show_timings)


# -- serialisation helpers -----------------------------------------------------


def _class_dict(cls: MapClass) -> dict:
    pcf = cls.pcf
    return {
        "isotrivial": cls.isotrivial,
        "height_case": cls.height_case.value,
        "pcf": {
            "kind": pcf.kind.value,
            "witness": pcf.witness,
            "checked_up_to": pcf.checked_up_to,
            "preperiod": pcf.preperiod,
            "period": pcf.period,
            "escape_level": pcf.escape_level,
        },
    }


def _stability_dict(cert: StabilityCertificate) -> dict:
    return {
        "verdict": cert.verdict.value,
        "checked_bound": cert.checked_bound,
        "square_at": cert.square_at,
        "reason": cert.reason,
        "method": cert.method,
        "witnesses": [{"n": w.n, "is_square": w.is_square, "evidence": w.evidence}
                      for w in cert.orbit_witnesses],
    }


def _level_dict(r) -> dict:
    w = r.witness
    return {
        "n": r.n,
        "verdict": r.verdict.value,
        "deficit": r.deficit,
        "method": r.method,
        "witness": {
            "kind": w.kind,
            "description": w.description,
            "poly": render(w.poly) if w.poly is not None else None,
            "degree": w.degree,
        },
    }


def _bound_dict(b: B.IndexBound) -> dict:
    return {
        "kind": b.kind.value,
        "log2_bound": b.log2_bound,
        "threshold_level": b.threshold_level,
        "inputs": b.inputs,
        "note": b.note,
        "factor": b.factor,
    }


# -- pipeline ------------------------------------------------------------------


def _select_bounds(phi: QuadMap, cls: MapClass, levels, stable: bool, max_level: int) -> list:
    if not stable or phi.height == 0:
        return []
    if cls.height_case is HeightCase.UNEQUAL_HEIGHTS:
        return [B.part1_bound(), B.accumulate_index(levels, True, B.PART1_HORIZON)]
    if cls.height_case is HeightCase.EQUAL_HEIGHTS_NON_ISOTRIVIAL:
        return [B.part2_bound(phi, levels, True)]
    out = [B.part3_count_bound(phi), B.pink_bound(phi)]
    cand = isotrivial_candidate_levels(phi, max_level)
    if cand.complete:
        out.append(B.part3_localized_bound(cand, levels))
    return out


def _index_dict(levels, max_level: int) -> dict:
    fin = B.finite_level_index(levels, max_level)
    lower = B.exact_deficit_sum(levels)
    cond = B.accumulate_index(levels, True, max_level + 1).log2_bound
    return {
        "finite_level": {"level": fin.level, "log2_lower": fin.lower, "log2_upper": fin.upper,
                         "exact": fin.exact},
        "log2_lower": lower,
        "log2_conditional_upper": cond,
        "assumes_maximal_from": max_level + 1,
        "sharp_log2": lower if lower == cond else None,
    }


def _identities(phi: QuadMap, max_level: int) -> dict:
    curve = [{"n": n, "holds": verify_curve_identity(phi, n).holds}
             for n in range(2, min(max_level, CURVE_CHECK_MAX) + 1)]
    tower = discriminant_tower(phi, min(max_level, 4))
    return {
        "curve": curve,
        "discriminant": {
            "steps": [{"m": s.m, "sign": s.sign, "exponent": s.exponent} for s in tower.steps],
            "law": "Delta_m = -4 * phi(gamma) for m = 1, "
                   "Delta_m = 2^(2^m) * Delta_(m-1)^2 * phi^m(gamma) for m >= 2",
            "law_holds": tower.law_holds(),
        },
    }


def _analyse(phi: QuadMap, max_level: int, pcf_bound: int, modular: bool, timings: dict):
    t0 = time.perf_counter()
    cls = classify(phi, pcf_bound)
    timings["classify"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    cert = certify(phi, cls)
    timings["stability"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    levels = []
    if cert.is_stable:
        levels = [certify_level(phi, n, cert, modular=modular) for n in range(1, max_level + 1)]
    timings["levels"] = time.perf_counter() - t0
    return cls, cert, levels


def _base_change_section(phi: QuadMap, f_text: str, phi_cond: int, config: RunConfig,
                         base_bounds: list, timings: dict) -> dict:
    f = parse_ratfunc(f_text)
    psi = base_change(phi, f)
    fac = factor_quadratic(psi)
    out = {
        "f": render(f),
        "map": {"gamma": render(psi.gamma), "c": render(psi.c)},
        "factorization": {
            "irreducible": fac.irreducible,
            "linear_factors": fac.linear_factors(),
        },
        "bounds": [_bound_dict(B.base_change_bound(b, f)) for b in base_bounds
                   if b.kind is not B.BoundKind.PART3_COUNT],
    }
    hf = height(f)
    upper = None if phi_cond is None else phi_cond + B.ceil_log2(hf)
    out["log2_conditional_upper"] = upper
    if not psi.is_polynomial or not fac.irreducible:
        out["index"] = None
        return out
    sub = psi.to_polynomial_map()
    cls, cert, levels = _analyse(sub, config.max_level, config.pcf_bound,
                                 config.modular_fastpath, {})
    out["stability"] = _stability_dict(cert)
    out["levels"] = [_level_dict(r) for r in levels]
    if cert.is_stable:
        lower = B.exact_deficit_sum(levels)
        fin = B.finite_level_index(levels, config.max_level)
        out["index"] = {
            "log2_lower": lower,
            "log2_conditional_upper": upper,
            "sharp_log2": lower if lower == upper else None,
            "finite_level": {"level": fin.level, "log2_lower": fin.lower,
                             "log2_upper": fin.upper, "exact": fin.exact},
        }
    else:
        out["index"] = None
    return out


def run_classify(config: RunConfig) -> Report:
    """Full pipeline for one map.  Raises ParseError on unreadable input."""
    phi = QuadMap(parse_poly(config.gamma_text), parse_poly(config.c_text))
    timings = {}
    cls, cert, levels = _analyse(phi, config.max_level, config.pcf_bound,
                                 config.modular_fastpath, timings)
    t0 = time.perf_counter()
    bounds = _select_bounds(phi, cls, levels, cert.is_stable, config.max_level)
    index = _index_dict(levels, config.max_level) if cert.is_stable else None
    identities = _identities(phi, config.max_level) if phi.h_c > 0 or phi.h_gamma > 0 else {}
    timings["bounds"] = time.perf_counter() - t0

    bc = None
    if config.base_change_f is not None:
        t0 = time.perf_counter()
        phi_cond = index["log2_conditional_upper"] if index else None
        bc = _base_change_section(phi, config.base_change_f, phi_cond, config, bounds, timings)
        timings["base_change"] = time.perf_counter() - t0

    return Report(
        map={"gamma": render(phi.gamma), "c": render(phi.c),
             "h_gamma": phi.h_gamma, "h_c": phi.h_c, "h_b": phi.h_b},
        classification=_class_dict(cls),
        stability=_stability_dict(cert),
        levels=[_level_dict(r) for r in levels],
        bounds=[_bound_dict(b) for b in bounds],
        identities=identities,
        index=index,
        base_change=bc,
        timings=timings,
    )


# -- text rendering ------------------------------------------------------------


def render_text(rep: Report, show_timings: bool = False) -> str:
    m = rep.map
    lines = [f"map: (x - ({m['gamma']}))^2 + ({m['c']})",
             f"heights: h(gamma) = {m['h_gamma']}, h(c) = {m['h_c']}, h(gamma - c) = {m['h_b']}"]
    cl = rep.classification
    lines.append(f"class: {cl['height_case']}, isotrivial = {cl['isotrivial']}, "
                 f"pcf = {cl['pcf']['kind']} ({cl['pcf']['witness']})")
    st = rep.stability
    line = f"stability: {st['verdict']} (method {st['method']}, checked {st['checked_bound']})"
    if st["square_at"] is not None:
        line += f", square at n = {st['square_at']}"
    if st["reason"]:
        line += f": {st['reason']}"
    lines.append(line)
    for lv in rep.levels:
        d = "" if lv["deficit"] is None else f", deficit {lv['deficit']}"
        lines.append(f"level {lv['n']}: {lv['verdict']}{d} [{lv['method']}] {lv['witness']['description']}")
    for b in rep.bounds:
        t = "" if b["threshold_level"] is None else f", threshold {b['threshold_level']}"
        lines.append(f"bound {b['kind']}: {b['log2_bound']}{t}")
    if rep.index:
        ix = rep.index
        lines.append(f"index: log2 lower {ix['log2_lower']}, conditional upper "
                     f"{ix['log2_conditional_upper']} (levels >= {ix['assumes_maximal_from']} "
                     f"assumed maximal), sharp {ix['sharp_log2']}")
    idn = rep.identities
    if idn:
        lines.append("curve identity: " + ", ".join(f"n={c['n']} {c['holds']}" for c in idn["curve"]))
        steps = ", ".join(f"m={s['m']} ({s['sign']}, {s['exponent']})"
                          for s in idn["discriminant"]["steps"])
        lines.append(f"discriminant steps: {steps}; law holds {idn['discriminant']['law_holds']}")
    if rep.base_change is not None:
        bc = rep.base_change
        lines.append(f"base change f = {bc['f']}: (x - ({bc['map']['gamma']}))^2 + ({bc['map']['c']})")
        fac = bc["factorization"]
        if fac["irreducible"]:
            lines.append("  irreducible over Q(t)")
        else:
            lines.append("  reducible: " + " * ".join(f"({x})" for x in fac["linear_factors"]))
        for lv in bc.get("levels", []):
            d = "" if lv["deficit"] is None else f", deficit {lv['deficit']}"
            lines.append(f"  level {lv['n']}: {lv['verdict']}{d}")
        for b in bc["bounds"]:
            lines.append(f"  bound {b['kind']}: {b['log2_bound']} (factor {b['factor']})")
        if bc.get("index"):
            ix = bc["index"]
            lines.append(f"  index: log2 lower {ix['log2_lower']}, conditional upper "
                         f"{ix['log2_conditional_upper']}, sharp {ix['sharp_log2']}")
    if show_timings:
        lines.append("timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in sorted(rep.timings.items())))
    lines.append(f"version: {__version__}")
    return "\n".join(lines)


# -- argument handling ---------------------------------------------------------


def _parser(batch_line: bool = False) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arboreal", exit_on_error=False,
                                description="Arboreal Galois analysis of (x - gamma)^2 + c over Q(t).")
    p.add_argument("--gamma", required=batch_line, help="gamma(t), a polynomial")
    p.add_argument("--c", required=batch_line, help="c(t), a polynomial")
    p.add_argument("--max-level", type=int, default=10)
    p.add_argument("--pcf-bound", type=int, default=64)
    p.add_argument("--base-change", metavar="F", help="rational function f for phi_f")
    p.add_argument("--output", choices=("text", "json"), default="text")
    p.add_argument("--no-modular", action="store_true", help="exact gcd route at every level")
    if not batch_line:
        p.add_argument("--batch", metavar="FILE", help="one flag set per line")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--timings", action="store_true", help="append timings to text output")
    return p


_VALUE_FLAGS = ("--gamma", "--c", "--base-change")


def _join_values(argv):
    # polynomials such as "-t^2-1" look like options to argparse
    out, it = [], iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _config(ns, output=None) -> RunConfig:
    return RunConfig(ns.gamma, ns.c, ns.max_level, ns.pcf_bound, not ns.no_modular,
                     output or ns.output, ns.base_change)


def _batch_one(args):
    lineno, line, output = args
    try:
        ns = _parser(batch_line=True).parse_args(_join_values(shlex.split(line)))
        rep = run_classify(_config(ns, output))
    except (ParseError, argparse.ArgumentError, ValueError) as exc:
        return lineno, None, str(exc)
    except SystemExit:
        return lineno, None, "invalid flags"
    return lineno, rep, None


def run_batch(path: str, output: str = "json", workers: int = 1):
    """Yield (line number, Report or None, error or None) in input order."""
    with open(path) as fh:
        jobs = [(i, line.strip(), output) for i, line in enumerate(fh, 1)
                if line.strip() and not line.lstrip().startswith("#")]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(_batch_one, jobs)
    else:
        for job in jobs:
            yield _batch_one(job)


def main(argv=None) -> int:
    parser = _parser()
    try:
        ns = parser.parse_args(_join_values(sys.argv[1:] if argv is None else argv))
    except argparse.ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if ns.batch:
            for lineno, rep, err in run_batch(ns.batch, ns.output, ns.workers):
                if err is not None:
                    rec = {"line": lineno, "error": err}
                    print(json.dumps(rec, sort_keys=True) if ns.output == "json"
                          else f"line {lineno}: error: {err}")
                elif ns.output == "json":
                    print(json.dumps({"line": lineno, **rep.to_dict()}, sort_keys=True))
                else:
                    print(f"# line {lineno}\n{rep.to_text(ns.timings)}\n")
            return EXIT_OK
        if ns.gamma is None or ns.c is None:
            print("error: --gamma and --c are required", file=sys.stderr)
            return EXIT_PARSE
        config = _config(ns)
        rep = run_classify(config)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(rep.to_json() if ns.output == "json" else rep.to_text(ns.timings))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
