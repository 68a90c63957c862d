"""Command-line front end: ``trihom <command> [flags]``.

Global flags may also be set through the environment: ``TRIHOM_SEED``,
``TRIHOM_EPS_ORDER``, ``TRIHOM_PERIOD_CEILING`` and ``TRIHOM_FORMAT``.
JSON output is deterministic and writes every rational as an exact string.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from . import catalog as cat
from .arith import DEFAULT_ORDER, PrecisionExhausted
from .confinement import DEFAULT_CEILING, InfeasibleSystem, generate_constraints, generic_system, solve_constraints
from .dynamics import (ConfinementReport, ParamSystem, broken, check_confinement, degree_growth,
                       degree_ratios, random_param_system)
from .patterns import (EXIT_CLASSES, Parity, PatternSyntaxError, ParityViolation, enumerate_patterns,
                       autonomous_feasibility, classify_parity, enumerate_quartets, multiset_feasibility,
                       parse_pattern)
from .sequences import QuasiPeriodicSequence

SCHEMA_VERSION = 1
ENV_PREFIX = "TRIHOM_"


class UsageError(Exception):
    pass


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, QuasiPeriodicSequence):
        return o.to_record()
    raise TypeError(f"cannot serialise {type(o).__name__}")


def dumps(doc: dict) -> str:
    return json.dumps(doc, default=_json_default, sort_keys=True, indent=2)


def _env(name: str, default, conv=str):
    v = os.environ.get(ENV_PREFIX + name)
    if v is None:
        return default
    try:
        return conv(v)
    except ValueError as exc:
        raise UsageError(f"bad value for {ENV_PREFIX}{name}: {v!r}") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="trihom", description="Singularity patterns and confining deautonomisations "
                                            "of the asymmetric trihomographic mapping.")
    ap.add_argument("--seed", type=int, default=None, help="rng seed (default 0)")
    ap.add_argument("--eps-order", type=int, default=None, help="initial eps-series order (default 12)")
    ap.add_argument("--period-ceiling", type=int, default=None, help="solver period (default 2520)")
    ap.add_argument("--format", choices=("text", "json"), default=None)
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("enumerate", help="list step quartets or patterns with feasibility")
    p.add_argument("--parity", choices=[q.value for q in Parity])
    p.add_argument("--class", dest="klass", choices=["1", "2", "3", "i", "ii", "iii"])
    p.add_argument("--ordered", action="store_true", help="all ordered quartets")
    p.add_argument("--patterns", action="store_true", help="canonical patterns instead of multisets")

    p = sub.add_parser("solve", help="solve the confinement constraints of a pattern")
    p.add_argument("pattern", help="pattern id (odd.c1.7-7-1-1), listing, or 'generic'")
    p.add_argument("--ladder", action="store_true", help="report the dimension at each rung")

    p = sub.add_parser("verify-catalog", help="check catalog entries against their constraints")
    p.add_argument("--entry", action="append", default=[], help="restrict to these entries")
    p.add_argument("--skip-membership", action="store_true")
    p.add_argument("--literal", action="store_true", help="also report the printed reading of corrected entries")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("simulate", help="dual-run singularity confinement test")
    p.add_argument("target", help="catalog entry id or 'generic'")
    p.add_argument("--entry", default=None, help="entry point (default A, or A1 for generic)")
    p.add_argument("--n0", type=int, default=0)
    p.add_argument("--steps", type=int, default=None, help="half-step budget")
    p.add_argument("--broken", action="store_true", help="perturb C at the residue of the exit")
    p.add_argument("--no-trace", action="store_true")

    p = sub.add_parser("degree", help="degree growth over a prime field")
    p.add_argument("target", help="catalog entry id")
    p.add_argument("--steps", type=int, default=14)
    p.add_argument("--n0", type=int, default=0)
    p.add_argument("--broken", action="store_true", help="perturb C at every residue")
    return ap


def _class_index(text: Optional[str]) -> Optional[int]:
    return None if text is None else {"1": 1, "i": 1, "2": 2, "ii": 2, "3": 3, "iii": 3}[text]


# commands -----------------------------------------------------------------

def cmd_enumerate(args, cfg) -> tuple:
    parity = Parity(args.parity) if args.parity else None
    klass = _class_index(args.klass)
    if klass is not None and parity is not None and klass > len(EXIT_CLASSES[parity]):
        raise UsageError(f"{parity.value} patterns have classes 1..{len(EXIT_CLASSES[parity])}")
    if args.ordered:
        qs = [q for q in enumerate_quartets(ordered=True) if parity is None or classify_parity(q) == parity]
        items = [{"steps": list(q.steps), "parity": classify_parity(q).value} for q in qs]
        lines = [f"{{{','.join(map(str, q.steps))}}} {classify_parity(q).value}" for q in qs]
        return {"kind": "quartets", "count": len(items), "items": items}, lines, 0
    if args.patterns:
        items, lines = [], []
        for pat in enumerate_patterns(parity, klass):
            f = autonomous_feasibility(pat)
            items.append({"pattern": pat.to_json(), "feasible": f.feasible, "reason": f.reason})
            lines.append(f"{pat.listing()}  {f}")
        return {"kind": "patterns", "count": len(items), "items": items}, lines, 0
    items, lines = [], []
    for q in enumerate_quartets(ordered=False):
        if parity is not None and classify_parity(q) != parity:
            continue
        ks = [klass] if klass is not None else range(1, len(EXIT_CLASSES[classify_parity(q)]) + 1)
        if klass is not None and klass > len(EXIT_CLASSES[classify_parity(q)]):
            continue
        verdicts = {}
        for k in ks:
            ok, all_ = multiset_feasibility(classify_parity(q), k, q.steps)
            verdicts[str(k)] = {"feasible": bool(ok), "orderings": len(all_),
                                "feasibleOrderings": [list(p.steps) for p in ok]}
        items.append({"steps": list(q.steps), "parity": classify_parity(q).value, "classes": verdicts})
        text = "  ".join(f"class{k}: {'feasible' if v['feasible'] else 'infeasible'}" for k, v in verdicts.items())
        lines.append(f"{classify_parity(q).label} {{{','.join(map(str, q.steps))}}}  {text}")
    doc = {"kind": "multisets", "count": len(items), "items": items}
    if klass is not None:
        doc["feasibleCount"] = sum(1 for i in items if i["classes"][str(klass)]["feasible"])
    return doc, lines, 0


def _system_for(target: str):
    if target == "generic":
        return generic_system()
    return generate_constraints(parse_pattern(target))


def cmd_solve(args, cfg) -> tuple:
    cs = _system_for(args.pattern)
    doc = {"system": cs.to_json()}
    try:
        space = solve_constraints(cs, cfg["period_ceiling"], ladder=args.ladder)
    except InfeasibleSystem as exc:
        doc.update(feasible=False, reason=str(exc), certificate=exc.certificate)
        lines = [f"{args.pattern}: infeasible ({exc})", "certificate:"]
        for c in exc.certificate:
            rels = sorted({str(t["relation"]) for t in c["combination"]})
            lines.append(f"  {c['functional']} = 0 follows from {len(c['combination'])} residue rows of "
                         f"{', '.join(rels)} (full combination in --format json)")
        return doc, lines, 1
    doc.update(feasible=True, space=space.to_json())
    lines = [f"{args.pattern}: feasible, dimension {space.dimension} at period {space.period}"
             f" (requested {space.requested_period})"]
    if space.ladder:
        lines.append("ladder: " + ", ".join(f"L={L}:{d}" for L, d in space.ladder))
    if space.hint:
        lines.append(f"hint: {space.hint}")
    for c in cs.relations():
        lines.append(f"  {getattr(c, 'label', '')}: {c}")
    return doc, lines, 0


def _verify_one(args: tuple) -> dict:
    entry_id, seed, literal, membership, ceiling = args
    e = cat.catalog_entry(entry_id)
    r = cat.catalog_verify(e, seed)
    out = {"entry": e.id, "source": e.source, "status": e.status, "verify": r.to_json()}
    if literal and e.corrected:
        out["literal"] = cat.catalog_verify(e, seed, "printed").to_json()
    if membership:
        out["membership"] = cat.entry_membership(e, seed, ceiling)
    return out


def cmd_verify_catalog(args, cfg) -> tuple:
    entries = cat.catalog_list()
    if args.entry:
        want = set()
        for w in args.entry:
            try:
                want.add(parse_pattern(w).id)
            except ValueError:
                want.add(w)
        entries = [e for e in entries if e.id in want]
    jobs = [(e.id, cfg["seed"], args.literal, not args.skip_membership, cfg["period_ceiling"]) for e in entries]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_verify_one, jobs))
    else:
        results = [_verify_one(j) for j in jobs]
    lines, bad_verbatim = [], 0
    for r in results:
        ok = r["verify"]["pass"] and r.get("membership", True)
        if not ok and r["status"] == "verbatim":
            bad_verbatim += 1
        tag = "pass" if ok else "FAIL"
        extra = "" if r["verify"]["pass"] else f" ({r['verify'].get('error') or r['verify'].get('relation')})"
        if "membership" in r:
            extra += f" membership={'yes' if r['membership'] else 'no'}"
        if "literal" in r:
            extra += f" literal={'pass' if r['literal']['pass'] else 'fail'}"
        lines.append(f"{r['entry']} [{r['status']}] {tag}{extra}")
    passed = sum(1 for r in results if r["verify"]["pass"] and r.get("membership", True))
    lines.append(f"{passed}/{len(results)} pass")
    doc = {"count": len(results), "passed": passed, "results": results}
    return doc, lines, 1 if bad_verbatim else 0


def _instance(target: str, cfg):
    rng = random.Random(cfg["seed"])
    if target == "generic":
        space = solve_constraints(generic_system(), cfg["period_ceiling"])
        return random_param_system(space, rng), None
    e = cat.catalog_entry(target)
    return ParamSystem.from_assignment(e.instantiate(cfg["seed"])), e.pattern


def cmd_simulate(args, cfg) -> tuple:
    p, pattern = _instance(args.target, cfg)
    entry = args.entry or ("A1" if pattern is None else "A")
    if pattern is None and entry in ("A", "C"):
        entry += "1"
    if pattern is None:
        if entry not in p.names_x:
            raise UsageError(f"generic entries are {', '.join(p.names_x)}")
        length, exit_ = 1, "C" + entry[1:]
    else:
        if entry not in "ABCD" or len(entry) != 1:
            raise UsageError("entry must be one of A, B, C, D")
        length, exit_ = pattern.length(entry), pattern.exits[entry]
    if args.broken:
        start = 0 if entry in ("A", "B") or pattern is None else 1
        residue = args.n0 + (start + length) // 2
        if pattern is None:
            i = p.names_y.index(exit_)
            q = p.ys[i]
            table = list(q.table)
            table[residue % q.period] += Fraction(1, 3)
            p.ys[i] = QuasiPeriodicSequence(q.slope, table)
        else:
            p = broken(p, residue)
    rng = random.Random(f"{cfg['seed']}:seeds")
    seeds = (Fraction(rng.randint(-99, 99), rng.randint(1, 99)), Fraction(rng.randint(-99, 99), rng.randint(1, 99)))
    if seeds[0] == seeds[1]:
        seeds = (seeds[0], seeds[0] + 1)
    steps = args.steps if args.steps is not None else length + 4
    try:
        rep = check_confinement(p, entry, args.n0, length, exit_, steps, seeds, cfg["eps_order"])
    except PrecisionExhausted as exc:
        doc = {"target": args.target, "entry": entry, "error": str(exc)}
        return doc, [f"{args.target} entry {entry}: precision exhausted ({exc})"], 1
    doc = {"target": args.target, "broken": args.broken, "report": rep.to_json()}
    if args.no_trace:
        doc["report"].pop("trace")
    lines = [_describe_report(args.target, rep)]
    if not args.no_trace:
        lines += [f"  h={t['step']}: {t['limits'][0]} | {t['limits'][1]}" for t in rep.trace]
    return doc, lines, 0 if rep.confined else 1


def _describe_report(target: str, rep: ConfinementReport) -> str:
    if rep.exitStep is None:
        return (f"{target} entry {rep.entryPoint}: not confined within budget "
                f"(declared {rep.declaredLength} -> {rep.declaredExit})")
    verdict = "confined" if rep.confined else "NOT confined"
    return (f"{target} entry {rep.entryPoint}: {verdict} at step {rep.exitStep - rep.entryStep} via "
            f"{rep.exitPoint} (declared {rep.declaredLength} -> {rep.declaredExit}); "
            f"memory lost={rep.memoryLost} recovered={rep.memoryRecovered}; eps order {rep.epsOrder}")


def cmd_degree(args, cfg) -> tuple:
    if args.target == "generic":
        raise UsageError("degree growth is available for catalog entries")
    p, _ = _instance(args.target, cfg)
    if args.broken:
        p = broken(p, None)
    try:
        degs = degree_growth(p, args.n0, args.steps)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ratios = degree_ratios(degs)
    doc = {"target": args.target, "broken": args.broken, "degrees": degs, "ratios": ratios}
    lines = [f"{args.target}{' (broken)' if args.broken else ''}: degrees {' '.join(map(str, degs))}",
             "ratios " + " ".join(f"{float(r):.3f}" for r in ratios)]
    return doc, lines, 0


COMMANDS = {"enumerate": cmd_enumerate, "solve": cmd_solve, "verify-catalog": cmd_verify_catalog,
            "simulate": cmd_simulate, "degree": cmd_degree}


def run(argv=None) -> tuple:
    """``(exit code, output text)``; never raises for user errors."""
    try:
        args = build_parser().parse_args(argv)
        cfg = {"seed": args.seed if args.seed is not None else _env("SEED", 0, int),
               "eps_order": args.eps_order if args.eps_order is not None else _env("EPS_ORDER", DEFAULT_ORDER, int),
               "period_ceiling": (args.period_ceiling if args.period_ceiling is not None
                                  else _env("PERIOD_CEILING", DEFAULT_CEILING, int)),
               "format": args.format or _env("FORMAT", "text")}
        if cfg["format"] not in ("text", "json"):
            raise UsageError(f"unknown format {cfg['format']!r}")
        if cfg["period_ceiling"] < 1 or cfg["eps_order"] < 1:
            raise UsageError("period ceiling and eps order must be positive")
        doc, lines, code = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        return 2, f"trihom: error: {exc}\n"
    except (PatternSyntaxError, ParityViolation, KeyError) as exc:
        return 2, f"trihom: error: {exc}\n"
    if cfg["format"] == "json":
        doc = {"schema": f"trihom/{args.command}", "version": SCHEMA_VERSION, **doc}
        return code, dumps(doc) + "\n"
    return code, "\n".join(lines) + "\n"


def main(argv=None) -> int:
    code, text = run(argv)
    (sys.stderr if code == 2 else sys.stdout).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
