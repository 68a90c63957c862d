"""Regenerate src/trihom/data/catalog.json from the transcription files.

usage: python3 tools/build_catalog.py [PRINTED.txt CORRECTIONS.py]

Defaults to the transcription in tools/catalog_src/.
"""
import json
import runpy
import sys
from pathlib import Path

from trihom.confinement import generate_constraints, solve_constraints
from trihom.patterns import parse_pattern

READINGS = {
    "mixed.c1.3-6-1-6": [("zeta", "omega_9 n read as omega9(n)")],
    "mixed.c2.9-4-1-2": [("z", "phi_4 n read as phi4(n)")],
    "mixed.c2.7-4-1-4": [("z", "phi_5 n + phi_3 n read as phi5(n) + phi3(n)")],
}
STUBS = ["mixed.c1.1-12-1-2", "mixed.c1.1-10-1-4", "mixed.c1.1-8-1-6"]
SYMS = ["z", "zeta", "A", "B", "C", "D"]


def parse(path):
    out, cur = [], None
    for line in open(path):
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        if line.startswith("@"):
            head, cross = line[1:].split("|", 1)
            cur = {"id": head.strip(), "crossRef": cross.strip(), "printed": {}}
            out.append(cur)
        else:
            k, v = line.split(":", 1)
            cur["printed"][k.strip()] = v.strip()
    return out


def main(printed, corrections):
    corr = runpy.run_path(corrections)["CORR"]
    entries = []
    for e in parse(printed):
        p = parse_pattern(e["id"])
        fixes = corr.get(e["id"], [])
        formulas = dict(e["printed"])
        rec = []
        for sym, fixed, note in fixes:
            rec.append({"symbol": sym, "printed": formulas[sym], "corrected": fixed, "note": note})
            formulas[sym] = fixed
        entries.append({
            "id": p.id, "parity": p.parity.value, "class": p.klass, "steps": list(p.steps),
            "exits": p.exits.assignment, "crossRef": e["crossRef"], "source": "printed",
            "status": "corrected" if fixes else "verbatim",
            "formulas": {s: formulas[s] for s in SYMS},
            "corrections": rec,
            "readings": [{"symbol": s, "note": n} for s, n in READINGS.get(e["id"], [])],
        })
    for sid in STUBS:
        p = parse_pattern(sid)
        space = solve_constraints(generate_constraints(p))
        entries.append({
            "id": p.id, "parity": p.parity.value, "class": p.klass, "steps": list(p.steps),
            "exits": p.exits.assignment, "crossRef": "", "source": "derived", "status": "derived",
            "space": {"period": space.period,
                      "basis": [{s: b[s].to_record() for s in SYMS} for b in space.basis]},
            "corrections": [], "readings": [],
        })
    doc = {"format": "trihom-catalog", "version": 1,
           "parameters": "alpha, beta, gamma, delta: free rationals; a trailing t (phi3t) marks an independent copy",
           "entries": entries}
    out = Path(__file__).resolve().parents[1] / "src" / "trihom" / "data" / "catalog.json"
    out.write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n")
    print(f"wrote {len(entries)} entries to {out}")


if __name__ == "__main__":
    src = Path(__file__).resolve().parent / "catalog_src"
    args = sys.argv[1:3] or [src / "printed.txt", src / "corrections.py"]
    main(*map(str, args))
