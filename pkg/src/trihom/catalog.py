"""The catalog of confining parametrizations and its verification.

Entries live in ``data/catalog.json``.  Each printed entry stores one
arithmetic expression per symbol, in ``n`` and the free constants ``alpha,
beta, gamma, delta``, using the periodic families ``phiM``, ``chiM``,
``psi6``, ``omega9``, ``omega6`` (a trailing ``t`` names an independent
copy, e.g. ``phi3t``).  Arguments of periodic functions must be ``n`` plus
an integer.  Entries whose printed text needed a fix keep both readings.

Derived entries instead carry the basis of a solved space.
"""
from __future__ import annotations

import ast
import json
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

from .confinement import (ConstraintSystem, SolutionSpace, generate_constraints, solve_constraints,
                          verify_membership)
from .patterns import EXIT_CLASSES, SingularityPattern, make_pattern, parse_pattern
from .sequences import PeriodicComponent, QuasiPeriodicSequence, component_arity, lcm

SYMBOLS = ("z", "zeta", "A", "B", "C", "D")
FORMAT_VERSION = 1
DEFAULT_SEED = 20240601

_FAMILY = re.compile(r"^(phi\d+|chi\d+|psi6|omega9|omega6)(t?)$")
#: period of the stand-in used for function names outside the known families
_UNKNOWN_PERIOD = 11


class CatalogError(ValueError):
    pass


class ExpressionError(CatalogError):
    pass


def random_rational(rng: random.Random, bound: int = 100) -> Fraction:
    while True:
        v = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if v:
            return v


class Instantiation:
    """Fixed random values for the free constants and periodic functions of one entry."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.constants = {}
        self.functions = {}
        self.unknown = []

    def constant(self, name: str) -> Fraction:
        if name not in self.constants:
            self.constants[name] = random_rational(self.rng)
        return self.constants[name]

    def function(self, name: str) -> QuasiPeriodicSequence:
        if name not in self.functions:
            m = _FAMILY.match(name)
            if m:
                kind = m.group(1)
                coeffs = [random_rational(self.rng) for _ in range(component_arity(kind))]
                self.functions[name] = PeriodicComponent(kind, coeffs).sequence()
            else:
                # an unidentified function symbol is read as a generic periodic function
                self.unknown.append(name)
                self.functions[name] = QuasiPeriodicSequence(
                    0, [random_rational(self.rng) for _ in range(_UNKNOWN_PERIOD)])
        return self.functions[name]


_N = QuasiPeriodicSequence.linear(1)


def _scalar(v) -> bool:
    return isinstance(v, Fraction)


def _evaluate(node, env: Instantiation):
    if isinstance(node, ast.Expression):
        return _evaluate(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        return _N if node.id == "n" else env.constant(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _evaluate(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        a, b = _evaluate(node.left, env), _evaluate(node.right, env)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            if not (_scalar(a) or _scalar(b)):
                raise ExpressionError("product of two n-dependent terms")
            return a * b
        if isinstance(node.op, ast.Div):
            if not _scalar(b):
                raise ExpressionError("division by an n-dependent term")
            return a / b
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1 and not node.keywords:
        arg = _evaluate(node.args[0], env)
        if _scalar(arg) or arg.slope != 1 or arg.period != 1 or arg.table[0].denominator != 1:
            raise ExpressionError(f"argument of {node.func.id} is not n plus an integer")
        return env.function(node.func.id).shift(int(arg.table[0]))
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def evaluate_expression(text: str, env: Instantiation) -> QuasiPeriodicSequence:
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}") from exc
    v = _evaluate(tree, env)
    return QuasiPeriodicSequence.constant(v) if _scalar(v) else v


@dataclass
class CatalogEntry:
    id: str
    pattern: SingularityPattern
    crossRef: str
    source: str
    status: str
    formulas: Optional[dict]
    corrections: list = field(default_factory=list)
    readings: list = field(default_factory=list)
    space: Optional[dict] = None

    @property
    def corrected(self) -> bool:
        return self.status == "corrected"

    def printed_formulas(self) -> dict:
        """Formulas as printed (differs from :attr:`formulas` only for corrected entries)."""
        out = dict(self.formulas)
        for c in self.corrections:
            out[c["symbol"]] = c["printed"]
        return out

    def reading(self, which: str = "used") -> dict:
        if which == "used":
            return dict(self.formulas)
        if which == "printed":
            return self.printed_formulas()
        raise ValueError(f"unknown reading {which!r}")

    def instantiate(self, seed=DEFAULT_SEED, reading: str = "used") -> dict:
        """The six sequences for fixed pseudo-random parameter values."""
        rng = random.Random(f"{seed}:{self.id}")
        if self.source == "derived":
            basis = self.space["basis"]
            coords = [random_rational(rng) for _ in basis]
            out = {}
            for s in SYMBOLS:
                seqs = [QuasiPeriodicSequence.from_record(b[s]) for b in basis]
                total = QuasiPeriodicSequence()
                for c, q in zip(coords, seqs):
                    total = total + q.scale(c)
                out[s] = total.with_label(s)
            return out
        env = Instantiation(rng)
        forms = self.reading(reading)
        return {s: evaluate_expression(forms[s], env).with_label(s) for s in SYMBOLS}

    def records(self, seed=DEFAULT_SEED) -> dict:
        return {s: q.to_record() for s, q in self.instantiate(seed).items()}

    def to_json(self) -> dict:
        out = {"id": self.id, "pattern": self.pattern.to_json(), "crossRef": self.crossRef,
               "source": self.source, "status": self.status}
        if self.formulas is not None:
            out["formulas"] = self.formulas
        if self.corrections:
            out["corrections"] = self.corrections
        if self.readings:
            out["readings"] = self.readings
        return out


def _entry_from_json(d: dict) -> CatalogEntry:
    p = make_pattern(d["parity"], d["class"], d["steps"])
    if p.exits.assignment != d["exits"]:
        raise CatalogError(f"{d['id']}: exit map does not match class {d['class']}")
    if p.id != d["id"]:
        raise CatalogError(f"{d['id']}: id does not match its pattern {p.id}")
    return CatalogEntry(d["id"], p, d.get("crossRef", ""), d["source"], d["status"], d.get("formulas"),
                        d.get("corrections", []), d.get("readings", []), d.get("space"))


def load_catalog(path=None) -> list:
    if path is None:
        text = resources.files("trihom").joinpath("data/catalog.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    doc = json.loads(text)
    if doc.get("format") != "trihom-catalog" or doc.get("version") != FORMAT_VERSION:
        raise CatalogError("unsupported catalog format")
    return [_entry_from_json(d) for d in doc["entries"]]


@lru_cache(maxsize=None)
def _cached() -> tuple:
    return tuple(load_catalog())


def catalog_list(source: Optional[str] = None) -> list:
    entries = list(_cached())
    if source is not None:
        entries = [e for e in entries if e.source == source]
    return entries


def catalog_entry(entry_id: str) -> CatalogEntry:
    try:
        want = parse_pattern(entry_id).id
    except ValueError:
        want = entry_id
    for e in _cached():
        if e.id == want:
            return e
    raise KeyError(entry_id)


# verification ----------------------------------------------------------------

@dataclass
class VerifyResult:
    entry: str
    reading: str
    passed: bool
    period: Optional[int] = None
    relation: Optional[str] = None
    n: Optional[int] = None
    residual: Optional[Fraction] = None
    error: Optional[str] = None

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return f"{self.entry} [{self.reading}] pass (period {self.period})"
        if self.error:
            return f"{self.entry} [{self.reading}] fail: {self.error}"
        return f"{self.entry} [{self.reading}] fail: {self.relation} residual {self.residual} at n={self.n}"

    def to_json(self) -> dict:
        out = {"entry": self.entry, "reading": self.reading, "pass": self.passed}
        if self.period is not None:
            out["period"] = self.period
        if not self.passed:
            if self.error:
                out["error"] = self.error
            else:
                out.update(relation=self.relation, n=self.n, residual=str(self.residual))
        return out


def check_assignment(cs: ConstraintSystem, assign: dict, label: str, reading: str) -> VerifyResult:
    L = lcm(*(q.period for q in assign.values()))
    bad = cs.first_residual(assign, range(2 * L))
    if bad is None:
        return VerifyResult(label, reading, True, L)
    rel, n, v = bad
    return VerifyResult(label, reading, False, L, rel, n, v)


def catalog_verify(entry: CatalogEntry, seed=DEFAULT_SEED, reading: str = "used",
                   pattern: Optional[SingularityPattern] = None) -> VerifyResult:
    """Substitute the instantiated formulas into the entry's constraints.

    Every relation is evaluated at ``n = 0 .. 2L-1`` where ``L`` is the
    common period; failures are returned as data.
    """
    pattern = pattern or entry.pattern
    try:
        assign = entry.instantiate(seed, reading)
    except ExpressionError as exc:
        return VerifyResult(entry.id, reading, False, error=str(exc))
    return check_assignment(generate_constraints(pattern), assign, entry.id, reading)


def literal_reading_fails(entry: CatalogEntry, seed=DEFAULT_SEED) -> bool:
    """For a corrected entry, whether the printed text fails verification."""
    return not catalog_verify(entry, seed, "printed").passed


def adjudicate_class(entry: CatalogEntry, seed=DEFAULT_SEED) -> list:
    """Class indices (same parity and step order) whose constraints the formulas satisfy."""
    out = []
    for k, exits in enumerate(EXIT_CLASSES[entry.pattern.parity], 1):
        try:
            p = SingularityPattern(exits, entry.pattern.steps)
        except ValueError:
            continue
        if catalog_verify(entry, seed, pattern=p).passed:
            out.append(k)
    return out


@lru_cache(maxsize=None)
def _solved(pattern_id: str, ceiling: int) -> SolutionSpace:
    return solve_constraints(generate_constraints(parse_pattern(pattern_id)), ceiling)


def entry_membership(entry: CatalogEntry, seed=DEFAULT_SEED, ceiling: int = 2520) -> bool:
    """Whether the instantiated family lies in the solved space of its pattern."""
    space = _solved(entry.pattern.id, ceiling)
    return verify_membership(space, entry.instantiate(seed))
