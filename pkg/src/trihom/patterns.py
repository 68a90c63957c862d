"""Singularity patterns: step quartets, parity, exit classes, feasibility.

A pattern says, for each entry point ``A, B`` (x side) and ``C, D`` (y side),
through which point the singularity exits and after how many half-steps.
The four lengths ``(M, N, P, Q)`` attach to ``A, B, C, D`` in that order and
always sum to 16.  An odd length changes side, an even one keeps it.

Pattern ids look like ``odd.c2.9-1-5-1``; the roman class names used for the
mixed case (``ci``, ``cii``, ``ciii``) are accepted as aliases.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Iterator, Optional

POINTS = "ABCD"
X_SIDE = "AB"
Y_SIDE = "CD"
STEP_NAMES = "MNPQ"
TOTAL = 16


class ParityViolation(ValueError):
    pass


class PatternSyntaxError(ValueError):
    pass


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"
    MIXED = "mixed"

    @property
    def label(self) -> str:
        return {"even": "AllEven", "odd": "AllOdd", "mixed": "Mixed"}[self.value]


def side(point: str) -> str:
    return "x" if point[0] in X_SIDE else "y"


@dataclass(frozen=True)
class StepQuartet:
    steps: tuple

    def __post_init__(self):
        steps = tuple(int(s) for s in self.steps)
        if len(steps) != 4 or min(steps) < 1 or sum(steps) != TOTAL:
            raise ValueError(f"a step quartet is four positive integers summing to {TOTAL}, got {steps}")
        object.__setattr__(self, "steps", steps)

    def multiset(self) -> tuple:
        return tuple(sorted(self.steps, reverse=True))

    def __iter__(self):
        return iter(self.steps)

    def __str__(self):
        return "(" + ",".join(map(str, self.steps)) + ")"


@dataclass(frozen=True)
class ExitMap:
    """Exit point of each entry, stored as a 4-letter word in ``ABCD`` order."""

    word: str

    def __post_init__(self):
        if len(self.word) != 4 or sorted(self.word) != list(POINTS):
            raise ValueError(f"an exit map is a permutation of ABCD, got {self.word!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "ExitMap":
        return cls("".join(d[e] for e in POINTS))

    def __getitem__(self, entry: str) -> str:
        return self.word[POINTS.index(entry)]

    @property
    def assignment(self) -> dict:
        return dict(zip(POINTS, self.word))

    def __str__(self):
        return "{" + ", ".join(f"{e}->{f}" for e, f in zip(POINTS, self.word)) + "}"


EXIT_CLASSES = {
    Parity.EVEN: (ExitMap("ABCD"), ExitMap("ABDC"), ExitMap("BADC")),
    Parity.ODD: (ExitMap("CDAB"), ExitMap("CDBA")),
    Parity.MIXED: (ExitMap("CBAD"), ExitMap("CABD"), ExitMap("CADB")),
}

_CLASS_ALIASES = {"1": 1, "i": 1, "2": 2, "ii": 2, "3": 3, "iii": 3}


def classify_parity(q) -> Parity:
    steps = q.steps if isinstance(q, StepQuartet) else tuple(q)
    odd = sum(s % 2 for s in steps)
    if odd == 0:
        return Parity.EVEN
    if odd == 4:
        return Parity.ODD
    if odd == 2:
        return Parity.MIXED
    raise ParityViolation(f"{steps}: an odd number of odd parts cannot sum to {TOTAL}")


def enumerate_quartets(ordered: bool = True) -> list:
    """Compositions of 16 into four positive parts, or their multisets."""
    out = []
    for m in range(1, TOTAL - 2):
        for n in range(1, TOTAL - m - 1):
            for p in range(1, TOTAL - m - n):
                q = TOTAL - m - n - p
                if ordered or m >= n >= p >= q:
                    out.append(StepQuartet((m, n, p, q)))
    if not ordered:
        out.sort(key=lambda s: s.steps, reverse=True)
    return out


def enumerate_exit_classes(parity) -> list:
    return list(EXIT_CLASSES[Parity(parity)])


@dataclass(frozen=True)
class SingularityPattern:
    exits: ExitMap
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", StepQuartet(self.steps).steps)
        for e, s in zip(POINTS, self.steps):
            f = self.exits[e]
            if (side(e) != side(f)) != bool(s % 2):
                kind = "odd" if s % 2 else "even"
                raise ParityViolation(f"{e}->{f} with {kind} length {s}")

    @property
    def quartet(self) -> StepQuartet:
        return StepQuartet(self.steps)

    @property
    def parity(self) -> Parity:
        return classify_parity(self.steps)

    @property
    def klass(self) -> Optional[int]:
        """1-based index among the normalized classes, None for other exit maps."""
        try:
            return EXIT_CLASSES[self.parity].index(self.exits) + 1
        except ValueError:
            return None

    def length(self, entry: str) -> int:
        return self.steps[POINTS.index(entry)]

    def triples(self) -> tuple:
        return tuple((e, self.exits[e], s) for e, s in zip(POINTS, self.steps))

    @property
    def id(self) -> str:
        if self.klass is None:
            raise ValueError(f"exit map {self.exits} is not a normalized class")
        return f"{self.parity.value}.c{self.klass}.{'-'.join(map(str, self.steps))}"

    def listing(self) -> str:
        return f"{self.parity.label} class{self.klass} {{{','.join(map(str, self.steps))}}}"

    def to_json(self) -> dict:
        return {"id": self.id, "parity": self.parity.value, "class": self.klass,
                "steps": list(self.steps), "exits": self.exits.assignment}

    def __str__(self):
        return self.id if self.klass else f"{self.exits} {self.steps}"


def make_pattern(parity, klass: int, steps) -> SingularityPattern:
    parity = Parity(parity)
    classes = EXIT_CLASSES[parity]
    if not 1 <= klass <= len(classes):
        raise PatternSyntaxError(f"{parity.value} patterns have classes 1..{len(classes)}")
    p = SingularityPattern(classes[klass - 1], tuple(steps))
    if p.parity != parity:
        raise ParityViolation(f"steps {tuple(steps)} are {p.parity.value}, not {parity.value}")
    return p


_ID_RE = re.compile(r"^(even|odd|mixed)\.c(1|2|3|i|ii|iii)\.(\d+)-(\d+)-(\d+)-(\d+)$")
_LISTING_RE = re.compile(r"^(AllEven|AllOdd|Mixed)\s+class\s*(1|2|3|i|ii|iii)\s*\{\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\}$")


def parse_pattern(text: str) -> SingularityPattern:
    """Parse ``odd.c2.9-1-5-1`` (or ``AllOdd class2 {9,1,5,1}``)."""
    t = text.strip()
    m = _ID_RE.match(t)
    if m:
        parity = m.group(1)
    else:
        m = _LISTING_RE.match(t)
        if not m:
            raise PatternSyntaxError(f"cannot parse pattern {text!r}")
        parity = {"AllEven": "even", "AllOdd": "odd", "Mixed": "mixed"}[m.group(1)]
    steps = tuple(int(g) for g in m.groups()[2:])
    try:
        return make_pattern(parity, _CLASS_ALIASES[m.group(2)], steps)
    except ValueError as exc:
        raise PatternSyntaxError(f"{text!r}: {exc}") from exc


def orderings(parity, klass: int, multiset) -> list:
    """Every parity-consistent assignment of the multiset's parts to A, B, C, D."""
    exits = EXIT_CLASSES[Parity(parity)][klass - 1]
    out = []
    for steps in sorted(set(permutations(multiset)), reverse=True):
        try:
            out.append(SingularityPattern(exits, steps))
        except ParityViolation:
            pass
    return out


# symmetry -------------------------------------------------------------------

_SWAPS = ({}, {"A": "B", "B": "A"}, {"C": "D", "D": "C"}, {"A": "B", "B": "A", "C": "D", "D": "C"})
_MIRROR = {"A": "C", "B": "D", "C": "A", "D": "B"}


def symmetry_images(p: SingularityPattern) -> list:
    """Images under side-preserving relabelings and reversal with A<->C, B<->D.

    Only images whose exit map is one of the normalized classes are kept.
    Reversing the evolution turns ``E -> F in s`` into ``F' -> E' in s`` with
    the primes exchanging the two sides.
    """
    found = []
    for reverse in (False, True):
        for swap in _SWAPS:
            rel = lambda q: swap.get(q, q)
            exits, steps = {}, {}
            for e, f, s in p.triples():
                if reverse:
                    e, f = _MIRROR[f], _MIRROR[e]
                exits[rel(e)], steps[rel(e)] = rel(f), s
            try:
                img = SingularityPattern(ExitMap.from_dict(exits), tuple(steps[e] for e in POINTS))
            except (ParityViolation, ValueError):
                continue
            if img.klass is not None and img not in found:
                found.append(img)
    return found


def canonical(p: SingularityPattern) -> SingularityPattern:
    """Representative with the same class and the lexicographically largest steps."""
    same = [q for q in symmetry_images(p) if q.exits == p.exits] or [p]
    return max(same, key=lambda q: q.steps)


def enumerate_patterns(parity=None, klass: Optional[int] = None, dedup: bool = True) -> list:
    """All normalized patterns, one per symmetry orbit when ``dedup``."""
    out = []
    parities = [Parity(parity)] if parity else list(Parity)
    for par in parities:
        classes = range(1, len(EXIT_CLASSES[par]) + 1) if klass is None else [klass]
        for k in classes:
            if k > len(EXIT_CLASSES[par]):
                continue
            for q in enumerate_quartets(ordered=False):
                if classify_parity(q) != par:
                    continue
                for p in orderings(par, k, q.steps):
                    if dedup and canonical(p) != p:
                        continue
                    out.append(p)
    return out


# autonomous feasibility -----------------------------------------------------

def _rref(rows: list, ncols: int) -> list:
    rows = [list(r) for r in rows]
    out, col = [], 0
    for col in range(ncols):
        piv = next((r for r in rows if r[col] != 0), None)
        if piv is None:
            continue
        rows.remove(piv)
        piv = [v / piv[col] for v in piv]
        rows = [[a - r[col] * b for a, b in zip(r, piv)] for r in rows]
        out = [[a - r[col] * b for a, b in zip(r, piv)] for r in out]
        out.append(piv)
    return [r for r in out if any(r)] + [r for r in rows if any(r)]


def _left_null(mat: list) -> list:
    """Basis of ``{lam : lam^T mat = 0}``."""
    m, k = len(mat), len(mat[0])
    aug = [[mat[i][j] for i in range(m)] for j in range(k)]  # transpose: k x m
    red = _rref(aug, m)
    pivots = [next(j for j, v in enumerate(r) if v) for r in red]
    basis = []
    for free in (j for j in range(m) if j not in pivots):
        lam = [Fraction(0)] * m
        lam[free] = Fraction(1)
        for r, pc in zip(red, pivots):
            lam[pc] = -r[free]
        basis.append(lam)
    return basis


def _format_condition(row: list) -> str:
    """``row = [cM, cN, cP, cQ, c0]`` meaning ``cM*M + ... + c0 = 0``."""
    terms = []
    for c, name in zip(row[:4], STEP_NAMES):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        terms.append((sign, f"{mag}{name}"))
    lhs = "".join(f"{s}{t}" for s, t in terms).lstrip("+")
    return f"{lhs}={-row[4]}"


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    conditions: tuple
    violated: tuple

    @property
    def reason(self) -> str:
        return "; ".join(self.violated)

    def __bool__(self):
        return self.feasible

    def __str__(self):
        return "feasible" if self.feasible else f"infeasible ({self.reason})"


def feasibility_conditions(exits: ExitMap, odd: tuple) -> list:
    """Linear conditions on (M, N, P, Q) for a constant non-degenerate solution.

    With constant parameters and ``z + zeta`` normalised to 2, a length-s
    relation from the x side reads ``E + F - (s mod 2)*z = s - (s mod 2)`` and
    from the y side ``E + F + (s mod 2)*z = s + (s mod 2)``.  Every left-null
    combination of the coefficient rows must annihilate the right sides.
    Rows are ``[cM, cN, cP, cQ, c0]``, reduced and with the trivial
    ``M+N+P+Q=16`` removed.
    """
    cols = list(POINTS) + ["z"]
    mat, rhs = [], []
    for i, e in enumerate(POINTS):
        f = exits[e]
        r = [Fraction(0)] * 5
        r[cols.index(e)] += 1
        r[cols.index(f)] += 1
        sgn = 1 if side(e) == "x" else -1
        r[4] = Fraction(-sgn * odd[i])
        mat.append(r)
        form = [Fraction(0)] * 5
        form[i] = Fraction(1)
        form[4] = Fraction(-sgn * odd[i])
        rhs.append(form)
    mat.append([Fraction(1), Fraction(1), 0, 0, 0])
    rhs.append([0, 0, 0, 0, Fraction(4)])
    mat.append([0, 0, Fraction(1), Fraction(1), 0])
    rhs.append([0, 0, 0, 0, Fraction(4)])
    conds = []
    for lam in _left_null(mat):
        form = [sum(l * r[j] for l, r in zip(lam, rhs)) for j in range(5)]
        # the relation is sum lam_i * lhs_i = 0 = sum lam_i * rhs_i
        conds.append(form)
    total = [Fraction(1)] * 4 + [Fraction(-TOTAL)]
    red = _rref([[Fraction(v) for v in c] for c in conds], 5)
    red = [r for r in red if _rref([r, total], 5) != _rref([total], 5)]
    # a wider row implied by the narrower ones and the sum rule is redundant
    width = lambda r: sum(1 for v in r[:4] if v)
    for r in sorted(red, key=width, reverse=True):
        rest = [s for s in red if s is not r]
        if rest and width(r) > max(map(width, rest)) and len(_rref(rest + [total], 5)) == len(_rref(rest + [total, r], 5)):
            red = rest
    out = []
    for r in red:
        lead = next(v for v in r[:4] if v)
        out.append([v / lead for v in r])
    return out


def autonomous_feasibility(p: SingularityPattern) -> Feasibility:
    odd = tuple(s % 2 for s in p.steps)
    conds = feasibility_conditions(p.exits, odd)
    names, bad = [], []
    for row in conds:
        text = _format_condition(row)
        names.append(text)
        val = sum(c * s for c, s in zip(row[:4], p.steps)) + row[4]
        if val != 0:
            lhs = text.split("=")[0]
            bad.append(f"{text} required, {lhs}={val - row[4]}")
    return Feasibility(not bad, tuple(names), tuple(bad))


def multiset_feasibility(parity, klass: int, multiset) -> tuple:
    """``(feasible orderings, all orderings)`` of a multiset in one class."""
    pats = orderings(parity, klass, multiset)
    return [p for p in pats if autonomous_feasibility(p)], pats


def iter_all_patterns() -> Iterator[SingularityPattern]:
    """Every ordered, parity-consistent, normalized pattern (no dedup)."""
    for par, classes in EXIT_CLASSES.items():
        for k in range(1, len(classes) + 1):
            for q in enumerate_quartets(ordered=True):
                if classify_parity(q) == par:
                    try:
                        yield SingularityPattern(classes[k - 1], q.steps)
                    except ParityViolation:
                        pass
