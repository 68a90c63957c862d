"""Confinement constraints and their exact solution in quasi-periodic sequences.

A singularity entered through ``E`` at index ``n`` that exits through ``F``
after ``s`` half-steps gives ``E_n + F_{n+t} = (s consecutive terms of the
chain z_n, zeta_n, z_{n+1}, zeta_{n+1}, ...)``.  Entries on the x side start
the chain at ``z_n``, entries on the y side at ``zeta_n``.  Numbering the
chain by half-steps ``h`` (``z_m`` is ``h = 2m``, ``zeta_m`` is ``h = 2m+1``),
the exit index is ``floor((h_start + s) / 2)``.

Every relation is linear with constant coefficients, so a solution of the form
``slope*n + table[n mod L]`` reduces to a finite exact linear system: one
equation for the slopes and one per residue.  Only the cyclotomic factors of
the determinant of the system's symbol matrix ``P(T)`` can carry periodic
solutions, so the space at period ``L`` equals the space at
``gcd(L, L*)`` where ``L*`` collects those factors; this keeps the linear
algebra small even at the default ceiling 2520.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .arith import as_rational
from .patterns import POINTS, SingularityPattern, side
from .sequences import ZERO, QuasiPeriodicSequence, lcm, qps_linear_combine

SYMBOLS = ("z", "zeta", "A", "B", "C", "D")
PERIOD_LADDER = (1, 2, 6, 12, 60, 120, 840, 2520)
DEFAULT_CEILING = 2520


class InfeasibleSystem(ArithmeticError):
    """Every solution is degenerate (``z + zeta`` has no autonomous part)."""

    def __init__(self, message, certificate=None, space=None):
        super().__init__(message)
        self.certificate = certificate or []
        self.space = space


class PeriodTooSmall(UserWarning):
    pass


@dataclass(frozen=True, order=True)
class SymbolShift:
    symbol: str
    shift: int = 0

    def __str__(self):
        return f"{self.symbol}[{self.shift}]"


def _chain(start: int, length: int) -> tuple:
    """Half-step terms ``start .. start+length-1`` of z_0, zeta_0, z_1, ..."""
    return tuple(SymbolShift("z" if h % 2 == 0 else "zeta", h // 2) for h in range(start, start + length))


@dataclass(frozen=True)
class ConfinementConstraint:
    left: tuple
    right: tuple
    entry: str = ""
    exit: str = ""
    length: int = 0

    def terms(self) -> list:
        """``(coefficient, SymbolShift)`` with ``sum = 0``."""
        return [(Fraction(1), s) for s in self.left] + [(Fraction(-1), s) for s in self.right]

    @property
    def label(self) -> str:
        return f"{self.entry}->{self.exit}" if self.entry else str(self)

    def __str__(self):
        return f"{' + '.join(map(str, self.left))} = {'+'.join(map(str, self.right))}"


@dataclass(frozen=True)
class LinearRelation:
    terms_: tuple
    label: str = ""

    def terms(self) -> list:
        return list(self.terms_)

    def __str__(self):
        lhs = [t for t in self.terms_ if t[0] > 0]
        rhs = [(-c, s) for c, s in self.terms_ if c < 0]
        fmt = lambda ts: " + ".join(f"{s}" if c == 1 else f"{c}*{s}" for c, s in ts)
        return f"{fmt(lhs)} = {fmt(rhs)}"


def infinity_relations(x_points=("A", "B"), y_points=("C", "D")) -> tuple:
    """``sum x-points = 2(z_n + zeta_{n-1})``, ``sum y-points = 2(z_n + zeta_n)``."""
    one, two = Fraction(1), Fraction(2)
    rx = tuple((one, SymbolShift(p)) for p in x_points) + ((-two, SymbolShift("z")), (-two, SymbolShift("zeta", -1)))
    ry = tuple((one, SymbolShift(p)) for p in y_points) + ((-two, SymbolShift("z")), (-two, SymbolShift("zeta")))
    return (LinearRelation(rx, "inf-x"), LinearRelation(ry, "inf-y"))


@dataclass(frozen=True)
class ConstraintSystem:
    constraints: tuple
    infinity: tuple
    symbols: tuple = SYMBOLS
    pattern: Optional[SingularityPattern] = None

    def relations(self) -> list:
        return list(self.constraints) + list(self.infinity)

    def residuals(self, assign: dict) -> list:
        """``(label, residual sequence)`` per relation for an assignment of sequences."""
        out = []
        for rel in self.relations():
            seq = qps_linear_combine([(c, assign[s.symbol], s.shift) for c, s in rel.terms()])
            out.append((rel.label, seq))
        return out

    def is_satisfied(self, assign: dict) -> bool:
        return all(r.is_zero() for _, r in self.residuals(assign))

    def first_residual(self, assign: dict, window: Iterable[int]) -> Optional[tuple]:
        """First ``(relation label, n, value)`` with a nonzero residual."""
        window = list(window)
        for rel in self.relations():
            for n in window:
                v = sum((c * assign[s.symbol](n + s.shift) for c, s in rel.terms()), Fraction(0))
                if v != 0:
                    return rel.label, n, v
        return None

    def to_json(self) -> dict:
        out = {"symbols": list(self.symbols),
               "constraints": [{"entry": c.entry, "exit": c.exit, "length": c.length, "relation": str(c)}
                               for c in self.constraints],
               "infinity": [str(r) for r in self.infinity]}
        if self.pattern is not None and self.pattern.klass is not None:
            out["pattern"] = self.pattern.id
        return out


def make_constraint(entry: str, exit: str, length: int) -> ConfinementConstraint:
    start = 0 if side(entry) == "x" else 1
    t = (start + length) // 2
    return ConfinementConstraint((SymbolShift(entry), SymbolShift(exit, t)), _chain(start, length),
                                 entry, exit, length)


def generate_constraints(p: SingularityPattern) -> ConstraintSystem:
    cons = tuple(make_constraint(e, f, s) for e, f, s in p.triples())
    return ConstraintSystem(cons, infinity_relations(), SYMBOLS, p)


def generic_system(count: int = 8) -> ConstraintSystem:
    """Eight x-side points ``A1..A8`` and eight y-side ``C1..C8``, all confining in one step."""
    xs = tuple(f"A{i}" for i in range(1, count + 1))
    ys = tuple(f"C{i}" for i in range(1, count + 1))
    cons = []
    for a, c in zip(xs, ys):
        cons.append(make_constraint(a, c, 1))
        cons.append(make_constraint(c, a, 1))
    return ConstraintSystem(tuple(cons), infinity_relations(xs, ys), ("z", "zeta") + xs + ys)


# exact sparse linear algebra ----------------------------------------------

class _Echelon:
    """Incrementally maintained reduced row echelon form over Fractions.

    Rows are dicts ``col -> value``.  With ``track`` each row remembers the
    combination of input rows it came from.
    """

    def __init__(self, track: bool = False):
        self.rows = {}  # pivot col -> row
        self.prov = {}
        self.track = track
        self.count = 0

    def reduce(self, row: dict, prov: Optional[dict] = None):
        row = {c: v for c, v in row.items() if v}
        for c in [c for c in row if c in self.rows]:
            v = row.get(c)
            if not v:
                continue
            for cc, vv in self.rows[c].items():
                nv = row.get(cc, 0) - v * vv
                if nv:
                    row[cc] = nv
                else:
                    row.pop(cc, None)
            if prov is not None:
                for i, w in self.prov[c].items():
                    nw = prov.get(i, 0) - v * w
                    if nw:
                        prov[i] = nw
                    else:
                        prov.pop(i, None)
        return row, prov

    def add(self, row: dict) -> Optional[int]:
        prov = {self.count: Fraction(1)} if self.track else None
        self.count += 1
        row, prov = self.reduce(row, prov)
        if not row:
            return None
        piv = min(row)
        inv = 1 / row[piv]
        row = {c: v * inv for c, v in row.items()}
        if prov is not None:
            prov = {i: w * inv for i, w in prov.items()}
        for c, other in self.rows.items():
            v = other.get(piv)
            if v:
                for cc, vv in row.items():
                    nv = other.get(cc, 0) - v * vv
                    if nv:
                        other[cc] = nv
                    else:
                        other.pop(cc, None)
                if prov is not None:
                    op = self.prov[c]
                    for i, w in prov.items():
                        nw = op.get(i, 0) - v * w
                        if nw:
                            op[i] = nw
                        else:
                            op.pop(i, None)
        self.rows[piv] = row
        if prov is not None:
            self.prov[piv] = prov
        return piv

    def nullspace(self, ncols: int) -> list:
        free = [c for c in range(ncols) if c not in self.rows]
        basis = []
        for f in free:
            v = {f: Fraction(1)}
            for p, row in self.rows.items():
                if f in row:
                    v[p] = -row[f]
            basis.append(v)
        return basis


def _det(mat: list) -> Fraction:
    m = [list(r) for r in mat]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            det = -det
        det *= m[i][i]
        inv = 1 / m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] * inv
            if f:
                for c in range(i, n):
                    m[r][c] -= f * m[i][c]
    return det


def _interpolate(xs: list, ys: list) -> list:
    """Coefficients (low to high) of the polynomial through the points."""
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [Fraction(0)] * n
        for k in range(n - 1):
            nxt[k + 1] += poly[k]
        for k in range(n):
            nxt[k] -= xs[i] * poly[k]
        nxt[0] += coef[i]
        poly = nxt
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def symbol_determinant(cs: ConstraintSystem) -> list:
    """``det P(T)`` for the square system, rows normalised to polynomials in T."""
    rels = cs.relations()
    if len(rels) != len(cs.symbols):
        raise ValueError("the symbol determinant needs as many relations as symbols")
    rows = []
    for rel in rels:
        lo = min(s.shift for _, s in rel.terms())
        hi = max(s.shift for _, s in rel.terms())
        rows.append((rel, lo, hi))
    degree = sum(hi - lo for _, lo, hi in rows)
    index = {s: j for j, s in enumerate(cs.symbols)}
    xs, ys = [], []
    for t in range(2, degree + 3):
        mat = [[Fraction(0)] * len(cs.symbols) for _ in rels]
        for i, (rel, lo, _) in enumerate(rows):
            for c, s in rel.terms():
                mat[i][index[s.symbol]] += c * Fraction(t) ** (s.shift - lo)
        xs.append(Fraction(t))
        ys.append(_det(mat))
    return _interpolate(xs, ys)


def _polydivmod_exact(num: list, den: list) -> Optional[list]:
    """Quotient if ``den`` divides ``num`` exactly, else None (low-to-high coefficients)."""
    num = list(num)
    if len(den) > len(num):
        return None if any(num) else [Fraction(0)]
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] / den[-1]
        q[i] = c
        if c:
            for j, d in enumerate(den):
                num[i + j] -= c * d
    return q if not any(num) else None


_CYCLO = {}


def totient(n: int) -> int:
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            out -= out // p
        p += 1
    if m > 1:
        out -= out // m
    return out


def cyclotomic(d: int) -> list:
    if d not in _CYCLO:
        poly = [Fraction(-1)] + [Fraction(0)] * (d - 1) + [Fraction(1)]
        for e in range(1, d):
            if d % e == 0:
                poly = _polydivmod_exact(poly, cyclotomic(e))
        _CYCLO[d] = poly
    return _CYCLO[d]


def _modes_period(det: list, L: int) -> int:
    """lcm of the orders ``d | L`` with ``Phi_d`` dividing ``det``."""
    out = 1
    for d in range(1, L + 1):
        if L % d == 0 and totient(d) < len(det) and _polydivmod_exact(det, cyclotomic(d)) is not None:
            out = lcm(out, d)
    return out


def effective_period(cs: ConstraintSystem, L: int) -> tuple:
    """``(L_eff, det)``: the smallest period whose solution space equals the one at ``L``."""
    det = symbol_determinant(cs)
    if not any(det):
        return L, det
    return _modes_period(det, L), det


# solution spaces ---------------------------------------------------------

@dataclass
class SolutionSpace:
    system: ConstraintSystem
    period: int
    basis: list
    requested_period: int
    degenerate: bool = False
    certificate: list = field(default_factory=list)
    hint: Optional[str] = None
    ladder: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def particular(self) -> dict:
        return {s: ZERO for s in self.system.symbols}

    def member(self, coords: Iterable) -> dict:
        coords = [as_rational(c) for c in coords]
        out = {}
        for s in self.system.symbols:
            out[s] = qps_linear_combine([(c, b[s], 0) for c, b in zip(coords, self.basis)] or [(0, ZERO, 0)])
        return out

    def random_member(self, rng) -> dict:
        return self.member(Fraction(rng.randint(-100, 100), rng.randint(1, 100)) for _ in self.basis)

    def to_json(self) -> dict:
        rec = lambda a: {s: a[s].to_record() for s in self.system.symbols}
        out = {"period": self.period, "requestedPeriod": self.requested_period,
               "dimension": self.dimension, "degenerate": self.degenerate,
               "particular": rec(self.particular), "basis": [rec(b) for b in self.basis]}
        if self.ladder:
            out["ladder"] = [{"period": L, "dimension": d} for L, d in self.ladder]
        if self.hint:
            out["hint"] = self.hint
        if self.certificate:
            out["certificate"] = self.certificate
        return out


def _residue_rows(cs: ConstraintSystem, L: int):
    """Rows of the slope/residue system and their labels."""
    index = {s: j for j, s in enumerate(cs.symbols)}
    slope = lambda s: index[s] * (L + 1)
    cell = lambda s, r: index[s] * (L + 1) + 1 + r % L
    rows, labels = [], []
    for rel in cs.relations():
        terms = rel.terms()
        row = {}
        for c, s in terms:
            row[slope(s.symbol)] = row.get(slope(s.symbol), 0) + c
        rows.append(row)
        labels.append((rel.label, "slope"))
        for r in range(L):
            row = {}
            for c, s in terms:
                row[slope(s.symbol)] = row.get(slope(s.symbol), 0) + c * s.shift
                row[cell(s.symbol, r + s.shift)] = row.get(cell(s.symbol, r + s.shift), 0) + c
            rows.append(row)
            labels.append((rel.label, r))
    return rows, labels, (L + 1) * len(cs.symbols)


def _vector_to_sequences(cs: ConstraintSystem, L: int, vec: dict) -> dict:
    out = {}
    for j, s in enumerate(cs.symbols):
        base = j * (L + 1)
        out[s] = QuasiPeriodicSequence(vec.get(base, 0), [vec.get(base + 1 + r, 0) for r in range(L)])
    return out


def _degeneracy_functionals(cs: ConstraintSystem, L: int) -> list:
    """Slope and mean of ``z + zeta``: their vanishing means no autonomous limit."""
    index = {s: j for j, s in enumerate(cs.symbols)}
    out = []
    for name in ("slope", "mean"):
        f = {}
        for s in ("z", "zeta"):
            base = index[s] * (L + 1)
            if name == "slope":
                f[base] = Fraction(1)
            else:
                # mean over one period of slope*r + table[r]
                f[base] = Fraction(L - 1, 2)
                for r in range(L):
                    f[base + 1 + r] = Fraction(1, L)
        out.append((name, f))
    return out


def _solve_at(cs: ConstraintSystem, L: int, track: bool = False):
    rows, labels, ncols = _residue_rows(cs, L)
    ech = _Echelon(track)
    for row in rows:
        ech.add(row)
    return ech, labels, ncols


def _dimension_at(cs: ConstraintSystem, L: int) -> int:
    ech, _, ncols = _solve_at(cs, L)
    return ncols - len(ech.rows)


def _certificate(cs: ConstraintSystem, L: int, name: str) -> list:
    ech, labels, ncols = _solve_at(cs, L, track=True)
    f = dict(next(f for n, f in _degeneracy_functionals(cs, L) if n == name))
    rest, prov = ech.reduce(f, {})
    if rest:
        return []
    # f - sum(prov_i * row_i) = 0, so f is the combination sum(-prov_i) * row_i
    return [{"relation": labels[i][0], "residue": labels[i][1], "multiplier": str(-w)}
            for i, w in sorted(prov.items())]


def solve_constraints(cs: ConstraintSystem, L: int = DEFAULT_CEILING, strict: bool = True,
                      ladder: bool = False) -> SolutionSpace:
    """Basis of all solutions ``slope*n + table[n mod L]`` of the system.

    The system is homogeneous, so the particular solution is zero.  With
    ``strict`` a space in which ``z + zeta`` has neither slope nor mean (no
    non-degenerate autonomous limit) raises :class:`InfeasibleSystem`
    carrying a certificate: the combination of relations (by residue) that
    equals the vanishing functional.
    """
    if L < 1:
        raise ValueError("period must be positive")
    L_eff, det = effective_period(cs, L)
    ech, labels, ncols = _solve_at(cs, L_eff)
    basis = [_vector_to_sequences(cs, L_eff, v) for v in ech.nullspace(ncols)]
    space = SolutionSpace(cs, L_eff, basis, L)

    if ladder:
        rungs = [r for r in PERIOD_LADDER if r <= max(L, 1)] or [L]
        dims, cache = [], {}
        for r in rungs:
            g = gcd(r, L_eff) if any(det) else r
            if g not in cache:
                cache[g] = _dimension_at(cs, g)
            dims.append((r, cache[g]))
        space.ladder = dims
    if any(det):
        wide = lcm(PERIOD_LADDER[-1], L)
        L_wide = _modes_period(det, wide)
        if L % L_wide:
            space.hint = f"dimension grows beyond period {L}: modes need a multiple of {L_wide}"
            warnings.warn(space.hint, PeriodTooSmall, stacklevel=2)

    if "z" in cs.symbols and "zeta" in cs.symbols:
        live = False
        for name, f in _degeneracy_functionals(cs, L_eff):
            for b in basis:
                if _apply_functional(f, b, cs, L_eff):
                    live = True
                    break
            if live:
                break
        if not live:
            space.degenerate = True
            space.certificate = [{"functional": f"{n}(z+zeta)", "combination": _certificate(cs, L_eff, n)}
                                 for n in ("slope", "mean")]
            if strict:
                raise InfeasibleSystem("every solution has z+zeta with zero slope and zero mean",
                                       space.certificate, space)
    return space


def _apply_functional(f: dict, member: dict, cs: ConstraintSystem, L: int) -> Fraction:
    total = Fraction(0)
    for j, s in enumerate(cs.symbols):
        base = j * (L + 1)
        seq = member[s]
        if base in f:
            total += f[base] * seq.slope
        for r in range(L):
            c = f.get(base + 1 + r)
            if c:
                total += c * seq.table[r % seq.period]
    return total


def solve_ladder(cs: ConstraintSystem, ceiling: int = DEFAULT_CEILING, strict: bool = True) -> SolutionSpace:
    """Solve at the ceiling and report the dimension at every ladder rung below it."""
    return solve_constraints(cs, ceiling, strict=strict, ladder=True)


def stabilized_period(space: SolutionSpace) -> Optional[int]:
    """Smallest ladder rung whose dimension equals the top one."""
    if not space.ladder:
        return None
    top = space.ladder[-1][1]
    return next(L for L, d in space.ladder if d == top)


def coordinates(space: SolutionSpace, candidate: dict) -> Optional[list]:
    """Coordinates of ``candidate`` in the basis, or None when it is outside the span."""
    syms = space.system.symbols
    M = lcm(space.period, *(candidate[s].period for s in syms))
    k = space.dimension
    ech = _Echelon()
    # unknown columns 0..k-1 are coordinates, column k carries the candidate
    for s in syms:
        b_s = [b[s] for b in space.basis]
        row = {i: v.slope for i, v in enumerate(b_s) if v.slope}
        row[k] = -candidate[s].slope
        ech.add(row)
        for r in range(M):
            row = {i: v(r) - v.slope * r for i, v in enumerate(b_s)}
            row[k] = -(candidate[s](r) - candidate[s].slope * r)
            ech.add(row)
    if k in ech.rows:
        return None
    coords = [Fraction(0)] * k
    for p, row in ech.rows.items():
        coords[p] = -row.get(k, Fraction(0))
    # free coordinates (dependent basis vectors cannot occur) default to zero
    return coords


def verify_membership(space: SolutionSpace, candidate: dict) -> bool:
    if not space.system.is_satisfied(candidate):
        return False
    coords = coordinates(space, candidate)
    if coords is None:
        return False
    rebuilt = space.member(coords)
    return all(rebuilt[s] == candidate[s] for s in space.system.symbols)
