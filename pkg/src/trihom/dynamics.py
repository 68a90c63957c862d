"""Iteration of the asymmetric trihomographic system and confinement checks.

The state is ``(n, x_n, y_{n-1})``.  One step solves

    (y_n - (A-z)^2)(y_{n-1} - (A-zeta')^2)(x_n - B^2)
        = (y_n - (B-z)^2)(y_{n-1} - (B-zeta')^2)(x_n - A^2)

for ``y_n`` (``A, B, z`` at ``n``, ``zeta' = zeta_{n-1}``), then

    (x_{n+1} - (C-zeta)^2)(x_n - (C-z)^2)(y_n - D^2)
        = (x_{n+1} - (D-zeta)^2)(x_n - (D-z)^2)(y_n - C^2)

for ``x_{n+1}``.  Both are homographic in the unknown, so values are kept as
projective pairs of eps-series and infinity needs no special case.

Half-steps are numbered ``h = 2n`` for ``x_n`` and ``h = 2n+1`` for ``y_n``.
A singularity is entered by putting ``x_n = (A_n + eps)^2`` (or ``y_n =
(C_n + eps)^2``); it exits when a solve becomes ``0/0`` at ``eps = 0``,
which happens exactly when the input value equals the square of one of the
points on its side.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import (DEFAULT_ORDER, INFINITY, EpsSeries, PrecisionExhausted, ProjectiveValue, as_rational,
                    format_limit, limit_at_zero)
from .sequences import QuasiPeriodicSequence

MAX_ORDER = 24


class DynamicsError(ArithmeticError):
    pass


class IndeterminateStep(PrecisionExhausted):
    """A homographic solve degenerated to 0 = 0 at the tracked precision."""


class SeedCollision(DynamicsError):
    pass


class DegenerateDenominator(DynamicsError):
    pass


class NotConfinedWithinBudget(DynamicsError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PrimeCollision(DynamicsError):
    pass


def _pv(v, trunc: Optional[int] = None) -> ProjectiveValue:
    if isinstance(v, ProjectiveValue):
        return v
    if isinstance(v, EpsSeries):
        return ProjectiveValue(v, EpsSeries.const(1, trunc))
    return ProjectiveValue(EpsSeries.const(as_rational(v), trunc), EpsSeries.const(1, trunc))


def _factor(v: ProjectiveValue, c: Fraction) -> EpsSeries:
    """Homogeneous form of ``v - c``."""
    return v.num - v.den * c


def _vanishes(s: EpsSeries) -> bool:
    """Whether ``s`` is zero at eps = 0 (raises when undecidable)."""
    if not s.coeffs:
        if s.trunc is None or s.trunc >= 0:
            return True
        raise IndeterminateStep("value at eps = 0 is beyond the tracked order")
    return s.lead > 0


@dataclass(frozen=True)
class Solve:
    """Result of one homographic solve, before the common eps power is removed."""

    value: ProjectiveValue
    raw_num: EpsSeries
    raw_den: EpsSeries
    side: str
    vanishing: tuple  # points whose squares equal the input value at eps = 0

    @property
    def indeterminate(self) -> bool:
        return _vanishes(self.raw_num) and _vanishes(self.raw_den)


def _homographic(a: Fraction, b: Fraction, U: EpsSeries, U2: EpsSeries) -> tuple:
    """Solve ``(w - a) U = (w - b) U2`` projectively: ``w = (aU - bU2) : (U - U2)``."""
    return U * a - U2 * b, U - U2


def _finish(num: EpsSeries, den: EpsSeries, side: str, vanishing: tuple) -> Solve:
    if not num.coeffs and not den.coeffs:
        raise IndeterminateStep("homographic solve degenerated to 0 = 0")
    value = ProjectiveValue(num, den).normalized()
    # rescale so the leading coordinate is monic; keeps coefficient growth in check
    lead = value.den.coeffs[0] if value.den.coeffs and value.den.lead == 0 else value.num.coeffs[0]
    value = ProjectiveValue(value.num * (1 / lead), value.den * (1 / lead))
    return Solve(value, num, den, side, vanishing)


def _squares_hit(v: ProjectiveValue, points: dict) -> tuple:
    return tuple(name for name, c in points.items() if _vanishes(_factor(v, c * c)))


# parameter systems ----------------------------------------------------------

class ParamSystem:
    """Instantiated ``z, zeta, A, B, C, D`` of the two-point-per-side system."""

    def __init__(self, z, zeta, A, B, C, D, check: bool = True):
        self.z, self.zeta, self.A, self.B, self.C, self.D = z, zeta, A, B, C, D
        if check:
            for n in range(-2, 2 * self.period() + 2):
                if A(n) + B(n) != 2 * (z(n) + zeta(n - 1)) or C(n) + D(n) != 2 * (z(n) + zeta(n)):
                    raise ValueError(f"infinity relations fail at n={n}")

    @classmethod
    def from_assignment(cls, assign: dict, check: bool = True) -> "ParamSystem":
        return cls(*(assign[s] for s in ("z", "zeta", "A", "B", "C", "D")), check=check)

    def period(self) -> int:
        from .sequences import lcm
        return lcm(*(getattr(s, "period", 1) for s in (self.z, self.zeta, self.A, self.B, self.C, self.D)))

    def kappa(self, n: int) -> Fraction:
        return (self.A(n) - self.B(n)) / 2

    def k(self, n: int) -> Fraction:
        return (self.C(n) - self.D(n)) / 2

    def x_points(self, n: int) -> dict:
        return {"A": self.A(n), "B": self.B(n)}

    def y_points(self, n: int) -> dict:
        return {"C": self.C(n), "D": self.D(n)}

    def point(self, name: str, n: int) -> Fraction:
        return getattr(self, name)(n)

    def solve_y(self, n: int, x: ProjectiveValue, yprev: ProjectiveValue) -> Solve:
        A, B, z, zp = self.A(n), self.B(n), self.z(n), self.zeta(n - 1)
        U = _factor(yprev, (A - zp) ** 2) * _factor(x, B * B)
        U2 = _factor(yprev, (B - zp) ** 2) * _factor(x, A * A)
        num, den = _homographic((A - z) ** 2, (B - z) ** 2, U, U2)
        return _finish(num, den, "y", _squares_hit(x, self.x_points(n)))

    def solve_x(self, n: int, x: ProjectiveValue, y: ProjectiveValue) -> Solve:
        C, D, z, ze = self.C(n), self.D(n), self.z(n), self.zeta(n)
        V = _factor(x, (C - z) ** 2) * _factor(y, D * D)
        V2 = _factor(x, (D - z) ** 2) * _factor(y, C * C)
        num, den = _homographic((C - ze) ** 2, (D - ze) ** 2, V, V2)
        return _finish(num, den, "x", _squares_hit(y, self.y_points(n)))

    def solve_yprev(self, n: int, x: ProjectiveValue, y: ProjectiveValue) -> ProjectiveValue:
        """Invert the y-equation: the ``y_{n-1}`` that leads to ``y_n = y``."""
        A, B, z, zp = self.A(n), self.B(n), self.z(n), self.zeta(n - 1)
        a1 = _factor(y, (A - z) ** 2) * _factor(x, B * B)
        a2 = _factor(y, (B - z) ** 2) * _factor(x, A * A)
        num, den = _homographic((A - zp) ** 2, (B - zp) ** 2, a1, a2)
        return _finish(num, den, "y", ()).value


class GenericSystem:
    """Eight points per side in the ancillary form.

    The y-equation reads ``(y - (xi-z)^2) G(xi) = (y - (xi+z)^2) G(-xi)`` with
    ``G(xi) = (y' - (xi-zeta')^2) prod(xi + A_i)``.  Writing ``G = E(x) +
    xi O(x)`` with ``x = xi^2`` gives ``y = ((x+z^2) O - 2 z E) / O``, rational
    in ``x``; the x-equation is the mirror image.
    """

    def __init__(self, z, zeta, xs: Sequence, ys: Sequence, names_x=None, names_y=None):
        self.z, self.zeta = z, zeta
        self.xs, self.ys = list(xs), list(ys)
        self.names_x = list(names_x or [f"A{i + 1}" for i in range(len(xs))])
        self.names_y = list(names_y or [f"C{i + 1}" for i in range(len(ys))])

    @classmethod
    def from_assignment(cls, assign: dict) -> "GenericSystem":
        nx = sorted((k for k in assign if k.startswith("A")), key=lambda s: int(s[1:]))
        ny = sorted((k for k in assign if k.startswith("C")), key=lambda s: int(s[1:]))
        return cls(assign["z"], assign["zeta"], [assign[k] for k in nx], [assign[k] for k in ny], nx, ny)

    def x_points(self, n: int) -> dict:
        return {name: s(n) for name, s in zip(self.names_x, self.xs)}

    def y_points(self, n: int) -> dict:
        return {name: s(n) for name, s in zip(self.names_y, self.ys)}

    def point(self, name: str, n: int) -> Fraction:
        pts = {**self.x_points(n), **self.y_points(n)}
        return pts[name]

    @staticmethod
    def _solve(v: ProjectiveValue, w: ProjectiveValue, p: Fraction, q: Fraction, roots: list) -> tuple:
        # G(xi) = (w - (xi - q)^2) * prod(xi + r) as a polynomial in xi, w homogenised
        g = [w.num - w.den * (q * q), w.den * (2 * q), -w.den]
        for r in roots:
            nxt = [EpsSeries.zero()] * (len(g) + 1)
            for i, c in enumerate(g):
                nxt[i] = nxt[i] + c * r
                nxt[i + 1] = nxt[i + 1] + c
            g = nxt
        even, odd = g[0::2], g[1::2]
        deg = len(even) - 1
        E = sum((c * v.num ** j * v.den ** (deg - j) for j, c in enumerate(even)), EpsSeries.zero())
        O = sum((c * v.num ** j * v.den ** (deg - 1 - j) for j, c in enumerate(odd)), EpsSeries.zero())
        num = (v.num + v.den * (p * p)) * O - E * (2 * p)
        den = v.den * O
        return num, den

    def solve_y(self, n: int, x: ProjectiveValue, yprev: ProjectiveValue) -> Solve:
        num, den = self._solve(x, yprev, self.z(n), self.zeta(n - 1), [a(n) for a in self.xs])
        return _finish(num, den, "y", _squares_hit(x, self.x_points(n)))

    def solve_x(self, n: int, x: ProjectiveValue, y: ProjectiveValue) -> Solve:
        num, den = self._solve(y, x, self.zeta(n), self.z(n), [c(n) for c in self.ys])
        return _finish(num, den, "x", _squares_hit(y, self.y_points(n)))

    def solve_yprev(self, n: int, x: ProjectiveValue, y: ProjectiveValue) -> ProjectiveValue:
        raise NotImplementedError("y-side entry is not provided for the eight-point system")


# state and stepping ----------------------------------------------------------

@dataclass(frozen=True)
class MapState:
    n: int
    x: ProjectiveValue
    yPrev: ProjectiveValue


def step_forward(s: MapState, p, with_solves: bool = False):
    """``(x_n, y_{n-1}) -> (x_{n+1}, y_n)``."""
    sy = p.solve_y(s.n, s.x, s.yPrev)
    sx = p.solve_x(s.n, s.x, sy.value)
    out = MapState(s.n + 1, sx.value, sy.value)
    return (out, sy, sx) if with_solves else out


def exact_step(p, n: int, x, yprev) -> tuple:
    """One step on rational data: ``(y_n, x_{n+1})`` as Fractions (or INFINITY)."""
    st, sy, sx = step_forward(MapState(n, _pv(x), _pv(yprev)), p, with_solves=True)
    return limit_at_zero(sy.value), limit_at_zero(sx.value)


# canonical additive form ---------------------------------------------------

@dataclass(frozen=True)
class CanonicalCoefficients:
    n: int
    z: Fraction
    zeta: Fraction
    zeta_prev: Fraction
    k: Fraction
    kappa: Fraction

    def rhs_x(self, y: Fraction) -> Fraction:
        """Right side of the x-equation: ``(y - k^2)/(z+zeta) + z + zeta``."""
        s = self.z + self.zeta
        return (y - self.k ** 2) / s + s

    def rhs_y(self, x: Fraction) -> Fraction:
        s = self.z + self.zeta_prev
        return (x - self.kappa ** 2) / s + s


def canonical_rhs(p: ParamSystem, n: int) -> CanonicalCoefficients:
    z, ze, zp = p.z(n), p.zeta(n), p.zeta(n - 1)
    if z + ze == 0 or z + zp == 0:
        raise DegenerateDenominator(f"z+zeta vanishes at n={n}")
    return CanonicalCoefficients(n, z, ze, zp, p.k(n), p.kappa(n))


def canonical_step(p: ParamSystem, n: int, x: Fraction, yprev: Fraction) -> tuple:
    """``(y_n, x_{n+1})`` from the canonical additive form on rational data."""
    c = canonical_rhs(p, n)
    x, yprev = as_rational(x), as_rational(yprev)
    z, zp, ze = c.z, c.zeta_prev, c.zeta
    # y-equation: [(x-Y+z^2)(x-y'+zp^2) + 4 x z zp] / [zp(x-Y+z^2) + z(x-y'+zp^2)] = R
    R = c.rhs_y(x)
    V = x - yprev + zp * zp
    u = (R * z * V - 4 * x * z * zp) / (V - R * zp)
    y = x + z * z - u
    # x-equation: [(y-X+ze^2)(y-x+z^2) + 4 y ze z] / [z(y-X+ze^2) + ze(y-x+z^2)] = R
    R = c.rhs_x(y)
    V = y - x + z * z
    w = (R * ze * V - 4 * y * ze * z) / (V - R * z)
    return y, y + ze * ze - w


# singularity entry and confinement ----------------------------------------------

X_ENTRIES = ("A", "B")


def _is_x_point(p, name: str) -> bool:
    return name in (p.names_x if isinstance(p, GenericSystem) else X_ENTRIES)


def enter_singularity(p, entry: str, n0: int, seedY, order: int = DEFAULT_ORDER) -> MapState:
    """State whose next solves follow a singularity entered through ``entry`` at ``n0``.

    x-side entry: ``x_{n0} = (E + eps)^2`` and ``y_{n0-1} = seedY``.
    y-side entry: ``x_{n0} = seedY`` is the free datum and ``y_{n0-1}`` is
    obtained by inverting the y-equation so that ``y_{n0} = (E + eps)^2``.
    """
    seed = as_rational(seedY)
    E = p.point(entry, n0)
    hit = EpsSeries([E, 1], 0, order) ** 2
    if _is_x_point(p, entry):
        x = ProjectiveValue(hit, EpsSeries.const(1, order))
        zp = p.zeta(n0 - 1)
        bad = [q for q in p.x_points(n0).values() if seed == (q - zp) ** 2]
        if bad or seed in [(q - p.z(n0)) ** 2 for q in p.x_points(n0).values()]:
            raise SeedCollision(f"seed {seed} is a singular value at n={n0}")
        return MapState(n0, x, _pv(seed, order))
    x = _pv(seed, order)
    singular = [q * q for q in p.x_points(n0).values()] + [(q - p.z(n0)) ** 2 for q in p.y_points(n0).values()]
    if seed in singular:
        raise SeedCollision(f"seed {seed} is a singular value at n={n0}")
    y = ProjectiveValue(hit, EpsSeries.const(1, order))
    return MapState(n0, x, p.solve_yprev(n0, x, y))


@dataclass
class ConfinementReport:
    entryPoint: str
    entryStep: int
    exitStep: Optional[int]
    exitPoint: Optional[str]
    confined: bool
    memoryRecovered: bool
    memoryLost: bool
    declaredLength: Optional[int]
    declaredExit: Optional[str]
    epsOrder: int
    trace: list = field(default_factory=list)
    ties: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"entryPoint": self.entryPoint, "entryStep": self.entryStep, "exitStep": self.exitStep,
                "exitPoint": self.exitPoint, "length": None if self.exitStep is None else self.exitStep - self.entryStep,
                "declaredLength": self.declaredLength, "declaredExit": self.declaredExit,
                "confined": self.confined, "memoryLost": self.memoryLost,
                "memoryRecovered": self.memoryRecovered, "epsOrder": self.epsOrder, "ties": self.ties,
                "trace": self.trace}


class _Run:
    """Half-step values from the entry on, with the solve that produced each."""

    def __init__(self, p, entry: str, n0: int, seed, order: int):
        self.p = p
        self.state = enter_singularity(p, entry, n0, seed, order)
        self.h_entry = 2 * n0 if _is_x_point(p, entry) else 2 * n0 + 1
        self.values = {2 * n0: self.state.x}
        self.solves = {}
        self.h = 2 * n0

    def extend(self, upto: int) -> None:
        while self.h < upto:
            h = self.h
            self.state, sy, sx = step_forward(self.state, self.p, with_solves=True)
            self.values[h + 1], self.values[h + 2] = sy.value, sx.value
            self.solves[h + 1], self.solves[h + 2] = sy, sx
            self.h += 2


def _limit(v: ProjectiveValue):
    return limit_at_zero(v)


def check_confinement(p, entry: str, n0: int = 0, length: Optional[int] = None, exit: Optional[str] = None,
                      max_steps: Optional[int] = None, seeds=(Fraction(3, 7), Fraction(-5, 11)),
                      order: int = DEFAULT_ORDER, strict: bool = False) -> ConfinementReport:
    """Dual-run confinement test.

    Two runs differing only in the free datum are followed from the entry.
    The first 0/0 solve after the entry marks the exit; the limits must
    agree up to the exit value and differ again within two half-steps.
    On lost precision the eps order is doubled up to 24.
    """
    if max_steps is None:
        max_steps = (length or 1) + 4
    if length is not None and max_steps < length + 2:
        raise ValueError("max_steps must exceed the declared length by at least 2")
    s1, s2 = (as_rational(s) for s in seeds)
    if s1 == s2:
        raise ValueError("the two seeds must differ")
    while True:
        try:
            return _check(p, entry, n0, length, exit, max_steps, s1, s2, order, strict)
        except PrecisionExhausted:
            if order * 2 > MAX_ORDER:
                raise
            order *= 2


def _check(p, entry, n0, length, exit, max_steps, s1, s2, order, strict) -> ConfinementReport:
    r1, r2 = _Run(p, entry, n0, s1, order), _Run(p, entry, n0, s2, order)
    h0 = r1.h_entry
    exit_step = exit_point = None
    ties = []
    for h in range(h0 + 1, h0 + max_steps + 2):
        r1.extend(h)
        sv = r1.solves[h]
        if sv.indeterminate:
            exit_step = h - 1
            hits = list(sv.vanishing)
            if len(hits) != 1:
                ties.append({"step": exit_step, "points": hits})
            exit_point = hits[0] if hits else None
            break
    trace = []
    last = (exit_step if exit_step is not None else h0 + max_steps) + 2
    r1.extend(last)
    r2.extend(last)
    for h in range(h0 - 1, last + 1):
        if h not in r1.values:
            continue
        a, b = _limit(r1.values[h]), _limit(r2.values[h])
        trace.append({"step": h, "limits": [format_limit(a), format_limit(b)]})
    lim = {t["step"]: t["limits"] for t in trace}
    end = exit_step if exit_step is not None else h0 + max_steps
    lost = all(lim[h][0] == lim[h][1] for h in range(h0, end + 1) if h in lim)
    recovered = exit_step is not None and any(
        lim[h][0] != lim[h][1] for h in (exit_step + 1, exit_step + 2) if h in lim)
    ok = exit_step is not None and lost and recovered
    if length is not None:
        ok = ok and exit_step - h0 == length
    if exit is not None:
        ok = ok and exit_point == exit
    report = ConfinementReport(entry, h0, exit_step, exit_point, ok, recovered, lost, length, exit,
                               order, trace, ties)
    if strict and not ok:
        raise NotConfinedWithinBudget(f"entry {entry} at n={n0} not confined within {max_steps} half-steps", report)
    return report


def pattern_confinement(p: ParamSystem, pattern, entry: str, n0: int = 0, **kw) -> ConfinementReport:
    return check_confinement(p, entry, n0, length=pattern.length(entry), exit=pattern.exits[entry], **kw)


# degree growth -------------------------------------------------------------------

DEFAULT_PRIMES = (2147483659, 2147483693, 2147483713, 2147483743, 2147483777, 2147483783)


def _mod(v: Fraction, prime: int) -> int:
    v = as_rational(v)
    if v.denominator % prime == 0:
        raise PrimeCollision(f"denominator of {v} vanishes mod {prime}")
    return v.numerator * pow(v.denominator, -1, prime) % prime


def degree_growth(p, n0: int = 0, steps: int = 14, yprev=Fraction(7, 13),
                  primes: Sequence[int] = DEFAULT_PRIMES) -> list:
    """Degrees in ``t`` of ``x_{n0}, ..., x_{n0+steps}`` for ``x_{n0} = t``.

    Iterates over GF(p) with coordinates as reduced polynomial pairs.  ``p``
    is a :class:`ParamSystem` or any object with a ``mod_step`` method of the
    same signature (e.g. :class:`MobiusToy`).
    """
    if steps < 4:
        raise ValueError("steps must be at least 4")
    from flint import nmod_poly

    last = None
    for prime in primes:
        try:
            return _degrees(p, n0, steps, as_rational(yprev), _PolyField(prime, nmod_poly))
        except PrimeCollision as exc:
            last = exc
    raise last


class _PolyField:
    """Projective pairs of polynomials in ``t`` over GF(prime)."""

    def __init__(self, prime: int, poly):
        self.prime, self.poly = prime, poly

    def const(self, c) -> tuple:
        return self.poly([_mod(c, self.prime)], self.prime), self.poly([1], self.prime)

    def t(self) -> tuple:
        return self.poly([0, 1], self.prime), self.poly([1], self.prime)

    def minus(self, v: tuple, c):
        """Homogeneous form of ``v - c``."""
        return v[0] - v[1] * _mod(c, self.prime)

    def homographic(self, a, b, U, U2) -> tuple:
        """Reduced ``(aU - bU2) : (U - U2)``."""
        num = U * _mod(a, self.prime) - U2 * _mod(b, self.prime)
        den = U - U2
        if num.is_zero() and den.is_zero():
            raise PrimeCollision(f"solve degenerated mod {self.prime}")
        g = num.gcd(den)
        if g.degree() > 0:
            num, den = num // g, den // g
        return num, den


def _param_mod_step(p: ParamSystem, n: int, x: tuple, y: tuple, F: _PolyField) -> tuple:
    A, B, z, zp = p.A(n), p.B(n), p.z(n), p.zeta(n - 1)
    if (A * A - B * B).numerator % F.prime == 0 and A != B and A != -B:
        raise PrimeCollision(f"A^2 and B^2 collide mod {F.prime}")
    U = F.minus(y, (A - zp) ** 2) * F.minus(x, B * B)
    U2 = F.minus(y, (B - zp) ** 2) * F.minus(x, A * A)
    y = F.homographic((A - z) ** 2, (B - z) ** 2, U, U2)
    C, D, ze = p.C(n), p.D(n), p.zeta(n)
    V = F.minus(x, (C - z) ** 2) * F.minus(y, D * D)
    V2 = F.minus(x, (D - z) ** 2) * F.minus(y, C * C)
    return F.homographic((C - ze) ** 2, (D - ze) ** 2, V, V2), y


class MobiusToy:
    """Autonomous ``x_{n+1} = (a x + b)/(c x + d)``; ``y`` just copies ``x``."""

    def __init__(self, a=0, b=1, c=1, d=0):
        self.a, self.b, self.c, self.d = (as_rational(v) for v in (a, b, c, d))

    def mod_step(self, n: int, x: tuple, y: tuple, F: _PolyField) -> tuple:
        m = lambda v: _mod(v, F.prime)
        num = x[0] * m(self.a) + x[1] * m(self.b)
        den = x[0] * m(self.c) + x[1] * m(self.d)
        g = num.gcd(den)
        if g.degree() > 0:
            num, den = num // g, den // g
        return (num, den), x


def _degrees(p, n0, steps, yprev, F: _PolyField) -> list:
    step = getattr(p, "mod_step", None) or (lambda n, x, y, F: _param_mod_step(p, n, x, y, F))
    x, y = F.t(), F.const(yprev)
    degs = [1]
    for n in range(n0, n0 + steps):
        x, y = step(n, x, y, F)
        degs.append(max(x[0].degree(), x[1].degree()))
    return degs


def degree_ratios(degs: Sequence[int]) -> list:
    return [Fraction(b, a) for a, b in zip(degs, degs[1:]) if a]


def collisions(p, window: int) -> list:
    """Indices ``n`` where two points on one side coincide up to sign or ``z+zeta`` vanishes."""
    bad = []
    for n in range(window):
        for pts in (list(p.x_points(n).values()), list(p.y_points(n).values())):
            if any(a == b or a == -b for i, a in enumerate(pts) for b in pts[i + 1:]) or 0 in pts:
                bad.append(n)
        if p.z(n) + p.zeta(n) == 0 or p.z(n) + p.zeta(n - 1) == 0:
            bad.append(n)
    return sorted(set(bad))


def random_param_system(space, rng: random.Random, tries: int = 100):
    """Random member of a solved space, rejection-sampled away from collisions."""
    for _ in range(tries):
        m = space.random_member(rng)
        p = GenericSystem.from_assignment(m) if "A1" in m else ParamSystem.from_assignment(m)
        if not collisions(p, 2 * space.period + 2):
            return p
    raise DynamicsError("no collision-free member found")


def broken(p: ParamSystem, residue: Optional[int] = 0, delta=Fraction(1, 3)) -> ParamSystem:
    """Control: ``C`` perturbed at one residue of its period, or at all of them
    when ``residue`` is None (the infinity relation is left broken)."""
    C = p.C
    L = C.period
    table = list(C.table)
    for r in (range(L) if residue is None else [residue % L]):
        table[r] += as_rational(delta)
    return ParamSystem(p.z, p.zeta, p.A, p.B, QuasiPeriodicSequence(C.slope, table), p.D, check=False)
