"""Sequences of the form ``slope*n + table[n mod L]`` over the rationals.

Every solution of a confinement system lives in this class, and so do the
periodic building blocks used to write the parametrizations:

========  ======  =======  ===============================================
kind      period  params   defining property
========  ======  =======  ===============================================
phi(m)    m       m-1      zero sum over one period
chi(2m)   2m      m        chi(n+m) = -chi(n)
psi6      6       2        psi(n+1) + psi(n-1) = psi(n)
omega9    9       6        w(n+3) + w(n-3) + w(n) = 0
omega6    12      4        w(n+2) + w(n-2) = w(n)
========  ======  =======  ===============================================

The complex-exponential sums that usually define these functions are
replaced by rational bases spanning the same real solution families.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from .arith import as_rational


class BadComponentArity(ValueError):
    pass


def lcm(*ns: int) -> int:
    out = 1
    for n in ns:
        out = out * n // gcd(out, n)
    return out


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class QuasiPeriodicSequence:
    """``value(n) = slope*n + table[n % period]``, stored with minimal period."""

    __slots__ = ("slope", "table", "label")

    def __init__(self, slope=0, table: Sequence = (0,), label: Optional[str] = None):
        slope = as_rational(slope)
        table = [as_rational(t) for t in table]
        if not table:
            raise ValueError("table must be non-empty")
        L = len(table)
        for d in _divisors(L):
            if all(table[i] == table[i % d] for i in range(L)):
                table = table[:d]
                break
        object.__setattr__(self, "slope", slope)
        object.__setattr__(self, "table", tuple(table))
        object.__setattr__(self, "label", label)

    def __setattr__(self, name, value):
        raise AttributeError("QuasiPeriodicSequence is immutable")

    @property
    def period(self) -> int:
        return len(self.table)

    @classmethod
    def constant(cls, c) -> "QuasiPeriodicSequence":
        return cls(0, [c])

    @classmethod
    def linear(cls, slope, offset=0) -> "QuasiPeriodicSequence":
        return cls(slope, [offset])

    @classmethod
    def from_values(cls, slope, values_at: callable, period: int) -> "QuasiPeriodicSequence":
        slope = as_rational(slope)
        return cls(slope, [as_rational(values_at(r)) - slope * r for r in range(period)])

    def __call__(self, n: int) -> Fraction:
        return self.slope * n + self.table[n % len(self.table)]

    value = __call__

    def shift(self, k: int) -> "QuasiPeriodicSequence":
        """The sequence ``n -> self(n + k)``."""
        L = self.period
        return QuasiPeriodicSequence(self.slope, [self.slope * k + self.table[(r + k) % L] for r in range(L)])

    def scale(self, c) -> "QuasiPeriodicSequence":
        c = as_rational(c)
        return QuasiPeriodicSequence(self.slope * c, [c * t for t in self.table])

    def widened(self, L: int) -> tuple:
        """Table over ``L`` residues (``L`` must be a multiple of the period)."""
        if L % self.period:
            raise ValueError(f"{L} is not a multiple of the period {self.period}")
        return tuple(self.table[r % self.period] for r in range(L))

    def with_label(self, label: Optional[str]) -> "QuasiPeriodicSequence":
        return QuasiPeriodicSequence(self.slope, self.table, label)

    def __add__(self, other):
        if not isinstance(other, QuasiPeriodicSequence):
            other = QuasiPeriodicSequence.constant(other)
        return qps_linear_combine([(1, self, 0), (1, other, 0)])

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, QuasiPeriodicSequence):
            other = QuasiPeriodicSequence.constant(other)
        return qps_linear_combine([(1, self, 0), (-1, other, 0)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, QuasiPeriodicSequence):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(1 / as_rational(c))

    def is_zero(self) -> bool:
        return self.slope == 0 and all(t == 0 for t in self.table)

    def __eq__(self, other):
        if not isinstance(other, QuasiPeriodicSequence):
            return NotImplemented
        return qps_equal(self, other)

    def __hash__(self):
        return hash((self.slope, self.table))

    def to_record(self) -> dict:
        return {"slope": str(self.slope), "period": self.period, "table": [str(t) for t in self.table]}

    @classmethod
    def from_record(cls, rec: dict, label: Optional[str] = None) -> "QuasiPeriodicSequence":
        return cls(rec["slope"], rec["table"], label)

    def __repr__(self):
        lab = f"{self.label}: " if self.label else ""
        tab = ", ".join(str(t) for t in self.table)
        return f"<{lab}{self.slope}*n + [{tab}]>"


ZERO = QuasiPeriodicSequence()


def qps_eval(s: QuasiPeriodicSequence, n: int) -> Fraction:
    return s(n)


def qps_equal(a: QuasiPeriodicSequence, b: QuasiPeriodicSequence) -> bool:
    if a.slope != b.slope:
        return False
    L = lcm(a.period, b.period)
    return a.widened(L) == b.widened(L)


def qps_linear_combine(terms: Iterable[tuple]) -> QuasiPeriodicSequence:
    """``sum c * s(n + k)`` for terms ``(c, s, k)``; exact over the lcm period."""
    terms = [(as_rational(c), s, int(k)) for c, s, k in terms]
    if not terms:
        return ZERO
    L = lcm(*(s.period for _, s, _ in terms))
    slope = sum((c * s.slope for c, s, _ in terms), Fraction(0))
    table = [Fraction(0)] * L
    for c, s, k in terms:
        if c == 0:
            continue
        P = s.period
        base = s.slope * k
        for r in range(L):
            table[r] += c * (base + s.table[(r + k) % P])
    return QuasiPeriodicSequence(slope, table)


# periodic building blocks -------------------------------------------------

_KIND_RE = re.compile(r"^(phi|chi)(\d+)$|^(psi6|omega9|omega6)$")


def _parse_kind(kind: str) -> tuple[str, int]:
    m = _KIND_RE.match(kind)
    if not m:
        raise ValueError(f"unknown periodic component kind {kind!r}")
    if m.group(3):
        return m.group(3), {"psi6": 6, "omega9": 9, "omega6": 12}[m.group(3)]
    fam, p = m.group(1), int(m.group(2))
    if p < 1 or (fam == "chi" and p % 2):
        raise ValueError(f"bad period in {kind!r}")
    return fam, p


def component_arity(kind: str) -> int:
    fam, p = _parse_kind(kind)
    return {"phi": p - 1, "chi": p // 2, "psi6": 2, "omega9": 6, "omega6": 4}[fam]


def component_period(kind: str) -> int:
    return _parse_kind(kind)[1]


def _unroll(initial: list, step, period: int) -> list:
    vals = list(initial)
    while len(vals) < period:
        vals.append(step(vals))
    return vals


@dataclass(frozen=True)
class PeriodicComponent:
    kind: str
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(as_rational(c) for c in self.coefficients))
        if len(self.coefficients) != component_arity(self.kind):
            raise BadComponentArity(
                f"{self.kind} takes {component_arity(self.kind)} coefficients, got {len(self.coefficients)}")

    @property
    def period(self) -> int:
        return component_period(self.kind)

    def sequence(self) -> QuasiPeriodicSequence:
        fam, p = _parse_kind(self.kind)
        c = list(self.coefficients)
        if fam == "phi":
            # sum_j c_j ([n == j] - 1/p)
            mean = sum(c, Fraction(0)) / p
            table = [(c[r] if r < p - 1 else 0) - mean for r in range(p)]
        elif fam == "chi":
            m = p // 2
            table = c + [-v for v in c]
        elif fam == "psi6":
            table = _unroll(c, lambda v: v[-1] - v[-2], 6)
        elif fam == "omega9":
            table = _unroll(c, lambda v: -v[-3] - v[-6], 9)
        else:  # omega6
            table = _unroll(c, lambda v: v[-2] - v[-4], 12)
        return QuasiPeriodicSequence(0, table)


def defining_recurrence(kind: str) -> list[tuple[int, int]]:
    """Homogeneous relation ``sum c*f(n+k) = 0`` as ``[(c, k), ...]``.

    For ``phi(m)`` this is the zero period-sum; periodicity itself is
    imposed by the table ansatz.
    """
    fam, p = _parse_kind(kind)
    if fam == "phi":
        return [(1, k) for k in range(p)]
    if fam == "chi":
        return [(1, p // 2), (1, 0)]
    if fam == "psi6":
        return [(1, 1), (1, -1), (-1, 0)]
    if fam == "omega9":
        return [(1, 3), (1, -3), (1, 0)]
    return [(1, 2), (1, -2), (-1, 0)]


def qps_build(slope, offset, components: Iterable[PeriodicComponent] = ()) -> QuasiPeriodicSequence:
    """``slope*n + offset + sum of components``."""
    terms = [(1, QuasiPeriodicSequence.linear(slope, offset), 0)]
    terms += [(1, comp.sequence(), 0) for comp in components]
    return qps_linear_combine(terms)
