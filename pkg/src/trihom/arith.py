"""Exact kernels: rationals, truncated Laurent series in a formal epsilon,
and projective values on the line.

Rationals are :class:`fractions.Fraction`.  An :class:`EpsSeries` is a dense
Laurent series ``sum c_i eps^(lead+i)`` known up to an absolute exponent
``trunc`` (``None`` means the series is an exact polynomial).  A
:class:`ProjectiveValue` is a pair ``(num, den)`` so that infinity is an
ordinary value.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Union

Rational = Fraction

#: relative precision used when an exact division produces an infinite series
DEFAULT_ORDER = 12


class SeriesError(ArithmeticError):
    pass


class DivisionByZeroSeries(SeriesError, ZeroDivisionError):
    """Division by an exactly zero series."""


class PrecisionExhausted(SeriesError):
    """All tracked coefficients cancelled; retry with a higher order."""


def as_rational(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, str):
        return Fraction(v.replace("−", "-"))
    return Fraction(v)


def _tmin(*ts):
    known = [t for t in ts if t is not None]
    return min(known) if known else None


class EpsSeries:
    """Truncated Laurent series in ``eps`` over the rationals (immutable)."""

    __slots__ = ("lead", "coeffs", "trunc")

    def __init__(self, coeffs: Iterable = (), lead: int = 0, trunc: Optional[int] = None):
        cs = [as_rational(c) for c in coeffs]
        if trunc is not None:
            del cs[max(0, trunc - lead + 1):]
        k = 0
        while k < len(cs) and cs[k] == 0:
            k += 1
        lead += k
        cs = cs[k:]
        while cs and cs[-1] == 0:
            cs.pop()
        if not cs:
            lead = 0 if trunc is None else trunc + 1
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, name, value):
        raise AttributeError("EpsSeries is immutable")

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, c, trunc: Optional[int] = None) -> "EpsSeries":
        return cls([c], 0, trunc)

    @classmethod
    def eps(cls, power: int = 1, trunc: Optional[int] = None) -> "EpsSeries":
        return cls([1], power, trunc)

    @classmethod
    def zero(cls, trunc: Optional[int] = None) -> "EpsSeries":
        return cls((), 0, trunc)

    # queries -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def exact(self) -> bool:
        return self.trunc is None

    @property
    def precision(self) -> Optional[int]:
        """Number of tracked coefficients beyond the leading one."""
        if self.trunc is None:
            return None
        return self.trunc - self.lead

    def coeff(self, k: int) -> Fraction:
        if self.trunc is not None and k > self.trunc:
            raise PrecisionExhausted(f"coefficient eps^{k} beyond tracked order {self.trunc}")
        i = k - self.lead
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def value_at_zero(self) -> Fraction:
        """Constant term; raises if the series has a pole."""
        if self.coeffs and self.lead < 0:
            raise SeriesError("series has a pole at eps = 0")
        return self.coeff(0)

    def truncate(self, trunc: int) -> "EpsSeries":
        return EpsSeries(self.coeffs, self.lead, _tmin(self.trunc, trunc))

    def shift(self, k: int) -> "EpsSeries":
        """Multiply by ``eps**k``."""
        return EpsSeries(self.coeffs, self.lead + k, None if self.trunc is None else self.trunc + k)

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> "EpsSeries":
        if isinstance(other, EpsSeries):
            return other
        return EpsSeries.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        trunc = _tmin(self.trunc, other.trunc)
        if self.is_zero() and other.is_zero():
            return EpsSeries.zero(trunc)
        lo = min(s.lead for s in (self, other) if s.coeffs) if (self.coeffs or other.coeffs) else 0
        hi = max(s.lead + len(s.coeffs) for s in (self, other) if s.coeffs)
        if trunc is not None:
            hi = min(hi, trunc + 1)
        out = [Fraction(0)] * max(0, hi - lo)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                j = s.lead + i - lo
                if 0 <= j < len(out):
                    out[j] += c
        return EpsSeries(out, lo, trunc)

    __radd__ = __add__

    def __neg__(self):
        return EpsSeries([-c for c in self.coeffs], self.lead, self.trunc)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self, other
        # a truncated zero stores lead = trunc + 1, so lead is a valid order bound
        if (a.exact and not a.coeffs) or (b.exact and not b.coeffs):
            return EpsSeries.zero()
        trunc = _tmin(None if a.trunc is None else a.trunc + b.lead,
                      None if b.trunc is None else b.trunc + a.lead)
        if not a.coeffs or not b.coeffs:
            return EpsSeries.zero(trunc)
        lead = a.lead + b.lead
        n = len(a.coeffs) + len(b.coeffs) - 1
        if trunc is not None:
            n = min(n, trunc - lead + 1)
        if n <= 0:
            return EpsSeries.zero(trunc)
        out = [Fraction(0)] * n
        bc = b.coeffs
        for i, ca in enumerate(a.coeffs):
            if i >= n:
                break
            for j in range(min(len(bc), n - i)):
                out[i + j] += ca * bc[j]
        return EpsSeries(out, lead, trunc)

    __rmul__ = __mul__

    def inverse(self, order: Optional[int] = None) -> "EpsSeries":
        if not self.coeffs:
            if self.trunc is None:
                raise DivisionByZeroSeries("division by the zero series")
            raise PrecisionExhausted(f"divisor vanishes to tracked order {self.trunc}")
        if self.trunc is None and len(self.coeffs) == 1:
            return EpsSeries([1 / self.coeffs[0]], -self.lead, None)
        rel = self.precision if self.trunc is not None else (order or DEFAULT_ORDER)
        c0 = self.coeffs[0]
        inv = [1 / c0]
        bc = self.coeffs
        for k in range(1, rel + 1):
            s = Fraction(0)
            for j in range(1, min(k, len(bc) - 1) + 1):
                s += bc[j] * inv[k - j]
            inv.append(-s / c0)
        return EpsSeries(inv, -self.lead, -self.lead + rel)

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            other.inverse()  # raises the appropriate error
        if self.trunc is None and other.trunc is None and len(other.coeffs) > 1:
            # exact / exact with a non-monomial divisor: truncate relative to the quotient
            inv = other.inverse(DEFAULT_ORDER)
            q = self * inv
            return q
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = EpsSeries.const(1, None)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, EpsSeries):
            if isinstance(other, (int, Fraction)):
                other = EpsSeries.const(other)
            else:
                return NotImplemented
        return self.agrees(other)

    def agrees(self, other: "EpsSeries") -> bool:
        """Equality of coefficients up to the common tracked order."""
        d = self - other
        return d.is_zero()

    def __hash__(self):
        return hash((self.lead, self.coeffs, self.trunc))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            body = " + ".join(f"({c})*eps^{self.lead + i}" for i, c in enumerate(self.coeffs) if c)
        tail = "" if self.trunc is None else f" + O(eps^{self.trunc + 1})"
        return f"EpsSeries({body}{tail})"


def series_arith(a: EpsSeries, b: EpsSeries, op: str) -> EpsSeries:
    """Apply ``op`` in {add, sub, mul, div} to two series."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown series operation {op!r}")


class _Marker:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return self.name


INFINITY = _Marker("INFINITY")
INDETERMINATE = _Marker("INDETERMINATE")

Limit = Union[Fraction, _Marker]


class ProjectiveValue:
    """A point ``num : den`` of the projective line over series.

    Normalisation (removing a common power of eps) is lazy: only
    :meth:`normalized` and :func:`limit_at_zero` do it.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, EpsSeries) else EpsSeries.const(num)
        den = den if isinstance(den, EpsSeries) else EpsSeries.const(den)
        if num.is_zero() and den.is_zero() and num.exact and den.exact:
            raise DivisionByZeroSeries("0:0 is not a point of the projective line")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("ProjectiveValue is immutable")

    @classmethod
    def infinity(cls, trunc: Optional[int] = None) -> "ProjectiveValue":
        return cls(EpsSeries.const(1, trunc), EpsSeries.zero(trunc))

    def normalized(self) -> "ProjectiveValue":
        leads = [s.lead for s in (self.num, self.den) if s.coeffs]
        if not leads:
            raise PrecisionExhausted("both coordinates vanish to tracked order")
        k = min(leads)
        if k == 0:
            return self
        return ProjectiveValue(self.num.shift(-k), self.den.shift(-k))

    def is_infinite(self) -> bool:
        return limit_at_zero(self) is INFINITY

    def as_series(self) -> EpsSeries:
        return self.num / self.den

    def agrees(self, other: "ProjectiveValue") -> bool:
        return (self.num * other.den - other.num * self.den).is_zero()

    def __eq__(self, other):
        if not isinstance(other, ProjectiveValue):
            return NotImplemented
        return self.agrees(other)

    __hash__ = None

    def __repr__(self):
        return f"ProjectiveValue({self.num!r} : {self.den!r})"


def limit_at_zero(v: ProjectiveValue) -> Limit:
    """Value of ``num/den`` as eps -> 0: a Fraction, INFINITY or INDETERMINATE.

    Raises :class:`PrecisionExhausted` when both coordinates vanish to their
    whole tracked order.
    """
    num, den = v.num, v.den
    if not num.coeffs and not den.coeffs:
        raise PrecisionExhausted("0/0 persists to the tracked order")
    if not den.coeffs:
        # den = O(eps^(trunc+1)); decidable only if num is known to be lower order
        if den.trunc is None or num.lead <= den.trunc:
            return INFINITY
        return INDETERMINATE
    if not num.coeffs:
        if num.trunc is None or num.trunc >= den.lead:
            return Fraction(0)
        return INDETERMINATE
    if num.lead > den.lead:
        return Fraction(0)
    if num.lead < den.lead:
        return INFINITY
    return num.coeffs[0] / den.coeffs[0]


def format_limit(v: Limit) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return "inf" if v is INFINITY else "indeterminate"
