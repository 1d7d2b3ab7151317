"""Truncated Laurent series in one distinguished variable with MPoly coefficients.

A :class:`TruncSeries` stores the coefficients of exponents ``low..high``.
Each end is either *exact* (every coefficient beyond it is zero) or *cut*
(coefficients beyond it exist but were discarded).  ``lambda(p)`` with
f_1..f_N is cut below at ``-N``; a power series in z truncated at z^K is
cut above at ``K``.  Every operation computes the window on which its
result is still exact, so a discarded coefficient can never leak into a
residue or a plus-part silently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional

from .mpoly import ONE, ZERO, MPoly
from .variables import Grading, VarId


class TruncationError(ValueError):
    """A requested coefficient lies outside the exactly known window."""


@dataclass(frozen=True)
class TruncSeries:
    var: VarId
    low: int
    high: int
    coeffs: tuple
    cut_low: bool = False
    cut_high: bool = False

    def __post_init__(self):
        if self.low > self.high + 1:
            raise ValueError("low must not exceed high + 1")
        if len(self.coeffs) != self.high - self.low + 1:
            raise ValueError("coefficient count does not match the exponent window")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_terms(cls, var: VarId, terms: Mapping[int, object], low: Optional[int] = None,
                   high: Optional[int] = None, cut_low: bool = False,
                   cut_high: bool = False) -> "TruncSeries":
        terms = {e: (c if isinstance(c, MPoly) else MPoly.const(c)) for e, c in terms.items()}
        nz = [e for e, c in terms.items() if c]
        if low is None:
            low = min(nz, default=0)
        if high is None:
            high = max(nz, default=low - 1)
        if any(e < low or e > high for e in nz):
            raise ValueError("term outside the declared window")
        coeffs = tuple(terms.get(e, ZERO) for e in range(low, high + 1))
        return cls(var, low, high, coeffs, cut_low, cut_high)

    @classmethod
    def zero(cls, var: VarId) -> "TruncSeries":
        return cls(var, 0, -1, ())

    @classmethod
    def one(cls, var: VarId) -> "TruncSeries":
        return cls(var, 0, 0, (ONE,))

    # -- access -----------------------------------------------------------

    def is_known(self, e: int) -> bool:
        if e < self.low:
            return not self.cut_low
        if e > self.high:
            return not self.cut_high
        return True

    def coeff(self, e: int) -> MPoly:
        if self.low <= e <= self.high:
            return self.coeffs[e - self.low]
        if not self.is_known(e):
            raise TruncationError(
                f"coefficient of {e} is outside the exact window [{self.low}, {self.high}]")
        return ZERO

    def terms(self) -> dict:
        return {e: c for e, c in zip(range(self.low, self.high + 1), self.coeffs) if c}

    def support(self) -> tuple:
        """Lowest and highest exponents that may carry nonzero coefficients."""
        nz = [e for e, c in zip(range(self.low, self.high + 1), self.coeffs) if c]
        lo = self.low if self.cut_low else min(nz, default=None)
        hi = self.high if self.cut_high else max(nz, default=None)
        if hi is None and self.cut_low:
            hi = self.low - 1
        if lo is None and self.cut_high:
            lo = self.high + 1
        return lo, hi

    def _check_var(self, other: "TruncSeries"):
        if self.var != other.var:
            raise ValueError(f"series variables differ: {self.var} vs {other.var}")

    def restrict(self, low: Optional[int] = None, high: Optional[int] = None) -> "TruncSeries":
        """Discard coefficients outside ``[low, high]`` (marking those ends cut)."""
        lo, hi, cl, ch = self.low, self.high, self.cut_low, self.cut_high
        if low is not None and low > lo:
            lo, cl = low, True
        if high is not None and high < hi:
            hi, ch = high, True
        if lo > hi + 1:
            hi = lo - 1
        coeffs = tuple(self.coeffs[e - self.low] for e in range(lo, hi + 1))
        return TruncSeries(self.var, lo, hi, coeffs, cl, ch)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.from_terms(self.var, {0: other})
        self._check_var(other)
        lo = max(s.low for s in (self, other) if s.cut_low) if (self.cut_low or other.cut_low) \
            else min(self.low, other.low)
        hi = min(s.high for s in (self, other) if s.cut_high) if (self.cut_high or other.cut_high) \
            else max(self.high, other.high)
        coeffs = []
        for e in range(lo, hi + 1):
            coeffs.append(self.coeff(e) + other.coeff(e))
        return TruncSeries(self.var, lo, max(hi, lo - 1), tuple(coeffs),
                           self.cut_low or other.cut_low, self.cut_high or other.cut_high)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.var, self.low, self.high, tuple(-c for c in self.coeffs),
                           self.cut_low, self.cut_high)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.from_terms(self.var, {0: other})
        return self + (-other)

    def scale(self, c) -> "TruncSeries":
        """Multiply every coefficient by a scalar or an MPoly."""
        if isinstance(c, MPoly):
            coeffs = tuple(x * c for x in self.coeffs)
        else:
            coeffs = tuple(x.scale(c) for x in self.coeffs)
        return TruncSeries(self.var, self.low, self.high, coeffs, self.cut_low, self.cut_high)

    def map_coeffs(self, fn) -> "TruncSeries":
        return TruncSeries(self.var, self.low, self.high, tuple(fn(c) for c in self.coeffs),
                           self.cut_low, self.cut_high)

    def mul(self, other: "TruncSeries", low: Optional[int] = None, high: Optional[int] = None,
            grading: Optional[Grading] = None, bound: Optional[int] = None) -> "TruncSeries":
        """Product on its exact window, optionally restricted to ``[low, high]``.

        ``grading``/``bound`` truncate the MPoly coefficients by weight.
        """
        self._check_var(other)
        a, b = self, other
        if (a.cut_low and b.cut_high) or (a.cut_high and b.cut_low):
            raise TruncationError("product of series cut in opposite directions is undefined")
        a_lo, a_hi = a.support()
        b_lo, b_hi = b.support()
        if a_lo is None or b_lo is None:
            return TruncSeries.zero(a.var)
        lo = a_lo + b_lo
        hi = a_hi + b_hi
        cut_low = a.cut_low or b.cut_low
        cut_high = a.cut_high or b.cut_high
        if a.cut_low:
            lo = max(lo, a.low + b_hi)
        if b.cut_low:
            lo = max(lo, b.low + a_hi)
        if a.cut_high:
            hi = min(hi, a.high + b_lo)
        if b.cut_high:
            hi = min(hi, b.high + a_lo)
        if low is not None and low > lo:
            lo, cut_low = low, True
        if high is not None and high < hi:
            hi, cut_high = high, True
        coeffs = []
        for e in range(lo, hi + 1):
            acc = ZERO
            i_lo = max(a.low, e - b.high)
            i_hi = min(a.high, e - b.low)
            for i in range(i_lo, i_hi + 1):
                ca = a.coeffs[i - a.low]
                if not ca:
                    continue
                cb = b.coeffs[e - i - b.low]
                if cb:
                    acc = acc + ca.mul(cb, grading, bound)
            coeffs.append(acc)
        return TruncSeries(a.var, lo, max(hi, lo - 1), tuple(coeffs), cut_low, cut_high)

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def pow(self, n: int, low: Optional[int] = None, high: Optional[int] = None,
            grading: Optional[Grading] = None, bound: Optional[int] = None) -> "TruncSeries":
        """Nonnegative power by repeated squaring."""
        if n < 0:
            return series_inverse(self).pow(-n, low, high, grading, bound)
        result = TruncSeries.one(self.var)
        base = self
        while n:
            if n & 1:
                result = result.mul(base, None, high, grading, bound)
            n >>= 1
            if n:
                base = base.mul(base, None, high, grading, bound)
        if low is not None or high is not None:
            result = result.restrict(low, high)
        return result

    def __pow__(self, n: int):
        return self.pow(n)

    def derivative(self) -> "TruncSeries":
        """d/d(var), exponent e -> e * c_e at e - 1."""
        coeffs = tuple(c.scale(e) for e, c in zip(range(self.low, self.high + 1), self.coeffs))
        return TruncSeries(self.var, self.low - 1, self.high - 1, coeffs,
                           self.cut_low, self.cut_high)

    def truncate_coeffs(self, grading: Grading, bound: int) -> "TruncSeries":
        return self.map_coeffs(lambda c: c.truncate(grading, bound))

    def equals(self, other: "TruncSeries") -> bool:
        """Agreement on every exponent known in both series."""
        self._check_var(other)
        lo = max(self.low if self.cut_low else -10**9, other.low if other.cut_low else -10**9)
        hi = min(self.high if self.cut_high else 10**9, other.high if other.cut_high else 10**9)
        lo = max(lo, min(self.low, other.low))
        hi = min(hi, max(self.high, other.high))
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, hi + 1))

    def __str__(self):
        from .text import format_var
        parts = []
        for e, c in sorted(self.terms().items(), reverse=True):
            parts.append(f"({c})*{format_var(self.var)}^{e}")
        body = " + ".join(parts) or "0"
        if self.cut_low:
            body += f" + O({format_var(self.var)}^{self.low - 1})"
        if self.cut_high:
            body += f" + O({format_var(self.var)}^{self.high + 1})"
        return body


def series_mul(a: TruncSeries, b: TruncSeries, low: Optional[int] = None,
               high: Optional[int] = None) -> TruncSeries:
    return a.mul(b, low, high)


def series_plus_part(a: TruncSeries) -> TruncSeries:
    """Keep exactly the terms of nonnegative exponent."""
    if a.cut_low and a.low > 0:
        raise TruncationError("plus part needs every nonnegative exponent to be known")
    lo = max(a.low, 0)
    hi = a.high
    if hi < lo:
        return TruncSeries(a.var, 0, -1, (), False, a.cut_high)
    coeffs = tuple(a.coeffs[e - a.low] for e in range(lo, hi + 1))
    return TruncSeries(a.var, lo, hi, coeffs, False, a.cut_high)


def series_residue(a: TruncSeries) -> MPoly:
    """Coefficient of ``var**-1``."""
    if not a.is_known(-1):
        raise TruncationError("the coefficient of var^-1 was truncated away")
    return a.coeff(-1)


def series_inverse(a: TruncSeries, low: Optional[int] = None) -> TruncSeries:
    """``1/a`` for a series cut below whose top coefficient is a nonzero constant.

    ``a = c var^h (1 + lower terms)``; the inverse is exact down to
    ``low`` (default: as deep as the input allows).
    """
    if a.cut_high:
        raise TruncationError("inverse needs an exact top coefficient")
    _, h = a.support()
    if h is None:
        raise ZeroDivisionError("inverse of zero series")
    top = a.coeff(h)
    if not top.is_constant():
        raise ValueError("inverse needs a constant top coefficient")
    c = top.constant_term()
    depth_known = (h - a.low) if a.cut_low else None
    depth = depth_known
    if low is not None:
        depth = -h - low if depth is None else min(depth, -h - low)
    if depth is None:
        raise ValueError("an exact Laurent polynomial needs an explicit floor for its inverse")
    inv_c = Fraction(1) / c
    # inverse = sum_k q_k var^(-h-k); sum_j a_{h-j} q_{k-j} = delta_{k0}
    qs = [MPoly.const(inv_c)]
    for k in range(1, depth + 1):
        acc = ZERO
        for j in range(1, k + 1):
            aj = a.coeff(h - j) if a.is_known(h - j) else None
            if aj is None:
                raise TruncationError("inverse depth exceeds input depth")
            if aj:
                acc = acc + aj * qs[k - j]
        qs.append(acc.scale(-inv_c))
    lo = -h - depth
    coeffs = tuple(reversed(qs))
    return TruncSeries(a.var, lo, -h, coeffs, True, False)


def series_log(a: TruncSeries, high: Optional[int] = None) -> TruncSeries:
    """``log(1 + N)`` for a power series with constant term 1 and N of positive order."""
    if a.cut_low and a.low > 0:
        raise TruncationError("log needs the constant term")
    if a.coeff(0) != 1:
        raise ValueError("log needs constant term 1")
    if any(c for e, c in a.terms().items() if e < 0):
        raise ValueError("log needs a power series")
    if high is None:
        if not a.cut_high:
            raise ValueError("log of an exact polynomial needs an explicit ceiling")
        high = a.high
    n = (a - TruncSeries.one(a.var)).restrict(low=0, high=high)
    n = TruncSeries(n.var, n.low, n.high, n.coeffs, False, True)
    result = TruncSeries(a.var, 0, high, (ZERO,) * (high + 1), False, True)
    power = n
    k = 1
    while any(power.coeffs):
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
        power = power.mul(n, high=high)
        k += 1
    return result


def series_compose(outer: TruncSeries, inner: TruncSeries, low: int) -> TruncSeries:
    """``outer(inner)`` where ``inner = var' + lower terms`` (cut below).

    ``outer`` must be exact above; the result lives in ``inner.var`` and is
    exact down to ``low`` (or less deep if the inputs do not allow it).
    """
    if outer.cut_high:
        raise TruncationError("outer series must be exact at the top")
    _, h_in = inner.support()
    if h_in != 1 or inner.coeff(1) != 1:
        raise ValueError("inner series must have leading term var^1")
    floor = low
    if outer.cut_low:
        floor = max(floor, outer.low)
    top = max(outer.terms(), default=0)
    # inner^e at exponent m needs inner down to m - (e - 1)
    inner = inner.restrict(low=floor - max(top - 1, 0) - 1)
    inv = series_inverse(inner, low=floor - 1) if any(e < 0 for e in outer.terms()) else None
    acc = TruncSeries.from_terms(inner.var, {}, low=floor, high=floor - 1, cut_low=True)
    for e, c in outer.terms().items():
        if e >= 0:
            pw = inner.pow(e, low=floor)
        else:
            pw = inv.pow(-e, low=floor)
        acc = acc + pw.scale(c)
    return acc.restrict(low=floor)


def series_reversion(lam: TruncSeries, var: VarId) -> TruncSeries:
    """Compositional inverse of ``lam = p + sum_{k>=1} a_k p^-k``.

    Returns ``p(var) = var + sum_k b_k var^-k`` exact to the same depth as
    ``lam``; the b_k are solved one at a time from ``lam(p(var)) = var``.
    """
    terms = lam.terms()
    if terms.get(1) != ONE or any(e > 1 or e == 0 for e in terms):
        raise ValueError("reversion needs the shape p + (terms of exponent <= -1)")
    if not lam.cut_low:
        depth = -min(terms, default=1)
        depth = max(depth, 1)
    else:
        depth = -lam.low
    bs: dict = {1: ONE}
    for k in range(1, depth + 1):
        trial = TruncSeries.from_terms(var, bs, low=-k, high=1, cut_low=True)
        comp = series_compose(lam, trial, low=-k)
        bs[-k] = -comp.coeff(-k)
    return TruncSeries.from_terms(var, bs, low=-depth, high=1, cut_low=True)
