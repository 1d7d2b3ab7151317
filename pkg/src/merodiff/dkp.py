"""Dispersionless KP data built from the symbol lambda(p) = p + sum f_i p^-i.

Everything here is exact.  ``lambda(p)`` carries f_1..f_N and is cut below
p^-N, so the window tracking of :class:`~merodiff.algebra.TruncSeries`
certifies that every residue taken is free of the missing f_{N+1}, ...
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Optional

from .algebra import (
    DKP_GRADING,
    ONE,
    ZERO,
    Family,
    Grading,
    MPoly,
    TruncSeries,
    VarId,
    f,
    fd,
    p,
    poly_from_json,
    poly_to_json,
    series_plus_part,
    series_residue,
    w,
    z,
    zeta,
)
from .algebra.mpoly import series_log

RFunc = Callable[[int, int], MPoly]


@dataclass(frozen=True)
class LambdaSeries:
    series: TruncSeries
    max_f: int


def build_lambda(max_f: int, coeff: Callable[[int], MPoly] = None) -> LambdaSeries:
    """``p + f_1/p + ... + f_N/p^N``, cut below ``p^-N``.

    ``coeff(i)`` overrides the coefficient of ``p^-i`` (default ``f_i``).
    """
    if max_f < 1:
        raise ValueError("max_f must be >= 1")
    if coeff is None:
        coeff = lambda i: MPoly.var(f(i))  # noqa: E731
    terms = {1: ONE}
    for i in range(1, max_f + 1):
        terms[-i] = coeff(i)
    return LambdaSeries(TruncSeries.from_terms(p(), terms, low=-max_f, high=1, cut_low=True),
                        max_f)


@lru_cache(maxsize=None)
def _lambda_powers(order: int) -> tuple:
    """``lambda^k`` for k = 0..order, each exact down to p^-(order - k)."""
    lam = build_lambda(max(order - 1, 1)).series
    powers = [TruncSeries.one(p())]
    for k in range(1, order + 1):
        powers.append(powers[-1].mul(lam, low=-(order - k)))
    return tuple(powers)


def compute_w(i: int, lam: Optional[LambdaSeries] = None) -> MPoly:
    """``w_i = res_p lambda(p)^i`` as a polynomial in f."""
    if i < 1:
        raise ValueError("i must be >= 1")
    if lam is None:
        lam = build_lambda(i)
    return series_residue(lam.series.pow(i))


@lru_cache(maxsize=None)
def _f_from_w(max_i: int) -> tuple:
    if max_i == 0:
        return ()
    prev = _f_from_w(max_i - 1)
    sub = {f(k): prev[k - 1] for k in range(1, max_i)}
    wi = compute_w(max_i)
    rest = wi - MPoly.var(f(max_i), coeff=max_i)
    fi = (MPoly.var(w(max_i)) - rest.substitute(sub)).scale(Fraction(1, max_i))
    return prev + (fi,)


def f_from_w(max_i: int) -> dict:
    """Triangular inverse of ``compute_w``: ``{i: f_i(w_1, ..., w_i)}``."""
    if max_i < 1:
        raise ValueError("max_i must be >= 1")
    return {i + 1: poly for i, poly in enumerate(_f_from_w(max_i))}


def w_from_f(max_i: int) -> dict:
    return {i: compute_w(i) for i in range(1, max_i + 1)}


def compute_R_f(i: int, j: int) -> MPoly:
    """``R_{i,j} = -res_p (lambda^j)_+ d_p lambda^i`` in f-variables."""
    if i < 1 or j < 1:
        raise ValueError("i, j must be >= 1")
    powers = _lambda_powers(i + j)
    plus = series_plus_part(powers[j])
    dlam = powers[i].derivative()
    # res(A B) = sum_e A_e B_{-1-e}; A_+ has e >= 0 only
    acc = ZERO
    for e, c in plus.terms().items():
        acc = acc + c * dlam.coeff(-1 - e)
    return -acc


def rewrite_in_w(poly: MPoly, max_i: Optional[int] = None) -> MPoly:
    """Substitute ``f_k = f_k(w)`` in a polynomial in f-variables."""
    ks = [v.index for v in poly.variables() if v.family == Family.F]
    if not ks:
        return poly
    top = max(ks) if max_i is None else max_i
    fw = f_from_w(top)
    return poly.substitute({f(k): fw[k] for k in ks})


def rewrite_in_f(poly: MPoly) -> MPoly:
    """Substitute ``w_k = w_k(f)`` in a polynomial in w-variables."""
    ks = [v.index for v in poly.variables() if v.family == Family.W]
    return poly.substitute({w(k): compute_w(k) for k in ks})


def compute_R(i: int, j: int) -> MPoly:
    """``R_{i,j}`` as a polynomial in w_1, w_2, ...; homogeneous of weight i + j."""
    return rewrite_in_w(compute_R_f(i, j), i + j - 1)


class RTable:
    """Memo table of ``R_{i,j}`` with symmetric storage (key ``i <= j``).

    Fill it once (``fill``) before sharing it between threads.
    """

    def __init__(self, entries: Optional[Mapping] = None):
        self._entries: dict = dict(entries or {})

    def __call__(self, i: int, j: int) -> MPoly:
        return self.get(i, j)

    def get(self, i: int, j: int) -> MPoly:
        key = (min(i, j), max(i, j))
        try:
            return self._entries[key]
        except KeyError:
            poly = compute_R(*key)
            self._entries[key] = poly
            return poly

    def fill(self, max_order: int) -> "RTable":
        for s in range(2, max_order + 1):
            for i in range(1, s // 2 + 1):
                self.get(i, s - i)
        return self

    def perturbed(self, i: int, j: int, delta: MPoly) -> "RTable":
        """A copy with ``delta`` added to ``R_{i,j}`` (and so to ``R_{j,i}``)."""
        out = RTable(self._entries)
        key = (min(i, j), max(i, j))
        out._entries[key] = out.get(*key) + delta
        return out

    @property
    def max_order(self) -> int:
        return max((i + j for i, j in self._entries), default=0)

    def keys(self):
        return sorted(self._entries)

    def to_json(self) -> dict:
        rows = []
        for (i, j) in self.keys():
            poly = poly_to_json(self._entries[(i, j)])
            rows.append({"i": i, "j": j, "poly": poly})
            if i != j:
                rows.append({"i": j, "j": i, "poly": poly})
        return {"maxOrder": self.max_order, "R": rows}

    @classmethod
    def from_json(cls, data: dict) -> "RTable":
        """Load and validate (symmetry, homogeneity, R_{1,i} = w_i)."""
        try:
            rows = data["R"]
            max_order = int(data["maxOrder"])
        except (KeyError, TypeError, ValueError) as exc:
            raise CacheError(f"malformed R-table cache: {exc}") from None
        seen: dict = {}
        for row in rows:
            i, j = int(row["i"]), int(row["j"])
            if i < 1 or j < 1 or i + j > max_order:
                raise CacheError(f"entry ({i},{j}) outside the declared order {max_order}")
            poly = poly_from_json(row["poly"])
            if (i, j) in seen:
                raise CacheError(f"duplicate entry ({i},{j})")
            seen[(i, j)] = poly
        entries = {}
        for (i, j), poly in seen.items():
            other = seen.get((j, i))
            if other is None or other != poly:
                raise CacheError(f"symmetry violated: R_{i},{j} != R_{j},{i}")
            if not poly.is_homogeneous(DKP_GRADING, i + j):
                raise CacheError(f"R_{i},{j} is not homogeneous of weight {i + j}")
            if i == 1 and poly != MPoly.var(w(j)):
                raise CacheError(f"R_1,{j} != w_{j}")
            entries[(min(i, j), max(i, j))] = poly
        return cls(entries)

    def store(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1)

    @classmethod
    def load(cls, path) -> "RTable":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise CacheError(f"malformed R-table cache: {exc}") from None
        return cls.from_json(data)


class CacheError(ValueError):
    """An R-table cache file failed validation."""


# -- flows ------------------------------------------------------------------

def dx(poly: MPoly) -> MPoly:
    """The derivation f_i^(j) -> f_i^(j+1) on differential polynomials."""
    acc: dict = {}
    for mono, c in poly.terms.items():
        for k, (v, e) in enumerate(mono):
            if v.family != Family.FD:
                continue
            rest = dict(mono[:k] + mono[k + 1:])
            if e != 1:
                rest[v] = e - 1
            nv = fd(v.index, v.index2 + 1)
            rest[nv] = rest.get(nv, 0) + 1
            key = tuple(sorted(rest.items()))
            acc[key] = acc.get(key, 0) + c * e
    return MPoly(acc)


def to_diff(poly: MPoly) -> MPoly:
    """Rename f_i to f_i^(0)."""
    return poly.rename(lambda v: fd(v.index, 0) if v.family == Family.F else v)


def dkp_flow(i: int, n: int) -> MPoly:
    """``d f_i / d T_n`` from ``d lambda / d T_n = {(lambda^n)_+, lambda}``."""
    if i < 1 or n < 1:
        raise ValueError("i, n must be >= 1")
    max_f = i + n + 1
    lam = build_lambda(max_f, lambda k: MPoly.var(fd(k, 0))).series
    a = series_plus_part(lam.pow(n))
    lam_x = lam.map_coeffs(dx)
    a_x = a.map_coeffs(dx)
    bracket = a.derivative().mul(lam_x, low=-i) - lam.derivative().mul(a_x, low=-i)
    return bracket.coeff(-i)


def verify_conservation(i: int, j: int, R: Optional[RFunc] = None) -> bool:
    """Check ``d w_i / d T_j = d_x R_{i,j}`` identically in the f^(k)."""
    R = R or compute_R
    wi = to_diff(compute_w(i))
    lhs = ZERO
    for v in wi.variables():
        lhs = lhs + wi.diff(v) * dkp_flow(v.index, j)
    rhs = dx(to_diff(rewrite_in_f(R(i, j))))
    return lhs == rhs


# -- generating function -----------------------------------------------------

_ZZETA_GRADING = Grading({Family.Z: 1, Family.ZETA: 1, Family.W: 0})


def _sym_quotient(i: int, a: VarId, b: VarId) -> MPoly:
    """``(a^i - b^i)/(a^-1 - b^-1) = -a b (a^(i-1) + a^(i-2) b + ... + b^(i-1))``."""
    acc = ZERO
    for k in range(i):
        acc = acc + MPoly.monomial({a: k + 1, b: i - k})
    return -acc


def generating_lhs(order: int, R: Optional[RFunc] = None) -> MPoly:
    R = R or compute_R
    acc = ZERO
    for s in range(2, order + 1):
        for a in range(1, s):
            b = s - a
            acc = acc + R(a, b).scale(Fraction(1, a * b)) * MPoly.monomial({z(): a, zeta(): b})
    return acc


def generating_rhs(order: int) -> MPoly:
    arg = ONE
    for i in range(1, order):
        arg = arg - _sym_quotient(i, z(), zeta()).scale(Fraction(1, i)) * MPoly.var(w(i))
    return series_log(arg, _ZZETA_GRADING, order)


def generating_identity_check(order: int, R: Optional[RFunc] = None) -> bool:
    """``sum R_{p,q} z^p zeta^q / pq == log(1 - sum_i w_i/i (z^i - zeta^i)/(1/z - 1/zeta))``
    for all ``p + q <= order``."""
    if order < 2:
        raise ValueError("order must be >= 2")
    return generating_lhs(order, R) == generating_rhs(order)
