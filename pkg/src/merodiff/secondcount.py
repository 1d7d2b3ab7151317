"""Second-type counts and the theta / P generating series in t_2, t_3, ...

``theta^a_{b,c}`` collects second-type counts (one zero, two free poles),
``P^{a,b}`` collects first-type counts.  Both are homogeneous: theta of
weight ``a + 2 - b - c`` and P of weight ``a + b + 2`` with ``deg t_d = d``,
which is what keeps every index sum in the seven-term relation finite.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence

from .algebra import (
    MPoly,
    ONE,
    ZERO,
    Family,
    Grading,
    TSECOND_GRADING,
    poly_inverse,
    poly_log,
    t,
    x,
    y,
    z,
)
from .firstcount import FirstProfile, ProfileError, count_first_coeff
from .oracles import residue_count_second_n1

ThetaFunc = Callable[[int, int, int], MPoly]
PFunc = Callable[[int, int], MPoly]


@dataclass(frozen=True)
class SecondProfile:
    a: int
    b: int
    c: int
    poles: tuple

    def __init__(self, a: int, b: int, c: int, poles: Sequence[int] = ()):
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))
        object.__setattr__(self, "c", int(c))
        object.__setattr__(self, "poles", tuple(int(d) for d in poles))
        if self.a < 0 or self.b < 1 or self.c < 1:
            raise ProfileError("need a >= 0 and b, c >= 1")
        if any(d < 2 for d in self.poles):
            raise ProfileError("residueless pole orders must be >= 2")
        if self.a - self.b - self.c - sum(self.poles) != -2:
            raise ProfileError("degree balance violated: a - b - c - sum d != -2")


def count_second_closed(p: SecondProfile) -> int:
    """``n! prod (d_i - 1)``."""
    return math.factorial(len(p.poles)) * math.prod(d - 1 for d in p.poles)


def compositions(total: int, smallest: int = 2):
    """Ordered tuples of parts ``>= smallest`` summing to ``total``."""
    if total == 0:
        yield ()
        return
    for first in range(smallest, total + 1):
        for rest in compositions(total - first, smallest):
            yield (first,) + rest


def _tmono(ds) -> MPoly:
    m: dict = {}
    for d in ds:
        m[t(d)] = m.get(t(d), 0) + 1
    return MPoly.monomial(m)


def theta_weight(a: int, b: int, c: int) -> int:
    return a + 2 - b - c


@lru_cache(maxsize=None)
def _theta_closed(s: int) -> MPoly:
    acc = ZERO
    for ds in compositions(s):
        acc = acc + _tmono(ds).scale(math.prod(d - 1 for d in ds))
    return acc


def theta_closed(a: int, b: int, c: int, weight_bound: Optional[int] = None) -> MPoly:
    """Sum over compositions ``(d_1..d_n)`` of ``a+2-b-c`` of ``prod (d_i - 1) t_{d_i}``."""
    if a < 0 or b < 1 or c < 1:
        raise ValueError("need a >= 0 and b, c >= 1")
    s = theta_weight(a, b, c)
    if s < 0 or (weight_bound is not None and s > weight_bound):
        return ZERO
    return _theta_closed(s)


_ZT_GRADING = Grading({Family.Z: 1, Family.TSECOND: 0})
_XYT_GRADING = Grading({Family.X: 1, Family.Y: 1, Family.TSECOND: 0})


def B_series(var, max_index: int) -> MPoly:
    """``B(v) = 1 - sum_{i>=2} (i-1) v^i t_i`` for ``i <= max_index``."""
    acc = ONE
    for i in range(2, max_index + 1):
        acc = acc - MPoly.monomial({var: i, t(i): 1}, i - 1)
    return acc


def theta_via_coeff(a: int, b: int, c: int, weight_bound: Optional[int] = None) -> MPoly:
    """``[z^(a+2-b-c)] 1/B(z)``."""
    if a < 0 or b < 1 or c < 1:
        raise ValueError("need a >= 0 and b, c >= 1")
    s = theta_weight(a, b, c)
    if s < 0 or (weight_bound is not None and s > weight_bound):
        return ZERO
    inv = poly_inverse(B_series(z(), max(s, 2)), _ZT_GRADING, s)
    return inv.coeff_of(z(), s)


@lru_cache(maxsize=None)
def _first_count_sorted(a: int, b: int, poles: tuple) -> int:
    return count_first_coeff(FirstProfile(a, b, poles))


@lru_cache(maxsize=None)
def _p_exact(a: int, b: int) -> MPoly:
    acc = ZERO
    for ds in compositions(a + b + 2):
        cnt = _first_count_sorted(a, b, tuple(sorted(ds, reverse=True)))
        if cnt:
            acc = acc + _tmono(ds).scale(Fraction(cnt, math.factorial(len(ds))))
    return acc


def p_series_from_counts(a: int, b: int, weight_bound: Optional[int] = None) -> MPoly:
    """``sum_n 1/n! sum_{ordered d} |H_0(a,b;-d)| t_{d_1}...t_{d_n}``."""
    if a < 0 or b < 0:
        raise ValueError("need a, b >= 0")
    if weight_bound is not None and a + b + 2 > weight_bound:
        return ZERO
    return _p_exact(a, b)


def A_series(order: int) -> MPoly:
    """``A(x,y) = 1 - sum_{i>=1} x y h_{i-1}(x,y) t_{i+1}`` up to total x,y-degree ``order``."""
    acc = ONE
    for i in range(1, order):
        for k in range(i):
            acc = acc - MPoly.monomial({x(): k + 1, y(): i - k, t(i + 1): 1})
    return acc


def p_series_via_logA(x_order: int, y_order: int, weight_bound: Optional[int] = None) -> dict:
    """Read every ``P^{a,b}`` with ``a+1 <= x_order``, ``b+1 <= y_order`` off ``-log A``."""
    if x_order < 1 or y_order < 1:
        raise ValueError("orders must be >= 1")
    order = x_order + y_order
    neg_log = -poly_log(A_series(order), _XYT_GRADING, order)
    out = {}
    for a in range(x_order):
        for b in range(y_order):
            poly = neg_log.coeff_of(x(), a + 1).coeff_of(y(), b + 1)
            if weight_bound is not None:
                poly = poly.truncate(TSECOND_GRADING, weight_bound)
            out[(a, b)] = poly
    return out


@dataclass(frozen=True)
class ABSeries:
    A: MPoly
    B: MPoly
    Atilde: MPoly


def ab_series(order: int) -> ABSeries:
    A = A_series(order)
    lead = MPoly.var(x(), -1) - MPoly.var(y(), -1)
    return ABSeries(A, B_series(y(), order), lead * A)


def check_ab_identity(order: int) -> bool:
    """``y^2 d_y Atilde(x,y) == B(y)``."""
    ab = ab_series(order)
    return MPoly.var(y(), 2) * ab.Atilde.diff(y()) == ab.B


# -- seven-term relation ------------------------------------------------------

def _dt(poly: MPoly, *idx: int) -> MPoly:
    """Partial derivatives in t_i; there is no t_1, so those vanish."""
    for i in idx:
        if i < 2:
            return ZERO
        poly = poly.diff(t(i))
    return poly


def default_theta(a: int, b: int, c: int) -> MPoly:
    return theta_closed(a, b, c)


def default_P(a: int, b: int) -> MPoly:
    return p_series_from_counts(a, b)


def wdvv_terms(a: int, d: int, e: int, f: int, c: int,
               theta: Optional[ThetaFunc] = None, P: Optional[PFunc] = None) -> tuple:
    """``(lhs, rhs)`` of the seven-term relation, computed from exact factors.

    Every sum runs over the finite range where its factors can be nonzero,
    read off from the homogeneity weights of theta and P.
    """
    if min(a, d, e, f) < 1 or c < 2:
        raise ValueError("need a, d, e, f >= 1 and c >= 2")
    th = theta or default_theta
    P = P or default_P
    lhs = ZERO
    for b in range(2, a + d + 3 - c):
        lhs = lhs + _dt(P(a, d), c, b) * th(b - 2, e, f)
    th_def = th(d, e, f)
    for b in range(2, d + 3 - e - f):
        lhs = lhs + _dt(P(a, b - 2), c) * _dt(th_def, b)
    rhs = ZERO
    for b in range(2, a + 3 - f):
        rhs = rhs + th(a, f, b) * _dt(P(b - 2, d), e, c)
    rhs = rhs + th(a, f, 1) * _dt(th(d, 1, e), c)
    for b in range(2, d + 3 - e - c):
        rhs = rhs + _dt(P(a, b - 2), f) * _dt(th(d, b, e), c)
    for b1 in range(2, a + 3 - f):
        th1 = th(a, f, b1)
        if not th1:
            continue
        for b2 in range(2, d + 3 - e):
            rhs = rhs + (th1 * th(d, e, b2) * _dt(P(b1 - 2, b2 - 2), c)).scale(b2 - 1)
        for b2 in range(2, d + 3 - e - c):
            rhs = rhs + (th1 * _dt(th(d, e, b2), c) * P(b1 - 2, b2 - 2)).scale(b1 + b2 - 2)
    return lhs, rhs


def wdvv_recursion_check(a: int, d: int, e: int, f: int, c: int, weight_bound: int,
                         theta: Optional[ThetaFunc] = None, P: Optional[PFunc] = None) -> bool:
    lhs, rhs = wdvv_terms(a, d, e, f, c, theta, P)
    return lhs.truncate(TSECOND_GRADING, weight_bound) == rhs.truncate(TSECOND_GRADING, weight_bound)


# -- theta from the recursion ---------------------------------------------------

class UnderdeterminedError(RuntimeError):
    """The recursion needed a theta that is neither a seed nor already solved."""


def _theta_base(a: int, b: int, c: int) -> Optional[MPoly]:
    s = theta_weight(a, b, c)
    if s < 0 or s == 1:
        return ZERO
    if s == 0:
        return ONE
    return None


def theta_seeds() -> dict:
    """``theta^p_{q,r}`` for ``p <= 3`` not fixed by the base properties.

    These have weight 2 or 3, so only single-pole terms occur and the
    coefficient is the one-pole second-type count from the residue oracle.
    """
    seeds = {}
    for p in range(4):
        for q in range(1, p + 2):
            for r in range(1, p + 2):
                if _theta_base(p, q, r) is not None:
                    continue
                s = theta_weight(p, q, r)
                if s == 2 or s == 3:
                    cnt = residue_count_second_n1(p, q, r, s)
                    seeds[(p, q, r)] = MPoly.var(t(s), coeff=cnt)
                else:
                    raise UnderdeterminedError(f"no seed for theta^{p}_{q},{r}")
    return seeds


def solve_theta_by_recursion(max_a: int, weight_bound: int, P: Optional[PFunc] = None) -> dict:
    """Solve the relation at ``d = 3``, ``c = 2`` for ``theta^{a+1}_{e,f}``, a = 3..max_a-1.

    Returns ``{(a, b, c): poly}`` for every ``a <= max_a`` and every ``b, c``
    with nonzero weight-admissible theta, truncated at ``weight_bound``.
    """
    if max_a < 4:
        raise ValueError("max_a must be >= 4")
    P = P or default_P
    known = theta_seeds()

    def th(p: int, q: int, r: int) -> MPoly:
        base = _theta_base(p, q, r)
        if base is not None:
            return base
        try:
            return known[(p, q, r)]
        except KeyError:
            raise UnderdeterminedError(f"theta^{p}_{q},{r} is not determined yet") from None

    for a in range(3, max_a):
        lead = _dt(P(a, 3), 2, a + 3)
        if lead != ONE:
            raise ArithmeticError(f"leading coefficient for a={a} is {lead}, expected 1")
        for e in range(1, a + 2):
            for f in range(1, a + 2 - e):
                target = (a + 1, e, f)

                def th_masked(p, q, r, _target=target):
                    # the unknown enters once, through the b = a+3 term
                    return ZERO if (p, q, r) == _target else th(p, q, r)

                lhs, rhs = wdvv_terms(a, 3, e, f, 2, th_masked, P)
                known[target] = rhs - lhs
    out = {}
    for (p, q, r), poly in known.items():
        if p <= max_a:
            out[(p, q, r)] = poly.truncate(TSECOND_GRADING, weight_bound)
    return out


def count_from_theta(a: int, b: int, c: int, poles: Sequence[int],
                     theta: Optional[ThetaFunc] = None) -> Fraction:
    """Recover ``|H_0(a,-b,-c;-d)|`` from the theta coefficient of ``prod t_{d_i}``."""
    poles = list(poles)
    series = (theta or default_theta)(a, b, c)
    coeff = series.coeff(_tmono(poles).leading_term()[0]) if poles else series.constant_term()
    n = len(poles)
    orderings = math.factorial(n)
    for m in Counter(poles).values():
        orderings //= math.factorial(m)
    # theta carries no 1/n! but sums ordered tuples: coeff = orderings * prod(d-1)
    return coeff * math.factorial(n) / orderings
