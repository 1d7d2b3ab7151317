"""The genus-0 potential F(t^*) of first-type counts and its identities.

F is quadratic in the coordinates t^a, a >= 0, and every monomial
``t^a t^b t^{-c_1} ... t^{-c_n}`` satisfies ``a + b + 2 = sum c_i``.  Call
``sum c_i`` the *pole weight* of a monomial (``FROB_GRADING``).  Derivatives
of F are materialized lazily: for a third derivative truncated at pole
weight K only finitely many monomials of F contribute, so every check below
is exact on the monomials it compares.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .algebra import (
    FROB_GRADING,
    ONE,
    ZERO,
    Family,
    MPoly,
    TruncationError,
    TruncSeries,
    p as pvar,
    series_plus_part,
    tp,
    w,
)
from .algebra.mpoly import as_monomial
from .dkp import RTable, build_lambda, f_from_w
from .firstcount import FirstProfile, count_first, pole_multisets


def eta_pair(alpha: int) -> int:
    """The metric pairs t^alpha with t^(-alpha-2)."""
    if alpha == -1:
        raise ValueError("alpha = -1 is not an index")
    return -alpha - 2


def pole_weight(alpha: int) -> int:
    return -alpha if alpha < 0 else 0


@dataclass(frozen=True)
class FTrunc:
    """Truncation of a materialized F: ``a, b <= max_pos`` and pole weight ``<= max_weight``."""
    max_pos: int
    max_weight: int

    def __post_init__(self):
        if self.max_pos < 0 or self.max_weight < 2:
            raise ValueError("need max_pos >= 0 and max_weight >= 2")


@lru_cache(maxsize=None)
def _count(a: int, b: int, poles: tuple) -> int:
    return count_first(FirstProfile(a, b, poles))


def f_coefficient(a: int, b: int, poles: Sequence[int]) -> Fraction:
    """Coefficient of the monomial ``t^a t^b prod t^{-c}`` in F.

    The printed sum runs over ordered (a, b) with weight 1/2 and ordered
    poles with weight 1/n!; collecting one monomial gives
    ``|H| * (1 if a != b else 1/2) / prod(mult_c!)``.
    """
    poles = tuple(sorted(poles, reverse=True))
    a, b = min(a, b), max(a, b)
    if a < 0 or not poles or a + b + 2 != sum(poles):
        return Fraction(0)
    cnt = _count(a, b, poles)
    if not cnt:
        return Fraction(0)
    sym = Fraction(1) if a != b else Fraction(1, 2)
    mult = math.prod(math.factorial(m) for m in Counter(poles).values())
    return cnt * sym / mult


def _split(mono) -> tuple:
    """``(nonneg indices with repetition, pole orders)`` of a Tfrob monomial."""
    nonneg, poles = [], []
    for v, e in mono:
        if v.family != Family.TFROB or e < 0:
            raise ValueError("not a monomial of F")
        (nonneg if v.index >= 0 else poles).extend([abs(v.index)] * e)
    return nonneg, poles


class LazyF:
    """F as a coefficient function, with optional additive perturbations.

    ``overrides`` maps monomials to an amount added to their coefficient;
    it exists for falsifiability probes.
    """

    def __init__(self, overrides: Optional[Mapping] = None):
        self.overrides = {as_monomial(k): Fraction(v) for k, v in (overrides or {}).items()}
        self._deriv_cache: dict = {}

    def coeff(self, mono) -> Fraction:
        mono = as_monomial(mono)
        nonneg, poles = _split(mono)
        base = f_coefficient(*nonneg, poles) if len(nonneg) == 2 else Fraction(0)
        return base + self.overrides.get(mono, 0)

    def materialize(self, trunc: FTrunc) -> MPoly:
        terms = {}
        for s in range(2, trunc.max_weight + 1):
            for poles in pole_multisets(s):
                for a in range(0, (s - 2) // 2 + 1):
                    b = s - 2 - a
                    if b > trunc.max_pos:
                        continue
                    m: dict = {}
                    for i in (a, b):
                        m[tp(i)] = m.get(tp(i), 0) + 1
                    for c in poles:
                        m[tp(-c)] = m.get(tp(-c), 0) + 1
                    key = as_monomial(m)
                    terms[key] = f_coefficient(a, b, poles)
        for key, delta in self.overrides.items():
            nonneg, poles = _split(key)
            if (len(nonneg) == 2 and max(nonneg) <= trunc.max_pos
                    and sum(poles) <= trunc.max_weight):
                terms[key] = terms.get(key, 0) + delta
        return MPoly(terms)

    def _candidates(self, fixed: Sequence[int], bound: int):
        """Monomials of F divisible by ``prod t^fixed`` whose cofactor has pole
        weight ``<= bound``."""
        nonneg = [i for i in fixed if i >= 0]
        if len(nonneg) > 2:
            return
        fixed_poles = [-i for i in fixed if i < 0]
        for extra_w in range(0, bound + 1):
            for extra in pole_multisets(extra_w):
                poles = fixed_poles + list(extra)
                if not poles:
                    continue
                total = sum(poles) - 2
                if len(nonneg) == 2:
                    pairs = [tuple(nonneg)] if sum(nonneg) == total else []
                elif len(nonneg) == 1:
                    pairs = [(nonneg[0], total - nonneg[0])] if total >= nonneg[0] else []
                    pairs = [pr for pr in pairs if pr[1] >= 0]
                else:
                    pairs = [(i, total - i) for i in range(0, total // 2 + 1)]
                for a, b in pairs:
                    yield a, b, poles

    def derivative(self, indices: Sequence[int], bound: int) -> MPoly:
        """``d^k F / dt^{i_1} ... dt^{i_k}`` restricted to pole weight ``<= bound``."""
        key = (tuple(sorted(indices)), bound)
        hit = self._deriv_cache.get(key)
        if hit is not None:
            return hit
        need = Counter(indices)
        acc: dict = {}
        seen = set()
        for a, b, poles in self._candidates(indices, bound):
            full = Counter(-c for c in poles)
            full[a] += 1
            full[b] += 1
            mono = as_monomial({tp(i): e for i, e in full.items()})
            if mono in seen:
                continue
            seen.add(mono)
            c = self.coeff(mono)
            if not c:
                continue
            factor = 1
            rest = dict(full)
            for i, r in need.items():
                factor *= math.perm(full[i], r)
                rest[i] -= r
            rmono = as_monomial({tp(i): e for i, e in rest.items() if e})
            acc[rmono] = acc.get(rmono, 0) + c * factor
        # overrides outside the enumerated shapes still count
        for mono, delta in self.overrides.items():
            if mono in seen:
                continue
            full = Counter({v.index: e for v, e in mono})
            if any(full[i] < r for i, r in need.items()):
                continue
            rest = dict(full)
            factor = 1
            for i, r in need.items():
                factor *= math.perm(full[i], r)
                rest[i] -= r
            rmono = as_monomial({tp(i): e for i, e in rest.items() if e})
            if FROB_GRADING.monomial_weight(rmono) <= bound:
                acc[rmono] = acc.get(rmono, 0) + delta * factor
        out = MPoly(acc)
        self._deriv_cache[key] = out
        return out


class FPotential:
    """A materialized F together with the truncation it was built at.

    ``derivative`` is exact whenever the monomials it needs all lie inside
    the truncation, and raises :class:`TruncationError` otherwise.
    """

    def __init__(self, poly: MPoly, trunc: FTrunc):
        self.poly = poly
        self.trunc = trunc
        self._cache: dict = {}

    def __eq__(self, other):
        if isinstance(other, FPotential):
            return self.poly == other.poly and self.trunc == other.trunc
        return NotImplemented

    def __hash__(self):
        return hash((self.poly, self.trunc))

    def __repr__(self):
        return f"FPotential({len(self.poly)} terms, {self.trunc})"

    def coeff(self, mono) -> Fraction:
        return self.poly.coeff(mono)

    def derivative(self, indices: Sequence[int], bound: int) -> MPoly:
        need = bound + sum(pole_weight(i) for i in indices)
        if need > self.trunc.max_weight or need - 2 > self.trunc.max_pos:
            raise TruncationError(
                f"derivative {tuple(indices)} to pole weight {bound} needs "
                f"max_weight >= {need} and max_pos >= {need - 2}, have {self.trunc}")
        key = (tuple(sorted(indices)), bound)
        if key not in self._cache:
            out = self.poly
            for i in indices:
                out = out.diff(tp(i))
            self._cache[key] = out.truncate(FROB_GRADING, bound)
        return self._cache[key]


# -- builders -------------------------------------------------------------------

def build_F_from_counts(trunc: FTrunc, source: Optional[LazyF] = None) -> FPotential:
    return FPotential((source or LazyF()).materialize(trunc), trunc)


def build_F_residue(trunc: FTrunc) -> FPotential:
    """``res_p P~(lambda(p))_+ d_p P~(lambda(p)) / 2`` with ``w_k = -k t^{-k-1}``.

    ``P~(lambda) = sum_{alpha <= max_pos} t^alpha lambda^(alpha+1)/(alpha+1)``;
    coefficients are truncated at pole weight ``max_weight``.
    """
    max_f = 2 * trunc.max_pos + 1
    bound = trunc.max_weight
    top = min(max_f, bound - 1)
    fw = f_from_w(top) if top >= 1 else {}
    sub = {w(k): MPoly.var(tp(-k - 1), coeff=-k) for k in range(1, top + 1)}
    coeffs = {}
    for i in range(1, max_f + 1):
        coeffs[i] = fw[i].substitute(sub).truncate(FROB_GRADING, bound) if i <= top else ZERO
    lam = build_lambda(max_f, lambda i: coeffs[i]).series
    ptilde = TruncSeries.zero(pvar())
    power = TruncSeries.one(pvar())
    for alpha in range(trunc.max_pos + 1):
        power = power.mul(lam, grading=FROB_GRADING, bound=bound)
        ptilde = ptilde + power.scale(MPoly.var(tp(alpha), coeff=Fraction(1, alpha + 1)))
    plus = series_plus_part(ptilde)
    dp = ptilde.derivative()
    acc = ZERO
    for e, c in plus.terms().items():
        if not dp.is_known(-1 - e):
            raise TruncationError(f"p^{-1 - e} of d_p P~ is not exact")
        acc = acc + c.mul(dp.coeff(-1 - e), FROB_GRADING, bound)
    return FPotential(acc.scale(Fraction(1, 2)), trunc)


# -- WDVV, unit, Euler -----------------------------------------------------------

def _side(F, i: int, j: int, k: int, l: int, bound: int) -> MPoly:
    """``sum_mu F_{i j mu} F_{nu k l}`` with ``nu = -mu-2``, pole weight ``<= bound``."""
    n_ij = pole_weight(i) + pole_weight(j)
    n_kl = pole_weight(k) + pole_weight(l)
    acc = ZERO
    # mu >= 0 pairs with a pole of order mu + 2 on the (k, l) side
    for mu in range(0, bound + n_ij - 1):
        left = F.derivative((i, j, mu), bound)
        if left:
            right = F.derivative((eta_pair(mu), k, l), bound)
            if right:
                acc = acc + left.mul(right, FROB_GRADING, bound)
    # mu = -c pairs with the nonnegative index c - 2 on the (k, l) side
    for c in range(2, bound + n_kl + 1):
        left = F.derivative((i, j, -c), bound)
        if left:
            right = F.derivative((c - 2, k, l), bound)
            if right:
                acc = acc + left.mul(right, FROB_GRADING, bound)
    return acc


def wdvv_sides(alpha: int, beta: int, gamma: int, delta: int, bound: int,
               potential=None) -> tuple:
    for i in (alpha, beta, gamma, delta):
        if i == -1:
            raise ValueError("alpha = -1 is not an index")
    F = potential if potential is not None else LazyF()
    return (_side(F, alpha, beta, gamma, delta, bound),
            _side(F, alpha, gamma, beta, delta, bound))


def check_wdvv_F(alpha: int, beta: int, gamma: int, delta: int, bound: int = 10,
                 potential=None) -> bool:
    """``F_{ab mu} eta^{mu nu} F_{nu c d} == F_{a c mu} eta^{mu nu} F_{nu b d}`` on all
    monomials of pole weight ``<= bound``."""
    lhs, rhs = wdvv_sides(alpha, beta, gamma, delta, bound, potential)
    return lhs == rhs


def wdvv_sweep(index_bound: int, bound: int = 10, potential=None) -> list:
    """Every quadruple with ``|index| <= index_bound``; returns the failing ones."""
    F = potential if potential is not None else LazyF()
    idx = [i for i in range(-index_bound, index_bound + 1) if i != -1]
    memo: dict = {}

    def side(i, j, k, l):
        key = (tuple(sorted((i, j))), tuple(sorted((k, l))))
        key = min(key, key[::-1])
        if key not in memo:
            memo[key] = _side(F, i, j, k, l, bound)
        return memo[key]

    bad = []
    for a in idx:
        for b in idx:
            for c in idx:
                for d in idx:
                    if side(a, b, c, d) != side(a, c, b, d):
                        bad.append((a, b, c, d))
    return bad


def check_unit(alpha: int, beta: int, bound: int = 12, potential=None) -> bool:
    """``d^3 F / dt^0 dt^alpha dt^beta == delta_{alpha+beta,-2}`` up to pole weight ``bound``."""
    F = potential if potential is not None else LazyF()
    want = ONE if alpha + beta == -2 else ZERO
    return F.derivative((0, alpha, beta), bound) == want


def euler_E(poly: MPoly) -> MPoly:
    """``sum_{alpha >= 0} t^alpha d/dt^alpha``: scales a monomial by its nonnegative degree."""
    return MPoly({m: c * sum(e for v, e in m if v.index >= 0) for m, c in poly.terms.items()})


def euler_Etilde(poly: MPoly) -> MPoly:
    """``sum_alpha alpha t^alpha d/dt^alpha``."""
    return MPoly({m: c * sum(v.index * e for v, e in m) for m, c in poly.terms.items()})


def unit_e(poly: MPoly) -> MPoly:
    return poly.diff(tp(0))


def check_euler(F) -> tuple:
    """``(E F == 2F, Etilde F == -2F)``; F may be an MPoly, an FPotential or an FTrunc."""
    if isinstance(F, FTrunc):
        F = build_F_from_counts(F)
    if isinstance(F, FPotential):
        F = F.poly
    return euler_E(F) == F.scale(2), euler_Etilde(F) == F.scale(-2)


def check_euler_commutator(g: MPoly) -> bool:
    """``[e, E] g == e g``."""
    return unit_e(euler_E(g)) - euler_E(unit_e(g)) == unit_e(g)


# -- the dKP subsystem -------------------------------------------------------------

def second_derivative_in_w(alpha: int, beta: int, potential=None) -> MPoly:
    """``d^2 F / dt^alpha dt^beta`` (alpha, beta >= 0) rewritten by ``t^{-c} = -w_{c-1}/(c-1)``."""
    if alpha < 0 or beta < 0:
        raise ValueError("alpha, beta must be >= 0")
    F = potential if potential is not None else LazyF()
    # the result is homogeneous of pole weight alpha + beta + 2
    d2 = F.derivative((alpha, beta), alpha + beta + 2)
    sub = {}
    for v in d2.variables():
        c = -v.index
        sub[v] = MPoly.var(w(c - 1), coeff=Fraction(-1, c - 1))
    return d2.substitute(sub)


def subsystem_sign(alpha: int, beta: int, table: Optional[RTable] = None, potential=None) -> int:
    """+1 if ``d^2 F`` equals ``R/((alpha+1)(beta+1))``, -1 if it equals its negative, else 0."""
    table = table if table is not None else RTable()
    lhs = second_derivative_in_w(alpha, beta, potential)
    ref = table.get(alpha + 1, beta + 1).scale(Fraction(1, (alpha + 1) * (beta + 1)))
    if lhs == ref:
        return 1
    if lhs == -ref:
        return -1
    return 0


def check_subsystem_dkp(alpha_max: int, table: Optional[RTable] = None, potential=None,
                        sign: int = 1) -> bool:
    """``d^2 F/dt^alpha dt^beta == sign * R_{alpha+1,beta+1}/((alpha+1)(beta+1))`` for all
    ``0 <= alpha, beta <= alpha_max``.

    The default ``sign = +1`` is the relation as usually quoted; with the
    literal substitution ``t^{-c} = -w_{c-1}/(c-1)`` the potential satisfies
    it with ``sign = -1`` (see :func:`subsystem_sign`).
    """
    table = table if table is not None else RTable()
    return all(subsystem_sign(a, b, table, potential) == sign
               for a in range(alpha_max + 1) for b in range(alpha_max + 1))
