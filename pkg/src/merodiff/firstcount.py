"""Counts of first-type differentials: two zeros, residueless poles only.

Three closed methods live here (coefficient extraction, SL2 weight
multiplicities, derivatives of the dKP flux polynomials); the Hurwitz and
residue-system oracles are pulled in from :mod:`merodiff.oracles` by
:func:`cross_check_first`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from . import oracles
from .algebra import MPoly, ONE, q, w, z
from .dkp import RTable

METHODS = ("oracle", "hurwitz", "dkp", "sl2", "coeff")


class ProfileError(ValueError):
    """A zero/pole profile violates its balance or range constraints."""


@dataclass(frozen=True)
class FirstProfile:
    a: int
    b: int
    poles: tuple

    def __init__(self, a: int, b: int, poles: Sequence[int]):
        object.__setattr__(self, "a", int(a))
        object.__setattr__(self, "b", int(b))
        object.__setattr__(self, "poles", tuple(int(c) for c in poles))
        if self.a < 0 or self.b < 0:
            raise ProfileError("zero orders a, b must be >= 0")
        if not self.poles:
            raise ProfileError("at least one pole is required")
        if any(c < 2 for c in self.poles):
            raise ProfileError("pole orders must be >= 2")
        if self.a + self.b + 2 != sum(self.poles):
            raise ProfileError(
                f"degree balance violated: {self.a}+{self.b}+2 != {sum(self.poles)}")

    @property
    def n(self) -> int:
        return len(self.poles)

    @property
    def degree(self) -> int:
        """Degree of the associated cover, ``sum c_i - n``."""
        return sum(self.poles) - self.n

    def __str__(self) -> str:
        return f"({self.a},{self.b};{','.join(str(-c) for c in self.poles)})"


class ProfileClass(enum.Enum):
    FINITE_POINT = "FinitePoint"
    FINITE_FIRST_TYPE = "FiniteFirstType"
    FINITE_SECOND_TYPE = "FiniteSecondType"
    POSITIVE_DIM = "PositiveDim"
    EMPTY = "Empty"


def expected_dimension(A: Sequence[int]) -> int:
    """Genus-0 dimension: ``k - 3`` if some entry of A is negative, else ``k - 2``."""
    k = len(A)
    return k - 3 if any(x < 0 for x in A) else k - 2


def classify_profile(A: Sequence[int], B: Sequence[int]) -> ProfileClass:
    """Finiteness class of the genus-0 stratum with zero/pole orders A and
    residueless poles B."""
    A, B = list(A), list(B)
    if any(x > -2 for x in B):
        raise ProfileError("residueless pole orders must be <= -2")
    if sum(A) + sum(B) != -2:
        raise ProfileError(f"degree balance violated: sum = {sum(A) + sum(B)} != -2")
    if 0 in A:
        rest = sorted(A)
        rest.remove(0)
        if len(rest) == 1 and rest[0] >= 0 and B == [-rest[0] - 2]:
            return ProfileClass.FINITE_POINT
        if rest == [-1, -1] and not B:
            return ProfileClass.FINITE_POINT
    else:
        pos = [x for x in A if x > 0]
        neg = [x for x in A if x < 0]
        if len(A) == 2 and len(pos) == 2:
            return ProfileClass.FINITE_FIRST_TYPE
        if len(A) == 3 and len(pos) == 1:
            return ProfileClass.FINITE_SECOND_TYPE
        if len(A) == 3 and len(neg) == 1:
            # the residue theorem forces the lone free pole to be residueless
            return ProfileClass.FINITE_FIRST_TYPE if neg[0] <= -2 else ProfileClass.EMPTY
    return ProfileClass.POSITIVE_DIM if expected_dimension(A) > 0 else ProfileClass.EMPTY


# -- the three closed methods -------------------------------------------------

def _geometric(var, lo: int, hi: int, step: int = 1) -> MPoly:
    acc = {}
    for e in range(lo, hi + 1, step):
        acc[((var, e),) if e else ()] = 1
    return MPoly(acc)


def count_first_coeff(p: FirstProfile) -> int:
    """``(n-1)! [t^(a+1)] prod (t + t^2 + ... + t^(c_i - 1))``."""
    prod = ONE
    for c in p.poles:
        prod = prod * _geometric(z(), 1, c - 1)
    return math.factorial(p.n - 1) * int(prod.coeff({z(): p.a + 1}))


def count_first_sl2(p: FirstProfile) -> int:
    """``(n-1)!`` times the weight-(a-b) multiplicity of ``rho_{c_1-2} x ... x rho_{c_n-2}``."""
    prod = ONE
    for c in p.poles:
        # character of rho_{c-2}: q^-(c-2) + q^-(c-4) + ... + q^(c-2)
        prod = prod * _geometric(q(), -(c - 2), c - 2, 2)
    return math.factorial(p.n - 1) * int(prod.coeff({q(): p.a - p.b}))


def count_first_dkp(p: FirstProfile, table: Optional[RTable] = None) -> Fraction:
    """``(-1)^(n+1) prod(c_i - 1) / ((a+1)(b+1))`` times the n-th mixed derivative
    of ``R_{a+1,b+1}`` in ``w_{c_1-1}, ..., w_{c_n-1}`` at ``w = 0``."""
    table = table if table is not None else RTable()
    poly = table.get(p.a + 1, p.b + 1)
    for c in p.poles:
        poly = poly.diff(w(c - 1))
    scale = Fraction((-1) ** (p.n + 1) * math.prod(c - 1 for c in p.poles),
                     (p.a + 1) * (p.b + 1))
    return scale * poly.constant_term()


def count_first_closed_n2(a: int, b: int, c1: int, c2: int) -> int:
    FirstProfile(a, b, (c1, c2))
    return min(a, b, c1 - 1, c2 - 1)


# -- cross-checking -----------------------------------------------------------

@dataclass
class CountReport:
    profile: FirstProfile
    value: Optional[int]
    per_method: dict = field(default_factory=dict)
    agree: bool = False

    def as_dict(self) -> dict:
        return {
            "profile": {"a": self.profile.a, "b": self.profile.b, "poles": list(self.profile.poles)},
            "value": None if self.value is None else str(self.value),
            "perMethod": {k: _fmt(v) for k, v in self.per_method.items()},
            "agree": self.agree,
        }


def _fmt(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def applicable_methods(p: FirstProfile, hurwitz_bound: int = oracles.DEFAULT_HURWITZ_BOUND) -> list:
    out = []
    if p.n <= 2:
        out.append("oracle")
    if p.degree <= hurwitz_bound:
        out.append("hurwitz")
    out += ["dkp", "sl2", "coeff"]
    return out


def run_method(p: FirstProfile, method: str, table: Optional[RTable] = None,
               hurwitz_bound: int = oracles.DEFAULT_HURWITZ_BOUND) -> Fraction:
    if method == "coeff":
        return Fraction(count_first_coeff(p))
    if method == "sl2":
        return Fraction(count_first_sl2(p))
    if method == "dkp":
        return count_first_dkp(p, table)
    if method == "hurwitz":
        return oracles.hurwitz_first(p.a, p.b, p.poles, hurwitz_bound)
    if method == "oracle":
        if p.n == 1:
            return Fraction(oracles.residue_count_first_n1(p.a, p.b, p.poles[0]))
        if p.n == 2:
            return Fraction(oracles.residue_count_first_n2(p.a, p.b, *p.poles))
        raise ValueError("the residue-system oracle handles n <= 2 only")
    raise ValueError(f"unknown method {method!r}")


def cross_check_first(p: FirstProfile, methods: Optional[Iterable[str]] = None,
                      table: Optional[RTable] = None,
                      hurwitz_bound: int = oracles.DEFAULT_HURWITZ_BOUND) -> CountReport:
    """Run the requested methods (default: every applicable one) and compare."""
    if methods is None:
        chosen = applicable_methods(p, hurwitz_bound)
    else:
        chosen = [m for m in METHODS if m in set(methods)]
        unknown = set(methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods: {sorted(unknown)}")
        if "oracle" in chosen and p.n > 2:
            raise ValueError("the residue-system oracle handles n <= 2 only")
        if "hurwitz" in chosen and p.degree > hurwitz_bound:
            raise oracles.DegreeBoundError(
                f"degree {p.degree} exceeds the Hurwitz bound {hurwitz_bound}")
    per = {m: run_method(p, m, table, hurwitz_bound) for m in chosen}
    vals = set(per.values())
    agree = len(vals) == 1 and all(v.denominator == 1 and v >= 0 for v in vals)
    value = int(next(iter(vals))) if agree else None
    return CountReport(p, value, per, agree)


@lru_cache(maxsize=None)
def _count_sorted(a: int, poles: tuple) -> int:
    # integer-list product of (z + ... + z^(c-1)), kept only up to z^(a+1)
    top = a + 1
    prod = [1]
    for c in poles:
        nxt = [0] * min(len(prod) + c - 1, top + 1)
        for i, v in enumerate(prod):
            if v:
                for j in range(i + 1, min(i + c - 1, top) + 1):
                    nxt[j] += v
        prod = nxt
    return math.factorial(len(poles) - 1) * (prod[top] if top < len(prod) else 0)


def count_first(p: FirstProfile) -> int:
    """Same value as :func:`count_first_coeff`, on plain integer lists and memoized."""
    return _count_sorted(p.a, tuple(sorted(p.poles, reverse=True)))


def pole_multisets(total: int, largest: Optional[int] = None) -> Iterator[tuple]:
    """Nonincreasing tuples of parts >= 2 summing to total."""
    if total == 0:
        yield ()
        return
    top = total if largest is None else min(total, largest)
    for c in range(top, 1, -1):
        for rest in pole_multisets(total - c, c):
            yield (c,) + rest


def first_profiles(max_pole_weight: int) -> Iterator[FirstProfile]:
    """Every valid profile with ``sum c_i <= max_pole_weight``, poles up to order."""
    for s in range(2, max_pole_weight + 1):
        for poles in pole_multisets(s):
            for a in range(s - 1):
                yield FirstProfile(a, s - 2 - a, poles)
