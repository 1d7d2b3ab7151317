"""Brute-force verifiers that share no code with the series engine.

Triple Hurwitz numbers are counted by enumerating permutations; residue
systems are solved by building the residue polynomial in one unknown with
plain dense lists of Fractions and counting distinct admissible roots.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

DEFAULT_HURWITZ_BOUND = 7


class DegreeBoundError(ValueError):
    """The requested Hurwitz degree exceeds the enumeration bound."""


# -- dense univariate polynomials: lists of Fractions, low degree first -------

def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _padd(a: list, b: list) -> list:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: list, c) -> list:
    return _trim([x * c for x in a])


def _pdivmod(a: list, b: list) -> tuple:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        c = a[-1] / lead
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] -= c * y
        _trim(a)
    return _trim(q), a


def _pderiv(a: list) -> list:
    return _trim([i * c for i, c in enumerate(a)][1:])


def _pgcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pscale(a, 1 / a[-1]) if a else []


def _pinvmod(a: list, m: list) -> list:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    r0, r1 = list(m), _pdivmod(a, m)[1]
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pscale(_pmul(q, s1), -1))
    if len(r0) != 1:
        raise ValueError("not invertible modulo m")
    return _pdivmod(_pscale(s0, 1 / r0[0]), m)[1]


def _peval(a: list, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _binom_poly(root, n: int) -> list:
    """Coefficients of ``(z - root)^n`` for a Fraction root, n >= 0."""
    return [Fraction(math.comb(n, k)) * (-root) ** (n - k) for k in range(n + 1)]


def _root_multiplicity(a: list, x) -> int:
    m = 0
    lin = [Fraction(-x), Fraction(1)]
    while a and _peval(a, x) == 0:
        a = _pdivmod(a, lin)[0]
        m += 1
    return m


@dataclass(frozen=True)
class RootCount:
    """Distinct admissible roots of a residue polynomial.

    ``reduced`` is False when, after removing the forbidden roots 0 and 1,
    the remaining polynomial still has a repeated root.
    """
    poly: tuple
    count: int
    reduced: bool


def count_admissible_roots(poly: Sequence[Fraction], forbidden=(0, 1)) -> RootCount:
    a = _trim([Fraction(c) for c in poly])
    if not a:
        raise ArithmeticError("residue polynomial vanishes identically")
    core = a
    for x in forbidden:
        m = _root_multiplicity(core, x)
        for _ in range(m):
            core = _pdivmod(core, [Fraction(-x), Fraction(1)])[0]
    g = _pgcd(core, _pderiv(core))
    sqf = _pdivmod(core, g)[0] if len(g) > 1 else core
    return RootCount(tuple(a), len(sqf) - 1, len(g) <= 1)


# -- residue systems --------------------------------------------------------

def _check_balance(lhs: int, rhs: int, what: str) -> None:
    if lhs != rhs:
        raise ValueError(f"degree balance violated: {what}")


def residue_count_first_n1(a: int, b: int, c: int) -> int:
    """Zeros at 0 and 1, the only pole at infinity: ``omega = z^b (z-1)^a dz``.

    The differential is polynomial in z, so its expansion has no z^-1 term
    and the residue at infinity vanishes; the configuration is rigid.
    """
    if a < 0 or b < 0 or c < 2:
        raise ValueError("need a, b >= 0 and c >= 2")
    _check_balance(a + b + 2, c, f"{a}+{b}+2 != {c}")
    poly = _pmul([Fraction(0)] * b + [Fraction(1)], _binom_poly(1, a))
    pole_order = len(poly) - 1 + 2
    if pole_order != c:
        raise AssertionError("pole order at infinity does not match")
    # no negative powers of z are present, so the residue at infinity is 0
    return 1


def residue_poly_first_n2(a: int, b: int, c1: int, c2: int) -> list:
    """``P(t) = res_{z=0} (z-1)^a (z-t)^b z^-c1 dz`` as dense coefficients in t."""
    acc: list = []
    z1 = _binom_poly(1, a)
    k = c1 - 1
    for j in range(b + 1):
        # (z - t)^b = sum_j C(b,j) z^j (-t)^(b-j); need z^(k-j) from (z-1)^a
        i = k - j
        if 0 <= i < len(z1):
            term = [Fraction(0)] * (b - j) + [Fraction(math.comb(b, j)) * (-1) ** (b - j) * z1[i]]
            acc = _padd(acc, term)
    return acc


def residue_count_first_n2_detail(a: int, b: int, c1: int, c2: int) -> RootCount:
    if min(a, b) < 0 or min(c1, c2) < 2:
        raise ValueError("need a, b >= 0 and c1, c2 >= 2")
    _check_balance(a + b + 2, c1 + c2, f"{a}+{b}+2 != {c1}+{c2}")
    return count_admissible_roots(residue_poly_first_n2(a, b, c1, c2))


def residue_count_first_n2(a: int, b: int, c1: int, c2: int) -> int:
    """Poles at 0 and infinity, zeros at 1 and t; count admissible t."""
    return residue_count_first_n2_detail(a, b, c1, c2).count


def residue_poly_second_n1(a: int, b: int, c: int, d: int) -> list:
    """``P(t) = [z^(d-1)] (z-t)^a (z-1)^-b``, expanding ``(z-1)^-b`` at z = 0."""
    k = d - 1
    # (z-1)^-b = (-1)^b sum_m C(b+m-1, m) z^m
    inv = [Fraction((-1) ** b * math.comb(b + m - 1, m)) for m in range(k + 1)]
    acc: list = []
    for j in range(min(a, k) + 1):
        term = [Fraction(0)] * (a - j) + [Fraction(math.comb(a, j)) * (-1) ** (a - j) * inv[k - j]]
        acc = _padd(acc, term)
    return acc


def residue_count_second_n1_detail(a: int, b: int, c: int, d: int) -> RootCount:
    if a < 0 or b < 1 or c < 1 or d < 2:
        raise ValueError("need a >= 0, b, c >= 1 and d >= 2")
    _check_balance(a - b - c - d, -2, f"{a}-{b}-{c}-{d} != -2")
    return count_admissible_roots(residue_poly_second_n1(a, b, c, d))


def residue_count_second_n1(a: int, b: int, c: int, d: int) -> int:
    """Residueless pole d at 0, pole b at 1, pole c at infinity, zero a at t."""
    return residue_count_second_n1_detail(a, b, c, d).count


def example3_regression() -> int:
    """Eliminate x from the two residue equations of (2,2; -2,-2,-2).

    The first equation gives ``x = y/(y-1)``; clearing ``(y-1)^2`` from the
    second leaves a polynomial in y whose admissible roots are counted, and
    every root is checked back in the quotient ring.
    """
    # -1 + x + y - x^2 y - x y^2 + x^2 y^2 as {(i, j): coeff} for x^i y^j
    second = {(0, 0): -1, (1, 0): 1, (0, 1): 1, (2, 1): -1, (1, 2): -1, (2, 2): 1}
    num: list = []
    for (i, j), c in second.items():
        # x^i y^j (y-1)^2 = y^(i+j) (y-1)^(2-i)
        term = _pmul([Fraction(0)] * (i + j) + [Fraction(c)], _binom_poly(1, 2 - i))
        num = _padd(num, term)
    rc = count_admissible_roots(num)
    if not rc.reduced:
        raise AssertionError("repeated root in the eliminated system")
    core = list(num)
    for x in (0, 1):
        for _ in range(_root_multiplicity(core, x)):
            core = _pdivmod(core, [Fraction(-x), Fraction(1)])[0]
    m = _pscale(core, 1 / core[-1])
    y = [Fraction(0), Fraction(1)]
    x = _pdivmod(_pmul(y, _pinvmod(_padd(y, [Fraction(-1)]), m)), m)[1]

    def red(p):
        return _pdivmod(p, m)[1]

    # both original equations vanish; x, x-1 and x-y are units mod m
    first = _padd(_padd(_pscale(x, -1), _pscale(y, -1)), red(_pmul(x, y)))
    if red(first):
        raise AssertionError("first residue equation fails on back-substitution")
    total: list = []
    for (i, j), c in second.items():
        mono = [Fraction(c)]
        for _ in range(i):
            mono = red(_pmul(mono, x))
        for _ in range(j):
            mono = red(_pmul(mono, y))
        total = _padd(total, mono)
    if red(total):
        raise AssertionError("second residue equation fails on back-substitution")
    for forbidden in (x, _padd(x, [Fraction(-1)]), _padd(x, _pscale(y, -1))):
        if not forbidden:
            raise AssertionError("solution hits the coincidence locus")
    return rc.count


# -- Hurwitz numbers --------------------------------------------------------

def cycle_type(perm: Sequence[int]) -> tuple:
    seen = [False] * len(perm)
    lengths = []
    for s in range(len(perm)):
        if not seen[s]:
            n, k = 0, s
            while not seen[k]:
                seen[k] = True
                k = perm[k]
                n += 1
            lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


def _padded(parts: Sequence[int], d: int) -> tuple:
    if any(m < 1 for m in parts):
        raise ValueError("parts must be >= 1")
    rest = d - sum(parts)
    if rest < 0:
        raise ValueError("parts exceed the degree")
    return tuple(sorted(list(parts) + [1] * rest, reverse=True))


@lru_cache(maxsize=None)
def _class_elements(ctype: tuple) -> tuple:
    d = sum(ctype)
    return tuple(pm for pm in itertools.permutations(range(d)) if cycle_type(pm) == ctype)


def _labelings(ctype: tuple, parts: Sequence[int]) -> int:
    have = Counter(ctype)
    want = Counter(parts)
    out = 1
    for m, k in want.items():
        out *= math.perm(have[m], k)
    return out


def _transitive(d: int, gens) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        s = stack.pop()
        for g in gens:
            t = g[s]
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return len(seen) == d


@dataclass(frozen=True)
class RamificationData:
    d: int
    marks: tuple

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("degree must be >= 1")
        if len(self.marks) != 3:
            raise ValueError("exactly three branch points are supported")
        for parts in self.marks:
            _padded(parts, self.d)


def genus_check(r: RamificationData) -> int:
    """Riemann-Hurwitz: 2g - 2 = -2d + sum of (m - 1) over all parts."""
    ram = sum(m - 1 for parts in r.marks for m in parts)
    twice = -2 * r.d + ram + 2
    if twice % 2 or twice < 0:
        raise ValueError(f"inconsistent ramification data: 2g = {twice}")
    return twice // 2


def hurwitz_count(r: RamificationData, bound: int = DEFAULT_HURWITZ_BOUND) -> Fraction:
    """Weighted count of connected degree-d covers with three branch points.

    Counts triples ``s1 s2 s3 = id`` of the given cycle types generating a
    transitive group, times the ordered choices of one cycle per marked part,
    divided by d!.  By conjugation invariance only one representative of the
    first class is needed, weighted by the class size.
    """
    d = r.d
    if d > bound:
        raise DegreeBoundError(f"degree {d} exceeds the Hurwitz bound {bound}")
    types = [_padded(parts, d) for parts in r.marks]
    # a product of three permutations is even: parity obstruction
    if sum(d - len(t) for t in types) % 2:
        return Fraction(0)
    c1 = _class_elements(types[0])
    s1 = c1[0]
    t2 = types[1]
    triples = 0
    for s3 in _class_elements(types[2]):
        # s2 = (s3 s1)^-1, composing right to left
        prod = [s3[s1[k]] for k in range(d)]
        s2 = [0] * d
        for k, v in enumerate(prod):
            s2[v] = k
        if cycle_type(s2) == t2 and _transitive(d, (s1, s3)):
            triples += 1
    triples *= len(c1)
    weight = 1
    for t, parts in zip(types, r.marks):
        weight *= _labelings(t, parts)
    return Fraction(triples * weight, math.factorial(d))


def hurwitz_first(a: int, b: int, poles: Sequence[int], bound: int = DEFAULT_HURWITZ_BOUND) -> Fraction:
    """``Hur_d((a+1), (b+1), (c_1-1, ..., c_n-1))`` with ``d = sum c - n``."""
    d = sum(poles) - len(poles)
    if a + 1 > d or b + 1 > d:
        return Fraction(0)
    return hurwitz_count(RamificationData(d, ((a + 1,), (b + 1,), tuple(c - 1 for c in poles))), bound)
