"""Sparse multivariate Laurent polynomials over the rationals.

A monomial is a tuple of ``(VarId, exponent)`` pairs sorted by variable,
with nonzero (possibly negative) exponents.  An :class:`MPoly` maps
monomials to nonzero :class:`fractions.Fraction` coefficients and is never
mutated after construction.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Callable, Iterable, Iterator, Mapping, Optional, Union

from .variables import Grading, VarId

Rational = Fraction
Monomial = tuple  # tuple[tuple[VarId, int], ...]
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + e
        if s:
            d[v] = s
        else:
            del d[v]
    return tuple(sorted(d.items()))


def mono_pow(a: Monomial, n: int) -> Monomial:
    if n == 0:
        return ONE_MONO
    return tuple((v, e * n) for v, e in a)


def as_monomial(m) -> Monomial:
    """Normalize a monomial given as a tuple of pairs, a mapping, a VarId or a one-term MPoly."""
    if isinstance(m, MPoly):
        if len(m._terms) != 1:
            raise ValueError("expected a single-term polynomial")
        (mono,) = m._terms
        return mono
    if isinstance(m, VarId):
        return ((m, 1),)
    if isinstance(m, Mapping):
        items = m.items()
    else:
        items = m
    return tuple(sorted((v, e) for v, e in items if e))


def mono_sort_key(mono: Monomial):
    # ascending total degree, then lexicographically decreasing exponent vectors
    return (sum(e for _, e in mono), tuple((v, -e) for v, e in mono))


def _coerce_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, _RationalABC):
        return Fraction(c.numerator, c.denominator)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class MPoly:
    """Immutable sparse polynomial with signed exponents."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping] = None):
        clean: dict = {}
        if terms:
            for mono, c in terms.items():
                c = _coerce_scalar(c)
                if c:
                    mono = as_monomial(mono)
                    s = clean.get(mono, 0) + c
                    if s:
                        clean[mono] = s
                    else:
                        clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "MPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> "MPoly":
        c = _coerce_scalar(c)
        return cls._raw({ONE_MONO: c} if c else {})

    @classmethod
    def var(cls, v: VarId, exp: int = 1, coeff: Scalar = 1) -> "MPoly":
        coeff = _coerce_scalar(coeff)
        if not coeff:
            return cls._raw({})
        return cls._raw({((v, exp),) if exp else ONE_MONO: coeff})

    @classmethod
    def monomial(cls, mono, coeff: Scalar = 1) -> "MPoly":
        coeff = _coerce_scalar(coeff)
        return cls._raw({as_monomial(mono): coeff} if coeff else {})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> list:
        """Terms in canonical order."""
        return sorted(self._terms.items(), key=lambda kv: mono_sort_key(kv[0]))

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_MONO in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_MONO, Fraction(0))

    def coeff(self, mono) -> Fraction:
        return self._terms.get(as_monomial(mono), Fraction(0))

    def variables(self) -> set:
        return {v for mono in self._terms for v, _ in mono}

    def degree_in(self, v: VarId) -> int:
        return max((dict(m).get(v, 0) for m in self._terms), default=0)

    def weights(self, grading: Grading) -> set:
        return {grading.monomial_weight(m) for m in self._terms}

    def is_homogeneous(self, grading: Grading, weight: Optional[int] = None) -> bool:
        ws = self.weights(grading)
        if not ws:
            return True
        if weight is None:
            return len(ws) == 1
        return ws == {weight}

    # -- arithmetic -------------------------------------------------------

    def _other(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other)

    def __add__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        if not o._terms:
            return self
        if not self._terms:
            return o
        res = dict(self._terms)
        for m, c in o._terms.items():
            s = res.get(m, 0) + c
            if s:
                res[m] = s
            else:
                del res[m]
        return MPoly._raw(res)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        try:
            o = self._other(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "MPoly":
        c = _coerce_scalar(c)
        if not c:
            return MPoly._raw({})
        return MPoly._raw({m: v * c for m, v in self._terms.items()})

    def mul(self, other: "MPoly", grading: Optional[Grading] = None,
            bound: Optional[int] = None) -> "MPoly":
        """Product, optionally dropping monomials of weight above ``bound``."""
        a, b = self._terms, other._terms
        if not a or not b:
            return MPoly._raw({})
        res: dict = {}
        get = res.get
        if grading is None or bound is None:
            for ma, ca in a.items():
                for mb, cb in b.items():
                    m = mono_mul(ma, mb)
                    res[m] = get(m, 0) + ca * cb
        else:
            mw = grading.monomial_weight
            bw = [(mb, cb, mw(mb)) for mb, cb in b.items()]
            slack = bound - min(x[2] for x in bw)
            for ma, ca in a.items():
                wa = mw(ma)
                if wa > slack:
                    continue
                for mb, cb, wb in bw:
                    if wa + wb > bound:
                        continue
                    m = mono_mul(ma, mb)
                    res[m] = get(m, 0) + ca * cb
        return MPoly._raw({m: c for m, c in res.items() if c})

    def __mul__(self, other):
        if isinstance(other, MPoly):
            return self.mul(other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if len(other._terms) != 1:
                raise ValueError("division only by a single term")
            (m, c), = other._terms.items()
            inv = MPoly._raw({tuple((v, -e) for v, e in m): 1 / c})
            return self * inv
        c = _coerce_scalar(other)
        return self.scale(1 / c)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers only of a single term")
            (m, c), = self._terms.items()
            return MPoly._raw({mono_pow(m, n): Fraction(1) / c ** (-n)})
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def pow(self, n: int, grading: Optional[Grading] = None,
            bound: Optional[int] = None) -> "MPoly":
        if n < 0:
            return self ** n
        result = MPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base, grading, bound)
            n >>= 1
            if n:
                base = base.mul(base, grading, bound)
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._terms == other._terms
        try:
            return self._terms == MPoly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def diff(self, v: VarId, times: int = 1) -> "MPoly":
        """Formal partial derivative; Laurent exponents follow n x^(n-1)."""
        poly = self
        for _ in range(times):
            res: dict = {}
            for mono, c in poly._terms.items():
                for k, (u, e) in enumerate(mono):
                    if u == v:
                        if e == 1:
                            nm = mono[:k] + mono[k + 1:]
                        else:
                            nm = mono[:k] + ((u, e - 1),) + mono[k + 1:]
                        res[nm] = c * e
                        break
            poly = MPoly._raw(res)
        return poly

    def map_terms(self, fn: Callable[[Monomial], Optional[Monomial]]) -> "MPoly":
        """Rename monomials; ``fn`` returning None drops the term."""
        res: dict = {}
        for mono, c in self._terms.items():
            nm = fn(mono)
            if nm is None:
                continue
            s = res.get(nm, 0) + c
            if s:
                res[nm] = s
            else:
                res.pop(nm, None)
        return MPoly._raw(res)

    def rename(self, fn: Callable[[VarId], VarId]) -> "MPoly":
        return self.map_terms(lambda mono: tuple(sorted((fn(v), e) for v, e in mono)))

    def substitute(self, mapping: Mapping[VarId, "MPoly"], grading: Optional[Grading] = None,
                   bound: Optional[int] = None) -> "MPoly":
        """Replace variables by polynomials; other variables are kept."""
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = mapping[v].pow(e, grading, bound)
            return powers[key]

        acc: dict = {}
        for mono, c in self._terms.items():
            kept = tuple((v, e) for v, e in mono if v not in mapping)
            term = MPoly._raw({kept: c})
            for v, e in mono:
                if v in mapping:
                    term = term.mul(power(v, e), grading, bound)
                    if not term:
                        break
            for m, cc in term._terms.items():
                acc[m] = acc.get(m, 0) + cc
        return MPoly._raw({m: c for m, c in acc.items() if c})

    def truncate(self, grading: Grading, bound: int) -> "MPoly":
        mw = grading.monomial_weight
        return MPoly._raw({m: c for m, c in self._terms.items() if mw(m) <= bound})

    def homogeneous_part(self, grading: Grading, weight: int) -> "MPoly":
        mw = grading.monomial_weight
        return MPoly._raw({m: c for m, c in self._terms.items() if mw(m) == weight})

    def coeff_of(self, v: VarId, e: int) -> "MPoly":
        """Coefficient of ``v**e`` as a polynomial in the remaining variables."""
        res: dict = {}
        for mono, c in self._terms.items():
            d = dict(mono)
            if d.get(v, 0) == e:
                d.pop(v, None)
                res[tuple(sorted(d.items()))] = c
        return MPoly._raw(res)

    def at_zero(self, vs: Iterable[VarId]) -> "MPoly":
        """Set the given variables to zero (they must occur with nonnegative exponents)."""
        vs = set(vs)

        def keep(mono):
            for v, e in mono:
                if v in vs:
                    if e < 0:
                        raise ValueError(f"cannot evaluate {v}^{e} at zero")
                    return None
            return mono

        return self.map_terms(keep)

    def evaluate(self, values: Mapping[VarId, Scalar]) -> "MPoly":
        return self.substitute({v: MPoly.const(c) for v, c in values.items()})

    def leading_term(self) -> tuple:
        """Canonically first term ``(monomial, coeff)``."""
        items = self.items()
        if not items:
            raise ValueError("zero polynomial has no leading term")
        return items[0]

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        from .text import format_poly
        return format_poly(self)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r})"


ZERO = MPoly._raw({})
ONE = MPoly.const(1)


def mpoly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    """Dispatch ``op`` in {'add', 'sub', 'mul'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(a: MPoly, v: VarId) -> MPoly:
    return a.diff(v)


def coeff_extract(a: MPoly, mono) -> Fraction:
    return a.coeff(mono)


def weighted_truncate(a: MPoly, grading: Grading, bound: int) -> MPoly:
    return a.truncate(grading, bound)


def series_log(a: MPoly, grading: Grading, bound: int) -> MPoly:
    """``log(a)`` for ``a = 1 + N`` with ``N`` of strictly positive weight, to weight ``bound``."""
    if a.constant_term() != 1:
        raise ValueError("log needs constant term 1")
    n = a - 1
    mw = grading.monomial_weight
    if any(mw(m) <= 0 for m in n._terms):
        raise ValueError("log needs the non-constant part to have positive weight")
    n = n.truncate(grading, bound)
    result = ZERO
    power = n
    k = 1
    while power:
        result = result + power.scale(Fraction((-1) ** (k + 1), k))
        power = power.mul(n, grading, bound)
        k += 1
    return result


def series_exp(a: MPoly, grading: Grading, bound: int) -> MPoly:
    """``exp(a)`` for ``a`` of strictly positive weight, to weight ``bound``."""
    mw = grading.monomial_weight
    if any(mw(m) <= 0 for m in a._terms):
        raise ValueError("exp needs an argument of positive weight")
    a = a.truncate(grading, bound)
    result = ONE
    term = ONE
    k = 1
    while True:
        term = term.mul(a, grading, bound).scale(Fraction(1, k))
        if not term:
            return result
        result = result + term
        k += 1


def series_inverse(a: MPoly, grading: Grading, bound: int) -> MPoly:
    """``1/a`` for ``a = c + N``, ``c`` a nonzero constant, ``N`` of positive weight."""
    c = a.constant_term()
    if not c:
        raise ValueError("inverse needs a nonzero constant term")
    n = (a - c).scale(1 / c)
    mw = grading.monomial_weight
    if any(mw(m) <= 0 for m in n._terms):
        raise ValueError("inverse needs the non-constant part to have positive weight")
    n = n.truncate(grading, bound)
    result = ONE
    power = ONE
    while True:
        power = power.mul(-n, grading, bound)
        if not power:
            break
        result = result + power
    return result.scale(1 / c)
