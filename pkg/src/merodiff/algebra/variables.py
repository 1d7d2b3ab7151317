"""Indexed variable families and weight gradings.

A variable is a :class:`VarId`, a plain named tuple ``(family, index, index2)``
so that hashing and ordering stay at C speed inside monomial keys.  The
canonical variable order is family first, then the indices.
"""

from __future__ import annotations

from enum import IntEnum
from typing import Callable, Mapping, NamedTuple, Union


class Family(IntEnum):
    F = 0
    W = 1
    TSECOND = 2
    TFROB = 3
    X = 4
    Y = 5
    Z = 6
    Q = 7
    P = 8
    LAMBDA = 9
    ZETA = 10
    FD = 11


class VarId(NamedTuple):
    family: int
    index: int = 0
    index2: int = 0

    @property
    def kind(self) -> Family:
        return Family(self.family)


def f(i: int) -> VarId:
    if i < 1:
        raise ValueError(f"f_{i}: index must be >= 1")
    return VarId(Family.F.value, i)


def w(i: int) -> VarId:
    if i < 1:
        raise ValueError(f"w_{i}: index must be >= 1")
    return VarId(Family.W.value, i)


def t(d: int) -> VarId:
    """The variable ``t_d`` of the second-type generating series (``d >= 2``)."""
    if d < 2:
        raise ValueError(f"t_{d}: index must be >= 2")
    return VarId(Family.TSECOND.value, d)


def tp(alpha: int) -> VarId:
    """The flat coordinate ``t^alpha`` of the Frobenius potential, alpha != -1."""
    if alpha == -1:
        raise ValueError("t^alpha is undefined for alpha = -1")
    return VarId(Family.TFROB.value, alpha)


def fd(i: int, j: int) -> VarId:
    """``f_i^{(j)}``, the j-th x-derivative of f_i."""
    if i < 1 or j < 0:
        raise ValueError(f"f_{i}^({j}): need i >= 1 and j >= 0")
    return VarId(Family.FD.value, i, j)


def _plain(family: Family) -> Callable[[int], VarId]:
    def make(index: int = 0) -> VarId:
        return VarId(family.value, index)

    make.__name__ = family.name.lower()
    return make


x = _plain(Family.X)
y = _plain(Family.Y)
z = _plain(Family.Z)
q = _plain(Family.Q)
p = _plain(Family.P)
lam = _plain(Family.LAMBDA)
zeta = _plain(Family.ZETA)


WeightRule = Union[int, Callable[[VarId], int]]


class Grading:
    """Integer weights on variables, assigned per family.

    A rule is either a constant weight for the whole family or a function
    of the variable.  Families without a rule are unweighted, and asking
    for their weight raises ``KeyError``.
    """

    def __init__(self, rules: Mapping[Family, WeightRule]):
        self._rules = {Family(k).value: v for k, v in rules.items()}
        self._cache: dict[VarId, int] = {}

    def weight(self, v: VarId) -> int:
        try:
            return self._cache[v]
        except KeyError:
            pass
        try:
            rule = self._rules[v.family]
        except KeyError:
            raise KeyError(f"variable {v} has no weight in this grading") from None
        wt = rule if isinstance(rule, int) else rule(v)
        self._cache[v] = wt
        return wt

    def monomial_weight(self, mono) -> int:
        wt = self.weight
        return sum(wt(v) * e for v, e in mono)

    def __repr__(self) -> str:
        return f"Grading({ {Family(k).name: v for k, v in self._rules.items()} })"


def _index_plus_one(v: VarId) -> int:
    return v.index + 1


#: deg f_i = deg w_i = i + 1, deg p = 1; the grading under which lambda(p)
#: is homogeneous of weight 1 and R_{i,j} of weight i + j.
DKP_GRADING = Grading({Family.F: _index_plus_one, Family.W: _index_plus_one,
                       Family.FD: _index_plus_one, Family.P: 1})

#: deg t_d = d for the second-type series.
TSECOND_GRADING = Grading({Family.TSECOND: lambda v: v.index})


def _frob_weight(v: VarId) -> int:
    return -v.index if v.index < 0 else 0


#: t^{-c} has weight c; nonnegative flat coordinates are weightless.
FROB_GRADING = Grading({Family.TFROB: _frob_weight, Family.W: _index_plus_one,
                        Family.F: _index_plus_one})
