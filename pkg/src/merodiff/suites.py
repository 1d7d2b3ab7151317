"""Verification suites behind ``merodiff verify``.

Each suite returns a :class:`SuiteResult`, a list of named checks.  A
:class:`Perturbation` adds a single deliberate error to one input
coefficient so a suite can be shown to fail when it should.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import oracles
from .algebra import DKP_GRADING, TSECOND_GRADING, MPoly, parse_poly, t, tp, w
from .dkp import (
    RTable,
    compute_R,
    compute_w,
    dkp_flow,
    generating_identity_check,
    verify_conservation,
)
from .firstcount import FirstProfile, count_first, cross_check_first, first_profiles
from .frobenius import (
    FTrunc,
    LazyF,
    build_F_from_counts,
    build_F_residue,
    check_euler,
    check_unit,
    subsystem_sign,
    wdvv_sweep,
)
from .secondcount import (
    SecondProfile,
    UnderdeterminedError,
    check_ab_identity,
    compositions,
    count_from_theta,
    count_second_closed,
    p_series_from_counts,
    solve_theta_by_recursion,
    theta_closed,
    theta_via_coeff,
    theta_weight,
    wdvv_recursion_check,
)

SUITES = ("paper", "first", "dkp", "second", "wdvv-theta", "frobenius")

PRINTED_W = {
    1: "f1",
    2: "2*f2",
    3: "3*f3 + 3*f1^2",
    4: "4*f4 + 12*f1*f2",
    5: "5*f5 + 20*f1*f3 + 10*f2^2 + 10*f1^3",
}
PRINTED_R = {
    (2, 2): "4/3*w3 - 2*w1^2",
    (2, 3): "3/2*w4 - 3*w1*w2",
    (3, 3): "9/5*w5 - 3*w1*w3 - 9/4*w2^2 + 3*w1^3",
}
PRINTED_FLOWS = {
    (1, 2): "2*f2_1",
    (2, 2): "2*f3_1 + 2*f1_0*f1_1",
}


class PerturbationError(ValueError):
    """A ``--perturb`` key could not be parsed."""


@dataclass
class Perturbation:
    """One or more deliberate coefficient errors.

    ``R:i,j`` adds ``delta*w_{i+j-1}`` to R_{i,j}; ``theta:a,b,c`` adds
    ``delta*t_s`` at its own weight s; ``P:a,b`` adds ``delta*t_2*t_{s-2}``
    (``t_s`` below weight 4), since P mostly enters differentiated twice;
    ``F:a,b,c1,...`` adds
    ``delta`` to the coefficient of ``t^a t^b prod t^{-c}``.
    """
    R: dict = field(default_factory=dict)
    theta: dict = field(default_factory=dict)
    P: dict = field(default_factory=dict)
    F: dict = field(default_factory=dict)

    def __bool__(self):
        return bool(self.R or self.theta or self.P or self.F)

    @classmethod
    def parse(cls, specs) -> "Perturbation":
        out = cls()
        for spec in specs or ():
            m = re.fullmatch(r"(R|theta|P|F):(-?\d+(?:,-?\d+)*)(?:=(-?\d+(?:/\d+)?))?", spec.strip())
            if not m:
                raise PerturbationError(f"bad perturbation {spec!r}")
            kind, idx, amount = m.group(1), tuple(int(v) for v in m.group(2).split(",")), m.group(3)
            delta = Fraction(amount) if amount else Fraction(1)
            need = {"R": 2, "theta": 3, "P": 2}.get(kind)
            if need is not None and len(idx) != need:
                raise PerturbationError(f"{kind} takes {need} indices, got {len(idx)}")
            if kind == "R" and min(idx) < 1:
                raise PerturbationError("R indices must be >= 1")
            if kind == "F" and (len(idx) < 3 or min(idx[:2]) < 0 or min(idx[2:]) < 2):
                raise PerturbationError("F takes a,b >= 0 then pole orders >= 2")
            getattr(out, kind)[idx] = getattr(out, kind).get(idx, 0) + delta
        return out

    def table(self, base: Optional[RTable] = None) -> RTable:
        table = base if base is not None else RTable()
        for (i, j), delta in self.R.items():
            table = table.perturbed(i, j, MPoly.var(w(i + j - 1), coeff=delta))
        return table

    def theta_fn(self) -> Callable:
        if not self.theta:
            return theta_closed

        def th(a, b, c):
            base = theta_closed(a, b, c)
            delta = self.theta.get((a, b, c))
            if delta:
                base = base + MPoly.var(t(max(theta_weight(a, b, c), 2)), coeff=delta)
            return base
        return th

    def p_fn(self) -> Callable:
        if not self.P:
            return p_series_from_counts

        def P(a, b):
            base = p_series_from_counts(a, b)
            delta = self.P.get((a, b))
            if delta:
                base = base + _weight_monomial(a + b + 2).scale(delta)
            return base
        return P

    def lazy_f(self) -> LazyF:
        overrides = {}
        for idx, delta in self.F.items():
            mono: dict = {}
            for i in (idx[0], idx[1]) + tuple(-c for c in idx[2:]):
                mono[tp(i)] = mono.get(tp(i), 0) + 1
            overrides[tuple(sorted(mono.items()))] = delta
        return LazyF(overrides)


def _weight_monomial(s: int) -> MPoly:
    if s >= 4:
        return MPoly.var(t(2)) * MPoly.var(t(s - 2))
    return MPoly.var(t(max(s, 2)))


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class SuiteResult:
    suite: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [c.as_dict() for c in self.checks]}


def _failures(items, limit: int = 5) -> str:
    items = list(items)
    if not items:
        return ""
    shown = ", ".join(str(x) for x in items[:limit])
    more = f" (+{len(items) - limit} more)" if len(items) > limit else ""
    return f"failed: {shown}{more}"


def _check(name: str, bad) -> Check:
    bad = list(bad)
    return Check(name, not bad, _failures(bad))


# -- suites -------------------------------------------------------------------

def suite_paper(perturb: Optional[Perturbation] = None, table: Optional[RTable] = None) -> SuiteResult:
    """Printed small values: the worked examples, w_1..w_5, R_{2,2}, R_{2,3}, R_{3,3}."""
    perturb = perturb or Perturbation()
    table = perturb.table(table)
    theta = perturb.theta_fn()
    checks = []
    for a, b, poles, want in ((1, 1, (2, 2), 1), (2, 2, (3, 3), 2), (2, 2, (2, 2, 2), 2)):
        rep = cross_check_first(FirstProfile(a, b, poles), table=table)
        checks.append(Check(f"count {FirstProfile(a, b, poles)} = {want}",
                            rep.agree and rep.value == want,
                            "" if rep.agree else f"methods disagree: {rep.as_dict()['perMethod']}"))
    checks.append(Check("triangular residue system has 2 admissible solutions",
                        oracles.example3_regression() == 2))
    bad = []
    for a in range(1, 6):
        for b in range(2, 9):
            prof = SecondProfile(a + b - 1, 1, a, (b,))
            got = {count_second_closed(prof), oracles.residue_count_second_n1(a + b - 1, 1, a, b),
                   count_from_theta(a + b - 1, 1, a, (b,), theta)}
            if got != {b - 1}:
                bad.append(prof)
    checks.append(_check("one-pole second-type counts = b - 1 (closed, residues, theta)", bad))
    bad = []
    for s in range(4, 21):
        for c1 in range(2, s - 1):
            c2 = s - c1
            if c2 < c1:
                continue
            for a in range(s - 1):
                prof = FirstProfile(a, s - 2 - a, (c1, c2))
                if count_first(prof) != min(a, s - 2 - a, c1 - 1, c2 - 1):
                    bad.append(prof)
    checks.append(_check("two-pole counts = min(a, b, c1-1, c2-1) up to c1+c2 = 20", bad))
    checks.append(_check("printed w_1..w_5",
                         [i for i, s in PRINTED_W.items() if compute_w(i) != parse_poly(s)]))
    checks.append(_check("printed R_{2,2}, R_{2,3}, R_{3,3}",
                         [k for k, s in PRINTED_R.items() if table.get(*k) != parse_poly(s)]))
    checks.append(_check("printed flows",
                         [k for k, s in PRINTED_FLOWS.items() if dkp_flow(*k) != parse_poly(s)]))
    return SuiteResult("paper", checks)


def suite_first(max_pole_weight: int = 14, hurwitz_degree: int = 6, oracle_weight: int = 12,
                perturb: Optional[Perturbation] = None,
                table: Optional[RTable] = None) -> SuiteResult:
    """coeff, sl2 and dkp on every profile; Hurwitz and the residue oracle where they apply."""
    perturb = perturb or Perturbation()
    table = perturb.table(table)
    bad_closed, bad_hur, bad_orc, total = [], [], [], 0
    for prof in first_profiles(max_pole_weight):
        total += 1
        rep = cross_check_first(prof, ("coeff", "sl2", "dkp"), table)
        if not rep.agree:
            bad_closed.append(prof)
            continue
        if prof.degree <= hurwitz_degree:
            if oracles.hurwitz_first(prof.a, prof.b, prof.poles) != rep.value:
                bad_hur.append(prof)
        if prof.n <= 2 and sum(prof.poles) <= oracle_weight:
            if Fraction(_oracle(prof)) != rep.value:
                bad_orc.append(prof)
    return SuiteResult("first", [
        _check(f"coeff = sl2 = dkp on {total} profiles", bad_closed),
        _check(f"Hurwitz oracle agrees (degree <= {hurwitz_degree})", bad_hur),
        _check(f"residue oracle agrees (n <= 2, pole weight <= {oracle_weight})", bad_orc),
    ])


def _oracle(prof: FirstProfile) -> int:
    if prof.n == 1:
        return oracles.residue_count_first_n1(prof.a, prof.b, prof.poles[0])
    return oracles.residue_count_first_n2(prof.a, prof.b, *prof.poles)


def suite_dkp(order: int = 8, perturb: Optional[Perturbation] = None,
              table: Optional[RTable] = None) -> SuiteResult:
    """Symmetry, R_{1,i} = w_i, homogeneity, the generating identity, conservation, flows."""
    perturb = perturb or Perturbation()
    table = perturb.table(table)
    R = table.get
    idx = range(1, order + 1)
    checks = [
        _check(f"R_(i,j) = R_(j,i), independently computed, i,j <= {order}",
               [(i, j) for i in idx for j in idx if i < j and R(i, j) != compute_R(j, i)]),
        _check(f"R_(1,i) = w_i, i <= {order}",
               [i for i in idx if R(1, i) != MPoly.var(w(i))]),
        _check(f"R_(p,q) homogeneous of weight p+q, p+q <= {order + 4}",
               [(i, s - i) for s in range(2, order + 5) for i in range(1, s)
                if not R(i, s - i).is_homogeneous(DKP_GRADING, s)]),
        Check(f"generating identity to total order {order}", generating_identity_check(order, R)),
    ]
    top = min(order, 5)
    checks.append(_check(f"dw_i/dT_j = d_x R_(i,j), i,j <= {top}",
                         [(i, j) for i in range(1, top + 1) for j in range(1, top + 1)
                          if not verify_conservation(i, j, R)]))
    checks.append(_check("printed R_{2,2}, R_{2,3}, R_{3,3}",
                         [k for k, s in PRINTED_R.items() if R(*k) != parse_poly(s)]))
    checks.append(_check("printed flows",
                         [k for k, s in PRINTED_FLOWS.items() if dkp_flow(*k) != parse_poly(s)]))
    return SuiteResult("dkp", checks)


def _theta_indices(max_a: int, weight: int):
    for a in range(max_a + 1):
        for b in range(1, a + 2):
            for c in range(1, a + 2):
                if 0 <= theta_weight(a, b, c) <= weight:
                    yield a, b, c


def suite_second(weight: int = 10, max_a: int = 8, max_pole: int = 10,
                 perturb: Optional[Perturbation] = None) -> SuiteResult:
    """Closed second-type counts against theta, the residue oracle and the recursion."""
    perturb = perturb or Perturbation()
    theta = perturb.theta_fn()
    P = perturb.p_fn()
    bad_coeff, bad_series = [], []
    for a, b, c in _theta_indices(max_a, weight):
        s = theta_weight(a, b, c)
        if theta(a, b, c).truncate(TSECOND_GRADING, weight) != theta_via_coeff(a, b, c, weight):
            bad_series.append((a, b, c))
        for poles in compositions(s):
            if list(poles) != sorted(poles, reverse=True):
                continue
            prof = SecondProfile(a, b, c, poles)
            if count_from_theta(a, b, c, poles, theta) != count_second_closed(prof):
                bad_coeff.append(prof)
    bad_orc = []
    for d in range(2, max_pole + 1):
        for b in range(1, 6):
            for c in range(1, 6):
                a = b + c + d - 2
                if oracles.residue_count_second_n1(a, b, c, d) != count_second_closed(
                        SecondProfile(a, b, c, (d,))):
                    bad_orc.append((a, b, c, d))
    rec_name = f"recursion-derived theta = closed theta (a <= {max_a})"
    try:
        solved = solve_theta_by_recursion(max_a, weight, P)
    except (ArithmeticError, UnderdeterminedError) as exc:
        rec = Check(rec_name, False, str(exc))
    else:
        rec = _check(rec_name, [k for k, v in sorted(solved.items())
                                if v != theta(*k).truncate(TSECOND_GRADING, weight)])
    return SuiteResult("second", [
        _check(f"closed counts = theta coefficients (a <= {max_a}, weight <= {weight})", bad_coeff),
        _check("theta closed form = coefficient extraction from B", bad_series),
        _check(f"closed counts = one-pole residue oracle (d <= {max_pole})", bad_orc),
        rec,
        Check(f"y^2 d/dy A~ = B(y) to order {weight}", check_ab_identity(weight)),
    ])


def suite_wdvv_theta(weight: int = 10, perturb: Optional[Perturbation] = None) -> SuiteResult:
    """The seven-term relation for 1 <= a,d <= 5, 1 <= e,f <= 4, 2 <= c <= 5."""
    perturb = perturb or Perturbation()
    theta, P = perturb.theta_fn(), perturb.p_fn()
    bad = [(a, d, e, f, c)
           for a in range(1, 6) for d in range(1, 6) for e in range(1, 5)
           for f in range(1, 5) for c in range(2, 6)
           if not wdvv_recursion_check(a, d, e, f, c, weight, theta, P)]
    return SuiteResult("wdvv-theta", [_check(f"seven-term relation at weight {weight}", bad)])


def suite_frobenius(weight: int = 10, index_bound: int = 5, unit_bound: int = 8,
                    max_pos: int = 4, alpha_max: int = 4, subsystem: str = "literal",
                    perturb: Optional[Perturbation] = None,
                    table: Optional[RTable] = None) -> SuiteResult:
    """F from counts vs residues, WDVV, unit, Euler, and the dKP subsystem.

    ``subsystem`` picks the sign the dKP restriction is checked with:
    ``"stated"`` for ``+R/((a+1)(b+1))`` or ``"literal"`` for the sign that
    follows from the substitution ``t^{-c} = -w_{c-1}/(c-1)``.
    """
    perturb = perturb or Perturbation()
    lazy = perturb.lazy_f()
    table = perturb.table(table)
    trunc = FTrunc(max_pos, weight)
    F = build_F_from_counts(trunc, lazy)
    checks = [
        Check(f"F from counts = F from residues at {trunc}", F == build_F_residue(trunc)),
        _check(f"WDVV for all |index| <= {index_bound} at pole weight {weight}",
               wdvv_sweep(index_bound, weight, lazy)),
    ]
    idx = [i for i in range(-unit_bound, unit_bound + 1) if i != -1]
    checks.append(_check(f"unit axiom for |alpha|,|beta| <= {unit_bound}",
                         [(a, b) for a in idx for b in idx if a <= b
                          and not check_unit(a, b, weight, lazy)]))
    e_ok, et_ok = check_euler(F)
    checks.append(Check("E F = 2F", e_ok))
    checks.append(Check("Etilde F = -2F", et_ok))
    want = {"stated": 1, "literal": -1}[subsystem]
    signs = {(a, b): subsystem_sign(a, b, table, lazy)
             for a in range(alpha_max + 1) for b in range(a, alpha_max + 1)}
    bad = [k for k, s in signs.items() if s != want]
    observed = sorted(set(signs.values()))
    label = "+" if want == 1 else "-"
    checks.append(Check(
        f"d2F/dt^a dt^b = {label}R_(a+1,b+1)/((a+1)(b+1)), a,b <= {alpha_max}",
        not bad,
        "; ".join(x for x in (_failures(bad), f"observed signs {observed}") if x)))
    return SuiteResult("frobenius", checks)


# which perturbation kinds each suite actually reads
CONSUMES = {
    "paper": {"R", "theta"},
    "first": {"R"},
    "dkp": {"R"},
    "second": {"theta", "P"},
    "wdvv-theta": {"theta", "P"},
    "frobenius": {"R", "F"},
}


def run_suite(name: str, weight: Optional[int] = None, order: Optional[int] = None,
              perturb: Optional[Perturbation] = None, table: Optional[RTable] = None,
              subsystem: str = "literal", max_pole_weight: Optional[int] = None) -> SuiteResult:
    if name not in CONSUMES:
        raise ValueError(f"unknown suite {name!r}")
    if perturb:
        unused = {k for k in ("R", "theta", "P", "F") if getattr(perturb, k)} - CONSUMES[name]
        if unused:
            raise PerturbationError(
                f"suite {name} does not read {', '.join(sorted(unused))} perturbations")
    if name == "paper":
        return suite_paper(perturb, table)
    if name == "first":
        return suite_first(max_pole_weight or 14, perturb=perturb, table=table)
    if name == "dkp":
        return suite_dkp(order or 8, perturb, table)
    if name == "second":
        return suite_second(weight or 10, perturb=perturb)
    if name == "wdvv-theta":
        return suite_wdvv_theta(weight or 10, perturb)
    if name == "frobenius":
        return suite_frobenius(weight or 10, subsystem=subsystem, perturb=perturb, table=table)
    raise ValueError(f"unknown suite {name!r}")
