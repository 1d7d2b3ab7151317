"""Plain-text and JSON forms of polynomials.

Plain grammar: canonically ordered terms joined by `` + `` / `` - ``;
a term is ``coeff*var^e*...`` with coefficients written ``num`` or
``num/den`` (omitted when 1).  Variable spellings:

=========  =============  ========================
family     example        meaning
=========  =============  ========================
F          ``f2``         f_2
FD         ``f2_1``       f_2^{(1)}
W          ``w3``         w_3
Tsecond    ``t5``         t_5
Tfrob      ``tp-4``       t^{-4}
X ... Zeta ``x``, ``lam`` plain symbols (``x3`` if indexed)
=========  =============  ========================
"""

from __future__ import annotations

import re
from fractions import Fraction

from .mpoly import MPoly, as_monomial
from .variables import Family, VarId

_PLAIN_NAMES = {
    Family.X: "x", Family.Y: "y", Family.Z: "z", Family.Q: "q",
    Family.P: "p", Family.LAMBDA: "lam", Family.ZETA: "zeta",
}
_PLAIN_LOOKUP = {v: k for k, v in _PLAIN_NAMES.items()}

_JSON_NAMES = {
    Family.F: "F", Family.W: "W", Family.TSECOND: "Tsecond", Family.TFROB: "Tfrob",
    Family.X: "X", Family.Y: "Y", Family.Z: "Z", Family.Q: "Q", Family.P: "P",
    Family.LAMBDA: "Lambda", Family.ZETA: "Zeta", Family.FD: "FD",
}
_JSON_LOOKUP = {v: k for k, v in _JSON_NAMES.items()}


def format_var(v: VarId) -> str:
    fam = Family(v.family)
    if fam is Family.F:
        return f"f{v.index}"
    if fam is Family.FD:
        return f"f{v.index}_{v.index2}"
    if fam is Family.W:
        return f"w{v.index}"
    if fam is Family.TSECOND:
        return f"t{v.index}"
    if fam is Family.TFROB:
        return f"tp{v.index}"
    name = _PLAIN_NAMES[fam]
    return name if v.index == 0 else f"{name}{v.index}"


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(mono) -> str:
    parts = []
    for v, e in mono:
        s = format_var(v)
        if e != 1:
            s += f"^{e}"
        parts.append(s)
    return "*".join(parts)


def format_poly(poly: MPoly) -> str:
    items = poly.items()
    if not items:
        return "0"
    out = []
    for k, (mono, c) in enumerate(items):
        neg = c < 0
        a = -c if neg else c
        body = format_monomial(mono)
        if not body:
            body = format_rational(a)
        elif a != 1:
            body = f"{format_rational(a)}*{body}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


_VAR_RE = re.compile(
    r"^(?:f(?P<fd>\d+)_(?P<fd2>\d+)|f(?P<f>\d+)|w(?P<w>\d+)|tpm(?P<tpm>\d+)|tp(?P<tp>\d+)"
    r"|t(?P<t>\d+)|(?P<plain>lam|zeta|x|y|z|q|p)(?P<pi>\d*))$")


def parse_var(token: str) -> VarId:
    token = token.replace("tp-", "tpm")
    m = _VAR_RE.match(token)
    if not m:
        raise ValueError(f"unknown variable {token!r}")
    g = m.groupdict()
    if g["fd"] is not None:
        return VarId(Family.FD.value, int(g["fd"]), int(g["fd2"]))
    if g["f"] is not None:
        return VarId(Family.F.value, int(g["f"]))
    if g["w"] is not None:
        return VarId(Family.W.value, int(g["w"]))
    if g["tpm"] is not None:
        return VarId(Family.TFROB.value, -int(g["tpm"]))
    if g["tp"] is not None:
        return VarId(Family.TFROB.value, int(g["tp"]))
    if g["t"] is not None:
        return VarId(Family.TSECOND.value, int(g["t"]))
    fam = _PLAIN_LOOKUP[g["plain"]]
    return VarId(fam.value, int(g["pi"]) if g["pi"] else 0)


def parse_poly(text: str) -> MPoly:
    """Inverse of :func:`format_poly`."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    s = s.replace("tp-", "tpm").replace("^-", "^~")
    pieces = re.split(r"([+-])", s)
    terms: dict = {}
    sign = 1
    for piece in pieces:
        if piece == "+":
            sign = 1
            continue
        if piece == "-":
            sign = -1
            continue
        if not piece:
            continue
        coeff = Fraction(sign)
        mono: dict = {}
        for factor in piece.split("*"):
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coeff *= Fraction(factor)
                continue
            name, _, exp = factor.partition("^")
            e = int(exp.replace("~", "-")) if exp else 1
            v = parse_var(name)
            mono[v] = mono.get(v, 0) + e
        key = as_monomial(mono)
        terms[key] = terms.get(key, 0) + coeff
        sign = 1
    return MPoly(terms)


def var_key(v: VarId) -> str:
    name = _JSON_NAMES[Family(v.family)]
    if v.family == Family.FD:
        return f"{name}{v.index}_{v.index2}"
    return f"{name}{v.index}"


_KEY_RE = re.compile(r"^([A-Za-z]+?)(-?\d+)(?:_(\d+))?$")


def parse_var_key(key: str) -> VarId:
    m = _KEY_RE.match(key)
    if not m or m.group(1) not in _JSON_LOOKUP:
        raise ValueError(f"bad variable key {key!r}")
    fam = _JSON_LOOKUP[m.group(1)]
    return VarId(fam.value, int(m.group(2)), int(m.group(3) or 0))


def poly_to_json(poly: MPoly) -> list:
    return [{"coeff": f"{c.numerator}/{c.denominator}",
             "monomial": {var_key(v): e for v, e in mono}}
            for mono, c in poly.items()]


def poly_from_json(data: list) -> MPoly:
    terms: dict = {}
    for entry in data:
        mono = as_monomial({parse_var_key(k): int(e) for k, e in entry["monomial"].items()})
        if mono in terms:
            raise ValueError("duplicate monomial in serialized polynomial")
        terms[mono] = Fraction(entry["coeff"])
    return MPoly(terms)
