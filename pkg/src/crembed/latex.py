"""LaTeX rendering in a display style: each homogeneous part is factored by its
leading coefficient when that leaves Gaussian-integer coefficients, so
1/2 x1 + i/2 x2 prints as \\frac{1}{2}\\left(x_{1} + i x_{2}\\right).
"""
from __future__ import annotations

import re
from typing import Sequence

from .exact_algebra import GaussianRational, Polynomial, _coef_latex


def var_latex(name: str) -> str:
    m = re.fullmatch(r"([A-Za-z]+?)(b?)(\d+)('*)", name)
    if not m:
        return name
    base, bar, idx, primes = m.groups()
    body = f"{base}{primes}_{{{idx}}}"
    return rf"\bar{{{body}}}" if bar else body


def _is_gaussian_integer(c: GaussianRational) -> bool:
    return c.re.denominator == 1 and c.im.denominator == 1


def _power_base(part: Polynomial) -> tuple[Polynomial, int] | None:
    """(q, k) with part == q**k, k >= 2, where q is built from the pure powers
    x_i**(d/k) of ``part``; None when no such exact factorization exists."""
    d = sum(next(iter(part.terms)))
    pure = {e: c for e, c in part.terms.items() if sum(1 for a in e if a) == 1}
    if not pure or any(c != 1 for c in pure.values()):
        return None
    for k in range(d, 1, -1):
        if d % k:
            continue
        q = Polynomial(part.vars, {tuple(a // k for a in e): 1 for e in pure})
        if len(q.terms) > 1 and q ** k == part:
            return q, k
    return None


def _inner_latex(part: Polynomial) -> str:
    found = _power_base(part)
    if found:
        q, k = found
        return rf"{q.to_latex(var_latex)}\right)^{{{k}}}"
    return part.to_latex(var_latex) + r"\right)"


def display_latex(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    degrees = sorted({sum(e) for e in p.terms})
    for d in degrees:
        part = p.homogeneous_part(d) if d else Polynomial.constant(p.constant_term(), p.vars)
        terms = part.sorted_terms()
        lead = terms[0][1]
        factor = (
            len(terms) > 1
            and lead != 1 and lead != -1
            and all(_is_gaussian_integer(c / lead) for _, c in terms)
        )
        if factor:
            neg, cl = _coef_latex(lead, True)
            body = rf"{cl}\left(" + _inner_latex(part.scale(1 / lead))
            out.append(("-", body) if neg else ("+", body))
        else:
            text = part.to_latex(var_latex)
            if text.startswith("-"):
                out.append(("-", text[1:]))
            else:
                out.append(("+", text))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


def map_latex(variables: Sequence[str], components: Sequence[Polynomial]) -> str:
    args = ", ".join(var_latex(v) for v in variables)
    comps = ",\\\\\n  & ".join(display_latex(c) for c in components)
    return "\\begin{aligned}\n  (" + args + ") \\mapsto \\Big(& " + comps + "\\Big)\n\\end{aligned}"


def field_latex(variables: Sequence[str], coeffs: Sequence[Polynomial]) -> str:
    parts = []
    for v, c in zip(variables, coeffs):
        if not c:
            continue
        d = rf"\partial_{{{var_latex(v)}}}"
        if c == Polynomial.constant(1, c.vars):
            parts.append(("+", d))
            continue
        text = display_latex(c)
        if len(c.terms) > 1:
            parts.append(("+", rf"\left({text}\right) {d}"))
        elif text.startswith("-"):
            parts.append(("-", f"{text[1:]} {d}"))
        else:
            parts.append(("+", f"{text} {d}"))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s
