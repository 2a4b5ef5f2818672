"""Truncated Baker-Campbell-Hausdorff series via Dynkin's formula.

log(e^X e^Y) is expanded in the free associative algebra on {X, Y}; the
coefficient c_w of each word w comes from log(1 + Z) with
Z = sum_{(p,q) != (0,0)} X^p Y^q / (p! q!).  The Dynkin-Specht-Wever lemma turns
the degree-m part into the Lie element (1/m) sum_w c_w [w], where [w] is the
right-nested bracket [w_1, [w_2, ..., w_m]].  In a step-s nilpotent algebra all
words longer than s vanish, so the sum is exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .algebra import LieElement

MAX_STEP = 10


def _piece_weight(word: str) -> Fraction | None:
    """1/(p! q!) if ``word`` is X^p Y^q, else None."""
    p = len(word) - len(word.lstrip("X"))
    rest = word[p:]
    if rest.strip("Y"):
        return None
    return Fraction(1, factorial(p) * factorial(len(rest)))


@lru_cache(maxsize=None)
def word_coefficient(word: str) -> Fraction:
    """Coefficient of ``word`` (over the letters X, Y) in log(e^X e^Y)."""
    m = len(word)
    # ways[k][i]: sum over splits of word[:i] into k admissible pieces
    ways = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]
    ways[0][0] = Fraction(1)
    for k in range(1, m + 1):
        for i in range(1, m + 1):
            total = Fraction(0)
            for j in range(k - 1, i):
                if ways[k - 1][j]:
                    w = _piece_weight(word[j:i])
                    if w is not None:
                        total += ways[k - 1][j] * w
            ways[k][i] = total
    return sum((Fraction((-1) ** (k - 1), k) * ways[k][m] for k in range(1, m + 1)), Fraction(0))


@lru_cache(maxsize=None)
def dynkin_terms(step: int) -> tuple[tuple[str, Fraction], ...]:
    """Words up to length ``step`` with their Lie coefficients c_w / |w| (nonzero only)."""
    if not 1 <= step <= MAX_STEP:
        raise ValueError(f"BCH depth must be between 1 and {MAX_STEP}, got {step}")
    terms = []
    words = [""]
    for m in range(1, step + 1):
        words = [w + a for w in words for a in "XY"]
        for w in words:
            # right-nested brackets of words ending in a repeated letter vanish
            if m > 1 and w[-1] == w[-2]:
                continue
            c = word_coefficient(w)
            if c:
                terms.append((w, c / m))
    return tuple(terms)


def bch(u: LieElement, v: LieElement, step: int | None = None) -> LieElement:
    """log(exp u exp v), exact for an algebra of nilpotency step ``step``."""
    L = u.algebra
    if step is None:
        step = L.step
    if u.is_zero():
        return v
    if v.is_zero():
        return u
    nested: dict[str, LieElement | None] = {"X": u, "Y": v}

    def right_nested(word: str) -> LieElement | None:
        if word in nested:
            return nested[word]
        inner = right_nested(word[1:])
        if inner is None:
            val = None
        else:
            val = L.bracket(nested[word[0]], inner)
            if val.is_zero():
                val = None
        nested[word] = val
        return val

    total = u + v
    for word, c in dynkin_terms(step):
        if len(word) < 2:
            continue
        term = right_nested(word)
        if term is not None:
            total = total + term.scale(c)
    return total


def bch_product(elements, step: int | None = None) -> LieElement:
    """log(exp e_1 exp e_2 ... exp e_m)."""
    elements = list(elements)
    if not elements:
        raise ValueError("empty product")
    acc = elements[-1]
    for e in reversed(elements[:-1]):
        acc = bch(e, acc, step)
    return acc
