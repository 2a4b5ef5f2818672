"""Exact arithmetic over the Gaussian rationals Q(i).

Two value types live here:

``GaussianRational``
    a complex number whose real and imaginary parts are arbitrary-precision
    rationals.

``Polynomial``
    a multivariate polynomial with ``GaussianRational`` coefficients in an
    explicit, ordered list of named variables.  Variables are treated as real
    symbols, so complex conjugation only touches coefficients unless a renaming
    map is supplied.

Both types are immutable.  Polynomials are stored sparsely (exponent tuple ->
coefficient) with zero coefficients pruned after every operation, so two
polynomials over the same variable list are equal exactly when their term maps
are equal.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from itertools import product as _iproduct
from numbers import Rational
from typing import Callable, Iterable, Mapping, Sequence

__all__ = [
    "GaussianRational",
    "Polynomial",
    "I",
    "parse_rational",
    "format_rational",
    "as_gaussian",
]


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (also accepts ints and Fractions)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    s = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
        raise ValueError(f"not a rational: {text!r}")
    value = Fraction(s)
    return value


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("cannot combine a GaussianRational with an imaginary part")
            re, im = re.re, re.im
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return self * GaussianRational(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (GaussianRational(1) / self) ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    # -- presentation -----------------------------------------------------
    def __repr__(self) -> str:
        return f"GaussianRational({format_rational(self.re)!r}, {format_rational(self.im)!r})"

    def __str__(self) -> str:
        if not self.im:
            return format_rational(self.re)
        im = _imag_str(self.im)
        if not self.re:
            return im
        sep = " - " if self.im < 0 else " + "
        return f"({format_rational(self.re)}{sep}{_imag_str(abs(self.im))})"

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, data) -> GaussianRational:
        if isinstance(data, (str, int)):
            return cls(parse_rational(data))
        return cls(parse_rational(data.get("re", "0")), parse_rational(data.get("im", "0")))


def _imag_str(q: Fraction) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{format_rational(q)}*i"


def _coerce(value) -> GaussianRational | None:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)) or isinstance(value, Rational):
        return GaussianRational(Fraction(value))
    if isinstance(value, complex):
        raise TypeError("floating complex numbers are not exact; use GaussianRational")
    return None


def as_gaussian(value) -> GaussianRational:
    g = _coerce(value)
    if g is None:
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")
    return g


I = GaussianRational(0, 1)

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def _monomial_key(exp: tuple[int, ...]):
    # ascending total degree; within a degree x1 > x2 > ... (lex)
    return (sum(exp), tuple(-e for e in exp))


class Polynomial:
    """Multivariate polynomial over Q(i) in an ordered list of named variables."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        n = len(variables)
        clean: dict[tuple[int, ...], GaussianRational] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = as_gaussian(c)
            if c:
                prev = clean.get(exp)
                c = c if prev is None else prev + c
                if c:
                    clean[exp] = c
                else:
                    del clean[exp]
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> Polynomial:
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        object.__setattr__(p, "vars", variables)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables: Sequence[str]) -> Polynomial:
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, value, variables: Sequence[str]) -> Polynomial:
        variables = tuple(variables)
        c = as_gaussian(value)
        if not c:
            return cls._raw(variables, {})
        return cls._raw(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> Polynomial:
        variables = tuple(variables)
        idx = variables.index(name)
        exp = tuple(1 if j == idx else 0 for j in range(len(variables)))
        return cls._raw(variables, {exp: _ONE})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple[Polynomial, ...]:
        return tuple(cls.var(v, variables) for v in variables)

    # -- basic queries ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def used_variables(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for exp in self.terms:
            for j, e in enumerate(exp):
                if e:
                    used[j] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * len(self.vars), _ZERO)

    def coefficient(self, exp: Sequence[int]) -> GaussianRational:
        return self.terms.get(tuple(exp), _ZERO)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], GaussianRational]]:
        return sorted(self.terms.items(), key=lambda item: _monomial_key(item[0]))

    def homogeneous_part(self, degree: int) -> Polynomial:
        return Polynomial._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    # -- equality ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.vars == other.vars and self.terms == other.terms
        g = _coerce(other)
        if g is None:
            return NotImplemented
        if not g:
            return not self.terms
        return self.terms == {(0,) * len(self.vars): g}

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.vars, frozenset(self.terms.items()))))
        return self._hash

    # -- variable lists ---------------------------------------------------
    def align(self, variables: Sequence[str]) -> Polynomial:
        """Re-express over a new variable list that contains every used variable."""
        variables = tuple(variables)
        if variables == self.vars:
            return self
        pos = {v: j for j, v in enumerate(variables)}
        if len(pos) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        used = set(self.used_variables())
        missing = used - set(variables)
        if missing:
            raise ValueError(f"variables {sorted(missing)} are not in the target list")
        index = [pos.get(v) for v in self.vars]
        n = len(variables)
        out = {}
        for exp, c in self.terms.items():
            new = [0] * n
            for j, e in enumerate(exp):
                if e:
                    new[index[j]] = e
            out[tuple(new)] = c
        return Polynomial._raw(variables, out)

    def _check(self, other: Polynomial) -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable lists differ: {self.vars} vs {other.vars}")

    def _lift(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        g = _coerce(other)
        if g is None:
            return None
        return Polynomial.constant(g, self.vars)

    # -- ring operations --------------------------------------------------
    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __pos__(self) -> Polynomial:
        return self

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = GaussianRational(prev.re + c.re, prev.im + c.im)
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> Polynomial:
        c = as_gaussian(c)
        if not c:
            return Polynomial._raw(self.vars, {})
        if c == _ONE:
            return self
        cr, ci = c.re, c.im
        out = {}
        for e, a in self.terms.items():
            if ci:
                out[e] = GaussianRational(a.re * cr - a.im * ci, a.re * ci + a.im * cr)
            else:
                out[e] = GaussianRational(a.re * cr, a.im * cr)
        return Polynomial._raw(self.vars, out)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            g = _coerce(other)
            if g is None:
                return NotImplemented
            return self.scale(g)
        self._check(other)
        if not self.terms or not other.terms:
            return Polynomial._raw(self.vars, {})
        acc_re: dict[tuple, Fraction] = {}
        acc_im: dict[tuple, Fraction] = {}
        b_items = list(other.terms.items())
        for e1, c1 in self.terms.items():
            a, b = c1.re, c1.im
            for e2, c2 in b_items:
                e = tuple([x + y for x, y in zip(e1, e2)])
                c, d = c2.re, c2.im
                if b:
                    if d:
                        r = a * c - b * d
                        im = a * d + b * c
                    else:
                        r = a * c
                        im = b * c
                elif d:
                    r = a * c
                    im = a * d
                else:
                    r = a * c
                    im = None
                if r:
                    acc_re[e] = acc_re.get(e, 0) + r
                elif e not in acc_re:
                    acc_re[e] = 0
                if im:
                    acc_im[e] = acc_im.get(e, 0) + im
        out = {}
        for e, r in acc_re.items():
            im = acc_im.get(e, 0)
            if r or im:
                out[e] = GaussianRational(r, im)
        return Polynomial._raw(self.vars, out)

    def __rmul__(self, other):
        g = _coerce(other)
        if g is None:
            return NotImplemented
        return self.scale(g)

    def __truediv__(self, other):
        g = _coerce(other)
        if g is None:
            return NotImplemented
        return self.scale(_ONE / g)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Polynomial.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- analysis ---------------------------------------------------------
    def conjugate(self, rename: Mapping[str, str] | None = None) -> Polynomial:
        """Complex conjugate, treating variables as real.

        With ``rename`` the variables are additionally swapped according to the
        map (e.g. ``z1 -> zb1``), which is how conjugation of complex symbols
        is represented.  Renamed targets must be in the variable list.
        """
        if not rename:
            return Polynomial._raw(self.vars, {e: c.conjugate() for e, c in self.terms.items()})
        pos = {v: j for j, v in enumerate(self.vars)}
        perm = list(range(len(self.vars)))
        for src, dst in rename.items():
            if src not in pos or dst not in pos:
                raise ValueError(f"rename {src}->{dst} outside variable list {self.vars}")
            perm[pos[src]] = pos[dst]
        n = len(self.vars)
        out = {}
        for e, c in self.terms.items():
            new = [0] * n
            for j, x in enumerate(e):
                if x:
                    new[perm[j]] += x
            out[tuple(new)] = c.conjugate()
        return Polynomial(self.vars, out)

    def real_part(self) -> Polynomial:
        return Polynomial._raw(
            self.vars, {e: GaussianRational(c.re) for e, c in self.terms.items() if c.re}
        )

    def imag_part(self) -> Polynomial:
        return Polynomial._raw(
            self.vars, {e: GaussianRational(c.im) for e, c in self.terms.items() if c.im}
        )

    def is_real(self) -> bool:
        return all(not c.im for c in self.terms.values())

    def diff(self, v: str) -> Polynomial:
        j = self.vars.index(v)
        out = {}
        for e, c in self.terms.items():
            k = e[j]
            if k:
                ne = e[:j] + (k - 1,) + e[j + 1:]
                out[ne] = c * k
        return Polynomial._raw(self.vars, out)

    def subs(self, assignment: Mapping[str, object], variables: Sequence[str] | None = None) -> Polynomial:
        """Substitute polynomials (or scalars) for variables.

        Every used variable must either be assigned or survive into the target
        variable list ``variables`` (defaults to the common variable list of
        the assigned polynomials, or to ``self.vars``).
        """
        targets = None
        for val in assignment.values():
            if isinstance(val, Polynomial):
                if targets is None:
                    targets = val.vars
                elif targets != val.vars:
                    raise ValueError("substituted polynomials must share a variable list")
        if variables is not None:
            targets = tuple(variables)
        if targets is None:
            targets = self.vars
        images: list[Polynomial] = []
        for v in self.vars:
            if v in assignment:
                val = assignment[v]
                if isinstance(val, Polynomial):
                    images.append(val.align(targets))
                else:
                    images.append(Polynomial.constant(val, targets))
            elif v in targets:
                images.append(Polynomial.var(v, targets))
            else:
                images.append(None)
        used = self.used_variables()
        for v in used:
            if images[self.vars.index(v)] is None:
                raise KeyError(f"no assignment for variable {v!r}")
        return _compose(self, images, targets)

    def evaluate(self, point: Mapping[str, object]) -> GaussianRational:
        total = _ZERO
        values = []
        for v in self.vars:
            values.append(as_gaussian(point[v]) if v in point else None)
        for e, c in self.terms.items():
            term = c
            for val, k in zip(values, e):
                if k:
                    if val is None:
                        raise KeyError("evaluation point misses a used variable")
                    term = term * val ** k
            total = total + term
        return total

    def truncate(self, var: str, max_degree: int) -> Polynomial:
        """Drop every term whose degree in ``var`` exceeds ``max_degree``."""
        j = self.vars.index(var)
        return Polynomial._raw(self.vars, {e: c for e, c in self.terms.items() if e[j] <= max_degree})

    # -- presentation -----------------------------------------------------
    def __repr__(self) -> str:
        return f"Polynomial({list(self.vars)!r}, {str(self)!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exp) if e
            )
            neg, cstr = _coef_text(c)
            if mono:
                body = mono if cstr == "1" else f"{cstr}*{mono}"
            else:
                body = cstr
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def to_latex(self, var_latex: Callable[[str], str] | None = None) -> str:
        var_latex = var_latex or _default_var_latex
        if not self.terms:
            return "0"
        out = ""
        for k, (exp, c) in enumerate(self.sorted_terms()):
            mono = " ".join(
                var_latex(v) if e == 1 else f"{var_latex(v)}^{{{e}}}"
                for v, e in zip(self.vars, exp)
                if e
            )
            neg, cl = _coef_latex(c, bool(mono))
            sign = ("-" if neg else "") if k == 0 else (" - " if neg else " + ")
            out += sign + (f"{cl} {mono}".strip() if cl else mono)
        return out

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "re": format_rational(c.re), "im": format_rational(c.im)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data) -> Polynomial:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            variables = data["vars"]
            terms = {}
            for t in data["terms"]:
                exp = tuple(t["exp"])
                c = GaussianRational(parse_rational(t.get("re", "0")), parse_rational(t.get("im", "0")))
                if exp in terms:
                    raise ValueError(f"repeated exponent {exp}")
                terms[exp] = c
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc}") from exc
        return cls(variables, terms)


def _coef_text(c: GaussianRational) -> tuple[bool, str]:
    """Return (negative, magnitude string) so a sign can be pulled out."""
    if not c.im:
        return c.re < 0, format_rational(abs(c.re))
    if not c.re:
        return c.im < 0, _imag_str(abs(c.im))
    return False, str(c)


def _frac_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"


def _coef_latex(c: GaussianRational, has_mono: bool) -> tuple[bool, str]:
    if not c.im:
        neg, q = c.re < 0, abs(c.re)
        if q == 1 and has_mono:
            return neg, ""
        return neg, _frac_latex(q)
    if not c.re:
        neg, q = c.im < 0, abs(c.im)
        if q.denominator == 1:
            return neg, ("i" if q == 1 else f"{q.numerator}i")
        return neg, rf"\frac{{{'' if q.numerator == 1 else q.numerator}i}}{{{q.denominator}}}"
    im_sign = "-" if c.im < 0 else "+"
    im = abs(c.im)
    im_s = "i" if im == 1 else f"{_frac_latex(im)}i"
    return False, rf"\left({_frac_latex(c.re)} {im_sign} {im_s}\right)"


def _default_var_latex(name: str) -> str:
    m = re.fullmatch(r"([A-Za-z]+)(\d+)('*)", name)
    if m:
        return f"{m.group(1)}_{{{m.group(2)}}}{m.group(3)}"
    return name


def _compose(p: Polynomial, images: list, targets: tuple) -> Polynomial:
    # cache powers of each image; expand term by term
    powers: dict[tuple[int, int], Polynomial] = {}

    def power(j: int, k: int) -> Polynomial:
        key = (j, k)
        if key not in powers:
            powers[key] = images[j] if k == 1 else power(j, k - 1) * images[j]
        return powers[key]

    result = Polynomial.zero(targets)
    one = Polynomial.constant(1, targets)
    # group terms sharing the same prefix would be faster; degrees here are small
    for exp, c in p.terms.items():
        term = one
        for j, k in enumerate(exp):
            if k:
                term = term * power(j, k)
        result = result + term.scale(c)
    return result


def random_polynomial(rng, variables: Sequence[str], n_terms: int = 4, max_degree: int = 3,
                      max_num: int = 5, max_den: int = 4) -> Polynomial:
    """Random polynomial with small Gaussian-rational coefficients (for tests)."""
    n = len(variables)
    terms = {}
    for _ in range(n_terms):
        deg = rng.randint(0, max_degree)
        exp = [0] * n
        for _ in range(deg):
            exp[rng.randrange(n)] += 1
        re_ = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        im_ = Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))
        terms[tuple(exp)] = terms.get(tuple(exp), _ZERO) + GaussianRational(re_, im_)
    return Polynomial(variables, terms)


def brute_force_product(a: Polynomial, b: Polynomial) -> Polynomial:
    """Naive term convolution, used as an independent oracle for ``*``."""
    out: dict[tuple, GaussianRational] = {}
    for (e1, c1), (e2, c2) in _iproduct(a.terms.items(), b.terms.items()):
        e = tuple(x + y for x, y in zip(e1, e2))
        out[e] = out.get(e, _ZERO) + c1 * c2
    return Polynomial(a.vars, out)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.vars != b.vars:
        raise ValueError(f"variable lists differ: {a.vars} vs {b.vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def common_variables(polys: Iterable[Polynomial]) -> tuple[str, ...]:
    """Union of variable lists, preserving first-seen order."""
    seen: dict[str, None] = {}
    for p in polys:
        for v in p.vars:
            seen.setdefault(v, None)
    return tuple(seen)
