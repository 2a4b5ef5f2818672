"""Finite-dimensional Lie algebras given by rational structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from ..errors import SchemaError
from ..exact_algebra import GaussianRational, Polynomial, as_gaussian, format_rational, parse_rational
from .linalg import Subspace, Vector, rank, unit, vec


class LieAlgebra:
    """Lie algebra with basis X_1..X_dim and [X_i, X_j] = sum_k c[i][j][k] X_k.

    Indices are 0-based internally; labels, JSON and user-facing reports are
    1-based.  Only pairs i < j are stored; [X_j, X_i] is obtained by negation.
    """

    def __init__(self, dim: int, structure: Mapping[tuple[int, int], Mapping[int, object]],
                 labels: Sequence[str] | None = None, name: str = ""):
        if dim <= 0:
            raise ValueError("dimension must be positive")
        self.dim = dim
        self.name = name
        self.labels = tuple(labels) if labels else tuple(f"X{j + 1}" for j in range(dim))
        if len(self.labels) != dim:
            raise ValueError("label count does not match dimension")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in structure.items():
            if i == j:
                raise ValueError(f"bracket [X{i + 1},X{i + 1}] must not be specified")
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"bracket index out of range: ({i + 1},{j + 1})")
            row = table.setdefault((i, j), {})
            for k, c in coeffs.items():
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target index out of range: {k + 1}")
                c = Fraction(c) * sign
                row[k] = row.get(k, Fraction(0)) + c
                if not row[k]:
                    del row[k]
            if not row:
                del table[(i, j)]
        self.structure = table
        self._lcs: list[Subspace] | None = None

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim})"

    # -- constant vectors -------------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return dict(self.structure.get((i, j), {}))
        return {k: -c for k, c in self.structure.get((j, i), {}).items()}

    def bracket_vectors(self, u: Sequence, v: Sequence) -> Vector:
        out = [GaussianRational(0)] * self.dim
        for (i, j), coeffs in self.structure.items():
            w = u[i] * v[j] - u[j] * v[i]
            if w:
                for k, c in coeffs.items():
                    out[k] = out[k] + w * c
        return tuple(out)

    def basis_vector(self, index: int) -> Vector:
        return unit(self.dim, index)

    def whole(self) -> Subspace:
        return Subspace.from_indices(self.dim, range(self.dim), "g")

    def bracket_span(self, a: Subspace, b: Subspace) -> Subspace:
        gens = [self.bracket_vectors(u, v) for u in a.basis for v in b.basis]
        return Subspace(self.dim, [g for g in gens if any(g)])

    def lower_central_series(self) -> list[Subspace]:
        """[g, g^1=g, g^2=[g,g], ...] until zero or stagnation."""
        if self._lcs is None:
            series = [self.whole()]
            g = series[0]
            while series[-1].dimension:
                nxt = self.bracket_span(g, series[-1])
                if nxt.dimension == series[-1].dimension:
                    series.append(nxt)
                    break
                series.append(nxt)
            self._lcs = series
        return self._lcs

    def is_nilpotent(self) -> bool:
        return self.lower_central_series()[-1].dimension == 0

    @property
    def step(self) -> int:
        series = self.lower_central_series()
        if series[-1].dimension:
            raise ValueError(f"{self!r} is not nilpotent")
        return len(series) - 1

    def jacobi_violations(self) -> list[tuple[int, int, int]]:
        bad = []
        for i, j, k in combinations(range(self.dim), 3):
            xi, xj, xk = unit(self.dim, i), unit(self.dim, j), unit(self.dim, k)
            total = [GaussianRational(0)] * self.dim
            for a, b, c in ((xi, xj, xk), (xj, xk, xi), (xk, xi, xj)):
                t = self.bracket_vectors(a, self.bracket_vectors(b, c))
                total = [x + y for x, y in zip(total, t)]
            if any(total):
                bad.append((i + 1, j + 1, k + 1))
        return bad

    # -- polynomial elements ----------------------------------------------
    def element(self, coeffs: Sequence, variables: Sequence[str] = ()) -> LieElement:
        """Build an element from scalars and/or polynomials over ``variables``."""
        variables = tuple(variables)
        polys = []
        for c in coeffs:
            if isinstance(c, Polynomial):
                polys.append(c.align(variables))
            else:
                polys.append(Polynomial.constant(c, variables))
        return LieElement(self, polys)

    def zero(self, variables: Sequence[str] = ()) -> LieElement:
        return LieElement(self, [Polynomial.zero(variables)] * self.dim)

    def generic_element(self, variables: Sequence[str], names: Sequence[str]) -> LieElement:
        """sum_j names[j] * X_j with each name a variable of ``variables``."""
        return LieElement(self, [Polynomial.var(n, variables) for n in names])

    def combine(self, vectors: Sequence[Vector], coeffs: Sequence[Polynomial],
                variables: Sequence[str]) -> LieElement:
        """sum_b coeffs[b] * vectors[b] for constant vectors and polynomial coefficients."""
        out = [Polynomial.zero(variables) for _ in range(self.dim)]
        for v, c in zip(vectors, coeffs):
            if c.is_zero():
                continue
            for k, x in enumerate(v):
                if x:
                    out[k] = out[k] + c.scale(x)
        return LieElement(self, out)

    def bracket(self, u: LieElement, v: LieElement) -> LieElement:
        if u.algebra is not self or v.algebra is not self:
            raise ValueError("elements belong to a different algebra")
        if u.vars != v.vars:
            raise ValueError("elements use different variable lists")
        variables = u.vars
        out = [None] * self.dim
        uc, vc = u.coeffs, v.coeffs
        for (i, j), coeffs in self.structure.items():
            a = uc[i] * vc[j] if uc[i] and vc[j] else None
            b = uc[j] * vc[i] if uc[j] and vc[i] else None
            if a is None and b is None:
                continue
            w = a - b if (a is not None and b is not None) else (a if a is not None else -b)
            if not w:
                continue
            for k, c in coeffs.items():
                t = w.scale(c)
                out[k] = t if out[k] is None else out[k] + t
        zero = Polynomial.zero(variables)
        return LieElement(self, [zero if x is None else x for x in out])

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        brackets = []
        for (i, j) in sorted(self.structure):
            coeffs = self.structure[(i, j)]
            brackets.append({
                "i": i + 1,
                "j": j + 1,
                "coeffs": {str(k + 1): format_rational(c) for k, c in sorted(coeffs.items())},
            })
        return {"name": self.name, "dim": self.dim, "labels": list(self.labels), "brackets": brackets}

    @classmethod
    def from_json(cls, data: Mapping) -> LieAlgebra:
        try:
            dim = data["dim"]
            if not isinstance(dim, int) or isinstance(dim, bool) or dim <= 0:
                raise SchemaError(f"'dim' must be a positive integer, got {dim!r}")
            labels = data.get("labels")
            if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
                raise SchemaError("'labels' must be a list of length dim")
            structure: dict[tuple[int, int], dict[int, Fraction]] = {}
            for entry in data.get("brackets", []):
                i, j = entry["i"], entry["j"]
                if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
                    raise SchemaError("bracket indices must be integers")
                if i == j or not (1 <= i <= dim and 1 <= j <= dim):
                    raise SchemaError(f"invalid bracket indices ({i},{j})")
                coeffs = {}
                for k, c in entry["coeffs"].items():
                    k = int(k)
                    if not 1 <= k <= dim:
                        raise SchemaError(f"bracket target {k} out of range")
                    coeffs[k - 1] = parse_rational(c)
                key = (i - 1, j - 1)
                if key in structure or key[::-1] in structure:
                    raise SchemaError(f"bracket ({i},{j}) given twice")
                structure[key] = coeffs
        except SchemaError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise SchemaError(f"malformed algebra JSON: {exc}") from exc
        return cls(dim, structure, labels, data.get("name", ""))


class LieElement:
    """Element sum_k coeffs[k] X_k with polynomial coefficients over one variable list."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: LieAlgebra, coeffs: Sequence[Polynomial]):
        coeffs = tuple(coeffs)
        if len(coeffs) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coefficients, got {len(coeffs)}")
        if coeffs:
            v0 = coeffs[0].vars
            if any(c.vars != v0 for c in coeffs):
                raise ValueError("coefficients must share a variable list")
        self.algebra = algebra
        self.coeffs = coeffs

    @property
    def vars(self) -> tuple[str, ...]:
        return self.coeffs[0].vars

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: LieElement) -> LieElement:
        return LieElement(self.algebra, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: LieElement) -> LieElement:
        return LieElement(self.algebra, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> LieElement:
        return LieElement(self.algebra, [-a for a in self.coeffs])

    def scale(self, c) -> LieElement:
        if isinstance(c, Polynomial):
            return LieElement(self.algebra, [a * c for a in self.coeffs])
        c = as_gaussian(c)
        return LieElement(self.algebra, [a.scale(c) for a in self.coeffs])

    def bracket(self, other: LieElement) -> LieElement:
        return self.algebra.bracket(self, other)

    def align(self, variables: Sequence[str]) -> LieElement:
        return LieElement(self.algebra, [a.align(variables) for a in self.coeffs])

    def subs(self, assignment: Mapping[str, object], variables: Sequence[str] | None = None) -> LieElement:
        return LieElement(self.algebra, [a.subs(assignment, variables) for a in self.coeffs])

    def map(self, fn) -> LieElement:
        return LieElement(self.algebra, [fn(a) for a in self.coeffs])

    def constant_vector(self) -> Vector:
        if any(not c.is_constant() for c in self.coeffs):
            raise ValueError("element has non-constant coefficients")
        return tuple(c.constant_term() for c in self.coeffs)

    def __repr__(self) -> str:
        parts = [f"({c})*{lab}" for c, lab in zip(self.coeffs, self.algebra.labels) if c]
        return " + ".join(parts) if parts else "0"


def bracket(u: LieElement, v: LieElement) -> LieElement:
    return u.algebra.bracket(u, v)


@dataclass
class ValidationReport:
    jacobi_violations: list[tuple[int, int, int]]
    series_dims: tuple[int, ...]
    nilpotent: bool
    step: int | None
    messages: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.jacobi_violations and self.nilpotent

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "jacobi_violations": [list(t) for t in self.jacobi_violations],
            "series_dims": list(self.series_dims),
            "nilpotent": self.nilpotent,
            "step": self.step,
            "messages": list(self.messages),
        }


def validate_algebra(L: LieAlgebra) -> ValidationReport:
    violations = L.jacobi_violations()
    series = L.lower_central_series()
    dims = tuple(s.dimension for s in series)
    nilpotent = dims[-1] == 0
    msgs = []
    if violations:
        msgs.append(f"Jacobi identity fails on {len(violations)} basis triple(s)")
    if not nilpotent:
        msgs.append(f"lower central series stagnates at dimension {dims[-1]}")
    return ValidationReport(violations, dims, nilpotent, len(dims) - 1 if nilpotent else None, msgs)


@dataclass
class SubspaceChecks:
    is_subalgebra: bool
    is_ideal: bool
    generates: bool


def is_subalgebra(L: LieAlgebra, S: Subspace) -> bool:
    return all(S.contains(L.bracket_vectors(u, v)) for u in S.basis for v in S.basis)


def is_ideal(L: LieAlgebra, S: Subspace) -> bool:
    return all(S.contains(L.bracket_vectors(unit(L.dim, i), v)) for i in range(L.dim) for v in S.basis)


def generated_subalgebra(L: LieAlgebra, H: Subspace) -> Subspace:
    current = Subspace(L.dim, H.basis)
    while True:
        gens = list(current.basis)
        gens += [L.bracket_vectors(u, v) for u in H.basis for v in current.basis]
        nxt = Subspace(L.dim, gens)
        if nxt.dimension == current.dimension:
            return current
        current = nxt


def generates(L: LieAlgebra, H: Subspace) -> bool:
    return generated_subalgebra(L, H).dimension == L.dim


def subspace_checks(L: LieAlgebra, S: Subspace, H: Subspace) -> SubspaceChecks:
    return SubspaceChecks(is_subalgebra(L, S), is_ideal(L, S), generates(L, H))


def structure_from_brackets(pairs: Iterable[tuple[int, int, Mapping[int, object]]]):
    """Helper for 1-based literal tables: [(i, j, {k: c}), ...]."""
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i, j, coeffs in pairs:
        key = (i - 1, j - 1)
        row = out.setdefault(key, {})
        for k, c in coeffs.items():
            row[k - 1] = row.get(k - 1, Fraction(0)) + Fraction(c)
    return out


def span_rank(vectors: Sequence[Sequence]) -> int:
    return rank([vec(v) for v in vectors])
