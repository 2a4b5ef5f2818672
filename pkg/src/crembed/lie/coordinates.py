"""Exponential coordinates, group law and left-invariant vector fields."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from ..errors import FactorizationError
from ..exact_algebra import Polynomial
from .algebra import LieAlgebra, LieElement
from .bch import bch, bch_product
from .factor import DirectSum, factorize_ordered
from .linalg import Subspace


def coordinate_names(dim: int, prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{j + 1}" for j in range(dim))


@dataclass(frozen=True)
class CoordinateSystem:
    """Ordered partition of the basis indices (0-based internally).

    A point with coordinates x is exp(sum_{j in G_1} x_j X_j) ... exp(sum_{j in G_m} x_j X_j).
    A single group gives exponential coordinates of the first kind.
    """

    partition: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = [i for g in self.partition for i in g]
        if len(flat) != len(set(flat)):
            raise ValueError("coordinate groups must be disjoint")
        if sorted(flat) != list(range(len(flat))):
            raise ValueError("coordinate groups must cover every basis index exactly once")
        if any(len(g) == 0 for g in self.partition):
            raise ValueError("empty coordinate group")

    @classmethod
    def first_kind(cls, dim: int) -> CoordinateSystem:
        return cls((tuple(range(dim)),))

    @classmethod
    def from_groups(cls, groups: Sequence[Sequence[int]]) -> CoordinateSystem:
        """Build from 1-based index groups, e.g. [[3, 4, 5], [1, 2], [6]]."""
        return cls(tuple(tuple(i - 1 for i in g) for g in groups if len(g)))

    @classmethod
    def parse(cls, text: str) -> CoordinateSystem:
        """Parse "{3,4,5},{1,2},{6}" or "3,4,5;1,2;6" (1-based)."""
        text = text.strip()
        if "{" in text:
            groups = re.findall(r"\{([^}]*)\}", text)
        else:
            groups = re.split(r"[;|]", text)
        parsed = []
        for g in groups:
            items = [s for s in re.split(r"[,\s]+", g.strip()) if s]
            parsed.append([int(s) for s in items])
        return cls.from_groups(parsed)

    @property
    def dim(self) -> int:
        return sum(len(g) for g in self.partition)

    @property
    def is_first_kind(self) -> bool:
        return len(self.partition) == 1

    def groups_1based(self) -> list[list[int]]:
        return [[i + 1 for i in g] for g in self.partition]

    def __str__(self) -> str:
        return ",".join("{" + ",".join(str(i) for i in g) + "}" for g in self.groups_1based())

    def direct_sum(self, L: LieAlgebra) -> DirectSum:
        return DirectSum(L, [Subspace.from_indices(L.dim, g) for g in self.partition])


def element_from_coords(L: LieAlgebra, cs: CoordinateSystem, coords: Sequence[Polynomial]) -> LieElement:
    """log of the point with coordinates ``coords`` in chart ``cs``."""
    variables = coords[0].vars
    zero = Polynomial.zero(variables)
    factors = []
    for g in cs.partition:
        c = [zero] * L.dim
        for i in g:
            c[i] = coords[i]
        factors.append(LieElement(L, c))
    return bch_product(factors, L.step)


def coords_from_element(L: LieAlgebra, cs: CoordinateSystem, W: LieElement) -> list[Polynomial]:
    """Chart coordinates of exp(W)."""
    if cs.is_first_kind:
        return list(W.coeffs)
    factors = factorize_ordered(L, cs.direct_sum(L), W)
    out = [None] * L.dim
    for g, f in zip(cs.partition, factors):
        for i in g:
            out[i] = f.coeffs[i]
    return out


def group_mult(L: LieAlgebra, cs: CoordinateSystem, x: Sequence[Polynomial], y: Sequence[Polynomial]) -> list[Polynomial]:
    U = element_from_coords(L, cs, x)
    V = element_from_coords(L, cs, y)
    return coords_from_element(L, cs, bch(U, V, L.step))


def coords_convert(L: LieAlgebra, source: CoordinateSystem, target: CoordinateSystem,
                   x: Sequence[Polynomial]) -> list[Polynomial]:
    return coords_from_element(L, target, element_from_coords(L, source, x))


def certify_chart(L: LieAlgebra, cs: CoordinateSystem, prefix: str = "x") -> bool:
    """Round trip chart -> first kind -> chart is the identity (symbolically)."""
    names = coordinate_names(L.dim, prefix)
    x = Polynomial.gens(names)
    try:
        first = coords_convert(L, cs, CoordinateSystem.first_kind(L.dim), x)
        back = coords_convert(L, CoordinateSystem.first_kind(L.dim), cs, first)
    except FactorizationError:
        return False
    return list(back) == list(x)


class VectorField:
    """First-order differential operator sum_k coeffs[k] d/d(vars[k])."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, variables: Sequence[str], coeffs: Sequence[Polynomial]):
        self.vars = tuple(variables)
        self.coeffs = tuple(c.align(self.vars) for c in coeffs)
        if len(self.coeffs) != len(self.vars):
            raise ValueError("one coefficient per coordinate required")

    def __call__(self, f: Polynomial) -> Polynomial:
        f = f.align(self.vars) if f.vars != self.vars else f
        out = Polynomial.zero(self.vars)
        for v, a in zip(self.vars, self.coeffs):
            if a:
                d = f.diff(v)
                if d:
                    out = out + a * d
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorField) and self.vars == other.vars and self.coeffs == other.coeffs

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(self.vars, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(self.vars, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c) -> VectorField:
        return VectorField(self.vars, [a * c for a in self.coeffs])

    def commutator(self, other: VectorField) -> VectorField:
        return VectorField(self.vars, [self(b) - other(a) for a, b in zip(self.coeffs, other.coeffs)])

    def to_text(self) -> str:
        parts = []
        for v, a in zip(self.vars, self.coeffs):
            if not a:
                continue
            if a == Polynomial.constant(1, a.vars):
                parts.append(f"d/d{v}")
                continue
            s = a.to_text()
            if len(a.terms) > 1:
                s = f"({s})"
            parts.append(f"{s}*d/d{v}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "coeffs": [a.to_json() for a in self.coeffs]}

    def __repr__(self) -> str:
        return f"VectorField({self.to_text()})"


def left_invariant_fields(L: LieAlgebra, cs: CoordinateSystem | None = None,
                          prefix: str = "x") -> list[VectorField]:
    """Fields Xl_j f(g) = d/dt f(g exp(t X_j)) at t = 0, in chart ``cs``."""
    cs = cs or CoordinateSystem.first_kind(L.dim)
    names = coordinate_names(L.dim, prefix)
    t = "t"
    while t in names:
        t += "_"
    variables = names + (t,)
    x = Polynomial.gens(variables)[: L.dim]
    T = Polynomial.var(t, variables)
    U = element_from_coords(L, cs, x)
    zero = Polynomial.zero(variables)
    fields = []
    for j in range(L.dim):
        step_el = LieElement(L, [T if k == j else zero for k in range(L.dim)])
        moved = coords_from_element(L, cs, bch(U, step_el, L.step))
        coeffs = [c.diff(t).subs({t: 0}, variables).align(names) for c in moved]
        fields.append(VectorField(names, coeffs))
    return fields


def field_combination(fields: Sequence[VectorField], coeffs: Sequence) -> VectorField:
    """sum_j coeffs[j] * fields[j] with scalar coefficients."""
    variables = fields[0].vars
    acc = VectorField(variables, [Polynomial.zero(variables)] * len(variables))
    for f, c in zip(fields, coeffs):
        if c:
            acc = acc + f.scale(c)
    return acc
