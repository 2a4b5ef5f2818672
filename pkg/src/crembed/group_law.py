"""The product m * m' = Phi(sigma(m) sigma(m')) on M = exp(m), m = h10 + n_C.

The section is sigma(exp(B + C)) = exp(B + C) exp(conj(B)) for B in h10 and
C in n_C.  Points of M are written in first-kind coordinates z_j along the
m-frame; conj(B) needs the conjugate symbols zb_j, which are carried as
independent variables until a point of iota(G) is substituted.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .cr import CRStructure, require_valid
from .embedding import Embedding, phi, phi_decomposition
from .exact_algebra import Polynomial
from .lie.algebra import LieElement
from .lie.bch import bch_product
from .lie.coordinates import CoordinateSystem, coordinate_names, group_mult


def m_variable_names(size: int, primed: bool = False) -> tuple[list[str], list[str]]:
    tick = "'" if primed else ""
    return [f"z{j + 1}{tick}" for j in range(size)], [f"zb{j + 1}{tick}" for j in range(size)]


def star_variables(cr: CRStructure) -> tuple[str, ...]:
    size = cr.n + cr.k
    z, zb = m_variable_names(size)
    zp, zbp = m_variable_names(size, primed=True)
    return tuple(z + zb + zp + zbp)


def m_point(cr: CRStructure, coords: Sequence[Polynomial]) -> LieElement:
    """sum_j coords[j] * (j-th m-frame vector)."""
    frames = cr.frames()
    return cr.algebra.combine(frames.m, list(coords), coords[0].vars)


def default_section(cr: CRStructure, coords: Sequence[Polynomial], conj_coords: Sequence[Polynomial]) -> list[LieElement]:
    """Factors of sigma(m): [B + C, conj(B)] with conj(B) built from conjugate coordinates."""
    frames = cr.frames()
    n = cr.n
    variables = coords[0].vars
    M = m_point(cr, coords)
    Bbar = cr.algebra.combine(frames.h01, list(conj_coords[:n]), variables)
    return [M, Bbar]


def inclusion_section(cr: CRStructure, coords, conj_coords) -> list[LieElement]:
    return [m_point(cr, coords)]


Section = Callable[[CRStructure, Sequence[Polynomial], Sequence[Polynomial]], list]


@dataclass
class StarProduct:
    cr: CRStructure
    vars: tuple[str, ...]
    map: list[Polynomial]

    @property
    def size(self) -> int:
        return self.cr.n + self.cr.k

    def names(self) -> tuple[list[str], list[str], list[str], list[str]]:
        z, zb = m_variable_names(self.size)
        zp, zbp = m_variable_names(self.size, primed=True)
        return z, zb, zp, zbp

    def apply(self, m: Sequence, m_conj: Sequence, mp: Sequence, mp_conj: Sequence,
              variables: Sequence[str] | None = None) -> list[Polynomial]:
        """Substitute two points (and their conjugates) into the product map."""
        z, zb, zp, zbp = self.names()
        assignment = {}
        for names, values in ((z, m), (zb, m_conj), (zp, mp), (zbp, mp_conj)):
            for name, val in zip(names, values):
                assignment[name] = val
        return [c.subs(assignment, variables) for c in self.map]

    def to_json(self) -> dict:
        return {
            "type": list(self.cr.type),
            "vars": list(self.vars),
            "components": [c.to_json() for c in self.map],
        }


def star_product(cr: CRStructure, section: Section = default_section, validate: bool = True) -> StarProduct:
    if validate:
        require_valid(cr)
    size = cr.n + cr.k
    variables = star_variables(cr)
    z, zb = m_variable_names(size)
    zp, zbp = m_variable_names(size, primed=True)
    P = lambda names: [Polynomial.var(v, variables) for v in names]  # noqa: E731
    factors = section(cr, P(z), P(zb)) + section(cr, P(zp), P(zbp))
    W = bch_product(factors, cr.algebra.step)
    ds = phi_decomposition(cr)
    M, _ = phi(cr, W, ds)
    return StarProduct(cr, variables, ds.block_coordinates(M)[0])


@dataclass
class CheckReport:
    passed: bool
    detail: str = ""
    first_failure: int | None = None

    def to_json(self) -> dict:
        return {"passed": self.passed, "detail": self.detail, "first_failure": self.first_failure}


def verify_section(cr: CRStructure, section: Section = default_section) -> CheckReport:
    """Phi(sigma(m)) = m for a fully symbolic m."""
    size = cr.n + cr.k
    z, zb = m_variable_names(size)
    variables = tuple(z + zb)
    coords = [Polynomial.var(v, variables) for v in z]
    conj = [Polynomial.var(v, variables) for v in zb]
    W = bch_product(section(cr, coords, conj), cr.algebra.step)
    ds = phi_decomposition(cr)
    M, _ = phi(cr, W, ds)
    got = ds.block_coordinates(M)[0]
    for j, (a, b) in enumerate(zip(got, coords)):
        if a != b:
            return CheckReport(False, f"coordinate {j + 1}: {a} != {b}", j + 1)
    return CheckReport(True, "Phi(sigma(m)) = m")


def verify_homomorphism(cr: CRStructure, emb: Embedding, sp: StarProduct) -> CheckReport:
    """iota(g g') = iota(g) * iota(g') as polynomials in the coordinates of g and g'."""
    L = cr.algebra
    if not emb.chart.is_first_kind or emb.normalized or emb.m_chart is not None:
        raise ValueError("homomorphism check expects the raw first-kind embedding")
    xs = coordinate_names(L.dim, "x")
    ys = coordinate_names(L.dim, "y")
    variables = tuple(xs + ys)
    x = [Polynomial.var(v, variables) for v in xs]
    y = [Polynomial.var(v, variables) for v in ys]
    prod = group_mult(L, CoordinateSystem.first_kind(L.dim), x, y)
    iota_x = [c.align(emb.vars).subs(dict(zip(emb.vars, x)), variables) for c in emb.components]
    iota_y = [c.align(emb.vars).subs(dict(zip(emb.vars, y)), variables) for c in emb.components]
    lhs = [c.subs(dict(zip(emb.vars, prod)), variables) for c in emb.components]
    rhs = sp.apply(iota_x, [c.conjugate() for c in iota_x], iota_y, [c.conjugate() for c in iota_y], variables)
    for j, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return CheckReport(False, f"component {j + 1} differs by {a - b}", j + 1)
    return CheckReport(True, "iota(g g') = iota(g) * iota(g')")


def verify_left_holomorphic(sp: StarProduct | None = None, *, components: Sequence[Polynomial] | None = None,
                            conj_primed: Sequence[str] | None = None) -> CheckReport:
    """No conjugated primed symbol occurs: m' -> m * m' is holomorphic."""
    if sp is not None:
        components = sp.map
        conj_primed = sp.names()[3]
    bad = set(conj_primed or ())
    for j, c in enumerate(components or ()):
        hits = bad & set(c.used_variables())
        if hits:
            return CheckReport(False, f"component {j + 1} involves {sorted(hits)}", j + 1)
    return CheckReport(True, "holomorphic in the right factor")


def star_at_points(sp: StarProduct, m: Sequence, mp: Sequence) -> list:
    """Evaluate m * m' exactly for numeric points (Gaussian rationals)."""
    z, zb, zp, zbp = sp.names()
    point = {}
    for names, values in ((z, m), (zb, [v.conjugate() for v in m]), (zp, mp), (zbp, [v.conjugate() for v in mp])):
        point.update(zip(names, values))
    return [c.evaluate(point) for c in sp.map]
