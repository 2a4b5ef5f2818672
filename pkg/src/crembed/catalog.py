"""Built-in CR structures with exactly encoded reference outputs.

Reference values are plain polynomials.  Each carries a ``source`` tag:
``"display"`` for values transcribed from the published worked examples and
``"derived"`` for values obtained here by independent hand computation.
``settings`` records the chart choices under which a value applies.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as F
from typing import Callable

from .cr import CRStructure, standard_J
from .errors import CREmbedError
from .exact_algebra import I, Polynomial
from .lie.algebra import LieAlgebra, structure_from_brackets


@dataclass
class Expected:
    value: list  # polynomials, or per-field lists of coefficient polynomials
    source: str
    note: str = ""
    settings: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(v):
            return [enc(x) for x in v] if isinstance(v, list) else v.to_json()
        return {"source": self.source, "note": self.note, "settings": dict(self.settings), "value": enc(self.value)}


@dataclass
class CatalogEntry:
    name: str
    description: str
    cr: CRStructure
    expected: dict[str, Expected]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "cr": self.cr.to_json(),
            "expected": {k: v.to_json() for k, v in self.expected.items()},
        }


def _x(dim: int) -> list[Polynomial]:
    return list(Polynomial.gens([f"x{j + 1}" for j in range(dim)]))


def _heisenberg() -> CatalogEntry:
    L = LieAlgebra(3, structure_from_brackets([(1, 2, {3: 1})]), name="heisenberg3")
    cr = CRStructure(L, [0, 1], standard_J(1), [2], name="heisenberg3")
    x1, x2, x3 = _x(3)
    emb = [(x1 + I * x2).scale(F(1, 2)), x3 - (x1**2 + x2**2).scale(I / 4)]
    z = Polynomial.gens(["z1", "z2", "zb1", "zb2", "z1'", "z2'", "zb1'", "zb2'"])
    star = [z[0] + z[4], z[1] + z[5] - (z[2] * z[4]).scale(2 * I)]
    normal = [x1 + I * x2, x3 - (x1**2 + x2**2).scale(I / 4)]
    hyper = [(x1**2 + x2**2).scale(F(-1, 4))]
    return CatalogEntry("heisenberg3", "three-dimensional Heisenberg algebra, J X1 = X2", cr, {
        "embedding": Expected(emb, "display"),
        "star_product": Expected(star, "display", "variables z1..z2, zb1..zb2 and primed copies"),
        "normalized_embedding": Expected(normal, "derived", "first component rescaled by 2"),
        "hypersurface": Expected(hyper, "derived", "Im w as a function of x1, x2 with p = 0",
                                 {"subgroup_p": []}),
        "homomorphism": Expected([], "derived", "passes", {"passes": True}),
    })


def _dim8() -> CatalogEntry:
    L = LieAlgebra(8, structure_from_brackets([(2, 3, {5: 1}), (2, 4, {6: 1}), (3, 4, {7: 1}), (3, 7, {8: 1})]),
                   name="dim8_noncommutative_h01")
    cr = CRStructure(L, range(6), standard_J(3), [6, 7], name="dim8_noncommutative_h01")
    x1, x2, x3, x4, x5, x6, x7, x8 = _x(8)
    h = F(1, 2)
    emb = [
        (x1 + I * x2).scale(h),
        (x3 + I * x4).scale(h),
        (x5 + I * x6).scale(h) + ((x1 - I * x2) * (x3 + I * x4)).scale(I / 8),
        x7 - (x3**2 + x4**2).scale(I / 4),
        x8 + (x7 * (x3 - I * x4)).scale(F(1, 4)) - ((x4 + x3.scale(3 * I)) * (x3**2 + x4**2)).scale(F(1, 48)),
    ]
    return CatalogEntry("dim8_noncommutative_h01", "8-dimensional algebra with noncommutative h01, type (3,2)", cr, {
        "embedding": Expected(emb, "display"),
    })


def _dim6() -> CatalogEntry:
    L = LieAlgebra(6, structure_from_brackets([
        (2, 1, {3: 1}), (3, 1, {4: 1}), (3, 2, {5: 1}), (4, 1, {6: 8}), (5, 2, {6: 8}),
    ]), name="dim6_omega2")
    # J X1 = -X2 puts X1 - iX2 in h01; this orientation reproduces the quotient map
    cr = CRStructure(L, [0, 1], [[0, 1], [-1, 0]], [2, 3, 4, 5], subgroup_p=[2, 3, 4], name="dim6_omega2")
    x1, x2, x3, x4, x5, x6 = _x(6)
    r2 = x1**2 + x2**2
    chart = "{3,4,5},{1,2},{6}"
    m_chart = "{2,3,4},{1},{5}"
    iota_std = [
        (x1 + I * x2).scale(F(1, 2)),
        x3 + r2.scale(I / 4),
        x4 - (r2 * (x1.scale(3) + I * x2)).scale(I / 24),
        x5 - (r2 * (x1 + x2.scale(3 * I))).scale(F(1, 24)),
        x6 + (r2 * r2).scale(I / 4),
    ]
    one, zero = Polynomial.constant(1, x1.vars), Polynomial.zero(x1.vars)
    X1 = [one, zero, x2.scale(F(1, 2)), (x1 * x2).scale(F(-1, 3)), (x2**2).scale(F(-1, 3)), x2 * r2]
    X2 = [zero, one, x1.scale(F(-1, 2)), (x2**2).scale(F(1, 3)), (x1 * x2).scale(F(1, 3)), -(x1 * r2)]
    q = Polynomial.gens(["x1", "x2", "x6"])
    r2q = q[0]**2 + q[1]**2
    quot = [(q[0] - I * q[1]).scale(F(1, 2)), q[2] - (r2q * r2q).scale(I / 4)]
    qone, qzero = Polynomial.constant(1, q[0].vars), Polynomial.zero(q[0].vars)
    tX1 = [qone, qzero, q[1] * r2q]
    tX2 = [qzero, qone, -(q[0] * r2q)]
    return CatalogEntry("dim6_omega2", "6-dimensional step-4 algebra whose quotient by exp(span{X3,X4,X5}) "
                        "is the hypersurface Im w = -1/4 |z|^4", cr, {
        "embedding_standard_J": Expected(iota_std, "display", "applies to J X1 = X2 (the conjugate orientation)",
                                         {"J": [[0, -1], [1, 0]], "chart": chart, "m_chart": m_chart}),
        "left_invariant_fields": Expected([X1, X2], "display", "fields of X1 and X2 in the adapted chart",
                                          {"chart": chart}),
        "quotient": Expected(quot, "display", "variables x1, x2, x6", {"subgroup_p": [3, 4, 5]}),
        "projected_fields": Expected([tX1, tX2], "display", "variables x1, x2, x6", {"subgroup_p": [3, 4, 5]}),
        "hypersurface": Expected([(r2q * r2q).scale(F(-1, 4))], "display", "Im w in x1, x2",
                                 {"subgroup_p": [3, 4, 5]}),
    })


def _free23() -> CatalogEntry:
    L = LieAlgebra(5, structure_from_brackets([(1, 2, {3: 1}), (1, 3, {4: 1}), (3, 2, {5: 1})]), name="free_2_3")
    cr = CRStructure(L, [0, 1], standard_J(1), [2, 3, 4], name="free_2_3")
    x1, x2, x3, x4, x5 = _x(5)
    r2 = x1**2 + x2**2
    c4 = (x4 + (x1 * x3).scale(F(1, 4)) - (x2 * x3).scale(I / 4)
          - ((x1 - I * x2) * r2).scale(I / 24) - ((x1 + I * x2) * r2).scale(I / 48))
    return CatalogEntry("free_2_3", "free nilpotent algebra of step three on two generators", cr, {
        "x4_component": Expected([c4], "display", "component along X4 (m-frame position 3)", {"position": 3}),
    })


_BUILDERS: dict[str, Callable[[], CatalogEntry]] = {
    "heisenberg3": _heisenberg,
    "dim8_noncommutative_h01": _dim8,
    "dim6_omega2": _dim6,
    "free_2_3": _free23,
}

NAMES = tuple(_BUILDERS)


class UnknownCatalogEntry(CREmbedError, KeyError):
    exit_code = 5

    def __str__(self) -> str:
        return str(self.args[0])


def catalog_get(name: str) -> CatalogEntry:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownCatalogEntry(f"unknown catalog entry {name!r}; choose from {', '.join(NAMES)}") from None


def catalog_all() -> list[CatalogEntry]:
    return [catalog_get(n) for n in NAMES]
