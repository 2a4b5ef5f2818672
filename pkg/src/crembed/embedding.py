"""The polynomial CR embedding iota(g) = Phi(g) of a nilpotent group into C^{n+k}.

Writing a point of G as exp(W) with W = sum_j x_j X_j, the complexified
element is factored as exp(W) = exp(M) exp(A) with M in m = h10 + n_C and A in
h01.  The coordinates of M in the m-frame are the components of the embedding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cr import CRStructure, require_valid
from .errors import CREmbedError
from .exact_algebra import GaussianRational, I, Polynomial, as_gaussian
from .lie.algebra import LieElement
from .lie.bch import bch_product
from .lie.coordinates import (
    CoordinateSystem,
    VectorField,
    coordinate_names,
    element_from_coords,
    field_combination,
    left_invariant_fields,
)
from .lie.factor import DirectSum, factorize_ordered
from .lie.linalg import Subspace


def phi_decomposition(cr: CRStructure, m_chart: CoordinateSystem | None = None) -> DirectSum:
    """g_C = m + h01, with m carrying the frame h10 followed by the complement basis.

    ``m_chart`` groups m-frame positions (0-based) into second-kind factors of M;
    the h01 block is always last.
    """
    frames = cr.frames()
    dim = cr.algebra.dim
    if m_chart is None or m_chart.is_first_kind:
        parts = [Subspace(dim, frames.m, "m")]
    else:
        if m_chart.dim != len(frames.m):
            raise ValueError("m-chart must partition the m-frame positions")
        parts = [Subspace(dim, [frames.m[i] for i in g]) for g in m_chart.partition]
    return DirectSum(cr.algebra, parts + [Subspace(dim, frames.h01, "h01")])


def phi(cr: CRStructure, W: LieElement, decomposition: DirectSum | None = None) -> tuple[LieElement, LieElement]:
    """exp(W) = exp(M) exp(A), M in m, A in h01; returns (M, A)."""
    ds = decomposition or phi_decomposition(cr)
    M, A = factorize_ordered(cr.algebra, ds, W)
    return M, A


def m_coordinates(cr: CRStructure, M: LieElement, decomposition: DirectSum | None = None) -> list[Polynomial]:
    ds = decomposition or phi_decomposition(cr)
    return ds.block_coordinates(M)[0]


def factor_to_m_coordinates(ds: DirectSum, factors: Sequence[LieElement], m_chart: CoordinateSystem | None) -> list[Polynomial]:
    """Read m-frame coordinates (in frame order) from the M-factors of a factorization."""
    if m_chart is None or m_chart.is_first_kind:
        return ds.block_coordinates(factors[0])[0]
    size = sum(len(g) for g in m_chart.partition)
    out = [None] * size
    for j, g in enumerate(m_chart.partition):
        coords = ds.block_coordinates(factors[j])[j]
        for pos, c in zip(g, coords):
            out[pos] = c
    return out


@dataclass
class Embedding:
    cr: CRStructure
    components: list[Polynomial]
    chart: CoordinateSystem
    h01_part: LieElement | None = None
    m_chart: CoordinateSystem | None = None
    normalized: bool = False
    scale: list = field(default_factory=list)

    @property
    def vars(self) -> tuple[str, ...]:
        return self.components[0].vars

    @property
    def frame_labels(self) -> list[str]:
        cr = self.cr
        labels = []
        for seed, v in zip(cr.frames().seeds, cr.frames().h10):
            labels.append(_vector_label(v, cr.algebra.labels))
        labels += [cr.algebra.labels[ell] for ell in cr.complement]
        return labels

    def evaluate(self, point: Sequence) -> list:
        values = dict(zip(self.vars, point))
        return [c.evaluate(values) for c in self.components]

    def to_json(self) -> dict:
        return {
            "type": list(self.cr.type),
            "frame": self.frame_labels,
            "chart": str(self.chart),
            "normalized": self.normalized,
            "components": [c.to_json() for c in self.components],
        }


def _vector_label(v, labels) -> str:
    parts = []
    for c, lab in zip(v, labels):
        if not c:
            continue
        if c == 1:
            s = lab
        elif c == -1:
            s = f"-{lab}"
        elif c == I:
            s = f"i{lab}"
        elif c == -I:
            s = f"-i{lab}"
        else:
            s = f"{c}*{lab}"
        parts.append(s)
    out = " + ".join(parts).replace("+ -", "- ")
    return out


def compute_embedding(cr: CRStructure, chart: CoordinateSystem | None = None, prefix: str = "x",
                      validate: bool = True, m_chart: CoordinateSystem | None = None) -> Embedding:
    """Components of iota in the raw m-frame, as polynomials in x_1..x_dim.

    ``chart`` selects exponential coordinates on G (first kind by default);
    ``m_chart`` selects second-kind coordinates on M over m-frame positions.
    """
    if validate:
        require_valid(cr)
    L = cr.algebra
    chart = chart or CoordinateSystem.first_kind(L.dim)
    if chart.dim != L.dim:
        raise ValueError(f"chart {chart} covers {chart.dim} indices, algebra has dimension {L.dim}")
    if m_chart is not None and m_chart.dim != cr.n + cr.k:
        raise ValueError(f"m-chart {m_chart} covers {m_chart.dim} positions, m has dimension {cr.n + cr.k}")
    names = coordinate_names(L.dim, prefix)
    x = Polynomial.gens(names)
    W = element_from_coords(L, chart, x)
    ds = phi_decomposition(cr, m_chart)
    factors = factorize_ordered(L, ds, W)
    comps = factor_to_m_coordinates(ds, factors[:-1], m_chart)
    if m_chart is not None and m_chart.is_first_kind:
        m_chart = None
    return Embedding(cr, comps, chart, factors[-1], m_chart=m_chart)


@dataclass
class CRIdentityReport:
    passed: bool
    failures: list[tuple[int, int]]  # (horizontal basis index 1-based, component index 1-based)

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": [list(f) for f in self.failures]}


def horizontal_fields(cr: CRStructure, fields: Sequence[VectorField]) -> list[tuple[int, VectorField, VectorField]]:
    """(basis index, field of X_a, field of J X_a) for each horizontal X_a."""
    out = []
    for a, idx in enumerate(cr.horizontal):
        jx = cr.J_of_basis(a)
        out.append((idx, fields[idx], field_combination(fields, jx)))
    return out


def verify_cr_identity(emb: Embedding, fields: Sequence[VectorField] | None = None) -> CRIdentityReport:
    """Check (J X_a)f = i (X_a)f for every component f and horizontal X_a."""
    cr = emb.cr
    if fields is None:
        fields = left_invariant_fields(cr.algebra, emb.chart, prefix=_prefix(emb.vars))
    failures = []
    for idx, fx, fjx in horizontal_fields(cr, fields):
        for c, comp in enumerate(emb.components):
            if fjx(comp) != fx(comp).scale(I):
                failures.append((idx + 1, c + 1))
    return CRIdentityReport(not failures, failures)


def _prefix(variables: Sequence[str]) -> str:
    name = variables[0]
    return name.rstrip("0123456789")


@dataclass
class NormalFormReport:
    linear_parts: list[Polynomial]
    remainders: list[Polynomial]
    p_horizontal_only: bool
    q_linear_ok: bool
    messages: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.p_horizontal_only and self.q_linear_ok

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "linear_parts": [p.to_json() for p in self.linear_parts],
            "remainders": [p.to_json() for p in self.remainders],
            "p_horizontal_only": self.p_horizontal_only,
            "q_linear_ok": self.q_linear_ok,
            "messages": list(self.messages),
        }


def normalize_embedding(emb: Embedding) -> tuple[Embedding, NormalFormReport]:
    """Rescale horizontal components so each linear part is x_a + i x_b."""
    cr = emb.cr
    frames = cr.frames()
    variables = emb.vars
    n = cr.n
    new_comps = []
    scales = []
    for j, comp in enumerate(emb.components):
        if j < n:
            seed = frames.seeds[j]
            exp = tuple(1 if v == seed else 0 for v in range(len(variables)))
            lead = comp.coefficient(exp)
            if not lead:
                raise CREmbedError(f"horizontal component {j + 1} has no linear term in x{seed + 1}")
            s = 1 / lead
            scales.append(s)
            new_comps.append(comp.scale(s))
        else:
            scales.append(GaussianRational(1))
            new_comps.append(comp)
    hset = {variables[i] for i in cr.horizontal}
    lin, rem, msgs = [], [], []
    p_ok, q_ok = True, True
    for j, comp in enumerate(new_comps):
        linear = comp.homogeneous_part(1)
        remainder = comp - linear - comp.constant_term()
        lin.append(linear)
        rem.append(remainder)
        if comp.constant_term():
            msgs.append(f"component {j + 1} has a constant term")
            p_ok = False
        if j < n:
            if not set(remainder.used_variables()) <= hset:
                p_ok = False
                msgs.append(f"horizontal remainder {j + 1} depends on complement variables")
        else:
            ell = cr.complement[j - n]
            if linear != Polynomial.var(variables[ell], variables):
                q_ok = False
                msgs.append(f"complement component {j + 1} linear part is not {variables[ell]}")
    out = Embedding(cr, new_comps, emb.chart, emb.h01_part, m_chart=emb.m_chart, normalized=True, scale=scales)
    return out, NormalFormReport(lin, rem, p_ok, q_ok, msgs)


@dataclass
class InjectivityReport:
    passed: bool
    order: list[str]
    outputs: list[str]

    def to_json(self) -> dict:
        return {"passed": self.passed, "order": self.order, "outputs": self.outputs}


def real_outputs(components: Sequence[Polynomial]) -> list[tuple[str, Polynomial]]:
    out = []
    for j, c in enumerate(components):
        out.append((f"Re[{j + 1}]", c.real_part()))
        out.append((f"Im[{j + 1}]", c.imag_part()))
    return out


def triangular_certificate(outputs: Sequence[tuple[str, Polynomial]],
                           variables: Sequence[str]) -> tuple[list[str], list[str]]:
    """Greedy search for an order in which each chosen output is unit*var + earlier terms."""
    order: list[str] = []
    chosen: list[str] = []
    done: set[str] = set()
    used_outputs: set[int] = set()
    progress = True
    while progress and len(order) < len(variables):
        progress = False
        for i, (label, poly) in enumerate(outputs):
            if i in used_outputs:
                continue
            fresh = [v for v in poly.used_variables() if v not in done]
            if len(fresh) != 1:
                continue
            v = fresh[0]
            d = poly.diff(v)
            if d.is_constant() and d.constant_term() and d.constant_term().is_real():
                order.append(v)
                chosen.append(label)
                done.add(v)
                used_outputs.add(i)
                progress = True
    return order, chosen


def verify_injectivity(emb: Embedding) -> InjectivityReport:
    """Certify injectivity of the real form of the map by a unipotent-triangular ordering."""
    order, chosen = triangular_certificate(real_outputs(emb.components), emb.vars)
    return InjectivityReport(len(order) == len(emb.vars), order, chosen)


def recombination_holds(emb: Embedding) -> bool:
    """exp(M) exp(A) reproduces exp(W) exactly."""
    cr = emb.cr
    L = cr.algebra
    ds = phi_decomposition(cr, emb.m_chart)
    x = Polynomial.gens(emb.vars)
    W = element_from_coords(L, emb.chart, list(x))
    comps = emb.components
    if emb.normalized:
        comps = [c.scale(1 / as_gaussian(s)) for c, s in zip(comps, emb.scale)]
    if emb.m_chart is None:
        factors = [ds.element(0, comps, emb.vars)]
    else:
        factors = [ds.element(j, [comps[p] for p in g], emb.vars)
                   for j, g in enumerate(emb.m_chart.partition)]
    return bch_product(factors + [emb.h01_part], L.step) == W
