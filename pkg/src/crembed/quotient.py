"""Embeddings of left quotients P\\G for a subgroup P = exp(p) with p inside n.

The quotient is realized on a coordinate slice.  G carries the adapted chart
exp(p-part) exp(horizontal part) exp(remaining part) and M the matching
second-kind chart with the p-directions first; left multiplication by P then
moves only the p-coordinates on both sides, so dropping them gives the
quotient map.  That property is certified symbolically, not assumed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .cr import CRStructure, require_valid
from .embedding import (
    Embedding,
    compute_embedding,
    factor_to_m_coordinates,
    phi,
    phi_decomposition,
)
from .errors import VerificationFailure
from .exact_algebra import I, Polynomial
from .lie.algebra import is_subalgebra
from .lie.bch import bch
from .lie.coordinates import (
    CoordinateSystem,
    VectorField,
    certify_chart,
    coordinate_names,
    field_combination,
    left_invariant_fields,
)
from .lie.factor import factorize_ordered
from .lie.linalg import Subspace


@dataclass
class SubgroupReport:
    indices: tuple[int, ...]
    subalgebra: bool
    inside_n: bool
    meets_h_trivially: bool
    phi_identity: bool
    messages: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return self.subalgebra and self.inside_n and self.meets_h_trivially and self.phi_identity

    @property
    def dimension(self) -> int:
        return len(self.indices)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "p": [i + 1 for i in self.indices],
            "dimension": self.dimension,
            "subalgebra": self.subalgebra,
            "inside_n": self.inside_n,
            "meets_h_trivially": self.meets_h_trivially,
            "phi_identity": self.phi_identity,
            "messages": list(self.messages),
        }


def validate_subgroup(cr: CRStructure, p: Sequence[int]) -> SubgroupReport:
    """Check that span{X_i : i in p} is a subalgebra of n on which Phi is the identity."""
    L = cr.algebra
    idx = tuple(sorted(set(p)))
    msgs = []
    if any(not 0 <= i < L.dim for i in idx):
        raise ValueError("subgroup index out of range")
    S = Subspace.from_indices(L.dim, idx, "p")
    sub = is_subalgebra(L, S)
    if not sub:
        msgs.append("p is not closed under brackets")
    inside = cr.complement_subspace().contains_subspace(S)
    if not inside:
        msgs.append("p is not contained in n")
    trivial = S.sum(cr.horizontal_subspace()).dimension == S.dimension + 2 * cr.n
    if not trivial:
        msgs.append("p meets the horizontal subspace")
    phi_id = False
    if idx and inside:
        names = [f"s{j + 1}" for j in range(len(idx))]
        s = Polynomial.gens(names)
        zero = Polynomial.zero(names)
        coeffs = [zero] * L.dim
        for i, v in zip(idx, s):
            coeffs[i] = v
        P = L.element(coeffs, names)
        M, A = phi(cr, P)
        phi_id = M == P and A.is_zero()
        if not phi_id:
            msgs.append("Phi is not the identity on exp(p_C)")
    elif not idx:
        phi_id = True
    return SubgroupReport(idx, sub, inside, trivial, phi_id, msgs)


def adapted_chart(cr: CRStructure, p: Sequence[int]) -> CoordinateSystem:
    """(p), (horizontal), (rest of the complement) on G; empty groups omitted."""
    p = sorted(p)
    rest = sorted(i for i in cr.complement if i not in p)
    groups = [tuple(p), tuple(sorted(cr.horizontal)), tuple(rest)]
    return CoordinateSystem(tuple(g for g in groups if g))


def adapted_m_chart(cr: CRStructure, p: Sequence[int]) -> CoordinateSystem:
    """Same grouping on M over m-frame positions: p, then h10, then the rest."""
    n = cr.n
    pos = {ell: n + j for j, ell in enumerate(cr.complement)}
    ppos = sorted(pos[i] for i in p)
    rest = sorted(pos[i] for i in cr.complement if i not in p)
    groups = [tuple(ppos), tuple(range(n)), tuple(rest)]
    return CoordinateSystem(tuple(g for g in groups if g))


@dataclass
class QuotientModel:
    cr: CRStructure
    p: tuple[int, ...]
    chart: CoordinateSystem
    m_chart: CoordinateSystem
    report: SubgroupReport

    @property
    def dropped_positions(self) -> list[int]:
        """m-frame positions removed by the projection (0-based)."""
        n = self.cr.n
        return [n + j for j, ell in enumerate(self.cr.complement) if ell in self.p]

    @property
    def surviving_indices(self) -> list[int]:
        return [i for i in range(self.cr.algebra.dim) if i not in self.p]

    @property
    def k_prime(self) -> int:
        return self.cr.k - len(self.p)


def quotient_model(cr: CRStructure, p: Sequence[int] | None = None, chart: CoordinateSystem | None = None) -> QuotientModel:
    """Validated quotient data; ``p`` defaults to the structure's own subgroup_p."""
    require_valid(cr)
    if p is None:
        p = cr.subgroup_p or ()
    report = validate_subgroup(cr, p)
    idx = report.indices
    if not idx:
        first = CoordinateSystem.first_kind(cr.algebra.dim)
        return QuotientModel(cr, idx, chart or first, CoordinateSystem.first_kind(cr.n + cr.k), report)
    if not report.valid:
        # kept for reporting only; quotient_embedding refuses invalid models
        first = CoordinateSystem.first_kind(cr.algebra.dim)
        return QuotientModel(cr, idx, chart or first, CoordinateSystem.first_kind(cr.n + cr.k), report)
    chart = chart or adapted_chart(cr, idx)
    if tuple(idx) not in chart.partition:
        raise ValueError("chart must contain the p-indices as one group")
    return QuotientModel(cr, idx, chart, adapted_m_chart(cr, idx), report)


@dataclass
class QuotientEmbedding:
    model: QuotientModel
    components: list[Polynomial]
    full: Embedding
    slice_certified: bool

    @property
    def vars(self) -> tuple[str, ...]:
        return self.components[0].vars

    @property
    def k_prime(self) -> int:
        return self.model.k_prime

    @property
    def dropped(self) -> list[int]:
        return [i + 1 for i in self.model.p]

    def to_json(self) -> dict:
        cr = self.model.cr
        return {
            "type": [cr.n, self.k_prime],
            "k_prime": self.k_prime,
            "dropped": self.dropped,
            "vars": list(self.vars),
            "chart": str(self.model.chart),
            "components": [c.to_json() for c in self.components],
        }


def slice_condition(model: QuotientModel) -> bool:
    """p0 * m changes only the p-coordinates of m, for symbolic p0 and m.

    A point of P_C carries no h10 part, so the section is trivial on it and
    p0 * m = Phi(p0 m) with m written in the adapted M-chart.
    """
    cr = model.cr
    L = cr.algebra
    if not model.p:
        return True
    size = cr.n + cr.k
    m_names = [f"m{j + 1}" for j in range(size)]
    s_names = [f"s{j + 1}" for j in range(len(model.p))]
    variables = tuple(m_names + s_names)
    m = [Polynomial.var(v, variables) for v in m_names]
    s = [Polynomial.var(v, variables) for v in s_names]
    ds = phi_decomposition(cr, model.m_chart)
    factors = [ds.element(j, [m[pos] for pos in g], variables) for j, g in enumerate(model.m_chart.partition)]
    acc = factors[0]
    for f in factors[1:]:
        acc = bch(acc, f, L.step)
    zero = Polynomial.zero(variables)
    coeffs = [zero] * L.dim
    for i, v in zip(model.p, s):
        coeffs[i] = v
    moved = bch(L.element(coeffs, variables), acc, L.step)
    out = factorize_ordered(L, ds, moved)
    if not out[-1].is_zero():
        return False
    coords = factor_to_m_coordinates(ds, out[:-1], model.m_chart)
    dropped = set(model.dropped_positions)
    return all(coords[j] == m[j] for j in range(size) if j not in dropped)


def quotient_embedding(model: QuotientModel, emb: Embedding | None = None) -> QuotientEmbedding:
    """Restrict iota to the slice x_p = 0 and drop the p-coordinates of M."""
    cr = model.cr
    if not model.report.valid:
        raise ValueError("; ".join(model.report.messages) or "invalid subgroup")
    if emb is None:
        m_chart = None if model.m_chart.is_first_kind else model.m_chart
        emb = compute_embedding(cr, chart=model.chart, m_chart=m_chart, validate=False)
    if model.p and not certify_chart(cr.algebra, model.chart):
        raise VerificationFailure("adapted chart failed the round-trip certificate")
    if not slice_condition(model):
        raise VerificationFailure("projection not coordinate-adapted")
    names = coordinate_names(cr.algebra.dim, "x")
    keep = tuple(names[i] for i in model.surviving_indices)
    zero_p = {names[i]: 0 for i in model.p}
    dropped = set(model.dropped_positions)
    comps = [c.subs(zero_p, keep) for j, c in enumerate(emb.components) if j not in dropped]
    return QuotientEmbedding(model, comps, emb, True)


@dataclass
class ProjectedFields:
    fields: list[VectorField]  # one per basis index of g
    independent_of_p: bool
    cr_identity: bool
    failures: list[tuple[int, int]]

    def to_json(self) -> dict:
        return {
            "independent_of_p": self.independent_of_p,
            "cr_identity": self.cr_identity,
            "failures": [list(f) for f in self.failures],
            "fields": [f.to_json() for f in self.fields],
        }


def project_field(model: QuotientModel, fld: VectorField) -> tuple[VectorField, bool]:
    """Restrict to x_p = 0 and delete the d/dx_p rows; flag whether x_p occurred."""
    names = fld.vars
    keep_idx = model.surviving_indices
    keep = tuple(names[i] for i in keep_idx)
    pvars = {names[i] for i in model.p}
    zero_p = {v: 0 for v in pvars}
    independent = True
    coeffs = []
    for i in keep_idx:
        c = fld.coeffs[i]
        if pvars & set(c.used_variables()):
            independent = False
        coeffs.append(c.subs(zero_p, keep))
    return VectorField(keep, coeffs), independent


def projected_fields(model: QuotientModel, qemb: QuotientEmbedding | None = None) -> ProjectedFields:
    """Push the left-invariant fields to the slice and check (JX)f = i(X)f there."""
    cr = model.cr
    full = left_invariant_fields(cr.algebra, model.chart)
    projected, independent = [], True
    for f in full:
        pf, ok = project_field(model, f)
        projected.append(pf)
        independent = independent and ok
    qemb = qemb or quotient_embedding(model)
    failures = []
    for a, idx in enumerate(cr.horizontal):
        fx = projected[idx]
        fjx = field_combination(projected, cr.J_of_basis(a))
        for c, comp in enumerate(qemb.components):
            if fjx(comp) != fx(comp).scale(I):
                failures.append((idx + 1, c + 1))
    return ProjectedFields(projected, independent, not failures, failures)


@dataclass
class HypersurfaceReport:
    applicable: bool
    relation: Polynomial | None = None
    message: str = ""

    def to_json(self) -> dict:
        return {
            "applicable": self.applicable,
            "relation": self.relation.to_json() if self.relation is not None else None,
            "relation_text": self.relation.to_text() if self.relation is not None else None,
            "message": self.message,
        }


def hypersurface_check(qemb: QuotientEmbedding) -> HypersurfaceReport:
    """For maps (z, w) into C^2: find r with Im w = r(Re z, Im z) on the image.

    Requires z to be linear in two horizontal variables and Re w to be the
    remaining variable plus terms in the horizontal ones.  r is then returned
    in the horizontal variables themselves, which equal (Re z, +-Im z) up to
    the frame scaling.
    """
    comps = qemb.components
    if len(comps) != 2:
        return HypersurfaceReport(False, message="not applicable: target is not C^2")
    z, w = comps
    variables = qemb.vars
    cr = qemb.model.cr
    hnames = {variables[j] for j, i in enumerate(qemb.model.surviving_indices) if i in cr.horizontal}
    if set(z.used_variables()) - hnames or z.homogeneous_part(1) != z:
        return HypersurfaceReport(False, message="first component is not linear in the horizontal variables")
    re_w, im_w = w.real_part(), w.imag_part()
    others = set(variables) - hnames
    if len(others) != 1:
        return HypersurfaceReport(False, message="not a graph over (z, Re w)")
    (t,) = others
    if re_w.diff(t) != Polynomial.constant(1, variables):
        return HypersurfaceReport(False, message="Re w is not a graph coordinate")
    if t in im_w.used_variables():
        return HypersurfaceReport(False, message="Im w depends on the transverse variable")
    return HypersurfaceReport(True, im_w, "Im w = r")
