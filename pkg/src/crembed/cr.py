"""Left-invariant horizontal CR structures on nilpotent Lie algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import CRStructureInvalid, SchemaError
from .exact_algebra import I, format_rational, parse_rational
from .lie.algebra import LieAlgebra, generates, is_ideal, validate_algebra, ValidationReport
from .lie.linalg import Subspace, Vector, conj_vec, rank, unit


class CRStructure:
    """Horizontal subspace h (index set), J on h, and complement ideal n (index set).

    ``J`` acts on horizontal coordinates: J X_{h[c]} = sum_r J[r][c] X_{h[r]}.
    Indices are 0-based.
    """

    def __init__(self, algebra: LieAlgebra, horizontal: Sequence[int], J: Sequence[Sequence],
                 complement: Sequence[int], subgroup_p: Sequence[int] | None = None, name: str = ""):
        self.algebra = algebra
        self.horizontal = tuple(horizontal)
        self.complement = tuple(complement)
        self.J = tuple(tuple(Fraction(x) for x in row) for row in J)
        self.subgroup_p = tuple(subgroup_p) if subgroup_p is not None else None
        self.name = name or algebra.name
        if len(self.J) != len(self.horizontal) or any(len(r) != len(self.horizontal) for r in self.J):
            raise ValueError("J must be a square matrix of the horizontal dimension")
        self._frames = None

    @property
    def n(self) -> int:
        return len(self.horizontal) // 2

    @property
    def k(self) -> int:
        return len(self.complement)

    @property
    def type(self) -> tuple[int, int]:
        return (self.n, self.k)

    def horizontal_subspace(self) -> Subspace:
        return Subspace.from_indices(self.algebra.dim, self.horizontal, "h")

    def complement_subspace(self) -> Subspace:
        return Subspace.from_indices(self.algebra.dim, self.complement, "n")

    def J_vector(self, v: Sequence) -> Vector:
        """Apply J to a vector of g supported on the horizontal indices."""
        dim = self.algebra.dim
        if any(v[i] for i in range(dim) if i not in self.horizontal):
            raise ValueError("J is only defined on the horizontal subspace")
        coords = [v[i] for i in self.horizontal]
        out = [v[0] * 0] * dim
        for r, hr in enumerate(self.horizontal):
            out[hr] = sum((coords[c] * self.J[r][c] for c in range(len(coords))), out[hr])
        return tuple(out)

    def horizontal_sorted(self) -> list[int]:
        return sorted(self.horizontal)

    def J_of_basis(self, a: int) -> Vector:
        """J X_{h[a]} as a vector of g (a indexes the horizontal list)."""
        return self.J_vector(unit(self.algebra.dim, self.horizontal[a]))

    # -- frames -----------------------------------------------------------
    def frames(self) -> ComplexFrames:
        if self._frames is None:
            self._frames = complex_frames(self)
        return self._frames

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        data = self.algebra.to_json()
        data["name"] = self.name
        data["horizontal"] = [i + 1 for i in self.horizontal]
        data["J"] = [[format_rational(x) for x in row] for row in self.J]
        data["complement"] = [i + 1 for i in self.complement]
        if self.subgroup_p is not None:
            data["subgroup_p"] = [i + 1 for i in self.subgroup_p]
        return data

    @classmethod
    def from_json(cls, data: Mapping) -> CRStructure:
        if not isinstance(data, Mapping):
            raise SchemaError("CR structure JSON must be an object")
        algebra = LieAlgebra.from_json(data)
        try:
            horizontal = _index_list(data["horizontal"], algebra.dim, "horizontal")
            complement = _index_list(data["complement"], algebra.dim, "complement")
            J = [[parse_rational(x) for x in row] for row in data["J"]]
            p = data.get("subgroup_p")
            p = _index_list(p, algebra.dim, "subgroup_p") if p is not None else None
        except SchemaError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"malformed CR JSON: {exc}") from exc
        if len(J) != len(horizontal) or any(len(r) != len(horizontal) for r in J):
            raise SchemaError("J must be a square matrix matching the horizontal index list")
        return cls(algebra, horizontal, J, complement, p, data.get("name", ""))


def _index_list(values, dim: int, what: str) -> list[int]:
    if not isinstance(values, list):
        raise SchemaError(f"'{what}' must be a list of 1-based indices")
    out = []
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or not 1 <= v <= dim:
            raise SchemaError(f"'{what}' entry {v!r} is not an index in 1..{dim}")
        out.append(v - 1)
    if len(set(out)) != len(out):
        raise SchemaError(f"'{what}' has repeated indices")
    return out


@dataclass
class ComplexFrames:
    h01: list[Vector]
    h10: list[Vector]
    m: list[Vector]
    seeds: list[int]  # horizontal basis index (0-based, into g) that seeded each h01 vector

    def h01_subspace(self, dim: int) -> Subspace:
        return Subspace(dim, self.h01, "h01")

    def m_subspace(self, dim: int) -> Subspace:
        return Subspace(dim, self.m, "m")


def complex_frames(cr: CRStructure) -> ComplexFrames:
    """Greedy ascending scan for h01 = {X + iJX}; h10 by conjugation; m = h10 + n."""
    dim = cr.algebra.dim
    h01: list[Vector] = []
    seeds: list[int] = []
    for a, idx in enumerate(cr.horizontal_sorted()):
        pos = cr.horizontal.index(idx)
        x = unit(dim, idx)
        jx = cr.J_of_basis(pos)
        cand = tuple(xa + I * ja for xa, ja in zip(x, jx))
        if rank(h01 + [cand]) > len(h01):
            h01.append(cand)
            seeds.append(idx)
        if len(h01) == cr.n:
            break
    h10 = [conj_vec(v) for v in h01]
    m = h10 + [unit(dim, ell) for ell in cr.complement]
    if rank(h01 + m) != dim:
        raise CRStructureInvalid("complex frames do not span the complexified algebra")
    return ComplexFrames(h01, h10, m, seeds)


@dataclass
class CRReport:
    algebra: ValidationReport
    j_squared: bool
    partition_ok: bool
    n_ideal: bool
    h_generates: bool
    eq1_ok: bool
    closure_ok: bool
    eq1_failures: list[tuple[int, int]] = field(default_factory=list)
    type: tuple[int, int] = (0, 0)
    homogeneous: bool = False
    strata_dims: tuple[int, ...] = ()
    h01_abelian: bool | None = None
    messages: list[str] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return self.eq1_ok == self.closure_ok

    @property
    def integrable(self) -> bool:
        return self.eq1_ok and self.closure_ok

    @property
    def valid(self) -> bool:
        return (self.algebra.valid and self.j_squared and self.partition_ok and self.n_ideal
                and self.h_generates and self.integrable)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "algebra": self.algebra.to_json(),
            "J_squared_is_minus_identity": self.j_squared,
            "partition_ok": self.partition_ok,
            "n_is_ideal": self.n_ideal,
            "h_generates": self.h_generates,
            "integrability_eq": self.eq1_ok,
            "h01_closed": self.closure_ok,
            "integrability_checks_agree": self.agree,
            "integrability_failures": [list(p) for p in self.eq1_failures],
            "type": list(self.type),
            "homogeneous": self.homogeneous,
            "strata_dims": list(self.strata_dims),
            "h01_abelian": self.h01_abelian,
            "messages": list(self.messages),
        }


def _j_squared_is_minus_identity(J) -> bool:
    m = len(J)
    for r in range(m):
        for c in range(m):
            s = sum((J[r][t] * J[t][c] for t in range(m)), Fraction(0))
            if s != (-1 if r == c else 0):
                return False
    return True


def _integrability_eq(cr: CRStructure) -> tuple[bool, list[tuple[int, int]]]:
    """[X,JY]+[JX,Y] and [X,Y]-[JX,JY] lie in h and the first is J of the second."""
    L = cr.algebra
    dim = L.dim
    hset = set(cr.horizontal)
    failures = []
    for a in range(len(cr.horizontal)):
        for b in range(a + 1, len(cr.horizontal)):
            X = unit(dim, cr.horizontal[a])
            Y = unit(dim, cr.horizontal[b])
            JX, JY = cr.J_of_basis(a), cr.J_of_basis(b)
            P = tuple(p + q for p, q in zip(L.bracket_vectors(X, JY), L.bracket_vectors(JX, Y)))
            Q = tuple(p - q for p, q in zip(L.bracket_vectors(X, Y), L.bracket_vectors(JX, JY)))
            in_h = all(not P[i] and not Q[i] for i in range(dim) if i not in hset)
            if not in_h or cr.J_vector(Q) != P:
                failures.append((cr.horizontal[a] + 1, cr.horizontal[b] + 1))
    return not failures, failures


def _h01_closed(cr: CRStructure) -> tuple[bool, bool]:
    """(closed under brackets, abelian) for span{X + iJX : X in h}."""
    L = cr.algebra
    dim = L.dim
    gens = []
    for a, idx in enumerate(cr.horizontal):
        x = unit(dim, idx)
        gens.append(tuple(xa + I * ja for xa, ja in zip(x, cr.J_of_basis(a))))
    S = Subspace(dim, gens)
    closed, abelian = True, True
    for u in S.basis:
        for v in S.basis:
            w = L.bracket_vectors(u, v)
            if any(w):
                abelian = False
                if not S.contains(w):
                    closed = False
    return closed, abelian


def strata(L: LieAlgebra, h: Subspace, max_len: int = 64) -> list[Subspace] | None:
    """g_1 = h, g_{j+1} = [g_1, g_j] until zero; None if it never vanishes."""
    layers = [h]
    while layers[-1].dimension:
        if len(layers) > max_len:
            return None
        layers.append(L.bracket_span(h, layers[-1]))
    return layers[:-1]


def is_homogeneous(cr: CRStructure) -> tuple[bool, tuple[int, ...]]:
    L = cr.algebra
    layers = strata(L, cr.horizontal_subspace())
    if layers is None:
        return False, ()
    dims = tuple(s.dimension for s in layers)
    total = rank([v for s in layers for v in s.basis])
    return sum(dims) == L.dim and total == L.dim, dims


def validate_cr(cr: CRStructure) -> CRReport:
    L = cr.algebra
    alg = validate_algebra(L)
    msgs = list(alg.messages)
    dim = L.dim
    j2 = _j_squared_is_minus_identity(cr.J)
    if not j2:
        msgs.append("J^2 != -I")
    partition = (not set(cr.horizontal) & set(cr.complement)
                 and sorted(cr.horizontal + cr.complement) == list(range(dim))
                 and len(cr.horizontal) % 2 == 0)
    if not partition:
        msgs.append("horizontal and complement indices must be disjoint, cover the basis, and h must be even-dimensional")
    n_ideal = is_ideal(L, cr.complement_subspace())
    if not n_ideal:
        msgs.append("complement is not an ideal")
    gen = generates(L, cr.horizontal_subspace())
    if not gen:
        msgs.append("horizontal subspace does not generate the algebra")
    if j2 and partition:
        eq1, failures = _integrability_eq(cr)
        closed, abelian = _h01_closed(cr)
    else:
        eq1, failures, closed, abelian = False, [], False, None
    if not eq1:
        msgs.append("integrability condition fails" + (f" on pairs {failures}" if failures else ""))
    if eq1 != closed:
        msgs.append("integrability identity and h01 closure disagree")
    homog, dims = is_homogeneous(cr) if alg.nilpotent else (False, ())
    return CRReport(alg, j2, partition, n_ideal, gen, eq1, closed, failures,
                    (len(cr.horizontal) // 2, len(cr.complement)), homog, dims, abelian, msgs)


def require_valid(cr: CRStructure) -> CRReport:
    """Validate and raise the matching error when the structure is unusable."""
    from .errors import AlgebraInvalid

    report = validate_cr(cr)
    if not report.algebra.valid:
        raise AlgebraInvalid("; ".join(report.algebra.messages))
    if not report.valid:
        raise CRStructureInvalid("; ".join(report.messages))
    return report


def standard_J(n: int) -> list[list[int]]:
    """J X_{2a-1} = X_{2a}, J X_{2a} = -X_{2a-1} on consecutive pairs."""
    J = [[0] * (2 * n) for _ in range(2 * n)]
    for a in range(n):
        J[2 * a + 1][2 * a] = 1
        J[2 * a][2 * a + 1] = -1
    return J
