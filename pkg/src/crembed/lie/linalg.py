"""Exact linear algebra over Q(i) for constant vectors in a Lie algebra."""
from __future__ import annotations

from typing import Sequence

from ..exact_algebra import GaussianRational, as_gaussian

Vector = tuple  # tuple of GaussianRational

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def vec(values: Sequence) -> Vector:
    return tuple(as_gaussian(v) for v in values)


def unit(dim: int, index: int) -> Vector:
    return tuple(_ONE if j == index else _ZERO for j in range(dim))


def is_zero_vec(v: Vector) -> bool:
    return not any(v)


def conj_vec(v: Vector) -> Vector:
    return tuple(c.conjugate() for c in v)


def rref(rows: Sequence[Vector]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; the pivot of each row is its lowest nonzero column."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = _ONE / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def rank(rows: Sequence[Vector]) -> int:
    return len(rref(rows)[0])


def invert(matrix: Sequence[Sequence]) -> list[list[GaussianRational]]:
    """Inverse of a square matrix; raises ``ValueError`` when singular."""
    n = len(matrix)
    aug = [list(as_gaussian(x) for x in row) + [(_ONE if i == j else _ZERO) for j in range(n)]
           for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot_row is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        inv = _ONE / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


class Subspace:
    """A subspace of a (complexified) Lie algebra spanned by constant vectors.

    ``generators`` are kept as given (they define coordinates when the subspace
    is used as a factor of a direct sum); ``basis`` is the reduced row echelon
    basis used for membership tests.
    """

    def __init__(self, dim: int, generators: Sequence[Sequence] = (), name: str = ""):
        self.dim = dim
        self.name = name
        self.generators = [vec(g) for g in generators]
        for g in self.generators:
            if len(g) != dim:
                raise ValueError(f"generator of length {len(g)} in a {dim}-dimensional algebra")
        self.basis, self.pivots = rref(self.generators)
        if len(self.basis) != len(self.generators):
            # keep an independent generating set so that coordinates are well defined
            kept: list[Vector] = []
            for g in self.generators:
                if rank(kept + [g]) > len(kept):
                    kept.append(g)
            self.generators = kept

    @classmethod
    def from_indices(cls, dim: int, indices: Sequence[int], name: str = "") -> Subspace:
        """Span of basis vectors; ``indices`` are 0-based."""
        return cls(dim, [unit(dim, i) for i in indices], name)

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        v = list(vec(v))
        for row, p in zip(self.basis, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return not any(v)

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(b) for b in other.basis)

    def sum(self, other: Subspace) -> Subspace:
        return Subspace(self.dim, self.basis + other.basis)

    def conjugate(self) -> Subspace:
        return Subspace(self.dim, [conj_vec(g) for g in self.generators], self.name + "_conj")

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dimension}, name={self.name!r})"
