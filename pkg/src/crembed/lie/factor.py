"""Ordered exponential factorization exp(W) = exp(v_1) ... exp(v_m), v_j in V_j."""
from __future__ import annotations

from typing import Sequence

from ..errors import FactorizationError
from ..exact_algebra import Polynomial
from .algebra import LieAlgebra, LieElement
from .bch import bch_product
from .linalg import Subspace, Vector, invert


class DirectSum:
    """A decomposition g_C = V_1 + ... + V_m with coordinates along each V_j.

    The generators of each V_j (in the order given) form the coordinate basis of
    that block.
    """

    def __init__(self, algebra: LieAlgebra, parts: Sequence[Subspace]):
        self.algebra = algebra
        self.parts = list(parts)
        self.basis: list[Vector] = [g for part in self.parts for g in part.generators]
        self.blocks: list[range] = []
        start = 0
        for part in self.parts:
            self.blocks.append(range(start, start + len(part.generators)))
            start += len(part.generators)
        if len(self.basis) != algebra.dim:
            raise FactorizationError(
                f"direct-sum failure: blocks have {len(self.basis)} vectors for dimension {algebra.dim}"
            )
        # columns of B are basis vectors; coordinates are B^{-1} w
        matrix = [[self.basis[c][r] for c in range(algebra.dim)] for r in range(algebra.dim)]
        try:
            self.inverse = invert(matrix)
        except ValueError:
            raise FactorizationError("direct-sum failure: blocks are linearly dependent") from None

    def coordinates(self, w: LieElement) -> list[Polynomial]:
        """Coefficients of ``w`` along the concatenated block bases."""
        variables = w.vars
        out = []
        for row in self.inverse:
            acc = Polynomial.zero(variables)
            for x, c in zip(row, w.coeffs):
                if x and c:
                    acc = acc + c.scale(x)
            out.append(acc)
        return out

    def block_coordinates(self, w: LieElement) -> list[list[Polynomial]]:
        coords = self.coordinates(w)
        return [[coords[i] for i in block] for block in self.blocks]

    def element(self, j: int, coords: Sequence[Polynomial], variables: Sequence[str]) -> LieElement:
        vectors = [self.basis[i] for i in self.blocks[j]]
        return self.algebra.combine(vectors, coords, variables)

    def project(self, j: int, w: LieElement) -> LieElement:
        coords = self.coordinates(w)
        return self.element(j, [coords[i] for i in self.blocks[j]], w.vars)

    def projections(self, w: LieElement) -> list[LieElement]:
        coords = self.coordinates(w)
        return [self.element(j, [coords[i] for i in block], w.vars) for j, block in enumerate(self.blocks)]


def factorize_ordered(L: LieAlgebra, decomposition: Sequence[Subspace] | DirectSum, W: LieElement,
                      step: int | None = None, max_iter: int | None = None) -> list[LieElement]:
    """Factor exp(W) = exp(v_1) ... exp(v_m) with v_j in the j-th block.

    All factors are corrected simultaneously: with P = log(exp v_1 ... exp v_m),
    each v_j gains the j-th projection of W - P.  The error is pushed up one
    polynomial degree per sweep, and the loop stops only when W - P is exactly
    zero, so a returned factorization is always exact.
    """
    ds = decomposition if isinstance(decomposition, DirectSum) else DirectSum(L, decomposition)
    if step is None:
        step = L.step
    if max_iter is None:
        max_iter = step * L.dim
    factors = ds.projections(W)
    if len(factors) == 1:
        return factors
    for _ in range(max_iter + 1):
        error = W - bch_product(factors, step)
        if error.is_zero():
            return factors
        corrections = ds.projections(error)
        factors = [f + c for f, c in zip(factors, corrections)]
    raise FactorizationError(
        f"decomposition not adapted: factorization did not terminate after {max_iter} sweeps"
    )


def recombine(factors: Sequence[LieElement], step: int | None = None) -> LieElement:
    return bch_product(factors, step)
