"""Exact rational linear algebra on lists of Fraction rows.

Thin wrappers over sympy's DomainMatrix over QQ, plus the LinearSubspace
type used for resonance components and cup-product kernels.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Vector = Tuple[Fraction, ...]


def _to_dm(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    data = [[QQ(Fraction(c).numerator, Fraction(c).denominator) for c in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ)


def _from_q(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    rows = [r for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    if ncols == 0:
        return 0
    return _to_dm(rows, ncols).rank()


def rref(rows: Sequence[Sequence], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    if not rows:
        return [], ()
    m, pivots = _to_dm(rows, ncols).rref()
    out = [tuple(_from_q(c) for c in row) for row in m.to_list()[: len(pivots)]]
    return out, tuple(pivots)


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Basis of {v : row . v == 0 for every row}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    ns = _to_dm(rows, ncols).nullspace()
    return [tuple(_from_q(c) for c in row) for row in ns.to_list()]


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class LinearSubspace:
    """Subspace of Q^dim held both by a basis and by defining equations.

    Coordinates are indexed by variable rank: coordinate r is the value of
    the r-th variable x[i,j] (ascending variable order).
    """

    dim_ambient: int
    basis: Tuple[Vector, ...]
    equations: Tuple[Vector, ...]

    @classmethod
    def from_equations(cls, equations: Sequence[Sequence], dim_ambient: int) -> "LinearSubspace":
        eqs, _ = rref([tuple(Fraction(c) for c in e) for e in equations], dim_ambient)
        basis = nullspace(eqs, dim_ambient) if eqs else nullspace([], dim_ambient)
        return cls(dim_ambient, tuple(basis), tuple(eqs))

    @classmethod
    def from_basis(cls, basis: Sequence[Sequence], dim_ambient: int) -> "LinearSubspace":
        b, _ = rref([tuple(Fraction(c) for c in v) for v in basis], dim_ambient)
        eqs = nullspace(b, dim_ambient) if b else nullspace([], dim_ambient)
        return cls(dim_ambient, tuple(b), tuple(eqs))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def consistent(self) -> bool:
        """rank(basis) + rank(equations) == ambient dim, and the basis solves the equations."""
        if rank(self.basis, self.dim_ambient) + rank(self.equations, self.dim_ambient) != self.dim_ambient:
            return False
        return all(dot(e, b) == 0 for e in self.equations for b in self.basis)

    def contains(self, v: Sequence) -> bool:
        return all(dot(e, v) == 0 for e in self.equations)

    def contains_subspace(self, other: "LinearSubspace") -> bool:
        return all(self.contains(b) for b in other.basis)

    def intersection_dim(self, other: "LinearSubspace") -> int:
        return self.dim_ambient - rank(list(self.equations) + list(other.equations), self.dim_ambient)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearSubspace) or other.dim_ambient != self.dim_ambient:
            return False
        return self.dim == other.dim and self.contains_subspace(other)

    def __hash__(self) -> int:
        return hash((self.dim_ambient, self.basis))
