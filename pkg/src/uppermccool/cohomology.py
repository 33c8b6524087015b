"""Exterior algebra on the classes u[i,j] and the quadratic quotient A = E/I.

Generators u[i,j] (1 <= j < i) are ordered like the variables x[i,j] and share
their integer rank, so a degree-1 class is just a vector indexed by rank.
Exterior monomials are stored as strictly descending tuples of ranks; any
other ordering is brought to that form with the sign of the sorting
permutation.

Only degrees <= 3 are ever materialized.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, List, NamedTuple, Sequence, Tuple

from . import linalg
from .linalg import LinearSubspace
from .qpoly import Variable, nvars


class ExtGenerator(NamedTuple):
    upper: int
    lower: int

    @property
    def rank(self) -> int:
        return Variable(self.upper, self.lower).rank

    @classmethod
    def from_rank(cls, r: int) -> "ExtGenerator":
        return cls(*Variable.from_rank(r))

    def __str__(self) -> str:
        return f"u[{self.upper},{self.lower}]"


def _sort_sign(ranks: Sequence[int]) -> Tuple[int, tuple]:
    """Sign and descending form of a product of generators (0 on repeats)."""
    if len(set(ranks)) != len(ranks):
        return 0, ()
    arr = list(ranks)
    sign = 1
    # insertion sort, counting transpositions
    for a in range(1, len(arr)):
        b = a
        while b > 0 and arr[b - 1] < arr[b]:
            arr[b - 1], arr[b] = arr[b], arr[b - 1]
            sign = -sign
            b -= 1
    return sign, tuple(arr)


def fmt_ext_monomial(mono: tuple) -> str:
    if not mono:
        return "1"
    return "^".join(str(ExtGenerator.from_rank(r)) for r in mono)


class ExtElement:
    """Homogeneous element of the exterior algebra; {descending rank tuple: coef}."""

    __slots__ = ("degree", "terms")

    def __init__(self, terms: dict | None = None, degree: int | None = None):
        self.terms: Dict[tuple, Fraction] = {}
        for mono, c in (terms or {}).items():
            if not c:
                continue
            sign, m = _sort_sign(mono)
            if sign:
                self.terms[m] = self.terms.get(m, 0) + sign * Fraction(c)
                if not self.terms[m]:
                    del self.terms[m]
        degs = {len(m) for m in self.terms}
        if len(degs) > 1:
            raise ValueError("ExtElement must be homogeneous")
        self.degree = degs.pop() if degs else (degree or 0)

    @classmethod
    def gen(cls, i: int, j: int, c=1) -> "ExtElement":
        return cls({(Variable(i, j).rank,): c})

    @classmethod
    def from_vector(cls, vec: Sequence) -> "ExtElement":
        """Degree-1 element from coordinates indexed by generator rank."""
        return cls({(r,): c for r, c in enumerate(vec) if c}, degree=1)

    def to_vector(self, n: int) -> Tuple[Fraction, ...]:
        if self.degree != 1 and self.terms:
            raise ValueError("not a degree-1 element")
        v = [Fraction(0)] * nvars(n)
        for (r,), c in self.terms.items():
            v[r] = c
        return tuple(v)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ExtElement") -> "ExtElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ExtElement(out, degree=max(self.degree, other.degree))

    def __neg__(self) -> "ExtElement":
        return ExtElement({m: -c for m, c in self.terms.items()}, degree=self.degree)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def scale(self, c) -> "ExtElement":
        return ExtElement({m: c * v for m, v in self.terms.items()}, degree=self.degree)

    def __xor__(self, other: "ExtElement") -> "ExtElement":
        return wedge(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            body = fmt_ext_monomial(m)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            parts.append(f"{sign}{body}" if a == 1 else f"{sign}{a}*{body}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s

    __repr__ = __str__


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    out: Dict[tuple, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            sign, m = _sort_sign(ma + mb)
            if sign:
                out[m] = out.get(m, 0) + sign * ca * cb
    return ExtElement(out, degree=a.degree + b.degree)


def u(i: int, j: int) -> ExtElement:
    return ExtElement.gen(i, j)


def triples(n: int) -> List[Tuple[int, int, int]]:
    """All (i, j, k) with 1 <= k < j < i <= n, ascending lexicographically."""
    return [(i, j, k) for i in range(3, n + 1) for j in range(2, i) for k in range(1, j)]


def relation(i: int, j: int, k: int) -> ExtElement:
    """The quadratic relation r*[i,j,k] = u[i,j] ^ (u[i,k] - u[j,k])."""
    return wedge(u(i, j), u(i, k) - u(j, k))


def ext_basis(n: int, degree: int) -> List[tuple]:
    """Descending rank tuples of the given degree, sorted descending."""
    ranks = range(nvars(n) - 1, -1, -1)
    return list(combinations(ranks, degree))


class UpperMcCoolRing:
    """Degrees <= 3 of the exterior algebra E on u[i,j] and the quotient A^2 = E^2/I^2."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be >= 2")
        self.n = n
        self.dim1 = nvars(n)
        self.E1 = ext_basis(n, 1)
        self.E2 = ext_basis(n, 2)
        self.E2_index = {m: a for a, m in enumerate(self.E2)}
        self.triples = triples(n)
        self.relations = [relation(*t) for t in self.triples]

    @cached_property
    def E3(self) -> List[tuple]:
        return ext_basis(self.n, 3)

    def e2_vector(self, x: ExtElement) -> List[Fraction]:
        v = [Fraction(0)] * len(self.E2)
        for m, c in x.terms.items():
            v[self.E2_index[m]] = c
        return v

    @cached_property
    def _rref(self):
        # columns are E^2 monomials in descending order, so pivots prefer large monomials
        rows = [self.e2_vector(r) for r in self.relations]
        return linalg.rref(rows, len(self.E2))

    @property
    def relation_rank(self) -> int:
        return len(self._rref[0])

    @cached_property
    def complement(self) -> List[tuple]:
        """E^2 monomials that project to a basis of A^2."""
        piv = set(self._rref[1])
        return [m for a, m in enumerate(self.E2) if a not in piv]

    @cached_property
    def _comp_index(self) -> Dict[int, int]:
        piv = set(self._rref[1])
        return {a: b for b, a in enumerate(a for a in range(len(self.E2)) if a not in piv)}

    @property
    def dim_A2(self) -> int:
        return len(self.complement)

    def reduce2(self, x: ExtElement) -> Tuple[Fraction, ...]:
        """Coordinates of a degree-2 element in A^2 on the complement basis."""
        if x.is_zero():
            return tuple(Fraction(0) for _ in self.complement)
        if x.degree != 2:
            raise ValueError("expected a degree-2 element")
        v = self.e2_vector(x)
        rows, pivots = self._rref
        for row, p in zip(rows, pivots):
            c = v[p]
            if c:
                for col, rc in enumerate(row):
                    if rc:
                        v[col] -= c * rc
        idx = self._comp_index
        out = [Fraction(0)] * len(idx)
        for a, b in idx.items():
            out[b] = v[a]
        return tuple(out)

    def as_element(self, a) -> ExtElement:
        if isinstance(a, ExtElement):
            return a
        return ExtElement.from_vector(a)

    def cup(self, a, b) -> Tuple[Fraction, ...]:
        a, b = self.as_element(a), self.as_element(b)
        for x in (a, b):
            if x.terms and x.degree != 1:
                raise ValueError("cup expects degree-1 classes")
        return self.reduce2(wedge(a, b))

    def cup_matrix(self, a) -> List[Tuple[Fraction, ...]]:
        """Rows: cup(a, u_r) for every generator rank r (the map b -> a.b, transposed)."""
        a = self.as_element(a)
        return [self.cup(a, ExtElement({(r,): 1})) for r in range(self.dim1)]

    def cup_kernel(self, a) -> LinearSubspace:
        """{b in E^1 : cup(a, b) = 0}."""
        a = self.as_element(a)
        if a.is_zero():
            raise ValueError("cup_kernel is undefined for a = 0")
        cols = self.cup_matrix(a)
        # equations: one per A^2 coordinate, entries indexed by generator rank
        eqs = [tuple(cols[r][c] for r in range(self.dim1)) for c in range(self.dim_A2)]
        eqs = [e for e in eqs if any(e)]
        return LinearSubspace.from_equations(eqs, self.dim1)

    def cup_rank(self, W) -> int:
        """Rank of the cup product restricted to the wedge square of W."""
        basis = W.basis if isinstance(W, LinearSubspace) else W
        elems = [self.as_element(b) for b in basis]
        rows = [self.cup(x, y) for x, y in combinations(elems, 2)]
        return linalg.rank(rows, self.dim_A2) if rows else 0


def cup_kernel(a, R: UpperMcCoolRing) -> LinearSubspace:
    return R.cup_kernel(a)


def cup_rank(W, R: UpperMcCoolRing) -> int:
    return R.cup_rank(W)


def cup(a, b, R: UpperMcCoolRing):
    return R.cup(a, b)
