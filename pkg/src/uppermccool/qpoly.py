"""Sparse multivariate polynomials and free-module elements over Q.

The variables are the symbols x[i,j] with 1 <= j < i.  They are totally
ordered by x[s,t] > x[k,l] iff s > k, or s == k and t > l; this ordering is
encoded by the integer *rank* of a variable (x[2,1] has rank 0, x[3,1] rank 1,
x[3,2] rank 2, x[4,1] rank 3, ...).  The rank does not depend on n, so a
monomial means the same thing in every ring S_n that contains its variables.

Monomials use graded reverse lexicographic order: higher degree wins, and at
equal degree the monomial with the *smaller* exponent at the smallest
variable where the two differ is larger.

Module elements live in a free module whose basis vectors are indexed by
tuples of integers ("positions", e.g. (i, j, k) for r[i,j,k]).  Positions
are ordered so that the lexicographically smaller tuple is the larger basis
vector, and terms use position-over-term order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, NamedTuple, Tuple, Union

Rational = Union[int, Fraction]


class Variable(NamedTuple):
    upper: int
    lower: int

    @property
    def rank(self) -> int:
        return (self.upper - 1) * (self.upper - 2) // 2 + self.lower - 1

    @classmethod
    def from_rank(cls, r: int) -> "Variable":
        i = 2
        while (i * (i - 1)) // 2 <= r:
            i += 1
        return cls(i, r - (i - 1) * (i - 2) // 2 + 1)

    def __str__(self) -> str:
        return f"x[{self.upper},{self.lower}]"


def variables(n: int) -> list:
    """All variables of S_n, ascending in the variable order."""
    return [Variable(i, j) for i in range(2, n + 1) for j in range(1, i)]


def nvars(n: int) -> int:
    return n * (n - 1) // 2


def _var(v) -> Variable:
    if isinstance(v, Variable):
        return v
    return Variable(*v)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Monomial:
    """Product of variables, stored sparsely as sorted (rank, exponent) pairs."""

    __slots__ = ("exps", "deg", "key", "_hash")

    def __init__(self, exps: Dict[int, int] | Iterable = ()):
        if isinstance(exps, dict):
            items = exps.items()
        else:
            items = exps
        clean = tuple(sorted((int(r), int(e)) for r, e in items if e))
        for _, e in clean:
            if e < 0:
                raise ValueError("negative exponent")
        self._set(clean)

    def _set(self, clean: tuple) -> None:
        self.exps = clean
        self.deg = sum(e for _, e in clean)
        if clean:
            dense = [0] * (clean[-1][0] + 1)
            for r, e in clean:
                dense[r] = -e
            self.key = (self.deg, tuple(dense))
        else:
            self.key = (0, ())
        self._hash = hash(clean)

    @classmethod
    def _raw(cls, clean: tuple) -> "Monomial":
        m = cls.__new__(cls)
        m._set(clean)
        return m

    @classmethod
    def one(cls) -> "Monomial":
        return _ONE

    @classmethod
    def var(cls, i: int, j: int, e: int = 1) -> "Monomial":
        return cls._raw(((Variable(i, j).rank, e),))

    @classmethod
    def from_vars(cls, mapping: dict) -> "Monomial":
        """Build from {Variable or (i, j): exponent}."""
        return cls({_var(v).rank: e for v, e in mapping.items()})

    def exponents(self) -> Dict[Variable, int]:
        return {Variable.from_rank(r): e for r, e in self.exps}

    def exponent(self, v) -> int:
        r = _var(v).rank
        for rr, e in self.exps:
            if rr == r:
                return e
        return 0

    def support(self) -> Tuple[int, ...]:
        return tuple(r for r, _ in self.exps)

    def is_one(self) -> bool:
        return not self.exps

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not other.exps:
            return self
        if not self.exps:
            return other
        d = dict(self.exps)
        for r, e in other.exps:
            d[r] = d.get(r, 0) + e
        return Monomial._raw(tuple(sorted(d.items())))

    def divides(self, other: "Monomial") -> bool:
        if self.deg > other.deg:
            return False
        od = dict(other.exps)
        for r, e in self.exps:
            if od.get(r, 0) < e:
                return False
        return True

    def __truediv__(self, other: "Monomial") -> "Monomial":
        d = dict(self.exps)
        for r, e in other.exps:
            left = d.get(r, 0) - e
            if left < 0:
                raise ValueError(f"{other} does not divide {self}")
            if left:
                d[r] = left
            else:
                del d[r]
        return Monomial._raw(tuple(sorted(d.items())))

    def lcm(self, other: "Monomial") -> "Monomial":
        d = dict(self.exps)
        for r, e in other.exps:
            if e > d.get(r, 0):
                d[r] = e
        return Monomial._raw(tuple(sorted(d.items())))

    def gcd(self, other: "Monomial") -> "Monomial":
        od = dict(other.exps)
        return Monomial._raw(tuple((r, min(e, od[r])) for r, e in self.exps if r in od))

    def coprime(self, other: "Monomial") -> bool:
        od = dict(other.exps)
        return not any(r in od for r, _ in self.exps)

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.key < other.key

    def __gt__(self, other: "Monomial") -> bool:
        return self.key > other.key

    def __le__(self, other: "Monomial") -> bool:
        return self.key <= other.key

    def __ge__(self, other: "Monomial") -> bool:
        return self.key >= other.key

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        parts = []
        for r, e in reversed(self.exps):
            v = str(Variable.from_rank(r))
            parts.append(v if e == 1 else f"{v}^{e}")
        return "*".join(parts)

    __repr__ = __str__


_ONE = Monomial._raw(())


def position_key(pos) -> tuple:
    """Sort key for basis positions; larger key means larger basis vector."""
    return tuple(-p if isinstance(p, int) else position_key(p) for p in pos)


def term_key(pos, mono: Monomial) -> tuple:
    return (position_key(pos), mono.key)


def cmp_variable(a, b) -> int:
    a, b = _var(a), _var(b)
    return _sign(a.rank - b.rank)


def cmp_monomial(a: Monomial, b: Monomial) -> int:
    return (a.key > b.key) - (a.key < b.key)


def cmp_position(a, b) -> int:
    ka, kb = position_key(a), position_key(b)
    return (ka > kb) - (ka < kb)


def cmp_module_term(a, b) -> int:
    """Compare (position, monomial) pairs in position-over-term order."""
    ka, kb = term_key(*a), term_key(*b)
    return (ka > kb) - (ka < kb)


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


def _fmt_coef(c: Fraction, body: str, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    if body == "1":
        return f"{sign}{a}"
    if a == 1:
        return f"{sign}{body}"
    return f"{sign}{a}*{body}"


class Polynomial:
    """Element of Q[x]; a mapping Monomial -> nonzero Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: Dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    self.terms[m] = _frac(c)

    @classmethod
    def var(cls, i: int, j: int) -> "Polynomial":
        return cls({Monomial.var(i, j): 1})

    @classmethod
    def const(cls, c: Rational) -> "Polynomial":
        return cls({_ONE: c})

    @classmethod
    def linear(cls, *pairs, coefs=None) -> "Polynomial":
        """Sum of the listed variables (i, j), with optional coefficients."""
        coefs = coefs or [1] * len(pairs)
        out: Dict[Monomial, Fraction] = {}
        for (i, j), c in zip(pairs, coefs):
            m = Monomial.var(i, j)
            out[m] = out.get(m, 0) + _frac(c)
        return cls(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degree(self) -> int:
        return max((m.deg for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({m.deg for m in self.terms}) <= 1

    def leading(self) -> Tuple[Monomial, Fraction]:
        m = max(self.terms, key=lambda t: t.key)
        return m, self.terms[m]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda mc: mc[0].key, reverse=True)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial._wrap(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c: Rational) -> "Polynomial":
        c = _frac(c)
        if not c:
            return Polynomial()
        return Polynomial._wrap({m: c * v for m, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c: Rational = 1) -> "Polynomial":
        c = _frac(c)
        if not c:
            return Polynomial()
        return Polynomial._wrap({m * mono: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._wrap(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        out = Polynomial.const(1)
        for _ in range(e):
            out = out * self
        return out

    def evaluate(self, point: Dict[int, Fraction]) -> Fraction:
        """Evaluate at a point given as {variable rank: value}."""
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for r, e in m.exps:
                v *= _frac(point.get(r, 0)) ** e
            total += v
        return total

    @classmethod
    def _wrap(cls, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        return isinstance(other, Polynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "".join(_fmt_coef(c, str(m), i == 0) for i, (m, c) in enumerate(self.sorted_terms()))

    __repr__ = __str__


def fmt_position(pos) -> str:
    if len(pos) == 3 and all(isinstance(p, int) for p in pos):
        return "r[{},{},{}]".format(*pos)
    return "e" + str(list(pos))


class ModuleElement:
    """Element of a free Q[x]-module: mapping (position, Monomial) -> Fraction."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms: Dict[tuple, Fraction] = {}
        if terms:
            for (pos, m), c in terms.items():
                if c:
                    self.terms[(tuple(pos), m)] = _frac(c)

    @classmethod
    def _wrap(cls, terms: dict) -> "ModuleElement":
        e = cls.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def from_components(cls, comps: dict) -> "ModuleElement":
        """Build from {position: Polynomial}."""
        out: Dict[tuple, Fraction] = {}
        for pos, poly in comps.items():
            pos = tuple(pos)
            if isinstance(poly, (int, Fraction)):
                poly = Polynomial.const(poly)
            for m, c in poly.terms.items():
                key = (pos, m)
                s = out.get(key, 0) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return cls._wrap(out)

    @classmethod
    def unit(cls, pos, mono: Monomial | None = None, c: Rational = 1) -> "ModuleElement":
        return cls._wrap({(tuple(pos), mono or _ONE): _frac(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def positions(self) -> set:
        return {p for p, _ in self.terms}

    def component(self, pos) -> Polynomial:
        pos = tuple(pos)
        return Polynomial._wrap({m: c for (p, m), c in self.terms.items() if p == pos})

    def components(self) -> Dict[tuple, Polynomial]:
        out: Dict[tuple, Dict[Monomial, Fraction]] = {}
        for (p, m), c in self.terms.items():
            out.setdefault(p, {})[m] = c
        return {p: Polynomial._wrap(t) for p, t in out.items()}

    def leading(self) -> Tuple[tuple, Monomial, Fraction]:
        (pos, m) = max(self.terms, key=lambda pm: term_key(*pm))
        return pos, m, self.terms[(pos, m)]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: term_key(*t[0]), reverse=True)

    def __add__(self, other: "ModuleElement") -> "ModuleElement":
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ModuleElement._wrap(out)

    def __neg__(self) -> "ModuleElement":
        return ModuleElement._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ModuleElement") -> "ModuleElement":
        return self + (-other)

    def scale(self, c: Rational) -> "ModuleElement":
        c = _frac(c)
        if not c:
            return ModuleElement()
        return ModuleElement._wrap({k: c * v for k, v in self.terms.items()})

    def mul_monomial(self, mono: Monomial, c: Rational = 1) -> "ModuleElement":
        c = _frac(c)
        if not c:
            return ModuleElement()
        return ModuleElement._wrap({(p, m * mono): c * v for (p, m), v in self.terms.items()})

    def mul_poly(self, poly: Polynomial) -> "ModuleElement":
        out: Dict[tuple, Fraction] = {}
        for mono, c in poly.terms.items():
            for (p, m), v in self.terms.items():
                key = (p, m * mono)
                s = out.get(key, 0) + c * v
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return ModuleElement._wrap(out)

    def __rmul__(self, other) -> "ModuleElement":
        if isinstance(other, Polynomial):
            return self.mul_poly(other)
        if isinstance(other, Monomial):
            return self.mul_monomial(other)
        return self.scale(other)

    def monic(self) -> "ModuleElement":
        _, _, c = self.leading()
        return self.scale(1 / c) if c != 1 else self

    def __eq__(self, other) -> bool:
        return isinstance(other, ModuleElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        comps = self.components()
        order = sorted(comps, key=position_key, reverse=True)
        parts = []
        for pos in order:
            poly = comps[pos]
            body = str(poly)
            if len(poly.terms) > 1:
                body = f"({body})"
            parts.append(f"{body}*{fmt_position(pos)}")
        out = "+".join(parts)
        return out.replace("+-", "-")

    __repr__ = __str__

