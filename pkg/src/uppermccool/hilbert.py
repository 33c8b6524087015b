"""Hilbert series of monomial quotients and finitely presented modules, and Chen ranks.

Series are rational functions p(t)/(1-t)^d with integer numerator p.  The
Hilbert series of S/I for a monomial ideal I in N variables is computed as
K(I)/(1-t)^N, where the numerator K(I) comes from the pivot recursion

    Hilb(S/I) = Hilb(S/(I + <x>)) + t * Hilb(S/(I : x)).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import modgb
from .qpoly import Monomial, nvars


def _trim(c: List[int]) -> Tuple[int, ...]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Sequence[int], b: Sequence[int]) -> List[int]:
    out = [0] * max(len(a), len(b))
    for i, v in enumerate(a):
        out[i] += v
    for i, v in enumerate(b):
        out[i] += v
    return out


def _pmul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u:
            for j, v in enumerate(b):
                out[i + j] += u * v
    return out


def _one_minus_t_pow(e: int) -> List[int]:
    return [(-1) ** i * comb(e, i) for i in range(e + 1)]


def _div_one_minus_t(p: Sequence[int]) -> Optional[List[int]]:
    """p / (1 - t) if exact, else None."""
    if sum(p) != 0:
        return None
    # q_i = sum_{j<=i} p_j
    q, acc = [], 0
    for v in p[:-1]:
        acc += v
        q.append(acc)
    return q


@dataclass(frozen=True)
class RationalSeries:
    """num(t) / (1 - t)^denom, kept in lowest terms with respect to (1 - t)."""

    num: Tuple[int, ...]
    denom: int

    def __post_init__(self):
        num, d = list(_trim(self.num)), self.denom
        if d < 0:
            num = _pmul(num, _one_minus_t_pow(-d))
            d = 0
        while d > 0 and num:
            q = _div_one_minus_t(num)
            if q is None:
                break
            num, d = q, d - 1
        if not num:
            d = 0
        object.__setattr__(self, "num", _trim(num))
        object.__setattr__(self, "denom", d)

    @classmethod
    def zero(cls) -> "RationalSeries":
        return cls((), 0)

    @classmethod
    def const(cls, c: int) -> "RationalSeries":
        return cls((c,), 0)

    @classmethod
    def term(cls, coef: int, tpow: int, denom: int) -> "RationalSeries":
        """coef * t^tpow / (1 - t)^denom."""
        return cls(tuple([0] * tpow + [coef]), denom)

    def _lift(self, d: int) -> List[int]:
        return _pmul(list(self.num), _one_minus_t_pow(d - self.denom))

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        d = max(self.denom, other.denom)
        return RationalSeries(tuple(_padd(self._lift(d), other._lift(d))), d)

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(tuple(-v for v in self.num), self.denom)

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return self + (-other)

    def __mul__(self, other) -> "RationalSeries":
        if isinstance(other, int):
            return RationalSeries(tuple(other * v for v in self.num), self.denom)
        return RationalSeries(tuple(_pmul(self.num, other.num)), self.denom + other.denom)

    __rmul__ = __mul__

    def shift(self, k: int) -> "RationalSeries":
        """Multiply by t^k."""
        return RationalSeries(tuple([0] * k + list(self.num)), self.denom)

    def is_zero(self) -> bool:
        return not self.num

    def expand(self, order: int) -> List[int]:
        """Coefficients of t^0 .. t^(order-1)."""
        d = self.denom
        out = []
        for k in range(order):
            if d == 0:
                out.append(self.num[k] if k < len(self.num) else 0)
            else:
                out.append(sum(c * comb(k - i + d - 1, d - 1) for i, c in enumerate(self.num) if i <= k))
        return out

    def to_dict(self) -> dict:
        return {"num": list(self.num), "denomPower": self.denom}

    def __str__(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for i, c in enumerate(self.num):
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = str(a) if not mono else (mono if a == 1 else f"{a}*{mono}")
            parts.append(sign + body)
        s = "".join(parts).lstrip("+")
        return f"({s})/(1-t)^{self.denom}" if self.denom else s


# ---------------------------------------------------------------------------
# Monomial ideals


def _minimal(gens: Iterable[Monomial]) -> frozenset:
    return frozenset(modgb.minimalize(gens))


def _pure_power(m: Monomial) -> bool:
    return len(m.exps) == 1


@lru_cache(maxsize=None)
def _knum(gens: frozenset) -> Tuple[int, ...]:
    """Numerator of Hilb(S/I) over (1-t)^N for the minimal generating set gens."""
    if not gens:
        return (1,)
    if any(m.is_one() for m in gens):
        return ()
    # split off generators whose variables occur nowhere else: factor (1 - t^deg)
    count: Dict[int, int] = {}
    for m in gens:
        for r, _ in m.exps:
            count[r] = count.get(r, 0) + 1
    lone = [m for m in gens if _pure_power(m) and count[m.exps[0][0]] == 1]
    if lone:
        rest = frozenset(gens - set(lone))
        out = list(_knum(rest))
        for m in lone:
            out = _pmul(out, [1] + [0] * (m.deg - 1) + [-1])
        return _trim(out)
    # pivot on the variable in most generators, ties to the larger variable
    pivot = max(count, key=lambda r: (count[r], r))
    x = Monomial._raw(((pivot, 1),))
    with_x = frozenset([x] + [m for m in gens if pivot not in m.support()])
    colon = _minimal(m / x if pivot in m.support() else m for m in gens)
    a = _knum(with_x)
    b = _knum(colon)
    return _trim(_padd(a, [0] + list(b)))


def hilb_monomial(gens: Iterable[Monomial], nvars_: int) -> RationalSeries:
    """Hilbert series of S/I, I generated by the given monomials, in nvars_ variables."""
    return RationalSeries(_knum(_minimal(gens)), nvars_)


def brute_force_counts(gens: Sequence[Monomial], var_ranks: Sequence[int], max_deg: int) -> List[int]:
    """Number of standard monomials (divisible by no generator) in each degree."""
    out = []
    gens = list(gens)
    var_ranks = list(var_ranks)

    def compositions(total: int, parts: int):
        if parts == 0:
            if total == 0:
                yield ()
            return
        for a in range(total + 1):
            for rest in compositions(total - a, parts - 1):
                yield (a,) + rest

    for d in range(max_deg + 1):
        c = 0
        for exps in compositions(d, len(var_ranks)):
            m = Monomial(dict(zip(var_ranks, exps)))
            if not any(g.divides(m) for g in gens):
                c += 1
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# Modules


def hilb_module(M: modgb.MonomialModule, positions: Sequence, nvars_: int) -> RationalSeries:
    """Sum of the per-position monomial quotients; every position sits in degree 0."""
    total = RationalSeries.zero()
    for pos in positions:
        total = total + hilb_monomial(M.at(pos), nvars_)
    return total


def hilb_generators(gens, positions: Sequence, nvars_: int, pair_budget: int = modgb.DEFAULT_PAIR_BUDGET) -> RationalSeries:
    gb = modgb.buchberger(list(gens), pair_budget=pair_budget)
    return hilb_module(modgb.initial_module(gb), positions, nvars_)


def hilb_fp(P, pair_budget: int = modgb.DEFAULT_PAIR_BUDGET) -> RationalSeries:
    """Hilbert series of the cokernel of a presentation matrix (buchberger -> initial module -> sum)."""
    return hilb_generators([g.element for g in P.rows], P.positions, nvars(P.n), pair_budget)


def closed_hilb_Bn(n: int) -> RationalSeries:
    total = closed_hilb_Bprime(n)
    return total + RationalSeries.term(comb(n, 4), 1, 1)


def closed_hilb_Bprime(n: int) -> RationalSeries:
    total = RationalSeries.zero()
    for s in range(2, n):
        total = total + RationalSeries.term(comb(s, 2), 0, n - s + 1)
    return total


def per_position_series(k: int) -> RationalSeries:
    """Hilbert series of S/I_ijk at a position r[i,j,k]: 1/(1-t)^(k+1) + (k-1) t/(1-t)."""
    return RationalSeries.term(1, 0, k + 1) + RationalSeries.term(k - 1, 1, 1)


def hilb_Kn(n: int) -> RationalSeries:
    """Hilbert series of K_n presented as a sum of S/(x_st : (s,t) != (i,j)) over quadruples."""
    from .alexinv import kn_relations

    N = nvars(n)
    per: Dict[tuple, set] = {}
    for (i, j, k, l), _ in kn_relations(n):
        per[(i, j, k, l)] = {Monomial.var(s, t) for s in range(2, n + 1) for t in range(1, s) if (s, t) != (i, j)}
    M = modgb.MonomialModule(per)
    return hilb_module(M, list(per), N)


@dataclass
class SesResult:
    n: int
    holds: bool
    delta: Optional[int]
    hilb_B: RationalSeries
    hilb_Bprime: RationalSeries
    hilb_K: RationalSeries

    def render(self) -> str:
        head = "PASS" if self.holds else "FAIL"
        return (
            f"{head}: Hilb(B_{self.n}) = Hilb(B'_{self.n}) + t^{self.delta} Hilb(K_{self.n})\n"
            f"  Hilb(B)  = {self.hilb_B}\n  Hilb(B') = {self.hilb_Bprime}\n  Hilb(K)  = {self.hilb_K}"
        )


def ses_identity(n: int, max_n: int = 6, pair_budget: int = modgb.DEFAULT_PAIR_BUDGET) -> SesResult:
    """Check additivity along 0 -> K_n -> B_n -> B'_n -> 0 and find the degree shift of K_n.

    The shift delta in {0, 1} is the one making the identity hold; the map
    e_ijkl -> x_kl r_ijk raises degree by one, so delta = 1 is expected.
    """
    from .alexinv import presentation

    if n > max_n:
        raise ValueError(f"ses_identity is guarded to n <= {max_n}")
    hb = hilb_fp(presentation(n, "B"), pair_budget)
    hp = hilb_fp(presentation(n, "Bprime"), pair_budget)
    hk = hilb_Kn(n) if n >= 4 else RationalSeries.zero()
    diff = hb - hp
    for delta in (0, 1):
        if diff == hk.shift(delta):
            return SesResult(n, True, delta, hb, hp, hk)
    return SesResult(n, False, None, hb, hp, hk)


# ---------------------------------------------------------------------------
# Chen ranks


@dataclass
class ChenTable:
    n: int
    theta: List[int]
    provenance: List[str] = field(default_factory=list)

    def __getitem__(self, k: int) -> int:
        """theta_k, 1-based."""
        return self.theta[k - 1]

    def to_dict(self) -> dict:
        return {"n": self.n, "theta": list(self.theta), "provenance": list(self.provenance)}


def chen_closed(n: int, K: int) -> ChenTable:
    th: List[int] = []
    for k in range(1, K + 1):
        if k == 1:
            v = comb(n, 2)
        elif k == 2:
            v = comb(n, 3)
        elif k == 3:
            v = 2 * comb(n + 1, 4)
        else:
            v = comb(n + k - 2, k + 1) + th[-1]
        th.append(v)
    return ChenTable(n, th, ["closed-form"] * K)


def chen_from_series(n: int, K: int, series: Optional[RationalSeries] = None) -> ChenTable:
    """theta_1 = C(n,2); theta_{k+2} is the coefficient of t^k in Hilb(B_n)."""
    series = series if series is not None else closed_hilb_Bn(n)
    coeffs = series.expand(max(K - 1, 0))
    th = [comb(n, 2)] + coeffs[: K - 1]
    return ChenTable(n, th[:K], (["closed-form"] + ["series"] * (K - 1))[:K])


def theta4_pure_braid(n: int) -> int:
    return 3 * comb(n + 1, 4)


def theta4_Pi(n: int) -> int:
    return 3 * comb(n + 2, 5)


def theta4_upper_mccool(n: int) -> int:
    return 2 * comb(n + 1, 4) + comb(n + 2, 5)


def theta_mccool(n: int, k: int) -> int:
    return (k - 1) * comb(n, 2) + (k * k - 1) * comb(n, 3)


def comparison_ranks(n: int, k: int = 4) -> dict:
    a, b, c = theta4_pure_braid(n), theta4_Pi(n), theta4_upper_mccool(n)
    return {
        "n": n,
        "theta4_P": a,
        "theta4_Pi": b,
        "theta4_upper_mccool": c,
        "thetak_mccool": theta_mccool(n, k),
        "k": k,
        "pairwise_distinct": len({a, b, c}) == 3,
    }
