"""Buchberger's algorithm for submodules of free modules over Q[x].

Everything works on ``ModuleElement`` values with position-over-term order.
The main entry points are :func:`normal_form`, :func:`s_pair`,
:func:`buchberger`, :func:`is_groebner`, :func:`initial_module`,
:func:`contains` and :func:`submodule_equal`.
"""
from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .qpoly import Monomial, ModuleElement, Polynomial, fmt_position, position_key, term_key

DEFAULT_PAIR_BUDGET = 10**6

# When set, every normal_form call re-checks f == sum(q_i * g_i) + remainder.
CHECK_DIVISION = os.environ.get("UPPERMCCOOL_CHECK_DIVISION", "") not in ("", "0")


class BudgetExceeded(RuntimeError):
    """Raised when Buchberger's algorithm processes more pairs than allowed."""

    def __init__(self, processed: int, partial: list):
        super().__init__(f"pair budget exhausted after {processed} pairs")
        self.processed = processed
        self.partial = partial


class DivisionCheckError(AssertionError):
    pass


def _clean(gens: Sequence[ModuleElement]) -> List[ModuleElement]:
    out, seen = [], set()
    for g in gens:
        if g.is_zero() or g in seen:
            continue
        seen.add(g)
        out.append(g)
    return out


class _Divisors:
    """Leading-term index of a generator list, grouped by position."""

    def __init__(self, gens: Sequence[ModuleElement] = ()):
        self.gens: List[ModuleElement] = []
        self.by_pos: Dict[tuple, List[Tuple[int, Monomial, Fraction]]] = {}
        for g in gens:
            self.add(g)

    def add(self, g: ModuleElement) -> int:
        idx = len(self.gens)
        self.gens.append(g)
        pos, m, c = g.leading()
        self.by_pos.setdefault(pos, []).append((idx, m, c))
        return idx

    def find(self, pos, mono: Monomial):
        for entry in self.by_pos.get(pos, ()):
            if entry[1].divides(mono):
                return entry
        return None


def _reduce(f: ModuleElement, div: _Divisors, track: bool):
    """Full reduction of f; returns (quotients dict idx -> {mono: coef}, remainder terms, steps)."""
    work = dict(f.terms)
    rem: Dict[tuple, Fraction] = {}
    quot: Dict[int, Dict[Monomial, Fraction]] = {}
    steps = 0
    while work:
        lead = max(work, key=lambda pm: term_key(*pm))
        c = work[lead]
        pos, mono = lead
        hit = div.find(pos, mono)
        if hit is None:
            rem[lead] = c
            del work[lead]
            continue
        idx, lm, lc = hit
        q = mono / lm
        factor = c / lc
        if track:
            qd = quot.setdefault(idx, {})
            qd[q] = qd.get(q, 0) + factor
        for (p, m), v in div.gens[idx].terms.items():
            key = (p, m * q)
            s = work.get(key, 0) - factor * v
            if s:
                work[key] = s
            else:
                work.pop(key, None)
        steps += 1
    return quot, rem, steps


def normal_form(f: ModuleElement, G: Sequence[ModuleElement]):
    """Divide f by the list G.

    Returns ``(quotients, remainder)`` with one quotient Polynomial per element
    of G such that ``f == sum(q_i * g_i) + remainder`` and no term of the
    remainder is divisible by a leading term of G.  At each step the divisor
    used is the first element of G whose leading term divides.
    """
    G = list(G)
    if any(g.is_zero() for g in G):
        raise ValueError("zero divisor in generator list")
    div = _Divisors(G)
    quot, rem, _ = _reduce(f, div, track=True)
    quotients = [Polynomial(quot.get(i, {})) for i in range(len(G))]
    remainder = ModuleElement._wrap(rem)
    if CHECK_DIVISION:
        _check_division(f, G, quotients, remainder)
    return quotients, remainder


def _check_division(f, G, quotients, remainder) -> None:
    total = remainder
    lead_f = term_key(*f.leading()[:2]) if f else None
    for q, g in zip(quotients, G):
        if q.is_zero():
            continue
        qg = g.mul_poly(q)
        if lead_f is not None and term_key(*qg.leading()[:2]) > lead_f:
            raise DivisionCheckError("quotient term exceeds leading term of dividend")
        total = total + qg
    if total != f:
        raise DivisionCheckError("division reconstruction failed")


def reduce_element(f: ModuleElement, G: Sequence[ModuleElement]) -> ModuleElement:
    """Remainder of f modulo G, without quotient bookkeeping."""
    if CHECK_DIVISION:
        return normal_form(f, G)[1]
    _, rem, _ = _reduce(f, _Divisors(list(G)), track=False)
    return ModuleElement._wrap(rem)


def s_pair(g: ModuleElement, h: ModuleElement) -> Optional[ModuleElement]:
    """S-element of g and h, or None when their leading terms sit on different positions."""
    pg, mg, cg = g.leading()
    ph, mh, ch = h.leading()
    if pg != ph:
        return None
    lcm = mg.lcm(mh)
    return g.mul_monomial(lcm / mg, ch) - h.mul_monomial(lcm / mh, cg)


@dataclass
class GroebnerBasis:
    elements: List[ModuleElement]
    reduced: bool = False

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def render(self) -> str:
        return "\n".join(str(g) for g in self.elements)


@dataclass
class PairResult:
    i: int
    j: int
    status: str  # "zero" or "nonzero"
    reductions: int


@dataclass
class GroebnerCertificate:
    passed: bool
    pairs_checked: int
    total_reductions: int
    pairs: List[PairResult] = field(default_factory=list)
    counterexample: Optional[Tuple[int, int, ModuleElement]] = None

    def to_dict(self) -> dict:
        d = {
            "status": "PASS" if self.passed else "FAIL",
            "pairs_checked": self.pairs_checked,
            "total_reductions": self.total_reductions,
            "pairs": [[p.i, p.j, p.status, p.reductions] for p in self.pairs],
        }
        if self.counterexample is not None:
            i, j, r = self.counterexample
            d["counterexample"] = {"pair": [i, j], "remainder": str(r)}
        return d

    def render(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        lines = [f"{head}: {self.pairs_checked} S-pairs checked, {self.total_reductions} reduction steps"]
        if self.counterexample is not None:
            i, j, r = self.counterexample
            lines.append(f"  first nonvanishing pair ({i}, {j}): remainder {r}")
        return "\n".join(lines)


def is_groebner(G: Sequence[ModuleElement], stop_at_first: bool = True) -> GroebnerCertificate:
    """Buchberger's criterion, checking every pair with leading terms on a common position.

    No pair is skipped: each S-element is reduced against G.
    """
    gens = _clean(G)
    div = _Divisors(gens)
    cert = GroebnerCertificate(passed=True, pairs_checked=0, total_reductions=0)
    for pos in sorted(div.by_pos, key=position_key, reverse=True):
        entries = div.by_pos[pos]
        for a in range(len(entries)):
            for b in range(a + 1, len(entries)):
                i, j = entries[a][0], entries[b][0]
                s = s_pair(gens[i], gens[j])
                _, rem, steps = _reduce(s, div, track=False)
                cert.pairs_checked += 1
                cert.total_reductions += steps
                ok = not rem
                cert.pairs.append(PairResult(i, j, "zero" if ok else "nonzero", steps))
                if not ok:
                    cert.passed = False
                    if cert.counterexample is None:
                        cert.counterexample = (i, j, ModuleElement._wrap(rem))
                    if stop_at_first:
                        return cert
    return cert


def certify(G: Sequence[ModuleElement]) -> GroebnerBasis:
    """Wrap G as a GroebnerBasis after checking Buchberger's criterion."""
    gens = _clean(G)
    cert = is_groebner(gens)
    if not cert.passed:
        raise ValueError("not a Groebner basis: " + cert.render())
    return GroebnerBasis(gens, reduced=False)


def _pure(g: ModuleElement) -> bool:
    return len(g.positions()) == 1


def buchberger(
    G: Sequence[ModuleElement],
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    product_criterion: bool = True,
    chain_criterion: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by G.

    Pairs are processed in normal-strategy order (smallest lcm first).  The
    product criterion is only applied to pairs of single-position elements,
    where it is valid; for general module elements it is not.
    """
    basis: List[ModuleElement] = []
    div = _Divisors()
    heap: list = []
    processed: set = set()
    counter = 0

    def push_pairs(new: int) -> None:
        nonlocal counter
        pos, m, _ = div.gens[new].leading()
        for old, om, _ in div.by_pos.get(pos, ()):
            if old == new:
                continue
            if product_criterion and m.coprime(om) and _pure(div.gens[old]) and _pure(div.gens[new]):
                processed.add((old, new))
                continue
            key = term_key(pos, m.lcm(om))
            # min-heap on the negated key gives the smallest lcm first
            heapq.heappush(heap, (_NegKey(key), counter, old, new))
            counter += 1

    for g in _clean(G):
        r = reduce_element(g, basis)
        if r:
            r = r.monic()
            basis.append(r)
            push_pairs(div.add(r))

    count = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        if chain_criterion and _chain_skip(i, j, div, processed):
            processed.add((i, j))
            continue
        count += 1
        if count > pair_budget:
            raise BudgetExceeded(count - 1, list(basis))
        s = s_pair(div.gens[i], div.gens[j])
        processed.add((i, j))
        r = reduce_element(s, basis)
        if r:
            r = r.monic()
            basis.append(r)
            push_pairs(div.add(r))
    return GroebnerBasis(_reduce_basis(basis), reduced=True)


class _NegKey:
    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        return self.key < other.key


def _chain_skip(i: int, j: int, div: _Divisors, processed: set) -> bool:
    pos, mi, _ = div.gens[i].leading()
    _, mj, _ = div.gens[j].leading()
    lcm = mi.lcm(mj)
    for k, mk, _ in div.by_pos.get(pos, ()):
        if k in (i, j) or not mk.divides(lcm):
            continue
        if (min(i, k), max(i, k)) in processed and (min(j, k), max(j, k)) in processed:
            return True
    return False


def _reduce_basis(basis: List[ModuleElement]) -> List[ModuleElement]:
    leads = [g.leading() for g in basis]
    keep = []
    for a, (pa, ma, _) in enumerate(leads):
        redundant = False
        for b, (pb, mb, _) in enumerate(leads):
            if a == b or pa != pb or not mb.divides(ma):
                continue
            if mb != ma or b < a:
                redundant = True
                break
        if not redundant:
            keep.append(basis[a])
    out = []
    for a, g in enumerate(keep):
        others = keep[:a] + keep[a + 1:]
        pos, m, c = g.leading()
        tail = ModuleElement._wrap({k: v for k, v in g.terms.items() if k != (pos, m)})
        tail = reduce_element(tail, others) if others else tail
        out.append((ModuleElement.unit(pos, m, c) + tail).monic())
    out.sort(key=lambda e: term_key(*e.leading()[:2]), reverse=True)
    return out


class MonomialModule:
    """Monomial submodule of a free module: minimal generators per position."""

    def __init__(self, gens: Dict[tuple, set] | None = None):
        self.gens: Dict[tuple, frozenset] = {}
        for pos, monos in (gens or {}).items():
            mins = minimalize(monos)
            if mins:
                self.gens[tuple(pos)] = frozenset(mins)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialModule) and self.gens == other.gens

    def positions(self) -> list:
        return sorted(self.gens, key=position_key, reverse=True)

    def at(self, pos) -> frozenset:
        return self.gens.get(tuple(pos), frozenset())

    def render(self) -> str:
        lines = []
        for pos in self.positions():
            monos = sorted(self.gens[pos], key=lambda m: m.key, reverse=True)
            lines.append(f"{fmt_position(pos)}: " + ", ".join(str(m) for m in monos))
        return "\n".join(lines)


def minimalize(monos) -> list:
    """Minimal generators of the monomial ideal generated by monos."""
    out: List[Monomial] = []
    for m in sorted(set(monos), key=lambda x: (x.deg, x.key)):
        if not any(g.divides(m) for g in out):
            out.append(m)
    return out


def initial_module(G: GroebnerBasis) -> MonomialModule:
    if not isinstance(G, GroebnerBasis):
        raise TypeError("initial_module needs a certified GroebnerBasis (use buchberger or certify)")
    per: Dict[tuple, set] = {}
    for g in G.elements:
        pos, m, _ = g.leading()
        per.setdefault(pos, set()).add(m)
    return MonomialModule(per)


def contains(f: ModuleElement, G: GroebnerBasis) -> bool:
    return reduce_element(f, G.elements).is_zero()


def submodule_equal(A: Sequence[ModuleElement], B: Sequence[ModuleElement], **kw) -> bool:
    A, B = _clean(A), _clean(B)
    ga, gb = buchberger(A, **kw), buchberger(B, **kw)
    return all(contains(b, ga) for b in B) and all(contains(a, gb) for a in A)
