"""Presentations of the infinitesimal Alexander invariant B_n.

Builds the map Phi: I^2 (x) S -> E^3 (x) S both from the Aomoto differential
and from its closed formula, the dual Phi*, the labelled generating set B of
im Phi*, the Groebner set G = B u D, the set B' = B u E presenting the
quotient B'_n, and the checks on the submodule K_n.

Positions are triples (i, j, k) with i > j > k standing for r[i,j,k].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from . import modgb
from .cohomology import ExtElement, fmt_ext_monomial, relation, triples, u, wedge
from .qpoly import Monomial, ModuleElement, Polynomial, position_key, term_key

Triple = Tuple[int, int, int]


def x(i: int, j: int) -> Polynomial:
    return Polynomial.var(i, j)


def xm(i: int, j: int) -> Monomial:
    return Monomial.var(i, j)


def r(i: int, j: int, k: int) -> ModuleElement:
    return ModuleElement.unit((i, j, k))


def _pairs(n: int):
    return [(s, t) for s in range(2, n + 1) for t in range(1, s)]


# ---------------------------------------------------------------------------
# Phi and its dual


def aomoto_d2(e: ExtElement, n: int) -> ModuleElement:
    """sum over x[s,t] of (u[s,t] ^ e) (x) x[s,t], on the descending E^3 basis."""
    out = ModuleElement()
    if e.is_zero():
        return out
    if e.degree != 2:
        raise ValueError("aomoto_d2 expects a degree-2 element")
    for s, t in _pairs(n):
        w = wedge(u(s, t), e)
        mono = xm(s, t)
        for m3, c in w.terms.items():
            out = out + ModuleElement.unit(m3, mono, c)
    return out


def phi_closed(i: int, j: int, k: int, n: int) -> ModuleElement:
    """Closed formula for Phi(r*[i,j,k]); positions are E^3 monomials (descending rank tuples)."""
    terms: Dict[tuple, Polynomial] = {}

    def add(w: ExtElement, p: Polynomial) -> None:
        for m3, c in w.terms.items():
            terms[m3] = terms.get(m3, Polynomial()) + p.scale(c)

    # -(x_ik + x_jk) u_jk u_ik u_ij, product written left to right
    add(wedge(wedge(u(j, k), u(i, k)), u(i, j)), -(x(i, k) + x(j, k)))
    for s, t in _pairs(n):
        if {s, t} <= {i, j, k}:
            continue
        add(wedge(wedge(u(s, t), u(j, k) - u(i, k)), u(i, j)), x(s, t))
    return ModuleElement.from_components(terms)


def phi(n: int) -> Dict[Triple, ModuleElement]:
    """Columns of Phi from the closed formula, keyed by triple."""
    return {t: phi_closed(*t, n) for t in triples(n)}


def phi_from_d2(n: int) -> Dict[Triple, ModuleElement]:
    return {t: aomoto_d2(relation(*t), n) for t in triples(n)}


def ascending_sign(mono: tuple) -> int:
    """Sign relating the descending basis product to the ascending one."""
    d = len(mono)
    return -1 if (d * (d - 1) // 2) % 2 else 1


def phi_star(n: int) -> List[ModuleElement]:
    """Rows of Phi*: one element of S^C(n,3) per E^3 basis monomial (zero rows dropped)."""
    cols = phi(n)
    rows: Dict[tuple, Dict[Triple, Polynomial]] = {}
    for t, col in cols.items():
        for m3, poly in col.components().items():
            rows.setdefault(m3, {})[t] = poly
    out = []
    for m3 in sorted(rows, reverse=True):
        el = ModuleElement.from_components(rows[m3])
        if el:
            out.append(el)
    return out


# ---------------------------------------------------------------------------
# Labelled generators


@dataclass(frozen=True)
class GeneratorLabel:
    family: str
    triple: Triple
    aux: Tuple[Tuple[str, int], ...] = ()

    def __str__(self) -> str:
        i, j, k = self.triple
        s = f"{self.family}[{i}{j}{k}]"
        if self.aux:
            s += "(" + ",".join(f"{a}={v}" for a, v in self.aux) + ")"
        return s


@dataclass(frozen=True)
class Generator:
    label: GeneratorLabel
    element: ModuleElement

    def __str__(self) -> str:
        return f"{self.label}: {self.element}"


def _lab(fam: str, triple: Triple, **aux) -> GeneratorLabel:
    return GeneratorLabel(fam, triple, tuple(aux.items()))


def block_B(i: int, j: int, k: int, n: int) -> List[Generator]:
    """The generators of B attached to r[i,j,k], in label order."""
    t = (i, j, k)
    rt = r(i, j, k)
    out: List[Generator] = []
    for l2 in range(k + 1, j):
        out.append(Generator(_lab("g1", t, l2=l2), r(i, j, l2).mul_poly(-x(j, k) - x(l2, k)) + rt.mul_poly(x(j, l2))))
        out.append(Generator(_lab("g2", t, l2=l2), r(i, j, l2).mul_poly(x(j, k)) + rt.mul_poly(x(i, l2))))
    for l3 in range(j + 1, i):
        out.append(Generator(_lab("g3", t, l3=l3), r(i, l3, j).mul_poly(-x(j, k)) + rt.mul_poly(x(i, l3))))
    for l4 in range(i + 1, n + 1):
        out.append(Generator(_lab("g4", t, l4=l4), r(l4, i, j).mul_poly(x(j, k)) + rt.mul_poly(x(l4, i))))
    for l1 in range(1, k):
        out.append(Generator(_lab("h1", t, l1=l1), rt.mul_poly(x(i, l1) + x(j, l1) + x(k, l1))))
    out.append(Generator(_lab("h2", t), rt.mul_poly(x(i, k) + x(j, k))))
    for l2 in range(k + 1, j):
        out.append(Generator(_lab("h3", t, l2=l2), rt.mul_poly(x(l2, k))))
    for l3 in range(j + 1, i):
        out.append(Generator(_lab("h4", t, l3=l3), rt.mul_poly(x(l3, k))))
        out.append(Generator(_lab("h5", t, l3=l3), rt.mul_poly(x(l3, j))))
    for l4 in range(i + 1, n + 1):
        out.append(Generator(_lab("h6", t, l4=l4), rt.mul_poly(x(l4, k))))
        out.append(Generator(_lab("h7", t, l4=l4), rt.mul_poly(x(l4, j))))
    for s, tt in _pairs(n):
        if not {s, tt} & {i, j, k}:
            out.append(Generator(_lab("h8", t, s=s, t=tt), rt.mul_poly(x(s, tt))))
    return out


def block_D(i: int, j: int, k: int) -> List[Generator]:
    """Quadratic pure generators x_kl x_kp r_ijk (p <= l < k) and x_jq x_kp r_ijk (p < k, q <= k)."""
    t = (i, j, k)
    out = []
    for l in range(1, k):
        for p in range(1, l + 1):
            out.append(Generator(_lab("h9", t, l=l, p=p), ModuleElement.unit(t, xm(k, l) * xm(k, p))))
    for p in range(1, k):
        for q in range(1, k + 1):
            out.append(Generator(_lab("h0", t, p=p, q=q), ModuleElement.unit(t, xm(j, q) * xm(k, p))))
    return out


def block_E(i: int, j: int, k: int) -> List[Generator]:
    t = (i, j, k)
    return [Generator(_lab("f", t, p=p), ModuleElement.unit(t, xm(k, p))) for p in range(1, k)]


def _sorted_block(gens: List[Generator]) -> List[Generator]:
    return sorted(gens, key=lambda g: term_key(*g.element.leading()[:2]))


def positions(n: int) -> List[Triple]:
    """Positions r[i,j,k] in ascending module order (r[n,n-1,n-2] first)."""
    return sorted(triples(n), key=position_key)


def gens_B(n: int) -> List[Generator]:
    """All of B, block by block from the smallest position, each block ascending by leading term."""
    out: List[Generator] = []
    for t in positions(n):
        out.extend(_sorted_block(block_B(*t, n)))
    return out


def gens_D(n: int) -> List[Generator]:
    out: List[Generator] = []
    for t in positions(n):
        out.extend(_sorted_block(block_D(*t)))
    return out


def gens_E(n: int) -> List[Generator]:
    out: List[Generator] = []
    for t in positions(n):
        out.extend(block_E(*t))
    return out


def gens_G(n: int) -> List[Generator]:
    out: List[Generator] = []
    for t in positions(n):
        out.extend(_sorted_block(block_B(*t, n) + block_D(*t)))
    return out


def gens_Bprime(n: int) -> List[Generator]:
    out: List[Generator] = []
    for t in positions(n):
        out.extend(_sorted_block(block_B(*t, n) + block_E(*t)))
    return out


def elements(gens: Sequence[Generator]) -> List[ModuleElement]:
    return [g.element for g in gens]


def m_count(n: int) -> int:
    return n * (n**4 - 5 * n**3 + 7 * n**2 - n - 2) // 12


def m_block(n: int, k: int) -> int:
    return comb(n, 2) - 2 * k


def w_length(n: int, k: int) -> int:
    return comb(n, 2) + comb(k, 2) + (k - 3) * k


def kn_relations(n: int) -> List[Tuple[Tuple[int, int, int, int], ModuleElement]]:
    """Images x_kl r_ijk of the generators e_ijkl of K_n, for l < k < j < i."""
    out = []
    for i, j, k in triples(n):
        for l in range(1, k):
            out.append(((i, j, k, l), ModuleElement.unit((i, j, k), xm(k, l))))
    return out


# ---------------------------------------------------------------------------
# Membership certificates for D


def _find(block: List[Generator], fam: str, **aux) -> ModuleElement:
    want = tuple(aux.items())
    for g in block:
        if g.label.family == fam and all(a in g.label.aux for a in want):
            return g.element
    raise KeyError((fam, aux))


def d_combination(label: GeneratorLabel, n: int) -> List[Tuple[Polynomial, GeneratorLabel, ModuleElement]]:
    """An explicit expression of a D generator as a combination of B generators.

    Returns a list of (coefficient, label, element) whose weighted sum is the
    D generator.
    """
    i, j, k = label.triple
    aux = dict(label.aux)
    p = aux["p"]
    if label.family == "h9":
        l = aux["l"]
        blk = block_B(i, j, l, n)
        f1 = _find(blk, "g1", l2=k)
        f2 = _find(blk, "g2", l2=k)
        if p < l:
            f4 = _find(blk, "h8", s=k, t=p)
            lab4 = _lab("h8", (i, j, l), s=k, t=p)
        else:
            f4 = _find(blk, "h3", l2=k)
            lab4 = _lab("h3", (i, j, l), l2=k)
        c = x(i, k) + x(j, k)
        return [
            (c, lab4, f4),
            (-x(k, p), _lab("g1", (i, j, l), l2=k), f1),
            (-x(k, p), _lab("g2", (i, j, l), l2=k), f2),
        ]
    if label.family == "h0":
        q = aux["q"]
        blk = block_B(i, k, p, n)
        f3 = _find(blk, "g3", l3=j)
        if q == k:
            lab5, f5 = _lab("h5", (i, k, p), l3=j), _find(blk, "h5", l3=j)
        elif q == p:
            lab5, f5 = _lab("h4", (i, k, p), l3=j), _find(blk, "h4", l3=j)
        else:
            lab5, f5 = _lab("h8", (i, k, p), s=j, t=q), _find(blk, "h8", s=j, t=q)
        return [(x(i, j), lab5, f5), (-x(j, q), _lab("g3", (i, k, p), l3=j), f3)]
    raise ValueError(f"no combination for family {label.family}")


def certify_D(n: int) -> List[Tuple[GeneratorLabel, bool]]:
    """Check each D generator equals its explicit combination of B generators."""
    out = []
    for g in gens_D(n):
        total = ModuleElement()
        for c, _, f in d_combination(g.label, n):
            total = total + f.mul_poly(c)
        out.append((g.label, total == g.element))
    return out


# ---------------------------------------------------------------------------
# The presentation matrix Psi


@dataclass
class PresentationMatrix:
    n: int
    rows: List[Generator]
    positions: List[Triple]

    @property
    def rank(self) -> int:
        return len(self.positions)

    def __len__(self) -> int:
        return len(self.rows)

    def table(self) -> List[List[Polynomial]]:
        """Transpose of the matrix: one row per generator, columns in position order."""
        return [[g.element.component(p) for p in self.positions] for g in self.rows]

    def block_rows(self, t: Triple) -> List[Generator]:
        return [g for g in self.rows if g.label.triple == t]

    def diagonal(self, t: Triple) -> List[Polynomial]:
        return [g.element.component(t) for g in self.block_rows(t)]

    def block_triangular(self) -> Optional[Tuple[GeneratorLabel, Triple]]:
        """First violation of block triangularity, or None.

        A row of block (i,j,k) may only touch positions that are <= r[i,j,k].
        """
        for g in self.rows:
            own = position_key(g.label.triple)
            for p in g.element.positions():
                if position_key(p) > own:
                    return g.label, p
        return None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "rows": [
                {
                    "label": str(g.label),
                    "terms": [
                        {
                            "pos": list(pos),
                            "mono": {f"{v.upper},{v.lower}": e for v, e in sorted(m.exponents().items(), reverse=True)},
                            "coef": f"{c.numerator}/{c.denominator}",
                        }
                        for (pos, m), c in g.element.sorted_terms()
                    ],
                }
                for g in self.rows
            ],
        }

    def render(self) -> str:
        head = "label".ljust(22) + " | " + " | ".join(f"r[{i},{j},{k}]" for i, j, k in self.positions)
        lines = [head]
        for g, row in zip(self.rows, self.table()):
            lines.append(str(g.label).ljust(22) + " | " + " | ".join(str(p) for p in row))
        return "\n".join(lines)


def psi(n: int) -> PresentationMatrix:
    return PresentationMatrix(n, gens_B(n), positions(n))


def presentation(n: int, which: str = "B") -> PresentationMatrix:
    builders = {"B": gens_B, "G": gens_G, "Bprime": gens_Bprime}
    if which not in builders:
        raise ValueError(f"unknown generating set {which!r}")
    return PresentationMatrix(n, builders[which](n), positions(n))


def expected_diagonal(i: int, j: int, k: int, n: int) -> List[Polynomial]:
    """Diagonal entries of block (i,j,k) as listed case by case.

    Singletons x_st are those with {s,t} not inside {i,j,k,l} for any l < k;
    when k = 1 there is no such l and the condition is {s,t} not inside {i,j,k}.
    """
    out = [x(i, l) + x(j, l) + x(k, l) for l in range(1, k)]
    out.append(x(i, k) + x(j, k))
    for s, t in _pairs(n):
        if {s, t} <= {i, j, k}:
            continue
        if any({s, t} <= {i, j, k, l} for l in range(1, k)):
            continue
        out.append(x(s, t))
    return out


def w_vector(i: int, j: int, k: int, n: int) -> List[Polynomial]:
    """Diagonal entries of the Groebner set G at r[i,j,k]."""
    t = (i, j, k)
    return [g.element.component(t) for g in _sorted_block(block_B(i, j, k, n) + block_D(i, j, k))]


# ---------------------------------------------------------------------------
# Checks on the dual route and on K_n


def phi_agrees_with_d2(n: int) -> bool:
    return phi(n) == phi_from_d2(n)


def phi_star_equivalence(n: int, max_n: int = 5, **kw) -> bool:
    """Does the raw dual map Phi* generate the same submodule as B?"""
    if n > max_n:
        raise ValueError(f"phi_star_equivalence is guarded to n <= {max_n}")
    if n < 3:
        return True
    return modgb.submodule_equal(phi_star(n), elements(gens_B(n)), **kw)


@dataclass
class KnCheck:
    quadruple: Tuple[int, int, int, int]
    kind: str  # "annihilated", "nonzero", "free"
    passed: bool
    witness: str = ""


@dataclass
class KnReport:
    n: int
    P: int
    checks: List[KnCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[KnCheck]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        lines = [f"{head}: K_n checks for n={self.n} (P={self.P}), {len(self.checks)} sub-checks"]
        for c in self.failures():
            lines.append(f"  {c.kind} {c.quadruple}: {c.witness}")
        return "\n".join(lines)


def groebner_G(n: int) -> modgb.GroebnerBasis:
    """G for n, certified by Buchberger's criterion."""
    return modgb.certify(elements(gens_G(n)))


def kn_checks(n: int, P: int = 4, G: Optional[modgb.GroebnerBasis] = None) -> KnReport:
    if n < 4:
        raise ValueError("kn_checks needs n >= 4")
    G = G if G is not None else groebner_G(n)
    rep = KnReport(n, P)
    for (i, j, k, l), el in kn_relations(n):
        quad = (i, j, k, l)
        bad = []
        for s, t in _pairs(n):
            if (s, t) == (i, j):
                continue
            f = el.mul_monomial(xm(s, t))
            if not modgb.contains(f, G):
                bad.append(str(f))
        rep.checks.append(KnCheck(quad, "annihilated", not bad, "; ".join(bad)))
        nz = not modgb.contains(el, G)
        rep.checks.append(KnCheck(quad, "nonzero", nz, "" if nz else str(el)))
        bad = []
        for p in range(1, P + 1):
            f = el.mul_monomial(Monomial.var(i, j, p))
            if modgb.contains(f, G):
                bad.append(str(f))
        rep.checks.append(KnCheck(quad, "free", not bad, "; ".join(bad)))
    return rep


def render_e3(col: ModuleElement) -> str:
    parts = []
    for pos in sorted(col.positions(), reverse=True):
        parts.append(f"({col.component(pos)})*{fmt_ext_monomial(pos)}")
    return " + ".join(parts) if parts else "0"
