"""First resonance variety of the upper McCool groups and its scheme structure.

Degree-1 classes are vectors indexed by generator rank (the rank of u[i,j]
equals the rank of the variable x[i,j]); linear forms in the x[i,j] use the
same indexing.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Tuple

from . import linalg, modgb
from .alexinv import groebner_G, kn_checks, w_vector
from .cohomology import UpperMcCoolRing, triples
from .linalg import LinearSubspace
from .qpoly import Monomial, ModuleElement, Polynomial, Variable, nvars

DEFAULT_SEED = 20160401


def _unit(n: int, i: int, j: int, c=1) -> List[Fraction]:
    v = [Fraction(0)] * nvars(n)
    v[Variable(i, j).rank] = Fraction(c)
    return v


def _rank(i: int, j: int) -> int:
    return Variable(i, j).rank


@dataclass
class Component:
    kind: str  # "L", "Lprime", "C2", "C3"
    indices: Tuple[int, ...]
    subspace: LinearSubspace
    isotropy: Optional[int] = None

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def name(self) -> str:
        return f"{self.kind}{''.join(map(str, self.indices))}"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "indices": list(self.indices),
            "dim": self.dim,
            "isotropy": self.isotropy,
            "basis": [[str(c) for c in b] for b in self.subspace.basis],
            "equations": [[str(c) for c in e] for e in self.subspace.equations],
        }


@dataclass
class Check:
    name: str
    passed: bool
    witness: str = ""


@dataclass
class Certificate:
    title: str
    checks: List[Check] = field(default_factory=list)
    seed: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), "" if passed else witness))
        return bool(passed)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        seed = f" (seed {self.seed})" if self.seed is not None else ""
        lines = [f"{head}: {self.title}, {len(self.checks)} checks{seed}"]
        for c in self.failures():
            lines.append(f"  FAIL {c.name}: {c.witness}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "status": "PASS" if self.passed else "FAIL",
            "seed": self.seed,
            "checks": [{"name": c.name, "status": "PASS" if c.passed else "FAIL", "witness": c.witness} for c in self.checks],
        }


# ---------------------------------------------------------------------------
# The components L_ij


def L_equations(n: int, i: int, j: int) -> List[List[Fraction]]:
    N = nvars(n)
    eqs = []
    for l in range(1, j):
        e = [Fraction(0)] * N
        e[_rank(i, l)] = Fraction(1)
        e[_rank(j, l)] = Fraction(1)
        eqs.append(e)
    for l in range(j + 1, i):
        eqs.append(_unit(n, i, l))
    for s in range(2, n + 1):
        if s in (i, j):
            continue
        for t in range(1, s):
            eqs.append(_unit(n, s, t))
    return eqs


def L_basis(n: int, i: int, j: int) -> List[List[Fraction]]:
    """{u_jl - u_il : l < j} together with u_ij."""
    out = []
    for l in range(1, j):
        v = _unit(n, j, l)
        v[_rank(i, l)] = Fraction(-1)
        out.append(v)
    out.append(_unit(n, i, j))
    return out


def L_subspace(n: int, i: int, j: int) -> LinearSubspace:
    """L_ij from its equations, checked against its explicit basis."""
    S = LinearSubspace.from_equations(L_equations(n, i, j), nvars(n))
    B = LinearSubspace.from_basis(L_basis(n, i, j), nvars(n))
    if S != B or not S.consistent():
        raise AssertionError(f"inconsistent description of L{i}{j}")
    return S


def component_pairs(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(3, n + 1) for j in range(2, i)]


def components(n: int, R: Optional[UpperMcCoolRing] = None) -> List[Component]:
    if n < 3:
        return []
    R = R or UpperMcCoolRing(n)
    out = []
    for i, j in component_pairs(n):
        S = L_subspace(n, i, j)
        out.append(Component("L", (i, j), S, R.cup_rank(L_basis(n, i, j))))
    return out


def embedded_components(n: int) -> List[Component]:
    out = []
    for i, j in component_pairs(n):
        if j < 3:
            continue
        eqs = [_unit(n, s, t) for s in range(2, n + 1) for t in range(1, s) if (s, t) != (i, j)]
        out.append(Component("Lprime", (i, j), LinearSubspace.from_equations(eqs, nvars(n)), 0))
    return out


def random_rational(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 5))


def random_point(S: LinearSubspace, rng: random.Random) -> List[Fraction]:
    while True:
        coefs = [random_rational(rng) for _ in S.basis]
        v = [sum((c * b[r] for c, b in zip(coefs, S.basis)), Fraction(0)) for r in range(S.dim_ambient)]
        if any(v):
            return v


def _embed(v: Sequence[Fraction], n_to: int) -> List[Fraction]:
    return list(v) + [Fraction(0)] * (nvars(n_to) - len(v))


def verify_components(n: int, seed: int = DEFAULT_SEED, samples: int = 5) -> Certificate:
    """Membership, disjointness, isotropy and restriction checks for the L_ij."""
    cert = Certificate(f"resonance components for n={n}", seed=seed)
    R = UpperMcCoolRing(n)
    rng = random.Random(seed)
    comps = components(n, R)
    N = nvars(n)
    cert.add("count", len(comps) == comb(n, 2) - (n - 1), str(len(comps)))
    for c in comps:
        i, j = c.indices
        cert.add(f"dim L{i}{j}", c.dim == j, str(c.dim))
        cert.add(f"consistent L{i}{j}", c.subspace.consistent())
        uij = _unit(n, i, j)
        pts = [list(b) for b in L_basis(n, i, j)] + [random_point(c.subspace, rng) for _ in range(samples)]
        for a in pts:
            K = R.cup_kernel(a)
            ok = K.dim >= 2 and K.contains(a) and K.contains(uij)
            cert.add(f"resonant point in L{i}{j}", ok, f"a={[str(v) for v in a]} kernel dim {K.dim}")
        cert.add(f"isotropy L{i}{j}", c.isotropy == comb(j - 1, 2), f"{c.isotropy} != {comb(j - 1, 2)}")
    for a, b in combinations(comps, 2):
        r = linalg.rank(list(a.subspace.equations) + list(b.subspace.equations), N)
        cert.add(f"disjoint {a.name} {b.name}", r == N, f"rank {r}")
    restriction_checks(n, cert)
    return cert


def restriction_checks(n: int, cert: Certificate) -> None:
    """The components for n are the traces of those for n+1 on the smaller coordinate space."""
    N1 = nvars(n + 1)
    old = [_unit(n + 1, s, t) for s in range(2, n + 1) for t in range(1, s)]
    H = LinearSubspace.from_basis(old, N1)
    for i, j in component_pairs(n + 1):
        V = L_subspace(n + 1, i, j)
        inter_eqs = list(V.equations) + list(H.equations)
        inter = LinearSubspace.from_equations(inter_eqs, N1)
        if i <= n:
            L = LinearSubspace.from_basis([_embed(b, n + 1) for b in L_basis(n, i, j)], N1)
            cert.add(f"restriction V{i}{j}", inter == L, f"dim {inter.dim} vs {L.dim}")
        else:
            cert.add(f"restriction V{i}{j} trivial", inter.dim == 0, f"dim {inter.dim}")


def nonresonance_check(n: int, seed: int = DEFAULT_SEED, samples: int = 20) -> Certificate:
    """Random points off every L_ij have a 1-dimensional cup kernel."""
    cert = Certificate(f"generic points are non-resonant for n={n}", seed=seed)
    R = UpperMcCoolRing(n)
    rng = random.Random(seed)
    comps = components(n, R)
    done = 0
    while done < samples:
        a = [random_rational(rng) for _ in range(nvars(n))]
        if not any(a) or any(c.subspace.contains(a) for c in comps):
            continue
        K = R.cup_kernel(a)
        cert.add(f"point {done}", K.dim == 1, f"a={[str(v) for v in a]} kernel dim {K.dim}")
        done += 1
    return cert


# ---------------------------------------------------------------------------
# The Groebner upper bound


def vanishes_on(q: Polynomial, S: LinearSubspace) -> bool:
    """Does the polynomial q (degree <= 2) vanish identically on the subspace S?"""
    if q.degree() > 2:
        raise ValueError("only polynomials of degree <= 2 are supported")

    def ev(v):
        return q.evaluate({r: c for r, c in enumerate(v)})

    if ev([0] * S.dim_ambient):
        return False
    B = [list(b) for b in S.basis]
    for b in B:
        if ev(b) or ev([-c for c in b]):
            return False
    for b, c in combinations(B, 2):
        if ev([x + y for x, y in zip(b, c)]):
            return False
    return True


def _linear_row(p: Polynomial, N: int) -> List[Fraction]:
    row = [Fraction(0)] * N
    for m, c in p.terms.items():
        if m.deg != 1:
            raise ValueError("not linear")
        row[m.exps[0][0]] = c
    return row


def V_w(n: int, i: int, j: int, k: int) -> Tuple[LinearSubspace, bool]:
    """Zero set of the diagonal vector w_ijk, and whether the quadratics vanish on it.

    Linear entries give equations directly; a square x^2 among the quadratic
    entries forces x = 0.  The remaining quadratics must then vanish on the
    resulting linear space.
    """
    N = nvars(n)
    w = w_vector(i, j, k, n)
    eqs, quads = [], []
    for p in w:
        if p.degree() == 1:
            eqs.append(_linear_row(p, N))
        else:
            quads.append(p)
    for q in quads:
        if len(q.terms) == 1:
            (m,) = q.terms
            if len(m.exps) == 1 and m.exps[0][1] == 2:
                row = [Fraction(0)] * N
                row[m.exps[0][0]] = Fraction(1)
                eqs.append(row)
    S = LinearSubspace.from_equations(eqs, N)
    return S, all(vanishes_on(q, S) for q in quads)


def upper_bound_check(n: int) -> Certificate:
    cert = Certificate(f"upper bound from diagonal vectors for n={n}")
    attained = set()
    for i, j, k in triples(n):
        S, quad_ok = V_w(n, i, j, k)
        L = L_subspace(n, i, j)
        cert.add(f"quadratics vanish {i}{j}{k}", quad_ok)
        cert.add(f"dim V(w{i}{j}{k})", S.dim == k + 1, f"{S.dim} != {k + 1}")
        cert.add(f"V(w{i}{j}{k}) in L{i}{j}", L.contains_subspace(S))
        if k == j - 1:
            ok = S == L
            cert.add(f"V(w{i}{j}{k}) = L{i}{j}", ok, f"dims {S.dim}, {L.dim}")
            if ok:
                attained.add((i, j))
    cert.add("every L_ij attained", attained == set(component_pairs(n)), str(sorted(set(component_pairs(n)) - attained)))
    return cert


# ---------------------------------------------------------------------------
# Scheme structure


@dataclass
class SchemeReport:
    n: int
    isolated: List[Component]
    embedded: List[Component]
    certificates: List[Certificate] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)

    def render(self) -> str:
        lines = [f"resonance scheme for n={self.n}"]
        lines.append("  isolated: " + ", ".join(f"{c.name} (dim {c.dim}, isotropy {c.isotropy})" for c in self.isolated))
        lines.append("  embedded: " + (", ".join(f"{c.name} (dim {c.dim})" for c in self.embedded) or "none"))
        for c in self.certificates:
            lines.extend("  " + s for s in c.render().splitlines())
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "isolated": [c.to_dict() for c in self.isolated],
            "embedded": [c.to_dict() for c in self.embedded],
            "certificates": [c.to_dict() for c in self.certificates],
        }


def perpendicular_part(n: int, i: int, j: int, R: UpperMcCoolRing) -> LinearSubspace:
    """{a in L_ij : a.b = 0 for every b in L_ij}."""
    B = L_basis(n, i, j)
    d = len(B)
    # a = sum c_m B_m; condition sum_m c_m cup(B_m, B_l) = 0 for all l
    rows = []
    prods = [[R.cup(B[m], B[l]) for m in range(d)] for l in range(d)]
    for l in range(d):
        for coord in range(R.dim_A2):
            row = [prods[l][m][coord] for m in range(d)]
            if any(row):
                rows.append(row)
    null = linalg.nullspace(rows, d) if rows else linalg.nullspace([], d)
    vecs = [[sum((c * B[m][r] for m, c in enumerate(v)), Fraction(0)) for r in range(nvars(n))] for v in null]
    return LinearSubspace.from_basis(vecs, nvars(n)) if vecs else LinearSubspace.from_equations(
        [_unit(n, s, t) for s in range(2, n + 1) for t in range(1, s)], nvars(n)
    )


def scheme(n: int, max_n: int = 5, P: int = 4) -> SchemeReport:
    if n < 4 or n > max_n:
        raise ValueError(f"scheme needs 4 <= n <= {max_n}")
    R = UpperMcCoolRing(n)
    iso = components(n, R)
    emb = embedded_components(n)
    rep = SchemeReport(n, iso, emb)
    kn = kn_checks(n, P=P)
    c = Certificate(f"embedded generators x_kl r_ijk for n={n}")
    for chk in kn.checks:
        c.add(f"{chk.kind} {chk.quadruple}", chk.passed, chk.witness)
    rep.certificates.append(c)
    c = Certificate(f"embedded components as cup-perpendicular parts for n={n}")
    by_pair = {comp.indices: comp for comp in iso}
    for e in emb:
        i, j = e.indices
        perp = perpendicular_part(n, i, j, R)
        c.add(f"perp L{i}{j} = L'{i}{j}", perp == e.subspace, f"dim {perp.dim}")
        owners = [comp.name for comp in iso if comp.subspace.contains_subspace(e.subspace)]
        c.add(f"L'{i}{j} in exactly one isolated component", owners == [by_pair[(i, j)].name], str(owners))
    for comp in iso:
        i, j = comp.indices
        if j == 2:
            perp = perpendicular_part(n, i, j, R)
            c.add(f"L{i}{j} is isotropic", perp == comp.subspace, f"dim {perp.dim}")
    rep.certificates.append(c)
    return rep


# ---------------------------------------------------------------------------
# Example: the primary ideal J_43 for n = 4


def _x(i, j) -> Polynomial:
    return Polynomial.var(i, j)


def J43_generators() -> List[Polynomial]:
    return [
        _x(4, 1) + _x(3, 1) + _x(2, 1),
        _x(3, 1) * _x(2, 1),
        _x(3, 2) * _x(2, 1),
        _x(4, 2) * _x(2, 1),
        _x(4, 2) * _x(3, 1) + _x(3, 2) * _x(3, 1),
        _x(4, 2) * _x(3, 2),
        _x(2, 1) ** 2,
        _x(3, 1) ** 2,
        _x(3, 2) ** 2,
        _x(4, 2) ** 2,
    ]


_IDEAL_POS = (0,)


def ideal_basis(polys: Sequence[Polynomial]) -> modgb.GroebnerBasis:
    """Groebner basis of an ideal, treated as a rank-one module."""
    return modgb.buchberger([ModuleElement.from_components({_IDEAL_POS: p}) for p in polys])


def ideal_contains(GB: modgb.GroebnerBasis, p: Polynomial) -> bool:
    return modgb.contains(ModuleElement.from_components({_IDEAL_POS: p}), GB)


def j43_annihilation(G: Optional[modgb.GroebnerBasis] = None) -> Certificate:
    """Does each listed generator g of J43 satisfy g * r_ijk in im Psi for all four positions?"""
    cert = Certificate("J43 generators annihilate B_4")
    G = G if G is not None else groebner_G(4)
    for g in J43_generators():
        for t in triples(4):
            f = ModuleElement.from_components({t: g})
            cert.add(f"({g})*r[{t[0]},{t[1]},{t[2]}] in im Psi", modgb.contains(f, G), str(modgb.reduce_element(f, G.elements)))
    return cert


def j43_radical(G: Optional[modgb.GroebnerBasis] = None) -> Certificate:
    """sqrt(J43) = (x21, x31, x32, x41, x42), and x43 stays free on B_4."""
    cert = Certificate("radical of J43")
    G = G if G is not None else groebner_G(4)
    gens = J43_generators()
    J = ideal_basis(gens)
    for v in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)]:
        cert.add(f"x[{v[0]},{v[1]}]^2 in J43", ideal_contains(J, _x(*v) ** 2))
    x43 = Monomial.var(4, 3)
    for g in gens:
        bad = [m for m in g.terms if m.exps and all(r == x43.exps[0][0] for r, _ in m.exps)]
        cert.add(f"({g}) in radical ideal", not bad, str(bad))
    for e in range(1, 5):
        cert.add(f"x[4,3]^{e} not in J43", not ideal_contains(J, _x(4, 3) ** e))
    cert.add("x[4,3]*r[4,3,2] not in im Psi", not modgb.contains(ModuleElement.unit((4, 3, 2), x43), G))
    return cert


def ann_membership_example87(G: Optional[modgb.GroebnerBasis] = None) -> Certificate:
    """Annihilation and radical checks for the primary ideal J43, merged."""
    G = G if G is not None else groebner_G(4)
    a, b = j43_annihilation(G), j43_radical(G)
    return Certificate("J43 annihilates B_4 and has the stated radical", a.checks + b.checks)


# ---------------------------------------------------------------------------
# Depth-d lower bound


def depth_lower_bound(n: int, d: int) -> Certificate:
    if d < 2:
        raise ValueError("depth d must be >= 2")
    cert = Certificate(f"depth-{d} lower bound for n={n}")
    R = UpperMcCoolRing(n)
    for i, j in component_pairs(n):
        if j < d + 1:
            continue
        uij = _unit(n, i, j)
        K = R.cup_kernel(uij)
        W = [_unit(n, i, k) for k in range(1, j)]
        for k, w in enumerate(W, start=1):
            w[_rank(j, k)] = Fraction(-1)
        explicit = all(K.contains(w) for w in W) and K.contains(uij)
        cert.add(f"u[{i},{j}] kernel", K.dim >= d + 1 and explicit, f"kernel dim {K.dim}")
    return cert


# ---------------------------------------------------------------------------
# Comparison with the full McCool group


def mccool_coords(n: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def mccool_inventory(n: int) -> List[Component]:
    """Declared components C_ij and C_ijk of R_1 of the full McCool group, in coordinates x_ij (i != j)."""
    coords = mccool_coords(n)
    idx = {c: a for a, c in enumerate(coords)}
    D = len(coords)

    def unit(c):
        v = [Fraction(0)] * D
        v[idx[c]] = Fraction(1)
        return v

    out = []
    for i, j in combinations(range(1, n + 1), 2):
        eqs = [unit(c) for c in coords if set(c) != {i, j}]
        out.append(Component("C2", (i, j), LinearSubspace.from_equations(eqs, D), 0))
    for i, j, k in combinations(range(1, n + 1), 3):
        eqs = []
        for a, b in (((i, j), (k, j)), ((j, i), (k, i)), ((i, k), (j, k))):
            v = unit(a)
            v[idx[b]] = Fraction(1)
            eqs.append(v)
        eqs += [unit(c) for c in coords if not set(c) <= {i, j, k}]
        out.append(Component("C3", (i, j, k), LinearSubspace.from_equations(eqs, D), 0))
    return out


@dataclass
class ComparisonReport:
    n: int
    upper_dims: List[int]
    upper_isotropy: List[int]
    full_dims: List[int]
    full_isotropy: List[int]

    @property
    def max_upper(self) -> int:
        return max(self.upper_dims, default=0)

    @property
    def max_full(self) -> int:
        return max(self.full_dims, default=0)

    @property
    def obstruction(self) -> str:
        if self.max_upper > self.max_full:
            return f"dimension: upper group has a {self.max_upper}-dimensional component, full group at most {self.max_full}"
        if any(self.upper_isotropy) and not any(self.full_isotropy):
            return "isotropy: upper group has a non-isotropic component, all components of the full group are isotropic"
        return "none"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "upper": {"dims": self.upper_dims, "isotropy": self.upper_isotropy, "max_dim": self.max_upper},
            "full": {"dims": self.full_dims, "isotropy": self.full_isotropy, "max_dim": self.max_full},
            "obstruction": self.obstruction,
        }

    def render(self) -> str:
        return "\n".join(
            [
                f"n={self.n}",
                f"  upper McCool: {len(self.upper_dims)} components, dims {self.upper_dims}, isotropy {self.upper_isotropy}",
                f"  McCool:       {len(self.full_dims)} components, dims {self.full_dims}, isotropy {self.full_isotropy}",
                f"  obstruction to an epimorphism: {self.obstruction}",
            ]
        )


def compare_report(n: int) -> ComparisonReport:
    up = components(n)
    full = mccool_inventory(n)
    return ComparisonReport(
        n,
        [c.dim for c in up],
        [c.isotropy for c in up],
        [c.dim for c in full],
        [c.isotropy for c in full],
    )


def _monomials_of_degree(ranks: Sequence[int], d: int) -> List[Monomial]:
    from itertools import combinations_with_replacement

    out = []
    for combo in combinations_with_replacement(ranks, d):
        e: dict = {}
        for r in combo:
            e[r] = e.get(r, 0) + 1
        out.append(Monomial(e))
    return out


def annihilator_degree(n: int, d: int, G: Optional[modgb.GroebnerBasis] = None) -> List[Polynomial]:
    """Basis of the degree-d part of Ann(B_n), by linear algebra on normal forms."""
    G = G if G is not None else groebner_G(n)
    monos = _monomials_of_degree(range(nvars(n)), d)
    cols = []
    keys: dict = {}
    for m in monos:
        col = {}
        for t in triples(n):
            nf = modgb.reduce_element(ModuleElement.unit(t, m), G.elements)
            for key, c in nf.terms.items():
                col[keys.setdefault((t, key), len(keys))] = c
        cols.append(col)
    rows = [[cols[a].get(b, Fraction(0)) for a in range(len(monos))] for b in range(len(keys))]
    null = linalg.nullspace(rows, len(monos)) if rows else linalg.nullspace([], len(monos))
    return [Polynomial({m: c for m, c in zip(monos, v) if c}) for v in null]


def ann_contained_in_J43(max_deg: int = 3, G: Optional[modgb.GroebnerBasis] = None) -> Certificate:
    """Degree-wise check that Ann(B_4) lies in the primary ideal J43, up to max_deg."""
    cert = Certificate(f"Ann(B_4) contained in J43 through degree {max_deg}")
    G = G if G is not None else groebner_G(4)
    J = ideal_basis(J43_generators())
    for d in range(1, max_deg + 1):
        basis = annihilator_degree(4, d, G)
        bad = [str(p) for p in basis if not ideal_contains(J, p)]
        cert.add(f"degree {d} ({len(basis)} annihilators)", not bad, "; ".join(bad[:3]))
    return cert
