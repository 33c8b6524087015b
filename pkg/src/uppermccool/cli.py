"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 pair budget exhausted.
Output is deterministic for a fixed configuration.

CSV columns:
  present    label,pos,mono,coef
  hilbert    degree,dim
  chen       k,theta,provenance
  compare    group,kind,indices,dim,isotropy
  others     check,status,witness
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable, List, Optional, Tuple

from . import alexinv, hilbert, modgb, resonance

THREADS_ENV = "UPPERMCCOOL_THREADS"

CAPS = {"groebner": 5, "scheme": 5, "present": 8, "hilbert": 8, "chen": 8, "resonance": 6, "compare": 8}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 4
    k_max: int = 5
    depth: int = 2
    format: str = "text"
    seed: int = resonance.DEFAULT_SEED
    pair_budget: int = modgb.DEFAULT_PAIR_BUDGET
    out: Optional[str] = None
    which: str = "B"
    module: str = "B"
    check: str = "all"
    terms: int = 8
    n_max: int = 5
    no_cap: bool = False
    timing: bool = False

    def validate(self) -> None:
        if self.n < 2:
            raise UsageError("--n must be >= 2")
        if self.k_max < 1:
            raise UsageError("--k-max must be >= 1")
        if self.format not in ("text", "json", "csv"):
            raise UsageError(f"unknown format {self.format!r}")
        cap = CAPS.get(self.command)
        if cap is not None and self.n > cap and not self.no_cap:
            raise UsageError(f"{self.command} is capped at n <= {cap}; pass --no-cap to override")


@dataclass
class SuiteEntry:
    name: str
    status: str  # PASS, FAIL, SKIPPED(budget)
    witness: str = ""
    seconds: float = 0.0


@dataclass
class VerificationSuite:
    entries: List[SuiteEntry] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 1 if any(e.status == "FAIL" for e in self.entries) else 0

    def sorted(self) -> List[SuiteEntry]:
        return sorted(self.entries, key=lambda e: e.name)


# ---------------------------------------------------------------------------
# Output helpers


def _csv(rows: List[List]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, cfg: RunConfig) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cert_rows(cert) -> List[List]:
    return [["check", "status", "witness"]] + [[c.name, "PASS" if c.passed else "FAIL", c.witness] for c in cert.checks]


def _groebner_cert_dict(name: str, cert: modgb.GroebnerCertificate) -> dict:
    d = cert.to_dict()
    d["name"] = name
    return d


# ---------------------------------------------------------------------------
# Commands


def cmd_present(cfg: RunConfig) -> int:
    if cfg.n < 3:
        P = alexinv.PresentationMatrix(cfg.n, [], [])
    else:
        P = alexinv.presentation(cfg.n, cfg.which)
    if cfg.format == "json":
        _emit(_json(P.to_dict()), cfg)
    elif cfg.format == "csv":
        rows = [["label", "pos", "mono", "coef"]]
        for row in P.to_dict()["rows"]:
            for t in row["terms"]:
                mono = ";".join(f"{k}:{v}" for k, v in t["mono"].items())
                rows.append([row["label"], ",".join(map(str, t["pos"])), mono, t["coef"]])
        _emit(_csv(rows), cfg)
    else:
        _emit(f"n={cfg.n} set={cfg.which} rows={len(P)} rank={P.rank}\n" + P.render(), cfg)
    return 0


def cmd_groebner(cfg: RunConfig) -> int:
    n = cfg.n
    results = []
    G = alexinv.elements(alexinv.gens_G(n)) if n >= 3 else []
    Bp = alexinv.elements(alexinv.gens_Bprime(n)) if n >= 3 else []
    c1 = modgb.is_groebner(G, stop_at_first=False)
    c2 = modgb.is_groebner(Bp, stop_at_first=False)
    results.append(("G", c1))
    results.append(("Bprime", c2))
    oracle_ok = True
    if n >= 3:
        gb = modgb.buchberger(alexinv.elements(alexinv.gens_B(n)), pair_budget=cfg.pair_budget)
        oracle_ok = modgb.initial_module(gb) == modgb.initial_module(modgb.GroebnerBasis(G))
    ok = c1.passed and c2.passed and oracle_ok
    if cfg.format == "json":
        _emit(_json({"n": n, "certificates": [_groebner_cert_dict(a, c) for a, c in results],
                     "buchberger_oracle": "PASS" if oracle_ok else "FAIL"}), cfg)
    elif cfg.format == "csv":
        rows = [["check", "status", "witness"]]
        for a, c in results:
            rows.append([f"is_groebner {a}", "PASS" if c.passed else "FAIL", f"{c.pairs_checked} pairs"])
        rows.append(["buchberger(B) initial module = ini(G)", "PASS" if oracle_ok else "FAIL", ""])
        _emit(_csv(rows), cfg)
    else:
        lines = [f"n={n}"]
        for a, c in results:
            lines.append(f"[{a}] " + c.render())
        lines.append(("PASS" if oracle_ok else "FAIL") + ": initial module of buchberger(B) equals ini(G)")
        _emit("\n".join(lines), cfg)
    return 0 if ok else 1


def _series_for(cfg: RunConfig) -> Tuple[hilbert.RationalSeries, Optional[hilbert.RationalSeries]]:
    n = cfg.n
    if cfg.module == "K":
        return (hilbert.hilb_Kn(n) if n >= 4 else hilbert.RationalSeries.zero()), hilbert.RationalSeries.term(comb(n, 4), 0, 1)
    if n < 3:
        return hilbert.RationalSeries.zero(), None
    if cfg.module == "B":
        return hilbert.hilb_fp(alexinv.psi(n), cfg.pair_budget), hilbert.closed_hilb_Bn(n)
    if cfg.module == "Bprime":
        return hilbert.hilb_fp(alexinv.presentation(n, "Bprime"), cfg.pair_budget), hilbert.closed_hilb_Bprime(n)
    raise UsageError(f"unknown module {cfg.module!r}")


def cmd_hilbert(cfg: RunConfig) -> int:
    series, closed = _series_for(cfg)
    ok = closed is None or series == closed
    exp = series.expand(cfg.terms)
    theta = hilbert.chen_from_series(cfg.n, cfg.terms + 1, series).theta if cfg.module == "B" else []
    if cfg.format == "json":
        _emit(_json({"n": cfg.n, "module": cfg.module, "series": series.to_dict(), "expansion": exp,
                     "theta": theta, "closed_form_match": ok}), cfg)
    elif cfg.format == "csv":
        _emit(_csv([["degree", "dim"]] + [[d, v] for d, v in enumerate(exp)]), cfg)
    else:
        lines = [f"Hilb({cfg.module}_{cfg.n}, t) = {series}", "expansion: " + ", ".join(map(str, exp))]
        if closed is not None:
            lines.append(("PASS" if ok else "FAIL") + f": closed form {closed}")
        _emit("\n".join(lines), cfg)
    return 0 if ok else 1


def cmd_chen(cfg: RunConfig) -> int:
    closed = hilbert.chen_closed(cfg.n, cfg.k_max)
    series = hilbert.chen_from_series(cfg.n, cfg.k_max)
    ok = closed.theta[1:] == series.theta[1:]
    if cfg.format == "json":
        _emit(_json({"n": cfg.n, "theta": closed.theta, "theta_series": series.theta, "agree": ok}), cfg)
    elif cfg.format == "csv":
        rows = [["k", "theta", "provenance"]]
        for k, v in enumerate(closed.theta, start=1):
            rows.append([k, v, "closed-form" if k == 1 else "closed-form+series"])
        _emit(_csv(rows), cfg)
    else:
        lines = [f"Chen ranks, n={cfg.n}"]
        for k, v in enumerate(closed.theta, start=1):
            lines.append(f"theta_{k} = {v}")
        lines.append(("PASS" if ok else "FAIL") + ": recurrence agrees with Hilbert series coefficients")
        _emit("\n".join(lines), cfg)
    return 0 if ok else 1


def _resonance_certs(cfg: RunConfig) -> list:
    n, which = cfg.n, cfg.check
    certs = []
    if which in ("all", "components", "isotropy"):
        certs.append(resonance.verify_components(n, seed=cfg.seed))
    if which in ("all", "components"):
        certs.append(resonance.nonresonance_check(n, seed=cfg.seed))
    if which in ("all", "bound"):
        certs.append(resonance.upper_bound_check(n))
    if which in ("all", "scheme") and 4 <= n <= CAPS["scheme"]:
        certs.extend(resonance.scheme(n).certificates)
    if which in ("all", "depth"):
        certs.append(resonance.depth_lower_bound(n, cfg.depth))
    if which == "j43":
        certs.append(resonance.j43_annihilation())
        certs.append(resonance.j43_radical())
        certs.append(resonance.ann_contained_in_J43(3))
    return certs


def cmd_resonance(cfg: RunConfig) -> int:
    if cfg.n < 3 and cfg.check != "j43":
        _emit("R_1 = {0}: no components" if cfg.format == "text" else _json({"n": cfg.n, "components": []}), cfg)
        return 0
    certs = _resonance_certs(cfg)
    comps = resonance.components(cfg.n) if cfg.n >= 3 else []
    ok = all(c.passed for c in certs)
    if cfg.format == "json":
        _emit(_json({"n": cfg.n, "seed": cfg.seed, "components": [c.to_dict() for c in comps],
                     "certificates": [c.to_dict() for c in certs]}), cfg)
    elif cfg.format == "csv":
        rows = [["check", "status", "witness"]]
        for c in certs:
            rows.extend(_cert_rows(c)[1:])
        _emit(_csv(rows), cfg)
    else:
        lines = [f"n={cfg.n}: " + ", ".join(f"{c.name} (dim {c.dim}, isotropy {c.isotropy})" for c in comps)]
        lines += [c.render() for c in certs]
        _emit("\n".join(lines), cfg)
    return 0 if ok else 1


def cmd_compare(cfg: RunConfig) -> int:
    rep = resonance.compare_report(cfg.n)
    ranks = hilbert.comparison_ranks(cfg.n, cfg.k_max if cfg.k_max >= 4 else 4)
    if cfg.format == "json":
        d = rep.to_dict()
        d["chen"] = ranks
        _emit(_json(d), cfg)
    elif cfg.format == "csv":
        rows = [["group", "kind", "indices", "dim", "isotropy"]]
        for c in resonance.components(cfg.n):
            rows.append(["upper", c.kind, "".join(map(str, c.indices)), c.dim, c.isotropy])
        for c in resonance.mccool_inventory(cfg.n):
            rows.append(["full", c.kind, "".join(map(str, c.indices)), c.dim, c.isotropy])
        _emit(_csv(rows), cfg)
    else:
        lines = [rep.render()]
        lines.append(f"  theta_4: pure braid {ranks['theta4_P']}, Pi {ranks['theta4_Pi']}, "
                     f"upper McCool {ranks['theta4_upper_mccool']}, pairwise distinct: {ranks['pairwise_distinct']}")
        lines.append(f"  theta_{ranks['k']} of the McCool group: {ranks['thetak_mccool']}")
        _emit("\n".join(lines), cfg)
    return 0


def cmd_scheme(cfg: RunConfig) -> int:
    if cfg.n < 4:
        raise UsageError("scheme needs n >= 4")
    rep = resonance.scheme(cfg.n, max_n=cfg.n if cfg.no_cap else CAPS["scheme"])
    ses = hilbert.ses_identity(cfg.n, max_n=max(cfg.n, 6), pair_budget=cfg.pair_budget)
    ok = rep.passed and ses.holds
    if cfg.format == "json":
        d = rep.to_dict()
        d["ses"] = {"holds": ses.holds, "delta": ses.delta, "hilb_B": ses.hilb_B.to_dict(),
                    "hilb_Bprime": ses.hilb_Bprime.to_dict(), "hilb_K": ses.hilb_K.to_dict()}
        _emit(_json(d), cfg)
    elif cfg.format == "csv":
        rows = [["check", "status", "witness"]]
        for c in rep.certificates:
            rows.extend(_cert_rows(c)[1:])
        rows.append(["short exact sequence", "PASS" if ses.holds else "FAIL", f"delta={ses.delta}"])
        _emit(_csv(rows), cfg)
    else:
        _emit(rep.render() + "\n" + ses.render(), cfg)
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# verify-all


def _suite_checks(n_max: int, seed: int, budget: int) -> List[Tuple[str, Callable, tuple]]:
    out: List[Tuple[str, Callable, tuple]] = []
    for n in range(3, n_max + 1):
        if n <= CAPS["groebner"]:
            out.append((f"groebner G n={n}", _chk_groebner, (n, "G")))
            out.append((f"groebner Bprime n={n}", _chk_groebner, (n, "Bprime")))
            out.append((f"buchberger oracle n={n}", _chk_oracle, (n, budget)))
            out.append((f"hilbert n={n}", _chk_hilbert, (n, budget)))
        out.append((f"presentation n={n}", _chk_presentation, (n,)))
        if n <= 6:
            out.append((f"chen n={n}", _chk_chen, (n,)))
            out.append((f"resonance n={n}", _chk_resonance, (n, seed)))
        if 4 <= n <= CAPS["scheme"]:
            out.append((f"scheme n={n}", _chk_scheme, (n,)))
            out.append((f"ses n={n}", _chk_ses, (n, budget)))
        for d in range(2, n):
            out.append((f"depth n={n} d={d}", _chk_depth, (n, d)))
    if n_max >= 4:
        out.append(("J43 radical", _chk_j43, ()))
    return out


def _chk_groebner(n, which):
    gens = alexinv.elements(alexinv.gens_G(n) if which == "G" else alexinv.gens_Bprime(n))
    c = modgb.is_groebner(gens)
    return c.passed, "" if c.passed else c.render()


def _chk_oracle(n, budget):
    gb = modgb.buchberger(alexinv.elements(alexinv.gens_B(n)), pair_budget=budget)
    ok = modgb.initial_module(gb) == modgb.initial_module(alexinv.groebner_G(n))
    return ok, ""


def _chk_hilbert(n, budget):
    h = hilbert.hilb_fp(alexinv.psi(n), budget)
    return h == hilbert.closed_hilb_Bn(n), str(h)


def _chk_presentation(n):
    P = alexinv.psi(n)
    ok = len(P) == alexinv.m_count(n) and P.block_triangular() is None and all(ok for _, ok in alexinv.certify_D(n))
    return ok, ""


def _chk_chen(n):
    a, b = hilbert.chen_closed(n, 12), hilbert.chen_from_series(n, 12)
    return a.theta[1:] == b.theta[1:], ""


def _chk_resonance(n, seed):
    certs = [resonance.verify_components(n, seed=seed), resonance.upper_bound_check(n)]
    bad = [c.render() for c in certs if not c.passed]
    return not bad, "\n".join(bad)


def _chk_scheme(n):
    rep = resonance.scheme(n)
    return rep.passed, "" if rep.passed else rep.render()


def _chk_ses(n, budget):
    s = hilbert.ses_identity(n, pair_budget=budget)
    return s.holds and s.delta == 1, s.render()


def _chk_depth(n, d):
    c = resonance.depth_lower_bound(n, d)
    return c.passed, "" if c.passed else c.render()


def _chk_j43():
    c = resonance.j43_radical()
    return c.passed, "" if c.passed else c.render()


def _run_check(item) -> SuiteEntry:
    name, fn, args = item
    t0 = time.perf_counter()
    try:
        ok, witness = fn(*args)
        status = "PASS" if ok else "FAIL"
    except modgb.BudgetExceeded as e:
        status, witness = "SKIPPED(budget)", str(e)
    return SuiteEntry(name, status, "" if status == "PASS" else witness, time.perf_counter() - t0)


def cmd_verify_all(cfg: RunConfig) -> int:
    checks = _suite_checks(cfg.n_max, cfg.seed, cfg.pair_budget)
    workers = max(1, int(os.environ.get(THREADS_ENV, "1") or 1))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            entries = list(ex.map(_run_check, checks))
    else:
        entries = [_run_check(c) for c in checks]
    suite = VerificationSuite(entries)
    rows = suite.sorted()
    if cfg.format == "json":
        _emit(_json({"n_max": cfg.n_max, "seed": cfg.seed, "status": "PASS" if suite.exit_code == 0 else "FAIL",
                     "checks": [{"name": e.name, "status": e.status, "witness": e.witness,
                                 **({"seconds": round(e.seconds, 3)} if cfg.timing else {})} for e in rows]}), cfg)
    elif cfg.format == "csv":
        _emit(_csv([["check", "status", "witness"]] + [[e.name, e.status, e.witness] for e in rows]), cfg)
    else:
        lines = []
        for e in rows:
            t = f" ({e.seconds:.2f}s)" if cfg.timing else ""
            lines.append(f"{e.status:5s} {e.name}{t}")
            if e.witness and e.status != "PASS":
                lines.extend("      " + s for s in e.witness.splitlines())
        fails = sum(e.status == "FAIL" for e in rows)
        lines.append(f"{len(rows)} checks, {fails} failed")
        _emit("\n".join(lines), cfg)
    if any(e.status.startswith("SKIPPED") for e in rows) and suite.exit_code == 0:
        return 3
    return suite.exit_code


COMMANDS = {
    "present": cmd_present,
    "groebner": cmd_groebner,
    "hilbert": cmd_hilbert,
    "chen": cmd_chen,
    "resonance": cmd_resonance,
    "compare": cmd_compare,
    "scheme": cmd_scheme,
    "verify-all": cmd_verify_all,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--seed", type=int, default=resonance.DEFAULT_SEED)
    common.add_argument("--pair-budget", type=int, default=modgb.DEFAULT_PAIR_BUDGET)
    common.add_argument("--out", default=None, help="write output to this file (UTF-8)")
    common.add_argument("--no-cap", action="store_true", help="lift the default cap on n")

    p = _Parser(prog="uppermccool", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("present", parents=[common], help="dump a labelled presentation matrix")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--which", choices=["B", "G", "Bprime"], default="B")

    s = sub.add_parser("groebner", parents=[common], help="certify the Groebner sets G and B'")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("hilbert", parents=[common], help="Hilbert series of B_n, B'_n or K_n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--module", choices=["B", "Bprime", "K"], default="B")
    s.add_argument("--terms", type=int, default=8)

    s = sub.add_parser("chen", parents=[common], help="Chen ranks table")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k-max", type=int, default=8)

    s = sub.add_parser("resonance", parents=[common], help="resonance components and certificates")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--check", choices=["all", "components", "isotropy", "bound", "scheme", "depth", "j43"], default="all")
    s.add_argument("--depth", type=int, default=2)

    s = sub.add_parser("compare", parents=[common], help="compare with the full McCool group")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k-max", type=int, default=4)

    s = sub.add_parser("scheme", parents=[common], help="resonance scheme and the short exact sequence")
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("verify-all", parents=[common], help="run the whole verification suite")
    s.add_argument("--n-max", type=int, default=5)
    s.add_argument("--timing", action="store_true")
    return p


def parse_config(argv: Optional[List[str]] = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(command=ns.command)
    for key, val in vars(ns).items():
        if key != "command" and hasattr(cfg, key):
            setattr(cfg, key, val)
    if ns.command == "verify-all":
        cfg.n = max(cfg.n_max, 2)
        if cfg.n_max < 3:
            raise UsageError("--n-max must be >= 3")
    else:
        cfg.validate()
    return cfg


def run(cfg: RunConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def main(argv: Optional[List[str]] = None) -> int:
    try:
        cfg = parse_config(argv)
        return run(cfg)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return 2
    except modgb.BudgetExceeded as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
