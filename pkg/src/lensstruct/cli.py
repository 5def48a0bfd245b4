"""Command-line front end.

Exit codes: 0 on success, 1 on invalid input, 2 when a computed answer
disagrees with its closed form.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import lclass, rho, structset, tables
from .exactalg import FgAbelianGroup

MAX_D = 64
MAX_K = 16
COMMANDS = ("structset", "cp", "sphere", "grid-verify", "rho-matrix", "indexsets", "lclass")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliConfig:
    command: str
    d: int | None = None
    k: int | None = None
    K: int | None = None
    m: int | None = None
    odd: bool = False
    format: str = "table"
    primary_decomposition: bool = False
    dmax: int = 10
    kmax: int = 5
    Kmax: int = 6
    jobs: int = 1
    s: tuple[int, ...] | None = None

    def require(self, *names: str) -> None:
        missing = [f"--{n}" for n in names if getattr(self, n) is None]
        if missing:
            raise UsageError(f"{self.command} needs {', '.join(missing)}")

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for name, lo, hi in (("d", 2, MAX_D), ("K", 1, MAX_K), ("dmax", 2, MAX_D), ("Kmax", 1, MAX_K)):
            v = getattr(self, name)
            if v is not None and not lo <= v <= hi:
                raise UsageError(f"--{name} must lie in [{lo}, {hi}], got {v}")
        for name in ("k", "kmax", "m"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise UsageError(f"--{name} must be non-negative, got {v}")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lensstruct", description="Higher structure sets of 2-power lens spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, need=("d", "k", "K")):
        for name in need:
            sp.add_argument(f"--{name}", type=int)
        sp.add_argument("--format", choices=("table", "json"), default="table")
        sp.add_argument("--primary-decomposition", action="store_true")

    sp = sub.add_parser("structset", help="structure set of L x D^2k (or D^(2k+1) with --odd)")
    common(sp)
    sp.add_argument("--odd", action="store_true")
    sp = sub.add_parser("cp", help="structure set of CP^(d-1) x D^2k")
    common(sp, ("d", "k"))
    sp.add_argument("--odd", action="store_true")
    sp = sub.add_parser("sphere", help="structure set of L x S^m")
    common(sp, ("d", "m", "K"))
    sp = sub.add_parser("grid-verify", help="compare computed and closed forms on a grid")
    sp.add_argument("--dmax", type=int, default=10)
    sp.add_argument("--kmax", type=int, default=5)
    sp.add_argument("--Kmax", type=int, default=6)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp = sub.add_parser("rho-matrix", help="the rho-hat matrix, its preimage lattice and HNF diagonal")
    common(sp)
    sp = sub.add_parser("indexsets", help="indexing sets for (d, k)")
    common(sp, ("d", "k"))
    sp = sub.add_parser("lclass", help="beta and alpha classes for splitting invariants s")
    common(sp, ("d", "k"))
    sp.add_argument("--s", type=int, nargs="*", help="values s_4i in increasing i over I4S")
    return p


def parse_config(argv: Sequence[str]) -> CliConfig:
    ns = build_parser().parse_args(list(argv))
    kw = {k: v for k, v in vars(ns).items() if v is not None}
    if "s" in kw:
        kw["s"] = tuple(kw["s"])
    cfg = CliConfig(**kw)
    cfg.validate()
    return cfg


# -- rendering ------------------------------------------------------------

def group_dict(g: FgAbelianGroup, primary: bool = False) -> dict:
    out = g.as_dict()
    if primary:
        out["primary"] = g.primary_decomposition()
    return out


def pretty(g: FgAbelianGroup, primary: bool = False) -> str:
    parts = []
    if g.free_rank:
        parts.append("ℤ" if g.free_rank == 1 else f"ℤ^{g.free_rank}")
    parts += [f"ℤ/{t}" for t in (g.primary_decomposition() if primary else g.torsion)]
    return " ⊕ ".join(parts) if parts else "0"


def report_dict(report, primary: bool = False) -> dict:
    return {
        "params": report.params(),
        "group": group_dict(report.group, primary),
        "summands": [
            {**s.as_dict(), "group": group_dict(s.group, primary)} for s in report.summands
        ],
        "verified": report.verified,
        "closed_form": group_dict(report.closed_form, primary),
    }


def emit_json(obj) -> str:
    if hasattr(obj, "summands") and hasattr(obj, "verified"):
        obj = report_dict(obj)
    return json.dumps(obj, sort_keys=False, ensure_ascii=False)


def render_table(rows: Sequence[Sequence[object]], header: Sequence[str] | None = None) -> str:
    rows = [[str(c) for c in r] for r in rows]
    if header:
        rows = [list(header)] + rows
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    lines = []
    for n, r in enumerate(rows):
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        if header and n == 0:
            lines.append("  ".join("─" * w for w in widths))
    return "\n".join(lines)


def report_table(report, primary: bool = False) -> str:
    p = report.params()
    head = " ".join(f"{k}={v}" for k, v in p.items() if v is not None)
    rows = [[s.label, "" if s.index is None else s.index, pretty(s.group, primary)] for s in report.summands]
    body = render_table(rows, ("summand", "i", "group"))
    return "\n".join([
        f"{report.kind}  {head}",
        body,
        f"computed:    {pretty(report.group, primary)}",
        f"closed form: {pretty(report.closed_form, primary)}",
        f"verified:    {'yes' if report.verified else 'NO'}",
    ])


# -- commands -------------------------------------------------------------

def _report_output(cfg: CliConfig, report) -> tuple[int, str]:
    if cfg.format == "json":
        text = json.dumps(report_dict(report, cfg.primary_decomposition), ensure_ascii=False)
    else:
        text = report_table(report, cfg.primary_decomposition)
    return (0 if report.verified else 2), text


def cmd_structset(cfg: CliConfig):
    cfg.require("d", "k", "K")
    if cfg.odd:
        return _report_output(cfg, structset.structure_set_lens_odd(cfg.d, cfg.k, cfg.K))
    if cfg.k < 1:
        raise UsageError("--k must be >= 1 for even disks")
    return _report_output(cfg, structset.structure_set_lens_even(cfg.d, cfg.k, cfg.K))


def cmd_cp(cfg: CliConfig):
    cfg.require("d", "k")
    if not cfg.odd and cfg.k < 1:
        raise UsageError("--k must be >= 1 for even disks")
    return _report_output(cfg, structset.structure_set_cp(cfg.d, cfg.k, cfg.odd))


def cmd_sphere(cfg: CliConfig):
    cfg.require("d", "m", "K")
    if cfg.m < 3 or (cfg.m % 2 == 0 and cfg.m < 4):
        raise UsageError("--m must be >= 4 if even and >= 3 if odd")
    return _report_output(cfg, structset.corollary_lens_times_sphere(cfg.d, cfg.m, cfg.K))


def _grid_point(args: tuple[str, int, int, int]) -> tuple[str, int, int, int, bool, str, str]:
    kind, d, k, K = args
    if kind == "even":
        r = structset.structure_set_lens_even(d, k, K)
    else:
        r = structset.structure_set_lens_odd(d, k, K)
    return kind, d, k, K, r.verified, str(r.group), str(r.closed_form)


def grid_points(dmax: int, kmax: int, Kmax: int) -> list[tuple[str, int, int, int]]:
    pts = [("even", d, k, K) for d in range(2, dmax + 1) for k in range(1, kmax + 1) for K in range(1, Kmax + 1)]
    pts += [("odd", d, k, 1) for d in range(2, dmax + 1) for k in range(0, kmax + 1)]
    return pts


def run_grid(dmax: int, kmax: int, Kmax: int, jobs: int = 1) -> list[tuple]:
    pts = grid_points(dmax, kmax, Kmax)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_grid_point, pts, chunksize=8))
    else:
        results = [_grid_point(p) for p in pts]
    return sorted(results, key=lambda r: (r[0], r[1], r[2], r[3]))


def cmd_grid(cfg: CliConfig):
    results = run_grid(cfg.dmax, cfg.kmax, cfg.Kmax, cfg.jobs)
    bad = [r for r in results if not r[4]]
    if cfg.format == "json":
        text = json.dumps({
            "params": {"dmax": cfg.dmax, "kmax": cfg.kmax, "Kmax": cfg.Kmax},
            "points": len(results),
            "mismatches": [
                {"disk": r[0], "d": r[1], "k": r[2], "K": r[3], "computed": r[5], "closed_form": r[6]}
                for r in bad
            ],
            "verified": not bad,
        })
    else:
        summary = []
        for kind in ("even", "odd"):
            rs = [r for r in results if r[0] == kind]
            summary.append([kind, len(rs), sum(r[4] for r in rs), sum(not r[4] for r in rs)])
        text = render_table(summary, ("disk", "points", "match", "mismatch"))
        if bad:
            text += "\n\n" + render_table(
                [[r[0], r[1], r[2], r[3], r[5], r[6]] for r in bad],
                ("disk", "d", "k", "K", "computed", "closed form"),
            )
    return (0 if not bad else 2), text


def cmd_rho_matrix(cfg: CliConfig):
    cfg.require("d", "k", "K")
    d, k, K = cfg.d, cfg.k, cfg.K
    rh = rho.build_rhohat(d, k, K)
    red = rho.build_redmap(d, k, K)
    A = rho.compute_AK(d, k, K)
    ok, info = rho.verify_BK_structure(d, k, K, A)
    M = rh.matrix()
    data = {
        "params": {"d": d, "k": k, "K": K, "m": 2 * k},
        "a": rh.a,
        "case": rh.case,
        "sign": rh.sign,
        "matrix": [[str(x) for x in row] for row in M],
        "A_basis": [list(b) for b in A.basis],
        "hnf_diagonal": info["diagonal"],
        "expected_diagonal": info["expected"],
        "red": {str(j): list(ns) for j, ns in sorted(red.terms.items())},
        "verified": ok,
    }
    if cfg.format == "json":
        return (0 if ok else 2), json.dumps(data)
    lines = [f"rho-hat  d={d} k={k} K={K}  case ({rh.case})  a={rh.a}  sign={rh.sign:+d}"]
    lines.append(render_table([[f"chi^{i}"] + row for i, row in enumerate(data["matrix"])],
                              ["coord"] + [f"x^{n}" for n in range(rh.size)]))
    lines.append("A basis (columns): " + "; ".join(str(list(b)) for b in A.basis))
    lines.append(f"HNF diagonal by degree: {info['diagonal']}  expected {info['expected']}")
    lines.append("red: " + ", ".join(
        f"t_{4 * j} = " + (" + ".join(f"q_{n}" for n in ns) or "0") for j, ns in sorted(red.terms.items())))
    lines.append(f"verified: {'yes' if ok else 'NO'}")
    return (0 if ok else 2), "\n".join(lines)


def cmd_indexsets(cfg: CliConfig):
    cfg.require("d", "k")
    d, k = cfg.d, cfg.k
    sets: dict[str, list[int]] = {}
    if k >= 1:
        sets.update({
            "I4N": list(tables.index_I4N(d, k)),
            "I4S": list(tables.index_I4S(d, k)),
            "I2N": list(tables.index_I2N(d, k)),
            "I2S": list(tables.index_I2S(d, k)),
            "J4N": list(tables.index_J4N(d, k)),
            "J2N": list(tables.index_J2N(d, k)),
            "J4tN": list(tables.index_J4tN(d, k)),
            "J2tN": list(tables.index_J2tN(d, k)),
            "rJ4tN": list(tables.index_rJ4tN(d, k)),
            "rJ2tN": list(tables.index_rJ2tN(d, k)),
        })
    sets["J2N_odd"] = list(tables.index_J2N_odd(d, k))
    sets["J2tN_odd"] = list(tables.index_J2tN_odd(d, k))
    if cfg.format == "json":
        return 0, json.dumps({"params": {"d": d, "k": k}, "sets": sets})
    return 0, render_table([[name, len(v), "{" + ", ".join(map(str, v)) + "}"] for name, v in sets.items()],
                           ("set", "size", "elements"))


def cmd_lclass(cfg: CliConfig):
    cfg.require("d", "k")
    d, k = cfg.d, cfg.k
    if k < 1:
        raise UsageError("--k must be >= 1")
    idx = list(tables.index_I4S(d, k))
    values = list(cfg.s) if cfg.s is not None else [0] * len(idx)
    if len(values) != len(idx):
        raise UsageError(f"--s needs {len(idx)} values for I4S = {idx}")
    s = lclass.SplittingData(d, k, dict(zip(idx, values)))
    beta = lclass.solve_beta(d, k, s)
    alpha = lclass.compute_alpha(d, k, beta)
    ok = lclass.roundtrip_splitting(d, k, s) == s
    keys = [(u, v) for v in (0, 1) for u in range(d)]
    if cfg.format == "json":
        return (0 if ok else 2), json.dumps({
            "params": {"d": d, "k": k},
            "s": {str(i): v for i, v in s.s.items()},
            "beta": {f"{u},{v}": str(beta[(u, v)]) for u, v in keys},
            "alpha": {f"{u},{v}": str(alpha[(u, v)]) for u, v in keys},
            "verified": ok,
        })
    rows = [[f"x^{u} y^{v}", beta[(u, v)], alpha[(u, v)]] for u, v in keys if (u + k * v) % 2 == 0]
    return (0 if ok else 2), "\n".join([
        "s: " + ", ".join(f"s_{4 * i}={v}" for i, v in s.s.items()),
        render_table(rows, ("monomial", "beta", "alpha")),
        f"roundtrip: {'yes' if ok else 'NO'}",
    ])


HANDLERS = {
    "structset": cmd_structset,
    "cp": cmd_cp,
    "sphere": cmd_sphere,
    "grid-verify": cmd_grid,
    "rho-matrix": cmd_rho_matrix,
    "indexsets": cmd_indexsets,
    "lclass": cmd_lclass,
}


def run(cfg: CliConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        code, text = HANDLERS[cfg.command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    print(text, file=out)
    if code == 2:
        print("error: computed answer disagrees with the closed form", file=err)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
