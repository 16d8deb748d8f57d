"""Command-line front end: ``unipotent-strata <subcommand> [--format json|csv|pretty]``.

Exit status is 0 on success, 1 on a validation error and 2 when a
verification report fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import coxeter, counting, hc, stratum, symbols
from .counting import CaseSpec, CountingError, FormSpace, Kind
from .symbols import Symbol, SymbolError

EXIT_OK, EXIT_INVALID, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(message)


@dataclass
class Output:
    data: object
    header: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)
    text: str = ""
    status: int = EXIT_OK

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2, sort_keys=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(self.header)
            w.writerows(self.rows)
            return buf.getvalue()
        return self.text if self.text.endswith("\n") else self.text + "\n"


# -- helpers --------------------------------------------------------------------------


def _symbol_arg(text: str) -> Symbol:
    return Symbol.from_json(text)


def _nonneg(name: str, v: int) -> int:
    if v < 0:
        raise UsageError(f"{name} must be non-negative (got {v})")
    return v


def _case(args) -> CaseSpec:
    return CaseSpec.of(args.n, args.p, args.case)


def _q0(v: int) -> int:
    if v < 2:
        raise UsageError(f"--at must be an integer >= 2 (got {v})")
    if not counting.is_odd_prime_power(v):
        print(f"warning: q0={v} is not a power of an odd prime", file=sys.stderr)
    return v


def _frac(x) -> str:
    return str(x)


def _ms_text(ms: hc.SymbolMultiset) -> str:
    if not ms:
        return "0"
    return " + ".join(s.short() if m == 1 else f"{m}*{s.short()}" for s, m in ms.items())


# -- commands ----------------------------------------------------------------------------


def cmd_symbols(args) -> Output:
    syms = symbols.enumerate_symbols(_nonneg("--rank", args.rank))
    rows = [[json.dumps(list(s.X)), json.dumps(list(s.Y)), s.defect, s.rank] for s in syms]
    return Output(
        [s.to_json() for s in syms],
        ["X", "Y", "defect", "rank"],
        rows,
        "\n".join(s.short() for s in syms),
    )


def cmd_degree(args) -> Output:
    s = _symbol_arg(args.symbol)
    poly = symbols.degree(s)
    data = {"symbol": s.to_json(), "degree": poly.to_json()}
    header, row = ["symbol", "degree"], [s.short(), str(poly)]
    text = str(poly)
    if args.at is not None:
        q0 = _q0(args.at)
        value = poly(q0)
        data.update({"at": q0, "value": _frac(value)})
        header += ["at", "value"]
        row += [q0, _frac(value)]
        text = _frac(value)
    return Output(data, header, [row], text)


def _hc_output(s: Symbol, result: hc.SymbolMultiset, by: int, op: str) -> Output:
    return Output(
        {"symbol": s.to_json(), op: by, "result": result.to_json()},
        ["X", "Y", "mult"],
        [[json.dumps(list(t.X)), json.dumps(list(t.Y)), m] for t, m in result.items()],
        "\n".join(t.short() if m == 1 else f"{m} x {t.short()}" for t, m in result.items()) or "0",
    )


def cmd_induce(args) -> Output:
    s = _symbol_arg(args.symbol)
    return _hc_output(s, hc.induce(s, _nonneg("--by", args.by)), args.by, "by")


def cmd_restrict(args) -> Output:
    s = _symbol_arg(args.symbol)
    by = _nonneg("--by", args.by)
    if by > s.rank:
        raise UsageError(f"--by {by} exceeds the rank {s.rank} of the symbol")
    return _hc_output(s, hc.restrict(s, by), by, "by")


def _verify_one(k: int) -> dict:
    S, T = coxeter.coxeter_symbols(k)
    deg_bad = [f"S{i}" for i in range(k + 1) if symbols.degree(S[i]) != coxeter.lusztig_degree(k, "S", i)]
    deg_bad += [f"T{j}" for j in range(k - 1) if symbols.degree(T[j]) != coxeter.lusztig_degree(k, "T", j)]
    rec = coxeter.verify_restriction_recursion(k).to_json() if k >= 1 else None
    passed = not deg_bad and (rec is None or rec["passed"])
    return {"k": k, "passed": passed, "degree_mismatches": deg_bad, "recursion": rec}


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def cmd_coxeter(args) -> Output:
    k = _nonneg("--k", args.k)
    rep = coxeter.coxeter_graded(k)
    if args.verify:
        ks = list(range(k + 1)) if args.sweep else [k]
        reports = _map(_verify_one, ks, args.jobs)
        ok = all(r["passed"] for r in reports)
        return Output(
            {"reports": reports, "passed": ok},
            ["k", "passed", "degree_mismatches", "recursion_mismatches"],
            [
                [r["k"], str(r["passed"]).lower(), " ".join(r["degree_mismatches"]),
                 len(r["recursion"]["mismatches"]) if r["recursion"] else 0]
                for r in reports
            ],
            "\n".join(f"k={r['k']}: {'pass' if r['passed'] else 'FAIL'}" for r in reports),
            EXIT_OK if ok else EXIT_FAILED,
        )
    rows, lines = [], []
    for d in rep.degrees():
        for lab in sorted(rep.by_degree[d]):
            ms = rep.by_degree[d][lab]
            for s in ms:
                rows.append([d, str(lab), s.short()])
            lines.append(f"H^{d} [{lab.pretty()}]: {_ms_text(ms)}")
    return Output(rep.to_json(), ["degree", "eigenvalue", "symbol"], rows, "\n".join(lines))


def cmd_stratum_page(args) -> Output:
    page = stratum.e1_page(_nonneg("--theta", args.theta))
    rows, lines = [], []
    for (a, b), cells in sorted(page.cells.items()):
        for lab in sorted(cells):
            for s in cells[lab]:
                rows.append([a, b, str(lab), s.short()])
            lines.append(f"E1^({a},{b}) [{lab.pretty()}]: {_ms_text(cells[lab])}")
    return Output(page.to_json(), ["a", "b", "eigenvalue", "symbol"], rows, "\n".join(lines))


def cmd_stratum_bounds(args) -> Output:
    report = stratum.survival_bounds(_nonneg("--theta", args.theta), sharpen=not args.no_sharpen)
    rows, lines = [], []
    for (k, lab), c in sorted(report.cells.items(), key=lambda it: (it[0][0], it[0][1].sort_key)):
        rows.append([k, str(lab), c.a, c.b, _ms_text(c.guaranteed), _ms_text(c.ambiguous),
                     str(c.exact).lower(), str(c.beyond_theorem).lower()])
        flag = " (beyond theorem)" if c.beyond_theorem else ""
        state = "exact" if c.exact else f"ambiguous: {_ms_text(c.ambiguous)}"
        lines.append(f"H^{k} [{lab.pretty()}]: {_ms_text(c.guaranteed)}; {state}{flag}")
    return Output(
        report.to_json(),
        ["k", "eigenvalue", "a", "b", "guaranteed", "ambiguous", "exact", "beyond_theorem"],
        rows,
        "\n".join(lines),
    )


def cmd_weight_table(args) -> Output:
    table = stratum.weight_table(_nonneg("--theta", args.theta))
    rows = [[r.k, str(r.label), str(r.min_dim), str(r.max_dim), str(r.exact).lower()] for r in table]
    text = "\n".join(
        f"H^{r.k} [{r.label.pretty()}]: "
        + (str(r.min_dim) if r.exact else f"between {r.min_dim} and {r.max_dim}")
        for r in table
    )
    return Output([r.to_json() for r in table], ["k", "eigenvalue", "min_dim", "max_dim", "exact"], rows, text)


def cmd_count(args) -> Output:
    space = FormSpace(Kind(args.kind), args.dim)
    if not counting.is_odd_prime(args.p):
        raise UsageError(f"--p must be an odd prime (got {args.p})")
    formula = counting.count_isotropic(space, args.r, args.p)
    data = {"kind": space.kind.value, "d": space.d, "r": args.r, "p": args.p, "formula": formula}
    brute = None
    if args.brute:
        g = counting.gram_matrix(space.kind, space.d, args.p)
        brute = counting.brute_force_isotropic(g, args.r, args.p, override=args.override)
        data.update({"brute_force": brute, "match": brute == formula})
    row = [space.kind.value, space.d, args.r, args.p, formula,
           "" if brute is None else brute, "" if brute is None else str(brute == formula).lower()]
    text = str(formula) if brute is None else f"{formula} (brute force {brute})"
    status = EXIT_FAILED if brute is not None and brute != formula else EXIT_OK
    return Output(data, ["kind", "d", "r", "p", "formula", "brute_force", "match"], [row], text, status)


def cmd_incidence(args) -> Output:
    case = _case(args)
    v = counting.strata_incidence(case, args.theta, args.theta_prime, args.direction)
    data = {"n": case.n, "case": case.split_case.value, "p": case.p, "theta": args.theta,
            "theta_prime": args.theta_prime, "direction": args.direction, "count": v}
    return Output(data, list(data), [list(data.values())], str(v))


def cmd_nu(args) -> Output:
    case = _case(args)
    v = counting.nu(case)
    data = {"n": case.n, "case": case.split_case.value, "p": case.p, "nu": v}
    return Output(data, list(data), [list(data.values())], str(v))


def cmd_rz_page(args) -> Output:
    page = counting.rz_first_page(_case(args))
    rows, lines = [], []
    for row in page["rows"]:
        cells = []
        for c in row["cells"]:
            t = c["term"]
            if t is None:
                rows.append([row["b"], c["a"], 0, "", ""])
                cells.append("0")
            else:
                rows.append([row["b"], c["a"], t["multiplicity"], t["inducing_theta"], t["frobenius_scalar"]])
                cells.append(f"(c-Ind J{t['inducing_theta']})^{t['multiplicity']}[{t['frobenius_scalar']}]")
        lines.append(f"b={row['b']}: " + "  ".join(cells))
    return Output(page, ["b", "a", "multiplicity", "inducing_theta", "frobenius_scalar"], rows, "\n".join(lines))


# -- parser ----------------------------------------------------------------------------------


def _add_case(p):
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--case", choices=[c.value for c in counting.SplitCase],
                   help="required for even n")
    p.add_argument("--p", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], default="pretty")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")

    parser = _Parser(prog="unipotent-strata", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("symbols", cmd_symbols, "all symbols of a given rank")
    p.add_argument("--rank", type=int, required=True)

    p = add("degree", cmd_degree, "generic degree of a symbol")
    p.add_argument("--symbol", required=True, help='JSON such as {"X":[0,1],"Y":[1]}')
    p.add_argument("--at", type=int)

    for name, fn in (("induce", cmd_induce), ("restrict", cmd_restrict)):
        p = add(name, fn, f"Harish-Chandra {name}")
        p.add_argument("--symbol", required=True)
        p.add_argument("--by", type=int, required=True)

    p = add("coxeter", cmd_coxeter, "cohomology of the Coxeter variety X^k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--verify", action="store_true", help="check degrees and the restriction recursion")
    p.add_argument("--sweep", action="store_true", help="with --verify, check every k' <= k")

    p = add("stratum-page", cmd_stratum_page, "first page of the spectral sequence for S_θ")
    p.add_argument("--theta", type=int, required=True)

    p = add("stratum-bounds", cmd_stratum_bounds, "survival bounds for H_c(S_θ)")
    p.add_argument("--theta", type=int, required=True)
    p.add_argument("--no-sharpen", action="store_true")

    p = add("weight-table", cmd_weight_table, "eigenspace dimension bounds for H_c(S_θ)")
    p.add_argument("--theta", type=int, required=True)

    p = add("count", cmd_count, "totally isotropic subspaces")
    p.add_argument("--kind", choices=[k.value for k in Kind], required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--brute", action="store_true")
    p.add_argument("--override", action="store_true", help="lift the brute-force size guard")

    p = add("incidence", cmd_incidence, "vertex lattices of one type around another")
    _add_case(p)
    p.add_argument("--theta", type=int, required=True)
    p.add_argument("--theta-prime", type=int, required=True)
    p.add_argument("--direction", choices=["below", "above"], required=True)

    p = add("nu", cmd_nu, "multiplicity ν")
    _add_case(p)

    p = add("rz-page", cmd_rz_page, "first page for θ_max = 1")
    _add_case(p)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        out = args.func(args)
    except (UsageError, SymbolError, CountingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(out.render(args.format))
    return out.status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
