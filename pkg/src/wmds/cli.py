"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

from .chinta_gunnells import casselman_shalika, cs_zero, h_coefficients
from .gauss_ring import format_element
from .glue import WMDS, LambdaClassVector, TupleC
from .residue import FieldConstraintWarning, check_field
from .rootdata import RootDatumError, build_root_datum, metaplectic_structure
from .suites import SUITES, SuiteConfig, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _vec(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _complex(z: complex) -> dict:
    return {"re": round(z.real, 12) + 0.0, "im": round(z.imag, 12) + 0.0}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, help="Cartan type, e.g. A2, C2, G2 (or a letter with --rank)")
    common.add_argument("--rank", type=int, default=None)
    common.add_argument("--n", type=int, default=1, help="degree of the cover")
    common.add_argument("--out", choices=("text", "json", "tsv"), default="text")

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--q", type=int, default=None, help="size of the prime constant field")
    field.add_argument("--deg-max", type=int, default=2)

    p = argparse.ArgumentParser(prog="wmds", description="Weyl group multiple Dirichlet series over F_q(t).")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[common], help="root datum and metaplectic data")
    cs = sub.add_parser("cs", parents=[common], help="metaplectic Casselman-Shalika polynomial")
    cs.add_argument("--lam", type=_vec, default=None, help="dominant coweight, simple-coroot coordinates")
    sub.add_parser("hcoeffs", parents=[common], help="p-part coefficients H(k) as generic scalars")

    glue = sub.add_parser("glue", parents=[common, field], help="glued coefficient H(C)")
    glue.add_argument("--tuple", required=True, help="comma-separated monic polynomials, e.g. 't^2+1,t'")

    sub.add_parser("series", parents=[common, field], help="truncated series Z(x)")

    ver = sub.add_parser("verify", parents=[common, field], help="run property suites")
    ver.add_argument("suite", choices=("all", *SUITES))
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--samples", type=int, default=None, help="override the default sample count of randomized suites")
    ver.add_argument("--class", dest="cls", default=None, help="run subsum for one class only, e.g. 't:-1,0'")
    return p


def _meta(args):
    try:
        datum = build_root_datum(args.type, args.rank)
        return metaplectic_structure(datum, args.n)
    except (RootDatumError, ValueError) as exc:
        raise UsageError(str(exc))


def _need_q(args, meta) -> WMDS:
    if args.q is None:
        raise UsageError("--q is required for this command")
    try:
        check_field(args.q, args.n)
    except ValueError as exc:
        raise UsageError(str(exc))
    return WMDS(meta, args.q)


def _emit(args, payload: dict, text: str, rows: list[list]) -> None:
    if args.out == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif args.out == "tsv":
        for row in rows:
            print("\t".join(str(x) for x in row))
    else:
        print(text)


def cmd_info(args) -> int:
    meta = _meta(args)
    payload = {"datum": meta.datum.to_dict(), "metaplectic": meta.to_dict()}
    m = payload["metaplectic"]
    lines = [
        f"type: {meta.datum.cartan_type}",
        f"cartan: {payload['datum']['cartan_matrix']}",
        f"n: {meta.n}",
        f"Q_i: {m['Q']}",
        f"B_ij: {m['B']}",
        f"n_i: {m['n_i']}",
        f"lambda0 basis: {m['lambda0_basis']}",
        f"dual type: {m['dual_type']}",
        f"adjoint-dual: {str(m['dual_adjoint']).lower()}",
    ]
    rows = [[k, json.dumps(v)] for k, v in [("type", meta.datum.cartan_type), *m.items()]]
    _emit(args, payload, "\n".join(lines), rows)
    return EXIT_OK


def cmd_cs(args) -> int:
    meta = _meta(args)
    if args.lam is not None and len(args.lam) != meta.rank:
        raise UsageError(f"--lam needs {meta.rank} entries")
    try:
        poly = cs_zero(meta) if args.lam is None else casselman_shalika(meta, args.lam)
    except ValueError as exc:
        raise UsageError(str(exc))
    text = format_element(poly)
    coeffs = poly.coefficients()
    payload = {"type": meta.datum.cartan_type, "n": meta.n, "polynomial": text,
               "terms": [{"lambda": list(k), "coeff": str(coeffs[k])} for k in sorted(coeffs)]}
    rows = [[",".join(map(str, k)), str(coeffs[k])] for k in sorted(coeffs)]
    _emit(args, payload, text, rows)
    return EXIT_OK


def cmd_hcoeffs(args) -> int:
    meta = _meta(args)
    table = h_coefficients(meta)
    rows = [[",".join(map(str, k)), str(s)] for k, s in table.rows()]
    payload = {"type": meta.datum.cartan_type, "n": meta.n,
               "H": [{"k": list(k), "value": str(s)} for k, s in table.rows()]}
    _emit(args, payload, "\n".join(f"H({k}) = {s}" for k, s in rows), rows)
    return EXIT_OK


def cmd_glue(args) -> int:
    meta = _meta(args)
    w = _need_q(args, meta)
    try:
        C = TupleC.parse(args.tuple, args.q)
    except ValueError as exc:
        raise UsageError(str(exc))
    if C.rank != meta.rank:
        raise UsageError(f"--tuple needs {meta.rank} polynomials")
    g = w.glue_H(C)
    payload = {"tuple": C.to_list(), **g.to_dict()}
    payload["H"] = _complex(g.value)
    for loc in payload["local"]:
        loc["H"] = {k: round(v, 12) + 0.0 for k, v in loc["H"].items()}
    rows = [["H", payload["H"]["re"], payload["H"]["im"]], ["D", g.D, ""]]
    rows += [[f"H_{p}({','.join(map(str, k))})", round(v.real, 12) + 0.0, round(v.imag, 12) + 0.0] for p, k, v in g.factors]
    text = f"H{C} = {payload['H']['re']:+.10f} {payload['H']['im']:+.10f}i   D = {g.D}"
    _emit(args, payload, text, rows)
    return EXIT_OK


def cmd_series(args) -> int:
    meta = _meta(args)
    w = _need_q(args, meta)
    series = w.z_truncated(args.deg_max)
    payload = {"type": meta.datum.cartan_type, "n": meta.n, "q": args.q, "deg_max": args.deg_max,
               "coefficients": [{"degree": list(k), **_complex(v)} for k, v in series.items() if abs(v) > 1e-12]}
    rows = [[",".join(map(str, c["degree"])), c["re"], c["im"]] for c in payload["coefficients"]]
    lines = [f"x^({d}): {re:+.10f} {im:+.10f}i" for d, re, im in rows]
    _emit(args, payload, "\n".join(lines), rows)
    return EXIT_OK


def _run_named(job):
    name, cfg = job
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", FieldConstraintWarning)
        return run_suite(name, cfg).to_dict()


def cmd_verify(args) -> int:
    meta = _meta(args)
    if args.q is not None:
        _need_q(args, meta)
    cfg = SuiteConfig(meta.datum.cartan_type, args.n, args.q, args.deg_max, args.seed, args.samples)
    if args.cls is not None:
        if args.suite != "subsum":
            raise UsageError("--class only applies to the subsum suite")
        w = _need_q(args, meta)
        try:
            cls = LambdaClassVector.parse(meta, args.cls, args.q)
        except ValueError as exc:
            raise UsageError(str(exc))
        rep = w.verify_subsum_identity(cls, args.deg_max)
        rep.details.pop("lhs", None)
        reports = [rep.to_dict()]
    else:
        names = list(SUITES) if args.suite == "all" else [args.suite]
        jobs = [(nm, cfg) for nm in names]
        threads = int(os.environ.get("WMDS_THREADS", "1") or 1)
        if threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                reports = list(pool.map(_run_named, jobs))
        else:
            reports = [_run_named(j) for j in jobs]
        for r in reports:
            r["details"].pop("lhs", None)
    ok = all(r["passed"] for r in reports)
    payload = {"passed": ok, "suites": reports}
    rows = [[r["name"], "PASS" if r["passed"] else "FAIL", r["checked"], r["details"].get("skipped", "")] for r in reports]
    lines = [f"{r[0]:<12} {r[1]}  checked={r[2]}" + (f"  skipped: {r[3]}" if r[3] else "") for r in rows]
    lines += [f"  {r['name']} failure: {f}" for r in reports for f in r["failures"][:3]]
    _emit(args, payload, "\n".join(lines), rows)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"info": cmd_info, "cs": cmd_cs, "hcoeffs": cmd_hcoeffs, "glue": cmd_glue, "series": cmd_series, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    with warnings.catch_warnings():
        warnings.simplefilter("once", FieldConstraintWarning)
        warnings.showwarning = lambda msg, *a, **k: print(f"wmds: warning: {msg}", file=sys.stderr)
        try:
            return COMMANDS[args.command](args)
        except UsageError as exc:
            parser.print_usage(sys.stderr)
            print(f"wmds: error: {exc}", file=sys.stderr)
            return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
