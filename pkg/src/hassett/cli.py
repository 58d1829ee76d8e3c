"""Command-line front end: ``hassett <command> ...``.

Exit codes: 0 success, 1 domain or I/O error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from typing import Optional, Sequence

from . import __version__, atlas, catalog, intlat, kernels
from .divisors import DEFAULT_FANO_CAP, classify
from .errors import DegenerateError, HassettError, NotApplicableError, RankError
from .fm import fm_partner_count
from .towers import enumerate_towers

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {v}")
    return v


def _n_max(text: str) -> int:
    v = _positive_int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"n_max must be >= 2, got {v}")
    return v


def _bool(text: str) -> bool:
    t = text.lower()
    if t in ("true", "1", "yes"):
        return True
    if t in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def _emit(payload, as_json: bool, text: str) -> None:
    if as_json:
        sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _fmt_report(r: dict) -> str:
    b, f1 = r["bulles"], r["fano1"]
    lines = [
        f"d            {r['d']}",
        f"is-divisor   {str(r['is_divisor']).lower()}",
        f"star         {str(r['star']).lower()}"
        + (f"  ({r['star_failure']})" if r["star_failure"] else ""),
        "bulles       " + ("absent" if b is None else f"f={b['f']} g={b['g']} n={b['n']}"),
        "fano1        " + ("absent" if f1 is None else f"n={f1['n']} a={f1['a']}"),
        f"fano2        {str(r['fano2']).lower()}",
        "fm-count     " + ("n/a" if r["fm_count"] is None else str(r["fm_count"])),
    ]
    return "\n".join(lines)


def cmd_check(args) -> int:
    report = classify(args.d, args.cap).to_dict()
    _emit(report, args.json, _fmt_report(report))
    return EXIT_OK


def fm_payload(d: int) -> dict:
    c = fm_partner_count(d)
    return {"d": c.d, "a": c.a, "k": c.k, "m": c.m, "count": c.count}


def cmd_count_fm(args) -> int:
    p = fm_payload(args.d)
    _emit(p, args.json, "\n".join(f"{k:<6} {v}" for k, v in p.items()))
    return EXIT_OK


def towers_payload(n_max: int) -> list[dict]:
    return [e.to_dict() for e in enumerate_towers(n_max)]


def cmd_towers(args) -> int:
    rows = towers_payload(args.n_max)
    head = f"{'n':>6} {'g':>8} {'6d':>8} {'d':>7} {'g_prime':>8} {'m':>6}  pair"
    body = [
        f"{e['n']:>6} {e['g']:>8} {e['deg6d']:>8} {e['d']:>7} {e['gprime']:>8} {e['m']:>6}  "
        f"({e['divisor_pair'][0]}, {e['divisor_pair'][1]})"
        for e in rows
    ]
    _emit(rows, args.json, "\n".join([head, *body]))
    return EXIT_OK


def _parse_matrix(text: str, what: str = "matrix") -> list[list[int]]:
    try:
        m = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} is not valid JSON: {exc}") from None
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise UsageError(f"{what} must be a JSON list of rows")
    if any(not isinstance(x, int) or isinstance(x, bool) for r in m for x in r):
        raise UsageError(f"{what} entries must be integers")
    return m


def _lattice_input(args) -> intlat.GramMatrix:
    if args.named:
        name, *rest = args.named
        try:
            params = [int(x) for x in rest]
        except ValueError:
            raise UsageError(f"named lattice parameters must be integers: {rest}") from None
        try:
            return catalog.named(name, *params)
        except HassettError as exc:
            raise UsageError(str(exc)) from None
    if args.matrix is None:
        raise UsageError("give a matrix as JSON rows or --named NAME")
    try:
        return intlat.GramMatrix(_parse_matrix(args.matrix))
    except HassettError as exc:
        raise UsageError(f"malformed matrix: {exc}") from None


def _compact_group(factors: Sequence[int]) -> str:
    if not factors:
        return "0"
    counts = Counter(factors)
    return " x ".join(f"{f}^{e}" if e > 1 else str(f) for f, e in sorted(counts.items()))


def lattice_payload(op: str, gram: intlat.GramMatrix, generators=None) -> dict:
    out: dict = {"op": op, "gram": gram.tolist()}
    if op == "gram":
        out["result"] = gram.tolist()
    elif op == "det":
        out["result"] = intlat.determinant(gram)
    elif op == "rank":
        out["result"] = intlat.matrix_rank(gram.entries, gram.dim)
    elif op == "definite":
        out["result"] = intlat.is_positive_definite(gram)
    elif op == "snf":
        s = intlat.smith_normal_form(gram.entries, gram.dim)
        out["result"] = {
            "elementary_divisors": list(s.elementary_divisors),
            "d": [list(r) for r in s.d],
            "left": [list(r) for r in s.left],
            "right": [list(r) for r in s.right],
        }
    elif op == "disc-group":
        out["result"] = list(intlat.discriminant_group(gram).invariant_factors)
    elif op in ("complement", "primitive", "sub-gram"):
        spec = intlat.SublatticeSpec(gram, generators or [])
        out["generators"] = [list(r) for r in spec.generators]
        if op == "complement":
            out["result"] = [list(r) for r in intlat.orthogonal_complement(spec)]
        elif op == "primitive":
            out["result"] = intlat.is_primitive(spec)
        else:
            out["result"] = intlat.gram_from_generators(spec).tolist()
    else:
        raise UsageError(f"unknown lattice operation {op!r}")
    return out


def _lattice_text(p: dict) -> str:
    r = p["result"]
    op = p["op"]
    if op == "disc-group":
        return _compact_group(r)
    if op == "snf":
        return "elementary divisors: " + " ".join(str(x) for x in r["elementary_divisors"])
    if isinstance(r, bool):
        return str(r).lower()
    if isinstance(r, list):
        return "\n".join(" ".join(str(x) for x in row) for row in r) if r else "(empty)"
    return str(r)


def cmd_lattice(args) -> int:
    gram = _lattice_input(args)
    gens = None
    if args.op in ("complement", "primitive", "sub-gram"):
        if args.generators is None:
            raise UsageError(f"lattice {args.op} needs --generators")
        gens = _parse_matrix(args.generators, "generators")
        try:
            intlat.SublatticeSpec(gram, gens)
        except HassettError as exc:
            raise UsageError(f"malformed generators: {exc}") from None
    p = lattice_payload(args.op, gram, gens)
    _emit(p, args.json, _lattice_text(p))
    return EXIT_OK


def _filters(args) -> dict:
    f = {}
    for key in ("star", "bulles", "fano1", "fano2", "fm_count", "d_min", "d_max"):
        v = getattr(args, key, None)
        if v is not None:
            f[key] = v
    return f


def cmd_atlas(args) -> int:
    if args.action == "build":
        if args.d_min > args.d_max:
            raise UsageError("d_min must not exceed d_max")
        table = atlas.build_atlas(args.d_min, args.d_max, atlas.Caps(args.cap), jobs=args.jobs)
        fmt = args.format or ("json" if args.output and args.output.endswith(".json") else "csv")
        data = atlas.export(table, fmt)
    else:
        table = atlas.load(args.path)
        if args.action == "query":
            table = atlas.AtlasTable(table.d_min, table.d_max, atlas.query(table, _filters(args)), table.meta)
        fmt = args.format or "csv"
        data = atlas.export(table, fmt)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
        sys.stderr.write(f"wrote {len(table.rows)} rows to {args.output}\n")
    else:
        sys.stdout.write(data.decode())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hassett", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({kernels.backend()})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify a discriminant d")
    p.add_argument("d", type=_positive_int)
    p.add_argument("--cap", type=_positive_int, default=DEFAULT_FANO_CAP,
                   help="largest n tried for the first Fano condition (default: %(default)s)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count-fm", help="Fourier-Mukai partner count for very general X in C_d")
    p.add_argument("d", type=_positive_int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_count_fm)

    p = sub.add_parser("towers", help="order-3 quotient genus towers for 2 <= n <= n_max")
    p.add_argument("n_max", type=_n_max)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_towers)

    p = sub.add_parser("lattice", help="integer lattice invariants")
    p.add_argument("op", choices=["gram", "det", "rank", "definite", "snf", "disc-group",
                                  "complement", "primitive", "sub-gram"])
    p.add_argument("matrix", nargs="?", help="Gram matrix as JSON rows, e.g. '[[3,3],[3,7]]'")
    p.add_argument("--named", nargs="+", metavar="NAME",
                   help=f"named lattice plus integer parameters; one of {', '.join(catalog.NAMES)}")
    p.add_argument("--generators", help="generator rows as JSON (complement, primitive, sub-gram)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("atlas", help="build, query or convert divisor tables")
    asub = p.add_subparsers(dest="action", required=True)
    b = asub.add_parser("build")
    b.add_argument("d_min", type=_positive_int)
    b.add_argument("d_max", type=_positive_int)
    b.add_argument("-o", "--output")
    b.add_argument("--format", choices=["csv", "json"])
    b.add_argument("--jobs", type=_positive_int, default=1)
    b.add_argument("--cap", type=_positive_int, default=DEFAULT_FANO_CAP,
                   help="largest n tried for the first Fano condition (default: %(default)s)")
    q = asub.add_parser("query")
    q.add_argument("path")
    for flag in ("star", "bulles", "fano1", "fano2"):
        q.add_argument(f"--{flag}", type=_bool, metavar="BOOL")
    q.add_argument("--fm-count", dest="fm_count", type=int)
    q.add_argument("--min", dest="d_min", type=int)
    q.add_argument("--max", dest="d_max", type=int)
    q.add_argument("-o", "--output")
    q.add_argument("--format", choices=["csv", "json"])
    e = asub.add_parser("export")
    e.add_argument("path")
    e.add_argument("--format", choices=["csv", "json"], required=True)
    e.add_argument("-o", "--output")
    for sp in (b, q, e):
        sp.set_defaults(func=cmd_atlas)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"hassett: usage error: {exc}\n")
        return EXIT_USAGE
    except NotApplicableError as exc:
        sys.stderr.write(f"hassett: not applicable: {exc.hypothesis}\n")
        return EXIT_DOMAIN
    except (DegenerateError, RankError, HassettError) as exc:
        sys.stderr.write(f"hassett: {exc.code}: {exc}\n")
        return EXIT_DOMAIN
    except OSError as exc:
        sys.stderr.write(f"hassett: I/O error: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
