"""Command-line entry point: analyze, verify, scan, catalog."""

from __future__ import annotations

import argparse
import csv
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from pathlib import Path

from . import catalog as C
from . import metrics as M
from . import oracle as O
from .boolfun import BooleanFunction, BooleanFunctionError, load_truth_table
from .gf2n import FieldError, parse_modulus
from .report import analyze
from .vectorial import (
    VectorialFunction,
    VectorialFunctionError,
    load_lut,
    parse_power_spec,
    parse_univariate_spec,
)

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_MISMATCH = 4

SCALAR_CAP = 16
VECTORIAL_CAP = 10

VECTORIAL_THEOREMS = ("perm-s1", "apn-perm-s1sq", "apn-s2", "apn-per-direction", "fsq", "quad-apn-s1")
SCALAR_THEOREMS = ("balanced-s1", "bent-s2", "s1-closed-form", "s1-fourier", "s2-walsh", "s2-autocorrelation")


class CliError(Exception):
    def __init__(self, msg: str, code: int):
        super().__init__(msg)
        self.code = code


PARSE_ERRORS = (BooleanFunctionError, VectorialFunctionError, FieldError, C.CatalogError, OSError)


def _add_input_args(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--tt", metavar="BITS|FILE", help="truth table bits or a truth-table file")
    g.add_argument("--lut", metavar="FILE", help="LUT file")
    g.add_argument("--power", metavar="SPEC", help="n=<k>,d=<int>[,poly=<mask>]")
    g.add_argument("--univariate", metavar="SPEC", help="n=<k>,coeffs=<c0,c1,...>[,poly=<mask>]")
    g.add_argument("--catalog", metavar="NAME", help="catalog name (see `catalog list`)")
    p.add_argument("--n", type=int, help="dimension for --catalog")
    p.add_argument("--k", type=int, help="family parameter for --catalog")
    p.add_argument("--seed", type=int, help="seed for random catalog entries")
    p.add_argument("--poly", metavar="MASK", help="irreducible modulus override, e.g. 0b1011 or 0xB")
    p.add_argument("--allow-large", action="store_true", help="lift the default size caps")


def load_input(args) -> tuple[BooleanFunction | VectorialFunction, dict]:
    poly = parse_modulus(args.poly) if getattr(args, "poly", None) else None
    try:
        if args.tt is not None:
            if set(args.tt) <= {"0", "1"}:
                return BooleanFunction.from_bits(args.tt), {"source": "tt", "bits": args.tt}
            return load_truth_table(args.tt), {"source": "tt", "file": args.tt}
        if args.lut is not None:
            return load_lut(args.lut), {"source": "lut", "file": args.lut}
        if args.power is not None:
            F = parse_power_spec(args.power, poly)
            return F, {"source": "power", "spec": args.power, "modulus": F.provenance["modulus"]}
        if args.univariate is not None:
            F = parse_univariate_spec(args.univariate, poly)
            return F, {"source": "univariate", "spec": args.univariate, "modulus": F.provenance["modulus"]}
        entry, func = C.get(args.catalog, n=args.n, k=args.k, seed=args.seed, modulus=poly)
        prov = {"source": "catalog", "name": args.catalog}
        prov.update({k: v for k, v in entry.parameters.items() if k not in ("name",) and v is not None})
        if isinstance(func, VectorialFunction) and "modulus" in func.provenance:
            prov["modulus"] = func.provenance["modulus"]
        return func, prov
    except PARSE_ERRORS as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def input_from_provenance(prov: dict):
    """Rebuild the analyzed function from a report's input section."""
    ns = argparse.Namespace(tt=None, lut=None, power=None, univariate=None, catalog=None,
                            n=None, k=None, seed=None, poly=None)
    src = prov.get("source")
    if src == "tt":
        ns.tt = prov.get("bits") or prov.get("file")
    elif src == "lut":
        ns.lut = prov["file"]
    elif src in ("power", "univariate"):
        setattr(ns, src, prov["spec"])
        ns.poly = hex(prov["modulus"])
    elif src == "catalog":
        ns.catalog = prov["name"]
        ns.n, ns.k, ns.seed = prov.get("n"), prov.get("k"), prov.get("seed")
        if "modulus" in prov:
            ns.poly = hex(prov["modulus"])
    else:
        raise CliError(f"unknown input source {src!r}", EXIT_PARSE)
    return load_input(ns)[0]


def _cost_estimate(n: int, vectorial: bool) -> str:
    ops = (1 << (3 * n)) if vectorial else n * (1 << n)
    return f"estimated cost ~{ops:.2e} elementary operations for n={n}"


def enforce_cap(func, allow_large: bool):
    vec = isinstance(func, VectorialFunction)
    cap = VECTORIAL_CAP if vec else SCALAR_CAP
    if func.n > cap:
        if not allow_large:
            kind = "vectorial" if vec else "scalar"
            raise CliError(f"n={func.n} exceeds the {kind} cap {cap}; pass --allow-large", EXIT_CAP)
        print(_cost_estimate(func.n, vec), file=sys.stderr)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    func, prov = load_input(args)
    enforce_cap(func, args.allow_large)
    try:
        rep = analyze(func, prov, verify=args.oracle)
    except M.OracleMismatch as exc:
        raise CliError(str(exc), EXIT_MISMATCH) from None
    if args.format == "rows" and rep.vectorial is not None:
        _emit(_rows([_row_from_section(prov.get("spec", prov.get("name", "input")), rep.vectorial)]), args.out)
    else:
        _emit(rep.render(), args.out)
    return EXIT_OK


# --- verify -------------------------------------------------------------------

def _theorem_list(raw: str, vectorial: bool) -> list[str]:
    known = VECTORIAL_THEOREMS if vectorial else SCALAR_THEOREMS
    if raw == "all":
        return list(known)
    names = [t.strip() for t in raw.split(",") if t.strip()]
    bad = [t for t in names if t not in known]
    if bad:
        raise CliError(f"unknown theorem(s) {bad}; choose from {list(known)}", EXIT_PARSE)
    return names


def verify_vectorial(F: VectorialFunction, theorems, use_oracle: bool) -> list[tuple[str, bool, str]]:
    """(name, ok, detail) per check; ok means the predicate verdict matches the measured property."""
    results = []
    prof = M.vectorial_profile(F)
    is_perm = F.is_permutation()
    is_apn = F.is_apn()
    if use_oracle:
        delta, naive_apn = O.naive_ddt_apn(F)
        naive_perm = O.naive_is_permutation(F)
        results.append(("oracle-ddt", naive_apn == is_apn, f"naive delta={delta} apn={naive_apn}, fast apn={is_apn}"))
        results.append(("oracle-bijection", naive_perm == is_perm, f"naive={naive_perm}, fast={is_perm}"))
        try:
            M.vectorial_profile(F, verify=True)
            results.append(("oracle-sums", True, "vs1/vs1_sq/fsq(/vs2) equal to literal sums"))
        except M.OracleMismatch as exc:
            results.append(("oracle-sums", False, str(exc)))
        is_apn, is_perm = naive_apn, naive_perm

    def add(name, outcome, prop):
        results.append((name, outcome.verdict == prop,
                        f"verdict={outcome.verdict} property={prop} expected={outcome.expected_value} "
                        f"actual={outcome.actual_value} ({outcome.relation}, gap {outcome.gap})"))

    for t in theorems:
        if t == "perm-s1":
            add(t, M.check_permutation_by_s1(F, prof), is_perm)
        elif t == "apn-perm-s1sq":
            add(t, M.check_apn_permutation_by_s1sq(F, prof), is_perm and is_apn)
        elif t == "apn-s2":
            add(t, M.check_apn_by_s2(F, prof), is_apn)
        elif t == "apn-per-direction":
            per = M.check_apn_per_direction(F, prof)
            glob = all(o.verdict for o in per.values())
            bad = [a for a, o in per.items() if not o.verdict]
            results.append((t, glob == is_apn, f"global={glob} property={is_apn} deviating directions={len(bad)}"))
        elif t == "fsq":
            tot, per = M.check_fsq_bounds(F, prof)
            add("fsq", tot, is_apn)
            add("fsq-per-direction", per, is_apn)
        elif t == "quad-apn-s1":
            q = M.check_quadratic_apn_s1(F, prof)
            applicable = q.hypotheses_hold and is_apn
            ok = q.outcome.verdict if applicable else True
            results.append((t, ok, f"applicable={applicable} verdict={q.outcome.verdict} "
                                   f"census=({q.census.bent} bent, {q.census.semi_bent} semi-bent) "
                                   f"violations={list(q.violations)}"))
    return results


def verify_scalar(f: BooleanFunction, theorems, use_oracle: bool) -> list[tuple[str, bool, str]]:
    results = []
    cls = f.classify()
    if use_oracle:
        naive = O.naive_walsh(f)
        fast = f.walsh_transform()
        results.append(("oracle-walsh", naive == fast, "naive and fast spectra compared entrywise"))
        try:
            M.scalar_profile(f, verify=True)
            results.append(("oracle-sums", True, "s1/s1_sq/s2 equal to literal sums"))
        except M.OracleMismatch as exc:
            results.append(("oracle-sums", False, str(exc)))

    def add(name, outcome, prop):
        results.append((name, outcome.verdict == prop,
                        f"verdict={outcome.verdict} property={prop} expected={outcome.expected_value} "
                        f"actual={outcome.actual_value} ({outcome.relation})"))

    for t in theorems:
        if t == "balanced-s1":
            add(t, M.check_balanced_by_s1(f), cls.is_balanced)
        elif t == "bent-s2":
            add(t, M.check_bent_by_s2(f), cls.is_bent)
        elif t == "s1-closed-form":
            add(t, M.PredicateOutcome.compare(t, O.naive_s1(f) if use_oracle else M.s1_via_fourier(f),
                                              M.s1_total(f)), True)
        elif t == "s1-fourier":
            add(t, M.PredicateOutcome.compare(t, M.s1_via_fourier(f), M.s1_total(f)), True)
        elif t == "s2-walsh":
            add(t, M.PredicateOutcome.compare(t, M.s2_via_walsh_moment(f), M.s2_total(f)), True)
        elif t == "s2-autocorrelation":
            add(t, M.PredicateOutcome.compare(t, M.s2_via_autocorrelation(f), M.s2_total(f)), True)
    return results


def cmd_verify(args) -> int:
    func, _ = load_input(args)
    enforce_cap(func, args.allow_large)
    vec = isinstance(func, VectorialFunction)
    theorems = _theorem_list(args.theorems, vec)
    try:
        if vec:
            results = verify_vectorial(func, theorems, args.oracle)
        else:
            results = verify_scalar(func, theorems, args.oracle)
    except O.OracleSizeError as exc:
        raise CliError(str(exc), EXIT_CAP) from None
    buf = io.StringIO()
    for name, ok, detail in results:
        buf.write(f"{'PASS' if ok else 'FAIL'} {name}: {detail}\n")
    failed = [r for r in results if not r[1]]
    buf.write(f"{len(results) - len(failed)}/{len(results)} checks consistent\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_MISMATCH if failed else EXIT_OK


# --- scan ---------------------------------------------------------------------

ROW_FIELDS = (
    "id", "delta", "is_permutation", "is_apn", "vs1", "vs1_sq", "vs2",
    "perm_s1", "apn_perm_s1sq", "apn_s2", "apn_per_direction", "fsq",
)


def scan_row(ident, F: VectorialFunction) -> dict:
    prof = M.vectorial_profile(F)
    fsq, fsq_dir = M.check_fsq_bounds(F, prof)
    return {
        "id": ident,
        "delta": F.differential_uniformity(),
        "is_permutation": F.is_permutation(),
        "is_apn": F.is_apn(),
        "vs1": prof.vs1,
        "vs1_sq": prof.vs1_sq,
        "vs2": prof.vs2,
        "perm_s1": M.check_permutation_by_s1(F, prof).verdict,
        "apn_perm_s1sq": M.check_apn_permutation_by_s1sq(F, prof).verdict,
        "apn_s2": M.check_apn_by_s2(F, prof).verdict,
        "apn_per_direction": M.apn_per_direction_summary(F, prof).verdict,
        "fsq": fsq.verdict and fsq_dir.verdict,
    }


def _row_from_section(ident, sec: dict) -> dict:
    p = sec["predicates"]
    return {
        "id": ident,
        "delta": sec["delta"],
        "is_permutation": sec["is_permutation"],
        "is_apn": sec["is_apn"],
        "vs1": sec["vs1"],
        "vs1_sq": sec["vs1_sq"],
        "vs2": sec["vs2"],
        "perm_s1": p["perm-s1"]["verdict"],
        "apn_perm_s1sq": p["apn-perm-s1sq"]["verdict"],
        "apn_s2": p["apn-s2"]["verdict"],
        "apn_per_direction": p["apn-per-direction"]["verdict"],
        "fsq": p["fsq"]["verdict"] and p["fsq-per-direction"]["verdict"],
    }


def _rows(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=ROW_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (str(v).lower() if isinstance(v, bool) else v) for k, v in r.items()})
    return buf.getvalue()


def _family_members(family: str, n: int, count: int, seed: int, poly):
    """(id, builder args) pairs in deterministic order."""
    if family == "power":
        return [(d, ("power", n, d, poly)) for d in range(1 << n)]
    if family == "random-lut":
        return [(i, ("random-lut", n, (seed, i), None)) for i in range(count)]
    if family == "catalog":
        members = [("identity", ("identity", n, None, None))]
        for k in range(1, n):
            if gcd(k, n) == 1:
                members.append((f"gold-k{k}", ("gold", n, k, poly)))
                members.append((f"kasami-k{k}", ("kasami", n, k, poly)))
        if n >= 2:
            members.append(("inverse", ("inverse", n, None, poly)))
        if n == 6:
            members.append(("dillon", ("dillon", n, None, None)))
        return members
    raise CliError(f"unknown family {family!r}", EXIT_PARSE)


def _build_member(spec) -> VectorialFunction:
    kind, n, arg, poly = spec
    if kind == "power":
        return C.power_map(n, arg, poly)
    if kind == "random-lut":
        return C.random_lut(n, list(arg))
    if kind == "identity":
        return C.identity(n)
    if kind == "gold":
        return C.gold(n, arg, poly)
    if kind == "kasami":
        return C.kasami(n, arg, poly)
    if kind == "inverse":
        return C.inverse_map(n, poly)
    return C.dillon_permutation()


def _scan_one(item):
    ident, spec = item
    return scan_row(ident, _build_member(spec))


def run_scan(family: str, n: int, count: int = 100, seed: int = 0, poly=None, jobs: int = 1) -> list[dict]:
    members = _family_members(family, n, count, seed, poly)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(_scan_one, members, chunksize=max(1, len(members) // (4 * jobs))))
    return [_scan_one(m) for m in members]


def cmd_scan(args) -> int:
    if not 1 <= args.n <= VECTORIAL_CAP and not args.allow_large:
        raise CliError(f"n={args.n} outside [1, {VECTORIAL_CAP}]; pass --allow-large", EXIT_CAP)
    if args.n > VECTORIAL_CAP:
        print(_cost_estimate(args.n, True), file=sys.stderr)
    poly = parse_modulus(args.poly) if args.poly else None
    try:
        rows = run_scan(args.family, args.n, args.count, args.seed, poly, args.jobs)
    except PARSE_ERRORS as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    _emit(_rows(rows), args.out)
    return EXIT_OK


# --- catalog ------------------------------------------------------------------

def cmd_catalog(args) -> int:
    if args.action == "list":
        lines = [f"{name:16s} {' '.join('--' + r for r in req) or '-':18s} {desc}"
                 for name, (_, req, desc) in C.FAMILIES.items()]
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if not args.name:
        raise CliError("catalog get needs a name", EXIT_PARSE)
    poly = parse_modulus(args.poly) if args.poly else None
    try:
        _, func = C.get(args.name, n=args.n, k=args.k, seed=args.seed, modulus=poly)
    except PARSE_ERRORS as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    _emit(func.to_text(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="apnkit", description="Derivative-weight analysis of (vectorial) Boolean functions")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report for one function")
    _add_input_args(a)
    a.add_argument("--oracle", "--verify", dest="oracle", action="store_true",
                   help="cross-check fast paths against brute force")
    a.add_argument("--format", choices=("report", "rows"), default="report")
    a.add_argument("--out", metavar="PATH")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check theorem predicates against measured properties")
    _add_input_args(v)
    v.add_argument("--theorems", default="all", help="comma list or 'all'")
    v.add_argument("--oracle", action="store_true", help="measure properties with brute-force oracles")
    v.add_argument("--out", metavar="PATH")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", help="one row per function of a family")
    s.add_argument("--family", choices=("power", "random-lut", "catalog"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--poly", metavar="MASK")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--format", choices=("rows",), default="rows")
    s.add_argument("--allow-large", action="store_true")
    s.add_argument("--out", metavar="PATH")
    s.set_defaults(func=cmd_scan)

    c = sub.add_parser("catalog", help="list or materialize catalog functions")
    c.add_argument("action", choices=("list", "get"))
    c.add_argument("name", nargs="?")
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--poly", metavar="MASK")
    c.add_argument("--out", metavar="PATH")
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except FieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
