"""Command-line front end: ``matchscheme <subcommand> ...``.

Exit codes: 0 when every report passes, 1 when any fails, 2 when nothing
fails but something is inconclusive. Commands that only print data exit 0.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

from . import cache
from .combinatorics import double_factorial, parse_partition
from .derangement import (
    check_alternating_sign,
    check_least_eigenvalue_conjecture,
    check_published_spectrum,
    degree_identity_check,
    derangement_union,
    ratio_bound,
    single_associate,
    spectrum,
    trace_identities_check,
)
from .ekr import (
    arithmetic_checks,
    chromatic_coloring,
    clique_coclique_check,
    extremal_uniqueness_check,
    independence_of_trivial_families,
    max_independent_set,
    module_method_check,
    t_intersecting_check,
    trivial_family,
)
from .matchings import MAX_ENUM_N, count_matchings, enumerate_matchings
from .polytope import (
    edge_list,
    edmonds_membership,
    incidence_vector,
    module_span_check,
    odd_cut_inequality_check,
    odd_cut_scan_check,
    parallel_faces,
    rank_check,
)
from .published import GAMMA_SPECTRA
from .report import FAIL, INCONCLUSIVE, PASS, VerificationReport, jsonable, verdict
from .scheme import check_intersection_identities, intersection_numbers, sphere_partition_check, sphere_sizes, verify_scheme_axioms
from .spectrum import (
    idempotent_suite_check,
    inequality_chain_check,
    orthogonality_check,
    standard_least_eigenvalue_check,
    thrall_check,
    zonal_closed_form_check,
    zonal_n_sphere,
    zonal_table,
)

ENVELOPE_VERSION = 1
SUITES = ("all", "scheme", "ekr", "polytope", "conjectures")


class Timings:
    def __init__(self):
        self.entries: dict[str, float] = {}

    def run(self, reports: list, check, *args, **kwargs):
        start = time.perf_counter()
        rep = check(*args, **kwargs)
        rep.runtime = time.perf_counter() - start
        self.entries[rep.claim] = round(rep.runtime, 6)
        reports.append(rep)
        return rep


def parse_range(text: str) -> list[int]:
    """``"4"`` or ``"3..6"`` (inclusive)."""
    if ".." in text:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def exit_code(reports: list[VerificationReport]) -> int:
    statuses = {r.status for r in reports}
    if FAIL in statuses:
        return 1
    if INCONCLUSIVE in statuses:
        return 2
    return 0


def emit_reports(args, command: str, reports: list[VerificationReport], timings: Timings | None = None) -> int:
    if args.format == "json":
        doc = {"format_version": ENVELOPE_VERSION, "command": command,
               "reports": [r.to_dict() for r in reports]}
        if args.timings and timings is not None:
            doc["timings"] = timings.entries
        print(json.dumps(doc, indent=1, sort_keys=True))
    else:
        for r in reports:
            print(r.line())
        counts = {s: sum(r.status == s for r in reports) for s in (PASS, FAIL, INCONCLUSIVE)}
        print(f"{counts[PASS]} pass, {counts[FAIL]} fail, {counts[INCONCLUSIVE]} inconclusive")
    return exit_code(reports)


def emit_table(args, command: str, rows: list[dict], meta: dict | None = None) -> int:
    if args.format == "json":
        doc = {"format_version": ENVELOPE_VERSION, "command": command, "rows": jsonable(rows)}
        if meta:
            doc["meta"] = jsonable(meta)
        print(json.dumps(doc, indent=1, sort_keys=True))
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        sys.stdout.write(buf.getvalue())
    return 0


def _cell(v) -> str:
    if isinstance(v, tuple):
        return " ".join(map(str, v))
    return str(v)


def _warm(args, ns) -> None:
    """Load (or build and store) cached scheme data for every n in ``ns``."""
    for n in ns:
        if 1 <= n <= MAX_ENUM_N and not args.no_cache:
            cache.load(n, args.cache_dir, jobs=args.jobs)


def _graph(n: int, which: str):
    return derangement_union(n) if which == "gamma" else single_associate(n)


# --- subcommands -----------------------------------------------------------------


def cmd_enumerate(args) -> int:
    n = args.n
    if not 1 <= n <= MAX_ENUM_N:
        raise SystemExit(f"enumerate: n must be in [1, {MAX_ENUM_N}]")
    if args.count_only:
        print(count_matchings(n))
        return 0
    if args.format == "json":
        doc = {"format_version": ENVELOPE_VERSION, "command": "enumerate", "n": n,
               "matchings": [str(m) for m in enumerate_matchings(n)]}
        print(json.dumps(doc, indent=1, sort_keys=True))
        return 0
    out = sys.stdout
    for m in enumerate_matchings(n):
        out.write(f"{m}\n")
    return 0


def cmd_scheme(args) -> int:
    _warm(args, [args.n])
    if args.check:
        t = Timings()
        reports: list = []
        t.run(reports, verify_scheme_axioms, args.n)
        t.run(reports, check_intersection_identities, args.n)
        t.run(reports, sphere_partition_check, args.n)
        return emit_reports(args, "scheme", reports, t)
    inter = intersection_numbers(args.n, jobs=args.jobs) if args.jobs > 1 else intersection_numbers(args.n)
    sizes = sphere_sizes(args.n)
    rows = []
    for i, lam in enumerate(inter.partitions):
        for j, mu in enumerate(inter.partitions):
            for k, nu in enumerate(inter.partitions):
                v = int(inter.p[i, j, k])
                if v or args.all:
                    rows.append({"i": lam, "j": mu, "k": nu, "p": v})
    return emit_table(args, "scheme", rows, {"partitions": inter.partitions, "sphere_sizes": list(sizes.values())})


def cmd_spectrum(args) -> int:
    _warm(args, [args.n])
    rec = spectrum(_graph(args.n, args.graph))
    meta = {"graph": args.graph, "n": args.n, "vertices": double_factorial(2 * args.n - 1)}
    return emit_table(args, "spectrum", rec.rows(), meta)


def cmd_zonal(args) -> int:
    if args.lam:
        lam = parse_partition(args.lam)
        value = zonal_n_sphere(lam)
        return emit_table(args, "zonal", [{"lam": lam, "sphere": (sum(lam),), "omega": value}])
    _warm(args, [args.n])
    z = zonal_table(args.n)
    rows = [{"lam": lam, "sphere": mu, "omega": z.omega[b][a]}
            for a, lam in enumerate(z.partitions) for b, mu in enumerate(z.partitions)]
    return emit_table(args, "zonal", rows)


def cmd_ekr(args) -> int:
    _warm(args, [args.n])
    t = Timings()
    reports: list = []
    if args.t is not None:
        t.run(reports, t_intersecting_check, args.n, args.t)
        return emit_reports(args, "ekr-verify", reports, t)
    graph = "gamma" if args.graph == "gamma" else "n"
    if args.mode == "enumerate":
        t.run(reports, extremal_uniqueness_check, args.n, graph, budget=args.budget)
    else:
        t.run(reports, _independence_report, args.n, args.graph, args.mode, args.budget)
    return emit_reports(args, "ekr-verify", reports, t)


def _independence_report(n: int, graph: str, mode: str, budget: int) -> VerificationReport:
    u = _graph(n, graph)
    want = double_factorial(2 * n - 3)
    claim = f"ekr.alpha.{'gamma' if graph == 'gamma' else 'n'}.n{n}.{mode}"
    if mode == "bound":
        bound = ratio_bound(u)
        return verdict(claim, bound == want, expected=want, actual=bound, ratio_bound=bound)
    res = max_independent_set(u, "exact", budget=budget)
    if not res.complete:
        return VerificationReport(claim, INCONCLUSIVE, want, res.size, details={"nodes": res.nodes})
    return verdict(claim, res.size == want, expected=want, actual=res.size, nodes=res.nodes)


def cmd_polytope(args) -> int:
    n = args.n
    t = Timings()
    reports: list = []
    if args.check == "rank":
        t.run(reports, rank_check, n)
    elif args.check == "cuts":
        t.run(reports, odd_cut_scan_check, n)
        t.run(reports, odd_cut_inequality_check, 10)
    elif args.check == "membership":
        t.run(reports, _membership_report, n, args.x)
    elif args.check == "faces":
        t.run(reports, _faces_report, n)
    return emit_reports(args, "polytope", reports, t)


def _membership_report(n: int, x: str | None) -> VerificationReport:
    if x is not None:
        vals = [Fraction(v) for v in x.replace(",", " ").split()]
        res = edmonds_membership(vals, n)
        return VerificationReport(f"polytope.membership.n{n}", PASS, "evaluated", res.satisfied,
                                  details={"violated": res.violated, "witness": res.witness, "value": res.value})
    E = len(edge_list(n))
    uniform = edmonds_membership([Fraction(1, 2 * n - 1)] * E, n)
    zero = edmonds_membership([0] * E, n)
    vertices = [m for m in enumerate_matchings(n) if not edmonds_membership(incidence_vector(m, n), n)]
    ok = uniform.satisfied and not zero.satisfied and zero.violated == "degree" and not vertices
    return verdict(f"polytope.membership.n{n}", ok, expected="vertices and centroid inside, zero outside",
                   actual={"uniform": uniform.satisfied, "zero": zero.violated, "bad_vertices": len(vertices)},
                   witnesses=[str(m) for m in vertices[:3]])


def _faces_report(n: int) -> VerificationReport:
    bad = []
    for i in range(1, 2 * n + 1):
        for j in range(i + 1, 2 * n + 1):
            fam = trivial_family(n, i, j)
            split = parallel_faces(fam, n)
            if not split.consistent or split.face_max != fam.ranks():
                bad.append({"edge": (i, j)})
    ones = parallel_faces([1] * count_matchings(n), n)
    if not (ones.consistent and ones.constant):
        bad.append({"all_ones": "not a constant score"})
    return verdict(f"polytope.faces.n{n}", not bad, expected="F_1 = F_ij for every edge", actual=len(bad),
                   witnesses=bad)


def _conjecture_reports(t: Timings, reports: list, ns) -> None:
    for n in ns:
        t.run(reports, check_least_eigenvalue_conjecture, n)
        t.run(reports, check_alternating_sign, n)


def cmd_conjectures(args) -> int:
    ns = args.n
    _warm(args, ns)
    t = Timings()
    reports: list = []
    _conjecture_reports(t, reports, ns)
    return emit_reports(args, "conjectures", reports, t)


def cmd_verify(args) -> int:
    ns = args.n
    if min(ns) < 2 or max(ns) > MAX_ENUM_N:
        raise SystemExit(f"verify: n must lie in [2, {MAX_ENUM_N}]")
    _warm(args, ns)
    t = Timings()
    reports: list = []
    suite = args.suite
    if suite in ("all", "scheme"):
        for n in ns:
            t.run(reports, sphere_partition_check, n)
            t.run(reports, verify_scheme_axioms, n)
            t.run(reports, check_intersection_identities, n)
            t.run(reports, orthogonality_check, n)
            t.run(reports, thrall_check, n)
            t.run(reports, zonal_closed_form_check, n)
            t.run(reports, standard_least_eigenvalue_check, n)
            if n <= 4:
                t.run(reports, idempotent_suite_check, n)
            t.run(reports, degree_identity_check, n)
            t.run(reports, trace_identities_check, n)
            if n in GAMMA_SPECTRA:
                t.run(reports, check_published_spectrum, n)
    if suite in ("all", "ekr"):
        for n in ns:
            t.run(reports, independence_of_trivial_families, n)
            t.run(reports, module_method_check, n, seed=args.seed)
            t.run(reports, clique_coclique_check, n, seed=args.seed)
            if n <= 6:
                t.run(reports, lambda k: chromatic_coloring(k, seed=args.seed)[1], n)
            if n >= 3:
                t.run(reports, inequality_chain_check, n)
            if 3 <= n <= 4:
                t.run(reports, extremal_uniqueness_check, n, "gamma", budget=args.budget)
                t.run(reports, extremal_uniqueness_check, n, "n", budget=args.budget)
                for k in range(1, n):
                    t.run(reports, t_intersecting_check, n, k)
        t.run(reports, arithmetic_checks, 12)
    if suite in ("all", "polytope"):
        for n in ns:
            t.run(reports, rank_check, n)
            if n <= 5:
                t.run(reports, odd_cut_scan_check, n)
                t.run(reports, _faces_report, n)
            if n <= 4:
                t.run(reports, module_span_check, n)
        t.run(reports, odd_cut_inequality_check, 10)
    if suite in ("all", "conjectures"):
        _conjecture_reports(t, reports, ns)
    return emit_reports(args, f"verify {suite}", reports, t)


# --- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None,
                        help="output format (default: text for reports, csv for tables)")
    common.add_argument("--cache-dir", default=None, help=f"scheme cache directory (env {cache.ENV_VAR})")
    common.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for the intersection scan")
    common.add_argument("--seed", type=int, default=0, help="seed for the clique search")
    common.add_argument("--budget", type=int, default=5_000_000, help="branch-and-bound node cap")
    common.add_argument("--timings", action="store_true", help="add a timings field to JSON output")

    p = argparse.ArgumentParser(prog="matchscheme", description="Perfect matching association scheme toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("enumerate", parents=[common], help="list matchings in rank order")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_enumerate, kind="table")

    s = sub.add_parser("scheme", parents=[common], help="intersection numbers")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--all", action="store_true", help="include zero intersection numbers")
    s.add_argument("--check", action="store_true", help="verify the scheme axioms instead")
    s.set_defaults(func=cmd_scheme, kind="table")

    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues of a union of relations")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--graph", choices=("gamma", "n-associate"), default="gamma")
    s.set_defaults(func=cmd_spectrum, kind="table")

    s = sub.add_parser("zonal", parents=[common], help="zonal spherical function values")
    s.add_argument("--n", type=int)
    s.add_argument("--lam", help="closed-form value of omega_lam on the (n)-sphere, e.g. 5,2,1")
    s.set_defaults(func=cmd_zonal, kind="table")

    s = sub.add_parser("ekr-verify", parents=[common], help="independence number and extremal families")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--graph", choices=("gamma", "n-associate"), default="gamma")
    s.add_argument("--mode", choices=("bound", "exact", "enumerate"), default="enumerate")
    s.add_argument("--t", type=int, default=None, help="t-intersecting search instead")
    s.set_defaults(func=cmd_ekr, kind="report")

    s = sub.add_parser("polytope", parents=[common], help="perfect matching polytope checks")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--check", choices=("rank", "cuts", "membership", "faces"), default="rank")
    s.add_argument("--x", default=None, help="edge vector for --check membership, e.g. '1/5,1/5,...'")
    s.set_defaults(func=cmd_polytope, kind="report")

    s = sub.add_parser("conjectures", parents=[common], help="least eigenvalue and alternating sign")
    s.add_argument("--n", type=parse_range, default=parse_range("3..6"))
    s.set_defaults(func=cmd_conjectures, kind="report")

    s = sub.add_parser("verify", parents=[common], help="run a registered check suite")
    s.add_argument("--suite", choices=SUITES, default="all")
    s.add_argument("--n", type=parse_range, default=parse_range("3..6"))
    s.set_defaults(func=cmd_verify, kind="report")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "text" if args.kind == "report" else "csv"
    if args.command == "zonal" and not args.lam and args.n is None:
        raise SystemExit("zonal: give --n or --lam")
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
