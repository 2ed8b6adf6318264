"""Command-line interface: one subcommand per theme, JSON reports on request.

Exit codes: 0 when every verdict is as expected, 1 when a mathematical
mismatch was found, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__
from . import additive, hecke
from . import coxeter as cx
from .deform import ParameterPoint, SymmetricPoint, dim_A_plus, load_point
from .exact import format_rational
from .flatness import (
    ThetaPoint, build_twisted_algebra, check_global_membership, eta, label_triangle,
    lemma_components, off_locus_point, same_z_orbit, sample_point_on, sample_theta,
    theta_membership,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    verdicts: dict = field(default_factory=dict)
    dimensions: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    seed: object = None
    version: str = __version__
    ok: bool = True

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, default=_jsonable)


def _jsonable(x):
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    try:
        return format_rational(x)
    except Exception:
        return str(x)


class _Timer:
    def __init__(self, report: RunReport, enabled: bool):
        self.report, self.enabled = report, enabled

    def __call__(self, key, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        if self.enabled:
            self.report.timings[key] = round(time.perf_counter() - t0, 3)
        return out


def _matrix(path) -> cx.CoxeterMatrix:
    try:
        return cx.load_matrix(path)
    except cx.MatrixParseError as e:
        raise UsageError(f"{path}: {e}") from None
    except OSError as e:
        raise UsageError(str(e)) from None


def _json_file(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"{path}: {e}") from None


def _dim_str(d):
    return "truncated" if d is None else ("inf" if d == float("inf") else d)


# ---------------------------------------------------------------------------
# subcommands


def cmd_coxeter(args) -> RunReport:
    M = _matrix(args.matrix)
    rep = RunReport("coxeter", {"matrix": M.to_text()})
    finite = cx.is_finite(M)
    rep.verdicts["finite"] = finite
    rep.verdicts["rank"] = M.rank
    rep.verdicts["orders"] = {f"{i},{j}": ("inf" if m == cx.INF else m) for (i, j), m in M.orders}
    if finite:
        counts = cx.growth_counts(M).counts
        rep.dimensions["order"] = sum(counts)
    else:
        counts = cx.growth_counts(M, args.max_length).counts
        rep.verdicts["growth_truncated_at"] = args.max_length
    rep.dimensions["growth"] = list(counts)
    rep.verdicts["triangles"] = {
        ",".join(map(str, d)): cx.triangle_type(M, d).kind + ":" + cx.triangle_type(M, d).tag
        for d in cx.triangles(M)}
    print(f"rank {M.rank}, finite={finite}" + (f", |W|={sum(counts)}" if finite else ""))
    print("growth " + " ".join(map(str, counts)))
    for k, v in rep.verdicts["triangles"].items():
        print(f"triangle {k}: {v}")
    return rep


def _load_point_for(M, path):
    try:
        u = load_point(path)
        u.check(M)
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as e:
        raise UsageError(f"{path}: {e}") from None
    return u


def cmd_flatness(args) -> RunReport:
    M = _matrix(args.matrix)
    u = _load_point_for(M, args.point)
    rep = RunReport("flatness", {"matrix": M.to_text(), "point": u.to_json()})
    timer = _Timer(rep, args.timings)
    verdict = timer("membership", check_global_membership, M, u)
    rep.verdicts["member"] = verdict.member
    rep.verdicts["triangles"] = [v.to_json() for v in verdict.triangles]
    print(f"member: {verdict.member}")
    for v in verdict.triangles:
        status = "skipped (infinite)" if v.skipped else ("pass" if v.member else "fail " + ",".join(v.failed))
        print(f"  {v.triangle} {v.type}: {status}")
    if args.dim:
        if not cx.is_finite(M):
            raise UsageError("--dim needs a finite Coxeter group")
        d = timer("dimension", dim_A_plus, M, u, args.cap)
        n = len(cx.even_elements(M))
        rep.dimensions["A_plus"] = _dim_str(d)
        rep.dimensions["W_plus"] = n
        print(f"dim A_u+ = {_dim_str(d)} (|W+| = {n})")
        if d is not None and (d == n) != verdict.member:
            rep.ok = False
    if args.expect is not None and (args.expect == "member") != verdict.member:
        rep.ok = False
    return rep


def cmd_theta(args) -> RunReport:
    M = _matrix(args.matrix)
    if args.point:
        try:
            t = ThetaPoint.from_json(_json_file(args.point))
            t.check(M)
        except (KeyError, ValueError) as e:
            raise UsageError(f"{args.point}: {e}") from None
    elif args.sample is not None:
        t = sample_theta(M, args.sample)
    else:
        t = ThetaPoint.ones(M)
    rep = RunReport("theta", {"matrix": M.to_text(), "t": t.to_json()}, seed=args.sample)
    ok = theta_membership(t, M)
    rep.verdicts["member"] = ok
    print(f"theta member: {ok}")
    if args.expect is not None and (args.expect == "member") != ok:
        rep.ok = False
    return rep


def cmd_twisted(args) -> RunReport:
    M = _matrix(args.matrix)
    if not cx.is_finite(M):
        raise UsageError("twisted algebras need a finite Coxeter group")
    if args.point:
        try:
            t = ThetaPoint.from_json(_json_file(args.point))
            t.check(M)
        except (KeyError, ValueError) as e:
            raise UsageError(f"{args.point}: {e}") from None
    elif args.sample is not None:
        t = sample_theta(M, args.sample)
    else:
        t = ThetaPoint.ones(M)
    rep = RunReport("twisted", {"matrix": M.to_text(), "t": t.to_json()}, seed=args.sample)
    timer = _Timer(rep, args.timings)
    if not theta_membership(t, M):
        raise UsageError("t is not in Theta")
    T = timer("build", build_twisted_algebra, M, t)
    rep.dimensions["W_plus"] = T.dimension
    checks = {"unit": T.check_unit(), "power_relations": T.check_power_relations()}
    if not args.skip_cocycle:
        checks["cocycle"] = timer("cocycle", T.check_cocycle)
    e = eta(T)
    checks["eta_in_z_orbit"] = same_z_orbit(M, e, t)
    rep.verdicts.update(checks)
    rep.verdicts["eta"] = e.to_json()
    for k, v in checks.items():
        print(f"{k}: {v}")
    rep.ok = all(checks.values())
    return rep


def cmd_hecke(args) -> RunReport:
    M = _matrix(args.matrix)
    if not cx.is_finite(M):
        raise UsageError("freeness is checked for finite groups only")
    rep = RunReport("hecke", {"matrix": M.to_text(), "draws": args.draws, "zero_f": args.zero_f},
                    seed=args.seed)
    timer = _Timer(rep, args.timings)
    if args.params:
        draws = [hecke.HeckeParams.from_json(_json_file(args.params), M)]
    else:
        draws = [hecke.random_params(M, random.Random(args.seed * 1_000_003 + k), zero_f=args.zero_f)
                 for k in range(args.draws)]
    results = []
    for k, p in enumerate(draws):
        try:
            r = timer(f"draw{k}", hecke.verify_freeness, M, p)
        except hecke.HeckeConstraintError as e:
            raise UsageError(f"inadmissible parameters: {e}") from None
        results.append({"params": p.to_json(), "dimension": _dim_str(r.dimension), "free": r.free})
        print(f"draw {k}: dim {_dim_str(r.dimension)} / {r.expected}, free={r.free}")
        if r.free is False:
            rep.ok = False
    rep.verdicts["draws"] = results
    rep.dimensions["W"] = cx.group_order(M)
    return rep


def cmd_additive(args) -> RunReport:
    M = _matrix(args.matrix)
    base = cx._label(args.base) if args.base is not None else None
    if base is not None and base not in M.vertices:
        raise UsageError(f"unknown base vertex {args.base!r}")
    rep = RunReport("additive " + args.action, {"matrix": M.to_text(), "N": args.N, "base": args.base})
    if args.action == "hilbert":
        N = args.N
        if N is None:
            if not cx.is_finite(M):
                raise UsageError("infinite group: give --N")
            N = additive.full_degree(M)
        got = additive.hilbert_A0plus(M, N, base)
        want = additive.expected_hilbert(M, N)
        rep.dimensions["computed"] = got
        rep.dimensions["expected"] = want
        rep.verdicts["match"] = got == want
        print(f"computed {got}\nexpected {want}\nmatch {got == want}")
        rep.ok = got == want
    else:  # tau: exploratory, no correctness claim
        data = _json_file(args.point)
        tau = {tuple(cx._label(str(v)) for v in item["edge"]): item["tau"] for item in data}
        counts = additive.tau_filtered_counts(M, tau, args.N or 6, base)
        rep.dimensions["filtered_counts"] = counts
        print(f"filtered counts {counts}")
    return rep


# sweep ----------------------------------------------------------------------


def _sweep_one(job):
    text, kind, seed, k, dim = job
    M = cx.parse_matrix_text(text)
    delta = tuple(M.vertices)
    s = seed * 1_000_003 + k
    if kind == "off":
        labels = label_triangle(M, delta)
        near_kind = lemma_components(labels.type)[0].kind
        u = off_locus_point(M, s, near=sample_point_on(M, delta, near_kind, s, height=3), height=2)
    else:
        u = sample_point_on(M, delta, kind, s)
    member = check_global_membership(M, u).member
    d = dim_A_plus(M, u) if dim else None
    return {"draw": k, "point": u.to_json(), "member": member, "dimension": _dim_str(d)}


def cmd_sweep(args) -> RunReport:
    M = _matrix(args.matrix)
    if M.rank != 3 or not cx.triangle_type(M, M.vertices).finite:
        raise UsageError("sweep needs a finite rank-3 matrix")
    t = cx.triangle_type(M, M.vertices)
    if args.component != "off" and args.component not in [c.kind for c in lemma_components(t)]:
        raise UsageError(f"type {t.tag} has no {args.component} component")
    rep = RunReport("sweep", {"matrix": M.to_text(), "component": args.component, "draws": args.draws},
                    seed=args.seed)
    jobs = [(M.to_text(), args.component, args.seed, k, not args.no_dim) for k in range(args.draws)]
    if args.jobs > 1 and jobs:
        with ProcessPoolExecutor(args.jobs) as ex:
            results = list(ex.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]
    n = len(cx.even_elements(M))
    expect_flat = args.component != "off"
    flat = 0
    witnesses = []
    for r in results:
        is_flat = r["member"] if args.no_dim else r["dimension"] == n
        flat += bool(is_flat)
        consistent = args.no_dim or r["member"] == (r["dimension"] == n)
        if is_flat != expect_flat or not consistent:
            witnesses.append(r)
    rep.dimensions["W_plus"] = n
    rep.verdicts["flat"] = flat
    rep.verdicts["total"] = len(results)
    rep.verdicts["witnesses"] = witnesses
    rep.verdicts["draws"] = [{k: r[k] for k in ("draw", "member", "dimension")} for r in results]
    rep.ok = not witnesses
    print(f"{args.component}: {flat}/{len(results)} flat")
    for w in witnesses:
        print(f"  unexpected draw {w['draw']}: member={w['member']} dim={w['dimension']} point={w['point']}")
    return rep


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coxflat", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", metavar="OUT", help="write the run report as JSON")
        p.add_argument("--timings", action="store_true", help="record timings in the report")

    p = sub.add_parser("coxeter", help="orders, finiteness, growth and triangle types")
    p.add_argument("matrix")
    p.add_argument("--max-length", type=int, default=10)
    common(p)
    p.set_defaults(fn=cmd_coxeter)

    p = sub.add_parser("flatness", help="global membership in the flat locus")
    p.add_argument("matrix")
    p.add_argument("point")
    p.add_argument("--dim", action="store_true", help="confirm with a Groebner dimension")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--expect", choices=["member", "nonmember"])
    common(p)
    p.set_defaults(fn=cmd_flatness)

    p = sub.add_parser("theta", help="membership in Theta")
    p.add_argument("matrix")
    p.add_argument("--point")
    p.add_argument("--sample", type=int)
    p.add_argument("--expect", choices=["member", "nonmember"])
    common(p)
    p.set_defaults(fn=cmd_theta)

    p = sub.add_parser("twisted", help="twisted group algebra checks at a point of Theta")
    p.add_argument("matrix")
    p.add_argument("--point")
    p.add_argument("--sample", type=int)
    p.add_argument("--skip-cocycle", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_twisted)

    p = sub.add_parser("hecke", help="freeness of the generalized Hecke algebra")
    p.add_argument("matrix")
    p.add_argument("--params")
    p.add_argument("--draws", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zero-f", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_hecke)

    p = sub.add_parser("additive", help="Hilbert series of the additive algebra")
    p.add_argument("action", choices=["hilbert", "tau"])
    p.add_argument("--matrix", required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--base")
    p.add_argument("--point", help="tau values (tau action only)")
    common(p)
    p.set_defaults(fn=cmd_additive)

    p = sub.add_parser("sweep", help="sample lemma or off-locus points and verify them")
    p.add_argument("matrix")
    p.add_argument("--component", choices=["group", "spin", "off"], required=True)
    p.add_argument("--draws", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-dim", action="store_true", help="membership only, skip Groebner")
    common(p)
    p.set_defaults(fn=cmd_sweep)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "additive" and args.action == "tau" and not args.point:
        ap.error("additive tau needs --point")
    try:
        rep = args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(rep.to_json() + "\n")
    return EXIT_OK if rep.ok else EXIT_MISMATCH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
