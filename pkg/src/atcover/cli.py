"""Command line: build covers, compute eigenspaces, check S_1 and local actions, certify.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import cover, eigen, localaction, mk
from .graph import is_connected, to_dot, to_json
from .perm import PermGroup, group_order, orbit, s_arc_count_regularity

log = logging.getLogger("atcover")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DESK_N_MAX = 3
LARGE_N = 4


@dataclass(frozen=True)
class CertifyConfig:
    n_max: int = DESK_N_MAX
    parallel: bool = False
    # Schreier-Sims order of the lifted groups and arc-orbit checks
    order_n_max: int = 2
    local_n_max: int = 2
    allow_large: bool = False


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def _check(ok: bool, **detail) -> dict:
    return {"ok": bool(ok), **detail}


def mk_checks() -> dict:
    g = mk.build_mk()
    b, a = mk.aut_b_generators(), mk.aut_a_generators()
    return {
        "graph": _check(
            g.n_vertices == 16 and g.n_edges == 24 and g.is_regular(3) and is_connected(g),
            vertices=g.n_vertices,
            edges=g.n_edges,
        ),
        "B": _check(
            group_order(b) == 96 and s_arc_count_regularity(b, g, 2) == "regular",
            order=group_order(b),
            two_arcs=s_arc_count_regularity(b, g, 2),
        ),
        "A": _check(
            group_order(a) == 48 and s_arc_count_regularity(a, g, 1) == "regular",
            order=group_order(a),
            arcs=s_arc_count_regularity(a, g, 1),
        ),
    }


def cover_checks(n: int, cfg: CertifyConfig) -> dict:
    zeta = cover.mk_voltage(n)
    lam = cover.lambda_graph(n)
    out = {}
    stats_ok = (
        lam.n_vertices == 16 * n**4
        and lam.is_regular(3)
        and is_connected(lam)
        and zeta.is_inverse_consistent()
        and zeta.is_normalised()
    )
    if n == 1:
        stats_ok = stats_ok and lam.adjacency == mk.build_mk().adjacency
    out["cover"] = _check(stats_ok, vertices=lam.n_vertices, edges=lam.n_edges)

    lifts = []
    lift_ok = True
    for g in mk.aut_b_generators().generators:
        try:
            lift = cover.canonical_lift(zeta, g)
        except cover.LiftError:
            lift_ok = False
            continue
        lift_ok = lift_ok and lam.is_automorphism(lift.cover_perm.images)
        lifts.append(lift)
    deck = cover.deck_generators(zeta)
    deck_group = PermGroup([d.cover_perm for d in deck], lam.n_vertices)
    size = n**cover.RANK
    fibres_ok = all(
        orbit(deck_group, u * size) == set(range(u * size, (u + 1) * size))
        for u in range(zeta.base.n_vertices)
    )
    deck_order = group_order(deck_group)
    out["lifting"] = _check(
        lift_ok and fibres_ok and deck_order == n**4,
        lifted_generators=len(lifts),
        deck_order=deck_order,
    )
    if n <= cfg.order_n_max:
        bt = PermGroup([x.cover_perm for x in lifts + deck], lam.n_vertices)
        a_lifts = [cover.canonical_lift(zeta, g) for g in mk.aut_a_generators().generators]
        at = PermGroup([x.cover_perm for x in a_lifts + deck], lam.n_vertices)
        ob, oa = group_order(bt), group_order(at)
        reg_b = s_arc_count_regularity(bt, lam, 2)
        reg_a = s_arc_count_regularity(at, lam, 1)
        out["order_oracle"] = _check(
            ob == 96 * n**4 and oa == 48 * n**4 and reg_b == "regular" and reg_a == "regular",
            lifted_B=ob,
            lifted_A=oa,
            expected_B=96 * n**4,
            two_arc_action_B=reg_b,
            arc_action_A=reg_a,
        )
    return out


def eigen_checks(n: int) -> dict:
    lam = cover.lambda_graph(n)
    rep = eigen.one_eigenspace(lam, n)
    doc = rep.to_json_doc()
    out = {
        "eigen": _check(
            all(eigen.is_one_eigenvector(lam, x) for x in rep.basis),
            **doc,
        ),
        "formula": {"advisory": True, **doc},
    }
    if n >= 3:
        s1 = eigen.s1_vertices(n)
        res = eigen.verify_eigen_support(lam, s1)
        out["s1"] = _check(
            res.ok and len(s1) == 72,
            size=len(s1),
            odd_failures=len(res.odd_failures),
            even_failures=len(res.even_failures),
        )
        ctx = localaction.build_gamma(n)
        aut = PermGroup([b.cover_perm for b in ctx.b_lifts], lam.n_vertices)
        greedy = eigen.greedy_orbit_basis(lam, s1.indicator(lam.n_vertices), aut)
        bound = eigen.greedy_lower_bound(lam.n_vertices)
        covered = 0
        for x in greedy.vectors:
            covered |= x.bits
        out["greedy_bound"] = _check(
            greedy.size >= bound
            and covered == (1 << lam.n_vertices) - 1
            and all(x.weight() == 72 for x in greedy.vectors)
            and greedy.size <= rep.dim
            and rep.dim >= bound,
            greedy_size=greedy.size,
            bound=str(bound),
            dim=rep.dim,
        )
    return out


def local_checks(n: int, cfg: CertifyConfig) -> dict:
    ctx = localaction.build_gamma(n)
    out = {}
    facts = localaction.gamma_facts(n)
    out["gamma"] = _check(
        facts["vertices"] == facts["expected_vertices"] and facts["regular6"] and facts["connected"],
        **facts,
    )
    d = ctx.e1_dim
    m = ctx.gamma.n_vertices
    bound = Fraction(m, 144) - 1
    growth = {"stabiliser_order_log2_times3": d - 1, "bound_log2": str(bound), "bound_applies": n >= 3}
    out["stabiliser_growth"] = _check((n < 3) or (d - 1 >= bound), **growth)

    st = localaction.build_sigma_tau(n)
    conds = localaction.sigma_conditions(ctx, st)
    ts = st.tau_sigma()
    conds["tau_sigma_squared_in_G1"] = localaction.g1_membership(ts * ts, n)
    conds["tau_sigma_normalises_G1"] = localaction.normalises_g1(ctx, ts)
    out["sigma_twist"] = _check(all(conds.values()), **conds)

    if n <= cfg.local_n_max:
        reports = {}
        ok = True
        for c in localaction.CONSTRUCTIONS:
            rep = localaction.vertex_stabiliser_local_action(c, n)
            reports[c] = rep.to_json_doc()
            ok = ok and rep.identified_as == localaction.EXPECTED[c] and rep.kernel_order == 4
            ok = ok and localaction.vertex_transitive(ctx, c)
        sizes = {c: m * 3 * 2 ** reports[c]["stabiliser_order_log2_times3"] for c in reports}
        accounting = sizes["G3"] == 2 * sizes["G1"] == sizes["G2"]
        detail = {"reports": reports, "order_accounting": accounting}
        if n <= cfg.order_n_max:
            arcs = localaction.arc_orbit_size(localaction.group_generators(ctx, "G1"), ctx.gamma)
            detail["G1_arc_transitive"] = arcs == 2 * ctx.gamma.n_edges
            ok = ok and detail["G1_arc_transitive"]
        if n == 1:
            cross = {}
            for c in localaction.CONSTRUCTIONS:
                order, name, stab = localaction.generic_local_action(c, n)
                cross[c] = {"order": order, "local": name, "stabiliser": stab}
                ok = ok and name == localaction.EXPECTED[c] and order == sizes[c]
            detail["schreier_sims_cross_check"] = cross
        out["local_actions"] = _check(ok and accounting, **detail)
    return out


def certify_n(n: int, cfg: CertifyConfig) -> dict:
    checks = {}
    checks.update(cover_checks(n, cfg))
    checks.update(eigen_checks(n))
    checks.update(local_checks(n, cfg))
    skipped = []
    if n < 3:
        skipped += ["s1", "greedy_bound"]
    if n > cfg.order_n_max:
        skipped.append("order_oracle")
    if n > cfg.local_n_max:
        skipped.append("local_actions")
    ok = all(c["ok"] for c in checks.values() if "ok" in c)
    return {"n": n, "ok": ok, "checks": checks, "skipped": skipped}


def certify(cfg: CertifyConfig) -> dict:
    ns = list(range(1, cfg.n_max + 1))
    if cfg.parallel and len(ns) > 1:
        with ProcessPoolExecutor() as pool:
            records = list(pool.map(certify_n, ns, [cfg] * len(ns)))
    else:
        records = [certify_n(n, cfg) for n in ns]
    base = mk_checks()
    ok = all(c["ok"] for c in base.values()) and all(r["ok"] for r in records)
    return {"ok": ok, "mk": base, "per_n": records}


# ---------------------------------------------------------------- parsing


def parse_vertex_label(text: str, n: int) -> int:
    parts = [p.strip() for p in text.strip().strip("()").split(",")]
    if len(parts) != 5:
        raise ValueError(f"vertex label {text!r} needs a word and four residues")
    base = mk.vertex(parts[0])
    coords = tuple(int(c) % n for c in parts[1:])
    return cover.cover_index(base, coords, n)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _guard_size(parser: argparse.ArgumentParser, n: int, allow_large: bool, limit: int) -> None:
    if n > limit and not allow_large:
        parser.error(f"n={n} is above the desk-scale limit {limit}; pass --allow-large")
    if n >= LARGE_N:
        log.warning("n=%d builds %d-vertex covers; expect several seconds and more memory", n, 16 * n**4)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="atcover", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write Lambda_n as JSON (and DOT) plus its voltage table")
    b.add_argument("--n", type=_positive_int, required=True)
    b.add_argument("--out", type=Path, required=True, help="output directory")
    b.add_argument("--dot", action="store_true")
    b.add_argument("--allow-large", action="store_true")

    e = sub.add_parser("eigen", help="dimension of the 1-eigenspace of Lambda_n over GF(2)")
    e.add_argument("--n", type=_positive_int, required=True)
    e.add_argument("--allow-large", action="store_true")

    s = sub.add_parser("verify-s1", help="parity check of the 72-vertex support S_1 on Lambda_n")
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--allow-large", action="store_true")

    la = sub.add_parser("local-action", help="local action of G1, G2 or G3 on Gamma_n")
    la.add_argument("--n", type=_positive_int, required=True)
    la.add_argument("--group", choices=["g1", "g2", "g3"], required=True)
    la.add_argument("--vertex", help="vertex of Lambda_n, e.g. 'a,0,0,0,0'")
    la.add_argument("--allow-large", action="store_true")

    c = sub.add_parser("certify", help="run every check for n = 1..n_max")
    c.add_argument("--n-max", type=int, default=DESK_N_MAX)
    c.add_argument("--parallel", action="store_true")
    c.add_argument("--json", type=Path, dest="json_path")
    c.add_argument("--local-n-max", type=int, default=2)
    c.add_argument("--allow-large", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return _run(parser, args)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    except OSError as exc:
        print(f"atcover: {exc}", file=sys.stderr)
        return EXIT_USAGE


def _run(parser: argparse.ArgumentParser, args) -> int:
    if args.command == "build":
        _guard_size(parser, args.n, args.allow_large, LARGE_N)
        lam = cover.lambda_graph(args.n)
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / f"lambda_{args.n}.json").write_text(to_json(lam) + "\n")
        (args.out / f"voltage_{args.n}.json").write_text(_dump(cover.mk_voltage(args.n).to_json_doc()) + "\n")
        if args.dot:
            (args.out / f"lambda_{args.n}.dot").write_text(to_dot(lam, f"Lambda_{args.n}"))
        print(_dump({"n": args.n, "vertices": lam.n_vertices, "edges": lam.n_edges, "out": str(args.out)}))
        return EXIT_OK

    if args.command == "eigen":
        _guard_size(parser, args.n, args.allow_large, LARGE_N)
        rep = eigen.one_eigenspace(cover.lambda_graph(args.n), args.n)
        doc = rep.to_json_doc()
        doc["greedy_lower_bound"] = str(eigen.greedy_lower_bound(rep.vertex_count))
        print(_dump(doc))
        return EXIT_OK

    if args.command == "verify-s1":
        if args.n < 3:
            parser.error("S_1 needs n >= 3")
        _guard_size(parser, args.n, args.allow_large, LARGE_N)
        lam = cover.lambda_graph(args.n)
        res = eigen.verify_eigen_support(lam, eigen.s1_vertices(args.n))
        print(
            _dump(
                {
                    "n": args.n,
                    "size": eigen.S1_SIZE,
                    "ok": res.ok,
                    "odd_failures": [str(lam.labels[v]) for v in res.odd_failures],
                    "even_failures": [str(lam.labels[v]) for v in res.even_failures],
                }
            )
        )
        return EXIT_OK if res.ok else EXIT_FAIL

    if args.command == "local-action":
        _guard_size(parser, args.n, args.allow_large, DESK_N_MAX)
        v = None
        if args.vertex:
            try:
                v = parse_vertex_label(args.vertex, args.n)
            except (ValueError, KeyError) as exc:
                parser.error(str(exc))
        construction = args.group.upper()
        rep = localaction.vertex_stabiliser_local_action(construction, args.n, v)
        print(_dump(rep.to_json_doc()))
        return EXIT_OK if rep.identified_as == localaction.EXPECTED[construction] else EXIT_FAIL

    if args.command == "certify":
        if args.n_max < 1:
            parser.error("--n-max must be at least 1")
        _guard_size(parser, args.n_max, args.allow_large, DESK_N_MAX)
        cfg = CertifyConfig(
            n_max=args.n_max,
            parallel=args.parallel,
            local_n_max=args.local_n_max,
            allow_large=args.allow_large,
        )
        report = certify(cfg)
        text = _dump(report)
        if args.json_path:
            args.json_path.write_text(text + "\n")
        print(text)
        return EXIT_OK if report["ok"] else EXIT_FAIL

    parser.error(f"unknown command {args.command}")
    return EXIT_USAGE
