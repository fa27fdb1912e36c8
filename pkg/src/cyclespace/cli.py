"""Command-line interface: ``cyclespace <command> [options]``.

Every number is printed as an exact rational string ``"p/q"``.  Output is
deterministic unless ``--timing`` is given.  Failures print a JSON object
``{"error": ..., "message": ...}`` and exit with status 1.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from decimal import Decimal, localcontext
from fractions import Fraction

from . import cube as cube_mod
from .caps import ENV_VAR, Caps
from .errors import CycleSpaceError
from .graphs import (
    canonical_graph,
    graph_from_json,
    graph_to_json,
    load_json,
    metric_from_json,
)
from .invariant import commutant_family, minimize_l1, projection_report
from .linalg import parse_rational
from .symmetry import (
    automorphism_group,
    hamming_generators,
    torus_generators,
)
from .transport import (
    TransportationProblem,
    dual_certificate,
    tc_norm,
    wasserstein1,
)


# ----------------------------------------------------------------------------
# serialisation


def _decimal(q: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 40
        value = Decimal(q.numerator) / Decimal(q.denominator)
        return str(value.quantize(Decimal(1).scaleb(-digits)))


def _jsonable(obj, digits: int | None):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        out = {k: _jsonable(v, digits) for k, v in obj.items()}
        if digits is not None:
            approx = {}
            for k, v in obj.items():
                if isinstance(v, Fraction):
                    approx[k] = _decimal(v, digits)
                elif isinstance(v, (list, tuple)) and v and all(isinstance(x, Fraction) for x in v):
                    approx[k] = [_decimal(x, digits) for x in v]
            if approx:
                out["approximations"] = approx
        return out
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, digits) for v in obj]
    return obj


def _csv(record: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    rows = record.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        keys = [k for k in rows[0] if k != "approximations"]
        writer.writerow(keys)
        for row in rows:
            writer.writerow([_cell(row.get(k)) for k in keys])
    else:
        writer.writerow(["key", "value"])
        for k, v in record.items():
            writer.writerow([k, _cell(v)])
    return buf.getvalue()


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (dict, list)):
        return json.dumps(v, separators=(",", ":"))
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def emit(record: dict, args) -> None:
    data = _jsonable(record, args.decimal)
    if args.format == "csv":
        sys.stdout.write(_csv(data))
    else:
        sys.stdout.write(json.dumps(data, indent=2) + "\n")


# ----------------------------------------------------------------------------
# commands


def _report_row(n, rep) -> dict:
    return {
        "n": n,
        "p_orth_norm": rep.p_orth_norm,
        "i_minus_p_orth": rep.i_minus_p_orth_norm,
        "dim": rep.dimension,
        "p_min_norm": rep.p_min_norm,
        "i_minus_p_min": rep.i_minus_p_min_norm,
        "lambda_lip0": rep.lambda_lip0,
        "unique_minimizer": rep.unique_minimizer,
    }


def cmd_torus_table(args, caps: Caps) -> dict:
    if not 2 <= args.n_max <= caps.max_torus_n:
        raise CycleSpaceError(f"--n-max must lie in 2..{caps.max_torus_n}")
    rows = []
    for n in range(2, args.n_max + 1):
        group = torus_generators(n, 2, caps)
        rows.append(_report_row(n, projection_report(group.graph, group, caps=caps)))
    return {"command": "torus-table", "rows": rows}


def cmd_torus_min(args, caps: Caps) -> dict:
    n = args.n
    if not 2 <= n <= caps.max_torus_n:
        raise CycleSpaceError(f"--n must lie in 2..{caps.max_torus_n}")
    group = torus_generators(n, 2, caps)
    rep = projection_report(group.graph, group, caps=caps)
    return {
        "command": "torus-min",
        "n": n,
        "dim": rep.dimension,
        "p_min_norm": rep.p_min_norm,
        "i_minus_p_min": rep.i_minus_p_min_norm,
        "unique_minimizer": rep.unique_minimizer,
        "parameters": rep.parameters,
        "p_orth_norm": rep.p_orth_norm,
        "i_minus_p_orth": rep.i_minus_p_orth_norm,
        "trace_value": rep.trace_value,
        "bounds": _jsonable(rep.bounds.to_json(), None),
    }


def cmd_invariant_dim(args, caps: Caps) -> dict:
    G = graph_from_json(load_json(args.graph))
    group = automorphism_group(G, caps)
    fam = commutant_family(G, group, args.method, caps)
    record = {
        "command": "invariant-dim",
        "vertices": G.vertex_count,
        "edges": G.edge_count,
        "group_order": len(group.elements),
        "edge_orbits": len(fam.orbits),
        "dim": fam.dimension,
        "unique": fam.dimension == 0,
    }
    if args.minimize:
        best = minimize_l1(fam, caps=caps)
        record.update(
            p_min_norm=best.norm,
            i_minus_p_min=best.i_minus_norm,
            unique_minimizer=best.unique,
        )
    return record


def _family_group(family: str, n: int, m: int | None, caps: Caps):
    if family == "torus":
        return torus_generators(n, m or 2, caps)
    if family == "hamming":
        if m is None:
            raise CycleSpaceError("--m is required for the hamming family")
        return hamming_generators(n, m, caps)
    if family == "cube":
        return hamming_generators(2, n, caps)
    raise CycleSpaceError(f"unknown family {family!r}")


def cmd_uniqueness(args, caps: Caps) -> dict:
    group = _family_group(args.family, args.n, args.m, caps)
    fam = commutant_family(group.graph, group, args.method, caps)
    return {
        "command": "uniqueness",
        "family": args.family,
        "n": args.n,
        "m": args.m if args.family != "cube" else None,
        "edges": group.graph.edge_count,
        "method": fam.method,
        "dim": fam.dimension,
        "verdict": "unique" if fam.dimension == 0 else "non-unique",
    }


def cmd_tc(args, caps: Caps) -> dict:
    G = graph_from_json(load_json(args.graph))
    values = load_json(args.problem)["values"]
    f = TransportationProblem.from_mapping(values, G.vertex_count)
    norm, plan = tc_norm(f, G, caps)
    record = {"command": "tc", "norm": norm, "flow": list(plan.flow)}
    if args.dual:
        witness = dual_certificate(f, G, caps)
        record["witness"] = list(witness.potentials)
        record["pairing"] = witness.pairing(f)
    return record


def _measure(text: str) -> list[Fraction]:
    if os.path.exists(text):
        obj = load_json(text)
        vals = obj["values"] if isinstance(obj, dict) else obj
    else:
        vals = [v for v in text.split(",") if v.strip()]
    return [parse_rational(v) for v in vals]


def cmd_wasserstein(args, caps: Caps) -> dict:
    G = graph_from_json(load_json(args.graph))
    value = wasserstein1(_measure(args.mu), _measure(args.nu), G, caps)
    return {"command": "wasserstein", "distance": value}


def cmd_automorphisms(args, caps: Caps) -> dict:
    G = graph_from_json(load_json(args.graph))
    group = automorphism_group(G, caps)
    record = {
        "command": "automorphisms",
        "order": len(group.elements),
        "generators": [list(g) for g in group.vertex_generators],
    }
    if args.all:
        record["elements"] = [list(g) for g in group.elements]
    return record


def cmd_cube(args, caps: Caps) -> dict:
    n = args.n
    co = cube_mod.cube_coefficients(n)
    q = cube_mod.q_norm(n)
    p = cube_mod.p_norm(n)
    lam = cube_mod.lambda_lip0(n)
    lo, hi = cube_mod.bm_bounds(n)
    record = {
        "command": "cube",
        "n": n,
        "q_norm": q,
        "p_norm": p,
        "b": list(co.b),
        "a": list(co.a[1:]),
        "c": list(co.c),
        "F": cube_mod.F_sum(co),
        "G": cube_mod.G_sum(co),
        "lambda_lip0": lam,
        "bm_bounds": [lo, hi],
    }
    if args.dense:
        if n > 6:
            raise CycleSpaceError("--dense is limited to n <= 6")
        record["dense_check"] = cube_mod.cube_cross_check(n)
    return record


def cmd_canonical_graph(args, caps: Caps) -> dict:
    X = metric_from_json(load_json(args.metric))
    return graph_to_json(canonical_graph(X))


COMMANDS = {
    "torus-table": cmd_torus_table,
    "torus-min": cmd_torus_min,
    "invariant-dim": cmd_invariant_dim,
    "uniqueness": cmd_uniqueness,
    "tc": cmd_tc,
    "wasserstein": cmd_wasserstein,
    "automorphisms": cmd_automorphisms,
    "cube": cmd_cube,
    "canonical-graph": cmd_canonical_graph,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument(
        "--decimal", type=int, metavar="K", default=None,
        help="also print K-digit decimal approximations under 'approximations'",
    )
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the output")
    common.add_argument(
        "--caps", default="", metavar="K=V,...",
        help=f"override size limits (also read from ${ENV_VAR})",
    )

    parser = argparse.ArgumentParser(
        prog="cyclespace",
        description="Exact cycle-space projections and transportation cost norms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("torus-table", parents=[common], help="projection norms on the tori T_2..T_N")
    p.add_argument("--n-max", type=int, default=5)

    p = sub.add_parser("torus-min", parents=[common], help="minimal invariant projection on T_n")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("invariant-dim", parents=[common], help="dimension of the invariant family of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--method", choices=("auto", "averaging", "nullspace"), default="auto")
    p.add_argument("--minimize", action="store_true", help="also minimise the l1 norm")

    p = sub.add_parser("uniqueness", parents=[common], help="is the invariant projection unique?")
    p.add_argument("--family", choices=("torus", "hamming", "cube"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--method", choices=("auto", "averaging", "nullspace"), default="auto")

    p = sub.add_parser("tc", parents=[common], help="transportation cost norm of a problem")
    p.add_argument("--graph", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--dual", action="store_true", help="also print a Lipschitz witness")

    p = sub.add_parser("wasserstein", parents=[common], help="W1 distance between two measures")
    p.add_argument("--graph", required=True)
    p.add_argument("--mu", required=True, help="comma separated masses or a JSON file")
    p.add_argument("--nu", required=True, help="comma separated masses or a JSON file")

    p = sub.add_parser("automorphisms", parents=[common], help="automorphism group of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--all", action="store_true", help="list every element")

    p = sub.add_parser("cube", parents=[common], help="projection norms on the cube {0,1}^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dense", action="store_true", help="cross-check against the dense projection")

    p = sub.add_parser("canonical-graph", parents=[common], help="canonical graph of a finite metric")
    p.add_argument("--metric", required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        env = dict(os.environ)
        if args.caps:
            joined = ",".join(x for x in (env.get(ENV_VAR, ""), args.caps) if x)
            env[ENV_VAR] = joined
        caps = Caps.from_env(env)
        start = time.perf_counter()
        record = COMMANDS[args.command](args, caps)
        if args.timing:
            record["timing_seconds"] = round(time.perf_counter() - start, 3)
    except (CycleSpaceError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc)}
        sys.stdout.write(json.dumps(err) + "\n")
        return 1
    emit(record, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
