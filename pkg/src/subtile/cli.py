"""Command-line interface.

Results go to stdout as JSON (or SVG/ASCII for pictures) and a one-line
human summary goes to stderr.  Exit codes: 0 positive, 1 negative,
2 error, 3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import bounds as bnd
from . import constructive as con
from . import represent as rep
from .core import Library, multiset_of, vertical_faults
from .enumeration import count_tilings, find_tiling
from .errors import BudgetExceeded, SubtileError
from .jsonio import (
    dumps,
    library_from_json,
    load_instance,
    multiset_to_json,
    read_json,
    row_piece_from_json,
    row_piece_to_json,
    tiling_to_json,
    tiling_to_pairs,
)
from .reduce import partition_brute, reduce_partition, rotation_rigidity_check, witness_partition
from .render import RenderSpec, render
from .subtiling import ROTATIONS, beta_empirical, has_subtiling, parse_mode, staircase_tiling

EXIT_YES, EXIT_NO, EXIT_ERROR, EXIT_BUDGET = 0, 1, 2, 3

BETA_CAVEAT = "empirical beta is a lower bound: a finite search cannot certify finiteness"


def _emit(args, payload: dict, summary: str) -> None:
    print(dumps(payload))
    print(summary, file=sys.stderr)


def _picture(args, t) -> bool:
    """Write a rendering instead of JSON when ``--format`` asks for one."""
    if args.format in ("svg", "ascii"):
        sys.stdout.write(render(t, RenderSpec(cell=args.cell, seed=args.seed, format=args.format)))
        return True
    return False


def _library(args) -> Library:
    if not args.library:
        raise SubtileError("--library is required")
    return library_from_json(read_json(args.library))


def _frac(q: Fraction) -> dict:
    return {"value": str(q), "numerator": q.numerator, "denominator": q.denominator, "ceil": bnd.ceil(q)}


# --- subcommands ----------------------------------------------------------

def cmd_tile(args) -> int:
    lib = _library(args)
    t = find_tiling(lib, args.n, args.m, args.budget)
    if t is not None and _picture(args, t):
        return EXIT_YES
    _emit(args, {"tileable": t is not None, "tiling": t and tiling_to_json(t)},
          f"R({args.n}x{args.m}): {'tiling found' if t else 'no tiling'}")
    return EXIT_YES if t else EXIT_NO


def cmd_count(args) -> int:
    c = count_tilings(_library(args), args.n, args.m, args.budget)
    _emit(args, {"n": args.n, "m": args.m, "count": c}, f"{c} tilings of R({args.n}x{args.m})")
    return EXIT_YES if c else EXIT_NO


def cmd_decide(args) -> int:
    if args.staircase is not None:
        t = staircase_tiling(args.staircase)
        n, m, T = t.n, t.m, None
    else:
        if not args.instance:
            raise SubtileError("decide needs --instance or --staircase")
        lib = library_from_json(read_json(args.library)) if args.library else None
        inst = load_instance(read_json(args.instance), lib, args.paper_encoding)
        t, n, m, T = inst.tiling, inst.n, inst.m, inst.multiset
    mode = parse_mode(args.mode)
    if T is None:
        T = multiset_of(t, mode == ROTATIONS, args.reflections)
    w = has_subtiling(T, n, m, mode, args.reflections, args.budget)
    if w is None:
        if t is not None and _picture(args, t):
            return EXIT_NO
        _emit(args, {"subtiling": False, "mode": mode, "n": n, "m": m, "multiset": multiset_to_json(T)},
              f"no subtiling ({mode}); all splits 1..{m // 2} exhausted")
        return EXIT_NO
    combined = w.combined()
    if _picture(args, combined):
        return EXIT_YES
    payload = {
        "subtiling": True,
        "mode": mode,
        "split": w.split,
        "left": tiling_to_json(w.left),
        "right": tiling_to_json(w.right),
        "combined": tiling_to_json(combined),
        "faults": vertical_faults(combined),
    }
    _emit(args, payload, f"subtiling found ({mode}): R({n}x{w.split}) + R({n}x{m - w.split})")
    return EXIT_YES


def cmd_beta(args) -> int:
    lib = _library(args)
    mode = parse_mode(args.mode)
    r = beta_empirical(lib, args.n, args.mmax, mode, args.reflections, args.budget)
    if r.tiling is not None and _picture(args, r.tiling):
        return EXIT_YES if r.exhaustive else EXIT_BUDGET
    payload = {
        "n": r.n,
        "mode": r.mode,
        "m_max": r.m_max,
        "beta": r.beta,
        "exhaustive": r.exhaustive,
        "incomplete_widths": [w.m for w in r.widths if not w.complete],
        "counterexample_widths": r.counterexample_widths,
        "counterexample": r.counterexample and multiset_to_json(r.counterexample),
        "tiling": r.tiling and tiling_to_json(r.tiling),
        "caveat": BETA_CAVEAT,
    }
    _emit(args, payload, f"empirical beta_{r.n} ({r.mode}) = {r.beta} up to m={r.m_max}; {BETA_CAVEAT}")
    return EXIT_YES if r.exhaustive else EXIT_BUDGET


def cmd_represent(args) -> int:
    if args.instance:
        obj = read_json(args.instance)
        n = args.n if args.n is not None else obj.get("n")
        if n is None:
            raise SubtileError("represent --instance needs n (in the file or via --n)")
        P = [row_piece_from_json(p) for p in obj.get("pieces", [])]
        m = rep.check_rep_equations(P, n)
        if m is None:
            _emit(args, {"equations": False}, "area / row-width equations fail")
            return EXIT_ERROR
        t = rep.tile_with_row_assignments(P, n, m, args.budget)
        if t is not None and _picture(args, t):
            return EXIT_YES
        _emit(args, {"equations": True, "m": m, "tiling": t and tiling_to_json(t)},
              f"m={m}: {'row-respecting tiling found' if t else 'no row-respecting tiling'}")
        return EXIT_YES if t else EXIT_NO
    lib = _library(args)
    if args.n is None:
        raise SubtileError("--n is required")
    why = rep.rep_sufficient(lib, args.n)
    payload = {"n": args.n, "sufficient": why}
    if args.search:
        hit = rep.find_rep_counterexample(lib, args.n, args.mmax, args.cmax, args.budget)
        payload["search"] = {"m_max": args.mmax, "count_max": args.cmax}
        if hit is not None:
            P, m = hit
            payload["counterexample"] = {"m": m, "pieces": [row_piece_to_json(p) for p in P]}
            _emit(args, payload, f"not {args.n}-representable: counterexample at m={m}")
            return EXIT_NO
        payload["counterexample"] = None
        _emit(args, payload, f"no counterexample up to m={args.mmax}, {args.cmax} copies per assignment")
        return EXIT_YES
    _emit(args, payload, f"sufficient condition: {why}" if why else "no sufficient condition applies (inconclusive)")
    return EXIT_YES if why else EXIT_NO


def cmd_rectpack(args) -> int:
    a, b, n = args.a, args.b, args.rows
    if args.beta:
        r = con.single_rect_beta(a, b, n, args.mmax, args.budget)
        agree = {None: "no stated value", True: "agree", False: "disagree"}[r.agrees]
        payload = {
            "a": a, "b": b, "n": n,
            "case": r.case,
            "paper_value": r.paper_value,
            "empirical_value": r.empirical_value,
            "empirical_m_max": r.empirical.m_max,
            "exhaustive": r.empirical.exhaustive,
            "agreement": agree,
            "caveat": BETA_CAVEAT,
        }
        _emit(args, payload,
              f"{a}x{b}, n={n} ({r.case}): stated {r.paper_value}, empirical {r.empirical_value} -> {agree.upper()}")
        return EXIT_YES if r.empirical.exhaustive else EXIT_BUDGET
    if args.cols is None:
        raise SubtileError("rectpack needs a b n m (or a b n --beta)")
    v = con.rect_tiles(a, b, n, args.cols)
    payload = {
        "tiles": v.result,
        "condition_a": v.condition_a,
        "condition_b": v.condition_b,
        "n_combination": v.n_combination,
        "m_combination": v.m_combination,
    }
    t = con.rect_tiling_witness(a, b, n, args.cols) if v.result else None
    if t is not None and _picture(args, t):
        return EXIT_YES
    payload["witness"] = t and tiling_to_json(t)
    _emit(args, payload, f"{a}x{b} {'tiles' if v.result else 'does not tile'} R({n}x{args.cols})")
    return EXIT_YES if v.result else EXIT_NO


def cmd_tall(args) -> int:
    lib = _library(args)
    data = con.tall_precondition(lib, args.n)
    if data is None:
        _emit(args, {"precondition": False}, "tall-rectangle hypotheses fail")
        return EXIT_NO
    beta = con.tall_beta(lib, args.n)
    payload = {
        "precondition": True,
        "tall": [list(p.dims) for p in data.tall],
        "unit": data.unit and list(data.unit.dims),
        "gcd": data.gcd,
        "beta": beta,
    }
    code = EXIT_YES
    if args.check:
        mmax = args.mmax or 3 * beta
        r = beta_empirical(lib, args.n, mmax, "translations", budget=args.budget)
        payload["empirical"] = {"beta": r.beta, "m_max": mmax, "exhaustive": r.exhaustive, "agrees": r.beta == beta}
        code = EXIT_BUDGET if not r.exhaustive else (EXIT_YES if r.beta == beta else EXIT_NO)
    _emit(args, payload, f"tall library: beta_{args.n} = {beta}")
    return code


def cmd_reduce(args) -> int:
    items = [int(s) for s in args.partition.replace(" ", "").split(",") if s]
    inst = reduce_partition(items)
    brute = partition_brute(items)
    if inst is None:
        _emit(args, {"partition": items, "instance": None, "partitionable": False}, "odd sum: no instance, no partition")
        return EXIT_NO
    t = inst.tiling
    if args.paper_encoding:
        body = tiling_to_pairs(t, binary=True)
    else:
        body = tiling_to_json(t)
    if args.emit:
        with open(args.emit, "w") as fh:
            fh.write(dumps(body) + "\n")
    if not args.solve and _picture(args, t):
        return EXIT_YES
    payload = {"partition": items, "N": inst.N, "n": inst.n, "m": inst.m, "instance": body,
               "brute_force": brute and {"left": brute[0], "right": brute[1]}}
    if not args.solve:
        _emit(args, payload, f"instance on R({inst.n}x{inst.m}) with {len(t.placements)} pieces")
        return EXIT_YES
    w = has_subtiling(inst.multiset, inst.n, inst.m, ROTATIONS, budget=args.budget)
    payload["subtiling"] = w is not None
    payload["rotation_rigid"] = rotation_rigidity_check(inst, args.budget)
    if w is not None:
        left, right = witness_partition(inst, w)
        payload["witness_partition"] = {"left": left, "right": right, "split": w.split}
    payload["agrees_with_brute_force"] = (w is not None) == (brute is not None)
    _emit(args, payload, f"subtiling {'exists' if w else 'does not exist'}; brute force "
          f"{'finds' if brute else 'finds no'} partition")
    return EXIT_YES if w is not None else EXIT_NO


def cmd_bounds(args) -> int:
    lib = _library(args)
    payload: dict = {"n": args.n, "lcm_lower_bound": bnd.lcm_lower_bound(lib), "bounds": {}, "skipped": {}}
    if args.check:
        cmp = bnd.bound_vs_empirical(lib, args.n, args.mmax, args.budget)
        payload["bounds"] = {k: _frac(v) for k, v in cmp.bounds.items()}
        payload["skipped"] = cmp.skipped
        payload["empirical"] = {"beta": cmp.empirical.beta, "m_max": args.mmax, "exhaustive": cmp.empirical.exhaustive}
        payload["violations"] = cmp.violations
        _emit(args, payload, f"empirical {cmp.empirical.beta} vs bounds "
              + ", ".join(f"{k}={v}" for k, v in cmp.bounds.items()))
        if cmp.violations:
            print(f"FATAL: empirical beta exceeds {cmp.violations}", file=sys.stderr)
            return EXIT_ERROR
        return EXIT_YES if cmp.empirical.exhaustive else EXIT_BUDGET
    for name, fn in (("general", lambda: bnd.bound_general(lib, args.n, args.assume_representable)),
                     ("unit_height", lambda: bnd.bound_unit_height(lib, args.n))):
        try:
            payload["bounds"][name] = _frac(fn())
        except SubtileError as e:
            payload["skipped"][name] = str(e)
    _emit(args, payload, ", ".join(f"{k} <= {v['value']}" for k, v in payload["bounds"].items()) or "no bound applies")
    return EXIT_YES if payload["bounds"] else EXIT_NO


def cmd_render(args) -> int:
    if not args.instance:
        raise SubtileError("render needs --instance")
    lib = library_from_json(read_json(args.library)) if args.library else None
    inst = load_instance(read_json(args.instance), lib, args.paper_encoding)
    if inst.tiling is None:
        raise SubtileError("render needs a tiling, not a multiset")
    fmt = args.format if args.format != "json" else "svg"
    sys.stdout.write(render(inst.tiling, RenderSpec(cell=args.cell, seed=args.seed, format=fmt)))
    print(f"rendered R({inst.n}x{inst.m}) as {fmt}", file=sys.stderr)
    return EXIT_YES


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--library", help="library JSON file")
    common.add_argument("--instance", help="instance JSON file (tiling or multiset)")
    common.add_argument("--n", type=int, help="board height")
    common.add_argument("--m", type=int, help="board width")
    common.add_argument("--mmax", type=int, help="largest width to search")
    common.add_argument("--mode", default="trans", help="trans (translations) or gen (rotations)")
    common.add_argument("--reflections", action="store_true", help="also allow mirror images")
    common.add_argument("--budget", type=int, help="search node cap")
    common.add_argument("--format", choices=("json", "svg", "ascii"), default="json")
    common.add_argument("--seed", type=int, default=0, help="palette seed for SVG output")
    common.add_argument("--cell", type=int, default=24, help="SVG cell size in px")
    common.add_argument("--paper-encoding", action="store_true", help="(h,w)/(x,y) pair encoding")

    p = argparse.ArgumentParser(prog="subtile", description="Subtilings of polyomino tilings of rectangles.", epilog="exit codes: 0 positive, 1 negative, 2 error, 3 budget exceeded")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("tile", cmd_tile, "find a tiling of R(n x m)")
    add("count", cmd_count, "count tilings of R(n x m)")
    d = add("decide", cmd_decide, "decide whether a tiling admits a subtiling")
    d.add_argument("--staircase", type=int, metavar="W", help="use the staircase tiling of width W")
    add("beta", cmd_beta, "empirical beta search")
    r = add("represent", cmd_represent, "representability checks")
    r.add_argument("--search", action="store_true", help="search for a counterexample")
    r.add_argument("--cmax", type=int, default=2, help="copies per (rectangle, rows) type")
    rp = add("rectpack", cmd_rectpack, "single-rectangle tiling predicate and beta")
    rp.add_argument("a", type=int)
    rp.add_argument("b", type=int)
    rp.add_argument("rows", type=int, metavar="n")
    rp.add_argument("cols", type=int, nargs="?", metavar="m")
    rp.add_argument("--beta", action="store_true", help="report stated and empirical beta")
    t = add("tall", cmd_tall, "tall-rectangle libraries")
    t.add_argument("--check", action="store_true", help="compare with an empirical search")
    rd = add("reduce", cmd_reduce, "partition -> subtiling reduction")
    rd.add_argument("--partition", required=True, help='comma-separated integers, e.g. "1,2,3"')
    rd.add_argument("--emit", help="write the instance JSON here")
    rd.add_argument("--solve", action="store_true", help="decide via subtiling search")
    b = add("bounds", cmd_bounds, "closed-form upper bounds")
    b.add_argument("--check", action="store_true", help="compare with empirical beta")
    b.add_argument("--assume-representable", action="store_true")
    add("render", cmd_render, "draw a tiling")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("tile", "count") and (args.n is None or args.m is None):
        parser.error(f"{args.command} needs --n and --m")
    if args.command in ("beta", "bounds", "tall") and args.n is None:
        parser.error(f"{args.command} needs --n")
    if args.command == "beta" and args.mmax is None:
        parser.error("beta needs --mmax")
    if args.command == "bounds" and args.check and args.mmax is None:
        parser.error("bounds --check needs --mmax")
    if args.command == "represent" and args.search and args.mmax is None:
        parser.error("represent --search needs --mmax")
    try:
        return args.func(args)
    except BudgetExceeded as e:
        print(json.dumps({"error": "budget exceeded", "budget": e.budget}))
        print(f"budget of {e.budget} search nodes exceeded", file=sys.stderr)
        return EXIT_BUDGET
    except (SubtileError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
