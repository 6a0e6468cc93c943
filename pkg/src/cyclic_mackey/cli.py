"""Command-line interface: ``cyclic-mackey <command> ...``.

Commands: pic, rep2pic, cohomology, oracle, strat, verify.  Flag errors exit
with status 2, a failing ``verify`` with status 1.
"""
from __future__ import annotations

import argparse
import json
import sys

from .complexes import FinGenAb

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Invalid flag values discovered after parsing."""


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclic-mackey",
                                     description="Picard-graded cohomology of a point for cyclic p-groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_flags(p):
        p.add_argument("--p", type=int, required=True, help="an odd prime")
        p.add_argument("--n", type=int, required=True, help="the group is C_{p^n}")

    def window_flags(p):
        p.add_argument("--imin", type=int, default=-20)
        p.add_argument("--imax", type=int, default=20)
        p.add_argument("--json", action="store_true", help="emit JSON instead of a text table")

    p = sub.add_parser("pic", help="structure of the Picard group")
    group_flags(p)

    p = sub.add_parser("rep2pic", help="Picard coordinates of a virtual representation")
    group_flags(p)
    p.add_argument("--rep", required=True, help='e.g. "triv*1, rho(3)*-2"')

    p = sub.add_parser("cohomology", help="Mackey functor values and structure maps")
    group_flags(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--pic", help='coordinates "b0,...,bn;g1,...,gn"')
    which.add_argument("--rep", help="a virtual representation")
    p.add_argument("--negate", action="store_true", help="use the inverse of the representation's element")
    window_flags(p)

    p = sub.add_parser("oracle", help="orbit-space cohomology of a representation sphere")
    group_flags(p)
    p.add_argument("--rep", required=True, help="an actual representation")
    window_flags(p)

    p = sub.add_parser("strat", help="gluing index data for a pair of subgroups")
    p.add_argument("--group", required=True, help="Cn, Sn, An, Dn or generators in cycle notation")
    p.add_argument("--h", required=True, help='subgroup H: "e", "G" or generators like "(1,2)(3,4)"')
    p.add_argument("--k", required=True, help="subgroup K, same syntax")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run acceptance checks")
    p.add_argument("--suite", required=True, choices=["catalog", "tate", "unit", "oracle", "stratcomb", "all"])
    return parser


def _check_group(args, need_odd: bool = True):
    from .groupring import CyclicGroupCtx
    if args.n < 1:
        raise UsageError(f"--n must be at least 1, got {args.n}")
    if need_odd and args.p == 2:
        raise UsageError("p = 2 is not supported: the Picard group description holds for odd primes only")
    try:
        CyclicGroupCtx(args.p, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_window(args):
    if args.imin > args.imax:
        raise UsageError(f"empty degree window [{args.imin}, {args.imax}]")
    return args.imin, args.imax


def _rep(args):
    from .picard import parse_rep
    try:
        return parse_rep(args.rep, args.p, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# ---------------------------------------------------------------------------
# commands


def cmd_pic(args, out) -> int:
    from .picard import pic_structure
    _check_group(args)
    text, _ = pic_structure(args.p, args.n)
    print(text, file=out)
    return EXIT_OK


def cmd_rep2pic(args, out) -> int:
    from .picard import format_pic, rep_to_pic
    _check_group(args)
    print(format_pic(rep_to_pic(_rep(args))), file=out)
    return EXIT_OK


def _format_grid(n: int, window, value) -> list:
    lo, hi = window
    header = ["i"] + [f"a={a}" for a in range(n + 1)]
    rows = [[str(i)] + [str(value(a, i)) for a in range(n + 1)] for i in range(lo, hi + 1)]
    widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in [header] + rows]


def _format_maps(title: str, maps: dict, n: int, window) -> list:
    lines = []
    for a in range(n):
        entries = [(i, maps[(a, i)]) for i in range(window[0], window[1] + 1)
                   if maps[(a, i)].matrix.size]
        if entries:
            lines.append(title.format(a=a, b=a + 1))
            lines += [f"  i={i}: {m.tolist()}" for i, m in entries]
    return lines


def cmd_cohomology(args, out) -> int:
    from .cohomology import mackey_table
    from .picard import format_pic, parse_pic, pic_neg, rep_to_pic
    _check_group(args)
    window = _check_window(args)
    if args.pic is not None:
        if args.negate:
            raise UsageError("--negate applies to --rep only")
        try:
            coords = parse_pic(args.pic, args.p, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        coords = rep_to_pic(_rep(args))
        if args.negate:
            coords = pic_neg(coords)
    table = mackey_table(args.p, args.n, coords, window)
    if args.json:
        print(json.dumps(table.to_json(), sort_keys=True), file=out)
        return EXIT_OK
    print(f"C_{args.p}^{args.n}, Picard element {format_pic(coords)}, degrees {window[0]}..{window[1]}",
          file=out)
    for line in _format_grid(args.n, window, lambda a, i: table.values[(a, i)]):
        print(line, file=out)
    for line in _format_maps("inclusion a={b} -> a={a}:", table.inc, args.n, window):
        print(line, file=out)
    for line in _format_maps("transfer a={a} -> a={b}:", table.trf, args.n, window):
        print(line, file=out)
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    from .bredon import oracle_inclusion, oracle_table
    _check_group(args, need_odd=False)
    window = _check_window(args)
    V = _rep(args)
    if not V.is_actual():
        raise UsageError(f"the oracle needs an actual representation, got {V}")
    values = oracle_table(args.p, args.n, V, window)
    inc = {(a, i): oracle_inclusion(args.p, args.n, a, V, i)
           for a in range(args.n) for i in range(window[0], window[1] + 1)}
    if args.json:
        levels = []
        for a in range(args.n + 1):
            entry = {"a": a, "groups": {str(i): values[(a, i)].to_json()
                                        for i in range(window[0], window[1] + 1)}}
            if a < args.n:
                entry["inc"] = {str(i): inc[(a, i)].tolist() for i in range(window[0], window[1] + 1)}
            levels.append(entry)
        print(json.dumps({"schema": 1, "p": args.p, "n": args.n, "rep": str(V),
                          "window": list(window), "levels": levels}, sort_keys=True), file=out)
        return EXIT_OK
    print(f"reduced cohomology of S^V / C_{args.p}^a for V = {V}, degrees {window[0]}..{window[1]}",
          file=out)
    for line in _format_grid(args.n, window, lambda a, i: values[(a, i)]):
        print(line, file=out)
    for line in _format_maps("inclusion a={b} -> a={a}:", inc, args.n, window):
        print(line, file=out)
    return EXIT_OK


def cmd_strat(args, out) -> int:
    from .stratcomb import GroupTooLarge, c_set, gluing_index, parse_group, parse_subgroup
    try:
        G = parse_group(args.group)
        H = parse_subgroup(G, args.h)
        K = parse_subgroup(G, args.k)
    except (ValueError, GroupTooLarge) as exc:
        raise UsageError(str(exc)) from exc
    cs = c_set(G, H, K)
    data = gluing_index(G, H, K)
    if args.json:
        print(json.dumps({"schema": 1, "group": args.group, "order": G.order, "h_order": len(H),
                          "k_order": len(K), "c_set_size": len(cs),
                          "classes": [d.to_json(G) for d in data]}, sort_keys=True), file=out)
        return EXIT_OK
    print(f"G = {args.group} (order {G.order}), |H| = {len(H)}, |K| = {len(K)}", file=out)
    print(f"|C(H,K)| = {len(cs)}, double coset classes: {len(data)}", file=out)
    for d in data:
        info = d.to_json(G)
        note = " (vanishes for spectra: not a p-group)" if d.vanishes_for_spectra else ""
        print(f"  g = {info['representative']}: Tate quotient {d.tate_quotient}{note}, "
              f"induced from a group of order {d.induction_order}, {d.class_size} cosets", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    from .acceptance import run_criterion, select
    outcomes = [run_criterion(c) for c in select(args.suite)]
    for o in outcomes:
        print(o.line(), file=out)
    failed = sum(not o.passed for o in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} criteria passed", file=out)
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {"pic": cmd_pic, "rep2pic": cmd_rep2pic, "cohomology": cmd_cohomology,
            "oracle": cmd_oracle, "strat": cmd_strat, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"cyclic-mackey {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
