"""``holoq`` command line.

Exit codes: 0 success, 1 domain failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .chartable import character_table
from .cohomology import InvalidCocycle, h2
from .crystallographic import assemble, report
from .groups import GroupError
from .pipeline import verify_examples, verify_quaternionic
from .screener import catalog_files, screen_catalog
from .zlattice import LatticeError

OK, DOMAIN, INPUT = 0, 1, 2


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_chartable(args):
    G, meta = io.load_group(args.group, with_meta=True)
    T = character_table(G)
    classes = [{"representative": G.word_name(c.representative), "size": c.size,
                "order": G.element_order(c.representative)} for c in T.classes]
    rows = [{"degree": chi.degree, "indicator": nu, "type": t,
             "values": [io.cyclotomic_to_dict(v) for v in chi.values]}
            for chi, nu, t in zip(T.irreducibles, T.indicators, T.types)]
    payload = {"group": meta.get("name", ""), "order": G.order, "classes": classes,
               "characters": rows, "prime": T.prime, "conductor": T.conductor}
    head = ["class"] + [c["representative"] for c in classes]
    sizes = ["size"] + [str(c["size"]) for c in classes]
    body = [[f"X.{i + 1}"] + [str(v) for v in chi.values] + [f"nu={nu}"]
            for i, (chi, nu) in enumerate(zip(T.irreducibles, T.indicators))]
    width = max(len(x) for row in [head, sizes] + body for x in row) + 1
    lines = ["".join(x.rjust(width) for x in row) for row in [head, sizes] + body]
    text = f"|G| = {G.order}, {len(classes)} classes\n" + "\n".join(lines)
    _emit(args, payload, text)
    return OK


def cmd_cohomology(args):
    G = io.load_group(args.group)
    L = io.load_module(args.module, G)
    if not L.module_check():
        raise io.InputError("module matrices do not define a G-module")
    H = h2(G, L)
    payload = {"invariants": H.invariants, "order": H.order,
               "generators": [io.cocycle_to_dict(c) for c in H.basis]}
    _emit(args, payload, f"H² ≅ {H}")
    return OK


def cmd_manifold(args):
    G = io.load_group(args.group)
    L = io.load_module(args.module, G)
    if not L.module_check():
        raise io.InputError("module matrices do not define a G-module")
    c = io.load_cocycle(args.cocycle, L)
    try:
        gamma = assemble(G, L, c)
    except InvalidCocycle as exc:
        print(f"invalid cocycle: {exc}", file=sys.stderr)
        return DOMAIN
    rep = report(gamma)
    payload = rep.as_dict()
    text = "\n".join(f"{k}: {v}" for k, v in payload.items() if k != "restrictions")
    _emit(args, payload, text)
    return OK if rep.torsion_free else DOMAIN


def cmd_screen(args):
    if not Path(args.catalog).exists():
        raise io.InputError(f"{args.catalog}: no such file or directory")
    files = catalog_files(args.catalog)
    rep = screen_catalog(files, blocks=args.blocks)
    lines = []
    for v in rep.verdicts:
        if v.overall == "candidate":
            lines.append(f"{v.group_id}: candidate")
        else:
            c = v.condition(v.first_failure)
            lines.append(f"{v.group_id}: excluded, condition {c.number} ({c.detail})")
    for p, msg in rep.errors:
        lines.append(f"{p}: error: {msg}")
    if not rep.verdicts and not rep.errors:
        lines.append("empty catalog")
    _emit(args, rep.as_dict(), "\n".join(lines))
    return INPUT if rep.errors else OK


def _pipeline_text(rep):
    lines = [f"{'ok ' if s.ok else 'FAIL'} {s.name}" for s in rep.stages]
    if rep.failure:
        lines.append(f"failed at stage {rep.failure.stage}: {rep.failure.message}")
    return "\n".join(lines)


def _pipeline_exit(rep):
    if rep.ok:
        return OK
    return INPUT if rep.failure.stage == "input" else DOMAIN


def cmd_verify_paper(args):
    rep = verify_quaternionic(args.fixtures)
    _emit(args, rep.as_dict(), _pipeline_text(rep))
    return _pipeline_exit(rep)


def cmd_verify_examples(args):
    rep = verify_examples(args.fixtures)
    _emit(args, rep.as_dict(), _pipeline_text(rep))
    return _pipeline_exit(rep)


def build_parser():
    p = argparse.ArgumentParser(prog="holoq", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, help=None):
        sp = sub.add_parser(name, help=help)
        for arg in positional:
            sp.add_argument(arg)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    add("chartable", cmd_chartable, "group", help="character table and indicators")
    add("cohomology", cmd_cohomology, "group", "module", help="H^2 of a G-lattice")
    add("manifold", cmd_manifold, "group", "module", "cocycle", help="flat manifold report")
    sp = add("screen", cmd_screen, "catalog", help="screen groups for quaternionic holonomy")
    sp.add_argument("--blocks", action="store_true", help="also test principal blocks")
    sp = add("verify-paper", cmd_verify_paper, help="reproduce the quaternionic example")
    sp.add_argument("--fixtures", help="bundle directory")
    sp = add("verify-examples", cmd_verify_examples, help="check the low-dimensional examples")
    sp.add_argument("--fixtures", help="directory of example bundles")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (io.InputError, GroupError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
