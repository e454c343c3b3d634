"""Command line: check, convert, roundtrip and gen on JSON manifests.

Exit status is 0 when every axiom holds, 1 on an axiom or construction
failure, 2 on unreadable or inconsistent input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time

from . import config, examples, groups, manifest
from .action import check_action
from .exactla import BudgetExceeded, field_from_name
from .hopfcore import ClosureError, GrouplikeError, check_hopf
from .morphism import check_morphism
from .report import AxiomFailure, Report
from .square import (
    cat2_to_square,
    check_cat2,
    check_crossed_square,
    square_roundtrip,
    square_to_2action,
    square_to_cat2,
)
from .twoaction import check_2action, check_split_epi2, pt2_to_2action, twoaction_roundtrip, twoaction_to_pt2
from .xmod import cat1_to_xmod, check_cat1, check_crossed_module, xmod_roundtrip, xmod_to_cat1

EXIT_OK, EXIT_AXIOM, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _verdicts(name: str, verdicts: dict[str, bool]) -> Report:
    rep = Report(name)
    for k, v in verdicts.items():
        rep.flag(k, v)
    return rep


def _group_report(G) -> Report:
    rep = Report("group")
    rep.flag("group_axioms", True, note=f"order {G.order}")
    return rep


CHECKERS = {
    "hopf": check_hopf,
    "group": _group_report,
    "morphism": check_morphism,
    "action": check_action,
    "xmod": check_crossed_module,
    "cat1": check_cat1,
    "square": check_crossed_square,
    "2action": check_2action,
    "pt2": check_split_epi2,
    "cat2": check_cat2,
    "group_xmod": lambda g: _verdicts("group crossed module", groups.check_group_xmod(g)),
    "group_square": lambda g: _verdicts("group crossed square", groups.check_group_square(g)),
}

CONVERSIONS = {
    ("xmod", "cat1"): xmod_to_cat1,
    ("cat1", "xmod"): cat1_to_xmod,
    ("square", "cat2"): square_to_cat2,
    ("cat2", "square"): cat2_to_square,
    ("2action", "pt2"): lambda a: twoaction_to_pt2(a).split,
    ("pt2", "2action"): pt2_to_2action,
    ("square", "2action"): square_to_2action,
    ("group_square", "square"): examples.lift_group_square,
    ("square", "group_square"): examples.extract_group_square,
    ("group_xmod", "xmod"): examples.lift_group_xmod,
    ("xmod", "group_xmod"): examples.extract_group_xmod,
}

ROUNDTRIPS = {"xmod": xmod_roundtrip, "2action": twoaction_roundtrip, "square": square_roundtrip}


def _read(kind: str, path: str, args):
    obj = manifest.load(path)
    got = manifest.kind_of(obj)
    if got != kind:
        raise InputError(f"{path}: manifest holds a {got}, not a {kind}")
    if args.field is not None and got not in ("group", "group_xmod", "group_square"):
        want = field_from_name(args.field)
        have = manifest._field_of(obj)
        if have is not want:
            raise InputError(f"{path}: manifest is over {manifest.field_tag(have)}, --field says {args.field}")
    return obj


def _emit(rep: Report, args, out=None) -> None:
    out = out or sys.stdout
    out.write((rep.to_json() if args.report == "json" else rep.to_text()) + "\n")


def cmd_check(args) -> int:
    obj = _read(args.kind, args.path, args)
    t0 = time.perf_counter()
    rep = CHECKERS[args.kind](obj)
    rep.seconds = time.perf_counter() - t0
    rep.object_id = f"{args.kind} {args.path}"
    _emit(rep, args)
    return EXIT_OK if rep.ok else EXIT_AXIOM


def cmd_convert(args) -> int:
    key = (args.source, args.target)
    if key not in CONVERSIONS:
        raise InputError(f"no conversion {args.source} -> {args.target}; "
                         f"available: {', '.join(f'{a}->{b}' for a, b in CONVERSIONS)}")
    obj = _read(args.source, args.path, args)
    try:
        out = CONVERSIONS[key](obj)
    except ValueError as e:
        if key[0].startswith("group_"):
            raise InputError(str(e)) from None
        raise
    manifest.save(out, args.out)
    if args.report == "json":
        sys.stdout.write(json.dumps({"status": "ok", "wrote": args.out, "kind": args.target}) + "\n")
    else:
        sys.stdout.write(f"wrote {args.target} manifest to {args.out}\n")
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    obj = _read(args.kind, args.path, args)
    t0 = time.perf_counter()
    rep = ROUNDTRIPS[args.kind](obj)
    rep.seconds = time.perf_counter() - t0
    _emit(rep, args)
    return EXIT_OK if rep.ok else EXIT_AXIOM


def _labels(s: str | None):
    """Comma separated labels; commas inside parentheses belong to the label."""
    return None if s is None else re.findall(r"\([^)]*\)|[^,\s]+", s)


def cmd_gen(args) -> int:
    field = field_from_name(args.field or "q")
    name = args.name.lower()
    try:
        if name == "xmod":
            obj = examples.named_xmod(args.xmod or "conj_a3_s3", field)
        elif name == "hopf":
            obj = examples.named_algebra(args.algebra or args.group or "c2", field)
        elif name == "group-normal-pair":
            G = groups.named_group(args.group or "v4")
            obj = groups.normal_pair_square(G, [G.index(x) for x in _labels(args.N)],
                                            [G.index(x) for x in _labels(args.M)])
        elif name in examples.EXAMPLE_KINDS:
            obj = examples.gen_example(name, group=args.group, algebra=args.algebra, xmod=args.xmod,
                                       N=_labels(args.N), M=_labels(args.M), field=field)
        else:
            raise InputError(f"unknown example {args.name!r}")
    except (KeyError, TypeError) as e:
        raise InputError(f"bad parameters for {args.name}: {e}") from None
    manifest.save(obj, args.out)
    sys.stdout.write(f"wrote {manifest.kind_of(obj)} manifest to {args.out}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="q or fp:<p>")
    common.add_argument("--paranoid", choices=("on", "off", "auto"), default="auto")
    common.add_argument("--sample-seed", type=int, default=0)
    common.add_argument("--report", choices=("json", "text"), default="text")
    common.add_argument("--budget", type=int, default=config.Settings.budget, help="materialization budget")

    p = argparse.ArgumentParser(prog="hopfsquare", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run the axiom suite of a manifest")
    c.add_argument("kind", choices=sorted(CHECKERS))
    c.add_argument("path")
    c.set_defaults(fn=cmd_check)

    v = sub.add_parser("convert", parents=[common], help="convert between equivalent structures")
    v.add_argument("source", metavar="from")
    v.add_argument("target", metavar="to")
    v.add_argument("path")
    v.add_argument("-o", "--out", required=True)
    v.set_defaults(fn=cmd_convert)

    r = sub.add_parser("roundtrip", parents=[common], help="forward, back and compare")
    r.add_argument("kind", choices=sorted(ROUNDTRIPS))
    r.add_argument("path")
    r.set_defaults(fn=cmd_roundtrip)

    g = sub.add_parser("gen", parents=[common], help="write an example manifest")
    g.add_argument("name", help=", ".join(examples.EXAMPLE_KINDS + ("xmod", "hopf", "group-normal-pair")))
    g.add_argument("--group")
    g.add_argument("--algebra")
    g.add_argument("--xmod")
    g.add_argument("--N", help="comma separated labels")
    g.add_argument("--M", help="comma separated labels")
    g.add_argument("-o", "--out", required=True)
    g.set_defaults(fn=cmd_gen)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        if args.field is not None:
            field_from_name(args.field)
        with config.configured(paranoid=args.paranoid, sample_seed=args.sample_seed, budget=args.budget):
            return args.fn(args)
    except AxiomFailure as e:
        sys.stderr.write("axiom failure\n")
        _emit(e.report, args, sys.stderr)
        return EXIT_AXIOM
    except (ClosureError, GrouplikeError) as e:
        sys.stderr.write(f"construction failed: {e}\n")
        return EXIT_AXIOM
    except (InputError, manifest.ManifestError, BudgetExceeded, OSError, ValueError) as e:
        sys.stderr.write(f"input error: {e}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
