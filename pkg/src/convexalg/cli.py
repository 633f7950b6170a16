"""Command-line interface: spec I/O, evaluation, classification, isomorphism,
law checking, and path export.

Every subcommand is a thin shell over the library; identical flags and
seeds give byte-identical output.  Exit codes: 0 success, 1 failed checks
or law failures, 2 usage errors.
"""

from __future__ import annotations

import argparse
import importlib
import json
import sys
from pathlib import Path

from . import iso as iso_mod
from . import laws as laws_mod
from .classify import (
    GRID_DEFAULT,
    TAU_DEPTH_DEFAULT,
    TAU_THRESHOLD_DEFAULT,
    classify as run_classify,
)
from .blocks import BlockKind
from .core import (
    Algebra,
    BlockAlgebra,
    LadderAlgebra,
    NumericAlgebra,
    PointDist,
    StructuredAlgebra,
    barycenter,
    combine,
    path,
)
from .eaterspec import (
    GapTag,
    LadderSpec,
    SpecError,
    dumps_spec,
    ladder_to_window,
    loads_ladder,
    loads_spec,
    spec_to_obj,
)
from .plonka import SPoint, format_point
from .rational import rat, rat_str

BLOCK_NAMES = {k.value for k in BlockKind}


def _load_spec_or_ladder(path_str: str):
    text = Path(path_str).read_text()
    obj = json.loads(text)
    if "ladder" in obj:
        return loads_ladder(text)
    return loads_spec(text)


def _resolve_algebra(name: str, args) -> Algebra:
    """linear|max|cap|exp, a spec/ladder JSON file, or module:function."""
    if name in BLOCK_NAMES:
        return BlockAlgebra(BlockKind.parse(name))
    if Path(name).exists():
        loaded = _load_spec_or_ladder(name)
        if isinstance(loaded, LadderSpec):
            lo, hi = _parse_window(getattr(args, "window", None) or "0..2")
            return LadderAlgebra(loaded, lo, hi)
        return StructuredAlgebra(loaded)
    if ":" in name:
        mod_name, _, attr = name.partition(":")
        fn = getattr(importlib.import_module(mod_name), attr)
        return NumericAlgebra(fn, tol=getattr(args, "tol", 1e-9), name=name)
    raise SystemExit(f"error: no such algebra: {name!r} (not a block, file, or plugin)")


def _parse_window(text: str) -> tuple[int, int]:
    lo_s, _, hi_s = text.partition("..")
    return int(lo_s), int(hi_s)


def _print_point(alg: Algebra, value) -> str:
    if isinstance(alg, StructuredAlgebra) and isinstance(value, SPoint):
        out = format_point(alg.spec, value)
        amb = alg.embed(value)
        return f"{out}  (ambient ~= {amb:.10g})"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def cmd_validate(args) -> int:
    try:
        loaded = _load_spec_or_ladder(args.spec)
    except SpecError as exc:
        print(f"invalid: {type(exc).__name__}: {exc}")
        return 1
    print(f"valid: {loaded!r}")
    return 0


def cmd_eval(args) -> int:
    alg = _resolve_algebra(args.algebra, args)
    kwargs = {}
    if isinstance(alg, StructuredAlgebra):
        kwargs["allow_approx"] = args.allow_approx
        x = alg.point(args.x, **kwargs)
        y = alg.point(args.y, **kwargs)
    else:
        x, y = alg.point(args.x), alg.point(args.y)
    result = combine(alg, x, y, rat(args.p))
    print(_print_point(alg, result))
    return 0


def cmd_bary(args) -> int:
    alg = _resolve_algebra(args.algebra, args)
    obj = json.loads(Path(args.dist).read_text())
    weights = obj["weights"]
    points = obj["points"]
    entries = []
    for label, w in weights.items():
        raw = points[label]
        if isinstance(alg, StructuredAlgebra):
            pt = alg.point(raw, allow_approx=args.allow_approx)
        else:
            pt = alg.point(raw)
        entries.append((pt, rat(w)))
    result = barycenter(alg, PointDist.of(entries))
    print(_print_point(alg, result))
    return 0


def cmd_classify(args) -> int:
    alg = _resolve_algebra(args.algebra, args)
    spec = run_classify(alg, grid=args.grid, depth=args.depth,
                        threshold=args.threshold)
    text = dumps_spec(spec, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"spec written to {args.out}")
    else:
        print(text)
    if isinstance(alg, StructuredAlgebra):
        print("provenance: exact")
    else:
        print(f"provenance: probed(grid={args.grid},depth={args.depth},threshold={args.threshold:g})")
    return 0


def _witness_obj(a, b) -> dict:
    eaters = []
    for ca, cb in zip(a.components, b.components):
        if ca.is_point:
            eaters.append({"from": rat_str(ca.lo), "to": rat_str(cb.lo)})
        else:
            eaters.append({
                "from": [rat_str(ca.lo), rat_str(ca.hi)],
                "to": [rat_str(cb.lo), rat_str(cb.hi)],
                "rule": "affine",
            })
    gap_rules = []
    for i, tag in enumerate(a.gap_tags):
        gap_rules.append({
            "from": [rat_str(a.components[i].hi), rat_str(a.components[i + 1].lo)],
            "to": [rat_str(b.components[i].hi), rat_str(b.components[i + 1].lo)],
            "rule": "offset-identity" if tag is GapTag.INFINITY else "affine-offset",
        })
    out = {"eaters": eaters, "gaps": gap_rules}
    if a.top_open:
        out["top"] = {"rule": "offset-identity"}
    return out


def cmd_iso(args) -> int:
    la = _load_spec_or_ladder(args.spec_a)
    lb = _load_spec_or_ladder(args.spec_b)
    if isinstance(la, LadderSpec) or isinstance(lb, LadderSpec):
        if not (isinstance(la, LadderSpec) and isinstance(lb, LadderSpec)):
            print("not comparable: one ladder file, one plain spec")
            return 1
        result = iso_mod.ladder_shift_equiv(la, lb)
        if result is None:
            print("not isomorphic (no tag-sequence shift)")
        else:
            msg = f"isomorphic (shift m = {result.m})"
            if result.periodic:
                msg += " [every shift works; constant tag sequence]"
            if result.note:
                msg += f" [{result.note}]"
            print(msg)
        return 0
    if not iso_mod.iso_decide(la, lb):
        k = iso_mod.signature_mismatch_position(la, lb)
        print(f"not isomorphic (signature mismatch at position {k})")
        return 0
    if args.witness:
        Path(args.witness).write_text(json.dumps(_witness_obj(la, lb), indent=2) + "\n")
        print(f"isomorphic (witness emitted to {args.witness})")
    else:
        print("isomorphic (witness emitted below)")
        print(json.dumps(_witness_obj(la, lb), indent=2))
    if args.map_point:
        alg_a = StructuredAlgebra(la)
        pt = alg_a.point(args.map_point, allow_approx=args.allow_approx)
        image = iso_mod.iso_map(la, lb, pt)
        print(f"{format_point(la, pt)} -> {format_point(lb, image)}")
    return 0


def cmd_laws(args) -> int:
    alg = _resolve_algebra(args.algebra, args)
    sampler = laws_mod.Sampler(seed=args.seed, count=args.samples)
    reports = laws_mod.run_core_suites(alg, sampler, depth=args.depth)
    reports[laws_mod.KERNEL_COHERENCE] = laws_mod.check_kernel_coherence(
        alg, laws_mod.Sampler(seed=args.seed, count=max(1, args.samples // 10))
    )
    import random

    rnd = random.Random(args.seed)
    labels = ["a", "b", "c"]
    point_of = {l: laws_mod.sample_point(alg, rnd) for l in labels}
    pairs = max(1, args.samples // 100)
    directions = []
    q = laws_mod.Dist.of({"a": rat(1, 2), "b": rat(1, 4), "c": rat(1, 4)})
    for _ in range(pairs):
        directions.append(laws_mod.Dist.of({rnd.choice(labels): rat(1)}))
    reports[laws_mod.EXTENSION_LSC] = laws_mod.check_extension_lsc(
        alg, point_of, q, directions, depth=args.depth
    )
    print(f"law suites for {alg.name} (seed={args.seed}, samples={args.samples}, depth={args.depth})")
    any_fail = False
    for report in reports.values():
        print("  " + report.line())
        if report.note:
            print(f"    note: {report.note}")
        for w in report.failures:
            print(f"    witness: {w}")
        any_fail = any_fail or not report.passed
    return 1 if any_fail else 0


def cmd_path(args) -> int:
    alg = _resolve_algebra(args.algebra, args)
    if isinstance(alg, StructuredAlgebra):
        x = alg.point(args.x, allow_approx=args.allow_approx)
        y = alg.point(args.y, allow_approx=args.allow_approx)
    else:
        x, y = alg.point(args.x), alg.point(args.y)
    lines = ["t,value"]
    for i in range(args.steps + 1):
        t = rat(i, args.steps)
        value = path(alg, x, y, t)
        if isinstance(alg, StructuredAlgebra):
            num = alg.embed(value)
        else:
            num = float(value)
        lines.append(f"{float(t):.12g},{num:.12g}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"csv written to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_ladder(args) -> int:
    exceptions = []
    for item in args.exception or []:
        n_s, _, tag_s = item.partition("=")
        exceptions.append((int(n_s), GapTag.parse(tag_s)))
    ladder = LadderSpec(
        r=rat(args.r),
        left=GapTag.parse(args.left),
        right=GapTag.parse(args.right),
        exceptions=tuple(exceptions),
    )
    lo, hi = _parse_window(args.window)
    spec = ladder_to_window(ladder, lo, hi)
    text = json.dumps(spec_to_obj(spec), indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"window spec written to {args.out}")
    else:
        print(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexalg",
        description="Convex algebras on [0,1]: evaluate, law-check, classify, compare.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a spec or ladder file")
    p.add_argument("spec")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("eval", help="evaluate one binary mixture")
    p.add_argument("algebra")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--window", default=None, help="ladder window lo..hi")
    p.add_argument("--allow-approx", action="store_true")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("bary", help="evaluate a finite mixture from a distribution file")
    p.add_argument("algebra")
    p.add_argument("--dist", required=True)
    p.add_argument("--window", default=None)
    p.add_argument("--allow-approx", action="store_true")
    p.set_defaults(fn=cmd_bary)

    p = sub.add_parser("classify", help="recover the eater data set of an algebra")
    p.add_argument("algebra")
    p.add_argument("--grid", type=int, default=GRID_DEFAULT)
    p.add_argument("--depth", type=int, default=TAU_DEPTH_DEFAULT)
    p.add_argument("--threshold", type=float, default=TAU_THRESHOLD_DEFAULT)
    p.add_argument("--tol", type=float, default=1e-9, help="black-box equality tolerance")
    p.add_argument("--out", default=None)
    p.add_argument("--window", default=None)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("iso", help="decide isomorphy of two spec files")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--map-point", default=None)
    p.add_argument("--witness", default=None)
    p.add_argument("--allow-approx", action="store_true")
    p.set_defaults(fn=cmd_iso)

    p = sub.add_parser("laws", help="run the law suites")
    p.add_argument("algebra")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--depth", type=int, default=laws_mod.DEFAULT_DEPTH)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--window", default=None)
    p.set_defaults(fn=cmd_laws)

    p = sub.add_parser("path", help="export mixture-path samples as CSV")
    p.add_argument("algebra")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out", default=None)
    p.add_argument("--window", default=None)
    p.add_argument("--allow-approx", action="store_true")
    p.set_defaults(fn=cmd_path)

    p = sub.add_parser("ladder", help="expand a ladder window into a spec file")
    p.add_argument("--r", required=True)
    p.add_argument("--window", required=True, help="lo..hi gap-index window")
    p.add_argument("--left", default="1")
    p.add_argument("--right", default="1")
    p.add_argument("--exception", action="append", help="n=TAG, repeatable")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_ladder)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (SpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
