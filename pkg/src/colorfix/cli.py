"""Command line interface: ``colorfix gen|reduce|solve|verify|report``.

Exit codes: 0 success, 1 disagreement or failed check, 2 usage or input error.
``--seed``, ``--max-n``, ``--max-k`` and ``--cap`` default to the environment
variables ``COLORFIX_SEED``, ``COLORFIX_MAX_N``, ``COLORFIX_MAX_K`` and
``COLORFIX_CAP`` when set.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path
from typing import Sequence

from colorfix import corpus, io
from colorfix.errors import ColorfixError
from colorfix.graph import RepairInstance, apply, is_proper
from colorfix.reductions.crosscomp import cross_compose
from colorfix.reductions.indset import indset_to_3swap, lift_to_r, promise_augment
from colorfix.reductions.planar import (
    prext_to_planar_fix_promise,
    prext_to_planar_swap_promise,
    strip_promise_bipartite,
)
from colorfix.reductions.prext import prext_to_fix, prext_to_swap
from colorfix.reductions.sources import Cnf3Batch, IndSetInstance, PrExtInstance
from colorfix.reductions.trace import Reduction
from colorfix.solvers import solve
from colorfix.verify.gadget import verify_gadget_p1_p2
from colorfix.verify.oracles import independent_set_witness, satisfying_assignment
from colorfix.verify.replay import replay_crosscompose_certificate, replay_indset_certificate
from colorfix.verify.sweep import DEFAULT_SEED, FAMILIES, equivalence_sweep

ENV_PREFIX = "COLORFIX_"
REDUCTIONS = (
    "prext-fix", "prext-swap", "indset-3swap", "lift-r", "promise-augment",
    "cross-compose", "planar-swap-promise", "planar-fix-promise", "strip-promise",
)


class UsageError(Exception):
    pass


def _env_default(name: str, fallback):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {ENV_PREFIX}{name.upper()} must be an integer, got {raw!r}")


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load(path: str):
    try:
        return io.load(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    rng = random.Random(args.seed)
    objs = []
    for _ in range(args.count):
        if args.kind == "separating":
            objs.append(corpus.separating_example(args.variant, args.k if args.k is not None else 3))
        elif args.kind == "repair":
            objs.append(corpus.random_repair(rng, args.n, args.r, args.k or 0, args.variant))
        elif args.kind == "prext":
            objs.append(corpus.random_prext(rng, args.n, args.r, args.degree_one))
        elif args.kind == "indset":
            objs.append(corpus.random_indset(rng, args.n, args.k or 1))
        else:
            objs.append(corpus.random_cnf3_batch(rng, args.t, args.n, args.m))
    if args.out and args.count > 1:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, obj in enumerate(objs):
            io.save(obj, outdir / f"{args.kind}-{i:04d}.json")
    else:
        _write("".join(io.dumps(o) for o in objs), args.out)
    return 0


# ---------------------------------------------------------------------------
# reduce


def _expect(obj, typ, name: str):
    if not isinstance(obj, typ):
        raise UsageError(f"reduction {name} needs a {typ.__name__} input, got {type(obj).__name__}")
    return obj


def cmd_reduce(args) -> int:
    name = args.reduction
    src = _load(args.input)
    if name == "prext-fix":
        red = prext_to_fix(_expect(src, PrExtInstance, name))
    elif name == "prext-swap":
        red = prext_to_swap(_expect(src, PrExtInstance, name))
    elif name == "indset-3swap":
        red = indset_to_3swap(_expect(src, IndSetInstance, name))
    elif name == "lift-r":
        if args.r is None:
            raise UsageError("lift-r needs --r")
        red = lift_to_r(_repair_like(src, name), args.r)
    elif name == "promise-augment":
        if isinstance(src, IndSetInstance):
            red = promise_augment(indset_to_3swap(src), src.graph.n, src.k)
        else:
            if args.n_src is None or args.k_src is None:
                raise UsageError("promise-augment on a repair instance needs --n-src and --k-src")
            red = promise_augment(_repair_like(src, name), args.n_src, args.k_src)
    elif name == "cross-compose":
        red = cross_compose(_expect(src, Cnf3Batch, name), r=args.r or 3)
    elif name == "planar-swap-promise":
        red = prext_to_planar_swap_promise(_expect(src, PrExtInstance, name))
    elif name == "planar-fix-promise":
        red = prext_to_planar_fix_promise(_expect(src, PrExtInstance, name))
    else:
        red = strip_promise_bipartite(_expect(src, Reduction, name))
    if args.dimacs:
        _write(io.to_dimacs(red.graph), args.out)
    else:
        _write(io.dumps(red), args.out)
    return 0


def _repair_like(obj, name: str):
    if isinstance(obj, (Reduction, RepairInstance)):
        return obj
    raise UsageError(f"reduction {name} needs a repair instance, got {type(obj).__name__}")


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    obj = _load(args.input)
    inst = obj.instance if isinstance(obj, Reduction) else obj
    if not isinstance(inst, RepairInstance):
        raise UsageError(f"solve needs a repair instance, got {type(inst).__name__}")
    if args.variant:
        inst = RepairInstance(inst.graph, inst.k, args.variant, inst.promise, inst.adjacent_only and args.variant == "swap")
    res = solve(inst, args.mode, cap=args.cap)
    decision = "YES" if res.decision else "NO"
    print(f"variant: {inst.variant}")
    print(f"budget: {inst.k}")
    print(f"decision: {decision}")
    print(f"optimum: {'unknown (> budget)' if res.optimum is None else res.optimum}")
    if res.certificate is not None:
        print("certificate:")
        for line in res.certificate.lines():
            print(line)
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    if args.gadget:
        report = verify_gadget_p1_p2()
        print("\n".join(report.lines()))
        return 0 if report.ok else 1
    if args.sweep:
        rep = equivalence_sweep(
            args.sweep, max_n=args.max_n, max_k=args.max_k, mode=args.mode,
            samples=args.samples, seed=args.seed, search=args.search,
        )
        if args.out:
            Path(args.out).write_text(rep.jsonl())
        print(rep.summary())
        for rec in rep.disagreements[:10]:
            print(f"  disagree #{rec.index}: {rec.source} expected={rec.expected} got={rec.got} {rec.note}")
        return 0 if rep.ok else 1
    if args.replay:
        if not (args.source and args.instance):
            raise UsageError("--replay needs --source and --instance")
        src = _load(args.source)
        red = _expect(_load(args.instance), Reduction, args.replay)
        if args.replay == "indset":
            src = _expect(src, IndSetInstance, "indset replay")
            witness = independent_set_witness(src)
            if witness is None:
                print("source has no independent set of the requested size; nothing to replay")
                return 1
            cert = replay_indset_certificate(src, witness, red)
        else:
            src = _expect(src, Cnf3Batch, "crosscompose replay")
            found = next(((s, a) for s, phi in enumerate(src.formulas)
                          if (a := satisfying_assignment(phi)) is not None), None)
            if found is None:
                print("no formula in the batch is satisfiable; nothing to replay")
                return 1
            cert = replay_crosscompose_certificate(src, found[0], found[1], red)
        proper = is_proper(apply(red.graph, cert))
        within = len(cert) <= red.instance.k
        for line in cert.lines():
            print(line)
        print(f"moves: {len(cert)} budget: {red.instance.k} proper: {proper}")
        return 0 if proper and within else 1
    raise UsageError("verify needs one of --sweep, --replay or --gadget")


# ---------------------------------------------------------------------------
# report


def cmd_report(args) -> int:
    rows = []
    bad = False
    for path in args.reports:
        text = Path(path).read_text().splitlines()
        if not text:
            raise UsageError(f"empty report: {path}")
        try:
            head = json.loads(text[0])
        except json.JSONDecodeError as exc:
            raise UsageError(f"{path}: not a sweep report ({exc.msg})")
        if "family" not in head:
            raise UsageError(f"{path}: not a sweep report (no header line)")
        bad |= head["disagreements"] > 0
        rows.append((head["family"], head["mode"], head["total"], head["yes"], head["no"],
                     head["disagreements"], head["skipped"], "ok" if not head["disagreements"] else "DISAGREE"))
    header = ("family", "mode", "total", "yes", "no", "disagree", "skipped", "status")
    widths = [max(len(str(x)) for x in col) for col in zip(header, *rows)]
    for row in (header, *rows):
        print("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip())
    return 1 if bad else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="colorfix", description="Coloring repair instances, reductions and checks.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate source or repair instances")
    g.add_argument("--kind", required=True, choices=("repair", "prext", "indset", "cnf3batch", "separating"))
    g.add_argument("--n", type=int, default=_env_default("max-n", 5))
    g.add_argument("--seed", type=int, default=_env_default("seed", DEFAULT_SEED))
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--r", type=int, default=3)
    g.add_argument("--k", type=int, default=None)
    g.add_argument("--t", type=int, default=2, help="formulas per batch")
    g.add_argument("--m", type=int, default=2, help="clauses per formula")
    g.add_argument("--variant", choices=("fix", "swap"), default="fix")
    g.add_argument("--degree-one", action="store_true", help="precolor only degree-1 vertices")
    g.add_argument("--out", help="output file, or directory when --count > 1")
    g.set_defaults(func=cmd_gen)

    r = sub.add_parser("reduce", help="apply a reduction")
    r.add_argument("--reduction", required=True, choices=REDUCTIONS)
    r.add_argument("input")
    r.add_argument("--r", type=int, help="target colors for lift-r / cross-compose")
    r.add_argument("--n-src", type=int)
    r.add_argument("--k-src", type=int)
    r.add_argument("--dimacs", action="store_true", help="write graph structure as DIMACS")
    r.add_argument("--out")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", help="solve a repair instance")
    s.add_argument("input")
    s.add_argument("--mode", choices=("auto", "brute", "branch", "bfs-oracle"), default="auto")
    s.add_argument("--variant", choices=("fix", "swap"), help="override the file's variant")
    s.add_argument("--cap", type=int, default=_env_default("cap", None))
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run an equivalence sweep, certificate replay or gadget check")
    v.add_argument("--sweep", choices=FAMILIES)
    v.add_argument("--replay", choices=("indset", "crosscompose"))
    v.add_argument("--gadget", action="store_true")
    v.add_argument("--source")
    v.add_argument("--instance")
    v.add_argument("--max-n", type=int, default=_env_default("max-n", 5))
    v.add_argument("--max-k", type=int, default=_env_default("max-k", 1))
    v.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    v.add_argument("--samples", type=int, default=200)
    v.add_argument("--seed", type=int, default=_env_default("seed", DEFAULT_SEED))
    v.add_argument("--search", action="store_true", help="bounded move search on IndSet targets")
    v.add_argument("--out", help="write the sweep report as JSON lines")
    v.set_defaults(func=cmd_verify)

    rp = sub.add_parser("report", help="tabulate sweep reports")
    rp.add_argument("reports", nargs="+")
    rp.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (UsageError, ColorfixError, ValueError) as exc:
        print(f"colorfix: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
