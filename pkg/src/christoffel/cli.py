"""Command line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource bound exceeded.
Data goes to stdout (or ``--output``); progress goes to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import __version__, dimcount, geoderiv, symfunc, verify
from .trees import EnumerationOverflow, encode, enumerate_trees, gaussian_trees, to_json

log = logging.getLogger("christoffel")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
MAX_FLA_DEGREE = 12
WORKERS_ENV = "CHRISTOFFEL_WORKERS"


class UsageError(Exception):
    pass


class BoundError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    mode: str | None = None
    n: int | None = None
    multidegree: list | None = None
    max_noises: int = 6
    max_vertices: int | None = None
    max_alpha: int = 2
    order: int = 1
    degree: int | None = None
    basis: str = "e"
    d: int = 3
    m: int = 2
    seed: int = 7
    format: str = "text"
    output: str | None = None
    extra: dict = field(default_factory=dict)


def workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be an integer")


def pool_map(fn, items, *args):
    """Ordered map over ``items``; uses a bounded process pool when workers > 1."""
    items = list(items)
    n = workers()
    if n == 1 or len(items) < 2:
        return [fn(x, *args) for x in items]
    with ProcessPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items, *([a] * len(items) for a in args)))


def _component(spec, F):
    return dimcount.invariant_component(F, spec)


def _parse_md(text: str) -> tuple:
    try:
        md = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"bad multidegree {text!r}")
    if not md or any(k <= 0 for k in md):
        raise UsageError("multidegree entries must be positive")
    return md


# ---------------------------------------------------------------------------
# commands: each returns (payload, table rows, text lines, exit code)

def cmd_trees(cfg: RunConfig):
    if cfg.multidegree:
        trees = enumerate_trees(cfg.multidegree, max_noises=cfg.max_noises,
                                negative_only=cfg.extra.get("negative", False))
    else:
        if cfg.n is None or cfg.n < 1:
            raise UsageError("give --multidegree or --pairs >= 1")
        if 2 * cfg.n > cfg.max_noises:
            raise BoundError(f"{2 * cfg.n} noises exceed the bound {cfg.max_noises}")
        trees = gaussian_trees(cfg.n, negative_only=not cfg.extra.get("all", False))
    rows = [{"index": i, "tree": encode(t)} for i, t in enumerate(trees)]
    payload = {"count": len(trees), "trees": [{"code": encode(t), "tree": to_json(t)} for t in trees]}
    return payload, rows, [f"{len(trees)} trees"] + [r["tree"] for r in rows], EXIT_OK


def cmd_dims(cfg: RunConfig):
    n = cfg.n
    if n is None or n < 1:
        raise UsageError("--n must be a positive integer")
    if cfg.mode == "gaussian":
        if 2 * n > MAX_FLA_DEGREE:
            raise BoundError(f"Gaussian total needs degree {2 * n} > {MAX_FLA_DEGREE}")
        F = symfunc.f_la(2 * n)
        specs = [dimcount.BlockSpec.gaussian(k) for k in range(1, n + 1)]
    elif cfg.mode == "cumulant":
        if n > MAX_FLA_DEGREE:
            raise BoundError(f"cumulant total needs degree {n} > {MAX_FLA_DEGREE}")
        F = symfunc.f_la(n)
        specs = dimcount.cumulant_specs(n)
    else:
        raise UsageError(f"unknown mode {cfg.mode!r}")
    comps = pool_map(_component, specs, F)
    total = sum(c.dimension for c in comps)
    rows = []
    for c in comps:
        for classes, size, coeff in c.coefficients:
            rows.append({"component": c.spec.name(), "classes": ";".join(",".join(map(str, cl)) for cl in classes),
                         "size": size, "coefficient": str(coeff), "dimension": c.dimension})
    text = [f"{c.spec.name():12s} {c.dimension:>8d}   " +
            "  ".join(f"[{';'.join(','.join(map(str, cl)) for cl in classes)}] {coeff}"
                      for classes, _, coeff in c.coefficients) for c in comps]
    text.append(f"total {total}")
    payload = {"mode": cfg.mode, "n": n, "total": total, "components": [c.as_dict() for c in comps]}
    return payload, rows, text, EXIT_OK


def cmd_kernel(cfg: RunConfig):
    md = cfg.multidegree
    if not md:
        raise UsageError("--multidegree is required")
    if sum(md) > cfg.max_noises:
        raise BoundError(f"{sum(md)} noises exceed the bound {cfg.max_noises}")
    blocks = None if cfg.extra.get("blocks", "default") == "default" else [[c + 1] for c in range(len(md))]
    kern = geoderiv.kernel_basis_geo(md, blocks, max_noises=cfg.max_noises)
    span = geoderiv.covariant_span(md, blocks, max_noises=cfg.max_noises)
    inside = geoderiv.span_in_kernel([span.generators[i] for i in span.independent], kern.blocks)
    words = [span.words[i] for i in span.independent]
    payload = {"multidegree": list(md), "blocks": kern.blocks, "kernel_dimension": kern.dimension,
               "span_dimension": span.dimension, "equal": kern.dimension == span.dimension,
               "span_in_kernel": inside, "generators": [geoderiv.word_json(w) for w in words],
               "generator_codes": [geoderiv.word_str(w) for w in words]}
    rows = [{"index": i, "word": geoderiv.word_str(w)} for i, w in enumerate(words)]
    text = [f"multidegree {md} blocks {kern.blocks}",
            f"kernel dimension {kern.dimension}", f"covariant span dimension {span.dimension}",
            f"equal {payload['equal']}", f"span inside kernel {inside}"]
    code = EXIT_OK if payload["equal"] and inside else EXIT_FAIL
    return payload, rows, text, code


def cmd_basis(cfg: RunConfig):
    md = cfg.multidegree
    if not md:
        raise UsageError("--multidegree is required")
    span = geoderiv.covariant_span(md, max_noises=cfg.max_noises)
    words = [span.words[i] for i in span.independent]
    payload = {"multidegree": list(md), "dimension": span.dimension,
               "basis": [{"word": geoderiv.word_json(w), "code": geoderiv.word_str(w),
                          "expansion": span.generators[i].to_json()}
                         for i, w in zip(span.independent, words)]}
    rows = [{"index": k, "word": geoderiv.word_str(w), "expansion": str(span.generators[i])}
            for k, (i, w) in enumerate(zip(span.independent, words))]
    text = [f"dimension {span.dimension}"] + [f"{r['word']} = {r['expansion']}" for r in rows]
    return payload, rows, text, EXIT_OK


def cmd_fla(cfg: RunConfig):
    deg = cfg.degree
    if deg is None or deg < 1:
        raise UsageError("--degree must be a positive integer")
    if deg > MAX_FLA_DEGREE:
        raise BoundError(f"degree {deg} exceeds the supported truncation {MAX_FLA_DEGREE}")
    if cfg.basis not in symfunc.BASES:
        raise UsageError(f"unknown basis {cfg.basis!r}")
    F = symfunc.f_la(deg).to(cfg.basis)
    pieces = [F.homogeneous(k) for k in range(1, deg + 1)]
    payload = F.to_json()
    rows = [{"partition": " ".join(map(str, lam)), "coeff": str(c)} for lam, c in F.sorted_terms()]
    text = [f"degree {k}: {p}" for k, p in enumerate(pieces, 1)]
    return payload, rows, text, EXIT_OK


def cmd_verify(cfg: RunConfig):
    suite = cfg.extra["suite"]
    if suite not in verify.SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(verify.SUITES)}")
    defaults = {"operad-axioms": 4, "d-squared": 6, "correspondence": 4, "chain-rule": 0}
    vc = verify.VerifyConfig(max_vertices=cfg.max_vertices or defaults[suite], max_alpha=cfg.max_alpha,
                             n=cfg.n or 2, d=cfg.d, m=cfg.m, seed=cfg.seed, order=cfg.order)
    rep, rows = verify.run_suite(suite, vc)
    payload = {"suite": suite, "report": rep.as_dict(), "rows": [r.as_dict() for r in rows]}
    table = [{**r.as_dict(), "infinitesimal": " ".join(map(str, r.infinitesimal))} for r in rows] or \
        [{"suite": suite, "checked": rep.checked, "passed": rep.ok}]
    text = [f"{rep.name}: {'PASS' if rep.ok else 'FAIL'} ({rep.checked} checked)"]
    for r in rows:
        text.append(f"  {r.kind:9s} {r.element:28s} kernel={r.in_kernel!s:5s} "
                    f"infinitesimal={r.infinitesimal} chain_rule={r.chain_rule}")
    for f in rep.failures[:20]:
        text.append(f"  failure: {f}")
    return payload, table, text, EXIT_OK if rep.ok else EXIT_FAIL


COMMANDS = {"trees": cmd_trees, "dims": cmd_dims, "kernel": cmd_kernel, "basis": cmd_basis,
            "fla": cmd_fla, "verify": cmd_verify}


# ---------------------------------------------------------------------------

def _emit(cfg: RunConfig, payload, rows, text) -> str:
    if cfg.format == "json":
        conf = {k: v for k, v in asdict(cfg).items() if k not in ("format", "output", "extra")}
        conf.update(cfg.extra)
        doc = {"command": cfg.command, "version": __version__, "seed": cfg.seed, "config": conf,
               "result": payload}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if cfg.format == "csv":
        buf = io.StringIO()
        if rows:
            w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)
        return buf.getvalue()
    return "\n".join(text) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", "-o", help="write data here instead of stdout")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--quiet", "-q", action="store_true", help="no progress on stderr")

    p = argparse.ArgumentParser(prog="christoffel", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("trees", parents=[common], help="enumerate trees")
    t.add_argument("action", choices=("enumerate",))
    t.add_argument("--multidegree", help="color multiplicities, e.g. 2,2")
    t.add_argument("--pairs", type=int, dest="n", help="Gaussian trees with at most this many pairs")
    t.add_argument("--all", action="store_true", help="keep trees of non-negative degree")
    t.add_argument("--negative", action="store_true", help="negative degree only (with --multidegree)")
    t.add_argument("--max-noises", type=int, default=7)

    d = sub.add_parser("dims", parents=[common], help="invariant dimensions")
    d.add_argument("mode", choices=("gaussian", "cumulant"))
    d.add_argument("--n", type=int, required=True)

    k = sub.add_parser("kernel", parents=[common], help="kernel of the hatted derivation")
    k.add_argument("--multidegree", required=True)
    k.add_argument("--blocks", choices=("default", "trivial"), default="default",
                   help="default: colors of equal multiplicity are interchangeable")
    k.add_argument("--max-noises", type=int, default=6)

    b = sub.add_parser("basis", parents=[common], help="covariant derivative basis")
    b.add_argument("kind", choices=("covariant",))
    b.add_argument("--multidegree", required=True)
    b.add_argument("--max-noises", type=int, default=6)

    f = sub.add_parser("fla", parents=[common], help="Lie-admissible character")
    f.add_argument("--degree", type=int, required=True)
    f.add_argument("--basis", choices=symfunc.BASES, default="e")

    v = sub.add_parser("verify", parents=[common], help="property suites")
    v.add_argument("suite", help=", ".join(verify.SUITES))
    v.add_argument("--max-vertices", type=int)
    v.add_argument("--max-alpha", type=int, default=2)
    v.add_argument("--n", type=int, default=2)
    v.add_argument("--d", type=int, default=3)
    v.add_argument("--m", type=int, default=2)
    v.add_argument("--order", type=int, default=1)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, format=ns.format, output=ns.output, seed=ns.seed)
    for name in ("n", "max_noises", "max_vertices", "max_alpha", "order", "degree", "basis", "d", "m"):
        if getattr(ns, name, None) is not None:
            setattr(cfg, name, getattr(ns, name))
    if getattr(ns, "multidegree", None):
        cfg.multidegree = list(_parse_md(ns.multidegree))
    if ns.command == "dims":
        cfg.mode = ns.mode
    if ns.command == "trees":
        cfg.extra = {"all": ns.all, "negative": ns.negative}
    if ns.command == "kernel":
        cfg.extra = {"blocks": ns.blocks}
    if ns.command == "verify":
        cfg.extra = {"suite": ns.suite}
    for name in ("max_vertices", "max_noises", "order", "d", "m"):
        val = getattr(cfg, name)
        if val is not None and val < 1 and not (name == "order" and val == 0):
            raise UsageError(f"--{name.replace('_', '-')} must be positive")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING if ns.quiet else logging.INFO, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        cfg = config_from_args(ns)
        payload, rows, text, code = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BoundError, EnumerationOverflow) as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    out = _emit(cfg, payload, rows, text)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
