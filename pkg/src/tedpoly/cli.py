"""Command-line entry point: ``tedpoly <command> [options]``.

Exit status: 0 ok, 1 invariant violation or mismatch against published
values, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import lp
from .extremality import (
    PUBLISHED_EPS_GRID, PUBLISHED_TABLE1, BracketError, CertificateError, bracket_epsilon_max,
    classify_extrema)
from .facets import affine_dim, enumerate_facets, project, summary_line, verify_hrep
from .hamilton import ConfigurationError, Digraph, InvariantError, lp_decide, sweep4
from .permutations import DomainError, class_counts, classify, enumerate_permutations
from .rational import format_rational, parse_rational
from .transform import build_point_set

log = logging.getLogger("tedpoly")

COMMANDS = ("classify", "points", "table1", "epsmax", "decide", "sweep4", "facets")


@dataclass
class RunConfig:
    command: str
    n: list = field(default_factory=list)
    eps: list = field(default_factory=list)
    output: str | None = None
    parallelism: int = 1
    graph: str | None = None
    lo: Fraction | None = None
    hi: Fraction | None = None
    iters: int = 6
    allow_bad_eps: bool = False
    allow_large: bool = False
    verify: bool = True
    certificates: str | None = None
    encoding: str = "convex"


class UsageError(ValueError):
    pass


def _positive(text: str) -> Fraction:
    try:
        v = parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def _eps_list(text: str) -> list[Fraction]:
    return [_positive(t) for t in text.split(",") if t.strip()]


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_classify(cfg: RunConfig, out, err) -> int:
    n = cfg.n[0]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "image", "cycle_type", "class"])
    for i, p in enumerate(enumerate_permutations(n)):
        w.writerow([i, " ".join(map(str, p.image)), "+".join(map(str, p.cycle_type())),
                    classify(p).value])
    out.write(buf.getvalue())
    err.write(f"counts={class_counts(n)}\n")
    return 0


def _cmd_points(cfg: RunConfig, out, err) -> int:
    ps = build_point_set(cfg.n[0], cfg.eps[0])
    out.write(_json({
        "n": ps.n,
        "eps": format_rational(ps.epsilon),
        "points": [{"index": i, "class": q.perm_class.value,
                    "coords": [format_rational(x) for x in q.coords]}
                   for i, q in enumerate(ps)],
    }))
    return 0


def _cmd_table1(cfg: RunConfig, out, err) -> int:
    ns = cfg.n or [4, 5, 6]
    grid = cfg.eps or [Fraction(e) for e in PUBLISHED_EPS_GRID]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "eps", "tours", "irreflexive_nt", "reflexive_nt", "all_extreme"])
    status = 0
    certs = []
    for n in ns:
        for e in grid:
            rep = classify_extrema(n, e, workers=cfg.parallelism)
            c = rep.counts
            w.writerow([n, format_rational(e), c.tours, c.irreflexive_nontours,
                        c.reflexive_nontours, str(rep.all_extreme).lower()])
            expected = PUBLISHED_TABLE1.get((n, e)) if e.denominator == 1 else None
            if expected is not None and expected != c.as_tuple():
                status = 1
                err.write(f"MISMATCH n={n} eps={format_rational(e)}: computed {c}, "
                          f"published {'-'.join(map(str, expected))}\n")
            for v in rep.non_extreme():
                certs.append({"n": n, "eps": format_rational(e), "index": v.index,
                              "class": v.perm_class.value,
                              "coefficients": {str(j): format_rational(a)
                                               for j, a in sorted(v.certificate.items())}})
    out.write(buf.getvalue())
    if cfg.certificates:
        with open(cfg.certificates, "w") as fh:
            fh.write(_json(certs))
    return status


def _cmd_epsmax(cfg: RunConfig, out, err) -> int:
    br = bracket_epsilon_max(cfg.n[0], cfg.lo, cfg.hi, cfg.iters)
    out.write(_json(br.to_json()))
    return 0


def _cmd_decide(cfg: RunConfig, out, err) -> int:
    g = Digraph.read(cfg.graph)
    rep = lp_decide(g, cfg.eps[0], allow_bad_eps=cfg.allow_bad_eps,
                     encoding=cfg.encoding, graph_id=str(cfg.graph))
    out.write(_json(rep.to_json()))
    return 0 if rep.agrees and rep.theorem_bounds_ok else 1


def _cmd_sweep4(cfg: RunConfig, out, err) -> int:
    res = sweep4(cfg.eps[0])
    out.write(_json(res.to_json()))
    err.write(f"sweep4: {'PASS' if res.passed else 'FAIL'} ({res.graphs} graphs, "
              f"{res.hamiltonian} Hamiltonian)\n")
    return 0 if res.passed else 1


def _cmd_facets(cfg: RunConfig, out, err) -> int:
    n = cfg.n[0]
    if n > 4 and not cfg.allow_large:
        raise UsageError("facet enumeration is limited to n <= 4; pass --allow-large to override")
    ps = build_point_set(n, cfg.eps[0])
    pts = project(ps)
    dim = affine_dim(pts)
    h = enumerate_facets(pts, max_dim=(n - 1) ** 2)
    out.write(_json(h.to_json()))
    err.write(f"dim={dim}\n{summary_line(h)}\n")
    if not cfg.verify:
        return 0
    rep = classify_extrema(n, cfg.eps[0], workers=cfg.parallelism)
    extreme = [pts[v.index] for v in rep.per_point if v.is_extreme]
    check = verify_hrep(h, pts, extreme)
    err.write(f"verify_hrep: {'PASS' if check.ok else 'FAIL'} {check}\n")
    return 0 if check.ok else 1


HANDLERS = {
    "classify": _cmd_classify, "points": _cmd_points, "table1": _cmd_table1,
    "epsmax": _cmd_epsmax, "decide": _cmd_decide, "sweep4": _cmd_sweep4,
    "facets": _cmd_facets,
}


def run(cfg: RunConfig, out=None, err=None) -> int:
    err = err or sys.stderr
    if cfg.command not in HANDLERS:
        err.write(f"unknown command {cfg.command!r}\n")
        return 2
    buf = io.StringIO()
    try:
        status = HANDLERS[cfg.command](cfg, buf, err)
    except (UsageError, DomainError, BracketError, ConfigurationError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (InvariantError, CertificateError, lp.LpError) as exc:
        err.write(f"invariant violated: {exc}\n")
        return 1
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 2
    text = buf.getvalue()
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        (out or sys.stdout).write(text)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tedpoly", description=__doc__.splitlines()[0])
    parser.add_argument("--debug", action="store_true", help="verbose logging, LP system dumps")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("-j", "--parallelism", type=int, default=1, help="worker processes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify all permutations")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("points", parents=[common], help="emit the transformed point set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=_positive, required=True)

    p = sub.add_parser("table1", parents=[common], help="extreme-point counts over an (n, eps) grid")
    p.add_argument("--n", type=int, action="append")
    p.add_argument("--eps", type=_eps_list)
    p.add_argument("--certificates", help="write convex-combination certificates (JSON)")

    p = sub.add_parser("epsmax", parents=[common], help="bisect for the largest good eps")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lo", type=_positive, required=True)
    p.add_argument("--hi", type=_positive, required=True)
    p.add_argument("--iters", type=int, default=6)

    p = sub.add_parser("decide", parents=[common], help="decide Hamiltonicity of a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--eps", type=_positive, required=True)
    p.add_argument("--allow-bad-eps", action="store_true")
    p.add_argument("--encoding", choices=("convex", "extended", "hrep"), default="convex",
                   help="LP form: hull weights, weights plus q, or facets (n=4 only)")

    p = sub.add_parser("sweep4", parents=[common], help="exhaustive check over all 4-vertex digraphs")
    p.add_argument("--eps", type=_positive, required=True)

    p = sub.add_parser("facets", parents=[common], help="unique facet representation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=_positive, required=True)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--no-verify", dest="verify", action="store_false")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING,
                        format="%(name)s: %(message)s")
    if args.parallelism < 1:
        parser.error("--parallelism must be >= 1")
    n = args.n if isinstance(getattr(args, "n", None), list) else (
        [args.n] if getattr(args, "n", None) is not None else [])
    eps = getattr(args, "eps", None)
    eps = eps if isinstance(eps, list) else ([eps] if eps is not None else [])
    cfg = RunConfig(
        command=args.command, n=n, eps=eps, output=args.output,
        parallelism=args.parallelism, graph=getattr(args, "graph", None),
        lo=getattr(args, "lo", None), hi=getattr(args, "hi", None),
        iters=getattr(args, "iters", 6),
        allow_bad_eps=getattr(args, "allow_bad_eps", False),
        allow_large=getattr(args, "allow_large", False),
        verify=getattr(args, "verify", True),
        certificates=getattr(args, "certificates", None),
        encoding=getattr(args, "encoding", "convex"),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
