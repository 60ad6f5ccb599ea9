"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 resource limit exceeded.  A GH
search that stops at its limits still exits 0 and reports ``"exact": false``.

Defaults for ``--tol``, ``--max-nodes`` and ``--timeout`` may be put in a
JSON file named by the ``ULTRAGH_CONFIG`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from . import generators
from .chain import chain_witness, components_at_scale
from .errors import MetricInputError, ResourceLimitError
from .gh import DEFAULT_MAX_NODES, DEFAULT_TIMEOUT, gh_bounds, gh_exact
from .io import (
    dt_to_dict,
    dumps,
    gh_result_to_dict,
    load_matrix,
    load_space,
    partition_to_dict,
    space_to_dict,
    ultrametric_to_dict,
)
from .kuratowski import dt_connectivity_check, sample_dt
from .space import DEFAULT_TOL, product_l1, product_linf, validate_metric
from .ultrametrize import bottleneck, subdominant

CONFIG_ENV = "ULTRAGH_CONFIG"


@dataclass
class CliConfig:
    tolerance: float = DEFAULT_TOL
    max_nodes: int = DEFAULT_MAX_NODES
    timeout: float = DEFAULT_TIMEOUT
    json: bool = False
    output: Optional[str] = None

    def __post_init__(self):
        if self.tolerance < 0:
            raise MetricInputError("tolerance must be nonnegative")
        if self.max_nodes <= 0 or self.timeout <= 0:
            raise MetricInputError("node and time caps must be positive")


def _config_defaults() -> dict:
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    with open(path) as fh:
        raw = json.load(fh)
    known = {"tolerance", "max_nodes", "timeout"}
    return {k: v for k, v in raw.items() if k in known}


def build_parser(defaults: dict | None = None) -> argparse.ArgumentParser:
    defaults = defaults or {}
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")
    common.add_argument("-o", "--output", help="write result to this file instead of stdout")
    common.add_argument("--tol", type=float, default=defaults.get("tolerance", DEFAULT_TOL),
                        help="metric validation tolerance (default %(default)g)")

    parser = argparse.ArgumentParser(prog="ultragh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check the metric axioms")
    p.add_argument("file")

    p = sub.add_parser("ultra", parents=[common], help="subdominant ultrametric U(X)")
    p.add_argument("file")

    p = sub.add_parser("bottleneck", parents=[common], help="diameter of U(X)")
    p.add_argument("file")

    p = sub.add_parser("chain", parents=[common], help="chain components or a witness chain")
    p.add_argument("file")
    p.add_argument("--eps", type=float, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--components", action="store_true")
    mode.add_argument("--witness", nargs=2, metavar=("FROM", "TO"))

    p = sub.add_parser("gh", parents=[common], help="Gromov-Hausdorff distance")
    p.add_argument("file_x")
    p.add_argument("file_y")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true")
    mode.add_argument("--bounds", action="store_true")
    p.add_argument("--max-nodes", type=int, default=defaults.get("max_nodes", DEFAULT_MAX_NODES))
    p.add_argument("--timeout", type=float, default=defaults.get("timeout", DEFAULT_TIMEOUT))

    p = sub.add_parser("product", parents=[common], help="l1 or linf product")
    p.add_argument("file_x")
    p.add_argument("file_y")
    p.add_argument("--metric", choices=["l1", "linf"], required=True)

    p = sub.add_parser("dt", parents=[common], help="sampled D_t(X)")
    p.add_argument("file")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--check-connect", type=float, metavar="C")

    gen = sub.add_parser("gen", help="generate instances").add_subparsers(dest="kind", required=True)
    g = gen.add_parser("polygon", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--radius", type=float, required=True)
    g = gen.add_parser("geomprog", parents=[common])
    g.add_argument("--p", type=float, required=True)
    g.add_argument("--count", type=int, required=True)
    g = gen.add_parser("grid", parents=[common])
    g.add_argument("--length", type=float, required=True)
    g.add_argument("--step", type=float, required=True)
    g = gen.add_parser("random", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--dim", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g = gen.add_parser("ultra-random", parents=[common])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    return parser


def _format_matrix(X) -> str:
    width = max(len(lab) for lab in X.labels)
    lines = []
    if X.name:
        lines.append(X.name)
    lines.append(" " * width + "  " + "  ".join(f"{lab:>10}" for lab in X.labels))
    for lab, row in zip(X.labels, X.dist):
        lines.append(f"{lab:>{width}}  " + "  ".join(f"{v:>10.6g}" for v in row))
    return "\n".join(lines) + "\n"


def _emit(args, payload: dict, human: str) -> None:
    text = dumps(payload) if args.json else human
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve(X, token: str) -> int:
    if token in X.labels:
        return X.index(token)
    try:
        idx = int(token)
    except ValueError:
        raise MetricInputError(f"no point labelled {token!r}") from None
    if not 0 <= idx < X.n:
        raise MetricInputError(f"point index {idx} out of range")
    return idx


def _cmd_validate(args):
    matrix, labels = load_matrix(args.file)
    report = validate_metric(matrix, args.tol)
    payload = {
        "ok": report.ok,
        "violations": [
            {"kind": v.kind, "indices": list(v.indices), "magnitude": v.magnitude}
            for v in report.violations
        ],
    }
    _emit(args, payload, report.summary() + "\n")
    return 0 if report.ok else 1


def _cmd_ultra(args):
    X = load_space(args.file, args.tol)
    U = subdominant(X)
    _emit(args, ultrametric_to_dict(U, X), _format_matrix(U.space))
    return 0


def _cmd_bottleneck(args):
    X = load_space(args.file, args.tol)
    value = bottleneck(X)
    _emit(args, {"bottleneck": value}, f"{value!r}\n")
    return 0


def _cmd_chain(args):
    X = load_space(args.file, args.tol)
    if args.witness:
        a, b = (_resolve(X, t) for t in args.witness)
        w = chain_witness(X, a, b, args.eps)
        if w is None:
            payload = {"scale": args.eps, "chain": None}
            human = f"no chain from {X.labels[a]} to {X.labels[b]} at scale {args.eps!r}\n"
        else:
            payload = {"scale": args.eps, "chain": [X.labels[i] for i in w.indices], "max_step": w.max_step}
            human = " -> ".join(X.labels[i] for i in w.indices) + f"  (max step {w.max_step!r})\n"
        _emit(args, payload, human)
        return 0
    part = components_at_scale(X, args.eps)
    payload = partition_to_dict(X, part)
    human = "\n".join("{" + ", ".join(c) + "}" for c in payload["components"]) + "\n"
    _emit(args, payload, human)
    return 0


def _cmd_gh(args):
    X = load_space(args.file_x, args.tol)
    Y = load_space(args.file_y, args.tol)
    if args.bounds:
        result = gh_bounds(X, Y, max_nodes=args.max_nodes, timeout=args.timeout)
    else:
        result = gh_exact(X, Y, max_nodes=args.max_nodes, timeout=args.timeout)
    payload = gh_result_to_dict(result, X, Y)
    if result.exact:
        human = f"d_GH = {result.upper!r}\n"
    else:
        human = f"{result.lower!r} <= d_GH <= {result.upper!r}"
        human += " (search limits reached)\n" if result.timed_out else "\n"
    _emit(args, payload, human)
    return 0


def _cmd_product(args):
    X = load_space(args.file_x, args.tol)
    Y = load_space(args.file_y, args.tol)
    P = product_l1(X, Y) if args.metric == "l1" else product_linf(X, Y)
    _emit(args, space_to_dict(P), _format_matrix(P))
    return 0


def _cmd_dt(args):
    X = load_space(args.file, args.tol)
    dt = sample_dt(X, args.t, args.step)
    payload = dt_to_dict(dt)
    human = _format_matrix(dt.space)
    if args.check_connect is not None:
        connected = dt_connectivity_check(X, args.check_connect, args.step)
        payload["connected"] = connected
        human += f"chain connected at step {args.step!r} for c = {args.check_connect!r}: {connected}\n"
    _emit(args, payload, human)
    return 0


def _cmd_gen(args):
    kind = args.kind
    if kind == "polygon":
        X = generators.polygon_vertices(args.n, args.radius)
    elif kind == "geomprog":
        X = generators.geometric_progression(args.p, args.count)
    elif kind == "grid":
        X = generators.grid_segment(args.length, args.step)
    elif kind == "random":
        X = generators.random_euclidean(args.n, args.dim, args.seed)
    else:
        X = generators.random_ultrametric(args.n, args.seed)
    # generated spaces are always written in the space format
    args.json = True
    _emit(args, space_to_dict(X), "")
    return 0


COMMANDS = {
    "validate": _cmd_validate,
    "ultra": _cmd_ultra,
    "bottleneck": _cmd_bottleneck,
    "chain": _cmd_chain,
    "gh": _cmd_gh,
    "product": _cmd_product,
    "dt": _cmd_dt,
    "gen": _cmd_gen,
}


def run(argv=None) -> int:
    try:
        defaults = _config_defaults()
    except (OSError, ValueError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return 1
    args = build_parser(defaults).parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except MetricInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())
