"""Batch command line: ``netdens {decompose,metrics,generate,compare,edge-bias}``.

Exit codes: 0 success, 1 usage or parameter error, 2 unparseable input,
3 failed verification, 4 infeasible generator spec.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
from dataclasses import dataclass

from . import formats
from .decomposition import decompose, verify_decomposition
from .errors import ContractError, InfeasibleSpecError, ParseError
from .generators import KINDS, ModelSpec, generate
from .graph import LabelMap, read_edgelist, write_edgelist
from .metrics import (
    bhattacharyya,
    degree_distribution,
    density_distribution,
    edge_bias_report,
)

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_VERIFY, EXIT_INFEASIBLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace


def _emit(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbelow(2**32)
        _note(f"seed: {args.seed}")
    return args.seed


def _load(args, path):
    return read_edgelist(path, comment=args.comment, sep=args.sep)


def cmd_decompose(cfg: RunConfig) -> int:
    a = cfg.args
    graph, labels = _load(a, a.input)
    d = decompose(graph, seed=a.seed)
    out = formats.decomposition_to_dict(d, labels)
    _emit(formats.dumps(out), a.output)
    if a.orientation_output:
        _emit(formats.dumps(formats.orientation_to_pairs(d.witness, labels)), a.orientation_output)
    _note(f"n={graph.n} m={graph.m} k={d.k} ring_sizes={list(d.ring_sizes)}")
    if a.verify:
        rep = verify_decomposition(graph, d)
        if a.report_output:
            _emit(formats.dumps({
                "passed": rep.passed,
                "ring_density": {str(i): str(x) for i, x in rep.ring_density.items()},
                "failures": rep.failures,
            }), a.report_output)
        if not rep.passed:
            for f in rep.failures:
                _note(f"verification failed: {f}")
            return EXIT_VERIFY
        _note("verification passed")
    return EXIT_OK


def cmd_metrics(cfg: RunConfig) -> int:
    a = cfg.args
    graph, _ = _load(a, a.input)
    d = decompose(graph)
    if a.apl_sample:
        mode, seed = "sampled", _seed(a)
    else:
        mode, seed = "exact", None
    rep = formats.metric_report(
        graph, d, apl_mode=mode, apl_sources=a.apl_sample, seed=seed,
        threads=a.threads, count_low_degree=a.clustering_mode == "zero",
    )
    _emit(formats.dumps(rep), a.output)
    return EXIT_OK


def _spec_from_args(a) -> ModelSpec:
    data = formats.read_json(a.spec) if a.spec else {}
    if not isinstance(data, dict):
        raise ContractError("model spec must be a JSON object")
    for name, val in (("kind", a.kind), ("n", a.n), ("p", a.p), ("c", a.c), ("n0", a.n0),
                      ("d", a.d), ("k_lattice", a.k_lattice), ("seed", a.seed)):
        if val is not None:
            data[name] = val
    if a.connect:
        data["connect"] = True
    implied_n = None
    if a.dist:
        dist, implied_n = formats.load_distribution(formats.read_json(a.dist))
        data["dist"] = dist.tolist()
    elif "dist" in data:
        dist, implied_n = formats.load_distribution(data["dist"])
        data["dist"] = dist.tolist()
    if data.get("n") is None and implied_n is not None:
        data["n"] = implied_n
    if a.degree_sequence:
        data["degree_sequence"] = [int(x) for x in formats.read_json(a.degree_sequence)]
    if "kind" not in data:
        raise ContractError("model kind missing (use --kind or a spec file)")
    spec = ModelSpec.from_dict(data)
    if spec.seed is None:
        spec.seed = secrets.randbelow(2**32)
        _note(f"seed: {spec.seed}")
    spec.validate()
    return spec


def cmd_generate(cfg: RunConfig) -> int:
    a = cfg.args
    spec = _spec_from_args(a)
    graph, _ = generate(spec)
    labels = LabelMap.identity(graph.n)
    _emit(write_edgelist(graph, labels), a.output)
    sidecar = a.spec_output or (a.output + ".spec.json" if a.output not in (None, "-") else None)
    if sidecar:
        _emit(formats.dumps(spec.to_dict()), sidecar)
    else:
        _note(json.dumps(spec.to_dict()))
    _note(f"generated {spec.kind}: n={graph.n} m={graph.m}")
    return EXIT_OK


def _beta_or_none(p, q):
    try:
        return bhattacharyya(p, q)
    except ContractError:
        return None


def cmd_compare(cfg: RunConfig) -> int:
    a = cfg.args
    if len(a.inputs) != 2:
        raise UsageError("compare needs exactly two inputs")
    out = {}
    dists = []
    for tag, path in zip("ab", a.inputs):
        graph, _ = _load(a, path)
        if graph.n == 0:
            raise ContractError(f"{path}: graph has no nodes")
        d = decompose(graph)
        rho, delta = density_distribution(d), degree_distribution(graph)
        dists.append((rho, delta))
        out[f"beta_rho_delta_{tag}"] = bhattacharyya(rho, delta)
    (ra, da), (rb, db) = dists
    result = {
        "beta_rho_rho": _beta_or_none(ra, rb),
        "beta_delta_delta": _beta_or_none(da, db),
        **out,
    }
    _emit(formats.dumps(result), a.output)
    return EXIT_OK


def cmd_edge_bias(cfg: RunConfig) -> int:
    a = cfg.args
    graph, _ = _load(a, a.input)
    rep = edge_bias_report(graph, decompose(graph))
    _emit(rep.to_csv(), a.output)
    if a.summary_output:
        _emit(rep.summary_csv(), a.summary_output)
    else:
        sys.stderr.write(rep.summary_csv())
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "metrics": cmd_metrics,
    "generate": cmd_generate,
    "compare": cmd_compare,
    "edge-bias": cmd_edge_bias,
}


def _threads_default() -> int:
    try:
        return max(1, int(os.environ.get("NETDENS_THREADS", "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="netdens", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def io(sp, single=True):
        if single:
            sp.add_argument("--input", required=True, help="edge-list file")
        sp.add_argument("--output", default=None, help="output path (default stdout)")
        sp.add_argument("--comment", default="#", help="comment prefix (default '#')")
        sp.add_argument("--sep", default=None, help="token separator (default whitespace)")

    sp = sub.add_parser("decompose", help="density decomposition to JSON")
    io(sp)
    sp.add_argument("--verify", action="store_true", help="check the decomposition; exit 3 on failure")
    sp.add_argument("--report-output", default=None, help="write the verification report JSON here")
    sp.add_argument("--orientation-output", default=None, help="write the witness arcs as JSON")
    sp.add_argument("--seed", type=int, default=None, help="random starting orientation")

    sp = sub.add_parser("metrics", help="similarity, clustering and path length")
    io(sp)
    sp.add_argument("--apl-sample", type=int, default=None, metavar="N",
                    help="estimate path length from N random BFS sources")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--threads", type=int, default=_threads_default())
    sp.add_argument("--clustering-mode", choices=("zero", "exclude"), default="zero",
                    help="how nodes of degree < 2 enter the average")

    sp = sub.add_parser("generate", help="write a random graph as an edge list")
    sp.add_argument("--kind", choices=KINDS, default=None)
    sp.add_argument("--spec", default=None, help="ModelSpec JSON file")
    sp.add_argument("--dist", default=None, help="density distribution JSON (fractions or counts)")
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--p", type=float, default=None)
    sp.add_argument("--c", type=float, default=None)
    sp.add_argument("--n0", type=int, default=None)
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--k-lattice", type=int, default=None)
    sp.add_argument("--degree-sequence", default=None, help="JSON array of degrees")
    sp.add_argument("--connect", action="store_true")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--output", default=None)
    sp.add_argument("--spec-output", default=None, help="sidecar path (default OUTPUT.spec.json)")

    sp = sub.add_parser("compare", help="Bhattacharyya similarities between two graphs")
    sp.add_argument("inputs", nargs="*", help="two edge-list files")
    sp.add_argument("--input", dest="inputs_opt", action="append", default=[])
    io(sp, single=False)

    sp = sub.add_parser("edge-bias", help="ring-to-ring edge fractions as CSV")
    io(sp)
    sp.add_argument("--summary-output", default=None,
                    help="per-offset min/avg/max CSV (default stderr)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "compare":
            args.inputs = list(args.inputs) + list(args.inputs_opt)
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be at least 1")
        return COMMANDS[args.command](RunConfig(args.command, args))
    except UsageError as e:
        _note(str(e))
        return EXIT_USAGE
    except ParseError as e:
        _note(f"parse error: {e}")
        return EXIT_PARSE
    except InfeasibleSpecError as e:
        _note(f"infeasible spec: {e}")
        return EXIT_INFEASIBLE
    except (ContractError, ValueError) as e:
        _note(f"error: {e}")
        return EXIT_USAGE
    except OSError as e:
        _note(f"error: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
