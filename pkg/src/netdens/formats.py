"""JSON and CSV shapes shared by the library and the command line."""

from __future__ import annotations

import json
import math

from .decomposition import DensityDecomposition
from .errors import ContractError, UndefinedMetricError
from .graph import Graph, LabelMap, Orientation
from .metrics import (
    Distribution,
    average_path_length,
    beta_rho_delta,
    clustering_coefficient,
    degree_distribution,
    density_distribution,
)


def decomposition_to_dict(d: DensityDecomposition, labels: LabelMap) -> dict:
    return {
        "k": d.k,
        "ring_sizes": list(d.ring_sizes),
        "rank": {str(labels.label(v)): r for v, r in enumerate(d.rank)},
    }


def decomposition_from_dict(data: dict, labels: LabelMap) -> DensityDecomposition:
    """Inverse of `decomposition_to_dict`; the witness is not stored."""
    rank = [0] * len(labels)
    if len(data["rank"]) != len(labels):
        raise ContractError("rank map does not cover every label")
    for lab, r in data["rank"].items():
        rank[labels.id(lab)] = int(r)
    return DensityDecomposition(tuple(rank), tuple(data["ring_sizes"]), int(data["k"]))


def orientation_to_pairs(o: Orientation, labels: LabelMap) -> list[list[str]]:
    lab = labels.label
    return [[str(lab(u)), str(lab(v))] for u, v in o.arcs()]


def orientation_from_pairs(graph: Graph, labels: LabelMap, pairs) -> Orientation:
    return Orientation(graph, ((labels.id(a), labels.id(b)) for a, b in pairs))


def _or_none(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (UndefinedMetricError, ContractError):
        return None


def metric_report(graph: Graph, d: DensityDecomposition, apl_mode: str = "exact",
                  apl_sources: int | None = None, seed=None, threads: int = 1,
                  count_low_degree: bool = True) -> dict:
    """Metric summary; values that are undefined on this graph are None."""
    if graph.n == 0:
        return {"beta_rho_delta": None, "clustering": None, "apl": None,
                "density_distribution": [], "degree_distribution": []}
    return {
        "beta_rho_delta": beta_rho_delta(graph, d),
        "clustering": _or_none(clustering_coefficient, graph, count_low_degree),
        "apl": _or_none(average_path_length, graph, apl_mode, apl_sources, seed, threads),
        "density_distribution": density_distribution(d).tolist(),
        "degree_distribution": degree_distribution(graph).tolist(),
    }


def load_distribution(data) -> tuple[Distribution, int | None]:
    """Parse a density distribution given as fractions or raw ring counts.

    An array summing to 1 (within 1e-9) is read as fractions; anything
    else as counts, whose total is returned as the implied node count.
    """
    if not isinstance(data, list) or not data:
        raise ContractError("density distribution must be a nonempty JSON array")
    vals = [float(x) for x in data]
    if any(x < 0 or not math.isfinite(x) for x in vals):
        raise ContractError("density distribution entries must be finite and nonnegative")
    total = math.fsum(vals)
    if abs(total - 1.0) <= 1e-9:
        return Distribution([x / total for x in vals]), None
    if not all(x == int(x) for x in vals) or total <= 0:
        raise ContractError("raw ring counts must be nonnegative integers with positive sum")
    return Distribution(vals).normalize(), int(total)


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
