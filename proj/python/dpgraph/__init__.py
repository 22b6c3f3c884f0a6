"""Dynamic point systems on metric graphs.

Graphs are passed as dicts (or JSON text, or a path to a JSON file) in the
same format the ``dpgraph`` command reads. Results come back as dicts.
"""

import json
import os

from . import _core
from ._core import (
    EnumerationCapExceeded,
    InvalidGraph,
    OracleMismatch,
    ParseError,
    SimulationLimitExceeded,
)

__version__ = _core.__version__


def _graph_text(graph):
    if isinstance(graph, dict):
        return json.dumps(graph)
    if isinstance(graph, os.PathLike) or (isinstance(graph, str) and not graph.lstrip().startswith("{")):
        with open(graph) as f:
            return f.read()
    return graph


def _edges_text(edges):
    if isinstance(edges, str):
        return edges
    return ",".join(str(e) for e in edges)


def simulate(graph, max_ticks=0):
    return json.loads(_core.simulate(_graph_text(graph), max_ticks))


def classes(graph):
    return json.loads(_core.classes(_graph_text(graph)))


def search(edges, jobs=1, multi_point=False, max_edges=6):
    return json.loads(_core.search(_edges_text(edges), jobs, multi_point, max_edges))


def enumerate_graphs(edges, connected_only=True, max_edges=7):
    return [json.loads(g) for g in _core.enumerate(_edges_text(edges), connected_only, max_edges)]


def verify_theorem(edges, jobs=1):
    return json.loads(_core.verify_theorem(_edges_text(edges), jobs))


def verify_corollary(graph):
    return json.loads(_core.verify_corollary(_graph_text(graph)))


def to_bead(graph):
    return json.loads(_core.to_bead(_graph_text(graph)))


def reduce_degrees(graph):
    return json.loads(_core.reduce_degrees(_graph_text(graph)))


def render(graph):
    return _core.render(_graph_text(graph))


def run(*args):
    """Runs the command-line front end; returns (exit code, stdout, stderr)."""
    return _core.run([str(a) for a in args])
