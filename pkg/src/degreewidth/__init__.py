"""Exact backedge-graph parameters of digraphs and the gadget constructions behind them.

Exports are grouped by concern:

* core types (``Digraph``, ``UndirectedGraph``, ``Ordering``, ``ArcSet``),
* width solvers (degreewidth, dichromatic number, directed clique number,
  feedback vertex number),
* directed linear-arrangement costs,
* the 3-SAT reduction with its witness round-trip.
"""
# this_file: src/degreewidth/__init__.py

try:
    from .__version__ import __version__
except ImportError:  # source tree without a VCS-generated version file
    __version__ = "0.0.0"

from .costs import (
    CostReport,
    di_ola,
    directed_bandwidth,
    directed_cutwidth,
    feedback_arc_number,
    ola_vec,
)
from .digraph import (
    ArcSet,
    Digraph,
    Ordering,
    UndirectedGraph,
    backedge_graph,
    backward_arcs,
    make_digraph,
    make_graph,
)
from .errors import (
    ConstructionError,
    DegreewidthError,
    GraphError,
    GuardExceededError,
    InvalidInstanceError,
    ParseError,
)
from .reductions import CnfFormula, Valuation, build_reduction
from .settings import Guards, Settings
from .width import (
    ParameterSelector,
    WidthResult,
    decide_degreewidth,
    degreewidth_dp,
    degreewidth_via_fas,
    dichromatic_number,
    directed_clique_number,
    fvn,
)

__all__ = [
    "__version__",
    "ArcSet",
    "CnfFormula",
    "ConstructionError",
    "CostReport",
    "DegreewidthError",
    "Digraph",
    "GraphError",
    "GuardExceededError",
    "Guards",
    "InvalidInstanceError",
    "Ordering",
    "ParameterSelector",
    "ParseError",
    "Settings",
    "UndirectedGraph",
    "Valuation",
    "WidthResult",
    "backedge_graph",
    "backward_arcs",
    "build_reduction",
    "decide_degreewidth",
    "degreewidth_dp",
    "degreewidth_via_fas",
    "di_ola",
    "dichromatic_number",
    "directed_bandwidth",
    "directed_clique_number",
    "directed_cutwidth",
    "feedback_arc_number",
    "fvn",
    "make_digraph",
    "make_graph",
    "ola_vec",
]
