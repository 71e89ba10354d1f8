"""Guessing numbers, graph entropy and index codes of directed graphs,
with LP bounds over entropy-like set functions and a network-coding bridge.
"""

from .codes import (GuessBounds, GuessingStrategy, IndexCode, build_confusion_graph,
                    conflicts, fixpoint_count, guessing_bounds, guessing_number,
                    max_graph_code, min_index_code, public_guessing_number,
                    validate_code)
from .entropic import (entropy_bound, index_code_bound, load_inequality_set,
                       zy_instances)
from .errors import (BudgetExceeded, GraphEntropyError, LPError, ParseError,
                     PrecisionError, Undetermined)
from .graph import (DirectedGraph, bidirected_cycle, complete_graph, directed_cycle,
                    enumerate_tournaments, max_induced_acyclic, minimal_split, parse_graph)
from .logvalue import Complement, LogValue
from .lp import solve_lp, verify_certificate
from .network import (CodingAssignment, Network, coding_capacity_11, evaluate_network,
                      identify, is_solution, is_solvable, parse_network, split_graph,
                      theorem8_check)
from .words import Code

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "Code", "CodingAssignment", "Complement", "DirectedGraph",
           "GraphEntropyError", "GuessBounds", "GuessingStrategy", "IndexCode", "LPError",
           "LogValue", "Network", "ParseError", "PrecisionError", "Undetermined",
           "bidirected_cycle", "build_confusion_graph", "coding_capacity_11",
           "complete_graph", "conflicts", "directed_cycle", "entropy_bound",
           "enumerate_tournaments", "evaluate_network", "fixpoint_count", "guessing_bounds",
           "guessing_number", "identify", "index_code_bound", "is_solution", "is_solvable",
           "load_inequality_set", "max_graph_code", "max_induced_acyclic", "min_index_code",
           "minimal_split", "parse_graph", "parse_network", "public_guessing_number",
           "solve_lp", "split_graph", "theorem8_check", "validate_code", "verify_certificate",
           "zy_instances"]
