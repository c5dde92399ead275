"""Clique colorings of perfect graphs built from clique expansions.

Provides exact desk-scale tools: maximal clique enumeration, clique-coloring
verification and exact clique-chromatic numbers, perfection checks, the
clique-expansion gadget with its towers, covering-property checks for random
bijections, and numeric certification of the associated probability bounds.
"""

from ._kernels import BACKEND
from .cliques import MaximalCliqueList, clique_number, maximal_cliques
from .coloring import (CliqueColoring, ColoringVerdict, chromatic_number,
                       clique_chromatic_number, construct_tower_coloring,
                       greedy_clique_coloring, minimum_clique_coloring,
                       verify_clique_coloring)
from .errors import (BudgetExceeded, ColoringConstructionError, InputError,
                     TowerInfeasible)
from .expansion import (ExpansionSpec, Petal, TowerTrace, build_tower,
                        check_petal_maximal_cliques, expand_at_clique,
                        paper_sequence, universal_expansion)
from .graph import (Bipartition, Graph, complement, glue_along_clique,
                    graph_from_json, graph_to_dot, graph_to_json,
                    induced_subgraph, is_clique, is_cobipartite, load_graph,
                    save_graph)
from .lemma6 import (Lemma6Instance, PropertyReport, assemble_uniform_clique,
                     check_property1, check_property2,
                     estimate_failure_probability, find_uniform_clique,
                     is_uniform_clique, sample_bijection)
from .perfection import (PerfectionVerdict, find_clique_cutset,
                         find_odd_antihole, find_odd_hole, is_perfect)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Bipartition", "BudgetExceeded", "CliqueColoring",
    "ColoringConstructionError", "ColoringVerdict", "ExpansionSpec", "Graph",
    "InputError", "Lemma6Instance", "MaximalCliqueList", "PerfectionVerdict",
    "Petal", "PropertyReport", "TowerInfeasible", "TowerTrace",
    "assemble_uniform_clique", "build_tower", "check_petal_maximal_cliques",
    "check_property1", "check_property2", "chromatic_number",
    "clique_chromatic_number", "clique_number", "complement",
    "construct_tower_coloring", "estimate_failure_probability",
    "expand_at_clique", "find_clique_cutset", "find_odd_antihole",
    "find_odd_hole", "find_uniform_clique", "glue_along_clique",
    "graph_from_json", "graph_to_dot", "graph_to_json",
    "greedy_clique_coloring", "induced_subgraph", "is_clique",
    "is_cobipartite", "is_perfect", "is_uniform_clique", "load_graph",
    "maximal_cliques", "minimum_clique_coloring", "paper_sequence",
    "sample_bijection", "save_graph", "universal_expansion",
    "verify_clique_coloring",
]
