"""Dynamic approximate maximum k-edge coloring.

Modules
-------
graph        dynamic simple graphs, update events, the stream text format
coloring     partial proper colorings, Vizing / bipartite colorers, color discarding
greedy       the dynamic Greedy algorithm
kmatch       maximal and fractional dynamic k-matchings
polytope     half-integral b-matching optima and their rounding
sparsifier   color-sampling sparsification of fractional k-matchings
pipelines    amortized MatchO / MatchA pipelines and bipartite variants
oracles      exhaustive ground truth on tiny graphs
bench        stream generation, metrics replay, invariant verification
"""

from .coloring import (
    PartialColoring,
    bipartite_color,
    discard_least_used,
    greedy_total_color,
    verify_proper,
    vizing_color,
)
from .graph import DELETE, INSERT, ContractError, DynamicGraph, UpdateEvent, edge, parse_stream
from .greedy import GreedyState
from .kmatch import FractionalMatcher, MaximalKMatcher
from .pipelines import Pipeline
from .polytope import FractionalAssignment, euler_partition, half_integral_optimum, round_half_integral
from .sparsifier import Sparsifier, bucket_index, default_d

__version__ = "0.1.0"
