"""Maximum weight 2-packing sets via data reduction, reduce&transform,
reduce-and-peel and difference-core search."""

from .drp import DrpParams, DrpResult, build_dcore, difference_set, drp, embed, next_config
from .graph import AggregateAudit, GraphError, LinkGraph, Solution, WeightedGraph
from .mwis import MwisResult, MwisSolverSpec, SolverKind, exact_mwis_bb, greedy_mwis, local_search_mwis, solve_mwis
from .oracle import OracleBudget, OracleBudgetExceeded, brute_mw2ps, brute_mwis, is_2packing, is_independent
from .peel import Action, Mode, PeelConfig, Rating, peel_step, rating, redw2pack
from .reductions import (Kind, ReducedInstance, ReductionConfig, ReductionEvent, Reducer, reduce_exhaustively,
                         restore)
from .transform import MwisInstance, lift, reduce_and_transform, square

__version__ = "0.1.0"
