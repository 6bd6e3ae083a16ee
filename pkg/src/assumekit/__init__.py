"""Environment assumptions for unrealizable synthesis games.

Given a two-player game whose specification the system cannot win on its
own, compute a minimal non-restrictive safety assumption (environment
edges never taken) plus a locally minimal strong-fairness assumption
(environment edges taken infinitely often when enabled infinitely often)
that together make the specification realizable, and package the result
as an omega automaton with witness machines for both sides.
"""

from .benchgen import (
    Cnf,
    ThreeSatGame,
    assignment_from_assumption,
    assumption_from_assignment,
    gen_3sat_game,
    min_fair_subset_exhaustive,
    parse_dimacs,
    random_game,
    satisfiable,
)
from .errors import (
    AssumeKitError,
    FormatError,
    GuardError,
    InternalInvariantError,
    NoFairAssumptionError,
    StrategyError,
    UnsatisfiableError,
    ValidationError,
    WitnessError,
)
from .fairness import (
    FairAssumption,
    ass_red,
    assume_fair_win,
    is_live,
    locally_minimal_fair,
    oracle_assume_fair,
)
from .game import (
    Edge,
    GameGraph,
    LassoPlay,
    LassoWord,
    Letter,
    MealyTransducer,
    MemorylessStrategy,
    MooreTransducer,
    Objective,
    ObjectiveKind,
    Owner,
    SynthesisGame,
    all_letters,
    build_graph,
    build_synthesis_game,
    compose_moore_mealy,
    dump_game,
    format_word,
    induced_structure,
    letter_successor,
    parse_game,
    parse_game_file,
    parse_word,
    strategy_to_moore,
    to_dot,
    word_of_play,
)
from .pipeline import (
    AssumptionAutomaton,
    CombinedAssumption,
    EnvWitness,
    automaton_dot,
    combined_assumption,
    dump_automaton,
    env_witness,
    is_empty,
    lasso_member,
    parse_automaton,
)
from .safety import (
    SafetyAssumption,
    TransformResult,
    assume_safe_transform,
    avoid_region,
    compute_safety_assumption,
    env_can_avoid,
    is_restrictive,
    is_safe_sufficient,
)
from .solvers import SolveResult, attractor, cooperative_win, solve
from .stochastic import GadgetOutput, almost_sure_parity, gadget_reduce, oracle_almost_sure

__version__ = "0.1.0"

__all__ = [
    "AssumeKitError",
    "AssumptionAutomaton",
    "Cnf",
    "CombinedAssumption",
    "Edge",
    "EnvWitness",
    "FairAssumption",
    "FormatError",
    "GadgetOutput",
    "GameGraph",
    "GuardError",
    "InternalInvariantError",
    "LassoPlay",
    "LassoWord",
    "Letter",
    "MealyTransducer",
    "MemorylessStrategy",
    "MooreTransducer",
    "NoFairAssumptionError",
    "Objective",
    "ObjectiveKind",
    "Owner",
    "SafetyAssumption",
    "SolveResult",
    "StrategyError",
    "SynthesisGame",
    "ThreeSatGame",
    "TransformResult",
    "UnsatisfiableError",
    "ValidationError",
    "WitnessError",
    "all_letters",
    "almost_sure_parity",
    "ass_red",
    "assignment_from_assumption",
    "assume_fair_win",
    "assume_safe_transform",
    "assumption_from_assignment",
    "attractor",
    "automaton_dot",
    "avoid_region",
    "build_graph",
    "build_synthesis_game",
    "combined_assumption",
    "compose_moore_mealy",
    "compute_safety_assumption",
    "cooperative_win",
    "dump_automaton",
    "dump_game",
    "env_can_avoid",
    "env_witness",
    "format_word",
    "gadget_reduce",
    "gen_3sat_game",
    "induced_structure",
    "is_empty",
    "is_live",
    "is_restrictive",
    "is_safe_sufficient",
    "lasso_member",
    "letter_successor",
    "locally_minimal_fair",
    "min_fair_subset_exhaustive",
    "oracle_almost_sure",
    "oracle_assume_fair",
    "parse_automaton",
    "parse_dimacs",
    "parse_game",
    "parse_game_file",
    "parse_word",
    "random_game",
    "satisfiable",
    "solve",
    "strategy_to_moore",
    "to_dot",
    "word_of_play",
]
