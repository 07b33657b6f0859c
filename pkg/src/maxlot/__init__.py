"""Exact maximal lotteries over fractional preference profiles.

Everything computes with arbitrary-precision rationals: profiles, majority
margins, maximal-lottery polytopes, comparison rules, axiom checkers, and
Monte Carlo statistics.  See the README for the ballot and matrix file
formats and the CLI.
"""

from .axioms import (
    AXIOMS,
    AxiomVerdict,
    check_agenda_consistency,
    check_cloning_consistency,
    check_composition_consistency,
    check_condorcet_consistency,
    check_neutrality,
    check_population_consistency,
    check_strong_population_consistency,
    check_unanimity,
    outcome_intersection,
    random_check,
    random_profile,
    rule_contains,
    run_random_suite,
    search_population_inconsistency,
)
from .core import (
    Agenda,
    LinearOrder,
    Lottery,
    Profile,
    compose_lottery,
    compose_lottery_sets,
    compose_profiles,
    find_components,
    is_component,
    make_profile,
    mix,
    pairwise_fraction,
    permute,
    permute_lottery,
    restrict,
)
from .margins import (
    CycleTerm,
    MarginMatrix,
    cycle_decompose,
    cycle_incidence,
    format_matrix,
    is_regular,
    is_strongly_regular,
    margins,
    mcgarvey,
    parse_matrix,
)
from .rules import RuleId, apply_rule, borda, ml_cubed, random_dictatorship
from .sim import SimConfig, SimStats, gen_impartial_culture, gen_spatial, run_sim
from .solver import (
    CondorcetReport,
    LotteryPolytope,
    condorcet_winners,
    essential_set,
    is_maximal,
    maximal_lotteries,
    maximin_polytope,
    sample,
    unique_maximal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
