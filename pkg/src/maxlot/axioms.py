"""Executable consistency checks for voting rules, with re-checkable witnesses.

Each checker evaluates one axiom on one concrete instance and returns an
AxiomVerdict.  A failed verdict always carries a witness: the profiles,
lotteries, and subsets involved, sufficient to reproduce the failing
membership or equality test through the public API.

Set-valued rules are handled exactly through their halfspace descriptions
(payoff matrices); single-valued rules through their unique lottery.  Random
instance generation keeps weight denominators bounded so every comparison
stays exact and fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .core import (
    Agenda,
    LinearOrder,
    Lottery,
    Profile,
    compose_lottery_sets,
    compose_profiles,
    is_component,
    make_profile,
    mix,
    permute,
    permute_lottery,
    restrict,
)
from .polytope import enumerate_vertices, extreme_points
from .prng import SplitMix64, derive_seed
from .rules import RuleId, apply_rule, rule_payoff_matrix
from .solver import condorcet_winners

AXIOMS = (
    "population",
    "composition",
    "cloning",
    "condorcet",
    "neutrality",
    "unanimity",
    "agenda",
    "strong-population",
)

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    rule: RuleId
    passed: bool
    witness: dict | None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("a failed verdict must carry a witness")

    def as_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "rule": self.rule.value,
            "passed": self.passed,
            "witness": _jsonify(self.witness),
        }


def _jsonify(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Lottery):
        return {x: str(p) for x, p in zip(value.agenda, value.probs)}
    if isinstance(value, Profile):
        return {
            "agenda": list(value.agenda.ids),
            "ballots": {">".join(o.ranking): str(w) for o, w in sorted(value.weights.items())},
        }
    if isinstance(value, Agenda):
        return list(value.ids)
    if isinstance(value, LinearOrder):
        return ">".join(value.ranking)
    if isinstance(value, Mapping):
        return {str(k): _jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = [_jsonify(v) for v in value]
        return sorted(items, key=repr) if isinstance(value, (set, frozenset)) else items
    raise TypeError(f"cannot serialize {type(value).__name__}")


def rule_contains(rule: RuleId, profile: Profile, lottery: Lottery) -> bool:
    """Exact membership of a lottery in the rule's outcome set."""
    if lottery.agenda != profile.agenda:
        raise ValueError("lottery and profile must share an agenda")
    matrix = rule_payoff_matrix(rule, profile)
    if matrix is not None:
        rows = matrix.rows
        n = len(rows)
        return all(
            sum(lottery.probs[i] * rows[i][j] for i in range(n) if lottery.probs[i]) >= 0
            for j in range(n)
        )
    return lottery == apply_rule(rule, profile).vertices[0]


def outcome_intersection(rule: RuleId, left: Profile, right: Profile) -> list[Lottery]:
    """Vertices of f(left) intersected with f(right); empty list when disjoint."""
    if left.agenda != right.agenda:
        raise ValueError("profiles must share an agenda")
    m1 = rule_payoff_matrix(rule, left)
    m2 = rule_payoff_matrix(rule, right)
    agenda = left.agenda
    if m1 is not None and m2 is not None:
        n = len(agenda)
        one = Fraction(1)
        zero = Fraction(0)
        unit = lambda j: tuple(one if k == j else zero for k in range(n))
        equalities = [(tuple(one for _ in range(n)), one)]
        inequalities = [(unit(j), zero) for j in range(n)]
        for mat in (m1, m2):
            inequalities += [(tuple(row[j] for row in mat.rows), zero) for j in range(n)]
        return [Lottery(agenda, v) for v in enumerate_vertices(n, equalities, inequalities)]
    v1 = apply_rule(rule, left).vertices[0]
    v2 = apply_rule(rule, right).vertices[0]
    return [v1] if v1 == v2 else []


def check_population_consistency(
    rule: RuleId, left: Profile, right: Profile, coefficient: Fraction | int
) -> AxiomVerdict:
    """Whatever both electorates choose, their mixture must keep choosing."""
    lam = Fraction(coefficient)
    shared = outcome_intersection(rule, left, right)
    mixture = mix([(left, lam), (right, 1 - lam)])
    lost = [v for v in shared if not rule_contains(rule, mixture, v)]
    witness = None
    if lost:
        witness = {
            "left": left,
            "right": right,
            "coefficient": lam,
            "mixture": mixture,
            "lottery": lost[0],
        }
    return AxiomVerdict("population", rule, not lost, witness)


def check_strong_population_consistency(
    rule: RuleId, left: Profile, right: Profile, coefficient: Fraction | int
) -> AxiomVerdict:
    """Equality variant: with agreement, the mixture chooses exactly that set."""
    lam = Fraction(coefficient)
    shared = outcome_intersection(rule, left, right)
    mixture = mix([(left, lam), (right, 1 - lam)])
    witness = None
    if shared:
        lost = [v for v in shared if not rule_contains(rule, mixture, v)]
        extra = [
            v
            for v in apply_rule(rule, mixture).vertices
            if not (rule_contains(rule, left, v) and rule_contains(rule, right, v))
        ]
        if lost or extra:
            witness = {
                "left": left,
                "right": right,
                "coefficient": lam,
                "mixture": mixture,
                "lottery": (lost or extra)[0],
                "direction": "dropped" if lost else "added",
            }
    return AxiomVerdict("strong-population", rule, witness is None, witness)


def _vertex_tuples(vertices: Iterable[Lottery]) -> list[tuple[Fraction, ...]]:
    return sorted(v.probs for v in vertices)


def check_composition_consistency(
    rule: RuleId, profile: Profile, component: Iterable[str], pivot: str
) -> AxiomVerdict:
    """Outcomes must factor exactly through the cloned-down and inner profiles."""
    members = profile.agenda.subset(component)
    if pivot not in members:
        raise ValueError("pivot must belong to the component")
    if not is_component(profile, members):
        raise ValueError("subset is not a component of the profile")
    outer_ids = [x for x in profile.agenda if x not in members] + [pivot]
    outer = apply_rule(rule, restrict(profile, outer_ids))
    inner = apply_rule(rule, restrict(profile, members))
    candidates = compose_lottery_sets(outer.vertices, inner.vertices, pivot)
    composed = extreme_points([v.probs for v in candidates])
    whole = apply_rule(rule, profile)
    passed = composed == _vertex_tuples(whole.vertices)
    witness = None
    if not passed:
        witness = {
            "profile": profile,
            "component": members,
            "pivot": pivot,
            "composed": [Lottery(profile.agenda, t) for t in composed],
            "returned": list(whole.vertices),
        }
    return AxiomVerdict("composition", rule, passed, witness)


def check_cloning_consistency(
    rule: RuleId, profile: Profile, component: Iterable[str], pivot: str
) -> AxiomVerdict:
    """Probabilities outside a component ignore the component's inner structure."""
    members = profile.agenda.subset(component)
    if pivot not in members:
        raise ValueError("pivot must belong to the component")
    if not is_component(profile, members):
        raise ValueError("subset is not a component of the profile")
    outside = [x for x in profile.agenda if x not in members]
    outer_ids = outside + [pivot]
    whole = apply_rule(rule, profile)
    reduced = apply_rule(rule, restrict(profile, outer_ids))
    proj_whole = extreme_points([tuple(v.prob(x) for x in outside) for v in whole.vertices])
    proj_reduced = extreme_points([tuple(v.prob(x) for x in outside) for v in reduced.vertices])
    passed = proj_whole == proj_reduced
    witness = None
    if not passed:
        witness = {
            "profile": profile,
            "component": members,
            "pivot": pivot,
            "outside": tuple(outside),
            "projection_full": proj_whole,
            "projection_reduced": proj_reduced,
        }
    return AxiomVerdict("cloning", rule, passed, witness)


def check_condorcet_consistency(rule: RuleId, profile: Profile) -> AxiomVerdict:
    """Every weak Condorcet winner's degenerate lottery must be chosen."""
    report = condorcet_winners(profile)
    missing = [
        x
        for x in report.weak
        if not rule_contains(rule, profile, Lottery.degenerate(profile.agenda, x))
    ]
    witness = None
    if missing:
        witness = {
            "profile": profile,
            "winner": missing[0],
            "lottery": Lottery.degenerate(profile.agenda, missing[0]),
            "returned": list(apply_rule(rule, profile).vertices),
        }
    return AxiomVerdict("condorcet", rule, not missing, witness)


def check_neutrality(rule: RuleId, profile: Profile, mapping: Mapping[str, str]) -> AxiomVerdict:
    """Relabeling alternatives must relabel the outcome set and nothing else."""
    image = apply_rule(rule, permute(profile, mapping))
    relabeled = sorted(permute_lottery(v, mapping) for v in apply_rule(rule, profile).vertices)
    passed = relabeled == list(image.vertices)
    witness = None
    if not passed:
        witness = {
            "profile": profile,
            "mapping": dict(mapping),
            "relabeled_outcomes": relabeled,
            "image_outcomes": list(image.vertices),
        }
    return AxiomVerdict("neutrality", rule, passed, witness)


def check_unanimity(rule: RuleId) -> AxiomVerdict:
    """On two alternatives with a unanimous electorate, the top is certain."""
    agenda = Agenda(("a", "b"))
    for ranking in (("a", "b"), ("b", "a")):
        profile = make_profile(agenda, [(LinearOrder(ranking), 1)])
        expected = Lottery.degenerate(agenda, ranking[0])
        outcome = apply_rule(rule, profile)
        if outcome.vertices != (expected,):
            witness = {
                "profile": profile,
                "expected": expected,
                "returned": list(outcome.vertices),
            }
            return AxiomVerdict("unanimity", rule, False, witness)
    return AxiomVerdict("unanimity", rule, True, None)


def check_agenda_consistency(
    rule: RuleId, profile: Profile, agenda_one: Iterable[str], agenda_two: Iterable[str]
) -> AxiomVerdict:
    """Choices supported on the overlap of two covering agendas must agree.

    The outcomes of the whole profile whose support lies in the overlap must
    equal the intersection of the outcomes of the two restricted profiles.
    """
    a1 = profile.agenda.subset(agenda_one)
    a2 = profile.agenda.subset(agenda_two)
    if set(a1) | set(a2) != set(profile.agenda.ids):
        raise ValueError("the two agendas must cover the whole agenda")
    common = tuple(sorted(set(a1) & set(a2)))
    if not common:
        raise ValueError("the two agendas must overlap")
    whole = apply_rule(rule, profile)
    lhs = sorted(
        tuple(v.prob(x) for x in common) for v in whole.vertices if set(v.support()) <= set(common)
    )
    rhs = _restricted_intersection(rule, profile, a1, a2, common)
    passed = lhs == rhs
    witness = None
    if not passed:
        witness = {
            "profile": profile,
            "agenda_one": a1,
            "agenda_two": a2,
            "common": common,
            "whole_side": lhs,
            "restricted_side": rhs,
        }
    return AxiomVerdict("agenda", rule, passed, witness)


def _restricted_intersection(rule, profile, a1, a2, common) -> list[tuple[Fraction, ...]]:
    """Vertices (as tuples over `common`) of f(R|a1) meet f(R|a2)."""
    left = restrict(profile, a1)
    right = restrict(profile, a2)
    m1 = rule_payoff_matrix(rule, left)
    m2 = rule_payoff_matrix(rule, right)
    if m1 is not None and m2 is not None:
        k = len(common)
        one = Fraction(1)
        zero = Fraction(0)
        equalities = [(tuple(one for _ in range(k)), one)]
        inequalities = [
            (tuple(one if t == s else zero for t in range(k)), zero) for s in range(k)
        ]
        for mat in (m1, m2):
            rows = [mat.rows[mat.agenda.index(x)] for x in common]
            for j in range(len(mat.agenda)):
                inequalities.append((tuple(row[j] for row in rows), zero))
        return enumerate_vertices(k, equalities, inequalities)
    v1 = apply_rule(rule, left).vertices[0]
    v2 = apply_rule(rule, right).vertices[0]
    if set(v1.support()) <= set(common) and set(v2.support()) <= set(common):
        t1 = tuple(v1.prob(x) for x in common)
        t2 = tuple(v2.prob(x) for x in common)
        if t1 == t2:
            return [t1]
    return []


# --- random instances -------------------------------------------------------


def random_profile(gen: SplitMix64, agenda: Agenda, max_ballots: int = 6) -> Profile:
    """Random profile with weight denominators bounded by the ballot count."""
    count = 1 + gen.below(max_ballots)
    entries = [(LinearOrder(gen.permutation(agenda.ids)), 1) for _ in range(count)]
    return make_profile(agenda, entries)


def _random_agenda(gen: SplitMix64, max_alternatives: int) -> Agenda:
    n = 2 + gen.below(max_alternatives - 1)
    return Agenda(tuple(_LETTERS[:n]))


def _random_coefficient(gen: SplitMix64) -> Fraction:
    den = 2 + gen.below(3)
    return Fraction(gen.below(den + 1), den)


def random_component_instance(
    gen: SplitMix64, max_alternatives: int = 5, max_ballots: int = 6
) -> tuple[Profile, tuple[str, ...], str]:
    """Profile with a guaranteed component, built by splicing two random profiles."""
    inner_size = 2 + gen.below(2)
    outer_size = 2 + gen.below(max(1, max_alternatives - inner_size))
    pivot = "p0"
    outer_ids = (pivot,) + tuple(f"o{i}" for i in range(outer_size - 1))
    inner_ids = (pivot,) + tuple(f"i{i}" for i in range(inner_size - 1))
    outer = random_profile(gen, Agenda(outer_ids), max_ballots)
    inner = random_profile(gen, Agenda(inner_ids), max_ballots)
    return compose_profiles(outer, inner, pivot), tuple(sorted(inner_ids)), pivot


def _random_bijection(gen: SplitMix64, agenda: Agenda) -> dict[str, str]:
    if gen.below(2):
        targets = gen.permutation(agenda.ids)
    else:
        targets = gen.permutation(tuple(x + "x" for x in agenda.ids))
    return dict(zip(agenda.ids, targets))


def _random_agenda_split(gen: SplitMix64, agenda: Agenda) -> tuple[tuple[str, ...], tuple[str, ...]]:
    ids = agenda.ids
    shared = set(gen.permutation(ids)[: 1 + gen.below(len(ids))])
    a1, a2 = set(shared), set(shared)
    for x in ids:
        if x not in shared:
            (a1 if gen.below(2) else a2).add(x)
    return tuple(sorted(a1)), tuple(sorted(a2))


def random_check(
    axiom: str,
    rule: RuleId,
    gen: SplitMix64,
    max_alternatives: int = 5,
    max_ballots: int = 6,
) -> AxiomVerdict:
    """One randomly generated admissible instance of the named axiom."""
    if axiom == "population":
        agenda = _random_agenda(gen, max_alternatives)
        return check_population_consistency(
            rule,
            random_profile(gen, agenda, max_ballots),
            random_profile(gen, agenda, max_ballots),
            _random_coefficient(gen),
        )
    if axiom == "strong-population":
        agenda = _random_agenda(gen, max_alternatives)
        return check_strong_population_consistency(
            rule,
            random_profile(gen, agenda, max_ballots),
            random_profile(gen, agenda, max_ballots),
            _random_coefficient(gen),
        )
    if axiom == "composition":
        profile, component, pivot = random_component_instance(gen, max_alternatives, max_ballots)
        return check_composition_consistency(rule, profile, component, pivot)
    if axiom == "cloning":
        profile, component, pivot = random_component_instance(gen, max_alternatives, max_ballots)
        return check_cloning_consistency(rule, profile, component, pivot)
    if axiom == "condorcet":
        agenda = _random_agenda(gen, max_alternatives)
        return check_condorcet_consistency(rule, random_profile(gen, agenda, max_ballots))
    if axiom == "neutrality":
        agenda = _random_agenda(gen, max_alternatives)
        profile = random_profile(gen, agenda, max_ballots)
        return check_neutrality(rule, profile, _random_bijection(gen, agenda))
    if axiom == "unanimity":
        return check_unanimity(rule)
    if axiom == "agenda":
        agenda = _random_agenda(gen, max_alternatives)
        profile = random_profile(gen, agenda, max_ballots)
        a1, a2 = _random_agenda_split(gen, agenda)
        return check_agenda_consistency(rule, profile, a1, a2)
    raise ValueError(f"unknown axiom {axiom!r}; choose from {', '.join(AXIOMS)}")


def run_random_suite(
    axiom: str,
    rule: RuleId,
    trials: int,
    seed: int,
    max_alternatives: int = 5,
    max_ballots: int = 6,
) -> list[AxiomVerdict]:
    """Independent random instances, one verdict each; seed-stable."""
    out = []
    for t in range(trials):
        gen = SplitMix64(derive_seed(seed, t))
        out.append(random_check(axiom, rule, gen, max_alternatives, max_ballots))
    return out


def search_population_inconsistency(
    rule: RuleId,
    trials: int,
    seed: int,
    n_alternatives: int = 4,
    max_ballots: int = 6,
) -> AxiomVerdict | None:
    """Randomized hunt for a population-consistency violation.

    Alternates fully random profile pairs with pairs related by a relabeling
    of one profile; relabeled pairs share symmetric outcomes, which is where
    nonlinear rules tend to break.  Returns the first failed verdict.
    """
    gen = SplitMix64(seed)
    agenda = Agenda(tuple(_LETTERS[:n_alternatives]))
    for _ in range(trials):
        left = random_profile(gen, agenda, max_ballots)
        if gen.below(2):
            mapping = dict(zip(agenda.ids, gen.permutation(agenda.ids)))
            right = permute(left, mapping)
        else:
            right = random_profile(gen, agenda, max_ballots)
        lam = Fraction(1, 2) if gen.below(2) else Fraction(1 + gen.below(3), 4)
        verdict = check_population_consistency(rule, left, right, lam)
        if not verdict.passed:
            return verdict
    return None
