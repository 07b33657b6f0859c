from fractions import Fraction

import pytest
from hypothesis import settings

from maxlot import Agenda, LinearOrder, Profile, make_profile

settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")


def profile_from(ballots: dict[str, object]) -> Profile:
    """Build a profile from {'a>b>c': weight} mappings."""
    orders = [tuple(key.split(">")) for key in ballots]
    agenda = Agenda(orders[0])
    entries = [(LinearOrder(order), Fraction(w)) for order, w in zip(orders, ballots.values())]
    return make_profile(agenda, entries)


@pytest.fixture
def strict_winner_profile() -> Profile:
    """Three alternatives; a beats both rivals 5/6 to 1/6."""
    return profile_from({"a>b>c": Fraction(1, 2), "a>c>b": Fraction(1, 3), "b>c>a": Fraction(1, 6)})


@pytest.fixture
def clone_pair_profile() -> Profile:
    """b and b2 are adjacent in every ballot, so {b, b2} is a component."""
    return profile_from({"a>b2>b": Fraction(1, 3), "a>b>b2": Fraction(1, 6), "b>b2>a": Fraction(1, 2)})


@pytest.fixture
def agreeing_electorates() -> tuple[Profile, Profile]:
    """Two electorates that both accept the half-half lottery on {a, b}."""
    left = profile_from({"a>b>c": Fraction(1, 2), "b>c>a": Fraction(1, 2)})
    right = profile_from({"a>c>b": Fraction(1, 2), "b>c>a": Fraction(1, 2)})
    return left, right


@pytest.fixture
def cyclic_tie_profile() -> Profile:
    """Uniform majority cycle: every alternative loses one pairing by 1/3."""
    return profile_from({"a>b>c": Fraction(1, 3), "b>c>a": Fraction(1, 3), "c>a>b": Fraction(1, 3)})


@pytest.fixture
def spanning_profiles(cyclic_tie_profile) -> list[Profile]:
    """Six profiles over {a,b,c} that are affinely independent in ballot space."""
    half = Fraction(1, 2)
    return [
        cyclic_tie_profile,
        profile_from({"a>b>c": half, "c>b>a": half}),
        profile_from({"a>c>b": half, "b>c>a": half}),
        profile_from({"b>a>c": half, "c>a>b": half}),
        profile_from({"a>b>c": half, "b>c>a": half}),
        profile_from({"b>a>c": half, "a>c>b": half}),
    ]
