from fractions import Fraction

import pytest

from edimaging import BeliefState, Vocabulary, default_vocabulary, hamming


@pytest.fixture(scope="session")
def qr():
    return Vocabulary(("q", "r"))


@pytest.fixture(scope="session")
def km_vocab():
    return Vocabulary(("book", "mag"))


@pytest.fixture(scope="session")
def v3():
    return default_vocabulary(3)


@pytest.fixture(scope="session")
def d_qr(qr):
    return hamming(qr)


@pytest.fixture(scope="session")
def d_km(km_vocab):
    return hamming(km_vocab)


@pytest.fixture(scope="session")
def d3(v3):
    return hamming(v3)


@pytest.fixture
def b37(qr):
    """Certain of q, leaning r: the recurring <0.3, 0.7, 0, 0> state."""
    return BeliefState.from_display(qr, [Fraction(3, 10), Fraction(7, 10), 0, 0])


@pytest.fixture
def b10(qr):
    return BeliefState.point_mass(qr, 0b11)


@pytest.fixture
def km_state(km_vocab):
    """Exactly one of book/mag on the floor, evenly split."""
    return BeliefState.from_display(km_vocab, [0, Fraction(1, 2), Fraction(1, 2), 0])
