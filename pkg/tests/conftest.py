import pytest

from cibundles.field import PrimeField, choose_prime


@pytest.fixture(scope="session")
def gf():
    """Default prime field: smallest p > 10^6 with roots of unity up to order 2*lcm(3..7)."""
    return PrimeField(choose_prime([3, 4, 5, 6, 7]))


def field_for_d(d):
    return PrimeField(choose_prime([d]))
