import pytest

from ffplane.field import PrimeFieldCtx
from ffplane.geometry import gen_random_set
from ffplane.rng import SplitMix64


@pytest.fixture(scope="session")
def ctx3():
    return PrimeFieldCtx(3)


@pytest.fixture(scope="session")
def ctx5():
    return PrimeFieldCtx(5)


@pytest.fixture(scope="session")
def ctx7():
    return PrimeFieldCtx(7)


@pytest.fixture(scope="session")
def ctx11():
    return PrimeFieldCtx(11)


@pytest.fixture(scope="session")
def ctx13():
    return PrimeFieldCtx(13)


def random_quadruple(ctx, seed, lo=0.1, hi=0.9):
    """Four seeded random sets with densities drawn from [lo, hi)."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(4):
        density = lo + (hi - lo) * rng.next_float()
        out.append(gen_random_set(ctx, density, rng.next_u64()))
    return out
