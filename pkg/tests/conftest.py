import numpy as np
import pytest

from catcodes import PauliChannel


def random_channels(seed: int, count: int) -> list[PauliChannel]:
    """Seeded Dirichlet draws over the Pauli simplex."""
    rng = np.random.default_rng(seed)
    return [PauliChannel(*(float(x) for x in rng.dirichlet([1.0] * 4))) for _ in range(count)]


@pytest.fixture
def channels20() -> list[PauliChannel]:
    return random_channels(20260826, 20)
