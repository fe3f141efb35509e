import random

import pytest

from twinroot import gcm

TEST_GCMS = {
    "A2": gcm.A2,
    "B2": gcm.B2,
    "G2": gcm.G2,
    "affine_A1": gcm.AFFINE_A1,
    "affine_A2": gcm.AFFINE_A2,
}

FINITE_GCMS = {k: TEST_GCMS[k] for k in ("A2", "B2", "G2")}


@pytest.fixture
def rng():
    return random.Random(20240811)
