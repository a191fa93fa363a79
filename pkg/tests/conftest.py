import random

import pytest
from hypothesis import settings

from pgroupdim.group import Element, GroupParams

settings.register_profile("pkg", deadline=None, max_examples=60)
settings.load_profile("pkg")


@pytest.fixture(scope="session")
def p31():
    return GroupParams(3, 1)


@pytest.fixture(scope="session")
def p32():
    return GroupParams(3, 2)


@pytest.fixture(scope="session")
def p51():
    return GroupParams(5, 1)


@pytest.fixture(scope="session")
def orc():
    from pgroupdim.oracle import oracle

    return oracle()


def random_element(params: GroupParams, rng: random.Random) -> Element:
    return Element(
        rng.randrange(params.p**params.k),
        tuple(rng.randrange(params.p) for _ in range(params.n)),
        tuple(rng.randrange(params.p) for _ in range(params.zdim)),
    )
