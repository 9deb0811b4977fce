import random

import pytest
from hypothesis import strategies as st

from quadid.ncalg import AlgebraElement, TorusPresentation
from quadid.scalar import LaurentScalar

scalars = st.dictionaries(st.integers(-6, 6), st.integers(-20, 20), max_size=4).map(LaurentScalar)


def random_torus(rng: random.Random, ngens: int = 3) -> TorusPresentation:
    comm = [[0] * ngens for _ in range(ngens)]
    for a in range(ngens):
        for b in range(a):
            c = rng.randint(-2, 2)
            comm[a][b], comm[b][a] = c, -c
    return TorusPresentation([f"g{k}" for k in range(ngens)], comm)


def random_torus_element(rng: random.Random, alg: TorusPresentation, nterms: int = 3, spread: int = 2) -> AlgebraElement:
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        mono = tuple(rng.randint(-spread, spread) for _ in range(alg.ngens))
        coef = LaurentScalar({rng.randint(-2, 2): rng.choice([-2, -1, 1, 3])})
        terms[mono] = coef
    el = AlgebraElement(alg, terms)
    return el if el else alg.one()


@pytest.fixture
def rng():
    return random.Random(20240517)
