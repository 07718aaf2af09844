import random

import pytest

from fhyper import corpus
from fhyper.permgroup import PermGroup


@pytest.fixture(scope="session")
def groups():
    return corpus.build_corpus()


def shuffled(G: PermGroup, seed: int) -> PermGroup:
    """Same subgroup, generators in a seeded random order plus a redundant product."""
    rng = random.Random(seed)
    gens = list(G.generators)
    rng.shuffle(gens)
    if len(gens) >= 2:
        a, b = rng.sample(gens, 2)
        gens.append(tuple(b[x] for x in a))
    return PermGroup(gens, G.degree)


def same(A: PermGroup, B: PermGroup) -> bool:
    return A.order == B.order and all(B.contains(g) for g in A.generators)
