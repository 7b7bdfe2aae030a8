import random

import pytest
from hypothesis import HealthCheck, settings

from designdojo.model import (
    Association,
    ClassBox,
    Design,
    Member,
    MemberKind,
    make_keywords,
)
from designdojo.packio import load_bundled_pack

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

ALPHABET = ("alpha", "beta", "gamma", "delta")


@pytest.fixture(scope="session")
def core_pack():
    return load_bundled_pack()


@pytest.fixture(scope="session")
def garage(core_pack):
    return core_pack.puzzle_by_id("sort-the-garage")


def random_keywords(rng: random.Random, alphabet=ALPHABET, min_size=1, max_size=3):
    size = rng.randint(min_size, min(max_size, len(alphabet)))
    return make_keywords(rng.sample(alphabet, size))


def random_class(rng: random.Random, class_id="c", max_members=5) -> ClassBox:
    members = tuple(
        Member(
            id=f"m{i}",
            kind=rng.choice((MemberKind.ATTRIBUTE, MemberKind.METHOD)),
            name=f"m{i}",
            keywords=random_keywords(rng),
        )
        for i in range(rng.randint(0, max_members))
    )
    return ClassBox(
        id=class_id, name=class_id.upper(), keywords=random_keywords(rng), members=members
    )


def random_graph_design(rng: random.Random, max_classes=8) -> Design:
    n = rng.randint(1, max_classes)
    ids = [f"c{i}" for i in range(n)]
    classes = tuple(ClassBox(id=cid, name=cid.upper()) for cid in ids)
    pairs = [(a, b) for i, a in enumerate(ids) for b in ids[i + 1:]]
    edges = frozenset(
        Association(a, b) for a, b in pairs if rng.random() < 0.4
    )
    return Design(classes=classes, associations=edges)
