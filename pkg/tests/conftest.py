import os

import pytest

from covlat import BaseSet, Cover

DATA = os.path.join(os.path.dirname(__file__), "data")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def data_path(name: str) -> str:
    return os.path.join(DATA, name)


def golden(name: str) -> str:
    with open(os.path.join(GOLDEN, name), encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture
def m3_cover():
    base = BaseSet(["a", "b", "c"])
    return Cover.from_axiom_names(
        base, [("a", ["b", "c"]), ("b", ["a", "c"]), ("c", ["a", "b"])]
    )


@pytest.fixture
def free2():
    return Cover.from_axiom_names(BaseSet(["a", "b"]), [])


@pytest.fixture
def chain2():
    # a is covered by {b}: saturated sets form a 3-chain
    return Cover.from_axiom_names(BaseSet(["a", "b"]), [("a", ["b"])])
