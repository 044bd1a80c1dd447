import pathlib
import random

import pytest

from hopalg.core import HyperOp, Universe
from hopalg.tableio import parse_table

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def load_fixture(name: str) -> HyperOp:
    return parse_table((FIXTURES / name).read_text())


def fixture_path(name: str) -> pathlib.Path:
    return FIXTURES / name


def total_table(n: int) -> HyperOp:
    """Every cell is the whole carrier."""
    universe = Universe(tuple(f"e{i}" for i in range(n)))
    full = universe.full_mask
    return HyperOp(universe, tuple(tuple(full for _ in range(n)) for _ in range(n)))


def random_table(rng: random.Random, n: int) -> HyperOp:
    universe = Universe(tuple(f"e{i}" for i in range(n)))
    cells = tuple(
        tuple(rng.randrange(1, 2**n) for _ in range(n)) for _ in range(n)
    )
    return HyperOp(universe, cells)


@pytest.fixture(scope="session")
def chain_ab() -> HyperOp:
    return load_fixture("chain_ab.hop")


@pytest.fixture(scope="session")
def chain_hi() -> HyperOp:
    return load_fixture("chain_hi.hop")
