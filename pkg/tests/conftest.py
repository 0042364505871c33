import math
import random

import pytest

from dubins_intercept import Scenario
from dubins_intercept.tables import CASES

PI = math.pi


def random_scenario(rng: random.Random) -> Scenario:
    vp = rng.uniform(2, 15)
    return Scenario.build(
        (rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(0, 2 * PI)),
        (rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(0, 2 * PI)),
        vp,
        rng.uniform(1e-3, 1.0) * vp,
        rng.uniform(0.5, 5),
    )


def random_scenarios(n: int, seed: int) -> list[Scenario]:
    rng = random.Random(seed)
    return [random_scenario(rng) for _ in range(n)]


def table_scenarios() -> list[Scenario]:
    seen, out = set(), []
    for case in CASES:
        if id(case.scenario) not in seen:
            seen.add(id(case.scenario))
            out.append(case.scenario)
    return out


@pytest.fixture
def table1():
    return Scenario.build((0, 0, 2 * PI / 3), (-5, 0, PI / 2), 5, 1, 1)


@pytest.fixture
def table2():
    return Scenario.build((0, 0, PI / 3), (8, -2, 2 * PI / 3), 5, 2, 1)


@pytest.fixture
def table7():
    return Scenario.build((1, 0, 0), (2, 2, 5 * PI / 4), 10, 1, 1)


@pytest.fixture
def dead_ahead():
    return Scenario.build((0, 0, 0), (10, 0, 0), 5, 1, 1)
