"""Shared fixtures and the scripted RNG test double."""

import numpy as np
import pytest

import tspga.data
from tspga import build_distance_matrix, load_instance


class ScriptedRng:
    """Hand-fed stand-in for RngStream with separate real and integer queues.

    Keeping the queues separate makes hand traces insensitive to whether an
    operator batches its probability draws, which is exactly the freedom the
    operators reserve. randint asserts the scripted value fits the requested
    range, so a trace that desynchronizes fails loudly.
    """

    def __init__(self, reals=(), ints=()):
        self.reals = list(reals)
        self.ints = list(ints)

    def random(self):
        return self.reals.pop(0)

    def random_array(self, k):
        return np.array([self.reals.pop(0) for _ in range(k)], dtype=float)

    def randint(self, lo, hi):
        value = self.ints.pop(0)
        assert lo <= value <= hi, f"scripted draw {value} outside [{lo}, {hi}]"
        return value

    def exhausted(self):
        return not self.reals and not self.ints


TRIANGLE_TSP = """\
NAME: triangle
TYPE: TSP
DIMENSION: 3
EDGE_WEIGHT_TYPE: EUC_2D
NODE_COORD_SECTION
1 0 0
2 3 0
3 0 4
EOF
"""


@pytest.fixture(scope="session")
def berlin52():
    return load_instance(tspga.data.BERLIN52_TSP)


@pytest.fixture(scope="session")
def berlin52_dm(berlin52):
    return build_distance_matrix(berlin52)


@pytest.fixture(scope="session")
def triangle():
    from tspga import parse_instance

    return parse_instance(TRIANGLE_TSP)


@pytest.fixture(scope="session")
def triangle_dm(triangle):
    return build_distance_matrix(triangle)
