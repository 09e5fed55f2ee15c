import numpy as np
import pytest

# The worked 2-D example used across modules: nine points, three initial
# means, and one far-away point that no mean-based cluster should accept.
EXAMPLE_POINTS = [
    (4, 6), (112, 94), (9, 15), (4, 9), (8, 17), (3, 2), (1, 4), (1, 7), (10, 9),
]
EXAMPLE_MEANS = [(4, 6), (4, 9), (3, 2)]
FAR_POINT = (112, 94)
NEW_FAR_POINTS = [(155, 112), (99, 125)]


@pytest.fixture
def example_points():
    return np.array(EXAMPLE_POINTS, dtype=float)


@pytest.fixture
def example_means():
    return np.array(EXAMPLE_MEANS, dtype=float)
