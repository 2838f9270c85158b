import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pcmfix import MetricRecipe, MultiValuedMap, build_space  # noqa: E402

KANNAN_MAP = {0: [0], 1: [0], 4: [0, 1]}
CHATTERJEA_MAP = {0: [0], 1: [0], 2: [0, 1]}
CHATTERJEA_TABLE = {
    (0, 0): (0, 0),
    (1, 1): (0, 0),
    (2, 2): ("1/4", 0),
    (0, 1): ("1/6", 0),
    (0, 2): ("7/10", 0),
    (1, 2): ("1/2", 0),
}


@pytest.fixture(scope="session")
def kannan_space():
    return build_space([0, 1, 4], 2, MetricRecipe.absdiff_scaledmax("1/4", "1/2"))


@pytest.fixture(scope="session")
def kannan_map(kannan_space):
    return MultiValuedMap.on(kannan_space, KANNAN_MAP)


@pytest.fixture(scope="session")
def chatterjea_space():
    return build_space([0, 1, 2], 2, MetricRecipe.from_table(CHATTERJEA_TABLE))


@pytest.fixture(scope="session")
def chatterjea_map(chatterjea_space):
    return MultiValuedMap.on(chatterjea_space, CHATTERJEA_MAP)
