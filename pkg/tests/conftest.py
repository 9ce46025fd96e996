import numpy as np
import pytest

from kappa_star.symbols import BGRID_REF, VGRID_REF, make_bump_gaussian, test_family


@pytest.fixture(scope="session")
def family():
    return test_family(6)


@pytest.fixture(scope="session")
def pair(family):
    # overlapping beta-profiles keep relative errors meaningful
    return family[0], family[2]


@pytest.fixture(scope="session")
def gauss():
    return make_bump_gaussian(1.0, 0.4, 0.9, 1.0 + 0.3j, 0, VGRID_REF, BGRID_REF)


@pytest.fixture(scope="session")
def gauss2():
    return make_bump_gaussian(0.8, -0.3, 1.1, 0.7, 1, VGRID_REF, BGRID_REF, alpha0=0.4)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)



ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(pytestconfig):
    return pytestconfig.stash.setdefault(ACCEPTANCE_LINES, [])


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
