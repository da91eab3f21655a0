import pytest

from finsite.fincat import fixture, fixtures
from finsite.sieve import Sieve, empty_sieve, maximal_sieve
from finsite.topology import GrothendieckTopology, trivial_topology


@pytest.fixture(scope="session")
def corpus():
    return fixtures()


@pytest.fixture(scope="session")
def walk():
    return fixture("WALK")


@pytest.fixture(scope="session")
def cospan():
    return fixture("COSPAN")


@pytest.fixture(scope="session")
def jcov(walk):
    """∅ covers a; only the maximal sieve covers b."""
    return GrothendieckTopology(walk, {"a": {empty_sieve(walk, "a"), maximal_sieve(walk, "a")},
                                       "b": {maximal_sieve(walk, "b")}})


@pytest.fixture(scope="session")
def d_walk(walk):
    return GrothendieckTopology(walk, {"a": {maximal_sieve(walk, "a")},
                                       "b": {Sieve(walk, "b", {"u"}), maximal_sieve(walk, "b")}})


@pytest.fixture(scope="session")
def trivial_walk(walk):
    return trivial_topology(walk)



def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
