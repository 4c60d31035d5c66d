import functools

import pytest

from perpcalc.rings import build_ring

CORPUS = [
    "zmod 2",
    "zmod 4",
    "zmod 6",
    "zmod 8",
    "zmod 9",
    "gf 2 2 x^2+x+1",
    "quot gf2 [x]/(x^2)",
    "quot gf2 [x,y]/(x^2,xy,y^2)",
    "tri 2 over gf 2 1",
]
PF_CORPUS = CORPUS[:7]
NON_PF = CORPUS[7:]
LOCAL = "quot gf2 [x,y]/(x^2,xy,y^2)"
TRI = "tri 2 over gf 2 1"

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def ring(text):
    """Shared ring objects, so lattices and reports are computed once per session."""
    return build_ring(text)


@pytest.fixture
def R4():
    return ring("zmod 4")


@pytest.fixture
def local():
    return ring(LOCAL)


@pytest.fixture
def tri():
    return ring(TRI)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
