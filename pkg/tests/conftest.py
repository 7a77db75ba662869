import time

import pytest

from mrforbid.forbidden import RankTable, find_forbidden


@pytest.fixture(scope="session")
def gf2_table8():
    """mr over GF(2) for every graph on <= 8 vertices (about a minute, single worker)."""
    t0 = time.perf_counter()
    table = RankTable(2)
    table.ensure(8)
    table.build_seconds = time.perf_counter() - t0
    return table


@pytest.fixture(scope="session")
def f4_catalog(gf2_table8):
    return find_forbidden(2, 3, 8, table=gf2_table8)


@pytest.fixture(scope="session")
def f4_file(f4_catalog, tmp_path_factory):
    path = tmp_path_factory.mktemp("catalog") / "f4.g6"
    f4_catalog.write(path)
    return path


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[key])
