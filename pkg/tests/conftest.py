import pytest


@pytest.fixture(autouse=True, scope="session")
def _isolated_cache(tmp_path_factory):
    # keep test runs from writing to the user's data directory
    mp = pytest.MonkeyPatch()
    mp.setenv("MATCHSCHEME_CACHE_DIR", str(tmp_path_factory.mktemp("cache")))
    yield
    mp.undo()


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for key in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[key])
