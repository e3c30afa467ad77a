from importlib import resources

import pytest

from ducksyntax.lexicon import load_bundled


def _rows(name):
    text = resources.files("ducksyntax.data").joinpath(name).read_text("utf-8")
    return [line.split("\t") for line in text.splitlines() if line and not line.startswith("#")]


@pytest.fixture(scope="session")
def lex():
    return load_bundled()


@pytest.fixture(scope="session")
def golden():
    return [(sentence, label) for sentence, label in _rows("golden.tsv")]


@pytest.fixture(scope="session")
def pairs():
    return [tuple(row) for row in _rows("pairs.tsv")]


@pytest.fixture(scope="session")
def data_path():
    return lambda name: str(resources.files("ducksyntax.data").joinpath(name))


# -- acceptance report: one line per criterion -------------------------------

_criteria: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when not in ("setup", "call"):
        return
    number, title = mark.args
    if report.when == "call" or report.failed:
        prev_ok = _criteria.get(number, (title, True))[1]
        _criteria[number] = (title, prev_ok and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}")
