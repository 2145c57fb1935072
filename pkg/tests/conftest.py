import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from screenparse import CategoryChannel, Lexicon, TrainConfig, train_channel  # noqa: E402
from screenparse.corpus import bundled_corpus  # noqa: E402

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        n, text = mark.args
        prev = _ACCEPTANCE.get((n, text), True)
        _ACCEPTANCE[(n, text)] = prev and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (n, text), ok in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {text}")


@pytest.fixture(scope="session")
def lexicon():
    return Lexicon.bundled()


@pytest.fixture(scope="session")
def train_corpus():
    return bundled_corpus("train")


@pytest.fixture(scope="session")
def test_corpus():
    return bundled_corpus("test")


@pytest.fixture(scope="session")
def trained(lexicon, train_corpus):
    """Fresh seed-0 training run with default settings: (channel, train metrics)."""
    channel = CategoryChannel.untrained(lexicon, seed=0)
    return train_channel(channel, train_corpus, TrainConfig(seed=0))


@pytest.fixture
def bundled_channel():
    return CategoryChannel.bundled()
