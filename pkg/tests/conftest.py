import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from rational_kit import corpus
from rational_kit.automata import Alphabet
from rational_kit.monoid import is_aperiodic, transition_monoid

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

AB = Alphabet(("a", "b"))


@pytest.fixture(scope="session")
def ab():
    return AB


@pytest.fixture(scope="session")
def dfa_corpus():
    """200 complete DFAs with 1 to 7 states over {a, b}."""
    rng = random.Random(2024)
    return [corpus.random_dfa(rng, rng.randint(1, 7), AB) for _ in range(200)]


@pytest.fixture(scope="session")
def regex_corpus():
    """100 plain rational expressions with at most 8 nodes."""
    rng = random.Random(8)
    return [corpus.random_regex(rng, 8, AB) for _ in range(100)]


@pytest.fixture(scope="session")
def nfa_corpus():
    """100 NFAs with 1 to 5 states, some with ε-moves."""
    rng = random.Random(5)
    return [
        corpus.random_nfa(rng, rng.randint(1, 5), AB, density=0.35, eps_prob=0.1 if i % 3 == 0 else 0.0, final_prob=0.5)
        for i in range(100)
    ]


@pytest.fixture(scope="session")
def sentence_corpus():
    """30 MSO sentences of nesting depth at most 4."""
    rng = random.Random(4)
    return [corpus.random_sentence(rng, 4, AB) for _ in range(30)]


@pytest.fixture(scope="session")
def aperiodic_corpus():
    """50 DFAs with at most 4 states whose transition monoid is aperiodic."""
    rng = random.Random(3)
    out = []
    while len(out) < 50:
        d = corpus.random_dfa(rng, rng.randint(1, 4), AB)
        if is_aperiodic(transition_monoid(d)):
            out.append(d)
    return out


# -- acceptance summary -------------------------------------------------------------

_criteria = {}


def pytest_runtest_logreport(report):
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    name = report.nodeid.split(marker, 1)[1]
    number = int(name.split("_", 1)[0])
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed" and _criteria.get(number, True)
        _criteria[number] = ok


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if _criteria[number] else 'FAIL'}")
