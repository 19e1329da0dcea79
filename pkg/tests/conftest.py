import random

import pytest
from hypothesis import strategies as st

from memrace.alignment import ScoringScheme, SeedContext, Sequence


def bases(min_size=1, max_size=8):
    return st.text(alphabet="ACGT", min_size=min_size, max_size=max_size)


def schemes(hi=4):
    return st.builds(ScoringScheme, st.integers(0, hi), st.integers(0, hi), st.integers(0, hi))


def seeds(hi=16):
    return st.builds(SeedContext, st.integers(0, hi))


def random_seq(rng: random.Random, n: int) -> Sequence:
    return Sequence("".join(rng.choice("ACGT") for _ in range(n)))


@pytest.fixture
def rng():
    return random.Random(20261016)


ACCEPTANCE_LINES = []


def record_criterion(number, title, passed, detail=""):
    status = "PASS" if passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] criterion {number}: {title}" + (f" ({detail})" if detail else ""))
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
