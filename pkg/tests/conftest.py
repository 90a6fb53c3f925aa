import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion; printed at the end of the run."""
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, [])

    def record(number, ok, detail, seconds):
        line = f"criterion {str(number):>2}: {'PASS' if ok else 'FAIL'}  ({seconds:.2f} s)  {detail}"
        lines.append(line)
        print(line)

    return record


def _criterion_key(line):
    label = line.split()[1].rstrip(":")
    digits = "".join(c for c in label if c.isdigit())
    return int(digits), label


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=_criterion_key):
            terminalreporter.write_line(line)
