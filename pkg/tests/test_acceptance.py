"""The acceptance suite: one line per criterion, each must pass inside its budget."""
import pytest

from hopfzeta.acceptance import CRITERIA


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number}" if hasattr(c, "number") else c.__name__)
def test_criterion(criterion, acceptance_log):
    r = criterion()
    print(r.line())
    acceptance_log.append(r.line())
    assert r.passed, r.line()
