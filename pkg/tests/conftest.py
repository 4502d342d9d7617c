import pytest

from lfsrx.report import PRESETS
from lfsrx.extractors import full_period_stream

# criterion id -> (passed, detail); filled in by test_acceptance
ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture(scope="session")
def full_periods():
    """Annotated full-period stream of each preset under its default seed."""
    return {name: full_period_stream(p.spec())[0] for name, p in PRESETS.items()}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: (int(k.split(".")[0].lstrip("C")), k)):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key:<5} {detail}")
