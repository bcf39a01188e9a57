"""Shared fixtures and the acceptance summary printed at the end of a run."""
import pytest

from chowkit.models import k3_config
from chowkit.models.checks import context

# criterion -> list of (status, text); status is "PASS", "FAIL" or "SKIPPED"
ACCEPTANCE_RESULTS = {}


def record(criterion: int, status, text: str):
    if isinstance(status, bool):
        status = "PASS" if status else "FAIL"
    ACCEPTANCE_RESULTS.setdefault(criterion, []).append((status, text))
    print(f"criterion {criterion}: {status}  {text}")
    return status != "FAIL"


@pytest.fixture(scope="session", params=[1, 2, 3], ids=lambda r: f"rho{r}")
def rho(request):
    return request.param


@pytest.fixture(scope="session")
def cfg(rho):
    return k3_config(rho)


@pytest.fixture(scope="session")
def ctx(cfg):
    return context(cfg)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        parts = ACCEPTANCE_RESULTS[key]
        statuses = {s for s, _ in parts}
        status = "FAIL" if "FAIL" in statuses else "SKIPPED" if statuses == {"SKIPPED"} else "PASS"
        text = "; ".join(t for _, t in parts)
        terminalreporter.write_line(f"criterion {key:>2}: {status}  {text}")
