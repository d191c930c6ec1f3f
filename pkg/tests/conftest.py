from __future__ import annotations

from pathlib import Path

import pytest

from nsra.registry import builtin_crypto_profile

GOLDEN = Path(__file__).parent / "golden"

_acceptance_results: list[tuple[str, str]] = []


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN


@pytest.fixture(scope="session")
def registry():
    return builtin_crypto_profile()


def golden_text(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    _acceptance_results.append((report.nodeid.rsplit("::", 1)[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in _acceptance_results:
        label = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{label}  {name}")
