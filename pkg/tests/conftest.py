import pytest

from fidentity.errors import TheoremViolation

# acceptance lines, filled in by test_acceptance.py
ACCEPTANCE: dict[str, str] = {}
VIOLATIONS: list[str] = []

_original_init = TheoremViolation.__init__


def _counting_init(self, *args, **kwargs):
    VIOLATIONS.append(type(self).__name__)
    _original_init(self, *args, **kwargs)


def pytest_configure(config):
    TheoremViolation.__init__ = _counting_init


def pytest_unconfigure(config):
    TheoremViolation.__init__ = _original_init


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for name, line in ACCEPTANCE.items():
            terminalreporter.write_line(line)
    terminalreporter.write_line(f"TheoremViolation events in this session: {len(VIOLATIONS)}")


@pytest.hookimpl(trylast=True)
def pytest_sessionfinish(session, exitstatus):
    if VIOLATIONS and session.exitstatus == 0:
        session.exitstatus = 1
