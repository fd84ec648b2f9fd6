import functools

import pytest

from heckecat import build_group

# criterion number -> (passed, one-line detail); filled by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def grp(name: str):
    """One shared group object per type, so character vectors compare equal."""
    return build_group(name)


@pytest.fixture(scope="session")
def A2():
    return grp("A2")


@pytest.fixture(scope="session")
def A3():
    return grp("A3")


@pytest.fixture(scope="session")
def B2():
    return grp("B2")


@pytest.fixture(scope="session")
def G2():
    return grp("G2")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    passed = sum(ok for ok, _ in ACCEPTANCE.values())
    tr.write_line(f"{passed}/{len(ACCEPTANCE)} criteria pass")
