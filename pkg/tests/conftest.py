import pytest

from lsngrade.construct import long_nodes, roundtrip, roundtrip_scalars
from lsngrade.diagram import catalog


@pytest.fixture(scope="session")
def catalog8():
    return catalog(8)


@pytest.fixture(scope="session")
def roundtrips8(catalog8):
    """Every (type, long node) at rank <= 8 with its round trip and scalar report."""
    out = []
    for c in catalog8:
        for k in long_nodes(c):
            rt = roundtrip(c, k)
            out.append((c, k, rt, roundtrip_scalars(rt)))
    return out


ACCEPTANCE: dict[int, str] = {}


def record_criterion(n: int, ok: bool, title: str, detail: str, conflict: bool = False) -> None:
    status = "PASS" if ok else ("FAIL (recorded conflict)" if conflict else "FAIL")
    ACCEPTANCE[n] = f"criterion {n} {title}: {status} - {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
