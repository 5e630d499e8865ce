from __future__ import annotations

import pytest

from vlab.apolarity import build_aronhold
from vlab.arith import CHECK_PRIME, DEFAULT_PRIME, GF, QQ
from vlab.poly import Ring

PRIMES = (DEFAULT_PRIME, CHECK_PRIME)


def to_sympy(polys, names):
    """Convert polynomials to sympy expressions (used only as an oracle)."""
    import sympy

    syms = sympy.symbols(names)
    loc = dict(zip(names, syms))
    return [sympy.sympify(str(p).replace("^", "**"), locals=loc) for p in polys], syms


@pytest.fixture(params=[QQ, GF(DEFAULT_PRIME), GF(CHECK_PRIME)], ids=["Q", "p32003", "p31991"])
def field(request):
    return request.param


@pytest.fixture(params=PRIMES, ids=["p32003", "p31991"])
def prime_field(request):
    return GF(request.param)


@pytest.fixture
def cubic_ring(field):
    return Ring(["y0", "y1", "y2"], field=field)


@pytest.fixture(scope="session")
def aronhold():
    return build_aronhold()


# acceptance summary: one line per criterion clause

_CRITERIA: list = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, clause): acceptance criterion clause")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, clause = mark.args
    cs = getattr(item, "callspec", None)
    if cs is not None:
        clause = f"{clause} [{cs.id}]"
    outcome = "PASS" if call.excinfo is None else "FAIL"
    _CRITERIA.append((n, clause, outcome, call.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    rows = sorted(_CRITERIA, key=lambda r: (r[0], r[1]))
    for n, clause, outcome, dt in rows:
        tr.write_line(f"  {n:>2}.  {outcome}  {clause}  ({dt:.1f} s)")
    tr.write_line("")
    for n in sorted({r[0] for r in rows}):
        ok = all(r[2] == "PASS" for r in rows if r[0] == n)
        tr.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}")
