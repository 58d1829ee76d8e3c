import json
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import strategies as st

from hassett import catalog


def cofactor_det(m):
    """Laplace expansion along the first row. Slow, obviously correct."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def rational_kernel_rank(m):
    """Rank of {x : x m = 0} over Q via Fraction row reduction of m^T."""
    rows = [[Fraction(m[i][j]) for i in range(len(m))] for j in range(len(m[0]))] if m and m[0] else []
    n = len(m)
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return n - r


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


@st.composite
def int_matrices(draw, max_rows=5, max_cols=5, lo=-30, hi=30):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]


@st.composite
def gram_matrices(draw, max_dim=5, lo=-12, hi=12):
    n = draw(st.integers(1, max_dim))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(st.integers(lo, hi))
    return m


@pytest.fixture(scope="session")
def e8_2():
    return catalog.e8_2()


@pytest.fixture(scope="session")
def cli_schema():
    text = resources.files("hassett").joinpath("schema/hassett.schema.json").read_text()
    return json.loads(text)


_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        _ACCEPTANCE.append((marker.args[0], marker.args[1], rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, text, outcome in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"AC{num:<3} {status}  {text}")
