from __future__ import annotations

import pytest

from taccat.algebra import GF, QQ
from taccat.complexes import make_complex
from taccat.rings import make_ci_ring


def ex1_ring(F=None):
    return make_ci_ring(["x", "y"], F or GF(7), ["x^2", "y^2"])


def ex1_complex(F=None):
    """The x^2 + 2y^2 factorization; 3 squares to 2 in F7."""
    R = ex1_ring(F)
    return make_complex(R, 1, [2], [[["x", "3*y"], ["3*y", "-x"]]], name="C")


def ex2_ring(F=None):
    return make_ci_ring(["x", "y", "z"], F or QQ, ["x^2", "y^2", "z^2"])


def ex2_pair(F=None):
    R = ex2_ring(F)
    C = make_complex(R, 1, [2], [[["x", 0], [0, "y"]]], name="C")
    D = make_complex(R, 1, [2], [[["x", 0], [0, "z"]]], name="D")
    return C, D


def dual_numbers(F=None):
    """R = k[x]/(x^2) with the complex ... -x-> R -x-> R ..."""
    R = make_ci_ring(["x"], F or QQ, ["x^2"])
    return R, make_complex(R, 1, [1], [[["x"]]], name="C")


def contractible(R, n=1):
    """Period one, rank 2n, d = [[0, I], [0, 0]]: a sum of R --1--> R pieces."""
    rows = []
    for a in range(2 * n):
        rows.append([1 if (a < n and b == a + n) else 0 for b in range(2 * n)])
    return make_complex(R, 1, [2 * n], [rows], name="K0")


@pytest.fixture
def ex1():
    return ex1_complex()


@pytest.fixture(params=["Q", "F5"])
def ex2(request):
    return ex2_pair(QQ if request.param == "Q" else GF(5))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    lines = [RESULTS[k] for k in sorted(k for k in RESULTS if isinstance(k, int))]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
