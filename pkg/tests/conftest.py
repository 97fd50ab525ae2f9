import itertools
from functools import reduce

import numpy as np
import pytest

from codekets import BitVector, LinearCode, PauliString
from codekets.verify import fixture_codes

# The four single-spin matrices written out explicitly, indexed by (a, b).
SIGMA = {
    (0, 0): np.array([[1, 0], [0, 1]], dtype=complex),
    (0, 1): np.array([[0, 1], [1, 0]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
    (1, 0): np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_matrix(P: PauliString) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix by Kronecker products, particle 1 leftmost."""
    return reduce(np.kron, [SIGMA[(P.A[i], P.B[i])] for i in range(P.n)])


def span(rows, n):
    """Brute-force span: XOR of every subset of rows."""
    out = set()
    for mask in itertools.product((0, 1), repeat=len(rows)):
        v = 0
        for take, r in zip(mask, rows):
            if take:
                v ^= r.value
        out.add(BitVector(n, v))
    return out


def brute_dual(words, n):
    return {
        v
        for v in (BitVector(n, x) for x in range(1 << n))
        if all((v.value & w.value).bit_count() % 2 == 0 for w in words)
    }


def bv(s: str) -> BitVector:
    return BitVector.from_string(s)


@pytest.fixture(scope="session")
def fixtures():
    return fixture_codes()


@pytest.fixture
def ghz3():
    return LinearCode.repetition(3)


# Acceptance summary --------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion."""
    record = {"label": request.node.name}

    def set_label(label):
        record["label"] = label

    yield set_label
    rep = getattr(request.node, "rep_call", None)
    status = "PASS" if rep is not None and rep.passed else "FAIL"
    ACCEPTANCE_LINES.append(f"[{status}] {record['label']}")


@pytest.hookimpl(wrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    if rep.when == "call":
        item.rep_call = rep
    return rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
