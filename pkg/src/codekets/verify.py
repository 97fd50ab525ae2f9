"""Exhaustive cross-checks between the closed forms, the character sums and the
dense state-vector oracle."""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError
from .expectation import (
    Case,
    ExpectationResult,
    all_pairs,
    bound,
    closed_form_linear,
    exp_sum_linear,
    exp_sum_nonlinear,
    linear_character_sum,
    odd_identity_sum,
)
from .gf2core import (
    BitVector,
    LinearCode,
    NonlinearCode,
    codewords,
    contains,
    gf2_inner,
    random_linear_code,
    random_nonlinear_code,
)
from .pauli import PauliString
from .statevec import codeket, expectation

TOL = 1e-9
MAX_EXHAUSTIVE_N = 6
DEFAULT_SEED = 20250101

ClosedForm = Callable[[LinearCode, BitVector, BitVector], ExpectationResult]


@dataclass
class Failure:
    code: str
    A: BitVector
    B: BitVector
    detail: str

    def __str__(self) -> str:
        return f"FAIL code={self.code} A={self.A} B={self.B} {self.detail}"


@dataclass
class LinearReport:
    code: LinearCode
    pairs: int = 0
    tallies: Counter = field(default_factory=Counter)
    inner_sums: set[int] = field(default_factory=set)
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        counts = " ".join(f"{c}={self.tallies[c]}" for c in Case)
        sums = ",".join(str(s) for s in sorted(self.inner_sums))
        verdict = "PASS" if self.passed else "FAIL"
        return f"code={self.code} pairs={self.pairs} {counts} inner_sums={{{sums}}} {verdict}"


@dataclass
class NonlinearReport:
    code: NonlinearCode
    pairs: int = 0
    odd_pairs: int = 0
    max_ratio: float = 0.0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return (
            f"code={self.code} pairs={self.pairs} odd_identity={self.odd_pairs} "
            f"max_bound_ratio={self.max_ratio:.6g} {verdict}"
        )


def _check_n(n: int) -> None:
    if n > MAX_EXHAUSTIVE_N:
        raise InvalidArgumentError(f"exhaustive sweep needs n <= {MAX_EXHAUSTIVE_N}, got {n}")


def verify_linear(
    code: LinearCode, closed_form: ClosedForm = closed_form_linear, tol: float = TOL
) -> LinearReport:
    """Compare every route on all ``4**n`` Pauli strings.

    ``closed_form`` is injectable so a deliberately corrupted implementation
    can be shown to fail.
    """
    _check_n(code.n)
    report = LinearReport(code)
    psi = codeket(code)
    two_k = 1 << code.k
    for A, B in all_pairs(code.n):
        report.pairs += 1
        closed = closed_form(code, A, B)
        report.tallies[closed.case] += 1
        oracle = expectation(psi, PauliString(A, B))
        detail = []
        if abs(oracle.imag) > tol or abs(oracle) > 1 + tol:
            detail.append(f"oracle={oracle} not a real value in [-1,1]")
        if abs(closed.value - oracle) > tol:
            detail.append(f"closed={closed.value} oracle={oracle.real:.12g}")
        if contains(code, B):
            s = linear_character_sum(code, A)
            report.inner_sums.add(s)
            if s not in (0, two_k):
                detail.append(f"inner_sum={s} not in {{0,{two_k}}}")
            summed = exp_sum_linear(code, A, B)
            if abs(summed - oracle) > tol:
                detail.append(f"sum={summed.real:.12g} oracle={oracle.real:.12g}")
        if detail:
            report.failures.append(Failure(str(code), A, B, " ".join(detail)))
    return report


def verify_nonlinear(code: NonlinearCode, tol: float = TOL) -> NonlinearReport:
    """Character sum vs oracle, the coset bound, and the odd-parity identity."""
    _check_n(code.n)
    report = NonlinearReport(code)
    psi = codeket(code)
    zero = BitVector.zeros(code.n)
    for A, B in all_pairs(code.n):
        report.pairs += 1
        oracle = expectation(psi, PauliString(A, B))
        summed = exp_sum_nonlinear(code, A, B)
        limit = bound(code, B)
        detail = []
        if abs(summed - oracle) > tol:
            detail.append(f"sum={summed} oracle={oracle}")
        if abs(summed) > float(limit) + 1e-12:
            detail.append(f"|sum|={abs(summed):.12g} exceeds bound {limit}")
        if A == zero and B == zero and abs(summed - 1) > tol:
            detail.append(f"bound 1 not attained at A=B=0 (sum={summed})")
        if gf2_inner(A, B):
            report.odd_pairs += 1
            try:
                odd_identity_sum(code, A, B)
            except AssertionError as exc:
                detail.append(str(exc))
        if limit:
            report.max_ratio = max(report.max_ratio, abs(summed) / float(limit))
        if detail:
            report.failures.append(Failure(str(code), A, B, " ".join(detail)))
    return report


def fixture_codes() -> list[LinearCode]:
    """Named codes plus one seeded random code for every ``(n, k)``, ``n <= 6``."""
    rng = np.random.default_rng(DEFAULT_SEED)
    codes: list[LinearCode] = []
    seen: set[frozenset] = set()

    def add(code: LinearCode) -> None:
        key = frozenset(codewords(code))
        if key not in seen:
            seen.add(key)
            codes.append(code)

    for n in range(1, MAX_EXHAUSTIVE_N + 1):
        add(LinearCode.repetition(n))
        if n >= 2:
            add(LinearCode.even_weight(n))
        add(LinearCode.zero(n))
        add(LinearCode.full_space(n))
        for k in range(n + 1):
            add(random_linear_code(n, k, rng))
    return codes


def random_nonlinear_codes(
    count: int, seed: int, n: int | None = None, n_max: int = 5
) -> list[NonlinearCode]:
    """``count`` seeded random codes of length ``n``, or cycling through ``1..n_max``."""
    rng = np.random.default_rng(seed)
    return [random_nonlinear_code(n or 1 + i % n_max, rng) for i in range(count)]


def run_all(
    linear: Iterable[LinearCode] = (),
    nonlinear: Iterable[NonlinearCode] = (),
) -> tuple[list[LinearReport], list[NonlinearReport]]:
    return [verify_linear(c) for c in linear], [verify_nonlinear(c) for c in nonlinear]
