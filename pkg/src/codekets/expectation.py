"""Closed forms and exponential sums for Pauli-product expectations on codekets.

For a linear code ``C`` the expectation of ``sigma_{A,B}`` is nonzero exactly
when ``B`` lies in ``C`` and ``A`` lies in the dual code, and it then equals
``i**(A|B)``, which is real because ``(A|B)`` is even.  For an arbitrary set
of words the expectation is an incomplete character sum over ``C & (C+B)``.

Character sums are accumulated as exact integers; the quarter-turn phase is
applied last.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    InvalidArgumentError,
    PreconditionError,
    ResourceLimitError,
    VerificationError,
)
from .gf2core import (
    MAX_ENUM_K,
    MAX_SCAN_N,
    BitVector,
    LinearCode,
    NonlinearCode,
    all_vectors,
    codewords,
    contains,
    coset_intersection,
    dual,
    gf2_inner,
    int_inner,
    weight,
)
from .pauli import QuarterPhase


class Case(enum.Enum):
    B_NOT_IN_C = "B_NOT_IN_C"
    A_NOT_IN_DUAL = "A_NOT_IN_DUAL"
    NONZERO = "NONZERO"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ExpectationResult:
    value: int
    case: Case
    phase_exponent: int | None = None

    def __post_init__(self) -> None:
        if self.case is Case.NONZERO:
            if self.value not in (-1, 1) or self.phase_exponent not in (0, 2):
                raise VerificationError(f"inconsistent nonzero result {self}")
        elif self.value != 0:
            raise VerificationError(f"case {self.case} must have value 0, got {self.value}")


@functools.lru_cache(maxsize=512)
def _dual_of(code: LinearCode) -> LinearCode:
    return dual(code)


def in_dual(code: LinearCode, A: BitVector) -> bool:
    return contains(_dual_of(code), A)


def _check(code: LinearCode | NonlinearCode, *vecs: BitVector) -> None:
    for v in vecs:
        if v.n != code.n:
            raise InvalidArgumentError(f"length mismatch: {v.n} vs code length {code.n}")


def closed_form_linear(code: LinearCode, A: BitVector, B: BitVector) -> ExpectationResult:
    _check(code, A, B)
    if not contains(code, B):
        return ExpectationResult(0, Case.B_NOT_IN_C)
    if not in_dual(code, A):
        return ExpectationResult(0, Case.A_NOT_IN_DUAL)
    ab = int_inner(A, B)
    if ab % 2:
        raise VerificationError(f"(A|B) = {ab} is odd for A={A} in dual, B={B} in code")
    return ExpectationResult((-1) ** (ab // 2), Case.NONZERO, ab % 4)


def linear_character_sum(code: LinearCode, A: BitVector, max_k: int = MAX_ENUM_K) -> int:
    """``sum over X in C of (-1)**(A|X)``, by enumeration."""
    _check(code, A)
    total = 0
    for X in codewords(code, max_k):
        total += -1 if gf2_inner(A, X) else 1
    return total


def exp_sum_linear(
    code: LinearCode, A: BitVector, B: BitVector, max_k: int = MAX_ENUM_K
) -> complex:
    """Expectation as a full character sum over the code; requires ``B`` in ``C``."""
    _check(code, A, B)
    if not contains(code, B):
        raise PreconditionError(f"B={B} is not a codeword; the sum form assumes B in C")
    s = linear_character_sum(code, A, max_k)
    return complex(QuarterPhase(int_inner(A, B))) * s / (1 << code.k)


def closed_form_all_xy(code: LinearCode, A: BitVector) -> ExpectationResult:
    """Expectation with ``B`` all ones: an x or y measurement on every particle."""
    _check(code, A)
    if not contains(code, BitVector.ones(code.n)):
        return ExpectationResult(0, Case.B_NOT_IN_C)
    if not in_dual(code, A):
        return ExpectationResult(0, Case.A_NOT_IN_DUAL)
    w = weight(A) % 4
    if w == 0:
        return ExpectationResult(1, Case.NONZERO, 0)
    if w == 2:
        return ExpectationResult(-1, Case.NONZERO, 2)
    raise VerificationError(f"odd-weight A={A} is orthogonal to the all-ones codeword")


def closed_form_z(code: LinearCode, A: BitVector) -> ExpectationResult:
    """Expectation with ``B`` all zeros: z measurements on the support of ``A``."""
    _check(code, A)
    if in_dual(code, A):
        return ExpectationResult(1, Case.NONZERO, 0)
    return ExpectationResult(0, Case.A_NOT_IN_DUAL)


def nonlinear_character_sum(code: NonlinearCode, A: BitVector, B: BitVector) -> int:
    """``sum over X in C & (C+B) of (-1)**(A|X)``, on the packed words directly."""
    _check(code, A, B)
    values, a, b = code._values, A.value, B.value
    return sum(
        -1 if (a & w).bit_count() & 1 else 1 for w in values if (w ^ b) in values
    )


def exp_sum_nonlinear(code: NonlinearCode, A: BitVector, B: BitVector) -> complex:
    s = nonlinear_character_sum(code, A, B)
    return complex(QuarterPhase(int_inner(A, B))) * s / code.M


def bound(code: NonlinearCode, B: BitVector) -> Fraction:
    """``|C & (C+B)| / |C|``, an upper bound on ``|expectation|`` for every ``A``."""
    return Fraction(len(coset_intersection(code, B)), code.M)


def odd_identity_sum(code: NonlinearCode, A: BitVector, B: BitVector) -> int:
    """The character sum over ``C & (C+B)`` when ``(A|B)`` is odd; always 0."""
    _check(code, A, B)
    if not gf2_inner(A, B):
        raise PreconditionError(f"(A|B) must be odd, got A={A}, B={B}")
    s = nonlinear_character_sum(code, A, B)
    if s != 0:
        raise VerificationError(f"character sum {s} != 0 for odd (A|B), A={A}, B={B}")
    return s


def enumerate_nonzero(
    code: LinearCode, max_n: int = MAX_SCAN_N
) -> list[tuple[BitVector, BitVector, int]]:
    """Every ``(A, B, value)`` with nonzero expectation, sorted lexicographically by ``(A, B)``.

    This is the product of the dual code with the code itself, ``2**n`` pairs.
    """
    if code.n > max_n:
        raise ResourceLimitError(f"cannot enumerate 2^{code.n} pairs (cap n <= {max_n})")
    duals = sorted(codewords(_dual_of(code)), key=BitVector.index)
    words = sorted(codewords(code), key=BitVector.index)
    return [(A, B, (-1) ** (int_inner(A, B) // 2)) for A in duals for B in words]


def all_pairs(n: int, max_n: int = MAX_SCAN_N):
    """Every ``(A, B)`` in ``{0,1}^n x {0,1}^n``, lexicographic."""
    vecs = list(all_vectors(n, max_n))
    return ((A, B) for A in vecs for B in vecs)
