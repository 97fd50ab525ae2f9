"""Pauli product operators as pairs of bit vectors.

Position ``i`` carries ``sigma_{a_i, b_i}`` with

    (0,0) -> I    (0,1) -> X    (1,1) -> Y    (1,0) -> Z

and every phase is tracked exactly as a power of ``i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Literal

from .errors import InvalidArgumentError, ParseError
from .gf2core import BitVector, add_mod2, int_inner

Label = Literal["X", "Y", "Z"]

_LETTER_TO_AB = {"I": (0, 0), "X": (0, 1), "Y": (1, 1), "Z": (1, 0)}
_AB_TO_LETTER = {ab: letter for letter, ab in _LETTER_TO_AB.items()}


@dataclass(frozen=True)
class QuarterPhase:
    """The unit complex number ``i**exponent``."""

    exponent: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "exponent", self.exponent % 4)

    def __mul__(self, other: QuarterPhase) -> QuarterPhase:
        return QuarterPhase(self.exponent + other.exponent)

    def __complex__(self) -> complex:
        return (1 + 0j, 1j, -1 + 0j, -1j)[self.exponent]

    def __str__(self) -> str:
        return ("+1", "+i", "-1", "-i")[self.exponent]


@dataclass(frozen=True)
class PauliString:
    A: BitVector
    B: BitVector

    def __post_init__(self) -> None:
        if self.A.n != self.B.n:
            raise InvalidArgumentError(f"A has length {self.A.n} but B has length {self.B.n}")

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def support(self) -> tuple[int, ...]:
        """0-based positions carrying a nontrivial factor, ascending."""
        mask = self.A.value | self.B.value
        return tuple(i for i in range(self.n) if (mask >> i) & 1)

    def is_identity(self) -> bool:
        return not (self.A.value | self.B.value)

    def letter(self, i: int) -> str:
        return _AB_TO_LETTER[(self.A[i], self.B[i])]

    @classmethod
    def single(cls, n: int, position: int, axis: Label) -> PauliString:
        """``axis`` on 0-based ``position`` and identity elsewhere."""
        a, b = _LETTER_TO_AB[axis]
        return cls(BitVector(n, a << position), BitVector(n, b << position))

    def __str__(self) -> str:
        return format_pauli(self)


def single_action(a: int, b: int, x: int) -> tuple[QuarterPhase, int]:
    """``sigma_{a,b}|x> = i**(ab + 2ax) |x xor b>``."""
    return QuarterPhase(a * b + 2 * a * x), x ^ b


def apply_to_basis(P: PauliString, X: BitVector) -> tuple[QuarterPhase, BitVector]:
    if X.n != P.n:
        raise InvalidArgumentError(f"length mismatch: Pauli {P.n} vs ket {X.n}")
    phase = QuarterPhase(int_inner(P.A, P.B) + 2 * int_inner(P.A, X))
    return phase, add_mod2(X, P.B)


def measurement_label(a: int, b: int) -> Label | None:
    letter = _AB_TO_LETTER[(a, b)]
    return None if letter == "I" else letter  # type: ignore[return-value]


def parse_pauli(text: str) -> PauliString:
    """Parse an ``IXYZ`` string, particle 1 leftmost."""
    if not text:
        raise ParseError("empty Pauli string")
    a_bits, b_bits = [], []
    for pos, ch in enumerate(text, start=1):
        ab = _LETTER_TO_AB.get(ch)
        if ab is None:
            raise ParseError(f"illegal Pauli character {ch!r} at position {pos}")
        a_bits.append(ab[0])
        b_bits.append(ab[1])
    return PauliString(BitVector.from_bits(a_bits), BitVector.from_bits(b_bits))


def format_pauli(P: PauliString) -> str:
    return "".join(P.letter(i) for i in range(P.n))


_PAIR_RE = re.compile(r"^\s*A\s*=\s*(\S+)\s+B\s*=\s*(\S+)\s*$")


def parse_pauli_pair(text: str) -> PauliString:
    """Parse the explicit form ``"A=0101 B=0110"``."""
    m = _PAIR_RE.match(text)
    if m is None:
        raise ParseError(f"expected 'A=<bits> B=<bits>', got {text!r}")
    return PauliString(BitVector.from_string(m.group(1)), BitVector.from_string(m.group(2)))
