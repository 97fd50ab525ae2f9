"""Bit-packed GF(2) linear algebra for binary codes.

A :class:`BitVector` stores ``x_1 ... x_n`` packed into a Python int, with
bit ``i`` of the packed value holding ``x_{i+1}``.  Text forms write
position 1 leftmost, so ``BitVector.from_string("100").value == 1``.

Linear codes are given by a full-rank generator matrix; nonlinear codes are
plain sets of words.  Everything here is immutable.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    InvalidArgumentError,
    ParseError,
    RankDeficiencyError,
    ResourceLimitError,
)

MAX_ENUM_K = 20
MAX_SCAN_N = 20


@dataclass(frozen=True)
class BitVector:
    """A length-``n`` binary word packed into ``value``."""

    n: int
    value: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidArgumentError(f"BitVector length must be >= 1, got {self.n}")
        if self.value < 0 or self.value >> self.n:
            raise InvalidArgumentError(
                f"packed value {self.value} does not fit in {self.n} bits"
            )

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        bits = list(bits)
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise InvalidArgumentError(f"bit {i + 1} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(len(bits), value)

    @classmethod
    def from_string(cls, text: str) -> BitVector:
        for i, ch in enumerate(text):
            if ch not in "01":
                raise ParseError(f"illegal character {ch!r} at position {i + 1}")
        if not text:
            raise ParseError("empty bit string")
        return cls.from_bits(int(ch) for ch in text)

    @classmethod
    def zeros(cls, n: int) -> BitVector:
        return cls(n, 0)

    @classmethod
    def ones(cls, n: int) -> BitVector:
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_index(cls, n: int, index: int) -> BitVector:
        """Inverse of :meth:`index`."""
        return cls.from_bits((index >> (n - 1 - i)) & 1 for i in range(n))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.n))

    def index(self) -> int:
        """Basis-state index with ``x_1`` as the most significant bit."""
        out = 0
        for b in self.bits:
            out = (out << 1) | b
        return out

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.value >> i) & 1

    def __xor__(self, other: BitVector) -> BitVector:
        return add_mod2(self, other)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __repr__(self) -> str:
        return f"BitVector('{self}')"


def _check_lengths(u: BitVector, v: BitVector) -> None:
    if u.n != v.n:
        raise InvalidArgumentError(f"length mismatch: {u.n} vs {v.n}")


def gf2_inner(u: BitVector, v: BitVector) -> int:
    """Dot product of ``u`` and ``v`` reduced mod 2."""
    _check_lengths(u, v)
    return (u.value & v.value).bit_count() & 1


def int_inner(u: BitVector, v: BitVector) -> int:
    """Dot product of ``u`` and ``v`` as an ordinary integer."""
    _check_lengths(u, v)
    return (u.value & v.value).bit_count()


def add_mod2(u: BitVector, v: BitVector) -> BitVector:
    _check_lengths(u, v)
    return BitVector(u.n, u.value ^ v.value)


def weight(u: BitVector) -> int:
    return u.value.bit_count()


def rref(rows: Sequence[BitVector]) -> tuple[list[BitVector], int, list[int]]:
    """Reduced row echelon form over GF(2).

    Returns ``(reduced, rank, pivots)`` where ``reduced`` holds only the
    ``rank`` nonzero rows, ordered by pivot column, and ``pivots`` lists the
    0-based pivot column of each.  The row space is unchanged.
    """
    if not rows:
        return [], 0, []
    n = rows[0].n
    for r in rows:
        if r.n != n:
            raise InvalidArgumentError(f"rows have mixed lengths {n} and {r.n}")
    work = [r.value for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(n):
        mask = 1 << col
        found = next((i for i in range(top, len(work)) if work[i] & mask), None)
        if found is None:
            continue
        work[top], work[found] = work[found], work[top]
        for i in range(len(work)):
            if i != top and work[i] & mask:
                work[i] ^= work[top]
        pivots.append(col)
        top += 1
        if top == len(work):
            break
    reduced = [BitVector(n, w) for w in work[:top]]
    return reduced, top, pivots


def _reduce(value: int, reduced: Sequence[BitVector], pivots: Sequence[int]) -> int:
    for row, col in zip(reduced, pivots):
        if (value >> col) & 1:
            value ^= row.value
    return value


@dataclass(frozen=True)
class LinearCode:
    """A binary linear ``[n, k]`` code spanned by the rows of ``generator``."""

    n: int
    generator: tuple[BitVector, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidArgumentError(f"block length must be >= 1, got {self.n}")
        object.__setattr__(self, "generator", tuple(self.generator))
        for i, row in enumerate(self.generator):
            if row.n != self.n:
                raise InvalidArgumentError(
                    f"generator row {i + 1} has length {row.n}, expected {self.n}"
                )
        _, rank, _ = rref(self.generator)
        if rank < len(self.generator):
            raise RankDeficiencyError(
                f"generator has {len(self.generator)} rows but rank {rank}"
            )

    @classmethod
    def from_strings(cls, rows: Sequence[str], n: int | None = None) -> LinearCode:
        vecs = [BitVector.from_string(r) for r in rows]
        if n is None:
            if not vecs:
                raise InvalidArgumentError("need n for a code with no generator rows")
            n = vecs[0].n
        return cls(n, tuple(vecs))

    @classmethod
    def repetition(cls, n: int) -> LinearCode:
        return cls(n, (BitVector.ones(n),))

    @classmethod
    def even_weight(cls, n: int) -> LinearCode:
        """The ``[n, n-1]`` code of all even-weight words."""
        return cls(n, tuple(BitVector(n, 1 | (1 << (j + 1))) for j in range(n - 1)))

    @classmethod
    def full_space(cls, n: int) -> LinearCode:
        return cls(n, tuple(BitVector(n, 1 << j) for j in range(n)))

    @classmethod
    def zero(cls, n: int) -> LinearCode:
        return cls(n, ())

    @property
    def k(self) -> int:
        return len(self.generator)

    @functools.cached_property
    def _echelon(self) -> tuple[list[BitVector], list[int]]:
        reduced, _, pivots = rref(self.generator)
        return reduced, pivots

    def __contains__(self, v: BitVector) -> bool:
        return contains(self, v)

    def as_nonlinear(self) -> NonlinearCode:
        return NonlinearCode(self.n, frozenset(codewords(self)))

    def __str__(self) -> str:
        rows = ",".join(str(g) for g in self.generator) or "-"
        return f"[{self.n},{self.k}]<{rows}>"


@dataclass(frozen=True)
class NonlinearCode:
    """An ``(n, M)`` code: any nonempty set of distinct length-``n`` words."""

    n: int
    words: frozenset[BitVector]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidArgumentError(f"block length must be >= 1, got {self.n}")
        object.__setattr__(self, "words", frozenset(self.words))
        if not self.words:
            raise InvalidArgumentError("a code needs at least one word")
        for w in self.words:
            if w.n != self.n:
                raise InvalidArgumentError(f"word {w} has length {w.n}, expected {self.n}")

    @classmethod
    def from_strings(cls, words: Iterable[str]) -> NonlinearCode:
        vecs = [BitVector.from_string(w) for w in words]
        if not vecs:
            raise InvalidArgumentError("a code needs at least one word")
        if len(set(vecs)) != len(vecs):
            raise InvalidArgumentError("duplicate words in nonlinear code")
        return cls(vecs[0].n, frozenset(vecs))

    @property
    def M(self) -> int:
        return len(self.words)

    @functools.cached_property
    def _values(self) -> frozenset[int]:
        return frozenset(w.value for w in self.words)

    def sorted_words(self) -> list[BitVector]:
        return sorted(self.words, key=BitVector.index)

    def __contains__(self, v: BitVector) -> bool:
        return v.n == self.n and v.value in self._values

    def __str__(self) -> str:
        return f"({self.n},{self.M}){{{','.join(map(str, self.sorted_words()))}}}"


def codewords(code: LinearCode, max_k: int = MAX_ENUM_K) -> list[BitVector]:
    """All ``2**k`` codewords; entry ``c`` is the XOR of rows ``j`` with bit ``j`` of ``c`` set."""
    if code.k > max_k:
        raise ResourceLimitError(f"cannot enumerate 2^{code.k} codewords (cap k <= {max_k})")
    words = [0]
    for row in code.generator:
        words += [w ^ row.value for w in words]
    return [BitVector(code.n, w) for w in words]


def dual(code: LinearCode) -> LinearCode:
    """The orthogonal complement, with the nullspace basis read off the rref pivots."""
    reduced, pivots = code._echelon
    pivot_set = set(pivots)
    basis = []
    for free in range(code.n):
        if free in pivot_set:
            continue
        v = 1 << free
        for row, col in zip(reduced, pivots):
            if (row.value >> free) & 1:
                v |= 1 << col
        basis.append(BitVector(code.n, v))
    return LinearCode(code.n, tuple(basis))


def contains(code: LinearCode, v: BitVector) -> bool:
    if v.n != code.n:
        raise InvalidArgumentError(f"length mismatch: {v.n} vs code length {code.n}")
    reduced, pivots = code._echelon
    return _reduce(v.value, reduced, pivots) == 0


def coset_intersection(code: NonlinearCode, b: BitVector) -> frozenset[BitVector]:
    """The set ``{X in C : X + B in C}``."""
    if b.n != code.n:
        raise InvalidArgumentError(f"length mismatch: {b.n} vs code length {code.n}")
    values = code._values
    return frozenset(w for w in code.words if (w.value ^ b.value) in values)


def all_vectors(n: int, max_n: int = MAX_SCAN_N) -> Iterator[BitVector]:
    """Every word of length ``n`` in lexicographic order (``x_1`` most significant)."""
    if n > max_n:
        raise ResourceLimitError(f"cannot scan 2^{n} words (cap n <= {max_n})")
    for bits in itertools.product((0, 1), repeat=n):
        yield BitVector.from_bits(bits)


def generator_matrix(code: LinearCode) -> np.ndarray:
    """The generator as a ``k x n`` uint8 array (column ``j`` is position ``j+1``)."""
    return np.array([g.bits for g in code.generator], dtype=np.uint8).reshape(code.k, code.n)


def random_linear_code(n: int, k: int, rng: np.random.Generator) -> LinearCode:
    if not 0 <= k <= n:
        raise InvalidArgumentError(f"need 0 <= k <= n, got k={k}, n={n}")
    while True:
        rows = tuple(BitVector(n, int(rng.integers(0, 1 << n))) for _ in range(k))
        if rref(rows)[1] == k:
            return LinearCode(n, rows)


def random_nonlinear_code(
    n: int, rng: np.random.Generator, M: int | None = None
) -> NonlinearCode:
    if M is None:
        M = int(rng.integers(1, (1 << n) + 1))
    if not 1 <= M <= 1 << n:
        raise InvalidArgumentError(f"need 1 <= M <= 2^{n}, got {M}")
    chosen = rng.choice(1 << n, size=M, replace=False)
    return NonlinearCode(n, frozenset(BitVector(n, int(v)) for v in chosen))


# Text formats -------------------------------------------------------------


def _content_lines(text: str, source: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        for col, ch in enumerate(line, start=1):
            if ch not in "01":
                raise ParseError(f"{source}:{lineno}:{col}: illegal character {ch!r}")
        yield lineno, line


def _parse_rows(text: str, source: str) -> list[BitVector]:
    rows: list[BitVector] = []
    for lineno, line in _content_lines(text, source):
        if rows and len(line) != rows[0].n:
            raise ParseError(
                f"{source}:{lineno}: row has length {len(line)}, expected {rows[0].n}"
            )
        rows.append(BitVector.from_string(line))
    if not rows:
        raise ParseError(f"{source}: no rows found")
    return rows


def parse_generator(text: str, source: str = "<string>") -> LinearCode:
    """Parse one ``0``/``1`` row per line; blank lines and ``#`` comments are skipped."""
    rows = _parse_rows(text, source)
    return LinearCode(rows[0].n, tuple(rows))


def parse_words(text: str, source: str = "<string>") -> NonlinearCode:
    rows = _parse_rows(text, source)
    seen: set[BitVector] = set()
    for w in rows:
        if w in seen:
            raise ParseError(f"{source}: duplicate word {w}")
        seen.add(w)
    return NonlinearCode(rows[0].n, frozenset(rows))


def load_generator(path: str | Path) -> LinearCode:
    path = Path(path)
    return parse_generator(path.read_text(), str(path))


def load_words(path: str | Path) -> NonlinearCode:
    path = Path(path)
    return parse_words(path.read_text(), str(path))


def format_generator(code: LinearCode) -> str:
    return "".join(f"{g}\n" for g in code.generator)
