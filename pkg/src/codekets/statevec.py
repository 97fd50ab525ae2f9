"""Dense state vectors over ``n`` spin-1/2 particles.

Basis ket ``|x_1 x_2 ... x_n>`` sits at index ``x_1 2^(n-1) + ... + x_n``
(particle 1 is the most significant bit).

Measurement sampling draws its uniforms from a PCG64 stream seeded with
``SeedSequence(seed)``.  Shot ``j`` of a Pauli with ``m`` measured particles
consumes draws ``j*m .. j*m + m - 1``, so every shot is a pure function of
``(seed, j)`` and any slice of shots can be regenerated independently.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgumentError, ResourceLimitError
from .gf2core import BitVector, LinearCode, NonlinearCode, codewords, int_inner
from .pauli import PauliString

DEFAULT_MAX_N = 20
NORM_TOL = 1e-12

_PHASES = np.array([1, 1j, -1, -1j], dtype=np.complex128)


def _check_dense(n: int, max_n: int) -> None:
    if n > max_n:
        raise ResourceLimitError(
            f"dense state on n={n} particles exceeds cap n <= {max_n}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.n,):
            raise InvalidArgumentError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {amps.shape}"
            )
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise InvalidArgumentError(f"state is not normalized (norm^2 = {norm})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, X: BitVector) -> StateVector:
        amps = np.zeros(1 << X.n, dtype=np.complex128)
        amps[X.index()] = 1.0
        return cls(X.n, amps)

    @classmethod
    def normalized(cls, n: int, amplitudes) -> StateVector:
        amps = np.asarray(amplitudes, dtype=np.complex128)
        return cls(n, amps / np.linalg.norm(amps))

    def __len__(self) -> int:
        return self.amplitudes.size

    def allclose(self, other: StateVector, atol: float = NORM_TOL) -> bool:
        return self.n == other.n and bool(
            np.allclose(self.amplitudes, other.amplitudes, rtol=0, atol=atol)
        )


@dataclass(frozen=True)
class ShotOutcome:
    """One run of the experiment; ``outcomes`` maps 0-based position to +-1."""

    product: int
    outcomes: dict[int, int]


def codeket(code: LinearCode | NonlinearCode, max_n: int = DEFAULT_MAX_N) -> StateVector:
    """Uniform superposition of the kets labelled by the codewords."""
    _check_dense(code.n, max_n)
    if isinstance(code, LinearCode):
        words = codewords(code)
    else:
        words = list(code.words)
    amps = np.zeros(1 << code.n, dtype=np.complex128)
    amps[[w.index() for w in words]] = 1.0 / np.sqrt(len(words))
    return StateVector(code.n, amps)


def _pauli_arrays(P: PauliString) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(target index, phase)`` per source basis index."""
    idx = np.arange(1 << P.n, dtype=np.int64)
    a_idx, b_idx = P.A.index(), P.B.index()
    exponent = (int_inner(P.A, P.B) + 2 * np.bitwise_count(idx & a_idx)) % 4
    return idx ^ b_idx, _PHASES[exponent]


def _apply(P: PauliString, amps: np.ndarray) -> np.ndarray:
    target, phase = _pauli_arrays(P)
    out = np.empty_like(amps)
    out[target] = phase * amps
    return out


def apply_pauli(P: PauliString, psi: StateVector) -> StateVector:
    if P.n != psi.n:
        raise InvalidArgumentError(f"length mismatch: Pauli {P.n} vs state {psi.n}")
    return StateVector(psi.n, _apply(P, psi.amplitudes))


def inner(phi: StateVector, psi: StateVector) -> complex:
    """``<phi|psi>``, conjugating the left argument."""
    if phi.n != psi.n:
        raise InvalidArgumentError(f"length mismatch: {phi.n} vs {psi.n}")
    return complex(np.vdot(phi.amplitudes, psi.amplitudes))


def expectation(psi: StateVector, P: PauliString) -> complex:
    return inner(psi, apply_pauli(P, psi))


def expectation_oracle(
    code: LinearCode | NonlinearCode, P: PauliString, max_n: int = DEFAULT_MAX_N
) -> complex:
    """``<Psi_C| sigma_{A,B} |Psi_C>`` evaluated on the dense codeket."""
    return expectation(codeket(code, max_n), P)


# Measurement --------------------------------------------------------------


class _CollapseTree:
    """Memoized sequential collapse.

    Node ``0`` is the input state; each node at depth ``t`` has two children,
    the renormalized projections onto the +1 and -1 eigenspaces of the
    single-particle operator measured at step ``t``.
    """

    def __init__(self, psi: StateVector, P: PauliString, order: Sequence[int]):
        self.n = psi.n
        self.ops = [PauliString.single(psi.n, pos, P.letter(pos)) for pos in order]
        self.states: list[np.ndarray] = [np.asarray(psi.amplitudes)]
        self.depth = [0]
        self.children: dict[int, tuple[float, int, int]] = {}

    def expand(self, node: int) -> tuple[float, int, int]:
        if node in self.children:
            return self.children[node]
        amps = self.states[node]
        flipped = _apply(self.ops[self.depth[node]], amps)
        plus, minus = (amps + flipped) / 2, (amps - flipped) / 2
        p_plus = min(max(float(np.vdot(plus, plus).real), 0.0), 1.0)
        if p_plus < NORM_TOL:
            p_plus = 0.0
        elif 1.0 - p_plus < NORM_TOL:
            p_plus = 1.0
        ids = []
        for branch, p in ((plus, p_plus), (minus, 1.0 - p_plus)):
            self.states.append(branch / np.sqrt(p) if p > 0 else branch)
            self.depth.append(self.depth[node] + 1)
            ids.append(len(self.states) - 1)
        self.children[node] = (p_plus, ids[0], ids[1])
        return self.children[node]


def _measurement_order(P: PauliString, order: Sequence[int] | None) -> list[int]:
    support = list(P.support)
    if not support:
        raise InvalidArgumentError("identity Pauli string: nothing to measure")
    if order is None:
        return support
    order = list(order)
    if sorted(order) != support:
        raise InvalidArgumentError(f"order {order} is not a permutation of support {support}")
    return order


def shot_uniforms(seed: int, start: int, shots: int, m: int) -> np.ndarray:
    """Uniforms for shots ``start .. start+shots-1``, shape ``(shots, m)``."""
    bitgen = np.random.PCG64(np.random.SeedSequence(seed))
    bitgen.advance(start * m)
    return np.random.Generator(bitgen).random((shots, m))


def sample_outcomes(
    psi: StateVector,
    P: PauliString,
    shots: int,
    seed: int,
    start: int = 0,
    order: Sequence[int] | None = None,
) -> tuple[list[int], np.ndarray]:
    """Run ``shots`` independent experiments by sequential projective collapse.

    Returns ``(positions, outcomes)``: the measured positions in the order
    they were measured, and an int8 array of shape ``(shots, len(positions))``
    holding the +-1 results.
    """
    if P.n != psi.n:
        raise InvalidArgumentError(f"length mismatch: Pauli {P.n} vs state {psi.n}")
    if shots < 1:
        raise InvalidArgumentError(f"shots must be >= 1, got {shots}")
    positions = _measurement_order(P, order)
    m = len(positions)
    u = shot_uniforms(seed, start, shots, m)
    tree = _CollapseTree(psi, P, positions)
    node = np.zeros(shots, dtype=np.int64)
    outcomes = np.empty((shots, m), dtype=np.int8)
    for t in range(m):
        live = np.unique(node)
        table = np.array([tree.expand(int(v)) for v in live])
        slot = np.searchsorted(live, node)
        p_plus = table[slot, 0]
        is_plus = u[:, t] < p_plus
        outcomes[:, t] = np.where(is_plus, 1, -1)
        node = np.where(is_plus, table[slot, 1], table[slot, 2]).astype(np.int64)
    return positions, outcomes


def measure_shot(
    psi: StateVector,
    P: PauliString,
    seed: int,
    shot_index: int = 0,
    order: Sequence[int] | None = None,
) -> ShotOutcome:
    positions, outcomes = sample_outcomes(psi, P, 1, seed, start=shot_index, order=order)
    row = [int(v) for v in outcomes[0]]
    return ShotOutcome(int(np.prod(row)), dict(zip(positions, row)))


def estimate_expectation(
    psi: StateVector,
    P: PauliString,
    shots: int,
    seed: int,
    order: Sequence[int] | None = None,
) -> tuple[float, float]:
    """Monte Carlo mean of the measured product and its standard error.

    The standard error uses the ``ddof=1`` sample deviation and is ``nan``
    for a single shot.
    """
    _, outcomes = sample_outcomes(psi, P, shots, seed, order=order)
    products = np.prod(outcomes, axis=1, dtype=np.int64)
    mean = float(products.mean())
    if shots == 1:
        return mean, float("nan")
    return mean, float(products.std(ddof=1) / np.sqrt(shots))


def dump_state(psi: StateVector) -> str:
    """One ``bitstring real imag`` line per nonzero amplitude, by index."""
    lines = []
    for index in np.flatnonzero(psi.amplitudes):
        z = psi.amplitudes[index]
        label = format(int(index), f"0{psi.n}b")
        lines.append(f"{label} {z.real:.17g} {z.imag:.17g}\n")
    return "".join(lines)
