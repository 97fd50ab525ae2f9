"""Code states ("codekets") and their Pauli-product expectation values."""

from .errors import (
    CodeketError,
    InvalidArgumentError,
    ParseError,
    PreconditionError,
    RankDeficiencyError,
    ResourceLimitError,
    VerificationError,
)
from .expectation import (
    Case,
    ExpectationResult,
    bound,
    closed_form_all_xy,
    closed_form_linear,
    closed_form_z,
    enumerate_nonzero,
    exp_sum_linear,
    exp_sum_nonlinear,
    odd_identity_sum,
)
from .gf2core import (
    BitVector,
    LinearCode,
    NonlinearCode,
    add_mod2,
    codewords,
    contains,
    coset_intersection,
    dual,
    gf2_inner,
    int_inner,
    rref,
    weight,
)
from .pauli import (
    PauliString,
    QuarterPhase,
    apply_to_basis,
    format_pauli,
    measurement_label,
    parse_pauli,
    single_action,
)
from .statevec import (
    ShotOutcome,
    StateVector,
    apply_pauli,
    codeket,
    estimate_expectation,
    expectation_oracle,
    inner,
    measure_shot,
)

__version__ = "0.1.0"
