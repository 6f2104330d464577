"""Ideal statevector simulation for two-register oracle circuits.

Layout: qubit ``k`` is bit ``k`` of the basis index.  For a state over
registers (n, m) the first register sits in the high bits and the second in
the low bits, so ``|x>_n (x) |y>_m`` is basis index ``x * 2**m + y``; the
second register occupies qubits ``0 .. m-1`` and the first ``m .. m+n-1``.

Two backends are provided:

* the full backend stores all ``2**(n+m)`` complex amplitudes;
* the compact backend (:class:`PhaseVector`) stores only the ``2**n`` signs
  ``(-1)**(y . f(x))`` that U_f kicks back onto ``|x> (x) |gamma_y>``.

State dump format (debugging only, not a stable API): one line per nonzero
amplitude, ``"index re im"`` with ``repr`` floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .boolean_oracle import BooleanFunction
from .errors import BadIndex, LengthMismatch, NotDeterministic, TooLarge
from .f2_algebra import BitString
from .rng import SplitMix64

MAX_QUBITS = 24
MAX_COMPACT_BITS = 26

# absolute tolerances: single operations vs. accumulated pipelines
OP_TOL = 1e-12
PIPELINE_TOL = 1e-9

_INV_SQRT2 = 1 / sqrt(2)


@dataclass(frozen=True)
class StateVector:
    qubits: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        if self.amps.shape != (1 << self.qubits,):
            raise LengthMismatch(f"{self.qubits} qubits need {1 << self.qubits} amplitudes")
        self.amps.setflags(write=False)

    def norm(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def dump(self, tol: float = 0.0) -> str:
        lines = []
        for k in np.flatnonzero(np.abs(self.amps) > tol):
            a = self.amps[k]
            lines.append(f"{k} {float(a.real)!r} {float(a.imag)!r}")
        return "\n".join(lines)


@dataclass(frozen=True)
class MeasurementOutcome:
    value: BitString
    probability: float


@dataclass(frozen=True)
class PhaseVector:
    """``2**-n/2 * sum_x signs[x] |x>_n (x) |gamma_marker>_m``."""

    n: int
    signs: np.ndarray
    marker: BitString


def _bits(b: BitString | None, width: int) -> int:
    if width == 0:
        if b is not None:
            raise LengthMismatch("empty register takes no bit string")
        return 0
    if b is None or b.length != width:
        raise LengthMismatch(f"register of width {width} needs a {width}-bit string")
    return b.value


def basis_state(n: int, m: int, first: BitString | None, second: BitString | None) -> StateVector:
    """``|first>_n (x) |second>_m``.  A width-0 register takes ``None``."""
    if n < 0 or m < 0 or n + m > MAX_QUBITS or n + m == 0:
        raise TooLarge(f"register sizes n={n}, m={m} outside 1..{MAX_QUBITS} qubits")
    amps = np.zeros(1 << (n + m), dtype=np.complex128)
    amps[(_bits(first, n) << m) | _bits(second, m)] = 1.0
    return StateVector(n + m, amps)


def _check_qubit(state: StateVector, qubit: int) -> None:
    if not 0 <= qubit < state.qubits:
        raise BadIndex(f"qubit {qubit} out of range for {state.qubits} qubits")


def apply_x(state: StateVector, qubit: int) -> StateVector:
    _check_qubit(state, qubit)
    idx = np.arange(len(state.amps)) ^ (1 << qubit)
    return StateVector(state.qubits, state.amps[idx])


def walsh_hadamard(a: np.ndarray, qubits, scale: float = _INV_SQRT2) -> None:
    """In-place butterfly over each listed qubit of a length ``2**q`` array.

    Each stage maps ``(u, v) -> scale * (u + v, u - v)`` across pairs that
    differ only in that qubit; ``scale=1`` gives the unnormalised transform.
    """
    for k in qubits:
        view = a.reshape(-1, 2, 1 << k)
        u = view[:, 0, :].copy()
        v = view[:, 1, :]
        view[:, 0, :] += v
        view[:, 1, :] = u - v
        if scale != 1:
            view *= scale


def apply_h_all(state: StateVector, qubit_set) -> StateVector:
    """Hadamard on every qubit in ``qubit_set`` by fast Walsh-Hadamard stages."""
    qubit_set = list(qubit_set)
    for k in qubit_set:
        _check_qubit(state, k)
    amps = state.amps.copy()
    walsh_hadamard(amps, qubit_set)
    return StateVector(state.qubits, amps)


def first_register(state: StateVector, n: int) -> range:
    return range(state.qubits - n, state.qubits)


def second_register(state: StateVector, n: int) -> range:
    return range(0, state.qubits - n)


def apply_oracle(state: StateVector, f: BooleanFunction) -> StateVector:
    """U_f: amplitude of ``(x, y)`` moves to ``(x, y xor f(x))``.

    Books one quantum call on ``f`` and ``2**n`` evaluations of simulator work.
    """
    if state.qubits != f.n + f.m:
        raise LengthMismatch(f"state has {state.qubits} qubits, U_f acts on {f.n + f.m}")
    table = f.table()
    f.note_quantum_call()
    f.note_simulator_work(len(table))
    grid = state.amps.reshape(1 << f.n, 1 << f.m)
    # U_f is an involution, so new[x, y] = old[x, y xor f(x)]
    src = np.arange(1 << f.m)[None, :] ^ table[:, None]
    out = np.take_along_axis(grid, src, axis=1)
    return StateVector(state.qubits, out.reshape(-1))


def gamma_state(y: BitString) -> StateVector:
    """``|gamma_y> = H_m |y>``."""
    state = basis_state(0, y.length, None, y)
    return apply_h_all(state, range(y.length))


_PLUS = np.array([1, 1], dtype=np.complex128) * _INV_SQRT2
_MINUS = np.array([1, -1], dtype=np.complex128) * _INV_SQRT2


def gamma_state_product(y: BitString) -> StateVector:
    """``|gamma_y>`` built as a tensor product: ``|->`` where y has a 1, ``|+>`` elsewhere."""
    if y.length > MAX_QUBITS:
        raise TooLarge(f"m={y.length} exceeds {MAX_QUBITS} qubits")
    amps = np.ones(1, dtype=np.complex128)
    for i in reversed(range(y.length)):
        amps = np.kron(amps, _MINUS if y[i] else _PLUS)
    return StateVector(y.length, amps)


def marginal_first(state: StateVector, n: int) -> np.ndarray:
    """``p(x) = sum_y |amp(x, y)|**2`` over the first ``n`` qubits' register."""
    if not 1 <= n <= state.qubits:
        raise BadIndex(f"first register width {n} invalid for {state.qubits} qubits")
    grid = state.probabilities().reshape(1 << n, -1)
    return grid.sum(axis=1)


def project_second(state: StateVector, n: int, target: StateVector) -> np.ndarray:
    """First-register amplitudes ``(I (x) <target|) |state>`` for a product state."""
    grid = state.amps.reshape(1 << n, -1)
    if grid.shape[1] != len(target.amps):
        raise LengthMismatch("target does not match the second register")
    return grid @ np.conj(target.amps)


def sample_index(probabilities: np.ndarray, seed: int) -> int:
    """Draw an index with the given probabilities using one SplitMix64 uniform."""
    u = SplitMix64(seed).uniform() * float(probabilities.sum())
    cdf = np.cumsum(probabilities)
    k = int(np.searchsorted(cdf, u, side="right"))
    k = min(k, len(probabilities) - 1)
    # never return a zero-probability index because of rounding at the tail
    while probabilities[k] == 0 and k > 0:
        k -= 1
    return k


def outcome_from_distribution(
    probabilities: np.ndarray, n: int, seed: int, deterministic: bool = False
) -> MeasurementOutcome:
    if deterministic:
        k = int(np.argmax(probabilities))
        if probabilities[k] <= 1 - PIPELINE_TOL:
            raise NotDeterministic(f"largest outcome probability is {probabilities[k]:.6g}")
    else:
        k = sample_index(probabilities, seed)
    return MeasurementOutcome(BitString(k, n), float(probabilities[k]))


def measure_first_register(
    state: StateVector, n: int, seed: int = 0, deterministic: bool = False
) -> MeasurementOutcome:
    """Measure the first register.

    Sampling mode draws from the marginal with ``seed``.  Deterministic mode
    returns the outcome whose probability exceeds ``1 - 1e-9`` and raises
    :class:`NotDeterministic` if there is none.
    """
    return outcome_from_distribution(marginal_first(state, n), n, seed, deterministic)


def compact_gpk_run(f: BooleanFunction, y: BitString) -> PhaseVector:
    """Phase-only U_f on ``H|0>_n (x) |gamma_y>``: ``signs[x] = (-1)**(y . f(x))``."""
    if y.length != f.m:
        raise LengthMismatch(f"marker has {y.length} bits, f outputs {f.m}")
    if f.n > MAX_COMPACT_BITS:
        raise TooLarge(f"compact backend limited to n <= {MAX_COMPACT_BITS}")
    table = f.table()
    f.note_quantum_call()
    f.note_simulator_work(len(table))
    signs = 1 - 2 * (np.bitwise_count(table & y.value) & 1).astype(np.int8)
    signs.setflags(write=False)
    return PhaseVector(f.n, signs, y)


def compact_final_transform(pv: PhaseVector) -> np.ndarray:
    """``H_n`` applied to the first register of a phase vector; real amplitudes."""
    amps = pv.signs.astype(np.float64)
    walsh_hadamard(amps, range(pv.n), scale=1)
    amps /= float(1 << pv.n)
    return amps


def phase_vector_state(pv: PhaseVector) -> StateVector:
    """Expand a phase vector into the full ``n + m`` qubit state it stands for."""
    first = pv.signs.astype(np.complex128) / sqrt(1 << pv.n)
    return StateVector(pv.n + pv.marker.length, np.kron(first, gamma_state(pv.marker).amps))
