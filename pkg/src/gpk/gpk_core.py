"""Generalised phase kick-back and the algorithms built on it.

``gpk_run(f, y)`` is one execution of the marker-``y`` circuit::

    |0>_n |0>_m  --X on the 1-bits of y-->  |0>_n |y>_m
                 --H on all qubits-->       H|0>_n (x) |gamma_y>
                 --U_f-->                   sum_x (-1)**(y.f(x)) |x> (x) |gamma_y>
                 --H on first register-->   measure first register

The solvers compose these runs: generalised Deutsch-Jozsa (one run per marker
of a basis of {0,1}^m), Bernstein-Vazirani and its affine and matrix
generalisations, and bit-drop detection.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import statevector_sim as sv
from .boolean_oracle import BooleanFunction, MAX_VERIFY_BITS, agrees_with_affine
from .errors import (
    LengthMismatch,
    NotABasis,
    NotABitDrop,
    NotAffine,
    PromiseViolated,
    TooLarge,
    WrongShape,
)
from .f2_algebra import BitString, F2LinearSystem, F2Matrix, is_basis, solve_f2
from .rng import SplitMix64

AUTO_COMPACT_ABOVE = 20


class Backend(str, enum.Enum):
    FULL = "full"
    COMPACT = "compact"
    AUTO = "auto"

    def resolve(self, f: BooleanFunction) -> Backend:
        if self is Backend.AUTO:
            return Backend.COMPACT if f.n + f.m > AUTO_COMPACT_ABOVE else Backend.FULL
        return self


class Verdict(str, enum.Enum):
    CONSTANT = "constant"
    BALANCED = "balanced"


@dataclass(frozen=True)
class GpkRunRecord:
    marker: BitString
    outcome: BitString
    backend: Backend
    seed: int
    quantum_oracle_calls: int
    deterministic: bool
    probability: float
    # simulator-side introspection, not observable on hardware
    zero_probability: float

    def to_json(self) -> dict:
        return {
            "marker": str(self.marker),
            "outcome": str(self.outcome),
            "deterministic": self.deterministic,
            "seed": self.seed,
            "backend": self.backend.value,
        }


@dataclass
class DjReport:
    n: int
    m: int
    verdict: Verdict
    lam: BitString
    values: tuple[BitString, ...]
    runs: list[GpkRunRecord]
    total_quantum_calls: int
    classical_calls: int
    seed: int
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "problem": "dj",
            "n": self.n,
            "m": self.m,
            "verdict": self.verdict.value,
            "lambda": str(self.lam),
            "values": [str(v) for v in self.values],
            "runs": [r.to_json() for r in self.runs],
            "quantum_calls": self.total_quantum_calls,
            "classical_calls": self.classical_calls,
            "seed": self.seed,
            **self.extra,
        }


@dataclass
class BvReport:
    n: int
    m: int
    R: F2Matrix
    r0: BitString
    runs: list[GpkRunRecord]
    total_quantum_calls: int
    classical_calls: int
    seed: int
    basis: F2Matrix
    # row i is the outcome for marker i, i.e. the matrix in the marker basis
    marker_outcomes: F2Matrix
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "problem": "gbv",
            "n": self.n,
            "m": self.m,
            "result": {"R": self.R.row_strings(), "r0": str(self.r0)},
            "lambda": None,
            "values": None,
            "basis": self.basis.row_strings(),
            "marker_outcomes": self.marker_outcomes.row_strings(),
            "runs": [r.to_json() for r in self.runs],
            "quantum_calls": self.total_quantum_calls,
            "classical_calls": self.classical_calls,
            "seed": self.seed,
            **self.extra,
        }


def run_seeds(seed: int, count: int) -> list[int]:
    """Per-run seeds derived from a master seed."""
    rng = SplitMix64(seed)
    return [rng.spawn() for _ in range(count)]


def _check_marker(f: BooleanFunction, y: BitString) -> None:
    if y.length != f.m:
        raise LengthMismatch(f"marker has {y.length} bits, f outputs {f.m}")


def _full_distribution(f: BooleanFunction, y: BitString) -> np.ndarray:
    if f.n + f.m > sv.MAX_QUBITS:
        raise TooLarge(f"full backend limited to {sv.MAX_QUBITS} qubits, need {f.n + f.m}")
    state = sv.basis_state(f.n, f.m, BitString.zero(f.n), BitString.zero(f.m))
    for i in range(f.m):
        if y[i]:
            state = sv.apply_x(state, i)
    state = sv.apply_h_all(state, range(state.qubits))
    state = sv.apply_oracle(state, f)
    state = sv.apply_h_all(state, sv.first_register(state, f.n))
    return sv.marginal_first(state, f.n)


def full_first_register_amplitudes(f: BooleanFunction, y: BitString) -> np.ndarray:
    """Full-backend first-register amplitudes with ``|gamma_y>`` projected out."""
    _check_marker(f, y)
    state = sv.basis_state(f.n, f.m, BitString.zero(f.n), y)
    state = sv.apply_h_all(state, range(state.qubits))
    state = sv.apply_oracle(state, f)
    state = sv.apply_h_all(state, sv.first_register(state, f.n))
    return sv.project_second(state, f.n, sv.gamma_state(y))


def gpk_final_amplitudes(f: BooleanFunction, y: BitString) -> np.ndarray:
    """Pre-measurement first-register amplitudes of GPK(y), via the compact path.

    Entry ``z`` is ``2**-n * sum_x (-1)**(f(x).y xor x.z)``.
    """
    _check_marker(f, y)
    return sv.compact_final_transform(sv.compact_gpk_run(f, y))


def gpk_run(
    f: BooleanFunction,
    y: BitString,
    backend: Backend | str = Backend.AUTO,
    seed: int = 0,
) -> GpkRunRecord:
    """One GPK(y) execution: a single U_f application and a sampled measurement."""
    _check_marker(f, y)
    backend = Backend(backend).resolve(f)
    before = f.quantum_calls
    if backend is Backend.FULL:
        probs = _full_distribution(f, y)
    else:
        if f.n > sv.MAX_COMPACT_BITS:
            raise TooLarge(f"compact backend limited to n <= {sv.MAX_COMPACT_BITS}")
        probs = gpk_final_amplitudes(f, y) ** 2
    outcome = sv.outcome_from_distribution(probs, f.n, seed)
    return GpkRunRecord(
        marker=y,
        outcome=outcome.value,
        backend=backend,
        seed=seed,
        quantum_oracle_calls=f.quantum_calls - before,
        deterministic=outcome.probability > 1 - sv.PIPELINE_TOL,
        probability=outcome.probability,
        zero_probability=float(probs[0]),
    )


def canonical_basis(m: int) -> list[BitString]:
    return [BitString.unit(i, m) for i in range(m)]


def _resolve_markers(f: BooleanFunction, markers: Sequence[BitString] | None) -> list[BitString]:
    if markers is None:
        return canonical_basis(f.m)
    markers = list(markers)
    if not is_basis(markers, f.m):
        raise NotABasis(f"markers {[str(y) for y in markers]} are not a basis of F2^{f.m}")
    return markers


def solve_generalized_dj(
    f: BooleanFunction,
    markers: Sequence[BitString] | None = None,
    backend: Backend | str = Backend.AUTO,
    seed: int = 0,
) -> DjReport:
    """Decide constant vs balanced with one GPK run per marker, then one f(0) query.

    Each run contributes the equation ``y_i . lambda = [delta_i != 0]`` where
    ``lambda = f1 xor f2``; for canonical markers it reads off bit ``i``.
    """
    markers = _resolve_markers(f, markers)
    seeds = run_seeds(seed, len(markers))
    q_before, c_before = f.quantum_calls, f.classical_calls
    runs = [gpk_run(f, y, backend, s) for y, s in zip(markers, seeds)]
    for r in runs:
        # under the promise p(0) is exactly 1 or exactly 0
        p0 = r.zero_probability
        if sv.PIPELINE_TOL < p0 < 1 - sv.PIPELINE_TOL:
            raise PromiseViolated(
                f"marker {r.marker}: outcome 0 has probability {p0:.6g}, expected 0 or 1"
            )
    system = F2LinearSystem.of((r.marker, int(not r.outcome.is_zero())) for r in runs)
    lam = solve_f2(system)
    if not isinstance(lam, BitString):
        raise PromiseViolated("marker outcomes give no unique lambda")
    f0 = f.evaluate(0)
    if lam.is_zero():
        verdict, values = Verdict.CONSTANT, (f0,)
    else:
        other = f0 ^ lam
        verdict = Verdict.BALANCED
        values = (f0, other) if f0.value < other.value else (other, f0)
    return DjReport(
        n=f.n,
        m=f.m,
        verdict=verdict,
        lam=lam,
        values=values,
        runs=runs,
        total_quantum_calls=f.quantum_calls - q_before,
        classical_calls=f.classical_calls - c_before,
        seed=seed,
    )


def _require_m1(f: BooleanFunction) -> None:
    if f.m != 1:
        raise WrongShape(f"this solver needs a single output bit, f has m={f.m}")


_ONE = BitString(1, 1)


def solve_classic_dj(f: BooleanFunction, seed: int = 0, backend: Backend | str = Backend.AUTO) -> Verdict:
    """Deutsch-Jozsa for m = 1: a single GPK run with marker 1."""
    _require_m1(f)
    run = gpk_run(f, _ONE, backend, seed)
    return Verdict.CONSTANT if run.outcome.is_zero() else Verdict.BALANCED


def solve_bv(f: BooleanFunction, seed: int = 0, backend: Backend | str = Backend.AUTO) -> BitString:
    """Bernstein-Vazirani: recover r from f(x) = r.x with one U_f call."""
    _require_m1(f)
    return gpk_run(f, _ONE, backend, seed).outcome


def solve_modified_bv(
    f: BooleanFunction, seed: int = 0, backend: Backend | str = Backend.AUTO
) -> tuple[BitString, int]:
    """f(x) = r0 xor r.x: r from one GPK run (r0 only flips a global sign), r0 = f(0)."""
    _require_m1(f)
    r = gpk_run(f, _ONE, backend, seed).outcome
    return r, f.evaluate(0).value


def solve_generalized_bv(
    f: BooleanFunction,
    markers: Sequence[BitString] | None = None,
    backend: Backend | str = Backend.AUTO,
    seed: int = 0,
) -> BvReport:
    """Recover an affine f(x) = r0 xor R.x with m GPK runs and one f(0) query.

    GPK(y) yields ``R^T y`` deterministically.  With canonical markers that is
    row ``i`` of R; for a basis Y (rows y_i) the outcomes form ``Y R`` and R
    is recovered as ``Y^-1 (Y R)``.
    """
    markers = _resolve_markers(f, markers)
    seeds = run_seeds(seed, len(markers))
    q_before, c_before = f.quantum_calls, f.classical_calls
    runs = [gpk_run(f, y, backend, s) for y, s in zip(markers, seeds)]
    for r in runs:
        if not r.deterministic:
            raise NotAffine(f"marker {r.marker}: measurement is not deterministic")
    basis = F2Matrix.from_rows(markers)
    outcomes = F2Matrix.from_rows([r.outcome for r in runs])
    R = basis.inverse() @ outcomes
    r0 = f.evaluate(0)
    if f.n <= MAX_VERIFY_BITS and not agrees_with_affine(f, R, r0):
        raise NotAffine("recovered (R, r0) does not reproduce f")
    return BvReport(
        n=f.n,
        m=f.m,
        R=R,
        r0=r0,
        runs=runs,
        total_quantum_calls=f.quantum_calls - q_before,
        classical_calls=f.classical_calls - c_before,
        seed=seed,
        basis=basis,
        marker_outcomes=outcomes,
    )


def detect_dropped_bit(
    f: BooleanFunction, seed: int = 0, backend: Backend | str = Backend.AUTO
) -> int:
    """Index of the input bit a bit-dropping f: {0,1}^n -> {0,1}^(n-1) deletes.

    GPK(e_i) for i < n-1 returns the canonical vector of the input bit that
    lands on output i; the one canonical vector never returned is the answer.
    """
    if f.m != f.n - 1:
        raise NotABitDrop(f"a bit-drop maps n bits to n-1, f is {f.n} -> {f.m}")
    seeds = run_seeds(seed, f.m)
    seen = set()
    for i, s in enumerate(seeds):
        run = gpk_run(f, BitString.unit(i, f.m), backend, s)
        out = run.outcome
        if not run.deterministic or out.weight() != 1 or out.value in seen:
            raise NotABitDrop(f"GPK(e_{i}) gave {out}, not a fresh canonical vector")
        seen.add(out.value)
    missing = [j for j in range(f.n) if (1 << j) not in seen]
    return missing[0]


def translation_invariance_check(
    f: BooleanFunction,
    s: BitString,
    y: BitString,
    seeds: Sequence[int] = (),
) -> bool:
    """Does GPK(y) give the same outcome distribution on f and on f xor s?

    Compares exact probabilities within 1e-9; for each seed also requires
    the sampled outcomes to coincide.
    """
    g = f.shifted(s)
    pf = gpk_final_amplitudes(f, y) ** 2
    pg = gpk_final_amplitudes(g, y) ** 2
    if not np.allclose(pf, pg, rtol=0, atol=sv.PIPELINE_TOL):
        return False
    return all(gpk_run(f, y, seed=k).outcome == gpk_run(g, y, seed=k).outcome for k in seeds)
