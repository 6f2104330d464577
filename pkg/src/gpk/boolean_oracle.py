"""Boolean functions f: {0,1}^n -> {0,1}^m and their classical ground truth.

A :class:`BooleanFunction` counts three kinds of work separately:

* ``classical_calls`` - explicit :meth:`BooleanFunction.evaluate` queries,
  the unit of classical query complexity;
* ``quantum_calls`` - applications of the oracle gate U_f by a simulator;
* ``simulator_evaluations`` - classical evaluations a simulator performs to
  realise U_f, plus introspection scans such as :func:`classify_promise`.
  These never count as algorithm queries.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Literal, Union

import numpy as np

from .errors import LengthMismatch, NotAffine, TooLarge, TruthTableParseError, BadIndex
from .f2_algebra import BitString, F2Matrix, MAX_BITS, mat_vec
from .rng import SplitMix64

MAX_TABLE_BITS = 26
MAX_SCAN_BITS = 20
MAX_VERIFY_BITS = 12


@dataclass(frozen=True)
class TruthTable:
    outputs: tuple[int, ...]


@dataclass(frozen=True)
class Affine:
    """f(x) = r0 xor R.x"""

    R: F2Matrix
    r0: BitString


@dataclass(frozen=True)
class BitDrop:
    """Delete input bit ``j`` and close the gap, keeping the order of the rest."""

    j: int


Representation = Union[TruthTable, Affine, BitDrop]


def _parity(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a) & 1


class BooleanFunction:
    def __init__(self, n: int, m: int, rep: Representation) -> None:
        if not 1 <= n <= MAX_TABLE_BITS:
            raise TooLarge(f"input width n={n} outside 1..{MAX_TABLE_BITS}")
        if not 1 <= m <= MAX_BITS:
            raise TooLarge(f"output width m={m} outside 1..{MAX_BITS}")
        if isinstance(rep, TruthTable):
            if len(rep.outputs) != 1 << n:
                raise LengthMismatch(f"truth table has {len(rep.outputs)} rows, expected {1 << n}")
            if any(not 0 <= v < (1 << m) for v in rep.outputs):
                raise LengthMismatch(f"truth table entries must be {m}-bit values")
        elif isinstance(rep, Affine):
            if rep.R.rows != m or rep.R.cols != n or rep.r0.length != m:
                raise LengthMismatch("affine data does not match (n, m)")
        elif isinstance(rep, BitDrop):
            if m != n - 1 or not 0 <= rep.j < n:
                raise LengthMismatch(f"BitDrop({rep.j}) needs m = n - 1 and 0 <= j < n")
        else:
            raise TypeError(f"unknown representation {rep!r}")
        self.n = n
        self.m = m
        self.rep = rep
        self._lock = threading.Lock()
        self._table: np.ndarray | None = None
        self.classical_calls = 0
        self.quantum_calls = 0
        self.simulator_evaluations = 0

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_outputs(cls, n: int, m: int, outputs) -> BooleanFunction:
        """Truth table from 2**n packed m-bit ints (or BitStrings / display strings)."""
        vals = []
        for v in outputs:
            if isinstance(v, str):
                v = BitString.parse(v)
            if isinstance(v, BitString):
                if v.length != m:
                    raise LengthMismatch(f"output {v} is not {m} bits")
                v = v.value
            vals.append(int(v))
        return cls(n, m, TruthTable(tuple(vals)))

    @classmethod
    def affine(cls, R: F2Matrix, r0: BitString) -> BooleanFunction:
        return cls(R.cols, R.rows, Affine(R, r0))

    @classmethod
    def bit_drop(cls, n: int, j: int) -> BooleanFunction:
        return cls(n, n - 1, BitDrop(j))

    @classmethod
    def constant(cls, n: int, value: BitString) -> BooleanFunction:
        return cls.affine(F2Matrix.zeros(value.length, n), value)

    # -- evaluation ---------------------------------------------------------

    def _value(self, x: int) -> int:
        rep = self.rep
        if isinstance(rep, TruthTable):
            return rep.outputs[x]
        if isinstance(rep, Affine):
            return rep.r0.value ^ mat_vec(rep.R, BitString(x, self.n)).value
        low = x & ((1 << rep.j) - 1)
        high = x >> (rep.j + 1)
        return low | (high << rep.j)

    def evaluate(self, x: BitString | int) -> BitString:
        """One classical query; increments ``classical_calls``."""
        if isinstance(x, BitString):
            if x.length != self.n:
                raise LengthMismatch(f"input has {x.length} bits, f expects {self.n}")
            x = x.value
        elif not 0 <= x < (1 << self.n):
            raise BadIndex(f"input {x} out of range for n={self.n}")
        with self._lock:
            self.classical_calls += 1
        return BitString(self._value(x), self.m)

    __call__ = evaluate

    def table(self) -> np.ndarray:
        """All 2**n outputs as packed ints, indexed by input.  Not a query."""
        if self._table is None:
            xs = np.arange(1 << self.n, dtype=np.int64)
            rep = self.rep
            if isinstance(rep, TruthTable):
                out = np.asarray(rep.outputs, dtype=np.int64)
            elif isinstance(rep, Affine):
                out = np.full(xs.shape, rep.r0.value, dtype=np.int64)
                for i, row in enumerate(rep.R.row_data):
                    out ^= _parity(xs & row).astype(np.int64) << i
            else:
                low = xs & ((1 << rep.j) - 1)
                out = low | ((xs >> (rep.j + 1)) << rep.j)
            out.setflags(write=False)
            self._table = out
        return self._table

    def note_simulator_work(self, evaluations: int) -> None:
        with self._lock:
            self.simulator_evaluations += evaluations

    def note_quantum_call(self) -> None:
        with self._lock:
            self.quantum_calls += 1

    def reset_counters(self) -> None:
        with self._lock:
            self.classical_calls = 0
            self.quantum_calls = 0
            self.simulator_evaluations = 0

    # -- derived functions --------------------------------------------------

    def to_truth_table(self) -> BooleanFunction:
        return BooleanFunction(self.n, self.m, TruthTable(tuple(int(v) for v in self.table())))

    def shifted(self, s: BitString) -> BooleanFunction:
        """The translate x -> f(x) xor s."""
        if s.length != self.m:
            raise LengthMismatch(f"shift has {s.length} bits, f outputs {self.m}")
        if isinstance(self.rep, Affine):
            return BooleanFunction.affine(self.rep.R, self.rep.r0 ^ s)
        return BooleanFunction(self.n, self.m, TruthTable(tuple(int(v) ^ s.value for v in self.table())))

    def __repr__(self) -> str:
        return f"BooleanFunction(n={self.n}, m={self.m}, rep={type(self.rep).__name__})"


# -- promise classification ---------------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: BitString
    kind = "constant"


@dataclass(frozen=True)
class Balanced:
    """Two distinct values, each taken on half the inputs; ``f1 < f2`` as ints."""

    f1: BitString
    f2: BitString
    kind = "balanced"

    def __post_init__(self) -> None:
        if not self.f1.value < self.f2.value:
            raise ValueError("Balanced requires f1 < f2 in integer order")

    @classmethod
    def of(cls, a: BitString, b: BitString) -> Balanced:
        return cls(a, b) if a.value < b.value else cls(b, a)


@dataclass(frozen=True)
class Neither:
    kind = "neither"


PromiseClass = Union[Constant, Balanced, Neither]


def classify_promise(f: BooleanFunction) -> PromiseClass:
    """Exhaustive scan of all 2**n inputs.

    This is oracle introspection: it is booked as simulator work, never as
    classical queries.
    """
    if f.n > MAX_SCAN_BITS:
        raise TooLarge(f"exhaustive classification limited to n <= {MAX_SCAN_BITS}")
    table = f.table()
    f.note_simulator_work(len(table))
    values, counts = np.unique(table, return_counts=True)
    if len(values) == 1:
        return Constant(BitString(int(values[0]), f.m))
    half = 1 << (f.n - 1)
    if len(values) == 2 and counts[0] == half and counts[1] == half:
        return Balanced(BitString(int(values[0]), f.m), BitString(int(values[1]), f.m))
    return Neither()


# -- instance generation --------------------------------------------------------


def random_promise_instance(
    n: int, m: int, kind: Literal["constant", "balanced"], seed: int
) -> BooleanFunction:
    """Seeded random constant or balanced truth table.

    Balanced instances put two distinct random values on a uniformly random
    half of the inputs.
    """
    if not 1 <= n <= MAX_SCAN_BITS or not 1 <= m <= MAX_BITS:
        raise TooLarge(f"promise instances need 1 <= n <= {MAX_SCAN_BITS}, 1 <= m <= {MAX_BITS}")
    rng = SplitMix64(seed)
    f1 = rng.bits(m)
    if kind == "constant":
        return BooleanFunction(n, m, TruthTable((f1,) * (1 << n)))
    if kind != "balanced":
        raise ValueError(f"kind must be 'constant' or 'balanced', got {kind!r}")
    f2 = f1 ^ (1 + rng.below((1 << m) - 1))
    perm = rng.permutation(1 << n)
    outputs = np.full(1 << n, f2, dtype=np.int64)
    outputs[perm[: 1 << (n - 1)]] = f1
    return BooleanFunction(n, m, TruthTable(tuple(int(v) for v in outputs)))


def random_affine_instance(n: int, m: int, seed: int) -> BooleanFunction:
    if not 1 <= n <= MAX_TABLE_BITS or not 1 <= m <= MAX_BITS:
        raise TooLarge(f"affine instances need 1 <= n <= {MAX_TABLE_BITS}, 1 <= m <= {MAX_BITS}")
    rng = SplitMix64(seed)
    rows = tuple(rng.bits(n) for _ in range(m))
    r0 = BitString(rng.bits(m), m)
    return BooleanFunction.affine(F2Matrix(rows, n), r0)


def adversarial_balanced(n: int, m: int = 1, f1: int = 0, f2: int = 1) -> BooleanFunction:
    """Balanced table whose first half (inputs 0 .. 2**(n-1) - 1) is constant."""
    half = 1 << (n - 1)
    return BooleanFunction(n, m, TruthTable((f1,) * half + (f2,) * half))


# -- classical solvers ------------------------------------------------------------


def classical_dj_solver(f: BooleanFunction) -> Constant | Balanced:
    """Deterministic classical decision of constant vs balanced.

    Queries inputs 0, 1, 2, ... and stops at the first value differing from
    f(0), or after 2**(n-1) + 1 agreeing answers.  Under the promise the two
    distinct values seen are exactly the balanced pair, so no further queries
    are needed.
    """
    first = f.evaluate(0)
    limit = min((1 << (f.n - 1)) + 1, 1 << f.n)
    for x in range(1, limit):
        value = f.evaluate(x)
        if value != first:
            return Balanced.of(first, value)
    return Constant(first)


def classical_bv_solver(f: BooleanFunction) -> tuple[F2Matrix, BitString]:
    """Recover (R, r0) of an affine f with n + 1 queries.

    For n <= 12 the result is checked against every input by introspection
    and :class:`NotAffine` is raised on any disagreement.
    """
    r0 = f.evaluate(0)
    columns = [f.evaluate(1 << j) ^ r0 for j in range(f.n)]
    R = F2Matrix.from_columns(columns)
    if f.n <= MAX_VERIFY_BITS and not agrees_with_affine(f, R, r0):
        raise NotAffine("recovered (R, r0) does not reproduce f")
    return R, r0


def agrees_with_affine(f: BooleanFunction, R: F2Matrix, r0: BitString) -> bool:
    """Introspection sweep: does r0 xor R.x equal f(x) for every x?"""
    candidate = BooleanFunction.affine(R, r0)
    f.note_simulator_work(1 << f.n)
    return bool(np.array_equal(candidate.table(), f.table()))


# -- truth-table text format ----------------------------------------------------------


def format_truth_table(f: BooleanFunction) -> str:
    lines = [f"{f.n} {f.m}"]
    lines.extend(format(int(v), f"0{f.m}b") for v in f.table())
    return "\n".join(lines) + "\n"


def parse_truth_table(text: str) -> BooleanFunction:
    """Parse the ``"n m"`` header plus 2**n output lines (display order)."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise TruthTableParseError("empty input, expected header 'n m'", 1)
    header = [(tok.start() + 1, tok.group()) for tok in re.finditer(r"\S+", lines[0])]
    if len(header) != 2:
        raise TruthTableParseError("header must be two integers 'n m'", 1)
    for col, tok in header:
        if not tok.isdigit():
            raise TruthTableParseError(f"header field {tok!r} is not a non-negative integer", 1, col)
    n, m = int(header[0][1]), int(header[1][1])
    if not 1 <= n <= MAX_SCAN_BITS or not 1 <= m <= MAX_BITS:
        raise TruthTableParseError(f"need 1 <= n <= {MAX_SCAN_BITS} and 1 <= m <= {MAX_BITS}", 1)
    expected = 1 << n
    body = lines[1:]
    if len(body) != expected:
        line = min(len(body), expected) + 2
        raise TruthTableParseError(f"expected {expected} output lines, found {len(body)}", line)
    outputs = []
    for k, raw in enumerate(body):
        lineno = k + 2
        s = raw.rstrip()
        for col, ch in enumerate(s, start=1):
            if ch not in "01":
                raise TruthTableParseError(f"unexpected character {ch!r}", lineno, col)
        if len(s) != m:
            raise TruthTableParseError(f"expected {m} bits, found {len(s)}", lineno, min(len(s), m) + 1)
        outputs.append(int(s, 2))
    return BooleanFunction(n, m, TruthTable(tuple(outputs)))


def load_truth_table(path: str | Path) -> BooleanFunction:
    return parse_truth_table(Path(path).read_text())
