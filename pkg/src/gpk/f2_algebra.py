"""Bit strings and linear algebra over GF(2).

A :class:`BitString` packs up to 30 bits into one Python int.  Index ``i`` is
the coefficient of ``2**i``; the textual form puts index ``len - 1`` leftmost,
so ``BitString.parse("010")`` has only index 1 set and ``e(0, 3)`` prints as
``"001"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LengthMismatch, TooLarge, BadIndex

MAX_BITS = 30


def _check_len(length: int) -> None:
    if not 1 <= length <= MAX_BITS:
        raise TooLarge(f"bit-string length must be in 1..{MAX_BITS}, got {length}")


@dataclass(frozen=True, slots=True)
class BitString:
    value: int
    length: int

    def __post_init__(self) -> None:
        _check_len(self.length)
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def parse(cls, text: str) -> BitString:
        """Parse display order text (highest index first), e.g. ``"010"``."""
        text = text.strip()
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> BitString:
        """Build from a sequence indexed 0..len-1 (``bits[i]`` is index ``i``)."""
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {i} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(value, len(bits))

    @classmethod
    def zero(cls, length: int) -> BitString:
        return cls(0, length)

    @classmethod
    def unit(cls, index: int, length: int) -> BitString:
        """Canonical basis vector with a single 1 at ``index``."""
        if not 0 <= index < length:
            raise BadIndex(f"index {index} out of range for length {length}")
        return cls(1 << index, length)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise BadIndex(f"index {i} out of range for length {self.length}")
        return (self.value >> i) & 1

    def __iter__(self):
        return (self[i] for i in range(self.length))

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b")

    def __repr__(self) -> str:
        return f"BitString('{self}')"

    def __int__(self) -> int:
        return self.value

    def __xor__(self, other: BitString) -> BitString:
        return xor(self, other)

    def bits(self) -> list[int]:
        return list(self)

    def weight(self) -> int:
        return self.value.bit_count()

    def is_zero(self) -> bool:
        return self.value == 0


def e(index: int, length: int) -> BitString:
    return BitString.unit(index, length)


def _same_len(a: BitString, b: BitString) -> None:
    if a.length != b.length:
        raise LengthMismatch(f"lengths differ: {a.length} vs {b.length}")


def xor(a: BitString, b: BitString) -> BitString:
    _same_len(a, b)
    return BitString(a.value ^ b.value, a.length)


def dot(a: BitString, b: BitString) -> int:
    """The pairing ``a . b`` = xor over i of ``a[i] * b[i]``."""
    _same_len(a, b)
    return (a.value & b.value).bit_count() & 1


@dataclass(frozen=True, slots=True)
class F2Matrix:
    """An ``rows x cols`` Boolean matrix; row ``i`` is a packed int of ``cols`` bits."""

    row_data: tuple[int, ...]
    cols: int

    def __post_init__(self) -> None:
        _check_len(self.cols)
        _check_len(len(self.row_data))
        limit = 1 << self.cols
        for r in self.row_data:
            if not 0 <= r < limit:
                raise ValueError(f"row {r} does not fit in {self.cols} bits")

    @property
    def rows(self) -> int:
        return len(self.row_data)

    @classmethod
    def from_rows(cls, rows: Sequence[BitString]) -> F2Matrix:
        if not rows:
            raise ValueError("matrix needs at least one row")
        cols = rows[0].length
        for r in rows:
            if r.length != cols:
                raise LengthMismatch("all rows must share a length")
        return cls(tuple(r.value for r in rows), cols)

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]]) -> F2Matrix:
        """Nested lists, ``rows[i][j]`` is entry (i, j)."""
        return cls.from_rows([BitString.from_bits(r) for r in rows])

    @classmethod
    def from_columns(cls, columns: Sequence[BitString]) -> F2Matrix:
        if not columns:
            raise ValueError("matrix needs at least one column")
        m = columns[0].length
        for c in columns:
            if c.length != m:
                raise LengthMismatch("all columns must share a length")
        rows = []
        for i in range(m):
            rows.append(sum(((c.value >> i) & 1) << j for j, c in enumerate(columns)))
        return cls(tuple(rows), len(columns))

    @classmethod
    def identity(cls, size: int) -> F2Matrix:
        return cls(tuple(1 << i for i in range(size)), size)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> F2Matrix:
        return cls((0,) * rows, cols)

    def row(self, i: int) -> BitString:
        if not 0 <= i < self.rows:
            raise BadIndex(f"row {i} out of range for {self.rows} rows")
        return BitString(self.row_data[i], self.cols)

    def entry(self, i: int, j: int) -> int:
        return (self.row_data[i] >> j) & 1

    def row_strings(self) -> list[str]:
        return [str(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> F2Matrix:
        return F2Matrix.from_columns([self.row(i) for i in range(self.rows)])

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.cols != other.rows:
            raise LengthMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for r in self.row_data:
            acc = 0
            for j in range(self.cols):
                if (r >> j) & 1:
                    acc ^= other.row_data[j]
            out.append(acc)
        return F2Matrix(tuple(out), other.cols)

    def rank(self) -> int:
        return rank(list(self.row_data), self.cols)

    def inverse(self) -> F2Matrix:
        """Inverse of a square invertible matrix via Gauss-Jordan on ``[A | I]``."""
        if self.rows != self.cols:
            raise LengthMismatch("only square matrices have inverses")
        size = self.cols
        work = [r | (1 << (size + i)) for i, r in enumerate(self.row_data)]
        for col in range(size):
            pivot = next((k for k in range(col, size) if (work[k] >> col) & 1), None)
            if pivot is None:
                raise ValueError("matrix is singular over GF(2)")
            work[col], work[pivot] = work[pivot], work[col]
            for k in range(size):
                if k != col and (work[k] >> col) & 1:
                    work[k] ^= work[col]
        return F2Matrix(tuple(r >> size for r in work), size)


def mat_vec(R: F2Matrix, x: BitString) -> BitString:
    """``R . x``: component ``i`` is ``dot(R.row(i), x)``."""
    if R.cols != x.length:
        raise LengthMismatch(f"matrix has {R.cols} columns, vector has {x.length} bits")
    value = 0
    for i, r in enumerate(R.row_data):
        value |= ((r & x.value).bit_count() & 1) << i
    return BitString(value, R.rows)


def rank(rows: Iterable[int], n_cols: int) -> int:
    """Rank over GF(2) of packed rows."""
    work = list(rows)
    rk = 0
    for col in range(n_cols):
        pivot = next((k for k in range(rk, len(work)) if (work[k] >> col) & 1), None)
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        for k in range(len(work)):
            if k != rk and (work[k] >> col) & 1:
                work[k] ^= work[rk]
        rk += 1
        if rk == len(work):
            break
    return rk


def is_basis(vectors: Sequence[BitString], m: int) -> bool:
    for v in vectors:
        if v.length != m:
            raise LengthMismatch(f"vector {v} has length {v.length}, expected {m}")
    return len(vectors) == m and rank((v.value for v in vectors), m) == m


@dataclass(frozen=True)
class F2LinearSystem:
    """Equations ``coeff . unknown = rhs`` in an unknown of ``length`` bits."""

    equations: tuple[tuple[BitString, int], ...]
    length: int

    def __post_init__(self) -> None:
        for coeff, rhs in self.equations:
            if coeff.length != self.length:
                raise LengthMismatch("all coefficient strings must share the unknown's length")
            if rhs not in (0, 1):
                raise ValueError(f"rhs must be a bit, got {rhs!r}")

    @classmethod
    def of(cls, equations: Iterable[tuple[BitString, int]]) -> F2LinearSystem:
        eqs = tuple((c, int(r)) for c, r in equations)
        if not eqs:
            raise ValueError("system has no equations")
        return cls(eqs, eqs[0][0].length)


@dataclass(frozen=True)
class NoSolution:
    """The system is inconsistent."""


@dataclass(frozen=True)
class Underdetermined:
    """Consistent but rank-deficient; ``particular`` is one solution."""

    rank: int
    particular: BitString


def solve_f2(system: F2LinearSystem) -> BitString | NoSolution | Underdetermined:
    """Gaussian elimination over GF(2).

    Pivots are taken as the first row (in input order) with a 1 in the
    current column, so the outcome is reproducible.
    """
    m = system.length
    # bit m of each working row carries the right-hand side
    work = [c.value | (rhs << m) for c, rhs in system.equations]
    pivot_cols = []
    rk = 0
    for col in range(m):
        pivot = next((k for k in range(rk, len(work)) if (work[k] >> col) & 1), None)
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        for k in range(len(work)):
            if k != rk and (work[k] >> col) & 1:
                work[k] ^= work[rk]
        pivot_cols.append(col)
        rk += 1
    coeff_mask = (1 << m) - 1
    if any((row & coeff_mask) == 0 and (row >> m) & 1 for row in work[rk:]):
        return NoSolution()
    value = 0
    for k, col in enumerate(pivot_cols):
        value |= ((work[k] >> m) & 1) << col
    solution = BitString(value, m)
    if rk < m:
        return Underdetermined(rk, solution)
    return solution
