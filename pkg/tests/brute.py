"""Independent reference computations for the test-suite.

Nothing here touches the packed-int or butterfly code paths under test: bits
are plain lists, Hadamards are dense Kronecker products and U_f is an explicit
permutation matrix.
"""

from __future__ import annotations

import numpy as np


def bits_of(value: int, length: int) -> list[int]:
    return [(value >> i) & 1 for i in range(length)]


def bit_dot(a: int, b: int, length: int) -> int:
    return sum(x * y for x, y in zip(bits_of(a, length), bits_of(b, length))) % 2


def dense_hadamard(k: int) -> np.ndarray:
    h = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
    out = np.ones((1, 1), dtype=np.complex128)
    for _ in range(k):
        out = np.kron(out, h)
    return out


def dense_oracle(table, n: int, m: int) -> np.ndarray:
    """Permutation matrix of U_f with |x>|y> at index x * 2**m + y."""
    size = 1 << (n + m)
    U = np.zeros((size, size))
    for x in range(1 << n):
        for y in range(1 << m):
            U[(x << m) | (y ^ int(table[x])), (x << m) | y] = 1
    return U


def gpk_amplitudes(table, n: int, y: int, m: int) -> np.ndarray:
    """(1/2**n) sum_x (-1)**(f(x).y xor x.z) for each z, by the double sum."""
    out = np.zeros(1 << n)
    for z in range(1 << n):
        total = 0
        for x in range(1 << n):
            total += (-1) ** ((bit_dot(int(table[x]), y, m) + bit_dot(x, z, n)) % 2)
        out[z] = total / (1 << n)
    return out


def dense_gpk_state(table, n: int, m: int, y: int) -> np.ndarray:
    """Final full state of GPK(y) from dense matrices."""
    size = 1 << (n + m)
    psi = np.zeros(size, dtype=np.complex128)
    psi[y] = 1
    psi = dense_hadamard(n + m) @ psi
    psi = dense_oracle(table, n, m) @ psi
    psi = np.kron(dense_hadamard(n), np.eye(1 << m)) @ psi
    return psi


def solve_by_enumeration(equations, m: int) -> list[int]:
    """All unknowns satisfying every (coeff, rhs) equation."""
    return [lam for lam in range(1 << m) if all(bit_dot(c, lam, m) == r for c, r in equations)]


def invertible_by_det(matrix: list[list[int]]) -> bool:
    """Invertibility over F2 via the integer determinant mod 2."""
    det = round(np.linalg.det(np.array(matrix, dtype=float)))
    return det % 2 == 1


def random_table(rng: np.random.Generator, n: int, m: int) -> list[int]:
    return [int(v) for v in rng.integers(0, 1 << m, size=1 << n)]
