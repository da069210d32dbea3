"""Independent reference computations the package is checked against.

Nothing here imports the code under test: matrix products stand in for the
Heisenberg law, a struct-based splitmix64 stands in for the kernels, and
closed forms stand in for stabilization limits.
"""

from __future__ import annotations

import struct
from fractions import Fraction

M64 = (1 << 64) - 1

# Published splitmix64 output streams (state += gamma; output = mix(state)).
SPLITMIX_SEED0 = (0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F)
SPLITMIX_SEED1234567 = (6457827717110365317, 3203168211198807973, 9817491932198370423)


def mix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M64
    return z ^ (z >> 31)


def noise_oracle(data: bytes, seed: int, dim: int, eps: float) -> list[float]:
    pad = (-len(data)) % 8
    words = struct.unpack(f">{(len(data) + pad) // 8}Q", data + b"\0" * pad)
    h = len(data)
    for w in words:
        h = mix64(h ^ w)
    return [eps * (2.0 * ((mix64(seed ^ h ^ i) >> 11) / 2.0**53) - 1.0) for i in range(dim)]


def ut3(m: int, n: int, k: int) -> list[list[int]]:
    return [[1, n, k], [0, 1, m], [0, 0, 1]]


def matprod(p, q):
    return [[sum(p[i][r] * q[r][j] for r in range(3)) for j in range(3)] for i in range(3)]


def heisenberg_product(x, y) -> tuple[int, int, int]:
    """Product read off the unitriangular matrix product."""
    z = matprod(ut3(*x), ut3(*y))
    return (z[1][2], z[0][1], z[0][2])


def heisenberg_power(x, n: int) -> tuple[int, int, int]:
    m, nn, k = x
    return (n * m, n * nn, n * k + n * (n - 1) // 2 * m * nn)


def phi(x) -> int:
    return x[0] * x[1] - 2 * x[2]


def t2_matrix(x):
    return [[x[0], x[1]], [0, x[2]]]


def t2_product_q(x, y):
    """2x2 upper-triangular product over Q."""
    a = [[Fraction(v) for v in row] for row in t2_matrix(x)]
    b = [[Fraction(v) for v in row] for row in t2_matrix(y)]
    return (a[0][0] * b[0][0], a[0][0] * b[0][1] + a[0][1] * b[1][1], a[1][1] * b[1][1])


def t2_product_mod(x, y, p: int):
    a, t, b = t2_product_q(x, y)
    return (int(a) % p, int(t) % p, int(b) % p)


def t2_order(p: int) -> int:
    """|T(2, F_p)| = (p - 1)^2 p."""
    return (p - 1) ** 2 * p


def ladder(c: float, f1: float, m_max: int) -> list[float]:
    out = [c + 2 * f1, c + f1, 2 * c + 2 * f1]
    for m in range(4, m_max + 1):
        out.append(c + out[0] + out[m - 3])
    return out[:m_max]
