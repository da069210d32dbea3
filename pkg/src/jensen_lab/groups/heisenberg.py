"""The Heisenberg group H = <a, b | c = [b, a], c central>.

Elements are triples (m, n, k) standing for a^m b^n c^k, multiplied by

    (m, n, k)(m1, n1, k1) = (m + m1, n + n1, m1*n + k + k1).
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from jensen_lab.groups.core import Group, encode_int


class HeisenbergElement(NamedTuple):
    m: int
    n: int
    k: int


UT3Matrix = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]


class Heisenberg(Group):
    kind = "heisenberg"
    descriptor = "heisenberg"

    a = HeisenbergElement(1, 0, 0)
    b = HeisenbergElement(0, 1, 0)
    c = HeisenbergElement(0, 0, 1)

    def identity(self):
        return HeisenbergElement(0, 0, 0)

    def element(self, m: int, n: int, k: int) -> HeisenbergElement:
        return HeisenbergElement(int(m), int(n), int(k))

    def _mul(self, x, y):
        return HeisenbergElement(x[0] + y[0], x[1] + y[1], y[0] * x[1] + x[2] + y[2])

    def _inv(self, x):
        m, n, k = x
        return HeisenbergElement(-m, -n, m * n - k)

    def _pow(self, x, n: int):
        m, nn, k = x
        return HeisenbergElement(n * m, n * nn, n * k + (n * (n - 1) // 2) * m * nn)

    def contains(self, x) -> bool:
        return type(x) is HeisenbergElement and all(type(v) is int for v in x)

    def encode(self, x) -> bytes:
        return b"H" + encode_int(x[0]) + encode_int(x[1]) + encode_int(x[2])

    def generators(self):
        return {"a": self.a, "b": self.b}

    def format(self, x) -> str:
        return f"({x[0]},{x[1]},{x[2]})"

    @property
    def character_rank(self) -> int:
        return 2

    def character(self, weights: Sequence[float]):
        """``x -> w0*m + w1*n``; every real character of H has this form."""
        if len(weights) != 2:
            raise ValueError("Heisenberg characters take two weights")
        w0, w1 = float(weights[0]), float(weights[1])
        return lambda x: w0 * x[0] + w1 * x[1]


def heisenberg_to_ut3(x: HeisenbergElement) -> UT3Matrix:
    m, n, k = x
    return ((1, n, k), (0, 1, m), (0, 0, 1))


def ut3_to_heisenberg(mat: Sequence[Sequence[int]]) -> HeisenbergElement:
    rows = [tuple(r) for r in mat]
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected a 3x3 matrix")
    if rows[0][0] != 1 or rows[1][1] != 1 or rows[2][2] != 1:
        raise ValueError("diagonal entries must be 1")
    if rows[1][0] != 0 or rows[2][0] != 0 or rows[2][1] != 0:
        raise ValueError("matrix is not upper triangular")
    return HeisenbergElement(int(rows[1][2]), int(rows[0][1]), int(rows[0][2]))


def matmul3(p: Sequence[Sequence[int]], q: Sequence[Sequence[int]]) -> UT3Matrix:
    return tuple(
        tuple(sum(p[i][t] * q[t][j] for t in range(3)) for j in range(3)) for i in range(3)
    )  # type: ignore[return-value]
