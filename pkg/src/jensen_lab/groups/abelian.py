"""Abelian building blocks: Z^d, Z/n, and finite direct products."""

from __future__ import annotations

from typing import Sequence

from jensen_lab.groups.core import Group, encode_block, encode_int


class FreeAbelian(Group):
    """Z^rank, elements are integer tuples under addition."""

    kind = "free_abelian"

    def __init__(self, rank: int = 1):
        if rank < 1:
            raise ValueError("rank must be positive")
        self.rank = rank
        self.descriptor = "z" if rank == 1 else f"z^d:{rank}"

    def identity(self):
        return (0,) * self.rank

    def element(self, *coords: int) -> tuple[int, ...]:
        return tuple(int(c) for c in coords)

    def _mul(self, x, y):
        return tuple(u + v for u, v in zip(x, y))

    def _inv(self, x):
        return tuple(-u for u in x)

    def _pow(self, x, n):
        return tuple(n * u for u in x)

    def contains(self, x) -> bool:
        return type(x) is tuple and len(x) == self.rank and all(type(v) is int for v in x)

    def encode(self, x) -> bytes:
        return b"Z" + encode_int(self.rank) + b"".join(encode_int(v) for v in x)

    def generators(self):
        gens = {}
        for i in range(self.rank):
            e = [0] * self.rank
            e[i] = 1
            gens[f"e{i + 1}"] = tuple(e)
        return gens

    def format(self, x) -> str:
        return str(x[0]) if self.rank == 1 else "(" + ",".join(map(str, x)) + ")"

    @property
    def character_rank(self) -> int:
        return self.rank

    def character(self, weights: Sequence[float]):
        if len(weights) != self.rank:
            raise ValueError(f"expected {self.rank} weights")
        w = [float(v) for v in weights]
        return lambda x: sum(wi * xi for wi, xi in zip(w, x))


class Cyclic(Group):
    """Z/n with least nonnegative residues."""

    kind = "cyclic"

    def __init__(self, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus
        self.descriptor = f"zn:{modulus}"

    def identity(self):
        return 0

    def _mul(self, x, y):
        return (x + y) % self.modulus

    def _inv(self, x):
        return -x % self.modulus

    def _pow(self, x, n):
        return x * n % self.modulus

    def contains(self, x) -> bool:
        return type(x) is int and 0 <= x < self.modulus

    def encode(self, x) -> bytes:
        return b"C" + encode_int(x)

    def generators(self):
        return {"g": 1 % self.modulus}

    @property
    def order(self):
        return self.modulus

    def elements(self):
        return iter(range(self.modulus))


class DirectProduct(Group):
    kind = "direct_product"

    def __init__(self, factors: Sequence[Group]):
        if len(factors) < 2:
            raise ValueError("a direct product needs at least two factors")
        self.factors = tuple(factors)
        self.descriptor = "*".join(g.descriptor for g in self.factors)

    def identity(self):
        return tuple(g.identity() for g in self.factors)

    def _mul(self, x, y):
        return tuple(g._mul(u, v) for g, u, v in zip(self.factors, x, y))

    def _inv(self, x):
        return tuple(g._inv(u) for g, u in zip(self.factors, x))

    def _pow(self, x, n):
        return tuple(g._pow(u, n) for g, u in zip(self.factors, x))

    def contains(self, x) -> bool:
        return (
            type(x) is tuple
            and len(x) == len(self.factors)
            and all(g.contains(u) for g, u in zip(self.factors, x))
        )

    def encode(self, x) -> bytes:
        return (
            b"P"
            + encode_int(len(self.factors))
            + b"".join(encode_block(g.encode(u)) for g, u in zip(self.factors, x))
        )

    def generators(self):
        gens = {}
        one = self.identity()
        for i, g in enumerate(self.factors):
            for name, gen in g.generators().items():
                e = list(one)
                e[i] = gen
                gens[f"{name}[{i + 1}]"] = tuple(e)
        return gens

    def format(self, x) -> str:
        return "(" + ", ".join(g.format(u) for g, u in zip(self.factors, x)) + ")"

    @property
    def order(self):
        total = 1
        for g in self.factors:
            if g.order is None:
                return None
            total *= g.order
        return total

    def elements(self):
        import itertools

        return iter(itertools.product(*(list(g.elements()) for g in self.factors)))

    @property
    def character_rank(self) -> int:
        return sum(g.character_rank for g in self.factors)

    def character(self, weights: Sequence[float]):
        if len(weights) != self.character_rank:
            raise ValueError(f"expected {self.character_rank} weights")
        parts = []
        pos = 0
        for g in self.factors:
            r = g.character_rank
            parts.append(g.character(weights[pos:pos + r]))
            pos += r
        return lambda x: sum(ch(u) for ch, u in zip(parts, x))
