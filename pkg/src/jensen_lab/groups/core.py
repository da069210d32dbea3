"""Abstract group contract and the generic algebra built on it.

Concrete groups supply ``identity``, ``_mul``, ``_inv``, ``contains`` and
``encode``; everything else (powers, commutators, conjugation, order
detection) is derived here. Elements are immutable hashable values whose
``==`` is exact.

Encoding conventions
--------------------
Every integer is written as a 4-byte big-endian length followed by its
minimal big-endian two's-complement body (zero is ``00 00 00 01 00``).
Each group kind prefixes one ASCII tag byte, so the identity encodings are
fixed constants, e.g. ``b"H" + 3 * INT_ZERO`` for the Heisenberg group.
"""

from __future__ import annotations

import random
from abc import ABC, abstractmethod
from typing import Any, Callable, Hashable, Iterator, Sequence

Element = Hashable

INT_ZERO = b"\x00\x00\x00\x01\x00"


class GroupError(ValueError):
    """Raised when an element does not belong to the group it is used with."""


def encode_int(n: int) -> bytes:
    body = n.to_bytes((n.bit_length() + 8) // 8, "big", signed=True)
    return len(body).to_bytes(4, "big") + body


def encode_block(data: bytes) -> bytes:
    return len(data).to_bytes(4, "big") + data


class Group(ABC):
    """A group with exact, canonical elements.

    Subclasses set ``kind`` and ``descriptor``; ``descriptor`` doubles as the
    group id that elements are checked against.
    """

    kind: str = "abstract"
    descriptor: str = "?"

    @abstractmethod
    def identity(self) -> Element: ...

    @abstractmethod
    def _mul(self, x, y): ...

    @abstractmethod
    def _inv(self, x): ...

    @abstractmethod
    def contains(self, x) -> bool: ...

    @abstractmethod
    def encode(self, x) -> bytes:
        """Injective, platform-stable byte encoding of ``x``."""

    @abstractmethod
    def generators(self) -> dict[str, Element]: ...

    def format(self, x) -> str:
        return repr(x)

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        return None

    def elements(self) -> Iterator[Element]:
        raise TypeError(f"{self.descriptor} is infinite; cannot enumerate")

    @property
    def character_rank(self) -> int:
        return 0

    def character(self, weights: Sequence[float]) -> Callable[[Any], float]:
        """Real character determined by ``weights`` (see subclass docs)."""
        if len(weights):
            raise ValueError(f"{self.descriptor} has no nonzero real characters")
        return lambda x: 0.0

    # -- checked public operations -------------------------------------

    def check(self, x) -> None:
        if not self.contains(x):
            raise GroupError(f"{x!r} is not an element of {self.descriptor}")

    def multiply(self, x, y):
        self.check(x)
        self.check(y)
        return self._mul(x, y)

    def inverse(self, x):
        self.check(x)
        return self._inv(x)

    def power(self, x, n: int):
        self.check(x)
        return self._pow(x, n)

    def commutator(self, x, y):
        """``x^-1 y^-1 x y``."""
        self.check(x)
        self.check(y)
        return self._mul(self._mul(self._inv(x), self._inv(y)), self._mul(x, y))

    def conjugate(self, x, b):
        """``b^-1 x b``."""
        self.check(x)
        self.check(b)
        return self._mul(self._mul(self._inv(b), x), b)

    def is_identity(self, x) -> bool:
        return x == self.identity()

    def element_order(self, x, cap: int = 64) -> int | None:
        """Least ``n <= cap`` with ``x**n == 1``, or None if not found."""
        if cap < 1:
            raise ValueError("cap must be positive")
        self.check(x)
        one = self.identity()
        y = x
        for n in range(1, cap + 1):
            if y == one:
                return n
            y = self._mul(y, x)
        return None

    def metabelian_witness(self, sampler: "WordSampler", n: int):
        """First sampled triple with ``[[x, y], z] != 1``, or None."""
        if n < 1:
            raise ValueError("sample count must be positive")
        for _ in range(n):
            x, y, z = sampler.element(), sampler.element(), sampler.element()
            if not self.is_identity(self.commutator(self.commutator(x, y), z)):
                return x, y, z
        return None

    def derived_abelian_witness(self, sampler: "WordSampler", n: int):
        """First sampled quadruple with ``[[x, y], [z, w]] != 1``, or None.

        This is the weaker condition that the commutator subgroup is abelian.
        """
        if n < 1:
            raise ValueError("sample count must be positive")
        for _ in range(n):
            x, y, z, w = (sampler.element() for _ in range(4))
            if not self.is_identity(self.commutator(self.commutator(x, y), self.commutator(z, w))):
                return x, y, z, w
        return None

    # -- internals -----------------------------------------------------

    def _pow(self, x, n: int):
        if n < 0:
            x = self._inv(x)
            n = -n
        result = self.identity()
        while n:
            if n & 1:
                result = self._mul(result, x)
            n >>= 1
            if n:
                x = self._mul(x, x)
        return result

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.descriptor}>"

    def __eq__(self, other) -> bool:
        return isinstance(other, Group) and other.descriptor == self.descriptor

    def __hash__(self) -> int:
        return hash(self.descriptor)


class WordSampler:
    """Seeded random words of length 1..max_length in the generators and inverses."""

    def __init__(self, group: Group, seed: int = 0, max_length: int = 8):
        if max_length < 1:
            raise ValueError("max_length must be positive")
        self.group = group
        self.max_length = max_length
        self._rng = random.Random(seed)
        gens = list(group.generators().values())
        letters = []
        for g in gens:
            letters.append(g)
            inv = group._inv(g)
            if inv != g:
                letters.append(inv)
        if not letters:
            letters = [group.identity()]
        self._letters = letters

    def element(self):
        rng = self._rng
        g = self.group
        x = g.identity()
        for _ in range(rng.randint(1, self.max_length)):
            x = g._mul(x, rng.choice(self._letters))
        return x

    def elements(self, n: int) -> list:
        return [self.element() for _ in range(n)]

    def pairs(self, n: int) -> list[tuple]:
        return [(self.element(), self.element()) for _ in range(n)]
