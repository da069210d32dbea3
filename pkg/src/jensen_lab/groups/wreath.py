"""Restricted wreath product A wr C with C a finite power of C_2.

C is truncated to ``factors`` copies of the order-two group; its elements
are bitmasks (bit i-1 set means generator b_i is present), so the product
in C is XOR. An element is stored as (shift, values) meaning d * b with b
the mask ``shift`` and d in D = prod_{b in C} A(b) given by the sorted
tuple ``values`` of (key, a) pairs with a != 1; key 0 is the identity of C.

C acts on D by index translation, a(key) -> a(key * b), which is also
conjugation: b d b^-1 = d^b (every b is an involution). Hence

    (b1, d1)(b2, d2) = (b1 b2, d1 d2^{b1}).
"""

from __future__ import annotations

import itertools
from typing import NamedTuple, Sequence

from jensen_lab.groups.core import Group, encode_block, encode_int


class WreathElement(NamedTuple):
    shift: int
    values: tuple


class Wreath(Group):
    kind = "wreath"

    def __init__(self, base: Group, factors: int = 8):
        if factors < 1:
            raise ValueError("need at least one C_2 factor")
        self.base = base
        self.factors = factors
        self._size = 1 << factors
        self.descriptor = f"wreath:{base.descriptor}:{factors}"

    def identity(self):
        return WreathElement(0, ())

    def element(self, shift: int = 0, values: dict | None = None) -> WreathElement:
        """Build a canonical element from a mask and a key -> base element map."""
        if not 0 <= shift < self._size:
            raise ValueError(f"shift {shift} outside the {self.factors} configured factors")
        one = self.base.identity()
        items = []
        for key, a in (values or {}).items():
            if not 0 <= key < self._size:
                raise ValueError(f"index {key} outside the {self.factors} configured factors")
            self.base.check(a)
            if a != one:
                items.append((key, a))
        items.sort(key=lambda kv: kv[0])
        return WreathElement(shift, tuple(items))

    def lift(self, a, key: int = 0) -> WreathElement:
        """The element a(key) of the base copy indexed by ``key``."""
        return self.element(0, {key: a})

    def shift_generator(self, i: int) -> WreathElement:
        """b_i, 1-based."""
        if not 1 <= i <= self.factors:
            raise ValueError(f"generator index {i} out of range")
        return WreathElement(1 << (i - 1), ())

    def _mul(self, x, y):
        base = self.base
        one = base.identity()
        s = x[0]
        merged = dict(x[1])
        for key, a in y[1]:
            key ^= s
            prev = merged.get(key)
            merged[key] = a if prev is None else base._mul(prev, a)
        items = sorted(((k, a) for k, a in merged.items() if a != one), key=lambda kv: kv[0])
        return WreathElement(s ^ y[0], tuple(items))

    def _inv(self, x):
        base = self.base
        s = x[0]
        items = sorted(((key ^ s, base._inv(a)) for key, a in x[1]), key=lambda kv: kv[0])
        return WreathElement(s, tuple(items))

    def act(self, values: tuple, b: int) -> tuple:
        """d -> d^b, re-indexing every key by ``key * b``."""
        return tuple(sorted(((key ^ b, a) for key, a in values), key=lambda kv: kv[0]))

    def contains(self, x) -> bool:
        if type(x) is not WreathElement or type(x[0]) is not int:
            return False
        if not 0 <= x[0] < self._size or type(x[1]) is not tuple:
            return False
        one = self.base.identity()
        prev = -1
        for item in x[1]:
            if type(item) is not tuple or len(item) != 2:
                return False
            key, a = item
            if type(key) is not int or not prev < key < self._size:
                return False
            if a == one or not self.base.contains(a):
                return False
            prev = key
        return True

    def encode(self, x) -> bytes:
        parts = [b"W", encode_int(x[0]), encode_int(len(x[1]))]
        for key, a in x[1]:
            parts.append(encode_int(key))
            parts.append(encode_block(self.base.encode(a)))
        return b"".join(parts)

    def generators(self):
        gens = {f"b{i}": self.shift_generator(i) for i in range(1, self.factors + 1)}
        for name, a in self.base.generators().items():
            gens[f"{name}(1)"] = self.lift(a, 0)
        return gens

    def format(self, x) -> str:
        bits = [str(i + 1) for i in range(self.factors) if x[0] >> i & 1]
        vals = ", ".join(f"{self._format_key(k)}:{self.base.format(a)}" for k, a in x[1])
        return "{" + ",".join(bits) + "}|{" + vals + "}"

    def _format_key(self, key: int) -> str:
        return "b" + ".".join(str(i + 1) for i in range(self.factors) if key >> i & 1) if key else "1"

    @property
    def order(self):
        n = self.base.order
        if n is None:
            return None
        return self._size * n ** self._size

    @property
    def character_rank(self) -> int:
        return self.base.character_rank

    def character(self, weights: Sequence[float]):
        """Sum of the base character over every coordinate of the D part."""
        chi = self.base.character(weights)
        return lambda x: sum(chi(a) for _, a in x[1])

    def commuting_block_check(self, blocks: Sequence[tuple[int, object]]) -> bool:
        """Check that elements a_i(key_i) with distinct keys pairwise commute."""
        keys = [k for k, _ in blocks]
        if len(set(keys)) != len(keys):
            raise ValueError("precondition violated: block keys must be distinct")
        elems = [self.lift(a, k) for k, a in blocks]
        return all(
            self.is_identity(self.commutator(u, v)) for u, v in itertools.combinations(elems, 2)
        )
