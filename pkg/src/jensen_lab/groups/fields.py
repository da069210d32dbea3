"""Exact scalar fields: the rationals and prime fields of odd characteristic."""

from __future__ import annotations

from fractions import Fraction

from jensen_lab.groups.core import encode_int


class CharacteristicTwoError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the nonzero integer ``n``."""
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        q, e = p, 1
        while n % (q * q) == 0:
            q *= q
            e *= 2
        n //= q
        v += e
    return v


class RationalField:
    characteristic = 0
    name = "q"

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    zero = Fraction(0)
    one = Fraction(1)

    def contains(self, v) -> bool:
        return type(v) is Fraction

    def add(self, u, v):
        return u + v

    def sub(self, u, v):
        return u - v

    def mul(self, u, v):
        return u * v

    def neg(self, u):
        return -u

    def inv(self, u):
        return 1 / u

    def encode(self, v: Fraction) -> bytes:
        return encode_int(v.numerator) + encode_int(v.denominator)

    def format(self, v) -> str:
        return str(v)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")


class PrimeField:
    """F_p with least nonnegative residues; p must be an odd prime."""

    def __init__(self, p: int):
        if p == 2:
            raise CharacteristicTwoError("characteristic two not supported")
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"fp:{p}"
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def contains(self, v) -> bool:
        return type(v) is int and 0 <= v < self.p

    def add(self, u, v):
        return (u + v) % self.p

    def sub(self, u, v):
        return (u - v) % self.p

    def mul(self, u, v):
        return u * v % self.p

    def neg(self, u):
        return -u % self.p

    def inv(self, u):
        return pow(u, -1, self.p)

    def encode(self, v: int) -> bytes:
        return encode_int(v)

    def format(self, v) -> str:
        return str(v)

    def primitive_root(self) -> int:
        p = self.p
        phi = p - 1
        factors = [q for q in range(2, phi + 1) if phi % q == 0 and is_prime(q)]
        for g in range(2, p):
            if all(pow(g, phi // q, p) != 1 for q in factors):
                return g
        return 1  # p == 3 has root 2, so only reached for p <= 2

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))
