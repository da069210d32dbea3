"""T(2, K): invertible upper-triangular 2x2 matrices over Q or F_p (p odd).

An element (alpha, t, beta) is the matrix [[alpha, t], [0, beta]]. Named
subgroups: the unipotent matrices (alpha = beta = 1), the sign-diagonal
matrices (t = 0, alpha, beta = +-1) and the diagonal matrices (t = 0).
``tau`` projects onto the diagonal and is a homomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from jensen_lab.groups.core import Group
from jensen_lab.groups.fields import PrimeField, RationalField, valuation

# Real characters of Q* factor through prime valuations; we support these.
CHARACTER_PRIMES = (2, 3, 5, 7)


class TriangularElement(NamedTuple):
    alpha: object
    t: object
    beta: object


@dataclass(frozen=True)
class SubgroupFlags:
    in_unipotent: bool
    in_sign_diagonal: bool
    in_diagonal: bool


class Triangular2(Group):
    kind = "t2"

    def __init__(self, field: RationalField | PrimeField):
        self.field = field
        self.descriptor = "t2:" + field.name

    def identity(self):
        f = self.field
        return TriangularElement(f.one, f.zero, f.one)

    def element(self, alpha, t, beta) -> TriangularElement:
        f = self.field
        x = TriangularElement(f(alpha), f(t), f(beta))
        if x.alpha == f.zero or x.beta == f.zero:
            raise ValueError("diagonal entries must be nonzero")
        return x

    def unipotent(self, t) -> TriangularElement:
        return self.element(1, t, 1)

    def diagonal(self, alpha, beta) -> TriangularElement:
        return self.element(alpha, 0, beta)

    def _mul(self, x, y):
        f = self.field
        return TriangularElement(
            f.mul(x[0], y[0]),
            f.add(f.mul(x[0], y[1]), f.mul(x[1], y[2])),
            f.mul(x[2], y[2]),
        )

    def _inv(self, x):
        f = self.field
        ai = f.inv(x[0])
        bi = f.inv(x[2])
        return TriangularElement(ai, f.neg(f.mul(f.mul(x[1], ai), bi)), bi)

    def contains(self, x) -> bool:
        f = self.field
        return (
            type(x) is TriangularElement
            and all(f.contains(v) for v in x)
            and x[0] != f.zero
            and x[2] != f.zero
        )

    def encode(self, x) -> bytes:
        f = self.field
        return b"T" + f.encode(x[0]) + f.encode(x[1]) + f.encode(x[2])

    def generators(self):
        f = self.field
        if isinstance(f, PrimeField):
            g = f.primitive_root()
            return {
                "d1": self.diagonal(g, 1),
                "d2": self.diagonal(1, g),
                "e1": self.diagonal(-1, 1),
                "e2": self.diagonal(1, -1),
                "u": self.unipotent(1),
            }
        return {
            "d2": self.diagonal(2, 1),
            "d3": self.diagonal(1, 3),
            "e1": self.diagonal(-1, 1),
            "e2": self.diagonal(1, -1),
            "u": self.unipotent(1),
            "h": self.unipotent(Fraction(1, 2)),
        }

    def format(self, x) -> str:
        f = self.field
        return f"[{f.format(x[0])},{f.format(x[1])};0,{f.format(x[2])}]"

    @property
    def order(self):
        if isinstance(self.field, PrimeField):
            p = self.field.p
            return (p - 1) ** 2 * p
        return None

    def elements(self):
        if not isinstance(self.field, PrimeField):
            return super().elements()
        p = self.field.p
        units = range(1, p)
        return (
            TriangularElement(a, t, b) for a, t, b in itertools.product(units, range(p), units)
        )

    # -- subgroup structure -------------------------------------------

    def membership(self, x) -> SubgroupFlags:
        self.check(x)
        f = self.field
        one, minus = f.one, f.neg(f.one)
        diag = x[1] == f.zero
        return SubgroupFlags(
            in_unipotent=x[0] == one and x[2] == one,
            in_sign_diagonal=diag and x[0] in (one, minus) and x[2] in (one, minus),
            in_diagonal=diag,
        )

    def tau(self, x) -> TriangularElement:
        """Diagonal projection (alpha, t, beta) -> (alpha, 0, beta)."""
        self.check(x)
        return TriangularElement(x[0], self.field.zero, x[2])

    def factor(self, x) -> tuple[TriangularElement, TriangularElement]:
        """Split ``x = tau(x) * u`` with ``u`` unipotent."""
        d = self.tau(x)
        return d, self._mul(self._inv(d), x)

    def sign_diagonal_elements(self) -> list[TriangularElement]:
        f = self.field
        signs = (f.one, f.neg(f.one))
        return [TriangularElement(a, f.zero, b) for a in signs for b in signs]

    # -- characters -----------------------------------------------------

    @property
    def character_rank(self) -> int:
        if isinstance(self.field, PrimeField):
            return 0
        return 2 * len(CHARACTER_PRIMES)

    def character(self, weights: Sequence[float]):
        """Pullback through tau of a character of the diagonal subgroup.

        Over Q the weights are ``[w_alpha(p) for p in CHARACTER_PRIMES] +
        [w_beta(p) for p in CHARACTER_PRIMES]`` applied to p-adic valuations;
        signs are torsion and are ignored. Over F_p every real character is 0.
        """
        if isinstance(self.field, PrimeField):
            return super().character(weights)
        if len(weights) != self.character_rank:
            raise ValueError(f"expected {self.character_rank} weights")
        w = [float(v) for v in weights]
        r = len(CHARACTER_PRIMES)

        def chi(x) -> float:
            total = 0.0
            for i, p in enumerate(CHARACTER_PRIMES):
                if w[i]:
                    total += w[i] * _rational_valuation(x[0], p)
                if w[r + i]:
                    total += w[r + i] * _rational_valuation(x[2], p)
            return total

        return chi


def _rational_valuation(q: Fraction, p: int) -> int:
    return valuation(q.numerator, p) - valuation(q.denominator, p)
