"""Parse group descriptor strings.

Grammar::

    heisenberg          Heisenberg group H (UT(3, Z))
    z                   integers
    z^d:<rank>          Z^rank
    zn:<modulus>        Z / modulus
    t2:q                T(2, Q)
    t2:fp:<odd prime>   T(2, F_p)
    wreath:<base>:<n>   base wr (C_2)^n; <base> is any descriptor
    <g1>*<g2>*...       direct product, e.g. wreath:z*zn:3:8
"""

from __future__ import annotations

from jensen_lab.groups.abelian import Cyclic, DirectProduct, FreeAbelian
from jensen_lab.groups.core import Group
from jensen_lab.groups.fields import PrimeField, RationalField
from jensen_lab.groups.heisenberg import Heisenberg
from jensen_lab.groups.triangular import Triangular2
from jensen_lab.groups.wreath import Wreath

GRAMMAR = __doc__.split("Grammar::", 1)[1].strip("\n")


class DescriptorError(ValueError):
    pass


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise DescriptorError(f"bad {what}: {text!r}") from None


def parse_group(text: str) -> Group:
    text = text.strip()
    if not text:
        raise DescriptorError("empty group descriptor")
    if text.startswith("wreath:"):
        body = text[len("wreath:"):]
        if ":" not in body:
            raise DescriptorError("wreath needs wreath:<base>:<factors>")
        base_text, factors = body.rsplit(":", 1)
        n = _int(factors, "factor count")
        if n < 1:
            raise DescriptorError("factor count must be positive")
        return Wreath(parse_group(base_text), n)
    if "*" in text:
        return DirectProduct([parse_group(part) for part in text.split("*")])
    if text == "heisenberg":
        return Heisenberg()
    if text == "z":
        return FreeAbelian(1)
    if text.startswith("z^d:"):
        rank = _int(text[4:], "rank")
        if rank < 1:
            raise DescriptorError("rank must be positive")
        return FreeAbelian(rank)
    if text.startswith("zn:"):
        mod = _int(text[3:], "modulus")
        if mod < 1:
            raise DescriptorError("modulus must be positive")
        return Cyclic(mod)
    if text == "t2:q":
        return Triangular2(RationalField())
    if text.startswith("t2:fp:"):
        p = _int(text[6:], "prime")
        try:
            field = PrimeField(p)
        except ValueError as exc:
            if p == 2:
                raise
            raise DescriptorError(str(exc)) from None
        return Triangular2(field)
    raise DescriptorError(f"unknown group descriptor {text!r}")
