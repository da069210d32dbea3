"""Exact group arithmetic for the groups used in the stability experiments."""

from jensen_lab.groups.abelian import Cyclic, DirectProduct, FreeAbelian
from jensen_lab.groups.core import INT_ZERO, Group, GroupError, WordSampler, encode_int
from jensen_lab.groups.descriptor import GRAMMAR, DescriptorError, parse_group
from jensen_lab.groups.fields import CharacteristicTwoError, PrimeField, RationalField
from jensen_lab.groups.heisenberg import (
    Heisenberg,
    HeisenbergElement,
    heisenberg_to_ut3,
    matmul3,
    ut3_to_heisenberg,
)
from jensen_lab.groups.triangular import SubgroupFlags, Triangular2, TriangularElement
from jensen_lab.groups.wreath import Wreath, WreathElement

__all__ = [
    "INT_ZERO",
    "GRAMMAR",
    "CharacteristicTwoError",
    "Cyclic",
    "DescriptorError",
    "DirectProduct",
    "FreeAbelian",
    "Group",
    "GroupError",
    "Heisenberg",
    "HeisenbergElement",
    "PrimeField",
    "RationalField",
    "SubgroupFlags",
    "Triangular2",
    "TriangularElement",
    "WordSampler",
    "Wreath",
    "WreathElement",
    "encode_int",
    "heisenberg_to_ut3",
    "matmul3",
    "parse_group",
    "ut3_to_heisenberg",
]
