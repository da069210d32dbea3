"""Concrete group functions: seeded bounded noise, characters and the Jensen family on H.

Noise is a pure function of (seed, canonical encoding, coordinate): each
coordinate is ``eps * (2u - 1)`` with ``u = (z >> 11) * 2**-53`` and
``z = splitmix64(seed ^ H(enc) ^ i)``, where ``H`` starts from the encoding
length and absorbs zero-padded 8-byte big-endian words through splitmix64.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from jensen_lab import kernels
from jensen_lab.analysis import GroupFunction
from jensen_lab.groups import Group, Heisenberg, HeisenbergElement


@dataclass(frozen=True)
class NoiseModel:
    epsilon: float
    seed: int = 0
    dim: int = 1

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")
        if not 0 <= self.seed < 1 << 64:
            raise ValueError("seed must fit in 64 unsigned bits")


def bounded_noise(model: NoiseModel, group: Group, x) -> np.ndarray:
    return np.array(
        kernels.noise_values(group.encode(x), model.seed, model.dim, float(model.epsilon))
    )


def noise_function(group: Group, model: NoiseModel) -> GroupFunction:
    """u with |u|_inf <= eps, so its Jensen defect is at most 4 eps."""
    enc = group.encode
    seed, dim, eps = model.seed, model.dim, float(model.epsilon)
    noise = kernels.noise_values
    return GroupFunction(
        group,
        lambda x: noise(enc(x), seed, dim, eps),
        dim,
        name=f"noise(eps={model.epsilon},seed={model.seed})",
        defect_bound=4.0 * eps * np.sqrt(dim),
    )


def noisy_jensen(j: GroupFunction, model: NoiseModel) -> GroupFunction:
    """f = j + u for an exact Jensen function j."""
    if model.dim != j.dim:
        raise ValueError("noise and function dimensions differ")
    if model.epsilon == 0:
        return j
    u = noise_function(j.group, model)
    f = GroupFunction(
        j.group,
        lambda x: j(x) + u(x),
        j.dim,
        name=f"{j.name}+{u.name}",
        defect_bound=(j.defect_bound or 0.0) + u.defect_bound,
    )
    return f


def heisenberg_phi(x: HeisenbergElement) -> int:
    """m*n - 2k, an exact Jensen function vanishing at 1 that is not a character."""
    return x[0] * x[1] - 2 * x[2]


@dataclass(frozen=True)
class HeisenbergJensenParams:
    alpha: float
    beta: float
    lam: float


def heisenberg_jensen(params: HeisenbergJensenParams, group: Heisenberg | None = None) -> GroupFunction:
    """j(m, n, k) = alpha*m + beta*n + lam*(mn - 2k), exact Jensen with j(1) = 0."""
    group = group or Heisenberg()
    a, b, lam = float(params.alpha), float(params.beta), float(params.lam)

    def j(x):
        # phi is formed exactly in integers before widening
        return a * x[0] + b * x[1] + lam * float(heisenberg_phi(x))

    return GroupFunction(
        group, j, 1, name=f"jensen({params.alpha},{params.beta},{params.lam})", defect_bound=0.0
    )


def phi_function(group: Heisenberg | None = None) -> GroupFunction:
    return heisenberg_jensen(HeisenbergJensenParams(0.0, 0.0, 1.0), group)


def character_function(group: Group, weights: Sequence[float] | None = None) -> GroupFunction:
    if weights is None:
        weights = [1.0] * group.character_rank
    chi = group.character(list(weights))
    w = ",".join(f"{float(v):g}" for v in weights)
    return GroupFunction(group, chi, 1, name=f"char({w})", defect_bound=0.0)


def zero_function(group: Group, dim: int = 1) -> GroupFunction:
    zero = [0.0] * dim
    return GroupFunction(group, lambda x: zero, dim, name="zero", defect_bound=0.0)


def quadratic_function(group: Group) -> GroupFunction:
    """Sum of squared coordinates on Z^d: unbounded Jensen defect 2|y|^2."""
    if group.kind != "free_abelian":
        raise ValueError("quadratic is defined on z and z^d only")
    return GroupFunction(group, lambda x: float(sum(v * v for v in x)), 1, name="quadratic")


def table_function(
    group: Group,
    table: dict,
    default: float | Sequence[float] = 0.0,
    dim: int = 1,
    defect_bound: float | None = None,
    name: str = "table",
) -> GroupFunction:
    """Function read from a finite table; unknown elements map to ``default``."""
    return GroupFunction(
        group, lambda x: table.get(x, default), dim, name=name, defect_bound=defect_bound
    )
