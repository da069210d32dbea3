"""Defect functionals, the constant ladder and the doubling-limit stabilizer.

Functions take values in R^d (Euclidean norm). For a quasi-Jensen ``f``
with defect bound ``c`` the ladder

    c_1 = c + 2|f(1)|,  c_2 = c + |f(1)|,  c_3 = c + c_1,
    c_m = c + c_1 + c_{m-2}  (m > 3)

bounds |f(x^m) - m f(x)|, and the scaled powers m^-k f(x^(m^k)) form a
Cauchy sequence whose consecutive terms differ by at most c_m / m^k. The
limit f_hat is pseudo-Jensen and lies within c_2 of f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from jensen_lab.groups import Group, WordSampler


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, result: "StabilizationResult"):
        super().__init__(message)
        self.result = result


class GroupFunction:
    """A deterministic map from group elements to R^dim.

    ``defect_bound`` is an analytic upper bound on the Jensen defect when
    one is known (it makes stabilization error bounds certified).
    """

    def __init__(
        self,
        group: Group,
        evaluate: Callable[[Any], Any],
        dim: int = 1,
        *,
        name: str = "f",
        defect_bound: float | None = None,
        memoize: bool = True,
    ):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.group = group
        self.dim = dim
        self.name = name
        self.defect_bound = defect_bound
        self._evaluate = evaluate
        self._memo: dict | None = {} if memoize else None

    def __call__(self, x) -> np.ndarray:
        memo = self._memo
        if memo is not None:
            hit = memo.get(x)
            if hit is not None:
                return hit
        v = np.array(self._evaluate(x), dtype=np.float64).reshape(self.dim)
        if not np.all(np.isfinite(v)):
            raise ValueError(f"{self.name} returned a non-finite value at {x!r}")
        v.flags.writeable = False
        if memo is not None:
            memo[x] = v
        return v

    def at_identity(self) -> np.ndarray:
        return self(self.group.identity())

    def __add__(self, other: "GroupFunction") -> "GroupFunction":
        if other.group != self.group or other.dim != self.dim:
            raise ValueError("can only add functions on the same group and dimension")
        bound = None
        if self.defect_bound is not None and other.defect_bound is not None:
            bound = self.defect_bound + other.defect_bound
        return GroupFunction(
            self.group,
            lambda x: self(x) + other(x),
            self.dim,
            name=f"{self.name}+{other.name}",
            defect_bound=bound,
        )

    def __repr__(self) -> str:
        return f"GroupFunction({self.name!r} on {self.group.descriptor}, dim={self.dim})"


def norm(v: np.ndarray) -> float:
    return float(math.sqrt(float(np.dot(v, v))))


# -- defects ----------------------------------------------------------------


def jensen_defect(f: GroupFunction, x, y) -> float:
    """|f(xy) + f(xy^-1) - 2 f(x)|."""
    g = f.group
    return norm(f(g._mul(x, y)) + f(g._mul(x, g._inv(y))) - 2.0 * f(x))


def max_jensen_defect(f: GroupFunction, pairs: Iterable[tuple]) -> tuple[float, tuple | None]:
    """Largest defect over ``pairs`` and the first pair attaining it."""
    best, witness = 0.0, None
    for x, y in pairs:
        d = jensen_defect(f, x, y)
        if d > best or witness is None:
            best, witness = d, (x, y)
    return best, witness


def sup_jensen_defect(f: GroupFunction, sampler: WordSampler, n: int) -> tuple[float, tuple | None]:
    if n < 1:
        raise ValueError("need at least one sample")
    return max_jensen_defect(f, sampler.pairs(n))


def ladder_pairs(group: Group, x, m_max: int) -> list[tuple]:
    """The argument pairs the ladder bound up to ``m_max`` is derived from.

    These are (1, x^j) and (x, x^j) for 1 <= j < m_max; a defect bound
    measured over them makes the ladder bound hold exactly at ``x``.
    """
    one = group.identity()
    out = []
    for j in range(1, max(m_max, 2)):
        xj = group._pow(x, j)
        out.append((one, xj))
        out.append((x, xj))
    return out


def additive_defect(f: GroupFunction, x, y) -> float:
    """|f(xy) - f(x) - f(y)|."""
    return norm(f(f.group._mul(x, y)) - f(x) - f(y))


def homogeneity_deviation(f: GroupFunction, x, n: int) -> float:
    """|f(x^n) - n f(x)|."""
    return norm(f(f.group._pow(x, n)) - n * f(x))


def power_deviation(f: GroupFunction, x, m: int) -> float:
    if m < 1:
        raise ValueError("m must be positive")
    return homogeneity_deviation(f, x, m)


# -- the ladder ---------------------------------------------------------------


@dataclass(frozen=True)
class ConstantLadder:
    c: float
    f1_norm: float
    values: tuple[float, ...]

    def __getitem__(self, m: int) -> float:
        """c_m, 1-based."""
        if m < 1:
            raise IndexError("ladder is indexed from 1")
        return self.values[m - 1]

    def __len__(self) -> int:
        return len(self.values)


def constant_ladder(c: float, f1_norm: float, m_max: int) -> ConstantLadder:
    if c < 0 or f1_norm < 0:
        raise ValueError("c and |f(1)| must be nonnegative")
    if m_max < 1:
        raise ValueError("m_max must be positive")
    vals = [c + 2.0 * f1_norm, c + f1_norm]
    if m_max >= 3:
        vals.append(c + vals[0])
    for m in range(4, m_max + 1):
        vals.append(c + vals[0] + vals[m - 3])
    return ConstantLadder(float(c), float(f1_norm), tuple(vals[:m_max]))


# -- stabilization ------------------------------------------------------------


def scaled_power(f: GroupFunction, x, m: int, k: int) -> np.ndarray:
    """m^-k f(x^(m^k)); the group power is exact, the scale is applied once."""
    if m < 2 or k < 0:
        raise ValueError("need m >= 2 and k >= 0")
    y = f.group._pow(x, m**k)
    return f(y) / float(m**k)


@dataclass(frozen=True)
class StabilizationResult:
    value: np.ndarray
    base: int
    iterations: int
    certified_error: float
    converged: bool
    # True when x^(m^k) revisited an earlier power, so the limit is exactly 0
    periodic: bool = False


def _resolve_bound(f: GroupFunction, c: float | None) -> float:
    if c is None:
        c = f.defect_bound
    if c is None:
        raise ValueError(f"{f.name} has no defect bound; measure one and pass c=")
    return float(c)


def stabilize(
    f: GroupFunction,
    x,
    m: int = 2,
    tol: float = 1e-9,
    k_max: int = 60,
    c: float | None = None,
) -> StabilizationResult:
    """Approximate f_hat(x) = lim m^-k f(x^(m^k)) with a certified error.

    Iterates until the tail bound c_m m^(1-k) / (m-1) is at most ``tol`` or
    ``k_max`` is reached (then ``converged`` is False). If the powers of x
    cycle (finite order), the limit is exactly zero.
    """
    if m < 2:
        raise ValueError("base must be at least 2")
    if tol <= 0 or k_max < 1:
        raise ValueError("need tol > 0 and k_max >= 1")
    g = f.group
    bound = _resolve_bound(f, c)
    cm = constant_ladder(bound, norm(f.at_identity()), m)[m]
    seen = {x}
    y = x
    value = f(x)
    cert = math.inf
    for k in range(1, k_max + 1):
        y = g._pow(y, m)
        if y in seen:
            return StabilizationResult(np.zeros(f.dim), m, k, 0.0, True, periodic=True)
        seen.add(y)
        value = f(y) / float(m**k)
        cert = cm * float(m) ** (1 - k) / (m - 1)
        if cert <= tol:
            return StabilizationResult(value, m, k, cert, True)
    return StabilizationResult(value, m, k_max, cert, False)


def stabilized(
    f: GroupFunction,
    m: int = 2,
    tol: float = 1e-9,
    k_max: int = 60,
    c: float | None = None,
) -> GroupFunction:
    """f_hat as a memoized GroupFunction.

    Its defect bound is 4 c_m + c, which holds for the exact limit; the
    approximation adds at most 4 tol on top when every point converged.
    """
    bound = _resolve_bound(f, c)
    cm = constant_ladder(bound, norm(f.at_identity()), m)[m]
    results: dict = {}

    def evaluate(x):
        r = stabilize(f, x, m, tol, k_max, bound)
        results[x] = r
        return r.value

    fh = GroupFunction(f.group, evaluate, f.dim, name=f"hat({f.name})", defect_bound=4 * cm + bound)
    fh.results = results  # type: ignore[attr-defined]
    return fh


@dataclass
class Decomposition:
    pseudo: dict
    bounded: dict
    c2: float
    max_bounded_norm: float
    max_certified_error: float
    all_converged: bool

    @property
    def bound_ok(self) -> bool:
        return self.max_bounded_norm <= self.c2 + self.max_certified_error


def decompose(
    f: GroupFunction,
    sample: Iterable,
    tol: float = 1e-9,
    m: int = 2,
    k_max: int = 60,
    c: float | None = None,
) -> Decomposition:
    """Split f on ``sample`` into its pseudo-Jensen part f_hat and the bounded rest."""
    bound = _resolve_bound(f, c)
    c2 = constant_ladder(bound, norm(f.at_identity()), 2)[2]
    pseudo, rest = {}, {}
    worst, cert, ok = 0.0, 0.0, True
    for x in sample:
        if x in pseudo:
            continue
        r = stabilize(f, x, m, tol, k_max, bound)
        pseudo[x] = r.value
        rest[x] = f(x) - r.value
        worst = max(worst, norm(rest[x]))
        cert = max(cert, r.certified_error)
        ok = ok and r.converged
    return Decomposition(pseudo, rest, c2, worst, cert, ok)


# -- additivity and classification ----------------------------------------------


@dataclass
class AdditivityReport:
    bound: float
    witness: tuple | None
    symmetry_gap: float
    symmetry_witness: tuple | None


def commuting_additivity_bound(
    f: GroupFunction, sampler: WordSampler, n: int, sym_tol: float = 1e-9
) -> AdditivityReport:
    """Max additive defect on sampled pairs, with a check that f(xy) = f(yx)."""
    g = f.group
    best, witness = 0.0, None
    gap, sym_witness = 0.0, None
    for x, y in sampler.pairs(n):
        d = additive_defect(f, x, y)
        if d > best or witness is None:
            best, witness = d, (x, y)
        s = norm(f(g._mul(x, y)) - f(g._mul(y, x)))
        if s > gap:
            gap = s
            if s > sym_tol and sym_witness is None:
                sym_witness = (x, y)
    return AdditivityReport(best, witness, gap, sym_witness)


SPACES = ("J", "J0", "KJ", "PJ", "B", "KAM", "PAM", "Hom", "KX", "PX", "X")

# (stronger, weaker): evidence for the first implies the second
CONTAINMENTS = (
    ("J0", "J"),
    ("J", "KJ"),
    ("PJ", "KJ"),
    ("B", "KJ"),
    ("KAM", "KJ"),
    ("PAM", "PJ"),
    ("PAM", "KAM"),
    ("Hom", "J0"),
    ("Hom", "PAM"),
    ("X", "Hom"),
    ("PX", "PAM"),
    ("KX", "KAM"),
    ("X", "PX"),
    ("PX", "KX"),
)


@dataclass
class FunctionClassification:
    flags: dict[str, bool]
    measurements: dict[str, float]
    forced: list[tuple[str, str]] = field(default_factory=list)
    tol: float = 0.0
    sample_size: int = 0

    def __getitem__(self, space: str) -> bool:
        return self.flags[space]

    def evidenced(self) -> list[str]:
        return [s for s in SPACES if self.flags[s]]


def classify(
    f: GroupFunction,
    sampler: WordSampler,
    n: int,
    tol: float = 1e-9,
    scale: int = 16,
    exponents: Sequence[int] = (-3, -2, -1, 2, 3, 4),
) -> FunctionClassification:
    """Sample-based membership evidence for the function spaces.

    A quantity counts as bounded when its maximum over pairs scaled to
    (x^scale, y^scale) is at most twice its maximum over the base pairs
    plus ``tol``; it counts as vanishing when its maximum is <= ``tol``.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    g = f.group
    pairs = sampler.pairs(n)
    scaled = [(g._pow(x, scale), g._pow(y, scale)) for x, y in pairs]
    points = [x for x, _ in pairs]
    spoints = [x for x, _ in scaled]

    def peak(fn, items):
        return max((fn(*it) for it in items), default=0.0)

    jen = peak(lambda x, y: jensen_defect(f, x, y), pairs)
    jen_s = peak(lambda x, y: jensen_defect(f, x, y), scaled)
    add = peak(lambda x, y: additive_defect(f, x, y), pairs)
    add_s = peak(lambda x, y: additive_defect(f, x, y), scaled)
    sup = max(norm(f(x)) for x in points)
    sup_s = max(norm(f(x)) for x in spoints)
    hom = max(homogeneity_deviation(f, x, e) / abs(e) for x in points for e in exponents)
    f1 = norm(f.at_identity())

    def bounded(base: float, big: float) -> bool:
        return big <= 2.0 * base + tol

    homog = hom <= tol
    raw = {
        "J": max(jen, jen_s) <= tol,
        "KJ": bounded(jen, jen_s),
        "B": bounded(sup, sup_s),
        "KAM": bounded(add, add_s),
        "Hom": max(add, add_s) <= tol,
    }
    raw["J0"] = raw["J"] and f1 <= tol
    raw["PJ"] = raw["KJ"] and homog
    raw["PAM"] = raw["KAM"] and homog
    real = f.dim == 1
    raw["KX"] = real and raw["KAM"]
    raw["PX"] = real and raw["PAM"]
    raw["X"] = real and raw["Hom"]

    flags = dict(raw)
    forced = []
    changed = True
    while changed:
        changed = False
        for strong, weak in CONTAINMENTS:
            if weak in ("KX", "PX", "X") and not real:
                continue
            if flags[strong] and not flags[weak]:
                flags[weak] = True
                forced.append((strong, weak))
                changed = True
    measurements = {
        "jensen_defect": jen,
        "jensen_defect_scaled": jen_s,
        "additive_defect": add,
        "additive_defect_scaled": add_s,
        "sup_norm": sup,
        "sup_norm_scaled": sup_s,
        "homogeneity_deviation": hom,
        "f1_norm": f1,
    }
    return FunctionClassification(
        {s: flags[s] for s in SPACES}, measurements, forced, tol, n
    )
