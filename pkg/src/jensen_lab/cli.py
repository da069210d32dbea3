"""jensen-lab command line.

Exit codes: 0 when every residual is within tolerance, 1 when some check
fails, 2 for usage or configuration errors.
"""

from __future__ import annotations

import logging
import os
import sys
from typing import Callable

import click

from jensen_lab.analysis import GroupFunction
from jensen_lab.experiments import (
    classify_experiment,
    decompose_experiment,
    defect_experiment,
    order2_invariance_check,
    recovery_experiment,
    stabilize_experiment,
    t2_stability_experiment,
    verify_phi_exact,
    wreath_stability_experiment,
)
from jensen_lab.functions import (
    HeisenbergJensenParams,
    NoiseModel,
    character_function,
    heisenberg_jensen,
    noise_function,
    noisy_jensen,
    phi_function,
    quadratic_function,
    zero_function,
)
from jensen_lab.groups import GRAMMAR, Group, Heisenberg, Triangular2, Wreath, parse_group
from jensen_lab.report import ExperimentReport, render

log = logging.getLogger("jensen_lab")

FUNCTION_HELP = (
    "zero | phi | jensen:ALPHA,BETA,LAMBDA | char[:W1,W2,...] | quadratic | noise. "
    "Nonzero --eps adds seeded bounded noise."
)


class ConfigError(Exception):
    pass


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad {what}: {text!r}") from None


def _group(text: str) -> Group:
    try:
        return parse_group(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _model(eps: float, seed: int, dim: int = 1) -> NoiseModel:
    try:
        return NoiseModel(eps, seed, dim)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def build_function(group: Group, spec: str, eps: float, seed: int, dim: int = 1) -> GroupFunction:
    """Resolve a --function spec on ``group``, adding noise when eps > 0."""
    name, _, arg = spec.partition(":")
    model = _model(eps, seed, dim)
    if name == "noise":
        return noise_function(group, model)
    if dim != 1 and name != "zero":
        raise ConfigError("--dim > 1 is only available for zero and noise")
    if name == "zero":
        base = zero_function(group, dim)
    elif name in ("phi", "jensen"):
        if not isinstance(group, Heisenberg):
            raise ConfigError(f"{name} is defined on heisenberg only")
        if name == "phi":
            base = phi_function(group)
        else:
            vals = _floats(arg, "jensen coefficients")
            if len(vals) != 3:
                raise ConfigError("jensen needs ALPHA,BETA,LAMBDA")
            base = heisenberg_jensen(HeisenbergJensenParams(*vals), group)
    elif name == "char":
        weights = _floats(arg, "character weights") if arg else None
        try:
            base = character_function(group, weights)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    elif name == "quadratic":
        try:
            base = quadratic_function(group)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    else:
        raise ConfigError(f"unknown function {spec!r}")
    return noisy_jensen(base, model)


def _emit(report: ExperimentReport, fmt: str, out: str | None) -> None:
    text = render(report, fmt)
    if out is None or out == "-":
        click.echo(text, nl=False)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {out}: {exc.strerror or exc}") from None


def _run(fmt: str, out: str | None, make: Callable[[], ExperimentReport]) -> None:
    try:
        report = make()
        _emit(report, fmt, out)
    except (ConfigError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    log.info("%s finished in %.3fs: %s", report.experiment, report.wall_clock_s,
             "pass" if report.passed else "fail")
    if not report.passed:
        click.echo(f"FAIL: {', '.join(report.failures())}", err=True)
        sys.exit(1)


def output_options(fn):
    fn = click.option("--out", type=str, default=None, help="Write the report here instead of stdout.")(fn)
    fn = click.option(
        "--format", "fmt", type=click.Choice(["json", "text", "csv"]), default="json", show_default=True
    )(fn)
    return fn


def noise_options(fn):
    fn = click.option("--seed", type=int, default=0, show_default=True, help="Noise and sampling seed.")(fn)
    fn = click.option("--eps", type=float, default=0.0, show_default=True, help="Noise amplitude.")(fn)
    return fn


def function_options(fn):
    fn = click.option("--dim", type=int, default=1, show_default=True, help="Output dimension (zero, noise).")(fn)
    fn = click.option("--function", "fspec", default="phi", show_default=True, help=FUNCTION_HELP)(fn)
    fn = click.option("--group", "gspec", default="heisenberg", show_default=True, help="Group descriptor.")(fn)
    return fn


def stab_options(fn):
    fn = click.option("--k-max", type=int, default=60, show_default=True, help="Maximum doublings.")(fn)
    fn = click.option("--stab-tol", type=float, default=1e-9, show_default=True,
                      help="Target certified stabilization error.")(fn)
    return fn


@click.group(help=__doc__ + "\n\b\nGroup descriptors:\n" + GRAMMAR)
@click.version_option(package_name="jensen-lab")
def main() -> None:
    level = os.environ.get("JENSEN_LAB_LOG", "error").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@main.command("verify-phi")
@click.option("--radius", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--coeffs", default="0,0,1,-2", show_default=True,
              help="Integers A,B,C,D for A*m + B*n + C*mn + D*k.")
@output_options
def verify_phi_cmd(radius, coeffs, fmt, out):
    """Exact Jensen check of mn - 2k over the box [-R, R]^3 on H."""

    def make():
        try:
            vals = [int(v) for v in coeffs.split(",")]
        except ValueError:
            raise ConfigError(f"bad coefficients: {coeffs!r}") from None
        if len(vals) != 4:
            raise ConfigError("--coeffs needs four integers")
        return verify_phi_exact(radius, vals)

    _run(fmt, out, make)


@main.command("defect")
@function_options
@noise_options
@click.option("--pairs", type=click.IntRange(min=1), default=500, show_default=True)
@output_options
def defect_cmd(gspec, fspec, dim, eps, seed, pairs, fmt, out):
    """Sup Jensen defect over sampled pairs, checked against the analytic bound."""

    def make():
        g = _group(gspec)
        return defect_experiment(build_function(g, fspec, eps, seed, dim), pairs, seed)

    _run(fmt, out, make)


@main.command("stabilize")
@function_options
@noise_options
@stab_options
@click.option("--samples", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--base", type=click.IntRange(min=2), default=2, show_default=True)
@output_options
def stabilize_cmd(gspec, fspec, dim, eps, seed, stab_tol, k_max, samples, base, fmt, out):
    """Stabilize f on sampled elements; checks |f_hat - f| <= c_m."""

    def make():
        g = _group(gspec)
        f = build_function(g, fspec, eps, seed, dim)
        return stabilize_experiment(f, samples, seed, base, stab_tol, k_max)

    _run(fmt, out, make)


@main.command("decompose")
@function_options
@noise_options
@stab_options
@click.option("--samples", type=click.IntRange(min=1), default=200, show_default=True)
@output_options
def decompose_cmd(gspec, fspec, dim, eps, seed, stab_tol, k_max, samples, fmt, out):
    """Split f into its stabilization plus a part bounded by c_2."""

    def make():
        g = _group(gspec)
        f = build_function(g, fspec, eps, seed, dim)
        return decompose_experiment(f, samples, seed, stab_tol, k_max)

    _run(fmt, out, make)


@main.command("classify")
@function_options
@noise_options
@click.option("--samples", type=click.IntRange(min=1), default=200, show_default=True)
@click.option("--tol", type=float, default=1e-9, show_default=True)
@output_options
def classify_cmd(gspec, fspec, dim, eps, seed, samples, tol, fmt, out):
    """Sample evidence of membership in J, J0, KJ, PJ, B, KAM, PAM, Hom, KX, PX, X."""

    def make():
        g = _group(gspec)
        f = build_function(g, fspec, eps, seed, dim)
        return classify_experiment(f, samples, seed, tol)

    _run(fmt, out, make)


@main.command("recover")
@click.option("--group", "gspec", default="heisenberg", show_default=True)
@click.option("--alpha", type=float, required=True)
@click.option("--beta", type=float, required=True)
@click.option("--lambda", "lam", type=float, required=True)
@noise_options
@click.option("--tol", type=float, default=1e-6, show_default=True, help="Acceptance tolerance.")
@stab_options
@click.option("--samples", type=click.IntRange(min=1), default=1000, show_default=True)
@click.option("--pairs", type=click.IntRange(min=1), default=500, show_default=True)
@output_options
def recover_cmd(gspec, alpha, beta, lam, eps, seed, tol, stab_tol, k_max, samples, pairs, fmt, out):
    """Recover (alpha, beta, lambda) from a noisy Jensen function on H."""

    def make():
        if not isinstance(_group(gspec), Heisenberg):
            raise ConfigError("recover runs on heisenberg only")
        return recovery_experiment(
            HeisenbergJensenParams(alpha, beta, lam), _model(eps, seed), tol, stab_tol, k_max, samples, pairs
        )

    _run(fmt, out, make)


@main.command("t2")
@click.option("--group", "gspec", default="t2:fp:7", show_default=True, help="t2:q or t2:fp:<odd prime>.")
@click.option("--weights", default=None, help="Character weights (alpha valuations, then beta).")
@noise_options
@click.option("--tol", type=float, default=None, help="Acceptance tolerance [1e-6 finite, 1e-3 over Q].")
@click.option("--stab-tol", type=float, default=None, help="Stabilization target [1e-9 finite, 1e-3 over Q].")
@click.option("--k-max", type=int, default=None, help="Maximum doublings [60 finite, 14 over Q].")
@click.option("--samples", type=click.IntRange(min=1), default=100, show_default=True,
              help="Sample size over Q; finite fields are exhaustive.")
@output_options
def t2_cmd(gspec, weights, eps, seed, tol, stab_tol, k_max, samples, fmt, out):
    """Stability of a noisy pulled-back character on T(2, K)."""

    def make():
        g = _group(gspec)
        if not isinstance(g, Triangular2):
            raise ConfigError("t2 needs a t2:q or t2:fp:<p> group")
        w = _floats(weights, "weights") if weights else None
        return t2_stability_experiment(g, _model(eps, seed), w, tol, stab_tol, k_max, samples, samples)

    _run(fmt, out, make)


@main.command("wreath")
@click.option("--group", "gspec", default="wreath:z:8", show_default=True, help="wreath:<base>:<factors>.")
@click.option("--weights", default=None, help="Character weights on the base group.")
@noise_options
@click.option("--tol", type=float, default=1e-6, show_default=True)
@stab_options
@click.option("--pairs", type=click.IntRange(min=1), default=500, show_default=True)
@click.option("--commutators", type=click.IntRange(min=1), default=200, show_default=True)
@output_options
def wreath_cmd(gspec, weights, eps, seed, tol, stab_tol, k_max, pairs, commutators, fmt, out):
    """Stability of a noisy character on A wr (C_2)^F."""

    def make():
        g = _group(gspec)
        if not isinstance(g, Wreath):
            raise ConfigError("wreath needs a wreath:<base>:<factors> group")
        w = _floats(weights, "weights") if weights else None
        return wreath_stability_experiment(
            g.base, g.factors, _model(eps, seed), w, tol, stab_tol, k_max, pairs, min(commutators, pairs)
        )

    _run(fmt, out, make)


@main.command("invariance")
@function_options
@noise_options
@stab_options
@click.option("--tol", type=float, default=1e-6, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=200, show_default=True)
@output_options
def invariance_cmd(gspec, fspec, dim, eps, seed, stab_tol, k_max, tol, samples, fmt, out):
    """f_hat(b^-1 x b) = f_hat(x) for sampled involutions b."""

    def make():
        g = _group(gspec)
        f = build_function(g, fspec, eps, seed, dim)
        return order2_invariance_check(g, f, tol, samples, seed, stab_tol, k_max)

    _run(fmt, out, make)


if __name__ == "__main__":
    main()
