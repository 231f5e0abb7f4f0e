"""Command-line front end: kernel profiles, scaling limits, verification reports.

Profiles are written as CSV (plot-ready), reports as JSON (CI-ready).  Output
is deterministic: fixed 17-significant-digit formatting, '.' decimal
separator, '\n' line endings; divergent puncture samples are written as
"inf", never NaN.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import click
import numpy as np

from . import scaling, verify
from .kernel import kernel_profile, spindle_kernel_closed
from .models import MODEL_NAMES, SpindleParams, model_by_name, poincare_disc_model
from .verify import DEFAULT_P_SET


def _fmt(x: float) -> str:
    return "%.17g" % x


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    count: int
    spacing: str  # 'linear' | 'geometric'

    def points(self) -> np.ndarray:
        if self.spacing == "geometric":
            return np.geomspace(self.lo, self.hi, self.count + 1)
        return np.linspace(self.lo, self.hi, self.count + 1)


def parse_grid(text: str) -> GridSpec:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise click.ClickException(f"grid {text!r} is not MIN:MAX:COUNT[:geo]")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise click.ClickException(f"grid {text!r} has non-numeric fields")
    spacing = "linear"
    if len(parts) == 4:
        if parts[3] != "geo":
            raise click.ClickException(f"grid spacing must be 'geo', got {parts[3]!r}")
        spacing = "geometric"
    if count < 2:
        raise click.ClickException(f"grid count must be >= 2, got {count}")
    if not lo < hi:
        raise click.ClickException(f"grid needs min < max, got {lo} >= {hi}")
    if spacing == "geometric" and lo <= 0:
        raise click.ClickException("geometric grids need min > 0")
    return GridSpec(lo, hi, count, spacing)


def _write(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _table_text(fmt: str, command: str, meta: dict, columns: tuple[str, str], rows) -> str:
    if fmt == "csv":
        lines = [",".join(columns)]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    payload = {
        "command": command,
        **meta,
        "columns": list(columns),
        "rows": [[v if math.isfinite(v) else "inf" for v in row] for row in rows],
    }
    return json.dumps(payload, indent=2) + "\n"


_format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)
_out_option = click.option("--out", default="-", show_default=True, help="output path or - for stdout")


@click.group()
def main() -> None:
    """Kernel density profiles and asymptotic verification on singular surfaces."""


@main.command()
@click.option("--model", "model_name", type=click.Choice(MODEL_NAMES), default="spindle", show_default=True)
@click.option("--a", type=float, default=None, help="cone order in (0, 1]")
@click.option("--nu", type=float, default=None, help="flux / pole strength")
@click.option("--s", "s_int", type=int, default=None,
              help="integer 1/a: use the roots-of-unity closed form (fluxless)")
@click.option("--p", type=int, required=True)
@click.option("--grid", "grid_text", required=True, help="radius grid MIN:MAX:COUNT[:geo]")
@_out_option
@_format_option
def profile(model_name, a, nu, s_int, p, grid_text, out, fmt):
    """Kernel density P_p over a radius grid."""
    grid = parse_grid(grid_text)
    radii = grid.points()
    if p < 1:
        raise click.ClickException(f"p must be >= 1, got {p}")
    try:
        if s_int is not None:
            if model_name != "spindle" or (nu not in (None, 0.0)):
                raise click.ClickException("--s selects the fluxless spindle closed form")
            if a is not None and abs(a - 1.0 / s_int) > 1e-12:
                raise click.ClickException(f"--s {s_int} conflicts with --a {a}")
            values = [spindle_kernel_closed(s_int, p, float(r)) for r in radii]
            rows = list(zip(radii.tolist(), values))
            meta = {"model": "spindle", "s": s_int, "p": p}
        else:
            model = model_by_name(model_name, a, nu)
            lo, hi = model.domain
            if radii[0] < lo or radii[-1] >= hi:
                raise click.ClickException(
                    f"grid [{radii[0]}, {radii[-1]}] leaves the model domain [{lo}, {hi})"
                )
            prof = kernel_profile(model, p, radii)
            rows = list(zip(prof.radii, prof.values))
            meta = {"model": model.name, "p": p}
    except click.ClickException:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise click.ClickException(str(exc))
    _write(out, _table_text(fmt, "profile", meta, ("r", "P_p"), rows))


@main.command()
@click.option("--model", "model_name", type=click.Choice(["spindle", "spindle-pole"]),
              default="spindle", show_default=True)
@click.option("--a", type=float, default=0.5, show_default=True)
@click.option("--nu", type=float, default=0.0, show_default=True)
@click.option("--p", type=int, required=True)
@click.option("--grid", "grid_text", required=True, help="y grid MIN:MAX:COUNT[:geo]")
@_out_option
@_format_option
def scaled(model_name, a, nu, p, grid_text, out, fmt):
    """Rescaled profile F_p(y) = P_p((a y / p)^(1/2a)) / p."""
    grid = parse_grid(grid_text)
    variant = "flux" if model_name == "spindle" else "pole"
    try:
        prof = scaling.scaled_profile(SpindleParams(a, nu), p, grid.points(), variant)
    except (ValueError, ArithmeticError) as exc:
        raise click.ClickException(str(exc))
    rows = list(zip(prof.y, prof.values))
    meta = {"model": model_name, "a": a, "nu": nu, "p": p}
    _write(out, _table_text(fmt, "scaled", meta, ("y", "F_p"), rows))


@main.command()
@click.option("--a", type=float, required=True)
@click.option("--nu", type=float, default=0.0, show_default=True)
@click.option("--theta", type=float, default=None,
              help="subsequence limit point: use the growing-pole limit profile")
@click.option("--grid", "grid_text", required=True, help="y grid MIN:MAX:COUNT[:geo]")
@_out_option
@_format_option
def limit(a, nu, theta, grid_text, out, fmt):
    """Mittag-Leffler limit profile of the scaled kernels."""
    grid = parse_grid(grid_text)
    params = SpindleParams(a, nu)
    try:
        if theta is None:
            values = [scaling.limit_profile(params, float(y)) for y in grid.points()]
        else:
            values = [scaling.pole_limit_profile(params, theta, float(y)) for y in grid.points()]
    except (ValueError, ArithmeticError) as exc:
        raise click.ClickException(str(exc))
    rows = list(zip(grid.points().tolist(), values))
    meta = {"a": a, "nu": nu, "theta": theta}
    _write(out, _table_text(fmt, "limit", meta, ("y", "F_limit"), rows))


@main.command()
@click.option("--a", type=float, required=True)
@click.option("--nu", type=float, required=True)
@click.option("--p", type=int, default=None)
@click.option("--p-list", "p_list", default=None, help="comma-separated powers")
@_out_option
@_format_option
def theta(a, nu, p, p_list, out, fmt):
    """Pole-position sequence j_p - p nu, confined to (-a, 1-a]."""
    if (p is None) == (p_list is None):
        raise click.ClickException("pass exactly one of --p or --p-list")
    ps = [p] if p is not None else [int(tok) for tok in p_list.split(",")]
    try:
        params = SpindleParams(a, nu)
        rows = [(float(pp), scaling.theta_sequence(params, pp)) for pp in ps]
    except (ValueError, ArithmeticError) as exc:
        raise click.ClickException(str(exc))
    meta = {"a": a, "nu": nu}
    _write(out, _table_text(fmt, "theta", meta, ("p", "theta"), rows))


@main.command(name="verify")
@click.option("--model", "model_name", type=click.Choice(MODEL_NAMES), required=True)
@click.option("--suite", type=click.Choice(["bounds", "corollary", "gamma", "b0", "amm"]),
              default="bounds", show_default=True)
@click.option("--a", type=float, default=None)
@click.option("--nu", type=float, default=None)
@click.option("--eta", type=float, default=0.5, show_default=True)
@click.option("--r", "r_point", type=float, default=None, help="radius for the b0 suite")
@click.option("--p-list", "p_list", default=None, help="comma-separated powers")
@_out_option
def verify_cmd(model_name, suite, a, nu, eta, r_point, p_list, out):
    """Run one verification suite and emit its JSON report."""
    try:
        model = model_by_name(model_name, a, nu)
        p_set = (
            tuple(int(tok) for tok in p_list.split(",")) if p_list else DEFAULT_P_SET
        )
        if suite == "bounds":
            report = verify.bound_check(model, p_set).to_json_dict()
        elif suite == "corollary":
            report = verify.corollary_check(model, eta, p_set).to_json_dict()
        elif suite == "gamma":
            report = verify.gamma_lemma_check().to_json_dict()
        elif suite == "b0":
            if r_point is None:
                r_point = 0.3 if model_name == "poincare-disc" else 1.5
            report = verify.b0_check(model, r_point, p_set=(64, 128, 256, 512, 1024)).to_json_dict()
        else:  # amm
            if model_name != "poincare-disc":
                raise click.ClickException("suite 'amm' applies to --model poincare-disc")
            report = verify.two_term_suite(poincare_disc_model()).to_json_dict()
    except click.ClickException:
        raise
    except (ValueError, ArithmeticError) as exc:
        raise click.ClickException(str(exc))
    _write(out, json.dumps(report, indent=2) + "\n")


if __name__ == "__main__":
    main()
