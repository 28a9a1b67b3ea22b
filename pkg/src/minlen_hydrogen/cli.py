"""Command-line front end.

    minlen-hydrogen spectrum --beta 1e-6 --n-max 5
    minlen-hydrogen wavefunction --beta 1e-6 --n 1 --p-min 0.01 --p-max 20 --samples 200
    minlen-hydrogen verify
    minlen-hydrogen bounds --format json

All inputs are atomic units; only ``bounds`` speaks fm and MHz.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import bounds, spectrum, verify

SPECTRUM_FIELDS = ["n", "k_au", "e_exact_au", "e_series_au", "e_undeformed_au", "corr_sqrt_beta_au", "corr_beta_au"]
WAVEFUNCTION_FIELDS = ["p_au", "re_psi", "im_psi", "density"]
VERIFY_FIELDS = ["check_name", "measured", "tolerance", "pass"]
BOUNDS_FIELDS = ["source", "input", "sqrt_3beta_au", "delta_x_min_fm", "paper_quoted_fm"]


@dataclass(frozen=True)
class RunConfig:
    command: str
    beta: float = 0.0
    n_max: int = 1
    n: int = 1
    p_min: float = 0.01
    p_max: float = 20.0
    samples: int = 200
    format: str = "csv"
    output_path: Optional[str] = None
    epsilon: float = bounds.EPSILON_1S2S
    lamb_exp_mhz: float = bounds.LAMB_EXP_1S_MHZ
    lamb_th_mhz: float = bounds.LAMB_TH_1S_MHZ
    inject_fault: bool = False


def spectrum_rows(config: RunConfig) -> list[dict]:
    rows = []
    for n in range(1, config.n_max + 1):
        terms = spectrum.energy_series_terms(n, config.beta)
        rows.append(
            {
                "n": n,
                "k_au": spectrum.solve_k_closed_form(n, config.beta),
                "e_exact_au": spectrum.energy_exact(n, config.beta),
                "e_series_au": terms.total,
                "e_undeformed_au": terms.undeformed,
                "corr_sqrt_beta_au": terms.sqrt_beta,
                "corr_beta_au": terms.beta,
            }
        )
    return rows


def wavefunction_rows(config: RunConfig) -> list[dict]:
    state = spectrum.normalize(spectrum.bound_state(config.n, config.beta))
    p = np.linspace(config.p_min, config.p_max, config.samples)
    values = spectrum.psi(state, p)
    dens = spectrum.density(state, p)
    return [
        {"p_au": float(pi), "re_psi": float(v.real), "im_psi": float(v.imag), "density": float(d)}
        for pi, v, d in zip(p, values, dens)
    ]


def verify_rows(config: RunConfig) -> list[dict]:
    beta = config.beta if config.beta > 0 else 1e-3
    return [c.as_row() for c in verify.run_all(beta=beta, flip_sign=config.inject_fault)]


def bounds_rows(config: RunConfig) -> tuple[list[dict], bool]:
    """Rows for both estimates; the flag is False if any bound was underivable."""
    ok = True
    b1 = bounds.bound_from_1s2s(config.epsilon)
    rows = [
        {
            "source": "1S-2S",
            "input": config.epsilon,
            "sqrt_3beta_au": b1.sqrt_3beta_au,
            "delta_x_min_fm": b1.delta_x_min_fm,
            "paper_quoted_fm": bounds.QUOTED_1S2S_FM,
        }
    ]
    gap = config.lamb_exp_mhz - config.lamb_th_mhz
    try:
        b2 = bounds.bound_from_lamb(bounds.SpectroscopyInput.lamb(config.lamb_exp_mhz, config.lamb_th_mhz))
    except spectrum.DomainError as exc:
        print(f"Lamb bound underivable: {exc}", file=sys.stderr)
        ok = False
        sqrt_3beta, dx = None, None
    else:
        sqrt_3beta, dx = b2.sqrt_3beta_au, b2.delta_x_min_fm
    rows.append(
        {
            "source": "Lamb",
            "input": gap,
            "sqrt_3beta_au": sqrt_3beta,
            "delta_x_min_fm": dx,
            "paper_quoted_fm": bounds.QUOTED_LAMB_FM,
        }
    )
    return rows, ok


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, list):
        return ";".join(_csv_cell(v) for v in value)
    return str(value)


def render(rows: list[dict], fields: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_csv_cell(row[f]) for f in fields])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minlen-hydrogen", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="csv")
    common.add_argument("--out", dest="output_path", default=None, help="write to this file instead of stdout")
    common.add_argument("--beta", type=float, default=0.0, help="deformation beta in a.u. (beta' = 2 beta)")

    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="exact and series energies")
    sp.add_argument("--n-max", type=int, default=5)

    wf = sub.add_parser("wavefunction", parents=[common], help="sample the normalized wavefunction")
    wf.add_argument("--n", type=int, default=1)
    wf.add_argument("--p-min", type=float, default=0.01)
    wf.add_argument("--p-max", type=float, default=20.0)
    wf.add_argument("--samples", type=int, default=200)

    vf = sub.add_parser("verify", parents=[common], help="run the oracle suite")
    vf.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    bd = sub.add_parser("bounds", parents=[common], help="minimal-length bounds from spectroscopy")
    bd.add_argument("--epsilon", type=float, default=bounds.EPSILON_1S2S)
    bd.add_argument("--lamb-exp-mhz", type=float, default=bounds.LAMB_EXP_1S_MHZ)
    bd.add_argument("--lamb-th-mhz", type=float, default=bounds.LAMB_TH_1S_MHZ)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    config = RunConfig(**values)

    if not math.isfinite(config.beta) or config.beta < 0:
        parser.error("--beta must be a finite non-negative number")
    if config.command == "spectrum" and config.n_max < 1:
        parser.error("--n-max must be >= 1")
    if config.command == "wavefunction":
        if config.n < 1:
            parser.error("--n must be >= 1")
        if config.p_min <= 0:
            parser.error("--p-min must be positive (psi is singular at p = 0)")
        if config.p_min >= config.p_max:
            parser.error("--p-min must be smaller than --p-max")
        if config.samples < 2:
            parser.error("--samples must be >= 2")
    if config.command == "bounds" and not config.epsilon > 0:
        parser.error("--epsilon must be positive")
    return config


def run(config: RunConfig) -> tuple[str, int]:
    """Rendered output and exit status for ``config``."""
    status = 0
    if config.command == "spectrum":
        text = render(spectrum_rows(config), SPECTRUM_FIELDS, config.format)
    elif config.command == "wavefunction":
        text = render(wavefunction_rows(config), WAVEFUNCTION_FIELDS, config.format)
    elif config.command == "verify":
        rows = verify_rows(config)
        status = 0 if all(r["pass"] for r in rows) else 1
        text = render(rows, VERIFY_FIELDS, config.format)
    elif config.command == "bounds":
        rows, ok = bounds_rows(config)
        status = 0 if ok else 1
        text = render(rows, BOUNDS_FIELDS, config.format)
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(config.command)
    return text, status


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = parse_config(argv)
    text, status = run(config)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
