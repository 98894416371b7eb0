"""Command-line front end: presets, config files, CSV and PGM serialization.

Precedence for every setting: built-in defaults < --figure preset < config
file < explicit command-line flag.  Config files are plain ``key = value``
lines with ``#`` comments, keys named like the flags (``n_av``, ``t_max``...).

Exit status: 0 success, 1 domain error (bad physics input), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from .core import (ATOMIC_TIME_SECONDS, PhysicalParams, energy_table,
                   t_ls_lowest_order, time_scales)
from .errors import RwpError
from .observables import carpet, densities, observable_series
from .packet import PacketSpec, amplitudes_at, build_packet
from .radial import DEFAULT_GRID_POINTS, make_grid, radial_table

_FMT = "%.17g"

DEFAULTS = {
    "Z": None,  # required via flag, config or preset
    "l": 1,
    "n_av": 80,
    "sigma": 2.0,
    "a": 0.0,
    "b": 1.0,
    "n_min": None,
    "n_max": None,
    "t_max": 2.0,
    "t_unit": "tcl",
    "samples": 501,
    "grid_points": DEFAULT_GRID_POINTS,
    "figure": None,
    "format": None,  # carpet infers from the out extension, else csv
    "out": None,
    "scan": None,
    "times": None,
    "au": False,
    "with_approx": False,
    "sigmas": None,
}

_CONFIG_TYPES = {
    "Z": int, "l": int, "n_av": int, "sigma": float, "a": float, "b": float,
    "n_min": int, "n_max": int, "t_max": float, "t_unit": str, "samples": int,
    "grid_points": int, "figure": int, "format": str, "out": str,
}

FIGURE_PRESETS = {
    # short-time density snapshots of the spin-down packet
    1: {"Z": 92, "l": 1, "n_av": 80, "sigma": 2.0, "a": 0.0, "b": 1.0,
        "t_unit": "tcl", "times": [0.0, 0.25, 0.5, 0.75, 1.0, 1.25]},
    # |A|^2 for two packet widths
    2: {"Z": 92, "l": 1, "n_av": 80, "a": 0.0, "b": 1.0,
        "t_unit": "tcl", "t_max": 2.0, "samples": 401, "sigmas": [1.0, 2.0]},
    # time-scale hierarchy versus n_av
    3: {"Z": 92, "l": 1, "scan": (20, 150)},
    # spin expectations, |A|^2 and Bloch length out to the spin revival
    4: {"Z": 92, "l": 1, "n_av": 80, "sigma": 2.0,
        "a": 1.0 / math.sqrt(2.0), "b": 1.0 / math.sqrt(2.0),
        "t_unit": "tls", "t_max": 35.0, "samples": 7001},
    # densities at the spin collapse and revival instants
    5: {"Z": 92, "l": 1, "n_av": 80, "sigma": 2.0,
        "a": 1.0 / math.sqrt(2.0), "b": 1.0 / math.sqrt(2.0),
        "t_unit": "tls", "times": [0.0, 13.35, 26.7]},
    # component-density carpet over two spin-orbit periods
    6: {"Z": 92, "l": 1, "n_av": 80, "sigma": 2.0, "a": 0.0, "b": 1.0,
        "t_unit": "tls", "t_max": 2.0, "samples": 201, "format": "pgm"},
}


def load_config(path: str) -> dict:
    """Parse a plain ``key = value`` config file."""
    cfg = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise RwpError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _CONFIG_TYPES:
                raise RwpError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                cfg[key] = _CONFIG_TYPES[key](value)
            except ValueError as exc:
                raise RwpError(f"{path}:{lineno}: bad value for {key}: {exc}")
    return cfg


def merge_config(cli_args: dict, parser: argparse.ArgumentParser) -> dict:
    """Apply defaults < preset < config file < explicit flags."""
    cfg = dict(DEFAULTS)
    figure = cli_args.get("figure")
    config_path = cli_args.get("config")
    file_cfg = load_config(config_path) if config_path else {}
    if figure is None:
        figure = file_cfg.get("figure")
    if figure is not None:
        if figure not in FIGURE_PRESETS:
            parser.error(f"unknown figure preset {figure}")
        cfg.update(FIGURE_PRESETS[figure])
        cfg["figure"] = figure
    cfg.update(file_cfg)
    for key, value in cli_args.items():
        if key in ("config",):
            continue
        if value is not None and value is not False:
            cfg[key] = value
    if cfg["Z"] is None:
        parser.error("nuclear charge Z is required (--Z, config file or --figure)")
    return cfg


def _time_unit_au(cfg: dict, params: PhysicalParams) -> float:
    """Atomic-time value of one configured time unit."""
    unit = cfg["t_unit"]
    if unit == "au":
        return 1.0
    if unit == "s":
        return 1.0 / ATOMIC_TIME_SECONDS
    scales = time_scales(params, cfg["n_av"])
    if unit == "tcl":
        return scales.t_cl
    if unit == "tls":
        return scales.t_ls
    raise RwpError(f"unknown time unit {unit!r}")


def _out_path(cfg: dict, default: str, suffix: str = "") -> str:
    path = cfg["out"] or default
    if suffix:
        stem, ext = os.path.splitext(path)
        path = f"{stem}{suffix}{ext}"
    return path


def write_csv(path: str, header: list, columns: list):
    rows = np.column_stack(columns)
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\r\n")
        for row in rows:
            fh.write(",".join(_FMT % v for v in row) + "\r\n")


def write_pgm(path: str, pixels: np.ndarray):
    """Plain-text P2 image; pixels already in 0..255."""
    height, width = pixels.shape
    with open(path, "w") as fh:
        fh.write(f"P2\n{width} {height}\n255\n")
        for row in pixels:
            fh.write(" ".join(str(int(v)) for v in row) + "\n")


def _packet_and_energies(cfg: dict, params: PhysicalParams):
    spec = PacketSpec(n_av=cfg["n_av"], sigma=cfg["sigma"],
                      a=cfg["a"], b=cfg["b"],
                      n_min=cfg["n_min"], n_max=cfg["n_max"])
    packet = build_packet(spec, params.l)
    energies = energy_table(params, packet.n_min, packet.n_max)
    return packet, energies


def cmd_energies(cfg: dict) -> list:
    params = PhysicalParams(Z=cfg["Z"], l=cfg["l"])
    n_min = cfg["n_min"]
    n_max = cfg["n_max"]
    if n_min is None:
        n_min = max(params.l + 1, round(cfg["n_av"] - 5.0 * cfg["sigma"]))
    if n_max is None:
        n_max = round(cfg["n_av"] + 5.0 * cfg["sigma"])
    table = energy_table(params, n_min, n_max)
    path = _out_path(cfg, "rwp_energies.csv")
    write_csv(path,
              ["n", "eps_plus_au", "eps_minus_au", "delta_au", "omega_au"],
              [table.n, table.eps_plus, table.eps_minus, table.omega,
               table.omega])
    return [path]


def cmd_timescales(cfg: dict) -> list:
    params = PhysicalParams(Z=cfg["Z"], l=cfg["l"])
    if cfg["scan"] is not None:
        n_values = range(int(cfg["scan"][0]), int(cfg["scan"][1]) + 1)
    else:
        n_values = [cfg["n_av"]]
    factor = 1.0 if cfg["au"] else ATOMIC_TIME_SECONDS
    unit = "au" if cfg["au"] else "s"
    rows = {"n_av": [], "T_cl": [], "T_rev": [], "T_ls": [], "T_ls2": [],
            "T_ls_approx": []}
    for n_av in n_values:
        scales = time_scales(params, n_av)
        rows["n_av"].append(n_av)
        rows["T_cl"].append(scales.t_cl * factor)
        rows["T_rev"].append(scales.t_rev * factor)
        rows["T_ls"].append(scales.t_ls * factor)
        rows["T_ls2"].append(scales.t_ls2 * factor)
        rows["T_ls_approx"].append(t_ls_lowest_order(params, n_av) * factor)
    header = [f"T_cl_{unit}", f"T_rev_{unit}", f"T_ls_{unit}", f"T_ls2_{unit}"]
    columns = [np.array(rows["n_av"], dtype=float),
               np.array(rows["T_cl"]), np.array(rows["T_rev"]),
               np.array(rows["T_ls"]), np.array(rows["T_ls2"])]
    if cfg["with_approx"]:
        header.append(f"T_ls_approx_{unit}")
        columns.append(np.array(rows["T_ls_approx"]))
    path = _out_path(cfg, "rwp_timescales.csv")
    write_csv(path, ["n_av"] + header, columns)
    return [path]


def cmd_observables(cfg: dict) -> list:
    params = PhysicalParams(Z=cfg["Z"], l=cfg["l"])
    unit_au = _time_unit_au(cfg, params)
    sigmas = cfg["sigmas"] or [cfg["sigma"]]
    written = []
    for sigma in sigmas:
        run_cfg = dict(cfg, sigma=sigma)
        packet, energies = _packet_and_energies(run_cfg, params)
        t_au = np.linspace(0.0, cfg["t_max"] * unit_au, cfg["samples"])
        series = observable_series(packet, energies, t_au)
        suffix = f"_sigma{sigma:g}" if len(sigmas) > 1 else ""
        path = _out_path(cfg, "rwp_observables.csv", suffix)
        write_csv(path,
                  ["t", "re_A", "im_A", "asq", "sx", "sy", "sz",
                   "slen", "N1", "N2"],
                  [series.t / unit_au, series.A.real, series.A.imag,
                   series.asq, series.sx, series.sy, series.sz,
                   series.slen, series.N1, series.N2])
        written.append(path)
    return written


def cmd_density(cfg: dict) -> list:
    params = PhysicalParams(Z=cfg["Z"], l=cfg["l"])
    unit_au = _time_unit_au(cfg, params)
    times = cfg["times"] if cfg["times"] is not None else [0.0]
    packet, energies = _packet_and_energies(cfg, params)
    grid = make_grid(params, packet.n_max, cfg["grid_points"])
    table = radial_table(params, packet.n_min, packet.n_max, grid)
    written = []
    for i, t in enumerate(times):
        amps = amplitudes_at(packet, energies, t * unit_au)
        snap = densities(amps, table, grid)
        suffix = f"_t{i}" if len(times) > 1 else ""
        path = _out_path(cfg, "rwp_density.csv", suffix)
        write_csv(path, ["r", "rho1", "rho2", "rho"],
                  [grid.r, snap.rho1, snap.rho2, snap.rho1 + snap.rho2])
        written.append(path)
    return written


def _sampling_grid(params: PhysicalParams, n_max: int, points: int):
    """Radial grid for images: below the Simpson minimum, fall back to a
    plain uniform sampling with trapezoid weights (nothing integrates it)."""
    if points >= 501 and points % 2 == 1:
        return make_grid(params, n_max, points)
    from .radial import RadialGrid
    r_max = 2.5 * n_max ** 2 / params.Z
    r = np.linspace(0.0, r_max, points)
    w = np.full(points, r_max / (points - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    return RadialGrid(r=r, quad_w=w)


def cmd_carpet(cfg: dict) -> list:
    params = PhysicalParams(Z=cfg["Z"], l=cfg["l"])
    unit_au = _time_unit_au(cfg, params)
    packet, energies = _packet_and_energies(cfg, params)
    grid = _sampling_grid(params, packet.n_max, cfg["grid_points"])
    table = radial_table(params, packet.n_min, packet.n_max, grid)
    t_au = np.linspace(0.0, cfg["t_max"] * unit_au, cfg["samples"])
    result = carpet(packet, energies, table, grid, t_au)
    written = []
    fmt = cfg["format"]
    if fmt is None and cfg["out"]:
        ext = os.path.splitext(cfg["out"])[1].lower()
        fmt = "pgm" if ext == ".pgm" else "csv"
    if fmt == "pgm":
        # joint scaling: the brightest pixel across both components is 255
        rho_max = max(result.rho1.max(), result.rho2.max())
        for name, rho in (("rho1", result.rho1), ("rho2", result.rho2)):
            pixels = np.rint(255.0 * rho / rho_max)
            path = _out_path(cfg, "rwp_carpet.pgm", f"_{name}")
            write_pgm(path, pixels)
            written.append(path)
    else:
        for name, rho in (("rho1", result.rho1), ("rho2", result.rho2)):
            path = _out_path(cfg, "rwp_carpet.csv", f"_{name}")
            with open(path, "w", newline="") as fh:
                fh.write("t\\r," + ",".join(_FMT % r for r in result.r_axis)
                         + "\r\n")
                for t, row in zip(result.t_axis / unit_au, rho):
                    fh.write(_FMT % t + ","
                             + ",".join(_FMT % v for v in row) + "\r\n")
            written.append(path)
    return written


COMMANDS = {
    "energies": cmd_energies,
    "timescales": cmd_timescales,
    "observables": cmd_observables,
    "density": cmd_density,
    "carpet": cmd_carpet,
}


def _add_common_options(sub: argparse.ArgumentParser):
    sub.add_argument("--config", metavar="FILE", help="key = value config file")
    sub.add_argument("--Z", type=int, help="nuclear charge")
    sub.add_argument("--l", type=int, help="orbital angular momentum (>= 1)")
    sub.add_argument("--n-av", dest="n_av", type=int,
                     help="mean principal quantum number")
    sub.add_argument("--sigma", type=float, help="Gaussian width in n")
    sub.add_argument("--a", type=float, help="upper spinor amplitude")
    sub.add_argument("--b", type=float, help="lower spinor amplitude")
    sub.add_argument("--n-min", dest="n_min", type=int,
                     help="lower n truncation (default n_av - 5 sigma)")
    sub.add_argument("--n-max", dest="n_max", type=int,
                     help="upper n truncation (default n_av + 5 sigma)")
    sub.add_argument("--t-max", dest="t_max", type=float,
                     help="time span in the chosen unit")
    sub.add_argument("--t-unit", dest="t_unit",
                     choices=["au", "s", "tcl", "tls"],
                     help="time unit for input and output")
    sub.add_argument("--samples", type=int, help="number of time samples")
    sub.add_argument("--grid-points", dest="grid_points", type=int,
                     help="radial grid points (odd, >= 501)")
    sub.add_argument("--figure", type=int, choices=range(1, 7),
                     help="expand a figure preset")
    sub.add_argument("--format", choices=["csv", "pgm"], help="output format")
    sub.add_argument("--out", help="output path (suffixes added for multi-file)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rwp",
        description="Spin-carrying radial wave packets in hydrogenic ions",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("energies", "fine-structure doublets and splitting frequencies"),
        ("timescales", "characteristic times T_cl, T_rev, T_ls, T_ls2"),
        ("observables", "autocorrelation, spin expectations, component norms"),
        ("density", "component densities at chosen times"),
        ("carpet", "space-time density grids (PGM or CSV)"),
    ]:
        sub = subs.add_parser(name, help=help_text)
        _add_common_options(sub)
        if name == "timescales":
            sub.add_argument("--scan", nargs=2, type=int,
                             metavar=("N_MIN", "N_MAX"),
                             help="tabulate a range of n_av")
            sub.add_argument("--au", action="store_true",
                             help="emit atomic time units instead of seconds")
            sub.add_argument("--with-approx", dest="with_approx",
                             action="store_true",
                             help="append the lowest-order T_ls column")
        if name == "density":
            sub.add_argument("--times", nargs="+", type=float,
                             help="snapshot times in the chosen unit")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cli_args = dict(vars(args))
    command = cli_args.pop("command")
    try:
        cfg = merge_config(cli_args, parser)
        written = COMMANDS[command](cfg)
    except RwpError as exc:
        print(f"rwp: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
