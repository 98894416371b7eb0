"""Measurable quantities of the evolving packet.

Component densities, the autocorrelation function, spin expectation values,
component norms, space-time carpet grids and revival-peak detection.  Spin
expectations are computed directly from the channel amplitudes; the closed
forms in terms of sum w_n^2 cos(omega_n t) are kept in the test suite as an
independent oracle.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.signal import find_peaks

from .core import EnergyTable
from .errors import EmptyWindow, RangeMismatch
from .packet import Packet, SpinorAmplitudes, amplitudes_at, _select_energies
from .radial import RadialGrid, RadialTable, worker_count


@dataclass(frozen=True)
class DensitySnapshot:
    """Radial probability density per spinor component at one time."""

    t: float
    rho1: np.ndarray
    rho2: np.ndarray
    grid: RadialGrid

    def total_norm(self) -> float:
        return float(np.sum(self.grid.quad_w * (self.rho1 + self.rho2)))


@dataclass(frozen=True)
class ObservableSeries:
    """Time series of every scalar observable on a common time axis."""

    t: np.ndarray
    A: np.ndarray  # complex autocorrelation
    asq: np.ndarray
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray
    slen: np.ndarray
    N1: np.ndarray
    N2: np.ndarray


@dataclass(frozen=True)
class CarpetGrid:
    """(time x radius) matrices of the two component densities."""

    t_axis: np.ndarray
    r_axis: np.ndarray
    rho1: np.ndarray
    rho2: np.ndarray


def _table_rows(amps: SpinorAmplitudes, table: RadialTable) -> np.ndarray:
    n0, n1 = int(amps.n[0]), int(amps.n[-1])
    if int(table.n_range[0]) > n0 or int(table.n_range[-1]) < n1:
        raise RangeMismatch(
            f"radial table covers [{table.n_range[0]}, {table.n_range[-1]}], "
            f"amplitudes need [{n0}, {n1}]"
        )
    if table.l != amps.l:
        raise RangeMismatch(f"radial table has l={table.l}, amplitudes l={amps.l}")
    lo = n0 - int(table.n_range[0])
    return table.values[lo:lo + len(amps.n)]


def densities(amps: SpinorAmplitudes, table: RadialTable,
              grid: RadialGrid) -> DensitySnapshot:
    """Component densities rho1, rho2 on the radial grid.

    The two channels of the upper component carry orthogonal angular parts
    (m = l and m = l-1), so their radial superpositions add incoherently.
    """
    rows = _table_rows(amps, table)
    psi_c1 = amps.c1 @ rows
    psi_d1 = amps.d1 @ rows
    psi_c2 = amps.c2 @ rows
    r2 = grid.r ** 2
    rho1 = r2 * (np.abs(psi_c1) ** 2 + np.abs(psi_d1) ** 2)
    rho2 = r2 * np.abs(psi_c2) ** 2
    return DensitySnapshot(t=amps.t, rho1=rho1, rho2=rho2, grid=grid)


def autocorrelation(packet: Packet, energies: EnergyTable, t):
    """Overlap <Psi(t)|Psi(0)>; scalar t gives a complex scalar, array an array.

    A(t) = sum_n w_n^2 [ (|a|^2 + |b|^2/(2l+1)) e^{-i eps_+ t}
                         + |b|^2 (2l/(2l+1)) e^{-i eps_- t} ].
    """
    eps_p, eps_m = _select_energies(packet, energies)
    l = energies.params.l
    a2 = abs(packet.spec.a) ** 2
    b2 = abs(packet.spec.b) ** 2
    w2 = packet.weights ** 2
    tt = np.asarray(t, dtype=float)
    scalar = tt.ndim == 0
    tt = np.atleast_1d(tt)
    ph_p = np.exp(-1j * np.outer(tt, eps_p))
    ph_m = np.exp(-1j * np.outer(tt, eps_m))
    out = ph_p @ (w2 * (a2 + b2 / (2 * l + 1))) + ph_m @ (w2 * b2 * 2 * l / (2 * l + 1))
    return complex(out[0]) if scalar else out


def spin_expectations(amps: SpinorAmplitudes, l: int):
    """(<sigma_x>, <sigma_y>, <sigma_z>) from the channel amplitudes.

    Only the m = l channels of the two components overlap, so the transverse
    expectations reduce to 2 Re / 2 Im of sum_n conj(c1) c2; the sign
    convention makes the precession run in the +sin(omega t) sense for real
    positive a*b.
    """
    cross = np.sum(np.conj(amps.c1) * amps.c2)
    sx = 2.0 * cross.real
    sy = 2.0 * cross.imag
    sz = float(np.sum(np.abs(amps.c1) ** 2 + np.abs(amps.d1) ** 2
                      - np.abs(amps.c2) ** 2))
    return sx, sy, sz


def component_norms(packet: Packet, energies: EnergyTable, t: float, l: int):
    """(N1, N2): probability carried by the upper / lower spinor component.

    N2(t) = |b|^2/(2l+1)^2 sum_n w_n^2 (1 + 4 l^2 + 4 l cos(omega_n t)),
    and N1 = 1 - N2 exactly (unitarity).
    """
    eps_p, eps_m = _select_energies(packet, energies)
    omega = eps_p - eps_m
    b2 = abs(packet.spec.b) ** 2
    w2 = packet.weights ** 2
    n2 = b2 / (2 * l + 1) ** 2 * float(
        np.sum(w2 * (1.0 + 4.0 * l * l + 4.0 * l * np.cos(omega * t)))
    )
    return 1.0 - n2, n2


def spin_length(sx: float, sy: float, sz: float) -> float:
    """Euclidean length of the Bloch vector."""
    return math.sqrt(sx * sx + sy * sy + sz * sz)


def observable_series(packet: Packet, energies: EnergyTable,
                      times) -> ObservableSeries:
    """Evaluate every scalar observable on a time axis."""
    times = np.asarray(times, dtype=float)
    l = energies.params.l
    A = autocorrelation(packet, energies, times)
    sx = np.empty(len(times))
    sy = np.empty(len(times))
    sz = np.empty(len(times))
    n1 = np.empty(len(times))
    n2 = np.empty(len(times))
    for i, t in enumerate(times):
        amps = amplitudes_at(packet, energies, t)
        sx[i], sy[i], sz[i] = spin_expectations(amps, l)
        n1[i], n2[i] = component_norms(packet, energies, t, l)
    slen = np.sqrt(sx ** 2 + sy ** 2 + sz ** 2)
    return ObservableSeries(t=times, A=A, asq=np.abs(A) ** 2,
                            sx=sx, sy=sy, sz=sz, slen=slen, N1=n1, N2=n2)


def carpet(packet: Packet, energies: EnergyTable, table: RadialTable,
           grid: RadialGrid, t_grid) -> CarpetGrid:
    """Space-time density grid; rows are independent snapshots.

    Rows may be computed across threads (capped by RWP_THREADS) and are
    assembled by index, so the result does not depend on worker count.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if len(t_grid) > 1 and np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly ascending")

    def one_row(t):
        snap = densities(amplitudes_at(packet, energies, t), table, grid)
        return snap.rho1, snap.rho2

    workers = worker_count()
    if workers > 1 and len(t_grid) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one_row, t_grid))
    else:
        rows = [one_row(t) for t in t_grid]
    rho1 = np.vstack([r[0] for r in rows])
    rho2 = np.vstack([r[1] for r in rows])
    return CarpetGrid(t_axis=t_grid, r_axis=grid.r, rho1=rho1, rho2=rho2)


def detect_revivals(t, values, window=None, prominence: float = 0.1):
    """Local maxima of a sampled series, refined by parabolic interpolation.

    Returns a list of (peak_time, peak_value) for maxima whose prominence
    exceeds the threshold, restricted to the (t_lo, t_hi) window when given.
    """
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    if window is not None:
        t_lo, t_hi = window
        mask = (t >= t_lo) & (t <= t_hi)
        if not mask.any():
            raise EmptyWindow(f"no samples in window ({t_lo}, {t_hi})")
        t = t[mask]
        values = values[mask]
    if len(t) < 3:
        return []
    idx, _ = find_peaks(values, prominence=prominence)
    peaks = []
    for i in idx:
        y0, y1, y2 = values[i - 1], values[i], values[i + 1]
        denom = y0 - 2.0 * y1 + y2
        if denom != 0.0:
            shift = 0.5 * (y0 - y2) / denom
            dt = t[i + 1] - t[i]
            t_peak = t[i] + shift * dt
            y_peak = y1 - 0.25 * (y0 - y2) * shift
        else:
            t_peak, y_peak = t[i], y1
        peaks.append((float(t_peak), float(y_peak)))
    return peaks
