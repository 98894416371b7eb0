"""Dirac-Coulomb energy levels, fine-structure splittings and time scales.

Hartree atomic units throughout (hbar = m_e = e = 1, c = 1/alpha), so the
rest energy is m0*c^2 = alpha**-2 hartree.  All energies returned here are
*reduced*, eps = E - m0*c^2: the rest mass only contributes a global phase
to the evolved packet, and keeping it around would destroy the precision of
every phase at revival-scale times.

The bound-state energy on the branch j = l +/- 1/2 is

    E = m0*c^2 * [1 + (Z*alpha)^2 / D^2]^(-1/2),
    D = n - (j + 1/2) + sqrt((j + 1/2)^2 - (Z*alpha)^2).

eps and the splitting eps_plus - eps_minus are both tiny compared to
m0*c^2, so they are evaluated through algebraic rearrangements that never
subtract two O(alpha**-2) numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidQuantumNumbers, SupercriticalCharge, UnsupportedOrder

# CODATA 2018
FINE_STRUCTURE_CONST = 7.2973525693e-3
# one hartree atomic time unit in seconds
ATOMIC_TIME_SECONDS = 2.418884326e-17


@dataclass(frozen=True)
class PhysicalParams:
    """Nuclear charge, fine-structure constant and the packet's fixed l."""

    Z: int
    l: int = 1
    alpha: float = FINE_STRUCTURE_CONST

    def __post_init__(self):
        if self.Z < 1:
            raise InvalidQuantumNumbers(f"Z must be >= 1, got {self.Z}")
        if self.l < 1:
            raise InvalidQuantumNumbers(
                f"l must be >= 1 so both j = l +/- 1/2 exist, got {self.l}"
            )
        if self.Z * self.alpha >= 1.0:
            raise SupercriticalCharge(
                f"Z*alpha = {self.Z * self.alpha:.4f} >= 1 (supercritical)"
            )

    @property
    def z_alpha_sq(self) -> float:
        return (self.Z * self.alpha) ** 2


@dataclass(frozen=True)
class EnergyPair:
    """Reduced fine-structure doublet at one n: eps_plus (j = l+1/2) above eps_minus."""

    n: int
    eps_plus: float
    eps_minus: float
    omega: float  # (eps_plus - eps_minus) / hbar, inverse atomic time


@dataclass(frozen=True)
class EnergyTable:
    """Fine-structure doublets for a contiguous n range at fixed (Z, l)."""

    params: PhysicalParams
    n: np.ndarray
    eps_plus: np.ndarray
    eps_minus: np.ndarray
    omega: np.ndarray

    @property
    def n_min(self) -> int:
        return int(self.n[0])

    @property
    def n_max(self) -> int:
        return int(self.n[-1])

    def __iter__(self):
        for i in range(len(self.n)):
            yield EnergyPair(
                int(self.n[i]),
                float(self.eps_plus[i]),
                float(self.eps_minus[i]),
                float(self.omega[i]),
            )

    def __len__(self):
        return len(self.n)


@dataclass(frozen=True)
class TimeScales:
    """Characteristic times of one packet, all in atomic time units."""

    t_cl: float
    t_rev: float
    t_super: float
    t_ls: float
    t_ls2: float

    def in_seconds(self) -> "TimeScales":
        s = ATOMIC_TIME_SECONDS
        return TimeScales(self.t_cl * s, self.t_rev * s, self.t_super * s,
                          self.t_ls * s, self.t_ls2 * s)


def _j_values(l: int):
    return l - 0.5, l + 0.5


def _check_nj(params: PhysicalParams, n: int, j: float):
    if n < params.l + 1:
        raise InvalidQuantumNumbers(f"n = {n} < l+1 = {params.l + 1}")
    j_lo, j_hi = _j_values(params.l)
    if not (abs(j - j_lo) < 1e-12 or abs(j - j_hi) < 1e-12):
        raise InvalidQuantumNumbers(f"j = {j} is not l +/- 1/2 for l = {params.l}")


def reduced_energy(Z: int, n: int, j: float,
                   alpha: float = FINE_STRUCTURE_CONST) -> float:
    """Reduced Dirac-Coulomb energy eps = E - m0*c^2 in hartree, any valid j.

    With x = (Z alpha)^2 / D^2 and s = sqrt(1+x),

        eps = m0*c^2 * ((1+x)^(-1/2) - 1) = -m0*c^2 * x / (s * (1 + s)),

    which evaluates the small difference directly instead of subtracting
    two numbers of magnitude alpha**-2.
    """
    y = (Z * alpha) ** 2
    jp = j + 0.5
    disc = jp * jp - y
    if disc <= 0.0:
        raise SupercriticalCharge(f"(j+1/2)^2 = {jp * jp} <= (Z*alpha)^2 = {y}")
    d = n - jp + math.sqrt(disc)
    x = y / (d * d)
    s = math.sqrt(1.0 + x)
    return -x / (s * (1.0 + s)) / alpha ** 2


def dirac_energy(params: PhysicalParams, n: int, j: float) -> float:
    """Reduced energy on the branch j = l +/- 1/2 of the params' l."""
    _check_nj(params, n, j)
    return reduced_energy(params.Z, n, j, params.alpha)


def energy_splitting(params: PhysicalParams, n: int) -> float:
    """eps_plus - eps_minus at this n, without catastrophic cancellation.

    Writing f(x) = x / (s (1+s)), s = sqrt(1+x), the splitting is
    m0*c^2 * (f(x_minus) - f(x_plus)).  The difference is reduced exactly to
    a product carrying the small factor x_minus - x_plus, which itself comes
    from the cancellation-free bracket difference

        D_plus - D_minus = [ y/(l+1+sqrt((l+1)^2-y)) + y/(l+sqrt(l^2-y)) ]
                            / [ sqrt((l+1)^2-y) + sqrt(l^2-y) ],   y = (Z alpha)^2.
    """
    l = params.l
    if n < l + 1:
        raise InvalidQuantumNumbers(f"n = {n} < l+1 = {l + 1}")
    y = params.z_alpha_sq
    disc_hi = (l + 1) ** 2 - y
    disc_lo = l * l - y
    if disc_lo <= 0.0:
        raise SupercriticalCharge(
            f"(j+1/2)^2 = {l * l} <= (Z*alpha)^2 = {y} for j = l-1/2"
        )
    sq_hi = math.sqrt(disc_hi)
    sq_lo = math.sqrt(disc_lo)
    d_plus = n - (l + 1) + sq_hi
    d_minus = n - l + sq_lo
    # D_plus - D_minus > 0 for y > 0, computed without subtracting near-equal terms
    d_diff = (y / (l + 1 + sq_hi) + y / (l + sq_lo)) / (sq_hi + sq_lo)

    x_lo = y / (d_minus * d_minus)  # larger of the two (lower branch binds deeper)
    x_hi = y / (d_plus * d_plus)
    dx = y * d_diff * (d_plus + d_minus) / (d_plus * d_plus * d_minus * d_minus)
    s_lo = math.sqrt(1.0 + x_lo)
    s_hi = math.sqrt(1.0 + x_hi)
    # exact factorization of f(x_lo) - f(x_hi) with the small factor dx pulled out
    num = dx * (1.0 + s_hi - x_hi / (s_lo + s_hi))
    den = s_lo * (1.0 + s_lo) * s_hi * (1.0 + s_hi)
    return num / den / params.alpha ** 2


def energy_table(params: PhysicalParams, n_min: int, n_max: int) -> EnergyTable:
    """Tabulate the fine-structure doublet and splitting frequency per n."""
    if not (params.l + 1 <= n_min <= n_max):
        raise InvalidQuantumNumbers(
            f"need l+1 <= n_min <= n_max, got l={params.l}, n_min={n_min}, n_max={n_max}"
        )
    j_lo, j_hi = _j_values(params.l)
    ns = np.arange(n_min, n_max + 1)
    eps_p = np.array([dirac_energy(params, int(n), j_hi) for n in ns])
    eps_m = np.array([dirac_energy(params, int(n), j_lo) for n in ns])
    om = np.array([energy_splitting(params, int(n)) for n in ns])
    return EnergyTable(params, ns, eps_p, eps_m, om)


def energy_derivatives(params: PhysicalParams, n: float, j: float):
    """(dE/dn, d2E/dn2, d3E/dn3) treating n as continuous on one branch.

    n enters E only through D (dD/dn = 1), so with v = y/D^2:

        E = m0*c^2 (1+v)^(-1/2),
        v'  = -2 y / D^3,   v'' = 6 y / D^4,   v''' = -24 y / D^5,

    and the chain rule gives closed forms that need no cancellation care
    (each derivative is already O(alpha^0) or smaller).
    """
    jp = j + 0.5
    disc = jp * jp - params.z_alpha_sq
    if disc <= 0.0:
        raise SupercriticalCharge(
            f"(j+1/2)^2 = {jp * jp} <= (Z*alpha)^2 = {params.z_alpha_sq}"
        )
    d = n - jp + math.sqrt(disc)
    y = params.z_alpha_sq
    c = 1.0 / params.alpha ** 2
    u = 1.0 + y / (d * d)
    vp = -2.0 * y / d ** 3
    vpp = 6.0 * y / d ** 4
    vppp = -24.0 * y / d ** 5
    e1 = -0.5 * c * u ** -1.5 * vp
    e2 = c * (0.75 * u ** -2.5 * vp * vp - 0.5 * u ** -1.5 * vpp)
    e3 = c * (-1.875 * u ** -3.5 * vp ** 3
              + 2.25 * u ** -2.5 * vp * vpp
              - 0.5 * u ** -1.5 * vppp)
    return e1, e2, e3


def time_scale_k(params: PhysicalParams, n_av: int, k: int,
                 branch: str = "plus") -> float:
    """Hierarchy time T_k = 2*pi*hbar / |(1/k!) d^k E/dn^k| at n = n_av.

    k=1 is the classical Kepler period, k=2 the revival time, k=3 the
    super-revival scale.
    """
    if k not in (1, 2, 3):
        raise UnsupportedOrder(f"k = {k} not in 1..3")
    if n_av < params.l + 1:
        raise InvalidQuantumNumbers(f"n_av = {n_av} < l+1 = {params.l + 1}")
    if branch not in ("plus", "minus"):
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    j = params.l + 0.5 if branch == "plus" else params.l - 0.5
    derivs = energy_derivatives(params, float(n_av), j)
    coeff = abs(derivs[k - 1]) / math.factorial(k)
    return 2.0 * math.pi / coeff


def t_ls(params: PhysicalParams, n_av: int) -> float:
    """Spin-orbit period 2*pi*hbar / |eps_plus - eps_minus| at n_av."""
    return 2.0 * math.pi / abs(energy_splitting(params, n_av))


def t_ls2(n_av: int, t_ls_value: float) -> float:
    """Spin-revival scale (2/3) * n_av * T_ls; the spin revives near half of it."""
    if n_av <= 0 or t_ls_value <= 0:
        raise ValueError("n_av and t_ls must be positive")
    return (2.0 / 3.0) * n_av * t_ls_value


def time_scales(params: PhysicalParams, n_av: int, branch: str = "plus") -> TimeScales:
    """All characteristic times of a packet centered at n_av, in atomic units."""
    tls = t_ls(params, n_av)
    return TimeScales(
        t_cl=time_scale_k(params, n_av, 1, branch),
        t_rev=time_scale_k(params, n_av, 2, branch),
        t_super=time_scale_k(params, n_av, 3, branch),
        t_ls=tls,
        t_ls2=t_ls2(n_av, tls),
    )


def t_ls_lowest_order(params: PhysicalParams, n_av: int) -> float:
    """Leading-order spin-orbit period 2 l (l+1) / (Z alpha)^2 * T_cl.

    Kept alongside the exact splitting for comparison; at large Z*alpha the
    two differ noticeably.
    """
    t_cl = time_scale_k(params, n_av, 1)
    return 2.0 * params.l * (params.l + 1) / params.z_alpha_sq * t_cl
