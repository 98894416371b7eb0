"""Construction and exact time evolution of the spin-carrying radial packet.

The initial state is a Gaussian superposition over n of |n, l, l> states with
alternating signs (which parks the packet at the outer turning point),
multiplied by a two-component spinor (a, b).  Projected onto the fine-structure
eigenbasis and evolved, each n contributes three channels:

    c1: amplitude of |n, l, m=l>   in the upper spinor component,
    d1: amplitude of |n, l, m=l-1> in the upper spinor component,
    c2: amplitude of |n, l, m=l>   in the lower spinor component,

with

    c1 = w_n a e_+,
    d1 = w_n b sqrt(2l)/(2l+1) (e_+ - e_-),
    c2 = w_n b 1/(2l+1) (e_+ + 2l e_-),        e_± = exp(-i eps_± t / hbar).

|c1|^2 + |d1|^2 + |c2|^2 = w_n^2 (|a|^2 + |b|^2) holds per n as an algebraic
identity, so the evolution is exactly unitary at any time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .core import EnergyTable
from .errors import (EmptyRange, InvalidRange, NonNormalizedSpinor,
                     RangeMismatch)

SPINOR_NORM_TOL = 1e-9


@dataclass(frozen=True)
class PacketSpec:
    """Gaussian weight profile over n plus the initial spinor direction."""

    n_av: int
    sigma: float
    a: complex = 0.0
    b: complex = 1.0
    n_min: Optional[int] = None
    n_max: Optional[int] = None


@dataclass(frozen=True)
class Packet:
    """Resolved packet: renormalized signed weights on a concrete n range."""

    spec: PacketSpec  # with truncation bounds filled in
    n: np.ndarray
    weights: np.ndarray

    @property
    def n_min(self) -> int:
        return int(self.n[0])

    @property
    def n_max(self) -> int:
        return int(self.n[-1])


@dataclass(frozen=True)
class SpinorAmplitudes:
    """Per-n channel amplitudes of the evolved packet at one time."""

    t: float
    n: np.ndarray
    c1: np.ndarray
    d1: np.ndarray
    c2: np.ndarray
    l: int

    def per_n_norm(self) -> np.ndarray:
        return (np.abs(self.c1) ** 2 + np.abs(self.d1) ** 2
                + np.abs(self.c2) ** 2)


def gaussian_weights(n_av: int, sigma: float, n_min: int, n_max: int) -> np.ndarray:
    """Alternating-sign Gaussian weights, renormalized so sum w^2 = 1."""
    if sigma <= 0:
        raise InvalidRange(f"sigma must be > 0, got {sigma}")
    if n_min > n_max:
        raise EmptyRange(f"n_min = {n_min} > n_max = {n_max}")
    n = np.arange(n_min, n_max + 1)
    w = (-1.0) ** n * np.exp(-((n - n_av) ** 2) / (4.0 * sigma ** 2))
    return w / math.sqrt(np.sum(w ** 2))


def build_packet(spec: PacketSpec, l: int) -> Packet:
    """Resolve truncation bounds (±5 sigma by default) and build the weights."""
    norm = abs(spec.a) ** 2 + abs(spec.b) ** 2
    if abs(norm - 1.0) > SPINOR_NORM_TOL:
        raise NonNormalizedSpinor(f"|a|^2 + |b|^2 = {norm} != 1")
    n_min = spec.n_min
    n_max = spec.n_max
    if n_min is None:
        n_min = max(l + 1, round(spec.n_av - 5.0 * spec.sigma))
    if n_max is None:
        n_max = round(spec.n_av + 5.0 * spec.sigma)
    if not (l + 1 <= n_min <= spec.n_av <= n_max):
        raise InvalidRange(
            f"need l+1 <= n_min <= n_av <= n_max, got l={l}, "
            f"n_min={n_min}, n_av={spec.n_av}, n_max={n_max}"
        )
    w = gaussian_weights(spec.n_av, spec.sigma, n_min, n_max)
    resolved = replace(spec, n_min=n_min, n_max=n_max)
    return Packet(spec=resolved, n=np.arange(n_min, n_max + 1), weights=w)


def _select_energies(packet: Packet, energies: EnergyTable):
    if energies.n_min > packet.n_min or energies.n_max < packet.n_max:
        raise RangeMismatch(
            f"energy table covers [{energies.n_min}, {energies.n_max}], "
            f"packet needs [{packet.n_min}, {packet.n_max}]"
        )
    lo = packet.n_min - energies.n_min
    hi = lo + len(packet.n)
    return energies.eps_plus[lo:hi], energies.eps_minus[lo:hi]


def amplitudes_at(packet: Packet, energies: EnergyTable, t: float) -> SpinorAmplitudes:
    """Exact channel amplitudes at time t (atomic units), from reduced energies."""
    eps_p, eps_m = _select_energies(packet, energies)
    l = energies.params.l
    w = packet.weights
    a = complex(packet.spec.a)
    b = complex(packet.spec.b)
    ph_p = np.exp(-1j * eps_p * t)
    ph_m = np.exp(-1j * eps_m * t)
    c1 = w * a * ph_p
    d1 = w * b * (math.sqrt(2.0 * l) / (2 * l + 1)) * (ph_p - ph_m)
    c2 = w * b * (1.0 / (2 * l + 1)) * (ph_p + 2.0 * l * ph_m)
    return SpinorAmplitudes(t=float(t), n=packet.n, c1=c1, d1=d1, c2=c2, l=l)
