"""Spin-1/2 chain with Heisenberg coupling, random field, and chirality.

    H = sum_j [ J S_j . S_{j+1} + h_j S_j^z + K S_j . (S_{j+1} x S_{j+2}) ]

with periodic boundaries.  Total S^z is conserved, so the Hamiltonian is
built directly inside one magnetization sector (bitstrings with a fixed
number of up spins; bit j set means site j up).  The three-site scalar
chirality expands into two-spin flip-flops weighted by the z projection
of the third site,

    S_a.(S_b x S_c) = (i/2) [ S_a^z (S_b^+ S_c^- - S_b^- S_c^+)
                            + S_b^z (S_c^+ S_a^- - S_c^- S_a^+)
                            + S_c^z (S_a^+ S_b^- - S_a^- S_b^+) ],

which is the only source of complex matrix elements: K = 0 with any
field realization stays real symmetric (orthogonal class), K > 0 breaks
time reversal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..ensembles import gaussian, member_rng

__all__ = ["SpinChainSpec", "sector_basis", "random_fields", "spin_chain_block"]


@dataclass(frozen=True)
class SpinChainSpec:
    """Couplings and sector of the chirality spin chain."""

    length: int
    j_coupling: float = 1.0
    h_strength: float = 0.2
    k_chirality: float = 0.0
    sz_sector: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.length < 4:
            raise ValueError("length must be >= 4")
        if self.h_strength < 0:
            raise ValueError("h_strength must be >= 0")
        n_up = self.length / 2 + self.sz_sector
        if abs(n_up - round(n_up)) > 1e-12 or not 0 <= round(n_up) <= self.length:
            raise ValueError(f"invalid sz sector {self.sz_sector} for length {self.length}")

    @property
    def n_up(self) -> int:
        return int(round(self.length / 2 + self.sz_sector))


def sector_basis(length: int, sz_sector: float) -> np.ndarray:
    """Ascending bitstrings with the sector's number of up spins."""
    n_up = round(length / 2 + sz_sector)
    states = np.arange(1 << length, dtype=np.int64)
    popcount = np.zeros(states.shape, dtype=np.int64)
    tmp = states.copy()
    while np.any(tmp):
        popcount += tmp & 1
        tmp >>= 1
    return states[popcount == n_up]


def random_fields(spec: SpinChainSpec, realization_index: int = 0) -> np.ndarray:
    """Per-site Gaussian fields h_j (std = h_strength) for one realization."""
    rng = member_rng(spec.seed, realization_index)
    return spec.h_strength * gaussian(rng, spec.length)


def spin_chain_block(spec: SpinChainSpec, realization_index: int = 0) -> np.ndarray:
    """Dense Hermitian Hamiltonian restricted to the S^z sector."""
    length = spec.length
    basis = sector_basis(length, spec.sz_sector)
    dim = basis.size
    h_fields = random_fields(spec, realization_index)
    j_half = 0.5 * spec.j_coupling
    j_quarter = 0.25 * spec.j_coupling
    k_quarter = 0.25 * spec.k_chirality  # (i K / 2) * (sigma_z / 2) -> K/4 * sigma

    ham = np.zeros((dim, dim), dtype=complex)

    def lookup(state: int) -> int:
        pos = np.searchsorted(basis, state)
        return int(pos)

    for a, state in enumerate(basis):
        state = int(state)
        sigma = np.array([1.0 if state & (1 << j) else -1.0 for j in range(length)])
        # diagonal: Heisenberg zz + field
        diag = j_quarter * np.sum(sigma * np.roll(sigma, -1)) + 0.5 * np.sum(h_fields * sigma)
        ham[a, a] += diag
        for j in range(length):
            j1 = (j + 1) % length
            j2 = (j + 2) % length
            # Heisenberg flip-flop on bond (j, j+1)
            if sigma[j] * sigma[j1] < 0:
                flipped = state ^ ((1 << j) | (1 << j1))
                ham[lookup(flipped), a] += j_half
            # chirality on triple (j, j+1, j+2): z site paired with a
            # flip-flop on the other two, cyclically
            if spec.k_chirality != 0.0:
                for z_site, up_site, dn_site in (
                    (j, j1, j2),
                    (j1, j2, j),
                    (j2, j, j1),
                ):
                    # S^+_up S^-_dn needs up_site down and dn_site up
                    if sigma[up_site] < 0 and sigma[dn_site] > 0:
                        flipped = state ^ ((1 << up_site) | (1 << dn_site))
                        ham[lookup(flipped), a] += 1j * k_quarter * sigma[z_site]
                    elif sigma[up_site] > 0 and sigma[dn_site] < 0:
                        flipped = state ^ ((1 << up_site) | (1 << dn_site))
                        ham[lookup(flipped), a] += -1j * k_quarter * sigma[z_site]
    return ham
