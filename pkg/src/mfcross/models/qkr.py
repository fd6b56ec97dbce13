"""Kicked-rotor Floquet operator on a momentum torus.

One period of the dynamics in the position basis is

    U_mn = (1/N) exp[-i alpha cos(2 pi m/N + theta0)]
           * sum_{l=-N'}^{N'} exp[-i (l^2/2 - gamma l - 2 pi l (m-n)/N)],

with N odd, N' = (N-1)/2, and signed indices m, n in {-N', ..., N'}
stored at m + N'.  theta0 = pi/(2N) fully breaks parity; gamma = 0 is
the time-reversal-symmetric point and increasing gamma drives the
eigenvector statistics from the orthogonal to the unitary class.

The l-sum is a circulant in (m - n) mod N and is evaluated with one FFT
per member, which also makes the matrix unitary to machine precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy import linalg as sla

from ..ensembles import EigenSystem, EigenDecompositionError, member_rng, _fix_phases

__all__ = ["QkrSpec", "qkr_floquet", "unitary_eigs", "generate_qkr_ensemble"]


@dataclass(frozen=True)
class QkrSpec:
    """Kicked-rotor ensemble parameters.

    Members differ only in the kick strength, drawn uniformly within
    +-kick_jitter of the nominal value from the member substream.
    """

    n_dim: int
    kick_strength: float = 20000.0
    trs_gamma: float = 0.0
    theta0: float | None = None
    n_members: int = 1
    kick_jitter: float = 250.0
    seed: int = 0

    def __post_init__(self):
        if self.n_dim < 3 or self.n_dim % 2 == 0:
            raise ValueError("n_dim must be an odd integer >= 3")
        if self.trs_gamma < 0:
            raise ValueError("trs_gamma must be >= 0")
        if self.n_members < 1:
            raise ValueError("n_members must be >= 1")
        if self.theta0 is None:
            object.__setattr__(self, "theta0", math.pi / (2 * self.n_dim))


def member_kick(spec: QkrSpec, member_index: int) -> float:
    """Kick strength of one member: nominal + uniform(-jitter, jitter)."""
    rng = member_rng(spec.seed, member_index)
    return spec.kick_strength + spec.kick_jitter * (2.0 * rng.random() - 1.0)


def qkr_floquet(spec: QkrSpec, member_index: int = 0) -> np.ndarray:
    """Floquet matrix of one ensemble member (complex unitary)."""
    if member_index < 0 or member_index >= spec.n_members:
        raise ValueError("member_index out of range")
    n = spec.n_dim
    n_half = (n - 1) // 2
    alpha = member_kick(spec, member_index)

    l = np.arange(-n_half, n_half + 1)
    free = np.exp(-1j * (l * l / 2.0 - spec.trs_gamma * l))
    # circulant column: F(d) = sum_l free_l exp(2i pi l d / N), d = (m-n) mod N
    d = np.arange(n)
    column = np.exp(-2j * np.pi * n_half * d / n) * n * np.fft.ifft(free)

    m = np.arange(-n_half, n_half + 1)
    kick = np.exp(-1j * alpha * np.cos(2.0 * np.pi * m / n + spec.theta0))
    idx = (m[:, None] - m[None, :]) % n
    u = (kick[:, None] / n) * column[idx]

    unit_err = np.max(np.abs(u.conj().T @ u - np.eye(n)))
    if unit_err > 1e-10:
        raise EigenDecompositionError(
            f"Floquet matrix not unitary: max|U+U - I| = {unit_err:g}"
        )
    return u


def unitary_eigs(u: np.ndarray, check: bool = True) -> EigenSystem:
    """Eigen-angles in (-pi, pi] and orthonormal eigenvectors of a unitary.

    Uses the complex Schur form, which keeps the eigenvector basis
    orthonormal even for clustered eigen-angles; angles are sorted
    ascending with a stable permutation and column phases fixed.
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    unit_err = np.max(np.abs(u.conj().T @ u - np.eye(n)))
    if unit_err > 1e-8:
        raise EigenDecompositionError(
            f"input not unitary: max|U+U - I| = {unit_err:g}"
        )
    t, vectors = sla.schur(u, output="complex")
    angles = np.angle(np.diag(t))
    order = np.argsort(angles, kind="stable")
    angles = angles[order]
    vectors = _fix_phases(vectors[:, order])
    if check:
        recon = (vectors * np.exp(1j * angles)) @ vectors.conj().T
        err = np.max(np.abs(u - recon))
        if err > 1e-8:
            raise EigenDecompositionError(f"reconstruction error {err:g} exceeds 1e-8")
    return EigenSystem(eigenvalues=angles, eigenvectors=vectors)


def generate_qkr_ensemble(spec: QkrSpec, check: bool = True) -> Iterator[EigenSystem]:
    """Yield eigen-systems of all Floquet members in member order."""
    for m in range(spec.n_members):
        yield unitary_eigs(qkr_floquet(spec, m), check=check)
