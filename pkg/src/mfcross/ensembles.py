"""Sampling of the interpolating Gaussian matrix ensemble.

The family H = sqrt(1-alpha^2) H1 + alpha H2 with H1 drawn from the
real-symmetric Gaussian class and H2 from the complex-Hermitian one
interpolates between the two as alpha runs over [0, 1].  The crossover
of eigenvector statistics is governed solely by epsilon = alpha^2 * N.

Reproducibility contract: member m of an ensemble draws all its
randomness from a dedicated generator seeded with SeedSequence([seed, m])
(PCG64), and Gaussians are produced by inverse-transform sampling of
uniforms.  Members are therefore independent of generation order and of
any worker-pool layout.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy import special

__all__ = [
    "EnsembleSpec",
    "EigenSystem",
    "EigenDecompositionError",
    "member_rng",
    "gaussian",
    "sample_pandey_mehta",
    "eigh",
    "semicircle_density",
    "generate_ensemble",
    "save_eigensystems",
    "load_eigensystems",
]

_CACHE_MAGIC = b"MFXEIG01"
_CACHE_VERSION = 1
_HEADER_STRUCT = struct.Struct("<8sIIIQdd")


class EigenDecompositionError(RuntimeError):
    """Eigen-decomposition failed or violated its accuracy contract."""


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of one interpolating Gaussian ensemble.

    ``v2`` is the elementary element variance; the default
    1/(4 N (1 + alpha^2)) puts the bulk of the spectrum in [-1, 1].
    Normalized-eigenvector statistics do not depend on it.
    """

    n_dim: int
    alpha: float
    n_members: int
    seed: int
    v2: float | None = None

    def __post_init__(self):
        if self.n_dim < 2:
            raise ValueError("n_dim must be >= 2")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.n_members < 1:
            raise ValueError("n_members must be >= 1")
        if self.v2 is None:
            object.__setattr__(
                self, "v2", 1.0 / (4.0 * self.n_dim * (1.0 + self.alpha**2))
            )
        if self.v2 <= 0:
            raise ValueError("v2 must be > 0")

    def epsilon(self) -> float:
        """Rescaled crossover parameter alpha^2 * N."""
        return self.alpha**2 * self.n_dim


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues (or eigen-angles) with orthonormal eigenvectors.

    ``eigenvectors[:, i]`` is the unit-norm eigenvector belonging to
    ``eigenvalues[i]``; eigenvalues are sorted ascending.  The matrix
    may be real when the operator was real symmetric.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n_dim(self) -> int:
        return self.eigenvectors.shape[0]

    def validate(self, norm_tol: float = 1e-12, ortho_tol: float = 1e-10) -> None:
        """Check ordering, column norms, and pairwise orthogonality."""
        if np.any(np.diff(self.eigenvalues) < 0):
            raise ValueError("eigenvalues must be sorted ascending")
        gram = self.eigenvectors.conj().T @ self.eigenvectors
        norms_err = np.max(np.abs(np.diag(gram) - 1.0))
        if norms_err > norm_tol:
            raise ValueError(f"eigenvector norms off by {norms_err:g}")
        off = gram - np.diag(np.diag(gram))
        ortho_err = np.max(np.abs(off)) if off.size else 0.0
        if ortho_err > ortho_tol:
            raise ValueError(f"eigenvectors not orthogonal: {ortho_err:g}")


def member_rng(seed: int, member_index: int) -> np.random.Generator:
    """Independent substream for one ensemble member.

    The (seed, member) pair is hashed by numpy's SeedSequence into a
    PCG64 state, so substreams never overlap and generation order does
    not matter.
    """
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence([int(seed), int(member_index)]))
    )


def gaussian(rng: np.random.Generator, size) -> np.ndarray:
    """Standard normals by inverse-transform sampling of uniforms.

    Fixed method (ndtri of uniforms) so streams stay reproducible; the
    zero-probability u = 0 corner is nudged to the smallest positive
    double to keep the output finite.
    """
    u = rng.random(size)
    zero = u == 0.0
    if np.any(zero):
        u[zero] = np.nextafter(0.0, 1.0)
    return special.ndtri(u)


def sample_pandey_mehta(spec: EnsembleSpec, member_index: int) -> np.ndarray:
    """One Hermitian member of the interpolating ensemble.

    Draw order (fixed for reproducibility): H1 diagonal, H1 upper
    triangle, H2 diagonal, H2 upper real, H2 upper imaginary.  Diagonal
    variances are 2 v2, every off-diagonal part has variance v2.
    """
    if member_index < 0 or member_index >= spec.n_members:
        raise ValueError("member_index out of range")
    n = spec.n_dim
    v = math.sqrt(spec.v2)
    rng = member_rng(spec.seed, member_index)
    iu = np.triu_indices(n, k=1)
    n_off = iu[0].size

    diag1 = gaussian(rng, n) * (math.sqrt(2.0) * v)
    off1 = gaussian(rng, n_off) * v
    diag2 = gaussian(rng, n) * (math.sqrt(2.0) * v)
    off2_re = gaussian(rng, n_off) * v
    off2_im = gaussian(rng, n_off) * v

    h1 = np.zeros((n, n))
    h1[iu] = off1
    h1 = h1 + h1.T
    h1[np.diag_indices(n)] = diag1

    h2 = np.zeros((n, n), dtype=complex)
    h2[iu] = off2_re + 1j * off2_im
    h2 = h2 + h2.conj().T
    h2[np.diag_indices(n)] = diag2

    return math.sqrt(1.0 - spec.alpha**2) * h1 + spec.alpha * h2


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-magnitude entry is real positive."""
    idx = np.argmax(np.abs(vectors), axis=0)
    lead = vectors[idx, np.arange(vectors.shape[1])]
    if np.iscomplexobj(vectors):
        scale = np.abs(lead)
        scale[scale == 0] = 1.0
        return vectors * (lead.conj() / scale)
    sign = np.sign(lead)
    sign[sign == 0] = 1.0
    return vectors * sign


def eigh(h: np.ndarray, check: bool = True) -> EigenSystem:
    """Hermitian eigen-decomposition with fixed ordering and phases.

    Eigenvalues ascending (LAPACK order; ties keep their returned
    order), column phases fixed by the largest component.  With
    ``check`` the reconstruction H = V diag(w) V+ is verified to
    1e-9 * max|H|.
    """
    h = np.asarray(h)
    herm_err = np.max(np.abs(h - h.conj().T))
    if herm_err > 1e-12:
        raise EigenDecompositionError(f"input not Hermitian: max|H - H+| = {herm_err:g}")
    w, vectors = np.linalg.eigh(h)
    vectors = _fix_phases(vectors)
    if check:
        recon = (vectors * w) @ vectors.conj().T
        scale = max(np.max(np.abs(h)), 1e-300)
        err = np.max(np.abs(h - recon)) / scale
        if err > 1e-9:
            raise EigenDecompositionError(
                f"reconstruction error {err:g} exceeds 1e-9 (n={h.shape[0]}, "
                f"max|H|={scale:g})"
            )
    return EigenSystem(eigenvalues=w, eigenvectors=vectors)


def semicircle_density(e, spec: EnsembleSpec):
    """Large-N eigenvalue density 2/(pi R^2) sqrt(R^2 - E^2) on [-R, R]."""
    radius2 = 4.0 * spec.n_dim * spec.v2 * (1.0 + spec.alpha**2)
    e = np.asarray(e, dtype=float)
    out = np.where(
        e * e <= radius2,
        2.0 / (np.pi * radius2) * np.sqrt(np.maximum(radius2 - e * e, 0.0)),
        0.0,
    )
    return float(out) if out.ndim == 0 else out


def generate_ensemble(spec: EnsembleSpec, check: bool = True) -> Iterator[EigenSystem]:
    """Yield the eigen-systems of all members in member-index order."""
    for m in range(spec.n_members):
        try:
            yield eigh(sample_pandey_mehta(spec, m), check=check)
        except EigenDecompositionError as exc:
            raise EigenDecompositionError(f"member {m}: {exc}") from exc


# ---------------------------------------------------------------------------
# Binary cache
# ---------------------------------------------------------------------------

def save_eigensystems(path, spec: EnsembleSpec, systems) -> None:
    """Write eigen-systems to a little-endian binary cache.

    Layout: header (magic, version, N, n_members, seed, alpha, v2),
    then per member N float64 eigenvalues followed by the N x N
    complex128 eigenvector matrix (C order, interleaved re/im).
    """
    with open(path, "wb") as fh:
        fh.write(
            _HEADER_STRUCT.pack(
                _CACHE_MAGIC,
                _CACHE_VERSION,
                spec.n_dim,
                spec.n_members,
                spec.seed,
                spec.alpha,
                spec.v2,
            )
        )
        count = 0
        for system in systems:
            fh.write(np.ascontiguousarray(system.eigenvalues, dtype="<f8").tobytes())
            fh.write(np.ascontiguousarray(system.eigenvectors, dtype="<c16").tobytes())
            count += 1
        if count != spec.n_members:
            raise ValueError(f"expected {spec.n_members} members, wrote {count}")


def load_eigensystems(path):
    """Read a cache written by ``save_eigensystems``.

    Returns ``(spec, systems)`` with the stored EnsembleSpec and the
    list of eigen-systems.
    """
    with open(path, "rb") as fh:
        header = fh.read(_HEADER_STRUCT.size)
        magic, version, n, n_members, seed, alpha, v2 = _HEADER_STRUCT.unpack(header)
        if magic != _CACHE_MAGIC:
            raise ValueError("not an eigen-system cache file")
        if version != _CACHE_VERSION:
            raise ValueError(f"unsupported cache version {version}")
        spec = EnsembleSpec(n_dim=n, alpha=alpha, n_members=n_members, seed=seed, v2=v2)
        systems = []
        for _ in range(n_members):
            evals = np.frombuffer(fh.read(8 * n), dtype="<f8").copy()
            vecs = np.frombuffer(fh.read(16 * n * n), dtype="<c16").reshape(n, n).copy()
            systems.append(EigenSystem(eigenvalues=evals, eigenvectors=vecs))
    return spec, systems
