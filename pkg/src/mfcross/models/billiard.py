"""Tight-binding quarter Sinai billiard with a perpendicular flux.

A rectangle of rect_width x rect_height lattice spacings (so
(rect_width+1) x (rect_height+1) sites) with a quarter ellipse carved
out of the corner at the origin: sites with
(x/ellipse_a)^2 + (y/ellipse_b)^2 <= 1 are removed, boundary included.
With the default 80 x 90 rectangle and 45 x 35 ellipse this leaves
exactly 6096 sites.

The magnetic field enters by the Peierls substitution in the Landau
gauge: every vertical bond (x, y) -> (x, y+1) carries the phase
exp(i B x), giving a flux of B radians per plaquette.  B = 0 keeps the
Hamiltonian real symmetric (orthogonal class); finite flux breaks time
reversal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from ..specfun import elliptic_k_modulus

__all__ = [
    "BilliardSpec",
    "billiard_sites",
    "billiard_hamiltonian",
    "billiard_dos_theory",
]


@dataclass(frozen=True)
class BilliardSpec:
    """Geometry and couplings of the quarter Sinai billiard."""

    rect_width: int = 80
    rect_height: int = 90
    ellipse_a: int = 45
    ellipse_b: int = 35
    onsite: float = 4.0
    hopping: float = -1.0
    b_field: float = 0.0

    def __post_init__(self):
        if self.rect_width < 1 or self.rect_height < 1:
            raise ValueError("rectangle dimensions must be positive")
        if self.ellipse_a < 0 or self.ellipse_b < 0:
            raise ValueError("ellipse semi-axes must be >= 0")


def billiard_sites(spec: BilliardSpec) -> np.ndarray:
    """Kept lattice sites as an (n, 2) integer array, lexicographic order.

    A zero semi-axis disables the carving (plain rectangle).
    """
    xs = np.arange(spec.rect_width + 1)
    ys = np.arange(spec.rect_height + 1)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    if spec.ellipse_a == 0 or spec.ellipse_b == 0:
        keep = np.ones_like(gx, dtype=bool)
    else:
        keep = (gx / spec.ellipse_a) ** 2 + (gy / spec.ellipse_b) ** 2 > 1.0
    coords = np.column_stack([gx[keep], gy[keep]])
    if coords.shape[0] == 0:
        raise ValueError("geometry leaves no sites")
    return coords


def billiard_hamiltonian(spec: BilliardSpec):
    """Sparse complex Hermitian Hamiltonian and the site coordinate list.

    Onsite energy on the diagonal, nearest-neighbour hopping on the
    bonds, Peierls phase exp(i B x) on vertical bonds.
    """
    coords = billiard_sites(spec)
    n = coords.shape[0]
    index = {(int(x), int(y)): i for i, (x, y) in enumerate(coords)}

    rows, cols, vals = [], [], []
    for i, (x, y) in enumerate(coords):
        x, y = int(x), int(y)
        rows.append(i)
        cols.append(i)
        vals.append(complex(spec.onsite))
        j = index.get((x + 1, y))
        if j is not None:
            amp = complex(spec.hopping)
            rows += [j, i]
            cols += [i, j]
            vals += [amp, amp.conjugate()]
        j = index.get((x, y + 1))
        if j is not None:
            amp = spec.hopping * complex(math.cos(spec.b_field * x), math.sin(spec.b_field * x))
            rows += [j, i]
            cols += [i, j]
            vals += [amp, amp.conjugate()]
    h = sparse.csr_matrix((vals, (rows, cols)), shape=(n, n), dtype=complex)
    return h, coords


def billiard_dos_theory(e):
    """Infinite-lattice density of states of the 2-D square lattice.

    rho(E) = K(sqrt(1 - ((E-4)/4)^2)) / (2 pi^2) inside the band
    0 < E < 8, zero outside; logarithmically divergent at the band
    centre E = 4 (returns +inf exactly there).
    """
    e = np.asarray(e, dtype=float)
    u = (e - 4.0) / 4.0
    inside = np.abs(u) < 1.0
    out = np.zeros_like(e)
    if np.any(inside):
        k = np.sqrt(np.clip(1.0 - u[inside] ** 2, 0.0, 1.0))
        vals = np.empty(k.shape)
        at_centre = k >= 1.0
        vals[at_centre] = np.inf
        vals[~at_centre] = elliptic_k_modulus(k[~at_centre]) / (2.0 * math.pi**2)
        out[inside] = vals
    return float(out) if out.ndim == 0 else out
