"""Physical systems whose eigenvectors feed the estimators.

Three time-reversal-breaking knobs realize the orthogonal-to-unitary
crossover: the kicked-rotor phase gamma, the lattice magnetic flux, and
the three-site spin-chirality coupling.
"""

from .qkr import QkrSpec, qkr_floquet, unitary_eigs, generate_qkr_ensemble
from .billiard import (
    BilliardSpec,
    billiard_sites,
    billiard_hamiltonian,
    billiard_dos_theory,
)
from .spinchain import SpinChainSpec, sector_basis, random_fields, spin_chain_block

__all__ = [
    "QkrSpec",
    "qkr_floquet",
    "unitary_eigs",
    "generate_qkr_ensemble",
    "BilliardSpec",
    "billiard_sites",
    "billiard_hamiltonian",
    "billiard_dos_theory",
    "SpinChainSpec",
    "sector_basis",
    "random_fields",
    "spin_chain_block",
]
