"""Finite-size multifractal dimensions across the orthogonal-to-unitary crossover.

Semi-analytic eigenvector-component statistics of the interpolating
Gaussian ensemble, Monte Carlo sampling of the matrix model, three
physical realizations (kicked rotor, lattice billiard, chirality spin
chain), and a likelihood fitter for the crossover parameter.
"""

from .specfun import (
    DomainError,
    QuadratureError,
    QuadratureResult,
    digamma,
    elliptic_k_modulus,
    integrate_adaptive,
    ln_gamma,
    tricomi_u,
    tricomi_u_ln,
)
from .analytic import (
    CrossoverParam,
    FractalDimensionPoint,
    d_q_crossover,
    d_q_oe,
    d_q_ue,
    moment_crossover,
    pdf_crossover,
    pdf_crossover_log,
    pdf_oe_finite,
    pdf_oe_limit,
    pdf_ue_finite,
    pdf_ue_limit,
    s_q_inf_crossover,
    s_q_inf_oe,
    s_q_inf_ue,
    sample_crossover,
    xlogx_crossover,
)
from .ensembles import (
    EigenSystem,
    EnsembleSpec,
    eigh,
    generate_ensemble,
    load_eigensystems,
    sample_pandey_mehta,
    save_eigensystems,
    semicircle_density,
)
from .estimators import (
    ComponentHistogram,
    EnsembleAverages,
    EpsilonFit,
    SpectralProfile,
    StateStatistics,
    component_histogram,
    ensemble_avg_dq,
    fit_epsilon,
    scaled_components,
    spectral_profile,
    state_statistics,
)
from .models import (
    BilliardSpec,
    QkrSpec,
    SpinChainSpec,
    billiard_dos_theory,
    billiard_hamiltonian,
    billiard_sites,
    generate_qkr_ensemble,
    qkr_floquet,
    sector_basis,
    spin_chain_block,
    unitary_eigs,
)

__version__ = "0.1.0"
