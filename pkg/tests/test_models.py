"""Kicked rotor, lattice billiard, and spin chain builders."""

import math

import numpy as np
import pytest

from mfcross.ensembles import EigenDecompositionError, eigh
from mfcross.models import (
    BilliardSpec,
    QkrSpec,
    SpinChainSpec,
    billiard_dos_theory,
    billiard_hamiltonian,
    billiard_sites,
    qkr_floquet,
    sector_basis,
    spin_chain_block,
    unitary_eigs,
)
from mfcross.models.qkr import member_kick
from mfcross.models.spinchain import random_fields


# ---------------------------------------------------------------------------
# kicked rotor
# ---------------------------------------------------------------------------

def test_qkr_unitarity():
    spec = QkrSpec(n_dim=201, kick_strength=20000.0, trs_gamma=0.0, n_members=2, seed=1)
    u = qkr_floquet(spec, 0)
    err = np.max(np.abs(u.conj().T @ u - np.eye(201)))
    assert err < 1e-10
    sign, logdet = np.linalg.slogdet(u)
    assert abs(logdet) < 1e-8


def test_qkr_matches_brute_force_sum():
    # direct evaluation of the double sum over signed indices
    n, alpha, gamma, theta0 = 3, 5.0, 0.3, 0.1
    n_half = (n - 1) // 2
    brute = np.zeros((n, n), dtype=complex)
    for mi, m in enumerate(range(-n_half, n_half + 1)):
        for ni, nn in enumerate(range(-n_half, n_half + 1)):
            acc = 0.0j
            for l in range(-n_half, n_half + 1):
                acc += np.exp(-1j * (l * l / 2.0 - gamma * l - 2.0 * math.pi * l * (m - nn) / n))
            brute[mi, ni] = np.exp(-1j * alpha * math.cos(2.0 * math.pi * m / n + theta0)) * acc / n

    spec = QkrSpec(n_dim=3, kick_strength=alpha, trs_gamma=gamma, theta0=theta0, kick_jitter=0.0, seed=0)
    assert np.max(np.abs(qkr_floquet(spec, 0) - brute)) < 1e-13


def test_qkr_member_jitter_deterministic():
    spec = QkrSpec(n_dim=21, kick_strength=20000.0, n_members=3, kick_jitter=250.0, seed=5)
    kicks = [member_kick(spec, m) for m in range(3)]
    assert kicks == [member_kick(spec, m) for m in range(3)]
    assert len(set(kicks)) == 3
    assert all(abs(k - 20000.0) <= 250.0 for k in kicks)
    assert np.array_equal(qkr_floquet(spec, 1), qkr_floquet(spec, 1))


def test_qkr_spec_validation():
    with pytest.raises(ValueError):
        QkrSpec(n_dim=10)  # even
    spec = QkrSpec(n_dim=11)
    assert spec.theta0 == pytest.approx(math.pi / 22.0)


def test_unitary_eigs_identity_and_diagonal():
    system = unitary_eigs(np.eye(4, dtype=complex))
    assert np.allclose(system.eigenvalues, 0.0)

    u = np.diag([np.exp(1j * math.pi / 2.0), np.exp(-1j * math.pi / 2.0)])
    system = unitary_eigs(u)
    assert np.allclose(system.eigenvalues, [-math.pi / 2.0, math.pi / 2.0])


def test_unitary_eigs_random_reconstruction():
    rng = np.random.default_rng(3)
    a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    q, r = np.linalg.qr(a)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    system = unitary_eigs(q)
    recon = (system.eigenvectors * np.exp(1j * system.eigenvalues)) @ system.eigenvectors.conj().T
    assert np.max(np.abs(recon - q)) < 1e-9
    system.validate()
    assert np.all(system.eigenvalues > -math.pi) and np.all(system.eigenvalues <= math.pi)


def test_unitary_eigs_rejects_non_unitary():
    with pytest.raises(EigenDecompositionError):
        unitary_eigs(2.0 * np.eye(3, dtype=complex))


# ---------------------------------------------------------------------------
# billiard
# ---------------------------------------------------------------------------

def test_billiard_default_site_count():
    coords = billiard_sites(BilliardSpec())
    assert coords.shape[0] == 6096


def test_billiard_b0_real_symmetric():
    spec = BilliardSpec(rect_width=12, rect_height=14, ellipse_a=6, ellipse_b=5, b_field=0.0)
    h, coords = billiard_hamiltonian(spec)
    dense = h.toarray()
    assert np.max(np.abs(dense.imag)) == 0.0
    assert np.array_equal(dense, dense.T)
    assert coords.shape[0] == h.shape[0]


def test_billiard_hermitian_with_flux():
    spec = BilliardSpec(rect_width=10, rect_height=10, ellipse_a=5, ellipse_b=4, b_field=0.2)
    h, _ = billiard_hamiltonian(spec)
    dense = h.toarray()
    assert np.max(np.abs(dense - dense.conj().T)) == 0.0


def test_billiard_flux_per_plaquette():
    # product of bond phases around one plaquette equals e^(iB)
    b = 0.31
    spec = BilliardSpec(rect_width=6, rect_height=6, ellipse_a=0, ellipse_b=0, b_field=b, hopping=-1.0)
    h, coords = billiard_hamiltonian(spec)
    index = {(int(x), int(y)): i for i, (x, y) in enumerate(coords)}
    x0, y0 = 2, 3
    i00, i10 = index[(x0, y0)], index[(x0 + 1, y0)]
    i11, i01 = index[(x0 + 1, y0 + 1)], index[(x0, y0 + 1)]
    dense = h.toarray()
    loop = dense[i10, i00] * dense[i11, i10] * dense[i01, i11] * dense[i00, i01]
    loop /= abs(loop)
    assert loop == pytest.approx(np.exp(1j * b), abs=1e-12)


def test_billiard_open_square_closed_form():
    # 3x3 uncarved square: E = 4 - 2 (cos(k pi/4) + cos(k' pi/4))
    spec = BilliardSpec(rect_width=2, rect_height=2, ellipse_a=0, ellipse_b=0, b_field=0.0)
    h, coords = billiard_hamiltonian(spec)
    assert coords.shape[0] == 9
    eigenvalues = np.sort(np.linalg.eigvalsh(h.toarray().real))
    expected = np.sort(
        [
            4.0 - 2.0 * (math.cos(k * math.pi / 4.0) + math.cos(kp * math.pi / 4.0))
            for k in (1, 2, 3)
            for kp in (1, 2, 3)
        ]
    )
    assert np.allclose(eigenvalues, expected, atol=1e-12)


def test_billiard_spectrum_band_bounds():
    # Gershgorin with onsite 4 and degree <= 4: spectrum inside [0, 8]
    spec = BilliardSpec(rect_width=20, rect_height=22, ellipse_a=10, ellipse_b=9, b_field=0.0)
    h, _ = billiard_hamiltonian(spec)
    eigenvalues = np.linalg.eigvalsh(h.toarray().real)
    assert eigenvalues.min() >= 0.0 - 1e-12
    assert eigenvalues.max() <= 8.0 + 1e-12


def test_billiard_dos_theory():
    assert billiard_dos_theory(-0.5) == 0.0
    assert billiard_dos_theory(8.5) == 0.0
    assert billiard_dos_theory(4.0) == math.inf
    assert billiard_dos_theory(4.0 + 1.3) == pytest.approx(billiard_dos_theory(4.0 - 1.3), rel=1e-12)
    # K(sqrt(3)/2)/(2 pi^2), frozen from the arithmetic-geometric mean
    assert billiard_dos_theory(2.0) == pytest.approx(0.10925035897394317, rel=1e-10)


# ---------------------------------------------------------------------------
# spin chain
# ---------------------------------------------------------------------------

def spin_matrices():
    # single-site operators in the (down, up) ordering: bit set = up
    s_plus = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
    s_minus = s_plus.T.conj()
    sx = 0.5 * (s_plus + s_minus)
    sy = (s_plus - s_minus) / 2j
    sz = np.diag([-0.5, 0.5]).astype(complex)
    return sx, sy, sz


def site_operator(op, j, length):
    out = np.array([[1.0 + 0.0j]])
    eye = np.eye(2, dtype=complex)
    for k in range(length):
        out = np.kron(op, out) if k == j else np.kron(eye, out)
    return out


def full_chain_hamiltonian(length, j_coupling, k_chirality, fields):
    sx, sy, sz = spin_matrices()
    ops = [
        [site_operator(sx, j, length), site_operator(sy, j, length), site_operator(sz, j, length)]
        for j in range(length)
    ]
    dim = 2**length
    ham = np.zeros((dim, dim), dtype=complex)
    for j in range(length):
        j1, j2 = (j + 1) % length, (j + 2) % length
        ham += j_coupling * sum(ops[j][a] @ ops[j1][a] for a in range(3))
        ham += fields[j] * ops[j][2]
        cross = [
            ops[j1][1] @ ops[j2][2] - ops[j1][2] @ ops[j2][1],
            ops[j1][2] @ ops[j2][0] - ops[j1][0] @ ops[j2][2],
            ops[j1][0] @ ops[j2][1] - ops[j1][1] @ ops[j2][0],
        ]
        ham += k_chirality * sum(ops[j][a] @ cross[a] for a in range(3))
    return ham


def project_to_sector(ham, basis, length):
    proj = np.zeros((2**length, len(basis)))
    for col, state in enumerate(basis):
        proj[state, col] = 1.0
    return proj.T @ ham @ proj


def test_sector_dimensions():
    assert sector_basis(13, 0.5).size == 1716
    assert sector_basis(4, 0.0).size == 6
    assert sector_basis(10, 0.0).size == 252
    assert SpinChainSpec(length=13, sz_sector=0.5).n_up == 7


def test_block_matches_tensor_product_oracle():
    spec = SpinChainSpec(length=4, j_coupling=1.0, h_strength=0.2, k_chirality=0.37, sz_sector=0.0, seed=7)
    fields = random_fields(spec, 0)
    full = full_chain_hamiltonian(4, 1.0, 0.37, fields)
    oracle = project_to_sector(full, sector_basis(4, 0.0), 4)
    block = spin_chain_block(spec, 0)
    assert np.max(np.abs(oracle - block)) < 1e-12


def test_full_hamiltonian_commutes_with_total_sz():
    _, _, sz = spin_matrices()
    length = 6
    fields = random_fields(SpinChainSpec(length=length, h_strength=0.3, sz_sector=0.0, seed=2), 0)
    ham = full_chain_hamiltonian(length, 1.0, 0.45, fields)
    sz_total = sum(site_operator(sz, j, length) for j in range(length))
    assert np.max(np.abs(ham @ sz_total - sz_total @ ham)) < 1e-12


@pytest.mark.parametrize("k", [0.0, 0.01, 0.6])
def test_block_hermitian(k):
    spec = SpinChainSpec(length=8, k_chirality=k, sz_sector=0.0, seed=4)
    block = spin_chain_block(spec, 0)
    assert np.max(np.abs(block - block.conj().T)) < 1e-12


def test_block_real_symmetric_without_chirality():
    spec = SpinChainSpec(length=8, k_chirality=0.0, sz_sector=0.0, seed=4)
    block = spin_chain_block(spec, 0)
    assert np.max(np.abs(block.imag)) == 0.0


def test_chirality_drives_toward_unitary_statistics():
    # mid-spectrum second dimension grows with the time-reversal-breaking term
    from mfcross.estimators import spectral_profile

    means = {}
    for k in (0.0, 0.6):
        spec = SpinChainSpec(length=10, k_chirality=k, sz_sector=0.0, seed=15)
        system = eigh(spin_chain_block(spec, 0), check=False)
        profile = spectral_profile([system])
        n = len(profile.d2)
        mid = slice(int(0.4 * n), int(0.6 * n))
        means[k] = float(np.mean(profile.d2[mid]))
    assert means[0.6] > means[0.0]


def test_random_fields_deterministic():
    spec = SpinChainSpec(length=8, h_strength=0.2, sz_sector=0.0, seed=11)
    assert np.array_equal(random_fields(spec, 0), random_fields(spec, 0))
    assert not np.array_equal(random_fields(spec, 0), random_fields(spec, 1))
    assert random_fields(spec, 0).size == 8


def test_invalid_sector_rejected():
    with pytest.raises(ValueError):
        SpinChainSpec(length=4, sz_sector=0.5)  # non-integer up count
    with pytest.raises(ValueError):
        SpinChainSpec(length=4, sz_sector=3.0)  # beyond the chain
