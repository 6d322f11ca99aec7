import math

import numpy as np
import pytest

from kagome_vqe.ansatz import apply_ansatz, initial_state, make_spec
from kagome_vqe.errors import EstimationError, SpecError
from kagome_vqe.exactdiag import build_hamiltonian, ground_state, hamiltonian_from_edges
from kagome_vqe.lattice import KagomePatch, build_patch
from kagome_vqe.observables import (
    bond_energy,
    default_q_grid,
    dimer_dimer,
    dimer_protocol,
    estimate_energy_from_shots,
    path_pairs,
    spin_gap,
    spin_spin,
    structure_factor,
    zz_matrix,
)
from kagome_vqe.statevec import apply_singlet_prep, init_basis_state, sample

P24 = build_patch("2x4")


def singlet_pair():
    s = init_basis_state(2, "00")
    return apply_singlet_prep(s, (0, 1))


def ground(patch):
    return ground_state(build_hamiltonian(patch), sector=0).state(0)


def test_singlet_correlations():
    s = singlet_pair()
    assert spin_spin(s, [(0, 1)], signed=True)[0] == pytest.approx(-1)
    assert spin_spin(s, [(0, 1)])[0] == pytest.approx(1)
    assert bond_energy(s, (0, 1)) == pytest.approx(-3)


def test_path_pairs():
    assert path_pairs([4, 7, 9]) == [(4, 4), (4, 7), (4, 9)]


def test_zz_matrix_symmetric_unit_diagonal():
    psi = ground(P24)
    C = zz_matrix(psi)
    assert np.allclose(C, C.T) and np.allclose(np.diag(C), 1)
    # total S^z = 0 makes every row sum vanish
    assert np.allclose(C.sum(axis=1), 0, atol=1e-10)


def test_dimer_protocol_matches_exact():
    psi = ground(P24)
    e1, e2 = (0, 1), (6, 7)
    exact_joint = dimer_dimer(psi, [(e1, e2)])[0] + bond_energy(psi, e1) * bond_energy(psi, e2)
    est = dimer_protocol(psi, e1, e2, shots=20000, seed=5)
    assert abs(est.joint - exact_joint) < 5 * est.joint_err
    assert abs(est.first - bond_energy(psi, e1)) < 0.1


def test_naive_basis_products_disagree():
    """Per-basis products of bond values drop the cross terms of the two dot products."""
    psi = ground(P24)
    e1, e2 = (0, 1), (6, 7)
    exact_joint = dimer_dimer(psi, [(e1, e2)])[0] + bond_energy(psi, e1) * bond_energy(psi, e2)
    naive = 0.0
    for b in "XYZ":
        s = sample(psi, b, 20000, seed=9).spins()
        naive += np.mean(s[:, 0] * s[:, 1] * s[:, 6] * s[:, 7])
    assert abs(naive - exact_joint) > 0.5


def test_dimer_requires_disjoint_bonds():
    with pytest.raises(SpecError):
        dimer_dimer(ground(P24), [((0, 1), (1, 2))])


def test_structure_factor_properties():
    psi = ground(P24)
    qx, qy, S = structure_factor(psi, P24)
    assert S.shape == (81, 81)
    assert np.all(np.isfinite(S)) and np.all(S > -1e-10)
    assert np.isclose(S[40, 40], 0, atol=1e-10)  # S^z = 0 kills q = 0
    assert np.isclose(qx[0, 0], -1.2 * 2 * np.pi / 3)
    one = np.array([[0.0]]), np.array([[0.0]])
    product = init_basis_state(8, "11111111")
    assert structure_factor(product, P24, one)[2][0, 0] == pytest.approx(8)


def test_structure_factor_small_grid_explicit():
    psi = ground(P24)
    grid = default_q_grid(points=5)
    _, _, S = structure_factor(psi, P24, grid)
    C = zz_matrix(psi)
    r = P24.positions
    q = np.array([grid[0][1, 3], grid[1][1, 3]])
    direct = sum(np.exp(1j * q @ (r[i] - r[j])) * C[i, j] for i in range(8) for j in range(8)) / 8
    assert abs(direct.imag) < 1e-12
    assert S[1, 3] == pytest.approx(direct.real)


def test_spin_gap_single_edge():
    edge = KagomePatch("edge", np.array([[0, 0], [1, 0]]), ((0, 1),))
    res = spin_gap(edge)
    assert res.gap == pytest.approx(4) and res.gap_spin_units == pytest.approx(1)
    two = hamiltonian_from_edges(4, [(0, 1), (2, 3)])
    assert spin_gap(two).gap == pytest.approx(4)
    with pytest.raises(SpecError):
        KagomePatch("two", np.array([[0, 0], [1, 0], [0, 5], [1, 5]]), ((0, 1), (2, 3)))


def test_spin_gap_disjoint_edges():
    pos = np.array([[0, 0], [1, 0], [0.5, np.sqrt(3) / 2], [1.5, np.sqrt(3) / 2]])
    # a connected 4-site chain keeps the patch valid; compare with the dense answer
    chain = KagomePatch("chain", pos, ((0, 1), (0, 2), (1, 3)))
    H = build_hamiltonian(chain)
    from kagome_vqe.exactdiag import dense_matrix
    from kagome_vqe.statevec import outcome_values
    M = dense_matrix(H)
    sz = -outcome_values(4, "Z")
    e0 = np.linalg.eigvalsh(M[np.ix_(sz == 0, sz == 0)])[0]
    e2 = np.linalg.eigvalsh(M[np.ix_(sz == 2, sz == 2)])[0]
    assert spin_gap(chain).gap == pytest.approx(e2 - e0)


def test_spin_gap_vqe_matches_exact():
    exact = spin_gap(P24)
    vqe = spin_gap(P24, method="vqe", p=5, scheme="PerEdge", restarts=3, seed=0)
    assert abs(vqe.gap - exact.gap) < 1e-6
    assert set(vqe.diagnostics) == {"Sz0", "SzPlus"}


def test_spin_gap_odd_patch():
    res = spin_gap(build_patch("tri1"))
    assert res.sectors == ("OddDefault", "OddPlus") and res.gap > 0


def test_energy_from_shots():
    psi = ground(P24)
    E = build_hamiltonian(P24).expectation(psi)
    batches = {b: sample(psi, b, 4000, seed=i) for i, b in enumerate("XYZ")}
    est, se = estimate_energy_from_shots(batches, P24)
    assert se > 0 and abs(est - E) < 5 * se
    ps, se_ps = estimate_energy_from_shots(batches, P24, post_select=True)
    assert abs(ps - E) < 5 * se_ps
    with pytest.raises(EstimationError):
        estimate_energy_from_shots({"X": batches["X"]}, P24)


def test_energy_from_shots_product_state_exact():
    s = init_basis_state(2, "01")
    batches = {b: sample(s, b, 100, seed=0) for b in "XYZ"}
    est, se = estimate_energy_from_shots(batches, [(0, 1)])
    assert est == pytest.approx(-1, abs=0.5)
    z = estimate_energy_from_shots({"X": sample(s, "Z", 10, 0), "Y": sample(s, "Z", 10, 0),
                                    "Z": sample(s, "Z", 10, 0)}, [(0, 1)])
    assert z == (-3.0, 0.0)


def test_post_selection_can_discard_everything():
    s = init_basis_state(2, "11")
    batches = {b: sample(s, b, 50, seed=1) for b in "XYZ"}
    with pytest.raises(EstimationError):
        estimate_energy_from_shots(batches, [(0, 1)], post_select=True)


def test_vqe_state_correlations_track_exact():
    p = build_patch("2x6")
    psi = ground(p)
    pairs = path_pairs(p.path)
    spec = make_spec(p, "PerEdgeColor", 1)
    other = apply_ansatz(initial_state(p), spec, np.full(spec.n_params, 0.1))
    assert not np.allclose(spin_spin(psi, pairs), spin_spin(other, pairs))
    assert spin_spin(psi, pairs)[0] == pytest.approx(1)
