import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from kagome_vqe import statevec as sv
from kagome_vqe.exactdiag import dense_matrix, hamiltonian_from_edges

from conftest import equal_up_to_phase, random_state

PAIR_H = dense_matrix(hamiltonian_from_edges(2, [(0, 1)]))


def singlet():
    return sv.apply_singlet_prep(sv.init_basis_state(2), (0, 1))


def test_basis_state_indexing():
    assert np.allclose(sv.init_basis_state(2, "00").amplitudes, [1, 0, 0, 0])
    assert np.allclose(sv.init_basis_state(1, "1").amplitudes, [0, 1])
    assert sv.init_basis_state(3, "101").amplitudes[5] == 1
    assert sv.init_basis_state(3, "100").amplitudes[1] == 1


def test_basis_state_rejects_bad_input():
    with pytest.raises(ValueError):
        sv.init_basis_state(2, "0")
    with pytest.raises(ValueError):
        sv.init_basis_state(25)


def test_heisenberg_identity_at_zero():
    s = random_state(4, 1)
    before = s.amplitudes.copy()
    sv.apply_heisenberg(s, (1, 3), 0.0)
    assert np.allclose(s.amplitudes, before)


def test_heisenberg_quarter_pi_is_swap():
    s = sv.apply_heisenberg(sv.init_basis_state(2, "01"), (0, 1), np.pi / 4)
    assert equal_up_to_phase(s.amplitudes, sv.init_basis_state(2, "10").amplitudes)
    u = expm(-1j * np.pi / 4 * PAIR_H)
    swap = np.eye(4)[[0, 2, 1, 3]]
    assert np.allclose(u, np.exp(-1j * np.pi / 4) * swap)


def test_heisenberg_on_singlet_is_phase():
    s = singlet()
    ref = s.amplitudes.copy()
    sv.apply_heisenberg(s, (0, 1), 0.3)
    assert np.allclose(s.amplitudes, np.exp(3j * 0.3) * ref)


@given(theta=st.floats(-4, 4), k=st.integers(0, 3), l=st.integers(0, 3), seed=st.integers(0, 99))
def test_heisenberg_matches_matrix_exponential(theta, k, l, seed):
    if k == l:
        return
    s = random_state(4, seed)
    full = dense_matrix(hamiltonian_from_edges(4, [(k, l)]))
    expected = expm(-1j * theta * full) @ s.amplitudes
    sv.apply_heisenberg(s, (k, l), theta)
    assert np.allclose(s.amplitudes, expected, atol=1e-12)
    assert abs(s.norm() - 1) < 1e-12


def test_heisenberg_bad_pair():
    s = sv.init_basis_state(3)
    with pytest.raises(IndexError):
        sv.apply_heisenberg(s, (1, 1), 0.1)
    with pytest.raises(IndexError):
        sv.apply_heisenberg(s, (0, 3), 0.1)


def test_singlet_prep_sign():
    # (|01> - |10>)/sqrt2 with qubit 0 written first
    amps = singlet().amplitudes
    assert np.allclose(amps, [0, -1 / np.sqrt(2), 1 / np.sqrt(2), 0])
    assert np.allclose(PAIR_H @ amps, -3 * amps)


@given(seed=st.integers(0, 1000), k=st.integers(0, 2), l=st.integers(0, 2))
def test_unprep_inverts_prep(seed, k, l):
    if k == l:
        return
    s = random_state(3, seed)
    ref = s.amplitudes.copy()
    sv.apply_singlet_unprep(sv.apply_singlet_prep(s, (k, l)), (k, l))
    assert np.allclose(s.amplitudes, ref)


def test_unprep_singlet_gives_down_down():
    s = sv.apply_singlet_unprep(singlet(), (0, 1))
    assert np.isclose(s.probabilities()[0], 1.0)
    batch = sv.sample(s, "Z", 1000, seed=0)
    assert set(batch.bitstrings()) == {"00"}


def test_fidelity():
    a = random_state(3, 0)
    assert np.isclose(sv.fidelity(a, a), 1.0)
    assert sv.fidelity(sv.init_basis_state(2, "01"), sv.init_basis_state(2, "10")) == 0
    trip = sv.StateVector(2, np.array([0, 1, 1, 0]) / np.sqrt(2))
    assert np.isclose(sv.fidelity(singlet(), trip), 0)
    with pytest.raises(ValueError):
        sv.overlap(a, random_state(2, 0))


def test_total_spin_conventions():
    s = singlet()
    for axis in "xyz":
        assert abs(sv.total_spin(s, axis)) < 1e-12
        assert sv.sector_check(s, axis, 0)
    up = sv.init_basis_state(2, "11")
    assert np.isclose(sv.total_spin_z(up), 2)
    assert sv.sector_check(up, "z", 2)
    assert not sv.sector_check(up, "x", 0)


def test_physical_spin_is_rotation_of_pauli():
    # an X eigenstate with eigenvalue +1 on every qubit has S^x = n
    plus = sv.StateVector(2, np.full(4, 0.5))
    assert np.isclose(sv.total_spin(plus, "x"), 2)
    # Y eigenstate +1 of Pauli Y is -1 of the physical spin
    y = sv.StateVector(1, np.array([1, 1j]) / np.sqrt(2))
    assert np.isclose(sv.total_spin(y, "y"), -1)


def test_sampling_all_down():
    b = sv.sample(sv.init_basis_state(2), "Z", 500, seed=3)
    assert set(b.bitstrings()) == {"00"}
    assert b.kept == 500 and b.discarded == 0


def test_singlet_sampling_frequencies():
    shots = 100_000
    b = sv.sample(singlet(), "Z", shots, seed=11)
    freq = np.bincount(b.outcomes, minlength=4) / shots
    sigma = np.sqrt(0.25 / shots)
    assert abs(freq[1] - 0.5) < 5 * sigma and abs(freq[2] - 0.5) < 5 * sigma
    assert freq[0] == 0 and freq[3] == 0


def test_sampling_reproducible():
    s = random_state(4, 5)
    a = sv.sample(s, "Y", 200, seed=9)
    b = sv.sample(s, "Y", 200, seed=9)
    assert np.array_equal(a.outcomes, b.outcomes)


def test_post_selection_counts():
    s = random_state(4, 2)
    b = sv.sample(s, "Z", 1000, seed=1, post_select=True)
    assert b.kept + b.discarded == 1000
    assert np.all(sv.outcome_values(4, "Z")[b.outcomes] == 0)


def test_post_selection_keeps_singlet_products():
    s = sv.init_basis_state(4)
    sv.apply_singlet_prep(s, (0, 1))
    sv.apply_singlet_prep(s, (2, 3))
    for basis in "XYZ":
        b = sv.sample(s, basis, 2000, seed=4, post_select=True)
        assert b.discarded == 0


def test_basis_rotation_expectations():
    s = random_state(3, 8)
    X = np.array([[0, 1], [1, 0]])
    Y = np.array([[0, -1j], [1j, 0]])
    for basis, P, sign in (("X", X, 1), ("Y", Y, -1)):
        op = sum(np.kron(np.kron(*[P if q == t else np.eye(2) for q in (2, 1)]), P if t == 0 else np.eye(2))
                 for t in range(3))
        exact = sign * np.vdot(s.amplitudes, op @ s.amplitudes).real
        assert np.isclose(sv.total_spin(s, basis.lower()), exact)


def test_binary_dump_roundtrip():
    s = random_state(3, 4)
    t = sv.StateVector.from_bytes(3, s.to_bytes())
    assert np.array_equal(s.amplitudes, t.amplitudes)
    assert len(s.to_bytes()) == 16 * 8


def test_swap_gate():
    s = sv.init_basis_state(3, "100")
    sv.apply_swap(s, (0, 2))
    assert s.amplitudes[4] == 1


def test_gate_locality_marginals():
    # pair (0, 1) in a product with qubit 2: qubit-2 marginal is unchanged
    a = random_state(2, 1).amplitudes
    c = random_state(1, 2).amplitudes
    s = sv.StateVector(3, np.kron(c, a))
    before = s.probabilities().reshape(2, 4).sum(axis=1)
    sv.apply_heisenberg(s, (0, 1), 0.77)
    after = s.probabilities().reshape(2, 4).sum(axis=1)
    assert np.allclose(before, after)


def test_norm_preserved_over_long_sequence():
    s = random_state(6, 0)
    rng = np.random.default_rng(0)
    for _ in range(500):
        k, l = rng.choice(6, 2, replace=False)
        sv.apply_heisenberg(s, (k, l), rng.uniform(-3, 3))
    assert abs(s.norm() - 1) < 1e-12
