import numpy as np
import pytest

from kagome_vqe.ansatz import (
    GROUP_ORDER,
    SCHEMES,
    apply_ansatz,
    canonical_scheme,
    expand_to,
    initial_state,
    make_spec,
)
from kagome_vqe.errors import SpecError
from kagome_vqe.exactdiag import build_hamiltonian
from kagome_vqe.lattice import build_patch, colour_edges, dimer_covering
from kagome_vqe.statevec import apply_heisenberg, fidelity, init_basis_state, sector_check

from conftest import equal_up_to_phase

P24 = build_patch("2x4")


def test_parameter_counts():
    E = P24.n_edges
    assert make_spec(P24, "PerEdgeColor", 3).n_params == 18
    assert make_spec(P24, "PerHamiltonian", 5).n_params == 10
    assert make_spec(P24, "PerEdgeColorII", 4).n_params == 20
    assert make_spec(P24, "PerEdge", 2).n_params == 2 * (E + 1)
    assert make_spec(P24, "PerEdge", 2, h0_per_dimer=True).n_params == 2 * (E + 4)
    assert make_spec(P24, "PerEdge", 0).n_params == 0


def test_scheme_names():
    assert canonical_scheme("per_edge") == "PerEdge"
    assert canonical_scheme("per-edge-color-ii") == "PerEdgeColorII"
    with pytest.raises(SpecError):
        canonical_scheme("bogus")


def test_gate_sequence_shared_and_ordered():
    specs = [make_spec(P24, s, 3) for s in ("PerHamiltonian", "PerEdgeColor", "PerEdge")]
    for s in specs[1:]:
        assert np.array_equal(s.pairs, specs[0].pairs)
    s = specs[0]
    one_layer = s.group[s.layer == 0]
    order = [g for i, g in enumerate(one_layer) if i == 0 or one_layer[i - 1] != g]
    assert order == list(GROUP_ORDER)
    assert np.all(np.diff(s.layer) >= 0)
    ii = make_spec(P24, "PerEdgeColorII", 3)
    assert np.array_equal(ii.pairs, s.pairs[s.group != 0])


def test_initial_states():
    psi = initial_state(P24, "Sz0")
    H0 = build_hamiltonian(P24, "dimers")
    assert np.isclose(H0.expectation(psi), -12)
    for axis in "xyz":
        assert sector_check(psi, axis, 0)
    plus = initial_state(P24, "SzPlus")
    assert sector_check(plus, "z", 2)
    tri = build_patch("tri1")
    odd = initial_state(tri, "OddDefault")
    assert sector_check(odd, "z", -1)
    assert sector_check(initial_state(tri, "OddPlus"), "z", 3)
    with pytest.raises(SpecError):
        initial_state(tri, "Sz0")
    with pytest.raises(SpecError):
        initial_state(P24, "OddDefault")


def test_zero_parameters_identity():
    for scheme in SCHEMES:
        spec = make_spec(P24, scheme, 3)
        psi = initial_state(P24)
        out = apply_ansatz(psi.copy(), spec, np.zeros(spec.n_params))
        assert np.allclose(out.amplitudes, psi.amplitudes)


def test_tied_expansion_equivalence():
    rng = np.random.default_rng(1)
    pc = make_spec(P24, "PerEdgeColor", 3)
    pe = make_spec(P24, "PerEdge", 3, h0_per_dimer=True)
    th = rng.uniform(-1, 1, pc.n_params)
    a = apply_ansatz(initial_state(P24), pc, th)
    b = apply_ansatz(initial_state(P24), pe, expand_to(pc, pe, th))
    assert np.allclose(a.amplitudes, b.amplitudes)


def test_per_hamiltonian_equals_tied_per_edge_color():
    rng = np.random.default_rng(2)
    ph = make_spec(P24, "PerHamiltonian", 2)
    pc = make_spec(P24, "PerEdgeColor", 2)
    a_b = rng.uniform(-1, 1, 4)
    th_pc = np.concatenate([[a_b[0]] + [a_b[1]] * 5, [a_b[2]] + [a_b[3]] * 5])
    x = apply_ansatz(initial_state(P24), ph, a_b)
    y = apply_ansatz(initial_state(P24), pc, th_pc)
    assert np.allclose(x.amplitudes, y.amplitudes)


def test_circuit_matches_explicit_gate_loop():
    rng = np.random.default_rng(3)
    spec = make_spec(P24, "PerEdgeColor", 2)
    th = rng.uniform(-1, 1, spec.n_params)
    col = colour_edges(P24, "square5")
    dimers = dimer_covering(P24).dimers
    ref = initial_state(P24)
    for layer in range(2):
        base = 6 * layer
        for g in (4, 5, 1, 2, 3):
            for e in col.colour_class(g):
                apply_heisenberg(ref, e, th[base + g])
        for e in dimers:
            apply_heisenberg(ref, e, th[base])
    out = apply_ansatz(initial_state(P24), spec, th)
    assert np.allclose(out.amplitudes, ref.amplitudes)


def test_length_mismatch():
    spec = make_spec(P24, "PerEdge", 1)
    with pytest.raises(ValueError):
        apply_ansatz(initial_state(P24), spec, np.zeros(3))


@pytest.mark.parametrize("name", ["2x4", "2x6", "tri1"])
def test_symmetry_preserved_random_circuits(name):
    p = build_patch(name)
    rng = np.random.default_rng(4)
    sectors = ("Sz0", "SzPlus") if p.n_sites % 2 == 0 else ("OddDefault", "OddPlus")
    for i in range(40):
        scheme = SCHEMES[i % 4]
        spec = make_spec(p, scheme, int(rng.integers(1, 5)))
        sector = sectors[i % 2]
        psi = apply_ansatz(initial_state(p, sector), spec, rng.uniform(-np.pi, np.pi, spec.n_params))
        value = {"Sz0": 0, "SzPlus": 2, "OddDefault": -1, "OddPlus": 3}[sector]
        assert sector_check(psi, "z", value)
        if sector == "Sz0":
            assert sector_check(psi, "x", 0) and sector_check(psi, "y", 0)


def test_gate_period_half_pi():
    a = init_basis_state(3, "010")
    apply_heisenberg(a, (0, 2), 0.4)
    apply_heisenberg(a, (1, 2), 0.9)
    b = a.copy()
    apply_heisenberg(a, (0, 1), 0.3)
    apply_heisenberg(b, (0, 1), 0.3 + np.pi / 2)
    assert equal_up_to_phase(a.amplitudes, b.amplitudes)
    assert np.isclose(fidelity(a, b), 1)


def test_spec_serialisation():
    d = make_spec(P24, "PerEdge", 2).to_dict()
    assert d == {"scheme": "PerEdge", "p": 2, "patch": "2x4", "n_params": 22}
