"""Hamiltonian builders, states, and the engineered-interaction structure."""

import numpy as np
import pytest

from conftest import baths_three, baths_two, engineered_spec, star_spec
from qtmsim import model
from qtmsim.model import (
    EngineeredSectors,
    HeisenbergStar,
    SystemSpec,
    allowed_sectors,
    coupling_operators,
    dicke_state,
    embed,
    engineered_interaction,
    local_hamiltonian,
    population_condition,
    sector_interaction,
    sector_residual,
    star_interaction,
    system_hamiltonian,
    thermal_product_state,
)


# --- spec validation ----------------------------------------------------------

def test_spec_rejects_bad_inputs():
    good = dict(n=1, topology="three_bath", E_h=4.0, E_r=5.0, E_c=(1.0,),
                interaction=EngineeredSectors({1: 0.05}))
    SystemSpec(**good)
    with pytest.raises(ValueError):
        SystemSpec(**{**good, "n": 0, "E_c": ()})
    with pytest.raises(ValueError):
        SystemSpec(**{**good, "topology": "four_bath"})
    with pytest.raises(ValueError):
        SystemSpec(**{**good, "E_c": (1.0, 1.0)})
    with pytest.raises(ValueError):
        SystemSpec(**{**good, "E_h": -1.0})
    with pytest.raises(ValueError):  # two-bath must not carry E_r
        SystemSpec(n=1, topology="two_bath", E_h=4.0, E_r=5.0, E_c=(5.0, 1.0),
                   interaction=EngineeredSectors({1: 0.05}))


def test_qubit_ordering_and_dims():
    spec = engineered_spec(n=2)
    assert spec.qubit_labels == ("h", "r", "c1", "c2")
    assert spec.dim == 16
    two = SystemSpec(n=2, topology="two_bath", E_h=4.0, E_c=(5.0, 1.0, 1.0),
                     interaction=EngineeredSectors({0: 0.05}))
    assert two.qubit_labels == ("h", "c0", "c1", "c2")
    assert two.target_indices == (1, 2, 3)
    assert two.bath_labels == ("h", "c")


def test_temperature_ordering_advisory_not_fatal():
    spec = engineered_spec()
    with pytest.warns(model.TemperatureOrderingWarning):
        model.check_bath_ordering(spec, baths_three(T_h=1.0))
    model.check_bath_ordering(spec, baths_three())  # silent when satisfied


# --- local Hamiltonian ----------------------------------------------------------

def test_local_hamiltonian_diagonal_formula():
    spec = SystemSpec(n=1, topology="three_bath", E_h=4.0, E_r=5.0, E_c=(1.0,),
                      interaction=EngineeredSectors({1: 0.0}))
    h = local_hamiltonian(spec)
    energies = (4.0, 5.0, 1.0)
    for idx in range(8):
        signs = [1 - 2 * ((idx >> (2 - k)) & 1) for k in range(3)]
        assert np.isclose(h[idx, idx].real, sum(s * e / 2 for s, e in zip(signs, energies)))
    assert np.isclose(np.linalg.eigvalsh(h)[0], -(4 + 5 + 1) / 2)  # all spins down


def test_local_hamiltonian_extremes():
    spec = engineered_spec(n=2, E_h=4.0, E_r=5.0, E_c=1.0)
    evals = np.linalg.eigvalsh(local_hamiltonian(spec))
    assert np.isclose(evals[-1], 5.5)
    assert np.isclose(evals[0], -5.5)


# --- Dicke states -----------------------------------------------------------------

def test_dicke_states():
    v = dicke_state(2, 0)
    expect = np.zeros(4)
    expect[0b01] = expect[0b10] = 1 / np.sqrt(2)
    assert np.allclose(v, expect)
    v = dicke_state(2, -2)
    assert np.allclose(v, [0, 0, 0, 1])  # unique all-ground state
    v = dicke_state(3, -1)
    assert np.count_nonzero(v) == 3      # C(3,1) components
    assert np.isclose(np.linalg.norm(v), 1.0)


def test_dicke_rejects_bad_magnetization():
    with pytest.raises(ValueError):
        dicke_state(2, 1)
    with pytest.raises(ValueError):
        dicke_state(2, -4)


# --- engineered interaction ---------------------------------------------------------

def test_sector_interaction_three_qubit_fridge():
    # n=1, m_c=+1: couples |+1,-1,+1> (index 0b010) and |-1,+1,-1> (0b101)
    spec = engineered_spec(n=1, m_c=1, g_sector=1.0)
    h = sector_interaction(spec, 1)
    nz = {(i, j) for i, j in zip(*np.nonzero(h))}
    assert nz == {(2, 5), (5, 2)}
    assert np.isclose(abs(h[2, 5]), 1.0)


def test_sector_interaction_n2_unnormalized_dicke():
    # n=2, m_c=0: upper ket has unit amplitude on 0b0101=5 and 0b0110=6,
    # lower ket is 0b1011=11; two bra-ket pairs, four entries of magnitude 1
    spec = engineered_spec(n=2, m_c=0, g_sector=1.0)
    h = sector_interaction(spec, 0)
    nz = {(i, j) for i, j in zip(*np.nonzero(h))}
    assert nz == {(5, 11), (6, 11), (11, 5), (11, 6)}
    assert np.allclose([abs(h[i, j]) for i, j in nz], 1.0)


def test_sector_interaction_is_hermitian():
    for n, m_c in [(1, 1), (2, 0), (3, 1)]:
        spec = engineered_spec(n=n, m_c=m_c, g_sector=0.37)
        h = sector_interaction(spec, m_c)
        assert np.allclose(h, h.conj().T)


def test_sector_interaction_rejects_out_of_range():
    spec = engineered_spec(n=2, m_c=0)
    with pytest.raises(ValueError):
        sector_interaction(spec, -2)   # the sink sector has no transport
    with pytest.raises(ValueError):
        sector_interaction(spec, 1)    # wrong parity


def test_engineered_interaction_single_sector_reduces():
    spec = engineered_spec(n=2, m_c=0, g_sector=0.05)
    assert np.array_equal(engineered_interaction(spec), sector_interaction(spec, 0))


def test_engineered_interaction_sector_supports_disjoint():
    spec = SystemSpec(n=2, topology="three_bath", E_h=4.0, E_r=5.0, E_c=(1.0, 1.0),
                      interaction=EngineeredSectors({0: 1.0, 2: 1.0}))
    total = engineered_interaction(spec)
    h0 = sector_interaction(spec, 0)
    h2 = sector_interaction(spec, 2)
    nz0 = set(zip(*np.nonzero(h0)))
    nz2 = set(zip(*np.nonzero(h2)))
    assert nz0.isdisjoint(nz2)
    assert set(zip(*np.nonzero(total))) == nz0 | nz2


def test_engineered_interaction_zero_couplings():
    spec = SystemSpec(n=2, topology="three_bath", E_h=4.0, E_r=5.0, E_c=(1.0, 1.0),
                      interaction=EngineeredSectors({0: 0.0, 2: 0.0}))
    assert np.count_nonzero(engineered_interaction(spec)) == 0


def test_engineered_interaction_empty_map_errors():
    spec = SystemSpec(n=2, topology="three_bath", E_h=4.0, E_r=5.0, E_c=(1.0, 1.0),
                      interaction=EngineeredSectors({}))
    with pytest.raises(ValueError):
        engineered_interaction(spec)


def test_engineered_annihilates_outside_transport_subspace():
    spec = engineered_spec(n=2, m_c=0, g_sector=1.0)
    h = engineered_interaction(spec)
    support = {5, 6, 11}
    for b in range(16):
        if b not in support:
            assert np.count_nonzero(h[:, b]) == 0


def test_engineered_permutation_invariance():
    # swapping the two equal-energy targets is a symmetry of H_loc and H_int
    spec = engineered_spec(n=2, m_c=0, g_sector=0.7)
    perm = np.zeros((16, 16))
    for idx in range(16):
        h_b, r_b, c1, c2 = (idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1
        swapped = (h_b << 3) | (r_b << 2) | (c2 << 1) | c1
        perm[swapped, idx] = 1.0
    for builder in (local_hamiltonian, engineered_interaction):
        h = builder(spec)
        assert np.linalg.norm(perm @ h @ perm.T - h) <= 1e-13 * max(np.linalg.norm(h), 1)


# --- star interaction -----------------------------------------------------------------

def test_star_two_qubit_heisenberg_spectrum():
    # (J/4)(xx+yy+zz) on two qubits: triplet at J/4, singlet at -3J/4
    j = -1.0
    bond = sum(
        (j / 4.0) * np.kron(p, p)
        for p in (model.SIGMA_X, model.SIGMA_Y, model.SIGMA_Z)
    )
    evals = np.sort(np.linalg.eigvalsh(bond))
    assert np.allclose(evals, sorted([j / 4] * 3 + [-3 * j / 4]))


def test_star_three_bath_commutes_with_total_magnetization():
    spec = star_spec(n=1, E_c=(1.0,))
    h = star_interaction(spec)
    nq = spec.num_qubits
    mz = sum(embed(model.SIGMA_Z, k, nq) for k in range(nq))
    assert np.linalg.norm(h @ mz - mz @ h) < 1e-12


def test_star_two_bath_bond_structure():
    # two-bath n=2 star: exactly the three center bonds h-c0, h-c1, h-c2
    j = -0.8
    spec = model.SystemSpec(n=2, topology="two_bath", E_h=4.0, E_c=(0.99, 1.0, 1.01),
                            interaction=HeisenbergStar(J_h=j, J_r=None))
    h = star_interaction(spec)
    manual = np.zeros((16, 16), dtype=complex)
    for i in (1, 2, 3):
        for p in (model.SIGMA_X, model.SIGMA_Y, model.SIGMA_Z):
            manual += (j / 4.0) * embed(p, 0, 4) @ embed(p, i, 4)
    assert np.allclose(h, manual)


def test_star_variant_topology_mismatch():
    spec = model.SystemSpec(n=2, topology="two_bath", E_h=4.0, E_c=(0.99, 1.0, 1.01),
                            interaction=HeisenbergStar(J_h=-1.0, J_r=-1.0))
    with pytest.raises(ValueError):
        star_interaction(spec)
    with pytest.raises(ValueError):
        star_interaction(engineered_spec())


def test_engineered_does_not_commute_with_total_magnetization():
    spec = engineered_spec(n=2, m_c=0, g_sector=1.0)
    h = engineered_interaction(spec)
    mz = sum(embed(model.SIGMA_Z, k, 4) for k in range(4))
    assert np.linalg.norm(h @ mz - mz @ h) > 0.1


# --- system Hamiltonian ------------------------------------------------------------------

def test_system_hamiltonian_g_zero():
    spec = engineered_spec(g=0.0)
    assert np.array_equal(system_hamiltonian(spec), local_hamiltonian(spec))


def test_system_hamiltonian_traceless_and_hermitian():
    for spec in (engineered_spec(), star_spec()):
        h = system_hamiltonian(spec)
        assert abs(np.trace(h)) < 1e-12
        assert np.linalg.norm(h - h.conj().T) <= 1e-13 * np.linalg.norm(h)


def test_energy_conservation_iff_residual_zero():
    rng = np.random.default_rng(11)
    for _ in range(8):
        n = int(rng.integers(1, 4))
        m_c = int(rng.choice(allowed_sectors(n)))
        e_h = float(rng.uniform(1, 6))
        e_c = float(rng.uniform(0.5, 2))
        on_resonance = rng.random() < 0.5
        k = (m_c + n) / 2
        e_r = e_h + k * e_c if on_resonance else e_h + k * e_c + float(rng.uniform(0.1, 1))
        spec = engineered_spec(n=n, m_c=m_c, E_r=e_r, E_h=e_h, E_c=e_c, g_sector=1.0)
        comm = local_hamiltonian(spec) @ sector_interaction(spec, m_c) \
            - sector_interaction(spec, m_c) @ local_hamiltonian(spec)
        residual = sector_residual(spec, m_c)
        if on_resonance:
            assert abs(residual) < 1e-12
            assert np.linalg.norm(comm) < 1e-12
        else:
            assert abs(residual) > 1e-3
            assert np.linalg.norm(comm) > 1e-3


# --- coupling operators --------------------------------------------------------------------

def test_coupling_operator_h_is_sigma_x():
    spec = engineered_spec(n=2)
    ops = coupling_operators(spec, "h")
    assert len(ops) == 1 and ops[0][0] == 2
    assert np.array_equal(ops[0][1], embed(model.SIGMA_X, 0, 4))


def test_coupling_operator_three_body_pair_count():
    spec = engineered_spec(n=2)
    ops = dict(coupling_operators(spec, "c"))
    three = ops[3]
    # single (c1,c2) pair
    manual = (embed(model.SIGMA_PLUS, 2, 4) @ embed(model.SIGMA_MINUS, 3, 4)
              + embed(model.SIGMA_MINUS, 2, 4) @ embed(model.SIGMA_PLUS, 3, 4))
    assert np.allclose(three, manual)


def test_coupling_operators_hermitian():
    spec = engineered_spec(n=3, m_c=1, E_c=(1.0, 1.0, 1.0))
    for label in ("h", "r", "c"):
        for _, op in coupling_operators(spec, label):
            assert np.allclose(op, op.conj().T)


def test_coupling_operators_two_bath_includes_c0():
    spec = model.SystemSpec(n=1, topology="two_bath", E_h=4.0, E_c=(5.0, 1.0),
                            interaction=EngineeredSectors({1: 0.05}))
    ops = dict(coupling_operators(spec, "c"))
    assert np.array_equal(
        ops[2], embed(model.SIGMA_X, 1, 3) + embed(model.SIGMA_X, 2, 3)
    )
    assert 3 in ops  # the (c0, c1) pair exists
    with pytest.raises(ValueError):
        coupling_operators(spec, "r")


# --- residual / population condition ----------------------------------------------------------

def test_sector_residual_reference_points():
    assert sector_residual(engineered_spec(2, 0, E_r=5.0), 0) == 0.0
    assert sector_residual(engineered_spec(2, 2, E_r=6.0), 2) == 0.0
    assert sector_residual(engineered_spec(2, 0, E_r=7.0), 0) == -2.0


def test_population_condition():
    spec = engineered_spec(2, 0, E_r=5.0)
    assert population_condition(spec, baths_three(), 0)  # 0.5 + 0.4 < 2.5
    equal = baths_three(T_h=2.0, T_r=2.0, T_c=2.0)
    assert not population_condition(spec, equal, 0)      # equality is not strict
    two = model.SystemSpec(n=2, topology="two_bath", E_h=4.0, E_c=(5.0, 1.0, 1.0),
                           interaction=EngineeredSectors({0: 0.05}))
    assert population_condition(two, baths_two(T_h=10.0, T_c=2.0), 0)
    assert not population_condition(two, baths_two(T_h=2.0, T_c=2.0), 0)


# --- thermal product state -----------------------------------------------------------------------

def test_thermal_product_state_high_temperature_limit():
    spec = engineered_spec(n=1)
    rho = thermal_product_state(spec, baths_three(T_h=1e9, T_r=1e9, T_c=1e9))
    assert np.max(np.abs(rho - np.eye(8) / 8)) < 1e-8


def test_thermal_product_state_gibbs_ratio():
    rho = model.qubit_gibbs(1.0, 2.0)
    assert np.isclose(rho[0, 0].real / rho[1, 1].real, np.exp(-0.5))


def test_thermal_product_state_trace_and_errors():
    spec = engineered_spec(n=2)
    rho = thermal_product_state(spec, baths_three())
    assert np.isclose(np.trace(rho), 1.0)
    with pytest.raises(ValueError):
        model.qubit_gibbs(1.0, 0.0)
