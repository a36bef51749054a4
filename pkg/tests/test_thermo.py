"""Heat currents, power, entropy bookkeeping, local temperatures, regimes."""

import numpy as np
import pytest

from conftest import baths_three, engineered_spec, star_spec
from qtmsim import model
from qtmsim.lindblad import JumpChannel, build_liouvillian, transition_rates
from qtmsim.model import BathSpec, qubit_gibbs, thermal_product_state
from qtmsim.steadystate import solve_steady_state
from qtmsim.thermo import (
    classify_regime,
    compute_thermo,
    cooling_amounts,
    entropy_production,
    heat_current,
    heat_currents,
    interaction_parts,
    local_temperature,
    local_temperature_diagonal,
    local_temperature_distance,
    power,
)


def solved(spec, baths, mode, gap_tol=None):
    liou = build_liouvillian(spec, baths, mode, gap_tol)
    rho0 = thermal_product_state(spec, baths)
    report = solve_steady_state(liou, "auto", rho0=rho0)
    return liou, report


def record_for(spec, baths, mode, gap_tol=None):
    liou, report = solved(spec, baths, mode, gap_tol)
    return compute_thermo(
        spec, baths, liou.channels, report.rho, mode,
        liou.h_system, model.local_hamiltonian(spec),
    )


# --- heat currents ------------------------------------------------------------

def test_single_qubit_equilibrium_current_vanishes():
    bath = BathSpec("h", T=2.0, f=0.01, Omega=1e3)
    eta1, eta2 = transition_rates(4.0, bath)
    ch = [JumpChannel("h", 4.0, model.SIGMA_PLUS, 2, eta1, eta2)]
    h = 2.0 * model.SIGMA_Z
    assert abs(heat_current(ch, qubit_gibbs(4.0, 2.0), h)) < 1e-14


def test_first_law_global_steady_state():
    spec = engineered_spec(n=2, E_r=5.2, E_c=[1.0, 1.01], g_sector=1.0)
    liou, report = solved(spec, baths_three(kappa=0.5), "global")
    q = heat_currents(liou.channels, report.rho, liou.h_system)
    assert abs(sum(q.values())) <= 1e-8 * max(abs(v) for v in q.values())


def test_qar_sign_pattern_at_cooling_point():
    spec = engineered_spec(n=1, m_c=1, E_r=5.0)
    rec = record_for(spec, baths_three(), "local")
    q = rec.heat_currents
    assert q["h"] > 0 and q["r"] < 0 and q["c"] > 0
    assert rec.regime.startswith("R1")


# --- power -----------------------------------------------------------------------

def test_power_sign_change_across_resonance():
    lo = record_for(engineered_spec(n=2, m_c=0, E_r=4.8), baths_three(), "local")
    hi = record_for(engineered_spec(n=2, m_c=0, E_r=5.2), baths_three(), "local")
    assert lo.w_dot_total < 0 < hi.w_dot_total


def test_power_vanishes_at_self_contained_point():
    spec = engineered_spec(n=2, m_c=0, E_r=5.0)
    rec = record_for(spec, baths_three(), "local")
    assert abs(rec.w_dot_total) <= 1e-10 * 0.01 * 0.05  # 1e-10 * f * g


def test_power_zero_for_zero_sector_coupling():
    spec = model.SystemSpec(
        n=2, topology="three_bath", E_h=4.0, E_r=5.0, E_c=(1.0, 1.0),
        interaction=model.EngineeredSectors({0: 0.05, 2: 0.0}),
    )
    rec = record_for(spec, baths_three(), "local")
    assert rec.w_dot_parts["2"] == 0.0
    assert rec.w_dot_parts["0"] != 0.0 or abs(rec.w_dot_total) < 1e-12


def test_lqme_bookkeeping_identity():
    # sum of local currents equals minus the work imbalance at steady state
    spec = engineered_spec(n=2, m_c=0, E_r=5.7)
    rec = record_for(spec, baths_three(), "local")
    lhs = sum(rec.heat_currents.values())
    assert abs(lhs + rec.w_dot_total) < 1e-14


def test_power_reported_zero_in_global_mode():
    spec = engineered_spec(n=2, E_c=[1.0, 1.01], g_sector=1.0)
    rec = record_for(spec, baths_three(), "global")
    assert rec.w_dot_total == 0.0
    assert rec.regime.endswith("0")


# --- entropy -----------------------------------------------------------------------

def test_entropy_production_zero_at_equilibrium():
    bath = BathSpec("h", T=2.0, f=0.01, Omega=1e3)
    eta1, eta2 = transition_rates(4.0, bath)
    channels = {"h": [JumpChannel("h", 4.0, model.SIGMA_PLUS, 2, eta1, eta2)]}
    gibbs = qubit_gibbs(4.0, 2.0)
    s_dot, production = entropy_production(
        channels, gibbs, {"h": bath}, 2.0 * model.SIGMA_Z
    )
    assert abs(s_dot) < 1e-10
    assert abs(production) < 1e-10


def test_entropy_rate_vanishes_at_steady_state():
    for mode, spec in [("local", engineered_spec(n=2, m_c=0)),
                       ("global", engineered_spec(n=2, E_c=[1.0, 1.01], g_sector=1.0))]:
        rec = record_for(spec, baths_three(), mode)
        assert abs(rec.s_dot) < 1e-8
        assert rec.entropy_prod >= -1e-10


# --- local temperatures ----------------------------------------------------------------

def test_diagonal_estimator_inverts_gibbs():
    est = local_temperature_diagonal(qubit_gibbs(1.0, 2.0), 1.0)
    assert abs(est.value - 2.0) < 1e-12 and est.flag is None


def test_diagonal_estimator_unit_log_point():
    p0 = np.exp(-1) / (1 + np.exp(-1))
    rho = np.diag([p0, 1 - p0]).astype(complex)
    assert np.isclose(local_temperature_diagonal(rho, 1.0).value, 1.0)


def test_diagonal_estimator_flags_inversion():
    rho = np.diag([0.6, 0.4]).astype(complex)
    est = local_temperature_diagonal(rho, 1.0)
    assert est.flag == "inverted"
    assert est.value < 0


def test_diagonal_estimator_rejects_coherence():
    rho = np.array([[0.5, 0.1], [0.1, 0.5]], dtype=complex)
    with pytest.raises(ValueError):
        local_temperature_diagonal(rho, 1.0)
    assert local_temperature(rho, 1.0).method == "distance"


def test_distance_estimator_recovers_gibbs():
    for t in (0.5, 2.0, 10.0):
        est = local_temperature_distance(qubit_gibbs(1.0, t), 1.0)
        assert abs(est.value - t) < 1e-8


def test_distance_matches_diagonal_on_random_diagonal_states():
    rng = np.random.default_rng(41)
    for _ in range(10):
        p0 = float(rng.uniform(0.05, 0.45))
        rho = np.diag([p0, 1 - p0]).astype(complex)
        diag = local_temperature_diagonal(rho, 1.3)
        dist = local_temperature_distance(rho, 1.3)
        assert abs(diag.value - dist.value) < 1e-7


def test_distance_estimator_flags_bracket_edge():
    est = local_temperature_distance(np.eye(2, dtype=complex) / 2, 1.0)
    assert est.flag == "bracket_edge"
    assert est.value > 990.0


# --- cooling amounts ----------------------------------------------------------------------

def test_cooling_zero_for_decoupled_system():
    spec = engineered_spec(n=2, m_c=0, g=0.0)
    rec = record_for(spec, baths_three(), "local")
    assert all(abs(d) < 1e-9 for d in rec.cooling.values())


def test_cooling_equal_across_targets_lqme():
    spec = engineered_spec(n=2, m_c=0, E_r=5.0)
    rec = record_for(spec, baths_three(), "local")
    deltas = list(rec.cooling.values())
    assert all(d > 0 for d in deltas)
    assert abs(deltas[0] - deltas[1]) <= 1e-10


def test_cooling_almost_equal_with_disorder_gqme():
    spec = engineered_spec(n=2, m_c=0, E_r=5.0, E_c=[1.0, 1.01], g_sector=1.0)
    rec = record_for(spec, baths_three(), "global")
    d1, d2 = rec.cooling["c1"], rec.cooling["c2"]
    assert d1 > 0 and d2 > 0
    assert abs(d1 - d2) > 1e-6          # disorder breaks exact equality
    assert abs(d1 - d2) < 0.1 * abs(d1)  # but only slightly


# --- regimes ----------------------------------------------------------------------------------

def test_classify_regime_reference_patterns():
    tol = 1e-12 * 0.01
    assert classify_regime({"h": 1e-4, "r": -2e-4, "c": 1e-4}, 0.0, tol,
                           ("h", "r", "c")) == "R10"
    assert classify_regime({"h": -1e-4, "r": 2e-4, "c": -1e-4}, 1e-6, tol,
                           ("h", "r", "c")) == "R2+"
    assert classify_regime({"h": 2e-4, "r": -1e-4, "c": -1e-4}, 0.0, tol,
                           ("h", "r", "c")) == "R30"
    assert classify_regime({"h": 1e-4, "r": 1e-4, "c": -2e-4}, -1e-6, tol,
                           ("h", "r", "c")) == "R4-"
    assert classify_regime({"h": -1e-4, "r": -1e-4, "c": 2e-4}, 0.0, tol,
                           ("h", "r", "c")).startswith("other(-,-,+)")
    assert classify_regime({"h": -1e-4, "c": 1e-4}, 0.0, tol, ("h", "c")) == "R10"
    assert classify_regime({"h": 1e-4, "c": -1e-4}, 0.0, tol, ("h", "c")) == "R20"


def test_interaction_parts_star():
    spec = star_spec()
    parts = interaction_parts(spec)
    assert set(parts) == {"star"}
    assert np.allclose(parts["star"], spec.g * model.star_interaction(spec))


def test_power_helper_against_manual_trace():
    spec = engineered_spec(n=2, m_c=0, E_r=5.5)
    liou, report = solved(spec, baths_three(), "local")
    parts = interaction_parts(spec)
    total, per = power(liou.channels, report.rho, parts)
    from qtmsim.lindblad import apply_dissipator
    d_tot = sum(apply_dissipator(chs, report.rho) for chs in liou.channels.values())
    manual = float(np.trace(d_tot @ parts["0"]).real)
    assert np.isclose(per["0"], manual)
    assert np.isclose(total, manual)
