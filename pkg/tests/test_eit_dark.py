"""Dark states, collective algebra, and the storage sweep."""

import math

import numpy as np
import pytest

from polariton_eit import eit_dark as ed
from polariton_eit import fockspace as fs
from polariton_eit.errors import (
    DegenerateDark,
    IndexOutOfRange,
    ScheduleNotMonotone,
)
from polariton_eit.hopfield import LightMediumParams, diagonalize

REF = LightMediumParams(omega=1.0, omega0=0.9, coupling=0.1)


def make_ctx(xi=0.5, g=1.0, **kw):
    return ed.EitContext.from_basis(diagonalize(REF), g=g, xi=xi, **kw)


def test_context_from_basis_reference():
    ctx = make_ctx()
    assert ctx.u1 == pytest.approx(0.827549401877253, abs=1e-14)
    assert ctx.u2 == pytest.approx(-0.575990372891662, abs=1e-14)
    assert ctx.omega2_tilde == pytest.approx(-0.22462102342874857, abs=1e-14)
    assert ctx.kappa == pytest.approx(ctx.g * ctx.u1, abs=1e-15)
    assert ctx.kappa2 == pytest.approx(ctx.g * ctx.u2, abs=1e-15)


def test_context_validation():
    with pytest.raises(ValueError):
        ed.EitContext(xi=-0.1, g=1.0, delta_cap=0.0, omega2_tilde=0.0, u1=1.0, u2=0.0)
    with pytest.raises(ValueError):
        ed.EitContext(xi=0.1, g=0.0, delta_cap=0.0, omega2_tilde=0.0, u1=1.0, u2=0.0)
    with pytest.raises(ValueError):
        make_ctx(atom_count=0)
    with pytest.raises(ValueError):
        ed.EitContext(
            xi=0.1, g=1.0, delta_cap=math.nan, omega2_tilde=0.0, u1=1.0, u2=0.0
        )


def test_atom_count_scales_collective_couplings():
    ctx = make_ctx(atom_count=9)
    assert ctx.kappa == pytest.approx(3.0 * ctx.g * ctx.u1, abs=1e-14)


def test_subspace_matrix_layout():
    ctx = make_ctx(delta_cap=0.3)
    block = ed.subspace_matrix(1, 2, ctx)
    m = block.matrix
    assert m.shape == (4, 4)
    assert np.allclose(m, m.T)
    assert m[0, 0] == pytest.approx(0.3)
    assert m[0, 1] == pytest.approx(ctx.xi)
    assert m[0, 2] == pytest.approx(ctx.g * ctx.u1 * math.sqrt(2.0))
    assert m[0, 3] == pytest.approx(ctx.g * ctx.u2 * math.sqrt(3.0))
    assert m[3, 3] == pytest.approx(ctx.omega2_tilde)
    assert m[1, 1] == m[2, 2] == 0.0
    assert block.shift == pytest.approx(2 * ctx.omega2_tilde)


def test_subspace_matrix_rejects_negative_occupations():
    with pytest.raises(IndexOutOfRange):
        ed.subspace_matrix(-1, 0, make_ctx())


def test_mixing_angle_conventions_are_reciprocal():
    ctx = make_ctx()
    single = ed.mixing_angle(ctx, n1=0, convention="single_atom")
    coll = ed.mixing_angle(ctx, convention="collective")
    assert single.convention == "single_atom"
    assert coll.convention == "collective"
    assert single.theta == pytest.approx(0.5434972793106391, abs=1e-14)
    assert coll.theta == pytest.approx(1.0272990474842576, abs=1e-14)
    # complementary angles: tan(single) * tan(coll) = 1 at n1 = 0, M = 1
    assert single.theta + coll.theta == pytest.approx(0.5 * math.pi, abs=1e-12)


def test_mixing_angle_unknown_convention():
    with pytest.raises(ValueError):
        ed.mixing_angle(make_ctx(), convention="sideways")


def test_mixing_angle_degenerate():
    ctx = ed.EitContext(xi=0.0, g=1.0, delta_cap=0.0, omega2_tilde=0.5, u1=0.0, u2=1.0)
    with pytest.raises(DegenerateDark):
        ed.mixing_angle(ctx, convention="collective")
    with pytest.raises(DegenerateDark):
        ed.dark_state(0, 0, ctx)


def test_dark_state_annihilated():
    ctx = make_ctx()
    for n1 in range(3):
        for n2 in range(3):
            vec, ang = ed.dark_state(n1, n2, ctx)
            block = ed.subspace_matrix(n1, n2, ctx)
            assert np.linalg.norm(block.matrix @ vec) < 1e-12
            assert vec[0] == 0.0
            assert vec[3] == 0.0
            assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-15)
            assert ang.convention == "single_atom"


def test_dark_state_limits():
    # no control: the dark state is the bare second level
    ctx0 = make_ctx(xi=0.0)
    vec, ang = ed.dark_state(0, 0, ctx0)
    assert ang.theta == 0.0
    assert np.allclose(vec, [0.0, -1.0, 0.0, 0.0])
    # control equal to the probe coupling: balanced superposition
    ctx_eq = make_ctx(xi=1.0 * diagonalize(REF).probe.u1)
    vec_eq, ang_eq = ed.dark_state(0, 0, ctx_eq)
    assert ang_eq.theta == pytest.approx(0.25 * math.pi, abs=1e-14)
    assert vec_eq[1] == pytest.approx(-1.0 / math.sqrt(2.0), abs=1e-14)
    assert vec_eq[2] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-14)


def test_dark_state_angle_grows_with_occupation():
    ctx = make_ctx()
    _, a0 = ed.dark_state(0, 0, ctx)
    _, a2 = ed.dark_state(2, 0, ctx)
    # more probe quanta strengthen the coupling side, shrinking theta
    assert a2.theta < a0.theta


def test_collective_hamiltonian_hermitian_and_conserving():
    ctx = make_ctx()
    spec = fs.ModeSpec((2, 2, 2, 2))
    h = ed.collective_hamiltonian(ctx, spec)
    assert h.is_hermitian(1e-12)
    total = ed.conserved_number_operator(spec)
    res = fs.commutator(h, total)
    assert res.max_abs_on(spec.protected_indices(1)) < 1e-12


def test_collective_commutator_residuals():
    res = ed.collective_commutator_residuals()
    assert set(res) == {
        "A_S",
        "C_S",
        "A_Adag",
        "C_Cdag",
        "Tplus_Cdag",
        "Tminus_Adag",
        "S_Tplus",
        "S_Tminus",
    }
    assert max(res.values()) < 1e-12


def test_dark_mode_invariance():
    ctx = make_ctx()
    res = ed.dark_invariance_residuals(ctx)
    assert res["commutes_with_h"] < 1e-10
    assert res["canonical"] < 1e-10


def test_dark_mode_operator_angle():
    ctx = make_ctx()
    spec = fs.ModeSpec((3, 3, 3, 3))
    d, theta = ed.dark_mode_operator(ctx, spec)
    assert theta == pytest.approx(1.0272990474842576, abs=1e-14)
    alt = ed.dark_mode_from_angle(spec, theta)
    assert np.allclose(d.matrix, alt.matrix)


def test_dark_number_state_form():
    spec = fs.ModeSpec((3, 3, 3, 3))
    theta = 0.3
    state = ed.dark_number_state(spec, theta, 2)
    assert state.norm() == pytest.approx(1.0, abs=1e-12)
    # amplitude on pure two-photon slot is cos^2, on pure two-spin sin^2
    c, s = math.cos(theta), math.sin(theta)
    assert state.vector[spec.index((2, 0, 0, 0))] == pytest.approx(c * c, abs=1e-12)
    assert state.vector[spec.index((0, 0, 0, 2))] == pytest.approx(s * s, abs=1e-12)
    with pytest.raises(IndexOutOfRange):
        ed.dark_number_state(spec, theta, 4)


def test_dark_number_state_theta_extremes():
    spec = fs.ModeSpec((2, 2, 2, 2))
    photon = ed.dark_number_state(spec, 0.0, 1)
    assert abs(photon.vector[spec.index((1, 0, 0, 0))]) == pytest.approx(1.0)
    stored = ed.dark_number_state(spec, 0.5 * math.pi, 1)
    assert abs(stored.vector[spec.index((0, 0, 0, 1))]) == pytest.approx(1.0)


def test_epsilon_bright_and_ladder():
    ctx = make_ctx()
    assert ed.epsilon_bright(ctx) == pytest.approx(
        math.hypot(ctx.kappa, ctx.xi), abs=1e-15
    )
    assert ed.bright_ladder_residual(ctx) < 1e-10


def test_bright_sector_spectrum_reference():
    ctx = make_ctx()
    vals, rows = ed.bright_sector_spectrum(ctx)
    assert vals[0] == pytest.approx(-1.1602796317753241, abs=1e-12)
    assert vals[1] == pytest.approx(-0.1645009532830203, abs=1e-12)
    assert vals[2] == pytest.approx(1.100159561629596, abs=1e-12)
    assert np.allclose(rows @ rows.T, np.eye(3), atol=1e-12)
    # characteristic polynomial roots of the printed 3x3 block
    m = ed.bright_sector_matrix(ctx)
    assert np.allclose(np.sort(np.linalg.eigvalsh(m)), vals)


def test_no_mixing_check():
    ctx = make_ctx()
    thetas = np.linspace(0.1, 0.5 * math.pi - 0.1, 7)
    assert ed.no_mixing_check(ctx, thetas) < 1e-8


def test_schedule_shape_and_monotonicity():
    sched = ed.SweepSchedule(duration=10.0, theta_start=0.05)
    assert sched.theta(0.0) == pytest.approx(0.05)
    assert sched.theta(10.0) == pytest.approx(0.5 * math.pi, abs=1e-12)
    grid = np.linspace(0.0, 10.0, 101)
    vals = [sched.theta(t) for t in grid]
    assert all(b >= a for a, b in zip(vals, vals[1:]))
    # control follows cot(theta) and ends at zero
    assert sched.xi(10.0, kappa=2.0) == pytest.approx(0.0, abs=1e-12)
    assert sched.xi(0.0, kappa=2.0) == pytest.approx(2.0 / math.tan(0.05), rel=1e-12)


def test_schedule_validation():
    with pytest.raises(ValueError):
        ed.SweepSchedule(duration=10.0, theta_start=0.0)
    with pytest.raises(ValueError):
        ed.SweepSchedule(duration=-1.0, theta_start=0.1)
    with pytest.raises(ScheduleNotMonotone):
        ed.SweepSchedule(
            duration=1.0, theta_start=0.3, profile=lambda t: 0.3 + math.sin(9.0 * t)
        )


def test_bare_photon_initial_state_decoupled():
    params = LightMediumParams(1.0, 0.9, 0.0)
    spec = fs.ModeSpec((2, 2, 2, 2))
    state = ed.bare_photon_initial_state(params, spec, 1)
    assert abs(state.vector[spec.index((1, 0, 0, 0))]) == pytest.approx(1.0)
    with pytest.raises(IndexOutOfRange):
        ed.bare_photon_initial_state(params, spec, 3)


def test_bare_photon_initial_state_coupled_weight():
    spec = fs.ModeSpec((3, 3, 2, 2))
    state = ed.bare_photon_initial_state(REF, spec, 1)
    captured = state.norm() ** 2
    assert captured < 1.0
    assert captured > 0.9


def test_adiabatic_sweep_stores_photon():
    params = LightMediumParams(omega=200.0, omega0=180.0, coupling=0.0)
    ctx = ed.EitContext.from_basis(diagonalize(params), g=1.0, xi=0.0)
    spec = fs.ModeSpec((2, 2, 2, 2))
    initial = ed.bare_photon_initial_state(params, spec, 1)
    sched = ed.SweepSchedule(duration=60.0, theta_start=0.05)
    result = ed.adiabatic_sweep(ctx, sched, initial, 1, samples=33)
    assert result.fidelity > 0.99
    assert result.leakage < 0.01
    assert result.s_n0_squared == pytest.approx(math.cos(0.05) ** 2, abs=1e-12)
    # photon turned into spin wave
    assert result.pop_c1[0] == pytest.approx(1.0, abs=1e-10)
    assert result.pop_spinwave[-1] > 0.99
    assert result.pop_c2.max() < 1e-10
    assert np.all(np.abs(result.norm - 1.0) < 1e-6)
    assert result.fidelity_dark[0] == pytest.approx(result.s_n0_squared, abs=1e-9)


def test_adiabatic_sweep_short_ramp_fails_to_store():
    params = LightMediumParams(omega=200.0, omega0=180.0, coupling=0.0)
    ctx = ed.EitContext.from_basis(diagonalize(params), g=1.0, xi=0.0)
    spec = fs.ModeSpec((2, 2, 2, 2))
    initial = ed.bare_photon_initial_state(params, spec, 1)
    sched = ed.SweepSchedule(duration=2.0, theta_start=0.05)
    result = ed.adiabatic_sweep(ctx, sched, initial, 1, samples=17)
    assert result.fidelity < 0.9
