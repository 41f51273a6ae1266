"""Acceptance gate: the library's numerical guarantees, one test each.

Every test checks one shipped guarantee end to end at its stated
tolerance and prints a single status line (visible with ``pytest -s`` or
in the captured output of a failure).  Golden CSVs live next to the tests
and were pinned from the first verified run; regenerate them only when a
deliberate change to the underlying curves is intended.
"""

import json
import math
import time
from itertools import product
from pathlib import Path

import numpy as np

from polariton_eit import eit_dark, fockspace, optics, transfer
from polariton_eit.cli import main as cli_main
from polariton_eit.eit_dark import EitContext, SweepSchedule
from polariton_eit.fockspace import ModeSpec
from polariton_eit.hopfield import (
    LightMediumParams,
    canonical_residual,
    diagonalize,
    eigenfrequencies,
)

GOLDEN = Path(__file__).parent / "golden"


def read_rows(path):
    lines = path.read_text().strip().splitlines()
    return [[float(x) for x in line.split(",")] for line in lines[1:]]


def report(num, detail):
    print(f"[acceptance {num:02d}] PASS {detail}")


def random_probe_context(rng):
    rates = sorted(rng.uniform(1e-6, 1.0, 3), reverse=True)
    return optics.ProbeContext(
        xi=rng.uniform(0.1, 20.0),
        delta_cap=rng.uniform(-2.0, 2.0),
        two_photon_detuning=rng.uniform(-2.0, 2.0),
        omega2_tilde=rng.uniform(-3e5, 3e5),
        u1=rng.uniform(-1.0, 1.0),
        u2=rng.uniform(-1.0, 1.0),
        g_root_n=rng.uniform(1.0, 200.0),
        omega=rng.uniform(1e5, 1e7),
        rates=optics.DecayRates(*rates),
    )


def test_01_spectrum_root_identities():
    rng = np.random.default_rng(11)
    worst_sum = worst_prod = worst_canonical = 0.0
    for _ in range(500):
        omega = rng.uniform(0.1, 10.0)
        omega0 = rng.uniform(0.1, 10.0)
        coupling = rng.uniform(0.0, 0.999) * 0.5 * math.sqrt(omega * omega0)
        params = LightMediumParams(omega=omega, omega0=omega0, coupling=coupling)
        basis = diagonalize(params)
        o1, o2 = basis.lower.frequency, basis.upper.frequency
        sum_sq = omega**2 + omega0**2
        prod_sq = omega**2 * omega0**2 - 4.0 * omega * omega0 * coupling**2
        worst_sum = max(worst_sum, abs(o1**2 + o2**2 - sum_sq) / sum_sq)
        worst_prod = max(worst_prod, abs(o1**2 * o2**2 - prod_sq) / prod_sq)
        worst_canonical = max(worst_canonical, canonical_residual(basis))
    assert worst_sum < 1e-10
    assert worst_prod < 1e-10
    assert worst_canonical < 1e-10
    report(1, f"500 draws, root identities {max(worst_sum, worst_prod):.2e}, "
              f"canonical {worst_canonical:.2e}")


def test_02_truncated_oracle_gap_convergence():
    worst_final = 0.0
    for omega0, coupling in product((0.9, 1.0), (0.05, 0.1)):
        params = LightMediumParams(omega=1.0, omega0=omega0, coupling=coupling)
        exact = eigenfrequencies(params)
        errors = []
        for cutoff in (15, 20, 25):
            op = fockspace.build_light_medium(params, (cutoff, cutoff))
            gaps = fockspace.excitation_gaps(op, count=2)
            errors.append(max(abs(gaps[0] - exact[0]), abs(gaps[1] - exact[1])))
        assert errors[-1] < 1e-6
        worst_final = max(worst_final, errors[-1])
        # convergence plateaus at rounding level well below the target;
        # monotonicity is judged above that floor
        clipped = [max(e, 1e-12) for e in errors]
        assert clipped[0] >= clipped[1] >= clipped[2]
    report(2, f"four parameter sets, cutoff-25 gap error {worst_final:.2e}")


def test_03_transmission_limits():
    detuned = LightMediumParams(omega=1.0, omega0=0.7, coupling=0.0)
    for n in range(4):
        assert transfer.transmission_efficiency(n, detuned) == 1.0
    worst = 0.0
    for k in (4, 5, 6):
        resonant = LightMediumParams(omega=1.0, omega0=1.0, coupling=10.0**-k)
        value = transfer.transmission_efficiency(1, resonant)
        worst = max(worst, abs(value - 0.5))
        assert abs(value - 0.5) <= 1e-2
    report(3, f"decoupled exactly 1, resonant within {worst:.2e} of 1/2")


def test_04_analytic_matches_fock_overlap():
    worst = spread = 0.0
    for ratio, frac in product((0.9, 0.95, 0.99), (0.01, 0.05, 0.1)):
        params = LightMediumParams(omega=1.0, omega0=ratio, coupling=frac)
        for n in range(3):
            analytic = transfer.transmission_efficiency(n, params)
            state, _ = fockspace.polariton_number_state(params, (20, 20), n)
            bare = fockspace.number_basis_state(state.spec, (n, 0))
            overlap = abs(state.overlap(bare)) ** 2
            worst = max(worst, abs(analytic - overlap))
            assert abs(analytic - overlap) < 1e-6
            by_mass = [
                transfer.transmission_efficiency(n, params, m) for m in (0.5, 1.0, 7.3)
            ]
            spread = max(spread, max(by_mass) - min(by_mass))
            assert max(by_mass) - min(by_mass) < 1e-10
    report(4, f"27 grid points, oracle gap {worst:.2e}, mass spread {spread:.2e}")


def test_05_transfer_sweep_regression():
    ratios = [0.9, 0.95, 0.99]
    fracs = [round(0.005 * k, 10) for k in range(21)]
    rows = transfer.fig3_sweep(ratios, fracs)
    per_ratio = {r: [f for rr, _, f in rows if rr == r] for r in ratios}
    for ratio in ratios:
        values = per_ratio[ratio]
        assert len(values) == len(fracs)
        assert all(a >= b for a, b in zip(values, values[1:]))
    for k, frac in enumerate(fracs):
        if frac == 0.0:
            continue
        assert per_ratio[0.9][k] > per_ratio[0.95][k] > per_ratio[0.99][k]
    golden = read_rows(GOLDEN / "fig3.csv")
    assert len(golden) == len(rows)
    for got, want in zip(rows, golden):
        for a, b in zip(got, want):
            assert abs(a - b) <= 1e-9 * max(1.0, abs(b))
    report(5, "63 rows ordered, per-ratio non-increasing, golden match at 1e-9")


def test_06_dark_vector_annihilated():
    rng = np.random.default_rng(23)
    worst = 0.0
    for _ in range(200):
        ctx = EitContext(
            xi=rng.uniform(0.0, 5.0),
            g=rng.uniform(0.1, 3.0),
            delta_cap=rng.uniform(-2.0, 2.0),
            omega2_tilde=rng.uniform(-5.0, 5.0),
            u1=rng.uniform(-1.0, 1.0),
            u2=rng.uniform(-1.0, 1.0),
            atom_count=int(rng.integers(1, 6)),
        )
        for n1 in range(3):
            for n2 in range(3):
                vec, _ = eit_dark.dark_state(n1, n2, ctx)
                block = eit_dark.subspace_matrix(n1, n2, ctx)
                residual = float(np.max(np.abs(block.matrix @ vec)))
                worst = max(worst, residual)
                assert residual < 1e-12
                assert vec[0] == 0.0 and vec[3] == 0.0
    report(6, f"200 contexts x 9 occupations, worst residual {worst:.2e}")


def test_07_collective_algebra_residuals():
    comms = eit_dark.collective_commutator_residuals((3, 3, 3, 3), margin=2)
    assert set(comms) == {
        "A_S",
        "C_S",
        "A_Adag",
        "C_Cdag",
        "Tplus_Cdag",
        "Tminus_Adag",
        "S_Tplus",
        "S_Tminus",
    }
    assert max(comms.values()) < 1e-10
    basis = diagonalize(LightMediumParams(omega=1.0, omega0=0.9, coupling=0.1))
    ctx = EitContext.from_basis(basis, g=1.0, xi=0.5)
    dark = eit_dark.dark_invariance_residuals(ctx, (3, 3, 3, 3))
    assert dark["commutes_with_h"] < 1e-10
    assert dark["canonical"] < 1e-10
    mixing = eit_dark.no_mixing_check(ctx, np.linspace(0.05, 1.52, 9))
    assert mixing < 1e-8
    report(
        7,
        f"eight commutators {max(comms.values()):.2e}, dark invariance "
        f"{max(dark.values()):.2e}, mixing {mixing:.2e}",
    )


def test_08_adiabatic_storage():
    spec = ModeSpec((3, 3, 3, 3))
    longest = 0.0

    # decoupled leg: the collective coupling kappa sets the time unit
    params = LightMediumParams(omega=2000.0, omega0=1800.0, coupling=0.0)
    ctx = EitContext.from_basis(diagonalize(params), g=1.0, xi=0.0)
    initial = eit_dark.bare_photon_initial_state(params, spec, 1)
    fidelities = []
    for t_eps in (2.0, 10.0, 50.0, 200.0, 1000.0):
        schedule = SweepSchedule(duration=t_eps / ctx.kappa, theta_start=0.02)
        started = time.perf_counter()
        result = eit_dark.adiabatic_sweep(ctx, schedule, initial, 1, samples=33)
        longest = max(longest, time.perf_counter() - started)
        fidelities.append(result.fidelity)
    assert fidelities[3] >= 0.99
    # non-decreasing along the duration grid, 1e-3 slack on the plateau
    for earlier, later in zip(fidelities, fidelities[1:]):
        assert later >= earlier - 1e-3

    # coupled leg: the long-sweep fidelity caps at the analytic efficiency
    params2 = LightMediumParams(omega=200.0, omega0=180.0, coupling=10.0)
    ctx2 = EitContext.from_basis(diagonalize(params2), g=1.0, xi=0.0)
    initial2 = eit_dark.bare_photon_initial_state(params2, spec, 1)
    schedule2 = SweepSchedule(duration=200.0 / ctx2.kappa, theta_start=0.02)
    started = time.perf_counter()
    result2 = eit_dark.adiabatic_sweep(ctx2, schedule2, initial2, 1, samples=33)
    longest = max(longest, time.perf_counter() - started)
    cap = transfer.transmission_efficiency(1, params2)
    assert abs(result2.fidelity - cap) < 0.02
    assert longest < 300.0
    report(
        8,
        f"plateau {fidelities[3]:.6f}, coupled gap "
        f"{abs(result2.fidelity - cap):.2e}, longest sweep {longest:.1f}s",
    )


def test_09_susceptibility_identities():
    rng = np.random.default_rng(31)
    worst_split = 0.0
    for _ in range(1000):
        ctx = random_probe_context(rng)
        chi = optics.susceptibility(ctx)
        parts = optics.chi_decomposition(ctx)
        err = abs(chi - complex(parts.chi1, parts.chi2)) / max(abs(chi), 1e-300)
        worst_split = max(worst_split, err)
        assert err < 1e-12
    worst_steady = 0.0
    for _ in range(100):
        ctx = random_probe_context(rng)
        closed = optics.steady_state_mean_A(ctx)
        solved = optics.linear_steady_solve(ctx)
        relaxed = optics.relax_to_steady_state(ctx)
        worst_steady = max(
            worst_steady, abs(closed - solved[0]), abs(relaxed.final[0] - closed)
        )
        assert abs(closed - solved[0]) < 1e-8
        assert abs(relaxed.final[0] - closed) < 1e-8
    report(9, f"1000 splits {worst_split:.2e}, 100 steady three-ways {worst_steady:.2e}")


def test_10_response_panel_regimes():
    deltas = np.linspace(-3.0, 3.0, 801)
    tables = {p: optics.fig4_sweep(p, deltas) for p in optics.PANEL_NAMES}
    for panel in optics.PANEL_NAMES:
        golden = read_rows(GOLDEN / f"fig4_{panel}.csv")
        assert len(golden) == tables[panel].shape[0]
        for got, want in zip(tables[panel], golden):
            for a, b in zip(got, want):
                assert abs(a - b) <= 1e-9 * max(abs(b), 1e-3)

    reference = tables["a"][:, 2]
    scale = float(np.max(np.abs(reference)))
    deviation = {
        p: float(np.max(np.abs(tables[p][:, 2] - reference))) / scale for p in "bcd"
    }
    assert deviation["b"] < 0.05
    assert deviation["c"] < 0.05
    assert deviation["d"] > 0.05
    print(
        f"[acceptance 10] partial PASS golden pinned; sup-norm vs (a): "
        f"b {deviation['b']:.2e}, c {deviation['c']:.2e}, "
        f"d {deviation['d']:.2e} (>5% as required)"
    )

    half_window = 0.5 * optics.transparency_metrics(tables["a"]).width
    center_d = optics.transparency_metrics(tables["d"]).center
    displaced = abs(center_d) > half_window
    status = "PASS" if displaced else "FAIL"
    print(
        f"[acceptance 10] {status} dip displacement: |{center_d:.3e}| "
        f"vs required > {half_window:.4f}"
    )
    assert displaced, (
        f"panel (d) absorption minimum sits at delta = {center_d:.6e}, not "
        f"displaced beyond the panel-(a) half-window {half_window:.4f}. "
        "A fine scan puts the true minimum near -2.5e-4: the second "
        "polariton shifts only the dispersive denominator (effective "
        "one-photon pull -(g sqrt(N) u2)^2 / omega2_tilde), while the "
        "absorption numerator keeps its zero pinned at two-photon "
        "resonance. With the shipped panel parameters no displacement of "
        "window size can occur, so this guarantee fails as stated."
    )


def test_11_cli_byte_determinism(tmp_path, monkeypatch):
    adiabatic_cfg = tmp_path / "adiabatic.json"
    adiabatic_cfg.write_text(
        json.dumps(
            {
                "schema": "polariton-eit/v1",
                "omega": 200.0,
                "duration": 60.0,
                "theta_start": 0.05,
                "cutoffs": [2, 2, 2, 2],
                "samples": 33,
            }
        )
    )
    runs = {
        "spectrum": ["spectrum"],
        "transfer": ["transfer"],
        "adiabatic": ["adiabatic", "--config", str(adiabatic_cfg)],
        "chi": ["chi", "--panel", "a"],
    }
    for name, argv in runs.items():
        first = tmp_path / f"{name}_1.csv"
        second = tmp_path / f"{name}_2.csv"
        assert cli_main(argv + ["--out", str(first)]) == 0
        assert cli_main(argv + ["--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes(), name
    # worker count must not change the bytes of the grid subcommands
    monkeypatch.setenv("POLARITON_EIT_WORKERS", "3")
    parallel = tmp_path / "transfer_3.csv"
    assert cli_main(["transfer", "--out", str(parallel)]) == 0
    assert parallel.read_bytes() == (tmp_path / "transfer_1.csv").read_bytes()
    report(11, "four subcommands byte-identical across runs and worker counts")
