"""Weak-probe linear response of the polariton EIT medium.

Mean-value (first-moment) equations for the collective atomic mode, the
spin wave, and the detuned second polariton close on a 3x3 linear system
under a monochromatic probe.  Eliminating everything but the probe yields
a complex susceptibility whose imaginary part is the absorption profile;
the transparency window at two-photon resonance survives the polariton
dressing until the second branch comes close enough to interfere.

Three independent routes to the same numbers coexist here and are tested
against each other: the closed-form susceptibility, its explicit
real/imaginary split, and direct steady states (linear solve and time
relaxation).
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import NoWindowFound, NotConverged, SingularResponse
from .hopfield import LightMediumParams, diagonalize

__all__ = [
    "DecayRates",
    "ProbeContext",
    "Susceptibility",
    "susceptibility",
    "chi_decomposition",
    "steady_state_mean_A",
    "linear_steady_solve",
    "RelaxationResult",
    "relax_to_steady_state",
    "TransparencyMetrics",
    "transparency_metrics",
    "panel_context",
    "PANEL_NAMES",
    "PANEL_GRID",
    "chi_table",
    "fig4_sweep",
]


@dataclass(frozen=True)
class DecayRates:
    """Amplitude decay rates of the three damped degrees of freedom.

    The atomic rate must be positive; the other two may vanish.  The
    formulas remain valid outside the intended hierarchy atom >> spinwave
    >> photon2, so breaking it only warns.
    """

    atom: float  # excited collective mode
    spinwave: float  # stored coherence
    photon2: float  # second polariton

    def __post_init__(self) -> None:
        for name, value in (
            ("atom", self.atom),
            ("spinwave", self.spinwave),
            ("photon2", self.photon2),
        ):
            if value < 0.0 or not math.isfinite(value):
                raise ValueError(f"decay rate {name} must be nonnegative, got {value}")
        if self.atom == 0.0:
            raise ValueError("the atomic decay rate must be positive")
        if self.atom < self.spinwave or self.spinwave < self.photon2:
            warnings.warn(
                "decay rates outside the intended ordering "
                "atom >= spinwave >= photon2",
                stacklevel=2,
            )


@dataclass(frozen=True)
class ProbeContext:
    """Everything the response formulas need at one probe working point.

    Carries the couplings of the EIT level scheme in the polariton frame
    plus the probe carrier and the decay rates.  The two-photon detuning
    is part of the context; ``at_delta`` clones the context onto another
    detuning for spectrum scans.
    """

    xi: float
    delta_cap: float  # one-photon detuning of the atomic mode
    two_photon_detuning: float
    omega2_tilde: float  # second polariton frequency relative to the probe
    u1: float
    u2: float
    g_root_n: float  # collective coupling g sqrt(N)
    omega: float  # probe carrier frequency, sets the 1/omega prefactor
    rates: DecayRates

    def __post_init__(self) -> None:
        if self.omega <= 0.0:
            raise ValueError(f"omega must be positive, got {self.omega}")

    @classmethod
    def from_params(
        cls,
        params: LightMediumParams,
        g_root_n: float,
        xi: float,
        rates: DecayRates,
        delta_cap: float = 0.0,
        two_photon_detuning: float = 0.0,
    ) -> "ProbeContext":
        basis = diagonalize(params)
        return cls(
            xi=xi,
            delta_cap=delta_cap,
            two_photon_detuning=two_photon_detuning,
            omega2_tilde=basis.omega2_tilde,
            u1=basis.probe.u1,
            u2=basis.other.u1,
            g_root_n=g_root_n,
            omega=params.omega,
            rates=rates,
        )

    def at_delta(self, delta: float) -> "ProbeContext":
        """Same working point at another two-photon detuning."""
        return dataclasses.replace(self, two_photon_detuning=float(delta))


@dataclass(frozen=True)
class Susceptibility:
    """Dispersion (chi1) and absorption (chi2) at one detuning."""

    chi1: float
    chi2: float


def _alpha(ctx: ProbeContext, delta):
    return ctx.rates.spinwave - 1j * np.asarray(delta)


def _beta(ctx: ProbeContext) -> complex:
    return complex(ctx.rates.photon2, ctx.omega2_tilde)


def _denominator_terms(ctx: ProbeContext, delta):
    alpha = _alpha(ctx, delta)
    beta = _beta(ctx)
    gate = ctx.g_root_n * ctx.u2
    t1 = alpha * beta * (ctx.rates.atom + 1j * ctx.delta_cap)
    t2 = beta * ctx.xi**2
    t3 = alpha * gate**2
    return t1 + t2 + t3, np.abs(t1) + abs(t2) + np.abs(t3)


def _check_denominator(den, scale) -> None:
    bad = np.abs(den) < 1e-300 * np.maximum(scale, 1.0)
    if np.any(bad):
        raise SingularResponse("response denominator vanished on the scan grid")


def _chi_complex(ctx: ProbeContext, delta):
    """chi over a detuning array; the scalar API wraps this."""
    den, scale = _denominator_terms(ctx, delta)
    _check_denominator(den, scale)
    num = 2j * ctx.g_root_n**2 * _alpha(ctx, delta) * _beta(ctx)
    return num / (ctx.omega * den)


def susceptibility(ctx: ProbeContext) -> complex:
    """Complex probe susceptibility at the context's working point.

    chi = 2 i (g sqrt(N))^2 alpha beta / (omega * Den) with
    alpha = Gamma_C - i delta, beta = Gamma_c2 + i omega2_tilde, and
    Den = alpha beta (Gamma_A + i Delta) + beta xi^2 + alpha (g sqrt(N) u2)^2.

    Raises SingularResponse if the denominator vanishes (all rates zero at
    the resonance point).
    """
    return complex(_chi_complex(ctx, ctx.two_photon_detuning))


def _chi_decomposition_arrays(ctx: ProbeContext, delta):
    delta = np.asarray(delta, dtype=float)
    den, scale = _denominator_terms(ctx, delta)
    _check_denominator(den, scale)
    theta = np.real(den)
    xi_im = np.imag(den)
    r1 = ctx.rates.spinwave * ctx.rates.photon2 + delta * ctx.omega2_tilde
    i1 = ctx.rates.spinwave * ctx.omega2_tilde - delta * ctx.rates.photon2
    factor = 2.0 * ctx.g_root_n**2 / ctx.omega
    denom = theta * theta + xi_im * xi_im
    chi1 = (r1 * xi_im - i1 * theta) * factor / denom
    chi2 = (r1 * theta + i1 * xi_im) * factor / denom
    return chi1, chi2


def chi_decomposition(ctx: ProbeContext) -> Susceptibility:
    """Dispersion and absorption through the explicit rational split.

    Independent arrangement of the same response: with Theta and Xi the
    real and imaginary parts of the denominator and R1 + i I1 = alpha beta,

        chi1 = (R1 Xi - I1 Theta) F / (Theta^2 + Xi^2)
        chi2 = (R1 Theta + I1 Xi) F / (Theta^2 + Xi^2),
        F = 2 (g sqrt(N))^2 / omega.

    Cross-checks ``susceptibility``; agreement is at rounding level by
    construction of the algebra, not by shared code.
    """
    chi1, chi2 = _chi_decomposition_arrays(ctx, ctx.two_photon_detuning)
    return Susceptibility(chi1=float(chi1), chi2=float(chi2))


def steady_state_mean_A(ctx: ProbeContext, c1_amplitude: complex = 1.0) -> complex:
    """Mean collective-atom amplitude under a steady probe, closed form."""
    den, scale = _denominator_terms(ctx, ctx.two_photon_detuning)
    _check_denominator(den, scale)
    drive = ctx.g_root_n * ctx.u1 * c1_amplitude
    return complex(-1j * drive * _alpha(ctx, ctx.two_photon_detuning) * _beta(ctx) / den)


def _drift_matrix(ctx: ProbeContext) -> np.ndarray:
    gate = ctx.g_root_n * ctx.u2
    return np.array(
        [
            [-(ctx.rates.atom + 1j * ctx.delta_cap), -1j * ctx.xi, -1j * gate],
            [-1j * ctx.xi, -(ctx.rates.spinwave - 1j * ctx.two_photon_detuning), 0.0],
            [-1j * gate, 0.0, -(ctx.rates.photon2 + 1j * ctx.omega2_tilde)],
        ],
        dtype=complex,
    )


def _drive_vector(ctx: ProbeContext, c1_amplitude: complex) -> np.ndarray:
    return np.array(
        [-1j * ctx.g_root_n * ctx.u1 * c1_amplitude, 0.0, 0.0], dtype=complex
    )


def linear_steady_solve(ctx: ProbeContext, c1_amplitude: complex = 1.0) -> np.ndarray:
    """Steady first moments (A, C, c2) from the full 3x3 linear system.

    Independent of the closed form: builds the drift matrix and solves
    M y = -b directly.
    """
    m = _drift_matrix(ctx)
    b = _drive_vector(ctx, c1_amplitude)
    try:
        return np.linalg.solve(m, -b)
    except np.linalg.LinAlgError as exc:
        raise SingularResponse(f"steady-state system is singular: {exc}") from None


@dataclass
class RelaxationResult:
    """Sampled relaxation of the first moments toward their steady values."""

    times: np.ndarray
    amplitudes: np.ndarray  # (n_samples, 3), columns A, C, c2

    @property
    def final(self) -> np.ndarray:
        return self.amplitudes[-1]


def relax_to_steady_state(
    ctx: ProbeContext,
    initial=(0.0, 0.0, 0.0),
    c1_amplitude: complex = 1.0,
    horizon: float | None = None,
    tol: float = 1e-8,
    samples: int = 65,
) -> RelaxationResult:
    """Steady first moments by integrating the damped moment equations.

    Starts from ``initial`` amplitudes (A, C, c2) and integrates
    y' = M y + b long enough for every damped direction to die out.  The
    system is linear, so the integrator is the exact one: the matrix
    exponential of the augmented (M | b) generator, applied step by step
    over a uniform sample grid.  That stays exact for arbitrarily stiff
    rate/oscillation splits where an explicit stepper would grind.  The
    final value never touches the steady-state linear solve, so agreement
    with it is a genuine cross-check.

    The default horizon comes from the slowest eigenvalue decay of the
    drift matrix; an undamped direction (or a horizon too short) raises
    NotConverged instead of returning a drifting answer.  Convergence is
    certified by the residual |M y + b| against the drive scale.
    """
    m = _drift_matrix(ctx)
    b = _drive_vector(ctx, c1_amplitude)
    y0 = np.asarray(initial, dtype=complex)
    if y0.shape != (3,):
        raise ValueError("initial amplitudes must be a length-3 sequence")
    if horizon is None:
        slowest = -float(np.max(np.real(np.linalg.eigvals(m))))
        if slowest <= 0.0:
            raise NotConverged("an undamped direction admits no relaxation horizon")
        horizon = 40.0 / slowest

    # d/dt (y, 1) = [[M, b], [0, 0]] (y, 1): one exponential per uniform step.
    generator = np.zeros((4, 4), dtype=complex)
    generator[:3, :3] = m
    generator[:3, 3] = b
    times = np.linspace(0.0, horizon, samples)
    step = expm(generator * (times[1] - times[0]))
    state = np.append(y0, 1.0)
    amplitudes = np.empty((samples, 3), dtype=complex)
    amplitudes[0] = state[:3]
    for k in range(1, samples):
        state = step @ state
        amplitudes[k] = state[:3]
    out = RelaxationResult(times=times, amplitudes=amplitudes)
    y = out.final
    residual = float(np.linalg.norm(m @ y + b))
    scale = max(float(np.linalg.norm(b)), 1e-30)
    if residual > tol * scale:
        raise NotConverged(
            f"residual {residual:.3e} above tolerance after horizon {horizon:.3g}"
        )
    return out


@dataclass(frozen=True)
class TransparencyMetrics:
    """Shape of the absorption dip around its minimum."""

    center: float  # detuning of the chi2 minimum
    minimum: float  # chi2 there
    left: float  # half-rise crossing below the center
    right: float  # half-rise crossing above the center
    width: float  # right - left
    dispersion_slope: float  # d chi1 / d delta at the center


def _cross_halfway(
    deltas: np.ndarray, chi2: np.ndarray, k0: int, level: float, direction: int
) -> float:
    k = k0
    while 0 <= k + direction < len(deltas):
        k += direction
        if chi2[k] >= level:
            # linear interpolation between k-direction and k
            d0, d1 = deltas[k - direction], deltas[k]
            y0, y1 = chi2[k - direction], chi2[k]
            if y1 == y0:
                return float(d1)
            return float(d0 + (level - y0) * (d1 - d0) / (y1 - y0))
    raise NoWindowFound("absorption never rises to half level on one side")


def transparency_metrics(chi_curve) -> TransparencyMetrics:
    """Locate the transparency dip of a sampled spectrum.

    ``chi_curve`` is a table with columns (delta, chi1, chi2), as produced
    by ``fig4_sweep``.  The center is the grid minimum of chi2; each flank
    must climb to halfway between that minimum and its own side's maximum
    (grid edges count as flank tops).  A minimum sitting on the edge of
    the grid, or a side with no rise at all, raises NoWindowFound.
    """
    curve = np.asarray(chi_curve, dtype=float)
    if curve.ndim != 2 or curve.shape[1] < 3:
        raise ValueError("chi_curve must be a table with columns delta, chi1, chi2")
    if curve.shape[0] < 5:
        raise ValueError("need at least 5 grid points to measure a window")
    deltas, chi1, chi2 = curve[:, 0], curve[:, 1], curve[:, 2]
    k0 = int(np.argmin(chi2))
    if k0 == 0 or k0 == len(deltas) - 1:
        raise NoWindowFound("chi2 minimum sits on the scan edge")
    bottom = chi2[k0]
    left_top = float(chi2[:k0].max())
    right_top = float(chi2[k0 + 1 :].max())
    if left_top <= bottom or right_top <= bottom:
        raise NoWindowFound("one flank never rises above the minimum")
    left = _cross_halfway(deltas, chi2, k0, bottom + 0.5 * (left_top - bottom), -1)
    right = _cross_halfway(deltas, chi2, k0, bottom + 0.5 * (right_top - bottom), +1)
    slope = float(
        (chi1[k0 + 1] - chi1[k0 - 1]) / (deltas[k0 + 1] - deltas[k0 - 1])
    )
    return TransparencyMetrics(
        center=float(deltas[k0]),
        minimum=float(bottom),
        left=left,
        right=right,
        width=right - left,
        dispersion_slope=slope,
    )


PANEL_NAMES = ("a", "b", "c", "d")

# (omega0 / omega, G / omega) per panel of the reference absorption figure
PANEL_GRID = {
    "a": (0.9, 0.0),
    "b": (0.9, 0.1),
    "c": (1.0, 0.1),
    "d": (1.0, 0.001),
}


def panel_context(
    panel: str,
    omega: float = 1.0e6,
    g_root_n: float = 100.0,
    xi: float = 10.0,
    delta_cap: float = 0.0,
    rates: DecayRates | None = None,
) -> ProbeContext:
    """Probe context of one reference panel.

    Panel 'a' is the uncoupled benchmark (second polariton decoupled),
    'b' adds strong coupling at 10 percent detuning, 'c' moves to exact
    resonance, and 'd' keeps resonance but makes the coupling small enough
    that the second polariton sits right on top of the probe.
    """
    if panel not in PANEL_GRID:
        raise ValueError(f"panel must be one of {PANEL_NAMES}, got {panel!r}")
    if rates is None:
        rates = DecayRates(atom=1.0, spinwave=1.0e-4, photon2=1.0e-6)
    ratio, frac = PANEL_GRID[panel]
    params = LightMediumParams(omega=omega, omega0=ratio * omega, coupling=frac * omega)
    return ProbeContext.from_params(
        params, g_root_n=g_root_n, xi=xi, rates=rates, delta_cap=delta_cap
    )


def chi_table(ctx: ProbeContext, delta_grid) -> np.ndarray:
    """Spectrum table (delta, chi1, chi2) over a detuning grid."""
    deltas = np.asarray(delta_grid, dtype=float)
    chi1, chi2 = _chi_decomposition_arrays(ctx, deltas)
    return np.column_stack([deltas, chi1, chi2])


def fig4_sweep(panel: str, delta_grid, **panel_kwargs) -> np.ndarray:
    """Spectrum table (delta, chi1, chi2) of one reference panel.

    Rows follow ``delta_grid`` in order; extra keyword arguments go to
    ``panel_context`` (probe carrier, couplings, rates).
    """
    return chi_table(panel_context(panel, **panel_kwargs), delta_grid)
