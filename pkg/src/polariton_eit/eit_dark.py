"""Dark states and adiabatic photon storage in the polariton EIT setup.

Two pictures of the same physics live here.

Single atom: within one excitation above the ground level, the coupled
system closes on a four-state subspace (excited atom, second stable level,
and the two polariton-raised levels); the dark eigenvector of that block
has zero weight on the excited state and on the off-resonant polariton.

Collective: for many atoms and weak probes the atomic ensemble enters
through two collective bosonic modes (excitation mode A, spin-wave mode C)
coupled to the two polariton photons (c1 resonant, c2 detuned).  A dark
mode D = c1 cos(theta) - C sin(theta) commutes with the Hamiltonian, and
ramping the control coupling from strong to zero rotates theta to pi/2,
mapping photon quanta onto pure spin-wave quanta.  The sweep integrator
at the bottom measures exactly that storage fidelity.

The two mixing angles are reciprocal conventions, not one quantity: the
single-atom dark vector needs tan(theta) = xi / (g u1 sqrt(n1+1)), while
the collective dark mode commutes with the Hamiltonian only for
tan(theta) = g u1 sqrt(M) / xi.  Every angle carries its convention tag
and the two are never mixed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateDark, IndexOutOfRange, ScheduleNotMonotone
from .fockspace import (
    EvolveResult,
    FockOperator,
    FockState,
    ModeSpec,
    as_mode_spec,
    bogoliubov_lowering,
    build_light_medium,
    commutator,
    exact_eigensystem,
    identity,
    lowering,
    number_basis_state,
    number_operator,
    vacuum,
    evolve,
)
from .hopfield import LightMediumParams, PolaritonBasis, diagonalize

__all__ = [
    "EitContext",
    "SubspaceMatrix",
    "MixingAngle",
    "subspace_matrix",
    "mixing_angle",
    "dark_state",
    "collective_hamiltonian",
    "collective_schedule_ops",
    "dark_mode_operator",
    "dark_mode_from_angle",
    "bright_mode_from_angle",
    "dark_number_state",
    "epsilon_bright",
    "bright_sector_matrix",
    "bright_sector_spectrum",
    "bright_ladder_residual",
    "collective_commutator_residuals",
    "dark_invariance_residuals",
    "no_mixing_check",
    "SweepSchedule",
    "SweepResult",
    "adiabatic_sweep",
    "bare_photon_initial_state",
]

# Mode order of every collective-model Fock space in this module.
MODE_C1, MODE_C2, MODE_A, MODE_C = 0, 1, 2, 3


@dataclass(frozen=True)
class EitContext:
    """Couplings seen by the atoms once the field is in the polariton basis.

    Attributes
    ----------
    xi:
        Control (classical) coupling between the excited state and the
        second stable level.
    g:
        Bare atom-photon coupling of the probed transition.
    delta_cap:
        One-photon detuning of the excited state.
    omega2_tilde:
        Frequency of the non-probe polariton relative to the probe one;
        either sign occurs, depending on which branch carries the probe.
    u1, u2:
        Photon weights of the probe and non-probe polariton modes.  They
        must come from one ``PolaritonBasis``; ``from_basis`` is the path
        that guarantees it, the raw constructor only checks finiteness.
    atom_count:
        Number of atoms M entering the collective couplings via sqrt(M).
    two_photon_detuning:
        Offset of the second stable level; zero everywhere except the
        steady-state optics built on top of this context.
    """

    xi: float
    g: float
    delta_cap: float
    omega2_tilde: float
    u1: float
    u2: float
    atom_count: int = 1
    two_photon_detuning: float = 0.0

    def __post_init__(self) -> None:
        if self.atom_count < 1:
            raise ValueError(f"atom_count must be >= 1, got {self.atom_count}")
        if self.xi < 0.0:
            raise ValueError(f"xi must be nonnegative, got {self.xi}")
        if not self.g > 0.0:
            raise ValueError(f"g must be positive, got {self.g}")
        for name in ("delta_cap", "omega2_tilde", "u1", "u2", "two_photon_detuning"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def from_basis(
        cls,
        basis: PolaritonBasis,
        g: float,
        xi: float,
        delta_cap: float = 0.0,
        atom_count: int = 1,
        two_photon_detuning: float = 0.0,
    ) -> "EitContext":
        return cls(
            xi=xi,
            g=g,
            delta_cap=delta_cap,
            omega2_tilde=basis.omega2_tilde,
            u1=basis.probe.u1,
            u2=basis.other.u1,
            atom_count=atom_count,
            two_photon_detuning=two_photon_detuning,
        )

    @property
    def kappa(self) -> float:
        """Collective probe coupling g * u1 * sqrt(M)."""
        return self.g * self.u1 * math.sqrt(self.atom_count)

    @property
    def kappa2(self) -> float:
        """Collective non-probe coupling g * u2 * sqrt(M)."""
        return self.g * self.u2 * math.sqrt(self.atom_count)


@dataclass(frozen=True)
class SubspaceMatrix:
    """One-excitation block of the single-atom Hamiltonian.

    ``matrix`` acts on (excited atom; second stable level; probe-raised
    ground level; other-raised ground level) above (n1, n2) polariton
    quanta.  The constant energy of the backdrop quanta is kept out of the
    matrix in ``shift``; the probe branch is the rotating-frame zero, so
    only n2 contributes.
    """

    matrix: np.ndarray
    shift: float


def subspace_matrix(n1: int, n2: int, ctx: EitContext) -> SubspaceMatrix:
    """Single-atom Hamiltonian block, one excitation above (n1, n2) quanta."""
    if n1 < 0 or n2 < 0:
        raise IndexOutOfRange("polariton occupations must be nonnegative")
    k1 = ctx.g * ctx.u1 * math.sqrt(n1 + 1.0)
    k2 = ctx.g * ctx.u2 * math.sqrt(n2 + 1.0)
    mat = np.array(
        [
            [ctx.delta_cap, ctx.xi, k1, k2],
            [ctx.xi, 0.0, 0.0, 0.0],
            [k1, 0.0, 0.0, 0.0],
            [k2, 0.0, 0.0, ctx.omega2_tilde],
        ]
    )
    return SubspaceMatrix(matrix=mat, shift=n2 * ctx.omega2_tilde)


@dataclass(frozen=True)
class MixingAngle:
    """Dark-state rotation angle with the convention it was derived in."""

    theta: float
    convention: str  # "single_atom" or "collective"


def mixing_angle(
    ctx: EitContext, n1: int = 0, convention: str = "collective"
) -> MixingAngle:
    """Angle of the dark superposition in either convention.

    single_atom: tan(theta) = xi / (g u1 sqrt(n1+1)), the angle of the
    Lambda-block dark eigenvector.  collective: tan(theta) =
    g u1 sqrt(M) / xi, the angle that makes D = c1 cos(theta) -
    C sin(theta) commute with the collective Hamiltonian.  The two are
    reciprocal; the tag on the result says which one it is.
    """
    coupling = ctx.g * ctx.u1 * math.sqrt(n1 + 1.0)
    if convention == "single_atom":
        num, den = ctx.xi, coupling
    elif convention == "collective":
        num, den = ctx.kappa, ctx.xi
    else:
        raise ValueError(f"unknown convention {convention!r}")
    if num == 0.0 and den == 0.0:
        raise DegenerateDark(
            "both the probe coupling and the control coupling vanish; "
            "the dark direction is undefined"
        )
    return MixingAngle(theta=math.atan2(num, den), convention=convention)


def dark_state(
    n1: int, n2: int, ctx: EitContext
) -> tuple[np.ndarray, MixingAngle]:
    """Zero-energy eigenvector of the single-atom block, plus its angle.

    Only the second stable level and the probe-raised level carry weight:
    sin(theta) |probe-raised> - cos(theta) |second level|, i.e. the vector
    (0, -cos(theta), sin(theta), 0).  The phase puts the positive
    amplitude on the probe-raised slot.  The block of ``subspace_matrix``
    annihilates it for every (n1, n2).
    """
    if n1 < 0 or n2 < 0:
        raise IndexOutOfRange("polariton occupations must be nonnegative")
    if ctx.xi == 0.0 and ctx.g * ctx.u1 == 0.0:
        raise DegenerateDark(
            "both the probe coupling and the control coupling vanish; "
            "the dark direction is undefined"
        )
    ang = mixing_angle(ctx, n1=n1, convention="single_atom")
    vec = np.array([0.0, -math.cos(ang.theta), math.sin(ang.theta), 0.0])
    return vec, ang


# ---------------------------------------------------------------------------
# collective bosonic model on modes (c1, c2, A, C)


def _collective_ops(spec: ModeSpec) -> tuple[FockOperator, ...]:
    if spec.n_modes != 4:
        raise IndexOutOfRange("the collective model uses exactly four modes")
    return tuple(lowering(spec, m) for m in range(4))


def collective_hamiltonian(
    ctx: EitContext,
    cutoffs: ModeSpec | Sequence[int],
    xi: float | None = None,
) -> FockOperator:
    """Number-conserving four-mode Hamiltonian of the collective picture.

    H = omega2_tilde c2^dag c2 + delta_cap A^dag A + xi (A^dag C + C^dag A)
        + g u1 sqrt(M) (c1 A^dag + A c1^dag)
        + g u2 sqrt(M) (c2 A^dag + A c2^dag)
    """
    spec = as_mode_spec(cutoffs)
    c1, c2, a, c = _collective_ops(spec)
    x = ctx.xi if xi is None else xi
    h = (
        ctx.omega2_tilde * (c2.dag() @ c2)
        + ctx.delta_cap * (a.dag() @ a)
        + x * (a.dag() @ c + c.dag() @ a)
        + ctx.kappa * (a.dag() @ c1 + c1.dag() @ a)
        + ctx.kappa2 * (a.dag() @ c2 + c2.dag() @ a)
    )
    return h


def collective_schedule_ops(
    ctx: EitContext, cutoffs: ModeSpec | Sequence[int]
) -> tuple[FockOperator, FockOperator]:
    """Split H into the fixed part and the unit control term A^dag C + h.c."""
    spec = as_mode_spec(cutoffs)
    _, _, a, c = _collective_ops(spec)
    fixed = collective_hamiltonian(ctx, spec, xi=0.0)
    control = a.dag() @ c + c.dag() @ a
    return fixed, control


def dark_mode_from_angle(spec: ModeSpec, theta: float) -> FockOperator:
    """D(theta) = c1 cos(theta) - C sin(theta)."""
    c1, _, _, c = _collective_ops(spec)
    return math.cos(theta) * c1 - math.sin(theta) * c


def bright_mode_from_angle(spec: ModeSpec, theta: float) -> FockOperator:
    """B(theta) = c1 sin(theta) + C cos(theta), orthogonal to D."""
    c1, _, _, c = _collective_ops(spec)
    return math.sin(theta) * c1 + math.cos(theta) * c


def dark_mode_operator(
    ctx: EitContext, cutoffs: ModeSpec | Sequence[int]
) -> tuple[FockOperator, float]:
    """Dark mode matched to the context's own control value, with its angle.

    The returned D commutes with ``collective_hamiltonian(ctx, cutoffs)``
    on the protected subspace and satisfies [D, D^dag] = 1 there.
    """
    spec = as_mode_spec(cutoffs)
    theta = mixing_angle(ctx, convention="collective").theta
    return dark_mode_from_angle(spec, theta), theta


def dark_number_state(spec: ModeSpec, theta: float, n: int) -> FockState:
    """|D_n> = D^dag^n |vac> / sqrt(n!), exact while n fits the cutoffs."""
    if n < 0:
        raise IndexOutOfRange("excitation number must be nonnegative")
    if n > spec.cutoffs[MODE_C1] or n > spec.cutoffs[MODE_C]:
        raise IndexOutOfRange(
            f"dark state with {n} quanta does not fit cutoffs {spec.cutoffs}"
        )
    d_dag = dark_mode_from_angle(spec, theta).dag()
    vec = vacuum(spec).vector
    for _ in range(n):
        vec = d_dag.matrix @ vec
    return FockState(spec, vec / math.sqrt(math.factorial(n)))


def epsilon_bright(ctx: EitContext, xi: float | None = None) -> float:
    """Bright-mode ladder strength: [H, B^dag] = epsilon A^dag."""
    x = ctx.xi if xi is None else xi
    return math.hypot(ctx.kappa, x)


def bright_sector_matrix(ctx: EitContext, xi: float | None = None) -> np.ndarray:
    """One-excitation block on (A, B, c2); the dark direction is absent."""
    eps = epsilon_bright(ctx, xi)
    return np.array(
        [
            [ctx.delta_cap, eps, ctx.kappa2],
            [eps, 0.0, 0.0],
            [ctx.kappa2, 0.0, ctx.omega2_tilde],
        ]
    )


def bright_sector_spectrum(ctx: EitContext) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and coefficient rows of the bright sector.

    Row i holds the (A, B, c2) coefficients of the i-th normal mode; rows
    are orthonormal, each phase fixed so its largest entry is positive.
    """
    vals, vecs = np.linalg.eigh(bright_sector_matrix(ctx))
    rows = vecs.T.copy()
    for i in range(rows.shape[0]):
        k = int(np.argmax(np.abs(rows[i])))
        if rows[i, k] < 0.0:
            rows[i] = -rows[i]
    return vals, rows


def bright_ladder_residual(
    ctx: EitContext,
    cutoffs: ModeSpec | Sequence[int] = (3, 3, 3, 3),
    margin: int = 2,
) -> float:
    """Worst violation of [Q_i, H] = eps_i Q_i on the protected subspace.

    Q_i is the normal-mode lowering operator built from the coefficient
    rows of ``bright_sector_spectrum`` over (A, B, c2).
    """
    spec = as_mode_spec(cutoffs)
    vals, rows = bright_sector_spectrum(ctx)
    theta = mixing_angle(ctx, convention="collective").theta
    _, c2, a, _ = _collective_ops(spec)
    b = bright_mode_from_angle(spec, theta)
    h = collective_hamiltonian(ctx, spec)
    idx = spec.protected_indices(margin)
    worst = 0.0
    for eps_i, row in zip(vals, rows):
        q = row[0] * a + row[1] * b + row[2] * c2
        res = commutator(q, h) - eps_i * q
        worst = max(worst, res.max_abs_on(idx))
    return worst


def conserved_number_operator(spec: ModeSpec) -> FockOperator:
    total = number_operator(spec, 0)
    for m in range(1, spec.n_modes):
        total = total + number_operator(spec, m)
    return total


def collective_commutator_residuals(
    cutoffs: ModeSpec | Sequence[int] = (3, 3, 3, 3),
    margin: int = 2,
) -> dict[str, float]:
    """The eight basic commutation relations of the collective algebra.

    In the low-excitation bosonic representation the atomic operators are
    S = A^dag A, T+ = A^dag C, T- = C^dag A.  Each entry is the largest
    matrix element of the relation's defect on the protected subspace of a
    small dense realization; all should sit at rounding level.
    """
    spec = as_mode_spec(cutoffs)
    if spec.n_modes != 4:
        raise IndexOutOfRange("the collective model uses exactly four modes")
    _, _, a, c = _collective_ops(spec)
    s = a.dag() @ a
    t_plus = a.dag() @ c
    t_minus = c.dag() @ a
    eye = identity(spec)
    idx = spec.protected_indices(margin)

    def worst(op: FockOperator) -> float:
        return op.max_abs_on(idx)

    return {
        "A_S": worst(commutator(a, s) - a),
        "C_S": worst(commutator(c, s)),
        "A_Adag": worst(commutator(a, a.dag()) - eye),
        "C_Cdag": worst(commutator(c, c.dag()) - eye),
        "Tplus_Cdag": worst(commutator(t_plus, c.dag()) - a.dag()),
        "Tminus_Adag": worst(commutator(t_minus, a.dag()) - c.dag()),
        "S_Tplus": worst(commutator(s, t_plus) - t_plus),
        "S_Tminus": worst(commutator(s, t_minus) + t_minus),
    }


def dark_invariance_residuals(
    ctx: EitContext,
    cutoffs: ModeSpec | Sequence[int] = (3, 3, 3, 3),
    margin: int = 2,
) -> dict[str, float]:
    """[H, D] = 0 and [D, D^dag] = 1 on the protected subspace."""
    spec = as_mode_spec(cutoffs)
    d, _ = dark_mode_operator(ctx, spec)
    h = collective_hamiltonian(ctx, spec)
    eye = identity(spec)
    idx = spec.protected_indices(margin)
    return {
        "commutes_with_h": commutator(h, d).max_abs_on(idx),
        "canonical": (commutator(d, d.dag()) - eye).max_abs_on(idx),
    }


def no_mixing_check(
    ctx: EitContext,
    thetas: Sequence[float],
    n_max: int = 2,
    cutoffs: ModeSpec | Sequence[int] = (3, 3, 3, 3),
    step: float = 1e-5,
) -> float:
    """Largest rotation-induced coupling inside the zero-eigenvalue family.

    Central-difference derivative of |D_n(theta)| projected on |D_m>:
    distinct pairs count in full, the diagonal only through its real part
    (the imaginary part is a geometric phase, not a mixing).  The context
    fixes which couplings exist but the scan is over the supplied angles.
    """
    del ctx  # the dark family depends only on theta and the layout
    spec = as_mode_spec(cutoffs)
    worst = 0.0
    for theta in np.asarray(thetas, dtype=float):
        darks = [dark_number_state(spec, theta, n).vector for n in range(n_max + 1)]
        for n in range(n_max + 1):
            plus = dark_number_state(spec, theta + step, n).vector
            minus = dark_number_state(spec, theta - step, n).vector
            deriv = (plus - minus) / (2.0 * step)
            for m in range(n_max + 1):
                coupling = complex(np.vdot(darks[m], deriv))
                if m == n:
                    worst = max(worst, abs(coupling.real))
                else:
                    worst = max(worst, abs(coupling))
    return worst


# ---------------------------------------------------------------------------
# storage sweep


@dataclass(frozen=True)
class SweepSchedule:
    """Monotone rotation of the mixing angle from theta_start to pi/2.

    The default profile theta(t) = theta0 + (pi/2 - theta0) sin^2(pi t / 2T)
    starts and ends with zero angular velocity.  theta_start must be
    strictly positive because the realized control xi(t) = kappa
    cot(theta) diverges at theta = 0; the start value caps the achievable
    fidelity at cos^2(theta_start), so keep it small.  A custom profile is
    validated on a dense grid: theta must stay inside [theta_start, pi/2]
    and never decrease.
    """

    duration: float
    theta_start: float
    profile: Callable[[float], float] | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.theta_start < 0.5 * math.pi:
            raise ValueError("theta_start must lie strictly between 0 and pi/2")
        if self.duration <= 0.0:
            raise ValueError("duration must be positive")
        grid = np.linspace(0.0, self.duration, 513)
        values = np.array([self.theta(t) for t in grid])
        if np.any(np.diff(values) < -1e-12) or values[0] < self.theta_start - 1e-12 \
                or values[-1] > 0.5 * math.pi + 1e-12:
            raise ScheduleNotMonotone(
                "theta(t) must rise monotonically from theta_start to pi/2"
            )

    def theta(self, t: float) -> float:
        if self.profile is not None:
            return self.profile(t)
        s = math.sin(0.5 * math.pi * t / self.duration)
        return self.theta_start + (0.5 * math.pi - self.theta_start) * s * s

    def xi(self, t: float, kappa: float) -> float:
        return kappa / math.tan(self.theta(t))


@dataclass
class SweepResult:
    """Trajectory and figures of merit of one storage sweep."""

    times: np.ndarray
    theta: np.ndarray
    fidelity_dark: np.ndarray
    pop_e: np.ndarray
    pop_c1: np.ndarray
    pop_c2: np.ndarray
    pop_spinwave: np.ndarray
    norm: np.ndarray
    final_state: FockState
    fidelity: float
    leakage: float
    s_n0_squared: float


def adiabatic_sweep(
    ctx: EitContext,
    schedule: SweepSchedule,
    initial: FockState,
    n: int,
    *,
    samples: int = 129,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    norm_tol: float = 1e-8,
) -> SweepResult:
    """Integrate the ramp and score the stored state.

    ``fidelity`` is the squared overlap with the pure n-quantum spin wave
    at the end of the ramp; ``leakage`` is one minus the total population
    of the dark family there, so it also counts any weight the truncated
    initial state never captured.  ``s_n0_squared`` is the squared overlap
    of the initial state with the matching dark state at the starting
    angle, the quantity that caps the long-sweep fidelity.  The context's
    own xi is ignored; the control follows the schedule, reaching zero
    exactly when theta hits pi/2.
    """
    spec = initial.spec
    fixed, control = collective_schedule_ops(ctx, spec)
    kappa = ctx.kappa
    times = np.linspace(0.0, schedule.duration, samples)
    result: EvolveResult = evolve(
        (fixed, [(lambda t: schedule.xi(t, kappa), control)]),
        initial,
        schedule.duration,
        sample_times=times,
        rtol=rtol,
        atol=atol,
        norm_tol=norm_tol,
    )

    thetas = np.array([schedule.theta(t) for t in result.times])
    occ = spec.occupation_table()
    weights = np.abs(result.states) ** 2
    pop_c1 = weights @ occ[:, MODE_C1]
    pop_c2 = weights @ occ[:, MODE_C2]
    pop_e = weights @ occ[:, MODE_A]
    pop_spinwave = weights @ occ[:, MODE_C]
    norms = np.linalg.norm(result.states, axis=1)

    fid_dark = np.empty(len(result.times))
    for k, (theta_k, row) in enumerate(zip(thetas, result.states)):
        dark_vec = dark_number_state(spec, theta_k, n).vector
        fid_dark[k] = abs(np.vdot(dark_vec, row)) ** 2

    final = FockState(spec, result.states[-1])
    target = dark_number_state(spec, 0.5 * math.pi, n).vector
    fidelity = float(abs(np.vdot(target, final.vector)) ** 2)
    dark_family = 0.0
    for m in range(min(spec.cutoffs[MODE_C1], spec.cutoffs[MODE_C]) + 1):
        vec = dark_number_state(spec, 0.5 * math.pi, m).vector
        dark_family += abs(np.vdot(vec, final.vector)) ** 2
    leakage = float(max(0.0, 1.0 - dark_family))
    start_dark = dark_number_state(spec, thetas[0], n).vector
    s_n0_squared = float(abs(np.vdot(start_dark, initial.vector)) ** 2)
    return SweepResult(
        times=result.times,
        theta=thetas,
        fidelity_dark=fid_dark,
        pop_e=pop_e,
        pop_c1=pop_c1,
        pop_c2=pop_c2,
        pop_spinwave=pop_spinwave,
        norm=norms,
        final_state=final,
        fidelity=fidelity,
        leakage=leakage,
        s_n0_squared=s_n0_squared,
    )


def bare_photon_initial_state(
    params: LightMediumParams,
    spec: ModeSpec,
    n: int,
    field_cutoffs: tuple[int, int] = (25, 25),
) -> FockState:
    """Bare n-photon light state expanded over polariton quanta.

    The physical input is |n> of the light mode over the medium ground
    state; in the polariton basis that is a superposition over joint
    occupations (i, j).  The amplitudes are obtained numerically: the
    dressed vacuum comes from exact diagonalization and the polariton
    number states are built by applying the Bogoliubov raising operators.
    Components beyond the collective-layout cutoffs are dropped, so the
    returned vector's squared norm is the captured weight (slightly below
    one at nonzero coupling).
    """
    if spec.n_modes != 4:
        raise IndexOutOfRange("the collective model uses exactly four modes")
    if n > spec.cutoffs[MODE_C1]:
        raise IndexOutOfRange(f"{n} photons do not fit cutoff {spec.cutoffs[MODE_C1]}")
    basis = diagonalize(params)
    if params.coupling == 0.0:
        return number_basis_state(spec, (n, 0, 0, 0))
    h2 = build_light_medium(params, field_cutoffs)
    spec2 = h2.spec
    _, vecs = exact_eigensystem(h2)
    ground = vecs[:, 0]
    p_probe = bogoliubov_lowering(spec2, basis.probe)
    p_other = bogoliubov_lowering(spec2, basis.other)
    bare_index = spec2.index((n, 0))

    out = np.zeros(spec.dimension, dtype=complex)
    col = ground.astype(complex)
    for i in range(spec.cutoffs[MODE_C1] + 1):
        if i > 0:
            col = p_probe.dag().matrix @ col / math.sqrt(i)
        row = col
        for j in range(spec.cutoffs[MODE_C2] + 1):
            if j > 0:
                row = p_other.dag().matrix @ row / math.sqrt(j)
            amplitude = np.conj(row[bare_index])
            if amplitude != 0.0:
                out[spec.index((i, j, 0, 0))] = amplitude
    return FockState(spec, out)
