"""Truncated Fock space tools: operators, exact spectra, time evolution.

This is the numerically exact side of the package.  Everything analytic
elsewhere (polariton frequencies, transfer efficiencies, dark states) can
be cross-checked here against dense matrices in a product Fock basis with
per-mode occupation cutoffs.

Conventions
-----------
* A ``ModeSpec`` lists the maximum occupation per mode; mode ``i`` holds
  occupations ``0 .. cutoffs[i]`` and contributes ``cutoffs[i]+1`` levels.
* Product-basis index: the first listed mode varies slowest, so
  ``index = sum(occ[i] * stride[i])`` with
  ``stride[i] = prod(cutoffs[i+1:] + 1)``.
* Truncation is only trusted away from the edge: identities are checked on
  the protected subspace of states at least ``margin`` quanta below every
  cutoff (default margin 2, enough for quadratic Hamiltonians).
* Eigenvector phase is fixed by making the largest-magnitude component
  real and positive, so spectra and overlaps are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    IndexOutOfRange,
    NotHermitian,
    ShapeMismatch,
    StepUnderflow,
)
from .hopfield import LightMediumParams, PolaritonBasis, PolaritonMode, diagonalize

__all__ = [
    "ModeSpec",
    "as_mode_spec",
    "FockOperator",
    "FockState",
    "vacuum",
    "number_basis_state",
    "ladder",
    "lowering",
    "raising",
    "number_operator",
    "identity",
    "commutator",
    "overlap",
    "build_light_medium",
    "bogoliubov_lowering",
    "exact_eigensystem",
    "excitation_gaps",
    "polariton_number_state",
    "evolve",
    "EvolveResult",
]

MAX_DIMENSION = 200_000


@dataclass(frozen=True)
class ModeSpec:
    """Maximum occupations of a product Fock space, one entry per mode."""

    cutoffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.cutoffs) == 0:
            raise ValueError("at least one mode is required")
        if any((not isinstance(c, int)) or c < 1 for c in self.cutoffs):
            raise ValueError(f"cutoffs must be positive integers, got {self.cutoffs}")
        if self.dimension > MAX_DIMENSION:
            raise ValueError(
                f"dimension {self.dimension} exceeds the dense-matrix cap {MAX_DIMENSION}"
            )

    @property
    def n_modes(self) -> int:
        return len(self.cutoffs)

    @property
    def dimension(self) -> int:
        return math.prod(c + 1 for c in self.cutoffs)

    def check_mode(self, mode: int) -> None:
        if not 0 <= mode < self.n_modes:
            raise IndexOutOfRange(f"mode {mode} not in 0..{self.n_modes - 1}")

    def index(self, occupations: Sequence[int]) -> int:
        """Flat index of a product basis state."""
        if len(occupations) != self.n_modes:
            raise IndexOutOfRange(
                f"expected {self.n_modes} occupations, got {len(occupations)}"
            )
        idx = 0
        for occ, cut in zip(occupations, self.cutoffs):
            if not 0 <= occ <= cut:
                raise IndexOutOfRange(f"occupation {occ} not in 0..{cut}")
            idx = idx * (cut + 1) + occ
        return idx

    def occupation_table(self) -> np.ndarray:
        """(dimension, n_modes) array of occupations per basis state."""
        levels = tuple(c + 1 for c in self.cutoffs)
        grids = np.indices(levels).reshape(self.n_modes, -1)
        return grids.T

    def protected_indices(self, margin: int = 2) -> np.ndarray:
        """Basis states at least ``margin`` quanta below every cutoff."""
        table = self.occupation_table()
        limits = np.array(self.cutoffs) - margin
        keep = np.all(table <= limits, axis=1)
        return np.flatnonzero(keep)


class FockOperator:
    """Dense operator on a product Fock space."""

    __slots__ = ("spec", "matrix")

    def __init__(self, spec: ModeSpec, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (spec.dimension, spec.dimension):
            raise ShapeMismatch(
                f"matrix shape {matrix.shape} does not match dimension {spec.dimension}"
            )
        self.spec = spec
        self.matrix = matrix

    def _check_peer(self, other: "FockOperator") -> None:
        if other.spec != self.spec:
            raise ShapeMismatch("operators live on different mode layouts")

    def dag(self) -> "FockOperator":
        return FockOperator(self.spec, self.matrix.conj().T)

    def __add__(self, other: "FockOperator") -> "FockOperator":
        self._check_peer(other)
        return FockOperator(self.spec, self.matrix + other.matrix)

    def __sub__(self, other: "FockOperator") -> "FockOperator":
        self._check_peer(other)
        return FockOperator(self.spec, self.matrix - other.matrix)

    def __neg__(self) -> "FockOperator":
        return FockOperator(self.spec, -self.matrix)

    def __mul__(self, scalar: complex) -> "FockOperator":
        return FockOperator(self.spec, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, FockOperator):
            self._check_peer(other)
            return FockOperator(self.spec, self.matrix @ other.matrix)
        if isinstance(other, FockState):
            if other.spec != self.spec:
                raise ShapeMismatch("operator and state live on different mode layouts")
            return FockState(self.spec, self.matrix @ other.vector)
        return NotImplemented

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, float(np.abs(self.matrix).max()))
        return float(np.abs(self.matrix - self.matrix.conj().T).max()) <= tol * scale

    def restricted(self, indices: np.ndarray) -> np.ndarray:
        """Submatrix on a set of basis states (e.g. the protected ones)."""
        return self.matrix[np.ix_(indices, indices)]

    def max_abs_on(self, indices: np.ndarray) -> float:
        return float(np.abs(self.restricted(indices)).max())


class FockState:
    """Dense state vector on a product Fock space."""

    __slots__ = ("spec", "vector")

    def __init__(self, spec: ModeSpec, vector: np.ndarray):
        vector = np.asarray(vector, dtype=complex)
        if vector.shape != (spec.dimension,):
            raise ShapeMismatch(
                f"vector shape {vector.shape} does not match dimension {spec.dimension}"
            )
        self.spec = spec
        self.vector = vector

    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def normalized(self) -> "FockState":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return FockState(self.spec, self.vector / n)

    def overlap(self, other: "FockState") -> complex:
        if other.spec != self.spec:
            raise ShapeMismatch("states live on different mode layouts")
        return complex(np.vdot(self.vector, other.vector))

    def occupation(self, mode: int) -> float:
        """Expectation of the number operator of one mode."""
        self.spec.check_mode(mode)
        occ = self.spec.occupation_table()[:, mode]
        return float(np.real(np.sum(occ * np.abs(self.vector) ** 2)))


def vacuum(spec: ModeSpec) -> FockState:
    v = np.zeros(spec.dimension, dtype=complex)
    v[0] = 1.0
    return FockState(spec, v)


def number_basis_state(spec: ModeSpec, occupations: Sequence[int]) -> FockState:
    v = np.zeros(spec.dimension, dtype=complex)
    v[spec.index(occupations)] = 1.0
    return FockState(spec, v)


def identity(spec: ModeSpec) -> FockOperator:
    return FockOperator(spec, np.eye(spec.dimension, dtype=complex))


def _single_mode_lowering(cutoff: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1.0, cutoff + 1)), k=1)


def lowering(spec: ModeSpec, mode: int) -> FockOperator:
    """Annihilation operator of one mode, matrix elements sqrt(n)."""
    spec.check_mode(mode)
    mat = np.array([[1.0]])
    for i, cut in enumerate(spec.cutoffs):
        block = _single_mode_lowering(cut) if i == mode else np.eye(cut + 1)
        mat = np.kron(mat, block)
    return FockOperator(spec, mat)


def raising(spec: ModeSpec, mode: int) -> FockOperator:
    return lowering(spec, mode).dag()


def ladder(spec: ModeSpec, mode: int) -> tuple[FockOperator, FockOperator]:
    """Lowering and raising operators of one mode, as a pair."""
    low = lowering(spec, mode)
    return low, low.dag()


def number_operator(spec: ModeSpec, mode: int) -> FockOperator:
    spec.check_mode(mode)
    occ = spec.occupation_table()[:, mode].astype(float)
    return FockOperator(spec, np.diag(occ).astype(complex))


def commutator(a: FockOperator, b: FockOperator) -> FockOperator:
    return a @ b - b @ a


def overlap(x: FockState, y: FockState) -> complex:
    """Inner product <x|y>."""
    return x.overlap(y)


def as_mode_spec(spec_or_cutoffs: ModeSpec | Sequence[int]) -> ModeSpec:
    if isinstance(spec_or_cutoffs, ModeSpec):
        return spec_or_cutoffs
    return ModeSpec(tuple(int(c) for c in spec_or_cutoffs))


def build_light_medium(
    params: LightMediumParams, mode_spec: ModeSpec | Sequence[int] = (25, 25)
) -> FockOperator:
    """Two-mode Hamiltonian with the full position-position coupling.

    H = omega a^dag a + omega0 b^dag b + G (a + a^dag)(b + b^dag),
    light mode first.  Zero point offsets are dropped; they cancel in
    every gap and overlap this operator is used for.
    """
    spec = as_mode_spec(mode_spec)
    if spec.n_modes != 2:
        raise ShapeMismatch("the light-medium Hamiltonian needs exactly two modes")
    a = lowering(spec, 0)
    b = lowering(spec, 1)
    xa = a + a.dag()
    xb = b + b.dag()
    h = (
        params.omega * (a.dag() @ a)
        + params.omega0 * (b.dag() @ b)
        + params.coupling * (xa @ xb)
    )
    if not h.is_hermitian():
        raise NotHermitian("light-medium Hamiltonian failed the hermiticity check")
    return h


def bogoliubov_lowering(
    spec: ModeSpec, mode: PolaritonMode, light_index: int = 0, medium_index: int = 1
) -> FockOperator:
    """Polariton annihilation operator realized on the truncated space.

    p = x1 a + y1 a^dag + x2 b + y2 b^dag.  Exact commutation with the
    Hamiltonian only holds on the protected subspace; tests check it there.
    """
    a = lowering(spec, light_index)
    b = lowering(spec, medium_index)
    return (
        mode.x1 * a + mode.y1 * a.dag() + mode.x2 * b + mode.y2 * b.dag()
    )


def exact_eigensystem(
    op: FockOperator, hermitian_tol: float = 1e-10
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and phase-fixed eigenvectors (columns)."""
    if not op.is_hermitian(hermitian_tol):
        raise NotHermitian("eigensystem requested for a non-Hermitian operator")
    # eigh on the explicitly symmetrized matrix keeps eigenvalues real.
    sym = 0.5 * (op.matrix + op.matrix.conj().T)
    vals, vecs = np.linalg.eigh(sym)
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        k = int(np.argmax(np.abs(col)))
        ph = col[k]
        if ph != 0:
            vecs[:, j] = col * (abs(ph) / ph)
    return vals, vecs


def excitation_gaps(op: FockOperator, count: int = 2) -> np.ndarray:
    """Lowest ``count`` excitation energies above the ground state."""
    vals, _ = exact_eigensystem(op)
    if count >= len(vals):
        raise IndexOutOfRange(f"asked for {count} gaps from {len(vals)} levels")
    return vals[1 : count + 1] - vals[0]


def polariton_number_state(
    params: LightMediumParams,
    cutoffs: ModeSpec | Sequence[int],
    n_probe: int,
    n_other: int = 0,
) -> tuple[FockState, PolaritonBasis]:
    """Eigenstate holding ``n_probe`` quanta of the probe polariton.

    The level is located by targeting the analytic energy
    ``E0 + n_probe * Omega_probe + n_other * Omega_other`` in the dense
    spectrum, which is unambiguous while the truncation error is well
    below the level spacing.
    """
    if n_probe < 0 or n_other < 0:
        raise IndexOutOfRange("excitation numbers must be nonnegative")
    basis = diagonalize(params)
    h = build_light_medium(params, cutoffs)
    vals, vecs = exact_eigensystem(h)
    target = vals[0] + n_probe * basis.probe.frequency + n_other * basis.other.frequency
    k = int(np.argmin(np.abs(vals - target)))
    return FockState(h.spec, vecs[:, k]), basis


@dataclass
class EvolveResult:
    """Sampled Schroedinger evolution."""

    times: np.ndarray
    states: np.ndarray  # (n_samples, dimension)
    norm_drift: float

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


ScheduleTerm = tuple[Callable[[float], float], FockOperator]


def evolve(
    hamiltonian: FockOperator | tuple[FockOperator, Sequence[ScheduleTerm]],
    state: FockState,
    duration: float,
    *,
    sample_times: Sequence[float] | None = None,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    norm_tol: float = 1e-8,
    max_retries: int = 2,
) -> EvolveResult:
    """Integrate i d/dt psi = H(t) psi with DOP853.

    ``hamiltonian`` is either a constant operator or a pair
    ``(H0, [(coefficient_fn, H1), ...])`` describing an affine schedule
    ``H(t) = H0 + sum_k c_k(t) H_k``.  Norm drift beyond ``norm_tol`` at
    any sample triggers a retry with tolerances tightened a thousandfold;
    persistent drift (or solver failure) raises StepUnderflow rather than
    returning a quietly wrong state.
    """
    if isinstance(hamiltonian, FockOperator):
        base = hamiltonian
        terms: list[ScheduleTerm] = []
    else:
        base, schedule = hamiltonian
        terms = list(schedule)
    if not base.is_hermitian(1e-10):
        raise NotHermitian("constant part of the schedule is not Hermitian")
    for _, op in terms:
        if op.spec != base.spec:
            raise ShapeMismatch("schedule terms live on different mode layouts")
        if not op.is_hermitian(1e-10):
            raise NotHermitian("a schedule term is not Hermitian")
    if state.spec != base.spec:
        raise ShapeMismatch("state and Hamiltonian live on different mode layouts")
    if duration < 0:
        raise ValueError("duration must be nonnegative")

    if sample_times is None:
        t_eval = np.linspace(0.0, duration, 65)
    else:
        t_eval = np.asarray(sample_times, dtype=float)
        if len(t_eval) == 0 or t_eval[0] < 0 or t_eval[-1] > duration:
            raise ValueError("sample times must lie inside [0, duration]")

    m0 = base.matrix
    mats = [op.matrix for _, op in terms]
    fns = [fn for fn, _ in terms]

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        hy = m0 @ y
        for fn, m in zip(fns, mats):
            hy += fn(t) * (m @ y)
        return -1j * hy

    if duration == 0.0:
        states = np.tile(state.vector, (len(t_eval), 1))
        return EvolveResult(times=t_eval, states=states, norm_drift=0.0)

    r, a = rtol, atol
    for attempt in range(max_retries + 1):
        sol = solve_ivp(
            rhs,
            (0.0, duration),
            state.vector.astype(complex),
            method="DOP853",
            t_eval=t_eval,
            rtol=r,
            atol=a,
        )
        if sol.status != 0:
            raise StepUnderflow(f"integrator failed: {sol.message}")
        states = sol.y.T
        norms = np.linalg.norm(states, axis=1)
        drift = float(np.abs(norms - state.norm()).max())
        if drift <= norm_tol:
            return EvolveResult(times=sol.t, states=states, norm_drift=drift)
        r, a = r / 1e3, a / 1e3
    raise StepUnderflow(
        f"norm drift {drift:.3e} above tolerance {norm_tol:.3e} after retries"
    )
