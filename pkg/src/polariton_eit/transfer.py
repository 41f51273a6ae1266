"""Photon-number-state transfer efficiency through the coupled system.

An incoming n-quantum state of the bare light mode is expanded in the
polariton modes; the transmitted n-quantum component is the squared
overlap between the bare and joint-ground-dressed wavefunctions.  The
calculation runs in position representation: both the bare pair and the
normal-mode pair are Gaussian-times-Hermite wavefunctions, so the overlap
reduces to Gaussian moment sums that are evaluated exactly.

The mass of the underlying oscillators is a pure gauge parameter; every
efficiency is mass independent (tested), and mass defaults to one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import hermite as H

from .errors import IndexOutOfRange
from .hopfield import LightMediumParams

__all__ = [
    "OscillatorForm",
    "RotationData",
    "oscillator_form",
    "rotation_data",
    "transmission_efficiency",
    "f1_closed_form",
    "fig3_sweep",
]

# Highest excitation number served by default; Hermite expansion growth is
# factorial, and the validated range stops here.
DEFAULT_MAX_N = 6


@dataclass(frozen=True)
class OscillatorForm:
    """Quadratic form of the coupled pair in position variables.

    The potential is (A q1^2 + B q2^2 + 2 C' q1 q2) / 2 with the cross
    stiffness stored as ``cross = 2 C'`` so that the rotation formulas
    below take their simplest shape.
    """

    mass: float
    stiff_light: float  # m omega^2
    stiff_medium: float  # m omega0^2
    cross: float  # 4 G m sqrt(omega omega0)


def oscillator_form(params: LightMediumParams, mass: float = 1.0) -> OscillatorForm:
    if not (mass > 0.0 and math.isfinite(mass)):
        raise ValueError(f"mass must be positive, got {mass}")
    w, w0, g = params.omega, params.omega0, params.coupling
    return OscillatorForm(
        mass=mass,
        stiff_light=mass * w * w,
        stiff_medium=mass * w0 * w0,
        cross=4.0 * g * mass * math.sqrt(w * w0),
    )


def _split_angle(diag_gap: float, cross: float) -> tuple[float, float]:
    """Rotation angle and signed stiffness split for one 2x2 form.

    Returns (angle, split) with split carrying the sign of ``diag_gap`` so
    the first rotated stiffness stays continuously connected to the first
    diagonal entry as the cross term is switched off.
    """
    if diag_gap == 0.0:
        if cross == 0.0:
            return 0.0, 0.0
        return math.copysign(0.5 * math.pi, cross), abs(cross)
    angle = math.atan(cross / diag_gap)
    split = math.copysign(math.hypot(diag_gap, cross), diag_gap)
    return angle, split


@dataclass(frozen=True)
class RotationData:
    """Everything the overlap integral needs, in one pass.

    ``k1``/``k2`` are the normal-mode stiffnesses (k1 on the light-connected
    branch), ``a1, a2, b1, b2`` the Gaussian width parameters of the bare
    and normal-mode ground states, and ``w1, w2``/``beta`` describe the
    second rotation that diagonalizes the combined bare-plus-normal
    Gaussian weight.
    """

    alpha: float
    k1: float
    k2: float
    a1: float
    a2: float
    b1: float
    b2: float
    p: float
    q: float
    r: float
    beta: float
    w1: float
    w2: float


def rotation_data(params: LightMediumParams, mass: float = 1.0) -> RotationData:
    form = oscillator_form(params, mass)
    a_stiff, b_stiff, c = form.stiff_light, form.stiff_medium, form.cross
    m = form.mass
    alpha, split = _split_angle(b_stiff - a_stiff, c)
    k1 = 0.5 * (a_stiff + b_stiff - split)
    k2 = 0.5 * (a_stiff + b_stiff + split)
    a1 = (m * a_stiff) ** 0.25
    a2 = (m * b_stiff) ** 0.25
    b1 = (m * k1) ** 0.25
    b2 = (m * k2) ** 0.25
    ch, sh = math.cos(0.5 * alpha), math.sin(0.5 * alpha)
    p = b1 * b1 * ch * ch + b2 * b2 * sh * sh + a1 * a1
    q = b1 * b1 * sh * sh + b2 * b2 * ch * ch + a2 * a2
    r = 2.0 * (b2 * b2 - b1 * b1) * ch * sh
    beta, split2 = _split_angle(q - p, r)
    w1 = 0.5 * (p + q - split2)
    w2 = 0.5 * (p + q + split2)
    return RotationData(
        alpha=alpha, k1=k1, k2=k2, a1=a1, a2=a2, b1=b1, b2=b2,
        p=p, q=q, r=r, beta=beta, w1=w1, w2=w2,
    )


def _gauss_moment(i: int, w: float) -> float:
    # integral of z^i exp(-w z^2 / 2) over the real line
    if i % 2 == 1:
        return 0.0
    return (0.5 * w) ** (-0.5 * (i + 1)) * math.gamma(0.5 * (i + 1))


def _hermite_power_coeffs(n: int) -> np.ndarray:
    """Power-basis coefficients of the physicists' Hermite polynomial."""
    e = np.zeros(n + 1)
    e[n] = 1.0
    return H.herm2poly(e)


def _bivariate_from_hermite(n: int, scale: float, c: float, s: float) -> np.ndarray:
    """H_n(scale*(c z1 + s z2)) as a coefficient table in z1, z2."""
    coeffs = _hermite_power_coeffs(n)
    table = np.zeros((n + 1, n + 1))
    for k in range(n + 1):
        hk = coeffs[k] * scale**k
        if hk == 0.0:
            continue
        for j in range(k + 1):
            table[j, k - j] += hk * math.comb(k, j) * c**j * s ** (k - j)
    return table


def _check_n(n: int, max_n: int) -> None:
    if not 0 <= n <= max_n:
        raise IndexOutOfRange(f"excitation number {n} outside 0..{max_n}")


def transmission_efficiency(
    n: int,
    params: LightMediumParams,
    mass: float = 1.0,
    max_n: int = DEFAULT_MAX_N,
) -> float:
    """Probability that an n-quantum light state passes undegraded.

    Parameters
    ----------
    n:
        Excitation number of the incident state, 0 <= n <= ``max_n``.
    params:
        Bare frequencies and coupling.
    mass:
        Oscillator mass; the result does not depend on it.

    Returns
    -------
    float
        Squared overlap between the bare n-quantum state over the medium
        ground state and its image among the dressed states.  Equals 1 at
        zero coupling and decreases with both coupling and detuning.
    """
    _check_n(n, max_n)
    if params.coupling == 0.0 and params.omega != params.omega0:
        # Decoupled non-degenerate modes pass any number state untouched;
        # skip the series so the limit is exact rather than 1 +- roundoff.
        return 1.0
    rot = rotation_data(params, mass)
    cb, sb = math.cos(0.5 * rot.beta), math.sin(0.5 * rot.beta)
    gamma = 0.5 * (rot.alpha - rot.beta)
    cg, sg = math.cos(gamma), math.sin(gamma)
    # x1 and the first normal coordinate, both in the frame where the
    # combined Gaussian weight is diagonal with widths w1, w2.
    ta = _bivariate_from_hermite(n, rot.a1, cb, sb)
    tb = _bivariate_from_hermite(n, rot.b1, cg, -sg)
    # polynomial product, then moment contraction
    prod = np.zeros((2 * n + 1, 2 * n + 1))
    for i in range(n + 1):
        for j in range(n + 1):
            if ta[i, j] == 0.0:
                continue
            prod[i : i + n + 1, j : j + n + 1] += ta[i, j] * tb
    m1 = np.array([_gauss_moment(i, rot.w1) for i in range(2 * n + 1)])
    m2 = np.array([_gauss_moment(j, rot.w2) for j in range(2 * n + 1)])
    integral = float(m1 @ prod @ m2)
    norm = math.sqrt(rot.a1 * rot.a2 * rot.b1 * rot.b2) / (
        math.pi * 2.0**n * math.factorial(n)
    )
    amplitude = norm * integral
    return amplitude * amplitude


def f1_closed_form(params: LightMediumParams, mass: float = 1.0) -> float:
    """Single-quantum efficiency in closed form (cross-check for n = 1)."""
    rot = rotation_data(params, mass)
    cb, sb = math.cos(0.5 * rot.beta), math.sin(0.5 * rot.beta)
    gamma = 0.5 * (rot.alpha - rot.beta)
    amp = 4.0 * math.sqrt(
        rot.a1**3 * rot.a2 * rot.b1**3 * rot.b2 / (rot.w1 * rot.w2)
    ) * (math.cos(gamma) * cb / rot.w1 - math.sin(gamma) * sb / rot.w2)
    return amp * amp


def fig3_sweep(
    ratios: list[float],
    coupling_fractions: list[float],
    n: int = 1,
    omega: float = 1.0,
    mass: float = 1.0,
) -> list[tuple[float, float, float]]:
    """Efficiency over a (detuning ratio, coupling) grid.

    Returns rows ``(omega0/omega, G, F_n)`` with G in absolute units,
    ordered ratio-major to match the shipped reference files.
    """
    rows = []
    for ratio in ratios:
        for frac in coupling_fractions:
            params = LightMediumParams(
                omega=omega, omega0=ratio * omega, coupling=frac * omega
            )
            rows.append(
                (ratio, frac * omega, transmission_efficiency(n, params, mass))
            )
    return rows
