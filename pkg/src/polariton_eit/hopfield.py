"""Normal modes of a light mode quadratically coupled to a matter mode.

The model is two harmonic degrees of freedom, a light mode at ``omega`` and
a medium (matter) mode at ``omega0``, coupled through the position-position
term ``G (a + a^dag)(b + b^dag)``.  Because the counter-rotating pieces are
kept, the normal modes mix creation and annihilation operators and the
transformation is a Bogoliubov one rather than a plain rotation.

Each polariton annihilation operator is

    p = x1 a + y1 a^dag + x2 b + y2 b^dag

and the module works throughout with the sum/difference combinations
``v = x + y`` and ``u = x - y``, which obey the closed relations

    omega  * v1 = Omega * u1
    omega0 * v2 = Omega * u2
    u1 * v1 + u2 * v2 = 1        (canonical normalization)

All formulas are evaluated in a cancellation-safe arrangement so the
canonical residual stays at rounding level even for couplings many orders
of magnitude below the mode frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import StabilityViolation

__all__ = [
    "LightMediumParams",
    "PolaritonMode",
    "PolaritonBasis",
    "eigenfrequencies",
    "diagonalize",
    "canonical_residual",
]


@dataclass(frozen=True)
class LightMediumParams:
    """Bare frequencies and coupling of the two-mode model.

    Attributes
    ----------
    omega:
        Light mode frequency, > 0.
    omega0:
        Medium mode frequency, > 0.
    coupling:
        Position-position coupling strength G, >= 0.  A negative value is
        gauge equivalent (flip the sign of the medium quadrature), so only
        the nonnegative representative is accepted.
    """

    omega: float
    omega0: float
    coupling: float

    def __post_init__(self) -> None:
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ValueError(f"omega must be positive and finite, got {self.omega}")
        if not (self.omega0 > 0.0 and math.isfinite(self.omega0)):
            raise ValueError(f"omega0 must be positive and finite, got {self.omega0}")
        if not (self.coupling >= 0.0 and math.isfinite(self.coupling)):
            raise ValueError(f"coupling must be nonnegative, got {self.coupling}")
        if self.coupling >= self.stability_bound:
            raise StabilityViolation(
                f"coupling {self.coupling} >= sqrt(omega*omega0)/2 = "
                f"{self.stability_bound}; lower branch frequency would not be real"
            )

    @property
    def stability_bound(self) -> float:
        """Coupling at which the lower branch softens to zero frequency."""
        return 0.5 * math.sqrt(self.omega * self.omega0)


@dataclass(frozen=True)
class PolaritonMode:
    """One normal mode: its frequency and Bogoliubov coefficients.

    ``u1, v1`` weight the light mode, ``u2, v2`` the medium mode. The
    conventional x/y coefficients are exposed as derived properties.
    """

    frequency: float
    u1: float
    v1: float
    u2: float
    v2: float

    @property
    def x1(self) -> float:
        return 0.5 * (self.v1 + self.u1)

    @property
    def y1(self) -> float:
        return 0.5 * (self.v1 - self.u1)

    @property
    def x2(self) -> float:
        return 0.5 * (self.v2 + self.u2)

    @property
    def y2(self) -> float:
        return 0.5 * (self.v2 - self.u2)


def eigenfrequencies(params: LightMediumParams) -> tuple[float, float]:
    """Both polariton frequencies, lower branch first.

    The two squared frequencies are the roots of

        X^2 - (omega^2 + omega0^2) X + omega^2 omega0^2 - 4 G^2 omega omega0

    The upper root is computed directly; the lower one through the product
    of the roots, which avoids subtractive cancellation when the coupling
    is small or the detuning large.
    """
    w, w0, g = params.omega, params.omega0, params.coupling
    disc = math.hypot(w0 * w0 - w * w, 4.0 * math.sqrt(w * w0) * g)
    upper_sq = 0.5 * (w * w + w0 * w0 + disc)
    # root product: Omega1^2 * Omega2^2 = omega^2 omega0^2 - 4 G^2 omega omega0
    lower_sq = w * w0 * (w * w0 - 4.0 * g * g) / upper_sq
    return math.sqrt(lower_sq), math.sqrt(upper_sq)


def _mode_coefficients(w: float, w0: float, g: float, freq: float) -> PolaritonMode:
    """Coefficients of the mode at ``freq``, cancellation-safe."""
    dw = freq * freq - w * w
    d0 = freq * freq - w0 * w0
    # dw * d0 = 4 G^2 omega omega0 exactly on the spectrum; recompute the
    # smaller factor from the larger to dodge the subtractive rounding.
    prod = 4.0 * g * g * w * w0
    if abs(dw) < abs(d0):
        dw = prod / d0
    else:
        d0 = prod / dw
    v1 = math.sqrt(4.0 * g * g * freq * w0 / (dw * dw + prod))
    u1 = (w / freq) * v1
    v2 = dw / (2.0 * g * w0) * v1
    u2 = (w0 / freq) * v2
    # Fix the overall sign so the dominant quadrature weight is positive;
    # this keeps the G -> 0 limit continuous on both branches.
    if abs(v2) > abs(v1) and v2 < 0.0:
        u1, v1, u2, v2 = -u1, -v1, -u2, -v2
    return PolaritonMode(frequency=freq, u1=u1, v1=v1, u2=u2, v2=v2)


def _decoupled_mode(w: float, w0: float, freq: float) -> PolaritonMode:
    # At G = 0 each normal mode is exactly one bare mode.
    if abs(freq - w) <= abs(freq - w0):
        return PolaritonMode(frequency=freq, u1=1.0, v1=1.0, u2=0.0, v2=0.0)
    return PolaritonMode(frequency=freq, u1=0.0, v1=0.0, u2=1.0, v2=1.0)


@dataclass(frozen=True)
class PolaritonBasis:
    """The two polariton modes of one parameter set.

    ``probe_index`` names the mode that is continuously connected to the
    bare light mode as the coupling is switched off: the upper branch when
    ``omega0 < omega``, otherwise the lower branch (exact resonance ties
    resolve to the lower branch).  Probe-photon couplings downstream read
    the photon weights ``probe.u1`` and ``other.u1`` from here.
    """

    params: LightMediumParams
    lower: PolaritonMode
    upper: PolaritonMode

    @property
    def modes(self) -> tuple[PolaritonMode, PolaritonMode]:
        return (self.lower, self.upper)

    @property
    def probe_index(self) -> int:
        return 1 if self.params.omega0 < self.params.omega else 0

    @property
    def probe(self) -> PolaritonMode:
        return self.modes[self.probe_index]

    @property
    def other(self) -> PolaritonMode:
        return self.modes[1 - self.probe_index]

    @property
    def omega2_tilde(self) -> float:
        """Frequency of the non-probe mode relative to the probe mode."""
        return self.other.frequency - self.probe.frequency


def diagonalize(params: LightMediumParams) -> PolaritonBasis:
    """Bogoliubov transformation to the polariton basis.

    Parameters
    ----------
    params:
        Bare frequencies and coupling; stability is enforced at
        construction of ``params`` itself.

    Returns
    -------
    PolaritonBasis
        Both modes with canonical coefficients, lower branch first.
    """
    lower_f, upper_f = eigenfrequencies(params)
    w, w0, g = params.omega, params.omega0, params.coupling
    if g == 0.0:
        lower = _decoupled_mode(w, w0, lower_f)
        upper = _decoupled_mode(w, w0, upper_f)
        if lower.u1 == upper.u1:
            # Degenerate split at omega == omega0: make mode 1 the light mode.
            lower = PolaritonMode(lower_f, 1.0, 1.0, 0.0, 0.0)
            upper = PolaritonMode(upper_f, 0.0, 0.0, 1.0, 1.0)
        return PolaritonBasis(params=params, lower=lower, upper=upper)
    lower = _mode_coefficients(w, w0, g, lower_f)
    upper = _mode_coefficients(w, w0, g, upper_f)
    return PolaritonBasis(params=params, lower=lower, upper=upper)


def canonical_residual(basis: PolaritonBasis) -> float:
    """Largest violation of the canonical commutation relations.

    Four conditions: [c_k, c_k^dag] = 1 for each mode and the vanishing of
    the two cross-mode commutators [c_1, c_2^dag] and [c_1, c_2].
    Rounding-level output (< 1e-12) certifies a healthy basis; a corrupted
    coefficient shows up orders of magnitude above that.
    """
    m1, m2 = basis.lower, basis.upper
    residuals = [
        m1.u1 * m1.v1 + m1.u2 * m1.v2 - 1.0,
        m2.u1 * m2.v1 + m2.u2 * m2.v2 - 1.0,
        # [c1, c2^dag] and [c1, c2]
        0.5 * (m1.u1 * m2.v1 + m1.v1 * m2.u1 + m1.u2 * m2.v2 + m1.v2 * m2.u2),
        0.5 * (m1.u1 * m2.v1 - m1.v1 * m2.u1 + m1.u2 * m2.v2 - m1.v2 * m2.u2),
    ]
    return max(abs(r) for r in residuals)
