"""Polariton branches and their photon content across the coupling range.

Sweeps the light-medium coupling from zero to just below the stability
bound at fixed 10 percent detuning.  The two branch frequencies repel as
the coupling grows while the lower branch softens toward zero; at the
same time the branches trade photon and medium character.  Saves
polariton_spectrum.png and prints a short table.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from polariton_eit.hopfield import LightMediumParams, diagonalize

OMEGA = 1.0
OMEGA0 = 0.9

bound = 0.5 * np.sqrt(OMEGA * OMEGA0)
couplings = np.linspace(0.0, 0.995 * bound, 120)

lower = np.empty_like(couplings)
upper = np.empty_like(couplings)
photon_lower = np.empty_like(couplings)
photon_upper = np.empty_like(couplings)
for k, g in enumerate(couplings):
    basis = diagonalize(LightMediumParams(omega=OMEGA, omega0=OMEGA0, coupling=g))
    lower[k] = basis.lower.frequency
    upper[k] = basis.upper.frequency
    # u1 is the annihilation-part photon coefficient; with the
    # counter-rotating v-parts the weights need not add up to one
    photon_lower[k] = basis.lower.u1 ** 2
    photon_upper[k] = basis.upper.u1 ** 2

print(f"detuned pair omega={OMEGA}, omega0={OMEGA0}, stability bound G<{bound:.4f}")
print("     G    Omega1    Omega2   photon(lower)  photon(upper)")
for k in range(0, len(couplings), 20):
    print(
        f"{couplings[k]:6.3f}  {lower[k]:8.5f}  {upper[k]:8.5f}"
        f"  {photon_lower[k]:13.4f}  {photon_upper[k]:13.4f}"
    )
print(f"{couplings[-1]:6.3f}  {lower[-1]:8.5f}  {upper[-1]:8.5f}"
      f"  {photon_lower[-1]:13.4f}  {photon_upper[-1]:13.4f}")
print(f"lower branch softened to {lower[-1]:.4f} at 99.5% of the bound")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.5, 4.0))
ax1.plot(couplings, upper, label="upper branch")
ax1.plot(couplings, lower, label="lower branch")
ax1.axhline(OMEGA, ls=":", c="gray", lw=0.8)
ax1.axhline(OMEGA0, ls=":", c="gray", lw=0.8)
ax1.set_xlabel("coupling G")
ax1.set_ylabel("branch frequency")
ax1.legend()
ax2.plot(couplings, photon_upper, label="upper branch")
ax2.plot(couplings, photon_lower, label="lower branch")
ax2.set_xlabel("coupling G")
ax2.set_ylabel("photon weight $u_1^2$")
ax2.legend()
fig.suptitle("Branch repulsion and light-matter character exchange")
fig.tight_layout()
fig.savefig("polariton_spectrum.png", dpi=150)
print("wrote polariton_spectrum.png")
