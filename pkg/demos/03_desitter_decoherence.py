# %% [markdown]
# # Decoherence as a rotation in O(3,2)
#
# With ``cos(chi) = exp(-lambda t)`` the loss of coherence is a rotation by
# ``chi`` in the plane of the two time-like coordinates (t, u).  The density
# matrix of the (t, z, x, y) world, ``rho(chi)``, loses coherence while the
# matrix of the (u, z, x, y) world, ``sigma(chi)``, gains it; their
# determinants always add to ``(AB)^2``.

# %%
import numpy as np

from lorentzpol import BeamState, chi_from_time, decohere_step, rho_of_chi, sigma_of_chi, tu_rotation
from lorentzpol.jones import det2

# %%
A, B, phi, lam = 1.5, 0.8, 0.6, 0.7
print(" t      chi     det rho   det sigma   sum")
for t in np.linspace(0, 5, 6):
    chi = chi_from_time(lam, t)
    dr = det2(rho_of_chi(A, B, phi, chi)).real
    ds = det2(sigma_of_chi(A, B, phi, chi)).real
    print(f"{t:4.1f}  {chi:6.4f}  {dr:8.5f}  {ds:9.5f}  {dr + ds:.5f}")
print("(AB)^2 =", (A * B) ** 2)

# %% [markdown]
# The five-vector ``(0, 0, 0, 0, m)`` rotated by ``chi``.

# %%
print(tu_rotation(np.pi / 3) @ np.array([0, 0, 0, 0, A * B]))

# %% [markdown]
# Advancing time through the O(3,2) rotation gives the same density matrix
# as writing down ``exp(-lambda t)`` directly.

# %%
state = BeamState(A, B, phi, lam, 0.5)
_, direct, _ = decohere_step(state, 1.2)
_, via_o32, _ = decohere_step(state, 1.2, path="o32")
print("max |direct - O(3,2)| =", np.abs(direct - via_o32).max())
