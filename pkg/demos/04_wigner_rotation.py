# %% [markdown]
# # A rotation from three squeezes
#
# Squeezes along different axes do not commute.  Three equal squeezes along
# axes 120 degrees apart compose to a matrix whose polar decomposition has a
# nontrivial unitary part: the Wigner rotation.

# %%
import numpy as np

from lorentzpol import polar_decompose, three_squeezes

# %%
for eta in (0.0, 0.25, 0.5, 1.0, 2.0):
    pf = polar_decompose(three_squeezes(eta, 2 * np.pi / 3))
    print(f"eta = {eta:4.2f}  wigner angle = {pf.wigner_angle:+.10f}")

# %% [markdown]
# Reversing the order of the squeezes reverses the rotation.

# %%
g = three_squeezes(1.0, 2 * np.pi / 3)
g_rev = three_squeezes(1.0, 2 * np.pi / 3, reverse=True)
print(polar_decompose(g).wigner_angle, polar_decompose(g_rev).wigner_angle)
