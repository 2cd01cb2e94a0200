# %% [markdown]
# # From Jones operators to Lorentz matrices
#
# Rotators, phase shifters and squeezers are 2x2 unimodular matrices.
# Acting on coherency matrices by ``C -> G C G^dagger`` they induce real 4x4
# matrices on the Stokes parameters, and those matrices are Lorentz
# transformations of (S0, S1, S2, S3).

# %%
import numpy as np

from lorentzpol import (
    compose,
    minkowski_norm,
    mueller_from_sl2c,
    phase_shifter,
    rotator,
    squeezer,
)

np.set_printoptions(precision=4, suppress=True)

# %% [markdown]
# The three generators and their 4x4 images.

# %%
for name, g in [("rotator(0.5)", rotator(0.5)),
                ("phase_shifter(0.5)", phase_shifter(0.5)),
                ("squeezer(0.5)", squeezer(0.5))]:
    print(name)
    print(mueller_from_sl2c(g), "\n")

# %% [markdown]
# A pipeline: rotate, then squeeze, then shift phase.  ``compose`` takes
# elements in the order light meets them.

# %%
g = compose([rotator(0.3), squeezer(0.8), phase_shifter(1.2)])
m = mueller_from_sl2c(g)
s = np.array([2.0, 0.5, -0.3, 1.1])
print("Stokes in :", s, " norm", minkowski_norm(s))
print("Stokes out:", m @ s, " norm", minkowski_norm(m @ s))

# %% [markdown]
# The phase shifter commutes with the squeezer; the rotator does not.

# %%
p, sq, r = phase_shifter(1.0), squeezer(1.0), rotator(1.0)
print("|[P, S]| =", np.abs(p @ sq - sq @ p).max())
print("|[R, S]| =", np.abs(r @ sq - sq @ r).max())
