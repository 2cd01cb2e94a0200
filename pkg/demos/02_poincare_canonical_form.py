# %% [markdown]
# # Reducing the Poincare sphere to one number
#
# A decohering two-beam state has an outer radius ``s`` (fixed) and an inner
# radius ``r`` that shrinks as the off-diagonal coherence decays.  A rotation
# aligns the inner vector with S1, then a boost with ``tanh(eta) = r/s``
# removes it, leaving ``sqrt(s^2 - r^2) = AB sqrt(1 - exp(-2 lambda t))``.

# %%
import numpy as np

from lorentzpol import BeamState, PureStateNotReducible, canonicalize, sphere_geometry

np.set_printoptions(precision=6, suppress=True)

# %%
state = BeamState(amp_a=1.0, amp_b=1.0, phase=0.4, lambda_rate=1.0, time=np.log(2))
geom = sphere_geometry(state)
print(f"s = {geom.outer_s:.6f}, r = {geom.inner_r:.6f}, s^2 - r^2 = {geom.invariant:.6f}")

form, transform = canonicalize(state)
print("eta   =", form.boost_eta)
print("value =", form.value)
print("transform @ (s, rz, rx, ry) =", transform @ geom.four_vector())

# %% [markdown]
# The canonical value grows with time toward ``AB``.

# %%
for t in (0.1, 0.5, 1.0, 2.0, 5.0, 20.0):
    print(f"t = {t:5.1f}  value = {canonicalize(BeamState(2.0, 1.0, 0.0, 1.0, t))[0].value:.8f}")

# %% [markdown]
# At ``t = 0`` the state is pure (``r = s``) and no finite boost reaches the
# canonical form.

# %%
try:
    canonicalize(BeamState(1.0, 1.0, 0.0, 1.0, 0.0))
except PureStateNotReducible as e:
    print("refused:", e)
