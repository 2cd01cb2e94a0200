"""O(3,2) five-space: two Lorentzian subspaces sharing (z, x, y).

Five-vectors are ordered ``(t, z, x, y, u)`` with metric
``diag(+1, -1, -1, -1, +1)``.  A rotation by ``chi`` in the (t, u) plane
moves invariant length between the ``(t, z, x, y)`` subspace and the
``(u, z, x, y)`` subspace; with ``cos(chi) = exp(-lambda t)`` this carries a
two-beam state from full coherence (``chi = 0``) toward full decoherence
(``chi -> pi/2``).
"""
import numpy as np

from .jones import det2
from .sphere import (
    BeamState,
    canonical_boost,
    canonical_element,
    density_matrix,
    geometry_from_components,
    sphere_geometry,
    SPHERE_TO_STOKES,
    uncanonicalize,
)
from .stokes import coherency_from_stokes, mueller_from_sl2c

O32_METRIC = np.diag([1.0, -1.0, -1.0, -1.0, 1.0])
HALF_PI = np.pi / 2

# indices of the two Minkowskian subspaces inside (t, z, x, y, u)
_FIRST = [0, 1, 2, 3]
_SECOND = [4, 1, 2, 3]


def check_chi(chi):
    """Validate a decoherence angle; must lie in [0, pi/2]."""
    chi = float(chi)
    if not np.isfinite(chi) or chi < 0.0 or chi > HALF_PI:
        raise ValueError(f"decoherence angle must lie in [0, pi/2], got {chi!r}")
    return chi


def tu_rotation(chi):
    """5x5 rotation in the (t, u) plane.

    ``t' = t cos(chi) + u sin(chi)``, ``u' = -t sin(chi) + u cos(chi)``.
    Sends ``(0, 0, 0, 0, m)`` to ``(m sin(chi), 0, 0, 0, m cos(chi))``.
    """
    chi = check_chi(chi)
    c, s = np.cos(chi), np.sin(chi)
    m = np.eye(5)
    m[0, 0], m[0, 4] = c, s
    m[4, 0], m[4, 4] = -s, c
    return m


def o32_norm(v):
    """``t^2 + u^2 - z^2 - x^2 - y^2`` along the last axis."""
    v = np.asarray(v, dtype=float)
    return v[..., 0] ** 2 + v[..., 4] ** 2 - v[..., 1] ** 2 - v[..., 2] ** 2 - v[..., 3] ** 2


def o32_defect(m):
    m = np.asarray(m, dtype=float)
    return float(np.max(np.abs(m.T @ O32_METRIC @ m - O32_METRIC)))


def _lift(m4, idx):
    m4 = np.asarray(m4, dtype=float)
    if m4.shape != (4, 4):
        raise ValueError(f"expected a 4x4 Lorentz matrix, got shape {m4.shape}")
    out = np.eye(5)
    out[np.ix_(idx, idx)] = m4
    return out


def lift_first(m4):
    """Embed a Lorentz matrix acting on (t, z, x, y); u is left alone."""
    return _lift(m4, _FIRST)


def lift_second(m4):
    """Embed a Lorentz matrix acting on (u, z, x, y); t is left alone."""
    return _lift(m4, _SECOND)


def chi_from_time(lambda_rate, time):
    """Decoherence angle with ``cos(chi) = exp(-lambda t)``, in [0, pi/2).

    Evaluated as ``atan2(sqrt(1 - exp(-2 lambda t)), exp(-lambda t))`` so
    small ``lambda t`` keeps full relative precision.
    """
    if not (np.isfinite(lambda_rate) and np.isfinite(time)):
        raise ValueError("lambda_rate and time must be finite")
    if lambda_rate < 0 or time < 0:
        raise ValueError("lambda_rate and time must be >= 0")
    x = lambda_rate * time
    return float(np.arctan2(np.sqrt(-np.expm1(-2 * x)), np.exp(-x)))


def _pair(a, b, phase, weight):
    if a < 0 or b < 0:
        raise ValueError("amplitudes must be >= 0")
    off = a * b * weight * np.exp(-1j * phase)
    return np.array([[a * a, off], [np.conj(off), b * b]], dtype=complex)


def rho_of_chi(a, b, phase, chi):
    """Density matrix seen in the (t, z, x, y) subspace: coherence ``cos(chi)``."""
    return _pair(a, b, phase, np.cos(check_chi(chi)))


def sigma_of_chi(a, b, phase, chi):
    """Density matrix of the (u, z, x, y) subspace: coherence ``sin(chi)``.

    Gains exactly the coherence that :func:`rho_of_chi` loses, so the two
    determinants always add to ``(AB)^2``.
    """
    return _pair(a, b, phase, np.sin(check_chi(chi)))


def embed_canonical(value, m, chi, tol=1e-9):
    """Five-vector ``(value, 0, 0, 0, m cos(chi))`` for a canonical state.

    ``value`` must equal ``m sin(chi)`` (the identification of the canonical
    one-number form with the t-component of a rotated ``(0,0,0,0,m)``).
    """
    expected = m * np.sin(chi)
    if abs(value - expected) > tol * max(1.0, abs(m)):
        raise ValueError(
            f"canonical value {value!r} does not match m sin(chi) = {expected!r}"
        )
    return np.array([value, 0.0, 0.0, 0.0, m * np.cos(chi)])


def _rho_via_o32(state: BeamState, dt):
    a, b, phi = state.amp_a, state.amp_b, state.phase
    m = a * b
    geom = sphere_geometry(state)
    form = canonical_boost(geom)  # raises for pure states
    chi0 = chi_from_time(state.lambda_rate, state.time)
    chi1 = chi_from_time(state.lambda_rate, state.time + dt)

    five = tu_rotation(chi1 - chi0) @ embed_canonical(form.value, m, chi0)
    value, u = five[0], five[4]

    # the u-component carries the surviving coherence m cos(chi); rebuild the
    # Lorentz frame of the new state from it and undo the canonical reduction
    coh = u / m
    new_geom = geometry_from_components(
        geom.outer_s, geom.rz, m * coh * np.cos(phi), m * coh * np.sin(phi)
    )
    new_form = canonical_boost(new_geom)
    back = mueller_from_sl2c(canonical_element(new_geom, new_form.boost_eta))
    sphere_vec = uncanonicalize(value, back)
    return coherency_from_stokes(SPHERE_TO_STOKES * sphere_vec)


def decohere_step(state: BeamState, dt, path="direct"):
    """Advance a beam state by ``dt``.

    Parameters
    ----------
    state : BeamState
    dt : float
        Time increment, ``>= 0``.
    path : {"direct", "o32"}
        ``"direct"`` builds the new density matrix from ``exp(-lambda t)``.
        ``"o32"`` canonicalizes the current state, embeds it in the five-space
        with ``m = AB``, rotates by the change in ``chi``, and maps back.  The
        O(3,2) path is undefined for pure states.

    Returns
    -------
    new_state : BeamState
    rho : numpy.ndarray
        Density matrix of ``new_state``.
    sigma : numpy.ndarray
        Complementary matrix of the (u, z, x, y) subspace at the new ``chi``.

    Raises
    ------
    PureStateNotReducible
        ``path="o32"`` on a pure state.
    """
    if not np.isfinite(dt) or dt < 0:
        raise ValueError(f"dt must be finite and >= 0, got {dt!r}")
    new = state.at(state.time + dt)
    if path == "direct":
        rho = density_matrix(new)
    elif path == "o32":
        rho = _rho_via_o32(state, dt)
    else:
        raise ValueError(f"unknown path {path!r}")
    chi = chi_from_time(new.lambda_rate, new.time)
    return new, rho, sigma_of_chi(new.amp_a, new.amp_b, new.phase, chi)


def complementary_dets(a, b, phase, chi):
    """``(det rho(chi), det sigma(chi))``."""
    return (
        float(det2(rho_of_chi(a, b, phase, chi)).real),
        float(det2(sigma_of_chi(a, b, phase, chi)).real),
    )
