"""Lorentz-group polarization optics with O(3,2) decoherence."""
from .jones import (
    AttenuationResult,
    NotUnimodularError,
    apply_jones,
    attenuator,
    compose,
    det2,
    jones_vector,
    phase_shifter,
    rotator,
    squeezer,
)
from .stokes import (
    MINKOWSKI,
    PolarFactors,
    coherency_from_jones,
    coherency_from_stokes,
    conjugate,
    is_physical,
    minkowski_norm,
    mueller_from_sl2c,
    polar_decompose,
    stokes_from_coherency,
    three_squeezes,
)
from .sphere import (
    SPHERE_TO_STOKES,
    BeamState,
    CanonicalForm,
    PureStateNotReducible,
    SphereGeometry,
    align_rotation,
    canonical_boost,
    canonicalize,
    density_matrix,
    sphere_geometry,
)
from .desitter import (
    O32_METRIC,
    chi_from_time,
    decohere_step,
    lift_first,
    lift_second,
    o32_norm,
    rho_of_chi,
    sigma_of_chi,
    tu_rotation,
)

__version__ = "0.1.0"
