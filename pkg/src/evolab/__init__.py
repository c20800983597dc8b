"""evolab: evolute transformations of polygons in R^m and of closed space
curves, their linear structure, spectra, iteration dynamics, and spacial
hypocycloids."""

from .config import DEFAULT_TOL, RunConfig, Tolerances
from .errors import EvolabError
from .geometry import (
    PvBasis,
    SideVector,
    Signature,
    SphericalPolygon,
    VertexPolygon,
    dual,
    pv_basis,
    random_side_vector,
    random_spherical_polygon,
    realize,
    side_lengths,
    signature,
)
from .isometry import Isometry, Line, isometry_fixed_point, isometry_invariant_line
from .evolute import (
    EvoluteMatrix,
    circumcenter,
    evolute_matrix,
    inscribed_kernel,
    involute,
    p_evolute_vertices,
)
from .pairing import (
    PairingMatrix,
    SpectrumReport,
    pairing,
    pairing_matrix,
    second_evolute_matrix,
    skew_hamiltonian_residual,
    spectrum,
    support_numbers,
    symplectic_form,
)
from .iteration import IterationTrace, export_trace, iterate, normalize
from .curves import (
    FourierProfile,
    LatitudeIndicatrix,
    SampledCurve,
    build_curve,
    closure_project,
    curve_pairing,
    evolute_curve,
    evolute_profile,
    frenet_diagnostics,
    hypocycloid,
    second_evolute_homothety,
)

__version__ = "0.1.0"
