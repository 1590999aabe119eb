"""Orbit-type stratification of surface-group representation varieties.

Points are tuples of holonomies ``(x1, y1, ..., xl, yl)`` in a compact
matrix group whose commutator product equals a fixed central element.
The package solves for such points, computes their twisted cohomology,
classifies them by centralizer, and probes the quadratic local model.
"""

from . import tolerances
from .errors import (
    BranchCut,
    DegenerateForm,
    InvalidData,
    NoConvergence,
    RankAmbiguity,
    SingularProjection,
    UnsupportedGroup,
    YMStrataError,
)
from .liegroup import (
    O2,
    O3,
    SO3,
    SU2,
    U2,
    GroupSpec,
    InnerProduct,
    OrbitTypeLabel,
    adjoint_operator,
    centralizer,
    exp,
    group_from_name,
    log,
    project_to_group,
    torus,
)
from .localmodel import cone_consistency, cup_pair, moment, quadratic_moment, symplectic_form
from .strata import census, classify_point, stabilizer
from .surface import BundleData, Representation, cohomology, differentials, presentation, residual
from .variety import (
    SolverConfig,
    lift_so3_su2,
    project_su2_so3,
    quotient_by_central_torus,
    solve,
    tangent_perturb,
)

__version__ = "0.1.0"

__all__ = [
    "BranchCut", "DegenerateForm", "InvalidData", "NoConvergence", "RankAmbiguity",
    "SingularProjection", "UnsupportedGroup", "YMStrataError",
    "O2", "O3", "SO3", "SU2", "U2", "GroupSpec", "InnerProduct", "OrbitTypeLabel",
    "adjoint_operator", "centralizer", "exp", "group_from_name", "log", "project_to_group", "torus",
    "cone_consistency", "cup_pair", "moment", "quadratic_moment", "symplectic_form",
    "census", "classify_point", "stabilizer",
    "BundleData", "Representation", "cohomology", "differentials", "presentation", "residual",
    "SolverConfig", "lift_so3_su2", "project_su2_so3", "quotient_by_central_torus", "solve",
    "tangent_perturb", "tolerances", "__version__",
]
