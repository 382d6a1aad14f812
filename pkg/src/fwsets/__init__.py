"""fwsets: exact quadratic-attainment analysis on Motzkin sets.

The package decides, in rational arithmetic wherever the data is
polyhedral, whether quadratic programs over sets of the form
``compact + closed convex cone`` attain their infima, computes the
polyhedral domain of the associated cone value function, classifies sets
by their flat-asymptote behavior, and replays a gallery of classical
counterexamples as checked regression cases.
"""

from .affine import AffineManifold, AffineMap, subspace
from .asymptotes import (
    AffineImageSet,
    Epigraph1D,
    IntersectionSet,
    ProductSet,
    QuadSublevel,
    UnionSet,
    classify_fw_set,
    classify_qfw,
    distance_to_manifold,
    image_closed_1d,
    is_f_asymptote,
    projection_closed,
)
from .cone_qp import (
    ConeMinVerdict,
    ConeProgram,
    DomF,
    ZeroSetPiece,
    dom_f,
    is_bounded_below_on_cone,
    minimize_on_polyhedral_cone,
    minimize_over_hpolyhedron,
    value_function_eval,
    zero_set_pieces,
)
from .errors import (
    DimensionMismatchError,
    DocumentError,
    EmptySetError,
    FwsetsError,
    NotInDomainError,
    SizeCapError,
    UnsupportedKindError,
)
from .motzkin import (
    Attained,
    Ball,
    Classification,
    FinitePointSet,
    MotzkinSet,
    NotAttained,
    PolytopeK,
    SecondOrderCone,
    UnboundedBelow,
    Unknown,
    classify_fw,
    decompose,
    minimize_on_motzkin,
    recession_cone_of,
)
from .polyhedra import (
    HPolyhedron,
    PolyCone,
    VPolyhedron,
    dd_convert,
    intersect,
    lp_solve,
    minkowski_sum,
    polar_cone,
    project_fm,
    recession_cone,
)
from .quadratics import (
    Quadratic,
    compose_affine,
    invariant_directions,
    is_convex,
    restrict_to_affine,
)
from .setops import (
    affine_image,
    affine_preimage,
    intersect_fwm,
    intersect_subspace_motzkin,
    minimize_on_descriptor,
    order_cancellation_check,
    product,
    sum_with_subspace,
    union_set,
)

__all__ = [
    "AffineImageSet",
    "AffineManifold",
    "AffineMap",
    "Attained",
    "Ball",
    "Classification",
    "ConeMinVerdict",
    "ConeProgram",
    "DimensionMismatchError",
    "DocumentError",
    "DomF",
    "EmptySetError",
    "Epigraph1D",
    "FinitePointSet",
    "FwsetsError",
    "HPolyhedron",
    "IntersectionSet",
    "MotzkinSet",
    "NotAttained",
    "NotInDomainError",
    "PolyCone",
    "PolytopeK",
    "ProductSet",
    "QuadSublevel",
    "Quadratic",
    "SecondOrderCone",
    "SizeCapError",
    "UnboundedBelow",
    "UnionSet",
    "Unknown",
    "UnsupportedKindError",
    "VPolyhedron",
    "ZeroSetPiece",
    "affine_image",
    "affine_preimage",
    "classify_fw",
    "classify_fw_set",
    "classify_qfw",
    "compose_affine",
    "dd_convert",
    "decompose",
    "distance_to_manifold",
    "dom_f",
    "image_closed_1d",
    "intersect",
    "intersect_fwm",
    "intersect_subspace_motzkin",
    "invariant_directions",
    "is_bounded_below_on_cone",
    "is_convex",
    "is_f_asymptote",
    "lp_solve",
    "minimize_on_descriptor",
    "minimize_on_motzkin",
    "minimize_on_polyhedral_cone",
    "minimize_over_hpolyhedron",
    "minkowski_sum",
    "order_cancellation_check",
    "polar_cone",
    "product",
    "project_fm",
    "projection_closed",
    "recession_cone",
    "recession_cone_of",
    "restrict_to_affine",
    "subspace",
    "sum_with_subspace",
    "union_set",
    "value_function_eval",
    "zero_set_pieces",
]

__version__ = "0.1.0"
