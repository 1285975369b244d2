"""clusterkit: exact quiver mutation, cluster dynamics, triangulations, and
Y-system periodicity verification."""

from .exactalg import (
    Context,
    LaurentPoly,
    RationalFn,
    Semifield,
    TropicalElement,
    TropicalSemifield,
    FieldSemifield,
    TrivialSemifield,
    parse_poly,
    parse_ratfn,
    poly_gcd,
)
from .quiver import (
    Diagram,
    ExchangeMatrix,
    Quiver,
    diagram_of,
    mutation_class,
    square_product,
    tensor_product,
)
from .dynkin import DynkinDiagram, dynkin, recognize_dynkin
from .seed import (
    Seed,
    cluster_monomials,
    exchange_graph,
    is_finite_type,
    verify_laurent,
)
from .polygon import (
    AbstractTriangulation,
    PolygonTriangulation,
    all_triangulations,
    catalan,
    flip_graph,
    flip_is_mutation,
    plucker_check,
)
from .ysystem import (
    YSeed,
    bipartite_blocks,
    detect_period,
    restricted_y_pattern,
    square_product_blocks,
    variant,
    y_system_run,
)

__version__ = "0.1.0"
