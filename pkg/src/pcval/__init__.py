"""Valuations on K(X) attached to pseudo-convergent sequences in K = k(t^Q)."""
from .breadth import Breadth, GroupValue, parse_breadth
from .expr import ParseError, parse_elem, parse_poly, parse_rfun
from .ground_field import (
    GF,
    INF,
    QQ,
    FieldElem,
    Poly,
    RationalFunction,
    backend_from_name,
    elem,
    rf_eval,
    rfun,
    taylor_shift,
    val,
)
from .newton import DistanceMultiset, newton_polygon, root_distances, root_valuations
from .pcv import (
    CauchySeries,
    CauchyToK,
    Dyadic,
    Linear,
    PartialSum,
    PreconditionError,
    QuadIrr,
    SingleTerm,
    classify_type,
    equivalent,
    fixture,
    load_seq,
)
from .topology import (
    convergence_scan,
    enumerate_increasing,
    intR_consistency,
    omega_membership,
    residue_separator,
    separator,
)
from .valuations import (
    annulus_law,
    degdom,
    member,
    monomial_val,
    rank_report,
    stable_annulus,
    torsion_witness,
    v_E,
    value_profile,
    w_E,
)

__version__ = "0.1.0"
