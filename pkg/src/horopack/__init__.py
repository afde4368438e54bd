"""Horoball packings in ideal regular simplices of hyperbolic n-space."""

from .density import (
    ArrangementLabel,
    DensityReport,
    GeometricConstants,
    SweepSample,
    classical_density,
    classify_optimal_arrangement,
    density_report,
    density_sweep,
    generalized_density,
    geometric_constants,
    horocycle_arc_length,
    horoball_sector_volume,
    packing_volume,
    two_ball_exchange_volume,
    v0,
)
from .lorentz import (
    GeometryError,
    IdealSimplexFrame,
    LorentzVector,
    PointClass,
    bilinear_form,
    build_regular_ideal_simplex,
    classify_point,
    distance,
    distance_to_hyperplane,
    foot_of_perpendicular,
    polar_form,
)
from .volume import (
    ConvergenceError,
    MilnorSeriesParams,
    MilnorSeriesState,
    composition_coefficient,
    dihedral_angle,
    ideal_regular_simplex_volume,
    lobachevsky_oracle,
)

__version__ = "0.1.0"
