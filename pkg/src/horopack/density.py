"""Horoball packing densities for the ideal regular n-simplex.

Two symmetric configurations are compared. In the first, all ``n + 1``
horoballs are of the same type and touch at the edge midpoints; its density
is the classical Boroczky bound ``d_n(inf)``. In the second, the horoball
at ``En`` is inflated until it touches the opposite facet, and the other ``n``
shrink to stay tangent to it. The one-parameter family in between is
parametrised by the offset ``x`` of the tangency point along an edge, with
``0 <= x <= q_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import lorentz
from .volume import (
    DEFAULT_MAX_TERMS,
    DEFAULT_REL_TOL,
    ConvergenceError,
    MilnorSeriesParams,
    MilnorSeriesState,
    dihedral_angle,
    ideal_regular_simplex_volume,
)

TIE_TOL = 1e-9
DOMAIN_TOL = 1e-12


class ArrangementLabel(Enum):
    B0 = "B0"
    B1 = "B1"
    BOTH = "Both"


def _check_dim(n):
    if int(n) != n or n < 2:
        raise ValueError(f"dimension must be an integer >= 2, got {n!r}")
    return int(n)


def horocycle_arc_length(chord: float) -> float:
    """Length of the horocycle arc over a chord of hyperbolic length ``chord``."""
    if chord < 0:
        raise ValueError(f"chord length must be nonnegative, got {chord!r}")
    return 2.0 * math.sinh(chord / 2.0)


def horoball_sector_volume(area: float, n: int) -> float:
    """Volume swept by the axes from a horospherical region of the given area."""
    n = _check_dim(n)
    if area < 0:
        raise ValueError(f"area must be nonnegative, got {area!r}")
    return area / (n - 1)


def v0(n: int) -> float:
    """Volume of one horoball sector inside the simplex when all horoballs have the same type."""
    n = _check_dim(n)
    if n == 2:
        return 1.0
    prod = math.prod(((k - 1) / (k + 1)) ** ((n - k) / 2) for k in range(2, n))
    return n / ((n - 1) * 2 ** (n - 1)) * prod


def kellerhals_numerator(n: int) -> float:
    """Numerator of the Kellerhals density formula, written out independently of :func:`v0`."""
    n = _check_dim(n)
    if n == 2:
        return 3.0
    factors = [((k - 1) / (k + 1)) ** ((n - k) / 2) for k in range(2, n)]
    return (n + 1) / (n - 1) * n / 2 ** (n - 1) * math.prod(factors)


def tangency_threshold(n: int) -> float:
    """Offset ``log(n) / (n - 1)`` at which the inflated configuration recovers the volume at 0."""
    n = _check_dim(n)
    return math.log(n) / (n - 1)


def expansion_factor(n: int) -> float:
    """``sqrt(2n / (n - 1)) = exp(q_n)``."""
    n = _check_dim(n)
    return math.sqrt(2 * n / (n - 1))


@dataclass(frozen=True)
class GeometricConstants:
    dim: int
    rho: float
    s: float
    r: float
    q: float
    half_dihedral: float
    phi: float
    v0: float


def geometric_constants(n: int) -> GeometricConstants:
    """In-radius, edge distance, horocyclic offset and maximal tangency offset in dimension n."""
    n = _check_dim(n)
    rho = math.log(math.sqrt((n + 1) / (n - 1)))
    s = math.asinh((n - 1) / math.sqrt((n + 1) * (n - 1)))
    # angle of parallelism: cot(phi) = sinh(s)
    phi = math.atan2(1.0, math.sinh(s))
    r = math.log(math.sqrt(2 * n / (n + 1)))
    return GeometricConstants(
        dim=n,
        rho=rho,
        s=s,
        r=r,
        q=r + rho,
        half_dihedral=dihedral_angle(n) / 2,
        phi=phi,
        v0=v0(n),
    )


def two_ball_exchange_volume(v_at_zero: float, x: float, n: int) -> float:
    """Combined sector volume of two tangent horoballs after sliding the contact point by ``x``."""
    n = _check_dim(n)
    if not v_at_zero > 0:
        raise ValueError(f"v_at_zero must be positive, got {v_at_zero!r}")
    return v_at_zero / 2 * (math.exp((n - 1) * x) + math.exp(-(n - 1) * x))


def _packing_volume(n: int, x, base: float):
    e = np.exp((n - 1) * np.asarray(x, dtype=float))
    return base * (e + n / e)


def packing_volume(n: int, x: float) -> float:
    """Horoball volume inside the simplex with the ``En`` ball inflated by offset ``x``.

    Valid on ``[0, q_n]``; beyond ``q_n`` the inflated ball crosses the opposite
    facet and the arrangement is no longer a packing of the simplex.
    """
    n = _check_dim(n)
    q = geometric_constants(n).q
    if not -DOMAIN_TOL <= x <= q + DOMAIN_TOL:
        raise ValueError(f"offset {x!r} outside [0, q_n] = [0, {q!r}]")
    return float(_packing_volume(n, x, v0(n)))


def _volume(n: int, vol_tol: float, max_terms: int) -> tuple[float, MilnorSeriesState]:
    vol, state = ideal_regular_simplex_volume(MilnorSeriesParams(n, vol_tol, max_terms))
    if not state.converged:
        raise ConvergenceError(
            f"volume series for n={n} not converged after {state.terms_used} terms "
            f"(uncertainty {state.uncertainty:.3g})",
            state,
        )
    return vol, state


def classical_density(n: int, vol_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Simplicial density of ``n + 1`` mutually tangent horoballs of the same type."""
    n = _check_dim(n)
    if n == 2:
        return 3 / math.pi
    vol, _ = _volume(n, vol_tol, max_terms)
    return (n + 1) * v0(n) / vol


def generalized_density(n: int, vol_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> float:
    """Density of the arrangement with one maximally inflated horoball.

    This is the optimal generalized simplicial density in every dimension; for
    n = 2 and 3 it coincides with the classical value.
    """
    n = _check_dim(n)
    if n == 2:
        return 3 / math.pi
    vol, _ = _volume(n, vol_tol, max_terms)
    sigma = expansion_factor(n)
    inflated = v0(n) * (sigma ** (n - 1) + n * sigma ** (1 - n))
    # the family is convex in the offset, so the optimum is the larger endpoint;
    # at the n = 3 tie the two agree up to rounding
    return max(inflated, (n + 1) * v0(n)) / vol


def density_ratio(n: int) -> float:
    """Generalized over classical density; the simplex volume cancels."""
    n = _check_dim(n)
    sigma = expansion_factor(n)
    return (sigma ** (n - 1) + n * sigma ** (1 - n)) / (n + 1)


def classify_optimal_arrangement(n: int, tol: float = TIE_TOL) -> ArrangementLabel:
    n = _check_dim(n)
    gap = geometric_constants(n).q - tangency_threshold(n)
    if abs(gap) <= tol:
        return ArrangementLabel.BOTH
    return ArrangementLabel.B1 if gap > 0 else ArrangementLabel.B0


@dataclass(frozen=True)
class SweepSample:
    x: float
    volume: float
    delta: float


def density_sweep(
    n: int, samples: int, vol_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS
) -> list[SweepSample]:
    """Horoball volume and density on an even grid of offsets covering ``[0, q_n]``."""
    n = _check_dim(n)
    if int(samples) != samples or samples < 2:
        raise ValueError(f"samples must be an integer >= 2, got {samples!r}")
    vol = math.pi if n == 2 else _volume(n, vol_tol, max_terms)[0]
    xs = np.linspace(0.0, geometric_constants(n).q, int(samples))
    vs = _packing_volume(n, xs, v0(n))
    return [SweepSample(float(x), float(v), float(v / vol)) for x, v in zip(xs, vs)]


@dataclass(frozen=True)
class DensityReport:
    dim: int
    simplex_volume: float
    volume_uncertainty: float
    terms_used: int
    v0: float
    q: float
    threshold: float
    classical: float
    generalized: float
    optimal: ArrangementLabel
    ratio: float

    @property
    def classical_uncertainty(self) -> float:
        return self.classical * self.volume_uncertainty / self.simplex_volume

    @property
    def generalized_uncertainty(self) -> float:
        return self.generalized * self.volume_uncertainty / self.simplex_volume


def density_report(n: int, vol_tol: float = DEFAULT_REL_TOL, max_terms: int = DEFAULT_MAX_TERMS) -> DensityReport:
    """Both densities, the optimal arrangement and the simplex volume they rest on."""
    n = _check_dim(n)
    vol, state = (math.pi, None) if n == 2 else _volume(n, vol_tol, max_terms)
    consts = geometric_constants(n)
    classical = classical_density(n, vol_tol, max_terms)
    generalized = generalized_density(n, vol_tol, max_terms)
    return DensityReport(
        dim=n,
        simplex_volume=vol,
        volume_uncertainty=state.uncertainty if state else 0.0,
        terms_used=state.terms_used if state else 0,
        v0=consts.v0,
        q=consts.q,
        threshold=tangency_threshold(n),
        classical=classical,
        generalized=generalized,
        optimal=classify_optimal_arrangement(n),
        ratio=generalized / classical,
    )


def frame_constants(n: int) -> tuple[float, float]:
    """In-radius and edge distance measured on the constructed Lorentz frame."""
    frame = lorentz.build_regular_ideal_simplex(n)
    rho = lorentz.distance(frame.center, frame.incenter)
    s = lorentz.distance_to_hyperplane(frame.incenter, frame.edge_pole())
    return rho, s
