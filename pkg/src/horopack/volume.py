"""Volume of the ideal regular n-simplex from Milnor's series.

The series

    Vol = sqrt(n) * sum_k  beta^(k) / (n + 2k)!  *  A(n, k),   beta = (n + 1) / 2,

uses the rising factorial ``beta^(k)`` and the composition sums

    A(n, k) = sum over i_0 + ... + i_n = k of  prod (2 i_j)! / i_j!.

Terms decay only like ``k ** -((n + 1) / 2)``, so the remainder after K terms is
far from negligible. It is estimated by fitting the last terms to an
asymptotic expansion ``k**-p * (c0 + c1/k + ...)`` and summing that expansion
exactly with Hurwitz zeta values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli, zeta

DEFAULT_REL_TOL = 1e-7
DEFAULT_MAX_TERMS = 20000
FIRST_BLOCK = 256
FIT_ORDER = 5
MAX_SUPPORTED_DIM = 8
WEIGHT_FLOOR = 1e-30


class ConvergenceError(ArithmeticError):
    """The volume series did not reach the requested tolerance."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


@dataclass(frozen=True)
class MilnorSeriesParams:
    dim: int
    rel_tol: float = DEFAULT_REL_TOL
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.dim!r}")
        if not 0 < self.rel_tol < 1:
            raise ValueError(f"rel_tol must lie in (0, 1), got {self.rel_tol!r}")
        if int(self.max_terms) != self.max_terms or self.max_terms < 1:
            raise ValueError(f"max_terms must be a positive integer, got {self.max_terms!r}")

    @property
    def beta(self) -> Fraction:
        return Fraction(self.dim + 1, 2)


@dataclass(frozen=True, eq=False)
class MilnorSeriesState:
    """Outcome of a truncated summation.

    ``terms`` holds the summed terms ``t_0 .. t_K``; ``tail_estimate`` is the
    extrapolated remainder beyond them and ``uncertainty`` bounds the error of
    ``partial_sum + tail_estimate``.
    """

    terms: np.ndarray
    partial_sum: float
    tail_estimate: float
    uncertainty: float
    terms_used: int
    converged: bool

    @property
    def value(self) -> float:
        return self.partial_sum + self.tail_estimate


def _check_nk(n, k):
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    if int(k) != k or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")


def _central_sequence(kmax: int) -> list[int]:
    # (2i)!/i! = prod_{j=1..i} (4j - 2)
    f = [1]
    for i in range(1, kmax + 1):
        f.append(f[-1] * (4 * i - 2))
    return f


@lru_cache(maxsize=64)
def composition_coefficients(n: int, kmax: int) -> tuple[int, ...]:
    """Exact ``A(n, k)`` for ``k = 0 .. kmax``.

    Coefficients of ``F(t) ** (n + 1)`` with ``F(t) = sum (2i)!/i! t**i``, by
    repeated truncated convolution in exact integers.
    """
    _check_nk(n, kmax)
    f = _central_sequence(kmax)
    acc = f[:]
    for _ in range(n):
        acc = [sum(f[i] * acc[k - i] for i in range(k + 1)) for k in range(kmax + 1)]
    return tuple(acc)


def composition_coefficient(n: int, k: int) -> int:
    """Exact ``A(n, k)``."""
    _check_nk(n, k)
    return composition_coefficients(int(n), int(k))[k]


def exact_term(n: int, k: int) -> Fraction:
    """``beta^(k) / (n + 2k)! * A(n, k)`` as an exact rational (without the sqrt(n) factor)."""
    _check_nk(n, k)
    beta = Fraction(n + 1, 2)
    rising = Fraction(1)
    for j in range(k):
        rising *= beta + j
    return rising * composition_coefficient(n, k) / math.factorial(n + 2 * k)


def _normalized_powers(n: int, kmax: int) -> np.ndarray:
    """``[t^k] F(t)**(n+1) / f_k`` in floating point, ``f_k = (2k)!/k!``.

    With ``w(k, i) = f_i f_(k-i) / f_k`` every level of the convolution is a sum
    of positive terms, so no cancellation occurs. ``w`` is symmetric in ``i``,
    follows ``w(k, i+1) / w(k, i) = (2i + 1) / (2k - 2i - 1)`` and decays
    super-exponentially away from both ends, where it is cut at WEIGHT_FLOOR.
    """
    g = np.zeros((n + 1, kmax + 1))
    g[0] = 1.0
    g[1:, 0] = 1.0
    for k in range(1, kmax + 1):
        half = k // 2
        i = np.arange(half)
        w = np.cumprod(np.concatenate([[1.0], (2 * i + 1) / (2.0 * k - 2 * i - 1)]))
        keep = int(np.searchsorted(-w, -WEIGHT_FLOOR))
        # level m at index k needs level m - 1 at index k (the i = 0 term)
        if 2 * keep < k + 1:
            w = w[:keep]
            for m in range(1, n + 1):
                # i < keep pairs with index k - i; its mirror k - i pairs with index i
                g[m, k] = g[m - 1, k : k - keep : -1] @ w + g[m - 1, :keep] @ w
        else:
            full = np.concatenate([w, w[: k + 1 - w.size][::-1]])
            for m in range(1, n + 1):
                g[m, k] = g[m - 1, k::-1] @ full
    return g[n]


@lru_cache(maxsize=32)
def _series_terms(n: int, kmax: int) -> np.ndarray:
    k = np.arange(1, kmax + 1, dtype=float)
    beta = (n + 1) / 2
    # beta^(k) f_k / (n+2k)!  built up from consecutive ratios
    ratio = (beta + k - 1) * (4 * k - 2) / ((n + 2 * k - 1) * (n + 2 * k))
    scale = np.concatenate([[1.0], np.cumprod(ratio)]) / math.factorial(n)
    t = math.sqrt(n) * scale * _normalized_powers(n, kmax)
    t.setflags(write=False)
    return t


def milnor_terms(n: int, kmax: int) -> np.ndarray:
    """Series terms ``t_0 .. t_kmax`` (read-only array)."""
    _check_nk(n, kmax)
    if n < 3:
        raise ValueError("the series applies for n >= 3")
    return _series_terms(int(n), int(kmax))


def _tail_fit(terms: np.ndarray, p: float, cut: int, order: int) -> float:
    """Remainder after ``terms[cut]`` from a fit of ``terms[cut//2 : cut+1]``."""
    ks = np.arange(max(1, cut // 2), cut + 1)
    x = ks / cut
    basis = np.stack([x ** (-p - j) for j in range(order)], axis=1)
    coef, *_ = np.linalg.lstsq(basis, terms[ks], rcond=None)
    return float(sum(c * cut ** (p + j) * zeta(p + j, cut + 1) for j, c in enumerate(coef)))


def _estimate(terms: np.ndarray, n: int, rel_tol: float) -> MilnorSeriesState:
    cut = terms.size - 1
    p = (n + 1) / 2
    partial = float(math.fsum(terms))
    if cut < 16:
        # too few terms to fit; treat the leading power law as a full-size error
        tail = float(terms[-1] * cut ** p * zeta(p, cut + 1)) if cut else float("inf")
        return MilnorSeriesState(terms, partial, tail, tail, cut + 1, False)
    order = min(FIT_ORDER, max(2, cut // 16))
    tail = _tail_fit(terms, p, cut, order)
    alt_order = _tail_fit(terms, p, cut, order - 1)
    half = cut * 3 // 4
    alt_cut = _tail_fit(terms[: half + 1], p, half, order) - float(math.fsum(terms[half + 1 :]))
    roundoff = 4 * np.finfo(float).eps * (partial + tail) * math.log2(cut + 1)
    unc = abs(tail - alt_order) + abs(tail - alt_cut) + roundoff
    converged = unc <= rel_tol * (partial + tail)
    return MilnorSeriesState(terms, partial, tail, float(unc), cut + 1, bool(converged))


def ideal_regular_simplex_volume(params: MilnorSeriesParams | int) -> tuple[float, MilnorSeriesState]:
    """Volume of the ideal regular simplex and the summation state.

    For ``dim == 2`` the area of the ideal triangle, pi, is returned with no
    series terms. Otherwise the number of terms doubles from 256 until the
    uncertainty falls below ``rel_tol`` times the value or ``max_terms`` is
    reached; the state then reports ``converged = False``.
    """
    if not isinstance(params, MilnorSeriesParams):
        params = MilnorSeriesParams(params)
    if params.dim > MAX_SUPPORTED_DIM:
        warnings.warn(f"dimension {params.dim} > {MAX_SUPPORTED_DIM}: the volume series is slow here", RuntimeWarning)
    return _volume(params.dim, params.rel_tol, params.max_terms)


@lru_cache(maxsize=128)
def _volume(n: int, rel_tol: float, max_terms: int) -> tuple[float, MilnorSeriesState]:
    if n == 2:
        empty = np.empty(0)
        empty.setflags(write=False)
        return math.pi, MilnorSeriesState(empty, math.pi, 0.0, 0.0, 0, True)
    kmax = min(FIRST_BLOCK, max_terms - 1)
    while True:
        state = _estimate(milnor_terms(n, kmax), n, rel_tol)
        if state.converged or kmax + 1 >= max_terms:
            return state.value, state
        kmax = min(2 * kmax, max_terms - 1)


def dihedral_angle(n: int) -> float:
    """Dihedral angle ``arccos(1/(n-1))`` of the ideal regular n-simplex (0 for n = 2)."""
    if int(n) != n or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    return math.acos(1.0 / (n - 1))


def lobachevsky_oracle(theta: float) -> float:
    """Lobachevsky function ``sum_k sin(2k theta) / (2 k^2)`` on ``(0, pi/2]``.

    Evaluated through the Clausen expansion

        Cl2(x) = x - x log x + sum_m |B_2m| x**(2m+1) / (2m (2m+1) (2m)!),

    with ``Lambda(theta) = Cl2(2 theta) / 2``; the sum converges geometrically
    with ratio at most 1/4 on this interval.
    """
    if not 0 < theta <= math.pi / 2:
        raise ValueError(f"theta must lie in (0, pi/2], got {theta!r}")
    if theta == math.pi / 2:
        return 0.0
    x = 2 * theta
    b = bernoulli(80)
    total = x - x * math.log(x)
    for m in range(1, 40):
        step = abs(b[2 * m]) * x ** (2 * m + 1) / (2 * m * (2 * m + 1) * math.factorial(2 * m))
        total += step
        if step < 1e-17:
            break
    return total / 2


def ideal_tetrahedron_volume_oracle() -> float:
    """Regular ideal tetrahedron volume ``3 Lambda(pi/3)``, independent of the series."""
    return 3 * lobachevsky_oracle(math.pi / 3)
