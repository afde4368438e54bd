"""End-to-end self checks run by ``horopack verify``."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import density, volume


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def enumerate_composition_sum(n: int, k: int) -> int:
    """``A(n, k)`` by walking every composition of ``k`` into ``n + 1`` parts."""
    f = [math.factorial(2 * i) // math.factorial(i) for i in range(k + 1)]
    total = 0
    for head in itertools.product(range(k + 1), repeat=n):
        rest = k - sum(head)
        if rest >= 0:
            total += math.prod(f[i] for i in head) * f[rest]
    return total


def check_coefficients(max_n: int = 6, max_k: int = 12) -> CheckResult:
    bad = [
        (n, k)
        for n in range(2, max_n + 1)
        for k in range(max_k + 1)
        if volume.composition_coefficient(n, k) != enumerate_composition_sum(n, k)
    ]
    return CheckResult(
        "composition_coefficients",
        not bad,
        f"n<={max_n}, k<={max_k}" + (f"; mismatches at {bad[:3]}" if bad else "; exact agreement"),
    )


def check_tetrahedron_oracle(tol: float = 1e-6) -> CheckResult:
    series, _ = volume.ideal_regular_simplex_volume(3)
    oracle = volume.ideal_tetrahedron_volume_oracle()
    err = abs(series - oracle)
    return CheckResult("tetrahedron_volume_oracle", err <= tol, f"series={series:.12f} oracle={oracle:.12f} err={err:.2e}")


def check_ratio_identity(dims=range(2, 9), tol: float = 1e-10) -> CheckResult:
    worst = 0.0
    for n in dims:
        vol = math.pi if n == 2 else volume.ideal_regular_simplex_volume(n)[0]
        classical = density.kellerhals_numerator(n) / vol
        ratio = density.generalized_density(n) / classical
        worst = max(worst, abs(ratio - density.density_ratio(n)))
    return CheckResult("ratio_identity", worst <= tol, f"n={dims.start}..{dims.stop - 1} max deviation {worst:.2e}")


def check_threshold_ordering(dims=range(2, 21), tie_tol: float = 1e-12) -> CheckResult:
    problems = []
    for n in dims:
        gap = density.geometric_constants(n).q - density.tangency_threshold(n)
        if n <= 3 and abs(gap) > tie_tol:
            problems.append(f"n={n} no tie ({gap:.2e})")
        if n >= 4 and not gap > 0:
            problems.append(f"n={n} gap {gap:.2e}")
    return CheckResult("threshold_ordering", not problems, "; ".join(problems) or f"n={dims.start}..{dims.stop - 1} ok")


def check_frame_geometry(dims=range(2, 9), tol: float = 1e-10) -> CheckResult:
    worst = 0.0
    for n in dims:
        consts = density.geometric_constants(n)
        rho, s = density.frame_constants(n)
        worst = max(
            worst,
            abs(rho - consts.rho),
            abs(s - consts.s),
            abs(math.cosh(rho) - n / math.sqrt((n - 1) * (n + 1))),
            abs(math.sinh(s) - (n - 1) / math.sqrt((n + 1) * (n - 1))),
        )
    return CheckResult("frame_geometry", worst <= tol, f"in-radius and edge distance, max deviation {worst:.2e}")


def check_packing_volume(dims=range(2, 9), grid: int = 100) -> CheckResult:
    problems = []
    for n in dims:
        q = density.geometric_constants(n).q
        t = density.tangency_threshold(n)
        ends = abs(density.packing_volume(n, 0.0) - density.packing_volume(n, min(t, q)))
        if ends > 1e-12:
            problems.append(f"n={n} endpoint mismatch {ends:.1e}")
        xs = np.linspace(0.0, q, grid)
        vs = np.array([density.packing_volume(n, x) for x in xs])
        if not np.all(np.diff(vs, 2) > 0):
            problems.append(f"n={n} not convex")
        if abs(xs[np.argmin(vs)] - t / 2) > xs[1]:
            problems.append(f"n={n} minimum misplaced")
    return CheckResult("packing_volume_lemma", not problems, "; ".join(problems) or f"n={dims.start}..{dims.stop - 1} ok")


def check_kellerhals_agreement(dims=range(2, 9), tol: float = 1e-12) -> CheckResult:
    worst = max(abs((n + 1) * density.v0(n) - density.kellerhals_numerator(n)) for n in dims)
    return CheckResult("kellerhals_numerator", worst <= tol, f"(n+1)*V0 vs closed product, max deviation {worst:.2e}")


ALL_CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_coefficients,
    check_tetrahedron_oracle,
    check_ratio_identity,
    check_threshold_ordering,
    check_frame_geometry,
    check_packing_volume,
    check_kellerhals_agreement,
)


def run_checks() -> list[CheckResult]:
    results = []
    for check in ALL_CHECKS:
        try:
            results.append(check())
        except Exception as exc:  # a crashing check is a failed check
            results.append(CheckResult(check.__name__.removeprefix("check_"), False, f"error: {exc}"))
    return results
