"""Exit criteria, one test per criterion at its stated tolerance."""

import contextlib
import csv
import io
import itertools
import math
import time

import numpy as np

from horopack import cli, density, volume
from horopack.lorentz import build_regular_ideal_simplex, distance, distance_to_hyperplane


def _sigma_ratio(n):
    sigma = math.sqrt(2 * n / (n - 1))
    return (sigma ** (n - 1) + n * sigma ** (1 - n)) / (n + 1)


def _cold():
    volume._volume.cache_clear()
    volume._series_terms.cache_clear()


def _enumerate(n, k):
    f = [math.factorial(2 * i) // math.factorial(i) for i in range(k + 1)]
    return sum(
        math.prod(f[i] for i in parts)
        for parts in itertools.product(range(k + 1), repeat=n + 1)
        if sum(parts) == k
    )


def test_c01_plane_density(criterion):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(["density", "--dim", "2"])
    (row,) = csv.DictReader(io.StringIO(buf.getvalue()))
    out = cli.OutputSpec()
    timings = []
    for _ in range(20):
        start = time.perf_counter()
        with contextlib.redirect_stdout(io.StringIO()):
            cli.cmd_density(2, volume.DEFAULT_REL_TOL, volume.DEFAULT_MAX_TERMS, out)
        timings.append(time.perf_counter() - start)
    value = density.density_report(2).classical
    ok = code == 0 and row["classical"] == "0.954930" and abs(value - 3 / math.pi) <= 1e-10 and min(timings) < 1e-3
    criterion("1 d2 = 3/pi", ok, f"value={value!r} printed={row['classical']} time={min(timings) * 1e3:.3f} ms")
    assert ok


def test_c02_c03_four_space(criterion):
    _cold()
    start = time.perf_counter()
    classical = density.classical_density(4, vol_tol=1e-7)
    generalized = density.generalized_density(4, vol_tol=1e-7)
    elapsed = time.perf_counter() - start
    ok2 = abs(classical - 0.73046) <= 5e-5 and elapsed < 30
    ok3 = abs(generalized - 0.77038) <= 5e-5 and elapsed < 30
    criterion("2 classical d4 = 0.73046 +- 5e-5", ok2, f"value={classical:.7f} time={elapsed:.2f} s")
    criterion("3 generalized d4 = 0.77038 +- 5e-5", ok3, f"value={generalized:.7f}")
    assert ok2 and ok3


def test_c04_tetrahedron_oracle(criterion):
    _cold()
    start = time.perf_counter()
    series, state = volume.ideal_regular_simplex_volume(3)
    elapsed = time.perf_counter() - start
    oracle = volume.ideal_tetrahedron_volume_oracle()
    ok = abs(series - oracle) <= 1e-6 and abs(oracle - 1.0149416) <= 1e-7 and elapsed < 30
    criterion("4 n=3 series vs 3*Lambda(pi/3)", ok, f"series={series:.10f} oracle={oracle:.10f} time={elapsed:.2f} s")
    assert ok


def test_c05_ratio_identity(criterion):
    worst = max(
        abs(density.generalized_density(n) / density.classical_density(n) - _sigma_ratio(n)) for n in range(2, 9)
    )
    ok = worst <= 1e-10
    criterion("5 ratio identity n=2..8", ok, f"max deviation {worst:.2e}")
    assert ok


def test_c06_tie_structure(criterion):
    ratios = {n: density.generalized_density(n) / density.classical_density(n) for n in range(2, 9)}
    ok = all(abs(ratios[n] - 1) <= 1e-12 for n in (2, 3)) and all(ratios[n] > 1 + 1e-3 for n in range(4, 9))
    criterion("6 ties at n=2,3; ratio > 1+1e-3 for n=4..8", ok, ", ".join(f"{n}:{r:.6f}" for n, r in ratios.items()))
    assert ok


def test_c07_threshold_ordering(criterion):
    gaps = {n: density.geometric_constants(n).q - math.log(n) / (n - 1) for n in range(2, 21)}
    ok = all(abs(gaps[n]) <= 1e-12 for n in (2, 3)) and all(gaps[n] > 0 for n in range(4, 21))
    criterion("7 q_n vs log(n)/(n-1)", ok, f"gap n=2:{gaps[2]:.1e} n=3:{gaps[3]:.1e} min n>=4:{min(gaps[n] for n in range(4, 21)):.3e}")
    assert ok


def test_c08_coefficients(criterion):
    mismatches = [
        (n, k) for n in range(2, 7) for k in range(13) if volume.composition_coefficient(n, k) != _enumerate(n, k)
    ]
    spots = (_enumerate(3, 1), _enumerate(3, 2))
    ok = not mismatches and spots == (8, 72)
    criterion("8 A(n,k) exact, n<=6, k<=12", ok, f"mismatches={mismatches} A31,A32={spots}")
    assert ok


def test_c09_lemma_suite(criterion):
    problems = []
    for n in range(2, 9):
        t = math.log(n) / (n - 1)
        if abs(density.packing_volume(n, 0) - density.packing_volume(n, t)) > 1e-12:
            problems.append(f"endpoints n={n}")
        xs = np.linspace(0, density.geometric_constants(n).q, 100)
        vs = np.array([density.packing_volume(n, x) for x in xs])
        if not np.all(np.diff(vs, 2) > 0):
            problems.append(f"convexity n={n}")
        if abs(xs[np.argmin(vs)] - t / 2) > xs[1] - xs[0]:
            problems.append(f"minimum n={n}")
    ok = not problems
    criterion("9 packing-volume lemma n=2..8", ok, "; ".join(problems) or "endpoints, convexity, minimum ok")
    assert ok


def test_c10_geometry(criterion):
    worst = 0.0
    for n in range(2, 9):
        frame = build_regular_ideal_simplex(n)
        oc = distance(frame.center, frame.incenter)
        s = distance_to_hyperplane(frame.incenter, frame.edge_pole())
        worst = max(
            worst,
            abs(math.cosh(oc) - n / math.sqrt((n - 1) * (n + 1))),
            abs(math.sinh(s) - (n - 1) / math.sqrt((n + 1) * (n - 1))),
        )
    ok = worst <= 1e-10
    criterion("10 frame in-radius and edge distance n=2..8", ok, f"max deviation {worst:.2e}")
    assert ok
