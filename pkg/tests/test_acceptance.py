"""Acceptance gate: every criterion at its stated tolerance, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` (lines are printed even without
``-s``) or directly with ``python tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np
import pytest

from frr.checks import random_field, smooth_field
from frr.fields import ComplexField, FrftOrder, chirp, make_grid, rel_l2
from frr.fracops import (
    chirp_derivative,
    chirped_laplacian,
    fractional_riesz,
    frft_output_derivative,
    mixed_second_derivative,
    mixed_second_derivative_direct,
    remove_dc,
    riesz_conjugated,
    riesz_identity_residual,
    riesz_spatial_oracle,
)
from frr.frft import centered_dft, frft, frft_inverse, frft_quadrature
from frr.monogenic import block_image, detect_edges, directional_sweep, distance_to_lines, edge_precision

PI = math.pi
ANGLES = (PI / 6, PI / 4, PI / 3, 2 * PI / 3, 5 * PI / 6)


def c01_oracle_equivalence():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for trial in range(20):
        n = (32, 64, 128)[trial % 3]
        dims = 1 + trial % 2
        order = FrftOrder(tuple(rng.choice(ANGLES, size=dims)))
        f = random_field(make_grid(n, dims), rng)
        worst = max(worst, rel_l2(frft(f, order), frft_quadrature(f, order), f))
    elapsed = time.perf_counter() - start
    ok = worst < 1e-10 and elapsed < 30
    return ok, f"max rel err {worst:.2e} (< 1e-10), runtime {elapsed:.1f} s (< 30 s)"


def c02_inversion():
    rng = np.random.default_rng(102)
    worst = 0.0
    for dims, order in ((1, FrftOrder.of(PI / 3)), (2, FrftOrder.of(PI / 3, 3 * PI / 4)), (2, FrftOrder.of(PI / 6, 5 * PI / 6))):
        f = smooth_field(make_grid(256, dims), rng)
        worst = max(worst, rel_l2(frft_inverse(frft(f, order), order), f))
    return worst < 1e-6, f"max round-trip rel err {worst:.2e} (< 1e-6), N=256, 1D and 2D"


def c03_classical_reduction():
    rng = np.random.default_rng(103)
    worst = 0.0
    for dims in (1, 2):
        f = random_field(make_grid(256, dims), rng)
        out = frft(f, FrftOrder.of(*([PI / 2] * dims)))
        worst = max(worst, rel_l2(out.samples, centered_dft(f.samples)))
    return worst < 1e-10, f"rel err vs centered unitary DFT {worst:.2e} (< 1e-10), N=256"


def c04_gaussian_fixed_point():
    g = make_grid(256)
    f = ComplexField.from_function(g, lambda x: np.exp(-x**2 / 2))
    worst = 0.0
    for alpha in (PI / 6, PI / 3, 2 * PI / 3):
        out = frft(f, FrftOrder.of(alpha))
        worst = max(worst, rel_l2(out.samples, np.exp(-out.grid.positions() ** 2 / 2), f.samples))
    return worst < 1e-6, f"max rel err {worst:.2e} (< 1e-6)"


def c05_riesz_identity():
    rng = np.random.default_rng(105)
    worst = 0.0
    for _ in range(10):
        order = FrftOrder(tuple(rng.choice(ANGLES, size=2)))
        f = remove_dc(random_field(make_grid(64, 2), rng), order)
        worst = max(worst, riesz_identity_residual(f, order))
    return worst < 1e-8, f"max residual {worst:.2e} (< 1e-8), 10 trials"


def c06_conjugation_identity():
    rng = np.random.default_rng(106)
    worst = 0.0
    for _ in range(10):
        order = FrftOrder(tuple(rng.choice(ANGLES, size=2)))
        f = remove_dc(random_field(make_grid(64, 2), rng), order)
        for j in (1, 2):
            worst = max(worst, rel_l2(fractional_riesz(f, order, j), riesz_conjugated(f, order, j), f))
    return worst < 1e-8, f"max route difference {worst:.2e} (< 1e-8)"


def _derivative_errors(n, order):
    f = ComplexField.from_function(make_grid(n), lambda x: np.exp(-x**2 / 2))
    g = f.grid
    dx = g.spacing[0]
    h = (chirp(order, g) * f).samples
    fd = np.conj(chirp(order, g).samples[1:-1]) * (h[2:] - h[:-2]) / (2 * dx)
    e_in = np.linalg.norm(chirp_derivative(f, order, 1).samples[1:-1] - fd) * math.sqrt(dx)
    spectrum = frft(f, order)
    du = spectrum.grid.spacing[0]
    k = (chirp(order, spectrum.grid, -1) * spectrum).samples
    fd_out = (k[2:] - k[:-2]) / (2 * du)
    e_out = np.linalg.norm(frft_output_derivative(f, order, 1).samples[1:-1] - fd_out) * math.sqrt(du)
    return e_in, e_out, dx, du


def c07_derivative_convergence():
    order = FrftOrder.of(PI / 3)
    a, b = _derivative_errors(128, order), _derivative_errors(256, order)
    p_in = math.log(a[0] / b[0]) / math.log(a[2] / b[2])
    p_out = math.log(a[1] / b[1]) / math.log(a[3] / b[3])
    ok = p_in >= 1.9 and p_out >= 1.9
    return ok, f"observed order: chirped derivative {p_in:.3f}, transform-side derivative {p_out:.3f} (>= 1.9)"


def c08_mixed_and_apriori():
    rng = np.random.default_rng(108)
    worst_eq, worst_ratio = 0.0, 0.0
    for _ in range(5):
        order = FrftOrder(tuple(rng.choice(ANGLES, size=2)))
        f = remove_dc(random_field(make_grid(64, 2), rng), order)
        lap = chirped_laplacian(f, order).norm()
        for j, k in ((1, 1), (1, 2), (2, 1), (2, 2)):
            routed = mixed_second_derivative(f, order, j, k)
            worst_eq = max(worst_eq, rel_l2(routed, mixed_second_derivative_direct(f, order, j, k)))
            worst_ratio = max(worst_ratio, routed.norm() / lap)
    ok = worst_eq < 1e-10 and worst_ratio <= 1 + 1e-10
    return ok, f"symbol routes differ by {worst_eq:.2e} (< 1e-10), max L2 ratio {worst_ratio:.12f} (<= 1 + 1e-10)"


def c09a_edge_precision():
    img = block_image(400, high=1.0)
    feats = detect_edges(img, FrftOrder.of(PI / 2, PI / 2), "amplitude", 0.3, "relative")
    precision = edge_precision(feats.edge_map, distance_to_lines(400), tol=2.0)
    marked = int(feats.edge_map.sum())
    return precision >= 0.90, f"{precision:.3f} of {marked} marked pixels within 2 px of the block boundary (>= 0.90)"


def c09b_directional_sweep():
    img = block_image(400, high=1.0)
    plus, minus = directional_sweep(img, [FrftOrder.of(PI / 2, PI / 2 + 0.3), FrftOrder.of(PI / 2, PI / 2 - 0.3)])
    distance = int(np.count_nonzero(plus != minus))
    return distance > 0, f"Hamming distance between maps {distance} (> 0)"


def c10_spatial_oracle():
    g = make_grid(64, 2)
    f = ComplexField.from_function(g, lambda x1, x2: np.exp(-(x1**2 + x2**2) / 2))
    worst = 0.0
    for order in (FrftOrder.of(PI / 2, PI / 2), FrftOrder.of(PI / 3, PI / 4)):
        for j in (1, 2):
            worst = max(worst, rel_l2(riesz_spatial_oracle(f, order, j), fractional_riesz(f, order, j)))
    return worst < 0.05, f"max rel err {worst:.3f} (< 0.05), N=64"


CRITERIA = [
    ("C01", "oracle equivalence", c01_oracle_equivalence),
    ("C02", "inversion", c02_inversion),
    ("C03", "classical reduction", c03_classical_reduction),
    ("C04", "gaussian fixed point", c04_gaussian_fixed_point),
    ("C05", "riesz identity", c05_riesz_identity),
    ("C06", "conjugation identity", c06_conjugation_identity),
    ("C07", "derivative convergence", c07_derivative_convergence),
    ("C08", "mixed derivative and a priori bound", c08_mixed_and_apriori),
    ("C09a", "block image edge precision", c09a_edge_precision),
    ("C09b", "directional sweep selectivity", c09b_directional_sweep),
    ("C10", "spatial oracle agreement", c10_spatial_oracle),
]


def _line(tag, name, ok, detail):
    return f"{'PASS' if ok else 'FAIL'}  {tag:<5} {name}: {detail}"


@pytest.mark.parametrize("tag,name,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(tag, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(tag, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for tag, name, check in CRITERIA:
        ok, detail = check()
        failures += not ok
        print(_line(tag, name, ok, detail), flush=True)
    sys.exit(1 if failures else 0)
