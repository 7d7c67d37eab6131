"""Invariant suites run by ``frr verify``.

Each check returns a :class:`CheckResult` holding the measured quantity and
the bound it must stay below. Random inputs come from a seeded generator so a
run is reproducible from ``(size, seed)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import ComplexField, FrftOrder, make_grid, rel_l2
from .fracops import (
    chirped_laplacian,
    first_derivative_riesz_decomposition_residual,
    fractional_hilbert,
    fractional_riesz,
    mixed_second_derivative,
    mixed_second_derivative_direct,
    remove_dc,
    riesz_conjugated,
    riesz_identity_residual,
)
from .frft import centered_dft, frft, frft_inverse, frft_quadrature

PI = math.pi


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value < self.tolerance)


def random_field(grid, rng) -> ComplexField:
    return ComplexField(grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))


def smooth_field(grid, rng, width=1.5, band=5.0, terms=6) -> ComplexField:
    """Gaussian window times a random sum of plane waves with ``|frequency| <= band``."""
    mesh = grid.mesh()
    window = np.exp(-sum(x**2 for x in mesh) / (2 * width**2))
    wave = np.zeros(grid.shape, dtype=complex)
    for _ in range(terms):
        freq = rng.uniform(-band, band, size=grid.dims) / math.sqrt(grid.dims)
        phase = sum(k * x for k, x in zip(freq, mesh))
        wave += (rng.standard_normal() + 1j * rng.standard_normal()) * np.exp(1j * phase)
    return ComplexField(grid, window * wave)


def check_oracle(size, rng):
    worst = 0.0
    for dims, n in ((1, size), (2, min(size, 64))):
        grid = make_grid(n, dims)
        for alpha in (PI / 6, PI / 3, 3 * PI / 4, 5 * PI / 6):
            f = random_field(grid, rng)
            order = FrftOrder.of(*([alpha, PI - alpha / 2][:dims]))
            worst = max(worst, rel_l2(frft(f, order), frft_quadrature(f, order), f))
    return CheckResult("oracle_equivalence", worst, 1e-10)


def check_inversion(size, rng):
    worst = 0.0
    for dims, order in ((1, FrftOrder.of(PI / 3)), (2, FrftOrder.of(PI / 3, 3 * PI / 4))):
        f = smooth_field(make_grid(size, dims), rng)
        worst = max(worst, rel_l2(frft_inverse(frft(f, order), order), f))
    return CheckResult("inversion", worst, 1e-6)


def check_classical(size, rng):
    f = random_field(make_grid(size, 1), rng)
    return CheckResult("classical_reduction", rel_l2(frft(f, FrftOrder.of(PI / 2)).samples, centered_dft(f.samples)), 1e-10)


def check_gaussian(size, rng):
    grid = make_grid(size, 1)
    f = ComplexField.from_function(grid, lambda x: np.exp(-x**2 / 2))
    worst = 0.0
    for alpha in (PI / 6, PI / 3, 2 * PI / 3):
        out = frft(f, FrftOrder.of(alpha))
        worst = max(worst, rel_l2(out.samples, np.exp(-out.grid.positions() ** 2 / 2), f.samples))
    return CheckResult("gaussian_fixed_point", worst, 1e-6)


def check_energy(size, rng):
    f = smooth_field(make_grid(size, 1), rng)
    out = frft(f, FrftOrder.of(PI / 3))
    return CheckResult("energy_preservation", abs(out.weighted_norm() / f.weighted_norm() - 1), 1e-4)


def check_riesz_identity(size, rng):
    order = FrftOrder.of(PI / 4, PI / 3)
    f = remove_dc(random_field(make_grid(min(size, 64), 2), rng), order)
    return CheckResult("riesz_identity", riesz_identity_residual(f, order), 1e-8)


def check_conjugation(size, rng):
    order = FrftOrder.of(PI / 4, PI / 3)
    f = remove_dc(random_field(make_grid(min(size, 64), 2), rng), order)
    worst = max(rel_l2(fractional_riesz(f, order, j), riesz_conjugated(f, order, j), f) for j in (1, 2))
    return CheckResult("conjugation_identity", worst, 1e-8)


def check_hilbert(size, rng):
    order = FrftOrder.of(PI / 3)
    f = remove_dc(random_field(make_grid(size, 1), rng), order)
    twice = fractional_hilbert(fractional_hilbert(f, order), order)
    return CheckResult("hilbert_square", rel_l2(twice, -f), 1e-8)


def check_mixed(size, rng):
    order = FrftOrder.of(PI / 3, PI / 4)
    f = remove_dc(random_field(make_grid(min(size, 64), 2), rng), order)
    worst = 0.0
    for j, k in ((1, 1), (1, 2), (2, 2)):
        worst = max(worst, rel_l2(mixed_second_derivative(f, order, j, k), mixed_second_derivative_direct(f, order, j, k)))
    return CheckResult("mixed_derivative_identity", worst, 1e-10)


def check_apriori(size, rng):
    order = FrftOrder.of(PI / 3, PI / 4)
    f = remove_dc(random_field(make_grid(min(size, 64), 2), rng), order)
    lap = chirped_laplacian(f, order).norm()
    ratio = max(mixed_second_derivative(f, order, j, k).norm() / lap for j, k in ((1, 1), (1, 2), (2, 2)))
    # reported as the excess over 1
    return CheckResult("apriori_bound_excess", max(ratio - 1.0, 0.0), 1e-10)


def check_decomposition(size, rng):
    order = FrftOrder.of(PI / 3, PI / 4)
    grid = make_grid(min(size, 64), 2)
    f = ComplexField.from_function(grid, lambda x1, x2: np.exp(-(x1**2 + x2**2) / 2))
    worst = max(first_derivative_riesz_decomposition_residual(f, order, j) for j in (1, 2))
    return CheckResult("riesz_decomposition", worst, 1e-8)


CHECKS = (
    check_oracle,
    check_inversion,
    check_classical,
    check_gaussian,
    check_energy,
    check_riesz_identity,
    check_conjugation,
    check_hilbert,
    check_mixed,
    check_apriori,
    check_decomposition,
)


def run_checks(size: int = 128, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    return [check(size, rng) for check in CHECKS]
