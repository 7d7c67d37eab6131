"""Fractional Riesz and Hilbert transforms and the chirped derivative identities.

All operators here are multipliers in the fractional Fourier domain: transform
with order ``alpha``, multiply by a symbol written in terms of the scaled
frequency ``u~_k = u_k csc(alpha_k)``, transform back with order ``-alpha``.
The symbols are set to zero at ``u~ = 0`` (the DC bin), where the principal
value symbols are undefined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.signal
from scipy.special import gamma

from .errors import InvalidArgumentError
from .fields import ComplexField, FrftOrder, Grid, chirp, rel_l2
from .frft import frft, frft_inverse, output_grid


def riesz_constant(n: int) -> float:
    """``Gamma((n+1)/2) / pi^((n+1)/2)``; equals ``1/(2 pi)`` for ``n = 2``."""
    return float(gamma((n + 1) / 2) / math.pi ** ((n + 1) / 2))


def riesz_multiplier(order: FrftOrder, u, j: int) -> complex:
    """Symbol ``-i u~_j / |u~|`` at the single frequency point ``u`` (``j`` is 1-based)."""
    order.require_regular()
    u = np.atleast_1d(np.asarray(u, dtype=float))
    _check_component(j, order.dims)
    scaled = u * np.asarray(order.csc)
    norm = math.sqrt(float(np.sum(scaled**2)))
    if norm == 0.0:
        return 0j
    return complex(-1j * scaled[j - 1] / norm)


@dataclass(frozen=True, eq=False)
class MultiplierField:
    """Symbol sampled on a fractional Fourier domain grid."""

    grid: Grid
    values: np.ndarray
    component: int | None = None


def scaled_frequencies(order: FrftOrder, grid: Grid) -> list[np.ndarray]:
    """``u~_k = u_k csc(alpha_k)`` on the default output grid of ``order`` over ``grid``."""
    order = order.broadcast(grid.dims)
    order.require_regular()
    out = output_grid(order, grid)
    return [u * order.csc[k] for k, u in enumerate(out.mesh())]


def riesz_symbol(order: FrftOrder, grid: Grid, j: int) -> MultiplierField:
    """The ``j``-th fractional Riesz symbol on the transform-domain grid of ``grid``.

    ``grid`` is the spatial grid; the returned field lives on
    ``output_grid(order, grid)``.
    """
    order = order.broadcast(grid.dims)
    _check_component(j, grid.dims)
    ut = scaled_frequencies(order, grid)
    norm = np.sqrt(sum(v**2 for v in ut))
    with np.errstate(invalid="ignore", divide="ignore"):
        values = np.where(norm > 0, -1j * ut[j - 1] / norm, 0j)
    values.flags.writeable = False
    return MultiplierField(output_grid(order, grid), values, j)


def hilbert_symbol(order: FrftOrder, grid: Grid) -> MultiplierField:
    """``-i sgn((pi - alpha) u)`` on the transform-domain grid, with ``sgn(0) = 0``.

    ``alpha`` is used as given (not reduced modulo ``2 pi``).
    """
    order = order.broadcast(1)
    order.require_regular()
    out = output_grid(order, grid)
    values = -1j * np.sign((math.pi - order.angles[0]) * out.positions(0))
    values.flags.writeable = False
    return MultiplierField(out, values)


def apply_multiplier(field: ComplexField, order: FrftOrder, symbol) -> ComplexField:
    """``F_{-alpha}( symbol * F_alpha(field) )``.

    ``symbol`` is a :class:`MultiplierField` or an array on the transform grid.
    """
    order = order.broadcast(field.dims)
    values = symbol.values if isinstance(symbol, MultiplierField) else symbol
    spectrum = frft(field, order)
    return frft_inverse(ComplexField(spectrum.grid, values * spectrum.samples), order, field.grid)


def fractional_riesz(field: ComplexField, order: FrftOrder, j: int) -> ComplexField:
    """``j``-th fractional Riesz transform through the FRFT-domain multiplier.

    A 1D field falls back to :func:`fractional_hilbert`.
    """
    if field.dims == 1:
        _check_component(j, 1)
        return fractional_hilbert(field, order)
    order = order.broadcast(field.dims)
    return apply_multiplier(field, order, riesz_symbol(order, field.grid, j))


def riesz_conjugated(field: ComplexField, order: FrftOrder, j: int) -> ComplexField:
    """Fractional Riesz transform as ``e_{-alpha} * R_j(e_alpha * f)``.

    ``R_j`` is the classical Riesz transform, applied with the DFT and the
    symbol ``-i xi_j / |xi|`` on the frequency lattice that ``u~`` sweeps.
    This route never touches the fractional transform and serves as an
    independent check of :func:`fractional_riesz`.
    """
    grid = field.grid
    order = order.broadcast(grid.dims)
    _check_component(j, grid.dims)
    e_pos = chirp(order, grid, 1).samples
    e_neg = chirp(order, grid, -1).samples
    axes = tuple(range(grid.dims))
    # a circulant operator: the half-length index offset of the grid cancels
    spectrum = np.fft.fftn(e_pos * field.samples, axes=axes)
    freqs = []
    for k in axes:
        xi_k = np.fft.fftfreq(grid.n, d=grid.spacing[k])
        if order.csc[k] < 0:
            # on the scaled lattice the unpaired Nyquist frequency is positive
            xi_k[grid.n // 2] = -xi_k[grid.n // 2]
        freqs.append(xi_k)
    xi = np.meshgrid(*freqs, indexing="ij")
    norm = np.sqrt(sum(v**2 for v in xi))
    with np.errstate(invalid="ignore", divide="ignore"):
        symbol = np.where(norm > 0, -1j * xi[j - 1] / norm, 0j)
    out = np.fft.ifftn(symbol * spectrum, axes=axes)
    return ComplexField(grid, e_neg * out)


def riesz_spatial_oracle(field: ComplexField, order: FrftOrder, j: int, radius: float | None = None) -> ComplexField:
    """Truncated singular-integral evaluation of the 2D fractional Riesz transform.

    Convolves ``e_alpha * f`` directly with ``c_2 * x_j / |x|^3`` restricted to
    ``|x| > radius`` (default half a grid step) and multiplies by
    ``e_{-alpha}``. Accuracy is limited by the truncation and by the finite
    domain, so it is an approximate reference, not an exact one.
    """
    grid = field.grid
    if grid.dims != 2:
        raise InvalidArgumentError("the spatial oracle is implemented for 2D fields only")
    order = order.broadcast(2)
    _check_component(j, 2)
    dx1, dx2 = grid.spacing
    if radius is None:
        radius = min(dx1, dx2) / 2
    n = grid.n
    k = np.arange(-(n - 1), n)
    y1, y2 = np.meshgrid(k * dx1, k * dx2, indexing="ij")
    r = np.hypot(y1, y2)
    yj = (y1, y2)[j - 1]
    with np.errstate(invalid="ignore", divide="ignore"):
        kernel = np.where(r > radius, riesz_constant(2) * yj / r**3, 0.0)
    g = chirp(order, grid, 1).samples * field.samples
    # linear, not circular, convolution; FFT evaluation of the same finite sum
    full = scipy.signal.fftconvolve(g, kernel * (dx1 * dx2), mode="full")
    conv = full[n - 1 : 2 * n - 1, n - 1 : 2 * n - 1]
    return ComplexField(grid, chirp(order, grid, -1).samples * conv)


def fractional_hilbert(field: ComplexField, order) -> ComplexField:
    """1D fractional Hilbert transform, multiplier ``-i sgn((pi - alpha) u)``."""
    if field.dims != 1:
        raise InvalidArgumentError("the fractional Hilbert transform acts on 1D fields")
    if not isinstance(order, FrftOrder):
        order = FrftOrder.of(order)
    return apply_multiplier(field, order, hilbert_symbol(order, field.grid))


def remove_dc(field: ComplexField, order: FrftOrder) -> ComplexField:
    """Project out the ``u = 0`` fractional Fourier coefficient.

    For ``alpha = pi/2`` this is mean subtraction. The result is the kind of
    "DC-free" field on which the Riesz identities hold exactly.
    """
    order = order.broadcast(field.dims)
    spectrum = frft(field, order)
    data = np.array(spectrum.samples)
    data[(field.grid.n // 2,) * field.dims] = 0
    return frft_inverse(ComplexField(spectrum.grid, data), order, field.grid)


def riesz_identity_residual(field: ComplexField, order: FrftOrder) -> float:
    """``||(R_1^2 + R_2^2) f + f|| / ||f||`` with each ``R_j`` applied twice as an operator."""
    if field.dims != 2:
        raise InvalidArgumentError("the Riesz identity residual needs a 2D field")
    order = order.broadcast(2)
    total = field
    for j in (1, 2):
        total = total + fractional_riesz(fractional_riesz(field, order, j), order, j)
    return total.norm() / field.norm()


def _derivative_symbol(order: FrftOrder, grid: Grid, k: int) -> np.ndarray:
    """``i u~_k`` on the transform-domain grid."""
    return 1j * scaled_frequencies(order, grid)[k - 1]


def chirp_derivative(field: ComplexField, order: FrftOrder, k: int) -> ComplexField:
    """``e_{-alpha} d/dx_k (e_alpha f)`` via the multiplier ``i u_k csc(alpha_k)``."""
    order = order.broadcast(field.dims)
    _check_component(k, field.dims)
    return apply_multiplier(field, order, _derivative_symbol(order, field.grid, k))


def frft_output_derivative(field: ComplexField, order: FrftOrder, k: int) -> ComplexField:
    """``e_{-alpha}(u) F_alpha(-i y_k csc(alpha_k) f)(u)``, on the transform-domain grid.

    This equals ``d/du_k (e_{-alpha} F_alpha f)``.
    """
    order = order.broadcast(field.dims)
    order.require_regular()
    _check_component(k, field.dims)
    y = field.grid.mesh()[k - 1]
    weighted = ComplexField(field.grid, -1j * order.csc[k - 1] * y * field.samples)
    transformed = frft(weighted, order)
    return ComplexField(transformed.grid, chirp(order, transformed.grid, -1).samples * transformed.samples)


def chirped_laplacian(field: ComplexField, order: FrftOrder) -> ComplexField:
    """``e_{-alpha} Laplacian(e_alpha f)`` via the multiplier ``-|u~|^2``."""
    order = order.broadcast(field.dims)
    ut = scaled_frequencies(order, field.grid)
    return apply_multiplier(field, order, -sum(v**2 for v in ut))


def mixed_second_derivative(field: ComplexField, order: FrftOrder, j: int, k: int) -> ComplexField:
    """``e_{-alpha} d^2(e_alpha f)/dy_j dy_k`` written as ``-R_k R_j`` of the chirped Laplacian."""
    if field.dims != 2:
        raise InvalidArgumentError("mixed second derivatives are implemented for 2D fields")
    order = order.broadcast(2)
    lap = chirped_laplacian(field, order)
    return -fractional_riesz(fractional_riesz(lap, order, j), order, k)


def mixed_second_derivative_direct(field: ComplexField, order: FrftOrder, j: int, k: int) -> ComplexField:
    """Same quantity as :func:`mixed_second_derivative` with the symbol ``(i u~_j)(i u~_k)``."""
    order = order.broadcast(field.dims)
    _check_component(j, field.dims)
    _check_component(k, field.dims)
    symbol = _derivative_symbol(order, field.grid, j) * _derivative_symbol(order, field.grid, k)
    return apply_multiplier(field, order, symbol)


def riesz_decomposition_rhs(field: ComplexField, order: FrftOrder, j: int) -> ComplexField:
    """``-R_j (R_1 - i R_2) (D_1 f + i D_2 f)`` with ``D_k = e_{-alpha} d/dy_k e_alpha``.

    Both derivative terms carry the ``e_{-alpha}`` factor; that is the
    combination for which the identity with ``D_j f`` holds.
    """
    order = order.broadcast(2)
    combo = chirp_derivative(field, order, 1) + 1j * chirp_derivative(field, order, 2)
    inner = fractional_riesz(combo, order, 1) - 1j * fractional_riesz(combo, order, 2)
    return -fractional_riesz(inner, order, j)


def first_derivative_riesz_decomposition_residual(field: ComplexField, order: FrftOrder, j: int) -> float:
    """Relative residual of ``D_j f = -R_j (R_1 - i R_2)(D_1 f + i D_2 f)``.

    Returns 0 for the zero field.
    """
    if field.dims != 2:
        raise InvalidArgumentError("the Riesz decomposition of first derivatives needs a 2D field")
    order = order.broadcast(2)
    lhs = chirp_derivative(field, order, j)
    rhs = riesz_decomposition_rhs(field, order, j)
    scale = lhs.norm()
    if scale == 0.0:
        return (lhs - rhs).norm()
    return rel_l2(rhs, lhs)


def _check_component(j: int, dims: int) -> None:
    if not isinstance(j, (int, np.integer)) or not 1 <= j <= dims:
        raise InvalidArgumentError(f"component index must be in 1..{dims}, got {j!r}")
