"""Discrete multidimensional fractional Fourier transform.

On a Regular axis the transform is the Riemann sum

    F(u_l) = dx * sum_m  c/sqrt(2 pi) * exp(i a (x_m^2 + u_l^2) - i s x_m u_l) * f(x_m)

with ``a = cot(alpha)/2``, ``c = sqrt(1 - i cot(alpha))`` and ``s = csc(alpha)``.
The fast path factors the kernel into an input chirp, a DFT with arbitrary
real scale (evaluated with Bluestein's algorithm) and an output chirp;
:func:`frft_quadrature` evaluates the same sum directly as an O(N^2) matrix
product and is used as the reference.

By default the output lattice has spacing ``2 pi |sin alpha| / (N dx)`` on
each Regular axis. With that choice ``s * dx * du = +-2 pi / N``, the scaled
DFT is a plain DFT, and the transform of order ``-alpha`` is the exact inverse
of the transform of order ``alpha``. Any other output grid can be requested
through ``out_grid``.
"""

from __future__ import annotations

import functools
import math
import os

import numpy as np
import scipy.fft

from .errors import GridMismatchError, InvalidArgumentError
from .fields import AxisKind, ComplexField, FrftOrder, Grid

_SQRT_2PI = math.sqrt(2 * math.pi)


def fft_workers() -> int | None:
    """Worker count for ``scipy.fft``; capped by the ``FRR_THREADS`` variable."""
    value = os.environ.get("FRR_THREADS")
    if not value:
        return None
    try:
        return max(1, int(value))
    except ValueError:
        raise InvalidArgumentError(f"FRR_THREADS must be a positive integer, got {value!r}") from None


def output_grid(order: FrftOrder, grid: Grid) -> Grid:
    """Default output lattice of :func:`frft` for ``order`` applied on ``grid``."""
    order = order.broadcast(grid.dims)
    spacing = []
    for alpha, kind, dx in zip(order.angles, order.kinds, grid.spacing):
        if kind is AxisKind.REGULAR:
            spacing.append(2 * math.pi * abs(math.sin(alpha)) / (grid.n * dx))
        else:
            spacing.append(dx)
    return grid.with_spacing(spacing)


def kernel_eval(order: FrftOrder, x, u) -> complex:
    """Value of the product kernel ``K_alpha(x, u)`` at the points ``x`` and ``u``."""
    order.require_regular()
    x = np.atleast_1d(np.asarray(x, dtype=float))
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if x.shape != (order.dims,) or u.shape != (order.dims,):
        raise InvalidArgumentError(f"points must have {order.dims} coordinates")
    value = 1.0 + 0j
    for k in range(order.dims):
        a, c, s = order.a[k], order.c[k], order.csc[k]
        value *= c / _SQRT_2PI * np.exp(1j * (a * (x[k] ** 2 + u[k] ** 2) - x[k] * u[k] * s))
    return complex(value)


def scaled_dft(g: np.ndarray, beta: float, axis: int = -1) -> np.ndarray:
    """``y_q = sum_p g_p exp(-i beta p q)`` over centered indices ``p, q`` in ``[-N/2, N/2)``.

    Uses the Bluestein identity ``pq = (p^2 + q^2 - (q - p)^2) / 2`` to turn
    the sum into a linear convolution, so ``beta`` can be any real number.
    """
    g = np.moveaxis(np.asarray(g, dtype=np.complex128), axis, -1)
    n = g.shape[-1]
    tables = _bluestein_tables(n, float(beta))
    y = _bluestein_apply(g, *tables)
    return np.moveaxis(y, -1, axis)


@functools.lru_cache(maxsize=64)
def _bluestein_tables(n: int, beta: float):
    p = np.arange(n, dtype=float) - n // 2
    pre = np.exp(-0.5j * beta * p**2)
    length = scipy.fft.next_fast_len(2 * n - 1)
    k = np.arange(n, dtype=float)
    w = np.exp(0.5j * beta * k**2)
    wpad = np.zeros(length, dtype=np.complex128)
    wpad[:n] = w
    wpad[length - n + 1 :] = w[:0:-1]
    wfft = scipy.fft.fft(wpad)
    for arr in (pre, wfft):
        arr.flags.writeable = False
    return pre, pre, wfft


def _bluestein_apply(g, pre, post, wfft):
    n = g.shape[-1]
    length = wfft.shape[0]
    workers = fft_workers()
    h = scipy.fft.fft(g * pre, n=length, axis=-1, workers=workers)
    conv = scipy.fft.ifft(h * wfft, axis=-1, workers=workers)[..., :n]
    return conv * post


class _AxisPlan:
    """Precomputed factors for one axis of a transform."""

    def __init__(self, kind, a, c, s, n, dx, du):
        self.kind = kind
        if kind is not AxisKind.REGULAR:
            return
        x = (np.arange(n) - n // 2) * dx
        u = (np.arange(n) - n // 2) * du
        self.beta = s * dx * du
        pre, post, wfft = _bluestein_tables(n, self.beta)
        self.in_factor = np.exp(1j * a * x**2) * pre
        self.out_factor = (dx * c / _SQRT_2PI) * np.exp(1j * a * u**2) * post
        self.wfft = wfft

    def apply(self, data: np.ndarray) -> np.ndarray:
        """Transform along the last axis of ``data``."""
        if self.kind is AxisKind.IDENTITY:
            return data.copy()
        if self.kind is AxisKind.REFLECTION:
            # index m -> (N - m) mod N keeps x = 0 fixed
            return np.roll(data[..., ::-1], 1, axis=-1)
        return _bluestein_apply(data * self.in_factor, 1.0, self.out_factor, self.wfft)


class FrftPlan:
    """Reusable precomputation of :func:`frft` for one (order, input grid, output grid).

    Plans are immutable after construction and may be shared across threads.
    """

    def __init__(self, order: FrftOrder, grid: Grid, out_grid: Grid | None = None):
        order = order.broadcast(grid.dims)
        if out_grid is None:
            out_grid = output_grid(order, grid)
        if out_grid.n != grid.n or out_grid.dims != grid.dims:
            raise GridMismatchError(f"output grid {out_grid} is incompatible with input grid {grid}")
        self.order = order
        self.grid = grid
        self.out_grid = out_grid
        self._axes = [
            _AxisPlan(order.kinds[k], order.a[k], order.c[k], order.csc[k], grid.n, grid.spacing[k], out_grid.spacing[k])
            for k in range(grid.dims)
        ]

    def __call__(self, field: ComplexField) -> ComplexField:
        if field.grid != self.grid:
            raise GridMismatchError(f"plan was built for {self.grid}, field lives on {field.grid}")
        data = np.array(field.samples)
        for axis, ax_plan in enumerate(self._axes):
            data = np.moveaxis(ax_plan.apply(np.moveaxis(data, axis, -1)), -1, axis)
        return ComplexField(self.out_grid, data)


def plan(order: FrftOrder, grid: Grid, out_grid: Grid | None = None) -> FrftPlan:
    """Return a (cached) :class:`FrftPlan`."""
    order = order.broadcast(grid.dims)
    if out_grid is not None and (out_grid.n != grid.n or out_grid.dims != grid.dims):
        raise GridMismatchError(f"output grid {out_grid} is incompatible with input grid {grid}")
    # Grid equality is tolerant, so key the cache on the exact spacings
    out_spacing = None if out_grid is None else out_grid.spacing
    return _cached_plan_exact(order, grid.n, grid.spacing, out_spacing)


@functools.lru_cache(maxsize=128)
def _cached_plan_exact(order, n, spacing, out_spacing):
    grid = Grid(n, spacing)
    out_grid = None if out_spacing is None else Grid(n, out_spacing)
    return FrftPlan(order, grid, out_grid)


def frft(field: ComplexField, order: FrftOrder, out_grid: Grid | None = None) -> ComplexField:
    """Fractional Fourier transform of ``field``, applied separably per axis.

    Regular axes use the fast chirp / scaled-DFT / chirp factorization,
    Identity axes copy the samples and Reflection axes map ``f(x)`` to
    ``f(-x)``.

    Parameters
    ----------
    field : ComplexField
    order : FrftOrder
        One angle per axis, or a single angle used for every axis.
    out_grid : Grid, optional
        Output lattice. Defaults to :func:`output_grid`, which makes
        ``frft_inverse`` an exact inverse.
    """
    return plan(order, field.grid, out_grid)(field)


def frft_inverse(field: ComplexField, order: FrftOrder, out_grid: Grid | None = None) -> ComplexField:
    """Transform of order ``-order``; undoes :func:`frft` on its default output grid."""
    return frft(field, -order.broadcast(field.dims), out_grid)


def frft_quadrature(field: ComplexField, order: FrftOrder, out_grid: Grid | None = None) -> ComplexField:
    """Direct O(N^2)-per-axis evaluation of the Riemann sum; the reference for :func:`frft`."""
    order = order.broadcast(field.dims)
    order.require_regular()
    grid = field.grid
    if out_grid is None:
        out_grid = output_grid(order, grid)
    data = np.array(field.samples)
    for k in range(grid.dims):
        x = grid.positions(k)
        u = out_grid.positions(k)
        a, c, s = order.a[k], order.c[k], order.csc[k]
        kernel = (c / _SQRT_2PI) * np.exp(1j * (a * (x[None, :] ** 2 + u[:, None] ** 2) - s * np.outer(u, x)))
        data = np.moveaxis(np.tensordot(grid.spacing[k] * kernel, data, axes=([1], [k])), 0, k)
    return ComplexField(out_grid, data)


def centered_dft(data: np.ndarray, axes=None) -> np.ndarray:
    """Unitary DFT with the zero index moved to the center (``N/2``) on every axis."""
    data = np.asarray(data)
    if axes is None:
        axes = tuple(range(data.ndim))
    shifted = np.fft.ifftshift(data, axes=axes)
    return np.fft.fftshift(np.fft.fftn(shifted, axes=axes, norm="ortho"), axes=axes)
