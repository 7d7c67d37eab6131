"""Monogenic signal of a grayscale image and edge features derived from it."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GridMismatchError, InvalidArgumentError
from .fields import ComplexField, FrftOrder, make_grid
from .fracops import fractional_riesz

FEATURES = ("amplitude", "orientation", "phase")


@dataclass(frozen=True)
class MonogenicField:
    """The triple ``(p, q1, q2) = (f, R_1 f, R_2 f)`` for one order."""

    p: ComplexField
    q1: ComplexField
    q2: ComplexField
    order: FrftOrder

    def __post_init__(self):
        if not (self.p.grid == self.q1.grid == self.q2.grid):
            raise GridMismatchError("monogenic components must share one grid")


@dataclass(frozen=True)
class EdgeFeatures:
    amplitude: np.ndarray
    orientation: np.ndarray
    phase: np.ndarray
    edge_map: np.ndarray | None = None

    def feature(self, name: str) -> np.ndarray:
        if name not in FEATURES:
            raise InvalidArgumentError(f"unknown feature {name!r}; expected one of {', '.join(FEATURES)}")
        return getattr(self, name)


def image_field(image) -> ComplexField:
    """Place a square image on the default 2D grid, pixel ``(i, j)`` at grid index ``(i, j)``."""
    if isinstance(image, ComplexField):
        return image
    image = np.asarray(image, dtype=float)
    if image.ndim != 2 or image.shape[0] != image.shape[1]:
        raise InvalidArgumentError(f"expected a square 2D image, got shape {image.shape}")
    return ComplexField(make_grid(image.shape[0], 2), image)


def block_image(n: int = 400, high: float = 1.0) -> np.ndarray:
    """Two-by-two block test image: 0 on the diagonal blocks, ``high`` elsewhere.

    For ``n = 400`` this is the function that vanishes on ``[0,200]^2`` and
    ``[200,400]^2``, sampled at pixel resolution.
    """
    if n % 2:
        raise InvalidArgumentError(f"block image size must be even, got {n}")
    half = n // 2
    img = np.full((n, n), float(high))
    img[:half, :half] = 0.0
    img[half:, half:] = 0.0
    return img


def monogenic_signal(image, order: FrftOrder) -> MonogenicField:
    """``(p, q1, q2)`` with ``q_j`` the ``j``-th fractional Riesz transform of the image."""
    p = image_field(image)
    if p.dims != 2:
        raise InvalidArgumentError("the monogenic signal is defined for 2D images")
    if np.any(p.samples.imag != 0):
        raise InvalidArgumentError("the monogenic signal expects a real-valued image")
    order = order.broadcast(2)
    return MonogenicField(p, fractional_riesz(p, order, 1), fractional_riesz(p, order, 2), order)


def local_features(m: MonogenicField, eps: float | None = None) -> EdgeFeatures:
    """Local amplitude, orientation and phase of a monogenic triple.

    ``A = sqrt(p^2 + |q1|^2 + |q2|^2)``, ``theta = atan(|q2 / q1|)`` and
    ``P = atan(p / sqrt(|q1|^2 + |q2|^2))``. Where the Riesz part is below
    ``eps`` (default ``1e-9 * max(A)``), ``theta = 0`` and ``P = sgn(p) pi/2``;
    where only ``|q1|`` is below ``eps``, ``theta = pi/2``.
    """
    p = m.p.samples.real
    a1 = np.abs(m.q1.samples)
    a2 = np.abs(m.q2.samples)
    odd = np.sqrt(a1**2 + a2**2)
    amplitude = np.sqrt(p**2 + odd**2)
    if eps is None:
        eps = 1e-9 * float(amplitude.max(initial=0.0))
    # <= so that an all-zero triple (eps = 0) takes the degenerate branch
    flat = odd <= eps
    thin = a1 <= eps
    theta = np.where(thin, np.pi / 2, np.arctan(a2 / np.where(thin, 1.0, a1)))
    theta = np.where(flat, 0.0, theta)
    phase = np.where(flat, np.sign(p) * np.pi / 2, np.arctan(p / np.where(flat, 1.0, odd)))
    return EdgeFeatures(amplitude, theta, phase)


def binarize(feature: np.ndarray, threshold: float, mode: str = "relative") -> np.ndarray:
    """Boolean map of samples at or above the threshold.

    In ``relative`` mode the cut is ``threshold * max(feature)`` with
    ``threshold`` in (0, 1); a field whose maximum is not positive gives an
    empty map. In ``absolute`` mode ``threshold`` is compared directly.
    """
    feature = np.asarray(feature, dtype=float)
    if not np.all(np.isfinite(feature)):
        raise InvalidArgumentError("cannot binarize a field with non-finite values")
    if mode == "relative":
        if not 0 < threshold < 1:
            raise InvalidArgumentError(f"relative threshold must lie in (0, 1), got {threshold!r}")
        top = feature.max(initial=0.0)
        if top <= 0:
            return np.zeros(feature.shape, dtype=bool)
        return feature >= threshold * top
    if mode == "absolute":
        return feature >= threshold
    raise InvalidArgumentError(f"mode must be 'relative' or 'absolute', got {mode!r}")


def detect_edges(image, order: FrftOrder, feature: str = "amplitude", threshold: float = 0.3,
                 mode: str = "relative") -> EdgeFeatures:
    """Monogenic signal, local features and the binarized edge map in one call."""
    feats = local_features(monogenic_signal(image, order))
    edge_map = binarize(feats.feature(feature), threshold, mode)
    return EdgeFeatures(feats.amplitude, feats.orientation, feats.phase, edge_map)


def directional_sweep(image, orders: Sequence[FrftOrder], feature: str = "amplitude",
                      threshold: float = 0.3, mode: str = "relative") -> list[np.ndarray]:
    """One edge map per order, in the order given."""
    field = image_field(image) if len(orders) else None
    return [detect_edges(field, order, feature, threshold, mode).edge_map for order in orders]


def distance_to_lines(n: int, lines: Sequence[float] | None = None) -> np.ndarray:
    """Distance in pixels from each pixel center to the nearest of the given lines.

    Lines are axis-parallel at pixel coordinate ``c`` on both axes, where pixel
    ``i`` covers ``[i, i + 1]``. The default is the block boundary ``n / 2``.
    """
    if lines is None:
        lines = (n / 2,)
    centers = np.arange(n) + 0.5
    d = np.min([np.abs(centers - c) for c in lines], axis=0)
    return np.minimum(d[:, None], d[None, :])


def edge_precision(edge_map: np.ndarray, distance: np.ndarray, tol: float = 2.0) -> float:
    """Fraction of marked pixels whose distance is at most ``tol`` (1.0 for an empty map)."""
    marked = np.asarray(edge_map, dtype=bool)
    total = int(marked.sum())
    if total == 0:
        return 1.0
    return float((marked & (distance <= tol)).sum() / total)
