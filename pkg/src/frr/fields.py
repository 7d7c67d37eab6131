"""Sample grids, complex fields, fractional orders and chirps.

Every transform in the package works on a uniform lattice that is symmetric
about the origin: ``N`` samples per axis at ``x_m = (m - N/2) * dx`` for
``m = 0..N-1``, so ``x = 0`` is always the sample ``m = N/2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import GridMismatchError, InvalidArgumentError, InvalidOrderError

# angles closer than this to a multiple of pi are treated as singular orders
ANGLE_TOL = 1e-8

# relative tolerance used when comparing grid spacings
_SPACING_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform symmetric lattice with ``n`` points per axis.

    ``spacing`` holds one sample distance per axis. Grids produced by
    :func:`make_grid` are square; grids in the fractional Fourier domain may
    carry a different spacing per axis (see :func:`frr.frft.output_grid`).
    """

    n: int
    spacing: tuple[float, ...]

    def __post_init__(self):
        n = self.n
        if int(n) != n or n < 4 or n % 2:
            raise InvalidArgumentError(f"grid size must be an even integer >= 4, got {n!r}")
        if len(self.spacing) not in (1, 2):
            raise InvalidArgumentError(f"only 1D and 2D grids are supported, got dims={len(self.spacing)}")
        if not all(np.isfinite(d) and d > 0 for d in self.spacing):
            raise InvalidArgumentError(f"grid spacing must be positive and finite, got {self.spacing}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "spacing", tuple(float(d) for d in self.spacing))

    @property
    def dims(self) -> int:
        return len(self.spacing)

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dims

    @property
    def cell_volume(self) -> float:
        return math.prod(self.spacing)

    def positions(self, axis: int = 0) -> np.ndarray:
        """Sample positions along ``axis``; index ``n // 2`` is exactly zero."""
        return (np.arange(self.n) - self.n // 2) * self.spacing[axis]

    def mesh(self) -> list[np.ndarray]:
        """Coordinate arrays broadcast to :attr:`shape` (``ij`` indexing)."""
        axes = [self.positions(k) for k in range(self.dims)]
        return np.meshgrid(*axes, indexing="ij")

    def with_spacing(self, spacing: Sequence[float]) -> Grid:
        return Grid(self.n, tuple(spacing))

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return (
            self.n == other.n
            and self.dims == other.dims
            and all(math.isclose(a, b, rel_tol=_SPACING_RTOL) for a, b in zip(self.spacing, other.spacing))
        )

    def __hash__(self):
        return hash((self.n, self.dims))


def default_spacing(n: int) -> float:
    """``sqrt(2*pi/n)``: makes the order pi/2 transform the centered unitary DFT."""
    return math.sqrt(2 * math.pi / n)


def make_grid(n: int, dims: int = 1, spacing: float | None = None) -> Grid:
    """Square grid of ``n`` points per axis.

    Parameters
    ----------
    n : int
        Points per axis, even and at least 4.
    dims : {1, 2}
    spacing : float, optional
        Overrides the default spacing ``sqrt(2*pi/n)``.
    """
    if int(n) != n or n < 4 or n % 2:
        raise InvalidArgumentError(f"grid size must be an even integer >= 4, got {n!r}")
    if dims not in (1, 2):
        raise InvalidArgumentError(f"dims must be 1 or 2, got {dims!r}")
    dx = default_spacing(int(n)) if spacing is None else float(spacing)
    return Grid(int(n), (dx,) * dims)


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Complex samples on a :class:`Grid`. The sample array is read-only."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        data = np.array(self.samples, dtype=np.complex128, copy=True)
        if data.shape != self.grid.shape:
            raise GridMismatchError(f"sample shape {data.shape} does not match grid shape {self.grid.shape}")
        if not np.all(np.isfinite(data)):
            raise InvalidArgumentError("field samples must be finite")
        data.flags.writeable = False
        object.__setattr__(self, "samples", data)

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable[..., np.ndarray]) -> ComplexField:
        """Sample ``fn(x1[, x2])`` on the grid mesh."""
        return cls(grid, np.broadcast_to(fn(*grid.mesh()), grid.shape))

    @classmethod
    def zeros(cls, grid: Grid) -> ComplexField:
        return cls(grid, np.zeros(grid.shape))

    @property
    def dims(self) -> int:
        return self.grid.dims

    @property
    def real(self) -> np.ndarray:
        return self.samples.real

    def norm(self) -> float:
        """Plain (unweighted) l2 norm of the samples."""
        return float(np.linalg.norm(self.samples))

    def weighted_norm(self) -> float:
        """Discrete L2 norm, ``sqrt(cell_volume * sum |f|^2)``."""
        return math.sqrt(self.grid.cell_volume) * self.norm()

    def conj(self) -> ComplexField:
        return ComplexField(self.grid, self.samples.conj())

    def __add__(self, other: ComplexField) -> ComplexField:
        return field_zip(self, other, np.add)

    def __sub__(self, other: ComplexField) -> ComplexField:
        return field_zip(self, other, np.subtract)

    def __mul__(self, other):
        if isinstance(other, ComplexField):
            return field_zip(self, other, np.multiply)
        return ComplexField(self.grid, self.samples * other)

    __rmul__ = __mul__

    def __neg__(self) -> ComplexField:
        return ComplexField(self.grid, -self.samples)


def field_map(f: ComplexField, op: Callable[[np.ndarray], np.ndarray]) -> ComplexField:
    return ComplexField(f.grid, op(f.samples))


def field_zip(f: ComplexField, g: ComplexField, op: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> ComplexField:
    if f.grid != g.grid:
        raise GridMismatchError(f"cannot combine fields on {f.grid} and {g.grid}")
    return ComplexField(f.grid, op(f.samples, g.samples))


def rel_l2(a, b, ref=None) -> float:
    """``||a - b|| / ||ref||`` with ``ref`` defaulting to ``b``."""
    a = a.samples if isinstance(a, ComplexField) else np.asarray(a)
    b = b.samples if isinstance(b, ComplexField) else np.asarray(b)
    if ref is None:
        ref = b
    ref = ref.samples if isinstance(ref, ComplexField) else np.asarray(ref)
    return float(np.linalg.norm(a - b) / np.linalg.norm(ref))


class AxisKind(enum.Enum):
    REGULAR = "regular"
    IDENTITY = "identity"
    REFLECTION = "reflection"


def _classify(angle: float) -> AxisKind:
    reduced = math.fmod(angle, 2 * math.pi)
    if reduced < 0:
        reduced += 2 * math.pi
    if reduced <= ANGLE_TOL or 2 * math.pi - reduced <= ANGLE_TOL:
        return AxisKind.IDENTITY
    if abs(reduced - math.pi) <= ANGLE_TOL:
        return AxisKind.REFLECTION
    return AxisKind.REGULAR


@dataclass(frozen=True)
class FrftOrder:
    """Per-axis rotation angles of a fractional Fourier transform.

    For every Regular axis the chirp and kernel coefficients are cached::

        a = cot(alpha) / 2,  b = sec(alpha),  c = sqrt(1 - i cot(alpha)),  s = csc(alpha)

    ``c`` uses the principal square root. Singular axes (Identity, Reflection)
    carry NaN coefficients.
    """

    angles: tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(a) for a in np.atleast_1d(self.angles))
        if not angles or not all(math.isfinite(a) for a in angles):
            raise InvalidArgumentError(f"order angles must be finite, got {self.angles!r}")
        object.__setattr__(self, "angles", angles)
        kinds = tuple(_classify(a) for a in angles)
        object.__setattr__(self, "kinds", kinds)
        nan = float("nan")
        a, b, c, s = [], [], [], []
        for alpha, kind in zip(angles, kinds):
            if kind is AxisKind.REGULAR:
                cot = math.cos(alpha) / math.sin(alpha)
                a.append(cot / 2)
                b.append(1 / math.cos(alpha) if math.cos(alpha) != 0 else math.inf)
                c.append(complex(np.sqrt(complex(1.0, -cot))))
                s.append(1 / math.sin(alpha))
            else:
                a.append(nan)
                b.append(nan)
                c.append(complex(nan, nan))
                s.append(nan)
        object.__setattr__(self, "a", tuple(a))
        object.__setattr__(self, "b", tuple(b))
        object.__setattr__(self, "c", tuple(c))
        object.__setattr__(self, "csc", tuple(s))

    @classmethod
    def of(cls, *angles: float) -> FrftOrder:
        return cls(tuple(angles))

    @property
    def dims(self) -> int:
        return len(self.angles)

    @property
    def is_regular(self) -> bool:
        return all(k is AxisKind.REGULAR for k in self.kinds)

    def broadcast(self, dims: int) -> FrftOrder:
        """Repeat a single angle over ``dims`` axes; otherwise check the count."""
        if self.dims == dims:
            return self
        if self.dims == 1:
            return FrftOrder(self.angles * dims)
        raise InvalidArgumentError(f"order has {self.dims} angles, field has {dims} axes")

    def require_regular(self) -> None:
        for k, kind in enumerate(self.kinds):
            if kind is not AxisKind.REGULAR:
                raise InvalidOrderError(
                    f"axis {k} has angle {self.angles[k]!r} ({kind.value}); cot(alpha) is singular there"
                )

    def __neg__(self) -> FrftOrder:
        return FrftOrder(tuple(-a for a in self.angles))


def chirp(order: FrftOrder, grid: Grid, sign: int = 1) -> ComplexField:
    """The chirp ``exp(i * sign * sum_k a_k x_k^2)`` sampled on ``grid``."""
    if sign not in (1, -1):
        raise InvalidArgumentError(f"sign must be +1 or -1, got {sign!r}")
    order = order.broadcast(grid.dims)
    order.require_regular()
    phase = np.zeros(grid.shape)
    for k, x in enumerate(grid.mesh()):
        phase = phase + order.a[k] * x**2
    return ComplexField(grid, np.exp(1j * sign * phase))
