"""Periodic-channel grids, discrete calculus, and traveling-wave diagnostics.

The channel is periodic in x with period L and bounded in y by rigid walls
at y = d_minus and y = d_plus.  Scalar fields are stored row-major with
shape (ny, nx): the y index is the outer one, so meridional slices are
contiguous.  All derivative stencils are second order: central differences
with periodic wrap in x, central differences at interior y rows, and
second-order one-sided stencils at the two boundary rows.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, FieldFormatError, ShapeError

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class ChannelGeometry:
    """Zonal period L and meridional band [d_minus, d_plus]."""

    L: float
    d_minus: float
    d_plus: float

    def __post_init__(self):
        if not (self.L > 0 and math.isfinite(self.L)):
            raise DomainError(f"zonal period must be positive and finite, got L={self.L}")
        if not (self.d_plus > self.d_minus):
            raise DomainError(
                f"band endpoints must satisfy d_minus < d_plus, got [{self.d_minus}, {self.d_plus}]"
            )

    @property
    def width(self) -> float:
        return self.d_plus - self.d_minus

    @property
    def half_width(self) -> float:
        return 0.5 * (self.d_plus - self.d_minus)

    def centered(self) -> "ChannelGeometry":
        """Translate the band so it becomes [-d, d] with d the half width."""
        d = self.half_width
        return ChannelGeometry(self.L, -d, d)


@dataclass(frozen=True)
class Grid2D:
    """Uniform grid on the periodic channel.

    x nodes: x_i = i*hx for i = 0..nx-1 (node nx is identified with node 0).
    y nodes: y_j = d_minus + j*hy for j = 0..ny-1; both walls are nodes.
    """

    nx: int
    ny: int
    geometry: ChannelGeometry

    def __post_init__(self):
        if self.nx < 8 or self.nx % 2 != 0:
            raise DomainError(f"nx must be even and >= 8, got {self.nx}")
        if self.ny < 9:
            raise DomainError(f"ny must be >= 9, got {self.ny}")

    @property
    def hx(self) -> float:
        return self.geometry.L / self.nx

    @property
    def hy(self) -> float:
        return self.geometry.width / (self.ny - 1)

    @property
    def x(self) -> np.ndarray:
        return self.hx * np.arange(self.nx)

    @property
    def y(self) -> np.ndarray:
        return self.geometry.d_minus + self.hy * np.arange(self.ny)

    def mesh(self):
        """Return (X, Y) coordinate arrays of shape (ny, nx)."""
        return np.meshgrid(self.x, self.y)

    @property
    def shape(self):
        return (self.ny, self.nx)


def _as_field(field, grid: Grid2D) -> np.ndarray:
    f = np.asarray(field, dtype=float)
    if f.shape != grid.shape:
        raise ShapeError(f"field shape {f.shape} does not match grid {grid.shape}")
    return f


def gradient(field, grid: Grid2D):
    """Second-order (f_x, f_y): periodic central in x, one-sided at y walls."""
    f = _as_field(field, grid)
    hx, hy = grid.hx, grid.hy

    fx = (np.roll(f, -1, axis=1) - np.roll(f, 1, axis=1)) / (2.0 * hx)

    fy = np.empty_like(f)
    fy[1:-1] = (f[2:] - f[:-2]) / (2.0 * hy)
    fy[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * hy)
    fy[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * hy)
    return fx, fy


def laplacian(field, grid: Grid2D) -> np.ndarray:
    """Five-point Laplacian, periodic in x, one-sided second-order at y walls."""
    f = _as_field(field, grid)
    if grid.ny < 5:
        raise DomainError("laplacian needs ny >= 5")
    hx, hy = grid.hx, grid.hy

    fxx = (np.roll(f, -1, axis=1) - 2.0 * f + np.roll(f, 1, axis=1)) / (hx * hx)

    fyy = np.empty_like(f)
    fyy[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / (hy * hy)
    fyy[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (hy * hy)
    fyy[-1] = (2.0 * f[-1] - 5.0 * f[-2] + 4.0 * f[-3] - f[-4]) / (hy * hy)
    return fxx + fyy


@dataclass(frozen=True)
class WaveField:
    """Gridded traveling wave: velocities (u, v), wave speed c, Coriolis gradient beta.

    The frame moves with the wave, so u and v are functions of (x - c t, y)
    sampled at t = 0.  Fields are immutable after construction; meta is an
    optional constructor-provided annotation that is never serialized.
    """

    grid: Grid2D
    u: np.ndarray
    v: np.ndarray
    c: float
    beta: float
    meta: dict | None = None

    def __post_init__(self):
        u = _as_field(self.u, self.grid)
        v = _as_field(self.v, self.grid)
        if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
            raise DomainError("velocity fields must be finite")
        if not (math.isfinite(self.c) and math.isfinite(self.beta)):
            raise DomainError("c and beta must be finite")
        if self.beta < 0:
            raise DomainError(f"beta must be >= 0, got {self.beta}")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        u.setflags(write=False)
        v.setflags(write=False)


@dataclass(frozen=True)
class FieldDiagnostics:
    """Residual norms of the traveling-wave governing equations.

    residual_inf is the sup norm of (u - c) * lap(v) + v * (beta - lap(u)),
    which vanishes identically for an exact traveling wave; residual_rel
    divides by the natural term-by-term scale so thresholds are scale free.
    """

    div_inf: float
    residual_inf: float
    residual_rel: float
    boundary_v_inf: float
    gamma: np.ndarray
    total_vorticity: np.ndarray


def diagnostics(field: WaveField) -> FieldDiagnostics:
    """Divergence, momentum residual, boundary leakage, and vorticity fields."""
    grid = field.grid
    u, v, c, beta = field.u, field.v, field.c, field.beta

    ux, uy = gradient(u, grid)
    vx, vy = gradient(v, grid)
    lap_u = laplacian(u, grid)
    lap_v = laplacian(v, grid)

    div = ux + vy
    residual = (u - c) * lap_v + v * (beta - lap_u)
    scale = (
        float(np.max(np.abs(u - c))) * float(np.max(np.abs(lap_v)))
        + float(np.max(np.abs(v))) * float(np.max(np.abs(beta - lap_u)))
        + _EPS
    )

    gamma = vx - uy
    _, Y = grid.mesh()
    return FieldDiagnostics(
        div_inf=float(np.max(np.abs(div))),
        residual_inf=float(np.max(np.abs(residual))),
        residual_rel=float(np.max(np.abs(residual))) / scale,
        boundary_v_inf=float(max(np.max(np.abs(v[0])), np.max(np.abs(v[-1])))),
        gamma=gamma,
        total_vorticity=gamma + beta * Y,
    )


# ----------------------------------------------------------------------
# Wave-field file format: a single JSON document with keys
# {nx, ny, L, d_minus, d_plus, c, beta, u, v}, u and v row-major
# ny rows x nx columns of finite doubles.
# ----------------------------------------------------------------------

_FIELD_KEYS = ("nx", "ny", "L", "d_minus", "d_plus", "c", "beta", "u", "v")


def field_to_dict(field: WaveField) -> dict:
    g = field.grid
    return {
        "nx": g.nx,
        "ny": g.ny,
        "L": g.geometry.L,
        "d_minus": g.geometry.d_minus,
        "d_plus": g.geometry.d_plus,
        "c": field.c,
        "beta": field.beta,
        "u": field.u.tolist(),
        "v": field.v.tolist(),
    }


def field_from_dict(doc: dict) -> WaveField:
    missing = [k for k in _FIELD_KEYS if k not in doc]
    if missing:
        raise FieldFormatError(f"wave-field document missing keys: {missing}")
    try:
        nx = int(doc["nx"])
        ny = int(doc["ny"])
        geom = ChannelGeometry(float(doc["L"]), float(doc["d_minus"]), float(doc["d_plus"]))
        grid = Grid2D(nx, ny, geom)
        u = np.asarray(doc["u"], dtype=float)
        v = np.asarray(doc["v"], dtype=float)
    except (TypeError, ValueError, DomainError) as exc:
        raise FieldFormatError(f"malformed wave-field document: {exc}") from exc
    if u.shape != (ny, nx) or v.shape != (ny, nx):
        raise FieldFormatError(
            f"u/v shapes {u.shape}/{v.shape} do not match declared ({ny}, {nx})"
        )
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise FieldFormatError("u/v contain NaN or Inf")
    try:
        return WaveField(grid, u, v, float(doc["c"]), float(doc["beta"]))
    except (TypeError, ValueError, DomainError) as exc:
        raise FieldFormatError(f"malformed wave-field document: {exc}") from exc


def write_field(field: WaveField, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(field_to_dict(field), fh, sort_keys=True)
        fh.write("\n")


def read_field(path) -> WaveField:
    try:
        with open(path, "r", encoding="ascii") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FieldFormatError(f"cannot read wave-field file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise FieldFormatError("wave-field file must hold a JSON object")
    return field_from_dict(doc)
