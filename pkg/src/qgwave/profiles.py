"""Closed-form shear profiles u0(y) with exact first and second derivatives.

Every profile evaluates (u0, u0', u0'') in closed form so the eigenvalue
solver never differentiates numerically.  band_extrema certifies extrema and
monotonicity of a profile over a band [-d, d]: analytically for linear and
quadratic kinds, otherwise by a dense scan refined with golden-section
search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, ProfileSpecError
from .golden import golden_min

_SCAN_POINTS = 4097
_REFINE_TOL = 1e-12


class ShearProfile:
    """Base class: subclasses provide eval() and a spec string."""

    kind = "abstract"

    def eval(self, y):
        """Return (u0, u0', u0'') at y; accepts scalars or arrays."""
        raise NotImplementedError

    def u0(self, y):
        return self.eval(y)[0]

    def spec(self) -> str:
        raise NotImplementedError

    def scaled(self, a: float) -> "ShearProfile":
        """Profile a*u0 with derivatives scaled accordingly."""
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"scale factor must be positive, got {a}")
        return _Scaled(self, a)

    def __repr__(self):
        return f"<ShearProfile {self.spec()}>"


@dataclass(frozen=True)
class LinearProfile(ShearProfile):
    """u0(y) = a*y + b."""

    a: float
    b: float = 0.0
    kind = "linear"

    def eval(self, y):
        y = np.asarray(y, dtype=float)
        return self.a * y + self.b, np.full_like(y, self.a), np.zeros_like(y)

    def spec(self):
        return f"linear:{self.a:g},{self.b:g}"

    def scaled(self, a):
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"scale factor must be positive, got {a}")
        return LinearProfile(a * self.a, a * self.b)


def couette() -> LinearProfile:
    """The Couette profile u0(y) = y."""
    return LinearProfile(1.0, 0.0)


@dataclass(frozen=True)
class ConcaveParabola(ShearProfile):
    """u0(y) = -y^2 + b*y + e, so u0'' = -2 everywhere.

    The offset e shifts u0 but cancels from u0 - u0_min, so the eigenvalue
    problems built on this profile do not depend on it.
    """

    b: float
    e: float = 0.0
    kind = "parabola"

    def eval(self, y):
        y = np.asarray(y, dtype=float)
        return -y * y + self.b * y + self.e, -2.0 * y + self.b, np.full_like(y, -2.0)

    def spec(self):
        return f"parabola:{self.b:g},{self.e:g}"

    def scaled(self, a):
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"scale factor must be positive, got {a}")
        return Polynomial((a * self.e, a * self.b, -a))


@dataclass(frozen=True)
class CouettePoiseuille(ShearProfile):
    """u0(y) = gamma*y + (1 - gamma)*y^2."""

    gamma: float
    kind = "cp"

    def eval(self, y):
        y = np.asarray(y, dtype=float)
        g = self.gamma
        return g * y + (1.0 - g) * y * y, g + 2.0 * (1.0 - g) * y, np.full_like(y, 2.0 - 2.0 * g)

    def spec(self):
        return f"cp:{self.gamma:g}"

    def scaled(self, a):
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"scale factor must be positive, got {a}")
        return Polynomial((0.0, a * self.gamma, a * (1.0 - self.gamma)))


@dataclass(frozen=True)
class Bickley(ShearProfile):
    """The jet profile u0(y) = -sech^2(y)."""

    kind = "bickley"

    def eval(self, y):
        y = np.asarray(y, dtype=float)
        s = 1.0 / np.cosh(y)
        t = np.tanh(y)
        s2 = s * s
        return -s2, 2.0 * s2 * t, 2.0 * s2 * s2 - 4.0 * s2 * t * t

    def spec(self):
        return "bickley"


#: |y| where u0'' of the Bickley jet changes sign: ln(2 + sqrt(3)) / 2.
BICKLEY_INFLECTION = 0.5 * math.log(2.0 + math.sqrt(3.0))


@dataclass(frozen=True)
class Kolmogorov(ShearProfile):
    """u0(y) = sin(y)."""

    kind = "kolmogorov"

    def eval(self, y):
        y = np.asarray(y, dtype=float)
        return np.sin(y), np.cos(y), -np.sin(y)

    def spec(self):
        return "kolmogorov"


class Polynomial(ShearProfile):
    """u0(y) = c0 + c1*y + c2*y^2 + ...; Horner evaluation, exact derivatives."""

    kind = "poly"

    def __init__(self, coeffs: Iterable[float]):
        coeffs = tuple(float(c) for c in coeffs)
        if not coeffs:
            raise DomainError("polynomial profile needs at least one coefficient")
        self.coeffs = coeffs
        self._d1 = tuple(k * c for k, c in enumerate(coeffs))[1:]
        self._d2 = tuple(k * c for k, c in enumerate(self._d1))[1:]

    @staticmethod
    def _horner(coeffs, y):
        acc = np.zeros_like(y)
        for c in reversed(coeffs):
            acc = acc * y + c
        return acc

    def eval(self, y):
        y = np.asarray(y, dtype=float)
        return (
            self._horner(self.coeffs, y),
            self._horner(self._d1, y) if self._d1 else np.zeros_like(y),
            self._horner(self._d2, y) if self._d2 else np.zeros_like(y),
        )

    def spec(self):
        return "poly:" + ",".join(f"{c:g}" for c in self.coeffs)

    def scaled(self, a):
        if not (a > 0 and math.isfinite(a)):
            raise DomainError(f"scale factor must be positive, got {a}")
        return Polynomial(tuple(a * c for c in self.coeffs))

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("poly", self.coeffs))


class _Scaled(ShearProfile):
    """a * u0 for kinds without a closed-form scaled representative."""

    kind = "scaled"

    def __init__(self, inner: ShearProfile, a: float):
        self.inner = inner
        self.a = float(a)

    def eval(self, y):
        u0, u0p, u0pp = self.inner.eval(y)
        return self.a * u0, self.a * u0p, self.a * u0pp

    def spec(self):
        return f"scaled:{self.a:g}*({self.inner.spec()})"


def parse_profile(spec: str) -> ShearProfile:
    """Parse the CLI grammar: couette | linear:a,b | parabola:b,e | cp:gamma
    | bickley | kolmogorov | poly:c0,c1,...
    """
    spec = spec.strip()
    head, _, arg = spec.partition(":")
    head = head.lower()

    def floats(expected=None):
        if not arg:
            raise ProfileSpecError(f"profile '{spec}': missing parameters")
        try:
            vals = [float(tok) for tok in arg.split(",")]
        except ValueError as exc:
            raise ProfileSpecError(f"profile '{spec}': bad number ({exc})") from exc
        if expected is not None and len(vals) != expected:
            raise ProfileSpecError(
                f"profile '{spec}': expected {expected} parameters, got {len(vals)}"
            )
        return vals

    if head == "couette":
        if arg:
            raise ProfileSpecError("couette takes no parameters")
        return couette()
    if head == "linear":
        a, b = floats(2)
        return LinearProfile(a, b)
    if head == "parabola":
        b, e = floats(2)
        return ConcaveParabola(b, e)
    if head == "cp":
        (gamma,) = floats(1)
        return CouettePoiseuille(gamma)
    if head == "bickley":
        if arg:
            raise ProfileSpecError("bickley takes no parameters")
        return Bickley()
    if head == "kolmogorov":
        if arg:
            raise ProfileSpecError("kolmogorov takes no parameters")
        return Kolmogorov()
    if head == "poly":
        return Polynomial(floats())
    raise ProfileSpecError(f"unknown profile kind '{head}'")


@dataclass(frozen=True)
class ProfileOnBand:
    """A profile restricted to [-d, d] with certified extrema.

    orientation is 'increasing' or 'decreasing' when u0' keeps a strict sign
    on the whole band, else 'none'; monotone is True exactly in the first two
    cases.
    """

    profile: ShearProfile
    d: float
    u0_min: float
    u0_max: float
    u0pp_min: float
    u0pp_max: float
    monotone: bool
    orientation: str


def _refined_extrema(f, xs, vals):
    """Min/max of f over [xs[0], xs[-1]] from samples plus golden refinement."""
    lo_idx = int(np.argmin(vals))
    hi_idx = int(np.argmax(vals))
    vmin = float(vals[lo_idx])
    vmax = float(vals[hi_idx])
    if 0 < lo_idx < len(xs) - 1:
        _, v = golden_min(lambda t: float(f(t)), xs[lo_idx - 1], xs[lo_idx + 1], _REFINE_TOL)
        vmin = min(vmin, v)
    if 0 < hi_idx < len(xs) - 1:
        _, v = golden_min(lambda t: -float(f(t)), xs[hi_idx - 1], xs[hi_idx + 1], _REFINE_TOL)
        vmax = max(vmax, -v)
    return vmin, vmax


def band_extrema(profile: ShearProfile, d: float) -> ProfileOnBand:
    """Certify u0 and u0'' extrema and monotonicity over [-d, d]."""
    if not (d > 0 and math.isfinite(d)):
        raise DomainError(f"band half-width must be positive, got d={d}")

    if isinstance(profile, LinearProfile):
        lo = profile.a * -d + profile.b
        hi = profile.a * d + profile.b
        monotone = profile.a != 0.0
        orientation = "increasing" if profile.a > 0 else ("decreasing" if profile.a < 0 else "none")
        return ProfileOnBand(profile, d, min(lo, hi), max(lo, hi), 0.0, 0.0, monotone, orientation)

    if isinstance(profile, ConcaveParabola):
        crit = 0.5 * profile.b
        vals = [float(profile.eval(y)[0]) for y in (-d, d)]
        if -d < crit < d:
            vals.append(float(profile.eval(crit)[0]))
        monotone = abs(crit) > d
        orientation = "none"
        if monotone:
            orientation = "increasing" if profile.b > 0 else "decreasing"
        return ProfileOnBand(profile, d, min(vals), max(vals), -2.0, -2.0, monotone, orientation)

    if isinstance(profile, CouettePoiseuille):
        g = profile.gamma
        upp = 2.0 - 2.0 * g
        vals = [float(profile.eval(y)[0]) for y in (-d, d)]
        # u0' = g + 2(1-g) y vanishes at crit (unless the profile is linear)
        crit = None if g == 1.0 else -g / (2.0 * (1.0 - g))
        if crit is not None and -d < crit < d:
            vals.append(float(profile.eval(crit)[0]))
        if crit is not None and -d <= crit <= d:
            monotone, orientation = False, "none"
        else:
            slope_mid = float(profile.eval(0.0)[1])
            monotone = slope_mid != 0.0
            orientation = (
                "increasing" if slope_mid > 0 else ("decreasing" if slope_mid < 0 else "none")
            )
        return ProfileOnBand(profile, d, min(vals), max(vals), upp, upp, monotone, orientation)

    ys = np.linspace(-d, d, _SCAN_POINTS)
    u0, u0p, u0pp = profile.eval(ys)

    u0_min, u0_max = _refined_extrema(lambda t: profile.eval(t)[0], ys, u0)
    upp_min, upp_max = _refined_extrema(lambda t: profile.eval(t)[2], ys, u0pp)
    slope_min, slope_max = _refined_extrema(lambda t: profile.eval(t)[1], ys, u0p)

    if slope_min > 0.0:
        monotone, orientation = True, "increasing"
    elif slope_max < 0.0:
        monotone, orientation = True, "decreasing"
    else:
        monotone, orientation = False, "none"

    return ProfileOnBand(profile, d, u0_min, u0_max, upp_min, upp_max, monotone, orientation)
