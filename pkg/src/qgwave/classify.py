"""Wave-speed classification and rigidity predicates for gridded fields.

A genuine traveling wave with beta > 0 must have its speed c in one of four
categories: a generalized inflection value ({beta - lap u = 0} meets
{u = c}), a critical value ({grad u = 0} meets {u = c}), an extremum of u,
or a speed in [c_beta_plus, u_min) below the range of u.  With beta = 0 only
the inflection category survives.  Exact zero-set intersections are
undecidable on a grid, so level sets are detected by sign changes across
grid edges together with scaled node tolerances, and every witness node is
reported so the verdict can be audited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import Grid2D, WaveField, gradient, laplacian
from .errors import DomainError
from .profiles import ShearProfile, band_extrema

GENUINE_REL_TOL = 1e-8
DEFAULT_EPS_SCALE = 2.0
_MAX_WITNESSES = 32


def c_beta_plus(beta: float, d_minus: float, d_plus: float, u_min: float, u_max: float) -> float:
    """Lower speed bound below which no genuine wave can travel.

    c_beta_plus = u_min - beta W^2 / (2 pi^2)
                  - (W^2 / (2 pi^2)) sqrt(beta^2 + 4 pi^2 beta (u_max - u_min) / W^2)

    with W = d_plus - d_minus.  For beta = 0 this collapses to u_min.
    """
    if beta < 0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    if not d_plus > d_minus:
        raise DomainError(f"need d_minus < d_plus, got [{d_minus}, {d_plus}]")
    if u_max < u_min:
        raise DomainError(f"need u_min <= u_max, got [{u_min}, {u_max}]")
    W2 = (d_plus - d_minus) ** 2
    half = W2 / (2.0 * math.pi**2)
    disc = beta * beta + 4.0 * math.pi**2 * beta * (u_max - u_min) / W2
    return u_min - beta * half - half * math.sqrt(disc)


def _level_mask(f: np.ndarray, eps: float) -> np.ndarray:
    """Nodes on or adjacent to the zero level set of f.

    A node qualifies when |f| <= eps or when f changes sign across one of
    its grid edges (periodic in x); a sign change certifies a continuum zero
    crossing within one cell.
    """
    mask = np.abs(f) <= eps
    change_x = f * np.roll(f, -1, axis=1) < 0.0
    mask |= change_x | np.roll(change_x, 1, axis=1)
    change_y = f[:-1] * f[1:] < 0.0
    mask[:-1] |= change_y
    mask[1:] |= change_y
    return mask


def _witnesses(mask: np.ndarray, grid: Grid2D, score: np.ndarray):
    """Strongest witness nodes first: smallest score = most convincing."""
    idx = np.argwhere(mask)
    count = int(idx.shape[0])
    if count:
        order = np.argsort(score[mask], kind="stable")[:_MAX_WITNESSES]
        idx = idx[order]
    xs, ys = grid.x, grid.y
    out = tuple(
        {"iy": int(j), "ix": int(i), "x": float(xs[i]), "y": float(ys[j])}
        for j, i in idx[:_MAX_WITNESSES]
    )
    return out, count


@dataclass(frozen=True)
class ClassificationReport:
    """Per-category verdicts with the numerical evidence behind each.

    theorem_consistent asserts what the classification theorem demands: a
    genuine wave with beta > 0 must land in at least one category, and a
    genuine wave with beta = 0 must have an inflection-value speed.  It is
    vacuously true for shear flows.
    """

    genuine: bool
    v_max: float
    u_min: float
    u_max: float
    c: float
    beta: float
    c_beta_plus: float
    category_inflection: bool
    inflection_witnesses: tuple
    inflection_count: int
    category_critical: bool
    critical_witnesses: tuple
    critical_count: int
    category_extremum: bool
    category_outside: bool
    eps_scale: float
    eps_c: float
    eps_g: float
    eps_q: float
    h_max: float
    theorem_consistent: bool

    def categories(self) -> tuple:
        cats = []
        if self.category_inflection:
            cats.append("inflection")
        if self.category_critical:
            cats.append("critical")
        if self.category_extremum:
            cats.append("extremum")
        if self.category_outside:
            cats.append("outside")
        return tuple(cats)

    def to_dict(self) -> dict:
        return {
            "genuine": self.genuine,
            "v_max": self.v_max,
            "u_min": self.u_min,
            "u_max": self.u_max,
            "c": self.c,
            "beta": self.beta,
            "c_beta_plus": self.c_beta_plus,
            "category_inflection": self.category_inflection,
            "inflection_witnesses": list(self.inflection_witnesses),
            "inflection_count": self.inflection_count,
            "category_critical": self.category_critical,
            "critical_witnesses": list(self.critical_witnesses),
            "critical_count": self.critical_count,
            "category_extremum": self.category_extremum,
            "category_outside": self.category_outside,
            "eps_scale": self.eps_scale,
            "eps_c": self.eps_c,
            "eps_g": self.eps_g,
            "eps_q": self.eps_q,
            "h_max": self.h_max,
            "theorem_consistent": self.theorem_consistent,
            "categories": list(self.categories()),
        }


def _tolerances(field: WaveField, eps_scale: float):
    grid = field.grid
    u = field.u
    h_max = max(grid.hx, grid.hy)

    ux, uy = gradient(u, grid)
    grad_mag = np.hypot(ux, uy)

    uxx, uxy = gradient(ux, grid)
    uyx, uyy = gradient(uy, grid)
    second = max(
        float(np.max(np.abs(uxx))),
        float(np.max(np.abs(uxy))),
        float(np.max(np.abs(uyx))),
        float(np.max(np.abs(uyy))),
    )

    lap_u = laplacian(u, grid)
    qx, qy = gradient(lap_u, grid)
    third = float(np.max(np.hypot(qx, qy)))

    eps_c = eps_scale * h_max * float(np.max(grad_mag))
    eps_g = eps_scale * h_max * second
    eps_q = eps_scale * h_max * third
    return h_max, grad_mag, lap_u, eps_c, eps_g, eps_q


def classify(field: WaveField, eps_scale: float = DEFAULT_EPS_SCALE) -> ClassificationReport:
    """Evaluate every wave-speed category of the classification theorem."""
    if not (eps_scale > 0):
        raise DomainError(f"eps_scale must be positive, got {eps_scale}")
    grid = field.grid
    u, v, c, beta = field.u, field.v, field.c, field.beta

    h_max, grad_mag, lap_u, eps_c, eps_g, eps_q = _tolerances(field, eps_scale)

    v_max = float(np.max(np.abs(v)))
    u_min = float(np.min(u))
    u_max = float(np.max(u))
    genuine = v_max > GENUINE_REL_TOL * (1.0 + float(np.max(np.abs(u))))

    cbp = c_beta_plus(beta, grid.geometry.d_minus, grid.geometry.d_plus, u_min, u_max)

    tiny = np.finfo(float).tiny
    speed_gap = np.abs(u - c)
    quantity = np.abs(beta - lap_u)
    level_u = _level_mask(u - c, eps_c)
    level_q = _level_mask(beta - lap_u, eps_q)

    inflection_mask = level_u & level_q
    category_inflection = bool(np.any(inflection_mask))
    inflection_witnesses, inflection_count = _witnesses(
        inflection_mask, grid, speed_gap / (eps_c + tiny) + quantity / (eps_q + tiny)
    )

    critical_mask = level_u & (grad_mag <= eps_g)
    category_critical = bool(np.any(critical_mask))
    critical_witnesses, critical_count = _witnesses(
        critical_mask, grid, speed_gap / (eps_c + tiny) + grad_mag / (eps_g + tiny)
    )

    category_extremum = abs(c - u_min) <= eps_c or abs(c - u_max) <= eps_c

    # Half-open with tolerance: the theorem states c in [c_beta_plus, u_min),
    # with u_min itself excluded.
    category_outside = (cbp - eps_c) <= c < (u_min - eps_c)

    if not genuine:
        theorem_consistent = True
    elif beta > 0:
        theorem_consistent = (
            category_inflection or category_critical or category_extremum or category_outside
        )
    else:
        theorem_consistent = category_inflection

    return ClassificationReport(
        genuine=genuine,
        v_max=v_max,
        u_min=u_min,
        u_max=u_max,
        c=c,
        beta=beta,
        c_beta_plus=cbp,
        category_inflection=category_inflection,
        inflection_witnesses=inflection_witnesses,
        inflection_count=inflection_count,
        category_critical=category_critical,
        critical_witnesses=critical_witnesses,
        critical_count=critical_count,
        category_extremum=category_extremum,
        category_outside=category_outside,
        eps_scale=eps_scale,
        eps_c=eps_c,
        eps_g=eps_g,
        eps_q=eps_q,
        h_max=h_max,
        theorem_consistent=theorem_consistent,
    )


@dataclass(frozen=True)
class HypothesisCheck:
    condition: str
    satisfied: bool
    evidence: dict

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "satisfied": self.satisfied,
            "evidence": self.evidence,
        }


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    hypotheses: tuple
    conclusion: str

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "conclusion": self.conclusion,
        }


@dataclass(frozen=True)
class RigidityVerdict:
    """Hypothesis-by-hypothesis evaluation of the rigidity theorems.

    Each theorem concludes "shear flow" only when every one of its
    hypotheses is satisfied numerically with margin; otherwise the failed
    conditions are listed with their evidence.
    """

    applicable_theorems: tuple

    def shear_concluded(self) -> bool:
        return any(t.conclusion == "shear flow" for t in self.applicable_theorems)

    def to_dict(self) -> dict:
        return {"applicable_theorems": [t.to_dict() for t in self.applicable_theorems]}


def _directional_margin(f: np.ndarray, grid: Grid2D, eps_scale: float) -> float:
    """Uncertainty of extending nodal extrema of f to the continuum band.

    Half-cell quantization per axis, weighted by the directional slopes, so
    fields that vary only in y are not penalized for a coarse x spacing.
    """
    fx, fy = gradient(f, grid)
    return (
        eps_scale
        * 0.5
        * (grid.hx * float(np.max(np.abs(fx))) + grid.hy * float(np.max(np.abs(fy))))
    )


def rigidity_predicates(field: WaveField, eps_scale: float = DEFAULT_EPS_SCALE) -> RigidityVerdict:
    """Check the rigidity sufficient conditions on a discrete field.

    Ran(lap u) is taken over interior rows only, where the centered stencils
    apply; the two one-sided boundary rows are noisier and the hypotheses
    concern open-set behavior.
    """
    grid = field.grid
    u, c, beta = field.u, field.c, field.beta

    _, grad_mag, lap_u, _, _, _ = _tolerances(field, eps_scale)
    eps_c = _directional_margin(u, grid, eps_scale)
    eps_g = _directional_margin(grad_mag, grid, eps_scale)
    eps_q = _directional_margin(lap_u, grid, eps_scale)

    lap_int = lap_u[1:-1]
    lap_min = float(np.min(lap_int))
    lap_max = float(np.max(lap_int))
    grad_min = float(np.min(grad_mag))
    u_min = float(np.min(u))
    u_max = float(np.max(u))
    cbp = c_beta_plus(beta, grid.geometry.d_minus, grid.geometry.d_plus, u_min, u_max)

    beta_outside_ran = HypothesisCheck(
        "beta outside Ran(lap u) with margin",
        beta < lap_min - eps_q or beta > lap_max + eps_q,
        {"beta": beta, "lap_u_min": lap_min, "lap_u_max": lap_max, "margin": eps_q},
    )
    beta_positive = HypothesisCheck(
        "beta > 0", beta > 0.0, {"beta": beta}
    )
    beta_zero = HypothesisCheck(
        "beta = 0", beta == 0.0, {"beta": beta}
    )
    speed_gap = HypothesisCheck(
        "c outside [c_beta_plus, u_min] with margin",
        c < cbp - eps_c or c > u_min + eps_c,
        {"c": c, "c_beta_plus": cbp, "u_min": u_min, "margin": eps_c},
    )
    grad_nonzero = HypothesisCheck(
        "grad u nonzero everywhere with margin",
        grad_min > eps_g,
        {"grad_u_min": grad_min, "margin": eps_g},
    )
    lap_positive = HypothesisCheck(
        "min lap u > 0 with margin",
        lap_min > eps_q,
        {"lap_u_min": lap_min, "margin": eps_q},
    )
    beta_window = HypothesisCheck(
        "0 < beta < min lap u",
        0.0 < beta < lap_min - eps_q,
        {"beta": beta, "lap_u_min": lap_min, "margin": eps_q},
    )
    lap_nonzero = HypothesisCheck(
        "lap u nonzero everywhere with margin",
        lap_min > eps_q or lap_max < -eps_q,
        {"lap_u_min": lap_min, "lap_u_max": lap_max, "margin": eps_q},
    )

    def check(name, hyps):
        ok = all(h.satisfied for h in hyps)
        return TheoremCheck(name, tuple(hyps), "shear flow" if ok else "not applicable")

    theorems = (
        check(
            "rayleigh_stable_speed_gap",
            [beta_positive, beta_outside_ran, speed_gap, grad_nonzero],
        ),
        check("rayleigh_stable_f_plane", [beta_zero, beta_outside_ran]),
        check("positive_vorticity_gradient_window", [lap_positive, beta_window]),
        check("sign_definite_laplacian_f_plane", [beta_zero, lap_nonzero]),
    )
    return RigidityVerdict(applicable_theorems=theorems)


def profile_rigidity_bound(profile: ShearProfile, d: float, beta: float):
    """Admissible perturbation radius (u0'')_min - beta for shear rigidity.

    A traveling wave whose lap u stays within this radius of u0'' must be a
    shear flow when the radius is positive; returns (threshold, satisfied).
    """
    if not (d > 0):
        raise DomainError(f"band half-width must be positive, got d={d}")
    band = band_extrema(profile, d)
    threshold = band.u0pp_min - beta
    return threshold, threshold > 0.0
