"""Principal eigenvalue of the (singular) Rayleigh-Kuo boundary-value problem.

The problem on the band (-d, d) is

    -phi'' - (beta - u0''(y)) / (u0(y) - c) * phi = lambda * phi,
    phi(-d) = phi(d) = 0,

for wave speeds c <= u0_min.  At c = u0_min the potential blows up like
1/(y + d) at the wall where a monotone profile attains its minimum; interior
collocation nodes never touch that wall, and the Dirichlet condition keeps
the discrete quadratic form bounded, so plain second-order differences
remain usable there.

Discretization: interior nodes y_j = -d + j*h, j = 1..N-1, h = 2d/N, giving
a symmetric tridiagonal matrix with diagonal 2/h^2 + V(y_j) and off-diagonal
-1/h^2.  Its smallest eigenvalue is extracted by Sturm-sequence bisection
(LAPACK stebz) to near machine precision; the grid is refined N -> 2N until
the Cauchy difference |lambda(N) - lambda(2N)| drops below the requested
tolerance.  Smooth (nonsingular) problems report the Richardson extrapolate
(4*lambda(2N) - lambda(N)) / 3; singular problems report lambda(2N) because
the singular wall breaks the clean h^2 error expansion the extrapolation
assumes.

Decreasing profiles are reflected y -> -y first, which leaves every
eigenvalue unchanged and pins the singular wall at y = -d, so a single code
path serves both orientations.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal, solve_banded

from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    NoRootError,
    UnsupportedSingularityError,
)
from .golden import golden_min
from .profiles import ProfileOnBand

DEFAULT_EIGEN_TOL = 1e-6
DEFAULT_ROOT_TOL = 1e-4
_N_START = 256
_N_MAX = 1 << 20
_BETA_BRACKET_GROWTH = 4.0
_BETA_MAX = 1e9


@dataclass(frozen=True)
class EigenProblem:
    """A validated eigenproblem: band, Coriolis gradient, and wave speed.

    The orientation is normalized so the profile increases across the band;
    the potential is evaluated through oriented closures, never by mutating
    the profile itself.
    """

    band: ProfileOnBand
    beta: float
    c: float
    singular: bool

    @staticmethod
    def make(band: ProfileOnBand, beta: float, c: float) -> "EigenProblem":
        if not math.isfinite(beta):
            raise DomainError(f"beta must be finite, got {beta}")
        if not math.isfinite(c):
            raise DomainError(f"c must be finite, got {c}")
        if c > band.u0_min:
            raise DomainError(
                f"wave speed c={c} exceeds the profile minimum u0_min={band.u0_min}"
            )
        singular = c == band.u0_min
        if singular and not band.monotone:
            raise UnsupportedSingularityError(
                "c = u0_min needs a certified monotone profile so the potential "
                "blows up only at one wall"
            )
        return EigenProblem(band, beta, c, singular)

    def potential(self) -> Callable[[np.ndarray], np.ndarray]:
        band, beta, c = self.band, self.beta, self.c
        prof = band.profile
        if band.orientation == "decreasing":

            def V(y):
                u0, _, u0pp = prof.eval(-y)
                return -(beta - u0pp) / (u0 - c)

        else:

            def V(y):
                u0, _, u0pp = prof.eval(y)
                return -(beta - u0pp) / (u0 - c)

        return V

    def speed_gap(self) -> Callable[[np.ndarray], np.ndarray]:
        """u0(y) - c on the oriented band (for eigenvalue derivatives)."""
        band, c = self.band, self.c
        prof = band.profile
        if band.orientation == "decreasing":
            return lambda y: prof.eval(-y)[0] - c
        return lambda y: prof.eval(y)[0] - c


@dataclass(frozen=True)
class EigenResult:
    """Principal eigenvalue with its ground-state vector and convergence data.

    eigvec holds the interior-node eigenfunction samples on the final grid,
    sign-normalized positive and L2-normalized by the trapezoid rule (the
    wall values are zero).  history records (intervals, eigenvalue) for each
    rung of the refinement ladder; est_error is the last Cauchy difference.
    """

    lambda1: float
    eigvec: Optional[np.ndarray]
    n_used: int
    extrapolated: bool
    est_error: float
    history: tuple


def _rayleigh_quotient(vec, Vy, h):
    """Quadratic form of the discretization evaluated without cancellation.

    vec' T vec  ==  sum((vec_{i+1} - vec_i)^2) / h^2 + sum(V_i vec_i^2)
    with the Dirichlet zeros appended, so every term stays O(1) even though
    the matrix norm grows like 1/h^2; the bisection eigenvalue alone is only
    accurate to eps * ||T||, which would poison the refinement ladder at
    tight tolerances.
    """
    edges = np.diff(vec, prepend=0.0, append=0.0)
    num = float(edges @ edges) / (h * h) + float(Vy @ (vec * vec))
    return num / float(vec @ vec)


def _solve_rung(V, d, n):
    """Smallest eigenvalue and ground-state vector on N = n intervals.

    Sturm-sequence bisection isolates the eigenvalue, inverse iteration
    sharpens the eigenvector, and the stable Rayleigh quotient restores
    near-machine absolute accuracy for the eigenvalue itself.
    """
    h = 2.0 * d / n
    y = -d + h * np.arange(1, n)
    Vy = np.asarray(V(y), dtype=float)
    diag = 2.0 / (h * h) + Vy
    off = np.full(n - 2, -1.0 / (h * h))

    w, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, 0))
    lam = float(w[0])
    vec = vecs[:, 0]

    ab = np.zeros((3, n - 1))
    ab[0, 1:] = off
    ab[1] = diag - lam
    ab[2, :-1] = off
    try:
        refined = solve_banded((1, 1), ab, vec)
        norm = float(np.linalg.norm(refined))
        if norm > 0 and np.all(np.isfinite(refined)):
            vec = refined / norm
    except LinAlgError:
        pass  # shift numerically exact: the bisection vector is already the answer

    lam = _rayleigh_quotient(vec, Vy, h)
    if vec[int(np.argmax(np.abs(vec)))] < 0:
        vec = -vec
    vec = vec / math.sqrt(h * float(np.sum(vec * vec)))
    return lam, vec, h


def principal_eigenvalue(
    band: ProfileOnBand,
    beta: float,
    c: float,
    tol: float = DEFAULT_EIGEN_TOL,
    want_vector: bool = True,
    n_start: int = _N_START,
    n_max: int = _N_MAX,
) -> EigenResult:
    """Solve for the principal eigenvalue at (beta, c), refined to tol.

    Raises DomainError for c > u0_min, UnsupportedSingularityError for a
    singular request on a non-monotone band, and ConvergenceError (carrying
    the last two iterates) if the ladder reaches n_max without meeting tol.
    """
    if not (tol > 0):
        raise DomainError(f"tolerance must be positive, got {tol}")
    prob = EigenProblem.make(band, beta, c)
    V = prob.potential()
    d = band.d

    history = []
    n = n_start
    lam_prev, vec, _ = _solve_rung(V, d, n)
    history.append((n, lam_prev))
    while True:
        n2 = 2 * n
        if n2 > n_max:
            raise ConvergenceError(
                f"eigenvalue ladder reached N={n} without |lambda(N)-lambda(2N)| < {tol}",
                last_iterates=history[-2:],
            )
        lam, vec, _ = _solve_rung(V, d, n2)
        history.append((n2, lam))
        diff = abs(lam - lam_prev)
        if diff < tol:
            break
        n, lam_prev = n2, lam

    if prob.singular:
        lambda1 = lam
        extrapolated = False
    else:
        lambda1 = (4.0 * lam - lam_prev) / 3.0
        extrapolated = True

    eigvec = vec if want_vector else None

    return EigenResult(
        lambda1=lambda1,
        eigvec=eigvec,
        n_used=n2 - 1,
        extrapolated=extrapolated,
        est_error=diff,
        history=tuple(history),
    )


def _eigen_slope_beta(band: ProfileOnBand, beta: float, tol: float) -> tuple:
    """lambda1 and d(lambda1)/d(beta) at c = u0_min via the eigenvector.

    The potential depends on beta through -(beta - u0'')/(u0 - u0_min), so
    d(lambda1)/d(beta) = -integral(phi^2 / (u0 - u0_min)), evaluated by the
    trapezoid rule on the final grid.
    """
    res = principal_eigenvalue(band, beta, band.u0_min, tol=tol, want_vector=True)
    prob = EigenProblem.make(band, beta, band.u0_min)
    gap = prob.speed_gap()
    d = band.d
    n = res.n_used + 1
    h = 2.0 * d / n
    y = -d + h * np.arange(1, n)
    slope = -h * float(np.sum(res.eigvec**2 / gap(y)))
    return res.lambda1, slope


def critical_beta(band: ProfileOnBand, tol: float = DEFAULT_ROOT_TOL) -> float:
    """Transitional beta: the unique root of lambda1(beta, u0_min) = 0.

    lambda1 is strictly decreasing in beta with lambda1(0, u0_min) > 0 for a
    monotone profile and lambda1 -> -inf, so a geometric upward expansion of
    [0, 1] always brackets the root and plain bisection closes in on it.
    The inner eigenvalue tolerance follows the local slope d(lambda1)/d(beta)
    so the sign tests resolve the root to the requested beta tolerance at
    every band scale.
    """
    if not band.monotone:
        raise DomainError("critical_beta needs a monotone profile on the band")
    if not (tol > 0):
        raise DomainError(f"tolerance must be positive, got {tol}")

    scale = math.pi**2 / (4.0 * band.d * band.d)
    coarse = 1e-4 * scale

    def lam(beta_val, inner_tol):
        return principal_eigenvalue(
            band, beta_val, band.u0_min, tol=inner_tol, want_vector=False
        ).lambda1

    lo, f_lo = 0.0, lam(0.0, coarse)
    if f_lo <= 0.0:
        raise ConvergenceError(
            f"lambda1(0, u0_min) = {f_lo} <= 0; expected positive for a monotone profile"
        )
    hi, f_hi = 1.0, lam(1.0, coarse)
    while f_hi >= 0.0:
        lo, f_lo = hi, f_hi
        hi *= _BETA_BRACKET_GROWTH
        if hi > _BETA_MAX:
            raise DivergenceError(
                f"no sign change of lambda1 up to beta = {_BETA_MAX}"
            )
        f_hi = lam(hi, coarse)

    # Sharpen the endpoint signs at the slope-scaled tolerance before bisecting.
    _, slope = _eigen_slope_beta(band, hi, coarse)
    inner = min(coarse, max(abs(slope) * tol / 8.0, 1e-13 * scale))
    f_lo = lam(lo, inner)
    while f_lo <= 0.0:
        if lo == 0.0:
            raise ConvergenceError("lambda1(0, u0_min) <= 0 at refined tolerance")
        hi, f_hi = lo, f_lo
        lo = max(0.0, lo - max(tol, 8.0 * inner / abs(slope)))
        f_lo = lam(lo, inner)
    f_hi = lam(hi, inner)
    while f_hi >= 0.0:
        lo, f_lo = hi, f_hi
        hi += max(tol, 8.0 * inner / abs(slope))
        if hi > _BETA_MAX:
            raise DivergenceError(f"no sign change of lambda1 up to beta = {_BETA_MAX}")
        f_hi = lam(hi, inner)

    while hi - lo > 0.5 * tol:
        mid = 0.5 * (lo + hi)
        f_mid = lam(mid, inner)
        if f_mid > 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi)


def lambda_inf_over_c(band: ProfileOnBand, beta: float, tol: float = DEFAULT_EIGEN_TOL):
    """Minimize lambda1(beta, .) over wave speeds c in (-inf, u0_min].

    Parameterized as c = u0_min - t with t on {0} union a geometric grid;
    sampling stops once lambda1 is within tol of the c -> -inf limit
    pi^2/(4 d^2), after which a golden-section pass refines around the best
    sample.  Returns (inf_value, argmin_c); the argmin is one minimizer, with
    no uniqueness claim.
    """
    if not band.monotone:
        raise DomainError("lambda_inf_over_c needs a monotone profile on the band")
    if not (tol > 0):
        raise DomainError(f"tolerance must be positive, got {tol}")

    inner = tol / 4.0
    limit = math.pi**2 / (4.0 * band.d * band.d)

    def lam_at_t(t):
        return principal_eigenvalue(
            band, beta, band.u0_min - t, tol=inner, want_vector=False
        ).lambda1

    ts = [0.0]
    vals = [lam_at_t(0.0)]
    t = 1e-4
    for _ in range(80):
        val = lam_at_t(t)
        ts.append(t)
        vals.append(val)
        if abs(val - limit) < tol:
            break
        t *= 2.0

    best = int(np.argmin(vals))
    t_lo = ts[best - 1] if best > 0 else ts[0]
    t_hi = ts[best + 1] if best + 1 < len(ts) else ts[-1]
    best_t, best_val = ts[best], vals[best]
    if t_hi > t_lo:
        xtol = max(1e-6 * (1.0 + best_t), 1e-3 * (t_hi - t_lo))
        g_t, g_val = golden_min(lam_at_t, t_lo, t_hi, xtol)
        if g_val < best_val:
            best_t, best_val = g_t, g_val
    return best_val, band.u0_min - best_t


def wave_speed_root(
    band: ProfileOnBand, beta: float, L: float, tol: float = DEFAULT_ROOT_TOL
) -> float:
    """Wave speed c_L < u0_min with lambda1(beta, c_L) = -(2 pi / L)^2.

    Needs lambda1(beta, u0_min) < -(2 pi / L)^2, otherwise no root is
    guaranteed and NoRootError reports both values.  The far bracket is
    expanded geometrically (the c -> -inf limit pi^2/(4 d^2) is positive, so
    the expansion terminates), then bisection runs until the eigenvalue
    residual meets tol.  If the endpoint eigenvalue equals the target within
    tol, u0_min itself is returned, consistent with the c -> u0_min limit.
    """
    if not band.monotone:
        raise DomainError("wave_speed_root needs a monotone profile on the band")
    if not (L > 0):
        raise DomainError(f"zonal period must be positive, got {L}")
    if not (tol > 0):
        raise DomainError(f"tolerance must be positive, got {tol}")

    target = -((2.0 * math.pi / L) ** 2)
    inner = tol / 4.0

    def lam(c_val):
        return principal_eigenvalue(band, beta, c_val, tol=inner, want_vector=False).lambda1

    lam_end = lam(band.u0_min)
    if lam_end >= target:
        if abs(lam_end - target) < tol:
            return band.u0_min
        raise NoRootError(
            f"lambda1(beta, u0_min) = {lam_end} does not reach the target {target}; "
            "no wave-speed root is guaranteed",
            lambda_end=lam_end,
            target=target,
        )

    t = 1.0
    c_far = band.u0_min - t
    f_far = lam(c_far) - target
    while f_far <= 0.0:
        t *= _BETA_BRACKET_GROWTH
        if t > 1e12:
            raise DivergenceError("wave-speed bracket expansion exceeded 1e12")
        c_far = band.u0_min - t
        f_far = lam(c_far) - target

    c_lo, c_hi = c_far, band.u0_min  # f(c_lo) > 0 > f(c_hi)
    for _ in range(200):
        mid = 0.5 * (c_lo + c_hi)
        f_mid = lam(mid) - target
        if abs(f_mid) <= 0.75 * tol:
            return mid
        if f_mid > 0.0:
            c_lo = mid
        else:
            c_hi = mid
    raise ConvergenceError(
        f"wave-speed bisection did not reach residual {tol} in 200 steps"
    )


@dataclass(frozen=True)
class CurvePoint:
    """One sample of the rigidity/existence boundary curve.

    L_crit = 2 pi / sqrt(-lambda1) is the critical zonal period separating
    rigidity (shorter channels) from existence of nearby genuine waves
    (longer channels); it is None (infinite) while lambda1 >= 0.  error
    carries a per-point solver failure without aborting the sweep.
    """

    beta: float
    lambda1_at_u0min: Optional[float]
    L_crit: Optional[float]
    error: Optional[str] = None


def _worker_count() -> int:
    env = os.environ.get("QGWAVE_THREADS", "")
    try:
        n = int(env)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, n)


def boundary_curve(
    band: ProfileOnBand,
    beta_min: float,
    beta_max: float,
    n: int,
    tol: float = DEFAULT_EIGEN_TOL,
) -> list:
    """Sample (beta, lambda1(beta, u0_min), L_crit) on n evenly spaced betas.

    Points are evaluated concurrently (QGWAVE_THREADS caps the fan-out) but
    returned ordered by beta; solver failures flag their point and the sweep
    continues.
    """
    if not (beta_min < beta_max):
        raise DomainError(f"need beta_min < beta_max, got [{beta_min}, {beta_max}]")
    if n < 2:
        raise DomainError(f"need at least 2 samples, got {n}")

    betas = np.linspace(beta_min, beta_max, n)

    def solve_point(beta_val: float) -> CurvePoint:
        try:
            lam = principal_eigenvalue(
                band, beta_val, band.u0_min, tol=tol, want_vector=False
            ).lambda1
        except Exception as exc:  # per-point flagging, sweep continues
            return CurvePoint(float(beta_val), None, None, error=str(exc))
        L_crit = 2.0 * math.pi / math.sqrt(-lam) if lam < 0 else None
        return CurvePoint(float(beta_val), lam, L_crit)

    workers = min(_worker_count(), n)
    if workers == 1:
        return [solve_point(b) for b in betas]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(solve_point, betas))


def scaling_check(
    band: ProfileOnBand, a: float, beta: float, c: float, tol: float = DEFAULT_EIGEN_TOL
):
    """Both sides of lambda1(beta, c; a*u0) = lambda1(beta/a, c/a; u0).

    Evaluated independently (scaled profile vs scaled parameters) on the
    same grid ladder.  Requires 0 < a <= 1 and c <= a * u0_min.
    """
    from .profiles import band_extrema

    if not (0.0 < a <= 1.0):
        raise DomainError(f"scale factor must lie in (0, 1], got {a}")
    scaled_band = band_extrema(band.profile.scaled(a), band.d)
    if c > scaled_band.u0_min:
        raise DomainError(
            f"wave speed c={c} exceeds the scaled profile minimum {scaled_band.u0_min}"
        )
    lhs = principal_eigenvalue(scaled_band, beta, c, tol=tol, want_vector=False).lambda1

    c_rhs = c / a
    # c was admissible for a*u0, so c/a is admissible for u0 up to roundoff of
    # the division; snap the singular endpoint back onto u0_min exactly.
    if c_rhs > band.u0_min:
        if c_rhs - band.u0_min <= 1e-12 * max(1.0, abs(band.u0_min)):
            c_rhs = band.u0_min
    rhs = principal_eigenvalue(band, beta / a, c_rhs, tol=tol, want_vector=False).lambda1
    return lhs, rhs
