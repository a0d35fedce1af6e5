"""Complex-asymptotic transition machinery for analytic pulse models.

The chain is: locate the upper-half-plane zeros of the analytic
continuation of E^2(t) (Newton from a seed grid, validated against an
argument-principle count), integrate the splitting from 0 to each zero
along a straight path (with the square-root branch tracked), extract the
residue prefactor of the nonadiabatic coupling at each zero, check the
level-line geometry that the asymptotics relies on, and assemble the
single-point and coherent multi-point probabilities.

Everything here works on E^2 rather than E: E^2 is entire for the built-in
families, so root finding needs no branch bookkeeping; the square root
(with continuity along the specific integration path) enters only in the
action integral.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .families import PulseModel

__all__ = [
    "CapabilityError",
    "CoverageWarning",
    "DdpResult",
    "LimitDivergenceError",
    "PathRefinementError",
    "PointData",
    "SearchRegion",
    "StokesResult",
    "TransitionPoint",
    "analyze",
    "count_zeros",
    "ddp_integral",
    "ddp_probability_multi",
    "ddp_probability_single",
    "find_transition_points",
    "gamma_factor",
    "stokes_check",
]


class CapabilityError(RuntimeError):
    """The model cannot be evaluated where this operation needs it."""


class PathRefinementError(RuntimeError):
    """The integrand's branch could not be tracked at maximum refinement."""


class LimitDivergenceError(RuntimeError):
    """The residue limit does not exist (zero is not simple)."""


class CoverageWarning(UserWarning):
    """Root search results may be incomplete in part of the region."""


@dataclass(frozen=True)
class SearchRegion:
    """Upper-half-plane rectangle scanned for zeros of E^2."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self) -> None:
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("degenerate search region")
        if self.im_min < 0.0:
            raise ValueError("search region must lie in the upper half-plane")

    def contains(self, z: complex, margin: float = 0.0) -> bool:
        return (
            self.re_min - margin <= z.real <= self.re_max + margin
            and self.im_min - margin <= z.imag <= self.im_max + margin
        )

    @staticmethod
    def for_model(model: PulseModel, half_width: float | None = None,
                  height: float | None = None) -> "SearchRegion":
        hw = 4.0 * model.t_char if half_width is None else half_width
        h = 4.0 * model.t_char if height is None else height
        return SearchRegion(-hw, hw, 0.0, h)


@dataclass(frozen=True)
class TransitionPoint:
    """A located zero of E^2 in the upper half-plane.

    index_k ranks distinct heights (Im t0) from the real axis; sign tells
    which member of a symmetric +-Re pair this is ("plus" also covers
    points sitting on the imaginary axis). residual is |E^2(t0)| actually
    achieved, bounded by 1e-10 * scale^2; the defining tolerance lives on
    E^2 because driving |E| itself to 1e-10*scale would need ~1e-20 in
    E^2, below double-precision rounding of the evaluated terms.
    """

    t0: complex
    index_k: int
    sign: str
    residual: float


@dataclass(frozen=True)
class PointData:
    """A transition point with its action integral and prefactor."""

    point: TransitionPoint
    d: complex
    gamma: complex


@dataclass(frozen=True)
class StokesResult:
    ok: bool
    reached_minus: bool
    reached_plus: bool
    path: np.ndarray
    hops: tuple[complex, ...]
    reason: str


@dataclass(frozen=True)
class DdpResult:
    """Full asymptotic analysis of one model."""

    points: tuple[PointData, ...]
    p_single: float
    p_multi: float
    stokes_ok: bool | None
    no_points: bool
    diagnostics: dict = field(default_factory=dict)


def _t0_of(point) -> complex:
    return point.t0 if isinstance(point, TransitionPoint) else complex(point)


def find_transition_points(
    model: PulseModel,
    region: SearchRegion | None = None,
    max_points: int = 12,
    seed_spacing: float | None = None,
) -> list[TransitionPoint]:
    """Newton search for zeros of E^2 from a rectangular seed grid.

    An empty list is a valid -- and for optimized pulses the desired --
    outcome. Points are deduplicated, Im-sorted, and labeled with a height
    rank k and a +-Re pair sign.
    """
    region = region or SearchRegion.for_model(model)
    esq, esqd = model.esq, model.esq_dot
    scale2 = model.scale**2
    tc = model.t_char
    res_tol = 1e-10 * scale2

    # constant-E^2 shortcut: nothing to hunt for (also keeps Newton away
    # from dividing by an identically zero derivative)
    probes = [
        complex(region.re_min, region.im_min + 1e-3 * tc),
        complex(region.re_max, region.im_max),
        complex(0.5 * (region.re_min + region.re_max), 0.5 * region.im_max),
        complex(0.3 * region.re_min, 0.7 * region.im_max),
    ]
    pvals = [esq(z) for z in probes]
    if all(abs(v - pvals[0]) <= 1e-12 * scale2 for v in pvals) and abs(
        pvals[0]
    ) > 1e-6 * scale2:
        return []

    spacing = seed_spacing or min(tc, math.pi / model.scale) / 4.0
    res_seeds = np.arange(region.re_min + spacing / 2, region.re_max, spacing)
    ims_seeds = np.arange(
        max(region.im_min, 0.0) + spacing / 2, region.im_max, spacing
    )

    zeros: list[complex] = []
    bad_residual = 0
    n_seeds = 0
    diag = 2.0 * math.hypot(region.re_max - region.re_min,
                            region.im_max - region.im_min)
    for re0 in res_seeds:
        for im0 in ims_seeds:
            n_seeds += 1
            z = complex(re0, im0)
            converged = False
            for _ in range(40):
                f = esq(z)
                df = esqd(z)
                if not (cmath.isfinite(f) and cmath.isfinite(df)) or df == 0:
                    break
                dz = f / df
                z = z - dz
                if abs(z) > diag + abs(region.re_max) + region.im_max:
                    break
                if abs(dz) < 1e-14 * max(tc, abs(z)):
                    converged = True
                    break
            if not converged:
                continue
            # polish to roundoff floor
            for _ in range(2):
                df = esqd(z)
                if df == 0:
                    break
                z = z - esq(z) / df
            if not cmath.isfinite(z):
                continue
            if z.imag <= max(region.im_min, 1e-12 * tc):
                continue
            if not region.contains(z, margin=1e-9 * tc):
                continue
            if abs(esq(z)) > res_tol:
                bad_residual += 1
                continue
            if all(abs(z - w) > 1e-6 * tc for w in zeros):
                zeros.append(z)

    if bad_residual > 0.1 * n_seeds:
        warnings.warn(
            f"{bad_residual} Newton runs stalled above the residual "
            "tolerance; the zero list may be incomplete",
            CoverageWarning,
            stacklevel=2,
        )

    zeros.sort(key=lambda z: (z.imag, z.real))
    zeros = zeros[: max(2 * max_points, max_points)]

    # rank distinct heights; symmetric pairs share a rank
    points: list[TransitionPoint] = []
    k = -1
    last_im = None
    for z in zeros:
        if last_im is None or z.imag - last_im > 1e-7 * tc:
            k += 1
            last_im = z.imag
        sign = "minus" if z.real < -1e-9 * tc else "plus"
        points.append(
            TransitionPoint(t0=z, index_k=k, sign=sign, residual=abs(esq(z)))
        )
    return points[:max_points]


def count_zeros(model: PulseModel, region: SearchRegion,
                n_side: int = 800, max_refine: int = 6) -> int:
    """Argument-principle zero count of E^2 over the region boundary.

    Independent of the Newton search; used to audit its completeness.
    """
    esq = model.esq
    corners = [
        complex(region.re_min, region.im_min),
        complex(region.re_max, region.im_min),
        complex(region.re_max, region.im_max),
        complex(region.re_min, region.im_max),
        complex(region.re_min, region.im_min),
    ]
    n = n_side
    for _ in range(max_refine):
        total = 0.0
        coarse = False
        for a, b in zip(corners[:-1], corners[1:]):
            ts = np.linspace(0.0, 1.0, n + 1)
            prev = None
            for s in ts:
                v = esq(a + (b - a) * s)
                if prev is not None:
                    inc = cmath.phase(v / prev)
                    if abs(inc) > math.pi / 2:
                        coarse = True
                        break
                    total += inc
                prev = v
            if coarse:
                break
        if not coarse:
            winding = total / (2.0 * math.pi)
            if abs(winding - round(winding)) > 0.1:
                raise RuntimeError(
                    f"winding number {winding:.3f} is not close to an integer"
                )
            return int(round(winding))
        n *= 2
    raise RuntimeError("boundary sampling did not resolve the phase winding")


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)


def ddp_integral(model: PulseModel, point, rel_tol: float = 1e-10) -> complex:
    """Action D(t0) = integral of E(t) dt from 0 to t0 on a bowed path.

    The path is t = t0 * w(s) with w(s) = (2s - s^2) + i*sigma*b*s*(1-s)^2,
    a gentle bow off the straight segment.  Two reasons for the bow:

    * zeros of E^2 stack along rays in these families, so the straight
      segment to a k >= 1 point can pass through (or on the wrong side
      of) a lower zero, scrambling the branch of sqrt;
    * with cuts drawn vertically upward from every zero, the physical
      continuation from the real axis crosses each intervening vertical
      *below* its zero.  sigma = +1 in the left half-plane and -1 in the
      right bends the path toward the real axis, which realizes that
      crossing and keeps the two half-planes exact mirror images.

    The bow vanishes quadratically at s = 1, so the square-root vanishing
    of E at t0 still becomes a smooth O((1-s)^2) integrand.  The branch of
    sqrt(E^2) starts positive at t = 0 and is continued by nearest-sign
    tracking; sampling is doubled until both the value is converged and no
    step rotates E^2 by more than pi/2.
    """
    t0 = _t0_of(point)
    if t0 == 0:
        return 0j
    esq = model.esq
    bow = 1.0j if t0.real <= 0.0 else -1.0j

    def attempt(n_seg: int) -> tuple[complex, float]:
        total = 0j
        prev_esq = None
        sign = 1.0
        max_step = 0.0
        width = 1.0 / n_seg
        for seg in range(n_seg):
            s_lo = seg * width
            for x, w in zip(_GL_NODES, _GL_WEIGHTS):
                s = s_lo + 0.5 * width * (x + 1.0)
                one = 1.0 - s
                v = esq(t0 * (2.0 * s - s * s + bow * (s * one * one)))
                if prev_esq is not None and prev_esq != 0:
                    step = abs(cmath.phase(v / prev_esq))
                    max_step = max(max_step, step)
                    if step > math.pi / 2:
                        return total, max_step
                e = cmath.sqrt(v)
                if prev_esq is not None:
                    # nearest-branch continuation of the square root
                    if abs(cmath.sqrt(prev_esq) * sign - e) > abs(
                        cmath.sqrt(prev_esq) * sign + e
                    ):
                        sign = -sign
                prev_esq = v
                jac = t0 * one * (2.0 + bow * (1.0 - 3.0 * s)) * 0.5 * width
                total += w * (sign * e) * jac
        return total, max_step

    floor = 1e-14 * model.scale * model.t_char
    prev = None
    n_seg = 8
    while n_seg <= 4096:
        val, max_step = attempt(n_seg)
        if max_step <= math.pi / 2:
            if prev is not None and abs(val - prev) <= rel_tol * abs(val) + floor:
                return val
            prev = val
        n_seg *= 2
    raise PathRefinementError(
        f"branch tracking along 0 -> {t0} did not converge at 4096 segments"
    )


def gamma_factor(model: PulseModel, point, n_circle: int = 32) -> complex:
    """Prefactor 4i * lim (t - t0) * dtheta/dt at a simple zero of E^2.

    The limit equals 4i times the residue of the coupling, computed here
    as the average of (z - t0) * theta_dot(z) over a small circle (the
    averaging integrates the Laurent series exactly except for aliased
    orders >= n_circle). Two radii are combined per the shrinking-radius
    design to cancel any residual radius dependence.
    """
    if not model.analytic:
        raise CapabilityError(
            f"family {model.label!r} cannot be evaluated at complex time"
        )
    t0 = _t0_of(point)
    dsq = model.esq_dot(t0)
    if abs(dsq) < 1e-8 * model.scale**2 / model.t_char:
        raise LimitDivergenceError(
            f"zero at {t0} is not simple (|dE^2/dt| = {abs(dsq):.2e}); "
            "the residue limit diverges"
        )

    def circle_avg(r: float) -> complex:
        acc = 0j
        for j in range(n_circle):
            phi = 2.0 * math.pi * (j + 0.5) / n_circle
            dz = r * cmath.exp(1j * phi)
            acc += dz * model.theta_dot(t0 + dz)
        return acc / n_circle

    r = 1e-3 * t0.imag
    a_full = circle_avg(r)
    a_half = circle_avg(0.5 * r)
    residue = (4.0 * a_half - a_full) / 3.0
    return 4j * residue


def ddp_probability_single(model: PulseModel, point) -> float:
    """Leading asymptotics e^{-2 Im D} from the zero nearest the axis."""
    d = ddp_integral(model, point)
    return math.exp(-2.0 * d.imag)


def ddp_probability_multi(model: PulseModel, points) -> float:
    """Coherent sum |sum_k Gamma_k e^{i D_k}|^2 over the supplied points.

    An empty collection gives 0: the no-transition-point outcome of an
    optimized pulse, not an error.
    """
    if not points:
        return 0.0
    acc = 0j
    for p in points:
        d = ddp_integral(model, p)
        g = gamma_factor(model, p)
        acc += g * cmath.exp(1j * d)
    return abs(acc) ** 2


def _ray_angles(model: PulseModel, t0: complex) -> list[float]:
    # near a simple zero, E^2 ~ c (t - t0) and D - D0 ~ (2/3) sqrt(c)
    # (t - t0)^{3/2}; Im(D - D0) = 0 along three rays
    phi = cmath.phase(model.esq_dot(t0))
    return [(2.0 / 3.0) * (m * math.pi - 0.5 * phi) for m in range(3)]


def stokes_check(
    model: PulseModel,
    point,
    others=(),
    step: float | None = None,
    max_steps: int = 60000,
) -> StokesResult:
    """Trace the level line Im D = Im D(t0) through t0 toward both Re infinities.

    The asymptotics is justified when (a) the splitting never vanishes on
    the real axis and (b) the level line through the governing zero runs
    from one real infinity to the other. The tracer marches along
    dt/ds = +-conj(E)/|E| (which keeps dD real) with a transverse
    correction, and hops across other zeros it meets along the way,
    picking the outgoing ray that continues its Re-heading.
    """
    tc = model.t_char
    esq = model.esq
    scale2 = model.scale**2

    # condition on the real axis: no degeneracies there
    a, b = model.window
    grid = np.linspace(a, b, 2001)
    if min(abs(esq(t)) for t in grid) < 1e-9 * scale2:
        return StokesResult(
            ok=False, reached_minus=False, reached_plus=False,
            path=np.empty(0, complex), hops=(),
            reason="splitting vanishes on the real axis",
        )

    t0 = _t0_of(point)
    other_zeros = [
        _t0_of(p) for p in others if abs(_t0_of(p) - t0) > 1e-6 * tc
    ]
    h = step or 0.01 * tc
    r0 = max(5.0 * h, 1e-2 * tc)
    stop_re = 1.02 * max(abs(a), abs(b))
    im_cap = 10.0 * max(t0.imag, tc)
    rays = _ray_angles(model, t0)

    def branch_e(z: complex, e_prev: complex) -> complex:
        e = cmath.sqrt(esq(z))
        if abs(e - e_prev) > abs(e + e_prev):
            e = -e
        return e

    def trace(target: float) -> tuple[bool, list[complex], list[complex]]:
        # start on the ray whose Re-direction points at the target side
        psi = max(rays, key=lambda p: target * math.cos(p))
        t = t0 + r0 * cmath.exp(1j * psi)
        heading = cmath.exp(1j * psi)
        e = cmath.sqrt(esq(t))
        if abs(e) == 0.0:
            return False, [t], []
        d = e.conjugate() / abs(e)
        if (d * heading.conjugate()).real < 0:
            d = -d
            e = -e
        e_prev = e
        path = [t0, t]
        hops: list[complex] = []
        im_acc = 0.0
        for _ in range(max_steps):
            # RK2 midpoint step along the level direction
            e1 = branch_e(t, e_prev)
            d1 = e1.conjugate() / abs(e1)
            if (d1 * heading.conjugate()).real < 0:
                d1 = -d1
                e1 = -e1
            tm = t + 0.5 * h * d1
            e2 = branch_e(tm, e1)
            d2 = e2.conjugate() / abs(e2)
            if (d2 * d1.conjugate()).real < 0:
                d2 = -d2
                e2 = -e2
            t_new = t + h * d2
            im_acc += (0.5 * (e1 + branch_e(t_new, e2)) * (t_new - t)).imag
            e_new = branch_e(t_new, e2)
            # transverse correction pulls the point back onto the level set
            if abs(e_new) > 0:
                t_new = t_new - 1j * im_acc / e_new
                im_acc = 0.0
            heading = d2
            t = t_new
            e_prev = branch_e(t, e_new)
            path.append(t)

            if t.imag <= 0.0:
                return False, path, hops
            if t.imag > im_cap:
                return False, path, hops
            if target * t.real >= stop_re:
                return True, path, hops

            near = [z for z in other_zeros if abs(t - z) < max(3.0 * h, 0.02 * tc)]
            if near:
                z_star = min(near, key=lambda z: abs(t - z))
                psi_in = cmath.phase(t - z_star)
                cand = _ray_angles(model, z_star)
                cand.sort(
                    key=lambda p: abs(
                        cmath.phase(cmath.exp(1j * (p - psi_in)))
                    )
                )
                outgoing = cand[1:]  # drop the ray we rode in on

                def score(p: float) -> tuple[int, float]:
                    same_side = (
                        1 if math.cos(p) * heading.real > 0 else 0
                    )
                    along = (cmath.exp(1j * p) * heading.conjugate()).real
                    return (same_side, along)

                psi_out = max(outgoing, key=score)
                hops.append(z_star)
                t = z_star + r0 * cmath.exp(1j * psi_out)
                heading = cmath.exp(1j * psi_out)
                e_prev = cmath.sqrt(esq(t))
                dd = e_prev.conjugate() / abs(e_prev)
                if (dd * heading.conjugate()).real < 0:
                    e_prev = -e_prev
                im_acc = 0.0
                path.append(t)
        return False, path, hops

    ok_plus, path_p, hops_p = trace(+1.0)
    ok_minus, path_m, hops_m = trace(-1.0)
    ok = ok_plus and ok_minus
    reason = "" if ok else "level line did not reach both real infinities"
    return StokesResult(
        ok=ok,
        reached_minus=ok_minus,
        reached_plus=ok_plus,
        path=np.array(path_m[::-1] + path_p, dtype=complex),
        hops=tuple(hops_m + hops_p),
        reason=reason,
    )


def analyze(
    model: PulseModel,
    region: SearchRegion | None = None,
    max_k: int = 1,
    check_stokes: bool = True,
) -> DdpResult:
    """End-to-end asymptotic analysis: points, actions, prefactors, checks.

    Retains height ranks k <= max_k in the coherent sum (the lowest pair
    dominates; higher points are exponentially suppressed).
    """
    points = find_transition_points(model, region)
    if not points:
        return DdpResult(
            points=(),
            p_single=0.0,
            p_multi=0.0,
            stokes_ok=None,
            no_points=True,
            diagnostics={"n_found": 0},
        )
    retained = [p for p in points if p.index_k <= max_k]
    data = tuple(
        PointData(point=p, d=ddp_integral(model, p), gamma=gamma_factor(model, p))
        for p in retained
    )
    nearest = points[0]
    p_single = ddp_probability_single(model, nearest)
    acc = sum(pd.gamma * cmath.exp(1j * pd.d) for pd in data)
    p_multi = abs(acc) ** 2
    stokes = (
        stokes_check(model, nearest, others=points) if check_stokes else None
    )
    return DdpResult(
        points=data,
        p_single=p_single,
        p_multi=p_multi,
        stokes_ok=None if stokes is None else stokes.ok,
        no_points=False,
        diagnostics={
            "n_found": len(points),
            "max_residual": max(p.residual for p in points),
            "stokes": stokes,
        },
    )
