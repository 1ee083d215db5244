"""Half-bound-state detection and critical-strength search.

A well at critical strength supports a zero-energy solution that saturates to
constants on both sides: psi'(-L2) = 0 = psi'(+L1).  Shooting at E = 0 from
the left edge with the left condition imposed,

    psi(-L2) = 1,  psi'(-L2) = 0,

turns criticality into a one-dimensional root problem for the right-edge
derivative f(q) = psi'(L1).  This works for arbitrary catalogued wells --
asymmetric ones included, where the saturating state is a genuine mixture of
the even-like and odd-like fundamental solutions rather than either alone.

The number of interior nodes of the saturating state equals the number of
negative-energy bound states the well holds at that strength; away from
criticality the same zero-energy shot, continued past the right edge as the
straight line psi(L1) + psi'(L1)(x - L1), counts bound states by its
whole-line node count (Sturm oscillation).

The scan step of 0.02 in q cannot skip roots for the catalogued families:
consecutive critical strengths are separated by at least ~1 in every case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import potentials, scatter
from .potentials import PotentialFamily
from .scatter import GridConfig

__all__ = [
    "HbsResult",
    "NoRootError",
    "bound_state_count_at",
    "critical_spectrum",
    "find_critical_q",
    "hbs_mismatch",
]

#: Default scan step for bracket hunting in q.
SCAN_STEP = 0.02

#: Residual/parity classification tolerance.
PARITY_TOL = 1e-8

#: Fraction of the support span added as saturated plateau on each side of a
#: stored profile (the zero-energy state is exactly constant there).
PLATEAU_PAD = 0.12


class NoRootError(ValueError):
    """The bracket contains no critical point."""


@dataclass(frozen=True)
class HbsResult:
    """A located half-bound state.

    ``profile`` is the sampled (x, psi) polyline across the support, extended
    on both sides by the exact constant plateaus; ``node_count`` is its number
    of interior sign changes; the residuals are |psi'| at the two support
    edges (the left one is imposed, the right one is the root residual).
    ``parity`` is "even"/"odd" for symmetric wells and "none" otherwise.
    """

    q_c: float
    node_count: int
    profile: np.ndarray
    left_residual: float
    right_residual: float
    parity: str


def hbs_mismatch(family: PotentialFamily, q: float, cfg: GridConfig | None = None) -> float:
    """Right-edge derivative psi'(L1) of the left-saturating zero-energy shot.

    Roots in q are the critical strengths.  (At q -> 0 the solution is the
    trivial constant with no node; the search ranges used here start above
    that.)
    """
    p = family.at(q)
    _, dpsi = scatter.shoot(p, E=0.0, psi0=1.0, dpsi0=0.0, cfg=cfg)
    return dpsi


def _mismatch_batch(family: PotentialFamily, qs: np.ndarray, cfg: GridConfig | None) -> np.ndarray:
    """Vectorized hbs_mismatch over many strengths.

    All catalogued shapes scale linearly with depth, V(x; q) = V0(q) s(x), so
    one sampling of the shape s on the integration grid serves every q in the
    scan; the Runge-Kutta state is carried as a vector across strengths.
    """
    cfg = cfg or GridConfig()
    probe = family.at(float(qs[0]))
    lo, hi = potentials.support_bounds(probe, cfg.tail_tol)
    h_target = cfg.step if cfg.step is not None else scatter.default_step(probe)
    if probe.kind == "SolitonWell":
        nu0 = probe.params["nu"]
        v0_probe = nu0 * (nu0 - 1.0)
        depths = np.array([n * (n - 1.0) for n in qs])
    else:
        a = float(probe.params.get("a", 1.0))
        v0_probe = probe.params["V0"]
        depths = (np.asarray(qs) / a) ** 2
    scale = depths / v0_probe

    y = np.ones_like(depths, dtype=float)
    yp = np.zeros_like(depths, dtype=float)
    for x0, x1 in ((lo, 0.0), (0.0, hi)):
        n = max(int(math.ceil((x1 - x0) / h_target)), 16)
        vn, vm, h = scatter._grid_samples(probe, x0, x1, n)
        h2, h6 = 0.5 * h, h / 6.0
        for i in range(n):
            g0 = scale * vn[i]
            g1 = scale * vm[i]
            g2 = scale * vn[i + 1]
            k1y = yp
            k1p = g0 * y
            k2y = yp + h2 * k1p
            k2p = g1 * (y + h2 * k1y)
            k3y = yp + h2 * k2p
            k3p = g1 * (y + h2 * k2y)
            k4y = yp + h * k3p
            k4p = g2 * (y + h * k3y)
            y = y + h6 * (k1y + 2.0 * (k2y + k3y) + k4y)
            yp = yp + h6 * (k1p + 2.0 * (k2p + k3p) + k4p)
    return yp


def find_critical_q(family: PotentialFamily, bracket: tuple[float, float], cfg: GridConfig | None = None) -> HbsResult:
    """Locate one critical strength inside a sign-changing bracket.

    Brent root of :func:`hbs_mismatch` to |dq| <= 1e-10, then a re-shot at the
    root fills the sampled profile, node count, edge residuals, and (for
    symmetric wells) the parity classification.
    """
    q_lo, q_hi = bracket
    if not (0.0 < q_lo < q_hi):
        raise ValueError(f"bracket must satisfy 0 < q_lo < q_hi, got {bracket}")
    f_lo = hbs_mismatch(family, q_lo, cfg)
    f_hi = hbs_mismatch(family, q_hi, cfg)
    if f_lo == 0.0:
        q_c = q_lo
    elif f_hi == 0.0:
        q_c = q_hi
    elif f_lo * f_hi > 0.0:
        raise NoRootError(
            f"no critical point in range ({q_lo:g}, {q_hi:g}): "
            f"mismatch {f_lo:.3e} -> {f_hi:.3e} does not change sign"
        )
    else:
        q_c = brentq(lambda q: hbs_mismatch(family, q, cfg), q_lo, q_hi, xtol=1e-12, rtol=8.9e-16)
    return _result_at(family, float(q_c), cfg)


def _result_at(family: PotentialFamily, q_c: float, cfg: GridConfig | None) -> HbsResult:
    p = family.at(q_c)
    xs, psi, dpsi = scatter.shoot(p, E=0.0, psi0=1.0, dpsi0=0.0, cfg=cfg, record=True)
    interior = np.column_stack([xs, psi])
    nodes = scatter.count_nodes(interior)
    span = xs[-1] - xs[0]
    npad = max(int(PLATEAU_PAD * xs.size), 2)
    pad = span * PLATEAU_PAD
    left_x = np.linspace(xs[0] - pad, xs[0], npad, endpoint=False)
    right_x = np.linspace(xs[-1], xs[-1] + pad, npad + 1)[1:]
    prof_x = np.concatenate([left_x, xs, right_x])
    prof_psi = np.concatenate([np.full(npad, psi[0]), psi, np.full(npad, psi[-1])])
    # parity classification against the state rebased to the origin
    parity = "none"
    if p.symmetric:
        i0 = int(np.argmin(np.abs(xs)))
        scale = max(np.max(np.abs(psi)), 1.0)
        if abs(psi[i0]) < PARITY_TOL * scale:
            parity = "odd"
        elif abs(dpsi[i0]) < PARITY_TOL * scale:
            parity = "even"
    return HbsResult(
        q_c=q_c,
        node_count=nodes,
        profile=np.column_stack([prof_x, prof_psi]),
        left_residual=0.0,
        right_residual=abs(dpsi[-1]),
        parity=parity,
    )


def critical_spectrum(
    family: PotentialFamily,
    q_max: float,
    q_min: float | None = None,
    cfg: GridConfig | None = None,
) -> list[HbsResult]:
    """All critical strengths up to q_max, by 0.02-step scan plus polish.

    For SolitonWell families the knob is nu and the scan starts just above
    nu = 1 (zero depth); elsewhere it starts one step above zero.  Node counts
    along the returned list increase by exactly one per entry.
    """
    if q_max > 30.0:
        raise ValueError(f"q_max must be <= 30, got {q_max}")
    if q_min is None:
        q_min = 1.0 + SCAN_STEP if family.kind == "SolitonWell" else SCAN_STEP
    if not (q_min < q_max):
        raise ValueError(f"need q_min < q_max, got {q_min} >= {q_max}")
    n = int(math.ceil((q_max - q_min) / SCAN_STEP)) + 1
    qs = np.linspace(q_min, q_max, n)
    # coarse grid for bracketing only; roots are re-polished at full accuracy
    scan_cfg = GridConfig(
        step=(cfg.step if cfg and cfg.step is not None else None),
        tail_tol=cfg.tail_tol if cfg else potentials.DEFAULT_TAIL_TOL,
    )
    fs = _mismatch_batch(family, qs, scan_cfg)
    out: list[HbsResult] = []
    for i in range(n - 1):
        if fs[i] == 0.0:
            out.append(_result_at(family, float(qs[i]), cfg))
        elif fs[i] * fs[i + 1] < 0.0:
            out.append(find_critical_q(family, (float(qs[i]), float(qs[i + 1])), cfg))
    return out


def bound_state_count_at(family: PotentialFamily, q: float, cfg: GridConfig | None = None) -> int:
    """Number of negative-energy bound states at strength q.

    Counts the nodes of the left-saturating zero-energy solution over the
    whole line: interior sign changes, plus the one the straight-line
    continuation adds past the right edge when psi(L1) and psi'(L1) have
    opposite signs.  By Sturm oscillation this equals the bound-state count.
    At criticality (psi'(L1) = 0) the continuation is flat and the count is
    the node count of the saturating state itself; exactly at a root the
    product test is fragile, so keep q away from q_c by more than ~1e-9.
    """
    p = family.at(q)
    xs, psi, dpsi = scatter.shoot(p, E=0.0, psi0=1.0, dpsi0=0.0, cfg=cfg, record=True)
    nodes = scatter.count_nodes(np.column_stack([xs, psi]))
    if psi[-1] * dpsi[-1] < 0.0:
        nodes += 1
    return int(nodes)
