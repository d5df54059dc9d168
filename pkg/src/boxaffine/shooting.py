"""Numerov shooting oracle for the box and half-line models.

Integrates psi'' = (V - E) psi / kappa from both ends with wall-appropriate
launches (Dirichlet for the flat box, leading-power s^{3/2} starts at
inverse-square walls), matches at the potential minimum, and locates
eigenvalues by node-count bracketing plus sign bisection of the matching
Wronskian -- the pole-free form of the log-derivative mismatch.  Fully
independent of the variational solver, which it cross-checks.
"""

import math
from dataclasses import dataclass

import numpy as np

from .potentials import (AntiBox, AqBox, CqBox, HalfHarmonic, ModelUnsupported,
                         evaluate_potential, kinetic_coefficient)

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap


class BracketFailure(RuntimeError):
    """Node-count transition not found below the energy ceiling."""


class FitFailure(RuntimeError):
    """Too few grid points inside the boundary-exponent fit window."""


@dataclass(frozen=True)
class ShootingGrid:
    """Uniform grid between the integration ends, with the wall offset used
    to place them."""

    x_min: float
    x_max: float
    size: int
    eps: float

    def __post_init__(self):
        if self.size < 1000:
            raise ValueError("grid needs at least 1000 points")
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be < x_max")
        if self.eps < 0:
            raise ValueError("eps must be >= 0")

    @property
    def spacing(self):
        return (self.x_max - self.x_min) / (self.size - 1)

    @property
    def points(self):
        return np.linspace(self.x_min, self.x_max, self.size)


@dataclass(frozen=True)
class MatchResult:
    energy: float
    log_derivative_mismatch: float
    node_count: int


def energy_scale(model):
    """Natural energy unit of the variant (hbar^2/b^2 for boxes, hbar for the
    half-line oscillator)."""
    if isinstance(model, (CqBox, AqBox)):
        return model.geom.hbar**2 / model.geom.b**2
    if isinstance(model, HalfHarmonic):
        return model.hbar
    raise ModelUnsupported(f"no shooting support for {type(model).__name__}")


def length_scale(model):
    if isinstance(model, (CqBox, AqBox)):
        return model.geom.b
    if isinstance(model, HalfHarmonic):
        return math.sqrt(model.hbar)
    raise ModelUnsupported(f"no shooting support for {type(model).__name__}")


def default_grid(model, size=20001, eps_frac=1e-6):
    """Integration grid matched to the variant's domain.

    Singular walls are offset by eps = eps_frac * (domain scale); the
    half-line oscillator is truncated at 12 sqrt(hbar), far beyond where the
    Gaussian tail matters.
    """
    if isinstance(model, AntiBox):
        raise ModelUnsupported("AntiBox has no shooting support")
    scale = length_scale(model)
    if not 1e-8 <= eps_frac <= 1e-3:
        raise ValueError("eps_frac outside [1e-8, 1e-3]")
    eps = eps_frac * scale
    if isinstance(model, CqBox):
        b = model.geom.b
        return ShootingGrid(-b, b, size, 0.0)
    if isinstance(model, AqBox):
        b = model.geom.b
        return ShootingGrid(-b + eps, b - eps, size, eps)
    return ShootingGrid(eps, 12.0 * scale, size, eps)


@njit(cache=True)
def _numerov(T, psi, i0):
    # Numerov in summed (difference) form, T_i = h^2 g_i / 12: the potential
    # kick is accumulated into the first difference at its own scale, which
    # avoids the 1 - T cancellation floor of the textbook three-term form.
    # psi[:i0+1] must be preset.
    n = T.shape[0]
    delta = psi[i0] - psi[i0 - 1]
    for i in range(i0, n - 1):
        delta = (delta + (T[i + 1] + 10.0 * T[i]) * psi[i] + T[i - 1] * psi[i - 1]) / (1.0 - T[i + 1])
        psi[i + 1] = psi[i] + delta
        if (i - i0) % 512 == 511:
            m = abs(psi[i + 1])
            if m > 1e100:
                inv = 1.0 / m
                for j in range(i + 2):
                    psi[j] *= inv
                delta *= inv
    return psi


def warmup():
    """Trigger the JIT compile once so timed runs measure the algorithm."""
    T = np.zeros(1200)
    psi = np.zeros(1200)
    psi[1] = 1e-3
    _numerov(T, psi, 1)


def _count_nodes(psi):
    signs = np.sign(psi)
    signs = signs[signs != 0]
    return int(np.count_nonzero(np.diff(signs) != 0))


def _launch(model, side, s_values):
    """Initial psi values and the recurrence start index for one end.

    Regular walls start from the Dirichlet pair (0, h).  Inverse-square walls
    plant the leading power s^{3/2} on the first three points and start the
    recurrence there, past the region where h^2 g / 12 is large.
    """
    singular = isinstance(model, AqBox) or (isinstance(model, HalfHarmonic) and side == "left")
    if singular:
        return np.power(s_values[:3], 1.5), 2
    h = s_values[1] - s_values[0]
    return np.array([0.0, h]), 1


def _shoot(model, E, grid, V=None, full_right=False):
    """Both-end integration; returns everything the search and probes need."""
    xs = grid.points
    h = grid.spacing
    if V is None:
        V = evaluate_potential(model, xs)
    kappa = kinetic_coefficient(model)
    T = (h * h / 12.0) * ((V - E) / kappa)
    n = xs.size

    m = int(np.argmin(V)) if isinstance(model, HalfHarmonic) else int(np.argmin(np.abs(xs)))
    m = min(max(m, 3), n - 4)

    # left-to-right, full sweep (also serves the one-sided node count)
    s_left = xs - xs[0] + grid.eps
    start, i0 = _launch(model, "left", s_left)
    psi_l = np.zeros(n)
    psi_l[:start.size] = start
    _numerov(T, psi_l, i0)

    # right-to-left on the reversed axis, down to m - 2 (or all the way)
    s_right = ((xs[-1] - xs) + grid.eps)[::-1]
    if isinstance(model, HalfHarmonic):
        start_r, i0_r = np.array([0.0, h]), 1  # truncated Gaussian tail
    else:
        start_r, i0_r = _launch(model, "right", s_right)
    nr = n if full_right else n - (m - 2)
    psi_r_rev = np.zeros(nr)
    psi_r_rev[:start_r.size] = start_r
    _numerov(np.ascontiguousarray(T[::-1][:nr]), psi_r_rev, i0_r)
    psi_r = psi_r_rev[::-1]  # aligned with xs[n - nr:]

    off = n - nr  # index of xs where psi_r starts (m - 2, or 0 if full)
    lm, l0, lp = psi_l[m - 1], psi_l[m], psi_l[m + 1]
    rm, r0, rp = psi_r[m - 1 - off], psi_r[m - off], psi_r[m + 1 - off]
    scale_l = max(abs(lm), abs(l0), abs(lp))
    scale_r = max(abs(rm), abs(r0), abs(rp))
    if scale_l == 0.0 or scale_r == 0.0:
        mismatch, wronskian = math.inf, 0.0
        assembled = psi_l.copy()
    else:
        lm, l0, lp = lm / scale_l, l0 / scale_l, lp / scale_l
        rm, r0, rp = rm / scale_r, r0 / scale_r, rp / scale_r
        wronskian = (lp - lm) * r0 - (rp - rm) * l0
        if l0 != 0.0 and r0 != 0.0:
            mismatch = (lp - lm) / (2.0 * h * l0) - (rp - rm) / (2.0 * h * r0)
        else:
            mismatch = math.inf
        # least-squares branch ratio over the 5-point overlap: stays correct
        # (value and sign) when the match value itself passes through zero
        lwin = psi_l[m - 2: m + 3]
        rwin = psi_r[m - 2 - off: m + 3 - off]
        denom = float(rwin @ rwin)
        alpha = float(lwin @ rwin) / denom if denom > 0 else 1.0
        assembled = np.concatenate([psi_l[:m], alpha * psi_r[m - off:]])

    # drop trailing points where h^2 g / 12 > 1 (right at a singular wall):
    # the recurrence value there has an arbitrary sign and would fake a node
    # at every energy
    tail = 0
    while tail < 3 and T[n - 1 - tail] > 1.0:
        tail += 1
    one_sided = psi_l[: n - tail] if tail else psi_l

    # odd levels have their node at the match point, where both branches pass
    # through ~0 with bisection-limited signs; counting across a small gap
    # keeps the genuine sign change and ignores the matching jitter
    gapped = np.concatenate([assembled[: m - 3], assembled[m + 4:]])

    return {
        "xs": xs,
        "assembled": assembled,
        "psi_left": psi_l,
        "psi_right": psi_r,
        "right_offset": off,
        "match_index": m,
        "mismatch": float(mismatch),
        "wronskian": float(wronskian),
        "nodes_assembled": _count_nodes(gapped),
        "nodes_onesided": _count_nodes(one_sided),
    }


def numerov_integrate(model, E, grid=None):
    """Integrate at trial energy E; mismatch of left/right log-derivatives at
    the match point and the node count of the assembled solution."""
    if isinstance(model, AntiBox):
        raise ModelUnsupported("AntiBox has no shooting support")
    if grid is None:
        grid = default_grid(model)
    res = _shoot(model, E, grid)
    return MatchResult(E, res["mismatch"], res["nodes_assembled"])


def eigenvalue_search(model, k, tol=1e-8, grid=None, e_max_factor=1e4):
    """k-th eigenvalue (k interior nodes) to absolute width tol.

    Scans upward (doubling) until the one-sided node count exceeds k, bisects
    the node staircase, then refines by sign bisection of the matching
    Wronskian inside the final bracket.  Returns the bracket midpoint.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if tol < 1e-10:
        raise ValueError("tol must be >= 1e-10")
    if grid is None:
        grid = default_grid(model)
    xs = grid.points
    V = evaluate_potential(model, xs)
    scale = energy_scale(model)
    e_max = e_max_factor * scale

    def probe(E):
        return _shoot(model, E, grid, V)

    lo, hi = 0.0, scale
    r_hi = probe(hi)
    while r_hi["nodes_onesided"] <= k:
        lo, hi = hi, 2.0 * hi
        if hi > e_max:
            raise BracketFailure(
                f"level {k}: node transition not found below {e_max:.3g} "
                f"(upper side reached the ceiling)")
        r_hi = probe(hi)

    # node staircase bisection; the one-sided count jumps at each eigenvalue
    w_lo = probe(lo)["wronskian"] if lo > 0 else None
    w_hi = r_hi["wronskian"]
    coarse = max(tol, 1e-13 * max(abs(hi), scale))
    while hi - lo > coarse:
        mid = 0.5 * (lo + hi)
        r = probe(mid)
        if r["nodes_onesided"] >= k + 1:
            hi, w_hi = mid, r["wronskian"]
        else:
            lo, w_lo = mid, r["wronskian"]
    # Wronskian refinement when the sign flip is clean
    if hi - lo > tol and w_lo is not None and np.sign(w_lo) != np.sign(w_hi):
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            w_mid = probe(mid)["wronskian"]
            if np.sign(w_mid) == np.sign(w_lo):
                lo, w_lo = mid, w_mid
            else:
                hi, w_hi = mid, w_mid
    return 0.5 * (lo + hi)


def wavefunction(model, E, grid=None):
    """Assembled two-sided solution at E, max-normalized; (xs, psi)."""
    if grid is None:
        grid = default_grid(model)
    res = _shoot(model, E, grid)
    psi = res["assembled"]
    return res["xs"], psi / np.max(np.abs(psi))


def boundary_exponent_probe(model, E, grid=None):
    """Fitted slope of log|psi| vs log s near a wall, at a converged energy.

    Uses the assembled two-sided solution and fits the window
    s in [1e-4, 1e-2] * scale next to the wall.  Integration runs away from
    that wall there, the direction in which the regular branch is stable, so
    the window slope is governed by the equation over two decades of s.
    Expected 3/2 at inverse-square walls, 1 at hard walls.
    """
    if grid is None:
        grid = default_grid(model, size=40001)  # dense enough for >= 20 fit points
    scale = length_scale(model)
    res = _shoot(model, E, grid)
    xs = res["xs"]
    psi = res["assembled"]
    if isinstance(model, HalfHarmonic):
        s = xs.copy()  # wall at x = 0
    else:
        s = (xs[-1] + grid.eps) - xs  # right wall
    window = (s >= 1e-4 * scale) & (s <= 1e-2 * scale)
    if np.count_nonzero(window) < 20:
        raise FitFailure(f"only {np.count_nonzero(window)} points in the fit window")
    a = np.abs(psi[window])
    good = a > 0
    if np.count_nonzero(good) < 20:
        raise FitFailure("wavefunction vanishes inside the fit window")
    return float(np.polyfit(np.log(s[window][good]), np.log(a[good]), 1)[0])
