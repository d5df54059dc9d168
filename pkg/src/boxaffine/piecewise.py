"""Piecewise-smooth functions on an interval and their weak derivatives.

A function is stored as smooth pieces between breakpoints, each piece carrying
analytic value/derivative evaluators.  Differentiating once turns a jump of the
function into a Dirac delta; differentiating twice turns a jump of the slope
into a delta and a jump of the function into a delta-prime.  A weak derivative
is square-integrable iff it carries no delta terms at all, which is the whole
point of the diagnostics below.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import integrate

JUMP_THRESHOLD = 1e-10  # jumps below this are floating-point noise
QUAD_TOL = 1e-10


class QuadratureFailure(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


@dataclass(frozen=True)
class Piece:
    """One smooth piece on the open interval (lo, hi).

    Evaluators must be finite on the closure unless the matching singular flag
    is set, in which case one-sided limits fall back to extrapolation.
    """

    lo: float
    hi: float
    f: Callable
    df: Optional[Callable] = None
    d2f: Optional[Callable] = None
    singular_lo: bool = False
    singular_hi: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("piece endpoints must be finite")
        if self.lo >= self.hi:
            raise ValueError("piece must have lo < hi")


@dataclass(frozen=True)
class DeltaTerm:
    """Dirac delta at `location` with the given (nonzero) coefficient."""

    location: float
    coefficient: float


@dataclass(frozen=True)
class PiecewiseSmooth:
    """Smooth pieces tiling an ambient interval exactly, no gaps or overlaps."""

    pieces: Tuple[Piece, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("need at least one piece")
        for a, b in zip(self.pieces, self.pieces[1:]):
            if a.hi != b.lo:
                raise ValueError("pieces must tile the interval exactly")
        object.__setattr__(self, "pieces", tuple(self.pieces))

    @property
    def ambient_interval(self):
        return (self.pieces[0].lo, self.pieces[-1].hi)

    @property
    def breakpoints(self):
        """Interior piece boundaries, strictly increasing."""
        return tuple(p.hi for p in self.pieces[:-1])

    def _evaluate(self, x, which):
        """Vectorized evaluation of f/df/d2f with zero extension outside."""
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        xv = np.atleast_1d(x)
        out = np.zeros_like(xv)
        lo, hi = self.ambient_interval
        edges = [p.lo for p in self.pieces] + [hi]
        # half-open [lo, hi) pieces, last piece closed at hi
        idx = np.searchsorted(edges, xv, side="right") - 1
        idx[xv == hi] = len(self.pieces) - 1
        inside = (xv >= lo) & (xv <= hi)
        for i, p in enumerate(self.pieces):
            fn = (p.f, p.df, p.d2f)[which]
            if fn is None:
                raise ValueError("piece lacks the requested derivative evaluator")
            mask = inside & (idx == i)
            if mask.any():
                out[mask] = fn(xv[mask])
        return float(out[0]) if scalar else out

    def __call__(self, x):
        return self._evaluate(x, 0)

    def derivative(self, x):
        return self._evaluate(x, 1)

    def second_derivative(self, x):
        return self._evaluate(x, 2)

    def piece_at(self, x0, side):
        """The piece adjacent to x0 on the given side ('left' or 'right')."""
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        for p in self.pieces:
            if side == "left" and p.lo < x0 <= p.hi:
                return p
            if side == "right" and p.lo <= x0 < p.hi:
                return p
        raise ValueError(f"no piece adjacent to x0={x0} on the {side}")


@dataclass(frozen=True)
class WeakDerivative:
    """Smooth part plus the delta content produced by differentiation."""

    smooth_part: PiecewiseSmooth
    delta_terms: Tuple[DeltaTerm, ...] = ()
    delta_prime_terms: Tuple[DeltaTerm, ...] = ()

    @property
    def is_square_integrable(self):
        return not self.delta_terms and not self.delta_prime_terms


def one_sided_limit(f, x0, side, singular=False, eps0=1e-3, max_levels=30):
    """lim f(x0 +- eps) for a single piece evaluator.

    Pieces carry analytic evaluators, so the default is direct evaluation at
    x0.  With `singular=True` the endpoint cannot be evaluated and a Richardson
    extrapolation over eps = eps0 * 2^-k is used instead; a diverging limit is
    reported as +-inf rather than raised.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if not singular:
        return float(f(x0))

    sgn = 1.0 if side == "right" else -1.0
    table = []
    prev_best = None
    first = None
    prev_raw = None
    growing = 0
    for k in range(max_levels):
        eps = eps0 * 0.5**k
        val = float(f(x0 + sgn * eps))
        if not math.isfinite(val):
            return math.inf if val > 0 or math.isnan(val) else -math.inf
        if first is None:
            first = val
        # sustained growth as eps shrinks marks a divergent limit
        if prev_raw is not None and abs(val) > 1.2 * abs(prev_raw):
            growing += 1
            if growing >= 4 and abs(val) > 1e4 * max(1e-300, abs(first)):
                return math.copysign(math.inf, val)
        else:
            growing = 0
        prev_raw = val
        row = [val]
        for j in range(1, k + 1):
            denom = 2.0**j - 1.0
            row.append(row[j - 1] + (row[j - 1] - table[k - 1][j - 1]) / denom)
        table.append(row)
        best = row[-1]
        if prev_best is not None and abs(best - prev_best) <= 1e-12 * max(1.0, abs(best)):
            return best
        prev_best = best
    return prev_best


def _limit_from_piece(piece, x0, side, which):
    fn = (piece.f, piece.df, piece.d2f)[which]
    if fn is None:
        raise ValueError("piece lacks the requested derivative evaluator")
    singular = piece.singular_hi if side == "left" else piece.singular_lo
    return one_sided_limit(lambda x: fn(np.asarray(x, dtype=float)), x0, side, singular=singular)


def _jumps(pw, which):
    """(location, jump) at every interior breakpoint, pruning sub-threshold jumps."""
    out = []
    for left, right in zip(pw.pieces, pw.pieces[1:]):
        x0 = left.hi
        jump = _limit_from_piece(right, x0, "right", which) - _limit_from_piece(left, x0, "left", which)
        if abs(jump) > JUMP_THRESHOLD:
            out.append(DeltaTerm(x0, jump))
    return tuple(out)


def _shifted_pieces(pw, shift):
    """Pieces whose evaluators are the originals shifted down by `shift` orders."""
    pieces = []
    for p in pw.pieces:
        fs = (p.f, p.df, p.d2f)[shift:] + (None,) * shift
        pieces.append(Piece(p.lo, p.hi, fs[0], fs[1], fs[2], p.singular_lo, p.singular_hi))
    return PiecewiseSmooth(tuple(pieces))


def weak_derivative(f):
    """Weak first derivative: piecewise f' plus a delta wherever f jumps."""
    return WeakDerivative(
        smooth_part=_shifted_pieces(f, 1),
        delta_terms=_jumps(f, 0),
    )


def weak_second_derivative(f):
    """Weak second derivative: piecewise f'' plus deltas from f' jumps and
    delta-primes from f jumps."""
    return WeakDerivative(
        smooth_part=_shifted_pieces(f, 2),
        delta_terms=_jumps(f, 1),
        delta_prime_terms=_jumps(f, 0),
    )


def l2_norm_squared(w, interval=None):
    """Integral of |w|^2 over the interval; +inf as soon as any delta content
    lies strictly inside it."""
    smooth = w.smooth_part
    if interval is None:
        interval = smooth.ambient_interval
    lo, hi = interval
    alo, ahi = smooth.ambient_interval
    if lo < alo or hi > ahi:
        raise ValueError("interval must lie within the ambient interval")
    for term in tuple(w.delta_terms) + tuple(w.delta_prime_terms):
        if lo < term.location < hi:
            return math.inf

    total = 0.0
    for p in smooth.pieces:
        a, b = max(p.lo, lo), min(p.hi, hi)
        if a >= b:
            continue
        val, err = integrate.quad(lambda x: float(p.f(np.asarray(x, float))) ** 2, a, b,
                                  epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
        if err > 10 * max(QUAD_TOL, QUAD_TOL * abs(val)):
            raise QuadratureFailure(f"quadrature error {err:.2e} on piece ({a}, {b})")
        total += val
    return total


def discrete_second_derivative_norm(f, h, interior_only=False):
    """h * sum over mesh points of |D2_h f|^2, the mesh version of int |f''|^2.

    D2_h is the symmetric difference quotient applied twice (stencil width 2h),
    evaluated on a mesh aligned with the ambient interval so breakpoints fall
    on mesh points; f is extended by zero outside.  This quantity diverges like
    1/h when f' has a jump, and converges (interior_only quadrature) to the
    smooth second-derivative norm otherwise.
    """
    lo, hi = f.ambient_interval
    length = hi - lo
    n = round(length / h)
    if n < 4 or abs(n * h - length) > 1e-9 * length:
        raise ValueError("h must divide the ambient interval length")
    # mesh plus two phantom points each side for the +-2h stencil
    xs = lo + h * np.arange(-2, n + 3)
    vals = f(xs)
    d2 = (vals[4:] - 2.0 * vals[2:-2] + vals[:-4]) / (4.0 * h * h)
    if interior_only:
        d2 = d2[2:-2]
    return float(h * np.sum(d2 * d2))


def linear_combination(alpha, f, beta, g):
    """alpha*f + beta*g for two functions with identical piece boundaries."""
    if len(f.pieces) != len(g.pieces):
        raise ValueError("piece layouts differ")
    pieces = []
    for pf, pg in zip(f.pieces, g.pieces):
        if pf.lo != pg.lo or pf.hi != pg.hi:
            raise ValueError("piece layouts differ")

        def mk(fa, fb, a=alpha, b=beta):
            if fa is None or fb is None:
                return None
            return lambda x, fa=fa, fb=fb: a * fa(x) + b * fb(x)

        pieces.append(Piece(pf.lo, pf.hi, mk(pf.f, pg.f), mk(pf.df, pg.df),
                            mk(pf.d2f, pg.d2f),
                            pf.singular_lo or pg.singular_lo,
                            pf.singular_hi or pg.singular_hi))
    return PiecewiseSmooth(tuple(pieces))


def flat_ramp():
    """The kink example on (-1, 1): zero left of the origin, slope one right.

    Its weak second derivative is a single unit delta at 0, the simplest
    function whose second derivative escapes L^2.
    """
    zero = lambda x: np.zeros_like(np.asarray(x, dtype=float))
    one = lambda x: np.ones_like(np.asarray(x, dtype=float))
    ident = lambda x: np.asarray(x, dtype=float)
    return PiecewiseSmooth((
        Piece(-1.0, 0.0, zero, zero, zero),
        Piece(0.0, 1.0, ident, one, zero),
    ))
