"""Variational spectral solver for the finite-interval box models.

Trial functions are chi_k(x) = (b^2 - x^2)^w P_k(x/b): w = 3/2 cancels the
inverse-square wall potential exactly (every matrix element becomes a
polynomial integral, so Gauss quadrature is exact), w = 1 handles the flat
Dirichlet box.  The generalized problem H v = lambda S v is solved by an
in-repo dense path: Cholesky reduction, cyclic Jacobi sweeps, back-substitution.
"""

import io
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .boxmodes import BoxGeometry
from .potentials import AqBox, CqBox, ModelUnsupported, evaluate_potential, kinetic_coefficient
from .quadrature import gauss_legendre, legendre_second_derivative_table, legendre_table

MAX_BASIS = 64


class NotPositiveDefinite(RuntimeError):
    """Overlap matrix failed Cholesky factorization."""


class NoConvergence(RuntimeError):
    """Jacobi sweeps exceeded the iteration budget."""


@dataclass(frozen=True)
class BasisSpec:
    size: int
    weight_exponent: float
    geom: BoxGeometry

    def __post_init__(self):
        if not 1 <= self.size <= MAX_BASIS:
            raise ValueError(f"basis size must be in [1, {MAX_BASIS}]")
        if self.weight_exponent not in (1.0, 1.5):
            raise ValueError("weight exponent must be 1 (Dirichlet) or 3/2 (singular walls)")


def basis_for(model, n):
    """Basis matched to the model's wall behavior."""
    if isinstance(model, AqBox):
        return BasisSpec(n, 1.5, model.geom)
    if isinstance(model, CqBox):
        return BasisSpec(n, 1.0, model.geom)
    raise ModelUnsupported(f"no finite-interval basis for {type(model).__name__}")


@dataclass(frozen=True)
class GeneralizedEigProblem:
    """Symmetric stiffness H and SPD overlap S in the weighted basis."""

    H: np.ndarray
    S: np.ndarray


def _basis_tables(basis, t, with_second=False):
    """chi_k, chi_k' (and optionally chi_k'') sampled at t = x/b, shape (N, nt)."""
    n, w, b = basis.size, basis.weight_exponent, basis.geom.b
    t = np.atleast_1d(np.asarray(t, dtype=float))
    P, dP = legendre_table(n - 1, t)
    om = 1.0 - t * t
    u = (b * b) ** w * om**w
    du = -2.0 * w * b ** (2 * w - 1.0) * t * om ** (w - 1.0)
    chi = u * P
    dchi = du * P + u * dP / b
    if not with_second:
        return chi, dchi
    ddP = legendre_second_derivative_table(n - 1, t)
    d2u = b ** (2 * w - 2.0) * (-2.0 * w * om ** (w - 1.0)
                                + 4.0 * w * (w - 1.0) * t * t * om ** (w - 2.0))
    d2chi = d2u * P + 2.0 * du * dP / b + u * ddP / (b * b)
    return chi, dchi, d2chi


def assemble_matrices(model, basis=None, rule=None):
    """Stiffness and overlap matrices by exact Gauss quadrature.

    The kinetic term uses the integration-by-parts form
    int [kappa chi_j' chi_k' + V chi_j chi_k]; boundary terms vanish because
    the trial functions (and, for w = 3/2, their first derivatives) are zero
    at the walls.  V * chi_j * chi_k is computed with the weight already
    cancelled against the potential's denominator, so every integrand is a
    polynomial and the 2N + 8 point rule is exact up to rounding.
    """
    if not isinstance(model, (CqBox, AqBox)):
        raise ModelUnsupported(f"assembly supports CqBox/AqBox, got {type(model).__name__}")
    if basis is None:
        basis = basis_for(model, 32)
    if rule is None:
        rule = gauss_legendre(2 * basis.size + 8)
    if rule.order < 2 * basis.size + 8:
        raise ValueError("rule order must be >= 2N + 8 for exact assembly")

    b, hbar = basis.geom.b, basis.geom.hbar
    w = basis.weight_exponent
    t, wq = rule.nodes, rule.weights * b  # x = b t
    chi, dchi = _basis_tables(basis, t)

    kappa = kinetic_coefficient(model)
    H = kappa * np.einsum("i,ji,ki->jk", wq, dchi, dchi)
    if isinstance(model, AqBox):
        x = b * t
        om = (b * b) * (1.0 - t * t)
        # V * chi_j * chi_k = hbar^2 (2x^2 + b^2) (b^2 - x^2)^{2w-2} P_j P_k * ...
        vfac = hbar**2 * (2.0 * x * x + b * b) * om ** (2.0 * w - 2.0)
        P, _ = legendre_table(basis.size - 1, t)
        H += np.einsum("i,ji,ki->jk", wq * vfac, P, P)
    S = np.einsum("i,ji,ki->jk", wq, chi, chi)

    # the integrands are symmetric in (j, k) and exactly odd over the
    # symmetric interval when j + k is odd; enforce both against BLAS rounding
    H = 0.5 * (H + H.T)
    S = 0.5 * (S + S.T)
    j = np.arange(basis.size)
    odd = (j[:, None] + j[None, :]) % 2 == 1
    H[odd] = 0.0
    S[odd] = 0.0
    return GeneralizedEigProblem(H, S)


def _cholesky(S):
    n = S.shape[0]
    L = np.zeros_like(S)
    for j in range(n):
        d = S[j, j] - L[j, :j] @ L[j, :j]
        if not (np.isfinite(d) and d > 0):
            raise NotPositiveDefinite(f"pivot {j} is {d}")
        L[j, j] = math.sqrt(d)
        if j + 1 < n:
            L[j + 1:, j] = (S[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    return L


def _forward_solve(L, B):
    """Solve L X = B for lower-triangular L."""
    X = np.array(B, dtype=float, copy=True)
    for i in range(L.shape[0]):
        X[i] -= L[i, :i] @ X[:i]
        X[i] /= L[i, i]
    return X


def _back_solve_transpose(L, B):
    """Solve L^T X = B for lower-triangular L."""
    X = np.array(B, dtype=float, copy=True)
    for i in range(L.shape[0] - 1, -1, -1):
        X[i] -= L[i + 1:, i] @ X[i + 1:]
        X[i] /= L[i, i]
    return X


def _jacobi_eigh(A, rel_tol=1e-12, max_sweeps=100):
    """Cyclic Jacobi diagonalization of a symmetric matrix.

    Returns (eigenvalues, eigenvector columns), unsorted.  Converged when the
    off-diagonal Frobenius norm drops below rel_tol times the matrix norm.
    """
    A = np.array(A, dtype=float, copy=True)
    n = A.shape[0]
    V = np.eye(n)
    fro = np.linalg.norm(A, "fro")
    if n == 1 or fro == 0.0:
        return np.diag(A).copy(), V

    def offdiag():
        return math.sqrt(2.0 * np.sum(np.tril(A, -1) ** 2))

    for _ in range(max_sweeps):
        if offdiag() <= rel_tol * fro:
            return np.diag(A).copy(), V
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                vp, vq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    if offdiag() <= rel_tol * fro:
        return np.diag(A).copy(), V
    raise NoConvergence("Jacobi sweeps exceeded budget")


def solve_generalized_symmetric(prob, rel_tol=1e-12, max_sweeps=100):
    """Solve H v = lambda S v; eigenvalues ascending, vectors S-orthonormal.

    Reduction S = L L^T, Jacobi on L^-1 H L^-T, then v = L^-T y.  Eigenvector
    signs are fixed (largest-magnitude component positive) for determinism.
    """
    L = _cholesky(prob.S)
    Y = _forward_solve(L, prob.H)
    A = _forward_solve(L, Y.T).T
    A = 0.5 * (A + A.T)
    evals, Yvec = _jacobi_eigh(A, rel_tol, max_sweeps)
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    vecs = _back_solve_transpose(L, Yvec[:, order])
    for k in range(vecs.shape[1]):
        lead = np.argmax(np.abs(vecs[:, k]))
        if vecs[lead, k] < 0:
            vecs[:, k] = -vecs[:, k]
    return evals, vecs


@dataclass(frozen=True)
class LevelDiagnostics:
    index: int
    energy: float
    parity: str
    node_count: int
    boundary_exponent: float
    residual_norm: float
    degenerate: bool = False


@dataclass(frozen=True)
class SpectrumResult:
    """Ascending eigenvalues, basis coefficients, and per-level diagnostics."""

    basis: BasisSpec
    eigenvalues: np.ndarray
    coefficients: np.ndarray  # column k holds level k
    levels: Tuple[LevelDiagnostics, ...]

    def eigenfunction(self, k, x):
        """Level-k trial eigenfunction (zero outside the closed box)."""
        b = self.basis.geom.b
        x = np.asarray(x, dtype=float)
        scalar = x.ndim == 0
        xv = np.atleast_1d(x)
        out = np.zeros_like(xv)
        inside = np.abs(xv) < b
        if inside.any():
            chi, _ = _basis_tables(self.basis, xv[inside] / b)
            out[inside] = self.coefficients[:, k] @ chi
        return float(out[0]) if scalar else out


def _node_count(values):
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(np.diff(signs)))


def compute_spectrum(model, n_basis=32, n_diagnostics=None):
    """Assemble, solve, and attach diagnostics for the lowest levels.

    Parity comes from the even/odd Legendre coefficient support, node counts
    from sign changes on a 2048-point interior grid (10^-6 b wall margin),
    boundary exponents from the log-log slope of |psi| over
    b - |x| in [1e-4 b, 1e-2 b], and the residual is the worst relative
    pointwise defect of -kappa psi'' + V psi - E psi away from the walls.
    """
    basis = basis_for(model, n_basis)
    prob = assemble_matrices(model, basis)
    evals, vecs = solve_generalized_symmetric(prob)

    if n_diagnostics is None:
        n_diagnostics = min(n_basis, 12)
    b = basis.geom.b
    kappa = kinetic_coefficient(model)

    grid = np.linspace(-b * (1.0 - 1e-6), b * (1.0 - 1e-6), 2048)
    chi_g, _, d2chi_g = _basis_tables(basis, grid / b, with_second=True)
    v_grid = evaluate_potential(model, grid)

    s_fit = np.geomspace(1e-4 * b, 1e-2 * b, 40)
    chi_fit, _ = _basis_tables(basis, (b - s_fit) / b)

    interior = np.abs(grid) <= b * (1.0 - 1e-2)

    levels = []
    for k in range(min(n_diagnostics, n_basis)):
        c = vecs[:, k]
        energy = float(evals[k])
        even_w = np.linalg.norm(c[0::2])
        odd_w = np.linalg.norm(c[1::2])
        parity = "even" if even_w >= odd_w else "odd"

        psi = c @ chi_g
        nodes = _node_count(psi)

        psi_fit = np.abs(c @ chi_fit)
        slope = float(np.polyfit(np.log(s_fit), np.log(psi_fit), 1)[0])

        d2psi = c @ d2chi_g
        defect = -kappa * d2psi + v_grid * psi - energy * psi
        residual = float(np.max(np.abs(defect[interior])) / (abs(energy) * np.max(np.abs(psi))))

        degenerate = bool(
            (k + 1 < evals.size and abs(evals[k + 1] - energy) < 1e-12 * abs(energy))
            or (k > 0 and abs(energy - evals[k - 1]) < 1e-12 * abs(energy))
        )
        levels.append(LevelDiagnostics(k, energy, parity, nodes, slope, residual, degenerate))

    return SpectrumResult(basis, evals, vecs, tuple(levels))


@dataclass(frozen=True)
class ConvergenceTable:
    sizes: Tuple[int, ...]
    energies: np.ndarray  # row per size, column per level
    final_change: np.ndarray  # per-level relative change over the last step


def convergence_sweep(model, sizes, n_levels=6):
    """Per-level eigenvalues across basis sizes; variational, so each column
    is nonincreasing in N."""
    sizes = tuple(int(s) for s in sizes)
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly ascending")
    if sizes[0] < n_levels:
        raise ValueError("smallest basis must be >= number of tracked levels")
    rows = []
    for n in sizes:
        basis = basis_for(model, n)
        evals, _ = solve_generalized_symmetric(assemble_matrices(model, basis))
        rows.append(evals[:n_levels])
    energies = np.vstack(rows)
    if len(sizes) >= 2:
        final_change = np.abs(energies[-1] - energies[-2]) / np.abs(energies[-1])
    else:
        final_change = np.full(n_levels, np.nan)
    return ConvergenceTable(sizes, energies, final_change)


def matrix_to_csv(M):
    """Row-major CSV dump with a header row of column indices (debug aid)."""
    buf = io.StringIO()
    n = M.shape[1]
    buf.write(",".join(str(j) for j in range(n)) + "\n")
    for row in M:
        buf.write(",".join(repr(float(v)) for v in row) + "\n")
    return buf.getvalue()
