"""Independent finite-difference eigensolver used to cross-check the algebra.

The 1-D operator -d^2/dx^2 + V(x) is discretized on an interior grid with
Dirichlet walls: a truncated interval [-L, L] for the hyperbolic geometry
(the exp(-g cosh^2 x) decay makes truncation error negligible for modest L)
and the open cell (-pi/2, pi/2) for the trigonometric one, where the tan^2
barrier acts as an impenetrable wall.

Eigenvalues come from Sturm-sequence counting plus bisection; the counting
pass is vectorized over shifts, and independent problems sharing a grid can
be stacked and solved together.  Eigenvectors (needed for parity detection)
are obtained by inverse iteration on the shifted tridiagonal system.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import solve_banded

from .core import Geometry, ModelParams, Parity, eval_potential
from .errors import ConvergenceError

DEFAULT_POINTS_HYPERBOLIC = 6000
DEFAULT_POINTS_TRIGONOMETRIC = 12000
DEFAULT_HALF_WIDTH = 3.0
GRID_ENV_VAR = "QES_GRID_POINTS"
#: accept a mirror overlap as decisive parity evidence beyond this magnitude
PARITY_THRESHOLD = 0.9
_MAX_BISECTIONS = 200


class Scheme(enum.Enum):
    CENTRAL2 = "central2"
    NUMEROV = "numerov"

    @property
    def convergence_order(self) -> int:
        return 2 if self is Scheme.CENTRAL2 else 4


@dataclass(frozen=True)
class GridConfig:
    """Discretization request; ``points`` counts subintervals, the interior
    grid carries ``points - 1`` unknowns."""

    half_width: float
    points: int
    scheme: Scheme = Scheme.CENTRAL2
    richardson: bool = False

    def __post_init__(self):
        if self.points < 100:
            raise ValueError("grid needs at least 100 points")
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")


@dataclass(frozen=True)
class NumericSpectrum:
    """Lowest levels with parities and per-level error estimates."""

    energies: np.ndarray
    parities: list
    residuals: np.ndarray


class SymTridiagonal:
    """Symmetric tridiagonal operator (central second differences)."""

    def __init__(self, diag, off):
        self.diag = np.asarray(diag, dtype=float)
        self.off = np.asarray(off, dtype=float)
        if self.off.size != self.diag.size - 1:
            raise ValueError("off-diagonal must be one shorter than the diagonal")

    @property
    def size(self) -> int:
        return self.diag.size

    def bracket(self):
        rad = np.zeros_like(self.diag)
        rad[:-1] += np.abs(self.off)
        rad[1:] += np.abs(self.off)
        return float(np.min(self.diag - rad)), float(np.max(self.diag + rad))

    def count_below(self, lams) -> np.ndarray:
        lams = np.atleast_1d(np.asarray(lams, dtype=float))
        return _sturm_pass(self.diag[None, :], (self.off * self.off)[None, :], lams[None, :])[0]

    def shifted_banded(self, lam: float) -> np.ndarray:
        n = self.size
        ab = np.zeros((3, n))
        ab[0, 1:] = self.off
        ab[1, :] = self.diag - lam
        ab[2, :-1] = self.off
        return ab


class NumerovPencil:
    """Fourth-order compact discretization as a generalized pencil.

    The eigenproblem is A psi = E B psi with tridiagonal A, B; counting uses
    the pivot recurrence on X(E) = A - E B, whose inertia matches that of
    the (symmetric, dense) equivalent standard form because B is positive
    definite and commutes with the difference operator.
    """

    def __init__(self, v, h):
        self.v = np.asarray(v, dtype=float)
        self.h = float(h)

    @property
    def size(self) -> int:
        return self.v.size

    def bracket(self):
        pad = 6.0 / (self.h * self.h) + 1.0
        return float(np.min(self.v) - 1.0), float(np.max(self.v) + pad)

    def _entries(self, lams):
        inv_h2 = 1.0 / (self.h * self.h)
        diag = 2.0 * inv_h2 + (10.0 / 12.0) * (self.v[:, None] - lams[None, :])
        off = -inv_h2 + (self.v[:, None] - lams[None, :]) / 12.0
        return diag, off

    def count_below(self, lams) -> np.ndarray:
        lams = np.atleast_1d(np.asarray(lams, dtype=float))
        diag, off = self._entries(lams)
        # the sub/super pair between rows i-1 and i multiplies to
        # off[i-1] * off[i]; row entries use the potential of their own row
        prod = off[:-1, :] * off[1:, :]
        d = diag[0]
        count = (d < 0).astype(np.int64)
        with np.errstate(divide="ignore", invalid="ignore"):
            for i in range(1, self.size):
                d = diag[i] - prod[i - 1] / d
                d = np.where(d == 0.0, -1e-300, d)
                count += d < 0
        return count

    def shifted_banded(self, lam: float) -> np.ndarray:
        inv_h2 = 1.0 / (self.h * self.h)
        n = self.size
        ab = np.zeros((3, n))
        ab[1, :] = 2.0 * inv_h2 + (10.0 / 12.0) * (self.v - lam)
        ab[0, 1:] = -inv_h2 + (self.v[1:] - lam) / 12.0
        ab[2, :-1] = -inv_h2 + (self.v[:-1] - lam) / 12.0
        return ab


def _sturm_pass(diags, offsq, lams):
    """Negative-pivot counts for stacked problems.

    diags: (B, n); offsq: (B, n-1); lams: (B, m) -> counts (B, m).
    """
    d = diags[:, [0]] - lams
    d = np.where(d == 0.0, -1e-300, d)
    count = (d < 0).astype(np.int64)
    n = diags.shape[1]
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for i in range(1, n):
            d = diags[:, [i]] - lams - offsq[:, [i - 1]] / d
            d = np.where(d == 0.0, -1e-300, d)
            count += d < 0
    return count


def sturm_count(op, lam: float) -> int:
    """Number of eigenvalues of ``op`` strictly below ``lam``."""
    return int(op.count_below(np.array([lam]))[0])


def _bisect(count_fn, brackets_lo, brackets_hi, m: int, tol: float | None):
    b = brackets_lo.shape[0]
    targets = np.arange(1, m + 1)[None, :]
    los = np.repeat(brackets_lo[:, None], m, axis=1)
    his = np.repeat(brackets_hi[:, None], m, axis=1)
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (los + his)
        counts = count_fn(mid)
        go_down = counts >= targets
        his = np.where(go_down, mid, his)
        los = np.where(go_down, los, mid)
        width = his - los
        goal = (tol if tol is not None else 1e-10) * np.maximum(
            1.0, np.maximum(np.abs(los), np.abs(his))
        )
        if np.all(width <= goal):
            return 0.5 * (los + his)
    raise ConvergenceError("bisection failed to reach the requested tolerance")


def eigen_lowest(op, m: int, tol: float | None = None) -> np.ndarray:
    """The ``m`` smallest eigenvalues by Sturm counting and bisection.

    The interval for each eigenvalue is narrowed until its width falls
    below ``tol * max(1, |lambda|)`` (default 1e-10).
    """
    if m > op.size:
        raise ValueError(f"requested {m} eigenvalues from an operator of size {op.size}")
    lo, hi = op.bracket()

    def count_fn(mids):
        return op.count_below(mids.ravel()).reshape(mids.shape)

    return _bisect(count_fn, np.array([lo]), np.array([hi]), m, tol)[0]


def eigen_lowest_batch(ops, m: int, tol: float | None = None) -> np.ndarray:
    """Solve several same-size central-difference operators in one sweep."""
    if not ops:
        return np.zeros((0, m))
    n = ops[0].size
    for op in ops:
        if not isinstance(op, SymTridiagonal) or op.size != n:
            raise ValueError("batch solving requires same-size central-difference operators")
    diags = np.stack([op.diag for op in ops])
    offsq = np.stack([op.off * op.off for op in ops])
    los = np.array([op.bracket()[0] for op in ops])
    his = np.array([op.bracket()[1] for op in ops])
    return _bisect(lambda mids: _sturm_pass(diags, offsq, mids), los, his, m, tol)


def eigenvector(op, lam: float, iterations: int = 3, seed: int = 7) -> np.ndarray:
    """Inverse iteration at the converged shift ``lam``."""
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal(op.size)
    vec /= np.linalg.norm(vec)
    shift = lam
    for _ in range(iterations):
        try:
            vec = solve_banded((1, 1), op.shifted_banded(shift), vec)
        except np.linalg.LinAlgError:
            shift = lam + 1e-10 * (1.0 + abs(lam))
            vec = solve_banded((1, 1), op.shifted_banded(shift), vec)
        vec /= np.linalg.norm(vec)
    return vec


def mirror_parity(vec: np.ndarray) -> Parity | None:
    """Parity from the overlap of an eigenvector with its mirror image."""
    overlap = float(np.dot(vec, vec[::-1]))
    if overlap > PARITY_THRESHOLD:
        return Parity.EVEN
    if overlap < -PARITY_THRESHOLD:
        return Parity.ODD
    return None


def interior_grid(half_width: float, points: int):
    """Interior abscissae and spacing for Dirichlet walls at +-half_width."""
    h = 2.0 * half_width / points
    xs = -half_width + h * np.arange(1, points)
    return xs, h


def fd_operator(v_values, h: float, scheme: Scheme = Scheme.CENTRAL2):
    """Discrete Hamiltonian from sampled potential values (Dirichlet ends)."""
    v_values = np.asarray(v_values, dtype=float)
    if scheme is Scheme.CENTRAL2:
        inv_h2 = 1.0 / (h * h)
        return SymTridiagonal(2.0 * inv_h2 + v_values, np.full(v_values.size - 1, -inv_h2))
    return NumerovPencil(v_values, h)


def fd_hamiltonian(params: ModelParams, grid: GridConfig):
    """Discretized Schroedinger operator for the model potential."""
    half = grid.half_width
    if params.geometry is Geometry.TRIGONOMETRIC:
        half = math.pi / 2
    xs, h = interior_grid(half, grid.points)
    return fd_operator(eval_potential(params, xs), h, grid.scheme)


def default_grid(params: ModelParams) -> GridConfig:
    """Geometry defaults; ``QES_GRID_POINTS`` overrides the point count."""
    env = os.environ.get(GRID_ENV_VAR)
    if params.geometry is Geometry.HYPERBOLIC:
        points = int(env) if env else DEFAULT_POINTS_HYPERBOLIC
        return GridConfig(half_width=DEFAULT_HALF_WIDTH, points=points)
    points = int(env) if env else DEFAULT_POINTS_TRIGONOMETRIC
    return GridConfig(half_width=math.pi / 2, points=points, richardson=True)


def _solve_once(params: ModelParams, grid: GridConfig, m: int):
    op = fd_hamiltonian(params, grid)
    return op, eigen_lowest(op, m)


def numeric_spectrum(params: ModelParams, m: int = 8, grid: GridConfig | None = None) -> NumericSpectrum:
    """Lowest ``m`` levels with parities; optional Richardson refinement.

    The hyperbolic half-width is widened automatically until the wall value
    of the potential clears ten times the largest requested level.
    """
    if grid is None:
        grid = default_grid(params)

    if params.geometry is Geometry.HYPERBOLIC:
        for _ in range(8):
            op, energies = _solve_once(params, grid, m)
            wall = eval_potential(params, grid.half_width)
            if wall > 10.0 * max(abs(energies[-1]), 1.0):
                break
            grid = replace(grid, half_width=grid.half_width + 0.5)
        else:
            raise ConvergenceError("could not find a wide-enough hyperbolic box")
    else:
        op, energies = _solve_once(params, grid, m)

    if grid.richardson:
        fine = replace(grid, points=2 * grid.points)
        op, fine_energies = _solve_once(params, fine, m)
        weight = 2.0 ** grid.scheme.convergence_order
        extrapolated = (weight * fine_energies - energies) / (weight - 1.0)
        residuals = np.abs(fine_energies - energies)
        energies = extrapolated
    else:
        residuals = np.full(m, np.nan)

    parities = [mirror_parity(eigenvector(op, lam)) for lam in
                (fine_energies if grid.richardson else energies)]
    if not np.all(np.diff(energies) > 0):
        raise ConvergenceError("numeric spectrum is not strictly increasing")
    return NumericSpectrum(energies=energies, parities=parities, residuals=residuals)
