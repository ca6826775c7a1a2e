"""Dense-matrix realization of operators on a periodic 1-D grid.

This is the package's independent numerical check: operators become N x N
complex matrices on the uniform grid over [0, 2*pi), brackets are recomputed
with matrix products, and flows are integrated with classic fourth-order
Runge-Kutta.  Everything here is double precision on purpose, so agreement
with the exact engine is evidence rather than tautology.

Scheme notes: ``spectral`` differentiates through the FFT and is exact (to
rounding) on resolved Fourier modes, so it demands 2*pi-periodic
coefficients; ``central2`` is a second-order stencil that accepts arbitrary
coefficients (monomials included) at the cost of accuracy, with comparisons
expected to exclude a boundary band near the domain seam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    EvolutionDiverged,
    NonPeriodicCoefficient,
)
from .functions import CoefFn
from .operators import DiffOp

SCHEMES = ("spectral", "central2")


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on [0, 2*pi) with a differentiation scheme."""

    n_points: int = 256
    scheme: str = "spectral"

    def __post_init__(self):
        if self.n_points < 16:
            raise ValueError("n_points must be >= 16")
        if self.n_points & (self.n_points - 1):
            raise ValueError("n_points must be a power of two")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")

    @property
    def spacing(self) -> float:
        return 2.0 * math.pi / self.n_points

    def points(self) -> np.ndarray:
        return np.arange(self.n_points) * self.spacing

    def boundary_band(self) -> int:
        """Points to drop at each end of the seam for non-periodic data."""
        return self.n_points // 8 if self.scheme == "central2" else 0


def derivative_matrix(spec: GridSpec) -> np.ndarray:
    """First-derivative matrix for the scheme; higher orders are its powers.

    The spectral matrix is ``ifft . diag(i k) . fft`` with integer
    wavenumbers ``k in {-n/2+1, ..., n/2}``: anti-Hermitian, exact on
    resolved modes, and with the Nyquist mode assigned ``+n/2`` so that its
    powers carry the full symbol ``(i k)^order`` (zeroing the Nyquist would
    misplace that mode's frequency in every even-order derivative).
    """
    n = spec.n_points
    if spec.scheme == "spectral":
        wavenumbers = np.fft.fftfreq(n, d=1.0 / n)
        wavenumbers[n // 2] = n / 2
        modes = np.fft.fft(np.eye(n), axis=0)
        return np.fft.ifft(1j * wavenumbers[:, None] * modes, axis=0)
    forward = np.roll(np.eye(n), -1, axis=1)
    backward = np.roll(np.eye(n), 1, axis=1)
    return (forward - backward) / (2.0 * spec.spacing)


def sample(f: CoefFn, spec: GridSpec) -> np.ndarray:
    """Evaluate a 1-D coefficient function on the grid points."""
    if f.dim != 1:
        raise DimensionMismatch("grid sampling requires 1-D functions")
    x = spec.points()
    values = np.zeros(spec.n_points, dtype=complex)
    for (nu, kappa), coeff in f.terms.items():
        term = np.full(spec.n_points, coeff.to_complex())
        if nu[0]:
            term = term * x ** nu[0]
        freq = kappa[0].to_complex()
        if freq:
            term = term * np.exp(freq * x)
        values += term
    return values


def _is_periodic_term(nu, kappa) -> bool:
    return nu[0] == 0 and kappa[0].re == 0 and kappa[0].im.denominator == 1


def is_grid_periodic(f: CoefFn) -> bool:
    """True when every term is a plane wave resolved on a 2*pi-periodic grid."""
    return f.dim == 1 and all(
        _is_periodic_term(nu, kappa) for nu, kappa in f.terms
    )


@dataclass(frozen=True)
class GridOp:
    """Dense matrix realization of an operator on a grid."""

    matrix: np.ndarray
    spec: GridSpec

    @property
    def n_points(self) -> int:
        return self.spec.n_points


def discretize(op: DiffOp, spec: GridSpec) -> GridOp:
    """Realize ``sum_alpha c_alpha d^alpha`` as ``sum diag(c_alpha) D^alpha``."""
    if op.dim != 1:
        raise DimensionMismatch("the grid oracle is one-dimensional")
    d1 = derivative_matrix(spec)
    powers = {0: np.eye(spec.n_points)}
    out = np.zeros((spec.n_points, spec.n_points), dtype=complex)
    for (order,), coeff in op.terms.items():
        if spec.scheme == "spectral" and not is_grid_periodic(coeff):
            raise NonPeriodicCoefficient(
                "spectral scheme requires 2*pi-periodic coefficients; "
                "use scheme='central2' for polynomial coefficients"
            )
        if order not in powers:
            powers[order] = np.linalg.matrix_power(d1, order)
        out += np.diag(sample(coeff, spec)) @ powers[order]
    return GridOp(out, spec)


def _comm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def matrix_bracket(
    s: CoefFn,
    a: DiffOp,
    b: DiffOp,
    spec: GridSpec,
    kind: str = "qcpb",
) -> GridOp:
    """Recompute a bracket with matrix products only."""
    s_mat = np.diag(sample(s, spec))
    a_mat = discretize(a, spec).matrix
    b_mat = discretize(b, spec).matrix
    if kind == "qpb":
        out = _comm(a_mat, b_mat)
    elif kind == "geomutator":
        out = a_mat @ _comm(s_mat, b_mat) - b_mat @ _comm(s_mat, a_mat)
    elif kind == "qcpb":
        out = (
            _comm(a_mat, b_mat)
            + a_mat @ _comm(s_mat, b_mat)
            - b_mat @ _comm(s_mat, a_mat)
        )
    else:
        raise ValueError(f"unknown bracket kind {kind!r}")
    return GridOp(out, spec)


@dataclass(frozen=True)
class ComparisonReport:
    """Residuals between a symbolic operator and a matrix realization."""

    l2_residual: float
    spectral_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return (
            self.l2_residual <= self.tolerance
            and self.spectral_residual <= self.tolerance
        )


def _resolved_band_projector(n: int, band: int) -> np.ndarray:
    """Projector onto Fourier modes with |k| <= band."""
    wavenumbers = np.fft.fftfreq(n, d=1.0 / n)
    mask = (np.abs(wavenumbers) <= band).astype(float)
    modes = np.fft.fft(np.eye(n), axis=0)
    return np.real(np.fft.ifft(mask[:, None] * modes, axis=0))


def compare(
    symbolic: DiffOp,
    numeric: GridOp,
    psi: CoefFn,
    tolerance: float = 1e-8,
) -> ComparisonReport:
    """Relative agreement of ``discretize(symbolic)`` with a matrix.

    Reports the relative L2 defect of the action on ``psi`` and a relative
    spectral-norm defect.  No differentiation matrix satisfies the product
    rule on aliased modes, so under the spectral scheme the norm comparison
    is restricted to the resolved band |k| <= n/4, where agreement is exact
    to rounding; under central2 a boundary band of ``n/8`` points at each
    end of the domain is excluded from the L2 residual instead (wraparound
    pollutes the seam for non-periodic data).
    """
    spec = numeric.spec
    if spec.scheme == "spectral" and not is_grid_periodic(psi):
        raise NonPeriodicCoefficient(
            "spectral comparison requires a periodic test function"
        )
    sym_mat = discretize(symbolic, spec).matrix
    psi_vec = sample(psi, spec)
    band = spec.boundary_band()
    keep = slice(band, spec.n_points - band) if band else slice(None)
    sym_action = (sym_mat @ psi_vec)[keep]
    num_action = (numeric.matrix @ psi_vec)[keep]

    defect = sym_mat - numeric.matrix
    reference = sym_mat
    if spec.scheme == "spectral":
        projector = _resolved_band_projector(spec.n_points, spec.n_points // 4)
        defect = defect @ projector
        reference = sym_mat @ projector
    op_scale = max(float(np.linalg.norm(reference, 2)), 1.0)
    spectral = float(np.linalg.norm(defect, 2)) / op_scale

    # Scale the action defect by the larger of the action itself and the
    # operator scale applied to psi, so tiny-norm totals do not inflate it.
    action_scale = max(
        float(np.linalg.norm(sym_action)),
        op_scale * float(np.linalg.norm(psi_vec)),
    )
    l2 = float(np.linalg.norm(sym_action - num_action)) / action_scale
    return ComparisonReport(l2, spectral, tolerance)


LAWS = ("generalized_heisenberg", "covariant")


@dataclass(frozen=True)
class EvolutionResult:
    """Sampled trajectory of an operator flow on the grid.

    ``residuals`` holds, per sample, the relative Frobenius defect of the
    decomposition ``covariant rate - plain rate - F w``; it is a
    self-consistency diagnostic and stays at rounding level.
    """

    law: str
    spec: GridSpec
    times: list = field(default_factory=list)
    expectations: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    operators: list = field(default_factory=list)

    @property
    def final(self) -> GridOp:
        return self.operators[-1]

    def csv_lines(self):
        """Rows ``t,re_expect,im_expect,residual`` at 17 significant digits."""
        yield "t,re_expect,im_expect,residual"
        for t, expect, residual in zip(self.times, self.expectations, self.residuals):
            yield (
                f"{t:.17g},{expect.real:.17g},{expect.imag:.17g},{residual:.17g}"
            )

    def write_csv(self, stream) -> None:
        for line in self.csv_lines():
            stream.write(line + "\n")


def evolve(
    s: CoefFn,
    hamiltonian: DiffOp,
    f0: DiffOp,
    *,
    t_final: float,
    steps: int,
    spec: GridSpec,
    law: str = "generalized_heisenberg",
    hbar=1,
    psi: CoefFn | None = None,
    n_samples: int = 101,
) -> EvolutionResult:
    """Integrate ``dF/dt = rate(F)`` with classic RK4, emitting samples.

    ``law`` selects the plain (``generalized_heisenberg``) or ``covariant``
    rate; expectation values ``<psi|F|psi> / <psi|psi>`` are recorded
    against the supplied state (a uniform state when ``psi`` is omitted).
    """
    if law not in LAWS:
        raise ValueError(f"law must be one of {LAWS}")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    h_mat = discretize(hamiltonian, spec).matrix
    s_mat = np.diag(sample(s, spec))
    f_mat = discretize(f0, spec).matrix.astype(complex)
    if psi is None:
        psi_vec = np.ones(spec.n_points, dtype=complex)
    else:
        psi_vec = sample(psi, spec)
    psi_norm2 = float(np.real(np.vdot(psi_vec, psi_vec)))

    scale = -1j / float(hbar)  # 1/(i hbar)
    comm_sh = _comm(s_mat, h_mat)
    w_mat = scale * comm_sh

    def plain_rate(f):
        return scale * (_comm(f, h_mat) - h_mat @ _comm(s_mat, f))

    def covariant_rate(f):
        return scale * (_comm(f, h_mat) + f @ comm_sh - h_mat @ _comm(s_mat, f))

    rate = covariant_rate if law == "covariant" else plain_rate

    def decomposition_residual(f):
        defect = covariant_rate(f) - plain_rate(f) - f @ w_mat
        denom = max(1.0, float(np.linalg.norm(covariant_rate(f))))
        return float(np.linalg.norm(defect)) / denom

    def expectation(f):
        return complex(np.vdot(psi_vec, f @ psi_vec)) / psi_norm2

    dt = t_final / steps
    n_samples = max(2, min(n_samples, steps + 1))
    sample_steps = sorted({round(k * steps / (n_samples - 1)) for k in range(n_samples)})

    result = EvolutionResult(law=law, spec=spec)

    def record(step_index, f):
        t = step_index * dt
        result.times.append(t)
        result.expectations.append(expectation(f))
        result.residuals.append(decomposition_residual(f))
        result.operators.append(GridOp(f.copy(), spec))

    record(0, f_mat)
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(1, steps + 1):
            k1 = rate(f_mat)
            k2 = rate(f_mat + 0.5 * dt * k1)
            k3 = rate(f_mat + 0.5 * dt * k2)
            k4 = rate(f_mat + dt * k3)
            f_mat = f_mat + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(f_mat)):
                raise EvolutionDiverged(
                    f"non-finite values at step {step} (t = {step * dt:.6g}); "
                    "reduce the step size or the operator order"
                )
            if step in sample_steps:
                record(step, f_mat)
    return result


def is_hermitian(op: GridOp, tolerance: float = 1e-10) -> bool:
    defect = np.linalg.norm(op.matrix - op.matrix.conj().T)
    scale = max(1.0, float(np.linalg.norm(op.matrix)))
    return float(defect) / scale <= tolerance


def eigenvalues(op: GridOp) -> np.ndarray:
    """Eigenvalues sorted by (real, imaginary) part for deterministic output."""
    values = np.linalg.eigvals(op.matrix)
    order = np.lexsort((values.imag, values.real))
    return values[order]
