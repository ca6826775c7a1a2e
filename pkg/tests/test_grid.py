"""Matrix oracle: discretization, bracket recomputation, and flows."""

from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm

from geobracket.brackets import qcpb
from geobracket.errors import (
    DimensionMismatch,
    EvolutionDiverged,
    NonPeriodicCoefficient,
)
from geobracket.functions import cos_of, coord, exponential, monomial, one, zero
from geobracket.grid import (
    GridSpec,
    compare,
    derivative_matrix,
    discretize,
    eigenvalues,
    evolve,
    is_hermitian,
    matrix_bracket,
    sample,
)
from geobracket.operators import mult, partial_d, position
from geobracket.quantum import geomentum
from geobracket.randomized import (
    random_periodic_diff_op,
    random_periodic_fn,
    trial_rng,
)
from geobracket.scalars import ComplexRational

I = ComplexRational(0, 1)
E_IX = exponential(1, (I,))


def test_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(8)
    with pytest.raises(ValueError):
        GridSpec(100)  # not a power of two
    with pytest.raises(ValueError):
        GridSpec(64, "upwind")
    assert GridSpec().n_points == 256


def test_spectral_matrix_is_anti_hermitian_with_integer_spectrum():
    spec = GridSpec(64)
    d = derivative_matrix(spec)
    assert np.linalg.norm(d + d.conj().T) < 1e-12
    ev = np.sort(np.linalg.eigvals(d).imag)
    assert np.max(np.abs(np.linalg.eigvals(d).real)) < 1e-10
    assert np.allclose(ev, np.arange(-31, 33), atol=1e-8)


def test_spectral_derivative_exact_on_resolved_mode():
    spec = GridSpec(256)
    d = discretize(partial_d(1), spec)
    psi = sample(E_IX, spec)
    assert np.max(np.abs(d.matrix @ psi - 1j * psi)) <= 1e-10


def test_diagonal_sampling():
    spec = GridSpec(64)
    g = discretize(mult(E_IX), spec)
    assert np.allclose(np.diag(g.matrix), np.exp(1j * spec.points()))
    assert np.count_nonzero(g.matrix - np.diag(np.diag(g.matrix))) == 0


def test_polynomial_coefficient_policy():
    with pytest.raises(NonPeriodicCoefficient):
        discretize(position(1), GridSpec(64, "spectral"))
    g = discretize(position(1), GridSpec(64, "central2"))
    assert np.allclose(np.diag(g.matrix), GridSpec(64).points())


def test_two_dimensional_rejected():
    with pytest.raises(DimensionMismatch):
        discretize(partial_d(2), GridSpec(64))


def test_diagonal_matrices_commute_exactly():
    spec = GridSpec(64)
    a = discretize(mult(E_IX), spec).matrix
    b = discretize(mult(cos_of(1)), spec).matrix
    assert np.array_equal(a @ b, b @ a)


def test_matrix_bracket_self_is_zero():
    spec = GridSpec(64)
    a = mult(E_IX).scaled(-I) * partial_d(1)
    s = cos_of(1)
    out = matrix_bracket(s, a, a, spec, "geomutator")
    assert np.linalg.norm(out.matrix) < 1e-12


def test_wave_pair_bracket_matches_diagonal():
    spec = GridSpec(256)
    f = mult(E_IX).scaled(-I) * partial_d(1)
    g = mult(E_IX)
    out = matrix_bracket(zero(1), f, g, spec, "qpb")
    doubled = mult(exponential(1, (ComplexRational(0, 2),)))
    report = compare(doubled, out, E_IX, 1e-8)
    assert report.passed, (report.l2_residual, report.spectral_residual)
    action = out.matrix @ sample(E_IX, spec)
    expected = np.exp(2j * spec.points()) * sample(E_IX, spec)
    assert np.max(np.abs(action - expected)) <= 1e-8


def test_wave_pair_extended_bracket_matches_symbolic():
    spec = GridSpec(256)
    s = cos_of(1)
    f = mult(E_IX).scaled(-I) * partial_d(1)
    g = mult(E_IX)
    symbolic = qcpb(s, f, g).total
    numeric = matrix_bracket(s, f, g, spec, "qcpb")
    report = compare(symbolic, numeric, E_IX, 1e-8)
    assert report.passed


def test_compare_identical_source():
    spec = GridSpec(64)
    op = mult(cos_of(1)) * partial_d(1)
    report = compare(op, discretize(op, spec), E_IX, 1e-8)
    assert report.l2_residual <= 1e-12
    assert report.spectral_residual <= 1e-12


def test_compare_detects_injected_fault():
    spec = GridSpec(256)
    f = mult(E_IX).scaled(-I) * partial_d(1)
    g = mult(E_IX)
    s = cos_of(1)
    symbolic = qcpb(s, f, g).total
    perturbed = symbolic + mult(one(1).scaled(Fraction(1, 1000)))
    report = compare(perturbed, matrix_bracket(s, f, g, spec, "qcpb"), E_IX, 1e-8)
    assert report.l2_residual >= 1e-4
    assert report.spectral_residual >= 1e-4
    assert not report.passed


def test_compare_requires_periodic_state():
    spec = GridSpec(64)
    op = mult(cos_of(1))
    with pytest.raises(NonPeriodicCoefficient):
        compare(op, discretize(op, spec), coord(1, 0), 1e-8)


def draw_nondegenerate_bracket(rng):
    """Periodic (s, a, b) whose extended bracket is not identically zero."""
    while True:
        s = random_periodic_fn(rng, real=True)
        a = random_periodic_diff_op(rng)
        b = random_periodic_diff_op(rng)
        report = qcpb(s, a, b)
        if not report.total.is_zero:
            return s, a, b, report.total


@pytest.mark.parametrize("index", range(20))
def test_bracket_homomorphism(index):
    """Symbolic bracket then discretize == discretize then matrix bracket."""
    rng = trial_rng(41, "homomorphism", index)
    spec = GridSpec(256)
    s, a, b, symbolic = draw_nondegenerate_bracket(rng)
    numeric = matrix_bracket(s, a, b, spec, "qcpb")
    report = compare(symbolic, numeric, E_IX, 1e-8)
    assert report.passed, (report.l2_residual, report.spectral_residual)


def _kinetic_plus_cosine():
    return partial_d(1, 0, 2).scaled(Fraction(-1, 2)) + mult(cos_of(1))


def test_plain_evolution_matches_exponential_conjugation():
    spec = GridSpec(64)
    h_op = _kinetic_plus_cosine()
    f0 = mult(cos_of(1))
    result = evolve(
        zero(1), h_op, f0, t_final=1.0, steps=2000, spec=spec, psi=E_IX
    )
    h = discretize(h_op, spec).matrix
    f_start = discretize(f0, spec).matrix
    u = expm(-1j * h)
    exact = u.conj().T @ f_start @ u
    error = np.linalg.norm(result.final.matrix - exact) / np.linalg.norm(exact)
    assert error <= 1e-6
    assert max(result.residuals) == 0.0  # s = 0: decomposition defect is exactly 0


def test_covariant_evolution_of_hamiltonian_is_frozen():
    spec = GridSpec(64)
    h_op = _kinetic_plus_cosine()
    result = evolve(
        cos_of(1),
        h_op,
        h_op,
        t_final=1.0,
        steps=100,
        spec=spec,
        law="covariant",
    )
    h = discretize(h_op, spec).matrix
    assert np.array_equal(result.final.matrix, h.astype(complex))
    assert max(result.residuals) <= 1e-12


def test_decomposition_residual_stays_at_rounding_level():
    spec = GridSpec(64)
    h_op = _kinetic_plus_cosine()
    result = evolve(
        cos_of(1),
        h_op,
        mult(cos_of(1)),
        t_final=0.5,
        steps=200,
        spec=spec,
        law="covariant",
        psi=E_IX,
    )
    assert max(result.residuals) <= 1e-12


def test_rk4_is_fourth_order():
    spec = GridSpec(32)
    h_op = _kinetic_plus_cosine()
    f0 = mult(cos_of(1))
    h = discretize(h_op, spec).matrix
    f_start = discretize(f0, spec).matrix
    u = expm(-1j * h)
    exact = u.conj().T @ f_start @ u
    errors = []
    for steps in (200, 400):
        result = evolve(zero(1), h_op, f0, t_final=1.0, steps=steps, spec=spec)
        errors.append(np.linalg.norm(result.final.matrix - exact))
    factor = errors[0] / errors[1]
    assert 12.0 <= factor <= 20.0


def test_evolution_divergence_aborts():
    # A step far outside the RK4 stability region blows up quickly.
    spec = GridSpec(64)
    h_op = partial_d(1, 0, 2).scaled(Fraction(-1, 2))
    with pytest.raises(EvolutionDiverged):
        evolve(zero(1), h_op, mult(cos_of(1)), t_final=500.0, steps=60, spec=spec)


def test_csv_format():
    spec = GridSpec(16)
    result = evolve(
        zero(1),
        _kinetic_plus_cosine(),
        mult(cos_of(1)),
        t_final=0.1,
        steps=10,
        spec=spec,
        psi=E_IX,
        n_samples=3,
    )
    lines = list(result.csv_lines())
    assert lines[0] == "t,re_expect,im_expect,residual"
    assert len(lines) >= 3
    for row in lines[1:]:
        parts = row.split(",")
        assert len(parts) == 4
        float(parts[0])  # parseable


def test_geomentum_hermiticity_report():
    spec = GridSpec(64, "central2")
    flat = discretize(geomentum(zero(1)), spec)
    # -i d with an antisymmetric real stencil is Hermitian
    assert is_hermitian(flat)
    shifted = discretize(geomentum(monomial(1, (2,))), spec)
    assert not is_hermitian(shifted)


def test_eigenvalue_report_is_sorted():
    spec = GridSpec(16)
    values = eigenvalues(discretize(partial_d(1), spec))
    reals = values.real
    assert all(reals[i] <= reals[i + 1] + 1e-12 for i in range(len(reals) - 1))
