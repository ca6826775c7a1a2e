"""Acceptance gate: one check per shipping criterion, with a printed verdict.

Run as ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line
per criterion.  Two checks (3b and 4b) assert vanishing claims that are
mathematically false outside special sectors (one dimension, first-order
operators); they are kept as stated, fail with the exact counterexample
residual, and the corrected closed forms they violate are asserted green in
3a/4a and in the regular suite.
"""

import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
from scipy.linalg import expm

from geobracket.brackets import jacobi_residuals, qcpb, s_transform
from geobracket.classical import StructureMatrix, gpb, gspb
from geobracket.functions import (
    coord,
    cos_of,
    exponential,
    monomial,
    one,
    sin_of,
    zero,
)
from geobracket.grid import (
    GridSpec,
    compare,
    discretize,
    evolve,
    matrix_bracket,
    sample,
)
from geobracket.operators import (
    commutator,
    compose,
    momentum,
    mult,
    partial_d,
    position,
)
from geobracket.quantum import (
    Params,
    covariant_rhs,
    gdynamics,
    gen_heisenberg_rhs,
    geometric_ccr_suite,
    harmonic_oscillator,
)
from geobracket.randomized import (
    random_antisymmetric_matrix,
    random_diff_op,
    random_periodic_diff_op,
    random_periodic_fn,
    random_polynomial,
    random_structure_fn,
    trial_rng,
)
from geobracket.scalars import ComplexRational

I = ComplexRational(0, 1)
E_IX = exponential(1, (I,))
E_2IX = exponential(1, (ComplexRational(0, 2),))


def report(tag, label, ok, detail=""):
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {tag:<4} {'PASS' if ok else 'FAIL'} {label}{suffix}")
    assert ok, f"{label}{suffix}"


def test_criterion_1_exponential_pair_closed_form():
    """[F, G] with F = -i e^{ix} d, G = e^{ix} equals e^{2ix}(1 - i s')."""
    start = time.monotonic()
    wave_f = mult(E_IX).scaled(-I) * partial_d(1)
    wave_g = mult(E_IX)
    ok = True
    for s in (zero(1), coord(1, 0), monomial(1, (2,)), cos_of(1)):
        expected = mult(E_2IX * (one(1) - s.diff(0).scaled(I)))
        ok = ok and qcpb(s, wave_f, wave_g).total == expected
    elapsed = time.monotonic() - start
    report("1", "exponential pair closed form", ok and elapsed < 1.0,
           f"{elapsed:.3f}s")


def test_criterion_2_canonical_pair_closed_form():
    """[d, x .] equals (1 + x s') and reproduces (1 + x s') sin x on sin x."""
    ok = True
    for s in (zero(1), coord(1, 0), monomial(1, (2,)), cos_of(1)):
        factor = one(1) + coord(1, 0) * s.diff(0)
        total = qcpb(s, partial_d(1), position(1)).total
        ok = ok and total == mult(factor)
        ok = ok and total(sin_of(1)) == factor * sin_of(1)
    report("2", "canonical pair closed form", ok)


def _ccr_draws(count=200):
    for index in range(count):
        dim = index % 3 + 1
        rng = trial_rng(97, "acceptance-ccr", index)
        yield dim, random_polynomial(rng, dim, max_degree=3)


def test_criterion_3a_position_brackets_exact():
    """[x_i, p_j] = i hbar theta_ij and [x_i, x_j] = 0, 200 random draws."""
    start = time.monotonic()
    ok = True
    for dim, s in _ccr_draws():
        table = geometric_ccr_suite(s, Params())
        for i in range(dim):
            for j in range(dim):
                ok = ok and (
                    table.position_momentum[i, j].total
                    == table.expected_position_momentum(i, j)
                )
                ok = ok and table.position_position[i, j].total.is_zero
    elapsed = time.monotonic() - start
    report("3a", "position commutation table", ok and elapsed < 10.0,
           f"200 draws, n in 1..3, {elapsed:.2f}s")


def test_criterion_3b_momentum_momentum_vanishing():
    """[p_i, p_j] = 0 as claimed; false for n >= 2.

    The bracket equals hbar^2 ((d_j s) d_i - (d_i s) d_j) exactly, which is
    zero only in one dimension; criterion 3a plus the regular suite assert
    that closed form.  This check keeps the vanishing claim as stated and
    therefore fails on the first n = 2 draw.
    """
    failures = 0
    witness = ""
    for dim, s in _ccr_draws():
        table = geometric_ccr_suite(s, Params())
        for i in range(dim):
            for j in range(dim):
                if not table.momentum_momentum[i, j].total.is_zero:
                    failures += 1
                    if not witness:
                        witness = (
                            f"n={dim}, s={s}: [p_{i + 1}, p_{j + 1}] = "
                            f"{table.momentum_momentum[i, j].total}"
                        )
    report("3b", "momentum-momentum vanishing", failures == 0,
           witness or "all zero")


def _jacobi_draws(count=100):
    for index in range(count):
        rng = trial_rng(97, "acceptance-jacobi", index)
        dim = rng.randint(1, 2)
        s = random_structure_fn(rng, dim, max_degree=3)
        ops = tuple(
            random_diff_op(rng, dim, max_order=2, max_terms=2, max_degree=3)
            for _ in range(3)
        )
        yield s, ops


def test_criterion_4a_jacobi_decomposition():
    """N_cl = N_cc + N_ll exactly on 100 random order-2 triples."""
    start = time.monotonic()
    ok = True
    for s, (a, b, c) in _jacobi_draws():
        res = jacobi_residuals(s, a, b, c)
        ok = ok and res.n_cl == res.n_cc + res.n_ll and res.n_cc.is_zero
    elapsed = time.monotonic() - start
    report("4a", "jacobi decomposition", ok and elapsed < 30.0,
           f"100 triples, {elapsed:.2f}s")


def test_criterion_4b_jacobi_vanishing():
    """N_cl = 0 as claimed for order-2 operators; false beyond first order.

    The cyclic sum of the extended bracket vanishes exactly on 1-D
    first-order triples (asserted green in the regular suite) but keeps a
    nonzero remainder once any operand has order 2, so this check fails.
    """
    failures = 0
    witness = ""
    for s, (a, b, c) in _jacobi_draws():
        res = jacobi_residuals(s, a, b, c)
        if not res.n_cl.is_zero:
            failures += 1
            if not witness:
                witness = f"first nonzero N_cl has order {res.n_cl.order}"
    report("4b", "jacobi cyclic-sum vanishing", failures == 0,
           witness or "all zero")


def test_criterion_5_transform_rewritings():
    """Both transform rewritings of the bracket, 100 random pairs."""
    ok = True
    for index in range(100):
        rng = trial_rng(97, "acceptance-transform", index)
        dim = rng.randint(1, 2)
        s = random_structure_fn(rng, dim)
        a = random_diff_op(rng, dim, max_terms=2)
        b = random_diff_op(rng, dim, max_terms=2)
        total = qcpb(s, a, b).total
        plain = (
            compose(a, s_transform(s, b, "plain"))
            - compose(b, s_transform(s, a, "plain"))
            - compose(commutator(a, b), mult(s))
        )
        sg = compose(a, s_transform(s, b, "sg")) - compose(
            b, s_transform(s, a, "sg")
        )
        ok = ok and total == plain and total == sg
    report("5", "transform rewritings", ok, "100 pairs")


def test_criterion_6_oscillator_suite():
    """Flow generator and rate equations of the quadratic Hamiltonian."""
    params = Params(hbar=Fraction(2), mass=Fraction(3), omega=Fraction(2))
    h = harmonic_oscillator(params)
    p = momentum(1, hbar=params.hbar)
    x = position(1)
    ok = True
    for index in range(10):
        rng = trial_rng(97, "acceptance-osc", index)
        s = random_structure_fn(rng, 1)
        w = gdynamics(s, h).w_op
        # momentum-form reconstruction of the generator
        rebuilt = (
            (mult(compose(p, p)(s)) + compose(mult(p(s)), p).scaled(2))
            .scaled(ComplexRational(0, Fraction(1) / params.hbar))
            .scaled(Fraction(1, 2) / params.mass)
        )
        ok = ok and w == rebuilt
        # normal-ordered form: -(i hbar / 2m)(s'' + 2 s' d)
        normal = (
            mult(s.diff(0).diff(0))
            + compose(mult(s.diff(0)), partial_d(1)).scaled(2)
        ).scaled(ComplexRational(0, -params.hbar * Fraction(1, 2) / params.mass))
        ok = ok and w == normal
        ok = ok and covariant_rhs(s, h, x) == p.scaled(
            Fraction(1) / params.mass
        ) + compose(x, w)
        ok = ok and gen_heisenberg_rhs(s, h, x) == p.scaled(
            Fraction(1) / params.mass
        )
        ok = ok and gen_heisenberg_rhs(s, h, p) == mult(coord(1, 0)).scaled(
            -params.mass * params.omega**2
        ) - compose(h.op, mult(s.diff(0)))
        ok = ok and covariant_rhs(s, h, h.op).is_zero
        ok = ok and gen_heisenberg_rhs(s, h, h.op) == compose(h.op, w).scaled(-1)
    report("6", "oscillator dynamics suite", ok, "10 structure functions")


def test_criterion_7_oracle_homomorphism():
    """Symbolic-then-discretize matches matrix bracket at 1e-8, N = 256."""
    start = time.monotonic()
    spec = GridSpec(256)
    ok = True
    worst = 0.0
    # the worked exponential pair first
    s0 = cos_of(1)
    wave_f = mult(E_IX).scaled(-I) * partial_d(1)
    wave_g = mult(E_IX)
    rep = compare(
        qcpb(s0, wave_f, wave_g).total,
        matrix_bracket(s0, wave_f, wave_g, spec, "qcpb"),
        E_IX,
        1e-8,
    )
    ok = ok and rep.passed
    worst = max(worst, rep.l2_residual, rep.spectral_residual)
    draws = 0
    index = 0
    while draws < 20:
        rng = trial_rng(97, "acceptance-oracle", index)
        index += 1
        s = random_periodic_fn(rng, real=True)
        a = random_periodic_diff_op(rng)
        b = random_periodic_diff_op(rng)
        symbolic = qcpb(s, a, b).total
        if symbolic.is_zero:
            continue
        draws += 1
        rep = compare(symbolic, matrix_bracket(s, a, b, spec, "qcpb"), E_IX, 1e-8)
        ok = ok and rep.passed
        worst = max(worst, rep.l2_residual, rep.spectral_residual)
    elapsed = time.monotonic() - start
    report("7", "oracle homomorphism", ok and elapsed < 20.0,
           f"worst residual {worst:.2e}, {elapsed:.2f}s")


def test_criterion_8_dynamics_reduction():
    """Flat-structure evolution matches exponential conjugation at 1e-6."""
    spec = GridSpec(64)
    h_op = partial_d(1, 0, 2).scaled(Fraction(-1, 2)) + mult(cos_of(1))
    f0 = mult(cos_of(1))
    result = evolve(
        zero(1), h_op, f0, t_final=1.0, steps=2000, spec=spec, psi=E_IX
    )
    h = discretize(h_op, spec).matrix
    u = expm(-1j * h)
    exact = u.conj().T @ discretize(f0, spec).matrix @ u
    error = float(
        np.linalg.norm(result.final.matrix - exact) / np.linalg.norm(exact)
    )
    ok = error <= 1e-6

    # covariant flow of the Hamiltonian itself is frozen at rounding level
    covariant = evolve(
        cos_of(1), h_op, h_op, t_final=1.0, steps=200, spec=spec, law="covariant"
    )
    frozen = all(
        np.array_equal(op.matrix, h.astype(complex)) for op in covariant.operators
    )
    scale = -1j
    s_mat = np.diag(sample(cos_of(1), spec))
    rhs = scale * (
        (h @ h - h @ h) + h @ (s_mat @ h - h @ s_mat) - h @ (s_mat @ h - h @ s_mat)
    )
    rhs_norm = float(np.linalg.norm(rhs))
    ok = ok and frozen and rhs_norm <= 1e-12
    report("8", "dynamics reduction", ok,
           f"reduction error {error:.2e}, covariant RHS {rhs_norm:.1e}")


def test_criterion_9_classical_position_momentum_bracket():
    """{x_j, p_k}_s = {x_j, p_k} + x_j {s, p_k} + p_k J_jq d_q s exactly."""
    ok = True
    for index in range(40):
        rng = trial_rng(97, "acceptance-cche", index)
        pairs = rng.randint(1, 2)
        size = 2 * pairs
        s = random_polynomial(rng, size, max_degree=3)
        for j in (
            StructureMatrix.canonical(pairs),
            random_antisymmetric_matrix(rng, size),
        ):
            canonical = j == StructureMatrix.canonical(pairs)
            for a in range(pairs):
                for b in range(pairs):
                    x_a = coord(size, a)
                    p_b = coord(size, pairs + b)
                    contraction = zero(size)
                    for q in range(size):
                        if j[a, q]:
                            contraction = contraction + s.diff(q).scaled(j[a, q])
                    expected = (
                        gpb(x_a, p_b, j) + x_a * gpb(s, p_b, j) + p_b * contraction
                    )
                    ok = ok and gspb(s, x_a, p_b, j) == expected
                    if canonical:
                        delta = one(size) if a == b else zero(size)
                        explicit = (
                            delta + x_a * s.diff(b) + p_b * s.diff(pairs + a)
                        )
                        ok = ok and gspb(s, x_a, p_b, j) == explicit
    report("9", "classical position-momentum bracket", ok,
           "40 draws, canonical and random J")


def test_criterion_10_verify_determinism():
    """Two identical runs of the verify command emit identical bytes."""
    command = [sys.executable, "-m", "geobracket", "verify", "--seed", "7"]
    first = subprocess.run(command, capture_output=True)
    second = subprocess.run(command, capture_output=True)
    ok = (
        first.returncode == 0
        and second.returncode == 0
        and first.stdout == second.stdout
        and first.stdout
    )
    report("10", "verify determinism", bool(ok),
           f"exit {first.returncode}, {len(first.stdout)} bytes")
