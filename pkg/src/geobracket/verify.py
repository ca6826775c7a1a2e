"""Randomized identity suite behind the ``verify`` command.

Each check asserts an exact structural identity of the engine on seeded
random inputs.  Checks run in their domain of validity: the cyclic Jacobi
sum of the extended bracket vanishes for first-order operators (and is
checked there), while for higher-order operators only the decomposition
``N_cl = N_cc + N_ll`` holds and is checked on order-2 draws.  Likewise the
momentum-momentum bracket is compared against its exact closed form, which
is zero only in one dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .brackets import (
    geomutator,
    hermitian_split_qcpb,
    jacobi_residuals,
    qcpb,
    sandwich,
    s_transform,
)
from .classical import StructureMatrix, dynamics_rhs, gpb, gspb
from .functions import const, coord, one, zero
from .operators import commutator, compose, mult
from .quantum import (
    Params,
    custom,
    covariant_rhs,
    gdynamics,
    gen_heisenberg_rhs,
    geometric_ccr_suite,
    geomutator_ccr_part,
)
from .randomized import (
    random_antisymmetric_matrix,
    random_diff_op,
    random_first_order_op,
    random_polynomial,
    random_scalar,
    random_structure_fn,
    trial_rng,
)
from .scalars import ComplexRational


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: int
    trials: int
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.passed == self.trials


def _pick_dim(rng, max_dim):
    return rng.randint(1, max_dim)


def _draw(rng, max_dim):
    dim = _pick_dim(rng, max_dim)
    s = random_structure_fn(rng, dim)
    a = random_diff_op(rng, dim, max_terms=2)
    b = random_diff_op(rng, dim, max_terms=2)
    return dim, s, a, b


def check_antisymmetry(rng, max_dim) -> bool:
    _, s, a, b = _draw(rng, max_dim)
    forward = qcpb(s, a, b).total
    backward = qcpb(s, b, a).total
    return forward == -backward and qcpb(s, a, a).total.is_zero


def check_bilinearity(rng, max_dim) -> bool:
    dim, s, a, b = _draw(rng, max_dim)
    c = random_diff_op(rng, dim, max_terms=2)
    scalar = random_scalar(rng)
    additive = (
        qcpb(s, a + c, b).total == qcpb(s, a, b).total + qcpb(s, c, b).total
    )
    homogeneous = (
        qcpb(s, a, b.scaled(scalar)).total == qcpb(s, a, b).total.scaled(scalar)
    )
    return additive and homogeneous


def check_leibniz(rng, max_dim) -> bool:
    dim, s, a, b = _draw(rng, max_dim)
    h = random_diff_op(rng, dim, max_order=1, max_terms=2)
    product = compose(h, b)
    expected = (
        compose(h, commutator(a, b))
        + compose(commutator(a, h), b)
        + geomutator(s, a, product)
    )
    return qcpb(s, a, product).total == expected


def check_geomutator_product(rng, max_dim) -> bool:
    dim, s, a, b = _draw(rng, max_dim)
    h = random_diff_op(rng, dim, max_order=1, max_terms=2)
    s_op = mult(s)
    expected = (
        compose(a, compose(commutator(s_op, h), b))
        + compose(a, compose(h, commutator(s_op, b)))
        - compose(compose(h, b), commutator(s_op, a))
    )
    return geomutator(s, a, compose(h, b)) == expected


def check_sandwich_decomposition(rng, max_dim) -> bool:
    _, s, a, b = _draw(rng, max_dim)
    rebuilt = sandwich(s, a, b) - compose(commutator(a, b), mult(s))
    return geomutator(s, a, b) == rebuilt


def check_s_transform_plain(rng, max_dim) -> bool:
    _, s, a, b = _draw(rng, max_dim)
    rebuilt = (
        compose(a, s_transform(s, b, "plain"))
        - compose(b, s_transform(s, a, "plain"))
        - compose(commutator(a, b), mult(s))
    )
    return qcpb(s, a, b).total == rebuilt


def check_s_transform_sg(rng, max_dim) -> bool:
    _, s, a, b = _draw(rng, max_dim)
    rebuilt = compose(a, s_transform(s, b, "sg")) - compose(
        b, s_transform(s, a, "sg")
    )
    return qcpb(s, a, b).total == rebuilt


def check_jacobi_decomposition(rng, max_dim) -> bool:
    dim, s, a, b = _draw(rng, max_dim)
    c = random_diff_op(rng, dim, max_terms=2)
    res = jacobi_residuals(s, a, b, c)
    return res.n_cc.is_zero and res.n_cl == res.n_cc + res.n_ll


def check_jacobi_vanishing_first_order(rng, max_dim) -> bool:
    # The cyclic sum vanishes exactly on the 1-D first-order sector (the
    # correction term of two first-order 1-D operators is a plain
    # function); in higher dimension it keeps a first-order remainder.
    del max_dim
    s = random_structure_fn(rng, 1)
    a = random_first_order_op(rng, 1)
    b = random_first_order_op(rng, 1)
    c = random_first_order_op(rng, 1)
    return jacobi_residuals(s, a, b, c).n_cl.is_zero


def check_degenerate_structure(rng, max_dim) -> bool:
    dim = _pick_dim(rng, max_dim)
    s = const(dim, Fraction(rng.randint(-3, 3)))
    a = random_diff_op(rng, dim, max_terms=2)
    b = random_diff_op(rng, dim, max_terms=2)
    report = qcpb(s, a, b)
    return report.geomutator_part.is_zero and report.total == commutator(a, b)


def check_structure_bracket_scaling(rng, max_dim) -> bool:
    dim, s, _, b = _draw(rng, max_dim)
    lhs = qcpb(s, mult(s), b).total
    rhs = compose(mult(one(dim) + s), commutator(mult(s), b))
    return lhs == rhs


def check_hermitian_split(rng, max_dim) -> bool:
    dim = _pick_dim(rng, max_dim)
    s = random_structure_fn(rng, dim)
    parts = [random_diff_op(rng, dim, max_terms=2) for _ in range(4)]
    return hermitian_split_qcpb(s, *parts).expansion_holds


def check_ccr_suite(rng, max_dim) -> bool:
    dim = _pick_dim(rng, max_dim)
    s = random_polynomial(rng, dim, max_degree=3)
    params = Params()
    table = geometric_ccr_suite(s, params)
    i_hbar = ComplexRational(0, params.hbar)
    for i in range(dim):
        for j in range(dim):
            if table.position_momentum[i, j].total != table.expected_position_momentum(i, j):
                return False
            if not table.position_position[i, j].total.is_zero:
                return False
            if table.momentum_momentum[i, j].total != table.expected_momentum_momentum(i, j):
                return False
            coherence = geomutator_ccr_part(s, i, j, params)
            delta = one(dim) if i == j else zero(dim)
            if coherence != mult(table.theta[i, j] - delta):
                return False
    return True


def check_covariant_decomposition(rng, max_dim) -> bool:
    dim = _pick_dim(rng, max_dim)
    s = random_structure_fn(rng, dim)
    h = custom(random_diff_op(rng, dim, max_terms=2))
    f = random_diff_op(rng, dim, max_terms=2)
    w = gdynamics(s, h).w_op
    decomposed = gen_heisenberg_rhs(s, h, f) + compose(f, w)
    conserved = covariant_rhs(s, h, h.op).is_zero
    return covariant_rhs(s, h, f) == decomposed and conserved


def check_classical_brackets(rng, max_dim) -> bool:
    pairs = _pick_dim(rng, min(max_dim, 2))
    size = 2 * pairs
    j = (
        StructureMatrix.canonical(pairs)
        if rng.random() < 0.5
        else random_antisymmetric_matrix(rng, size)
    )
    s = random_polynomial(rng, size, max_degree=2)
    f = random_polynomial(rng, size, max_degree=2)
    g = random_polynomial(rng, size, max_degree=2)
    h = random_polynomial(rng, size, max_degree=2)
    antisymmetric = gspb(s, f, g, j) == -gspb(s, g, f, j)
    decomposition = dynamics_rhs(s, h, f, j, "gchs") == dynamics_rhs(
        s, h, f, j, "tghs"
    ) + f * dynamics_rhs(s, h, f, j, "sdyn")
    # Position/momentum bracket expansion, with the J-contraction term
    # built verbatim from the matrix entries.
    expansion = True
    for a in range(pairs):
        for b in range(pairs):
            x_a = coord(size, a)
            p_b = coord(size, pairs + b)
            contraction = zero(size)
            for q in range(size):
                if j[a, q]:
                    contraction = contraction + s.diff(q).scaled(j[a, q])
            expected = gpb(x_a, p_b, j) + x_a * gpb(s, p_b, j) + p_b * contraction
            if gspb(s, x_a, p_b, j) != expected:
                expansion = False
    return antisymmetric and decomposition and expansion


ALL_CHECKS = (
    ("antisymmetry", check_antisymmetry),
    ("bilinearity", check_bilinearity),
    ("generalized leibniz", check_leibniz),
    ("geomutator product expansion", check_geomutator_product),
    ("sandwich decomposition", check_sandwich_decomposition),
    ("s-transform (plain)", check_s_transform_plain),
    ("s-transform (sg)", check_s_transform_sg),
    ("jacobi decomposition", check_jacobi_decomposition),
    ("jacobi vanishing (1-D first order)", check_jacobi_vanishing_first_order),
    ("constant structure degenerates", check_degenerate_structure),
    ("structure bracket scaling", check_structure_bracket_scaling),
    ("hermitian split", check_hermitian_split),
    ("canonical commutation table", check_ccr_suite),
    ("covariant decomposition", check_covariant_decomposition),
    ("classical brackets", check_classical_brackets),
)


def run_identity_suite(trials: int = 100, seed: int = 0, max_dim: int = 2):
    """Run every check ``trials`` times; returns a list of CheckResult."""
    results = []
    for name, check in ALL_CHECKS:
        passed = 0
        first_failure = ""
        for index in range(trials):
            rng = trial_rng(seed, name, index)
            if check(rng, max_dim):
                passed += 1
            elif not first_failure:
                first_failure = f"first failure at trial {index}"
        results.append(CheckResult(name, passed, trials, first_failure))
    return results


def format_results(results, seed: int, trials: int, max_dim: int):
    lines = [f"identity suite: seed={seed} trials={trials} dim={max_dim}"]
    for result in results:
        status = "pass" if result.ok else "FAIL"
        name = f"{result.name} ".ljust(40, ".")
        lines.append(f"{name} {result.passed}/{result.trials} {status}")
    verdict = "PASS" if all(r.ok for r in results) else "FAIL"
    lines.append(f"result: {verdict} ({len(results)} checks)")
    return lines
