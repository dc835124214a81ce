import random
from fractions import Fraction

import pytest

from flaghg.algebra import (ALPHA, Poly, RatFun, ambient, exp_truncated,
                            kahler, y)
from flaghg.errors import (BudgetExceededError, IntegrationShapeError,
                           SymmetryViolationError)
from flaghg.fixedlocus import (block_decomposition, canonical_roots,
                               euler_class_from_ledger, normal_ledger)
from flaghg.pushforward import (BlockAlphabet, OmegaSpec, ab_integrate,
                                brion_pushforward, complete_homogeneous,
                                integrate_to_point, lam_vector, omega_class,
                                restrictive_pushforward, schur_polynomial,
                                schur_polynomial_bialternant, tableau_tower)
from flaghg.tableaux import (FlagSpec, Tableau, component_dimension,
                             enumerate_tableaux)

from conftest import all_specs, random_block_symmetric, random_poly

P = Poly.var
Y1, Y2, Y3 = y(9, 1, 1), y(9, 2, 1), y(9, 3, 1)


def two_singletons():
    return BlockAlphabet([[Y1], [Y2]])


def test_brion_hand_sums():
    ab = two_singletons()
    assert brion_pushforward(RatFun.const(1), ab) == RatFun.const(0)
    assert brion_pushforward(RatFun.from_poly(P(Y1)), ab) == RatFun.const(-1)
    assert brion_pushforward(RatFun.from_poly(P(Y1) ** 2), ab) == \
        RatFun.from_poly(-P(Y1) - P(Y2))


def test_brion_degree_facts_on_random_inputs():
    rng = random.Random(5)
    alphabet = BlockAlphabet([[Y1], [Y2], [Y3]])
    fiber_dim = 3
    for _ in range(10):
        for degree in range(fiber_dim):
            p = Poly.zero()
            for _ in range(3):
                term = Poly.const(rng.randint(1, 4))
                for _ in range(degree):
                    term = term * P(rng.choice([Y1, Y2, Y3]))
                p = p + term
            assert brion_pushforward(RatFun.from_poly(p), alphabet) \
                == RatFun.const(0)
        p = Poly.const(1)
        for _ in range(fiber_dim):
            p = p * P(rng.choice([Y1, Y2, Y3]))
        result = brion_pushforward(RatFun.from_poly(p), alphabet)
        assert result.is_poly() and result.num.is_const()


def test_brion_rejects_asymmetric_input():
    alphabet = BlockAlphabet([[y(9, 1, 1), y(9, 1, 2)], [Y2]])
    with pytest.raises(SymmetryViolationError):
        brion_pushforward(RatFun.from_poly(P(y(9, 1, 1))), alphabet)


def test_brion_budget_guard():
    letters = [[y(9, 1, k)] for k in range(1, 9)]
    with pytest.raises(BudgetExceededError):
        brion_pushforward(RatFun.const(1), BlockAlphabet(letters),
                          budget=10080)


def test_omega_class_examples():
    q1, q2 = P(ambient(1)), P(ambient(2))
    assert omega_class(OmegaSpec([((Y1,), (q1,))])) == q1 - P(Y1)
    assert omega_class(OmegaSpec([((Y1,), (q1, q2))])) == \
        (q1 - P(Y1)) * (q2 - P(Y1))
    spec = OmegaSpec([((Y1,), (q1, q2)), ((Y2,), (q1,))])
    assert omega_class(spec).total_degree() == 3


def test_restrictive_pushforward_with_trivial_omega():
    rng = random.Random(6)
    alphabet = two_singletons()
    for _ in range(20):
        p = RatFun.from_poly(random_poly(rng, [Y1, Y2], degree=3))
        assert restrictive_pushforward(p, alphabet, Poly.const(1)) == \
            brion_pushforward(p, alphabet)


def test_restrictive_pushforward_hand_sum():
    alphabet = two_singletons()
    omega = omega_class(OmegaSpec([((Y1,), (P(ambient(1)),))]))
    assert restrictive_pushforward(RatFun.const(1), alphabet, omega) == \
        RatFun.const(1)


def test_pushforward_degree_bookkeeping():
    # deg(result) = deg(P) + deg(omega) - fiber dimension
    alphabet = two_singletons()
    omega = omega_class(OmegaSpec([((Y1,), (P(ambient(1)),))]))
    p = RatFun.from_poly(P(Y1) ** 2 + P(Y2) ** 2)
    out = restrictive_pushforward(p, alphabet, omega)
    assert out.num.total_degree() == 2 + 1 - 1


def test_projection_formula():
    rng = random.Random(7)
    alphabet = two_singletons()
    for _ in range(10):
        phi = RatFun.from_poly(random_poly(rng, [Y1, Y2], degree=3))
        psi = RatFun.from_poly(
            random_poly(rng, [ALPHA], degree=2)
            * (P(Y1) + P(Y2)))
        lhs = brion_pushforward(phi * psi, alphabet)
        rhs = brion_pushforward(phi, alphabet) * psi
        assert lhs == rhs


def test_omega_rational_presentation_identity():
    # the ambient roots split as sub-bundle roots plus quotient roots, so
    # prod(e - y) / prod(p - y) equals the polynomial Thom factor prod(q - y)
    rng = random.Random(8)
    sub_vars = [y(9, 1, 1), y(9, 1, 2)]
    p_vars = [ambient(1), ambient(2)]
    q_vars = [ambient(3), ambient(4), ambient(5)]
    omega = omega_class(OmegaSpec([(sub_vars, [P(v) for v in q_vars])]))
    for _ in range(20):
        values = {}
        pool = set()
        for v in sub_vars + p_vars + q_vars:
            while True:
                candidate = Fraction(rng.randint(-20, 20), rng.randint(1, 4))
                if candidate not in pool:
                    pool.add(candidate)
                    values[v] = candidate
                    break
        lhs = Fraction(1)
        for yv in sub_vars:
            for e in p_vars + q_vars:
                lhs *= values[e] - values[yv]
            for p in p_vars:
                lhs /= values[p] - values[yv]
        assert lhs == omega.evaluate(values)


def test_integrate_to_point_projective_line():
    t = Tableau(FlagSpec(2, (1,), (0,)), ((0,),))
    integrand = RatFun.from_poly(exp_truncated(-P(y(1, 1, 1)), kahler(1), 1))
    assert integrate_to_point(integrand, tableau_tower(t)) == \
        RatFun.from_poly(P(kahler(1)))


def test_integrate_to_point_low_degree_vanishes():
    t = Tableau(FlagSpec(3, (1,), (0,)), ((0,),))
    integrand = RatFun.from_poly(P(y(1, 1, 1)))
    assert integrate_to_point(integrand, tableau_tower(t)) == RatFun.const(0)


def test_integrate_to_point_projective_plane():
    t = Tableau(FlagSpec(3, (1,), (0,)), ((0,),))
    integrand = RatFun.from_poly(exp_truncated(-P(y(1, 1, 1)), kahler(1), 2))
    expected = RatFun.from_poly(
        P(kahler(1)) ** 2 * Fraction(1, 2))
    assert integrate_to_point(integrand, tableau_tower(t)) == expected


def test_integrate_to_point_shape_error():
    t = Tableau(FlagSpec(2, (1,), (0,)), ((0,),))
    stranger = RatFun.from_poly(P(y(5, 1, 1)) * P(y(1, 1, 1)))
    with pytest.raises(IntegrationShapeError):
        integrate_to_point(stranger, tableau_tower(t))


def test_ab_integrate_classical_values():
    p2 = Tableau(FlagSpec(3, (1,), (0,)), ((0,),))
    lam = lam_vector(3, 0)
    h2 = RatFun.from_poly(P(y(1, 1, 1)) ** 2)
    assert ab_integrate(p2, h2, lam) == RatFun.const(1)
    gr24 = Tableau(FlagSpec(4, (2,), (0,)), ((0, 0),))
    c2 = P(y(1, 1, 1)) * P(y(1, 1, 2))
    assert ab_integrate(gr24, RatFun.from_poly(c2 * c2), lam_vector(4, 0)) \
        == RatFun.const(1)
    assert ab_integrate(gr24, RatFun.const(1), lam_vector(4, 0)) \
        == RatFun.const(0)


def test_ab_integrate_singular_weights_retry_then_raise():
    from flaghg.errors import SingularSubstitutionError
    gr24 = Tableau(FlagSpec(4, (2,), (0,)), ((0, 0),))
    # an alpha-free denominator vanishes at the point {1,2} for these
    # weights; fresh weights are drawn but the class has a genuine pole
    f = RatFun(Poly.const(1),
               {P(y(1, 1, 1)) + P(y(1, 1, 2)): 1})
    bad = [Fraction(1), Fraction(-1), Fraction(2), Fraction(3)]
    with pytest.raises(SingularSubstitutionError):
        ab_integrate(gr24, f, bad, max_retries=2, check_symmetry=False)


def test_ab_integrate_rejects_asymmetric():
    gr24 = Tableau(FlagSpec(4, (2,), (0,)), ((0, 0),))
    with pytest.raises(SymmetryViolationError):
        ab_integrate(gr24, RatFun.from_poly(P(y(1, 1, 1))),
                     lam_vector(4, 0))


def test_oracle_equivalence_random_polynomials():
    rng = random.Random(9)
    for spec in all_specs(3, 2):
        for t in enumerate_tableaux(spec):
            lam = lam_vector(spec.n, 0)
            tower = tableau_tower(t)
            for _ in range(3):
                p = RatFun.from_poly(
                    random_block_symmetric(t, rng, component_dimension(t)))
                assert ab_integrate(t, p, lam, check_symmetry=False) == \
                    integrate_to_point(p, tower), (spec, t.rows)


def test_ab_integrate_lambda_independence_polynomials():
    rng = random.Random(10)
    t = Tableau(FlagSpec(4, (2,), (1,)), ((0, 1),))
    p = RatFun.from_poly(random_block_symmetric(t, rng, 3))
    values = {
        ab_integrate(t, p, lam_vector(4, seed), check_symmetry=False).to_text()
        for seed in range(5)
    }
    assert len(values) == 1


def test_ab_integrate_mirror_integrand_matches_tower():
    t = Tableau(FlagSpec(2, (1,), (1,)), ((1,),))
    inverse = euler_class_from_ledger(
        normal_ledger(t).negated(),
        canonical_roots(block_decomposition(t)))
    integrand = RatFun.from_poly(
        exp_truncated(-P(y(1, 1, 1)), kahler(1), 1)) * inverse
    via_oracle = ab_integrate(t, integrand, lam_vector(2, 0))
    via_tower = integrate_to_point(integrand, tableau_tower(t))
    assert via_oracle == via_tower
    alpha = Poly.var(ALPHA)
    expected = RatFun(Poly.const(2) + alpha * P(kahler(1)), {alpha: 3})
    assert via_oracle == expected


def test_schur_examples():
    roots = [y(1, 1, 1), y(1, 1, 2)]
    y1, y2 = P(roots[0]), P(roots[1])
    assert schur_polynomial([1], roots) == y1 + y2
    assert schur_polynomial([1, 1], roots) == y1 * y2
    assert schur_polynomial([2], roots) == y1 * y1 + y1 * y2 + y2 * y2
    assert schur_polynomial([], roots) == Poly.const(1)


def test_schur_routes_agree():
    roots3 = [y(1, 1, k) for k in range(1, 4)]
    for mu in [[1], [1, 1], [2], [2, 1], [3, 1], [2, 2, 1], [3, 3, 2]]:
        assert schur_polynomial(mu, roots3) == \
            schur_polynomial_bialternant(mu, roots3)


def test_schur_rejects_long_partition():
    with pytest.raises(ValueError):
        schur_polynomial([1, 1, 1], [y(1, 1, 1), y(1, 1, 2)])


def test_complete_homogeneous_basics():
    roots = [y(1, 1, 1), y(1, 1, 2)]
    assert complete_homogeneous(0, roots) == Poly.const(1)
    assert complete_homogeneous(2, roots).total_degree() == 2
    assert len(complete_homogeneous(2, roots).terms) == 3
