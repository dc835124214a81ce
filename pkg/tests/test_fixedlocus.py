from fractions import Fraction

import pytest

from flaghg.algebra import ALPHA, Poly, RatFun, ambient, y
from flaghg.errors import CancellationFailureError, SymmetryViolationError
from flaghg.fixedlocus import (canonical_roots, euler_class_closed_form,
                               euler_class_from_ledger,
                               euler_product_closed_form,
                               euler_product_from_ledger,
                               grassmannian_euler_product,
                               hquot_restriction_ledger, normal_ledger,
                               specialize_at_fixed_point, tangent_ledger,
                               tangent_euler_at_point, torus_fixed_points)
from flaghg.pushforward import lam_vector
from flaghg.tableaux import (FlagSpec, Tableau, block_decomposition,
                             component_dimension, enumerate_tableaux,
                             hquot_dimension)

from conftest import all_specs

A = Poly.var(ALPHA)


def gr(n, r, d, rows):
    return Tableau(FlagSpec(n, (r,), (d,)), (tuple(rows),))


def test_tangent_ledger_p1():
    t = gr(2, 1, 1, [1])
    ledger = tangent_ledger(t)
    terms = list(ledger.terms())
    assert terms == [((1, 1), (1, 1), 0, -1), ((1, 1), (2, 1), 0, 1)]
    assert ledger.rank() == 1 == component_dimension(t)


def test_tangent_ledger_degree_zero_grassmannian():
    t = gr(4, 2, 0, [0, 0])
    assert tangent_ledger(t).rank() == 4


def test_tangent_ledger_flag_consistency():
    t = Tableau(FlagSpec(3, (1, 2), (1, 1)), ((1,), (0, 1)))
    assert tangent_ledger(t).rank() == component_dimension(t)


def test_restriction_ledger_examples():
    t = gr(2, 1, 1, [1])
    assert hquot_restriction_ledger(t).rank() == 3
    t0 = gr(4, 2, 0, [0, 0])
    assert hquot_restriction_ledger(t0).rank() == 4
    t2 = gr(4, 2, 2, [0, 2])
    assert hquot_restriction_ledger(t2).rank() == 12


def test_normal_ledger_hand_counts():
    t = gr(4, 2, 2, [1, 1])
    terms = list(normal_ledger(t).terms())
    assert terms == [((1, 1), (2, 1), -1, 1)]
    assert normal_ledger(t).rank() == 8
    t2 = gr(4, 2, 2, [0, 2])
    by_key = {(src, tgt, w): m for src, tgt, w, m in normal_ledger(t2).terms()}
    assert by_key == {
        ((1, 2), (2, 1), -1): 1,
        ((1, 2), (2, 1), -2): 1,
        ((1, 1), (1, 2), 1): 1,
        ((1, 2), (1, 1), -1): -1,
        ((1, 2), (1, 1), -2): -1,
    }
    assert normal_ledger(t2).rank() == 7


def test_normal_ledger_degree_zero_empty():
    for spec in all_specs(4, 0):
        for t in enumerate_tableaux(spec):
            assert normal_ledger(t).is_empty()


def test_rank_bookkeeping_full_suite():
    for spec in all_specs(5, 4):
        hd = hquot_dimension(spec)
        for t in enumerate_tableaux(spec):
            cd = component_dimension(t)
            assert tangent_ledger(t).rank() == cd
            assert hquot_restriction_ledger(t).rank() == hd
            assert normal_ledger(t).rank() == hd - cd


def test_zero_weight_purity_full_suite():
    for spec in all_specs(5, 4):
        for t in enumerate_tableaux(spec):
            normal_ledger(t)  # raises CancellationFailureError on impurity


def test_euler_class_p1_with_zero_ambient():
    t = gr(2, 1, 1, [1])
    roots = canonical_roots(block_decomposition(t), [Poly.zero()] * 2)
    e = euler_class_from_ledger(normal_ledger(t), roots)
    yv = Poly.var(y(1, 1, 1))
    assert e == RatFun.from_poly((-yv - A) * (-yv - A))


def test_euler_class_empty_ledger_is_one():
    t = gr(3, 1, 0, [0])
    e = euler_class_from_ledger(normal_ledger(t))
    assert e == RatFun.const(1)


def test_euler_class_gr24_11():
    t = gr(4, 2, 2, [1, 1])
    roots = canonical_roots(block_decomposition(t), [Poly.zero()] * 4)
    e = euler_class_from_ledger(normal_ledger(t), roots)
    y1, y2 = Poly.var(y(1, 1, 1)), Poly.var(y(1, 1, 2))
    assert e == RatFun.from_poly(((-y1 - A) ** 4) * ((-y2 - A) ** 4))


def test_euler_class_rejects_weight_zero():
    t = gr(2, 1, 1, [1])
    with pytest.raises(ValueError):
        euler_class_from_ledger(tangent_ledger(t))


def test_dual_route_full_suite_factored():
    for spec in all_specs(5, 4):
        for t in enumerate_tableaux(spec):
            roots = canonical_roots(block_decomposition(t))
            lhs = euler_product_from_ledger(normal_ledger(t), roots)
            rhs = euler_product_closed_form(t, roots)
            assert lhs == rhs, (spec, t.rows)


def test_dual_route_expanded_small():
    for spec in [FlagSpec(2, (1,), (1,)), FlagSpec(4, (2,), (2,)),
                 FlagSpec(3, (1, 2), (1, 1))]:
        for t in enumerate_tableaux(spec):
            assert euler_class_from_ledger(normal_ledger(t)) == \
                euler_class_closed_form(t), (spec, t.rows)


def test_grassmannian_display_full_suite():
    for spec in all_specs(5, 4, levels_max=1):
        for t in enumerate_tableaux(spec):
            roots = canonical_roots(block_decomposition(t),
                                    [Poly.zero()] * spec.n)
            via_ledger = euler_product_from_ledger(normal_ledger(t), roots)
            assert via_ledger == grassmannian_euler_product(t), (spec, t.rows)


def test_factor_count_is_codimension():
    for spec in all_specs(4, 3):
        for t in enumerate_tableaux(spec):
            lp = euler_product_from_ledger(
                normal_ledger(t), canonical_roots(block_decomposition(t)))
            assert lp.num_factor_count() - lp.den_factor_count() == \
                hquot_dimension(spec) - component_dimension(t)


def test_block_symmetry_of_euler_classes():
    for spec in all_specs(4, 3):
        for t in enumerate_tableaux(spec):
            blocks = block_decomposition(t)
            e = euler_class_from_ledger(
                normal_ledger(t).negated(), canonical_roots(blocks))
            for i in range(1, blocks.levels + 1):
                for j in range(1, blocks.K(i) + 1):
                    if blocks.m(i, j) < 2:
                        continue
                    a, b = y(i, j, 1), y(i, j, 2)
                    swapped = e.substitute({a: Poly.var(b), b: Poly.var(a)})
                    assert swapped == e


def test_torus_fixed_points_examples():
    t = gr(2, 1, 1, [1])
    pts = torus_fixed_points(t)
    assert [p.sets()[(1, 1)] for p in pts] == [(1,), (2,)]
    assert len(torus_fixed_points(gr(4, 2, 2, [0, 2]))) == 12
    assert len(torus_fixed_points(gr(4, 2, 2, [1, 1]))) == 6


def test_torus_fixed_points_nested_for_flags():
    t = Tableau(FlagSpec(3, (1, 2), (1, 1)), ((1,), (0, 1)))
    for p in torus_fixed_points(t):
        sets = p.sets()
        assert set(sets[(1, 1)]) <= set(sets[(2, 1)]) | set(sets[(2, 2)])
    # a line inside the rank-2 step over each coordinate flag of C^3
    assert len(torus_fixed_points(t)) == 12
    assert component_dimension(t) == 4


def test_specialize_examples():
    t = gr(4, 2, 2, [1, 1])
    pts = [p for p in torus_fixed_points(t) if p.sets()[(1, 1)] == (1, 3)]
    lam = [Fraction(2), Fraction(5), Fraction(7), Fraction(11)]
    f = RatFun.from_poly(Poly.var(y(1, 1, 1)) + Poly.var(y(1, 1, 2)))
    assert specialize_at_fixed_point(f, t, pts[0], lam) == RatFun.const(9)
    assert specialize_at_fixed_point(RatFun.const(1), t, pts[0], lam) \
        == RatFun.const(1)


def test_specialize_equivariant_euler_example():
    t = gr(2, 1, 1, [1])
    point = torus_fixed_points(t)[0]
    lam = [Fraction(0), Fraction(1)]
    e = euler_class_from_ledger(normal_ledger(t),
                                canonical_roots(block_decomposition(t)))
    got = specialize_at_fixed_point(e, t, point, lam)
    # (lam1 - lam1 - alpha)(lam2 - lam1 - alpha) at lam=(0,1)
    assert got == RatFun.from_poly((-A) * (Poly.const(1) - A))


def test_specialize_rejects_asymmetric_input():
    t = gr(4, 2, 2, [1, 1])
    point = torus_fixed_points(t)[0]
    lam = lam_vector(4, 0)
    f = RatFun.from_poly(Poly.var(y(1, 1, 1)))
    with pytest.raises(SymmetryViolationError):
        specialize_at_fixed_point(f, t, point, lam)


def test_specialize_rejects_foreign_roots():
    t = gr(4, 2, 2, [1, 1])
    point = torus_fixed_points(t)[0]
    f = RatFun.from_poly(Poly.var(y(3, 1, 1)))
    with pytest.raises(ValueError, match="outside the tableau"):
        specialize_at_fixed_point(f, t, point, lam_vector(4, 0))


def test_specialize_rejects_repeated_weights():
    t = gr(4, 2, 2, [1, 1])
    point = torus_fixed_points(t)[0]
    lam = [Fraction(1), Fraction(1), Fraction(2), Fraction(3)]
    with pytest.raises(ValueError, match="distinct"):
        specialize_at_fixed_point(RatFun.const(1), t, point, lam)


def test_tangent_euler_at_point_projective_space():
    t = gr(3, 1, 0, [0])
    lam = [Fraction(0), Fraction(1), Fraction(2)]
    values = {}
    for p in torus_fixed_points(t):
        c = p.sets()[(1, 1)][0]
        values[c] = tangent_euler_at_point(t, p, lam)
    assert values == {
        1: Fraction(2),   # (l2-l1)(l3-l1)
        2: Fraction(-1),  # (l1-l2)(l3-l2)
        3: Fraction(2),   # (l1-l3)(l2-l3)
    }


def test_ledger_serialization():
    t = gr(2, 1, 1, [1])
    data = normal_ledger(t).to_json()
    assert data == [{"sign": 1, "src": [1, 1], "tgt": "ambient", "w": -1}]
