from __future__ import annotations

from fractions import Fraction

import pytest

from qcenter import (
    HSeries,
    LiftObstructionError,
    MonicRelation,
    NonSimpleRootError,
    Poly,
    RelationViolationError,
    ValidationError,
    build_center_iso,
    hensel_lift,
    invariants_up_to,
    minimality_holds,
    moment_image_basis,
    star_evaluate,
    symmetrize,
    verify_lift,
)


def invariant_tests(act, cutoff=8):
    inv = invariants_up_to(act, cutoff)
    return [u for d in inv.degrees() for u in inv.basis(d)]


@pytest.fixture(scope="module")
def sl2_lift_data(sl2_action):
    """Classical pairing, its monic relation with corrected quantum data."""
    sp = sl2_action.space
    star = sl2_action.star
    tr = sp.q(1) * sp.p(1) + sp.q(2) * sp.p(2)
    a = tr * tr
    # quantum coefficient with the central order-2 section correction: the
    # exact square of the lifted pairing
    ahat = star.moyal(tr, tr)
    rel = MonicRelation((-a, Poly.zero(4)), (-ahat, HSeries.zero(4, star.order)))
    return tr, a, ahat, rel


def test_linear_relation_returns_designated_lift(torus_action):
    sp = torus_action.space
    star = torus_action.star
    qp = sp.q(1) * sp.p(1)
    ahat = star.embed(qp) + HSeries.one(2, star.order).hbar_shift(2).scale(
        Fraction(1, 3)
    )
    # the correction must be central for the relation data to validate
    rel = MonicRelation((-qp,), (-ahat,))
    rel.validate_centrality(torus_action, invariant_tests(torus_action), 8)
    lifted = hensel_lift(qp, rel, torus_action, 8)
    assert lifted == ahat


def test_sl2_lift_succeeds_with_zero_corrections(sl2_action, sl2_lift_data):
    tr, a, ahat, rel = sl2_lift_data
    tests = invariant_tests(sl2_action, 10)
    rel.validate_centrality(sl2_action, tests, 8)
    subalgebra = moment_image_basis(sl2_action, 10)
    lifted = hensel_lift(tr, rel, sl2_action, 8, subalgebra=subalgebra)
    assert lifted == sl2_action.star.embed(tr)
    report = verify_lift(lifted, rel, sl2_action, 8, tests)
    assert report.passed
    assert report.weight == -2


def test_sl2_lift_obstruction_with_uncorrected_section(sl2_action):
    """Without the central order-2 correction the defect at order 2 is a
    nonzero constant, which the relation derivative cannot divide."""
    sp = sl2_action.space
    star = sl2_action.star
    lie = sl2_action.lie
    tr = sp.q(1) * sp.p(1) + sp.q(2) * sp.p(2)
    a = tr * tr
    cas = lie.generator("casimir").poly
    plain_image = sl2_action.comoment(symmetrize(lie, cas, star.order))
    rel = MonicRelation((-a, Poly.zero(4)), (-plain_image, HSeries.zero(4, star.order)))
    with pytest.raises(LiftObstructionError) as info:
        hensel_lift(tr, rel, sl2_action, 8)
    assert info.value.order == 2
    assert info.value.remainder == Poly.constant(4, 1)


def test_perturbed_relation_tracks_quantum_data(torus_action):
    """Shifting the quantum coefficient shifts the lift, not the recursion."""
    sp = torus_action.space
    star = torus_action.star
    qp = sp.q(1) * sp.p(1)
    perturbed = star.embed(qp) - HSeries.one(2, star.order).hbar_shift(1)
    rel = MonicRelation((-qp,), (-perturbed,))
    lifted = hensel_lift(qp, rel, torus_action, 8)
    assert lifted == perturbed
    assert lifted.coefficient(1) == Poly.constant(2, -1)
    assert verify_lift(lifted, rel, torus_action, 8, invariant_tests(torus_action)).passed


def test_sl2_perturbation_obstructs_at_order_one(sl2_action, sl2_lift_data):
    tr, a, ahat, rel = sl2_lift_data
    star = sl2_action.star
    bumped = MonicRelation(
        rel.coefficients,
        (rel.quantum_coefficients[0] + HSeries.one(4, star.order).hbar_shift(1),
         rel.quantum_coefficients[1]),
    )
    with pytest.raises(LiftObstructionError) as info:
        hensel_lift(tr, bumped, sl2_action, 8)
    assert info.value.order == 1


def test_divisible_perturbation_proceeds_then_obstructs(sl2_action, sl2_lift_data):
    """A defect divisible by the derivative is absorbed; the inhomogeneous
    tail it creates eventually leaves the polynomial ring."""
    tr, a, ahat, rel = sl2_lift_data
    star = sl2_action.star
    bumped = MonicRelation(
        rel.coefficients,
        (
            rel.quantum_coefficients[0]
            - HSeries.from_poly(a, star.order).hbar_shift(2),
            rel.quantum_coefficients[1],
        ),
    )
    with pytest.raises(LiftObstructionError) as info:
        hensel_lift(tr, bumped, sl2_action, 8)
    assert info.value.order == 4
    # order 2 was solvable: the correction tr/2 divides exactly


def test_nonsimple_root_detected(torus_action):
    sp = torus_action.space
    star = torus_action.star
    qp = sp.q(1) * sp.p(1)
    # (t - qp)^2 as a relation for qp: derivative vanishes at the root
    rel = MonicRelation(
        (qp * qp, (-qp).scale(2)),
        (star.embed(qp * qp), star.embed((-qp).scale(2))),
    )
    with pytest.raises(NonSimpleRootError):
        hensel_lift(qp, rel, torus_action, 6)


def test_classical_relation_must_hold(torus_action):
    sp = torus_action.space
    star = torus_action.star
    qp = sp.q(1) * sp.p(1)
    rel = MonicRelation((-qp - sp.one(),), (star.embed(-qp - sp.one()),))
    with pytest.raises(ValidationError):
        hensel_lift(qp, rel, torus_action, 6)


def test_minimality_check(sl2_action, sl2_lift_data):
    tr, a, ahat, rel = sl2_lift_data
    sub = moment_image_basis(sl2_action, 10)
    assert minimality_holds(tr, rel, sub)
    # the pullback itself satisfies a linear relation over the subalgebra,
    # so a quadratic one for it is not minimal
    quad_for_a = MonicRelation(
        (Poly.zero(4), a + a),  # placeholder coefficients of matching length
        (HSeries.zero(4, 8), sl2_action.star.embed(a + a)),
    )
    assert not minimality_holds(a, quad_for_a, sub)


def test_verify_lift_reports_first_failing_order(torus_action):
    sp = torus_action.space
    star = torus_action.star
    qp = sp.q(1) * sp.p(1)
    corrected = star.embed(qp) + HSeries.one(2, star.order).hbar_shift(1)
    rel = MonicRelation((-qp,), (-corrected,))
    # claim the bare element is the lift although the data demands a shift
    report = verify_lift(star.embed(qp), rel, torus_action, 8)
    assert not report.passed
    assert report.relation_first_failure == 1


def test_verify_lift_order_zero_is_classical_check(torus_action, sl2_action):
    sp = torus_action.space
    qp = sp.q(1) * sp.p(1)
    rel = MonicRelation((-qp,), (torus_action.star.embed(-qp),))
    report = verify_lift(torus_action.star.embed(qp), rel, torus_action, 0)
    assert report.passed
    assert report.classical_relation_holds


def test_verify_lift_centrality_failures(torus_action):
    sp = torus_action.space
    star = torus_action.star
    q1 = sp.q(1)
    rel = MonicRelation((-q1,), (star.embed(-q1),))
    report = verify_lift(
        star.embed(q1), rel, torus_action, 8, invariant_tests(torus_action)
    )
    assert report.centrality_failures
    against, order = report.centrality_failures[0]
    assert order == 1


def test_star_evaluate_on_commuting_lifts(sl2_action, sl2_lift_data):
    tr, a, ahat, rel = sl2_lift_data
    star = sl2_action.star
    lifted_tr = star.embed(tr)
    relation = Poly(2, {(2, 0): Fraction(1), (0, 1): Fraction(-1)})  # x^2 - y
    value = star_evaluate(star, relation, [lifted_tr, ahat])
    assert value.is_zero()


def test_build_center_iso_single_generator(torus_action):
    sp = torus_action.space
    star = torus_action.star
    qp = sp.q(1) * sp.p(1)
    entries = [("J", qp, star.embed(qp))]
    report = build_center_iso(entries, [], torus_action, 8)
    assert report.passed
    assert report.entries[0].triangle_holds
    assert report.entries[0].weight_matches


def test_build_center_iso_sl2_relation(sl2_action, sl2_lift_data):
    tr, a, ahat, rel = sl2_lift_data
    star = sl2_action.star
    entries = [
        ("c2", a, ahat),
        ("tr", tr, star.embed(tr)),
    ]
    relation = Poly(2, {(0, 2): Fraction(1), (1, 0): Fraction(-1)})  # tr^2 - c2
    report = build_center_iso(entries, [("tr^2 - c2", relation)], sl2_action, 8)
    assert report.passed
    assert report.relations == [("tr^2 - c2", True)]


def test_build_center_iso_detects_violation(sl2_action, sl2_lift_data):
    tr, a, ahat, rel = sl2_lift_data
    star = sl2_action.star
    lie = sl2_action.lie
    cas = lie.generator("casimir").poly
    plain_image = sl2_action.comoment(symmetrize(lie, cas, star.order))
    entries = [
        ("c2", a, plain_image),       # uncorrected image breaks the relation
        ("tr", tr, star.embed(tr)),
    ]
    relation = Poly(2, {(0, 2): Fraction(1), (1, 0): Fraction(-1)})
    with pytest.raises(RelationViolationError) as info:
        build_center_iso(entries, [("tr^2 - c2", relation)], sl2_action, 8)
    assert info.value.order == 2


def test_lift_order_by_order_uniqueness(sl2_action, sl2_lift_data):
    tr, a, ahat, rel = sl2_lift_data
    first = hensel_lift(tr, rel, sl2_action, 8)
    second = hensel_lift(tr, rel, sl2_action, 8)
    assert first == second
