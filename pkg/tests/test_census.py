import random
from fractions import Fraction

import pytest

from quivermoduli import (
    GF,
    GaloisPair,
    Mat,
    Representation,
    a2_quiver,
    count_geom_stable_orbits,
    census_polynomiality,
    decompose_rational_point,
    index_divisibility_audit,
    jordan_quiver,
    kronecker_quiver,
    verify_descent_census,
)
from quivermoduli.census import (
    GEOM_STABLE,
    STABLE_NOT_SCHUR,
    _categorize_point,
    _build_plan,
    _encode_rep,
    all_orbit_representatives,
    lagrange_interpolation,
    loop_class_census,
    monic_irreducibles,
    orbit_census,
    similarity_class_reps,
    stable_orbit_census,
)
from quivermoduli.config import JobConfig
from quivermoduli.errors import BudgetExceededError
from quivermoduli.quiver import base_change
from quivermoduli.stability import stability_verdict

from helpers import gimat, quaternionic_kronecker_example

CFG = JobConfig()
THETA = {"s": 1, "t": -1}
K2 = kronecker_quiver(2)
J = jordan_quiver()


def test_kronecker_counts():
    for q, want in ((2, 3), (3, 4), (5, 6)):
        assert count_geom_stable_orbits(K2, {"s": 1, "t": 1}, THETA, q, CFG) == want


def test_jordan_counts():
    assert count_geom_stable_orbits(J, {"v": 2}, {"v": 0}, 2, CFG) == 0
    assert count_geom_stable_orbits(J, {"v": 1}, {"v": 0}, 2, CFG) == 2
    assert count_geom_stable_orbits(J, {"v": 1}, {"v": 0}, 3, CFG) == 3


def test_stable_not_schur_census():
    cen = orbit_census(J, {"v": 2}, {"v": 0}, GF(2), CFG)
    assert cen.counts == {GEOM_STABLE: 0, STABLE_NOT_SCHUR: 1}


def test_kernel_matches_generic_verdicts():
    # the encoded-point categorizer against the generic enumeration verdicts
    rng = random.Random(3)
    for quiver, dims, theta, field in (
        (K2, {"s": 1, "t": 1}, THETA, GF(3)),
        (K2, {"s": 2, "t": 1}, THETA, GF(2)),
        (J, {"v": 2}, {"v": 0}, GF(2)),
        (a2_quiver(), {"s": 2, "t": 2}, THETA, GF(2)),
    ):
        plan = _build_plan(quiver, dims, theta, field)
        for _ in range(30):
            mats = {}
            for a in quiver.arrows:
                rows = tuple(
                    tuple(rng.randrange(field.size) for _ in range(dims[a.src]))
                    for _ in range(dims[a.dst])
                )
                mats[a.name] = Mat(field, rows, (dims[a.dst], dims[a.src]))
            rep = Representation(quiver, field, dims, mats)
            kind = stability_verdict(rep, theta, CFG).kind
            assert _categorize_point(_encode_rep(rep), plan) == kind


def test_union_find_and_canonical_counts_agree():
    # the census itself raises InvariantError if the two counters disagree;
    # run a few non-trivial spaces through it
    for quiver, dims, theta, q in (
        (K2, {"s": 1, "t": 1}, THETA, 5),
        (K2, {"s": 2, "t": 1}, THETA, 3),
        (a2_quiver(), {"s": 2, "t": 2}, THETA, 2),
    ):
        cen = orbit_census(quiver, dims, theta, GF(q), CFG)
        assert cen.canonical_count == len(cen.orbit_category)


def test_class_census_against_pointwise():
    for q, d in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2)):
        dims = {"v": d}
        theta = {"v": 0}
        a = orbit_census(J, dims, theta, GF(q), CFG)
        b = loop_class_census(J, dims, theta, GF(q), CFG)
        assert a.counts == b.counts


def test_monic_irreducibles():
    f2 = GF(2)
    polys = monic_irreducibles(f2, 2)
    assert len(polys) == 3  # x, x+1, x^2+x+1
    f4 = GF(4)
    deg2 = [p for p in monic_irreducibles(f4, 2) if len(p) == 3]
    assert len(deg2) == (16 - 4) // 2


def test_similarity_class_counts():
    # number of similarity classes of 2x2 matrices over F_q is q^2 + q
    for q in (2, 3, 4):
        f = GF(q)
        assert len(similarity_class_reps(f, 2)) == q * q + q


def test_budget_error_for_oversized_nonloop():
    tight = JobConfig(max_orbit_points=10)
    with pytest.raises(BudgetExceededError):
        orbit_census(K2, {"s": 2, "t": 2}, THETA, GF(3), tight)


def test_oversized_loop_routes_through_classes():
    tight = JobConfig(max_orbit_points=10)
    cen = stable_orbit_census(J, {"v": 2}, {"v": 0}, GF(3), tight)
    assert cen.counts[STABLE_NOT_SCHUR] == 3


def test_polynomiality_fit():
    fit = census_polynomiality(K2, {"s": 1, "t": 1}, THETA, [2, 3, 5], CFG)
    assert fit.counts == [3, 4, 6]
    assert fit.coefficients == [Fraction(1), Fraction(1)]  # q + 1
    assert fit.integral
    assert all(r == 0 for r in fit.residuals)

    fit = census_polynomiality(J, {"v": 2}, {"v": 0}, [2, 3], CFG)
    assert fit.counts == [0, 0]
    assert fit.coefficients == [Fraction(0)]


def test_lagrange_interpolation():
    assert lagrange_interpolation([(1, 2), (2, 5), (3, 10)]) == [
        Fraction(1),
        Fraction(0),
        Fraction(1),
    ]  # x^2 + 1


def test_descent_census_small():
    r = verify_descent_census(K2, {"s": 1, "t": 1}, THETA, 2, 2, CFG)
    assert r.fixed_orbit_count == r.base_count == 3
    assert r.ok
    r = verify_descent_census(J, {"v": 1}, {"v": 0}, 2, 2, CFG)
    assert r.fixed_orbit_count == r.base_count == 2
    r = verify_descent_census(J, {"v": 1}, {"v": 0}, 3, 2, CFG)
    assert r.fixed_orbit_count == r.base_count == 3
    r = verify_descent_census(a2_quiver(), {"s": 1, "t": 1}, THETA, 2, 2, CFG)
    assert r.ok


def test_all_orbit_representatives_complete():
    # over F_2 the scaling group is trivial, so orbits are single points
    f2 = GF(2)
    reps = all_orbit_representatives(K2, {"s": 1, "t": 1}, f2, CFG)
    assert len(reps) == 4
    # over F_3 the pairs (a, b) fall into 0, two axes, and two diagonal classes
    f3 = GF(3)
    reps3 = all_orbit_representatives(K2, {"s": 1, "t": 1}, f3, CFG)
    assert len(reps3) == 5


def test_decompose_trivial_class():
    pair = GaloisPair.gaussian()
    from quivermoduli.rings import QQ

    w0 = Representation(
        K2, QQ, {"s": 1, "t": 1},
        {"a1": Mat(QQ, ((Fraction(1),),)), "a2": Mat(QQ, ((Fraction(2),),))},
    )
    wl = base_change(w0, pair)
    rec = decompose_rational_point(wl, pair, THETA, CFG)
    assert rec.brauer.is_trivial
    assert rec.index == 1
    assert rec.k_form is not None and rec.k_form.ring == QQ
    ok, violations = index_divisibility_audit([rec])
    assert ok


def test_decompose_quaternionic():
    rep, pair, theta = quaternionic_kronecker_example()
    rec = decompose_rational_point(rep, pair, theta, CFG)
    assert not rec.brauer.is_trivial
    assert rec.index == 2
    assert rec.d_form is not None
    assert rec.twisted is not None
    ok, violations = index_divisibility_audit([rec])
    assert ok, violations


def test_decompose_not_fixed_orbit():
    pair = GaloisPair.gaussian()
    Qi = pair.ext
    w = Representation(
        K2, Qi, {"s": 1, "t": 1},
        {"a1": gimat([[1]]), "a2": gimat([[(0, 1)]])},
    )
    with pytest.raises(ValueError):
        decompose_rational_point(w, pair, THETA, CFG)


def test_index_audit_catches_violation():
    rep, pair, theta = quaternionic_kronecker_example()
    rec = decompose_rational_point(rep, pair, theta, CFG)
    # synthetic record with an odd dimension
    import copy

    bad = copy.copy(rec)
    bad.rep = Representation(
        kronecker_quiver(3), pair.ext, {"s": 3, "t": 2},
        {
            "a1": Mat.zero(pair.ext, 2, 3),
            "a2": Mat.zero(pair.ext, 2, 3),
            "a3": Mat.zero(pair.ext, 2, 3),
        },
    )
    ok, violations = index_divisibility_audit([rec, bad])
    assert not ok
    assert violations and "record 1" in violations[0]


def test_descent_census_rejects_nonprime_q():
    from quivermoduli.errors import SchemaError

    with pytest.raises(SchemaError):
        verify_descent_census(K2, {"s": 1, "t": 1}, THETA, 4, 2, CFG)


def test_three_vertex_path_quiver():
    # A3 path s -> m -> t: a basic sanity run of the generic machinery on a
    # quiver with more than two vertices
    from quivermoduli.quiver import Arrow, Quiver
    from quivermoduli.stability import hn_filtration, verify_hn

    a3 = Quiver(("s", "m", "t"), (Arrow("a", "s", "m"), Arrow("b", "m", "t")))
    theta = {"s": 1, "m": 0, "t": -1}
    dims = {"s": 1, "m": 1, "t": 1}
    for q in (2, 3):
        # both maps nonzero scale to (1, 1): a single geometrically stable orbit
        assert count_geom_stable_orbits(a3, dims, theta, q, CFG) == 1
        r = verify_descent_census(a3, dims, theta, q, 2, CFG)
        assert r.ok and r.fixed_orbit_count == 1
    f2 = GF(2)
    rep = Representation(
        a3, f2, dims, {"a": Mat(f2, ((1,),)), "b": Mat(f2, ((0,),))}
    )
    hn = hn_filtration(rep, theta, CFG)
    assert verify_hn(rep, theta, hn, CFG)
    assert list(hn.slopes) == [Fraction(1, 2), Fraction(-1)]
