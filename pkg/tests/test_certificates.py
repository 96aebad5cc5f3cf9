from fractions import Fraction

import pytest

from quivermoduli import Representation, kronecker_quiver
from quivermoduli.config import JobConfig
from quivermoduli.errors import SchemaError
from quivermoduli.rings import QQ, gaussian_rationals
from quivermoduli.stability import (
    STABLE,
    STRICTLY_SEMISTABLE,
    UNKNOWN,
    UNSTABLE,
    geom_stability_certificate,
    reduce_mod_prime,
)

from helpers import gimat, qmat, quaternionic_kronecker_example

CFG = JobConfig()
THETA = {"s": 1, "t": -1}


def qq_rep(entries, dims=None):
    q = kronecker_quiver(len(entries))
    if dims is None:
        dims = {"s": 1, "t": 1}
        mats = {f"a{i+1}": qmat([[e]]) for i, e in enumerate(entries)}
    else:
        mats = {f"a{i+1}": m for i, m in enumerate(entries)}
    return Representation(q, QQ, dims, mats)


def test_kronecker_stable_certificate():
    w = qq_rep([1, 1])
    v = geom_stability_certificate(w, THETA, CFG, primes=[2])
    assert v.kind == STABLE
    assert v.detail["prime"] == 2


def test_zero_rep_unstable_exact_witness():
    w = Representation.zero_maps(kronecker_quiver(2), QQ, {"s": 1, "t": 1})
    v = geom_stability_certificate(w, THETA, CFG)
    assert v.kind == UNSTABLE
    assert v.witness.dims == {"s": 1, "t": 0}
    assert v.witness.is_closed_in(w)


def test_quaternionic_example_stable_via_prime_5():
    rep, pair, theta = quaternionic_kronecker_example()
    v = geom_stability_certificate(rep, theta, CFG, primes=[5])
    assert v.kind == STABLE
    assert v.detail["prime"] == 5


def test_reduction_map_skips_unusable_primes():
    Qi = gaussian_rationals()
    # p = 3 is 3 mod 4: unusable for Q(i)
    rep, pair, theta = quaternionic_kronecker_example()
    assert reduce_mod_prime(rep, 3) is None
    # denominators divisible by p are unusable over Q
    w = qq_rep([Fraction(1, 5), 1])
    assert reduce_mod_prime(w, 5) is None
    assert reduce_mod_prime(w, 7) is not None


def test_unknown_when_all_primes_unusable():
    w = qq_rep([Fraction(1, 5), 1])
    v = geom_stability_certificate(w, THETA, JobConfig(primes=(5,)))
    assert v.kind == UNKNOWN


def test_equal_slope_witness_reports_strictly_semistable():
    # three copies of the identity: every line pair (v, v) is an exact
    # equal-slope subrepresentation
    q = kronecker_quiver(3)
    ident = qmat([[1, 0], [0, 1]])
    w = Representation(
        q, QQ, {"s": 2, "t": 2}, {"a1": ident, "a2": ident, "a3": ident}
    )
    v = geom_stability_certificate(w, THETA, CFG)
    assert v.kind == STRICTLY_SEMISTABLE
    assert v.witness.slope(THETA) == w.slope(THETA)
    assert v.witness.is_closed_in(w)


def test_dimension_count_shortcut():
    # single vertex of dimension 1: no proper nonzero subrepresentation
    from quivermoduli import jordan_quiver

    w = Representation(jordan_quiver(), QQ, {"v": 1}, {"loop": qmat([[7]])})
    v = geom_stability_certificate(w, {"v": 0}, CFG)
    assert v.kind == STABLE
    assert v.detail.get("certificate") == "dimension-count"


def test_certificate_rejects_finite_fields():
    from quivermoduli import GF

    w = Representation.zero_maps(kronecker_quiver(2), GF(2), {"s": 1, "t": 1})
    with pytest.raises(SchemaError):
        geom_stability_certificate(w, THETA, CFG)


def test_unstable_over_gaussian_rationals():
    Qi = gaussian_rationals()
    q = kronecker_quiver(2)
    w = Representation(
        q, Qi, {"s": 1, "t": 1},
        {"a1": gimat([[0]]), "a2": gimat([[0]])},
    )
    v = geom_stability_certificate(w, THETA, CFG)
    assert v.kind == UNSTABLE
    assert v.witness.dims == {"s": 1, "t": 0}
