import random

import pytest

from quivermoduli import (
    GF,
    GaloisPair,
    Mat,
    Representation,
    enumerate_subreps,
    hn_filtration,
    is_geometrically_stable,
    jordan_quiver,
    kronecker_quiver,
    scss,
    stability_verdict,
)
from quivermoduli.config import JobConfig
from quivermoduli.errors import BudgetExceededError
from quivermoduli.quiver import base_change
from quivermoduli.stability import (
    STABLE,
    STRICTLY_SEMISTABLE,
    UNSTABLE,
    base_change_witness,
    count_subspaces,
    hn_subquotients,
    is_semistable,
    quotient_rep,
    restrict_rep,
    subspaces,
    verify_hn,
)

from helpers import fmat, kronecker_rep

CFG = JobConfig()
THETA = {"s": 1, "t": -1}


def random_rep(quiver, field, dims, rng):
    mats = {}
    for a in quiver.arrows:
        rows = tuple(
            tuple(rng.randrange(field.size) for _ in range(dims[a.src]))
            for _ in range(dims[a.dst])
        )
        mats[a.name] = Mat(field, rows, (dims[a.dst], dims[a.src]))
    return Representation(quiver, field, dims, mats)


def test_subspace_enumeration_counts():
    # Gaussian binomial totals: q=2, d=2 -> 5; q=2, d=3 -> 16; q=3, d=2 -> 6
    assert len(subspaces(GF(2), 2)) == count_subspaces(2, 2) == 5
    assert len(subspaces(GF(2), 3)) == count_subspaces(2, 3) == 16
    assert len(subspaces(GF(3), 2)) == count_subspaces(3, 2) == 6
    # canonical forms are pairwise distinct
    seen = {s.rows for s in subspaces(GF(3), 2)}
    assert len(seen) == 6


def test_enumerate_subreps_examples():
    f2 = GF(2)
    w = kronecker_rep(f2, [1, 1])
    subs = enumerate_subreps(w, CFG)
    dims = sorted(tuple(s.dims[v] for v in ("s", "t")) for s in subs)
    assert dims == [(0, 0), (0, 1), (1, 1)]

    zero = Representation.zero_maps(kronecker_quiver(2), f2, {"s": 1, "t": 1})
    assert len(enumerate_subreps(zero, CFG)) == 4

    f3 = GF(3)
    loop = Representation(jordan_quiver(), f3, {"v": 1}, {"loop": fmat(f3, [[2]])})
    assert len(enumerate_subreps(loop, CFG)) == 2


def test_every_returned_witness_is_closed():
    rng = random.Random(5)
    f2 = GF(2)
    q = kronecker_quiver(2)
    for _ in range(10):
        w = random_rep(q, f2, {"s": 2, "t": 1}, rng)
        for sub in enumerate_subreps(w, CFG):
            assert sub.is_closed_in(w)


def test_budget_error():
    tight = JobConfig(max_subspace_checks=3)
    f3 = GF(3)
    w = kronecker_rep(f3, [fmat(f3, [[1, 0], [0, 1]]), fmat(f3, [[0, 1], [0, 0]])],
                      {"s": 2, "t": 2})
    with pytest.raises(BudgetExceededError):
        enumerate_subreps(w, tight)


def test_stability_verdict_examples():
    f2 = GF(2)
    w = kronecker_rep(f2, [1, 1])
    assert stability_verdict(w, THETA, CFG).kind == STABLE

    zero = Representation.zero_maps(kronecker_quiver(2), f2, {"s": 1, "t": 1})
    v = stability_verdict(zero, THETA, CFG)
    assert v.kind == UNSTABLE
    assert v.witness.dims == {"s": 1, "t": 0}
    assert v.witness.slope(THETA) == 1 > zero.slope(THETA)

    simple = Representation(jordan_quiver(), f2, {"v": 1}, {"loop": fmat(f2, [[0]])})
    assert stability_verdict(simple, {"v": 0}, CFG).kind == STABLE


def test_unstable_witness_is_exact():
    rng = random.Random(12)
    f2 = GF(2)
    q = kronecker_quiver(2)
    for _ in range(25):
        w = random_rep(q, f2, {"s": 2, "t": 1}, rng)
        v = stability_verdict(w, THETA, CFG)
        if v.kind == UNSTABLE:
            assert v.witness.is_closed_in(w)
            assert v.witness.slope(THETA) > w.slope(THETA)
        elif v.kind == STRICTLY_SEMISTABLE:
            assert v.witness.slope(THETA) == w.slope(THETA)


def test_geometric_stability_examples():
    f2 = GF(2)
    w = kronecker_rep(f2, [1, 1])
    assert is_geometrically_stable(w, THETA, CFG)

    companion = Representation(
        jordan_quiver(), f2, {"v": 2}, {"loop": fmat(f2, [[0, 1], [1, 1]])}
    )
    assert stability_verdict(companion, {"v": 0}, CFG).kind == STABLE
    assert not is_geometrically_stable(companion, {"v": 0}, CFG)

    ww = w.direct_sum(w)
    assert not is_geometrically_stable(ww, THETA, CFG)


def test_geometric_stability_tower_oracle():
    # geom stable iff stable after base change to F_{q^m}, m = 1..3
    rng = random.Random(77)
    f2 = GF(2)
    q = kronecker_quiver(2)
    checked = 0
    for _ in range(12):
        dims = rng.choice([{"s": 1, "t": 1}, {"s": 2, "t": 1}, {"s": 1, "t": 2}])
        w = random_rep(q, f2, dims, rng)
        got = is_geometrically_stable(w, THETA, CFG)
        want = True
        for m in (2, 3):
            pair = GaloisPair.finite(2, m)
            wl = base_change(w, pair)
            if stability_verdict(wl, THETA, CFG).kind != STABLE:
                want = False
                break
        want = want and stability_verdict(w, THETA, CFG).kind == STABLE
        assert got == want
        checked += 1
    assert checked == 12


def test_scss_examples():
    f2 = GF(2)
    zero = Representation.zero_maps(kronecker_quiver(2), f2, {"s": 1, "t": 1})
    w = scss(zero, THETA, CFG)
    assert w.dims == {"s": 1, "t": 0}

    stable = kronecker_rep(f2, [1, 1])
    assert scss(stable, THETA, CFG).is_full(stable)


def test_scss_contains_all_max_slope_subreps():
    rng = random.Random(9)
    for q in (2, 3):
        f = GF(q)
        quiv = kronecker_quiver(2)
        for _ in range(15):
            dims = rng.choice([{"s": 2, "t": 1}, {"s": 1, "t": 2}, {"s": 2, "t": 2}])
            w = random_rep(quiv, f, dims, rng)
            top = scss(w, THETA, CFG)
            smax = top.slope(THETA) if not top.is_full(w) else None
            if smax is None:
                continue
            for sub in enumerate_subreps(w, CFG):
                if sub.total_dim() and sub.slope(THETA) == smax:
                    assert top.contains(sub)


def test_quotient_and_restrict():
    f3 = GF(3)
    q = kronecker_quiver(2)
    w = Representation(
        q, f3, {"s": 2, "t": 1},
        {"a1": fmat(f3, [[1, 0]]), "a2": fmat(f3, [[0, 1]])},
    )
    v = stability_verdict(w, THETA, CFG)
    sub = scss(w, THETA, CFG)
    if not sub.is_full(w):
        quot, lift = quotient_rep(w, sub)
        assert quot.total_dim() == w.total_dim() - sub.total_dim()
        res = restrict_rep(w, sub)
        assert res.dims == sub.dims


def test_hn_examples():
    f2 = GF(2)
    zero = Representation.zero_maps(kronecker_quiver(2), f2, {"s": 1, "t": 1})
    hn = hn_filtration(zero, THETA, CFG)
    assert [dict(s.dims) for s in hn.steps] == [{"s": 1, "t": 0}, {"s": 1, "t": 1}]
    assert list(hn.slopes) == [1, -1]
    assert verify_hn(zero, THETA, hn, CFG)

    stable = kronecker_rep(f2, [1, 1])
    hn = hn_filtration(stable, THETA, CFG)
    assert hn.length() == 1


def test_hn_of_split_direct_sum():
    f3 = GF(3)
    q = kronecker_quiver(2)
    # S1 = simple at s (slope 1), S2 = simple at t (slope -1)
    s1 = Representation.zero_maps(q, f3, {"s": 1, "t": 0})
    s2 = Representation.zero_maps(q, f3, {"s": 0, "t": 1})
    w = s1.direct_sum(s2)
    hn = hn_filtration(w, THETA, CFG)
    assert list(hn.slopes) == [1, -1]
    assert hn.steps[0].dims == {"s": 1, "t": 0}


def test_hn_properties_random():
    rng = random.Random(21)
    for q in (2, 3):
        f = GF(q)
        quiv = kronecker_quiver(2)
        for _ in range(12):
            dims = rng.choice(
                [{"s": 1, "t": 1}, {"s": 2, "t": 1}, {"s": 1, "t": 2}, {"s": 2, "t": 2}]
            )
            w = random_rep(quiv, f, dims, rng)
            hn = hn_filtration(w, THETA, CFG)
            assert verify_hn(w, THETA, hn, CFG)
            assert list(hn.slopes) == sorted(hn.slopes, reverse=True)
            layers = hn_subquotients(w, THETA, hn)
            total = {v: sum(l.dims[v] for l in layers) for v in w.dims}
            assert total == w.dims


def test_semistable_iff_base_change_semistable():
    rng = random.Random(33)
    f2 = GF(2)
    pair = GaloisPair.finite(2, 2)
    quiv = kronecker_quiver(2)
    for _ in range(15):
        dims = rng.choice([{"s": 1, "t": 1}, {"s": 2, "t": 1}, {"s": 1, "t": 2}])
        w = random_rep(quiv, f2, dims, rng)
        wl = base_change(w, pair)
        assert is_semistable(w, THETA, CFG) == is_semistable(wl, THETA, CFG)


def test_hn_commutes_with_base_change():
    rng = random.Random(41)
    for q in (2, 3):
        pair = GaloisPair.finite(q, 2)
        quiv = kronecker_quiver(2)
        for _ in range(10):
            dims = rng.choice([{"s": 1, "t": 1}, {"s": 2, "t": 1}, {"s": 2, "t": 2}])
            w = random_rep(quiv, pair.base, dims, rng)
            hn = hn_filtration(w, THETA, CFG)
            wl = base_change(w, pair)
            hn2 = hn_filtration(wl, THETA, CFG)
            assert hn.slopes == hn2.slopes
            for w1, w2 in zip(hn.steps, hn2.steps):
                lifted = base_change_witness(w1, pair).canonical()
                assert lifted.bases == w2.bases
