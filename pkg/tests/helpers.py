"""Shared builders for the test suite."""

from fractions import Fraction

from quivermoduli import (
    GaloisPair,
    Mat,
    Representation,
    gaussian_rationals,
    kronecker_quiver,
)
from quivermoduli.rings import QQ


def fmat(field, rows):
    """Matrix over a finite field from plain integer rows."""
    return Mat(field, tuple(tuple(field.from_int(x) if isinstance(x, int) else x for x in r) for r in rows))


def qmat(rows):
    """Matrix over Q from ints / Fractions."""
    return Mat(QQ, tuple(tuple(Fraction(x) for x in r) for r in rows))


def gi(a, b=0):
    """Element a + b*i of Q(i)."""
    return (Fraction(a), Fraction(b))


def gimat(rows):
    """Matrix over Q(i) from entries given as (a, b) int pairs or ints."""
    Qi = gaussian_rationals()

    def conv(x):
        if isinstance(x, tuple):
            return gi(*x)
        return gi(x)

    return Mat(Qi, tuple(tuple(conv(x) for x in r) for r in rows))


def kronecker_rep(field, entries, dims=None):
    """Representation of the 2-Kronecker quiver with given 1x1 (or bigger) maps."""
    quiver = kronecker_quiver(len(entries))
    if dims is None:
        dims = {"s": 1, "t": 1}
        mats = {
            f"a{i+1}": fmat(field, [[e]]) for i, e in enumerate(entries)
        }
    else:
        mats = {f"a{i+1}": m for i, m in enumerate(entries)}
    return Representation(quiver, field, dims, mats)


def quaternionic_kronecker_example():
    """The 3-Kronecker representation (I, diag(i,-i), [[0,-1],[1,0]]) over Q(i)."""
    Qi = gaussian_rationals()
    quiver = kronecker_quiver(3)
    m1 = gimat([[1, 0], [0, 1]])
    m2 = gimat([[(0, 1), 0], [0, (0, -1)]])
    m3 = gimat([[0, -1], [1, 0]])
    rep = Representation(quiver, Qi, {"s": 2, "t": 2}, {"a1": m1, "a2": m2, "a3": m3})
    return rep, GaloisPair.gaussian(), {"s": 1, "t": -1}
