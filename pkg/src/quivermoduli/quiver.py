"""Quivers, dimension vectors, representations, and slopes.

A representation assigns to every arrow a matrix of shape d_head x d_tail
acting on column vectors; the group prod_v GL_{d_v} acts by
g . M = (g_{h(a)} M_a g_{t(a)}^{-1}).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .errors import SchemaError
from .linalg import Mat


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    dst: str


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]

    def __post_init__(self):
        seen = set(self.vertices)
        if len(seen) != len(self.vertices):
            raise SchemaError("duplicate vertex names")
        names = set()
        for a in self.arrows:
            if a.src not in seen or a.dst not in seen:
                raise SchemaError(f"arrow {a.name} touches unknown vertex")
            if a.name in names:
                raise SchemaError(f"duplicate arrow name {a.name}")
            names.add(a.name)

    def arrow(self, name):
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def is_single_loop(self):
        return (
            len(self.vertices) == 1
            and len(self.arrows) == 1
            and self.arrows[0].src == self.arrows[0].dst
        )


def kronecker_quiver(num_arrows=2):
    """Two vertices s -> t with the given number of parallel arrows."""
    arrows = tuple(Arrow(f"a{i}", "s", "t") for i in range(1, num_arrows + 1))
    return Quiver(("s", "t"), arrows)


def jordan_quiver():
    """One vertex with one loop."""
    return Quiver(("v",), (Arrow("loop", "v", "v"),))


def a2_quiver():
    """Two vertices with a single arrow s -> t."""
    return Quiver(("s", "t"), (Arrow("a", "s", "t"),))


def total_dim(dims):
    return sum(dims.values())


def slope(dims, theta):
    """(sum theta_v e_v) / (sum e_v) as an exact rational."""
    tot = total_dim(dims)
    if tot == 0:
        raise ValueError("slope of the zero dimension vector is undefined")
    num = sum(theta[v] * e for v, e in dims.items())
    return Fraction(num, tot)


class Representation:
    """A quiver representation over an exact coefficient ring."""

    __slots__ = ("quiver", "ring", "dims", "mats")

    def __init__(self, quiver, ring, dims, mats):
        self.quiver = quiver
        self.ring = ring
        self.dims = dict(dims)
        self.mats = dict(mats)
        for v in quiver.vertices:
            if v not in self.dims or self.dims[v] < 0:
                raise SchemaError(f"missing or negative dimension at vertex {v}")
        for a in quiver.arrows:
            m = self.mats.get(a.name)
            if m is None:
                raise SchemaError(f"missing matrix for arrow {a.name}")
            want = (self.dims[a.dst], self.dims[a.src])
            if m.shape != want:
                raise SchemaError(f"arrow {a.name}: matrix shape {m.shape}, expected {want}")
            if m.ring != ring:
                raise SchemaError(f"arrow {a.name}: entries live in {m.ring}, not {ring}")

    @staticmethod
    def zero_maps(quiver, ring, dims):
        mats = {a.name: Mat.zero(ring, dims[a.dst], dims[a.src]) for a in quiver.arrows}
        return Representation(quiver, ring, dims, mats)

    def mat(self, arrow_name):
        return self.mats[arrow_name]

    def slope(self, theta):
        return slope(self.dims, theta)

    def total_dim(self):
        return total_dim(self.dims)

    def is_zero_dimensional(self):
        return self.total_dim() == 0

    def act(self, g):
        """g . M with g a dict of invertible vertex matrices."""
        ginv = {v: g[v].inverse() for v in self.quiver.vertices}
        if any(m is None for m in ginv.values()):
            raise ValueError("group element is not invertible")
        mats = {
            a.name: g[a.dst] @ self.mats[a.name] @ ginv[a.src] for a in self.quiver.arrows
        }
        return Representation(self.quiver, self.ring, self.dims, mats)

    def map_entries(self, fn, ring=None):
        target = ring if ring is not None else self.ring
        mats = {name: m.map(fn, target) for name, m in self.mats.items()}
        return Representation(self.quiver, target, self.dims, mats)

    def direct_sum(self, other):
        if other.quiver is not self.quiver and other.quiver != self.quiver:
            raise SchemaError("direct sum needs a common quiver")
        dims = {v: self.dims[v] + other.dims[v] for v in self.quiver.vertices}
        ring = self.ring
        mats = {}
        for a in self.quiver.arrows:
            m1, m2 = self.mats[a.name], other.mats[a.name]
            top = m1.hstack(Mat.zero(ring, m1.nrows, m2.ncols))
            bot = Mat.zero(ring, m2.nrows, m1.ncols).hstack(m2)
            mats[a.name] = top.vstack(bot)
        return Representation(self.quiver, ring, dims, mats)

    def encode(self):
        """Hashable flat encoding (used as census points and dict keys)."""
        return tuple(
            (a.name, self.mats[a.name].rows) for a in self.quiver.arrows
        )

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and other.quiver == self.quiver
            and other.ring == self.ring
            and other.dims == self.dims
            and other.mats == self.mats
        )

    def __hash__(self):
        return hash(self.encode())

    def __repr__(self):
        d = [self.dims[v] for v in self.quiver.vertices]
        return f"Rep(dims={d}, ring={self.ring!r})"


def base_change(rep, pair):
    """Extension of scalars along a Galois pair, entries embedded in L."""
    if rep.ring != pair.base:
        raise SchemaError(f"representation is over {rep.ring}, pair base is {pair.base}")
    return rep.map_entries(pair.embed, pair.ext)


def generators_of_gln(ring, n):
    """Generators of GL_n over a finite field: transvections and one diagonal."""
    gens = []
    one = ring.one
    for i in range(n):
        for j in range(n):
            if i != j:
                rows = [list(r) for r in Mat.identity(ring, n).rows]
                rows[i][j] = one
                gens.append(Mat(ring, rows, (n, n)))
    gamma = ring.multiplicative_generator()
    if gamma != one and n > 0:
        rows = [list(r) for r in Mat.identity(ring, n).rows]
        rows[0][0] = gamma
        gens.append(Mat(ring, rows, (n, n)))
    return gens


def group_generators(quiver, ring, dims):
    """Generators of prod_v GL_{d_v} as vertex-indexed dicts, with inverses."""
    out = []
    for v in quiver.vertices:
        n = dims[v]
        if n == 0:
            continue
        for g in generators_of_gln(ring, n):
            full = {
                w: (g if w == v else Mat.identity(ring, dims[w])) for w in quiver.vertices
            }
            inv = {w: m.inverse() for w, m in full.items()}
            out.append((full, inv))
    return out
