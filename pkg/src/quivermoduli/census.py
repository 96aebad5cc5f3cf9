"""Desk-scale censuses: orbit counting, descent verification, and
classification of rational points by Brauer type.

The enumeration core works on integer-encoded matrices with the field's
lookup tables bound to locals, which keeps full scans of rep spaces like
F_4^8 in the seconds range.  Orbit counting is done twice, by union-find
over group generators and by canonical (minimal) representatives, and the
two counts are cross-checked.  Single-loop quivers additionally route
through similarity classes (companion blocks of prime-power polynomials),
which covers spaces too large to scan pointwise.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional

from .brauer import brauer_class
from .config import JobConfig
from .descent import solve_modifying_u, hilbert90_descend
from .errors import BudgetExceededError, InvariantError, SchemaError
from .ffields import GF
from .galois import GaloisPair
from .homs import is_isomorphic
from .linalg import Mat
from .morita import division_form, drep_to_twisted
from .quiver import Representation, base_change, group_generators, slope, total_dim
from .stability import STABLE, STRICTLY_SEMISTABLE, UNSTABLE, stability_verdict

GEOM_STABLE = "geom_stable"
STABLE_NOT_SCHUR = "stable_not_schur"


# ---------------------------------------------------------------------------
# integer-matrix kernel


def _k_matmul(A, B, add, mul, zero):
    Bt = tuple(zip(*B)) if B else ()
    out = []
    for row in A:
        orow = []
        for col in Bt:
            acc = zero
            for a, b in zip(row, col):
                if a and b:
                    acc = add(acc, mul(a, b))
            orow.append(acc)
        out.append(tuple(orow))
    return tuple(out)


def _k_rank(rows, field):
    """Rank by destructive forward elimination on a list of row lists."""
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rows and col < ncols:
        pr = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                pr = i
                break
        if pr is None:
            col += 1
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        piv = rows[rank]
        pinv = inv(piv[col])
        if piv[col] != field.one:
            piv = [mul(pinv, x) for x in piv]
            rows[rank] = piv
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                nf = neg(f)
                rows[i] = [add(x, mul(nf, y)) for x, y in zip(rows[i], piv)]
        rank += 1
        col += 1
        if rank == len(rows):
            break
    return rank


def _echelon_with_pivots(rows, field):
    """RREF rows and pivot columns for membership testing."""
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    work = [list(r) for r in rows]
    ncols = len(work[0]) if work else 0
    out = []
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(work)):
            if work[i][c]:
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        piv = work[r]
        if piv[c] != field.one:
            pinv = inv(piv[c])
            piv = [mul(pinv, x) for x in piv]
            work[r] = piv
        for i in range(len(work)):
            if i != r and work[i][c]:
                nf = neg(work[i][c])
                work[i] = [add(x, mul(nf, y)) for x, y in zip(work[i], piv)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return [tuple(work[i]) for i in range(r)], pivots


class _SubspaceRec:
    """A subspace stored as RREF rows with pivots, for O(rank*dim) membership."""

    __slots__ = ("rank", "rows", "pivots")

    def __init__(self, rows, pivots):
        self.rank = len(rows)
        self.rows = rows
        self.pivots = pivots

    def contains_vector(self, vec, field):
        add, mul, neg = field.add, field.mul, field.neg
        w = list(vec)
        for row, c in zip(self.rows, self.pivots):
            f = w[c]
            if f:
                nf = neg(f)
                w = [add(x, mul(nf, y)) for x, y in zip(w, row)]
        return not any(w)


_SUBSPACE_RECS = {}


def _subspace_records(field, dim):
    """All subspaces of field^dim as _SubspaceRec, grouped by rank."""
    key = (field, dim)
    cached = _SUBSPACE_RECS.get(key)
    if cached is not None:
        return cached
    by_rank = {r: [] for r in range(dim + 1)}
    elems = list(field.elements())
    for r in range(dim + 1):
        for pivots in combinations(range(dim), r):
            free_pos = []
            for i in range(r):
                for j in range(pivots[i] + 1, dim):
                    if j not in pivots:
                        free_pos.append((i, j))
            for values in product(elems, repeat=len(free_pos)):
                rows = [[field.zero] * dim for _ in range(r)]
                for i in range(r):
                    rows[i][pivots[i]] = field.one
                for (i, j), val in zip(free_pos, values):
                    rows[i][j] = val
                by_rank[r].append(_SubspaceRec([tuple(x) for x in rows], list(pivots)))
    _SUBSPACE_RECS[key] = by_rank
    return by_rank


@dataclass
class _Plan:
    """Precomputed stability plan for one (quiver, dims, theta, field).

    Subspaces carry per-vertex indices; each slope group stores explicit
    index combinations.  Closure of (M_a, U_tail, U_head) is memoized per
    arrow and matrix, which collapses full rep-space scans to set lookups
    because arrow matrices repeat across points.
    """

    quiver: object
    dims: dict
    theta: dict
    field: object
    mu: Fraction
    groups: list  # [(slope, [(e_vec, [index combos])])], slope >= mu, descending
    arrow_idx: list  # (arrow position, tail vertex pos, head vertex pos)
    verts: list
    vertex_recs: list  # per vertex position: list of _SubspaceRec or None
    arrow_pairs: list  # per arrow position: {(t_idx, h_idx)} queried by some combo
    closure_memo: list  # per arrow position: {matrix rows -> set of closed pairs}


def _build_plan(quiver, dims, theta, field):
    verts = list(quiver.vertices)
    vpos = {v: i for i, v in enumerate(verts)}
    arrow_idx = [(i, vpos[a.src], vpos[a.dst]) for i, a in enumerate(quiver.arrows)]
    mu = slope(dims, theta)
    all_recs = [None] * len(verts)
    rec_index = [{} for _ in verts]  # rank -> [global indices]
    for i, v in enumerate(verts):
        by_rank = _subspace_records(field, dims[v])
        flat = []
        for r in sorted(by_rank):
            rec_index[i][r] = list(range(len(flat), len(flat) + len(by_rank[r])))
            flat.extend(by_rank[r])
        all_recs[i] = flat
    groups = []
    arrow_pairs = [set() for _ in quiver.arrows]
    for s, es in _slope_groups_for(dims, theta):
        if s < mu:
            break
        entries = []
        for e in es:
            per_vertex = [rec_index[i][e[v]] for i, v in enumerate(verts)]
            combos = list(product(*per_vertex))
            entries.append((tuple(e[v] for v in verts), combos))
            for combo in combos:
                for a_i, t_pos, h_pos in arrow_idx:
                    arrow_pairs[a_i].add((combo[t_pos], combo[h_pos]))
        groups.append((s, entries))
    closure_memo = [{} for _ in quiver.arrows]
    return _Plan(
        quiver,
        dims,
        theta,
        field,
        mu,
        groups,
        arrow_idx,
        verts,
        all_recs,
        arrow_pairs,
        closure_memo,
    )


def _slope_groups_for(dims, theta):
    groups = {}
    verts = list(dims)
    for combo in product(*[range(dims[v] + 1) for v in verts]):
        e = dict(zip(verts, combo))
        t = sum(combo)
        if t == 0 or e == dims:
            continue
        groups.setdefault(slope(e, theta), []).append(e)
    return sorted(groups.items(), key=lambda kv: kv[0], reverse=True)


def _closed_pairs(plan, a_i, t_pos, h_pos, mat):
    """Closed pairs (t_idx, h_idx) with M U_t inside U_h, over queried pairs."""
    field = plan.field
    add, mul = field.add, field.mul
    zero = field.zero
    t_recs = plan.vertex_recs[t_pos]
    h_recs = plan.vertex_recs[h_pos]
    out = set()
    images = {}
    for t_idx, h_idx in plan.arrow_pairs[a_i]:
        imgs = images.get(t_idx)
        if imgs is None:
            imgs = []
            for u in t_recs[t_idx].rows:
                img = []
                for mrow in mat:
                    acc = zero
                    for c, x in zip(mrow, u):
                        if c and x:
                            acc = add(acc, mul(c, x))
                    img.append(acc)
                imgs.append(img)
            images[t_idx] = imgs
        hrec = h_recs[h_idx]
        if all(hrec.contains_vector(img, field) for img in imgs):
            out.add((t_idx, h_idx))
    return out


def _categorize_point(point, plan):
    """Stability category of an encoded point, matching stability_verdict."""
    memo = plan.closure_memo
    arrow_idx = plan.arrow_idx
    closed = []
    for a_i, t_pos, h_pos in arrow_idx:
        mat = point[a_i]
        pairs = memo[a_i].get(mat)
        if pairs is None:
            pairs = _closed_pairs(plan, a_i, t_pos, h_pos, mat)
            memo[a_i][mat] = pairs
        closed.append(pairs)
    for s, entries in plan.groups:
        for e_vec, combos in entries:
            for combo in combos:
                for k, (a_i, t_pos, h_pos) in enumerate(arrow_idx):
                    if (combo[t_pos], combo[h_pos]) not in closed[k]:
                        break
                else:
                    return UNSTABLE if s > plan.mu else STRICTLY_SEMISTABLE
    return STABLE


def _end_dim_point(point, plan):
    """dim End for an encoded point via the rank of the intertwiner system."""
    field = plan.field
    verts = plan.verts
    dims = plan.dims
    offsets = {}
    total = 0
    for v in verts:
        offsets[v] = total
        total += dims[v] * dims[v]
    rows = []
    zero = field.zero
    add_, sub_ = field.add, field.sub
    for (a_i, t_i, h_i), arrow in zip(plan.arrow_idx, plan.quiver.arrows):
        m = point[a_i]
        vt, vh = verts[t_i], verts[h_i]
        dh, dt = dims[vh], dims[vt]
        for i in range(dh):
            for j in range(dt):
                row = [zero] * total
                for k in range(dh):
                    c = m[k][j]
                    if c:
                        idx = offsets[vh] + i * dh + k
                        row[idx] = add_(row[idx], c)
                for k in range(dt):
                    c = m[i][k]
                    if c:
                        idx = offsets[vt] + k * dt + j
                        row[idx] = sub_(row[idx], c)
                rows.append(row)
    if not rows:
        return total
    return total - _k_rank(rows, field)


def _encode_rep(rep):
    return tuple(rep.mats[a.name].rows for a in rep.quiver.arrows)


def _decode_rep(quiver, ring, dims, point):
    mats = {}
    for a, rows in zip(quiver.arrows, point):
        mats[a.name] = Mat(ring, rows, (dims[a.dst], dims[a.src]))
    return Representation(quiver, ring, dims, mats)


_MATRIX_LISTS = {}


def _all_matrices(field, nrows, ncols):
    """Every nrows x ncols matrix over the field, as shared row tuples."""
    key = (field, nrows, ncols)
    cached = _MATRIX_LISTS.get(key)
    if cached is None:
        elems = list(field.elements())
        rows_choices = list(product(elems, repeat=ncols))
        cached = [
            tuple(rows) for rows in product(rows_choices, repeat=nrows)
        ]
        _MATRIX_LISTS[key] = cached
    return cached


def _all_points(quiver, dims, field):
    per_arrow = [
        _all_matrices(field, dims[a.dst], dims[a.src]) for a in quiver.arrows
    ]
    return product(*per_arrow)


def _point_count(quiver, dims, q):
    entries = sum(dims[a.dst] * dims[a.src] for a in quiver.arrows)
    return q**entries


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        if x not in self.parent:
            self.parent[x] = x

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[rx] = ry

    def roots(self):
        return {self.find(x) for x in self.parent}


def _generator_tables(quiver, dims, field):
    """Group generators as encoded matrix dicts together with inverses."""
    gens = []
    for g, ginv in group_generators(quiver, field, dims):
        enc = {v: g[v].rows for v in g}
        encinv = {v: ginv[v].rows for v in ginv}
        gens.append((enc, encinv))
    return gens


def _apply_generator(point, gen, quiver, field):
    enc, encinv = gen
    add, mul, zero = field.add, field.mul, field.zero
    out = []
    for rows, a in zip(point, quiver.arrows):
        m = _k_matmul(enc[a.dst], rows, add, mul, zero)
        m = _k_matmul(m, encinv[a.src], add, mul, zero)
        out.append(m)
    return tuple(out)


@dataclass
class OrbitCensus:
    """Stable orbits of one rep space, with category counts and orbit lookup.

    `counts` covers the two stable categories only; non-stable points never
    enter the orbit structure.
    """

    quiver: object
    dims: dict
    theta: dict
    field: object
    counts: Dict[str, int]
    orbit_category: Dict[object, str]  # union-find root -> category
    uf: Optional[_UnionFind]
    representatives: List[object]  # one encoded point per stable orbit
    canonical_count: int

    @property
    def geom_stable_count(self):
        return self.counts[GEOM_STABLE]

    def orbit_id(self, point):
        return self.uf.find(point)

    def same_orbit(self, p1, p2):
        return self.uf.find(p1) == self.uf.find(p2)

    def geom_stable_representatives(self):
        return [
            r for r in self.representatives if self.orbit_category[self.uf.find(r)] == GEOM_STABLE
        ]


def orbit_census(quiver, dims, theta, field, config):
    """Scan the whole rep space; count stable orbits by category, two ways."""
    npoints = _point_count(quiver, dims, field.size)
    if npoints > config.max_orbit_points:
        raise BudgetExceededError(
            f"rep space has {npoints} points (budget {config.max_orbit_points})",
            estimate=npoints,
        )
    plan = _build_plan(quiver, dims, theta, field)
    stable_points = {}
    counts = {GEOM_STABLE: 0, STABLE_NOT_SCHUR: 0}
    for point in _all_points(quiver, dims, field):
        cat = _categorize_point(point, plan)
        if cat == STABLE:
            schur = _end_dim_point(point, plan) == 1
            stable_points[point] = GEOM_STABLE if schur else STABLE_NOT_SCHUR
    gens = _generator_tables(quiver, dims, field)
    uf = _UnionFind()
    for point in stable_points:
        uf.add(point)
    for point in stable_points:
        for gen in gens:
            image = _apply_generator(point, gen, quiver, field)
            if image not in stable_points:
                raise InvariantError("stability is not constant on an orbit")
            uf.union(point, image)
    orbit_category = {}
    for point, cat in stable_points.items():
        root = uf.find(point)
        prev = orbit_category.get(root)
        if prev is None:
            orbit_category[root] = cat
        elif prev != cat:
            raise InvariantError("category is not constant on an orbit")
    for cat in (GEOM_STABLE, STABLE_NOT_SCHUR):
        counts[cat] = sum(1 for c in orbit_category.values() if c == cat)
    # independent count: canonical minimal representatives via orbit BFS
    visited = set()
    representatives = []
    canonical_count = 0
    for point in sorted(stable_points):
        if point in visited:
            continue
        orbit = {point}
        frontier = [point]
        while frontier:
            cur = frontier.pop()
            for gen in gens:
                image = _apply_generator(cur, gen, quiver, field)
                if image not in orbit:
                    orbit.add(image)
                    frontier.append(image)
        visited |= orbit
        representatives.append(min(orbit))
        canonical_count += 1
    if canonical_count != len(orbit_category):
        raise InvariantError(
            f"orbit counts disagree: union-find {len(orbit_category)}, "
            f"canonical {canonical_count}"
        )
    return OrbitCensus(
        quiver,
        dims,
        theta,
        field,
        counts,
        orbit_category,
        uf,
        representatives,
        canonical_count,
    )


# ---------------------------------------------------------------------------
# similarity classes for single-loop quivers

def _fpoly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fpoly_mul(a, b, field):
    if not a or not b:
        return []
    add, mul = field.add, field.mul
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return _fpoly_trim(out)


def _fpoly_mod(a, m, field):
    # m monic
    sub, mul = field.sub, field.mul
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = sub(a[shift + i], mul(lead, mi))
        a.pop()
    return _fpoly_trim(a)


def _fpoly_powmod(a, e, m, field):
    result = [field.one]
    base = _fpoly_mod(list(a), m, field)
    while e:
        if e & 1:
            result = _fpoly_mod(_fpoly_mul(result, base, field), m, field)
        base = _fpoly_mod(_fpoly_mul(base, base, field), m, field)
        e >>= 1
    return result


def _fpoly_gcd(a, b, field):
    a, b = list(a), list(b)
    while b:
        inv_lead = field.inv(b[-1])
        bm = [field.mul(inv_lead, x) for x in b]
        r = list(a)
        while len(r) >= len(bm) and r:
            lead = r[-1]
            if lead:
                shift = len(r) - len(bm)
                for i, mi in enumerate(bm):
                    r[shift + i] = field.sub(r[shift + i], field.mul(lead, mi))
            r.pop()
        a, b = b, _fpoly_trim(r)
    return a


def _fpoly_is_irreducible(coeffs, field):
    n = len(coeffs) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    q = field.size
    x = [field.zero, field.one]
    xq = _fpoly_powmod(x, q**n, list(coeffs), field)
    diff = _fpoly_trim(
        [field.sub(a, b) for a, b in _zip_pad(xq, x, field.zero)]
    )
    if diff:
        return False
    for ell in _distinct_prime_factors(n):
        xe = _fpoly_powmod(x, q ** (n // ell), list(coeffs), field)
        diff = _fpoly_trim(
            [field.sub(a, b) for a, b in _zip_pad(xe, x, field.zero)]
        )
        g = _fpoly_gcd(list(coeffs), diff, field)
        if len(g) - 1 > 0:
            return False
    return True


def _zip_pad(a, b, zero):
    n = max(len(a), len(b))
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return zip(a, b)


def _distinct_prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def monic_irreducibles(field, max_degree):
    """All monic irreducible polynomials of degree <= max_degree (low first)."""
    out = []
    elems = list(field.elements())
    for deg in range(1, max_degree + 1):
        for tail in product(elems, repeat=deg):
            coeffs = list(tail) + [field.one]
            if _fpoly_is_irreducible(coeffs, field):
                out.append(tuple(coeffs))
    return out


def _partitions(n):
    if n == 0:
        yield ()
        return
    for first in range(n, 0, -1):
        for rest in _partitions(n - first):
            if not rest or rest[0] <= first:
                yield (first,) + rest


def _companion_matrix(poly, field):
    """Companion matrix of a monic polynomial, as encoded rows."""
    n = len(poly) - 1
    rows = [[field.zero] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = field.one
    for i in range(n):
        rows[i][n - 1] = field.neg(poly[i])
    return tuple(tuple(r) for r in rows)


def similarity_class_reps(field, size):
    """One representative per similarity class of size x size matrices.

    Classes correspond to maps from monic irreducibles to partitions with
    total weighted size equal to `size`; the representative is the block
    diagonal of companion matrices of prime powers.  Returns
    (class_data, matrix_rows) pairs, class_data a sorted tuple of
    (poly, multiplicity) with poly repeated per partition part.
    """
    irreds = [p for p in monic_irreducibles(field, size)]
    out = []

    def assign(remaining, idx, chosen):
        if remaining == 0:
            out.append(tuple(sorted(chosen)))
            return
        if idx == len(irreds):
            return
        poly = irreds[idx]
        deg = len(poly) - 1
        assign(remaining, idx + 1, chosen)
        for mult_total in range(1, remaining // deg + 1):
            for part in _partitions(mult_total):
                assign(
                    remaining - deg * mult_total,
                    idx + 1,
                    chosen + [(poly, part)],
                )

    assign(size, 0, [])
    reps = []
    for data in out:
        blocks = []
        for poly, part in data:
            for m in part:
                pm = [field.one]
                for _ in range(m):
                    pm = _fpoly_mul(pm, list(poly), field)
                blocks.append(_companion_matrix(pm, field))
        n = sum(len(b) for b in blocks)
        rows = [[field.zero] * n for _ in range(n)]
        at = 0
        for b in blocks:
            k = len(b)
            for i in range(k):
                for j in range(k):
                    rows[at + i][at + j] = b[i][j]
            at += k
        reps.append((data, tuple(tuple(r) for r in rows)))
    return reps


def _frobenius_class_data(data, field):
    out = []
    for poly, part in data:
        out.append((tuple(field.frobenius(c) for c in poly), part))
    return tuple(sorted(out))


@dataclass
class LoopClassCensus:
    """Similarity-class census for a single-loop quiver (no pointwise scan).

    Orbits of a single loop are similarity classes, so representatives come
    from invariant-factor data (companion blocks of prime powers) and
    Frobenius fixedness is read off the class data.
    """

    quiver: object
    dims: dict
    theta: dict
    field: object
    counts: Dict[str, int]
    entries: list  # (class_data, encoded point, category)
    config: object

    @property
    def geom_stable_count(self):
        return self.counts[GEOM_STABLE]

    def geom_stable_entries(self):
        return [e for e in self.entries if e[2] == GEOM_STABLE]

    def frobenius_fixed_geom_stable(self):
        return [
            e
            for e in self.geom_stable_entries()
            if _frobenius_class_data(e[0], self.field) == e[0]
        ]

    def geom_stable_representatives(self):
        return [point for _, point, _ in self.geom_stable_entries()]

    def same_orbit(self, p1, p2):
        r1 = _decode_rep(self.quiver, self.field, self.dims, p1)
        r2 = _decode_rep(self.quiver, self.field, self.dims, p2)
        return is_isomorphic(r1, r2, self.config) is not None

    def orbit_id(self, point):
        for data, rep_point, _ in self.entries:
            if self.same_orbit(point, rep_point):
                return data
        raise InvariantError("point matches no similarity class")


def loop_class_census(quiver, dims, theta, field, config):
    if not quiver.is_single_loop():
        raise InvariantError("class census is only for single-loop quivers")
    v = quiver.vertices[0]
    size = dims[v]
    plan = _build_plan(quiver, dims, theta, field)
    counts = {GEOM_STABLE: 0, STABLE_NOT_SCHUR: 0}
    entries = []
    for data, rows in similarity_class_reps(field, size):
        point = (rows,)
        cat = _categorize_point(point, plan)
        if cat == STABLE:
            cat = GEOM_STABLE if _end_dim_point(point, plan) == 1 else STABLE_NOT_SCHUR
            counts[cat] += 1
        entries.append((data, point, cat))
    return LoopClassCensus(quiver, dims, theta, field, counts, entries, config)


# ---------------------------------------------------------------------------
# public census operations


def stable_orbit_census(quiver, dims, theta, field, config):
    """Orbit census; single-loop quivers go through similarity classes.

    For one loop, orbits are exactly similarity classes, so the class route
    is a full census at a fraction of the pointwise cost (and covers spaces
    such as 4x4 matrices over F_4 that no scan could).  The pointwise
    union-find census remains the general path and the cross-check.
    """
    if quiver.is_single_loop() and total_dim(dims) > 0:
        return loop_class_census(quiver, dims, theta, field, config)
    return orbit_census(quiver, dims, theta, field, config)


def count_geom_stable_orbits(quiver, dims, theta, q, config=JobConfig(), field=None):
    """Number of isomorphism classes of geometrically stable reps over F_q."""
    if field is None:
        field = GF(q)
    return stable_orbit_census(quiver, dims, theta, field, config).geom_stable_count


def lagrange_interpolation(points):
    """Coefficients (low first) of the interpolating polynomial, exact."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            # multiply basis by (x - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k] -= c * xj
                nxt[k + 1] += c
            basis = nxt
            denom *= xi - xj
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass
class PolynomialFit:
    q_values: list
    counts: list
    coefficients: list
    integral: bool
    residuals: list

    def as_dict(self):
        return {
            "q": self.q_values,
            "counts": self.counts,
            "coefficients": [str(c) for c in self.coefficients],
            "integral": self.integral,
            "residuals": [str(r) for r in self.residuals],
        }


def census_polynomiality(quiver, dims, theta, q_list, config=JobConfig()):
    """Point counts for each q plus the unique interpolating polynomial.

    Residuals at the sample points are reported (they vanish by
    construction; a nonzero residual would expose an arithmetic bug), and a
    non-integral fit is reported rather than raised.
    """
    counts = [count_geom_stable_orbits(quiver, dims, theta, q, config) for q in q_list]
    coeffs = lagrange_interpolation(list(zip(q_list, counts)))
    residuals = [_poly_eval(coeffs, q) - c for q, c in zip(q_list, counts)]
    integral = all(c.denominator == 1 for c in coeffs)
    return PolynomialFit(list(q_list), counts, coeffs, integral, residuals)


@dataclass
class DescentCensusReport:
    quiver: object
    dims: dict
    theta: dict
    q: int
    n: int
    fixed_orbit_count: int
    base_count: int
    descended_forms: list
    violations: list

    @property
    def ok(self):
        return not self.violations


def verify_descent_census(quiver, dims, theta, q, n, config=JobConfig()):
    """Exhaustively check descent over F_{q^n}/F_q for one configuration.

    (a) every Frobenius-fixed geometrically stable orbit descends to a
    verified F_q-form, (b) forms from distinct orbits are non-isomorphic
    over F_q, (c) the number of fixed orbits equals the F_q orbit count.
    Violations raise InvariantError; the report carries the evidence.
    """
    try:
        pair = GaloisPair.finite(q, n)
    except ValueError as exc:
        raise SchemaError(f"descent census needs a prime q: {exc}") from exc
    census_l = stable_orbit_census(quiver, dims, theta, pair.ext, config)
    census_k = stable_orbit_census(quiver, dims, theta, pair.base, config)
    violations = []
    forms = []
    if isinstance(census_l, LoopClassCensus):
        # Frobenius permutes similarity-class data, so fixedness is decided
        # structurally.
        fixed_points = [point for _, point, _ in census_l.frobenius_fixed_geom_stable()]
    else:
        fixed_points = []
        frob = pair.ext.frobenius
        for point in census_l.geom_stable_representatives():
            image = tuple(
                tuple(tuple(frob(x) for x in row) for row in m) for m in point
            )
            if census_l.same_orbit(image, point):
                fixed_points.append(point)
    k_roots = []
    for point in fixed_points:
        rep = _decode_rep(quiver, pair.ext, dims, point)
        datum = solve_modifying_u(rep, pair, theta, config, check_stability=False)
        if datum is None:
            violations.append(f"fixed orbit of {point} has no modifying element")
            continue
        cls = brauer_class(datum.lam, pair)
        if not cls.is_trivial:
            violations.append("nontrivial Brauer class over a finite field")
            continue
        form, g = hilbert90_descend(datum, config)
        lifted = base_change(form, pair)
        if not census_l.same_orbit(_encode_rep(lifted), point):
            violations.append("descended form leaves the original orbit")
            continue
        k_roots.append(census_k.orbit_id(_encode_rep(form)))
        forms.append({"orbit": point, "form": form})
    if len(set(k_roots)) != len(k_roots):
        violations.append("distinct fixed orbits produced isomorphic F_q-forms")
    if len(forms) <= 6:
        for i in range(len(forms)):
            for j in range(i + 1, len(forms)):
                iso = is_isomorphic(forms[i]["form"], forms[j]["form"], config)
                if iso is not None:
                    violations.append(
                        f"is_isomorphic found an isomorphism between forms {i} and {j}"
                    )
    if len(fixed_points) != census_k.geom_stable_count:
        violations.append(
            f"fixed orbit count {len(fixed_points)} differs from base count "
            f"{census_k.geom_stable_count}"
        )
    report = DescentCensusReport(
        quiver,
        dims,
        theta,
        q,
        n,
        len(fixed_points),
        census_k.geom_stable_count,
        forms,
        violations,
    )
    if violations:
        raise InvariantError("; ".join(violations))
    return report


# ---------------------------------------------------------------------------
# classification of rational points


@dataclass
class ClassificationRecord:
    rep: Representation
    pair: object
    theta: dict
    brauer: object
    index: int
    datum: object
    k_form: Optional[Representation] = None
    d_form: Optional[Representation] = None
    twisted: Optional[object] = None
    provenance: dict = field(default_factory=dict)


def decompose_rational_point(rep, pair, theta, config=JobConfig()):
    """Classify a Galois-fixed geometrically stable orbit by Brauer type.

    Trivial type: attach the descended base-field form.  Nontrivial type:
    check index divisibility, attach the division-algebra form and its
    twisted presentation.
    """
    datum = solve_modifying_u(rep, pair, theta, config)
    if datum is None:
        raise ValueError("orbit is not Galois-fixed")
    cls = brauer_class(datum.lam, pair)
    record = ClassificationRecord(
        rep=rep,
        pair=pair,
        theta=theta,
        brauer=cls,
        index=1 if cls.is_trivial else cls.index,
        datum=datum,
    )
    if cls.is_trivial:
        form, g = hilbert90_descend(datum, config)
        record.k_form = form
        record.provenance["witness"] = "hilbert90"
        return record
    bad = [v for v, d in rep.dims.items() if d % cls.index]
    if bad:
        raise InvariantError(
            f"nontrivial class with index {cls.index} but odd dimensions at {bad}"
        )
    drep, prov = division_form(datum, config)
    record.d_form = drep
    record.twisted = drep_to_twisted(drep, pair)
    record.provenance["lambda"] = str(prov["lambda"])
    return record


def index_divisibility_audit(records):
    """Check ind(class) | d_v for every record; returns (ok, violations)."""
    violations = []
    for i, rec in enumerate(records):
        for v, d in rec.rep.dims.items():
            if d % rec.index:
                violations.append(f"record {i}: index {rec.index} does not divide d_{v}={d}")
    return (not violations, violations)


def all_orbit_representatives(quiver, dims, field, config):
    """One representative per isomorphism class of ALL representations.

    Group-equivariant properties (HN data, semistability of layers, base
    change behaviour) are constant on orbits, so checking them on these
    representatives checks them for the whole representation space.
    Single-loop quivers use similarity classes; everything else is a
    union-find sweep of the full space.
    """
    if quiver.is_single_loop() and total_dim(dims) > 0:
        return [
            _decode_rep(quiver, field, dims, (rows,))
            for _, rows in similarity_class_reps(field, dims[quiver.vertices[0]])
        ]
    npoints = _point_count(quiver, dims, field.size)
    if npoints > config.max_orbit_points:
        raise BudgetExceededError(
            f"rep space has {npoints} points (budget {config.max_orbit_points})",
            estimate=npoints,
        )
    gens = _generator_tables(quiver, dims, field)
    uf = _UnionFind()
    points = list(_all_points(quiver, dims, field))
    for point in points:
        uf.add(point)
    for point in points:
        for gen in gens:
            uf.union(point, _apply_generator(point, gen, quiver, field))
    reps = {}
    for point in points:
        root = uf.find(point)
        if root not in reps or point < reps[root]:
            reps[root] = point
    return [_decode_rep(quiver, field, dims, p) for p in sorted(reps.values())]
