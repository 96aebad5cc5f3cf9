"""Quaternionic representations, Morita splitting, and twisted presentations.

The splitting isomorphism D tensor Q(sqrt(m)) = Mat_2 is pinned to
i -> diag(sqrt(m), -sqrt(m)) and j -> [[0, lambda], [1, 0]] for
D = (m, lambda)_Q; every entry of a D-matrix is replaced by its 2x2 image
and blocks are assembled.  The image is exactly the fixed locus of the
modified Galois action given by the standard block-diagonal modifying
matrix u_std, which is what makes the inverse readout well-defined.

Representations over D reuse the generic Representation class with a
QuaternionAlgebra coefficient ring: right D-modules with matrices acting on
the left, so morphism solving (hom_space) expands through the regular
representation.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

from .brauer import brauer_class
from .descent import (
    DescentDatum,
    cocycle_scalar,
    hilbert90_descend,
    modified_action_fixes,
    solve_descent_change_of_basis,
)
from .errors import InvariantError, SchemaError
from .galois import QuadraticPair
from .homs import end_dim, hom_space
from .linalg import Mat
from .quaternions import QuaternionAlgebra, quat_is_division
from .quiver import Representation
from .rings import QQ
from .stability import (
    STRICTLY_SEMISTABLE,
    StabilityVerdict,
    geom_stability_certificate,
    stability_verdict,
)


def _check_split_pair(alg, pair):
    if not isinstance(pair, QuadraticPair):
        raise SchemaError("Morita splitting needs a quadratic pair")
    if Fraction(pair.m) != alg.a:
        raise SchemaError(
            f"pair adjoins sqrt({pair.m}) but the algebra has i^2 = {alg.a}"
        )


def split_basis(alg, pair):
    """The 2x2 images of 1, i, j, ij over L = Q(sqrt(m))."""
    _check_split_pair(alg, pair)
    ext = pair.ext
    s = ext.sqrt_gen
    lam = ext.from_rational(alg.b)
    z, o = ext.zero, ext.one
    m_one = Mat.identity(ext, 2)
    m_i = Mat(ext, ((s, z), (z, ext.neg(s))), (2, 2))
    m_j = Mat(ext, ((z, lam), (o, z)), (2, 2))
    m_k = m_i @ m_j
    return (m_one, m_i, m_j, m_k)


def split_entry(alg, pair, x):
    basis = split_basis(alg, pair)
    ext = pair.ext
    out = Mat.zero(ext, 2, 2)
    for coeff, mat in zip(x, basis):
        if coeff != 0:
            out = out + mat.scale(ext.from_rational(coeff))
    return out


def split_matrix(alg, pair, m):
    """Blockwise image of a D-matrix, shape doubling in both directions."""
    ext = pair.ext
    if m.nrows == 0 or m.ncols == 0:
        return Mat.zero(ext, 2 * m.nrows, 2 * m.ncols)
    block_rows = []
    for i in range(m.nrows):
        blocks = [split_entry(alg, pair, m.entry(i, j)) for j in range(m.ncols)]
        top = blocks[0]
        for b in blocks[1:]:
            top = top.hstack(b)
        block_rows.append(top)
    out = block_rows[0]
    for b in block_rows[1:]:
        out = out.vstack(b)
    return out


def unsplit_matrix(alg, pair, m):
    """Inverse of split_matrix on its image; errors off the image."""
    ext = pair.ext
    if m.nrows % 2 or m.ncols % 2:
        raise SchemaError("matrix shape is not a doubling")
    basis = split_basis(alg, pair)
    # 8 rational coordinates per block against the 4 basis images
    cols = []
    for bm in basis:
        flat = []
        for i in range(2):
            for j in range(2):
                a, b = bm.entry(i, j)
                flat.extend([a, b])
        cols.append(tuple(flat))
    system = Mat.from_cols(QQ, cols, 8)
    rows = []
    for i in range(m.nrows // 2):
        row = []
        for j in range(m.ncols // 2):
            flat = []
            for di in range(2):
                for dj in range(2):
                    a, b = m.entry(2 * i + di, 2 * j + dj)
                    flat.extend([a, b])
            rhs = Mat(QQ, tuple((x,) for x in flat), (8, 1))
            sol = system.solve(rhs)
            if sol is None or system @ sol != rhs:
                raise InvariantError("block is not in the image of the splitting")
            row.append(tuple(sol.entry(t, 0) for t in range(4)))
        rows.append(tuple(row))
    return Mat(alg, tuple(rows), (m.nrows // 2, m.ncols // 2))


def standard_u_matrix(pair, lam, dprime):
    """Block diagonal of dprime copies of [[0, lam], [1, 0]] over L."""
    ext = pair.ext
    lam_elem = ext.from_rational(lam)
    z, o = ext.zero, ext.one
    n = 2 * dprime
    rows = [[z] * n for _ in range(n)]
    for b in range(dprime):
        rows[2 * b][2 * b + 1] = lam_elem
        rows[2 * b + 1][2 * b] = o
    return Mat(ext, rows, (n, n))


def standard_u(pair, lam, dims_dprime):
    return {v: standard_u_matrix(pair, lam, d) for v, d in dims_dprime.items()}


def morita_split(drep, pair):
    """The L-representation of doubled dimension underlying a D-representation."""
    alg = drep.ring
    if not isinstance(alg, QuaternionAlgebra):
        raise SchemaError("morita_split expects a quaternion coefficient ring")
    _check_split_pair(alg, pair)
    dims = {v: 2 * d for v, d in drep.dims.items()}
    mats = {
        a.name: split_matrix(alg, pair, drep.mats[a.name]) for a in drep.quiver.arrows
    }
    return Representation(drep.quiver, pair.ext, dims, mats)


def morita_unsplit(rep, pair, lam):
    """Inverse of morita_split, defined on standard quaternionic fixed points."""
    if any(d % 2 for d in rep.dims.values()):
        raise SchemaError("dimensions must be even to unsplit")
    alg = QuaternionAlgebra(pair.m, lam)
    u_std = standard_u(pair, lam, {v: d // 2 for v, d in rep.dims.items()})
    if not modified_action_fixes(rep, u_std, pair):
        raise SchemaError("representation is not fixed by the standard modified action")
    dims = {v: d // 2 for v, d in rep.dims.items()}
    mats = {
        a.name: unsplit_matrix(alg, pair, rep.mats[a.name]) for a in rep.quiver.arrows
    }
    return Representation(rep.quiver, alg, dims, mats)


def division_form(datum, config):
    """The D-representation presenting a nontrivial-class descent datum.

    Normalizes lambda to the canonical class representative, conjugates the
    modifying element onto the standard block form, and reads the conjugated
    matrices off through the Morita splitting.  Dimensions must be even: the
    index of the class divides the dimension vector.
    """
    pair = datum.pair
    cls = brauer_class(datum.lam, pair)
    if cls.is_trivial:
        raise ValueError("trivial class: use hilbert90_descend, not division_form")
    rep = datum.rep
    odd = [v for v, d in rep.dims.items() if d % 2]
    if odd:
        raise ValueError(
            f"dimension vector is odd at {odd}: the index 2 of the class must divide it"
        )
    lam_std = cls.lam
    if not quat_is_division(pair.m, lam_std):
        raise InvariantError("nontrivial class but split quaternion algebra")
    ratio = Fraction(lam_std) / Fraction(datum.lam)
    a = pair.norm_witness(ratio)
    normalized = datum.rescale(a)
    if normalized.lam != Fraction(lam_std):
        raise InvariantError("lambda normalization failed")
    dprime = {v: d // 2 for v, d in rep.dims.items()}
    u_std = standard_u(pair, lam_std, dprime)
    h = solve_descent_change_of_basis(normalized.u, u_std, pair, config)
    hinv = {v: m.inverse() for v, m in h.items()}
    std_mats = {
        arr.name: h[arr.dst] @ rep.mats[arr.name] @ hinv[arr.src]
        for arr in rep.quiver.arrows
    }
    rep_std = Representation(rep.quiver, pair.ext, rep.dims, std_mats)
    if not modified_action_fixes(rep_std, u_std, pair):
        raise InvariantError("conjugated representation is not u_std-fixed")
    drep = morita_unsplit(rep_std, pair, lam_std)
    if morita_split(drep, pair) != rep_std:
        raise InvariantError("Morita round trip failed on the division form")
    return drep, {"h": h, "standard_rep": rep_std, "lambda": lam_std, "class": cls}


# ---------------------------------------------------------------------------
# twisted representations in descent-datum form


@dataclass(frozen=True)
class TwistedRep:
    """A representation over L with a transition matrix and scalar cocycle.

    The cyclic form of the twisted cocycle condition: the transition u
    intertwines sigma(W) with W and its n-fold twisted product is
    lambda times the identity.  The declared index e divides every vertex
    dimension of W over L; the twisted dimension vector is dim_L(W)/e.
    """

    pair: object
    rep: Representation
    u: Dict[str, Mat]
    lam: object
    index: int
    provenance: dict = field(default_factory=dict)

    def datum(self):
        return DescentDatum(self.rep, self.u, self.lam, self.pair, dict(self.provenance))


def twisted_dim(twisted):
    e = twisted.index
    bad = {v: d for v, d in twisted.rep.dims.items() if d % e}
    if bad:
        raise InvariantError(f"index {e} does not divide the dimensions {bad}")
    return {v: d // e for v, d in twisted.rep.dims.items()}


def validate_twisted(twisted):
    """Check all twisted-representation invariants; returns (ok, diagnostics)."""
    problems = []
    rep, u, pair = twisted.rep, twisted.u, twisted.pair
    for a in rep.quiver.arrows:
        m = rep.mats[a.name]
        if u[a.dst] @ m.map(pair.sigma) != m @ u[a.src]:
            problems.append(f"transition fails on arrow {a.name}")
    try:
        lam = cocycle_scalar(u, pair)
        if lam != twisted.lam:
            problems.append(f"cocycle scalar {lam} differs from declared {twisted.lam}")
    except InvariantError as exc:
        problems.append(str(exc))
    for v, d in rep.dims.items():
        if d % twisted.index:
            problems.append(f"index {twisted.index} does not divide dim {d} at {v}")
    try:
        cls = brauer_class(twisted.lam, pair)
        declared_index = 1 if cls.is_trivial else cls.index
        if declared_index != twisted.index:
            problems.append(
                f"declared index {twisted.index} but the class has index {declared_index}"
            )
    except Exception as exc:  # NotDecidable propagates as a diagnostic
        problems.append(f"class index undecided: {exc}")
    return (not problems, problems)


def drep_to_twisted(drep, pair):
    """Present a D-representation as a twisted representation via u_std."""
    alg = drep.ring
    if not isinstance(alg, QuaternionAlgebra):
        raise SchemaError("expected a quaternion coefficient ring")
    rep = morita_split(drep, pair)
    lam = alg.b
    u = standard_u(pair, lam, dict(drep.dims))
    index = 2 if alg.is_division() else 1
    return TwistedRep(pair, rep, u, Fraction(lam), index, {"source": "drep"})


def twisted_to_drep(twisted, config):
    """The D-representation equivalent to a twisted representation.

    Trivial classes degenerate to representations over the base field
    itself (D = k); nontrivial quadratic classes go through division_form.
    """
    ok, problems = validate_twisted(twisted)
    if not ok:
        raise SchemaError(f"invalid twisted representation: {problems}")
    cls = brauer_class(twisted.lam, twisted.pair)
    if cls.is_trivial:
        rep, _ = hilbert90_descend(twisted.datum(), config)
        return rep
    drep, _ = division_form(twisted.datum(), config)
    return drep


def drep_is_geom_stable(drep, pair, theta, config):
    """Geometric stability of a D-representation via its Morita splitting.

    Splitting identifies D-subrepresentations with subrepresentations of the
    split L-representation compatibly with (twisted) dimensions, so the
    verdict of the split representation is the definitionally right notion.
    Index-1 inputs over finite fields reduce to the exact decision; a
    stable-but-not-Schur decision is reported as strictly semistable, since
    such a representation splits after a base field extension.
    """
    if isinstance(drep.ring, QuaternionAlgebra):
        split = morita_split(drep, pair)
    else:
        split = drep  # index-1 degenerate case: already a field representation
    if split.ring.is_finite:
        verdict = stability_verdict(split, theta, config)
        if not verdict.is_stable:
            return verdict
        if end_dim(split) == 1:
            return verdict
        return StabilityVerdict(
            STRICTLY_SEMISTABLE,
            detail={"reason": "stable but not Schur; splits after base change"},
        )
    return geom_stability_certificate(split, theta, config)


def drep_hom_space(r1, r2):
    """Q-basis of the D-linear intertwiners between two D-representations."""
    return hom_space(r1, r2)
