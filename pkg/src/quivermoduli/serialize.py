"""JSON schemas for rings, quivers, representations, and descent data.

Rationals serialize as "p/q" strings, prime-field elements as integers,
extension-field elements as coefficient arrays (the modulus rides in the
ring descriptor), quadratic elements as ["a", "b"] for a + b sqrt(m), and
quaternions as 4-arrays of rational strings.  All emitters sort keys, so a
fixed (input, seed, version) triple produces byte-identical output.
"""

import json

from .errors import SchemaError
from .ffields import ExtensionField, PrimeField
from .galois import GaloisPair
from .linalg import Mat
from .quaternions import QuaternionAlgebra
from .quiver import Arrow, Quiver, Representation
from .rings import QQ, QuadraticField

VERSION = "0.1.0"


def ring_to_json(ring):
    return ring.descriptor()


def ring_from_json(data):
    if not isinstance(data, dict) or "type" not in data:
        raise SchemaError(f"ring descriptor must be an object with 'type': {data!r}")
    kind = data["type"]
    try:
        if kind == "rational":
            return QQ
        if kind == "prime":
            return PrimeField(int(data["p"]))
        if kind == "ext":
            modulus = data.get("modulus")
            return ExtensionField(int(data["p"]), int(data["n"]), modulus)
        if kind == "quad":
            return QuadraticField(int(data["m"]))
        if kind == "quaternion":
            return QuaternionAlgebra(QQ.from_json(data["a"]), QQ.from_json(data["b"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad ring descriptor {data!r}: {exc}") from exc
    raise SchemaError(f"unknown ring type {kind!r}")


def pair_to_json(pair):
    return pair.descriptor()


def pair_from_json(data):
    if not isinstance(data, dict) or "type" not in data:
        raise SchemaError(f"pair descriptor must be an object with 'type': {data!r}")
    kind = data["type"]
    try:
        if kind == "finite":
            return GaloisPair.finite(int(data["p"]), int(data["n"]), data.get("modulus"))
        if kind == "quadratic":
            return GaloisPair.quadratic(int(data["m"]))
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError(f"bad pair descriptor {data!r}: {exc}") from exc
    raise SchemaError(f"unknown pair type {kind!r}")


def quiver_to_json(quiver):
    return {
        "vertices": list(quiver.vertices),
        "arrows": [{"id": a.name, "from": a.src, "to": a.dst} for a in quiver.arrows],
    }


def quiver_from_json(data):
    try:
        vertices = tuple(str(v) for v in data["vertices"])
        arrows = tuple(
            Arrow(str(a["id"]), str(a["from"]), str(a["to"])) for a in data["arrows"]
        )
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad quiver data: {exc}") from exc
    return Quiver(vertices, arrows)


def mat_to_json(m):
    return [[m.ring.to_json(x) for x in row] for row in m.rows]


def mat_from_json(ring, data, shape):
    if not isinstance(data, list):
        raise SchemaError("matrix must be a list of rows")
    rows = []
    for row in data:
        if not isinstance(row, list):
            raise SchemaError("matrix row must be a list")
        rows.append(tuple(ring.from_json(x) for x in row))
    if len(rows) != shape[0] or any(len(r) != shape[1] for r in rows):
        raise SchemaError(f"matrix has wrong shape; expected {shape}")
    return Mat(ring, rows, shape)


def rep_to_json(rep):
    return {
        "quiver": quiver_to_json(rep.quiver),
        "ring": ring_to_json(rep.ring),
        "dims": dict(rep.dims),
        "matrices": {name: mat_to_json(m) for name, m in rep.mats.items()},
    }


def rep_from_json(data):
    try:
        quiver = quiver_from_json(data["quiver"])
        ring = ring_from_json(data["ring"])
        dims = {str(v): int(d) for v, d in data["dims"].items()}
        matrices = data["matrices"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad representation data: {exc}") from exc
    mats = {}
    for a in quiver.arrows:
        if a.name not in matrices:
            raise SchemaError(f"missing matrix for arrow {a.name}")
        mats[a.name] = mat_from_json(ring, matrices[a.name], (dims[a.dst], dims[a.src]))
    return Representation(quiver, ring, dims, mats)


def hom_to_json(h):
    return {v: mat_to_json(m) for v, m in h.items()}


def datum_to_json(datum):
    return {
        "rep": rep_to_json(datum.rep),
        "u": hom_to_json(datum.u),
        "lambda": datum.pair.base.to_json(datum.lam),
        "pair": pair_to_json(datum.pair),
    }


def datum_from_json(data):
    from .descent import DescentDatum

    try:
        rep = rep_from_json(data["rep"])
        pair = pair_from_json(data["pair"])
        lam = pair.base.from_json(data["lambda"])
        u_data = data["u"]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"bad descent datum: {exc}") from exc
    u = {}
    for v in rep.quiver.vertices:
        if v not in u_data:
            raise SchemaError(f"missing modifying matrix at vertex {v}")
        d = rep.dims[v]
        u[v] = mat_from_json(pair.ext, u_data[v], (d, d))
    return DescentDatum(rep, u, lam, pair)


def twisted_to_json(twisted):
    return {
        "rep": rep_to_json(twisted.rep),
        "u": hom_to_json(twisted.u),
        "lambda": twisted.pair.base.to_json(twisted.lam),
        "pair": pair_to_json(twisted.pair),
        "index": twisted.index,
    }


def twisted_from_json(data):
    from .morita import TwistedRep

    datum = datum_from_json(data)
    try:
        index = int(data["index"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad twisted representation: {exc}") from exc
    return TwistedRep(datum.pair, datum.rep, datum.u, datum.lam, index)


def witness_to_json(witness):
    return {
        "dims": dict(witness.dims),
        "bases": {v: mat_to_json(b) for v, b in witness.bases.items()},
    }


def verdict_to_json(verdict):
    out = {"kind": verdict.kind}
    if verdict.witness is not None:
        out["witness"] = witness_to_json(verdict.witness)
    if verdict.detail:
        out["detail"] = {
            k: (str(v) if not isinstance(v, (int, str, list, bool)) else v)
            for k, v in verdict.detail.items()
        }
    return out


def hn_to_json(hn):
    return {
        "steps": [witness_to_json(w) for w in hn.steps],
        "slopes": [str(s) for s in hn.slopes],
    }


def dumps(payload, config=None):
    """Canonical JSON emitter; embeds config, seed, and version."""
    body = dict(payload)
    body["version"] = VERSION
    if config is not None:
        body["config"] = config.to_dict()
        body["seed"] = config.seed
    return json.dumps(body, sort_keys=True, indent=2)


def load_theta(data, quiver):
    if not isinstance(data, dict):
        raise SchemaError("theta must be an object mapping vertices to integers")
    theta = {}
    for v in quiver.vertices:
        if v not in data:
            raise SchemaError(f"theta missing vertex {v}")
        theta[v] = int(data[v])
    return theta
