"""Command-line interface.

Subcommands: stability | hn | typemap | descend | divform | twisted-validate
| census.  Exit codes: 0 success (including mathematically negative
answers), 2 parse errors, 3 budget errors, 4 inconclusive randomized
searches, 5 internal invariant violations.  Reports embed the config and
seed; JSON output is byte-stable for a fixed (input, seed, version).
"""

import argparse
import json
import os
import sys

from .brauer import brauer_class
from .census import census_polynomiality, verify_descent_census
from .config import JobConfig
from .descent import hilbert90_descend, solve_modifying_u
from .errors import (
    EXIT_BUDGET,
    EXIT_INCONCLUSIVE,
    EXIT_INVARIANT,
    EXIT_OK,
    EXIT_PARSE,
    BudgetExceededError,
    InconclusiveError,
    InvariantError,
    SchemaError,
)
from .galois import GaloisPair
from .morita import (
    division_form,
    drep_is_geom_stable,
    twisted_to_drep,
    validate_twisted,
)
from .quaternions import QuaternionAlgebra
from .serialize import (
    datum_from_json,
    dumps,
    hn_to_json,
    hom_to_json,
    load_theta,
    pair_from_json,
    quiver_from_json,
    rep_from_json,
    rep_to_json,
    twisted_from_json,
    verdict_to_json,
)
from .stability import (
    end_dim,
    geom_stability_certificate,
    hn_filtration,
    stability_verdict,
)

CONFIG_ENV = "QUIVERMODULI_CONFIG"


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _parse_json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"bad {what}: {exc.msg}") from exc


def _load_config(args):
    data = {}
    path = os.environ.get(CONFIG_ENV)
    if path:
        data.update(_read_json(path))
    cfg = JobConfig.from_dict(data)
    if getattr(args, "seed", None) is not None:
        cfg = cfg.with_seed(args.seed)
    if getattr(args, "primes", None):
        cfg = JobConfig.from_dict({**cfg.to_dict(), "primes": args.primes})
    if getattr(args, "format", None):
        cfg = JobConfig.from_dict({**cfg.to_dict(), "output_format": args.format})
    return cfg


def _emit(payload, config):
    if config.output_format == "json":
        print(dumps(payload, config))
    else:
        for key, value in payload.items():
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True)
            print(f"{key:24} {value}")


def cmd_stability(args, config, want_hn=False):
    rep = rep_from_json(_read_json(args.rep))
    theta = load_theta(_parse_json_arg(args.theta, "theta"), rep.quiver)
    payload = {"input": args.rep, "theta": theta}
    if isinstance(rep.ring, QuaternionAlgebra):
        # quaternionic representations are judged through their splitting
        a = rep.ring.a
        try:
            pair = GaloisPair.quadratic(int(a)) if a.denominator == 1 else None
        except ValueError:
            pair = None
        if pair is None:
            raise SchemaError(
                "quaternion stability needs a squarefree integer i^2 constant "
                f"to split over; got {a}"
            )
        verdict = drep_is_geom_stable(rep, pair, theta, config)
        payload["verdict"] = verdict_to_json(verdict)
        payload["geometrically_stable"] = verdict.is_stable
        _emit(payload, config)
        return EXIT_OK
    if rep.ring.is_finite:
        verdict = stability_verdict(rep, theta, config)
        payload["verdict"] = verdict_to_json(verdict)
        payload["end_dim"] = end_dim(rep)
        payload["geometrically_stable"] = bool(
            verdict.is_stable and payload["end_dim"] == 1
        )
    else:
        verdict = geom_stability_certificate(rep, theta, config)
        payload["verdict"] = verdict_to_json(verdict)
        payload["geometrically_stable"] = verdict.is_stable
    if want_hn or getattr(args, "hn", False):
        if not rep.ring.is_finite:
            raise SchemaError("HN filtrations are computed over finite fields")
        payload["hn"] = hn_to_json(hn_filtration(rep, theta, config))
    _emit(payload, config)
    return EXIT_OK


def cmd_typemap(args, config):
    rep = rep_from_json(_read_json(args.rep))
    pair = pair_from_json(_parse_json_arg(args.pair, "pair"))
    theta = load_theta(_parse_json_arg(args.theta, "theta"), rep.quiver)
    payload = {"input": args.rep}
    datum = solve_modifying_u(rep, pair, theta, config)
    if datum is None:
        payload["status"] = "orbit not Galois-fixed"
        _emit(payload, config)
        return EXIT_OK
    payload["status"] = "Galois-fixed"
    payload["u"] = hom_to_json(datum.u)
    payload["lambda"] = pair.base.to_json(datum.lam)
    cls = brauer_class(datum.lam, pair)
    payload["brauer_class"] = cls.describe()
    payload["index"] = 1 if cls.is_trivial else cls.index
    if args.descend:
        if cls.is_trivial:
            form, _ = hilbert90_descend(datum, config)
            out = {"form": rep_to_json(form), "kind": "base-field"}
        else:
            drep, prov = division_form(datum, config)
            out = {"form": rep_to_json(drep), "kind": "division-algebra"}
        with open(args.descend, "w") as fh:
            fh.write(dumps(out, config))
        payload["form_written"] = args.descend
    _emit(payload, config)
    return EXIT_OK


def cmd_descend(args, config):
    datum = datum_from_json(_read_json(args.datum))
    datum.check()
    form, _ = hilbert90_descend(datum, config)
    payload = {"form": rep_to_json(form)}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(payload, config))
        _emit({"form_written": args.out}, config)
    else:
        _emit(payload, config)
    return EXIT_OK


def cmd_divform(args, config):
    datum = datum_from_json(_read_json(args.datum))
    datum.check()
    drep, prov = division_form(datum, config)
    payload = {"form": rep_to_json(drep), "lambda": str(prov["lambda"])}
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(dumps(payload, config))
        _emit({"form_written": args.out}, config)
    else:
        _emit(payload, config)
    return EXIT_OK


def cmd_twisted_validate(args, config):
    twisted = twisted_from_json(_read_json(args.twisted))
    ok, problems = validate_twisted(twisted)
    payload = {"valid": ok, "problems": problems}
    if ok and args.to_drep:
        drep = twisted_to_drep(twisted, config)
        payload["drep"] = rep_to_json(drep)
    _emit(payload, config)
    return EXIT_OK


def cmd_census(args, config):
    quiver = quiver_from_json(_read_json(args.quiver))
    dims = {
        str(v): int(d)
        for v, d in _parse_json_arg(args.dims, "dims").items()
    }
    theta = load_theta(_parse_json_arg(args.theta, "theta"), quiver)
    q_list = [int(q) for q in args.q.split(",")]
    fit = census_polynomiality(quiver, dims, theta, q_list, config)
    payload = {"census": fit.as_dict()}
    if args.verify_descent:
        reports = []
        for q in q_list:
            report = verify_descent_census(quiver, dims, theta, q, args.verify_descent, config)
            reports.append(
                {
                    "q": q,
                    "fixed_orbits": report.fixed_orbit_count,
                    "base_count": report.base_count,
                    "ok": report.ok,
                }
            )
        payload["descent"] = reports
    _emit(payload, config)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quivermoduli",
        description="Exact stability, descent, and Brauer types of quiver representations",
    )
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--format", choices=("json", "table"), default=None)
    parser.add_argument(
        "--primes", type=lambda s: tuple(int(p) for p in s.split(",")), default=None
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stability", help="stability verdict for a representation file")
    p.add_argument("rep")
    p.add_argument("--theta", required=True)
    p.add_argument("--hn", action="store_true")

    p = sub.add_parser("hn", help="Harder-Narasimhan filtration")
    p.add_argument("rep")
    p.add_argument("--theta", required=True)

    p = sub.add_parser("typemap", help="Galois-fixedness, modifying element, Brauer class")
    p.add_argument("rep")
    p.add_argument("--pair", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--descend", metavar="OUT", default=None)

    p = sub.add_parser("descend", help="base-field form of a trivial-class datum")
    p.add_argument("datum")
    p.add_argument("--out", default=None)

    p = sub.add_parser("divform", help="division-algebra form of a nontrivial-class datum")
    p.add_argument("datum")
    p.add_argument("--out", default=None)

    p = sub.add_parser("twisted-validate", help="check twisted-representation invariants")
    p.add_argument("twisted")
    p.add_argument("--to-drep", action="store_true")

    p = sub.add_parser("census", help="count geometrically stable orbits over finite fields")
    p.add_argument("--quiver", required=True)
    p.add_argument("--dims", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--verify-descent", type=int, default=None)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _load_config(args)
    handlers = {
        "stability": cmd_stability,
        "hn": lambda a, c: cmd_stability(a, c, want_hn=True),
        "typemap": cmd_typemap,
        "descend": cmd_descend,
        "divform": cmd_divform,
        "twisted-validate": cmd_twisted_validate,
        "census": cmd_census,
    }
    try:
        return handlers[args.command](args, config)
    except SchemaError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InconclusiveError as exc:
        print(f"inconclusive: {exc} (seed {exc.seed})", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except InvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
