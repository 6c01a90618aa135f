"""Command-line front end.

Subcommands: count, bounds, fourier, vc, witness, bench, gen.  Reports are
JSON-lines on stdout (CSV available where tables make sense); diagnostics go
to stderr.  Exit codes: 0 success, 1 mathematical failure (a violated
asserted bound, a float count too far from an integer, a cross-method value
disagreement), 2 usage error.  Every report echoes the run configuration
and the PRNG algorithm identifier so streams are reproducible bit-for-bit
apart from elapsed_ms fields.
"""

import argparse
import json
import statistics
import sys
import time

from . import bounds as bounds_mod
from . import counting, fourier, vc
from .errors import (
    FFPlaneError,
    PointSetFormatError,
    ToleranceExceeded,
)
from .field import PrimeFieldCtx, is_prime
from .geometry import (
    PointSet,
    circle,
    full_plane,
    gen_example_line_ap,
    gen_random_set,
    load_point_set,
    point_set_to_json_obj,
    point_set_to_text,
    save_point_set,
)
from .rng import ALGORITHM as PRNG_ALGORITHM


class UsageError(Exception):
    pass


def _emit(obj, config):
    payload = dict(obj)
    payload["config"] = config
    payload["prng"] = PRNG_ALGORITHM
    print(json.dumps(payload, sort_keys=True))


def _config_echo(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _make_ctx(q: int) -> PrimeFieldCtx:
    if not is_prime(q) or q < 3:
        raise UsageError(f"--q must be an odd prime >= 3, got {q}")
    return PrimeFieldCtx(q)


def _parse_one_set(ctx, token: str, default_seed: int, slot: int) -> PointSet:
    token = token.strip()
    if token == "full":
        return full_plane(ctx)
    if token.startswith("random:"):
        parts = token.split(":")
        if len(parts) not in (2, 3):
            raise UsageError(f"bad set spec {token!r}; use random:DENSITY[:SEED]")
        try:
            density = float(parts[1])
            seed = int(parts[2]) if len(parts) == 3 else default_seed + slot
        except ValueError as exc:
            raise UsageError(f"bad set spec {token!r}: {exc}") from exc
        if not 0.0 <= density <= 1.0:
            raise UsageError("density must lie in [0, 1]")
        return gen_random_set(ctx, density, seed)
    if token.startswith("line-ap:"):
        parts = token.split(":")
        if len(parts) != 4:
            raise UsageError(f"bad set spec {token!r}; use line-ap:START:STEP:LEN")
        try:
            start, step, length = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError as exc:
            raise UsageError(f"bad set spec {token!r}: {exc}") from exc
        if length < 0:
            raise UsageError("line-ap length must be nonnegative")
        xs = [(start + i * step) % ctx.q for i in range(length)]
        try:
            return gen_example_line_ap(ctx, xs)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if token.startswith("file:"):
        path = token[len("file:"):]
        try:
            ps = load_point_set(path)
        except (OSError, PointSetFormatError) as exc:
            raise UsageError(f"cannot load {path!r}: {exc}") from exc
        if ps.q != ctx.q:
            raise UsageError(f"set file {path!r} has q={ps.q}, expected {ctx.q}")
        return ps
    raise UsageError(
        f"bad set spec {token!r}; expected full, random:..., line-ap:..., or file:...")


def _parse_sets(ctx, spec: str, nslots: int, default_seed: int) -> list:
    tokens = [tok for tok in spec.split(",") if tok.strip()]
    if len(tokens) == 1:
        tokens = tokens * nslots
    if len(tokens) != nslots:
        raise UsageError(f"expected {nslots} set slots, got {len(tokens)}")
    return [_parse_one_set(ctx, tok, default_seed, slot)
            for slot, tok in enumerate(tokens)]


# -- count ----------------------------------------------------------------------

QUANTITIES = ("n_t", "par_t", "par", "rhom_t", "degenerate")


def _cmd_count(args) -> int:
    ctx = _make_ctx(args.q)
    quantity = args.quantity
    nslots = 2 if quantity == "n_t" else 4
    sets = _parse_sets(ctx, args.set, nslots, args.seed)
    t = args.t
    if quantity != "par":
        if t is None:
            raise UsageError(f"--t is required for quantity {quantity}")
        t %= ctx.q
        if quantity in ("rhom_t", "degenerate") and t == 0:
            raise UsageError(f"quantity {quantity} requires t != 0")
    method = args.method
    if quantity == "par_t" and method == "fourier" and ctx.q > counting.FOURIER_Q_CAP:
        raise UsageError(f"fourier method is capped at q <= {counting.FOURIER_Q_CAP}")
    if method == "fourier" and quantity != "par_t":
        raise UsageError("fourier method applies to par_t only")

    start = time.perf_counter()
    if quantity == "n_t":
        result = counting.count_unit_distances(ctx, *sets, t, method=method)
    elif quantity == "par_t":
        result = counting.count_par_t(ctx, *sets, t, method=method)
    elif quantity == "par":
        result = counting.count_par_all(ctx, *sets, method=method)
    elif quantity == "rhom_t":
        result = counting.count_rhom_t(ctx, *sets, t, method=method,
                                       exclude_degenerate=args.exclude_degenerate)
    else:
        result = counting.count_degenerate_rhom(ctx, *sets, t)
    elapsed_ms = (time.perf_counter() - start) * 1000.0

    obj = result.to_json_obj(quantity)
    obj["elapsed_ms"] = round(elapsed_ms, 3)
    config = _config_echo(args)
    if args.format == "human":
        print(f"{quantity} q={ctx.q} t={result.t} value={result.value} "
              f"method={result.method} elapsed_ms={elapsed_ms:.3f}")
    else:
        _emit(obj, config)
    return 0


# -- bounds ---------------------------------------------------------------------

ASSERTED_CHECKS = {"unit-distance", "par-vs-mean", "par-pairs",
                   "rhom-vs-par", "circle-decay"}


def _cmd_bounds(args) -> int:
    ctx = _make_ctx(args.q)
    if args.density == "auto":
        density = None
    else:
        try:
            density = float(args.density)
        except ValueError as exc:
            raise UsageError(f"bad density {args.density!r}") from exc
        if not 0.0 <= density <= 1.0:
            raise UsageError("density must lie in [0, 1] (or 'auto')")
    checks = list(bounds_mod.CHECK_NAMES) if args.check == "all" else [args.check]
    for c in checks:
        if c not in bounds_mod.CHECK_NAMES:
            raise UsageError(
                f"unknown check {c!r}; pick from {bounds_mod.CHECK_NAMES} or all")

    t = None
    if args.t is not None:
        t = args.t % ctx.q
        if t == 0:
            raise UsageError("--t must be nonzero")
    config = _config_echo(args)
    exit_code = 0
    rows = []
    for check in checks:
        reports = bounds_mod.sweep(ctx, check, args.trials, density,
                                   args.seed, all_t=args.all_t, t=t)
        violations = 0
        min_slack = None
        for rep in reports:
            obj = rep.to_json_obj()
            rows.append(obj)
            if args.format == "json":
                _emit(obj, config)
            if not rep.holds:
                violations += 1
                if check in ASSERTED_CHECKS:
                    exit_code = 1
            if min_slack is None or rep.slack < min_slack:
                min_slack = rep.slack
        summary = {
            "summary": True,
            "check": check,
            "instances": len(reports),
            "violations": violations,
            "min_slack": min_slack,
        }
        if args.format == "json":
            _emit(summary, config)
        elif args.format == "human":
            print(f"{check}: {len(reports)} instances, {violations} violations, "
                  f"min slack {min_slack}")
    if args.format == "csv":
        _print_csv(rows, ("name", "lhs", "rhs", "holds", "ratio", "slack"))
    return exit_code


def _print_csv(rows, columns):
    print(",".join(columns))
    for row in rows:
        print(",".join(str(row.get(col, "")) for col in columns))


# -- fourier ----------------------------------------------------------------------

def _cmd_fourier(args) -> int:
    ctx = _make_ctx(args.q)
    config = _config_echo(args)
    if args.decay:
        if args.circle is None:
            raise UsageError("--decay requires --circle J")
        rep = fourier.check_circle_decay(ctx, args.circle % ctx.q)
        _emit(rep.to_json_obj(), config)
        return 0 if rep.holds else 1
    if (args.circle is None) == (args.set is None):
        raise UsageError("provide exactly one of --set or --circle")
    if args.circle is not None:
        ps = circle(ctx, args.circle % ctx.q)
    else:
        ps = _parse_one_set(ctx, args.set, args.seed, 0)
    spec = fourier.transform(ctx, ps, method=args.method)
    coeffs = [
        [m1, m2,
         float(spec.coeffs[m1, m2].real),
         float(spec.coeffs[m1, m2].imag)]
        for m1 in range(ctx.q) for m2 in range(ctx.q)
    ]
    _emit({"q": ctx.q, "coeffs": coeffs}, config)
    return 0


# -- vc / witness ------------------------------------------------------------------

def _cmd_vc(args) -> int:
    ctx = _make_ctx(args.q)
    t = args.t % ctx.q
    if t == 0:
        raise UsageError("--t must be nonzero")
    E = _parse_one_set(ctx, args.set, args.seed, 0)
    config = _config_echo(args)
    sys_ = vc.build_system(ctx, E, t)
    dim = vc.vc_dimension(sys_, cap=args.cap)
    example = None
    if dim >= 0:
        found = vc.find_shattered(sys_, dim)
        if found is not None:
            example = [[p[0], p[1]] for p in found]
    _emit({"vc_dim": dim, "shattered_example": example, "size": len(E)}, config)
    return 0


def _cmd_witness(args) -> int:
    ctx = _make_ctx(args.q)
    t = args.t % ctx.q
    if t == 0:
        raise UsageError("--t must be nonzero")
    E = _parse_one_set(ctx, args.set, args.seed, 0)
    config = _config_echo(args)
    outcome = vc.find_witness(ctx, E, t, seed=args.seed)
    if isinstance(outcome, vc.FailureReason):
        _emit({"failure": {"step": outcome.step, "detail": outcome.detail}}, config)
        return 0
    ok, violations = vc.verify_witness(ctx, E, t, outcome)
    obj = {
        "witness": {label: list(p) for label, p in outcome.labeled_points().items()},
        "u": list(outcome.u),
        "t": outcome.t,
        "valid": ok,
        "violations": violations,
    }
    _emit(obj, config)
    return 0 if ok else 1


# -- bench -------------------------------------------------------------------------

def _cmd_bench(args) -> int:
    ctx = _make_ctx(args.q)
    t = args.t % ctx.q
    if t == 0:
        raise UsageError("--t must be nonzero")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in ("oracle", "fast", "fourier"):
            raise UsageError(f"unknown method {m!r}")
    if args.quantity == "rhom_t" and "fourier" in methods:
        raise UsageError("fourier method applies to par_t only")
    if "fourier" in methods and ctx.q > counting.FOURIER_Q_CAP:
        raise UsageError(f"fourier method is capped at q <= {counting.FOURIER_Q_CAP}")
    spec = args.set if args.set else f"random:{args.density}"
    sets = _parse_sets(ctx, spec, 4, args.seed)

    results = []
    for method in methods:
        times = []
        value = None
        for _ in range(args.runs):
            start = time.perf_counter()
            if args.quantity == "par_t":
                res = counting.count_par_t(ctx, *sets, t, method=method)
            else:
                res = counting.count_rhom_t(ctx, *sets, t, method=method)
            times.append((time.perf_counter() - start) * 1000.0)
            value = res.value
        results.append({
            "method": method,
            "value": value,
            "median_ms": round(statistics.median(times), 3),
            "times_ms": [round(x, 3) for x in times],
        })

    values = {r["method"]: r["value"] for r in results}
    if len(set(values.values())) > 1:
        print(f"method disagreement: {values}", file=sys.stderr)
        return 1

    config = _config_echo(args)
    obj = {
        "quantity": args.quantity,
        "q": ctx.q,
        "t": t,
        "set_sizes": [len(s) for s in sets],
        "runs": args.runs,
        "results": results,
    }
    if args.format == "csv":
        rows = [{"method": r["method"], "value": r["value"],
                 "median_ms": r["median_ms"]} for r in results]
        _print_csv(rows, ("method", "value", "median_ms"))
    elif args.format == "human":
        for r in results:
            print(f"{args.quantity} {r['method']}: value={r['value']} "
                  f"median={r['median_ms']} ms")
    else:
        _emit(obj, config)
    return 0


# -- gen ---------------------------------------------------------------------------

def _cmd_gen(args) -> int:
    ctx = _make_ctx(args.q)
    ps = _parse_one_set(ctx, args.set, args.seed, 0)
    if args.out:
        save_point_set(ps, args.out)
        print(f"wrote {len(ps)} points to {args.out}", file=sys.stderr)
    elif args.json:
        print(json.dumps(point_set_to_json_obj(ps), sort_keys=True))
    else:
        sys.stdout.write(point_set_to_text(ps))
    return 0


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffplane",
        description="Configuration counts, spectral checks, and VC audits "
                    "for point sets in the plane over a prime field.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--q", type=int, required=True, help="odd prime modulus")
        p.add_argument("--seed", type=int, default=0, help="64-bit PRNG seed")
        p.add_argument("--format", choices=("json", "csv", "human"),
                       default="json")

    p = sub.add_parser("count", help="run one exact counter")
    add_common(p)
    p.add_argument("--quantity", choices=QUANTITIES, required=True)
    p.add_argument("--t", type=int, default=None)
    p.add_argument("--set", required=True,
                   help="comma-separated slots: full | random:D[:SEED] | "
                        "line-ap:S:STEP:LEN | file:PATH (single token broadcasts)")
    p.add_argument("--method", choices=("oracle", "fast", "fourier"),
                   default="fast")
    p.add_argument("--exclude-degenerate", action="store_true")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("bounds", help="run a named inequality check or all")
    add_common(p)
    p.add_argument("--check", default="all",
                   help=f"one of {bounds_mod.CHECK_NAMES} or all")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--t", type=int, default=None,
                   help="pin the radius (default: drawn per trial)")
    p.add_argument("--density", default="0.5",
                   help="set density in [0,1], or 'auto' to draw per trial")
    p.add_argument("--all-t", action="store_true",
                   help="cover every nonzero radius (and every pair)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("fourier", help="dump a spectrum or a decay report")
    add_common(p)
    p.add_argument("--set", default=None)
    p.add_argument("--circle", type=int, default=None,
                   help="transform the circle of this radius")
    p.add_argument("--method", choices=("fast", "oracle"), default="fast")
    p.add_argument("--decay", action="store_true",
                   help="emit the decay report for --circle instead")
    p.set_defaults(func=_cmd_fourier)

    p = sub.add_parser("vc", help="exhaustive VC dimension of a set")
    add_common(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--cap", type=int, default=4)
    p.set_defaults(func=_cmd_vc)

    p = sub.add_parser("witness", help="construct and verify a shattering witness")
    add_common(p)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--set", required=True)
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("bench", help="time counter methods on one instance")
    add_common(p)
    p.add_argument("--quantity", choices=("par_t", "rhom_t"), default="par_t")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--methods", default="oracle,fast")
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--set", default=None)
    p.add_argument("--runs", type=int, default=5)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("gen", help="generate a point-set file")
    add_common(p)
    p.add_argument("--set", default="random:0.5")
    p.add_argument("--out", default=None, help="output path (.json or text)")
    p.add_argument("--json", action="store_true",
                   help="emit JSON to stdout instead of text")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ToleranceExceeded as exc:
        print(f"tolerance failure: {exc}", file=sys.stderr)
        return 1
    except FFPlaneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
