"""``noeth`` command line.

Exit codes: 0 success, 1 bad input or failed validation, 2 a verified
property failed, 3 the requested quantity is undefined (no reverse orbit,
non-surjective map, non-Borel set).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import cofinite as cf
from . import generate, io, verify
from .dinh import best_reverse_orbit, tau_minus_n, tau_profile
from .dynamics import (
    ReverseOrbitSpec,
    ergodic_measures,
    forward_orbit,
    induce_on_completion,
    pushforward,
    forward_limit_measure,
    reverse_limit_measure,
)
from .errors import NoethError, NotBorelError, NotSurjectiveError, UndefinedResult
from .functions import eta_transport, is_usc
from .measures import format_measure, integrate, jordan_decompose
from .rational import fmt
from .topology import complete_space, is_zariski, to_dot

EXIT_OK, EXIT_INPUT, EXIT_PROPERTY, EXIT_UNDEFINED = 0, 1, 2, 3


class _Undefined(Exception):
    pass


def _fmt_set(space, s) -> str:
    return "{" + ",".join(space.sort_points(s)) + "}"


def _parse_set(space, text: str) -> frozenset:
    items = [t.strip() for t in text.split(",") if t.strip()]
    return space.check_subset(items)


def _emit(out: str):
    sys.stdout.write(out if out.endswith("\n") else out + "\n")


def _write_or_print(text: str, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


# -- space --------------------------------------------------------------------

def cmd_space(args):
    space = io.load_space(args.file)
    if args.action == "check":
        _emit(f"valid; zariski: {str(is_zariski(space)).lower()}")
    elif args.action == "components":
        target = space.whole if args.set is None else _parse_set(space, args.set)
        if not space.is_closed(target):
            raise NoethError(f"{_fmt_set(space, target)} is not closed")
        comps = space.components(target)
        if not comps:
            _emit("0 components")
        else:
            word = "component" if len(comps) == 1 else "components"
            _emit(f"{len(comps)} {word}: " + "; ".join(_fmt_set(space, e.members) for e in comps))
            if args.generic:
                for e in comps:
                    _emit(f"  {e.id}: generic {' '.join(e.generic_points)}")
    elif args.action == "complete":
        c = complete_space(space)
        _write_or_print(io.dumps(io.completion_to_json(c)), args.output)
    elif args.action == "export-dot":
        _write_or_print(to_dot(space), args.output)
    return EXIT_OK


# -- dyn ----------------------------------------------------------------------

def _maybe_complete(f, args, point=None):
    """Route through the completion when ``--complete`` is set."""
    if not getattr(args, "complete", False):
        return f, point
    c = complete_space(f.space)
    fh = induce_on_completion(f, c)
    if point is not None:
        point = c.point_embedding[f.space.point_closure(point)]
    return fh, point


def _limit_lines(rep, space) -> list:
    lines = [
        f"predicted: {format_measure(rep.predicted)}",
        f"limit set: {_fmt_set(space, rep.limit_set)}",
        f"generic points: {' '.join(rep.cycle_points)}",
    ]
    if rep.n is not None:
        lines += [
            f"n: {rep.n}",
            f"empirical: {format_measure(rep.empirical)}",
            f"distance: {fmt(rep.distance)}",
            f"bound: {fmt(rep.bound)}",
        ]
    return lines


def _limit_struct(rep, space) -> dict:
    out = {
        "predicted": io.measure_to_json(rep.predicted)["coefficients"],
        "limit_set": space.sort_points(rep.limit_set),
        "generic_points": list(rep.cycle_points),
    }
    if rep.n is not None:
        out.update(n=rep.n, empirical=io.measure_to_json(rep.empirical)["coefficients"],
                   distance=fmt(rep.distance), bound=fmt(rep.bound))
    return out


def cmd_dyn(args):
    f = io.load_map(args.map)
    if args.action == "orbit":
        g, x = _maybe_complete(f, args, _need_point(args, f.space))
        o = forward_orbit(g, x)
        _emit(f"preperiod: {o.preperiod}\ncycle: {' '.join(o.cycle)}")
    elif args.action == "limit":
        g, x = _maybe_complete(f, args, _need_point(args, f.space))
        rep = forward_limit_measure(g, x, args.empirical)
        _report(args, _limit_lines(rep, g.space), _limit_struct(rep, g.space))
    elif args.action == "reverse-limit":
        if args.orbit is None:
            raise NoethError("--orbit is required")
        if not f.is_surjective:
            raise NotSurjectiveError("map not surjective")
        ro = io.load_reverse_orbit(args.orbit)
        g, _ = _maybe_complete(f, args)
        if g is not f:
            c = complete_space(f.space)
            emb = lambda p: c.point_embedding[f.space.point_closure(p)]  # noqa: E731
            ro = ReverseOrbitSpec(emb(ro.start), tuple(map(emb, ro.prefix)), tuple(map(emb, ro.cycle)))
        rep = reverse_limit_measure(g, ro, args.empirical)
        _report(args, _limit_lines(rep, g.space), _limit_struct(rep, g.space))
    elif args.action == "ergodic":
        g, _ = _maybe_complete(f, args)
        ms = ergodic_measures(g)
        word = "measure" if len(ms) == 1 else "measures"
        lines = [f"{len(ms)} ergodic {word}:"] + [f"  {format_measure(m)}" for m in ms]
        _report(args, lines, [io.measure_to_json(m)["coefficients"] for m in ms])
    return EXIT_OK


def _need_point(args, space):
    if args.point is None:
        raise NoethError("--point is required")
    space.index(args.point)
    return args.point


def _report(args, lines, struct):
    if getattr(args, "format", "text") == "structured":
        _emit(json.dumps(struct, indent=2))
    else:
        _emit("\n".join(lines))


# -- dinh ---------------------------------------------------------------------

def _opt(q):
    return "none" if q is None else fmt(q)


def cmd_dinh(args):
    f = io.load_map(args.map)
    tau = io.load_function(args.function, f.space)
    if args.complete:
        c = complete_space(f.space)
        f = induce_on_completion(f, c)
        tau = eta_transport(tau, c).as_real()
    if not is_usc(f.space, tau):
        raise NoethError("observable is not upper semicontinuous")
    prof = tau_profile(f, tau)
    points = [args.point] if args.point else list(f.space.points)
    for p in points:
        f.space.index(p)
    if args.action == "orbit":
        if not args.point:
            raise NoethError("--point is required")
        try:
            ro = best_reverse_orbit(f, tau, args.point)
        except UndefinedResult as err:
            raise _Undefined(str(err)) from None
        _report(args, [f"prefix: {' '.join(ro.prefix)}", f"cycle: {' '.join(ro.cycle)}",
                       f"tau_minus: {fmt(prof.minus[args.point])}"], io.reverse_orbit_to_json(ro))
        return EXIT_OK
    horizon = tau_minus_n(f, tau, args.horizon) if args.horizon else None
    header = ["point", "tau_plus", "tau_minus", "witness"] + ([f"tau_-{args.horizon}/n"] if horizon else [])
    rows, struct = [header], []
    for p in points:
        w = prof.witness[p]
        row = [p, fmt(prof.plus[p]), _opt(prof.minus[p]), " ".join(w) if w else "none"]
        item = {"point": p, "tau_plus": row[1], "tau_minus": row[2], "witness": list(w) if w else None}
        if horizon is not None:
            h = horizon[p]
            row.append("none" if h is None else fmt(h / args.horizon))
            item["tau_minus_n_over_n"] = row[-1]
        rows.append(row)
        struct.append(item)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    _report(args, lines, struct)
    if args.point and prof.minus[args.point] is None:
        return EXIT_UNDEFINED
    return EXIT_OK


# -- measure ------------------------------------------------------------------

def _measure_out(args, mu):
    if args.format == "structured":
        _emit(io.dumps(io.measure_to_json(mu)).rstrip())
    else:
        _emit(format_measure(mu))


def cmd_measure(args):
    if args.action == "push":
        if not args.map:
            raise NoethError("--map is required")
        f = io.load_map(args.map)
        _measure_out(args, pushforward(f, io.load_measure(args.measure, f.space)))
        return EXIT_OK
    if not args.space:
        raise NoethError("--space is required")
    space = io.load_space(args.space)
    mu = io.load_measure(args.measure, space)
    if args.action == "integrate":
        if not args.function:
            raise NoethError("--function is required")
        _emit(fmt(integrate(mu, io.load_function(args.function, space))))
    elif args.action == "jordan":
        plus, minus = jordan_decompose(mu)
        if args.format == "structured":
            _emit(json.dumps({"plus": io.measure_to_json(plus)["coefficients"],
                              "minus": io.measure_to_json(minus)["coefficients"]}, indent=2))
        else:
            _emit(f"plus: {format_measure(plus)}\nminus: {format_measure(minus)}")
    return EXIT_OK


# -- cofinite -----------------------------------------------------------------

def _json_arg(text: str):
    """Inline JSON, a file holding JSON, or a bare word taken as a JSON string."""
    if os.path.exists(text):
        return io.load_json(text)
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def cmd_cofinite(args):
    if args.action == "info":
        sp = cf.CofiniteSpace.from_descriptor(_json_arg(args.space))
        _emit(f"sigma-irreducible closed sets: {cf.sigma_irreducible_closeds(sp).describe()}\n"
              f"complete: {str(cf.is_complete(sp)).lower()}")
    elif args.action == "delta":
        sp = cf.CofiniteSpace("uncountable")
        for text in args.sets:
            a = cf.SymbolicSet.from_descriptor(_json_arg(text))
            try:
                _emit(f"{_set_label(a)}: {cf.delta_Y(sp, a)}")
            except NotBorelError as err:
                raise _Undefined(f"{_set_label(a)}: {err}") from None
    elif args.action == "gap":
        r = cf.lambda_gap_witness(cf.CofiniteSpace("countable"), range(args.points))
        lines = [f"phi(chi_{{{x}}}) = {fmt(v)}" for x, v in r.singleton_values.items()]
        lines += [
            f"phi(1) = {fmt(r.phi_of_one)}",
            "candidate measure: " + (" + ".join(f"{fmt(v)}*delta[{x}]" for x, v in r.candidate.items()) or "0"),
            f"candidate integral of 1 = {fmt(r.candidate_of_one)}",
            f"mismatch: {str(r.mismatch).lower()}",
        ]
        _emit("\n".join(lines))
    elif args.action == "shift":
        r = cf.shift_dynamics_report(args.window)
        lines = [
            f"continuous: {str(r.continuous).lower()}",
            f"surjective: {str(r.surjective).lower()}",
            f"periodic points in [{r.window[0]}, {r.window[1]}]: {len(r.periodic_points)}",
            f"atoms: {r.base_atoms}",
            f"ergodic measures on the base: {len(r.base_ergodic)}",
            f"fixed points on the completion: {' '.join(map(str, r.completion_fixed_points)) or 'none'}",
            f"ergodic measures on the completion: {len(r.completion_ergodic)}",
        ]
        lines += [f"  1/1*delta[{next(iter(m))}]" for m in r.completion_ergodic]
        _emit("\n".join(lines))
    return EXIT_OK


def _set_label(a) -> str:
    if a.kind in ("finite", "cofinite"):
        return f"{a.kind}({','.join(map(str, sorted(a.elements, key=str)))})"
    return a.kind


# -- verify and gen -----------------------------------------------------------

def _seed(args) -> int:
    env = os.environ.get("NOETH_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise NoethError(f"NOETH_SEED must be an integer, got {env!r}") from None
    return args.seed


def cmd_verify(args):
    only = [m for chunk in (args.only or []) for m in chunk.split(",") if m]
    cfg = verify.RunConfig(_seed(args), args.cases, args.max_points, args.empirical)
    rep = verify.run(cfg, only=only or None, mutant=args.mutant, witness_dir=args.witness_dir)
    if args.format == "structured":
        _emit(json.dumps(rep.structured(), indent=2))
    else:
        sys.stdout.write(rep.text(timing=args.timing))
    return EXIT_OK if rep.passed else EXIT_PROPERTY


def cmd_gen(args):
    rng = random.Random(_seed(args))
    if args.kind == "space":
        sp = generate.random_space(rng, args.points, args.density, args.non_t0)
        _write_or_print(io.dumps(io.space_to_json(sp)), args.output)
        return EXIT_OK
    if not args.space:
        raise NoethError("--space is required")
    space = io.load_space(args.space)
    if args.kind == "map":
        f = generate.random_automorphism(rng, space) if args.automorphism else generate.random_map(rng, space)
        base = Path(args.output).parent if args.output else Path(".")
        rel = os.path.relpath(os.path.abspath(args.space), os.path.abspath(base))
        _write_or_print(io.dumps(io.map_to_json(f, rel)), args.output)
    elif args.kind == "measure":
        tv = Fraction(args.tv_bound) if args.tv_bound is not None else None
        mu = generate.random_measure(rng, space, tv, positive=args.positive)
        _write_or_print(io.dumps(io.measure_to_json(mu)), args.output)
    elif args.kind == "function":
        make = generate.random_usc_function if args.usc else generate.random_sc_function
        _write_or_print(io.dumps(io.function_to_json(make(rng, space))), args.output)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="noeth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    fmt_opt = dict(choices=["text", "structured"], default="text")

    s = sub.add_parser("space", help="inspect finite spaces")
    s.add_argument("action", choices=["check", "components", "complete", "export-dot"])
    s.add_argument("file")
    s.add_argument("--set", help="comma-separated closed set (default: whole space)")
    s.add_argument("--generic", action="store_true", help="also list generic points")
    s.add_argument("-o", "--output")
    s.set_defaults(run=cmd_space)

    d = sub.add_parser("dyn", help="orbits, limit measures, ergodic measures")
    d.add_argument("action", choices=["orbit", "limit", "reverse-limit", "ergodic"])
    d.add_argument("map")
    d.add_argument("--point")
    d.add_argument("--orbit", help="reverse-orbit file")
    d.add_argument("--empirical", type=_positive, metavar="N")
    d.add_argument("--complete", action="store_true", help="work on the completion")
    d.add_argument("--format", **fmt_opt)
    d.set_defaults(run=cmd_dyn)

    t = sub.add_parser("dinh", help="forward and backward time averages")
    t.add_argument("action", choices=["tau", "orbit"])
    t.add_argument("--map", required=True)
    t.add_argument("--function", required=True)
    t.add_argument("--point")
    t.add_argument("--horizon", type=_positive, metavar="N")
    t.add_argument("--complete", action="store_true")
    t.add_argument("--format", **fmt_opt)
    t.set_defaults(run=cmd_dinh)

    m = sub.add_parser("measure", help="pushforward, integration, Jordan split")
    m.add_argument("action", choices=["push", "integrate", "jordan"])
    m.add_argument("--measure", required=True)
    m.add_argument("--map")
    m.add_argument("--space")
    m.add_argument("--function")
    m.add_argument("--format", **fmt_opt)
    m.set_defaults(run=cmd_measure)

    c = sub.add_parser("cofinite", help="symbolic cofinite-topology examples")
    csub = c.add_subparsers(dest="action", required=True)
    ci = csub.add_parser("info")
    ci.add_argument("space", help='"countable", "uncountable", "integers" or {"finite": n}')
    cd = csub.add_parser("delta", help="delta_Y on the uncountable cofinite space")
    cd.add_argument("sets", nargs="+", help='{"finite": [...]}, {"cofinite": [...]} or {"class": ...}')
    cg = csub.add_parser("gap", help="functional on the countable cofinite space with no measure")
    cg.add_argument("--points", type=_positive, default=5)
    cs = csub.add_parser("shift", help="translation on the integers")
    cs.add_argument("--window", type=_positive, default=50)
    c.set_defaults(run=cmd_cofinite)

    v = sub.add_parser("verify", help="run the property batteries")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=_positive, default=100)
    v.add_argument("--max-points", type=_positive, default=8)
    v.add_argument("--empirical", type=_positive, default=10_000)
    v.add_argument("--only", action="append", help="module name(s), comma-separated or repeated")
    v.add_argument("--mutant", choices=sorted(verify.MUTANTS))
    v.add_argument("--witness-dir", default="noeth-witnesses")
    v.add_argument("--timing", action="store_true")
    v.add_argument("--format", **fmt_opt)
    v.set_defaults(run=cmd_verify)

    g = sub.add_parser("gen", help="seeded random instances")
    g.add_argument("kind", choices=["space", "map", "measure", "function"])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--points", type=_positive, default=6)
    g.add_argument("--density", type=float)
    g.add_argument("--non-t0", type=float, default=0.0)
    g.add_argument("--space")
    g.add_argument("--automorphism", action="store_true")
    g.add_argument("--tv-bound")
    g.add_argument("--positive", action="store_true")
    g.add_argument("--usc", action="store_true")
    g.add_argument("-o", "--output")
    g.set_defaults(run=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (NotSurjectiveError, _Undefined, UndefinedResult) as err:
        print(f"noeth: {err}", file=sys.stderr)
        return EXIT_UNDEFINED
    except (NoethError, ValueError, KeyError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else err
        print(f"noeth: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
