"""JSON file formats for spaces, functions, measures, maps and reverse orbits.

Rationals are written as ``"a/b"`` strings. Parse and validation errors are
raised as :class:`InputError` anchored to a line of the offending file.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from .dynamics import ContinuousMap, ReverseOrbitSpec, validate_map
from .errors import NoethError
from .functions import RealFunction
from .measures import Measure
from .rational import as_fraction, fmt
from .topology import Completion, FiniteSpace

__all__ = [
    "InputError",
    "load_json",
    "dumps",
    "space_to_json",
    "space_from_json",
    "load_space",
    "function_to_json",
    "function_from_json",
    "load_function",
    "measure_to_json",
    "measure_from_json",
    "load_measure",
    "map_to_json",
    "load_map",
    "reverse_orbit_to_json",
    "reverse_orbit_from_json",
    "load_reverse_orbit",
    "completion_to_json",
]


class InputError(NoethError, ValueError):
    def __init__(self, path, line, message):
        self.path, self.line = str(path), line
        super().__init__(f"{path}:{line}: {message}")


def dumps(obj) -> str:
    """Stable serialization: two-space indent, insertion order, trailing newline."""
    return json.dumps(obj, indent=2) + "\n"


def _line_of(text: str, token) -> int:
    """First line mentioning ``token`` as a JSON string (1 if not found)."""
    if token is None:
        return 1
    needle = json.dumps(str(token))
    for i, line in enumerate(text.splitlines(), 1):
        if needle in line:
            return i
    return 1


class _Source:
    def __init__(self, path):
        self.path = Path(path)
        try:
            self.text = self.path.read_text()
        except OSError as e:
            raise InputError(path, 0, f"cannot read file: {e.strerror}") from None
        try:
            self.data = json.loads(self.text)
        except json.JSONDecodeError as e:
            raise InputError(path, e.lineno, f"invalid JSON: {e.msg}") from None

    def fail(self, message, token=None):
        raise InputError(self.path, _line_of(self.text, token), message)

    def field(self, obj, name, kind):
        if not isinstance(obj, dict) or name not in obj:
            self.fail(f"missing field {name!r}")
        v = obj[name]
        if not isinstance(v, kind):
            self.fail(f"field {name!r} has the wrong type", name)
        return v

    def rational(self, value, key):
        try:
            return as_fraction(value)
        except (TypeError, ValueError):
            self.fail(f"value for {key!r} is not an exact rational (use \"a/b\")", key)


def load_json(path):
    return _Source(path).data


# -- spaces -------------------------------------------------------------------

def space_to_json(space: FiniteSpace) -> dict:
    pairs = [[y, x] for y, x in space.specialization_pairs() if y != x]
    return {"points": list(space.points), "specialization": pairs}


def _space_from_source(src: _Source, data) -> FiniteSpace:
    points = src.field(data, "points", list)
    pairs = data.get("specialization", [])
    if not isinstance(pairs, list):
        src.fail("field 'specialization' must be a list of [y, x] pairs", "specialization")
    for p in points:
        if not isinstance(p, str):
            src.fail(f"point ids must be strings, got {p!r}", "points")
    seen = set()
    for p in points:
        if p in seen:
            src.fail(f"duplicate point id {p!r}", p)
        seen.add(p)
    for pair in pairs:
        if not (isinstance(pair, list) and len(pair) == 2):
            src.fail(f"specialization entry {pair!r} is not a [y, x] pair", "specialization")
        for q in pair:
            if q not in seen:
                src.fail(f"unknown point {q!r} in specialization pair", q)
    return FiniteSpace(points, [tuple(p) for p in pairs])


def space_from_json(data) -> FiniteSpace:
    return FiniteSpace(data["points"], [tuple(p) for p in data.get("specialization", [])])


def load_space(path) -> FiniteSpace:
    src = _Source(path)
    return _space_from_source(src, src.data)


def completion_to_json(c: Completion) -> dict:
    out = space_to_json(c.space)
    out["embedding"] = {e.id: c.point_embedding[e.members] for e in c.base.irreducibles}
    return out


# -- functions and measures ---------------------------------------------------

def function_to_json(f: RealFunction) -> dict:
    return {"values": {p: fmt(f(p)) for p in f.space.points}}


def function_from_json(space: FiniteSpace, data) -> RealFunction:
    return RealFunction(space, {p: as_fraction(v) for p, v in data["values"].items()})


def load_function(path, space: FiniteSpace) -> RealFunction:
    src = _Source(path)
    values = src.field(src.data, "values", dict)
    for p in values:
        if p not in space:
            src.fail(f"unknown point {p!r}", p)
    missing = [p for p in space.points if p not in values]
    if missing:
        src.fail(f"function undefined at {', '.join(missing)}", "values")
    return RealFunction(space, {p: src.rational(v, p) for p, v in values.items()})


def measure_to_json(mu: Measure) -> dict:
    return {"coefficients": {e.id: fmt(c) for e, c in mu.items()}}


def _measure_key(space: FiniteSpace, key: str):
    """An irreducible id, or a bare point (Zariski spaces) meaning its closure."""
    try:
        return space.irreducible(key)
    except (NoethError, KeyError, TypeError):
        pass
    if key in space:
        if len(space.equivalence_class(key)) > 1:
            raise NoethError(f"bare point {key!r} is ambiguous on a non-T0 space; use the irreducible id")
        return space.irreducible(space.point_closure(key))
    raise NoethError(f"{key!r} is neither an irreducible id nor a point")


def measure_from_json(space: FiniteSpace, data) -> Measure:
    return Measure(space, {_measure_key(space, k): as_fraction(v) for k, v in data["coefficients"].items()})


def load_measure(path, space: FiniteSpace) -> Measure:
    src = _Source(path)
    coeffs = src.field(src.data, "coefficients", dict)
    out = {}
    for k, v in coeffs.items():
        try:
            e = _measure_key(space, k)
        except NoethError as err:
            src.fail(str(err), k)
        out[e] = out.get(e, 0) + src.rational(v, k)
    return Measure(space, out)


# -- maps and reverse orbits --------------------------------------------------

def map_to_json(f: ContinuousMap, space_path) -> dict:
    return {"space": str(space_path), "map": {p: f(p) for p in f.space.points}}


def load_map(path) -> ContinuousMap:
    """The ``space`` field is a path, resolved relative to the map file."""
    src = _Source(path)
    sp = src.field(src.data, "space", str)
    space_path = Path(sp) if os.path.isabs(sp) else src.path.parent / sp
    space = load_space(space_path)
    mapping = src.field(src.data, "map", dict)
    for p, q in mapping.items():
        if p not in space:
            src.fail(f"map given at unknown point {p!r}", p)
        if q not in space:
            src.fail(f"map sends {p!r} to unknown point {q!r}", p)
    missing = [p for p in space.points if p not in mapping]
    if missing:
        src.fail(f"map undefined at {', '.join(missing)}", "map")
    try:
        return validate_map(space, mapping)
    except NoethError as err:
        witness = getattr(err, "witness", None)
        src.fail(str(err), witness[1] if witness else None)


def reverse_orbit_to_json(ro: ReverseOrbitSpec) -> dict:
    return {"start": ro.start, "prefix": list(ro.prefix), "cycle": list(ro.cycle)}


def reverse_orbit_from_json(data) -> ReverseOrbitSpec:
    return ReverseOrbitSpec(data["start"], tuple(data.get("prefix", [])), tuple(data["cycle"]))


def load_reverse_orbit(path) -> ReverseOrbitSpec:
    src = _Source(path)
    start = src.field(src.data, "start", str)
    prefix = src.data.get("prefix", [])
    cycle = src.field(src.data, "cycle", list)
    try:
        return ReverseOrbitSpec(start, tuple(prefix), tuple(cycle))
    except NoethError as err:
        src.fail(str(err), "cycle")

