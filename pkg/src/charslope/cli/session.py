"""Session files: parsing, validation and serialisation."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Any

import jsonschema

from ..algebra import FieldSpec, Poly
from ..errors import FieldError, InputError
from ..geometry import Chart, Divisor, DivisorLedger
from ..presentation import PPresentation

COMMANDS = ("analyze", "clean", "blowup", "resolve", "resolve-monomial", "verify")

_TERM = {
    "type": "object",
    "required": ["c", "exp"],
    "additionalProperties": False,
    "properties": {
        "c": {"oneOf": [{"type": "integer"},
                        {"type": "array", "items": {"type": "integer"}, "minItems": 1}]},
        "exp": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

SCHEMA = {
    "type": "object",
    "required": ["p", "e", "vars", "coeffs"],
    "additionalProperties": False,
    "properties": {
        "p": {"type": "integer", "minimum": 2},
        "m": {"type": "integer", "minimum": 1},
        "modulus": {"type": "array", "items": {"type": "integer"}, "minItems": 2},
        "e": {"type": "integer", "minimum": 0},
        "vars": {"type": "array", "items": {"type": "string", "minLength": 1}, "minItems": 1},
        "z": {"type": "string", "minLength": 1},
        "coeffs": {
            "type": "object",
            "patternProperties": {"^[1-9][0-9]*$": {"type": "array", "items": _TERM}},
            "additionalProperties": False,
        },
        "ledger": {
            "type": "object",
            "required": ["s"],
            "additionalProperties": False,
            "properties": {
                "s": {"type": "integer", "minimum": 1},
                "divisors": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["var", "h"],
                        "additionalProperties": False,
                        "properties": {
                            "var": {"type": "string"},
                            "h": {"type": "integer", "minimum": 0},
                            "id": {"type": "string", "minLength": 1},
                        },
                    },
                },
            },
        },
        "pipeline": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["command"],
                "additionalProperties": False,
                "properties": {
                    "command": {"enum": list(COMMANDS)},
                    "point": {"type": "array", "items": {"type": "string"}},
                    "center": {"type": "array", "items": {"type": "string"}, "minItems": 1},
                    "chart": {"type": "string"},
                    "suite": {"type": "string"},
                    "seed": {"type": "integer"},
                    "count": {"type": "integer", "minimum": 1},
                },
            },
        },
    },
}


def _pointer(path) -> str:
    return "".join(f"/{str(p).replace('~', '~0').replace('/', '~1')}" for p in path)


@dataclass
class SessionInput:
    field: FieldSpec
    e: int
    vars: tuple[str, ...]
    z_name: str
    coeffs: tuple[Poly, ...]
    ledger: DivisorLedger | None = None
    pipeline: tuple[dict, ...] = ()
    extras: dict = field(default_factory=dict, compare=False)

    @property
    def q(self) -> int:
        return self.field.p ** self.e

    def chart(self) -> Chart:
        ledger = self.ledger if self.ledger is not None else DivisorLedger((), self.q)
        return Chart(self.vars, self.z_name, (), "c0", ledger)

    def presentation(self) -> PPresentation:
        return PPresentation.build(self.e, self.coeffs, self.chart())


def parse_data(data: Any) -> SessionInput:
    validator = jsonschema.Draft202012Validator(SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda er: list(er.absolute_path))
    if errors:
        er = errors[0]
        raise InputError(_pointer(er.absolute_path), er.message)

    p, m = data["p"], data.get("m", 1)
    modulus = data.get("modulus")
    try:
        fld = FieldSpec(p, m, tuple(modulus) if modulus is not None else None)
    except FieldError as exc:
        where = "/p" if "prime" in str(exc) else ("/modulus" if m > 1 or modulus else "/m")
        raise InputError(where, str(exc)) from None

    names = tuple(data["vars"])
    if len(set(names)) != len(names):
        raise InputError("/vars", "variable names must be unique")
    z_name = data.get("z", "z")
    if z_name in names:
        raise InputError("/z", "section name clashes with a downstairs variable")
    e = data["e"]
    q = p ** e
    n = len(names)
    coeffs = [Poly.zero(fld, n) for _ in range(q)]
    for key, terms in data["coeffs"].items():
        i = int(key)
        if i > q:
            raise InputError(f"/coeffs/{key}", f"coefficient index {i} exceeds p^e = {q}")
        out: dict[tuple[int, ...], int] = {}
        for k, term in enumerate(terms):
            where = f"/coeffs/{key}/{k}"
            exp = term["exp"]
            if len(exp) != n:
                raise InputError(f"{where}/exp", f"expected {n} exponents, got {len(exp)}")
            c = term["c"]
            if isinstance(c, list):
                if m == 1 and len(c) != 1:
                    raise InputError(f"{where}/c", "prime-field coefficients are single integers")
                if len(c) > m:
                    raise InputError(f"{where}/c", f"coefficient vector longer than m = {m}")
            elif m > 1:
                raise InputError(f"{where}/c", "extension-field coefficients are vectors")
            val = fld.element(c)
            exp_t = tuple(exp)
            if exp_t in out:
                raise InputError(where, f"duplicate exponent {list(exp)}")
            out[exp_t] = val
        coeffs[i - 1] = Poly(fld, n, out)

    ledger = None
    if "ledger" in data:
        L = data["ledger"]
        entries = []
        used = set()
        for k, d in enumerate(L.get("divisors", [])):
            if d["var"] not in names:
                raise InputError(f"/ledger/divisors/{k}/var", f"unknown variable {d['var']!r}")
            idx = names.index(d["var"])
            if idx in used:
                raise InputError(f"/ledger/divisors/{k}/var", "variable already carries a divisor")
            used.add(idx)
            entries.append(Divisor(d.get("id", d["var"]), idx, d["h"]))
        ids = [d.id for d in entries]
        if len(set(ids)) != len(ids):
            raise InputError("/ledger/divisors", "duplicate divisor id")
        ledger = DivisorLedger(tuple(entries), L["s"])

    pipeline = []
    for k, cmd in enumerate(data.get("pipeline", [])):
        for key in ("point", "center"):
            for j, name in enumerate(cmd.get(key, [])):
                if name not in names and not (key == "center" and name == z_name):
                    raise InputError(f"/pipeline/{k}/{key}/{j}", f"unknown variable {name!r}")
        pipeline.append(dict(cmd))

    if coeffs[-1].is_zero():
        raise InputError(f"/coeffs/{q}", "a_{p^e} must be nonzero")
    return SessionInput(fld, e, names, z_name, tuple(coeffs), ledger, tuple(pipeline))


def parse_input(source: str | IO[str]) -> SessionInput:
    try:
        if hasattr(source, "read"):
            data = json.load(source)
        else:
            with open(source, encoding="utf-8") as fh:
                data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError("", f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise InputError("", f"cannot read input: {exc}") from None
    return parse_data(data)


def _coef_json(fld: FieldSpec, c: int):
    return c if fld.m == 1 else fld.to_vector(c)


def poly_terms(g: Poly) -> list[dict]:
    return [{"c": _coef_json(g.field, c), "exp": list(e)} for e, c in g.items()]


def serialize_session(s: SessionInput) -> dict:
    out: dict[str, Any] = {"p": s.field.p, "m": s.field.m}
    if s.field.m > 1:
        out["modulus"] = list(s.field.modulus)
    out["e"] = s.e
    out["vars"] = list(s.vars)
    out["z"] = s.z_name
    out["coeffs"] = {str(i): poly_terms(a) for i, a in enumerate(s.coeffs, start=1) if a}
    if s.ledger is not None:
        out["ledger"] = {
            "s": s.ledger.s,
            "divisors": [{"var": s.vars[d.carrier], "h": d.h, "id": d.id}
                         for d in s.ledger.entries if d.carrier is not None],
        }
    if s.pipeline:
        out["pipeline"] = [dict(c) for c in s.pipeline]
    return out
