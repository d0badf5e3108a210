"""JSON Schemas for ``--json`` output, one per command.

Every document is either ``{"ok": true, "result": ...}`` or
``{"ok": false, "error": {...}}``.  These are plain dicts so that the package
has no runtime dependency on a validator.
"""

ORD = {"type": "string", "minLength": 1}

ERROR = {
    "type": "object",
    "required": ["ok", "error"],
    "properties": {
        "ok": {"const": False},
        "error": {
            "type": "object",
            "required": ["kind", "message"],
            "properties": {
                "kind": {"enum": ["parse", "usage", "ill-formed", "hypothesis", "overflow",
                                  "domain", "evaluation"]},
                "message": {"type": "string"},
                "offset": {"type": "integer", "minimum": 0},
                "violations": {"type": "array", "items": {"type": "string"}},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


def _ok(result: dict) -> dict:
    return {
        "type": "object",
        "required": ["ok", "result"],
        "properties": {"ok": {"type": "boolean"}, "result": result},
        "additionalProperties": False,
    }


def _obj(required: dict, optional: dict = None) -> dict:
    props = dict(required)
    props.update(optional or {})
    return {"type": "object", "required": sorted(required), "properties": props,
            "additionalProperties": False}


TRACE = {
    "type": "array",
    "items": _obj({"rule": {"type": "string"}, "cite": {"type": "string"}, "value": ORD}),
}

RESULTS = {
    "ord eval": _obj({"value": ORD}),
    "ord cmp": _obj({"a": ORD, "b": ORD, "cmp": {"enum": [-1, 0, 1]}}),
    "rank eval": {
        "oneOf": [
            _obj({"kind": {"const": "exact"}, "value": ORD, "expr": ORD}, {"trace": TRACE}),
            _obj({"kind": {"const": "interval"}, "lo": ORD, "hi": ORD, "expr": ORD},
                 {"trace": TRACE}),
        ]
    },
    "rank build": _obj({"target": ORD, "expr": ORD, "verified": {"type": "boolean"}}),
    "chain": _obj({
        "expr": ORD,
        "length": ORD,
        "entries": {
            "type": "array",
            "items": _obj({"index": ORD, "height": ORD, "expr": ORD, "rank": ORD,
                           "path": {"type": "string"}}),
        },
    }),
    "mono": _obj({"expr": ORD, "value": ORD}),
    "tree selftest": _obj({
        "branching": {"type": "integer", "minimum": 2},
        "seed": {"type": "integer"},
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": _obj({"check": {"type": "string"}, "cases": {"type": "integer"},
                           "passed": {"type": "boolean"},
                           "failures": {"type": "array", "items": {"type": "string"}}}),
        },
    }),
    "tree apply": _obj({"vertex": ORD, "image": ORD}),
    "tree orbit": _obj({"start": ORD, "count": {"type": "integer", "minimum": 1},
                        "vertices": {"type": "array", "items": ORD}}),
}

SCHEMAS = {name: _ok(r) for name, r in RESULTS.items()}


def schema_for(command: str) -> dict:
    """Schema for a command name such as ``"rank eval"``, accepting errors too."""
    return {"oneOf": [SCHEMAS[command], ERROR]}
