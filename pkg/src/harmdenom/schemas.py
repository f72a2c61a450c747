"""JSON Schemas for the ``result`` payload of each CLI subcommand."""

_INT = {"type": "integer"}
_BIGINT = {"type": "string", "pattern": "^[0-9]+$"}
_NUM = {"type": "number"}
_PAIRS = {"type": "array", "items": {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}}
_INTS = {"type": "array", "items": _INT}


def _obj(required, **props):
    return {
        "type": "object",
        "properties": props,
        "required": required,
        "additionalProperties": False,
    }


RESULT_SCHEMAS = {
    "harmonic": _obj(
        ["n", "numerator", "denominator", "lcm", "quotient"],
        n=_INT, numerator=_BIGINT, denominator=_BIGINT, lcm=_BIGINT, quotient=_BIGINT,
    ),
    "factor-dn": _obj(
        ["n", "method", "factors"],
        n=_INT, method={"enum": ["fast", "oracle"]}, factors=_PAIRS,
    ),
    "ep": _obj(["p", "members", "size"], p=_INT, members=_INTS, size=_INT),
    "ep-stats": _obj(
        ["lo", "hi", "counts", "total"],
        lo=_INT, hi=_INT, total=_INT,
        counts={"type": "object", "patternProperties": {"^[0-9]+$": _INT},
                "additionalProperties": False},
    ),
    "wieferich": _obj(
        ["max", "wieferich", "crosscheck_failures"],
        max=_INT, wieferich=_INTS, crosscheck_failures=_INTS,
    ),
    "qp": _obj(
        ["p", "n", "member", "digit", "exponent"],
        p=_INT, n=_INT, member={"type": "boolean"}, digit=_INT, exponent=_INT,
    ),
    "qp-count": _obj(["p", "x", "count"], p=_INT, x=_INT, count=_INT, closed_form=_INT),
    "density": _obj(
        ["p", "exact", "terms"],
        p=_INT, exact=_NUM,
        terms={"type": "object", "additionalProperties": _NUM},
        empirical=_obj(["x", "value"], x=_INT, value=_NUM),
    ),
    "valuation": _obj(
        ["n", "p", "v", "certified_precision", "dn_exponent", "qn_exponent"],
        n=_INT, p=_INT, v=_INT, certified_precision=_INT, dn_exponent=_INT, qn_exponent=_INT,
    ),
    "sieve": _obj(
        ["x", "count", "run_count"],
        x=_INT, count=_INT, run_count=_INT, runs=_PAIRS, members=_INTS,
    ),
    "scan-runs": _obj(
        ["limit", "direction", "min_len", "runs", "window_starts"],
        limit=_INT, direction={"enum": ["increasing", "decreasing", "equal"]},
        min_len=_INT, runs=_PAIRS, window_starts=_INTS,
    ),
    "nested": _obj(
        ["primes", "exponents", "intervals", "witness", "verified", "oracle_checked"],
        primes=_INTS, exponents=_INTS,
        intervals={"type": "array", "items": {"type": "array", "items": _BIGINT,
                                              "minItems": 2, "maxItems": 2}},
        witness=_BIGINT, verified={"type": "boolean"}, oracle_checked={"type": "boolean"},
    ),
    "conjecture": _obj(
        ["points"],
        points={"type": "array", "items": _obj(["x", "count", "ratio"], x=_INT, count=_INT, ratio=_NUM)},
    ),
}


def envelope_schema(command: str) -> dict:
    return _obj(
        ["command", "parameters", "result", "timing_ms"],
        command={"const": command},
        parameters={"type": "object"},
        result=RESULT_SCHEMAS[command],
        timing_ms={"type": "integer", "minimum": 0},
    )


ERROR_SCHEMA = _obj(
    ["error", "message", "exit_code"],
    error={"type": "string"}, message={"type": "string"}, exit_code={"enum": [2, 3, 4]},
)
