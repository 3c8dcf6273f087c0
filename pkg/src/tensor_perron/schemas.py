"""JSON Schemas of the documents read and written by the CLI."""

_NUMBER_PAIR = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_CIRCUIT = {"type": ["array", "null"], "items": {"type": "integer", "minimum": 1}, "minItems": 1}

TENSOR = {
    "type": "object",
    "required": ["order", "dim", "entries"],
    "properties": {
        "order": {"type": "integer", "minimum": 2},
        "dim": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["idx", "val"],
                "properties": {
                    "idx": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "val": {"type": "number", "exclusiveMinimum": 0},
                },
            },
        },
    },
}

CHECK = {
    "type": "object",
    "required": ["weakly_irreducible", "vertices", "arcs", "girth"],
    "properties": {
        "weakly_irreducible": {"type": "boolean"},
        "connected": {"type": "boolean"},
        "k": {"type": "integer"},
        "edges": {"type": "integer"},
        "vertices": {"type": "integer", "minimum": 1},
        "arcs": {"type": "integer", "minimum": 0},
        "girth": {"type": ["integer", "null"], "minimum": 1},
    },
    "additionalProperties": False,
}

RHO = {
    "type": "object",
    "required": ["rho", "bracket", "iterations", "residual", "vector"],
    "properties": {
        "rho": {"type": "number"},
        "bracket": _NUMBER_PAIR,
        "iterations": {"type": "integer", "minimum": 1},
        "residual": {"type": "number", "minimum": 0},
        "vector": {"type": "array", "items": {"type": "number", "exclusiveMinimum": 0}},
    },
    "additionalProperties": False,
}

FAILURE = {
    "type": "object",
    "required": ["error", "bracket", "iterations"],
    "properties": {"error": {"type": "string"}, "bracket": _NUMBER_PAIR, "iterations": {"type": "integer"}},
}

BOUNDS_REPORT = {
    "type": "object",
    "required": ["rho", "intervals", "all_contain_rho"],
    "properties": {
        "rho": {"type": "number"},
        "all_contain_rho": {"type": "boolean"},
        "intervals": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["theorem", "low", "high", "low_witness", "high_witness"],
                "properties": {
                    "theorem": {"enum": ["CircuitSliceSum", "GirthSorted", "ScaledCircuit", "DiagonalBalanced"]},
                    "low": {"type": "number"},
                    "high": {"type": "number"},
                    "low_witness": _CIRCUIT,
                    "high_witness": _CIRCUIT,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

MEAN_CYCLE = {
    "type": "object",
    "required": ["sense", "value", "witness"],
    "properties": {
        "sense": {"enum": ["min", "max"]},
        "value": {"type": "number", "exclusiveMinimum": 0},
        "witness": _CIRCUIT,
    },
    "additionalProperties": False,
}
