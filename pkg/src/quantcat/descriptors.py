"""JSON descriptors for quantales, V-categories, coalgebras and functor
expressions, plus canonical report rendering.

Every descriptor carries a ``schema`` version field and unknown fields are
rejected, so golden files stay stable.
"""

import json

from .coalg import Coalgebra, Const, HComp, Id, Prod, Sum, normalize_term
from .errors import DescriptorError
from .quantale import Quantale
from .vcat import VCategory

QUANTALE_SCHEMA = "quantale/1"
VCATEGORY_SCHEMA = "vcategory/1"
COALGEBRA_SCHEMA = "coalgebra/1"
SET_COALGEBRA_SCHEMA = "setcoalgebra/1"
REPORT_SCHEMA = "report/1"


def _require_fields(d, required, optional=(), what="descriptor"):
    if not isinstance(d, dict):
        raise DescriptorError(f"{what} must be a JSON object")
    missing = [f for f in required if f not in d]
    if missing:
        raise DescriptorError(f"{what} missing fields {missing}")
    unknown = [f for f in d if f not in required and f not in optional]
    if unknown:
        raise DescriptorError(f"{what} has unknown fields {unknown}")


def load_quantale(spec):
    """A built-in name or an inline quantale descriptor."""
    if isinstance(spec, str):
        return Quantale.by_name(spec)
    _require_fields(spec, ("schema", "elements", "leq", "tensor", "unit"),
                    what="quantale")
    if spec["schema"] != QUANTALE_SCHEMA:
        raise DescriptorError(f"unsupported quantale schema {spec['schema']!r}")
    els = spec["elements"]
    leq_rows = spec["leq"]
    tensor_rows = spec["tensor"]
    if len(leq_rows) != len(els) or len(tensor_rows) != len(els):
        raise DescriptorError("leq/tensor tables do not match the element list")
    pairs = [
        (els[i], els[j])
        for i, row in enumerate(leq_rows)
        for j, flag in enumerate(row)
        if flag
    ]
    table = {
        (els[i], els[j]): tensor_rows[i][j]
        for i in range(len(els))
        for j in range(len(els))
    }
    return Quantale.finite(els, pairs, table, spec["unit"])


def load_vcategory(spec):
    _require_fields(spec, ("schema", "quantale", "states", "matrix"),
                    what="vcategory")
    if spec["schema"] != VCATEGORY_SCHEMA:
        raise DescriptorError(f"unsupported vcategory schema {spec['schema']!r}")
    q = load_quantale(spec["quantale"])
    states = spec["states"]
    rows = spec["matrix"]
    if len(rows) != len(states) or any(len(r) != len(states) for r in rows):
        raise DescriptorError("matrix shape does not match the state list")
    return VCategory(q, states, [[q.parse(v) for v in row] for row in rows])


def load_functor(spec, quantale):
    """Functor AST from nested objects: id, const, prod, sum, H."""
    _require_fields(spec, (), ("id", "const", "prod", "sum", "H"), what="functor")
    if len(spec) != 1:
        raise DescriptorError("functor node must have exactly one key")
    key, body = next(iter(spec.items()))
    if key == "id":
        if body != {}:
            raise DescriptorError("id node takes no body")
        return Id()
    if key == "const":
        cat = load_vcategory(body)
        if cat.quantale != quantale:
            raise DescriptorError("constant category over a different quantale")
        return Const(cat)
    if key == "prod":
        return Prod([load_functor(p, quantale) for p in body])
    if key == "sum":
        return Sum([load_functor(p, quantale) for p in body])
    if key == "H":
        return HComp(load_functor(body, quantale))
    raise DescriptorError(f"unknown functor node {key!r}")


def load_term(expr, spec, carrier):
    """A structural term of F(carrier) from JSON, by recursion on the functor."""
    if isinstance(expr, Id):
        if spec not in carrier.states:
            raise DescriptorError(f"unknown state {spec!r}")
        return spec
    if isinstance(expr, Const):
        if spec not in expr.category.states:
            raise DescriptorError(f"unknown constant point {spec!r}")
        return spec
    if isinstance(expr, Prod):
        if not isinstance(spec, list) or len(spec) != len(expr.parts):
            raise DescriptorError("product term arity mismatch")
        return tuple(
            load_term(p, spec[i], carrier) for i, p in enumerate(expr.parts)
        )
    if isinstance(expr, Sum):
        _require_fields(spec, ("branch", "term"), what="sum term")
        b = spec["branch"]
        if not isinstance(b, int) or not 0 <= b < len(expr.parts):
            raise DescriptorError(f"bad sum branch {b!r}")
        return (b, load_term(expr.parts[b], spec["term"], carrier))
    if isinstance(expr, HComp):
        if not isinstance(spec, list):
            raise DescriptorError("set term must be a JSON array")
        return frozenset(load_term(expr.inner, t, carrier) for t in spec)
    raise DescriptorError(f"unknown functor node {expr!r}")


def dump_term(expr, term, quantale):
    if isinstance(expr, (Id, Const)):
        return term
    if isinstance(expr, Prod):
        return [dump_term(p, term[i], quantale) for i, p in enumerate(expr.parts)]
    if isinstance(expr, Sum):
        return {"branch": term[0], "term": dump_term(expr.parts[term[0]], term[1], quantale)}
    if isinstance(expr, HComp):
        return sorted(
            (dump_term(expr.inner, t, quantale) for t in term), key=_term_key
        )
    raise DescriptorError(f"unknown functor node {expr!r}")


def _term_key(t):
    return json.dumps(t, sort_keys=True, default=str)


def load_coalgebra(spec, cap=4096):
    """Coalgebra descriptor; set payloads are canonicalized by up-closing."""
    _require_fields(spec, ("schema", "functor", "category", "structure"),
                    what="coalgebra")
    if spec["schema"] != COALGEBRA_SCHEMA:
        raise DescriptorError(f"unsupported coalgebra schema {spec['schema']!r}")
    carrier = load_vcategory(spec["category"])
    expr = load_functor(spec["functor"], carrier.quantale)
    structure = {}
    raw = spec["structure"]
    if set(raw) != set(carrier.states):
        raise DescriptorError("structure keys do not match the carrier states")
    for s, t in raw.items():
        structure[s] = normalize_term(
            expr, carrier, load_term(expr, t, carrier), cap
        )
    return Coalgebra(expr, carrier, structure)


def load_set_coalgebra(spec):
    """Set-level coalgebra: a functor, a quantale, bare states, and terms."""
    _require_fields(spec, ("schema", "functor", "quantale", "states", "structure"),
                    what="set coalgebra")
    if spec["schema"] != SET_COALGEBRA_SCHEMA:
        raise DescriptorError(f"unsupported schema {spec['schema']!r}")
    q = load_quantale(spec["quantale"])
    expr = load_functor(spec["functor"], q)
    states = spec["states"]
    if set(spec["structure"]) != set(states):
        raise DescriptorError("structure keys do not match the state list")
    from .vcat import discrete

    fake = discrete(q, states)
    structure = {
        s: load_term(expr, spec["structure"][s], fake) for s in states
    }
    return expr, q, tuple(states), structure


def subset_to_json(subset):
    return sorted(str(s) for s in subset)


def canonical_json(obj):
    """Deterministic rendering: insertion order preserved, newline-terminated."""
    return json.dumps(obj, indent=2, ensure_ascii=True, default=str) + "\n"
