"""ShapeDocument JSON: {"ring": {"kind": "int"|"poly", "p_or_q": q},
"multiplicities": {"alpha": m_alpha, ...}}."""

import json

from .errors import InvalidInput
from .module import ModuleShape


def shape_from_document(doc):
    if not isinstance(doc, dict):
        raise InvalidInput("shape document must be a JSON object")
    ring = doc.get("ring")
    mults = doc.get("multiplicities")
    if not isinstance(ring, dict) or not isinstance(mults, dict):
        raise InvalidInput('shape document needs "ring" and "multiplicities" objects')
    kind = ring.get("kind")
    q = ring.get("p_or_q")
    if isinstance(q, bool) or not isinstance(q, int):
        raise InvalidInput('"p_or_q" must be an integer')
    parsed = {}
    for key, m in mults.items():
        try:
            alpha = int(key)
        except (TypeError, ValueError):
            raise InvalidInput(f"multiplicity key {key!r} is not an integer") from None
        if isinstance(m, bool) or not isinstance(m, int):
            raise InvalidInput(f"multiplicity for {key!r} must be an integer")
        parsed[alpha] = m
    return ModuleShape.of(parsed, q, kind)


def shape_to_document(shape):
    return {
        "ring": {"kind": shape.ring.kind, "p_or_q": shape.q},
        "multiplicities": {str(alpha): m for alpha, m in shape.multiplicities},
    }


def load_shape(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None
    return shape_from_document(doc)


def dump_shape(shape):
    return json.dumps(shape_to_document(shape), indent=2, sort_keys=True) + "\n"
