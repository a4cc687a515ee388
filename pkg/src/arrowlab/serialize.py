"""JSON forms of payloads, objects, morphisms and colored items."""

from __future__ import annotations

from .core import Mor, Obj, SubobjectClass


def jsonable(x):
    """Tuples become lists, objects and morphisms become small dicts,
    subobject classes are named by their representative."""
    if isinstance(x, SubobjectClass):
        return jsonable(x.representative)
    if isinstance(x, Mor):
        return {"dom": jsonable(x.dom.payload), "cod": jsonable(x.cod.payload), "payload": jsonable(x.payload)}
    if isinstance(x, Obj):
        return jsonable(x.payload)
    if isinstance(x, (tuple, list)):
        return [jsonable(v) for v in x]
    if isinstance(x, frozenset):
        return sorted(jsonable(v) for v in x)
    return x


def tupled(x):
    """Inverse of ``jsonable`` on plain payloads: lists become tuples."""
    if isinstance(x, list):
        return tuple(tupled(v) for v in x)
    return x


def object_json(A: Obj) -> dict:
    return {"category": A.tag, "object": jsonable(A.payload)}
