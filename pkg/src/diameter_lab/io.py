"""JSON (de)serialization of complexes and layered objects, and DOT export."""

from __future__ import annotations

import json
from pathlib import Path

from .clm import LayeredMulticomplex, LegalSequence, NonpureLayeredFamily
from .complex_core import PureComplex, PureMulticomplex, _is_multi, dual_graph
from .errors import InvalidComplex

SCHEMA = 1


def complex_to_dict(C) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "multicomplex" if _is_multi(C) else "complex",
        "n": C.n,
        "d": C.d,
        "facets": [list(f) for f in C.facets],
    }


def to_dict(obj) -> dict:
    if isinstance(obj, (PureComplex, PureMulticomplex)):
        return complex_to_dict(obj)
    if isinstance(obj, LayeredMulticomplex):
        out = complex_to_dict(obj.base)
        out["kind"] = "layered-" + out["kind"]
        out["layers"] = list(obj.layers)
        return out
    if isinstance(obj, NonpureLayeredFamily):
        return {"schema": SCHEMA, "kind": "nonpure", "n": obj.n, "layers": obj.as_lists()}
    if isinstance(obj, LegalSequence):
        return {"schema": SCHEMA, "kind": "legal", "n": obj.n,
                "sets": [sorted(S) for S in obj.sets]}
    if hasattr(obj, "to_dict"):
        out = obj.to_dict()
        out.setdefault("schema", SCHEMA)
        return out
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _int_rows(rows, what):
    if not isinstance(rows, list):
        raise InvalidComplex(f"{what} must be a list")
    out = []
    for row in rows:
        if not isinstance(row, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            raise InvalidComplex(f"every entry of {what} must be a list of integers")
        out.append(row)
    return out


def _complex_from(data, multi):
    for key in ("n", "d", "facets"):
        if key not in data:
            raise InvalidComplex(f"missing field {key!r}")
    n, d = data["n"], data["d"]
    if not isinstance(n, int) or not isinstance(d, int):
        raise InvalidComplex("n and d must be integers")
    facets = _int_rows(data["facets"], "facets")
    if multi:
        return PureMulticomplex.from_facets(facets, n=n, d=d)
    return PureComplex.from_facets(facets, n=n, d=d)


def from_dict(data: dict):
    """Inverse of :func:`to_dict`; rejects anything malformed with
    :class:`InvalidComplex`.  A missing ``kind`` means a plain complex."""
    if not isinstance(data, dict):
        raise InvalidComplex("top-level JSON value must be an object")
    schema = data.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise InvalidComplex(f"unsupported schema {schema!r}")
    kind = data.get("kind", "complex")
    if kind in ("complex", "multicomplex"):
        return _complex_from(data, kind == "multicomplex")
    if kind in ("layered-complex", "layered-multicomplex"):
        base = _complex_from(data, kind == "layered-multicomplex")
        layers = data.get("layers")
        if not isinstance(layers, list) or len(layers) != len(data["facets"]):
            raise InvalidComplex("need one layer per listed facet")
        # the layers follow the facet order of the file, which may be unsorted
        key = tuple if kind == "layered-multicomplex" else (lambda f: tuple(sorted(f)))
        layer_of = {key(f): layer for f, layer in zip(data["facets"], layers)}
        return LayeredMulticomplex(base, tuple(layer_of[X] for X in base.facets))
    if kind == "nonpure":
        layers = [_int_rows(layer, "layer") for layer in data.get("layers", [])]
        return NonpureLayeredFamily(data["n"], tuple(tuple(frozenset(S) for S in L) for L in layers))
    if kind == "legal":
        return LegalSequence(data["n"], tuple(frozenset(S) for S in _int_rows(data["sets"], "sets")))
    raise InvalidComplex(f"unknown kind {kind!r}")


def dumps(obj, indent: int | None = None) -> str:
    return json.dumps(to_dict(obj), indent=indent)


def loads(text: str):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidComplex(f"not valid JSON: {exc}") from exc
    return from_dict(data)


def save(obj, path) -> None:
    Path(path).write_text(dumps(obj, indent=None) + "\n")


def load(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidComplex(f"cannot read {path}: {exc}") from exc
    return loads(text)


# --- DOT ---------------------------------------------------------------------

def _label(f) -> str:
    return "{" + ",".join(map(str, f)) + "}"


def dual_graph_dot(obj, name: str = "dual") -> str:
    """Dual graph in DOT; layered objects get a ``layer`` attribute and one
    ``rank=same`` group per layer."""
    layered = isinstance(obj, LayeredMulticomplex)
    C = obj.base if layered else obj
    G = dual_graph(C)
    lines = [f"graph {name} {{"]
    for i, f in enumerate(C.facets):
        attrs = [f'label="{_label(f)}"']
        if layered:
            attrs.append(f'layer="{obj.layers[i]}"')
            attrs[0] = f'label="{_label(f)} @{obj.layers[i]}"'
        lines.append(f"  f{i} [{', '.join(attrs)}];")
    for i, j in G.edges():
        lines.append(f"  f{i} -- f{j};")
    if layered:
        groups = {}
        for i, layer in enumerate(obj.layers):
            groups.setdefault(layer, []).append(f"f{i}")
        for layer in sorted(groups):
            lines.append(f"  {{ rank=same; {'; '.join(groups[layer])}; }}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def johnson_graph_dot(n: int, d: int, highlight=()) -> str:
    """J(n, d) in DOT; nodes of ``highlight`` (facet tuples) are filled."""
    from .diameter import johnson_adjacency

    nodes, masks = johnson_adjacency(n, d)
    marked = {tuple(sorted(h)) for h in highlight}
    lines = [f"graph J_{n}_{d} {{"]
    for i, f in enumerate(nodes):
        style = ", style=filled" if tuple(f) in marked else ""
        lines.append(f'  v{i} [label="{_label(f)}"{style}];')
    for i in range(len(nodes)):
        m = masks[i] >> (i + 1)
        j = i + 1
        while m:
            if m & 1:
                lines.append(f"  v{i} -- v{j};")
            m >>= 1
            j += 1
    lines.append("}")
    return "\n".join(lines) + "\n"
