"""JSON formats for graphs, planar graphs, diagrams, schemes, matrices and bindings.

Graph files share one layout with fixed field order::

    {"half_edges": [...], "vertices": [[...], ...], "involution": [[a, b], ...],
     "sign": {h: "+"|"-"}, "anchors": {"in": [...], "out": [...]},
     "edge_order": [h, ...], "p_in": [sizes], "p_out": [sizes],
     "edge_labels": {h: label}, "vertex_labels": {h: label}, "scheme": {...}}

Only the first three fields are required.  Involution fixed points are
omitted; ``edge_order`` names each edge by any of its half-edges; vertex
labels are keyed by any half-edge of the vertex.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Any, Mapping

from .category_engine import Matrix, MatrixCategory, PrimeDiagram
from .graph_core import anchor, as_graph, build_pregraph, classify, orient
from .planar import (
    FissusPlanarGraph,
    LinearPartition,
    PlanarGraph,
    canonical_form,
    validate_planar,
)
from .scheme_diagram import Diagram, FissusDiagram, Scheme, TensorScheme, validate_diagram, validate_scheme

__all__ = [
    "ParseError",
    "loads",
    "dumps",
    "read_json",
    "parse_graph",
    "parse_oriented",
    "parse_planar",
    "parse_fissus",
    "parse_diagram",
    "parse_scheme",
    "parse_matrix",
    "parse_binding",
    "graph_to_json",
    "planar_to_json",
    "fissus_to_json",
    "diagram_to_json",
    "scheme_to_json",
    "matrix_to_json",
    "to_jsonable",
    "validation_report",
    "bind_diagram",
    "manifold_descriptor",
]


class ParseError(ValueError):
    """Malformed input: not JSON, or missing or mistyped fields."""


def loads(text: str) -> Any:
    if not text.strip():
        raise ParseError("empty input")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    """Byte-stable JSON: insertion order preserved, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _field(data: Mapping, name: str, kind: type) -> Any:
    if not isinstance(data, dict):
        raise ParseError("top level must be a JSON object")
    if name not in data:
        raise ParseError(f"missing field {name!r}")
    v = data[name]
    if not isinstance(v, kind):
        raise ParseError(f"field {name!r} must be a {kind.__name__}")
    return v


def _strs(xs: Any, what: str) -> list:
    if not isinstance(xs, list) or not all(isinstance(x, str) for x in xs):
        raise ParseError(f"{what} must be a list of strings")
    return xs


# -- parsing -------------------------------------------------------------------------


def parse_graph(data: Mapping):
    hs = _strs(_field(data, "half_edges", list), "half_edges")
    blocks = [_strs(b, "vertex") for b in _field(data, "vertices", list)]
    pairs = [_strs(p, "involution pair") for p in data.get("involution", [])]
    return as_graph(build_pregraph(hs, blocks, pairs))


def parse_oriented(data: Mapping):
    g = parse_graph(data)
    sign = _field(data, "sign", dict)
    return orient(g, sign)


def parse_planar(data: Mapping) -> PlanarGraph:
    og = parse_oriented(data)
    order = _strs(_field(data, "edge_order", list), "edge_order")
    return validate_planar(og, order)


def _partition(data: Mapping, name: str, n: int) -> LinearPartition:
    if name not in data:
        return LinearPartition.trivial(n)
    sizes = data[name]
    if not isinstance(sizes, list) or not all(isinstance(s, int) for s in sizes):
        raise ParseError(f"{name} must be a list of block sizes")
    return LinearPartition(tuple(sizes))


def parse_fissus(data: Mapping) -> FissusPlanarGraph:
    """Planar graph with ``p_in``/``p_out``; a missing partition is trivial."""
    pg = parse_planar(data)
    m, n = pg.arity
    return FissusPlanarGraph(pg, _partition(data, "p_in", m), _partition(data, "p_out", n))


def parse_scheme(data: Mapping) -> TensorScheme:
    objs = _field(data, "objects", list)
    mors = {}
    for m in _field(data, "morphisms", list):
        if not isinstance(m, dict) or "id" not in m:
            raise ParseError("each morphism needs an id, src and tgt")
        mors[m["id"]] = (tuple(_field(m, "src", list)), tuple(_field(m, "tgt", list)))
    return validate_scheme(objs, mors, data.get("name", "D"))


class _AnyScheme(Scheme):
    """Accepts every label; used when a diagram file carries no scheme."""

    name = "any"

    def is_object(self, x: Any) -> bool:
        return True

    def vertex_type_ok(self, f: Any, ins: tuple, outs: tuple) -> bool:
        return True


def parse_diagram(data: Mapping, scheme: Any = None) -> Diagram:
    pg = parse_planar(data)
    if scheme is None:
        scheme = parse_scheme(data["scheme"]) if "scheme" in data else _AnyScheme()
    edge_labels = _field(data, "edge_labels", dict)
    vertex_labels = data.get("vertex_labels", {})
    return validate_diagram(pg, edge_labels, vertex_labels, scheme)


def parse_matrix(rows: Any, exact: bool = True) -> Matrix:
    """Rows of rational literals: ``"p/q"`` strings or integers."""
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("a matrix is a list of rows")
    try:
        vals = [[Fraction(x) if isinstance(x, (str, int)) else _bad(x) for x in r] for r in rows]
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix entry: {exc}") from exc
    if len({len(r) for r in vals}) > 1:
        raise ParseError("matrix rows have different lengths")
    return Matrix(vals, exact)


def _bad(x: Any):
    raise ParseError(f"matrix entries must be 'p/q' strings or integers, got {x!r}")


def parse_binding(data: Mapping) -> tuple:
    """``{name: dim | matrix}`` split into object dimensions and morphism matrices."""
    if not isinstance(data, dict):
        raise ParseError("a binding is a JSON object")
    dims, mats = {}, {}
    for k, v in data.items():
        if isinstance(v, bool):
            raise ParseError(f"binding of {k!r} must be a dimension or a matrix")
        if isinstance(v, int):
            if v < 0:
                raise ParseError(f"dimension of {k!r} is negative")
            dims[k] = v
        else:
            mats[k] = parse_matrix(v)
    return dims, mats


def bind_diagram(d: Diagram, dims: Mapping, mats: Mapping, v: MatrixCategory) -> Diagram:
    """Replace names by dimensions and matrices, then re-validate in ``v``."""
    for h, x in d.edge_labels.items():
        if x not in dims:
            raise ParseError(f"object {x!r} on {h!r} has no dimension")
    for u, f in d.vertex_labels.items():
        if f not in mats:
            raise ParseError(f"morphism {f!r} has no matrix")
    return validate_diagram(d.planar, {h: dims[x] for h, x in d.edge_labels.items()},
                            {u: mats[f] for u, f in d.vertex_labels.items()}, v)


# -- serialization -------------------------------------------------------------------


def _edge_rep(e: frozenset) -> str:
    return min(e)


def graph_to_json(g) -> dict:
    hs = sorted(g.half_edges)
    return {
        "half_edges": hs,
        "vertices": [sorted(b) for b in g.blocks],
        "involution": sorted([sorted(e) for e in g.edges if len(e) == 2]),
    }


def planar_to_json(pg: PlanarGraph, canon: bool = False) -> dict:
    if canon:
        pg = canonical_form(pg)
    hs = list(pg.half_edges_in_order)
    out = graph_to_json(pg.graph)
    out["half_edges"] = hs
    out["sign"] = {h: pg.sign[h] for h in hs}
    out["anchors"] = {"in": list(pg.inputs), "out": list(pg.outputs)}
    out["edge_order"] = [_edge_rep(e) for e in pg.order]
    return out


def fissus_to_json(f: FissusPlanarGraph, canon: bool = False) -> dict:
    out = planar_to_json(f.planar, canon)
    out["p_in"] = list(f.p_in.sizes)
    out["p_out"] = list(f.p_out.sizes)
    return out


def diagram_to_json(d: Diagram, canon: bool = False) -> dict:
    pg = d.planar
    if canon:
        ren = {h: f"h{i}" for i, h in enumerate(pg.half_edges_in_order)}
        out = planar_to_json(pg, True)
    else:
        ren = {h: h for h in pg.graph.half_edges}
        out = planar_to_json(pg)
    out["edge_labels"] = {ren[h]: to_jsonable(d.edge_labels[h]) for h in pg.half_edges_in_order}
    out["vertex_labels"] = {ren[min(v)]: to_jsonable(d.vertex_labels[v]) for v in d.vertices_in_order()}
    return out


def scheme_to_json(s: TensorScheme) -> dict:
    return {
        "name": s.name,
        "objects": sorted(s.objects, key=repr),
        "morphisms": [{"id": f, "src": list(st[0]), "tgt": list(st[1])}
                      for f, st in sorted(s.morphisms.items(), key=lambda kv: repr(kv[0]))],
    }


def matrix_to_json(m: Matrix) -> list:
    return m.to_json()


def to_jsonable(x: Any) -> Any:
    """Structural JSON for values produced by the library."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Matrix):
        return x.to_json()
    if isinstance(x, LinearPartition):
        return list(x.sizes)
    if isinstance(x, PlanarGraph):
        return planar_to_json(x, canon=True)
    if isinstance(x, FissusPlanarGraph):
        return fissus_to_json(x, canon=True)
    if isinstance(x, Diagram):
        return diagram_to_json(x, canon=True)
    if isinstance(x, FissusDiagram):
        return {"diagram": diagram_to_json(x.diagram, canon=True), "p_in": list(x.p_in.sizes),
                "p_out": list(x.p_out.sizes)}
    if isinstance(x, PrimeDiagram):
        return {"dom": to_jsonable(x.dom), "cod": to_jsonable(x.cod), "value": to_jsonable(x.value)}
    if isinstance(x, (tuple, list)):
        return [to_jsonable(y) for y in x]
    if isinstance(x, frozenset):
        return sorted(to_jsonable(y) for y in x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    return repr(x)


# -- validation report --------------------------------------------------------------


def validation_report(data: Mapping) -> dict:
    """Classify a graph file; validate orientation, planarity and labels when present.

    Raises the first validation error met; returns the report otherwise.
    """
    g = parse_graph(data)
    rep = classify(g)
    flags = dict(rep["flags"])
    kind = "graph"
    if "sign" in data:
        og = parse_oriented(data)
        flags["directed"] = og.is_directed
        flags["acyclic"] = og.is_acyclic
        flags["progressive"] = og.is_progressive
        kind = "oriented"
        if "anchors" in data:
            a = _field(data, "anchors", dict)
            anchor(og, _strs(a.get("in", []), "anchors.in"), _strs(a.get("out", []), "anchors.out"))
            flags["anchored"] = True
            kind = "anchored"
        if "edge_order" in data:
            pg = parse_planar(data)
            flags["planar"] = True
            kind = "planar"
            rep["arity"] = list(pg.arity)
            if "p_in" in data or "p_out" in data:
                parse_fissus(data)
                kind = "fissus"
            if "edge_labels" in data:
                parse_diagram(data)
                kind = "diagram"
    rep["flags"] = flags
    rep["kind"] = kind
    rep["true_flags"] = sorted(k for k, v in flags.items() if v is True)
    return rep


# -- manifold descriptor --------------------------------------------------------------


def manifold_descriptor(m, rng: random.Random, n: int = 5) -> dict:
    """Partial operation tables of a manifold on ``n`` sampled inputs each."""
    from .generators import random_partition

    S = m.sampler
    objs = [S.obj(rng) for _ in range(n)]
    mors = [S.mor(rng, None) for _ in range(n)]
    comp = []
    for f in mors:
        g = S.mor(rng, m.tgt(f))
        comp.append([to_jsonable(f), to_jsonable(g), to_jsonable(m.compose(g, f))])
    fus = []
    for f in mors:
        i, o = random_partition(rng, len(m.src(f)), 4), random_partition(rng, len(m.tgt(f)), 4)
        fus.append([list(i.sizes), list(o.sizes), to_jsonable(f), to_jsonable(m.fusion(i, o, f))])
    return {
        "name": m.name,
        "scheme": m.scheme.name,
        "unit_object": to_jsonable(m.unit_object),
        "object_monoid": [[to_jsonable(x), to_jsonable(y), to_jsonable(m.mult(x, y))] for x, y in zip(objs, objs[1:])],
        "identities": [[to_jsonable(x), to_jsonable(m.identity(x))] for x in objs],
        "tensor": [[to_jsonable(f), to_jsonable(g), to_jsonable(m.tensor(f, g))] for f, g in zip(mors, mors[1:])],
        "compose": comp,
        "fusion": fus,
    }

