"""Tensor schemes, scheme morphisms and planar diagrams valued in a scheme.

A tensor scheme has objects and morphisms, each morphism carrying a source
and a target word of objects.  Words are plain tuples; the empty tuple is
the monoid unit.

A diagram decorates a planar graph: every half-edge carries an object
(constant along edges) and every real vertex a morphism whose source and
target words match the labels of its inputs and outputs in planar order.
Diagrams compare by canonical planar form together with their labels read
in canonical order, so equal diagrams are exactly isomorphic ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

from .graph_core import GraphError
from .planar import (
    FissusPlanarGraph,
    LinearPartition,
    PlanarGraph,
    canonical_key,
    coarse_grain,
    compose_planar,
    empty_planar,
    identity,
    partition_product,
    prime,
    tensor_planar,
)

__all__ = [
    "SchemeError",
    "SquareDoesNotCommute",
    "NotSigmaInvariant",
    "VertexTypeMismatch",
    "NotComposable",
    "NotInScheme",
    "label_key",
    "Scheme",
    "TensorScheme",
    "PlanarGraphScheme",
    "FissusGraphScheme",
    "DiagramScheme",
    "FissusDiagramScheme",
    "SchemeMorphism",
    "Diagram",
    "FissusDiagram",
    "validate_scheme",
    "validate_scheme_morphism",
    "validate_diagram",
    "prime_diagram",
    "identity_diagram",
    "empty_diagram",
    "tensor_diagram",
    "compose_diagram",
    "tensor_fissus",
    "compose_fissus",
    "pushforward",
    "pushforward_fissus",
    "fissus_dom_cod",
    "coarse_graining_morphism",
    "inclusion_prim_gamma",
    "compose_morphisms",
    "identity_morphism",
]


class SchemeError(ValueError):
    pass


class SquareDoesNotCommute(SchemeError):
    def __init__(self, morphism: Any, side: str = "source"):
        self.morphism = morphism
        self.side = side
        super().__init__(f"{side} square does not commute at {morphism!r}")


class NotSigmaInvariant(SchemeError):
    def __init__(self, h: str):
        self.half_edge = h
        super().__init__(f"edge labels differ across the edge of {h!r}")


class VertexTypeMismatch(SchemeError):
    def __init__(self, v: Any, detail: str = ""):
        self.vertex = v
        super().__init__(f"vertex {sorted(v) if isinstance(v, frozenset) else v!r}: {detail}")


class NotComposable(SchemeError):
    def __init__(self, k: int, detail: str = ""):
        self.index = k
        super().__init__(f"boundary labels differ at position {k}{': ' + detail if detail else ''}")


class NotInScheme(SchemeError):
    pass


def label_key(x: Any) -> Any:
    """Hashable key of a label: ``x.key()`` when available, canonical forms for graphs."""
    if isinstance(x, PlanarGraph):
        return ("pg", canonical_key(x))
    if isinstance(x, FissusPlanarGraph):
        return ("fpg", canonical_key(x.planar), x.p_in.sizes, x.p_out.sizes)
    k = getattr(x, "key", None)
    if callable(k):
        return k()
    if isinstance(x, tuple):
        return tuple(label_key(y) for y in x)
    return x


# -- schemes ------------------------------------------------------------------


class Scheme:
    """Interface of a tensor scheme; subclasses may be infinite."""

    name = "scheme"

    def is_object(self, x: Any) -> bool:
        raise NotImplementedError

    def is_morphism(self, f: Any) -> bool:
        raise NotImplementedError

    def src(self, f: Any) -> tuple:
        raise NotImplementedError

    def tgt(self, f: Any) -> tuple:
        raise NotImplementedError

    def vertex_type_ok(self, f: Any, ins: tuple, outs: tuple) -> bool:
        return tuple(self.src(f)) == tuple(ins) and tuple(self.tgt(f)) == tuple(outs)

    def vertex_type_detail(self, f: Any, ins: tuple, outs: tuple) -> str:
        return f"s={self.src(f)!r} t={self.tgt(f)!r} but incident words {ins!r} / {outs!r}"

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


class TensorScheme(Scheme):
    """A finite tensor scheme: named morphisms with explicit source and target words."""

    def __init__(self, objects: Iterable, morphisms: Mapping[Any, tuple], name: str = "D"):
        self.objects = frozenset(objects)
        self.morphisms = {f: (tuple(s), tuple(t)) for f, (s, t) in morphisms.items()}
        self.name = name

    def is_object(self, x: Any) -> bool:
        return x in self.objects

    def is_morphism(self, f: Any) -> bool:
        try:
            return f in self.morphisms
        except TypeError:
            return False

    def src(self, f: Any) -> tuple:
        return self.morphisms[f][0]

    def tgt(self, f: Any) -> tuple:
        return self.morphisms[f][1]


def validate_scheme(objects: Iterable, morphisms: Mapping[Any, tuple], name: str = "D") -> TensorScheme:
    obs = frozenset(objects)
    for f, st in morphisms.items():
        if len(st) != 2:
            raise SchemeError(f"morphism {f!r} needs a source and a target")
        for side, w in zip(("source", "target"), st):
            for x in w:
                if x not in obs:
                    raise NotInScheme(f"{side} of {f!r} uses unknown object {x!r}")
    return TensorScheme(obs, morphisms, name)


class PlanarGraphScheme(Scheme):
    """``Prim`` (``prime_only``) or ``Gamma``: one object ``x``, planar graphs as morphisms."""

    def __init__(self, prime_only: bool = False, allow_empty: bool = True):
        self.prime_only = prime_only
        self.allow_empty = allow_empty
        self.name = "Prim" if prime_only else "Gamma"

    def is_object(self, x: Any) -> bool:
        return x == "x"

    def is_morphism(self, f: Any) -> bool:
        if not isinstance(f, PlanarGraph):
            return False
        if self.prime_only:
            g = f.graph
            return g.is_prime or (self.allow_empty and g.is_empty)
        return True

    def src(self, f: PlanarGraph) -> tuple:
        return ("x",) * len(f.inputs)

    def tgt(self, f: PlanarGraph) -> tuple:
        return ("x",) * len(f.outputs)


class FissusGraphScheme(Scheme):
    """``Gamma_F``: words in ``x`` as objects, fissus planar graphs as morphisms."""

    name = "Gamma_F"

    def is_object(self, x: Any) -> bool:
        return isinstance(x, tuple) and all(y == "x" for y in x)

    def is_morphism(self, f: Any) -> bool:
        return isinstance(f, FissusPlanarGraph)

    def src(self, f: FissusPlanarGraph) -> tuple:
        return tuple(("x",) * s for s in f.p_in.sizes)

    def tgt(self, f: FissusPlanarGraph) -> tuple:
        return tuple(("x",) * s for s in f.p_out.sizes)


class DiagramScheme(Scheme):
    """``Gamma(D)``: diagrams in ``D`` with their domain and codomain words."""

    def __init__(self, base: Scheme):
        self.base = base
        self.name = f"Gamma({base.name})"

    def is_object(self, x: Any) -> bool:
        return self.base.is_object(x)

    def is_morphism(self, f: Any) -> bool:
        return isinstance(f, Diagram)

    def src(self, f: "Diagram") -> tuple:
        return f.dom

    def tgt(self, f: "Diagram") -> tuple:
        return f.cod


class FissusDiagramScheme(Scheme):
    """``Gamma_F(D)``: words over ``Ob(D)`` and fissus diagrams with bracketed boundaries."""

    def __init__(self, base: Scheme):
        self.base = base
        self.name = f"Gamma_F({base.name})"

    def is_object(self, x: Any) -> bool:
        return isinstance(x, tuple) and all(self.base.is_object(y) for y in x)

    def is_morphism(self, f: Any) -> bool:
        return isinstance(f, FissusDiagram)

    def src(self, f: "FissusDiagram") -> tuple:
        return f.bracketed_dom

    def tgt(self, f: "FissusDiagram") -> tuple:
        return f.bracketed_cod


# -- scheme morphisms ---------------------------------------------------------------


@dataclass(frozen=True)
class SchemeMorphism:
    source: Scheme
    target: Scheme
    on_objects: Callable[[Any], Any]
    on_morphisms: Callable[[Any], Any]
    name: str = "phi"

    def word(self, w: Iterable) -> tuple:
        return tuple(self.on_objects(x) for x in w)

    def __call__(self, f: Any) -> Any:
        return self.on_morphisms(f)


def validate_scheme_morphism(phi: SchemeMorphism, samples: Iterable | None = None) -> SchemeMorphism:
    """Check the source and target squares on every morphism (finite source) or on ``samples``."""
    if samples is None:
        if not isinstance(phi.source, TensorScheme):
            raise SchemeError("samples are required for an infinite source scheme")
        samples = phi.source.morphisms
    for f in samples:
        g = phi.on_morphisms(f)
        if not phi.target.is_morphism(g):
            raise NotInScheme(f"image of {f!r} is not a morphism of {phi.target.name}")
        if tuple(phi.target.src(g)) != phi.word(phi.source.src(f)):
            raise SquareDoesNotCommute(f, "source")
        if tuple(phi.target.tgt(g)) != phi.word(phi.source.tgt(f)):
            raise SquareDoesNotCommute(f, "target")
    return phi


def identity_morphism(s: Scheme) -> SchemeMorphism:
    return SchemeMorphism(s, s, lambda x: x, lambda f: f, "id")


def compose_morphisms(phi2: SchemeMorphism, phi1: SchemeMorphism) -> SchemeMorphism:
    """``phi2 o phi1``."""
    return SchemeMorphism(
        phi1.source,
        phi2.target,
        lambda x: phi2.on_objects(phi1.on_objects(x)),
        lambda f: phi2.on_morphisms(phi1.on_morphisms(f)),
        f"{phi2.name}.{phi1.name}",
    )


def inclusion_prim_gamma() -> SchemeMorphism:
    return SchemeMorphism(PlanarGraphScheme(True), PlanarGraphScheme(False), lambda x: x, lambda f: f, "incl")


def coarse_graining_morphism() -> SchemeMorphism:
    """``Gamma_F -> Prim``: every word goes to ``x``, every fissus graph to its coarse-graining."""
    return SchemeMorphism(FissusGraphScheme(), PlanarGraphScheme(True), lambda w: "x", coarse_grain, "cg")


# -- diagrams -----------------------------------------------------------------


class Diagram:
    """A planar graph with object labels on half-edges and morphism labels on real vertices.

    Build through :func:`validate_diagram`; the constructor trusts its input.
    """

    __slots__ = ("planar", "edge_labels", "vertex_labels", "_key")

    def __init__(self, planar: PlanarGraph, edge_labels: Mapping[str, Any], vertex_labels: Mapping[frozenset, Any]):
        self.planar = planar
        self.edge_labels = dict(edge_labels)
        self.vertex_labels = dict(vertex_labels)
        self._key = None

    @property
    def dom(self) -> tuple:
        return tuple(self.edge_labels[h] for h in self.planar.inputs)

    @property
    def cod(self) -> tuple:
        return tuple(self.edge_labels[h] for h in self.planar.outputs)

    def label_of_edge(self, e: frozenset) -> Any:
        return self.edge_labels[next(iter(e))]

    def vertices_in_order(self) -> tuple:
        """Real vertices ordered by their first half-edge in canonical order."""
        idx = {h: i for i, h in enumerate(self.planar.half_edges_in_order)}
        return tuple(sorted(self.planar.real_vertices, key=lambda v: min(idx[h] for h in v)))

    def key(self) -> tuple:
        if self._key is None:
            pg = self.planar
            self._key = (
                canonical_key(pg),
                tuple(label_key(self.edge_labels[h]) for h in pg.half_edges_in_order),
                tuple(label_key(self.vertex_labels[v]) for v in self.vertices_in_order()),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"Diagram({self.dom!r} -> {self.cod!r}, vertices={len(self.vertex_labels)})"


def _resolve_vertex(pg: PlanarGraph, v: Any) -> frozenset:
    if isinstance(v, str):
        return pg.graph.block_of(v)
    v = frozenset(v)
    if v not in pg.graph.blocks:
        raise GraphError(f"{sorted(v)} is not a vertex")
    return v


def validate_diagram(pg: PlanarGraph, edge_labels: Mapping, vertex_labels: Mapping, scheme: Any) -> Diagram:
    """Check both valuation conditions and build the diagram.

    ``edge_labels`` is keyed by half-edges or by edges (frozensets).
    ``vertex_labels`` is keyed by vertex blocks or by any half-edge of the
    vertex.  ``scheme`` is a :class:`Scheme` or anything exposing
    ``vertex_type_ok`` (category backends do).
    """
    g = pg.graph
    labels: dict = {}
    for k, x in edge_labels.items():
        hs = [k] if isinstance(k, str) else list(k)
        for h in hs:
            if h not in g.half_edges:
                raise GraphError(f"unknown half-edge {h!r}")
            if h in labels and labels[h] != x:
                raise NotSigmaInvariant(h)
            labels[h] = x
    for h in g.half_edges:
        if h not in labels:
            raise SchemeError(f"half-edge {h!r} is unlabelled")
        if labels[g.sigma[h]] != labels[h]:
            raise NotSigmaInvariant(h)
    is_object = getattr(scheme, "is_object", None)
    if is_object is not None:
        for h, x in labels.items():
            if not is_object(x):
                raise NotInScheme(f"label {x!r} of {h!r} is not an object")
    vl: dict = {}
    for k, f in vertex_labels.items():
        vl[_resolve_vertex(pg, k)] = f
    real = set(g.real_vertices)
    for v in vl:
        if v not in real:
            raise VertexTypeMismatch(v, "only real vertices carry morphisms")
    for v in real:
        if v not in vl:
            raise VertexTypeMismatch(v, "unlabelled vertex")
        f = vl[v]
        ins = tuple(labels[h] for h in pg.vertex_inputs(v))
        outs = tuple(labels[h] for h in pg.vertex_outputs(v))
        if not scheme.vertex_type_ok(f, ins, outs):
            raise VertexTypeMismatch(v, scheme.vertex_type_detail(f, ins, outs))
    return Diagram(pg, labels, vl)


def empty_diagram() -> Diagram:
    return Diagram(empty_planar(), {}, {})


def prime_diagram(f: Any, src: Iterable, tgt: Iterable) -> Diagram:
    """``i_m(f)``: one vertex labelled ``f`` with legs labelled by its source and target."""
    src, tgt = tuple(src), tuple(tgt)
    pg = prime(len(src), len(tgt))
    labels = {f"i{k}": x for k, x in enumerate(src)}
    labels.update({f"o{k}": y for k, y in enumerate(tgt)})
    return Diagram(pg, labels, {pg.graph.real_vertices[0]: f})


def identity_diagram(word: Iterable) -> Diagram:
    """The invertible diagram on ``word``."""
    word = tuple(word)
    pg = identity(len(word))
    labels = {}
    for x, h in zip(word, pg.inputs):
        labels[h] = x
        labels[pg.graph.sigma[h]] = x
    return Diagram(pg, labels, {})


def _prefixed_labels(d: Diagram, p: str) -> tuple:
    return ({p + h: x for h, x in d.edge_labels.items()},
            {frozenset(p + h for h in v): f for v, f in d.vertex_labels.items()})


def tensor_diagram(d1: Diagram, d2: Diagram) -> Diagram:
    pg = tensor_planar(d1.planar, d2.planar)
    e1, v1 = _prefixed_labels(d1, "L:")
    e2, v2 = _prefixed_labels(d2, "R:")
    e1.update(e2)
    v1.update(v2)
    return Diagram(pg, e1, v1)


def compose_diagram(d1: Diagram, d2: Diagram) -> Diagram:
    """``d2 o d1``: the outputs of ``d1`` are plugged into the inputs of ``d2``."""
    c, d = d1.cod, d2.dom
    if len(c) != len(d):
        raise NotComposable(min(len(c), len(d)), f"{len(c)} outputs against {len(d)} inputs")
    for k, (x, y) in enumerate(zip(c, d)):
        if x != y:
            raise NotComposable(k, f"{x!r} != {y!r}")
    pg = compose_planar(d1.planar, d2.planar)
    src = {"L:": d1, "R:": d2}
    labels = {h: src[h[:2]].edge_labels[h[2:]] for h in pg.graph.half_edges}
    vl = {}
    for v in pg.graph.real_vertices:
        h = next(iter(v))
        orig = src[h[:2]]
        vl[v] = orig.vertex_labels[orig.planar.graph.block_of(h[2:])]
    return Diagram(pg, labels, vl)


def pushforward(phi: SchemeMorphism, d: Diagram) -> Diagram:
    """``[Gamma, phi_*(gamma)]``."""
    return Diagram(
        d.planar,
        {h: phi.on_objects(x) for h, x in d.edge_labels.items()},
        {v: phi.on_morphisms(f) for v, f in d.vertex_labels.items()},
    )


# -- fissus diagrams -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FissusDiagram:
    diagram: Diagram
    p_in: LinearPartition
    p_out: LinearPartition

    def __post_init__(self):
        m, n = self.diagram.planar.arity
        if self.p_in.length != m or self.p_out.length != n:
            raise SchemeError(f"partitions of lengths ({self.p_in.length},{self.p_out.length}) on a ({m},{n}) diagram")

    @property
    def bracketed_dom(self) -> tuple:
        return tuple(self.p_in.blocks(self.diagram.dom))

    @property
    def bracketed_cod(self) -> tuple:
        return tuple(self.p_out.blocks(self.diagram.cod))

    def key(self) -> tuple:
        return (self.diagram.key(), self.p_in.sizes, self.p_out.sizes)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FissusDiagram):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"FissusDiagram({self.bracketed_dom!r} -> {self.bracketed_cod!r})"


def fissus_dom_cod(fd: FissusDiagram) -> tuple:
    return fd.bracketed_dom, fd.bracketed_cod


def tensor_fissus(a: FissusDiagram, b: FissusDiagram) -> FissusDiagram:
    return FissusDiagram(tensor_diagram(a.diagram, b.diagram),
                         partition_product(a.p_in, b.p_in), partition_product(a.p_out, b.p_out))


def compose_fissus(a: FissusDiagram, b: FissusDiagram) -> FissusDiagram:
    """``b o a``; the bracketed codomain of ``a`` must equal the bracketed domain of ``b``."""
    if a.p_out != b.p_in:
        raise NotComposable(0, f"brackets {a.p_out.sizes} against {b.p_in.sizes}")
    return FissusDiagram(compose_diagram(a.diagram, b.diagram), a.p_in, b.p_out)


def pushforward_fissus(phi: SchemeMorphism, fd: FissusDiagram) -> FissusDiagram:
    return FissusDiagram(pushforward(phi, fd.diagram), fd.p_in, fd.p_out)
