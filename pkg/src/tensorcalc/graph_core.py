"""Half-edge pre-graphs, graphs and oriented graphs.

A pre-graph is a triple ``(H, P, sigma)``: a finite set of half-edges, a
partition of it into vertices and an involution whose orbits are edges.
Everything else (legs, virtual edges, real vertices, ...) is derived.
Values are immutable; every operation returns a new value.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Any, Iterable, Mapping

__all__ = [
    "GraphError",
    "NonInvolutive",
    "PartitionNotCovering",
    "DuplicateId",
    "VirtualVertexTooBig",
    "BlockNotInGraph",
    "NotALeg",
    "InnerNotReduced",
    "NotABijection",
    "NotARealVertex",
    "NotRealVertices",
    "NotASplitting",
    "BadSign",
    "ArityMismatch",
    "PreGraph",
    "Graph",
    "OrientedGraph",
    "AnchoredGraph",
    "build_pregraph",
    "as_graph",
    "classify",
    "relabel",
    "prefixed",
    "tensor_graph",
    "subgraph",
    "quotient",
    "subgraph_and_quotient",
    "self_graft",
    "graft",
    "substitute",
    "merge",
    "split_and_fuse",
    "orient",
    "reachability",
    "is_admissible",
    "anchor",
    "compose_anchored",
    "unitary_graph",
    "corolla",
    "structural_key",
]


class GraphError(ValueError):
    """Base class for structural errors."""


class NonInvolutive(GraphError):
    pass


class PartitionNotCovering(GraphError):
    pass


class DuplicateId(GraphError):
    pass


class VirtualVertexTooBig(GraphError):
    def __init__(self, block: Iterable[str]):
        self.block = tuple(sorted(block))
        super().__init__(f"virtual vertex of degree {len(self.block)}: {list(self.block)}")


class BlockNotInGraph(GraphError):
    pass


class NotALeg(GraphError):
    pass


class InnerNotReduced(GraphError):
    pass


class NotABijection(GraphError):
    pass


class NotARealVertex(GraphError):
    pass


class NotRealVertices(GraphError):
    pass


class NotASplitting(GraphError):
    def __init__(self, axiom: int, witness: Any):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"splitting axiom {axiom} violated at {witness!r}")


class BadSign(GraphError):
    pass


class ArityMismatch(GraphError):
    pass


def _block_key(block: frozenset) -> tuple:
    return tuple(sorted(block))


class PreGraph:
    """A finite pre-graph ``(H, P, sigma)``.

    Use :func:`build_pregraph` for validated construction; the constructor
    trusts its input.
    """

    __slots__ = ("half_edges", "blocks", "sigma", "_block_of", "_hash")

    def __init__(self, half_edges: Iterable[str], blocks: Iterable[Iterable[str]], sigma: Mapping[str, str]):
        self.half_edges = frozenset(half_edges)
        bl = [frozenset(b) for b in blocks]
        self.blocks = tuple(sorted(bl, key=_block_key))
        self.sigma = MappingProxyType(dict(sigma))
        self._block_of = {h: b for b in self.blocks for h in b}
        self._hash = None

    # -- basic structure -------------------------------------------------
    def block_of(self, h: str) -> frozenset:
        return self._block_of[h]

    def edge_of(self, h: str) -> frozenset:
        return frozenset((h, self.sigma[h]))

    @property
    def edges(self) -> frozenset:
        return frozenset(self.edge_of(h) for h in self.half_edges)

    def is_virtual_edge(self, e: frozenset) -> bool:
        if len(e) != 2:
            return False
        a, b = tuple(e)
        return self._block_of[a] is self._block_of[b] or self._block_of[a] == self._block_of[b]

    @property
    def virtual_edges(self) -> frozenset:
        return frozenset(e for e in self.edges if self.is_virtual_edge(e))

    @property
    def real_edges(self) -> frozenset:
        return frozenset(e for e in self.edges if not self.is_virtual_edge(e))

    def is_virtual_vertex(self, v: frozenset) -> bool:
        return any(self.sigma[h] != h and self.sigma[h] in v for h in v)

    @property
    def virtual_vertices(self) -> tuple:
        return tuple(v for v in self.blocks if self.is_virtual_vertex(v))

    @property
    def real_vertices(self) -> tuple:
        return tuple(v for v in self.blocks if not self.is_virtual_vertex(v))

    @property
    def real_legs(self) -> frozenset:
        return frozenset(h for h in self.half_edges if self.sigma[h] == h)

    @property
    def virtual_legs(self) -> frozenset:
        return frozenset(h for e in self.virtual_edges for h in e)

    @property
    def legs(self) -> frozenset:
        return self.real_legs | self.virtual_legs

    def is_leg(self, h: str) -> bool:
        s = self.sigma[h]
        return s == h or s in self._block_of[h]

    @property
    def inner_edges(self) -> frozenset:
        return frozenset(e for e in self.real_edges if len(e) == 2)

    @property
    def external_edges(self) -> frozenset:
        return frozenset(e for e in self.edges if len(e) == 1 or self.is_virtual_edge(e))

    @property
    def external_vertices(self) -> tuple:
        legs = self.legs
        return tuple(v for v in self.blocks if v & legs)

    @property
    def inner_vertices(self) -> tuple:
        legs = self.legs
        return tuple(v for v in self.blocks if not (v & legs))

    # -- equality --------------------------------------------------------
    def _key(self) -> tuple:
        return (
            tuple(sorted(self.half_edges)),
            tuple(_block_key(b) for b in self.blocks),
            tuple(sorted(self.sigma.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        blocks = [list(_block_key(b)) for b in self.blocks]
        pairs = sorted({tuple(sorted(e)) for e in self.edges if len(e) == 2})
        return f"{type(self).__name__}(blocks={blocks}, pairs={pairs})"


class Graph(PreGraph):
    """A pre-graph with no virtual vertex of degree three or more."""

    __slots__ = ()

    @property
    def is_empty(self) -> bool:
        return not self.half_edges

    @property
    def is_reduced(self) -> bool:
        return bool(self.half_edges) and not self.virtual_edges

    @property
    def is_closed(self) -> bool:
        return not self.legs

    @property
    def is_unitary(self) -> bool:
        return len(self.blocks) == 1 and len(self.half_edges) == 2 and bool(self.virtual_edges)

    @property
    def is_prime(self) -> bool:
        return len(self.blocks) == 1 and not self.virtual_edges and all(self.sigma[h] == h for h in self.half_edges)

    @property
    def is_elementary(self) -> bool:
        return not self.inner_edges

    @property
    def is_invertible(self) -> bool:
        return not self.real_vertices

    @property
    def is_essential_prime(self) -> bool:
        return self.is_elementary and len(self.real_vertices) == 1


def build_pregraph(half_edges: Iterable[str], blocks: Iterable[Iterable[str]], pairs: Iterable[Iterable[str]] = ()) -> PreGraph:
    """Validate raw data and build a :class:`PreGraph`.

    ``pairs`` lists the 2-element involution orbits; all other half-edges
    are fixed points.  A pair ``(a, a)`` is accepted as a fixed point.
    """
    hs = list(half_edges)
    seen: set = set()
    for h in hs:
        if h in seen:
            raise DuplicateId(f"duplicate half-edge id {h!r}")
        seen.add(h)
    hset = frozenset(hs)
    covered: set = set()
    blist = []
    for b in blocks:
        b = list(b)
        if not b:
            raise PartitionNotCovering("empty block")
        for h in b:
            if h not in hset:
                raise PartitionNotCovering(f"block member {h!r} is not a half-edge")
            if h in covered:
                raise PartitionNotCovering(f"half-edge {h!r} lies in two blocks")
            covered.add(h)
        blist.append(b)
    if covered != hset:
        missing = sorted(hset - covered)
        raise PartitionNotCovering(f"half-edges not covered: {missing}")
    sigma = {h: h for h in hs}
    assigned: set = set()
    for p in pairs:
        p = list(p)
        if len(p) != 2:
            raise NonInvolutive(f"involution pair must have two entries: {p!r}")
        a, b = p
        for x in (a, b):
            if x not in hset:
                raise NonInvolutive(f"unknown half-edge {x!r} in involution")
        if a == b:
            if a in assigned:
                raise NonInvolutive(f"half-edge {a!r} paired twice")
            assigned.add(a)
            continue
        if a in assigned or b in assigned:
            raise NonInvolutive(f"half-edge paired twice in ({a!r}, {b!r})")
        assigned.update((a, b))
        sigma[a] = b
        sigma[b] = a
    return PreGraph(hs, blist, sigma)


def _check_involution(sigma: Mapping[str, str], hset: frozenset) -> None:
    for h, s in sigma.items():
        if s not in hset or sigma.get(s) != h:
            raise NonInvolutive(f"sigma(sigma({h!r})) != {h!r}")


def pregraph_from_map(half_edges: Iterable[str], blocks: Iterable[Iterable[str]], sigma: Mapping[str, str]) -> PreGraph:
    """Build a pre-graph from an explicit self-map, checking sigma^2 = id."""
    hs = list(half_edges)
    hset = frozenset(hs)
    if set(sigma) != hset:
        raise NonInvolutive("involution is not total on half-edges")
    _check_involution(sigma, hset)
    pairs = {tuple(sorted((h, s))) for h, s in sigma.items() if h != s}
    return build_pregraph(hs, blocks, pairs)


def as_graph(p: PreGraph) -> Graph:
    for v in p.blocks:
        if len(v) >= 3 and p.is_virtual_vertex(v):
            raise VirtualVertexTooBig(v)
    if isinstance(p, Graph):
        return p
    return Graph(p.half_edges, p.blocks, p.sigma)


def classify(g: Graph) -> dict:
    """Derived sets and class flags of a graph, as plain sorted lists."""

    def edges(es):
        return sorted(sorted(e) for e in es)

    def verts(vs):
        return sorted(sorted(v) for v in vs)

    real_v = g.real_vertices
    prime = g.is_prime
    return {
        "half_edges": sorted(g.half_edges),
        "real_edges": edges(g.real_edges),
        "virtual_edges": edges(g.virtual_edges),
        "real_legs": sorted(g.real_legs),
        "virtual_legs": sorted(g.virtual_legs),
        "inner_edges": edges(g.inner_edges),
        "external_edges": edges(g.external_edges),
        "inner_vertices": verts(g.inner_vertices),
        "external_vertices": verts(g.external_vertices),
        "real_vertices": verts(real_v),
        "virtual_vertices": verts(g.virtual_vertices),
        "flags": {
            "empty": g.is_empty,
            "unitary": g.is_unitary,
            "prime": prime,
            "essential_prime": g.is_essential_prime,
            "elementary": g.is_elementary,
            "invertible": g.is_invertible,
            "reduced": g.is_reduced,
            "closed": g.is_closed,
        },
        "corolla_valency": len(g.half_edges) if prime else None,
    }


# -- renaming --------------------------------------------------------------


def relabel(g: PreGraph, mapping: Mapping[str, str]) -> PreGraph:
    """Rename half-edges along an injective map, keeping the class of ``g``."""
    new = [mapping[h] for h in g.half_edges]
    if len(set(new)) != len(new):
        raise DuplicateId("relabelling is not injective")
    cls = type(g) if type(g) in (PreGraph, Graph) else PreGraph
    return cls(new, [[mapping[h] for h in b] for b in g.blocks], {mapping[h]: mapping[s] for h, s in g.sigma.items()})


def prefixed(g: PreGraph, prefix: str) -> PreGraph:
    return relabel(g, {h: prefix + h for h in g.half_edges})


def structural_key(g: PreGraph) -> tuple:
    """Isomorphism-invariant signature of a pre-graph.

    Sorted orbit signature only: equal keys do not imply isomorphism in
    general, but differing keys always rule it out.
    """
    vsig = []
    for v in g.blocks:
        kinds = sorted(
            "leg" if g.sigma[h] == h else ("virt" if g.sigma[h] in v else "inner")
            for h in v
        )
        vsig.append(tuple(kinds))
    return (len(g.half_edges), tuple(sorted(vsig)), len(g.inner_edges))


def unitary_graph(a: str = "-", b: str = "+") -> Graph:
    return Graph([a, b], [[a, b]], {a: b, b: a})


def corolla(half_edges: Iterable[str]) -> Graph:
    hs = list(half_edges)
    return Graph(hs, [hs] if hs else [], {h: h for h in hs})


# -- operations --------------------------------------------------------------


def tensor_graph(g1: Graph, g2: Graph) -> Graph:
    a = prefixed(g1, "L:")
    b = prefixed(g2, "R:")
    sigma = dict(a.sigma)
    sigma.update(b.sigma)
    return Graph(a.half_edges | b.half_edges, a.blocks + b.blocks, sigma)


def _resolve_blocks(g: PreGraph, blocks: Iterable[Iterable[str]]) -> list:
    out = []
    for b in blocks:
        fb = frozenset(b)
        if fb not in g.blocks:
            raise BlockNotInGraph(f"{sorted(fb)} is not a vertex")
        out.append(fb)
    return out


def subgraph(g: Graph, blocks: Iterable[Iterable[str]]) -> Graph:
    sel = _resolve_blocks(g, blocks)
    hs = frozenset().union(*sel) if sel else frozenset()
    sigma = {h: (g.sigma[h] if g.sigma[h] in hs else h) for h in hs}
    return as_graph(PreGraph(hs, sel, sigma))


def quotient(g: Graph, blocks: Iterable[Iterable[str]]) -> Graph:
    sel = _resolve_blocks(g, blocks)
    sub = subgraph(g, sel)
    legs = sub.legs
    keep = (g.half_edges - sub.half_edges) | legs
    rest = [b for b in g.blocks if b not in sel]
    new_blocks = rest + ([legs] if legs else [])
    # a leg of the subgraph whose partner also lies inside it (a virtual
    # edge) becomes a fixed point of the fused vertex
    sigma = {h: (h if h in legs and g.sigma[h] in sub.half_edges else g.sigma[h]) for h in keep}
    return as_graph(PreGraph(keep, new_blocks, sigma))


def subgraph_and_quotient(g: Graph, blocks: Iterable[Iterable[str]]) -> tuple:
    blocks = list(blocks)
    return subgraph(g, blocks), quotient(g, blocks)


def self_graft(g: PreGraph, h1: str, h2: str) -> PreGraph:
    """Self-grafting of ``g`` along two distinct legs (four cases)."""
    for h in (h1, h2):
        if h not in g.half_edges or not g.is_leg(h):
            raise NotALeg(h)
    if h1 == h2:
        raise NotALeg(f"cannot graft {h1!r} to itself")
    s = dict(g.sigma)
    r1 = g.sigma[h1] == h1
    r2 = g.sigma[h2] == h2
    if r1 and r2:
        s[h1], s[h2] = h2, h1
        return PreGraph(g.half_edges, g.blocks, s)
    if not r1 and not r2:
        s1, s2 = g.sigma[h1], g.sigma[h2]
        if s1 == h2:
            raise NotALeg("grafting the two ends of one virtual edge leaves a closed circle")
        drop = {h1, h2}
        hs = g.half_edges - drop
        blocks = [b for b in g.blocks if not (b & drop)] + [frozenset((s1, s2))]
        sigma = {h: s[h] for h in hs}
        sigma[s1], sigma[s2] = s2, s1
        return PreGraph(hs, blocks, sigma)
    real, virt = (h1, h2) if r1 else (h2, h1)
    drop = {virt, g.sigma[virt]}
    hs = g.half_edges - drop
    blocks = [b for b in g.blocks if not (b & drop)]
    return PreGraph(hs, blocks, {h: s[h] for h in hs})


def graft(g1: Graph, h1: str, g2: Graph, h2: str) -> Graph:
    """Graft ``g1`` and ``g2`` along legs ``h1`` and ``h2``.

    Half-edges of the result carry the prefixes ``L:`` and ``R:``.
    """
    if h1 not in g1.half_edges or not g1.is_leg(h1):
        raise NotALeg(h1)
    if h2 not in g2.half_edges or not g2.is_leg(h2):
        raise NotALeg(h2)
    return as_graph(self_graft(tensor_graph(g1, g2), "L:" + h1, "R:" + h2))


def substitute(outer: Graph, v: Iterable[str], theta: Mapping[str, str], inner: Graph) -> Graph:
    """Substitute ``inner`` for the real vertex ``v`` of ``outer``.

    ``theta`` is a bijection from the half-edges of ``v`` onto the legs of
    ``inner``.  Outer half-edges get prefix ``L:`` and inner ones ``R:``.
    """
    v = frozenset(v)
    if v not in outer.blocks or outer.is_virtual_vertex(v):
        raise NotARealVertex(f"{sorted(v)} is not a real vertex")
    if not inner.is_reduced:
        raise InnerNotReduced("inner graph must be non-empty with no virtual edge")
    legs1 = inner.legs
    if set(theta) != set(v) or set(theta.values()) != set(legs1) or len(set(theta.values())) != len(theta):
        raise NotABijection("theta must be a bijection from v onto Leg(inner)")
    inv = {b: a for a, b in theta.items()}
    o = lambda h: "L:" + h  # noqa: E731
    i = lambda h: "R:" + h  # noqa: E731
    sigma: dict = {}
    for h in outer.half_edges - v:
        s = outer.sigma[h]
        sigma[o(h)] = i(theta[s]) if s in v else o(s)
    for h in inner.half_edges:
        if h not in legs1:
            sigma[i(h)] = i(inner.sigma[h])
            continue
        w = inv[h]
        if outer.is_leg(w):
            sigma[i(h)] = i(h)
        else:
            sigma[i(h)] = o(outer.sigma[w])
    hs = [o(h) for h in outer.half_edges - v] + [i(h) for h in inner.half_edges]
    blocks = [[o(h) for h in b] for b in outer.blocks if b != v] + [[i(h) for h in b] for b in inner.blocks]
    return as_graph(PreGraph(hs, blocks, sigma))


def merge(g: Graph, v1: Iterable[str], v2: Iterable[str]) -> Graph:
    a, b = frozenset(v1), frozenset(v2)
    for x in (a, b):
        if x not in g.blocks or g.is_virtual_vertex(x):
            raise NotRealVertices(f"{sorted(x)} is not a real vertex")
    if a == b:
        raise NotRealVertices("cannot merge a vertex with itself")
    blocks = [x for x in g.blocks if x not in (a, b)] + [a | b]
    return as_graph(PreGraph(g.half_edges, blocks, g.sigma))


def split_and_fuse(g: Graph, relation: Iterable[Iterable[str]]) -> Graph:
    """Fusion ``(H/~, P/~, sigma/~)`` along a splitting relation.

    ``relation`` lists the equivalence classes; unlisted half-edges are
    singletons.  Only half-edges that are related and share a vertex are
    fused, so each thick edge becomes one edge.  A fused half-edge is named
    by joining its members with ``|``.
    """
    cls: dict = {}
    for idx, c in enumerate(relation):
        for h in c:
            if h not in g.half_edges:
                raise NotASplitting(0, h)
            if h in cls:
                raise NotASplitting(0, h)
            cls[h] = idx
    blk = g.block_of
    # unlisted half-edges take the forced identification across their edge
    nxt = len(cls)
    for h in sorted(g.half_edges):
        if h in cls:
            continue
        s = g.sigma[h]
        if s != h and blk(h) != blk(s) and s in cls:
            cls[h] = cls[s]
        else:
            cls[h] = nxt
            if s != h and blk(h) != blk(s):
                cls[s] = nxt
            nxt += 1
    for h in g.half_edges:
        s = g.sigma[h]
        if s == h:
            continue
        if blk(h) != blk(s) and cls[h] != cls[s]:
            raise NotASplitting(1, (h, s))
        if blk(h) == blk(s) and cls[h] == cls[s]:
            raise NotASplitting(3, (h, s))
    local: dict = {}
    for h in g.half_edges:
        local.setdefault((cls[h], blk(h)), []).append(h)
    for members in local.values():
        imgs = {cls[g.sigma[h]] for h in members}
        if len(imgs) != 1:
            raise NotASplitting(2, tuple(sorted(members)))
    name = {}
    for members in local.values():
        n = "|".join(sorted(members))
        for h in members:
            name[h] = n
    sigma: dict = {}
    for members in local.values():
        imgs = {name[g.sigma[h]] for h in members}
        if len(imgs) != 1:
            raise NotASplitting(2, tuple(sorted(members)))
        sigma[name[members[0]]] = imgs.pop()
    _check_involution(sigma, frozenset(sigma))
    blocks = [{name[h] for h in b} for b in g.blocks]
    return as_graph(PreGraph(set(name.values()), blocks, sigma))


# -- orientation ---------------------------------------------------------


class OrientedGraph:
    """A graph with a sign ``+`` (input side) or ``-`` (output side) per half-edge."""

    __slots__ = ("graph", "sign", "_cache")

    def __init__(self, graph: Graph, sign: Mapping[str, str]):
        self.graph = graph
        self.sign = MappingProxyType(dict(sign))
        self._cache: dict = {}

    # vertices
    def inputs_of(self, v: frozenset) -> frozenset:
        return frozenset(h for h in v if self.sign[h] == "+")

    def outputs_of(self, v: frozenset) -> frozenset:
        return frozenset(h for h in v if self.sign[h] == "-")

    @property
    def inputs(self) -> frozenset:
        return frozenset(h for h in self.graph.legs if self.sign[h] == "+")

    @property
    def outputs(self) -> frozenset:
        return frozenset(h for h in self.graph.legs if self.sign[h] == "-")

    @property
    def is_directed(self) -> bool:
        return all(self.inputs_of(v) and self.outputs_of(v) for v in self.graph.blocks)

    def source(self, e: frozenset):
        """Real source vertex of an edge, or None."""
        g = self.graph
        if g.is_virtual_edge(e):
            return None
        for h in e:
            if self.sign[h] == "-":
                return g.block_of(h)
        return None

    def target(self, e: frozenset):
        g = self.graph
        if g.is_virtual_edge(e):
            return None
        for h in e:
            if self.sign[h] == "+":
                return g.block_of(h)
        return None

    def _succ(self) -> dict:
        """Edge adjacency: e -> edges leaving the real target vertex of e."""
        if "succ" not in self._cache:
            g = self.graph
            out_edges: dict = {}
            for e in g.edges:
                s = self.source(e)
                if s is not None:
                    out_edges.setdefault(s, []).append(e)
            self._cache["succ"] = {e: tuple(out_edges.get(self.target(e), ())) for e in g.edges}
        return self._cache["succ"]

    def descendants(self, e: frozenset) -> frozenset:
        """All edges strictly reachable from ``e`` by a directed path."""
        memo = self._cache.setdefault("desc", {})
        if e in memo:
            return memo[e]
        succ = self._succ()
        seen: set = set()
        dq = deque(succ[e])
        while dq:
            x = dq.popleft()
            if x in seen:
                continue
            seen.add(x)
            dq.extend(succ[x])
        memo[e] = frozenset(seen)
        return memo[e]

    def edge_reaches(self, e1: frozenset, e2: frozenset) -> bool:
        return e2 in self.descendants(e1)

    @property
    def is_acyclic(self) -> bool:
        return all(not self.edge_reaches(e, e) for e in self.graph.edges)

    @property
    def is_progressive(self) -> bool:
        return self.is_directed and self.is_acyclic

    def vertex_reaches(self, v1: frozenset, v2: frozenset) -> bool:
        for e in self.graph.edges:
            if self.source(e) == v1:
                if self.target(e) == v2:
                    return True
                if any(self.target(x) == v2 for x in self.descendants(e)):
                    return True
        return False

    def edge_reaches_vertex(self, e: frozenset, v: frozenset) -> bool:
        if self.target(e) == v:
            return True
        return any(self.target(x) == v for x in self.descendants(e))

    def vertex_reaches_edge(self, v: frozenset, e: frozenset) -> bool:
        for x in self.graph.edges:
            if self.source(x) == v and (x == e or self.edge_reaches(x, e)):
                return True
        return False

    def _key(self) -> tuple:
        return (self.graph._key(), tuple(sorted(self.sign.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"OrientedGraph({self.graph!r}, sign={dict(sorted(self.sign.items()))})"


def orient(g: Graph, sign: Mapping[str, str]) -> OrientedGraph:
    if set(sign) != set(g.half_edges):
        raise BadSign("sign must be total on half-edges")
    for h, s in sign.items():
        if s not in ("+", "-"):
            raise BadSign(f"sign of {h!r} must be '+' or '-'")
    for e in g.edges:
        if len(e) == 2:
            a, b = tuple(e)
            if sign[a] == sign[b]:
                raise BadSign(f"edge {sorted(e)} has equal signs")
    return OrientedGraph(g, sign)


def reachability(og: OrientedGraph, a: tuple, b: tuple) -> bool:
    """Directed-path query between edges and vertices.

    ``a`` and ``b`` are tagged as ``("e", h)`` for the edge containing the
    half-edge ``h`` or ``("v", h)`` for the vertex containing it.
    """
    g = og.graph

    def resolve(x):
        kind, h = x
        if kind == "e":
            return "e", g.edge_of(h)
        if kind == "v":
            return "v", g.block_of(h)
        raise ValueError(f"unknown kind {kind!r}")

    ka, xa = resolve(a)
    kb, xb = resolve(b)
    if ka == "e" and kb == "e":
        return og.edge_reaches(xa, xb)
    if ka == "v" and kb == "v":
        return og.vertex_reaches(xa, xb)
    if ka == "e":
        return og.edge_reaches_vertex(xa, xb)
    return og.vertex_reaches_edge(xa, xb)


def is_admissible(og: OrientedGraph, blocks: Iterable[Iterable[str]]) -> bool:
    """A subgraph is admissible when no directed path leaves it and comes
    back, i.e. no outside vertex lies between two of its vertices."""
    sel = set(_resolve_blocks(og.graph, blocks))
    for w in og.graph.blocks:
        if w in sel:
            continue
        if any(og.vertex_reaches(v, w) for v in sel) and any(og.vertex_reaches(w, v) for v in sel):
            return False
    return True


# -- anchored graphs and composition -------------------------------------


@dataclass(frozen=True)
class AnchoredGraph:
    directed: OrientedGraph
    input_order: tuple
    output_order: tuple

    def __post_init__(self):
        if set(self.input_order) != set(self.directed.inputs) or len(self.input_order) != len(self.directed.inputs):
            raise GraphError("input order must enumerate In(graph)")
        if set(self.output_order) != set(self.directed.outputs) or len(self.output_order) != len(self.directed.outputs):
            raise GraphError("output order must enumerate Out(graph)")


def anchor(og: OrientedGraph, input_order: Iterable[str], output_order: Iterable[str]) -> AnchoredGraph:
    return AnchoredGraph(og, tuple(input_order), tuple(output_order))


def compose_anchored(g1: AnchoredGraph, g2: AnchoredGraph) -> AnchoredGraph:
    """``g2 o g1``: outputs of ``g1`` grafted in order onto inputs of ``g2``."""
    n = len(g1.output_order)
    if n != len(g2.input_order):
        raise ArityMismatch(f"|Out(g1)|={n} but |In(g2)|={len(g2.input_order)}")
    a, b = g1.directed, g2.directed
    pre = tensor_graph(a.graph, b.graph)
    sign = {"L:" + h: s for h, s in a.sign.items()}
    sign.update({"R:" + h: s for h, s in b.sign.items()})
    # A virtual leg grafted onto a real one disappears together with its
    # partner; the partner's role as a boundary leg passes to the real leg.
    moved: dict = {}
    for o, i in zip(g1.output_order, g2.input_order):
        lo, ri = "L:" + o, "R:" + i
        ro, vi = a.graph.sigma[o] == o, b.graph.sigma[i] == i
        if not ro and vi:
            moved["L:" + a.graph.sigma[o]] = ri
        elif ro and not vi:
            moved["R:" + b.graph.sigma[i]] = lo
        pre = self_graft(pre, lo, ri)
    g = as_graph(pre)
    og = OrientedGraph(g, {h: sign[h] for h in g.half_edges})
    ins = tuple(moved.get("L:" + h, "L:" + h) for h in g1.input_order)
    outs = tuple(moved.get("R:" + h, "R:" + h) for h in g2.output_order)
    return AnchoredGraph(og, ins, outs)
