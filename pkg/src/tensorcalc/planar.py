"""Progressive planar graphs.

A planar graph is a progressive oriented graph with a total order on its
edges satisfying

* P1: ``e1 -> e2`` implies ``e1 < e2``;
* P2: ``e1 -> e2`` and ``e1 < e3 < e2`` imply ``e3 -> e2`` or ``e1 -> e3``.

Edges are stored as frozensets of half-edges.  Reachability ``->`` is the
strict directed-path relation of :class:`~tensorcalc.graph_core.OrientedGraph`.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graph_core import (
    ArityMismatch,
    Graph,
    GraphError,
    OrientedGraph,
    anchor,
    compose_anchored,
    tensor_graph,
)

__all__ = [
    "PlanarError",
    "NotProgressive",
    "P1Violation",
    "P2Violation",
    "NoCompatibleOrder",
    "InconsistentInput",
    "LengthMismatch",
    "PlanarGraph",
    "LinearPartition",
    "FissusPlanarGraph",
    "check_p1",
    "check_p2",
    "check_p2r",
    "check_p2l",
    "planar_report",
    "validate_planar",
    "half_edge_order",
    "vertex_order",
    "canonical_key",
    "canonical_form",
    "equivalent",
    "induced_structure",
    "infer_planar_order",
    "compatible_orders",
    "tensor_planar",
    "compose_planar",
    "composition_segments",
    "decompose",
    "decomposition_steps",
    "compose_all",
    "fuse_legs",
    "DecompositionStep",
    "opposite",
    "partition_product",
    "partition_compose",
    "partition_equiv",
    "coarse_grain",
    "contraction",
    "render_layered",
    "to_dot",
    "empty_planar",
    "unitary",
    "identity",
    "prime",
]


class PlanarError(GraphError):
    pass


class NotProgressive(PlanarError):
    pass


class P1Violation(PlanarError):
    def __init__(self, e1, e2):
        self.edges = (e1, e2)
        super().__init__(f"P1 violated: {sorted(e1)} -> {sorted(e2)} but not ordered before it")


class P2Violation(PlanarError):
    def __init__(self, e1, e2, e3, report=None):
        self.edges = (e1, e2, e3)
        self.report = report or {}
        super().__init__(
            f"P2 violated: {sorted(e1)} -> {sorted(e2)} with {sorted(e3)} between them; diagnostics {self.report}"
        )


class NoCompatibleOrder(PlanarError):
    pass


class InconsistentInput(PlanarError):
    pass


class LengthMismatch(PlanarError):
    pass


# -- axiom checkers -----------------------------------------------------


def _ranked(order: Sequence[frozenset]) -> dict:
    return {e: i for i, e in enumerate(order)}


def check_p1(og: OrientedGraph, order: Sequence[frozenset]):
    """First pair violating P1, or None."""
    r = _ranked(order)
    for e1 in order:
        for e2 in og.descendants(e1):
            if e2 != e1 and r[e1] > r[e2]:
                return (e1, e2)
    return None


def check_p2(og: OrientedGraph, order: Sequence[frozenset]):
    """First triple ``(e1, e2, e3)`` violating P2, or None."""
    r = _ranked(order)
    reach = og.edge_reaches
    for e1 in order:
        for e2 in og.descendants(e1):
            if e2 == e1 or r[e1] > r[e2]:
                continue
            for e3 in order[r[e1] + 1 : r[e2]]:
                if not reach(e3, e2) and not reach(e1, e3):
                    return (e1, e2, e3)
    return None


def check_p2r(og: OrientedGraph, order: Sequence[frozenset]):
    """First triple violating the right-hand variant of P2, or None."""
    r = _ranked(order)
    reach = og.edge_reaches
    for e1 in order:
        for e2 in og.descendants(e1):
            if e2 == e1:
                continue
            for e3 in order[r[e1] + 1 :]:
                if e3 == e2 or reach(e1, e3):
                    continue
                if not (r[e2] < r[e3] or reach(e3, e2)):
                    return (e1, e2, e3)
    return None


def check_p2l(og: OrientedGraph, order: Sequence[frozenset]):
    """First triple violating the left-hand variant of P2, or None."""
    r = _ranked(order)
    reach = og.edge_reaches
    for e1 in order:
        for e2 in og.descendants(e1):
            if e2 == e1:
                continue
            for e3 in order[: r[e2]]:
                if e3 == e1 or reach(e3, e2):
                    continue
                if not (r[e3] < r[e1] or reach(e1, e3)):
                    return (e1, e2, e3)
    return None


def planar_report(og: OrientedGraph, order: Sequence[frozenset]) -> dict:
    return {
        "progressive": og.is_progressive,
        "P1": check_p1(og, order) is None,
        "P2": check_p2(og, order) is None,
        "P2r": check_p2r(og, order) is None,
        "P2l": check_p2l(og, order) is None,
    }


# -- planar graphs -------------------------------------------------------


class PlanarGraph:
    """A progressive oriented graph with a planar edge order.

    Construct through :func:`validate_planar`; the constructor trusts its input.
    """

    __slots__ = ("og", "order", "_rank", "_cache")

    def __init__(self, og: OrientedGraph, order: Iterable[frozenset]):
        self.og = og
        self.order = tuple(frozenset(e) for e in order)
        self._rank = _ranked(self.order)
        self._cache: dict = {}

    @property
    def graph(self) -> Graph:
        return self.og.graph

    @property
    def sign(self):
        return self.og.sign

    def rank(self, e: frozenset) -> int:
        return self._rank[e]

    def edge_of(self, h: str) -> frozenset:
        return self.graph.edge_of(h)

    @property
    def inputs(self) -> tuple:
        """Input legs in planar order."""
        if "inputs" not in self._cache:
            self._cache["inputs"] = tuple(sorted(self.og.inputs, key=lambda h: self._rank[self.edge_of(h)]))
        return self._cache["inputs"]

    @property
    def outputs(self) -> tuple:
        if "outputs" not in self._cache:
            self._cache["outputs"] = tuple(sorted(self.og.outputs, key=lambda h: self._rank[self.edge_of(h)]))
        return self._cache["outputs"]

    @property
    def arity(self) -> tuple:
        return (len(self.inputs), len(self.outputs))

    def vertex_inputs(self, v: frozenset) -> tuple:
        return tuple(sorted(self.og.inputs_of(v), key=lambda h: self._rank[self.edge_of(h)]))

    def vertex_outputs(self, v: frozenset) -> tuple:
        return tuple(sorted(self.og.outputs_of(v), key=lambda h: self._rank[self.edge_of(h)]))

    def half_edge_key(self, h: str) -> tuple:
        return (self._rank[self.edge_of(h)], 0 if self.og.sign[h] == "-" else 1)

    @property
    def half_edges_in_order(self) -> tuple:
        if "hord" not in self._cache:
            self._cache["hord"] = tuple(sorted(self.graph.half_edges, key=self.half_edge_key))
        return self._cache["hord"]

    # reflexive extremal inputs / outputs of an edge
    def _reach_eq(self, a: frozenset, b: frozenset) -> bool:
        return a == b or self.og.edge_reaches(a, b)

    def i_min(self, e: frozenset):
        xs = [i for i in self.inputs if self._reach_eq(self.edge_of(i), e)]
        return xs[0] if xs else None

    def i_max(self, e: frozenset):
        xs = [i for i in self.inputs if self._reach_eq(self.edge_of(i), e)]
        return xs[-1] if xs else None

    def o_min(self, e: frozenset):
        xs = [o for o in self.outputs if self._reach_eq(e, self.edge_of(o))]
        return xs[0] if xs else None

    def o_max(self, e: frozenset):
        xs = [o for o in self.outputs if self._reach_eq(e, self.edge_of(o))]
        return xs[-1] if xs else None

    @property
    def real_vertices(self) -> tuple:
        return self.graph.real_vertices

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlanarGraph):
            return NotImplemented
        return self.og == other.og and self.order == other.order

    def __hash__(self) -> int:
        return hash((self.og, self.order))

    def __repr__(self) -> str:
        m, n = self.arity
        return f"PlanarGraph(({m},{n}), vertices={len(self.real_vertices)}, edges={len(self.order)})"


def _resolve_order(og: OrientedGraph, order: Iterable) -> tuple:
    g = og.graph
    out = []
    for x in order:
        if isinstance(x, str):
            if x not in g.half_edges:
                raise PlanarError(f"unknown half-edge {x!r} in edge order")
            out.append(g.edge_of(x))
        else:
            out.append(frozenset(x))
    if len(out) != len(set(out)) or set(out) != set(g.edges):
        raise PlanarError("edge order must list every edge exactly once")
    return tuple(out)


def validate_planar(og: OrientedGraph, order: Iterable) -> PlanarGraph:
    """Check P1 and P2 and return the planar graph.

    ``order`` may list edges as frozensets or by any member half-edge.
    """
    if not og.is_directed:
        raise NotProgressive("some vertex has no input or no output")
    if not og.is_acyclic:
        raise NotProgressive("graph has a directed circuit")
    order = _resolve_order(og, order)
    bad = check_p1(og, order)
    if bad:
        raise P1Violation(*bad)
    bad = check_p2(og, order)
    if bad:
        raise P2Violation(*bad, report=planar_report(og, order))
    return PlanarGraph(og, order)


def half_edge_order(pg: PlanarGraph) -> tuple:
    return pg.half_edges_in_order


def vertex_order(pg: PlanarGraph) -> tuple:
    """Real vertices sorted by the induced vertex order."""
    og = pg.og

    def before(v1, v2) -> bool:
        if og.vertex_reaches(v1, v2):
            return True
        omax = pg.vertex_outputs(v1)[-1]
        imin = pg.vertex_inputs(v2)[0]
        return pg.rank(pg.edge_of(omax)) < pg.rank(pg.edge_of(imin))

    def cmp(a, b):
        if a == b:
            return 0
        return -1 if before(a, b) else 1

    return tuple(sorted(pg.real_vertices, key=functools.cmp_to_key(cmp)))


# -- canonical forms -------------------------------------------------------


def canonical_key(pg: PlanarGraph) -> tuple:
    """Complete invariant: equal keys iff the planar graphs are equivalent."""
    if "ckey" in pg._cache:
        return pg._cache["ckey"]
    hord = pg.half_edges_in_order
    idx = {h: i for i, h in enumerate(hord)}
    g = pg.graph
    blocks = tuple(sorted(tuple(sorted(idx[h] for h in b)) for b in g.blocks))
    sigma = tuple(idx[g.sigma[h]] for h in hord)
    sign = tuple(pg.sign[h] for h in hord)
    key = (len(hord), blocks, sigma, sign)
    pg._cache["ckey"] = key
    return key


def canonical_renaming(pg: PlanarGraph) -> dict:
    return {h: f"h{i}" for i, h in enumerate(pg.half_edges_in_order)}


def _rename_planar(pg: PlanarGraph, mapping: Mapping[str, str]) -> PlanarGraph:
    g = pg.graph
    ng = Graph([mapping[h] for h in g.half_edges], [[mapping[h] for h in b] for b in g.blocks],
               {mapping[h]: mapping[s] for h, s in g.sigma.items()})
    og = OrientedGraph(ng, {mapping[h]: s for h, s in pg.sign.items()})
    order = [frozenset(mapping[h] for h in e) for e in pg.order]
    return PlanarGraph(og, order)


def canonical_form(pg: PlanarGraph) -> PlanarGraph:
    return _rename_planar(pg, canonical_renaming(pg))


def equivalent(p1: PlanarGraph, p2: PlanarGraph) -> bool:
    return canonical_key(p1) == canonical_key(p2)


# -- inference of the planar order ----------------------------------------


def induced_structure(pg: PlanarGraph) -> tuple:
    """Polarization ``{v: (inputs, outputs)}`` and anchors ``(inputs, outputs)``."""
    pol = {v: (pg.vertex_inputs(v), pg.vertex_outputs(v)) for v in pg.graph.blocks}
    return pol, (pg.inputs, pg.outputs)


def _check_structure(og: OrientedGraph, polarization, anchors):
    g = og.graph
    for v in g.blocks:
        if v not in polarization:
            raise InconsistentInput(f"no polarization for vertex {sorted(v)}")
        ins, outs = polarization[v]
        if set(ins) != og.inputs_of(v) or len(ins) != len(set(ins)):
            raise InconsistentInput(f"input order of {sorted(v)} is not a permutation of In(v)")
        if set(outs) != og.outputs_of(v) or len(outs) != len(set(outs)):
            raise InconsistentInput(f"output order of {sorted(v)} is not a permutation of Out(v)")
    ins, outs = anchors
    if set(ins) != og.inputs or len(ins) != len(set(ins)):
        raise InconsistentInput("anchor inputs are not a permutation of In(graph)")
    if set(outs) != og.outputs or len(outs) != len(set(outs)):
        raise InconsistentInput("anchor outputs are not a permutation of Out(graph)")


def infer_planar_order(og: OrientedGraph, polarization: Mapping, anchors: tuple) -> PlanarGraph:
    """The unique planar order compatible with polarization and anchors.

    Pairs of edges are compared by reachability, else by the last input
    above each edge when no vertex lies above both, else by the outputs of
    a maximal common ancestor vertex.
    """
    if not og.is_progressive:
        raise NotProgressive("graph is not progressive")
    _check_structure(og, polarization, anchors)
    g = og.graph
    in_pos = {h: k for k, h in enumerate(anchors[0])}
    out_pos: dict = {}
    for v, (_, outs) in polarization.items():
        for k, h in enumerate(outs):
            out_pos[h] = k
    edges = sorted(g.edges, key=lambda e: sorted(e))
    reach = og.edge_reaches

    def reach_eq(a, b):
        return a == b or reach(a, b)

    above_inputs = {e: [i for i in anchors[0] if reach_eq(g.edge_of(i), e)] for e in edges}
    vertices = list(g.real_vertices)
    ancestors = {e: {v for v in vertices if og.vertex_reaches_edge(v, e)} for e in edges}

    def cmp(e1, e2) -> int:
        if e1 == e2:
            return 0
        if reach(e1, e2):
            return -1
        if reach(e2, e1):
            return 1
        common = ancestors[e1] & ancestors[e2]
        if not common:
            a1, a2 = above_inputs[e1], above_inputs[e2]
            if not a1 or not a2:
                raise NoCompatibleOrder(f"edge without an input above it: {sorted(e1)} or {sorted(e2)}")
            return -1 if in_pos[a1[-1]] < in_pos[a2[-1]] else (1 if in_pos[a1[-1]] > in_pos[a2[-1]] else 0)
        vmax = [v for v in common if not any(w != v and og.vertex_reaches(v, w) for w in common)]
        v = min(vmax, key=lambda x: sorted(x))
        o1 = [h for h in og.outputs_of(v) if reach_eq(g.edge_of(h), e1)]
        o2 = [h for h in og.outputs_of(v) if reach_eq(g.edge_of(h), e2)]
        if not o1 or not o2 or set(o1) & set(o2):
            raise NoCompatibleOrder(f"no separating outputs for {sorted(e1)} and {sorted(e2)}")
        if max(out_pos[h] for h in o1) < min(out_pos[h] for h in o2):
            return -1
        if min(out_pos[h] for h in o1) > max(out_pos[h] for h in o2):
            return 1
        raise NoCompatibleOrder(f"outputs towards {sorted(e1)} and {sorted(e2)} interleave")

    try:
        order = sorted(edges, key=functools.cmp_to_key(cmp))
    except NoCompatibleOrder:
        raise
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if cmp(order[a], order[b]) != -1:
                raise NoCompatibleOrder("pairwise comparison is not a linear order")
    order = tuple(order)
    if check_p1(og, order) or check_p2(og, order):
        raise NoCompatibleOrder("inferred order violates the planar axioms")
    pg = PlanarGraph(og, order)
    pol2, anc2 = induced_structure(pg)
    for v in g.blocks:
        if tuple(polarization[v][0]) != pol2[v][0] or tuple(polarization[v][1]) != pol2[v][1]:
            raise NoCompatibleOrder(f"polarization at {sorted(v)} is not realised")
    if tuple(anchors[0]) != anc2[0] or tuple(anchors[1]) != anc2[1]:
        raise NoCompatibleOrder("anchors are not realised")
    return pg


def compatible_orders(og: OrientedGraph, polarization: Mapping, anchors: tuple, limit: int | None = None) -> list:
    """Exhaustive search: every order satisfying P1, P2 and compatibility.

    Enumerates linear extensions of edge reachability, pruned by the
    precedences that polarization and anchors force.
    """
    g = og.graph
    edges = sorted(g.edges, key=lambda e: sorted(e))
    pred = {e: set() for e in edges}
    for e in edges:
        for d in og.descendants(e):
            if d != e:
                pred[d].add(e)
    chains = [list(anchors[0]), list(anchors[1])]
    for v in g.blocks:
        chains.extend([list(polarization[v][0]), list(polarization[v][1])])
    for ch in chains:
        for a, b in zip(ch, ch[1:]):
            ea, eb = g.edge_of(a), g.edge_of(b)
            if ea != eb:
                pred[eb].add(ea)
    found: list = []
    prefix: list = []
    placed: set = set()

    def rec():
        if limit is not None and len(found) >= limit:
            return
        if len(prefix) == len(edges):
            order = tuple(prefix)
            if check_p2(og, order) is None:
                found.append(order)
            return
        for e in edges:
            if e in placed or not pred[e] <= placed:
                continue
            prefix.append(e)
            placed.add(e)
            rec()
            prefix.pop()
            placed.discard(e)

    rec()
    return found


# -- small planar graphs ---------------------------------------------------


def empty_planar() -> PlanarGraph:
    return PlanarGraph(OrientedGraph(Graph([], [], {}), {}), [])


def unitary() -> PlanarGraph:
    g = Graph(["in", "out"], [["in", "out"]], {"in": "out", "out": "in"})
    og = OrientedGraph(g, {"in": "+", "out": "-"})
    return PlanarGraph(og, [frozenset(("in", "out"))])


def prime(m: int, n: int) -> PlanarGraph:
    """The prime (m, n) planar graph: one vertex with m inputs and n outputs."""
    if m < 1 or n < 1:
        raise PlanarError("a prime planar graph needs at least one input and one output")
    ins = [f"i{k}" for k in range(m)]
    outs = [f"o{k}" for k in range(n)]
    hs = ins + outs
    g = Graph(hs, [hs], {h: h for h in hs})
    sign = {h: "+" for h in ins}
    sign.update({h: "-" for h in outs})
    return PlanarGraph(OrientedGraph(g, sign), [frozenset((h,)) for h in hs])


def identity(n: int) -> PlanarGraph:
    out = empty_planar()
    for _ in range(n):
        out = tensor_planar(out, unitary())
    return out


# -- tensor and composition ------------------------------------------------


def _prefix_edge(e: frozenset, p: str) -> frozenset:
    return frozenset(p + h for h in e)


def tensor_planar(p1: PlanarGraph, p2: PlanarGraph) -> PlanarGraph:
    g = tensor_graph(p1.graph, p2.graph)
    sign = {"L:" + h: s for h, s in p1.sign.items()}
    sign.update({"R:" + h: s for h, s in p2.sign.items()})
    order = [_prefix_edge(e, "L:") for e in p1.order] + [_prefix_edge(e, "R:") for e in p2.order]
    return PlanarGraph(OrientedGraph(g, sign), order)


def composition_segments(p1: PlanarGraph, p2: PlanarGraph) -> tuple:
    """Basic segments ``(Q_1..Q_n, P_1..P_n)`` as lists of edges of p1 and p2."""
    outs = [p1.edge_of(o) for o in p1.outputs]
    ins = [p2.edge_of(i) for i in p2.inputs]
    n = len(outs)
    qs, ps = [], []
    prev = -1
    for k in range(n):
        r = p1.rank(outs[k])
        qs.append(list(p1.order[prev + 1 : r]))
        prev = r
    if p1.order[prev + 1 :]:
        raise PlanarError("edges after the last output of the first graph")
    first = p2.rank(ins[0]) if n else len(p2.order)
    if p2.order[:first] and n:
        raise PlanarError("edges before the first input of the second graph")
    for k in range(n):
        lo = p2.rank(ins[k])
        hi = p2.rank(ins[k + 1]) if k + 1 < n else len(p2.order)
        ps.append(list(p2.order[lo + 1 : hi]))
    return qs, ps


def compose_planar(p1: PlanarGraph, p2: PlanarGraph) -> PlanarGraph:
    """``p2 o p1``: the outputs of p1 are plugged into the inputs of p2."""
    n = len(p1.outputs)
    if n != len(p2.inputs):
        raise ArityMismatch(f"|Out(p1)|={n} but |In(p2)|={len(p2.inputs)}")
    a1 = anchor(p1.og, p1.inputs, p1.outputs)
    a2 = anchor(p2.og, p2.inputs, p2.outputs)
    comp = compose_anchored(a1, a2)
    og = comp.directed
    if n == 0:
        order = [_prefix_edge(e, "L:") for e in p1.order] + [_prefix_edge(e, "R:") for e in p2.order]
        return PlanarGraph(og, order)
    qs, ps = composition_segments(p1, p2)
    s1, s2 = p1.graph.sigma, p2.graph.sigma
    order: list = []
    for k, (o, i) in enumerate(zip(p1.outputs, p2.inputs)):
        order.extend(_prefix_edge(e, "L:") for e in qs[k])
        ro, ri = s1[o] == o, s2[i] == i
        if ro and ri:
            new = frozenset(("L:" + o, "R:" + i))
        elif ro:
            new = frozenset(("L:" + o,))
        elif ri:
            new = frozenset(("R:" + i,))
        else:
            new = frozenset(("L:" + s1[o], "R:" + s2[i]))
        order.append(new)
        order.extend(_prefix_edge(e, "R:") for e in ps[k])
    return PlanarGraph(og, order)


# -- decomposition -----------------------------------------------------------


def _linear_extension(pg: PlanarGraph, rng: random.Random | None) -> list:
    """Real vertices in vertex order, or a random linear extension of reachability."""
    if rng is None:
        return list(vertex_order(pg))
    og = pg.og
    vs = list(pg.real_vertices)
    preds = {v: {w for w in vs if w != v and og.vertex_reaches(w, v)} for v in vs}
    done: list = []
    left = set(vs)
    while left:
        ready = sorted((v for v in left if preds[v] <= set(done)), key=lambda x: sorted(x))
        v = rng.choice(ready)
        done.append(v)
        left.discard(v)
    return done


@dataclass(frozen=True)
class DecompositionStep:
    """One layer: ``left`` wires, a vertex, ``right`` wires."""

    vertex: frozenset
    left: tuple
    right: tuple
    inputs: tuple
    outputs: tuple


def decomposition_steps(pg: PlanarGraph, rng: random.Random | None = None) -> list:
    """Layer data for a decomposition into essential primes.

    Each entry records the frontier edges to the left and right of the
    vertex together with the vertex's input and output half-edges in
    planar order.  With ``rng`` the vertices follow a random linear
    extension of reachability, otherwise the vertex order.
    """
    frontier = [pg.edge_of(i) for i in pg.inputs]
    steps = []
    for v in _linear_extension(pg, rng):
        ins = pg.vertex_inputs(v)
        outs = pg.vertex_outputs(v)
        in_edges = [pg.edge_of(h) for h in ins]
        try:
            start = frontier.index(in_edges[0])
        except ValueError as exc:
            raise PlanarError(f"inputs of {sorted(v)} are not on the frontier") from exc
        if frontier[start : start + len(in_edges)] != in_edges:
            raise PlanarError(f"inputs of {sorted(v)} are not consecutive on the frontier")
        left, right = tuple(frontier[:start]), tuple(frontier[start + len(in_edges) :])
        steps.append(DecompositionStep(v, left, right, ins, outs))
        frontier = list(left) + [pg.edge_of(h) for h in outs] + list(right)
    if frontier != [pg.edge_of(o) for o in pg.outputs]:
        raise PlanarError("decomposition frontier does not end at the outputs")
    return steps


def decompose(pg: PlanarGraph, rng: random.Random | None = None) -> list:
    """Essential prime layers whose composition, first to last, is ``pg``.

    Returns an empty list for invertible (including empty) graphs.
    """
    layers = []
    for st in decomposition_steps(pg, rng):
        layer = identity(len(st.left))
        layer = tensor_planar(layer, prime(len(st.inputs), len(st.outputs)))
        layer = tensor_planar(layer, identity(len(st.right)))
        layers.append(layer)
    return layers


def compose_all(layers: Sequence[PlanarGraph]) -> PlanarGraph:
    out = layers[0]
    for layer in layers[1:]:
        out = compose_planar(out, layer)
    return out


def opposite(pg: PlanarGraph) -> PlanarGraph:
    flip = {h: ("-" if s == "+" else "+") for h, s in pg.sign.items()}
    return PlanarGraph(OrientedGraph(pg.graph, flip), tuple(reversed(pg.order)))


# -- linear partitions ---------------------------------------------------------


@dataclass(frozen=True)
class LinearPartition:
    """A partition of a linear set into consecutive segments, by block sizes."""

    sizes: tuple

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        if any(s < 1 for s in self.sizes):
            raise LengthMismatch("block sizes must be positive")

    @property
    def length(self) -> int:
        return sum(self.sizes)

    def __len__(self) -> int:
        return len(self.sizes)

    @classmethod
    def trivial(cls, n: int) -> "LinearPartition":
        return cls((n,) if n else ())

    @classmethod
    def finest(cls, n: int) -> "LinearPartition":
        return cls((1,) * n)

    @property
    def is_trivial(self) -> bool:
        return len(self.sizes) <= 1

    @property
    def is_finest(self) -> bool:
        return all(s == 1 for s in self.sizes)

    def blocks(self, items: Sequence) -> list:
        """Split ``items`` into consecutive blocks of these sizes."""
        if len(items) != self.length:
            raise LengthMismatch(f"partition of length {self.length} applied to {len(items)} items")
        out, k = [], 0
        for s in self.sizes:
            out.append(tuple(items[k : k + s]))
            k += s
        return out

    def __repr__(self) -> str:
        return f"LinearPartition{self.sizes}"


def partition_product(p: LinearPartition, q: LinearPartition) -> LinearPartition:
    return LinearPartition(p.sizes + q.sizes)


def partition_compose(p: LinearPartition, q: LinearPartition) -> LinearPartition:
    """``P <| Q``: group the blocks of ``Q`` into ``|P|`` super-blocks by the sizes of ``P``."""
    if p.length != len(q):
        raise LengthMismatch(f"||P||={p.length} but |Q|={len(q)}")
    return LinearPartition(tuple(sum(b) for b in p.blocks(q.sizes)))


def partition_equiv(p: LinearPartition, q: LinearPartition) -> bool:
    return p.sizes == q.sizes


@dataclass(frozen=True)
class FissusPlanarGraph:
    planar: PlanarGraph
    p_in: LinearPartition
    p_out: LinearPartition

    def __post_init__(self):
        m, n = self.planar.arity
        if self.p_in.length != m or self.p_out.length != n:
            raise LengthMismatch(f"partitions of lengths ({self.p_in.length},{self.p_out.length}) on a ({m},{n}) graph")


def _corolla_planar(m: int, n: int) -> PlanarGraph:
    if m == 0 and n == 0:
        return empty_planar()
    ins = [f"I{k}" for k in range(m)]
    outs = [f"O{k}" for k in range(n)]
    hs = ins + outs
    g = Graph(hs, [hs], {h: h for h in hs})
    sign = {h: "+" for h in ins}
    sign.update({h: "-" for h in outs})
    return PlanarGraph(OrientedGraph(g, sign), [frozenset((h,)) for h in hs])


def coarse_grain(f: FissusPlanarGraph) -> PlanarGraph:
    """The prime ``(|P_in|, |P_out|)`` planar graph (empty when both are zero)."""
    return _corolla_planar(len(f.p_in), len(f.p_out))


def contraction(pg: PlanarGraph) -> PlanarGraph:
    """One vertex on ``In`` and ``Out``, inputs ordered before outputs."""
    ins, outs = pg.inputs, pg.outputs
    if not ins and not outs:
        return empty_planar()
    hs = list(ins) + list(outs)
    g = Graph(hs, [hs], {h: h for h in hs})
    sign = {h: pg.sign[h] for h in hs}
    return PlanarGraph(OrientedGraph(g, sign), [frozenset((h,)) for h in hs])


def fuse_legs(pg: PlanarGraph, p_in: LinearPartition, p_out: LinearPartition) -> PlanarGraph:
    """Fusion of the legs of a one-vertex graph along partitions of In and Out."""
    from .graph_core import split_and_fuse

    rel = [list(b) for b in p_in.blocks(pg.inputs)] + [list(b) for b in p_out.blocks(pg.outputs)]
    g = split_and_fuse(pg.graph, rel)
    name = {}
    for h in g.half_edges:
        for part in h.split("|"):
            name[part] = h
    sign = {name[h]: s for h, s in pg.sign.items()}
    order = []
    for e in pg.order:
        fe = frozenset(name[h] for h in e)
        if fe not in order:
            order.append(fe)
    return PlanarGraph(OrientedGraph(g, sign), order)


# -- layered rendering ------------------------------------------------------------


def render_layered(pg: PlanarGraph) -> dict:
    """Deterministic layered layout: one row per decomposition layer.

    Edges are named by their planar rank.  Row ``k`` lists the wires passing
    the vertex on each side and the vertex's input and output ranks.
    """
    vorder = list(vertex_order(pg))
    vrank = {v: k for k, v in enumerate(vorder)}
    rows = []
    for st in decomposition_steps(pg):
        rows.append({
            "vertex": f"v{vrank[st.vertex]}",
            "left": [pg.rank(e) for e in st.left],
            "inputs": [pg.rank(pg.edge_of(h)) for h in st.inputs],
            "outputs": [pg.rank(pg.edge_of(h)) for h in st.outputs],
            "right": [pg.rank(e) for e in st.right],
        })
    return {
        "inputs": [pg.rank(pg.edge_of(h)) for h in pg.inputs],
        "outputs": [pg.rank(pg.edge_of(h)) for h in pg.outputs],
        "rows": rows,
    }


def to_dot(pg: PlanarGraph) -> str:
    """DOT export with vertices ``v<rank>`` and edge labels equal to planar ranks."""
    vorder = list(vertex_order(pg))
    vname = {v: f"v{k}" for k, v in enumerate(vorder)}
    lines = ["digraph planar {", "  rankdir=TB;", "  node [shape=circle];"]
    for k, v in enumerate(vorder):
        lines.append(f'  {vname[v]} [label="{k}"];')
    boundary = []
    for e in pg.order:
        r = pg.rank(e)
        src = pg.og.source(e)
        tgt = pg.og.target(e)
        s = vname.get(src) if src is not None else None
        t = vname.get(tgt) if tgt is not None else None
        if s is None:
            s = f"in{r}"
            boundary.append(f'  {s} [shape=point, label=""];')
        if t is None:
            t = f"out{r}"
            boundary.append(f'  {t} [shape=point, label=""];')
        lines.append(f'  {s} -> {t} [label="{r}"];')
    lines[3:3] = boundary
    if vorder:
        lines.append("  { rank=same; " + " ".join(f"in{pg.rank(pg.edge_of(h))};" for h in pg.inputs) + " }")
        lines.append("  { rank=same; " + " ".join(f"out{pg.rank(pg.edge_of(h))};" for h in pg.outputs) + " }")
    lines.append("}")
    return "\n".join(lines) + "\n"
