"""Seeded random generators for planar graphs, partitions and orders.

Planar graphs are grown by a frontier process: a row of open wires, into
which each new vertex is inserted over a consecutive run of wires.  The
positions give polarization and anchors, from which the planar order is
inferred.  With ``planar=False`` the consumed wires need not be
consecutive, which yields directed graphs that are usually not planar.
"""

from __future__ import annotations

import random
from typing import Sequence

from .graph_core import Graph, OrientedGraph
from .planar import LinearPartition, PlanarGraph, infer_planar_order

__all__ = [
    "random_frontier_graph",
    "frontier_process",
    "assemble_frontier",
    "random_diagram",
    "shuffled",
    "random_planar",
    "random_planar_with_inputs",
    "random_linear_extension",
    "random_partition",
    "all_partitions",
]


def frontier_process(rng: random.Random, m: int, nv: int, choose) -> tuple:
    """Run the frontier process for at most ``nv`` vertices.

    ``choose(v, frontier)`` returns ``(idx, b)``: the frontier positions the
    new vertex ``v`` consumes (in its input order) and its number of
    outputs, or ``None`` to stop.  Returns ``(consumed_by, vertex_io, frontier)``.
    """
    frontier: list = [("in", k) for k in range(m)]
    consumed_by: dict = {}
    vertex_io: list = []
    for v in range(nv):
        if not frontier:
            break
        pick = choose(v, list(frontier))
        if pick is None:
            break
        idx, b = pick
        taken = [frontier[i] for i in idx]
        for j, w in enumerate(taken):
            consumed_by[w] = (v, j)
        vertex_io.append((len(idx), b))
        new = [("out", v, j) for j in range(b)]
        pos = min(idx)
        gone = set(idx)
        rest = [w for i, w in enumerate(frontier) if i not in gone]
        frontier = rest[:pos] + new + rest[pos:]
    return consumed_by, vertex_io, frontier


def assemble_frontier(m: int, consumed_by: dict, vertex_io: list, frontier: list) -> tuple:
    """Graph, polarization, anchors and the half-edges of every wire token."""
    nv = len(vertex_io)
    half_edges: list = []
    blocks: dict = {v: [] for v in range(nv)}
    sigma: dict = {}
    sign: dict = {}
    vin = {v: [None] * vertex_io[v][0] for v in range(nv)}
    vout = {v: [f"v{v}o{j}" for j in range(vertex_io[v][1])] for v in range(nv)}
    wires: dict = {}
    anchors_in: list = []
    virtual_blocks: list = []
    for k in range(m):
        w = ("in", k)
        if w in consumed_by:
            v, j = consumed_by[w]
            h = f"v{v}i{j}"
            vin[v][j] = h
            sigma[h] = h
            anchors_in.append(h)
            wires[w] = (h,)
        else:
            a, b = f"u{k}+", f"u{k}-"
            sigma[a], sigma[b] = b, a
            sign[a], sign[b] = "+", "-"
            half_edges += [a, b]
            virtual_blocks.append([a, b])
            anchors_in.append(a)
            wires[w] = (a, b)
    for v in range(nv):
        for j, h in enumerate(vout[v]):
            sign[h] = "-"
            w = ("out", v, j)
            if w in consumed_by:
                u, i = consumed_by[w]
                t = f"v{u}i{i}"
                vin[u][i] = t
                sigma[h], sigma[t] = t, h
                wires[w] = (h, t)
            else:
                sigma[h] = h
                wires[w] = (h,)
    for v in range(nv):
        for h in vin[v]:
            sign[h] = "+"
            sigma.setdefault(h, h)
        blocks[v] = vin[v] + vout[v]
        half_edges += blocks[v]
    anchors_out = []
    for w in frontier:
        if w[0] == "in":
            anchors_out.append(f"u{w[1]}-")
        else:
            anchors_out.append(f"v{w[1]}o{w[2]}")
    g = Graph(half_edges, list(blocks.values()) + virtual_blocks, sigma)
    og = OrientedGraph(g, sign)
    pol = {}
    for v in range(nv):
        pol[g.block_of(vout[v][0])] = (tuple(vin[v]), tuple(vout[v]))
    for a, b in virtual_blocks:
        pol[g.block_of(a)] = ((a,), (b,))
    return og, pol, (tuple(anchors_in), tuple(anchors_out)), wires


def random_frontier_graph(
    rng: random.Random,
    max_vertices: int = 4,
    max_inputs: int = 3,
    max_in: int = 3,
    max_out: int = 3,
    planar: bool = True,
    min_vertices: int = 0,
    inputs: int | None = None,
):
    """Random progressive graph with polarization and anchors.

    Returns ``(og, polarization, anchors)``.  ``inputs`` fixes the number
    of input wires; with zero inputs the graph is empty.
    """
    m = rng.randint(1, max_inputs) if inputs is None else inputs
    nv = rng.randint(min_vertices, max_vertices)

    def choose(v, frontier):
        a = rng.randint(1, min(max_in, len(frontier)))
        if planar:
            s = rng.randint(0, len(frontier) - a)
            idx = list(range(s, s + a))
        else:
            idx = sorted(rng.sample(range(len(frontier)), a))
            rng.shuffle(idx)
        return idx, rng.randint(1, max_out)

    consumed_by, vertex_io, frontier = frontier_process(rng, m, nv, choose)
    og, pol, anchors, _ = assemble_frontier(m, consumed_by, vertex_io, frontier)
    return og, pol, anchors


def random_diagram(rng: random.Random, dom: Sequence, chooser, max_vertices: int = 4, min_vertices: int = 0):
    """Random planar diagram with domain ``dom``.

    ``chooser(rng, labels)`` receives the labels on the current frontier and
    returns ``(start, count, f, out_labels)``: the vertex labelled ``f``
    consumes ``labels[start:start+count]`` and emits ``out_labels``
    (nonempty).  ``None`` ends the growth early.
    """
    from .scheme_diagram import Diagram

    dom = tuple(dom)
    nv = rng.randint(min_vertices, max_vertices)
    label: dict = {("in", k): x for k, x in enumerate(dom)}
    vlabel: dict = {}

    def choose(v, frontier):
        pick = chooser(rng, tuple(label[w] for w in frontier))
        if pick is None:
            return None
        start, count, f, outs = pick
        if count < 1 or not outs:
            raise ValueError("a vertex needs at least one input and one output")
        vlabel[v] = f
        for j, y in enumerate(outs):
            label[("out", v, j)] = y
        return list(range(start, start + count)), len(outs)

    consumed_by, vertex_io, frontier = frontier_process(rng, len(dom), nv, choose)
    og, pol, anchors, wires = assemble_frontier(len(dom), consumed_by, vertex_io, frontier)
    pg = infer_planar_order(og, pol, anchors)
    edge_labels = {h: label[w] for w, hs in wires.items() for h in hs}
    vertex_labels = {pg.graph.block_of(f"v{v}o0"): f for v, f in vlabel.items() if v < len(vertex_io)}
    return Diagram(pg, edge_labels, vertex_labels)


def random_planar(rng: random.Random, **kw) -> PlanarGraph:
    og, pol, anchors = random_frontier_graph(rng, planar=True, **kw)
    return infer_planar_order(og, pol, anchors)


def random_planar_with_inputs(rng: random.Random, n: int, **kw) -> PlanarGraph:
    """Random planar graph with exactly ``n`` inputs."""
    og, pol, anchors = random_frontier_graph(rng, planar=True, inputs=n, **kw)
    return infer_planar_order(og, pol, anchors)


def random_linear_extension(og: OrientedGraph, rng: random.Random) -> tuple:
    edges = sorted(og.graph.edges, key=lambda e: sorted(e))
    preds = {e: set() for e in edges}
    for e in edges:
        for d in og.descendants(e):
            if d != e:
                preds[d].add(e)
    placed: list = []
    done: set = set()
    while len(placed) < len(edges):
        ready = [e for e in edges if e not in done and preds[e] <= done]
        e = rng.choice(ready)
        placed.append(e)
        done.add(e)
    return tuple(placed)


def random_partition(rng: random.Random, n: int, max_blocks: int | None = None) -> LinearPartition:
    """Random linear partition of a set of size ``n``."""
    if n == 0:
        return LinearPartition(())
    cuts = [k for k in range(1, n) if rng.random() < 0.5]
    if max_blocks is not None:
        while len(cuts) + 1 > max_blocks:
            cuts.pop(rng.randrange(len(cuts)))
    bounds = [0] + cuts + [n]
    return LinearPartition(tuple(b - a for a, b in zip(bounds, bounds[1:])))


def all_partitions(n: int) -> list:
    """All linear partitions of a set of size ``n`` (compositions of ``n``)."""
    if n == 0:
        return [LinearPartition(())]
    out = []
    for mask in range(1 << (n - 1)):
        sizes, run = [], 1
        for k in range(n - 1):
            if mask >> k & 1:
                sizes.append(run)
                run = 1
            else:
                run += 1
        sizes.append(run)
        out.append(LinearPartition(tuple(sizes)))
    return out


def shuffled(rng: random.Random, xs: Sequence) -> list:
    xs = list(xs)
    rng.shuffle(xs)
    return xs
