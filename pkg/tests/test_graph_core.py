import itertools
import random

import pytest
from hypothesis import given, strategies as st

from worked_examples import composition_cases
from tensorcalc.generators import random_frontier_graph
from tensorcalc.graph_core import (
    ArityMismatch,
    BadSign,
    BlockNotInGraph,
    DuplicateId,
    GraphError,
    InnerNotReduced,
    NonInvolutive,
    NotABijection,
    NotALeg,
    NotARealVertex,
    NotASplitting,
    NotRealVertices,
    OrientedGraph,
    PartitionNotCovering,
    VirtualVertexTooBig,
    anchor,
    as_graph,
    build_pregraph,
    classify,
    compose_anchored,
    corolla,
    graft,
    is_admissible,
    merge,
    orient,
    pregraph_from_map,
    quotient,
    relabel,
    reachability,
    self_graft,
    split_and_fuse,
    structural_key,
    subgraph,
    subgraph_and_quotient,
    substitute,
    tensor_graph,
    unitary_graph,
)

seeds = st.integers(0, 2**32 - 1)


def bad_pregraph():
    hs = list("abcdefghijkl")
    blocks = [list("abcde"), list("fghij"), ["k", "l"]]
    return build_pregraph(hs, blocks, [["d", "f"], ["e", "g"], ["h", "i"], ["k", "l"]])


def sample_graph():
    hs = list("abcdefgjkl")
    blocks = [list("abcde"), list("fgj"), ["k", "l"]]
    return as_graph(build_pregraph(hs, blocks, [["d", "f"], ["e", "g"], ["k", "l"]]))


def sample_sign():
    return dict(a="+", b="+", e="+", c="-", d="-", f="+", g="-", j="-", k="+", l="-")


def random_graph(rng):
    og, _, _ = random_frontier_graph(rng, max_vertices=4, planar=rng.random() < 0.5)
    return og


# -- construction --------------------------------------------------------------


def test_bad_pregraph_edges():
    p = bad_pregraph()
    assert sorted(sorted(e) for e in p.edges) == [
        ["a"], ["b"], ["c"], ["d", "f"], ["e", "g"], ["h", "i"], ["j"], ["k", "l"],
    ]


def test_bad_pregraph_is_not_a_graph():
    with pytest.raises(VirtualVertexTooBig):
        as_graph(bad_pregraph())


def test_sample_graph_accepted():
    g = sample_graph()
    assert len(g.real_vertices) == 2
    assert [sorted(v) for v in g.virtual_vertices] == [["k", "l"]]


@pytest.mark.parametrize(
    "hs, blocks, pairs, err",
    [
        (["a", "a"], [["a"]], [], DuplicateId),
        (["a", "b"], [["a"]], [], PartitionNotCovering),
        (["a", "b"], [["a", "b"], ["b"]], [], PartitionNotCovering),
        (["a", "b"], [["a"], ["b"]], [["a", "c"]], GraphError),
    ],
)
def test_build_rejects(hs, blocks, pairs, err):
    with pytest.raises(err):
        build_pregraph(hs, blocks, pairs)


def test_non_involutive_map_rejected():
    with pytest.raises(NonInvolutive):
        pregraph_from_map(["a", "b", "c"], [["a", "b", "c"]], {"a": "b", "b": "c", "c": "a"})


# -- classification ------------------------------------------------------------


def test_classify_sample_graph():
    c = classify(sample_graph())
    assert c["real_legs"] == ["a", "b", "c", "j"]
    assert c["inner_edges"] == [["d", "f"], ["e", "g"]]
    assert c["virtual_edges"] == [["k", "l"]]
    assert not c["flags"]["reduced"]


def test_unitary_flags():
    f = classify(unitary_graph())["flags"]
    assert f["invertible"] and f["unitary"]
    assert not f["reduced"] and not f["prime"]


def test_corolla_is_prime():
    c = classify(corolla("abcde"))
    assert c["flags"]["prime"] and c["corolla_valency"] == 5


def test_empty_flags():
    f = classify(corolla([]))["flags"]
    assert f["empty"] and f["closed"]


@given(seeds)
def test_decompositions_are_disjoint_unions(seed):
    g = random_graph(random.Random(seed)).graph
    assert g.edges == g.virtual_edges | g.real_edges and not g.virtual_edges & g.real_edges
    assert set(g.blocks) == set(g.virtual_vertices) | set(g.real_vertices)
    assert not set(g.virtual_vertices) & set(g.real_vertices)
    assert g.legs == g.real_legs | g.virtual_legs and not g.real_legs & g.virtual_legs
    assert g.edges == g.inner_edges | g.external_edges and not g.inner_edges & g.external_edges


# -- tensor, subgraph, quotient -------------------------------------------------


def test_tensor_with_empty():
    g = sample_graph()
    assert structural_key(tensor_graph(g, corolla([]))) == structural_key(g)


@given(seeds)
def test_tensor_counts_and_associativity(seed):
    rng = random.Random(seed)
    a, b, c = (random_graph(rng).graph for _ in range(3))
    ab = tensor_graph(a, b)
    assert len(ab.blocks) == len(a.blocks) + len(b.blocks)
    assert structural_key(tensor_graph(ab, c)) == structural_key(tensor_graph(a, tensor_graph(b, c)))


def test_quotient_by_everything_is_corolla_on_legs():
    g = sample_graph()
    _, q = subgraph_and_quotient(g, g.blocks)
    assert q.is_prime
    assert q.half_edges == g.legs


def test_quotient_of_closed_graph_is_empty():
    g = as_graph(build_pregraph(["x", "y"], [["x"], ["y"]], [["x", "y"]]))
    assert quotient(g, g.blocks).is_empty


def test_subgraph_on_all_blocks_is_identity():
    g = sample_graph()
    assert subgraph(g, g.blocks) == g


def test_subgraph_severs_edges_into_legs():
    g = sample_graph()
    s, q = subgraph_and_quotient(g, [list("abcde")])
    assert s.legs == frozenset("abcde")
    assert q == g


def test_subgraph_unknown_block():
    with pytest.raises(BlockNotInGraph):
        subgraph(sample_graph(), [["a", "b"]])


# -- grafting and substitution ---------------------------------------------------


def test_graft_primes_gives_chain():
    g = graft(corolla(["h1", "h2"]), "h2", corolla(["h3", "h4"]), "h3")
    assert len(g.half_edges) == 4 and len(g.real_vertices) == 2
    assert g.legs == {"L:h1", "R:h4"}


def test_graft_prime_with_unitary():
    g = graft(corolla(["h1", "h2"]), "h2", unitary_graph("h3", "h4"), "h3")
    assert g.is_prime and g.legs == {"L:h1", "L:h2"}


def test_graft_unitaries():
    g = graft(unitary_graph("h1", "h2"), "h2", unitary_graph("h3", "h4"), "h3")
    assert g.is_unitary and g.half_edges == {"L:h1", "R:h4"}


def test_graft_not_a_leg():
    g = sample_graph()
    with pytest.raises(NotALeg):
        graft(g, "d", corolla(["x"]), "x")


def test_self_graft_can_leave_pregraph_class():
    p = self_graft(corolla(["a", "b", "c"]), "a", "b")
    with pytest.raises(VirtualVertexTooBig):
        as_graph(p)
    # on a 2-valent corolla the loop is read as a virtual vertex: a unitary graph
    assert as_graph(self_graft(corolla(["a", "b"]), "a", "b")).is_unitary


@given(seeds)
def test_graft_is_additive_on_real_parts(seed):
    rng = random.Random(seed)
    g1, g2 = random_graph(rng).graph, random_graph(rng).graph
    h1 = rng.choice(sorted(g1.legs))
    h2 = rng.choice(sorted(g2.legs))
    g = graft(g1, h1, g2, h2)
    assert len(g.real_vertices) == len(g1.real_vertices) + len(g2.real_vertices)
    # a real edge is gained when two real legs meet; virtual edges are absorbed
    r1, r2 = g1.sigma[h1] == h1, g2.sigma[h2] == h2
    expected = len(g1.real_edges) + len(g2.real_edges) - (1 if r1 and r2 else 0)
    assert len(g.real_edges) == expected


def test_substitute_into_quotient_recovers_inner():
    g = sample_graph()
    inner = subgraph(g, g.real_vertices)
    outer = quotient(g, g.real_vertices)
    v = next(b for b in outer.real_vertices)
    out = substitute(outer, v, {h: h for h in v}, inner)
    assert relabel(out, {h: h[2:] for h in out.half_edges}) == g


def test_substitute_prime_into_prime():
    outer = corolla(["a", "b", "c"])
    inner = corolla(["x", "y", "z"])
    out = substitute(outer, frozenset("abc"), {"a": "x", "b": "y", "c": "z"}, inner)
    assert out.is_prime and out.half_edges == {"R:x", "R:y", "R:z"}


def test_substitute_errors():
    outer = corolla(["a", "b"])
    with pytest.raises(NotABijection):
        substitute(outer, frozenset("ab"), {"a": "x", "b": "x"}, corolla(["x", "y"]))
    with pytest.raises(InnerNotReduced):
        substitute(outer, frozenset("ab"), {"a": "x", "b": "y"}, unitary_graph("x", "y"))
    with pytest.raises(NotARealVertex):
        substitute(unitary_graph("a", "b"), frozenset("ab"), {"a": "x", "b": "y"}, corolla(["x", "y"]))


@given(seeds)
def test_substitute_vertex_count(seed):
    rng = random.Random(seed)
    outer = random_graph(rng).graph
    if not outer.real_vertices:
        return
    v = rng.choice(outer.real_vertices)
    legs = sorted(v)
    inner = _chain_with_legs(len(legs), rng.randint(1, 3))
    theta = dict(zip(legs, sorted(inner.legs)))
    out = substitute(outer, v, theta, inner)
    assert len(out.real_vertices) == len(outer.real_vertices) - 1 + len(inner.real_vertices)


def _chain_with_legs(n, k):
    """``k`` vertices in a path, carrying ``n`` legs spread over them."""
    hs, blocks, pairs = [], [], []
    for i in range(k):
        blocks.append([])
    for j in range(n):
        h = f"l{j}"
        hs.append(h)
        blocks[j % k].append(h)
    for i in range(k - 1):
        a, b = f"p{i}", f"q{i}"
        hs += [a, b]
        blocks[i].append(a)
        blocks[i + 1].append(b)
        pairs.append([a, b])
    blocks = [b for b in blocks if b]
    return as_graph(build_pregraph(hs, blocks, pairs))


# -- merge and fusion ----------------------------------------------------------------


def test_merge_two_univalent_corollas():
    g = merge(tensor_graph(corolla(["a"]), corolla(["b"])), ["L:a"], ["R:b"])
    assert g.is_prime and len(g.half_edges) == 2


def test_merge_across_inner_edges_surfaces_error():
    g = sample_graph()
    with pytest.raises(VirtualVertexTooBig):
        merge(g, list("abcde"), list("fgj"))


def test_merge_rejects_virtual_or_same():
    g = sample_graph()
    with pytest.raises(NotRealVertices):
        merge(g, ["k", "l"], list("abcde"))
    with pytest.raises(NotRealVertices):
        merge(g, list("abcde"), list("abcde"))


@given(seeds)
def test_merge_reduces_vertex_count(seed):
    rng = random.Random(seed)
    g = tensor_graph(random_graph(rng).graph, corolla(["z"]))
    v1 = rng.choice(g.real_vertices)
    v2 = frozenset(["R:z"])
    if v1 == v2:
        return
    assert len(merge(g, v1, v2).blocks) == len(g.blocks) - 1


def test_fuse_thick_edge():
    g = split_and_fuse(sample_graph(), [list("de")])
    assert len(g.inner_edges) == 1
    e = next(iter(g.inner_edges))
    assert {g.block_of(h) for h in e} == set(g.real_vertices)


def test_finest_relation_is_identity():
    g = sample_graph()
    assert split_and_fuse(g, []) == g


@pytest.mark.parametrize("rel, axiom", [([["k", "l"]], 3), ([["a", "d"]], 2), ([["d"], ["f"]], 1), ([["d", "e", "f"], ["g"]], 1)])
def test_splitting_axioms(rel, axiom):
    with pytest.raises(NotASplitting) as e:
        split_and_fuse(sample_graph(), rel)
    assert e.value.axiom == axiom


# -- orientation -----------------------------------------------------------------------


def test_orientation_example():
    og = orient(sample_graph(), sample_sign())
    v1 = frozenset("abcde")
    assert og.inputs_of(v1) == {"a", "b", "e"}
    assert og.outputs_of(v1) == {"c", "d"}
    assert reachability(og, ("e", "d"), ("e", "e"))
    assert not og.is_progressive


def test_bad_sign():
    s = sample_sign()
    s["f"] = "-"
    with pytest.raises(BadSign):
        orient(sample_graph(), s)
    with pytest.raises(BadSign):
        orient(sample_graph(), {"a": "+"})


@given(seeds)
def test_no_edge_reaches_itself(seed):
    og = random_graph(random.Random(seed))
    g = og.graph
    for e in g.edges:
        assert not og.edge_reaches(e, e)
        for h in e:
            assert not reachability(og, ("e", h), ("e", h))


def _quotient_oriented(og, blocks):
    q = quotient(og.graph, blocks)
    return OrientedGraph(q, {h: og.sign[h] for h in q.half_edges})


@given(seeds)
def test_admissible_iff_quotient_directed(seed):
    og = random_graph(random.Random(seed))
    vs = list(og.graph.real_vertices)
    for r in range(1, len(vs) + 1):
        for sel in itertools.combinations(vs, r):
            assert is_admissible(og, sel) == _quotient_oriented(og, sel).is_acyclic


# -- anchored composition ------------------------------------------------------------------


@pytest.mark.parametrize("case", range(4))
def test_anchored_compositions(case):
    g1, g2, (kind, i, o) = composition_cases()[case]
    c = compose_anchored(g1, g2)
    g = c.directed.graph
    assert c.input_order == (i,) and c.output_order == (o,)
    if kind == "chain":
        assert len(g.real_vertices) == 2 and len(g.half_edges) == 4
    elif kind == "prime":
        assert g.is_prime
    else:
        assert g.is_unitary


def test_arity_mismatch():
    g1, _, _ = composition_cases()[0]
    with pytest.raises(ArityMismatch):
        compose_anchored(g1, anchor(orient(corolla(["x"]), {"x": "-"}), [], ["x"]))


def _random_anchored(rng, n_in):
    from tensorcalc.generators import random_planar_with_inputs

    pg = random_planar_with_inputs(rng, n_in, max_vertices=3)
    return anchor(pg.og, pg.inputs, pg.outputs)


def _renamed(ag, table):
    def f(h):
        for old, new in table:
            if h.startswith(old):
                return new + h[len(old):]
        raise AssertionError(h)

    og = ag.directed
    g = relabel(og.graph, {h: f(h) for h in og.graph.half_edges})
    sign = {f(h): s for h, s in og.sign.items()}
    return g, sign, tuple(map(f, ag.input_order)), tuple(map(f, ag.output_order))


@given(seeds)
def test_compose_anchored_associative(seed):
    rng = random.Random(seed)
    a = _random_anchored(rng, rng.randint(1, 3))
    b = _random_anchored(rng, len(a.output_order))
    c = _random_anchored(rng, len(b.output_order))
    left = compose_anchored(compose_anchored(a, b), c)
    right = compose_anchored(a, compose_anchored(b, c))
    lt = [("L:L:", "A:"), ("L:R:", "B:"), ("R:", "C:")]
    rt = [("L:", "A:"), ("R:L:", "B:"), ("R:R:", "C:")]
    assert _renamed(left, lt) == _renamed(right, rt)
