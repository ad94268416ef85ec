import itertools
import random

import pytest
from hypothesis import given, strategies as st

from worked_examples import (
    FIVE_VERTICES,
    two_vertex,
    five_vertex,
    five_vertex_json,
    five_vertex_swapped_json,
    vertex_names,
)
from tensorcalc import io_json
from tensorcalc.generators import (
    all_partitions,
    random_frontier_graph,
    random_linear_extension,
    random_partition,
    random_planar,
    random_planar_with_inputs,
)
from tensorcalc.graph_core import ArityMismatch, as_graph, build_pregraph, classify, orient
from tensorcalc.planar import (
    FissusPlanarGraph,
    LengthMismatch,
    LinearPartition,
    NoCompatibleOrder,
    NotProgressive,
    P1Violation,
    P2Violation,
    canonical_form,
    canonical_key,
    check_p2,
    check_p2l,
    check_p2r,
    coarse_grain,
    compatible_orders,
    compose_all,
    compose_planar,
    composition_segments,
    contraction,
    decompose,
    empty_planar,
    equivalent,
    fuse_legs,
    half_edge_order,
    identity,
    induced_structure,
    infer_planar_order,
    opposite,
    partition_compose,
    partition_equiv,
    partition_product,
    planar_report,
    prime,
    render_layered,
    tensor_planar,
    to_dot,
    unitary,
    validate_planar,
    vertex_order,
)

seeds = st.integers(0, 2**32 - 1)


def rand_pg(rng, **kw):
    kw.setdefault("max_vertices", 4)
    return random_planar(rng, **kw)


def ranks(pg, hs):
    return [pg.rank(pg.edge_of(h)) for h in hs]


# -- validation -------------------------------------------------------------------


def test_examples_are_planar():
    for pg in (two_vertex(), five_vertex()):
        assert all(planar_report(pg.og, pg.order).values())


def test_five_vertex_swap_5_9_breaks_order():
    with pytest.raises(P1Violation):
        io_json.parse_planar(five_vertex_swapped_json(5, 9))
    pg = five_vertex()
    order = list(pg.order)
    i, j = order.index(pg.edge_of("5-")), order.index(pg.edge_of("9-"))
    order[i], order[j] = order[j], order[i]
    assert check_p2(pg.og, order) is not None


def test_five_vertex_swap_9_10_is_a_p2_violation():
    with pytest.raises(P2Violation) as e:
        io_json.parse_planar(five_vertex_swapped_json(9, 10))
    assert e.value.report["P1"] and not e.value.report["P2"]


def test_cyclic_graph_is_not_progressive():
    g = as_graph(build_pregraph(["a", "b", "c", "d"], [["a", "d"], ["b", "c"]], [["a", "b"], ["c", "d"]]))
    og = orient(g, {"a": "-", "b": "+", "c": "-", "d": "+"})
    with pytest.raises(NotProgressive):
        validate_planar(og, [g.edge_of("a"), g.edge_of("c")])


def test_half_edge_counts():
    assert len(half_edge_order(two_vertex())) == 16
    assert len(half_edge_order(five_vertex())) == 22


def test_half_edge_order_follows_edge_numbers():
    pg = five_vertex()
    nums = [int(h.rstrip("+-")) for h in half_edge_order(pg)]
    assert nums == sorted(nums)
    # the output half precedes the input half on each inner edge
    for a, b in zip(half_edge_order(pg), half_edge_order(pg)[1:]):
        if a.rstrip("+-") == b.rstrip("+-"):
            assert a.endswith("-") and b.endswith("+")


def test_vertex_order_five_vertex():
    pg = five_vertex()
    names = vertex_names(pg, FIVE_VERTICES)
    assert [names[v] for v in vertex_order(pg)] == list("ABCDE")


@given(seeds)
def test_p2_variants_agree(seed):
    rng = random.Random(seed)
    og, _, _ = random_frontier_graph(rng, max_vertices=4, planar=rng.random() < 0.5)
    order = random_linear_extension(og, rng)
    a = check_p2(og, order) is None
    assert a == (check_p2r(og, order) is None) == (check_p2l(og, order) is None)


@given(seeds)
def test_vertex_order_properties(seed):
    pg = rand_pg(random.Random(seed))
    vo = vertex_order(pg)
    pos = {v: k for k, v in enumerate(vo)}
    og = pg.og
    for v1, v2 in itertools.permutations(vo, 2):
        if og.vertex_reaches(v1, v2):
            assert pos[v1] < pos[v2]
            for v3 in vo[pos[v1] + 1 : pos[v2]]:
                assert og.vertex_reaches(v1, v3) or og.vertex_reaches(v3, v2)


@given(seeds)
def test_extremal_inputs_and_outputs(seed):
    pg = rand_pg(random.Random(seed))
    og = pg.og
    reach = lambda a, b: a == b or og.edge_reaches(a, b)  # noqa: E731
    for e in pg.order:
        lo, hi = pg.i_min(e), pg.i_max(e)
        for i in pg.inputs:
            inside = lo is not None and pg.rank(pg.edge_of(lo)) <= pg.rank(pg.edge_of(i)) <= pg.rank(pg.edge_of(hi))
            assert inside == reach(pg.edge_of(i), e)
        lo, hi = pg.o_min(e), pg.o_max(e)
        for o in pg.outputs:
            inside = lo is not None and pg.rank(pg.edge_of(lo)) <= pg.rank(pg.edge_of(o)) <= pg.rank(pg.edge_of(hi))
            assert inside == reach(e, pg.edge_of(o))


# -- canonical forms and inference ------------------------------------------------


def test_examples_have_different_canonical_forms():
    assert canonical_key(two_vertex()) != canonical_key(five_vertex())


def test_canonical_form_forgets_names():
    pg = five_vertex()
    c = canonical_form(pg)
    assert equivalent(c, pg) and canonical_form(c) == c


def test_inference_recovers_five_vertex():
    pg = five_vertex()
    pol, anchors = induced_structure(pg)
    assert infer_planar_order(pg.og, pol, anchors).order == pg.order


def _crossing():
    hs = ["i", "a1", "a2", "b1", "b2", "o"]
    g = as_graph(build_pregraph(hs, [["i", "a1", "a2"], ["b1", "b2", "o"]], [["a1", "b1"], ["a2", "b2"]]))
    og = orient(g, {"i": "+", "a1": "-", "a2": "-", "b1": "+", "b2": "+", "o": "-"})
    pol = {g.block_of("i"): (("i",), ("a1", "a2")), g.block_of("o"): (("b2", "b1"), ("o",))}
    return og, pol, (("i",), ("o",))


def test_forced_crossing_has_no_order():
    og, pol, anchors = _crossing()
    with pytest.raises(NoCompatibleOrder):
        infer_planar_order(og, pol, anchors)
    assert compatible_orders(og, pol, anchors) == []


@given(seeds)
def test_inference_is_unique(seed):
    pg = rand_pg(random.Random(seed), max_vertices=3)
    pol, anchors = induced_structure(pg)
    assert compatible_orders(pg.og, pol, anchors) == [pg.order]


# -- tensor and composition -------------------------------------------------------


def test_tensor_unit():
    pg = five_vertex()
    assert equivalent(tensor_planar(pg, empty_planar()), pg)
    assert equivalent(tensor_planar(empty_planar(), pg), pg)


def test_tensor_order_concatenates():
    a, b = two_vertex(), five_vertex()
    t = tensor_planar(a, b)
    assert len(t.order) == len(a.order) + len(b.order)
    assert all(next(iter(e)).startswith("L:") for e in t.order[: len(a.order)])


@given(seeds)
def test_tensor_associative(seed):
    rng = random.Random(seed)
    a, b, c = (rand_pg(rng, max_vertices=2) for _ in range(3))
    assert equivalent(tensor_planar(tensor_planar(a, b), c), tensor_planar(a, tensor_planar(b, c)))


def _composable(rng, n, k=3):
    return random_planar_with_inputs(rng, n, max_vertices=k)


@given(seeds)
def test_compose_associative(seed):
    rng = random.Random(seed)
    a = rand_pg(rng, max_vertices=3)
    b = _composable(rng, len(a.outputs))
    c = _composable(rng, len(b.outputs))
    assert equivalent(compose_planar(compose_planar(a, b), c), compose_planar(a, compose_planar(b, c)))


@given(seeds)
def test_middle_four_interchange(seed):
    rng = random.Random(seed)
    p1, q1 = rand_pg(rng, max_vertices=2), rand_pg(rng, max_vertices=2)
    p2, q2 = _composable(rng, len(p1.outputs), 2), _composable(rng, len(q1.outputs), 2)
    lhs = tensor_planar(compose_planar(p1, p2), compose_planar(q1, q2))
    rhs = compose_planar(tensor_planar(p1, q1), tensor_planar(p2, q2))
    assert equivalent(lhs, rhs)


@given(seeds)
def test_identity_layers(seed):
    pg = rand_pg(random.Random(seed))
    m, n = pg.arity
    assert equivalent(compose_planar(identity(m), pg), pg)
    assert equivalent(compose_planar(pg, identity(n)), pg)


@given(seeds)
def test_segments_match_reachability(seed):
    rng = random.Random(seed)
    p1 = rand_pg(rng, max_vertices=3)
    p2 = _composable(rng, len(p1.outputs))
    qs, ps = composition_segments(p1, p2)
    for k, o in enumerate(p1.outputs):
        for e in qs[k]:
            assert p1.o_min(e) == o
    for k, i in enumerate(p2.inputs):
        for e in ps[k]:
            assert p2.i_max(e) == i


def test_arity_mismatch():
    with pytest.raises(ArityMismatch):
        compose_planar(prime(1, 2), prime(1, 1))


def test_zero_interface_composition():
    from tensorcalc.planar import _corolla_planar

    c = compose_planar(_corolla_planar(1, 0), _corolla_planar(0, 1))
    assert c.arity == (1, 1) and len(c.real_vertices) == 2
    # with nothing plugged, the order is that of the tensor product
    assert equivalent(c, tensor_planar(_corolla_planar(1, 0), _corolla_planar(0, 1)))
    assert compose_planar(empty_planar(), empty_planar()) == empty_planar()


# -- decomposition ------------------------------------------------------------------


def test_decompose_five_vertex():
    pg = five_vertex()
    layers = decompose(pg)
    assert len(layers) == 5
    assert equivalent(compose_all(layers), pg)
    assert equivalent(compose_planar(compose_all(layers[:-1]), layers[-1]), pg)


def test_decompose_corolla():
    p = prime(2, 3)
    layers = decompose(p)
    assert len(layers) == 1 and equivalent(layers[0], p)


def test_decompose_invertible():
    assert decompose(identity(3)) == []
    assert decompose(empty_planar()) == []


@given(seeds)
def test_decompose_round_trip(seed):
    rng = random.Random(seed)
    pg = rand_pg(rng, max_vertices=6)
    layers = decompose(pg, rng if rng.random() < 0.5 else None)
    assert len(layers) == len(pg.real_vertices)
    for layer in layers:
        assert len(layer.real_vertices) == 1
        assert all(classify(layer.graph)["flags"][k] is False for k in ("invertible", "empty"))
    if layers:
        assert equivalent(compose_all(layers), pg)


# -- opposite ----------------------------------------------------------------------


@given(seeds)
def test_opposite(seed):
    pg = rand_pg(random.Random(seed))
    op = opposite(pg)
    assert opposite(op) == pg
    assert op.arity == pg.arity[::-1]
    assert (check_p2l(pg.og, pg.order) is None) == (check_p2r(op.og, op.order) is None)


# -- linear partitions -----------------------------------------------------------------


def test_partition_sizes():
    p = LinearPartition((2, 4, 1, 3))
    assert len(p) == 4 and p.length == 10


def test_partition_compose_hand_case():
    assert partition_compose(LinearPartition((2, 1)), LinearPartition((1, 2, 3))).sizes == (3, 3)


def test_partition_compose_length_mismatch():
    with pytest.raises(LengthMismatch):
        partition_compose(LinearPartition((2,)), LinearPartition((1, 1, 1)))


def test_partition_product():
    assert partition_product(LinearPartition((1, 2)), LinearPartition((3,))).sizes == (1, 2, 3)


@pytest.mark.parametrize("n", range(0, 7))
def test_partition_degenerate_laws(n):
    for q in all_partitions(n):
        k = len(q)
        for p in all_partitions(k):
            r = partition_compose(p, q)
            if p.is_trivial or q.is_trivial:
                assert r.is_trivial
            if q.is_finest:
                assert partition_equiv(r, p)
            if p.is_finest:
                assert partition_equiv(r, q)


# -- coarse-graining and contraction ---------------------------------------------------


def test_coarse_grain_five_vertex():
    f = FissusPlanarGraph(five_vertex(), LinearPartition((2, 3, 1)), LinearPartition((1, 1, 1, 1)))
    assert equivalent(coarse_grain(f), prime(3, 4))


def test_coarse_grain_two_vertex():
    pg = two_vertex()
    # inputs 1,3,5 | 6,7,10,12 | 15 and outputs 2,4 | 8,9,11 | 13,14,16 in half-edge numbering
    f = FissusPlanarGraph(pg, LinearPartition((3, 4, 1)), LinearPartition((2, 3, 3)))
    assert equivalent(coarse_grain(f), prime(3, 3))


def test_coarse_grain_trivial_partitions():
    pg = five_vertex()
    f = FissusPlanarGraph(pg, LinearPartition.trivial(6), LinearPartition.trivial(4))
    assert equivalent(coarse_grain(f), prime(1, 1))


def test_fissus_length_mismatch():
    with pytest.raises(LengthMismatch):
        FissusPlanarGraph(five_vertex(), LinearPartition((2,)), LinearPartition((4,)))


def test_contraction():
    assert equivalent(contraction(five_vertex()), prime(6, 4))
    assert equivalent(contraction(unitary()), prime(1, 1))
    assert contraction(empty_planar()) == empty_planar()


@given(seeds)
def test_coarse_grain_factors_through_contraction(seed):
    rng = random.Random(seed)
    pg = rand_pg(rng)
    m, n = pg.arity
    p_in, p_out = random_partition(rng, m), random_partition(rng, n)
    f = FissusPlanarGraph(pg, p_in, p_out)
    fused = fuse_legs(contraction(pg), p_in, p_out)
    assert equivalent(coarse_grain(f), fused)


# -- rendering ----------------------------------------------------------------------


def test_render_prime():
    r = render_layered(prime(2, 3))
    assert len(r["rows"]) == 1
    assert len(r["rows"][0]["inputs"]) == 2 and len(r["rows"][0]["outputs"]) == 3


def test_render_five_vertex():
    assert len(render_layered(five_vertex())["rows"]) == 5


def test_dot_is_deterministic():
    a = to_dot(io_json.parse_planar(five_vertex_json()))
    b = to_dot(io_json.parse_planar(five_vertex_json()))
    assert a == b and a.startswith("digraph")
    assert a.count(" -> ") == len(five_vertex().order)
