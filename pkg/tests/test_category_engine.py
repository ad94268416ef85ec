import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tensorcalc.category_engine import (
    CoarseGrainMismatch,
    ContractionMismatch,
    EmptyBracket,
    FreeCategory,
    Matrix,
    MatrixCategory,
    PlanarCategory,
    PrimeDiagram,
    StrictFunctor,
    TerminalCategory,
    TypeMismatch,
    T_map,
    UScheme,
    check_backend,
    comultiply_chi,
    compound_eval_Z,
    compound_eval_Zhat,
    diagram_coarsegrain_zeta,
    diagram_contraction_kappa,
    eta_morphism,
    evaluate,
    evaluation_independence_check,
    fissus_chooser,
    forget_xi,
    j_m,
    monad_T,
    monad_mu,
    mu_objects,
    omega_tilde,
    random_fissus,
    random_scheme,
    random_word,
    reversal_functor,
    scheme_chooser,
    sigma_collapse,
    theta,
    theta_inverse,
    unit_eta,
    valuation_pushforward,
    zhat_F,
)
from tensorcalc.generators import random_diagram, random_partition, random_planar
from tensorcalc.planar import FissusPlanarGraph, LinearPartition, compose_planar, equivalent, prime
from tensorcalc.scheme_diagram import (
    FissusDiagram,
    SchemeMorphism,
    compose_diagram,
    empty_diagram,
    identity_diagram,
    prime_diagram,
    pushforward,
    tensor_diagram,
)

seeds = st.integers(0, 2**32 - 1)
V = MatrixCategory()


def mchooser(rng, labels):
    c = rng.randint(1, min(2, len(labels)))
    s = rng.randint(0, len(labels) - c)
    outs = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 2)))
    f = V.random_matrix(rng, V.word_obj(outs), V.word_obj(labels[s : s + c]))
    return s, c, f, outs


def matrix_diagram(rng, max_vertices=4, dom=None):
    if dom is None:
        dom = tuple(rng.randint(1, 3) for _ in range(rng.randint(1, 3)))
    return random_diagram(rng, dom, mchooser, max_vertices=max_vertices)


def scheme():
    return random_scheme(random.Random(3), 3, 4, max_len=2)


# -- backends -------------------------------------------------------------------------


def test_matrix_backend_laws():
    rep = check_backend(V, random.Random(0), 200)
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("backend", [TerminalCategory(), PlanarCategory(max_vertices=2)], ids=["terminal", "planar"])
def test_other_backend_laws(backend):
    assert check_backend(backend, random.Random(1), 40).ok


def test_free_category_laws():
    D = scheme()
    assert check_backend(FreeCategory(D, scheme_chooser(D)), random.Random(2), 30).ok


def test_kronecker_middle_four_against_numpy():
    rng = random.Random(4)
    f, g, f2, g2 = (V.random_matrix(rng, 2, 2) for _ in range(4))
    lhs = V.tensor(V.compose(g, f), V.compose(g2, f2))
    rhs = V.compose(V.tensor(g, g2), V.tensor(f, f2))
    assert lhs == rhs
    assert lhs == Matrix(np.kron(np.array(g.tolist(), dtype=object).dot(np.array(f.tolist(), dtype=object)),
                                 np.array(g2.tolist(), dtype=object).dot(np.array(f2.tolist(), dtype=object))))


def test_identity_composition():
    f = Matrix([[1, 2, 3], [4, 5, 6]])
    assert V.compose(V.identity(2), f) == f == V.compose(f, V.identity(3))


def test_free_category_identities():
    D = scheme()
    C = FreeCategory(D)
    assert C.unit == () and C.identity(()) == empty_diagram()
    w = ("x0", "x1", "x2")
    split = C.tensor(C.tensor(C.identity(("x0",)), C.identity(("x1",))), C.identity(("x2",)))
    assert C.identity(w) == split


# -- evaluation ---------------------------------------------------------------------------


A = Matrix([[1, 2, 3], [4, 5, 6]])
B = Matrix([[1, 0], [0, 1], [1, 1], [2, F(1, 2)]])


def test_evaluate_empty():
    assert evaluate(empty_diagram(), V) == Matrix([[1]])


def test_evaluate_prime_and_unitary():
    assert evaluate(prime_diagram(A, (3,), (2,)), V) == A
    assert evaluate(identity_diagram((3,)), V) == V.identity(3)


def test_evaluate_chain():
    d = compose_diagram(prime_diagram(A, (3,), (2,)), prime_diagram(B, (2,), (4,)))
    expected = np.array(B.tolist(), dtype=object).dot(np.array(A.tolist(), dtype=object))
    assert evaluate(d, V) == Matrix(expected)


def test_type_mismatch():
    d = prime_diagram(A, (2,), (2,))
    with pytest.raises(TypeMismatch):
        evaluate(d, V)


def test_parallel_vertices_interchange():
    d = tensor_diagram(prime_diagram(A, (3,), (2,)), prime_diagram(B, (2,), (4,)))
    assert len(d.planar.real_vertices) == 2
    assert evaluation_independence_check(d, V, 8, random.Random(0))
    assert evaluate(d, V) == V.tensor(A, B)


@given(seeds)
def test_evaluation_independent_of_decomposition(seed):
    rng = random.Random(seed)
    assert evaluation_independence_check(matrix_diagram(rng, 6), V, 5, rng)


@given(seeds)
def test_evaluation_is_monoidal(seed):
    rng = random.Random(seed)
    d1, d2 = matrix_diagram(rng), matrix_diagram(rng)
    assert evaluate(tensor_diagram(d1, d2), V) == V.tensor(evaluate(d1, V), evaluate(d2, V))
    e1 = matrix_diagram(rng, dom=d1.cod)
    e2 = matrix_diagram(rng, dom=d2.cod)
    whole = compose_diagram(tensor_diagram(d1, d2), tensor_diagram(e1, e2))
    assert evaluate(whole, V) == V.tensor(V.compose(evaluate(e1, V), evaluate(d1, V)),
                                          V.compose(evaluate(e2, V), evaluate(d2, V)))


# -- contraction, coarse-graining, functoriality ----------------------------------------------


def test_kappa_of_prime():
    k = diagram_contraction_kappa(prime_diagram(A, (3,), (2,)), V)
    assert k == PrimeDiagram((3,), (2,), A)


def test_zeta_trivial_partitions():
    rng = random.Random(1)
    d = matrix_diagram(rng)
    fd = FissusDiagram(d, LinearPartition.trivial(len(d.dom)), LinearPartition.trivial(len(d.cod)))
    z = diagram_coarsegrain_zeta(fd, V)
    assert z == PrimeDiagram((V.word_obj(d.dom),), (V.word_obj(d.cod),), evaluate(d, V))


@given(seeds)
def test_functor_squares(seed):
    rng = random.Random(seed)
    R = reversal_functor(V)
    d = matrix_diagram(rng)
    assert evaluate(valuation_pushforward(R, d), V) == R.on_morphisms(evaluate(d, V))
    k = diagram_contraction_kappa(d, V)
    assert diagram_contraction_kappa(valuation_pushforward(R, d), V).value == R.on_morphisms(k.value)


# -- U and the adjunction --------------------------------------------------------------------------


def test_j_m():
    p = j_m(V, A)
    assert p == PrimeDiagram((3,), (2,), A)
    assert UScheme(V).is_morphism(p)


def _phi_into_mat(D, rng):
    dims = {x: rng.randint(1, 2) for x in sorted(D.objects)}
    mats = {}
    for f, (s, t) in sorted(D.morphisms.items()):
        mats[f] = V.random_matrix(rng, V.word_obj([dims[y] for y in t]), V.word_obj([dims[x] for x in s]))
    return SchemeMorphism(D, UScheme(V), dims.__getitem__,
                          lambda f: PrimeDiagram(tuple(dims[x] for x in D.src(f)), tuple(dims[y] for y in D.tgt(f)), mats[f]),
                          "phi")


@given(seeds)
def test_theta_round_trips(seed):
    rng = random.Random(seed)
    D = scheme()
    phi = _phi_into_mat(D, rng)
    K = theta_inverse(phi, V)
    back = theta(K, D)
    for f in D.morphisms:
        assert back.on_morphisms(f) == phi.on_morphisms(f)
        assert K.on_morphisms(prime_diagram(f, D.src(f), D.tgt(f))) == phi.on_morphisms(f).value
    K2 = theta_inverse(back, V)
    for _ in range(5):
        d = random_diagram(rng, random_word(rng, sorted(D.objects), 1, 2), scheme_chooser(D), max_vertices=4)
        assert K2.on_morphisms(d) == K.on_morphisms(d)


def test_theta_of_identity_is_unit():
    D = scheme()
    C = FreeCategory(D)
    ident = StrictFunctor(C, C, lambda w: w, lambda d: d, "Id")
    th = theta(ident, D)
    for f in D.morphisms:
        assert omega_tilde(th.on_morphisms(f)) == unit_eta(f, D)


def test_omega_rejects_empty_bracket():
    with pytest.raises(EmptyBracket):
        omega_tilde(PrimeDiagram(((),), (("x0",),), identity_diagram(())))


# -- the monad ---------------------------------------------------------------------------------------


def test_unit_partitions():
    D = scheme()
    f = next(g for g, (s, t) in D.morphisms.items() if len(s) == 2 and len(t) == 1)
    e = unit_eta(f, D)
    assert e.p_in.sizes == (1, 1) and e.p_out.sizes == (1,)


def _fissus(rng, D):
    bd = tuple(random_word(rng, sorted(D.objects), 1, 2) for _ in range(rng.randint(1, 3)))
    return random_fissus(rng, bd, scheme_chooser(D))


@given(seeds)
def test_monad_unit_laws(seed):
    rng = random.Random(seed)
    D = scheme()
    fd = _fissus(rng, D)
    assert monad_mu(unit_eta(fd, monad_T(D)), D) == fd
    assert monad_mu(T_map(eta_morphism(D))(fd), D) == fd


@given(seeds)
def test_monad_associativity(seed):
    rng = random.Random(seed)
    D = scheme()
    TD = monad_T(D)
    bbd = tuple(
        tuple(tuple(random_word(rng, sorted(D.objects), 1, 2) for _ in range(rng.randint(1, 2))) for _ in range(rng.randint(1, 2)))
        for _ in range(rng.randint(1, 2))
    )
    X = random_fissus(rng, bbd, fissus_chooser(fissus_chooser(scheme_chooser(D)), 2), 2)
    muD = SchemeMorphism(monad_T(TD), TD, mu_objects, lambda c: monad_mu(c, D))
    assert monad_mu(T_map(muD)(X), D) == monad_mu(monad_mu(X, TD), D)


def test_mu_is_sigma_after_zhat():
    rng = random.Random(3)
    D = scheme()
    fd = _fissus(rng, D)
    c = T_map(eta_morphism(D))(fd)
    two = zhat_F(c, D)
    assert sigma_collapse(two) == monad_mu(c, D)


def test_mu_rejects_mismatched_component():
    D = scheme()
    f, (s, t) = next((g, st_) for g, st_ in sorted(D.morphisms.items()) if len(st_[0]) == 2)
    good = unit_eta(f, D)
    bad = FissusDiagram(good.diagram, LinearPartition.trivial(len(s)), good.p_out)
    d = prime_diagram(bad, good.bracketed_dom, good.bracketed_cod)
    with pytest.raises(CoarseGrainMismatch):
        monad_mu(FissusDiagram(d, LinearPartition.finest(len(s)), good.p_out), D)


# -- the comultiplication ----------------------------------------------------------------------------


def _counit(d, D):
    return evaluate(d, FreeCategory(D), vertex=lambda fd: fd.diagram)


@given(seeds)
def test_chi_counit_and_coassociativity(seed):
    rng = random.Random(seed)
    D = scheme()
    d = random_diagram(rng, random_word(rng, sorted(D.objects), 1, 2), scheme_chooser(D), max_vertices=4)
    chi = comultiply_chi(d, D)
    assert _counit(chi, D) == d
    TD = monad_T(D)
    assert pushforward(eta_morphism(TD), chi) == pushforward(T_map(eta_morphism(D)), chi)


def test_chi_of_empty():
    assert comultiply_chi(empty_diagram(), scheme()) == empty_diagram()


# -- compound planar graphs ------------------------------------------------------------------------------


def test_Z_prime_compound():
    pg = random_planar(random.Random(2), max_vertices=4)
    m, n = pg.arity
    c = prime_diagram(pg, ("x",) * m, ("x",) * n)
    assert equivalent(compound_eval_Z(c), pg)
    assert forget_xi(c) == c.planar


def test_Z_chain_compound():
    rng = random.Random(6)
    p1 = random_planar(rng, max_vertices=3)
    from tensorcalc.generators import random_planar_with_inputs

    p2 = random_planar_with_inputs(rng, len(p1.outputs), max_vertices=3)
    c = compose_diagram(prime_diagram(p1, ("x",) * p1.arity[0], ("x",) * p1.arity[1]),
                        prime_diagram(p2, ("x",) * p2.arity[0], ("x",) * p2.arity[1]))
    assert equivalent(compound_eval_Z(c), compose_planar(p1, p2))


def test_Z_arity_mismatch():
    c = prime_diagram(prime(2, 1), ("x",), ("x",))
    with pytest.raises(ContractionMismatch):
        compound_eval_Z(c)


def test_Zhat_prime_compound():
    rng = random.Random(8)
    pg = random_planar(rng, max_vertices=3)
    f = FissusPlanarGraph(pg, random_partition(rng, pg.arity[0]), random_partition(rng, pg.arity[1]))
    c = prime_diagram(f, tuple(("x",) * s for s in f.p_in.sizes), tuple(("x",) * s for s in f.p_out.sizes))
    out = compound_eval_Zhat(c)
    assert equivalent(out.planar, pg) and out.p_in == f.p_in and out.p_out == f.p_out
