"""Tensor manifolds: algebras of the monad of tensor calculus.

A manifold is a scheme with a structure map ``eps = (eps_o, eps_m)``
sending words to objects and fissus diagrams to morphisms.  The derived
operations

* ``f (x) g = eps_m(eta f (x) eta g)``
* ``g o f = eps_m(eta g o eta f)``
* ``Id_x = eps_m(unitary on x)``
* ``*^I_O(f) = eps_m([Gamma_f, I, O])``, or ``eps_m(empty)`` on an arity mismatch

determine the structure map back through :func:`manifold_from_operations`.

Built-in manifolds: the free algebra ``T(D)``, the coarse-graining algebras
on ``Prim`` and ``Gamma``, ``Phi(V)`` for a strict tensor category and the
``S(1)`` witness lying between ``Prim(1)`` and ``Gamma(1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .category_engine import (
    CategoryBackend,
    LawReport,
    PrimeDiagram,
    StrictFunctor,
    TypeMismatch,
    UScheme,
    diagram_coarsegrain_zeta,
    evaluate,
    fissus_chooser,
    monad_mu,
    monad_T,
    mu_objects,
    random_fissus,
    scheme_chooser,
    unit_eta,
)
from .generators import random_partition, random_planar_with_inputs
from .planar import (
    FissusPlanarGraph,
    LinearPartition,
    coarse_grain,
    empty_planar,
    partition_compose,
    partition_product,
    prime,
)
from .scheme_diagram import (
    FissusDiagram,
    PlanarGraphScheme,
    Scheme,
    SchemeMorphism,
    compose_fissus,
    empty_diagram,
    identity_diagram,
    label_key,
    prime_diagram,
    pushforward_fissus,
    tensor_diagram,
    tensor_fissus,
)

__all__ = [
    "TensorManifold",
    "ManifoldMorphism",
    "Sampler",
    "structure_map",
    "check_algebra_laws",
    "derived_op_laws",
    "manifold_from_operations",
    "DerivedCategory",
    "free_manifold",
    "prim_cg_manifold",
    "gamma_cg_manifold",
    "s1_manifold",
    "phi",
    "psi",
    "PsiCategory",
    "theta_map",
    "core_embedding",
    "is_critical",
    "check_manifold_morphism",
    "xi_adjunction",
    "xi_inverse",
    "compound_samples",
    "matrix_sampler",
    "mutated_fusion",
    "double_value",
]


@dataclass
class Sampler:
    """Random objects and morphisms of a manifold's scheme.

    ``mor(rng, src)`` returns a morphism with source word ``src`` (random
    when ``None``) and nonempty target whenever ``src`` is nonempty.
    """

    obj: Callable[[random.Random], Any]
    mor: Callable[[random.Random, Any], Any]

    def word(self, rng: random.Random, lo: int = 1, hi: int = 3) -> tuple:
        return tuple(self.obj(rng) for _ in range(rng.randint(lo, hi)))

    def chooser(self, max_count: int = 2) -> Callable:
        def choose(rng, labels):
            count = rng.randint(1, min(max_count, len(labels)))
            start = rng.randint(0, len(labels) - count)
            f = self.mor(rng, tuple(labels[start : start + count]))
            return start, count, f, self._tgt(f)

        return choose


@dataclass
class TensorManifold:
    scheme: Scheme
    eps_o: Callable[[tuple], Any]
    eps_m: Callable[[FissusDiagram], Any]
    sampler: Sampler | None = None
    name: str = "M"
    lift: Callable | None = None

    def __post_init__(self):
        if self.sampler is not None:
            self.sampler._tgt = self.scheme.tgt

    def src(self, f: Any) -> tuple:
        return tuple(self.scheme.src(f))

    def tgt(self, f: Any) -> tuple:
        return tuple(self.scheme.tgt(f))

    def key(self, f: Any) -> Any:
        return label_key(f)

    def equal(self, f: Any, g: Any) -> bool:
        return self.key(f) == self.key(g)

    # -- derived operations
    def eta(self, f: Any) -> FissusDiagram:
        return unit_eta(f, self.scheme)

    @property
    def unit_object(self) -> Any:
        return self.eps_o(())

    def mult(self, x: Any, y: Any) -> Any:
        return self.eps_o((x, y))

    def identity(self, x: Any) -> Any:
        return self.eps_m(FissusDiagram(identity_diagram((x,)), LinearPartition((1,)), LinearPartition((1,))))

    def identity_word(self, w: Sequence) -> Any:
        w = tuple(w)
        return self.eps_m(FissusDiagram(identity_diagram(w), LinearPartition.finest(len(w)), LinearPartition.finest(len(w))))

    def empty(self) -> Any:
        return self.eps_m(FissusDiagram(empty_diagram(), LinearPartition(()), LinearPartition(())))

    def tensor(self, f: Any, g: Any) -> Any:
        return self.eps_m(tensor_fissus(self.eta(f), self.eta(g)))

    def compose(self, g: Any, f: Any) -> Any:
        """``g o_eps f``."""
        if self.tgt(f) != self.src(g):
            raise TypeMismatch("compose", f"{self.tgt(f)!r} != {self.src(g)!r}")
        return self.eps_m(compose_fissus(self.eta(f), self.eta(g)))

    def fusion(self, i: LinearPartition, o: LinearPartition, f: Any) -> Any:
        s, t = self.src(f), self.tgt(f)
        if i.length != len(s) or o.length != len(t):
            return self.empty()
        return self.eps_m(FissusDiagram(prime_diagram(f, s, t), i, o))

    def structure_map(self, fd: FissusDiagram) -> Any:
        return self.eps_m(fd)


def structure_map(m: TensorManifold, fd: FissusDiagram) -> Any:
    return m.eps_m(fd)


# -- the derived strict category and Thm-style synthesis ------------------------------------


class DerivedCategory(CategoryBackend):
    """Words over ``Ob(D)`` with the manifold's identities, tensor and composition."""

    def __init__(self, m: TensorManifold, identity_word=None, tensor=None, compose=None):
        self.m = m
        self._id = identity_word or m.identity_word
        self._tensor = tensor or m.tensor
        self._compose = compose or m.compose
        self.name = f"~{m.name}"

    def is_object(self, x: Any) -> bool:
        return isinstance(x, tuple)

    def is_morphism(self, f: Any) -> bool:
        return self.m.scheme.is_morphism(f)

    def dom(self, f: Any) -> tuple:
        return self.m.src(f)

    def cod(self, f: Any) -> tuple:
        return self.m.tgt(f)

    @property
    def unit(self) -> tuple:
        return ()

    def tensor_obj(self, x: tuple, y: tuple) -> tuple:
        return tuple(x) + tuple(y)

    def identity(self, x: tuple) -> Any:
        return self._id(x)

    def compose(self, g: Any, f: Any) -> Any:
        return self._compose(g, f)

    def tensor(self, f: Any, g: Any) -> Any:
        return self._tensor(f, g)

    def key(self, f: Any) -> Any:
        return self.m.key(f)

    def apply_layer(self, value: Any, left: tuple, f: Any, right: tuple) -> Any:
        # empty side words contribute the unit, which need not be a prime diagram
        layer = f
        if left:
            layer = self.tensor(self.identity(left), layer)
        if right:
            layer = self.tensor(layer, self.identity(right))
        return self.compose(layer, value)


def manifold_from_operations(m: TensorManifold, identity_word=None, tensor=None, compose=None, fusion=None,
                             eps_o=None, name: str | None = None) -> TensorManifold:
    """Structure map synthesized from derived operations.

    ``eps_m((G, I, O)) = *^I_O(value of G in the derived category)``.
    Operations default to those derived from ``m``.
    """
    cat = DerivedCategory(m, identity_word, tensor, compose)
    fuse = fusion or m.fusion

    def eps_m(fd: FissusDiagram):
        val = evaluate(fd.diagram, cat, obj=lambda x: (x,))
        return fuse(fd.p_in, fd.p_out, val)

    return TensorManifold(m.scheme, eps_o or m.eps_o, eps_m, m.sampler, name or f"synth({m.name})", m.lift)


# -- law suites ----------------------------------------------------------------------------


def compound_samples(m: TensorManifold, rng: random.Random, n: int, max_vertices: int = 3) -> list:
    """Random fissus diagrams in ``T(D)``, each vertex a random fissus diagram in ``D``."""
    inner = m.sampler.chooser()
    outer = fissus_chooser(inner, max_vertices=2, max_count=2)
    out = []
    for _ in range(n):
        bd = tuple(tuple(m.sampler.word(rng, 1, 2) for _ in range(rng.randint(1, 2))) for _ in range(rng.randint(1, 2)))
        out.append(random_fissus(rng, bd, outer, max_vertices))
    return out


def check_algebra_laws(m: TensorManifold, rng: random.Random, n: int = 30) -> LawReport:
    """``eps o T(eps) = eps o mu`` on compounds and ``eps o eta = id`` on morphisms."""
    rep = LawReport({}, {})
    eps = SchemeMorphism(monad_T(m.scheme), m.scheme, m.eps_o, m.eps_m, "eps")
    for c in compound_samples(m, rng, n):
        lhs = m.eps_m(pushforward_fissus(eps, c))
        rhs = m.eps_m(monad_mu(c, m.scheme))
        rep.record("associativity square", m.equal(lhs, rhs), c)
    for _ in range(n):
        f = m.sampler.mor(rng, None)
        rep.record("unit triangle", m.equal(m.eps_m(m.eta(f)), f), f)
    return rep


def _rp(rng: random.Random, k: int) -> LinearPartition:
    return random_partition(rng, k, 4)


def derived_op_laws(m: TensorManifold, rng: random.Random, n: int = 30) -> LawReport:
    """Every law of the derived operations, each on ``n`` random instances."""
    rep = LawReport({}, {})
    eq, S = m.equal, m.sampler
    for _ in range(n):
        x, y, z = S.obj(rng), S.obj(rng), S.obj(rng)
        rep.record("object monoid", m.mult(m.mult(x, y), z) == m.mult(x, m.mult(y, z))
                   and m.mult(m.unit_object, x) == x == m.mult(x, m.unit_object), (x, y, z))
        f, g, h = S.mor(rng, None), S.mor(rng, None), S.mor(rng, None)
        rep.record("tensor associative", eq(m.tensor(m.tensor(f, g), h), m.tensor(f, m.tensor(g, h))), (f, g, h))
        g1 = S.mor(rng, m.tgt(f))
        h1 = S.mor(rng, m.tgt(g1))
        rep.record("composition associative", eq(m.compose(h1, m.compose(g1, f)), m.compose(m.compose(h1, g1), f)), (f, g1, h1))
        g2 = S.mor(rng, m.tgt(g))
        rep.record("middle-four interchange",
                   eq(m.tensor(m.compose(g1, f), m.compose(g2, g)), m.compose(m.tensor(g1, g2), m.tensor(f, g))),
                   (f, g1, g, g2))
        # fusion composed with fusion
        i2, o2 = _rp(rng, len(m.src(f))), _rp(rng, len(m.tgt(f)))
        i1, o1 = _rp(rng, len(i2)), _rp(rng, len(o2))
        rep.record("fusion composition",
                   eq(m.fusion(i1, o1, m.fusion(i2, o2, f)), m.fusion(partition_compose(i1, i2), partition_compose(o1, o2), f)),
                   (f, i1, o1, i2, o2))
        # fusion and tensor
        j2, p2 = _rp(rng, len(m.src(g))), _rp(rng, len(m.tgt(g)))
        rep.record("fusion-tensor compatibility",
                   eq(m.fusion(partition_product(i2, j2), partition_product(o2, p2), m.tensor(f, g)),
                      m.tensor(m.fusion(i2, o2, f), m.fusion(j2, p2, g))),
                   (f, g, i2, o2, j2, p2))
        # fusion and composition: f: I1 -> O1, g1: I2 = O1 -> O2
        a1, b1 = _rp(rng, len(m.src(f))), _rp(rng, len(m.tgt(f)))
        b2 = _rp(rng, len(m.tgt(g1)))
        rep.record("fusion-composition compatibility",
                   eq(m.fusion(a1, b2, m.compose(g1, f)), m.compose(m.fusion(b1, b2, g1), m.fusion(a1, b1, f))),
                   (f, g1, a1, b1, b2))
        # corollaries
        ii = _rp(rng, len(i2) + len(j2))
        oo = _rp(rng, len(o2) + len(p2))
        rep.record("fusion-tensor corollary",
                   eq(m.fusion(partition_compose(ii, partition_product(i2, j2)), partition_compose(oo, partition_product(o2, p2)),
                               m.tensor(f, g)),
                      m.fusion(ii, oo, m.tensor(m.fusion(i2, o2, f), m.fusion(j2, p2, g)))),
                   (f, g, ii, oo))
        ic, oc = _rp(rng, len(a1)), _rp(rng, len(b2))
        rep.record("fusion-composition corollary",
                   eq(m.fusion(partition_compose(ic, a1), partition_compose(oc, b2), m.compose(g1, f)),
                      m.fusion(ic, oc, m.compose(m.fusion(b1, b2, g1), m.fusion(a1, b1, f)))),
                   (f, g1, ic, oc))
        bad = LinearPartition.trivial(len(m.src(f)) + 1)
        rep.record("degenerate fusion", eq(m.fusion(bad, o2, f), m.empty()), f)
        w = S.word(rng, 1, 3)
        prod = m.identity(w[0])
        for u in w[1:]:
            prod = m.tensor(prod, m.identity(u))
        rep.record("identity product", eq(m.identity_word(w), prod), w)
        rep.record("unit law", eq(m.compose(f, m.identity_word(m.src(f))), f)
                   and eq(m.compose(m.identity_word(m.tgt(f)), f), f), f)
    return rep


# -- built-in manifolds ----------------------------------------------------------------------------


def free_manifold(scheme, rng_max_vertices: int = 3) -> TensorManifold:
    """``(T(D), mu_D)`` for a finite scheme ``D``."""
    ch = scheme_chooser(scheme)
    letters = sorted(scheme.objects, key=repr)

    def obj(rng):
        return tuple(rng.choice(letters) for _ in range(rng.randint(1, 2)))

    def mor(rng, src):
        if src is None:
            src = tuple(obj(rng) for _ in range(rng.randint(1, 2)))
        return random_fissus(rng, src, ch, rng_max_vertices)

    return TensorManifold(monad_T(scheme), mu_objects, lambda c: monad_mu(c, scheme), Sampler(obj, mor),
                          f"T({scheme.name})")


def _cg(fd: FissusDiagram):
    return coarse_grain(FissusPlanarGraph(fd.diagram.planar, fd.p_in, fd.p_out))


def _graph_sampler(prime_only: bool, max_vertices: int = 3) -> Sampler:
    def mor(rng, src):
        m = rng.randint(1, 3) if src is None else len(src)
        if prime_only or m == 0:
            return prime(m, rng.randint(1, 3)) if m else empty_planar()
        return random_planar_with_inputs(rng, m, max_vertices=max_vertices, max_in=2, max_out=2)

    return Sampler(lambda rng: "x", mor)


def prim_cg_manifold() -> TensorManifold:
    """``(Prim, eps^C-G)``: one object, prime graphs, coarse-graining as structure map."""
    return TensorManifold(PlanarGraphScheme(prime_only=True), lambda w: "x", _cg, _graph_sampler(True), "Prim")


def gamma_cg_manifold(max_vertices: int = 3) -> TensorManifold:
    """``(Gamma, eps^C-G)``: all planar graphs with coarse-graining."""
    return TensorManifold(PlanarGraphScheme(prime_only=False), lambda w: "x", _cg,
                          _graph_sampler(False, max_vertices), "Gamma")


class _S1Scheme(PlanarGraphScheme):
    """Planar graphs that are prime or have arity other than ``(1, 1)``."""

    def __init__(self):
        super().__init__(prime_only=False)
        self.name = "S(1)"

    def is_morphism(self, f: Any) -> bool:
        if not super().is_morphism(f):
            return False
        return f.graph.is_prime or f.graph.is_empty or f.arity != (1, 1)


def s1_manifold(max_vertices: int = 3) -> TensorManifold:
    """The witness ``S(1)``: same ``(1,1)`` morphisms as ``Prim(1)``, strictly more morphisms."""

    def mor(rng, src):
        m = rng.randint(1, 3) if src is None else len(src)
        for _ in range(20):
            f = random_planar_with_inputs(rng, m, max_vertices=max_vertices, max_in=2, max_out=2)
            if f.arity != (1, 1) or f.graph.is_prime:
                return f
        return prime(m, 2)

    return TensorManifold(_S1Scheme(), lambda w: "x", _cg, Sampler(lambda rng: "x", mor), "S(1)")


def matrix_sampler(v: CategoryBackend) -> Sampler:
    """Prime diagrams of ``U(V)`` with random words; values from ``v.random_matrix`` when present."""

    def mor(rng, src):
        if src is None:
            src = tuple(v.sample_object(rng) for _ in range(rng.randint(1, 2)))
        tgt = tuple(v.sample_object(rng) for _ in range(rng.randint(1, 2)))
        rm = getattr(v, "random_matrix", None)
        val = rm(rng, v.word_obj(tgt), v.word_obj(src)) if rm else v.sample_morphism(rng, v.word_obj(src))
        return PrimeDiagram(tuple(src), tgt, val)

    return Sampler(v.sample_object, mor)


def phi(v: CategoryBackend, sampler: Sampler | None = None) -> TensorManifold:
    """``Phi(V) = (U(V), zeta)``: structure map is coarse-graining of fissus diagrams in ``V``."""

    def lift(t: PrimeDiagram):
        # t is a prime diagram in Psi(Phi(V)); its vertex carries a (1,1) prime diagram
        return PrimeDiagram(t.dom, t.cod, t.value.value)

    return TensorManifold(UScheme(v), v.word_obj, lambda fd: _zeta_typed(fd, v),
                          sampler or matrix_sampler(v), f"Phi({v.name})", lift)


def _zeta_typed(fd: FissusDiagram, v: CategoryBackend) -> PrimeDiagram:
    return diagram_coarsegrain_zeta(fd, v, vertex=lambda p: p.value)


def double_value(p: PrimeDiagram) -> PrimeDiagram:
    """Scale the matrix on a prime diagram by two."""
    from .category_engine import Matrix

    return PrimeDiagram(p.dom, p.cod, Matrix._raw(p.value.a * 2, p.value.exact))


def mutated_fusion(m: TensorManifold, perturb: Callable[[Any], Any] = double_value) -> TensorManifold:
    """``m`` with ``eps_m`` perturbed on one-vertex fissus diagrams fusing two or more inputs.

    A fixture for the law suites: the result is not a manifold.
    """

    def eps_m(fd: FissusDiagram):
        out = m.eps_m(fd)
        if len(fd.diagram.planar.real_vertices) == 1 and any(s > 1 for s in fd.p_in.sizes):
            return perturb(out)
        return out

    return TensorManifold(m.scheme, m.eps_o, eps_m, m.sampler, f"mutated({m.name})", m.lift)


# -- Psi and the core ----------------------------------------------------------------------------


class PsiCategory(CategoryBackend):
    """``Psi(M)``: objects of ``M``, the ``(1,1)`` morphisms, operations through ``eps``."""

    def __init__(self, m: TensorManifold):
        self.m = m
        self.name = f"Psi({m.name})"

    def is_object(self, x: Any) -> bool:
        return self.m.scheme.is_object(x)

    def is_morphism(self, f: Any) -> bool:
        return self.m.scheme.is_morphism(f) and len(self.m.src(f)) == 1 and len(self.m.tgt(f)) == 1

    def dom(self, f: Any) -> Any:
        return self.m.src(f)[0]

    def cod(self, f: Any) -> Any:
        return self.m.tgt(f)[0]

    @property
    def unit(self) -> Any:
        return self.m.unit_object

    def tensor_obj(self, x: Any, y: Any) -> Any:
        return self.m.mult(x, y)

    def identity(self, x: Any) -> Any:
        return self.m.identity(x)

    def compose(self, g: Any, f: Any) -> Any:
        return self.m.compose(g, f)

    def tensor(self, f: Any, g: Any) -> Any:
        d = tensor_diagram(prime_diagram(f, self.m.src(f), self.m.tgt(f)), prime_diagram(g, self.m.src(g), self.m.tgt(g)))
        return self.m.eps_m(FissusDiagram(d, LinearPartition((2,)), LinearPartition((2,))))

    def key(self, f: Any) -> Any:
        return self.m.key(f)

    def sample_object(self, rng: random.Random) -> Any:
        return self.m.sampler.obj(rng)

    def sample_morphism(self, rng: random.Random, dom: Any = None) -> Any:
        x = self.sample_object(rng) if dom is None else dom
        f = self.m.sampler.mor(rng, (x,))
        return theta_map(self.m, f)


def psi(m: TensorManifold) -> PsiCategory:
    return PsiCategory(m)


def theta_map(m: TensorManifold, f: Any) -> Any:
    """``theta = *`` with trivial partitions."""
    return m.fusion(LinearPartition.trivial(len(m.src(f))), LinearPartition.trivial(len(m.tgt(f))), f)


def core_embedding(m: TensorManifold) -> SchemeMorphism:
    """``eps_*: M -> Phi(Psi(M))``: identity on objects, ``f -> [dom f, cod f, theta(f)]``."""
    target = UScheme(psi(m))
    return SchemeMorphism(m.scheme, target, lambda x: x,
                          lambda f: PrimeDiagram(m.src(f), m.tgt(f), theta_map(m, f)), "eps_*")


def is_critical(m: TensorManifold, pool: Sequence, targets: Sequence = ()) -> bool:
    """Bijectivity of ``eps_*`` on samples.

    Injective on ``pool``; every element of ``targets`` (prime diagrams in
    ``Psi(M)``) has a preimage, found by ``m.lift`` or by searching ``pool``.
    """
    emb = core_embedding(m)
    seen: dict = {}
    for f in pool:
        k, img = m.key(f), label_key(emb(f))
        if img in seen and seen[img] != k:
            return False
        seen[img] = k
    for t in targets:
        tk = label_key(t)
        if m.lift is not None:
            cand = m.lift(t)
            if m.scheme.is_morphism(cand) and label_key(emb(cand)) == tk:
                continue
        if tk not in seen:
            return False
    return True


@dataclass
class ManifoldMorphism:
    source: TensorManifold
    target: TensorManifold
    phi: SchemeMorphism


def check_manifold_morphism(mm: ManifoldMorphism, rng: random.Random, n: int = 20) -> LawReport:
    """``phi o eps_1 = eps_2 o T(phi)`` on compounds, plus preservation of the derived operations."""
    rep = LawReport({}, {})
    a, b, p = mm.source, mm.target, mm.phi
    for fd in [random_fissus(rng, tuple(a.sampler.word(rng, 1, 2) for _ in range(rng.randint(1, 2))), a.sampler.chooser())
               for _ in range(n)]:
        rep.record("structure square", b.equal(p(a.eps_m(fd)), b.eps_m(pushforward_fissus(p, fd))), fd)
    for _ in range(n):
        f, g = a.sampler.mor(rng, None), a.sampler.mor(rng, None)
        g1 = a.sampler.mor(rng, a.tgt(f))
        x = a.sampler.obj(rng)
        i, o = _rp(rng, len(a.src(f))), _rp(rng, len(a.tgt(f)))
        rep.record("preserves identities", b.equal(p(a.identity(x)), b.identity(p.on_objects(x))), x)
        rep.record("preserves tensor", b.equal(p(a.tensor(f, g)), b.tensor(p(f), p(g))), (f, g))
        rep.record("preserves composition", b.equal(p(a.compose(g1, f)), b.compose(p(g1), p(f))), (f, g1))
        rep.record("preserves fusion", b.equal(p(a.fusion(i, o, f)), b.fusion(i, o, p(f))), (f, i, o))
    return rep


# -- the adjunction Psi -| Phi ----------------------------------------------------------------------------


def xi_adjunction(m: TensorManifold, k: StrictFunctor) -> SchemeMorphism:
    """``Xi(K) = Phi(K) o eps_*``: ``f -> [K(dom f), K(cod f), K(theta f)]``."""
    v = k.target
    return SchemeMorphism(m.scheme, UScheme(v), k.on_objects,
                          lambda f: PrimeDiagram(tuple(k.on_objects(x) for x in m.src(f)),
                                                 tuple(k.on_objects(y) for y in m.tgt(f)),
                                                 k.on_morphisms(theta_map(m, f))),
                          f"Xi({k.name})")


def xi_inverse(m: TensorManifold, p: SchemeMorphism, v: CategoryBackend) -> StrictFunctor:
    """``Xi^-1(phi)``: on a ``(1,1)`` morphism ``g`` of ``Psi(M)``, the vertex value of ``phi(g)``."""
    return StrictFunctor(psi(m), v, p.on_objects, lambda g: p(g).value, f"Xi^-1({p.name})")
