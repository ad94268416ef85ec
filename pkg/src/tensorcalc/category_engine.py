"""Strict tensor categories, evaluation of diagrams, and the monad of tensor calculus.

Backends implement :class:`CategoryBackend`.  Two concrete ones ship here:
:class:`MatrixCategory` (dimensions and exact rational matrices) and
:class:`FreeCategory` (words and diagrams over a scheme).  :class:`PlanarCategory`
is the category of planar graphs, used for compound graphs.

:func:`evaluate` folds a diagram layer by layer along a decomposition into
essential primes.  The result does not depend on the decomposition, which
:func:`evaluation_independence_check` exercises with random linear
extensions.

The monad ``T`` sends a scheme to its scheme of fissus diagrams.  Its unit
wraps a generator as a prime diagram with finest brackets; its
multiplication substitutes components (evaluation in the free category)
and then composes the two layers of brackets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from .generators import random_diagram, random_partition
from .planar import (
    FissusPlanarGraph,
    LinearPartition,
    PlanarGraph,
    canonical_key,
    compose_planar,
    decomposition_steps,
    identity as identity_planar,
    partition_compose,
    tensor_planar,
)
from .scheme_diagram import (
    Diagram,
    FissusDiagram,
    FissusDiagramScheme,
    Scheme,
    TensorScheme,
    SchemeMorphism,
    compose_diagram,
    identity_diagram,
    label_key,
    prime_diagram,
    pushforward,
    pushforward_fissus,
    tensor_diagram,
)

__all__ = [
    "CategoryError",
    "LawViolation",
    "TypeMismatch",
    "CoarseGrainMismatch",
    "ContractionMismatch",
    "EmptyBracket",
    "CategoryBackend",
    "Matrix",
    "MatrixCategory",
    "TerminalCategory",
    "PlanarCategory",
    "FreeCategory",
    "reversal_functor",
    "StrictFunctor",
    "LawReport",
    "check_backend",
    "evaluate",
    "evaluation_independence_check",
    "PrimeDiagram",
    "UScheme",
    "j_m",
    "diagram_contraction_kappa",
    "diagram_coarsegrain_zeta",
    "valuation_pushforward",
    "theta",
    "theta_inverse",
    "omega_tilde",
    "monad_T",
    "unit_eta",
    "eta_morphism",
    "T_map",
    "TwoLayerFissus",
    "zhat_F",
    "sigma_collapse",
    "monad_mu",
    "mu_objects",
    "compound_eval_Z",
    "compound_eval_Zhat",
    "forget_xi",
    "forget_xihat",
    "comultiply_chi",
    "scheme_chooser",
    "fissus_chooser",
    "random_scheme",
    "random_word",
    "random_fissus",
]


class CategoryError(ValueError):
    pass


class LawViolation(CategoryError):
    def __init__(self, axiom: str, witnesses: Any = None):
        self.axiom = axiom
        self.witnesses = witnesses
        super().__init__(f"law {axiom!r} fails" + (f" at {witnesses!r}" if witnesses is not None else ""))


class TypeMismatch(CategoryError):
    def __init__(self, v: Any, detail: str = ""):
        self.vertex = v
        super().__init__(f"type mismatch at {sorted(v) if isinstance(v, frozenset) else v!r}: {detail}")


class CoarseGrainMismatch(CategoryError):
    def __init__(self, v: Any, detail: str = ""):
        self.vertex = v
        super().__init__(f"component does not coarse-grain to its vertex {sorted(v) if isinstance(v, frozenset) else v!r}: {detail}")


class ContractionMismatch(CoarseGrainMismatch):
    pass


class EmptyBracket(CategoryError):
    """A bracket of a fissus structure would be empty."""


# -- backends -------------------------------------------------------------------


class CategoryBackend:
    """A strict tensor category.  Subclasses provide the primitive operations."""

    name = "V"

    def is_object(self, x: Any) -> bool:
        raise NotImplementedError

    def is_morphism(self, f: Any) -> bool:
        raise NotImplementedError

    def dom(self, f: Any) -> Any:
        raise NotImplementedError

    def cod(self, f: Any) -> Any:
        raise NotImplementedError

    @property
    def unit(self) -> Any:
        raise NotImplementedError

    def tensor_obj(self, x: Any, y: Any) -> Any:
        raise NotImplementedError

    def identity(self, x: Any) -> Any:
        raise NotImplementedError

    def compose(self, g: Any, f: Any) -> Any:
        """``g o f``."""
        raise NotImplementedError

    def tensor(self, f: Any, g: Any) -> Any:
        raise NotImplementedError

    def key(self, f: Any) -> Any:
        return label_key(f)

    def equal(self, f: Any, g: Any) -> bool:
        return self.key(f) == self.key(g)

    def obj_equal(self, x: Any, y: Any) -> bool:
        return x == y

    def word_obj(self, w: Iterable) -> Any:
        out = self.unit
        for x in w:
            out = self.tensor_obj(out, x)
        return out

    def vertex_type_ok(self, f: Any, ins: tuple, outs: tuple) -> bool:
        return self.obj_equal(self.dom(f), self.word_obj(ins)) and self.obj_equal(self.cod(f), self.word_obj(outs))

    def vertex_type_detail(self, f: Any, ins: tuple, outs: tuple) -> str:
        return f"{self.dom(f)!r} -> {self.cod(f)!r} placed on {ins!r} -> {outs!r}"

    def apply_layer(self, value: Any, left: Any, f: Any, right: Any) -> Any:
        """``(Id_left (x) f (x) Id_right) o value``."""
        layer = self.tensor(self.tensor(self.identity(left), f), self.identity(right))
        return self.compose(layer, value)

    def sample_object(self, rng: random.Random) -> Any:
        raise NotImplementedError

    def sample_morphism(self, rng: random.Random, dom: Any = None) -> Any:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name}>"


def _frac(x: Any) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator()
    return Fraction(x)


class Matrix:
    """An immutable dense matrix; ``cod x dom`` in shape."""

    __slots__ = ("a", "exact")

    def __init__(self, rows: Any, exact: bool = True):
        rows = [list(r) for r in rows]
        r, c = len(rows), (len(rows[0]) if rows else 0)
        if any(len(row) != c for row in rows):
            raise CategoryError("ragged matrix")
        a = np.empty((r, c), dtype=object if exact else float)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                a[i, j] = _frac(x) if exact else float(x)
        self.a = a
        self.exact = exact

    @classmethod
    def _raw(cls, a: np.ndarray, exact: bool) -> "Matrix":
        m = cls.__new__(cls)
        m.a = a
        m.exact = exact
        return m

    @property
    def shape(self) -> tuple:
        return self.a.shape

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def key(self) -> tuple:
        return ("M", self.a.shape, tuple(self.a.flat))

    def tolist(self) -> list:
        return [[x for x in row] for row in self.a]

    def to_json(self) -> list:
        return [[str(x) for x in row] for row in self.a]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            return False
        if self.exact and other.exact:
            return bool(np.all(self.a == other.a))
        return bool(np.allclose(self.a.astype(float), other.a.astype(float), atol=1e-9))

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return "Matrix(" + repr([[str(x) for x in r] for r in self.a]) + ")"


class MatrixCategory(CategoryBackend):
    """Objects are dimensions, morphisms matrices, tensor the Kronecker product."""

    def __init__(self, max_dim: int = 3, exact: bool = True, scalars: Sequence = (-2, -1, 0, 1, 2, Fraction(1, 2), Fraction(-1, 3))):
        self.max_dim = max_dim
        self.exact = exact
        self.scalars = tuple(scalars)
        self.name = "Mat"

    def is_object(self, x: Any) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and x >= 0

    def is_morphism(self, f: Any) -> bool:
        return isinstance(f, Matrix)

    def dom(self, f: Matrix) -> int:
        return f.cols

    def cod(self, f: Matrix) -> int:
        return f.rows

    @property
    def unit(self) -> int:
        return 1

    def tensor_obj(self, x: int, y: int) -> int:
        return x * y

    def identity(self, x: int) -> Matrix:
        e = self.zero(x, x).a
        for k in range(x):
            e[k, k] = Fraction(1) if self.exact else 1.0
        return Matrix._raw(e, self.exact)

    def compose(self, g: Matrix, f: Matrix) -> Matrix:
        if g.cols != f.rows:
            raise TypeMismatch("compose", f"{g.shape} after {f.shape}")
        if g.cols == 0:
            return self.zero(g.rows, f.cols)
        return Matrix._raw(g.a.dot(f.a), self.exact)

    def zero(self, rows: int, cols: int) -> Matrix:
        z = np.empty((rows, cols), dtype=object if self.exact else float)
        z[...] = Fraction(0) if self.exact else 0.0
        return Matrix._raw(z, self.exact)

    def tensor(self, f: Matrix, g: Matrix) -> Matrix:
        r, c = f.rows * g.rows, f.cols * g.cols
        if r == 0 or c == 0:
            return self.zero(r, c)
        return Matrix._raw(np.kron(f.a, g.a), self.exact)

    def key(self, f: Matrix) -> tuple:
        return f.key()

    def equal(self, f: Matrix, g: Matrix) -> bool:
        return f == g

    def apply_layer(self, value: Matrix, left: int, f: Matrix, right: int) -> Matrix:
        a, b, cols = f.cols, f.rows, value.cols
        if value.rows != left * a * right:
            raise TypeMismatch("layer", f"value has {value.rows} rows, layer expects {left}*{a}*{right}")
        if value.rows == 0 or b == 0 or cols == 0:
            return self.zero(left * b * right, cols)
        v4 = value.a.reshape(left, a, right, cols)
        out = np.tensordot(f.a, v4, axes=([1], [1]))
        return Matrix._raw(out.transpose(1, 0, 2, 3).reshape(left * b * right, cols), self.exact)

    def sample_object(self, rng: random.Random) -> int:
        return rng.randint(1, self.max_dim)

    def random_matrix(self, rng: random.Random, rows: int, cols: int) -> Matrix:
        if not rows or not cols:
            return self.zero(rows, cols)
        return Matrix([[rng.choice(self.scalars) for _ in range(cols)] for _ in range(rows)], self.exact)

    def sample_morphism(self, rng: random.Random, dom: Any = None) -> Matrix:
        d = self.sample_object(rng) if dom is None else dom
        return self.random_matrix(rng, self.sample_object(rng), d)


class TerminalCategory(CategoryBackend):
    """The category ``1``: one object, one morphism."""

    name = "1"
    OBJ = "1"
    MOR = "Id_1"

    def is_object(self, x: Any) -> bool:
        return x == self.OBJ

    def is_morphism(self, f: Any) -> bool:
        return f == self.MOR

    def dom(self, f: Any) -> str:
        return self.OBJ

    def cod(self, f: Any) -> str:
        return self.OBJ

    @property
    def unit(self) -> str:
        return self.OBJ

    def tensor_obj(self, x: Any, y: Any) -> str:
        return self.OBJ

    def identity(self, x: Any) -> str:
        return self.MOR

    def compose(self, g: Any, f: Any) -> str:
        return self.MOR

    def tensor(self, f: Any, g: Any) -> str:
        return self.MOR

    def sample_object(self, rng: random.Random) -> str:
        return self.OBJ

    def sample_morphism(self, rng: random.Random, dom: Any = None) -> str:
        return self.MOR


class PlanarCategory(CategoryBackend):
    """``Gamma^(x)``: objects are wire counts, morphisms planar graphs."""

    name = "Gamma"

    def __init__(self, max_vertices: int = 3):
        self.max_vertices = max_vertices

    def is_object(self, x: Any) -> bool:
        return isinstance(x, int) and x >= 0

    def is_morphism(self, f: Any) -> bool:
        return isinstance(f, PlanarGraph)

    def dom(self, f: PlanarGraph) -> int:
        return len(f.inputs)

    def cod(self, f: PlanarGraph) -> int:
        return len(f.outputs)

    @property
    def unit(self) -> int:
        return 0

    def tensor_obj(self, x: int, y: int) -> int:
        return x + y

    def identity(self, x: int) -> PlanarGraph:
        return identity_planar(x)

    def compose(self, g: PlanarGraph, f: PlanarGraph) -> PlanarGraph:
        return compose_planar(f, g)

    def tensor(self, f: PlanarGraph, g: PlanarGraph) -> PlanarGraph:
        return tensor_planar(f, g)

    def key(self, f: PlanarGraph) -> tuple:
        return canonical_key(f)

    def sample_object(self, rng: random.Random) -> int:
        return rng.randint(1, 3)

    def sample_morphism(self, rng: random.Random, dom: Any = None) -> PlanarGraph:
        from .generators import random_planar_with_inputs

        n = self.sample_object(rng) if dom is None else dom
        return random_planar_with_inputs(rng, n, max_vertices=self.max_vertices, max_in=2, max_out=2)


class FreeCategory(CategoryBackend):
    """``F(D)``: words over ``Ob(D)`` and diagrams in ``D``."""

    def __init__(self, scheme: Scheme, chooser: Callable | None = None, max_vertices: int = 3):
        self.scheme = scheme
        self.chooser = chooser
        self.max_vertices = max_vertices
        self.name = f"F({scheme.name})"

    def is_object(self, x: Any) -> bool:
        return isinstance(x, tuple) and all(self.scheme.is_object(y) for y in x)

    def is_morphism(self, f: Any) -> bool:
        return isinstance(f, Diagram)

    def dom(self, f: Diagram) -> tuple:
        return f.dom

    def cod(self, f: Diagram) -> tuple:
        return f.cod

    @property
    def unit(self) -> tuple:
        return ()

    def tensor_obj(self, x: tuple, y: tuple) -> tuple:
        return tuple(x) + tuple(y)

    def identity(self, x: tuple) -> Diagram:
        return identity_diagram(x)

    def compose(self, g: Diagram, f: Diagram) -> Diagram:
        return compose_diagram(f, g)

    def tensor(self, f: Diagram, g: Diagram) -> Diagram:
        return tensor_diagram(f, g)

    def sample_object(self, rng: random.Random) -> tuple:
        obs = sorted(self._objects(), key=repr)
        return tuple(rng.choice(obs) for _ in range(rng.randint(1, 3)))

    def _objects(self) -> Iterable:
        obs = getattr(self.scheme, "objects", None)
        if obs is None:
            raise CategoryError("sampling needs a scheme with a finite object set")
        return obs

    def sample_morphism(self, rng: random.Random, dom: Any = None) -> Diagram:
        if self.chooser is None:
            raise CategoryError("sampling needs a chooser")
        w = self.sample_object(rng) if dom is None else dom
        return random_diagram(rng, w, self.chooser, max_vertices=self.max_vertices)


# -- strict functors -------------------------------------------------------------------


@dataclass(frozen=True)
class StrictFunctor:
    source: Any
    target: CategoryBackend
    on_objects: Callable[[Any], Any]
    on_morphisms: Callable[[Any], Any]
    name: str = "K"


def reversal_functor(cat: MatrixCategory) -> StrictFunctor:
    """``f -> R f R`` on matrices, ``R`` the basis-reversing permutation.

    Reversal of a product index is the product of reversals, so this is a
    strict tensor functor ``Mat -> Mat`` that is not the identity.
    """

    def rev(f: Matrix) -> Matrix:
        return Matrix._raw(f.a[::-1, ::-1].copy(), f.exact)

    return StrictFunctor(cat, cat, lambda x: x, rev, "rev")


# -- law checks ---------------------------------------------------------------------


@dataclass
class LawReport:
    checked: dict
    failures: dict

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def record(self, law: str, passed: bool, witness: Any = None) -> None:
        self.checked[law] = self.checked.get(law, 0) + 1
        self.failures.setdefault(law, [])
        if not passed:
            self.failures[law].append(witness)

    def raise_if_failed(self) -> None:
        for law, ws in self.failures.items():
            if ws:
                raise LawViolation(law, ws[0])

    def summary(self) -> dict:
        return {law: {"checked": n, "failed": len(self.failures.get(law, []))} for law, n in self.checked.items()}


def check_backend(v: CategoryBackend, rng: random.Random, n: int = 50, strict: bool = False) -> LawReport:
    """Strict tensor category axioms on ``n`` random samples."""
    rep = LawReport({}, {})
    eq, oeq = v.equal, v.obj_equal
    for _ in range(n):
        x, y, z = v.sample_object(rng), v.sample_object(rng), v.sample_object(rng)
        rep.record("object tensor associative", oeq(v.tensor_obj(v.tensor_obj(x, y), z), v.tensor_obj(x, v.tensor_obj(y, z))), (x, y, z))
        rep.record("object unit", oeq(v.tensor_obj(v.unit, x), x) and oeq(v.tensor_obj(x, v.unit), x), x)
        f = v.sample_morphism(rng)
        g = v.sample_morphism(rng, v.cod(f))
        h = v.sample_morphism(rng, v.cod(g))
        f2 = v.sample_morphism(rng)
        g2 = v.sample_morphism(rng, v.cod(f2))
        rep.record("identity law", eq(v.compose(f, v.identity(v.dom(f))), f) and eq(v.compose(v.identity(v.cod(f)), f), f), f)
        rep.record("composition associative", eq(v.compose(v.compose(h, g), f), v.compose(h, v.compose(g, f))), (f, g, h))
        rep.record("tensor associative", eq(v.tensor(v.tensor(f, g), h), v.tensor(f, v.tensor(g, h))), (f, g, h))
        u = v.identity(v.unit)
        rep.record("tensor unit", eq(v.tensor(u, f), f) and eq(v.tensor(f, u), f), f)
        rep.record("identity tensor", eq(v.tensor(v.identity(x), v.identity(y)), v.identity(v.tensor_obj(x, y))), (x, y))
        rep.record("middle-four interchange",
                   eq(v.tensor(v.compose(g, f), v.compose(g2, f2)), v.compose(v.tensor(g, g2), v.tensor(f, f2))),
                   (f, g, f2, g2))
        rep.record("tensor typing", oeq(v.dom(v.tensor(f, g)), v.tensor_obj(v.dom(f), v.dom(g))), (f, g))
    if strict:
        rep.raise_if_failed()
    return rep


# -- evaluation ----------------------------------------------------------------------------


def evaluate(d: Diagram, v: CategoryBackend, rng: random.Random | None = None,
             vertex: Callable[[Any], Any] | None = None, obj: Callable[[Any], Any] | None = None) -> Any:
    """The value of ``d`` in ``v``.

    ``vertex`` and ``obj`` translate labels into morphisms and objects of
    ``v`` (identity by default).  ``rng`` randomizes the decomposition.
    """
    vertex = vertex or (lambda f: f)
    obj = obj or (lambda x: x)
    pg = d.planar

    def word(edges):
        return v.word_obj([obj(d.label_of_edge(e)) for e in edges])

    value = v.identity(word([pg.edge_of(h) for h in pg.inputs]))
    for st in decomposition_steps(pg, rng):
        f = vertex(d.vertex_labels[st.vertex])
        ins = tuple(obj(d.edge_labels[h]) for h in st.inputs)
        outs = tuple(obj(d.edge_labels[h]) for h in st.outputs)
        if not v.vertex_type_ok(f, ins, outs):
            raise TypeMismatch(st.vertex, v.vertex_type_detail(f, ins, outs))
        value = v.apply_layer(value, word(st.left), f, word(st.right))
    return value


def evaluation_independence_check(d: Diagram, v: CategoryBackend, trials: int = 5, rng: random.Random | None = None,
                                  **kw) -> bool:
    rng = rng or random.Random(0)
    ref = evaluate(d, v, None, **kw)
    return all(v.equal(evaluate(d, v, random.Random(rng.random()), **kw), ref) for _ in range(trials))


# -- prime diagrams in a category and the functor U ------------------------------------------


@dataclass(frozen=True, eq=False)
class PrimeDiagram:
    """A prime diagram in a category: word domain and codomain, one morphism.

    The ``(0, 0)`` case stands for the image of the empty diagram.
    """

    dom: tuple
    cod: tuple
    value: Any

    def key(self) -> tuple:
        return ("prime", label_key(self.dom), label_key(self.cod), label_key(self.value))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeDiagram):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_diagram(self) -> Diagram:
        return prime_diagram(self.value, self.dom, self.cod)

    def __repr__(self) -> str:
        return f"PrimeDiagram({self.dom!r} -> {self.cod!r}: {self.value!r})"


class UScheme(Scheme):
    """``U(V)``: objects of ``V`` and prime diagrams in ``V``, generated lazily."""

    def __init__(self, v: CategoryBackend):
        self.v = v
        self.name = f"U({v.name})"

    def is_object(self, x: Any) -> bool:
        return self.v.is_object(x)

    def is_morphism(self, f: Any) -> bool:
        return (isinstance(f, PrimeDiagram) and self.v.is_morphism(f.value)
                and self.v.vertex_type_ok(f.value, f.dom, f.cod))

    def src(self, f: PrimeDiagram) -> tuple:
        return f.dom

    def tgt(self, f: PrimeDiagram) -> tuple:
        return f.cod


def j_m(v: CategoryBackend, g: Any) -> PrimeDiagram:
    """The one-vertex prime diagram on ``g: x -> y``."""
    return PrimeDiagram((v.dom(g),), (v.cod(g),), g)


def diagram_contraction_kappa(d: Diagram, v: CategoryBackend, **kw) -> PrimeDiagram:
    """Contraction of ``d`` with its vertex decorated by the value of ``d``."""
    return PrimeDiagram(d.dom, d.cod, evaluate(d, v, **kw))


def diagram_coarsegrain_zeta(fd: FissusDiagram, v: CategoryBackend, **kw) -> PrimeDiagram:
    """Coarse-graining: bracket words folded by the tensor, vertex decorated by the value."""
    return PrimeDiagram(tuple(v.word_obj(b) for b in fd.bracketed_dom),
                        tuple(v.word_obj(b) for b in fd.bracketed_cod),
                        evaluate(fd.diagram, v, **kw))


def valuation_pushforward(k: StrictFunctor, d: Diagram) -> Diagram:
    """``K_*``: apply a strict functor to every label of a diagram in a category."""
    return Diagram(d.planar, {h: k.on_objects(x) for h, x in d.edge_labels.items()},
                   {u: k.on_morphisms(f) for u, f in d.vertex_labels.items()})


# -- the adjunction F -| U ---------------------------------------------------------------------


def theta(k: StrictFunctor, scheme: Scheme) -> SchemeMorphism:
    """``Theta(K) = phi_K``: generator action of a functor ``F(D) -> V``."""
    v = k.target

    def on_morphisms(f):
        s, t = scheme.src(f), scheme.tgt(f)
        return PrimeDiagram(tuple(k.on_objects((x,)) for x in s), tuple(k.on_objects((y,)) for y in t),
                            k.on_morphisms(prime_diagram(f, s, t)))

    return SchemeMorphism(scheme, UScheme(v), lambda x: k.on_objects((x,)), on_morphisms, f"Theta({k.name})")


def theta_inverse(phi: SchemeMorphism, v: CategoryBackend) -> StrictFunctor:
    """``Theta^-1(phi) = K_phi``, ``K_phi([G, g]) = eval(phi_#([G, g]))``."""

    def on_morphisms(d: Diagram):
        return evaluate(d, v, vertex=lambda f: phi.on_morphisms(f).value, obj=phi.on_objects)

    return StrictFunctor(FreeCategory(phi.source), v, lambda w: v.word_obj(phi.word(w)), on_morphisms,
                         f"K[{phi.name}]")


def omega_tilde(p: PrimeDiagram) -> FissusDiagram:
    """Identify a prime diagram in ``F(D)`` with a fissus diagram in ``D``."""
    if any(len(w) == 0 for w in p.dom + p.cod):
        raise EmptyBracket("a bracket of the prime diagram is the empty word")
    return FissusDiagram(p.value, LinearPartition(tuple(len(w) for w in p.dom)),
                         LinearPartition(tuple(len(w) for w in p.cod)))


# -- the monad T ------------------------------------------------------------------------------------


def monad_T(scheme: Scheme) -> FissusDiagramScheme:
    return FissusDiagramScheme(scheme)


def unit_eta(f: Any, scheme: Scheme) -> FissusDiagram:
    """Fully fissus prime diagram on ``f`` with finest brackets."""
    s, t = tuple(scheme.src(f)), tuple(scheme.tgt(f))
    return FissusDiagram(prime_diagram(f, s, t), LinearPartition.finest(len(s)), LinearPartition.finest(len(t)))


def eta_morphism(scheme: Scheme) -> SchemeMorphism:
    """``eta_D: D -> T(D)`` as a scheme morphism."""
    return SchemeMorphism(scheme, monad_T(scheme), lambda x: (x,), lambda f: unit_eta(f, scheme), "eta")


def T_map(phi: SchemeMorphism) -> SchemeMorphism:
    """``T(phi)``: push a fissus diagram forward along ``phi``."""
    return SchemeMorphism(monad_T(phi.source), monad_T(phi.target), phi.word,
                          lambda fd: pushforward_fissus(phi, fd), f"T({phi.name})")


def mu_objects(w: Iterable) -> tuple:
    return tuple(x for word in w for x in word)


@dataclass(frozen=True, eq=False)
class TwoLayerFissus:
    """A diagram with inner brackets ``P`` and outer brackets ``Q`` grouping them."""

    diagram: Diagram
    p_in: LinearPartition
    p_out: LinearPartition
    q_in: LinearPartition
    q_out: LinearPartition


def _check_component(c: Diagram, v: frozenset, fd: FissusDiagram, ins: tuple, outs: tuple) -> None:
    if fd.bracketed_dom != ins or fd.bracketed_cod != outs:
        raise CoarseGrainMismatch(v, f"brackets {fd.bracketed_dom!r} -> {fd.bracketed_cod!r} on {ins!r} -> {outs!r}")


def _bracket(words: Sequence) -> LinearPartition:
    sizes = tuple(len(w) for w in words)
    if any(s == 0 for s in sizes):
        raise EmptyBracket("a boundary edge carries the empty word")
    return LinearPartition(sizes)


def zhat_F(c: FissusDiagram, base: Scheme, rng: random.Random | None = None) -> TwoLayerFissus:
    """Substitute the components of a fissus compound diagram, keeping both bracket layers."""
    d = c.diagram
    for v in d.planar.real_vertices:
        fd = d.vertex_labels[v]
        ins = tuple(d.edge_labels[h] for h in d.planar.vertex_inputs(v))
        outs = tuple(d.edge_labels[h] for h in d.planar.vertex_outputs(v))
        _check_component(d, v, fd, ins, outs)
    value = evaluate(d, FreeCategory(base), rng, vertex=lambda fd: fd.diagram)
    return TwoLayerFissus(value, _bracket(d.dom), _bracket(d.cod), c.p_in, c.p_out)


def sigma_collapse(t: TwoLayerFissus) -> FissusDiagram:
    """Compose the two bracket layers: ``(G, Q <| P_in, Q <| P_out)``."""
    return FissusDiagram(t.diagram, partition_compose(t.q_in, t.p_in), partition_compose(t.q_out, t.p_out))


def monad_mu(c: FissusDiagram, base: Scheme, rng: random.Random | None = None) -> FissusDiagram:
    """``mu_D = sigma o Zhat_F`` on a fissus diagram in ``T(D)``."""
    return sigma_collapse(zhat_F(c, base, rng))


def comultiply_chi(d: Diagram, scheme: Scheme) -> Diagram:
    """Replace every vertex label by its fully fissus prime diagram and every object ``x`` by ``<x>``."""
    return pushforward(eta_morphism(scheme), d)


# -- compound planar graphs ------------------------------------------------------------------------------


def compound_eval_Z(c: Diagram, rng: random.Random | None = None) -> PlanarGraph:
    """Value of a compound planar graph: substitute every component into its vertex."""
    pg = c.planar
    for v in pg.real_vertices:
        comp = c.vertex_labels[v]
        if comp.arity != (len(pg.vertex_inputs(v)), len(pg.vertex_outputs(v))):
            raise ContractionMismatch(v, f"component of arity {comp.arity}")
    return evaluate(c, PlanarCategory(), rng, obj=lambda x: 1)


def compound_eval_Zhat(c: Diagram, rng: random.Random | None = None) -> FissusPlanarGraph:
    """Value of a compound fissus planar graph, bracketed by the words on its boundary."""
    pg = c.planar
    for v in pg.real_vertices:
        comp = c.vertex_labels[v]
        ins = tuple(c.edge_labels[h] for h in pg.vertex_inputs(v))
        outs = tuple(c.edge_labels[h] for h in pg.vertex_outputs(v))
        want = (tuple(("x",) * s for s in comp.p_in.sizes), tuple(("x",) * s for s in comp.p_out.sizes))
        if want != (ins, outs):
            raise CoarseGrainMismatch(v, f"component brackets {comp.p_in.sizes}/{comp.p_out.sizes}")
    value = evaluate(c, PlanarCategory(), rng, vertex=lambda f: f.planar, obj=len)
    return FissusPlanarGraph(value, _bracket(c.dom), _bracket(c.cod))


def forget_xi(c: Diagram) -> PlanarGraph:
    return c.planar


def forget_xihat(c: Diagram) -> PlanarGraph:
    return c.planar


# -- random schemes, words and compounds ---------------------------------------------------------------


def random_scheme(rng: random.Random, n_objects: int = 3, n_generators: int = 4, max_len: int = 2,
                  name: str = "D") -> TensorScheme:

    obs = [f"x{k}" for k in range(n_objects)]
    gens = {}
    for k in range(n_generators):
        s = tuple(rng.choice(obs) for _ in range(rng.randint(1, max_len)))
        t = tuple(rng.choice(obs) for _ in range(rng.randint(1, max_len)))
        gens[f"f{k}"] = (s, t)
    # every object is the source of some generator so growth never stalls on a single wire
    for x in obs:
        if not any(s == (x,) for s, _ in gens.values()):
            gens[f"g_{x}"] = ((x,), tuple(rng.choice(obs) for _ in range(rng.randint(1, max_len))))
    return TensorScheme(obs, gens, name)


def random_word(rng: random.Random, letters: Sequence, lo: int = 1, hi: int = 3) -> tuple:
    return tuple(rng.choice(list(letters)) for _ in range(rng.randint(lo, hi)))


def scheme_chooser(scheme: TensorScheme) -> Callable:
    """Chooser for :func:`random_diagram` drawing generators of a finite scheme."""
    gens = sorted(scheme.morphisms.items(), key=lambda kv: repr(kv[0]))

    def choose(rng: random.Random, labels: tuple):
        options = []
        for f, (s, t) in gens:
            for i in range(len(labels) - len(s) + 1):
                if labels[i : i + len(s)] == s:
                    options.append((i, len(s), f, t))
        return rng.choice(options) if options else None

    return choose


def fissus_chooser(inner_chooser: Callable, max_vertices: int = 3, max_count: int = 3) -> Callable:
    """Chooser one level up: vertices labelled by random fissus diagrams whose brackets match."""

    def choose(rng: random.Random, labels: tuple):
        count = rng.randint(1, min(max_count, len(labels)))
        start = rng.randint(0, len(labels) - count)
        seg = labels[start : start + count]
        fd = random_fissus(rng, seg, inner_chooser, max_vertices)
        return start, count, fd, fd.bracketed_cod

    return choose


def random_fissus(rng: random.Random, bracketed_dom: Sequence, chooser: Callable, max_vertices: int = 3,
                  max_blocks: int | None = 3) -> FissusDiagram:
    """Random fissus diagram with the given bracketed domain (nonempty brackets)."""
    dom = mu_objects(bracketed_dom)
    p_in = _bracket(bracketed_dom)
    d = random_diagram(rng, dom, chooser, max_vertices=max_vertices)
    return FissusDiagram(d, p_in, random_partition(rng, len(d.cod), max_blocks))
