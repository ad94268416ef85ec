"""Command-line front end.

Every command prints a JSON ``CommandResult`` (``dot`` prints DOT text).
Exit codes: 0 ok, 1 law or validation failure, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

from . import io_json
from .category_engine import (
    CategoryError,
    FreeCategory,
    LawReport,
    MatrixCategory,
    PlanarCategory,
    TerminalCategory,
    T_map,
    check_backend,
    eta_morphism,
    evaluate,
    fissus_chooser,
    monad_mu,
    monad_T,
    mu_objects,
    random_fissus,
    random_scheme,
    random_word,
    scheme_chooser,
    unit_eta,
)
from .graph_core import GraphError
from .planar import coarse_grain, compose_planar, contraction, decompose, tensor_planar, to_dot
from .scheme_diagram import SchemeError, SchemeMorphism

__all__ = ["CommandResult", "main", "run", "build_parser"]

CHUNK = 10


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: list = field(default_factory=list)
    exit_code: int = 0

    def to_json(self) -> dict:
        return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


def _ok(payload: Any, diagnostics: list | None = None) -> CommandResult:
    return CommandResult("ok", payload, diagnostics or [])


def _error(kind: str, message: str, code: int, **extra) -> CommandResult:
    return CommandResult("error", None, [{"kind": kind, "message": message, **extra}], code)


# -- graph commands -------------------------------------------------------------------


def cmd_validate(args) -> CommandResult:
    data = io_json.read_json(args.path)
    rep = io_json.validation_report(data)
    return _ok({"kind": rep["kind"], "flags": rep["true_flags"], "report": rep})


def _emit_planar(pg, args) -> CommandResult:
    return _ok(io_json.planar_to_json(pg, canon=args.canon))


def cmd_tensor(args) -> CommandResult:
    a, b = (io_json.parse_planar(io_json.read_json(p)) for p in (args.first, args.second))
    return _emit_planar(tensor_planar(a, b), args)


def cmd_compose(args) -> CommandResult:
    a, b = (io_json.parse_planar(io_json.read_json(p)) for p in (args.first, args.second))
    return _emit_planar(compose_planar(a, b), args)


def cmd_decompose(args) -> CommandResult:
    pg = io_json.parse_planar(io_json.read_json(args.path))
    layers = [io_json.planar_to_json(x, canon=args.canon) for x in decompose(pg)]
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        files = []
        for k, layer in enumerate(layers):
            path = os.path.join(args.out, f"layer_{k:03d}.json")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(io_json.dumps(layer))
            files.append(path)
        return _ok({"layers": len(layers), "files": files})
    return _ok({"layers": len(layers), "graphs": layers})


def cmd_coarsegrain(args) -> CommandResult:
    f = io_json.parse_fissus(io_json.read_json(args.path))
    return _emit_planar(coarse_grain(f), args)


def cmd_contract(args) -> CommandResult:
    pg = io_json.parse_planar(io_json.read_json(args.path))
    return _emit_planar(contraction(pg), args)


def cmd_dot(args) -> CommandResult:
    pg = io_json.parse_planar(io_json.read_json(args.path))
    return _ok(to_dot(pg))


# -- evaluation -------------------------------------------------------------------


def cmd_eval(args) -> CommandResult:
    data = io_json.read_json(args.diagram)
    dims, mats = io_json.parse_binding(io_json.read_json(args.binding))
    v = MatrixCategory()
    d = io_json.bind_diagram(io_json.parse_diagram(data), dims, mats, v)
    value = evaluate(d, v)
    diags = []
    if args.independence:
        rng = random.Random(args.seed)
        for t in range(args.independence):
            other = evaluate(d, v, rng=rng)
            if other != value:
                return CommandResult("error", value.to_json(),
                                     [{"kind": "IndependenceFailure", "message": f"decomposition {t} differs",
                                       "value": other.to_json()}], 1)
        diags.append({"kind": "independence", "message": f"{args.independence} decompositions agree"})
    return _ok(value.to_json(), diags)


# -- law suites -------------------------------------------------------------------


def _backend(name: str, rng: random.Random):
    if name == "matrix":
        return MatrixCategory()
    if name == "terminal":
        return TerminalCategory()
    if name == "planar":
        return PlanarCategory()
    if name == "free":
        d = random_scheme(rng, 3, 4)
        return FreeCategory(d, scheme_chooser(d))
    raise ValueError(name)


def _manifold(name: str):
    from . import manifold as M

    rng = random.Random(0)
    table = {
        "phi-matrix": lambda: M.phi(MatrixCategory()),
        "phi-terminal": lambda: M.phi(TerminalCategory()),
        "free": lambda: M.free_manifold(random_scheme(rng, 3, 4)),
        "prim": M.prim_cg_manifold,
        "gamma": M.gamma_cg_manifold,
        "mutated": lambda: M.mutated_fusion(M.phi(MatrixCategory())),
    }
    return table[name]()


def _monad_chunk(rng: random.Random, n: int) -> LawReport:
    rep = LawReport({}, {})
    d = random_scheme(random.Random(0), 3, 4)
    td = monad_T(d)
    ch = scheme_chooser(d)
    letters = sorted(d.objects)
    mu_d = SchemeMorphism(monad_T(td), td, mu_objects, lambda c: monad_mu(c, d), "mu")
    eta_d = T_map(eta_morphism(d))
    for _ in range(n):
        bd = tuple(tuple(random_word(rng, letters, 1, 2) for _ in range(rng.randint(1, 2))) for _ in range(rng.randint(1, 2)))
        c = random_fissus(rng, bd, ch, 3)
        rep.record("left unit", monad_mu(unit_eta(c, td), d) == c, c)
        rep.record("right unit", monad_mu(eta_d(c), d) == c, c)
        bbd = tuple(tuple(tuple(random_word(rng, letters, 1, 2) for _ in range(rng.randint(1, 2)))
                          for _ in range(rng.randint(1, 2))) for _ in range(rng.randint(1, 2)))
        x = random_fissus(rng, bbd, fissus_chooser(fissus_chooser(ch, 2), 2), 2)
        rep.record("associativity", monad_mu(T_map(mu_d)(x), d) == monad_mu(monad_mu(x, td), d), x)
    return rep


def _run_chunk(task: tuple) -> dict:
    suite, target, seed, idx, n = task
    rng = random.Random(f"{seed}:{suite}:{target}:{idx}")
    if suite == "category":
        rep = check_backend(_backend(target, random.Random(seed)), rng, n)
    elif suite == "monad":
        rep = _monad_chunk(rng, n)
    else:
        from .manifold import check_algebra_laws, derived_op_laws

        m = _manifold(target)
        rep = check_algebra_laws(m, rng, n)
        ops = derived_op_laws(m, rng, n)
        rep.checked.update(ops.checked)
        rep.failures.update(ops.failures)
    return {"checked": rep.checked, "failures": {k: [io_json.to_jsonable(w) for w in v[:1]] for k, v in rep.failures.items() if v},
            "counts": {k: len(v) for k, v in rep.failures.items()}}


def cmd_laws(args) -> CommandResult:
    defaults = {"category": "matrix", "monad": "free", "manifold": "phi-matrix"}
    target = args.target or defaults[args.suite]
    tasks = []
    left, idx = args.n, 0
    while left > 0:
        k = min(CHUNK, left)
        tasks.append((args.suite, target, args.seed, idx, k))
        left -= k
        idx += 1
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_run_chunk, tasks))
    else:
        results = [_run_chunk(t) for t in tasks]
    summary: dict = {}
    witnesses: dict = {}
    for r in results:
        for law, c in r["checked"].items():
            s = summary.setdefault(law, {"checked": 0, "failed": 0})
            s["checked"] += c
            s["failed"] += r["counts"].get(law, 0)
        for law, ws in r["failures"].items():
            witnesses.setdefault(law, ws[0])
    payload = {"suite": args.suite, "target": target, "seed": args.seed, "n": args.n, "laws": summary}
    if args.descriptor and args.suite == "manifold":
        with open(args.descriptor, "w", encoding="utf-8") as fh:
            fh.write(io_json.dumps(io_json.manifold_descriptor(_manifold(target), random.Random(args.seed))))
    if witnesses:
        diags = [{"kind": "LawViolation", "law": law, "witness": w} for law, w in witnesses.items()]
        return CommandResult("error", payload, diags, 1)
    return _ok(payload)


# -- driver -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tensorcalc", description="Planar graphs, diagrams and tensor calculus.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--out", help="write the payload here (decompose: a directory)")
    common.add_argument("--canon", action="store_true", help="emit canonical forms")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate and classify a graph file")
    s.add_argument("path")
    s.set_defaults(fn=cmd_validate)
    for name, fn, doc in (("tensor", cmd_tensor, "tensor product of two planar graphs"),
                          ("compose", cmd_compose, "FIRST then SECOND: outputs of FIRST feed SECOND")):
        s = sub.add_parser(name, parents=[common], help=doc)
        s.add_argument("first")
        s.add_argument("second")
        s.set_defaults(fn=fn)
    for name, fn, doc in (("decompose", cmd_decompose, "essential prime layers"),
                          ("coarsegrain", cmd_coarsegrain, "coarse-grain a fissus planar graph"),
                          ("contract", cmd_contract, "contract to a single vertex"),
                          ("dot", cmd_dot, "DOT export of the layered rendering")):
        s = sub.add_parser(name, parents=[common], help=doc)
        s.add_argument("path")
        s.set_defaults(fn=fn)
    s = sub.add_parser("eval", parents=[common], help="evaluate a diagram in matrices")
    s.add_argument("diagram")
    s.add_argument("binding")
    s.add_argument("--independence", type=int, default=0, metavar="N",
                   help="re-evaluate along N random decompositions")
    s.set_defaults(fn=cmd_eval)
    s = sub.add_parser("laws", parents=[common], help="run a law suite")
    s.add_argument("suite", choices=["category", "monad", "manifold"])
    s.add_argument("--target", help="category: matrix|terminal|planar|free; "
                   "manifold: phi-matrix|phi-terminal|free|prim|gamma|mutated")
    s.add_argument("-n", type=int, default=50, help="number of samples")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--descriptor", help="manifold suite: write a JSON descriptor here")
    s.set_defaults(fn=cmd_laws)
    return p


TARGETS = {"category": {"matrix", "terminal", "planar", "free"}, "monad": {"free"},
           "manifold": {"phi-matrix", "phi-terminal", "free", "prim", "gamma", "mutated"}}


def run(argv: Sequence[str] | None = None) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if not exc.code:
            raise
        return _error("UsageError", "invalid arguments", 2)
    if args.command == "laws" and args.target and args.target not in TARGETS[args.suite]:
        return _error("UsageError", f"unknown target {args.target!r} for suite {args.suite}", 2)
    try:
        res = args.fn(args)
    except io_json.ParseError as exc:
        return _error("ParseError", str(exc), 2)
    except (GraphError, SchemeError, CategoryError) as exc:
        extra = {}
        edges = getattr(exc, "edges", None)
        if edges is not None:
            extra["witness"] = [sorted(e) for e in edges]
        return _error(type(exc).__name__, str(exc), 1, **extra)
    res.command = args.command
    res.out = getattr(args, "out", None)
    return res


def main(argv: Sequence[str] | None = None) -> int:
    res = run(argv)
    cmd = getattr(res, "command", None)
    out = getattr(res, "out", None)
    if cmd == "dot" and res.status == "ok":
        text = res.payload
    else:
        text = io_json.dumps(res.to_json())
    if out and cmd != "decompose" and res.status == "ok":
        body = res.payload if cmd == "dot" else io_json.dumps(res.payload)
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(body)
    sys.stdout.write(text)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
