"""Command-line front end: build the algebras, run the verification suites, print a report."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import groups as grp
from . import lie as lie_mod
from .errors import HopfWreathError
from .hopf import (
    AxiomReport,
    HopfMorphism,
    antipode_map,
    check_axioms,
    convolution_inverse,
    convolve,
    group_likes,
    hopf_kernel,
    identity_map,
    maps_equal,
    primitives,
    unit_counit,
)
from .linear import LinComb, rank, rref_rows, tensor
from .serialize import (
    action_from_json,
    cocycle_from_json,
    group_extension_from_json,
    group_from_json,
    lie_extension_from_json,
    lie_from_json,
    load_json,
    symbol_to_json,
)
from . import smash as sm

DEFAULT_SEED = 20240601
MAX_WITNESSES = 25


@dataclass
class Check:
    name: str
    ok: bool
    witnesses: list = field(default_factory=list)
    detail: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.ok else "fail"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witnesses": [_jsonable(w) for w in self.witnesses[:MAX_WITNESSES]],
            "detail": self.detail,
        }


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    elapsed_ms: float | None = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, ok, witnesses=(), detail=""):
        self.checks.append(Check(name, bool(ok), list(witnesses), detail))
        return self

    def add_axioms(self, rep: AxiomReport, prefix: str = ""):
        for fam in rep.families():
            bad = rep.violations[fam]
            n = rep.counts.get(fam, 0)
            self.add(prefix + fam, not bad, bad, f"{n - len(bad)}/{n} cases hold")
        return self

    def to_json(self) -> dict:
        return {"command": self.command, "checks": [c.to_json() for c in self.checks], "elapsed_ms": self.elapsed_ms}


def _jsonable(w):
    if isinstance(w, (list, tuple)):
        return [_jsonable(x) for x in w]
    if isinstance(w, LinComb):
        return {"terms": [{"basis": symbol_to_json(s), "coeff": str(c)} for s, c in w.items()]}
    return symbol_to_json(w)


@dataclass
class RunConfig:
    command: str
    options: dict = field(default_factory=dict)
    N: int = 4
    window: int | None = None
    mode: str = "text"
    seed: int = DEFAULT_SEED
    timing: bool = True


def emit_report(r: Report, mode: str = "text") -> bytes:
    if mode == "json":
        return (json.dumps(r.to_json(), sort_keys=False) + "\n").encode()
    lines = [f"hopfwreath {r.command}"]
    for c in r.checks:
        lines.append(f"  {c.status.upper():4}  {c.name:<28} {c.detail}".rstrip())
        if not c.ok:
            for w in c.witnesses[:5]:
                lines.append(f"        witness: {json.dumps(_jsonable(w))}")
            if len(c.witnesses) > 5:
                lines.append(f"        ... {len(c.witnesses) - 5} more")
    if r.checks:
        passed = sum(c.ok for c in r.checks)
        tail = f"result: {'pass' if r.ok else 'fail'} ({passed}/{len(r.checks)} checks)"
        if r.elapsed_ms is not None:
            tail += f"  {r.elapsed_ms:.1f} ms"
        lines.append(tail)
    return ("\n".join(lines) + "\n").encode()


# -- input resolution -------------------------------------------------------


def _resolve(spec: str, builtin_names, parse, what: str):
    if spec is None:
        raise HopfWreathError(f"missing {what} argument")
    if spec.startswith("builtin:"):
        return parse({"type": "builtin", "name": spec[len("builtin:"):]})
    if Path(spec).exists():
        return parse(load_json(spec))
    if spec in builtin_names or any(spec.startswith(p) for p in ("abelian-", "split:")):
        return parse({"type": "builtin", "name": spec})
    return parse(load_json(spec))


def load_group(spec):
    return _resolve(spec, grp.BUILTIN_GROUPS + ("C1",), group_from_json, "group")


def load_lie(spec):
    return _resolve(spec, lie_mod.BUILTIN_LIE, lie_from_json, "Lie algebra")


def load_group_extension(spec):
    return _resolve(spec, grp.BUILTIN_GROUP_EXTENSIONS, group_extension_from_json, "group extension")


def load_lie_extension(spec):
    return _resolve(spec, lie_mod.BUILTIN_LIE_EXTENSIONS, lie_extension_from_json, "Lie extension")


def extension_family(spec: str) -> str:
    name = spec[len("builtin:"):] if spec.startswith("builtin:") else spec
    if name in grp.BUILTIN_GROUP_EXTENSIONS or name.startswith("split:"):
        return "group"
    if name in lie_mod.BUILTIN_LIE_EXTENSIONS:
        return "lie"
    obj = load_json(spec)
    total = obj.get("total", {}) if isinstance(obj, dict) else {}
    if isinstance(total, dict) and ("basis" in total or total.get("name") in lie_mod.BUILTIN_LIE):
        return "lie"
    return "group"


def _hopf_from(cfg: RunConfig):
    o = cfg.options
    if o.get("group"):
        G = load_group(o["group"])
        return grp.group_algebra(G), G, "group"
    if o.get("lie"):
        L = load_lie(o["lie"])
        return lie_mod.enveloping_hopf(L, cfg.N), L, "lie"
    raise HopfWreathError("pass --group or --lie")


def _window(cfg: RunConfig, default, lie: bool = False):
    w = cfg.window if cfg.window is not None else default
    if cfg.window is not None and cfg.window > cfg.N and (lie or cfg.options.get("lie")):
        raise HopfWreathError(f"window {cfg.window} exceeds N={cfg.N}")
    return w


def _need_lie_N(cfg: RunConfig):
    if cfg.N < 2:
        raise HopfWreathError("Lie commands need N >= 2")


# -- commands ----------------------------------------------------------------


def cmd_check_axioms(cfg: RunConfig, rep: Report):
    H, obj, family = _hopf_from(cfg)
    window = _window(cfg, H.cap)
    rep.add_axioms(check_axioms(H, window))
    if family == "lie":
        rng = random.Random(cfg.seed)
        bad = []
        for _ in range(20):
            word = tuple(rng.randrange(obj.dim) for _ in range(rng.randint(0, cfg.N)))
            forms = {s: lie_mod.pbw_normalize(word, obj, strategy=s) for s in ("insert", "leftmost", "rightmost")}
            if len(set(forms.values())) != 1:
                bad.append(word)
        rep.add("pbw-confluence", not bad, bad, f"20 random words, seed {cfg.seed}")


def cmd_wreath_group(cfg: RunConfig, rep: Report):
    A, Q = load_group(cfg.options["A"]), load_group(cfg.options["Q"])
    W = sm.wreath_hopf("group", A, Q, validate=False)
    rep.add_axioms(sm.check_module_axioms(W.action), "action:")
    rep.add_axioms(check_axioms(W.smash), "hopf:")
    dim = len(W.smash.basis)
    rep.add("dimension", dim == len(A) ** len(Q) * len(Q), [], f"{dim} = |A|^|Q| |Q|")
    rep.add_axioms(W.tau.check(), "tau:")


def cmd_wreath_lie(cfg: RunConfig, rep: Report):
    _need_lie_N(cfg)
    A, Q = load_lie(cfg.options["A"]), load_lie(cfg.options["Q"])
    W = sm.wreath_hopf("lie", A, Q, cfg.N, validate=False)
    window = _window(cfg, cfg.N, lie=True)
    rep.add_axioms(sm.check_module_axioms(W.action, window), "action:")
    rep.add_axioms(check_axioms(W.smash, window), "hopf:")
    nmon = len(lie_mod.monomials(Q.dim, cfg.N))
    expected = A.dim * nmon + Q.dim
    got = len(primitives(W.smash))
    rep.add("primitive-dimension", got == expected, [] if got == expected else [got], f"{got} = dim a * {nmon} + dim q")


def cmd_kk_embed_group(cfg: RunConfig, rep: Report):
    ext = load_group_extension(cfg.options["ext"])
    graph = grp.kk_embed_group(ext)
    res = grp.check_group_embedding(ext, graph)
    n = len(ext.total)
    details = {"homomorphism": f"{n * n - len(res['homomorphism'])}/{n * n} pairs",
               "injective": f"{len({v for _, v in graph})} distinct images of {n}",
               "projection": "rho o phi = pi", "kernel_at_one": "phi(iota(a))(1) = a"}
    for k, v in res.items():
        rep.add(k, not v, v, details[k])


def cmd_kk_embed_lie(cfg: RunConfig, rep: Report):
    _need_lie_N(cfg)
    ext = load_lie_extension(cfg.options["ext"])
    phi = lie_mod.kk_embed_lie(ext, cfg.N)
    res = lie_mod.check_lie_embedding(ext, phi, cfg.N)
    n = ext.total.dim
    rep.add("bracket", not res["bracket"], res["bracket"],
            f"{n * n - len(res['bracket'])}/{n * n} bracket pairs preserved on window {cfg.N - 1}")
    rep.add("injective", not res["injective"], res["injective"], f"rank {n}")
    rep.add("projection", not res["projection"], res["projection"], "q-part equals pi(e)")


def _group_hopf(spec):
    return grp.group_algebra(load_group(spec))


def cmd_smash(cfg: RunConfig, rep: Report):
    H, Q = _group_hopf(cfg.options["H"]), _group_hopf(cfg.options["Q"])
    act = action_from_json(load_json(cfg.options["action"]), Q, H) if cfg.options.get("action") else sm.trivial_action(Q, H)
    mod = sm.check_module_axioms(act)
    rep.add_axioms(mod, "action:")
    if mod.ok:
        S = sm.smash_product(act, validate=False)
        rep.add_axioms(check_axioms(S), "hopf:")


def cmd_crossed(cfg: RunConfig, rep: Report):
    H, Q = _group_hopf(cfg.options["H"]), _group_hopf(cfg.options["Q"])
    act = action_from_json(load_json(cfg.options["action"]), Q, H) if cfg.options.get("action") else sm.trivial_action(Q, H)
    try:
        if cfg.options.get("cocycle"):
            sigma = cocycle_from_json(load_json(cfg.options["cocycle"]), Q, H)
        else:
            sigma = sm.trivial_cocycle(Q, H)
    except HopfWreathError as exc:
        if type(exc).__name__ != "CocycleNotInvertible":
            raise
        rep.add("cocycle-invertible", False, [exc.witness], str(exc))
        return
    rep.add("cocycle-invertible", True, [], "sigma * delta = eta eps")
    C = sm.crossed_product(act, sigma)
    rep.add_axioms(check_axioms(C))
    if cfg.options.get("compare"):
        G = load_group(cfg.options["compare"])
        iso = sm.algebra_isomorphism_to_group_algebra(C, G)
        rep.add(f"isomorphic-to-k{G.name}", iso is not None, [] if iso else ["no basis isomorphism"],
                "basis-to-group isomorphism found" if iso else "")


def cmd_hker(cfg: RunConfig, rep: Report):
    spec = cfg.options["ext"]
    if extension_family(spec) == "group":
        ext = load_group_extension(spec)
        data = sm.group_cleft_data(ext)
        window = None
    else:
        _need_lie_N(cfg)
        ext = load_lie_extension(spec)
        data = sm.lie_cleft_data(ext, cfg.N)
        window = _window(cfg, cfg.N, lie=True)
    pi = HopfMorphism(data.E, data.Q, data.pi)
    K = hopf_kernel(pi, window)
    image = rref_rows([data.iota(a) for a in data.A.basis_upto(window)])
    rep.add("kernel=image(iota)", rref_rows(K) == image, [], f"dim {len(K)}")
    closed = []
    for x in K:
        for y in K:
            if window is not None and data.E.degree_of(x) + data.E.degree_of(y) > window:
                continue
            if rank(K + [data.E.mul(x, y)]) != len(K):
                closed.append(("product",))
                break
    rep.add("subalgebra", not closed, closed, "closed under products on the window")
    pairs = [tensor(x, y) for x in K for y in K]
    base = rank(pairs)
    bad = [i for i, x in enumerate(K) if rank(pairs + [data.E.delta(x)]) != base]
    rep.add("subcoalgebra", not bad, bad, "coproducts land in K (x) K")


def cmd_group_likes(cfg: RunConfig, rep: Report):
    H, obj, family = _hopf_from(cfg)
    G = group_likes(H, _window(cfg, None))
    rep.add("independent", rank(G) == len(G), [], f"{len(G)} group-likes")
    if family == "group":
        rep.add("equals-group", sorted(G, key=repr) == sorted((LinComb.basis(g) for g in obj), key=repr), [],
                f"|G| = {len(obj)}")
    else:
        rep.add("only-unit", G == [H.unit], [] if G == [H.unit] else G, "char 0: only 1")


def cmd_primitives(cfg: RunConfig, rep: Report):
    H, obj, family = _hopf_from(cfg)
    window = _window(cfg, None)
    P = primitives(H, window)
    if family == "group":
        rep.add("dimension", len(P) == 0, P, f"dim {len(P)}")
        return
    deg1 = rref_rows([LinComb.basis((i,)) for i in range(obj.dim)])
    rep.add("degree-one-span", rref_rows(P) == deg1, [], f"dim {len(P)} = dim g = {obj.dim}")
    mons = lie_mod.monomials(len(P), cfg.N)
    prods = [H.mul_many(*[P[i] for i in m]) for m in mons]
    rep.add("pbw-independence", rank(prods) == len(prods), [], f"{len(prods)} ordered monomials")


def cmd_conv_inverse(cfg: RunConfig, rep: Report):
    H, obj, family = _hopf_from(cfg)
    window = _window(cfg, None)
    inv = convolution_inverse(identity_map(H, window), H, H, window)
    bad = maps_equal(inv, antipode_map(H, window), H.basis_upto(window))
    rep.add("equals-antipode", not bad, bad, f"{len(H.basis_upto(window))} basis elements")
    right = convolve(identity_map(H, window), inv, H, H, window)
    ue = unit_counit(H, H, window)
    bad2 = maps_equal(right, ue, H.basis_upto(window))
    rep.add("two-sided", not bad2, bad2, "id * k = eta eps")


def cmd_verify_theorem_g(cfg: RunConfig, rep: Report):
    A, Q = load_group(cfg.options["A"]), load_group(cfg.options["Q"])
    r = sm.wreath_group_algebra_check(A, Q)
    rep.add_axioms(r)
    dim = len(A) ** len(Q) * len(Q)
    rep.add("dimension", r.ok, [], f"{dim}-dim isomorphism k(A wr Q) = k(A^Q) # kQ")


def cmd_verify_theorem_l(cfg: RunConfig, rep: Report):
    _need_lie_N(cfg)
    A, Q = load_lie(cfg.options["A"]), load_lie(cfg.options["Q"])
    rep.add_axioms(sm.primitive_bracket_check(A, Q, cfg.N))


def cmd_round_trip(cfg: RunConfig, rep: Report):
    spec = cfg.options["ext"]
    family = cfg.options.get("family") or extension_family(spec)
    if family == "group":
        ext = load_group_extension(spec)
        data = sm.group_cleft_data(ext)
        al = sm.alpha_embed(data, "group")
        rep.add_axioms(al.report, "alpha:")
        rec = sm.recover_cleft_extension(al.wreath, [al.images[e] for e in ext.total])
        rep.add_axioms(sm.cleavage_check(rec), "cleavage:")
        iso = grp.find_extension_isomorphism(ext, rec.source)
        rep.add("extension-isomorphic", iso is not None, [], "recovered extension matches the input")
        x = grp.embedding_images_conjugate(ext, grp.shifted_section(ext))
        rep.add("conjugate-images", x is not None, [], f"conjugated by {json.dumps(_jsonable(x))}" if x else "")
    else:
        _need_lie_N(cfg)
        ext = load_lie_extension(spec)
        data = sm.lie_cleft_data(ext, cfg.N)
        al = sm.alpha_embed(data, "lie", window=_window(cfg, None, lie=True))
        rep.add_axioms(al.report, "alpha:")
        rec = sm.recover_cleft_extension(al.wreath, [al.images[(e,)] for e in range(ext.total.dim)])
        rep.add_axioms(sm.cleavage_check(rec), "cleavage:")
        same = rec.source.total.structure_constants() == ext.total.structure_constants()
        rep.add("lie-isomorphic", same, [], "structure constants agree in the image basis")


COMMANDS = {
    "check-axioms": cmd_check_axioms,
    "wreath-group": cmd_wreath_group,
    "wreath-lie": cmd_wreath_lie,
    "kk-embed-group": cmd_kk_embed_group,
    "kk-embed-lie": cmd_kk_embed_lie,
    "smash": cmd_smash,
    "crossed": cmd_crossed,
    "hker": cmd_hker,
    "group-likes": cmd_group_likes,
    "primitives": cmd_primitives,
    "conv-inverse": cmd_conv_inverse,
    "verify-theorem-g": cmd_verify_theorem_g,
    "verify-theorem-l": cmd_verify_theorem_l,
    "round-trip": cmd_round_trip,
}


def run(config: RunConfig) -> Report:
    if config.command not in COMMANDS:
        raise HopfWreathError(f"unknown command {config.command!r}")
    rep = Report(config.command)
    start = time.perf_counter()
    COMMANDS[config.command](config, rep)
    if config.timing:
        rep.elapsed_ms = round((time.perf_counter() - start) * 1000, 3)
    return rep


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON report")
    common.add_argument("--N", type=int, default=4, help="truncation degree for Lie inputs (default 4)")
    common.add_argument("--window", type=int, default=None, help="override the check window")
    common.add_argument("--seed", type=int, default=None, help="seed for randomised sweeps (env HOPFWREATH_SEED)")
    common.add_argument("--no-timing", action="store_true", help="report elapsed_ms as null for byte-stable output")

    p = argparse.ArgumentParser(prog="hopfwreath", description="Exact wreath products of cocommutative Hopf algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help, *args):
        sp = sub.add_parser(name, parents=[common], help=help)
        for a in args:
            sp.add_argument(f"--{a}", dest=a, default=None)
        return sp

    sp = add("check-axioms", "Hopf axioms of a group algebra or truncated envelope", "group", "lie")
    add("wreath-group", "build k(A^Q) # kQ and check it", "A", "Q")
    add("wreath-lie", "build the truncated Lie wreath Hopf algebra", "A", "Q")
    add("kk-embed-group", "group embedding of an extension into A wr Q", "ext")
    add("kk-embed-lie", "Lie embedding of an extension into a wr q", "ext")
    add("smash", "smash product of group algebras under an action", "H", "Q", "action")
    add("crossed", "crossed product of group algebras with a cocycle", "H", "Q", "action", "cocycle", "compare")
    add("hker", "Hopf kernel of the projection of an extension", "ext")
    add("group-likes", "group-like elements", "group", "lie")
    add("primitives", "primitive elements", "group", "lie")
    add("conv-inverse", "convolution inverse of the identity", "group", "lie")
    add("verify-theorem-g", "group wreath product versus smash product", "A", "Q")
    add("verify-theorem-l", "primitive commutators versus the Lie wreath bracket", "A", "Q")
    sp = add("round-trip", "embed an extension, recover it, compare", "ext")
    sp.add_argument("--family", choices=("group", "lie"), default=None)
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = _parser().parse_args(argv)
    seed = ns.seed
    if seed is None:
        env = os.environ.get("HOPFWREATH_SEED")
        seed = int(env) if env else DEFAULT_SEED
    skip = {"command", "json", "N", "window", "seed", "no_timing"}
    opts = {k: v for k, v in vars(ns).items() if k not in skip and v is not None}
    return RunConfig(ns.command, opts, N=ns.N, window=ns.window, mode="json" if ns.json else "text",
                     seed=seed, timing=not ns.no_timing)


def main(argv=None) -> int:
    cfg = config_from_args(argv)
    try:
        rep = run(cfg)
    except HopfWreathError as exc:
        rep = Report(cfg.command)
        rep.add("error", False, [[type(exc).__name__, str(exc), _jsonable(exc.witness)]], f"{type(exc).__name__}: {exc}")
        sys.stdout.buffer.write(emit_report(rep, cfg.mode))
        if cfg.mode != "json":
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    sys.stdout.buffer.write(emit_report(rep, cfg.mode))
    sys.stdout.flush()
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
