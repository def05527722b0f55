"""Hopf actions, smash and crossed products, wreath products and cleft-extension data."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import (
    ActionInvalid,
    CocycleNotInvertible,
    HomomorphismFailure,
    KernelMismatch,
    NoSolution,
    NotCleft,
    NotInvertible,
    NotSurjective,
    ValidationError,
)
from .groups import (
    FiniteGroup,
    GroupExtension,
    find_isomorphism,
    group_algebra,
    kk_embed_group,
    measuring_group_iso,
    recover_extension_from_subgroup,
)
from .hopf import (
    AxiomReport,
    HopfMorphism,
    HopfOps,
    convolution_inverse,
    convolve,
    hopf_kernel,
    restrict_to_subspace,
    sweedler_expand,
    unit_counit,
)
from .lie import (
    LieAlgebra,
    LieExtension,
    LieWreath,
    WreathLieElement,
    coalgebra_section,
    enveloping_hopf,
    kk_embed_lie,
    lie_wreath_bracket,
    monomials,
    split_multiplicity,
)
from .linear import Accumulator, LinComb, LinMap, express_in, kernel_basis, rank, solve, tensor


def _fits(window, *degs) -> bool:
    return window is None or sum(degs) <= window


class HopfAction:
    """A left action ``star: Q (x) H -> H`` given on basis symbols."""

    def __init__(self, Q: HopfOps, H: HopfOps, star: Callable, name: str = ""):
        self.Q, self.H = Q, H
        self._star = star
        self._cache: dict = {}
        self.name = name

    def act(self, q, h) -> LinComb:
        key = (q, h)
        v = self._cache.get(key)
        if v is None:
            v = self._star(q, h)
            self._cache[key] = v
        return v

    def act_lin(self, x: LinComb, y: LinComb) -> LinComb:
        acc = Accumulator()
        for q, c in x.raw_items():
            for h, d in y.raw_items():
                acc.add_lincomb(self.act(q, h), c * d)
        return acc.result()


def trivial_action(Q: HopfOps, H: HopfOps) -> HopfAction:
    return HopfAction(Q, H, lambda q, h: LinComb.basis(h, Q.counit_of(q)), name="trivial")


def check_module_axioms(act: HopfAction, window: int | None = None) -> AxiomReport:
    """Unit, multiplicativity, identity, associativity and coalgebra-map laws of an action.

    Only combinations whose total degree fits in ``window`` are examined.
    """
    Q, H = act.Q, act.H
    rep = AxiomReport()
    for fam in ("unit", "multiplicative", "identity", "associative", "coalgebra"):
        rep.touch(fam)
    qb = Q.basis_upto(window)
    hb = H.basis_upto(window)
    dq = {q: Q.degree(q) for q in qb}
    dh = {h: H.degree(h) for h in hb}
    for q in qb:
        rep.record("unit", act.act_lin(LinComb.basis(q), H.unit) == H.unit * Q.counit_of(q), (q,))
    for h in hb:
        rep.record("identity", act.act_lin(Q.unit, LinComb.basis(h)) == LinComb.basis(h), (h,))
    for q in qb:
        for h in hb:
            if not _fits(window, dq[q], dh[h]):
                continue
            v = act.act(q, h)
            lhs = H.delta(v)
            rhs = Accumulator()
            for (q1, q2), c in Q.cop(q).raw_items():
                for (h1, h2), d in H.cop(h).raw_items():
                    rhs.add_lincomb(tensor(act.act(q1, h1), act.act(q2, h2)), c * d)
            ok = lhs == rhs.result() and H.eps(v) == Q.counit_of(q) * H.counit_of(h)
            rep.record("coalgebra", ok, (q, h))
            for r in qb:
                if not _fits(window, dq[q], dq[r], dh[h]):
                    continue
                lhs = act.act_lin(LinComb.basis(q), act.act(r, h))
                rhs = act.act_lin(Q.prod(q, r), LinComb.basis(h))
                rep.record("associative", lhs == rhs, (q, r, h))
            for k in hb:
                if not _fits(window, dq[q], dh[h], dh[k]):
                    continue
                lhs = act.act_lin(LinComb.basis(q), H.prod(h, k))
                rhs = Accumulator()
                for (q1, q2), c in Q.cop(q).raw_items():
                    rhs.add_lincomb(H.mul(act.act(q1, h), act.act(q2, k)), c)
                rep.record("multiplicative", lhs == rhs.result(), (q, h, k))
    return rep


def _tensor_coalgebra_parts(H: HopfOps, Q: HopfOps):
    def cop(s):
        h, q = s
        acc = Accumulator()
        for (h1, h2), c in H.cop(h).raw_items():
            for (q1, q2), d in Q.cop(q).raw_items():
                acc.add(((h1, q1), (h2, q2)), c * d)
        return acc.result()

    def basis(cap):
        def gen():
            hb, qb = H.basis, Q.basis
            out = []
            for h in hb:
                dh = H.degree(h)
                for q in qb:
                    if cap is None or dh + Q.degree(q) <= cap:
                        out.append((h, q))
            out.sort(key=lambda s: H.degree(s[0]) + Q.degree(s[1]))
            return out
        return gen

    return cop, basis


def tensor_coalgebra(C: HopfOps, D: HopfOps, cap: int | None = None) -> HopfOps:
    """``C (x) D`` as a coalgebra on pairs (no product)."""
    cop, basis = _tensor_coalgebra_parts(C, D)
    return HopfOps(
        f"{C.name}(x){D.name}",
        basis(cap),
        None,
        tensor(C.unit, D.unit),
        cop,
        lambda s: C.counit_of(s[0]) * D.counit_of(s[1]),
        degree=lambda s: C.degree(s[0]) + D.degree(s[1]),
        cap=cap,
    )


def _smash_cap(H: HopfOps, Q: HopfOps, cap):
    if cap is not None:
        return cap
    if H.cap is None and Q.cap is None:
        return None
    return max(c for c in (H.cap, Q.cap) if c is not None)


def smash_product(act: HopfAction, cap: int | None = None, validate: bool = True, window: int | None = None) -> HopfOps:
    """``H # Q`` with ``(h#q)(k#r) = sum h (q1 * k) # q2 r`` on the tensor coalgebra.

    Symbols are pairs ``(h, q)``.  ``validate`` checks the action axioms on
    ``window`` (default: the cap) and raises ActionInvalid on failure.
    """
    H, Q = act.H, act.Q
    cap = _smash_cap(H, Q, cap)
    if validate:
        rep = check_module_axioms(act, cap if window is None else window)
        if not rep.ok:
            bad = next(f for f in rep.families() if rep.violations[f])
            raise ActionInvalid(f"action fails the {bad} law", witness=rep.violations[bad][0])

    def prod(x, y):
        (h, q), (k, r) = x, y
        acc = Accumulator()
        hh = LinComb.basis(h)
        for (q1, q2), c in Q.cop(q).raw_items():
            left = H.mul(hh, act.act(q1, k))
            if not left:
                continue
            right = Q.prod(q2, r)
            for s, d in left.raw_items():
                for t, e in right.raw_items():
                    acc.add((s, t), c * d * e)
        return acc.result()

    def antipode(x):
        h, q = x
        acc = Accumulator()
        Sh = H.anti(h)
        for (q1, q2), c in Q.cop(q).raw_items():
            left = act.act_lin(Q.anti(q1), Sh)
            for s, d in left.raw_items():
                for t, e in Q.anti(q2).raw_items():
                    acc.add((s, t), c * d * e)
        return acc.result()

    cop, basis = _tensor_coalgebra_parts(H, Q)
    S = HopfOps(
        f"{H.name}#{Q.name}",
        basis(cap),
        prod,
        tensor(H.unit, Q.unit),
        cop,
        lambda s: H.counit_of(s[0]) * Q.counit_of(s[1]),
        antipode if (H.has_antipode and Q.has_antipode) else None,
        degree=lambda s: H.degree(s[0]) + Q.degree(s[1]),
        cap=cap,
    )
    S.action = act
    return S


# -- crossed products ---------------------------------------------------------

class Cocycle:
    """``sigma: Q (x) Q -> H`` on basis pairs, with its convolution inverse ``delta``.

    When ``delta`` is not supplied it is solved for exactly; a missing
    solution raises CocycleNotInvertible.
    """

    def __init__(self, Q: HopfOps, H: HopfOps, sigma, delta=None, window: int | None = None):
        self.Q, self.H = Q, H
        table = sigma if callable(sigma) else (lambda p, t=dict(sigma): t.get(p, LinComb.zero()))
        self._sigma = table
        self.QQ = tensor_coalgebra(Q, Q, cap=window if window is not None else Q.cap)
        if delta is None:
            try:
                inv = convolution_inverse(self.sigma, self.QQ, H, side="right")
            except NotInvertible as exc:
                raise CocycleNotInvertible("sigma has no convolution inverse", witness=exc.witness) from exc
            delta = inv.on_symbol
        elif not callable(delta):
            delta = (lambda p, t=dict(delta): t.get(p, LinComb.zero()))
        self._delta = delta
        bad = self.inverse_violations()
        if bad:
            raise CocycleNotInvertible("sigma * delta != eta eps", witness=bad[0])

    def sigma(self, pair) -> LinComb:
        return self._sigma(pair)

    def delta(self, pair) -> LinComb:
        return self._delta(pair)

    def inverse_violations(self) -> list:
        prod = convolve(self.sigma, self.delta, self.QQ, self.H)
        ue = unit_counit(self.QQ, self.H)
        return [p for p in self.QQ.basis if prod(p) != ue(p)]


def trivial_cocycle(Q: HopfOps, H: HopfOps) -> Cocycle:
    return Cocycle(Q, H, lambda p: H.unit * (Q.counit_of(p[0]) * Q.counit_of(p[1])))


def crossed_product(act: HopfAction, sigma: Cocycle, cap: int | None = None) -> HopfOps:
    """``(h#q)(k#r) = sum h (q1 * k) sigma(q2, r1) # q3 r2``; no antipode is provided."""
    H, Q = act.H, act.Q
    cap = _smash_cap(H, Q, cap)

    def prod(x, y):
        (h, q), (k, r) = x, y
        acc = Accumulator()
        hh = LinComb.basis(h)
        q3 = sweedler_expand(Q, LinComb.basis(q), 3) if Q.cap is None or Q.degree(q) <= Q.cap else None
        if q3 is None:
            raise ValidationError("q outside the cap", witness=q)
        for (q1, q2, qq3), c in q3.raw_items():
            left = H.mul(hh, act.act(q1, k))
            if not left:
                continue
            for (r1, r2), d in Q.cop(r).raw_items():
                mid = H.mul(left, sigma.sigma((q2, r1)))
                if not mid:
                    continue
                right = Q.prod(qq3, r2)
                for s, e in mid.raw_items():
                    for t, f in right.raw_items():
                        acc.add((s, t), c * d * e * f)
        return acc.result()

    cop, basis = _tensor_coalgebra_parts(H, Q)
    C = HopfOps(
        f"{H.name}#_s{Q.name}",
        basis(cap),
        prod,
        tensor(H.unit, Q.unit),
        cop,
        lambda s: H.counit_of(s[0]) * Q.counit_of(s[1]),
        None,
        degree=lambda s: H.degree(s[0]) + Q.degree(s[1]),
        cap=cap,
    )
    C.action = act
    C.cocycle = sigma
    return C


def basis_group(H: HopfOps, name: str = "") -> FiniteGroup | None:
    """The basis as a group when every basis product is a single basis symbol."""
    basis = list(H.basis)
    if len(H.unit) != 1 or next(iter(H.unit.support())) not in set(basis):
        return None
    table = {}
    for a in basis:
        for b in basis:
            p = H.prod(a, b)
            if len(p) != 1:
                return None
            (s, c), = p.raw_items()
            if c != 1:
                return None
            table[(a, b)] = s
    try:
        return FiniteGroup(basis, table, name=name or H.name)
    except ValidationError:
        return None


def algebra_isomorphism_to_group_algebra(H: HopfOps, G: FiniteGroup):
    """An algebra isomorphism ``H -> kG`` carrying basis to group elements, or None."""
    B = basis_group(H)
    if B is None:
        return None
    return find_isomorphism(B, G)


# -- wreath products --------------------------------------------------------

@dataclass
class WreathHopf:
    """``A^Q # Q`` for one of the two families, with the projection ``tau``."""

    family: str
    smash: HopfOps
    tau: HopfMorphism
    base: HopfOps
    top: HopfOps
    action: HopfAction
    A: object
    Q: object
    N: int | None = None
    extra: dict = field(default_factory=dict)

    def evaluation_at_unit(self, x: LinComb) -> LinComb:
        """``h # q -> eps(q) h(1)``, landing in ``kA`` or ``U(a)``."""
        acc = Accumulator()
        ev = self.extra["evaluate"]
        for (h, q), c in x.raw_items():
            e = self.top.counit_of(q)
            if e:
                acc.add_lincomb(ev(h), c * e)
        return acc.result()


def translation_action(A: FiniteGroup, Q: FiniteGroup):
    """``(q * f)(x) = f(xq)`` on the group-like basis of ``k(A^Q)``."""
    M = measuring_group_iso(Q.elements, A)
    KQ = group_algebra(Q)
    shift = {q: tuple(Q.index(Q.mul(x, q)) for x in Q.elements) for q in Q.elements}

    def star(q, f):
        return LinComb.basis(tuple(f[i] for i in shift[q]))

    return HopfAction(KQ, M.ops, star, name="translation"), M


def function_space_lie(A: LieAlgebra, Q: LieAlgebra, N: int):
    """``Vect(U(q)<=N, a)`` with the pointwise convolution bracket, on the delta basis.

    Generator ``(u, a)`` is the function with value ``x_a`` at monomial
    ``u`` and zero on the other monomials; it carries weight ``deg u + 1``.
    """
    mons = monomials(Q.dim, N)
    gens = [(u, a) for u in mons for a in range(A.dim)]
    index = {g: i for i, g in enumerate(gens)}
    br = {}
    for i, (u, a) in enumerate(gens):
        for j, (v, b) in enumerate(gens):
            if j <= i:
                continue
            ab = A.bracket_basis(a, b)
            if not ab:
                continue
            w = tuple(sorted(u + v))
            if len(w) > N:
                continue
            m = split_multiplicity(u, v)
            br[(i, j)] = LinComb({index[(w, c)]: m * k for c, k in ab.raw_items()})

    def label(g):
        u, a = g
        word = "".join(Q.names[k] for k in u) or "1"
        return f"d[{word}]{A.names[a]}"

    L = LieAlgebra([label(g) for g in gens], br, name=f"Vect(U({Q.name})<={N},{A.name})",
                   weights=[len(u) + 1 for (u, _) in gens], validate=False)
    return L, gens, index


def function_space_action(A: LieAlgebra, Q: LieAlgebra, N: int):
    """The action ``(q * f)(u) = f(uq)`` of ``U(q)`` on ``U(Vect(U(q)<=N, a))``.

    Generators of ``q`` act as derivations; monomials act by composition.
    """
    L, gens, index = function_space_lie(A, Q, N)
    H = enveloping_hopf(L, N + 1)
    Uq = enveloping_hopf(Q, N + 1)
    mons = monomials(Q.dim, N)
    on_gen: dict = {}
    for j in range(Q.dim):
        for g in range(L.dim):
            on_gen[(j, g)] = Accumulator()
        for u in mons:
            for v, c in Uq.prod(u, (j,)).raw_items():
                if len(v) > N:
                    continue
                for a in range(A.dim):
                    on_gen[(j, index[(v, a)])].add((index[(u, a)],), c)
    gen_table = {k: acc.result() for k, acc in on_gen.items()}
    deriv_cache: dict = {}

    def derive(j, h):
        key = (j, h)
        v = deriv_cache.get(key)
        if v is None:
            acc = Accumulator()
            for pos, g in enumerate(h):
                d = gen_table[(j, g)]
                if d:
                    term = H.mul_many(LinComb.basis(h[:pos]), d, LinComb.basis(h[pos + 1:]))
                    acc.add_lincomb(term)
            v = deriv_cache[key] = acc.result()
        return v

    def star(w, h):
        cur = LinComb.basis(h)
        for j in reversed(w):
            nxt = Accumulator()
            for s, c in cur.raw_items():
                nxt.add_lincomb(derive(j, s), c)
            cur = nxt.result()
        return cur

    act = HopfAction(Uq, H, star, name="translation")
    return act, L, gens, index


def wreath_hopf(family: str, A, Q, N: int | None = None, validate: bool = True, window: int | None = None) -> WreathHopf:
    """``A^Q # Q`` with ``tau(h#q) = eps(h) q``.

    ``group``: ``A``, ``Q`` are FiniteGroups and ``A^Q`` is ``k(A^Q)`` on
    function tables.  ``lie``: ``A``, ``Q`` are LieAlgebras and ``A^Q`` is the
    enveloping algebra of ``Vect(U(q)<=N, a)``, truncated at weight ``N+1``.
    """
    if family == "group":
        act, M = translation_action(A, Q)
        S = smash_product(act, validate=validate, window=window)
        base, top = M.ops, act.Q
        one = Q.index(Q.identity)
        extra = {"evaluate": lambda f: LinComb.basis(f[one]), "measuring": M}
    elif family == "lie":
        if N is None or N < 1:
            raise ValueError("the lie family needs a truncation degree N >= 1")
        act, L, gens, index = function_space_action(A, Q, N)
        S = smash_product(act, cap=N + 1, validate=validate, window=window)
        base, top = act.H, act.Q
        unit_gens = {index[((), a)]: a for a in range(A.dim)}
        UA = enveloping_hopf(A, N + 1)

        def evaluate(h):
            if any(g not in unit_gens for g in h):
                return LinComb.zero()
            return UA.word([unit_gens[g] for g in h])

        extra = {"evaluate": evaluate, "lie": L, "generators": gens, "index": index,
                 "wreath": LieWreath(A, Q, N)}
    else:
        raise ValueError(f"unknown family {family!r}")
    tau = HopfMorphism(S, top, lambda s: LinComb.basis(s[1], base.counit_of(s[0])), name="tau")
    return WreathHopf(family, S, tau, base, top, act, A, Q, N, extra)


def primitive_of(W: WreathHopf, X: WreathLieElement) -> LinComb:
    """The primitive ``sum_u delta_{u, f(u)} # 1 + 1 # q`` representing ``f (+) q``."""
    index = W.extra["index"]
    acc = Accumulator()
    for u, val in X.f.items():
        if len(u) > W.N:
            continue
        for a, c in val.raw_items():
            acc.add(((index[(u, a)],), ()), c)
    for j, c in X.q.raw_items():
        acc.add(((), (j,)), c)
    return acc.result()


def wreath_element_of(W: WreathHopf, x: LinComb, window: int | None = None) -> WreathLieElement:
    """Inverse of :func:`primitive_of`; ValueError on non-primitive terms."""
    gens = W.extra["generators"]
    f: dict = {}
    q = {}
    for (h, r), c in x.raw_items():
        if len(h) == 1 and r == ():
            u, a = gens[h[0]]
            f.setdefault(u, {})[a] = c
        elif h == () and len(r) == 1:
            q[r[0]] = c
        else:
            raise ValueError(f"term {(h, r)!r} is not primitive")
    w = W.N if window is None else window
    return WreathLieElement({u: LinComb(v) for u, v in f.items() if len(u) <= w}, LinComb(q), w)


def high_delta_reducer(W: WreathHopf, keep: int) -> Callable:
    """Drop smash monomials containing a delta generator on a monomial of degree > ``keep``."""
    gens = W.extra["generators"]
    high = {i for i, (u, _) in enumerate(gens) if len(u) > keep}

    def red(x: LinComb) -> LinComb:
        return x.filter(lambda s: not any(g in high for g in s[0]))

    return red


# -- cleft extensions --------------------------------------------------------

@dataclass
class CleftExtensionData:
    """A Hopf extension ``A -> E -> Q`` with cleavage ``gamma`` and its inverse ``kappa``."""

    E: HopfOps
    A: HopfOps
    Q: HopfOps
    iota: LinMap
    pi: LinMap
    gamma: LinMap
    kappa: LinMap | None
    family: str
    source: object = None
    window: int | None = None


def _alg_map(source: HopfOps, target: HopfOps, gen_image: Callable) -> LinMap:
    # algebra map on PBW monomials from images of the generators
    return LinMap(source.basis, lambda m: target.mul_many(*[gen_image(i) for i in m]))


def group_cleft_data(ext: GroupExtension) -> CleftExtensionData:
    E, A, Q = ext.total, ext.kernel, ext.quotient
    KE, KA, KQ = group_algebra(E), group_algebra(A), group_algebra(Q)
    iota = LinMap(KA.basis, lambda a: LinComb.basis(ext.iota[a]))
    pi = LinMap(KE.basis, lambda e: LinComb.basis(ext.pi[e]))
    gamma = LinMap(KQ.basis, lambda q: LinComb.basis(ext.section[q]))
    kappa = LinMap(KQ.basis, lambda q: LinComb.basis(E.inv(ext.section[q])))
    return CleftExtensionData(KE, KA, KQ, iota, pi, gamma, kappa, "group", ext)


def lie_cleft_data(ext: LieExtension, N: int) -> CleftExtensionData:
    UE = enveloping_hopf(ext.total, N)
    UA = enveloping_hopf(ext.kernel, N)
    UQ = enveloping_hopf(ext.quotient, N)
    iota = _alg_map(UA, UE, lambda i: UE.from_lie(ext.iota[i]))
    pi = _alg_map(UE, UQ, lambda i: UQ.from_lie(ext.pi[i]))
    gamma = coalgebra_section(ext, N)
    kappa = LinMap(UQ.basis, lambda m: UE.S(gamma(m)))
    return CleftExtensionData(UE, UA, UQ, iota, pi, gamma, kappa, "lie", ext, N)


def cleavage_check(data: CleftExtensionData, window: int | None = None) -> AxiomReport:
    """Coalgebra-map, comodule and convolution-inverse conditions on ``gamma``."""
    E, Q = data.E, data.Q
    if window is None:
        window = data.window if data.window is not None else Q.cap
    rep = AxiomReport()
    for fam in ("coalgebra", "comodule", "inverse"):
        rep.touch(fam)
    qb = Q.basis_upto(window)
    g = data.gamma
    for q in qb:
        gq = g(q)
        lhs = E.delta(gq)
        rhs = Q.cop(q).map(lambda t: tensor(g(t[0]), g(t[1])))
        rep.record("coalgebra", lhs == rhs and E.eps(gq) == Q.counit_of(q), (q,))
        com = Accumulator()
        for (a, b), c in lhs.raw_items():
            com.add_lincomb(tensor(LinComb.basis(a), data.pi(b)), c)
        rhs2 = Q.cop(q).map(lambda t: tensor(g(t[0]), LinComb.basis(t[1])))
        rep.record("comodule", com.result() == rhs2, (q,))
    kappa = data.kappa
    if kappa is None:
        try:
            kappa = convolution_inverse(g, Q, E, window=window, values=E.basis_upto(window))
        except NotInvertible:
            rep.record("inverse", False, ("no inverse",))
            return rep
    left = convolve(kappa, g, Q, E, window)
    right = convolve(g, kappa, Q, E, window)
    for q in qb:
        target = E.unit * Q.counit_of(q)
        rep.record("inverse", left(q) == target and right(q) == target, (q,))
    return rep


@dataclass
class AlphaEmbedding:
    """The embedding of a cleft extension into its wreath product, with its certificate."""

    morphism: HopfMorphism
    wreath: WreathHopf
    data: CleftExtensionData
    report: AxiomReport
    images: dict
    compare: Callable | None = None
    window: int | None = None

    def __call__(self, x):
        return self.morphism(x)


def alpha_embed(data: CleftExtensionData, family: str | None = None, window: int | None = None) -> AlphaEmbedding:
    """Concrete embedding ``E -> A wr Q`` determined on group-likes or primitives.

    Group family: ``e -> u_f # pi(e)`` from the group-level embedding.  Lie
    family: each generator goes to the primitive of its Lie-level image and
    PBW monomials go to products; comparisons ignore delta components whose
    monomial degree exceeds ``N + 1 - window`` (the truncation horizon).
    """
    family = family or data.family
    cl = cleavage_check(data)
    if not cl.ok:
        bad = next(f for f in cl.families() if cl.violations[f])
        raise NotCleft(f"cleavage fails the {bad} condition", witness=cl.violations[bad][0])
    ext = data.source
    if family == "group":
        graph = kk_embed_group(ext)
        W = wreath_hopf("group", ext.kernel, ext.quotient)
        images = {e: LinComb.basis(v) for e, v in graph}
        morph = HopfMorphism(data.E, W.smash, lambda e: images[e], name="alpha")
        compare = None
        win = None
    elif family == "lie":
        N = data.window
        win = 2 if window is None else window
        phi = kk_embed_lie(ext, N)
        W = wreath_hopf("lie", ext.kernel, ext.quotient, N, validate=False)
        gens = {e: primitive_of(W, phi[e]) for e in range(ext.total.dim)}
        images = {(e,): gens[e] for e in gens}
        UE = enveloping_hopf(ext.total, win)
        cache: dict = {}

        def amap(m):
            v = cache.get(m)
            if v is None:
                v = cache[m] = W.smash.mul_many(*[gens[i] for i in m])
            return v

        morph = HopfMorphism(UE, W.smash, amap, name="alpha")
        compare = high_delta_reducer(W, N + 1 - win)
    else:
        raise ValueError(f"unknown family {family!r}")
    rep = morph.check(window=win, compare=compare)
    for fam in rep.families():
        if rep.violations[fam]:
            raise HomomorphismFailure(f"alpha fails {fam} compatibility", witness=rep.violations[fam][0])
    _embedding_conditions(rep, data, W, morph, family, compare, win)
    for fam in rep.families():
        if rep.violations[fam]:
            raise HomomorphismFailure(f"alpha fails the {fam} condition", witness=rep.violations[fam][0])
    return AlphaEmbedding(morph, W, data, rep, images, compare, win)


def _embedding_conditions(rep, data, W, morph, family, compare, window):
    red = compare or (lambda x: x)
    basis = morph.source.basis_upto(window)
    vecs = [red(morph(b)) for b in basis]
    rep.touch("injective")
    rep.record("injective", rank(vecs) == len(basis), ("rank",))
    rep.touch("projection")
    E_pi = data.pi if family == "group" else LinMap(basis, lambda m: data.pi(m))
    for b in basis:
        rep.record("projection", W.tau(morph(b)) == E_pi(b), (b,))
    rep.touch("kernel_evaluation")
    for a in data.A.basis_upto(window):
        ia = data.iota(a)
        img = red(morph(ia))
        back = W.evaluation_at_unit(img)
        rep.record("kernel_evaluation", back == LinComb.basis(a) and W.tau(img) == W.top.unit * data.A.counit_of(a), (a,))


def recover_cleft_extension(W: WreathHopf, vectors, name: str = "E") -> CleftExtensionData:
    """Extension data of a sub-Hopf-algebra of a wreath product.

    Group family: ``vectors`` span the subalgebra (typically group-likes).
    Lie family: ``vectors`` are primitive elements spanning its Lie algebra
    of primitives.
    """
    if W.family == "group":
        return _recover_group(W, list(vectors))
    if W.family == "lie":
        return _recover_lie(W, list(vectors), name)
    raise ValueError(f"unknown family {W.family!r}")


def _recover_group(W: WreathHopf, vectors) -> CleftExtensionData:
    S = W.smash
    Esub = restrict_to_subspace(S, vectors, name="E")
    tau_vals = [W.tau(v) for v in vectors]
    if rank(tau_vals) != rank(tau_vals + [LinComb.basis(q) for q in W.top.basis]):
        raise NotSurjective("subalgebra does not map onto Q")
    pi = LinMap(Esub.basis, lambda i: tau_vals[i])
    hk = hopf_kernel(HopfMorphism(Esub, W.top, pi), None)
    evals = [W.evaluation_at_unit(_expand(Esub, k)) for k in hk]
    dimA = len(W.A)
    if len(hk) != dimA or rank(evals) != dimA:
        raise KernelMismatch(f"intersection with A^Q has dimension {len(hk)}, expected {dimA}", witness=len(hk))
    KA = group_algebra(W.A)
    iota_tab = {}
    for a in KA.basis:
        coords = express_in(evals, LinComb.basis(a))
        acc = Accumulator()
        for c, k in zip(coords, hk):
            acc.add_lincomb(k, c)
        iota_tab[a] = acc.result()
    iota = LinMap(KA.basis, iota_tab)
    group_like = [i for i, v in enumerate(vectors) if len(v) == 1 and next(iter(v.raw_items()))[1] == 1]
    gamma_tab = {}
    for q in W.top.basis:
        if q == W.Q.identity:
            gamma_tab[q] = Esub.unit
            continue
        pick = next((i for i in group_like if tau_vals[i] == LinComb.basis(q)), None)
        if pick is None:
            raise NotSurjective("no group-like lift of a quotient element", witness=(q,))
        gamma_tab[q] = LinComb.basis(pick)
    gamma = LinMap(W.top.basis, gamma_tab)
    elements = [next(iter(vectors[i].support())) for i in group_like]
    source = None
    if len(group_like) == len(vectors):
        W_group = _wreath_group_cached(W)
        source = recover_extension_from_subgroup(elements, W.A, W.Q, W_group)
    data = CleftExtensionData(Esub, KA, W.top, iota, pi, gamma, None, "group", source)
    data.kappa = convolution_inverse(gamma, W.top, Esub)
    return data


def _wreath_group_cached(W: WreathHopf):
    from .groups import wreath_group

    g = W.extra.get("group")
    if g is None:
        g = W.extra["group"] = wreath_group(W.A, W.Q)
    return g


def _expand(Esub: HopfOps, x: LinComb) -> LinComb:
    acc = Accumulator()
    for i, c in x.raw_items():
        acc.add_lincomb(Esub.vectors[i], c)
    return acc.result()


def _recover_lie(W: WreathHopf, vectors, name) -> CleftExtensionData:
    A, Q, N = W.A, W.Q, W.N
    wr = W.extra["wreath"]
    elems = [wreath_element_of(W, v) for v in vectors]
    n = len(elems)
    window = N - 1

    def coords(x: WreathLieElement) -> LinComb:
        terms = {("f", u, a): c for u, val in x.f.items() if len(u) <= window for a, c in val.raw_items()}
        terms.update({("q", j): c for j, c in x.q.raw_items()})
        return LinComb(terms)

    basis_coords = [coords(e) for e in elems]
    if rank(basis_coords) != n:
        raise ValidationError("primitive generators are linearly dependent on the window")
    br = {}
    for i in range(n):
        for j in range(i + 1, n):
            b = wr.bracket(elems[i], elems[j])
            try:
                cs = express_in(basis_coords, coords(b))
            except NoSolution as exc:
                raise ValidationError("span of primitives is not closed under the bracket", witness=(i, j)) from exc
            br[(i, j)] = LinComb({k: c for k, c in enumerate(cs) if c})
    names = [f"{name}{i}" for i in range(n)]
    L = LieAlgebra(names, br, name=name)
    qvals = [e.q for e in elems]
    if rank(qvals + [LinComb.basis(j) for j in range(Q.dim)]) != rank(qvals) or rank(qvals) != Q.dim:
        raise NotSurjective("primitives do not map onto q")
    ker = kernel_basis(LinMap(range(n), lambda i: qvals[i]))
    ev = [LinComb({a: c for a, c in _eval_unit(elems, k).raw_items()}) for k in ker]
    if len(ker) != A.dim or rank(ev) != A.dim:
        raise KernelMismatch(f"intersection with A^Q has dimension {len(ker)}, expected {A.dim}", witness=len(ker))
    iota = {}
    for a in range(A.dim):
        cs = express_in(ev, LinComb.basis(a))
        acc = Accumulator()
        for c, k in zip(cs, ker):
            acc.add_lincomb(k, c)
        iota[a] = acc.result()
    pi = {i: qvals[i] for i in range(n)}
    section = {}
    for j in range(Q.dim):
        section[j] = solve(LinMap(range(n), lambda i: qvals[i]), LinComb.basis(j))
    ext = LieExtension(L, A, Q, iota, pi, section, name=f"recovered {name}").validate()
    data = lie_cleft_data(ext, N)
    rep = cleavage_check(data)
    if not rep.ok:
        raise NotCleft("recovered cleavage fails", witness=rep.violations)
    return data


def _eval_unit(elems, k: LinComb) -> LinComb:
    acc = Accumulator()
    for i, c in k.raw_items():
        acc.add_lincomb(elems[i].value(()), c)
    return acc.result()


# -- whole-construction checks ----------------------------------------------------

def wreath_group_algebra_check(A: FiniteGroup, Q: FiniteGroup) -> AxiomReport:
    """Product and coproduct tables of ``k(A wr Q)`` and ``k(A^Q) # kQ`` agree on ``(f,q) <-> u_f#q``."""
    from .groups import wreath_group

    G = wreath_group(A, Q)
    K = group_algebra(G)
    W = wreath_hopf("group", A, Q)
    S = W.smash
    rep = AxiomReport()
    for fam in ("basis", "product", "coproduct", "counit", "antipode"):
        rep.touch(fam)
    rep.record("basis", set(K.basis) == set(S.basis), (len(K.basis), len(S.basis)))
    for x in K.basis:
        rep.record("coproduct", K.cop(x) == S.cop(x), (x,))
        rep.record("counit", K.counit_of(x) == S.counit_of(x), (x,))
        rep.record("antipode", K.anti(x) == S.anti(x), (x,))
        for y in K.basis:
            rep.record("product", K.prod(x, y) == S.prod(x, y), (x, y))
    return rep


def primitive_bracket_check(A: LieAlgebra, Q: LieAlgebra, N: int, W: WreathHopf | None = None) -> AxiomReport:
    """Commutators of primitives in the Hopf wreath product match the Lie wreath bracket.

    Compared on monomials of degree at most ``N - 1`` for every ordered pair
    of primitive basis elements.
    """
    W = W or wreath_hopf("lie", A, Q, N, validate=False)
    S = W.smash
    wr = W.extra["wreath"]
    basis = wr.basis()
    prims = {k: primitive_of(W, X) for k, X in basis}
    rep = AxiomReport()
    rep.touch("commutator")
    rep.touch("primitive")
    for k1, X in basis:
        for k2, Y in basis:
            p, r = prims[k1], prims[k2]
            comm = S.mul(p, r) - S.mul(r, p)
            try:
                got = wreath_element_of(W, comm)
            except ValueError:
                rep.record("primitive", False, (k1, k2))
                continue
            rep.record("primitive", True, (k1, k2))
            want = wr.bracket(X, Y)
            rep.record("commutator", got.agrees_with(want, N - 1), (k1, k2))
    return rep
