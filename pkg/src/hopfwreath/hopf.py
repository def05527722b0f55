"""Generic Hopf-algebra machinery over an explicit (possibly degree-capped) basis."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DegreeOverflow, NoSolution, NotInvertible, ValidationError
from .linear import (
    Accumulator,
    LinComb,
    LinMap,
    express_in,
    kernel_basis,
    rank,
    scalar,
    solve,
    symbol_key,
    tensor,
)

AXIOMS = ("coassociativity", "counit", "bialgebra", "antipode", "cocommutativity", "associativity")


class HopfOps:
    """Structure maps of a Hopf algebra on a chosen basis.

    ``product``, ``coproduct`` and ``antipode`` act on basis symbols and are
    memoised; the linear extensions are :meth:`mul`, :meth:`delta`,
    :meth:`S` and :meth:`eps`.  For a degree-capped algebra ``cap`` bounds
    the enumerated basis; products outside the cap are still computed
    exactly when the underlying rule allows it.
    """

    def __init__(
        self,
        name: str,
        basis,
        product: Callable | None,
        unit: LinComb,
        coproduct: Callable,
        counit: Callable,
        antipode: Callable | None = None,
        degree: Callable | None = None,
        cap: int | None = None,
    ):
        self.name = name
        self._basis_src = basis
        self._basis = None
        self._product = product
        self.unit = unit
        self._coproduct = coproduct
        self._counit = counit
        self._antipode = antipode
        self._degree = degree or (lambda s: 0)
        self.cap = cap
        self._pcache: dict = {}
        self._ccache: dict = {}
        self._scache: dict = {}

    def __repr__(self):
        return f"<HopfOps {self.name}>"

    @property
    def basis(self) -> tuple:
        if self._basis is None:
            src = self._basis_src() if callable(self._basis_src) else self._basis_src
            self._basis = tuple(src)
        return self._basis

    @property
    def has_product(self) -> bool:
        return self._product is not None

    @property
    def has_antipode(self) -> bool:
        return self._antipode is not None

    def degree(self, s) -> int:
        return self._degree(s)

    def degree_of(self, x: LinComb) -> int:
        return max((self._degree(s) for s, _ in x.raw_items()), default=0)

    def basis_upto(self, d: int | None) -> list:
        if d is None:
            return list(self.basis)
        return [s for s in self.basis if self._degree(s) <= d]

    # -- symbol level ---------------------------------------------------
    def prod(self, a, b) -> LinComb:
        key = (a, b)
        v = self._pcache.get(key)
        if v is None:
            if self._product is None:
                raise ValidationError(f"{self.name} carries no product")
            v = self._product(a, b)
            self._pcache[key] = v
        return v

    def cop(self, s) -> LinComb:
        v = self._ccache.get(s)
        if v is None:
            v = self._coproduct(s)
            self._ccache[s] = v
        return v

    def counit_of(self, s):
        return self._counit(s)

    def anti(self, s) -> LinComb:
        v = self._scache.get(s)
        if v is None:
            if self._antipode is None:
                raise ValidationError(f"{self.name} carries no antipode")
            v = self._antipode(s)
            self._scache[s] = v
        return v

    # -- linear extensions ---------------------------------------------
    def mul(self, x: LinComb, y: LinComb) -> LinComb:
        acc = Accumulator()
        for a, c in x.raw_items():
            for b, d in y.raw_items():
                acc.add_lincomb(self.prod(a, b), c * d)
        return acc.result()

    def mul_many(self, *xs: LinComb) -> LinComb:
        out = self.unit
        for x in xs:
            out = self.mul(out, x)
        return out

    def delta(self, x: LinComb) -> LinComb:
        return x.map(self.cop)

    def eps(self, x: LinComb):
        return sum((c * self._counit(s) for s, c in x.raw_items()), 0)

    def S(self, x: LinComb) -> LinComb:
        return x.map(self.anti)

    def mul_tensor(self, X: LinComb, Y: LinComb) -> LinComb:
        """Componentwise product in H (x) H of pair-basis combinations."""
        acc = Accumulator()
        for (a, b), c in X.raw_items():
            for (a2, b2), d in Y.raw_items():
                left = self.prod(a, a2)
                right = self.prod(b, b2)
                for s, e in left.raw_items():
                    for t, f in right.raw_items():
                        acc.add((s, t), c * d * e * f)
        return acc.result()

    def element(self, s) -> LinComb:
        return LinComb.basis(s)


@dataclass
class AxiomReport:
    """Per-family violations; a family passes iff its list is empty."""

    violations: dict = field(default_factory=dict)
    counts: dict = field(default_factory=dict)

    def record(self, family: str, ok: bool, witness=()):
        self.violations.setdefault(family, [])
        self.counts[family] = self.counts.get(family, 0) + 1
        if not ok:
            self.violations[family].append(tuple(witness))

    def touch(self, family: str):
        self.violations.setdefault(family, [])
        self.counts.setdefault(family, 0)

    def status(self, family: str) -> str:
        return "fail" if self.violations.get(family) else "pass"

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def families(self):
        return list(self.violations)

    def merge(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        for k, v in other.violations.items():
            self.violations.setdefault(prefix + k, []).extend(v)
            self.counts[prefix + k] = self.counts.get(prefix + k, 0) + other.counts.get(k, 0)
        return self

    def to_json(self) -> list:
        from .serialize import symbol_to_json

        return [
            {
                "axiom": k,
                "status": self.status(k),
                "violations": [[symbol_to_json(s) for s in w] for w in v],
            }
            for k, v in self.violations.items()
        ]


def _as_fn(f) -> Callable:
    if isinstance(f, LinMap):
        return f.on_symbol
    if isinstance(f, dict):
        return lambda s: f.get(s, LinComb.zero())
    return f


def sweedler_expand(H: HopfOps, x: LinComb, legs: int) -> LinComb:
    """Iterated coproduct of ``x`` onto flat ``legs``-tuples."""
    if legs < 2:
        raise ValueError("legs must be at least 2")
    limit = H.degree_of(x)
    if H.cap is not None and limit > H.cap:
        raise DegreeOverflow("input exceeds the degree cap", witness=limit)
    terms = {(s,): c for s, c in x.raw_items()}
    cur = LinComb(terms)
    for _ in range(legs - 1):
        acc = Accumulator()
        for t, c in cur.raw_items():
            for (a, b), d in H.cop(t[0]).raw_items():
                if H.degree(a) > limit or H.degree(b) > limit:
                    raise DegreeOverflow(f"coproduct of {t[0]!r} raises degree", witness=(a, b))
                acc.add((a, b) + t[1:], c * d)
        cur = acc.result()
    return cur


def convolve(f, g, C: HopfOps, D: HopfOps, window: int | None = None) -> LinMap:
    """Convolution ``m_D (f (x) g) Delta_C`` on the basis of ``C``."""
    f, g = _as_fn(f), _as_fn(g)

    def act(c):
        acc = Accumulator()
        for (a, b), lam in C.cop(c).raw_items():
            acc.add_lincomb(D.mul(f(a), g(b)), lam)
        return acc.result()

    return LinMap(C.basis_upto(window), act)


def unit_counit(C: HopfOps, D: HopfOps, window: int | None = None) -> LinMap:
    return LinMap(C.basis_upto(window), lambda c: D.unit * C.counit_of(c))


def identity_map(H: HopfOps, window: int | None = None) -> LinMap:
    return LinMap(H.basis_upto(window), LinComb.basis)


def antipode_map(H: HopfOps, window: int | None = None) -> LinMap:
    return LinMap(H.basis_upto(window), H.anti)


def convolution_inverse(
    f, C: HopfOps, D: HopfOps, window: int | None = None, side: str = "left", values=None
) -> LinMap:
    """Solve exactly for ``k`` with ``k * f = eta eps`` (or ``f * k`` when ``side='right'``).

    Unknowns range over ``values`` (default: the enumerated basis of ``D``).
    """
    f = _as_fn(f)
    cb = C.basis_upto(window)
    db = list(values) if values is not None else list(D.basis)
    uses: dict = {}
    for c in cb:
        for (a, b), lam in C.cop(c).raw_items():
            if side == "left":
                uses.setdefault(a, []).append((c, b, lam))
            else:
                uses.setdefault(b, []).append((c, a, lam))
    unknowns = [(c1, d) for c1 in sorted(uses, key=symbol_key) for d in db]

    def act(key):
        c1, d = key
        acc = Accumulator()
        dd = LinComb.basis(d)
        for c, other, lam in uses[c1]:
            prod = D.mul(dd, f(other)) if side == "left" else D.mul(f(other), dd)
            for s, v in prod.raw_items():
                acc.add((c, s), lam * v)
        return acc.result()

    target = Accumulator()
    for c in cb:
        e = C.counit_of(c)
        if e:
            for s, v in D.unit.raw_items():
                target.add((c, s), e * v)
    try:
        sol = solve(LinMap(unknowns, act), target.result())
    except NoSolution as exc:
        raise NotInvertible("no convolution inverse on the given window") from exc
    table: dict = {c: Accumulator() for c in cb}
    for (c1, d), v in sol.raw_items():
        table.setdefault(c1, Accumulator()).add(d, v)
    return LinMap(cb, lambda c: table[c].result() if c in table else LinComb.zero())


def maps_equal(f, g, domain) -> list:
    """Domain symbols where two linear maps disagree."""
    f, g = _as_fn(f), _as_fn(g)
    return [s for s in domain if f(s) != g(s)]


def _swap(X: LinComb) -> LinComb:
    return X.relabel(lambda t: (t[1], t[0]))


def check_axioms(H: HopfOps, window: int | None = None, associativity: bool = True) -> AxiomReport:
    """Exhaustively verify the Hopf axioms on basis elements up to ``window``.

    Products are only examined for pairs (triples) whose degree sum is within
    the window, so every asserted identity is exact.
    """
    if window is None:
        window = H.cap
    rep = AxiomReport()
    fams = ["coassociativity", "counit", "cocommutativity"]
    if H.has_product:
        fams.insert(2, "bialgebra")
        if H.has_antipode:
            fams.insert(3, "antipode")
        if associativity:
            fams.append("associativity")
    for fam in AXIOMS:
        if fam in fams:
            rep.touch(fam)
    basis = H.basis_upto(window)
    deg = {s: H.degree(s) for s in basis}
    w = window if window is not None else 0
    fits = (lambda *xs: sum(deg[x] for x in xs) <= w) if window is not None else (lambda *xs: True)

    for b in basis:
        d = H.cop(b)
        left = Accumulator()
        right = Accumulator()
        for (x, y), c in d.raw_items():
            for (x1, x2), e in H.cop(x).raw_items():
                left.add((x1, x2, y), c * e)
            for (y1, y2), e in H.cop(y).raw_items():
                right.add((x, y1, y2), c * e)
        rep.record("coassociativity", left.result() == right.result(), (b,))
        el = Accumulator()
        er = Accumulator()
        for (x, y), c in d.raw_items():
            el.add(y, c * H.counit_of(x))
            er.add(x, c * H.counit_of(y))
        bb = LinComb.basis(b)
        rep.record("counit", el.result() == bb and er.result() == bb, (b,))
        rep.record("cocommutativity", _swap(d) == d, (b,))
        if H.has_product and H.has_antipode:
            target = H.unit * H.counit_of(b)
            sl = Accumulator()
            sr = Accumulator()
            for (x, y), c in d.raw_items():
                sl.add_lincomb(H.mul(H.anti(x), LinComb.basis(y)), c)
                sr.add_lincomb(H.mul(LinComb.basis(x), H.anti(y)), c)
            rep.record("antipode", sl.result() == target and sr.result() == target, (b,))

    if H.has_product:
        unit_ok = H.delta(H.unit) == tensor(H.unit, H.unit) and H.eps(H.unit) == 1
        rep.record("bialgebra", unit_ok, ("unit",))
        for a in basis:
            for b in basis:
                if not fits(a, b):
                    continue
                ab = H.prod(a, b)
                lhs = H.delta(ab)
                rhs = H.mul_tensor(H.cop(a), H.cop(b))
                ok = lhs == rhs and H.eps(ab) == H.counit_of(a) * H.counit_of(b)
                rep.record("bialgebra", ok, (a, b))
        if associativity:
            for a in basis:
                ua = H.mul(H.unit, LinComb.basis(a)) == LinComb.basis(a)
                au = H.mul(LinComb.basis(a), H.unit) == LinComb.basis(a)
                rep.record("associativity", ua and au, (a,))
            for a in basis:
                for b in basis:
                    if not fits(a, b):
                        continue
                    ab = H.prod(a, b)
                    for c in basis:
                        if not fits(a, b, c):
                            continue
                        lhs = H.mul(ab, LinComb.basis(c))
                        rhs = H.mul(LinComb.basis(a), H.prod(b, c))
                        rep.record("associativity", lhs == rhs, (a, b, c))
    return rep


class HopfMorphism:
    """A linear map between two HopfOps, claimed to respect all structure."""

    def __init__(self, source: HopfOps, target: HopfOps, map, name: str = ""):
        self.source = source
        self.target = target
        self.map = map if isinstance(map, LinMap) else LinMap(source.basis, _as_fn(map))
        self.name = name

    def __call__(self, x) -> LinComb:
        return self.map(x)

    def check(self, window: int | None = None, compare: Callable | None = None) -> AxiomReport:
        """Verify unit, product, counit, coproduct and antipode compatibility.

        ``compare`` optionally reduces target elements before comparison
        (used for windowed truncations).
        """
        E, T, f = self.source, self.target, self.map
        red = compare or (lambda x: x)
        if window is None:
            window = E.cap
        rep = AxiomReport()
        for fam in ("unit", "product", "counit", "coproduct", "antipode"):
            rep.touch(fam)
        basis = E.basis_upto(window)
        rep.record("unit", red(f(E.unit)) == red(T.unit), ("unit",))
        for s in basis:
            fs = f(s)
            rep.record("counit", T.eps(fs) == E.counit_of(s), (s,))
            lhs = T.delta(fs)
            rhs = E.cop(s).map(lambda t: tensor(f(t[0]), f(t[1])))
            rep.record("coproduct", _reduce_pairs(lhs, red) == _reduce_pairs(rhs, red), (s,))
            if E.has_antipode and T.has_antipode:
                rep.record("antipode", red(T.S(fs)) == red(f(E.anti(s))), (s,))
        for a in basis:
            for b in basis:
                if window is not None and E.degree(a) + E.degree(b) > window:
                    continue
                lhs = f(E.prod(a, b))
                rhs = T.mul(f(a), f(b))
                rep.record("product", red(lhs) == red(rhs), (a, b))
        return rep


def _reduce_pairs(X: LinComb, red) -> LinComb:
    # reduce each tensor leg independently; identity when red is trivial
    acc = Accumulator()
    for (a, b), c in X.raw_items():
        ra = red(LinComb.basis(a))
        rb = red(LinComb.basis(b))
        for s, d in ra.raw_items():
            for t, e in rb.raw_items():
                acc.add((s, t), c * d * e)
    return acc.result()


def hopf_kernel(pi: HopfMorphism, window: int | None = None) -> list[LinComb]:
    """Basis of ``{e : sum e1 (x) pi(e2) = e (x) 1}``."""
    E, Q = pi.source, pi.target
    one = Q.unit

    def act(e):
        acc = Accumulator()
        for (a, b), c in E.cop(e).raw_items():
            for q, d in pi(b).raw_items():
                acc.add((a, q), c * d)
        for q, d in one.raw_items():
            acc.add((e, q), -d)
        return acc.result()

    return kernel_basis(LinMap(E.basis_upto(window), act))


def primitives(H: HopfOps, window: int | None = None) -> list[LinComb]:
    """Basis of the primitive subspace ``{x : Delta x = x (x) 1 + 1 (x) x}``."""
    one = H.unit

    def act(s):
        x = LinComb.basis(s)
        return H.cop(s) - tensor(x, one) - tensor(one, x)

    return kernel_basis(LinMap(H.basis_upto(window), act))


def _is_group_like(H: HopfOps, x: LinComb) -> bool:
    return H.eps(x) == 1 and H.delta(x) == tensor(x, x)


def _rational_sqrt(q: Fraction):
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _quadratic_roots(a, b, c) -> list:
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        if b == 0:
            return None if c == 0 else []
        return [-c / b]
    r = _rational_sqrt(b * b - 4 * a * c)
    if r is None:
        return []
    return sorted({(-b + r) / (2 * a), (-b - r) / (2 * a)})


def _pair_group_likes(H: HopfOps, b1, b2) -> list[LinComb]:
    # group-likes supported on exactly {b1, b2}
    d1, d2 = H.cop(b1), H.cop(b2)
    inside = {(x, y) for x in (b1, b2) for y in (b1, b2)}
    outside = {t for t, _ in d1.raw_items()} | {t for t, _ in d2.raw_items()}
    outside -= inside
    cols = [d1.filter(lambda t: t in outside), d2.filter(lambda t: t in outside)]
    ker = kernel_basis(LinMap([0, 1], lambda i: cols[i]))
    out = []
    if len(ker) == 1:
        v1, v2 = ker[0].coeff(0), ker[0].coeff(1)
        if not (v1 and v2):
            return []
        v = LinComb({b1: v1, b2: v2})
        dv = H.delta(v)
        vv = tensor(v, v)
        key = (b1, b1)
        if not vv.coeff(key):
            return []
        t = Fraction(dv.coeff(key)) / vv.coeff(key)
        x = v * t
        if t and _is_group_like(H, x):
            out.append(x)
    elif len(ker) == 2:
        e1, e2 = Fraction(H.counit_of(b1)), Fraction(H.counit_of(b2))
        if e2:
            line = lambda t: (Fraction(t), (1 - e1 * t) / e2)
            param = [(1, 0), (-e1 / e2, 1 / e2)]  # c1 = t, c2 = -e1/e2 t + 1/e2
        elif e1:
            line = lambda t: (1 / e1, Fraction(t))
            param = [(0, 1 / e1), (1, 0)]
        else:
            return []
        (a1, k1), (a2, k2) = param  # c_i = a_i t + k_i
        roots = None
        for (x, y) in sorted(inside, key=symbol_key):
            lin = (d1.coeff((x, y)), d2.coeff((x, y)))
            ci = {b1: (a1, k1), b2: (a2, k2)}
            (p, q), (r, s) = ci[x], ci[y]
            # c_x c_y - sum_k c_k Delta(b_k)[x,y] = 0, as a quadratic in t
            qa = p * r
            qb = p * s + q * r - lin[0] * a1 - lin[1] * a2
            qc = q * s - lin[0] * k1 - lin[1] * k2
            rs = _quadratic_roots(qa, qb, qc)
            if rs is None:
                continue
            roots = rs
            break
        for t in roots or []:
            c1, c2 = line(t)
            if c1 and c2:
                x = LinComb({b1: c1, b2: c2})
                if _is_group_like(H, x):
                    out.append(x)
    return out


def group_likes(H: HopfOps, window: int | None = None, pairs: bool = True) -> list[LinComb]:
    """Group-like elements: basis symbols first, then two-term supports.

    Complete whenever every group-like has support of size at most two,
    which covers group algebras and enveloping algebras.
    """
    basis = H.basis_upto(window)
    found = [LinComb.basis(s) for s in basis if _is_group_like(H, LinComb.basis(s))]
    if pairs:
        for b1, b2 in itertools.combinations(basis, 2):
            for x in _pair_group_likes(H, b1, b2):
                if x not in found:
                    found.append(x)
    return found


def restrict_to_subspace(H: HopfOps, vectors: Sequence[LinComb], name: str = "") -> HopfOps:
    """The sub-Hopf-algebra spanned by ``vectors``, with basis symbols ``0..k-1``.

    Raises ValidationError if the span is not closed under the structure maps.
    """
    vecs = list(vectors)
    if rank(vecs) != len(vecs):
        raise ValidationError("spanning vectors are linearly dependent")
    labels = list(range(len(vecs)))

    def coords(x, what):
        try:
            return LinComb(dict(zip(labels, express_in(vecs, x))))
        except NoSolution as exc:
            raise ValidationError(f"span not closed under {what}", witness=x) from exc

    def prod(i, j):
        return coords(H.mul(vecs[i], vecs[j]), "product")

    def cop(i):
        D = H.delta(vecs[i])
        # express in the tensor basis vecs (x) vecs
        pairs = [(i1, j1) for i1 in labels for j1 in labels]
        tens = [tensor(vecs[a], vecs[b]) for a, b in pairs]
        M = LinMap(list(range(len(pairs))), lambda k: tens[k])
        try:
            sol = solve(M, D)
        except NoSolution as exc:
            raise ValidationError("span not closed under coproduct", witness=i) from exc
        return LinComb({pairs[k]: c for k, c in sol.raw_items()})

    def anti(i):
        return coords(H.S(vecs[i]), "antipode")

    unit = coords(H.unit, "unit")
    sub = HopfOps(
        name or f"sub({H.name})",
        labels,
        prod,
        unit,
        cop,
        lambda i: H.eps(vecs[i]),
        anti if H.has_antipode else None,
    )
    sub.vectors = vecs
    return sub
