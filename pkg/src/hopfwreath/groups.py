"""Finite groups, group algebras, wreath products and the classical embedding."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .errors import KernelMismatch, NotInKernel, NotSurjective, SectionInvalid, ValidationError
from .hopf import HopfOps
from .linear import LinComb


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Associativity, identity and inverses are validated at construction
    unless ``validate=False``.
    """

    def __init__(self, elements: Sequence[Hashable], mul: dict, name: str = "", validate: bool = True):
        self.elements = tuple(elements)
        self.name = name
        self._mul = dict(mul)
        self._index = {g: i for i, g in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise ValidationError("repeated group element labels")
        for a in self.elements:
            for b in self.elements:
                if (a, b) not in self._mul:
                    raise ValidationError("multiplication table is not total", witness=(a, b))
                if self._mul[(a, b)] not in self._index:
                    raise ValidationError("table leaves the element set", witness=(a, b))
        ids = [e for e in self.elements if all(self._mul[(e, g)] == g == self._mul[(g, e)] for g in self.elements)]
        if not ids:
            raise ValidationError("no identity element")
        self.identity = ids[0]
        self._inv = {}
        for g in self.elements:
            inv = [h for h in self.elements if self._mul[(g, h)] == self.identity]
            if len(inv) != 1 or self._mul[(inv[0], g)] != self.identity:
                raise ValidationError("element without a unique two-sided inverse", witness=(g,))
            self._inv[g] = inv[0]
        if validate:
            m = self._mul
            for a in self.elements:
                for b in self.elements:
                    ab = m[(a, b)]
                    for c in self.elements:
                        if m[(ab, c)] != m[(a, m[(b, c)])]:
                            raise ValidationError("multiplication is not associative", witness=(a, b, c))

    @classmethod
    def from_op(cls, elements: Iterable, op: Callable, name: str = "", labels: Callable | None = None, validate=True):
        els = list(elements)
        lab = labels or (lambda x: x)
        table = {(lab(a), lab(b)): lab(op(a, b)) for a in els for b in els}
        return cls([lab(a) for a in els], table, name=name, validate=validate)

    def __repr__(self):
        return f"<FiniteGroup {self.name or ''} order {len(self)}>"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._index

    def index(self, g) -> int:
        return self._index[g]

    def mul(self, a, b):
        return self._mul[(a, b)]

    def inv(self, a):
        return self._inv[a]

    def prod(self, *xs):
        out = self.identity
        for x in xs:
            out = self._mul[(out, x)]
        return out

    def order_of(self, g) -> int:
        n, x = 1, g
        while x != self.identity:
            x = self._mul[(x, g)]
            n += 1
        return n

    def is_abelian(self) -> bool:
        return all(self._mul[(a, b)] == self._mul[(b, a)] for a in self.elements for b in self.elements)

    def closure(self, gens: Iterable) -> set:
        out = {self.identity}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self._mul[(x, g)]
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return out

    def generators(self) -> list:
        """A small generating set, chosen greedily by decreasing element order."""
        gens: list = []
        span = {self.identity}
        for g in sorted(self.elements, key=lambda x: (-self.order_of(x), self._index[x])):
            if g not in span:
                gens.append(g)
                span = self.closure(gens)
            if len(span) == len(self):
                break
        return gens

    def subgroup(self, elements: Iterable, name: str = "") -> "FiniteGroup":
        els = [g for g in self.elements if g in set(elements)]
        s = set(els)
        for a in els:
            for b in els:
                if self._mul[(a, b)] not in s:
                    raise ValidationError("subset is not closed under multiplication", witness=(a, b))
        return FiniteGroup(els, {(a, b): self._mul[(a, b)] for a in els for b in els}, name=name, validate=False)


def cyclic_group(n: int, name: str | None = None) -> FiniteGroup:
    lab = lambda k: "1" if k == 0 else ("a" if k == 1 else f"a{k}")
    return FiniteGroup.from_op(range(n), lambda a, b: (a + b) % n, name=name or f"C{n}", labels=lab)


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str = "") -> FiniteGroup:
    els = [(g, h) for g in G for h in H]
    return FiniteGroup.from_op(els, lambda x, y: (G.mul(x[0], y[0]), H.mul(x[1], y[1])), name=name or f"{G.name}x{H.name}")


def _perm_group(perms: list, names: list, name: str) -> FiniteGroup:
    lookup = dict(zip(perms, names))
    compose = lambda p, q: tuple(p[q[i]] for i in range(len(q)))  # p after q
    return FiniteGroup.from_op(perms, compose, name=name, labels=lambda p: lookup[p])


def klein_four() -> FiniteGroup:
    lab = {(0, 0): "1", (1, 0): "a", (0, 1): "b", (1, 1): "ab"}
    els = list(lab)
    return FiniteGroup.from_op(els, lambda x, y: ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2), name="C2xC2", labels=lab.get)


def symmetric_group3() -> FiniteGroup:
    perms = [(0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1)]
    names = ["()", "(12)", "(23)", "(13)", "(123)", "(132)"]
    return _perm_group(perms, names, "S3")


def dihedral_group4() -> FiniteGroup:
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    compose = lambda p, q: tuple(p[q[i]] for i in range(4))
    perms, names = [], []
    for k in range(2):
        for j in range(4):
            p = (0, 1, 2, 3)
            for _ in range(j):
                p = compose(p, r)
            if k:
                p = compose(s, p)
            perms.append(p)
            names.append(("s" if k else "") + ("r" + (str(j) if j > 1 else "") if j else ("" if k else "1")))
    return _perm_group(perms, names, "D4")


def quaternion_group() -> FiniteGroup:
    # unit quaternions as (sign, axis) with axis in 1,i,j,k
    table = {("1", "1"): (1, "1")}
    mult = {
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
    }

    def axis_mul(a, b):
        if a == "1":
            return (1, b)
        if b == "1":
            return (1, a)
        return mult[(a, b)]

    els = [(s, a) for a in ("1", "i", "j", "k") for s in (1, -1)]

    def op(x, y):
        sgn, ax = axis_mul(x[1], y[1])
        return (x[0] * y[0] * sgn, ax)

    lab = lambda x: ("" if x[0] == 1 else "-") + x[1]
    del table
    return FiniteGroup.from_op(els, op, name="Q8", labels=lab)


def builtin_group(name: str) -> FiniteGroup:
    makers = {
        "C1": lambda: cyclic_group(1),
        "C2": lambda: cyclic_group(2),
        "C3": lambda: cyclic_group(3),
        "C4": lambda: cyclic_group(4),
        "C2xC2": klein_four,
        "S3": symmetric_group3,
        "D4": dihedral_group4,
        "Q8": quaternion_group,
    }
    if name not in makers:
        raise KeyError(f"unknown builtin group {name!r}; known: {sorted(makers)}")
    return makers[name]()


BUILTIN_GROUPS = ("C2", "C3", "C4", "C2xC2", "S3", "D4", "Q8")


def group_algebra(G: FiniteGroup) -> HopfOps:
    """The group ring: group-like coproduct, inverse antipode, no grading."""
    return HopfOps(
        f"k[{G.name}]",
        G.elements,
        lambda a, b: LinComb.basis(G.mul(a, b)),
        LinComb.basis(G.identity),
        lambda g: LinComb.basis((g, g)),
        lambda g: 1,
        lambda g: LinComb.basis(G.inv(g)),
    )


def wreath_group(A: FiniteGroup, Q: FiniteGroup) -> FiniteGroup:
    """``A^Q`` semidirect ``Q`` with ``(f,q)(g,r) = (x -> f(x) g(xq), qr)``.

    Elements are pairs ``(f, q)`` where ``f`` is the tuple of values of the
    function on ``Q.elements`` in order.
    """
    qs = Q.elements
    qidx = {q: i for i, q in enumerate(qs)}
    shift = {q: tuple(qidx[Q.mul(x, q)] for x in qs) for q in qs}
    els = [(f, q) for f in itertools.product(A.elements, repeat=len(qs)) for q in qs]

    def op(x, y):
        (f, q), (g, r) = x, y
        sh = shift[q]
        return (tuple(A.mul(f[i], g[sh[i]]) for i in range(len(qs))), Q.mul(q, r))

    return FiniteGroup.from_op(els, op, name=f"{A.name}wr{Q.name}", validate=len(els) <= 128)


def wreath_evaluate(f: tuple, Q: FiniteGroup, x):
    return f[Q.index(x)]


@dataclass
class GroupExtension:
    """``1 -> A --iota--> E --pi--> Q -> 1`` with a set-theoretic section of ``pi``."""

    total: FiniteGroup
    kernel: FiniteGroup
    quotient: FiniteGroup
    iota: dict
    pi: dict
    section: dict

    def validate(self) -> "GroupExtension":
        E, A, Q = self.total, self.kernel, self.quotient
        for label, table, src, tgt in (("iota", self.iota, A, E), ("pi", self.pi, E, Q), ("section", self.section, Q, E)):
            for x in src:
                if x not in table:
                    raise (SectionInvalid if label == "section" else ValidationError)(f"{label} undefined at {x!r}", witness=(x,))
                if table[x] not in tgt:
                    raise ValidationError(f"{label}({x!r}) is not an element of the target", witness=(x,))
        for q in Q:
            if q not in self.section or self.pi.get(self.section[q]) != q:
                raise SectionInvalid("pi(section(q)) != q", witness=(q,))
        if self.section[Q.identity] != E.identity:
            raise SectionInvalid("section(1) must be the identity", witness=(Q.identity,))
        for a in A:
            for b in A:
                if self.iota[A.mul(a, b)] != E.mul(self.iota[a], self.iota[b]):
                    raise ValidationError("iota is not a homomorphism", witness=(a, b))
        if len(set(self.iota.values())) != len(A):
            raise ValidationError("iota is not injective")
        for e in E:
            for f in E:
                if self.pi[E.mul(e, f)] != Q.mul(self.pi[e], self.pi[f]):
                    raise ValidationError("pi is not a homomorphism", witness=(e, f))
        if set(self.pi.values()) != set(Q.elements):
            raise ValidationError("pi is not surjective")
        ker = {e for e in E if self.pi[e] == Q.identity}
        if ker != set(self.iota.values()):
            raise ValidationError("image(iota) != kernel(pi)")
        return self

    def iota_inverse(self) -> dict:
        return {v: k for k, v in self.iota.items()}


def kk_embed_group(ext: GroupExtension) -> list:
    """Graph of ``e -> (q -> s(q) e s(q pi(e))^-1, pi(e))`` into ``A wr Q``.

    The function values are pulled back through ``iota``.
    """
    E, A, Q = ext.total, ext.kernel, ext.quotient
    for q in Q:
        if q not in ext.section or ext.pi.get(ext.section[q]) != q:
            raise SectionInvalid("pi(section(q)) != q", witness=(q,))
    if ext.section[Q.identity] != E.identity:
        raise SectionInvalid("section(1) must be the identity", witness=(Q.identity,))
    back = ext.iota_inverse()
    sec = ext.section
    graph = []
    for e in E:
        pe = ext.pi[e]
        vals = []
        for q in Q.elements:
            v = E.prod(sec[q], e, E.inv(sec[Q.mul(q, pe)]))
            if v not in back:
                raise NotInKernel("value outside image(iota)", witness=(e, q))
            vals.append(back[v])
        graph.append((e, (tuple(vals), pe)))
    return graph


def check_group_embedding(ext: GroupExtension, graph: list, W: FiniteGroup | None = None) -> dict:
    """Homomorphism, injectivity, rho-compatibility and kernel placement of a graph."""
    E, A, Q = ext.total, ext.kernel, ext.quotient
    W = W or wreath_group(A, Q)
    phi = dict(graph)
    out = {"homomorphism": [], "injective": [], "projection": [], "kernel_at_one": []}
    for e in E:
        for f in E:
            if phi[E.mul(e, f)] != W.mul(phi[e], phi[f]):
                out["homomorphism"].append((e, f))
    if len(set(phi.values())) != len(E):
        out["injective"].append(("collision",))
    for e in E:
        if phi[e][1] != ext.pi[e]:
            out["projection"].append((e,))
    for a in A:
        f, q = phi[ext.iota[a]]
        if q != Q.identity or f[Q.index(Q.identity)] != a:
            out["kernel_at_one"].append((a,))
    return out


def recover_extension_from_subgroup(elements: Iterable, A: FiniteGroup, Q: FiniteGroup, W: FiniteGroup | None = None) -> GroupExtension:
    """Read off the extension structure of a subgroup of ``A wr Q``."""
    W = W or wreath_group(A, Q)
    E = W.subgroup(elements, name="E")
    one = Q.index(Q.identity)
    image = {q for (_, q) in E}
    if image != set(Q.elements):
        raise NotSurjective("subgroup does not map onto Q", witness=sorted(set(Q.elements) - image, key=Q.index))
    kernel = [e for e in E if e[1] == Q.identity]
    ev = {e: e[0][one] for e in kernel}
    if len(kernel) != len(A) or set(ev.values()) != set(A.elements):
        raise KernelMismatch(f"kernel has order {len(kernel)}, expected {len(A)}")
    iota = {a: e for e, a in ev.items()}
    pi = {e: e[1] for e in E}
    section = {Q.identity: E.identity}
    for e in E:
        section.setdefault(e[1], e)
    return GroupExtension(E, A, Q, iota, pi, section).validate()


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, allowed: Callable | None = None, accept: Callable | None = None):
    """Backtracking search for an isomorphism ``G -> H`` as a dict, or None.

    ``allowed(g)`` optionally restricts candidate images of a generator;
    ``accept(phi)`` is a final predicate on complete isomorphisms.
    """
    if len(G) != len(H):
        return None
    gens = G.generators()
    horder: dict = {}
    for h in H:
        horder.setdefault(H.order_of(h), []).append(h)
    cands = []
    for g in gens:
        c = horder.get(G.order_of(g), [])
        if allowed is not None:
            c = [h for h in c if h in set(allowed(g))]
        cands.append(c)

    def extend(images):
        phi = {G.identity: H.identity}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, h in zip(gens, images):
                    y = G.mul(x, g)
                    hy = H.mul(phi[x], h)
                    if y in phi:
                        if phi[y] != hy:
                            return None
                    else:
                        phi[y] = hy
                        nxt.append(y)
            frontier = nxt
        if len(set(phi.values())) != len(G):
            return None
        for a in G:
            for b in G:
                if phi[G.mul(a, b)] != H.mul(phi[a], phi[b]):
                    return None
        return phi

    def search(k, images):
        if k == len(gens):
            phi = extend(images)
            if phi is not None and (accept is None or accept(phi)):
                return phi
            return None
        for h in cands[k]:
            res = search(k + 1, images + [h])
            if res is not None:
                return res
        return None

    return search(0, [])


def find_extension_isomorphism(e1: GroupExtension, e2: GroupExtension, strict: bool = False):
    """An isomorphism of extensions ``E1 -> E2`` (as a dict on totals), or None.

    Non-strict: ``phi(iota1(A)) = iota2(A)``, inducing automorphisms of the
    kernel and quotient.  Strict: the induced maps are identities.
    """
    img1 = set(e1.iota.values())
    img2 = set(e2.iota.values())

    def accept(phi):
        if {phi[x] for x in img1} != img2:
            return False
        if strict:
            if any(phi[e1.iota[a]] != e2.iota[a] for a in e1.kernel):
                return False
            if any(e2.pi[phi[e]] != e1.pi[e] for e in e1.total):
                return False
        return True

    allowed = None
    if strict:
        allowed = lambda g: [h for h in e2.total if e2.pi[h] == e1.pi[g]]
    return find_isomorphism(e1.total, e2.total, allowed=allowed, accept=accept)


def conjugating_element(W: FiniteGroup, S1: Iterable, S2: Iterable):
    """Some ``x`` in ``W`` with ``x S1 x^-1 = S2``, or None."""
    s1, s2 = list(S1), set(S2)
    if len(s1) != len(s2):
        return None
    for x in W:
        xi = W.inv(x)
        if all(W.prod(x, s, xi) in s2 for s in s1):
            return x
    return None


@dataclass
class GroupMeasuring:
    """The group-like coalgebra on ``Y^X`` with its evaluation pairing.

    Basis symbols are tuples ``f`` listing ``f(x)`` for ``x`` in ``X`` order.
    When ``Y`` is a group the pointwise product and inverse make it a Hopf
    algebra (the group ring of ``Y^X``).
    """

    X: tuple
    Y: tuple
    ops: HopfOps

    def evaluate(self, f: tuple, x):
        return f[self.X.index(x)]

    def evaluate_word(self, f: tuple, xs: Sequence) -> tuple:
        return tuple(self.evaluate(f, x) for x in xs)


def measuring_group_iso(X: Sequence, Y) -> GroupMeasuring:
    X = tuple(X)
    group = Y if isinstance(Y, FiniteGroup) else None
    ys = tuple(Y.elements) if group else tuple(Y)
    if not X or not ys:
        raise ValidationError("X and Y must be nonempty")
    basis = list(itertools.product(ys, repeat=len(X)))
    product = unit = antipode = None
    if group is not None:
        product = lambda f, g: LinComb.basis(tuple(group.mul(a, b) for a, b in zip(f, g)))
        unit = LinComb.basis(tuple(group.identity for _ in X))
        antipode = lambda f: LinComb.basis(tuple(group.inv(a) for a in f))
    name = f"k[{getattr(Y, 'name', 'Y')}^{len(X)}]"
    ops = HopfOps(name, basis, product, unit if unit is not None else LinComb.zero(),
                  lambda f: LinComb.basis((f, f)), lambda f: 1, antipode)
    return GroupMeasuring(X, ys, ops)


def builtin_group_extension(name: str) -> GroupExtension:
    """Registry: ``C4/C2``, ``C2xC2/C2``, ``D4/Z`` (kernel the centre), ``split:A,Q``."""
    if name == "C4/C2":
        E, A, Q = cyclic_group(4), cyclic_group(2), cyclic_group(2)
        iota = {"1": "1", "a": "a2"}
        pi = {"1": "1", "a": "a", "a2": "1", "a3": "a"}
        section = {"1": "1", "a": "a"}
        return GroupExtension(E, A, Q, iota, pi, section).validate()
    if name == "C2xC2/C2":
        E, A, Q = klein_four(), cyclic_group(2), cyclic_group(2)
        iota = {"1": "1", "a": "a"}
        pi = {"1": "1", "a": "1", "b": "a", "ab": "a"}
        section = {"1": "1", "a": "b"}
        return GroupExtension(E, A, Q, iota, pi, section).validate()
    if name == "D4/Z":
        E, A, Q = dihedral_group4(), cyclic_group(2), klein_four()
        iota = {"1": "1", "a": "r2"}
        # D4/<r2>: r -> a, s -> b
        pi = {"1": "1", "r": "a", "r2": "1", "r3": "a", "s": "b", "sr": "ab", "sr2": "b", "sr3": "ab"}
        section = {"1": "1", "a": "r", "b": "s", "ab": "sr"}
        return GroupExtension(E, A, Q, iota, pi, section).validate()
    if name.startswith("split:"):
        an, qn = name[len("split:"):].split(",")
        A, Q = builtin_group(an), builtin_group(qn)
        E = direct_product(A, Q, name=f"{an}x{qn}")
        iota = {a: (a, Q.identity) for a in A}
        pi = {(a, q): q for a in A for q in Q}
        section = {q: (A.identity, q) for q in Q}
        return GroupExtension(E, A, Q, iota, pi, section).validate()
    raise KeyError(f"unknown builtin group extension {name!r}")


BUILTIN_GROUP_EXTENSIONS = ("C4/C2", "C2xC2/C2", "D4/Z")


def shifted_section(ext: GroupExtension, a=None) -> dict:
    """Another normalised section: ``q -> s(q) iota(a)`` for ``q != 1``.

    ``a`` defaults to the first non-identity kernel element.
    """
    A, E = ext.kernel, ext.total
    if a is None:
        a = next((x for x in A if x != A.identity), A.identity)
    shift = ext.iota[a]
    return {q: (e if q == ext.quotient.identity else E.mul(e, shift)) for q, e in ext.section.items()}


def embedding_images_conjugate(ext: GroupExtension, other_section: dict, W: FiniteGroup | None = None):
    """Conjugating element between the embedded images for two sections, or None."""
    W = W or wreath_group(ext.kernel, ext.quotient)
    other = GroupExtension(ext.total, ext.kernel, ext.quotient, ext.iota, ext.pi, other_section).validate()
    img1 = [v for _, v in kk_embed_group(ext)]
    img2 = [v for _, v in kk_embed_group(other)]
    return conjugating_element(W, img1, img2)
