"""Exact rational linear algebra on finitely supported combinations of symbols.

Basis symbols are arbitrary hashable values (ints, strings, tuples of
those).  Coefficients are exact rationals: ``int`` when integral, otherwise
``fractions.Fraction``; both compare and hash consistently, so the storage
choice never leaks into equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

from .errors import NoSolution

Symbol = Hashable


def scalar(x) -> Fraction | int:
    """Coerce ``x`` (int, Fraction, or a ``"p/q"`` string) to an exact scalar."""
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return scalar(Fraction(x.strip()))
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string or Fraction")
    return scalar(Fraction(x))


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def symbol_key(s):
    """Total order on nested symbols; used for canonical term iteration."""
    if s is None:
        return (-1,)
    if isinstance(s, (int, Fraction)) and not isinstance(s, bool):
        return (0, s)
    if isinstance(s, str):
        return (1, s)
    if isinstance(s, tuple):
        return (2, tuple(symbol_key(x) for x in s))
    if isinstance(s, frozenset):
        return (3, tuple(sorted(symbol_key(x) for x in s)))
    return (4, type(s).__name__, repr(s))


class LinComb:
    """Immutable finitely supported map ``symbol -> nonzero rational``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for s, c in items:
                if not c:
                    continue
                c = acc.get(s, 0) + scalar(c)
                if c:
                    acc[s] = _norm(c)
                else:
                    acc.pop(s, None)
        self._terms = acc
        self._hash = None

    @classmethod
    def _raw(cls, acc: dict) -> "LinComb":
        # acc must already be pruned and normalised
        obj = cls.__new__(cls)
        obj._terms = acc
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, s: Symbol, c=1) -> "LinComb":
        return cls({s: c})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls._raw({})

    def items(self):
        return sorted(self._terms.items(), key=lambda t: symbol_key(t[0]))

    def raw_items(self):
        """Unordered term view; cheaper than :meth:`items` inside hot loops."""
        return self._terms.items()

    def support(self):
        return [s for s, _ in self.items()]

    def coeff(self, s: Symbol):
        return self._terms.get(s, 0)

    def as_dict(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __contains__(self, s):
        return s in self._terms

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "LinComb") -> "LinComb":
        return lincomb_combine(self, 1, other)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return lincomb_combine(self, -1, other)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({s: -c for s, c in self._terms.items()})

    def __mul__(self, c) -> "LinComb":
        c = scalar(c)
        if not c:
            return LinComb._raw({})
        return LinComb._raw({s: _norm(v * c) for s, v in self._terms.items()})

    __rmul__ = __mul__

    def map(self, fn: Callable[[Symbol], "LinComb"]) -> "LinComb":
        """Extend a symbol-level map linearly."""
        acc: dict = {}
        for s, c in self._terms.items():
            for t, d in fn(s)._terms.items():
                _accumulate(acc, t, c * d)
        return LinComb._raw(acc)

    def relabel(self, fn: Callable[[Symbol], Symbol]) -> "LinComb":
        acc: dict = {}
        for s, c in self._terms.items():
            _accumulate(acc, fn(s), c)
        return LinComb._raw(acc)

    def filter(self, pred: Callable[[Symbol], bool]) -> "LinComb":
        return LinComb._raw({s: c for s, c in self._terms.items() if pred(s)})

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for s, c in self.items():
            parts.append(f"{c}*{s!r}" if c != 1 else repr(s))
        return " + ".join(parts)


def _accumulate(acc: dict, s, c):
    v = acc.get(s, 0) + c
    if v:
        acc[s] = _norm(v)
    else:
        acc.pop(s, None)


class Accumulator:
    """Mutable sum of terms, frozen into a LinComb by :meth:`result`."""

    __slots__ = ("acc",)

    def __init__(self):
        self.acc: dict = {}

    def add(self, s, c=1):
        if c:
            _accumulate(self.acc, s, c)

    def add_lincomb(self, x: LinComb, c=1):
        if c:
            for s, d in x.raw_items():
                _accumulate(self.acc, s, c * d)

    def result(self) -> LinComb:
        return LinComb._raw(dict(self.acc))


def lincomb_combine(a: LinComb, s, b: LinComb) -> LinComb:
    """Return ``a + s*b`` with zero coefficients pruned."""
    s = scalar(s)
    acc = dict(a._terms)
    if s:
        for t, c in b._terms.items():
            _accumulate(acc, t, s * c)
    return LinComb._raw(acc)


def lincomb_sum(xs: Iterable[LinComb]) -> LinComb:
    acc = Accumulator()
    for x in xs:
        acc.add_lincomb(x)
    return acc.result()


def tensor(a: LinComb, b: LinComb) -> LinComb:
    """Bilinear tensor product onto the pair basis ``(x, y)``."""
    acc = {}
    for x, c in a._terms.items():
        for y, d in b._terms.items():
            acc[(x, y)] = _norm(c * d)
    return LinComb._raw(acc)


def tensor_legs(*xs: LinComb) -> LinComb:
    """Tensor of several combinations onto flat tuples ``(x1, ..., xk)``."""
    acc = {(): 1}
    for x in xs:
        nxt = {}
        for t, c in acc.items():
            for s, d in x._terms.items():
                nxt[t + (s,)] = _norm(c * d)
        acc = nxt
    return LinComb._raw(acc)


class LinMap:
    """A linear map given by its action on a finite list of domain symbols."""

    def __init__(self, domain: Sequence[Symbol], action: Callable[[Symbol], LinComb] | dict):
        self.domain = tuple(domain)
        if isinstance(action, dict):
            table = dict(action)
            self._action = lambda s: table.get(s, LinComb.zero())
        else:
            self._action = action
        self._cache: dict = {}

    def on_symbol(self, s: Symbol) -> LinComb:
        v = self._cache.get(s)
        if v is None:
            v = self._action(s)
            self._cache[s] = v
        return v

    def __call__(self, x) -> LinComb:
        if isinstance(x, LinComb):
            return x.map(self.on_symbol)
        return self.on_symbol(x)

    def table(self) -> dict:
        return {s: self.on_symbol(s) for s in self.domain}


def _eliminate(columns: Sequence[LinComb], augment: LinComb | None = None):
    """Sparse Gauss-Jordan on the matrix whose columns are ``columns``.

    Returns ``(pivots, inconsistent)`` where ``pivots`` maps a pivot column
    index to its fully reduced row ``{col: coeff}``; the augmented column, if
    any, has index ``len(columns)``.
    """
    aug = len(columns)
    rows: dict = {}
    for j, col in enumerate(columns):
        for s, c in col.raw_items():
            rows.setdefault(s, {})[j] = c
    if augment is not None:
        for s, c in augment.raw_items():
            rows.setdefault(s, {})[aug] = c
    pivots: dict = {}
    inconsistent = False
    for key in sorted(rows, key=symbol_key):
        row = rows[key]
        for p in [j for j in row if j in pivots]:
            f = row.get(p)
            if not f:
                continue
            for j, v in pivots[p].items():
                nv = row.get(j, 0) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        cand = [j for j in row if j != aug]
        if not cand:
            if row.get(aug):
                inconsistent = True
            continue
        p = min(cand)
        inv = Fraction(1) / row[p]
        row = {j: _norm(v * inv) for j, v in row.items()}
        for q, prow in pivots.items():
            f = prow.get(p)
            if f:
                for j, v in row.items():
                    nv = prow.get(j, 0) - f * v
                    if nv:
                        prow[j] = _norm(nv)
                    else:
                        prow.pop(j, None)
        pivots[p] = row
    return pivots, inconsistent


def rref_rows(vectors: Sequence[LinComb], order: Sequence[Symbol] | None = None) -> list[LinComb]:
    """Reduced row-echelon basis of the span of ``vectors``.

    ``order`` fixes the column order; by default the canonical symbol order.
    """
    if order is None:
        syms = set()
        for v in vectors:
            syms.update(s for s, _ in v.raw_items())
        order = sorted(syms, key=symbol_key)
    idx = {s: i for i, s in enumerate(order)}
    rows = [{idx[s]: c for s, c in v.raw_items()} for v in vectors]
    rows = [r for r in rows if r]
    out = []
    for col in range(len(order)):
        piv = next((r for r in rows if r.get(col)), None)
        if piv is None:
            continue
        rows.remove(piv)
        inv = Fraction(1) / piv[col]
        piv = {j: _norm(v * inv) for j, v in piv.items()}
        for r in rows + out:
            f = r.get(col)
            if f:
                for j, v in piv.items():
                    nv = r.get(j, 0) - f * v
                    if nv:
                        r[j] = _norm(nv)
                    else:
                        r.pop(j, None)
        rows = [r for r in rows if r]
        out.append(piv)
    return [LinComb._raw({order[j]: c for j, c in r.items()}) for r in out]


def kernel_basis(M: LinMap) -> list[LinComb]:
    """Exact basis of ``{v : M(v) = 0}`` in reduced row-echelon form."""
    dom = M.domain
    pivots, _ = _eliminate([M.on_symbol(s) for s in dom])
    free = [j for j in range(len(dom)) if j not in pivots]
    vecs = []
    for f in free:
        acc = {dom[f]: 1}
        for p, row in pivots.items():
            c = row.get(f)
            if c:
                acc[dom[p]] = _norm(-c)
        vecs.append(LinComb._raw(acc))
    return rref_rows(vecs, dom)


def solve(M: LinMap, y: LinComb) -> LinComb:
    """Some ``v`` with ``M(v) = y``; free variables are set to zero."""
    dom = M.domain
    pivots, bad = _eliminate([M.on_symbol(s) for s in dom], y)
    if bad:
        raise NoSolution("target lies outside the image", witness=y)
    aug = len(dom)
    acc = {}
    for p, row in pivots.items():
        c = row.get(aug)
        if c:
            acc[dom[p]] = c
    return LinComb._raw(acc)


def rank(vectors: Sequence[LinComb]) -> int:
    pivots, _ = _eliminate(list(vectors))
    return len(pivots)


def express_in(vectors: Sequence[LinComb], y: LinComb) -> list:
    """Coordinates of ``y`` in the span of ``vectors`` (which should be independent)."""
    labels = list(range(len(vectors)))
    M = LinMap(labels, lambda i: vectors[i])
    sol = solve(M, y)
    return [sol.coeff(i) for i in labels]
