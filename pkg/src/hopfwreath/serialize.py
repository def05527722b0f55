"""JSON encodings for symbols, combinations, groups, Lie algebras, extensions and actions."""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, ValidationError
from .linear import LinComb, scalar, symbol_key

# -- primitives -------------------------------------------------------------


def symbol_to_json(s):
    if s is None or isinstance(s, (str, bool)):
        return s
    if isinstance(s, int):
        return s
    if isinstance(s, Fraction):
        return str(s)
    if isinstance(s, tuple):
        return [symbol_to_json(x) for x in s]
    if isinstance(s, frozenset):
        return [symbol_to_json(x) for x in sorted(s, key=symbol_key)]
    return str(s)


def symbol_from_json(obj):
    if isinstance(obj, list):
        return tuple(symbol_from_json(x) for x in obj)
    return obj


def scalar_to_json(c) -> str:
    return str(scalar(c))


def _scalar(obj, path):
    if isinstance(obj, bool) or isinstance(obj, float):
        raise ParseError(f"{path}: rationals must be integers or 'p/q' strings", witness=path)
    try:
        return scalar(obj)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{path}: not a rational: {obj!r}", witness=path) from exc


def lincomb_to_json(x: LinComb) -> dict:
    return {"terms": [{"basis": symbol_to_json(s), "coeff": scalar_to_json(c)} for s, c in x.items()]}


def lincomb_from_json(obj, path: str = "$") -> LinComb:
    terms = _field(obj, "terms", path, list)
    out = []
    for k, t in enumerate(terms):
        p = f"{path}.terms[{k}]"
        basis = symbol_from_json(_field(t, "basis", p))
        out.append((basis, _scalar(_field(t, "coeff", p), f"{p}.coeff")))
    return LinComb(out)


def _field(obj, key, path, kind=None):
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: expected an object", witness=path)
    if key not in obj:
        raise ParseError(f"{path}: missing field {key!r}", witness=f"{path}.{key}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise ParseError(f"{path}.{key}: expected {kind.__name__}", witness=f"{path}.{key}")
    return v


def load_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", witness=str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}", witness=str(path)) from exc


def _is_builtin(obj) -> bool:
    return isinstance(obj, dict) and obj.get("type") == "builtin"


# -- groups -------------------------------------------------------------------


def group_from_json(obj, path: str = "$"):
    from .groups import FiniteGroup, builtin_group

    if _is_builtin(obj):
        name = _field(obj, "name", path, str)
        try:
            return builtin_group(name)
        except KeyError as exc:
            raise ParseError(f"{path}.name: {exc.args[0]}", witness=f"{path}.name") from exc
    elements = _field(obj, "elements", path, list)
    rows = _field(obj, "mul", path, list)
    if len(rows) != len(elements):
        raise ParseError(f"{path}.mul: expected {len(elements)} rows", witness=f"{path}.mul")
    table = {}
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(elements):
            raise ParseError(f"{path}.mul[{i}]: expected {len(elements)} entries", witness=f"{path}.mul[{i}]")
        for j, v in enumerate(row):
            table[(elements[i], elements[j])] = v
    try:
        return FiniteGroup(elements, table, name=obj.get("name", ""))
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}", witness=exc.witness) from exc


def group_to_json(G) -> dict:
    els = [symbol_to_json(g) for g in G.elements]
    return {
        "name": G.name,
        "elements": els,
        "mul": [[symbol_to_json(G.mul(a, b)) for b in G.elements] for a in G.elements],
    }


def group_extension_from_json(obj, path: str = "$"):
    from .groups import GroupExtension, builtin_group_extension

    if _is_builtin(obj):
        name = _field(obj, "name", path, str)
        try:
            return builtin_group_extension(name)
        except KeyError as exc:
            raise ParseError(f"{path}.name: {exc.args[0]}", witness=f"{path}.name") from exc
    E = group_from_json(_field(obj, "total", path), f"{path}.total")
    A = group_from_json(_field(obj, "kernel", path), f"{path}.kernel")
    Q = group_from_json(_field(obj, "quotient", path), f"{path}.quotient")
    maps = {k: _field(obj, k, path, dict) for k in ("iota", "pi", "section")}
    return GroupExtension(E, A, Q, maps["iota"], maps["pi"], maps["section"]).validate()


def group_extension_to_json(ext) -> dict:
    return {
        "total": group_to_json(ext.total),
        "kernel": group_to_json(ext.kernel),
        "quotient": group_to_json(ext.quotient),
        "iota": dict(ext.iota),
        "pi": dict(ext.pi),
        "section": dict(ext.section),
    }


# -- Lie algebras ---------------------------------------------------------------


def lie_from_json(obj, path: str = "$"):
    from .lie import LieAlgebra, builtin_lie

    if _is_builtin(obj):
        name = _field(obj, "name", path, str)
        try:
            return builtin_lie(name)
        except (KeyError, ValueError) as exc:
            raise ParseError(f"{path}.name: unknown builtin Lie algebra {name!r}", witness=f"{path}.name") from exc
    names = _field(obj, "basis", path, list)
    idx = {n: i for i, n in enumerate(names)}
    br = {}
    for k, entry in enumerate(obj.get("brackets", [])):
        p = f"{path}.brackets[{k}]"
        i, j = _field(entry, "i", p), _field(entry, "j", p)
        value = _field(entry, "value", p, dict)
        for key, label in ((i, "i"), (j, "j")):
            if key not in idx:
                raise ParseError(f"{p}.{label}: unknown basis name {key!r}", witness=f"{p}.{label}")
        terms = {}
        for n, c in value.items():
            if n not in idx:
                raise ParseError(f"{p}.value: unknown basis name {n!r}", witness=f"{p}.value")
            terms[idx[n]] = _scalar(c, f"{p}.value.{n}")
        br[(idx[i], idx[j])] = LinComb(terms)
    try:
        return LieAlgebra(names, br, name=obj.get("name", ""))
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}", witness=exc.witness) from exc


def lie_to_json(L) -> dict:
    brackets = []
    for (i, j), v in sorted(L.structure_constants().items()):
        brackets.append({"i": L.names[i], "j": L.names[j],
                         "value": {L.names[k]: scalar_to_json(c) for k, c in v.items()}})
    return {"name": L.name, "basis": list(L.names), "brackets": brackets}


def _matrix(obj, src, tgt, path) -> dict:
    """Source-basis -> LinComb over target indices.

    Accepts ``{source: {target: coeff}}`` or a list of rows, row ``i``
    holding the coefficients of target basis ``i`` (columns are sources).
    """
    out = {}
    if isinstance(obj, dict):
        sidx = {n: i for i, n in enumerate(src.names)}
        tidx = {n: i for i, n in enumerate(tgt.names)}
        for s, col in obj.items():
            if s not in sidx:
                raise ParseError(f"{path}: unknown source basis name {s!r}", witness=f"{path}.{s}")
            if not isinstance(col, dict):
                raise ParseError(f"{path}.{s}: expected an object", witness=f"{path}.{s}")
            terms = {}
            for t, c in col.items():
                if t not in tidx:
                    raise ParseError(f"{path}.{s}: unknown target basis name {t!r}", witness=f"{path}.{s}.{t}")
                terms[tidx[t]] = _scalar(c, f"{path}.{s}.{t}")
            out[sidx[s]] = LinComb(terms)
        return out
    if isinstance(obj, list):
        if len(obj) != tgt.dim:
            raise ParseError(f"{path}: expected {tgt.dim} rows", witness=path)
        for i, row in enumerate(obj):
            if not isinstance(row, list) or len(row) != src.dim:
                raise ParseError(f"{path}[{i}]: expected {src.dim} entries", witness=f"{path}[{i}]")
        for j in range(src.dim):
            out[j] = LinComb({i: _scalar(obj[i][j], f"{path}[{i}][{j}]") for i in range(tgt.dim)})
        return out
    raise ParseError(f"{path}: expected a matrix", witness=path)


def lie_extension_from_json(obj, path: str = "$"):
    from .lie import LieExtension, builtin_lie_extension

    if _is_builtin(obj):
        name = _field(obj, "name", path, str)
        try:
            return builtin_lie_extension(name)
        except KeyError as exc:
            raise ParseError(f"{path}.name: {exc.args[0]}", witness=f"{path}.name") from exc
    E = lie_from_json(_field(obj, "total", path), f"{path}.total")
    A = lie_from_json(_field(obj, "kernel", path), f"{path}.kernel")
    Q = lie_from_json(_field(obj, "quotient", path), f"{path}.quotient")
    iota = _matrix(_field(obj, "iota", path), A, E, f"{path}.iota")
    pi = _matrix(_field(obj, "pi", path), E, Q, f"{path}.pi")
    section = _matrix(_field(obj, "section", path), Q, E, f"{path}.section")
    return LieExtension(E, A, Q, iota, pi, section, name=obj.get("name", "")).validate()


def lie_extension_to_json(ext) -> dict:
    def mat(table, src, tgt):
        return {src.names[i]: {tgt.names[k]: scalar_to_json(c) for k, c in table[i].items()} for i in range(src.dim)}

    return {
        "name": ext.name,
        "total": lie_to_json(ext.total),
        "kernel": lie_to_json(ext.kernel),
        "quotient": lie_to_json(ext.quotient),
        "iota": mat(ext.iota, ext.kernel, ext.total),
        "pi": mat(ext.pi, ext.total, ext.quotient),
        "section": mat(ext.section, ext.quotient, ext.total),
    }


# -- actions and cocycles ------------------------------------------------------------


def action_from_json(obj, Q, H, path: str = "$"):
    """``{"star": [{"q", "h", "value"}]}``; unlisted pairs act trivially."""
    from .smash import HopfAction

    entries = _field(obj, "star", path, list)
    table = {}
    for k, e in enumerate(entries):
        p = f"{path}.star[{k}]"
        q = symbol_from_json(_field(e, "q", p))
        h = symbol_from_json(_field(e, "h", p))
        table[(q, h)] = lincomb_from_json(_field(e, "value", p), f"{p}.value")

    def star(q, h):
        v = table.get((q, h))
        return v if v is not None else LinComb.basis(h, Q.counit_of(q))

    return HopfAction(Q, H, star, name=obj.get("name", "json"))


def action_to_json(act) -> dict:
    return {"star": [{"q": symbol_to_json(q), "h": symbol_to_json(h), "value": lincomb_to_json(act.act(q, h))}
                     for q in act.Q.basis for h in act.H.basis]}


def cocycle_from_json(obj, Q, H, path: str = "$"):
    """``{"sigma": [{"q", "r", "value"}], "delta": [...]?}``; unlisted pairs give ``eps(q)eps(r)1``."""
    from .smash import Cocycle

    def table(key):
        out = {}
        for k, e in enumerate(_field(obj, key, path, list)):
            p = f"{path}.{key}[{k}]"
            q = symbol_from_json(_field(e, "q", p))
            r = symbol_from_json(_field(e, "r", p))
            out[(q, r)] = lincomb_from_json(_field(e, "value", p), f"{p}.value")
        return out

    sig = table("sigma")

    def sigma(pair):
        v = sig.get(pair)
        return v if v is not None else H.unit * (Q.counit_of(pair[0]) * Q.counit_of(pair[1]))

    delta = None
    if "delta" in obj:
        dt = table("delta")
        delta = lambda pair: dt.get(pair) if pair in dt else H.unit * (Q.counit_of(pair[0]) * Q.counit_of(pair[1]))
    return Cocycle(Q, H, sigma, delta)
