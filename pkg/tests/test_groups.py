import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfwreath.errors import KernelMismatch, NotSurjective, SectionInvalid, ValidationError
from hopfwreath.groups import (
    BUILTIN_GROUP_EXTENSIONS,
    BUILTIN_GROUPS,
    FiniteGroup,
    GroupExtension,
    builtin_group,
    builtin_group_extension,
    check_group_embedding,
    embedding_images_conjugate,
    find_extension_isomorphism,
    find_isomorphism,
    group_algebra,
    kk_embed_group,
    measuring_group_iso,
    recover_extension_from_subgroup,
    shifted_section,
    wreath_group,
)
from hopfwreath.hopf import check_axioms
from hopfwreath.serialize import group_from_json, group_to_json


@pytest.mark.parametrize("name, order", [("C2", 2), ("C3", 3), ("C4", 4), ("C2xC2", 4),
                                         ("S3", 6), ("D4", 8), ("Q8", 8)])
def test_builtin_orders(name, order):
    assert len(builtin_group(name)) == order


def test_group_algebra_c2_passes():
    H = group_algebra(builtin_group("C2"))
    assert len(H.basis) == 2 and check_axioms(H).ok


def test_non_associative_table_is_rejected():
    els = ["e", "x", "y"]
    table = {(a, b): b if a == "e" else a if b == "e" else "e" for a in els for b in els}
    table[("x", "y")] = "x"
    with pytest.raises(ValidationError):
        FiniteGroup(els, table)


def test_c2_wreath_c2_is_d4():
    W = wreath_group(builtin_group("C2"), builtin_group("C2"))
    assert len(W) == 8
    assert find_isomorphism(W, builtin_group("D4")) is not None
    assert find_isomorphism(W, builtin_group("Q8")) is None


@pytest.mark.parametrize("A, Q", [("C2", "C3"), ("C3", "C2"), ("C2", "C2xC2"), ("S3", "C2")])
def test_wreath_group_validates(A, Q):
    a, q = builtin_group(A), builtin_group(Q)
    W = wreath_group(a, q)
    assert len(W) == len(a) ** len(q) * len(q)
    FiniteGroup(W.elements, {(x, y): W.mul(x, y) for x in W for y in W})


def test_c4_embeds_as_cyclic_subgroup():
    ext = builtin_group_extension("C4/C2")
    graph = kk_embed_group(ext)
    assert all(not v for v in check_group_embedding(ext, graph).values())
    W = wreath_group(ext.kernel, ext.quotient)
    image = [v for _, v in graph]
    assert len(set(image)) == 4
    assert max(W.order_of(g) for g in image) == 4


def test_split_extension_embeds_constant_functions():
    ext = builtin_group_extension("split:C3,C2")
    phi = dict(kk_embed_group(ext))
    for a in ext.kernel:
        f, q = phi[(a, "1")]
        assert q == "1" and set(f) == {a}
    for q in ext.quotient:
        f, r = phi[("1", q)]
        assert r == q and set(f) == {"1"}


@pytest.mark.parametrize("name", BUILTIN_GROUP_EXTENSIONS + ("split:C2,C3", "split:C3,C2"))
def test_embedding_properties(name):
    ext = builtin_group_extension(name)
    res = check_group_embedding(ext, kk_embed_group(ext))
    assert res == {"homomorphism": [], "injective": [], "projection": [], "kernel_at_one": []}


@pytest.mark.parametrize("name", BUILTIN_GROUP_EXTENSIONS)
def test_round_trip_recovers_extension(name):
    ext = builtin_group_extension(name)
    image = [v for _, v in kk_embed_group(ext)]
    rec = recover_extension_from_subgroup(image, ext.kernel, ext.quotient)
    assert find_extension_isomorphism(ext, rec) is not None
    assert embedding_images_conjugate(ext, shifted_section(ext)) is not None


def test_recovered_c4_is_cyclic():
    ext = builtin_group_extension("C4/C2")
    rec = recover_extension_from_subgroup([v for _, v in kk_embed_group(ext)], ext.kernel, ext.quotient)
    assert find_isomorphism(rec.total, builtin_group("C4")) is not None


def test_extension_isomorphism_distinguishes_totals():
    assert find_extension_isomorphism(builtin_group_extension("C4/C2"), builtin_group_extension("C2xC2/C2")) is None


def test_recover_rejects_bad_subgroups():
    A, Q = builtin_group("C2"), builtin_group("C2")
    W = wreath_group(A, Q)
    with pytest.raises(KernelMismatch):
        recover_extension_from_subgroup(W.elements, A, Q)
    base = [x for x in W if x[1] == "1"]
    with pytest.raises(NotSurjective):
        recover_extension_from_subgroup(base, A, Q)


def test_section_must_fix_identity():
    ext = builtin_group_extension("C4/C2")
    with pytest.raises(SectionInvalid):
        GroupExtension(ext.total, ext.kernel, ext.quotient, ext.iota, ext.pi, {"1": "a2", "a": "a"}).validate()
    with pytest.raises(SectionInvalid):
        GroupExtension(ext.total, ext.kernel, ext.quotient, ext.iota, ext.pi, {"1": "1", "a": "a2"}).validate()


@pytest.mark.parametrize("nx, ny", list(itertools.product((1, 2, 3), repeat=2)))
def test_measuring_dimension(nx, ny):
    X = [f"x{i}" for i in range(nx)]
    Y = [f"y{i}" for i in range(ny)]
    M = measuring_group_iso(X, Y)
    assert len(M.ops.basis) == ny ** nx
    assert all(M.ops.cop(f) == M.ops.element(f).map(lambda s: M.ops.element((s, s))) for f in M.ops.basis)


def test_measuring_evaluation_pairing():
    M = measuring_group_iso(["p", "q"], builtin_group("C3"))
    f = ("a", "a2")
    assert M.evaluate(f, "q") == "a2"
    assert M.evaluate_word(f, ["q", "p"]) == ("a2", "a")
    assert check_axioms(M.ops).ok


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_group_json_round_trip(name):
    G = builtin_group(name)
    H = group_from_json(group_to_json(G))
    assert H.elements == G.elements
    assert all(H.mul(a, b) == G.mul(a, b) for a in G for b in G)


S3C2 = wreath_group(builtin_group("S3"), builtin_group("C2"))
elements = st.sampled_from(S3C2.elements)


@given(elements, elements, elements)
def test_wreath_product_is_associative_on_samples(x, y, z):
    W = S3C2
    assert W.mul(W.mul(x, y), z) == W.mul(x, W.mul(y, z))
    assert W.mul(x, W.inv(x)) == W.identity


@given(st.sampled_from(BUILTIN_GROUP_EXTENSIONS), st.data())
def test_embedding_is_multiplicative_on_samples(name, data):
    ext = builtin_group_extension(name)
    phi = dict(kk_embed_group(ext))
    W = wreath_group(ext.kernel, ext.quotient)
    e = data.draw(st.sampled_from(ext.total.elements))
    f = data.draw(st.sampled_from(ext.total.elements))
    assert phi[ext.total.mul(e, f)] == W.mul(phi[e], phi[f])
