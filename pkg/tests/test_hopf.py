import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfwreath.errors import DegreeOverflow, NotInvertible
from hopfwreath.groups import BUILTIN_GROUPS, builtin_group, group_algebra
from hopfwreath.hopf import (
    HopfMorphism,
    HopfOps,
    antipode_map,
    check_axioms,
    convolution_inverse,
    convolve,
    group_likes,
    hopf_kernel,
    identity_map,
    maps_equal,
    primitives,
    sweedler_expand,
    unit_counit,
)
from hopfwreath.lie import BUILTIN_LIE, abelian, builtin_lie, enveloping_hopf, heisenberg
from hopfwreath.linear import LinComb, LinMap, rref_rows

B = LinComb.basis
FAMILIES = {"coassociativity", "counit", "bialgebra", "antipode", "cocommutativity", "associativity"}


def test_sweedler_group_like_three_legs():
    H = group_algebra(builtin_group("C3"))
    assert sweedler_expand(H, B("a"), 3) == B(("a", "a", "a"))


def test_sweedler_primitive_two_legs():
    U = enveloping_hopf(abelian(1), 3)
    assert sweedler_expand(U, B((0,)), 2) == B(((0,), ())) + B(((), (0,)))


def test_sweedler_square_of_primitive():
    U = enveloping_hopf(abelian(1), 3)
    want = B(((0, 0), ())) + B(((0,), (0,)), 2) + B(((), (0, 0)))
    assert sweedler_expand(U, B((0, 0)), 2) == want


def test_sweedler_rejects_bad_requests():
    U = enveloping_hopf(abelian(1), 2)
    with pytest.raises(ValueError):
        sweedler_expand(U, B((0,)), 1)
    with pytest.raises(DegreeOverflow):
        sweedler_expand(U, B((0, 0, 0)), 2)


def test_convolution_of_identity_squares_group_likes():
    H = group_algebra(builtin_group("C2"))
    sq = convolve(identity_map(H), identity_map(H), H, H)
    assert sq("a") == B("1")
    C3 = group_algebra(builtin_group("C3"))
    assert convolve(identity_map(C3), identity_map(C3), C3, C3)("a") == B("a2")


def test_group_algebra_s3_passes_and_is_noncommutative():
    G = builtin_group("S3")
    H = group_algebra(G)
    rep = check_axioms(H)
    assert rep.ok and set(rep.families()) == FAMILIES
    assert len(H.basis) == 6
    assert any(H.prod(a, b) != H.prod(b, a) for a in H.basis for b in H.basis)


def test_truncated_heisenberg_passes_on_window():
    assert check_axioms(enveloping_hopf(heisenberg(), 4), window=3).ok


def test_hopf_kernel_of_quotient_c4_to_c2():
    C4, C2 = builtin_group("C4"), builtin_group("C2")
    pi_map = {"1": "1", "a": "a", "a2": "1", "a3": "a"}
    pi = HopfMorphism(group_algebra(C4), group_algebra(C2), lambda g: B(pi_map[g]))
    assert pi.check().ok
    assert rref_rows(hopf_kernel(pi)) == rref_rows([B("1"), B("a2")])


def test_group_likes_examples():
    assert sorted(map(repr, group_likes(group_algebra(builtin_group("C2"))))) == sorted(map(repr, [B("1"), B("a")]))
    assert len(group_likes(group_algebra(builtin_group("C2xC2")))) == 4
    U = enveloping_hopf(heisenberg(), 3)
    assert group_likes(U) == [U.unit]


def test_primitives_examples():
    U = enveloping_hopf(builtin_lie("abelian-3"), 3)
    assert rref_rows(primitives(U)) == rref_rows([B((i,)) for i in range(3)])
    assert primitives(group_algebra(builtin_group("C2"))) == []
    assert primitives(enveloping_hopf(abelian(1), 2)) == [B((0,))]


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_convolution_inverse_of_identity_is_antipode_groups(name):
    H = group_algebra(builtin_group(name))
    inv = convolution_inverse(identity_map(H), H, H)
    assert maps_equal(inv, antipode_map(H), H.basis) == []


@pytest.mark.parametrize("name", BUILTIN_LIE)
def test_convolution_inverse_of_identity_is_antipode_lie(name):
    H = enveloping_hopf(builtin_lie(name), 3)
    inv = convolution_inverse(identity_map(H), H, H)
    assert maps_equal(inv, antipode_map(H), H.basis) == []
    assert maps_equal(convolve(inv, identity_map(H), H, H), unit_counit(H, H), H.basis) == []


def test_zero_map_has_no_convolution_inverse():
    H = group_algebra(builtin_group("C2"))
    with pytest.raises(NotInvertible):
        convolution_inverse(LinMap(H.basis, lambda s: LinComb.zero()), H, H)


def _corrupt(H, **over):
    parts = dict(product=H.prod, coproduct=H.cop, antipode=H.anti, counit=H.counit_of)
    parts.update(over)
    return HopfOps("corrupt", list(H.basis), parts["product"], H.unit, parts["coproduct"],
                   parts["counit"], parts["antipode"])


def test_corrupted_antipode_is_caught_with_witness():
    H = group_algebra(builtin_group("C3"))
    bad = _corrupt(H, antipode=lambda g: B(g))
    rep = check_axioms(bad)
    assert rep.status("antipode") == "fail"
    assert {w[0] for w in rep.violations["antipode"]} == {"a", "a2"}
    assert rep.status("coassociativity") == "pass"


def test_corrupted_coproduct_breaks_cocommutativity():
    H = group_algebra(builtin_group("C2"))
    twisted = _corrupt(H, coproduct=lambda g: B((g, "1")) if g == "a" else H.cop(g))
    rep = check_axioms(twisted)
    assert not rep.ok
    assert rep.violations["counit"]


def test_corrupted_product_breaks_associativity():
    H = group_algebra(builtin_group("C3"))
    G = builtin_group("C3")
    bad = _corrupt(H, product=lambda x, y: B("a") if (x, y) == ("a", "a") else B(G.mul(x, y)))
    rep = check_axioms(bad)
    assert rep.violations["associativity"]


envelopes = st.sampled_from(["heisenberg", "sl2", "affine-2dim", "abelian-2"]).map(
    lambda n: enveloping_hopf(builtin_lie(n), 4))


@given(envelopes, st.data())
def test_coproduct_respects_the_filtration(U, data):
    m = data.draw(st.sampled_from(U.basis))
    for (a, b), _ in U.cop(m).items():
        assert U.degree(a) + U.degree(b) == U.degree(m)


@given(envelopes, st.data())
def test_antipode_reverses_products(U, data):
    low = U.basis_upto(2)
    m = data.draw(st.sampled_from(low))
    n = data.draw(st.sampled_from(low))
    assert U.S(U.prod(m, n)) == U.mul(U.anti(n), U.anti(m))


@given(st.sampled_from(BUILTIN_GROUPS), st.integers(2, 4), st.data())
def test_group_like_expansions_are_diagonal(name, legs, data):
    H = group_algebra(builtin_group(name))
    g = data.draw(st.sampled_from(H.basis))
    assert sweedler_expand(H, B(g), legs) == B((g,) * legs)
