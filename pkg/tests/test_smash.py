import dataclasses
import itertools

import pytest

from hopfwreath.errors import ActionInvalid, CocycleNotInvertible, HomomorphismFailure, KernelMismatch, NotCleft
from hopfwreath.groups import (
    FiniteGroup,
    GroupExtension,
    builtin_group,
    builtin_group_extension,
    cyclic_group,
    find_extension_isomorphism,
    find_isomorphism,
    group_algebra,
)
from hopfwreath.hopf import check_axioms, group_likes, primitives
from hopfwreath.lie import BUILTIN_LIE_EXTENSIONS, abelian, builtin_lie, builtin_lie_extension, monomials
from hopfwreath.linear import LinComb, LinMap, rank, tensor
from hopfwreath.smash import (
    Cocycle,
    HopfAction,
    alpha_embed,
    algebra_isomorphism_to_group_algebra,
    basis_group,
    check_module_axioms,
    cleavage_check,
    crossed_product,
    group_cleft_data,
    lie_cleft_data,
    primitive_of,
    recover_cleft_extension,
    smash_product,
    wreath_group_algebra_check,
    primitive_bracket_check,
    translation_action,
    trivial_action,
    trivial_cocycle,
    wreath_element_of,
    wreath_hopf,
)

B = LinComb.basis


def kC(n):
    return group_algebra(cyclic_group(n))


def inversion_action():
    """C2 acting on kC3 by the inversion automorphism."""
    C3 = builtin_group("C3")
    return HopfAction(kC(2), group_algebra(C3), lambda q, h: B(h if q == "1" else C3.inv(h)))


# -- actions and smash products --------------------------------------------


def test_translation_action_is_a_module_coalgebra_action():
    act, _ = translation_action(builtin_group("C2"), builtin_group("C2"))
    assert check_module_axioms(act).ok


@pytest.mark.parametrize("make", [
    lambda: trivial_action(kC(2), kC(3)),
    inversion_action,
    lambda: translation_action(builtin_group("C3"), builtin_group("C2"))[0],
    lambda: translation_action(builtin_group("C2"), builtin_group("C3"))[0],
])
def test_smash_of_valid_action_is_hopf(make):
    act = make()
    assert check_module_axioms(act).ok
    assert check_axioms(smash_product(act, validate=False)).ok


def test_smash_with_inversion_is_s3():
    S = smash_product(inversion_action())
    assert algebra_isomorphism_to_group_algebra(S, builtin_group("S3")) is not None
    assert algebra_isomorphism_to_group_algebra(S, builtin_group("C3")) is None


def test_non_module_action_is_rejected():
    C3 = builtin_group("C3")
    bad = HopfAction(kC(3), group_algebra(C3), lambda q, h: B(h if q == "1" else C3.inv(h)))
    assert not check_module_axioms(bad).ok
    with pytest.raises(ActionInvalid):
        smash_product(bad)


def test_group_wreath_c2_c2_is_kd4():
    W = wreath_hopf("group", builtin_group("C2"), builtin_group("C2"))
    assert len(W.smash.basis) == 8
    assert check_axioms(W.smash).ok
    assert algebra_isomorphism_to_group_algebra(W.smash, builtin_group("D4")) is not None
    for s in W.smash.basis:
        assert W.tau(s) == B(s[1])
    assert W.tau.check().ok


@pytest.mark.parametrize("A, Q", [("C2", "C2"), ("C3", "C2"), ("C2", "C3")])
def test_smash_identity_map_is_module_and_comodule_iso(A, Q):
    W = wreath_hopf("group", builtin_group(A), builtin_group(Q))
    S = W.smash
    for (h, q) in S.basis:
        for h2 in W.base.basis:
            # left multiplication by h2 # 1 matches the H-module structure on H (x) Q
            left = S.prod((h2, W.Q.identity), (h, q))
            assert left == W.base.prod(h2, h).relabel(lambda k: (k, q))
        # (id (x) tau) Delta(h#q) = sum (h#q1) (x) q2
        lhs = LinComb({(a, b[1]): c * W.base.counit_of(b[0]) for (a, b), c in S.cop((h, q)).items()})
        rhs = W.top.cop(q).map(lambda t: B(((h, t[0]), t[1])))
        assert lhs == rhs


@pytest.mark.parametrize("A, Q", [("C2", "C2"), ("C2", "C3"), ("C3", "C2")])
def test_group_wreath_matches_wreath_group_algebra(A, Q):
    rep = wreath_group_algebra_check(builtin_group(A), builtin_group(Q))
    assert rep.ok
    assert rep.counts["product"] == (len(builtin_group(A)) ** len(builtin_group(Q)) * len(builtin_group(Q))) ** 2


# -- crossed products --------------------------------------------------------


def _cocycle_c2(value):
    H, Q = kC(2), kC(2)
    return H, Q, Cocycle(Q, H, lambda p: value if p == ("a", "a") else H.unit)


def test_trivial_cocycle_gives_the_smash_product():
    act = inversion_action()
    C = crossed_product(act, trivial_cocycle(act.Q, act.H))
    S = smash_product(act)
    assert all(C.prod(x, y) == S.prod(x, y) for x in S.basis for y in S.basis)


def test_nontrivial_cocycle_gives_kc4():
    H, Q, sigma = _cocycle_c2(B("a"))
    C = crossed_product(trivial_action(Q, H), sigma)
    assert check_axioms(C).ok
    assert not C.has_antipode
    assert algebra_isomorphism_to_group_algebra(C, builtin_group("C4")) is not None
    assert algebra_isomorphism_to_group_algebra(C, builtin_group("C2xC2")) is None


def test_trivial_cocycle_gives_klein_four():
    H, Q = kC(2), kC(2)
    C = crossed_product(trivial_action(Q, H), trivial_cocycle(Q, H))
    assert algebra_isomorphism_to_group_algebra(C, builtin_group("C2xC2")) is not None
    assert algebra_isomorphism_to_group_algebra(C, builtin_group("C4")) is None


def test_zero_cocycle_is_not_invertible():
    H, Q = kC(2), kC(2)
    with pytest.raises(CocycleNotInvertible):
        Cocycle(Q, H, lambda p: LinComb.zero())


def test_cocycle_inverse_is_solved():
    H, Q, sigma = _cocycle_c2(B("a"))
    assert sigma.delta(("a", "a")) == B("a")
    assert sigma.inverse_violations() == []


def test_basis_group_reads_group_likes():
    G = basis_group(kC(4))
    assert G is not None and find_isomorphism(G, builtin_group("C4")) is not None


# -- Lie family ----------------------------------------------------------------


def test_lie_wreath_line_over_line_commutator():
    A = Q = abelian(1)
    W = wreath_hopf("lie", A, Q, 2)
    wr = W.extra["wreath"]
    q = primitive_of(W, wr.quotient_generator(0))
    f = primitive_of(W, wr.delta((0,), 0))
    comm = W.smash.mul(q, f) - W.smash.mul(f, q)
    # (q * delta_x)(u) = delta_x(u x) is delta_1
    assert comm == primitive_of(W, wr.delta((), 0))


def test_lie_wreath_primitive_dimension():
    A, Q, N = builtin_lie("affine-2dim"), abelian(1), 3
    W = wreath_hopf("lie", A, Q, N)
    assert len(primitives(W.smash)) == A.dim * len(monomials(Q.dim, N)) + Q.dim


@pytest.mark.parametrize("A, Q", list(itertools.product(["abelian-1", "abelian-2", "affine-2dim"], repeat=2)))
def test_primitive_commutators_follow_the_wreath_bracket(A, Q):
    rep = primitive_bracket_check(builtin_lie(A), builtin_lie(Q), 4)
    assert rep.ok and rep.counts["commutator"] > 0


def test_wreath_element_round_trip():
    W = wreath_hopf("lie", builtin_lie("affine-2dim"), abelian(1), 3, validate=False)
    for _, X in W.extra["wreath"].basis():
        assert wreath_element_of(W, primitive_of(W, X)).agrees_with(X)
    with pytest.raises(ValueError):
        wreath_element_of(W, W.smash.unit)


# -- cleft extensions ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["C4/C2", "C2xC2/C2", "D4/Z", "split:C3,C2"])
def test_group_cleavage(name):
    assert cleavage_check(group_cleft_data(builtin_group_extension(name))).ok


@pytest.mark.parametrize("name", BUILTIN_LIE_EXTENSIONS)
def test_lie_cleavage(name):
    assert cleavage_check(lie_cleft_data(builtin_lie_extension(name), 4)).ok


def test_zero_cleavage_fails_and_is_rejected():
    data = group_cleft_data(builtin_group_extension("C4/C2"))
    zero = LinMap(data.Q.basis, lambda q: LinComb.zero())
    bad = dataclasses.replace(data, gamma=zero, kappa=None)
    rep = cleavage_check(bad)
    assert rep.violations["coalgebra"] and rep.violations["inverse"]
    with pytest.raises(NotCleft):
        alpha_embed(bad)


def test_alpha_for_c4_is_a_hopf_embedding():
    al = alpha_embed(group_cleft_data(builtin_group_extension("C4/C2")))
    assert al.report.ok
    assert al.report.counts["product"] == 16
    assert {"injective", "projection", "kernel_evaluation"} <= set(al.report.families())


def test_alpha_for_trivial_quotient_is_identity_on_kernel():
    A, one = builtin_group("C3"), cyclic_group(1)
    ext = GroupExtension(A, A, one, {a: a for a in A}, {a: "1" for a in A}, {"1": "1"}).validate()
    al = alpha_embed(group_cleft_data(ext))
    for a in A:
        assert al.wreath.evaluation_at_unit(al(a)) == B(a)


def test_inconsistent_total_algebra_is_a_homomorphism_failure():
    data = group_cleft_data(builtin_group_extension("C4/C2"))
    labels = ["1", "a", "a2", "a3"]
    klein = {"1": (0, 0), "a": (1, 0), "a2": (0, 1), "a3": (1, 1)}
    back = {v: k for k, v in klein.items()}
    fake = FiniteGroup.from_op(labels, lambda x, y: back[tuple((p + q) % 2 for p, q in zip(klein[x], klein[y]))])
    bad = dataclasses.replace(data, E=group_algebra(fake), kappa=None)
    with pytest.raises(HomomorphismFailure):
        alpha_embed(bad)


def test_alpha_for_heisenberg_is_a_windowed_hopf_embedding():
    al = alpha_embed(lie_cleft_data(builtin_lie_extension("heisenberg/center"), 4), window=2)
    assert al.report.ok and al.report.counts["product"] > 0


@pytest.mark.parametrize("name", ["C4/C2", "C2xC2/C2", "D4/Z"])
def test_group_round_trip(name):
    ext = builtin_group_extension(name)
    al = alpha_embed(group_cleft_data(ext))
    rec = recover_cleft_extension(al.wreath, [al.images[e] for e in ext.total])
    assert cleavage_check(rec).ok
    assert len(group_likes(rec.E)) == len(ext.total)
    assert find_extension_isomorphism(ext, rec.source) is not None


def test_recovered_c4_group_likes_form_c4():
    ext = builtin_group_extension("C4/C2")
    al = alpha_embed(group_cleft_data(ext))
    rec = recover_cleft_extension(al.wreath, [al.images[e] for e in ext.total])
    G = basis_group(rec.E)
    assert G is not None and find_isomorphism(G, builtin_group("C4")) is not None


def test_full_group_wreath_has_too_big_a_kernel():
    W = wreath_hopf("group", builtin_group("C2"), builtin_group("C2"))
    with pytest.raises(KernelMismatch):
        recover_cleft_extension(W, [B(s) for s in W.smash.basis])


@pytest.mark.parametrize("name", BUILTIN_LIE_EXTENSIONS)
def test_lie_round_trip(name):
    ext = builtin_lie_extension(name)
    al = alpha_embed(lie_cleft_data(ext, 4))
    rec = recover_cleft_extension(al.wreath, [al.images[(e,)] for e in range(ext.total.dim)])
    assert rec.source.total.structure_constants() == ext.total.structure_constants()
    assert cleavage_check(rec).ok


def test_full_lie_wreath_has_too_big_a_kernel():
    W = wreath_hopf("lie", abelian(1), abelian(1), 3, validate=False)
    # delta functions on top-degree monomials vanish on the comparison window
    basis = [X for k, X in W.extra["wreath"].basis() if k[0] == "q" or len(k[1]) < W.N]
    gens = [primitive_of(W, X) for X in basis]
    with pytest.raises(KernelMismatch):
        recover_cleft_extension(W, gens)
