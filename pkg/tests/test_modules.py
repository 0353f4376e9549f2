from __future__ import annotations

import pytest

from hopflab.errors import PreconditionError
from hopflab.fixtures import (
    C2_INTO_S3,
    broken_triv_module,
    goncharov,
    linearize_map,
    opp_brace,
    reg_module_fixture,
    triv_brace,
    triv_module_fixture,
)
from hopflab.linalg import QQ, FieldSpec, Matrix, Morphism, identity, obj
from hopflab.modules import (
    HbrModuleData,
    RrbModuleMorphism,
    check_hbr_module,
    check_hbr_module_morphism,
    check_rrb_module,
    check_rrb_module_morphism,
    check_U_consequences,
    functor_U,
    functor_V,
    functor_W,
    gamma_M,
    identity_module_morphism,
    lambda_backward,
    lambda_forward,
    modiso_equivalence_check,
    module_symmetry,
    reg_module,
    regular_hbr_module,
    restrict_R,
    tensor_rrb_modules,
    triv_module,
    trivial_hbr_module,
)
from hopflab.rrb import RrbMorphism, functor_F, functor_G

GF7 = FieldSpec.prime(7)


@pytest.fixture(scope="module")
def r7():
    return goncharov("S3", GF7)


def test_regular_and_trivial_modules(r7):
    assert check_rrb_module(reg_module(r7), r7).passed
    assert check_rrb_module(triv_module(r7), r7).passed
    m, r = reg_module_fixture()
    assert check_rrb_module(m, r).passed
    m, r = triv_module_fixture("D4")
    assert check_rrb_module(m, r).passed


def test_broken_gamma_fails_compatibility():
    m, r = broken_triv_module()
    rep = check_rrb_module(m, r)
    assert not rep.passed
    assert [c.name for _, c in rep.failures()] == ["compatmodT"]
    assert rep.check("compatmodT").witness is not None


def test_gamma_shape_is_validated(r7):
    m = reg_module(r7)
    with pytest.raises(PreconditionError):
        type(m)(m.M, m.N, m.phiH, m.phiB, m.phiN, Morphism(obj("Z", 5), m.N, Matrix.zeros(GF7, 6, 5)))


# ----------------------------------------------------------- brace modules


@pytest.mark.parametrize("hb", [triv_brace("S3"), opp_brace("S3")], ids=["triv", "opp"])
def test_brace_modules(hb):
    for m in (regular_hbr_module(hb), trivial_hbr_module(hb)):
        assert check_hbr_module(m, hb).passed


def test_mismatched_brace_module_fails():
    hb = opp_brace("S3")
    m = HbrModuleData(hb.carrier, hb.mu1, hb.mu1)
    rep = check_hbr_module(m, hb)
    assert not rep.passed


def test_W_output_passes(r7):
    hb = functor_G(r7)
    for m in (regular_hbr_module(hb), trivial_hbr_module(hb)):
        w = functor_W(m, hb)
        assert check_rrb_module(w, functor_F(hb)).passed


def test_U_and_V_outputs_pass(r7):
    hb = functor_G(r7)
    for m in (reg_module(r7), triv_module(r7)):
        assert check_hbr_module(functor_U(m, r7), hb).passed
        assert check_U_consequences(m, r7).passed
    for n in (regular_hbr_module(hb), trivial_hbr_module(hb)):
        assert check_rrb_module(functor_V(n, r7), r7).passed


def test_U_after_V_is_identity(r7):
    hb = functor_G(r7)
    for n in (regular_hbr_module(hb), trivial_hbr_module(hb)):
        assert functor_U(functor_V(n, r7), r7).same_structure(n)


def test_gamma_M_of_regular_module_is_brace_gamma(r7):
    hb = functor_G(r7)
    from hopflab.brace import gamma
    assert gamma_M(regular_hbr_module(hb), hb).mat == gamma(hb).mat


def test_V_after_U_is_isomorphic_to_the_original(r7):
    rep = modiso_equivalence_check(reg_module(r7), r7)
    assert rep.passed, rep.render()
    vu = functor_V(functor_U(reg_module(r7), r7), r7)
    # gamma of V(U(m)) is the identity while the original gamma is T = lam
    assert vu.gamma.mat == identity(vu.M, GF7).mat
    assert not vu.same_structure(reg_module(r7))


def test_modiso_refuses_singular_gamma(r7):
    m = reg_module(r7)
    zero = type(m)(m.M, m.N, m.phiH, m.phiB, m.phiN, Morphism(m.M, m.N, Matrix.zeros(GF7, 6, 6)))
    with pytest.raises(PreconditionError):
        modiso_equivalence_check(zero, r7)


def test_lambda_round_trips(r7):
    hb = functor_G(r7)
    target = reg_module(r7)
    n = functor_U(target, r7)
    f = identity(n.M, GF7)
    mm = lambda_forward(f, n, target, r7)
    assert check_rrb_module_morphism(mm, functor_V(n, r7), target, r7).passed
    assert lambda_backward(mm, n, target, r7).mat == f.mat
    assert check_hbr_module_morphism(f, n, n, hb).passed


def test_lambda_refuses_non_morphisms(r7):
    target = reg_module(r7)
    n = functor_U(target, r7)
    with pytest.raises(PreconditionError):
        # inversion does not commute with left multiplication
        lambda_forward(Morphism(n.M, n.M, r7.H.lam.mat), n, target, r7)


# ---------------------------------------------------------------- monoidal


def test_tensor_with_trivial_collapses(r7):
    reg, triv = reg_module(r7), triv_module(r7)
    t = tensor_rrb_modules(reg, triv, r7)
    assert t.same_structure(reg)
    assert tensor_rrb_modules(triv, reg, r7).same_structure(reg)


def test_symmetry_on_square_of_regular(r7):
    reg = reg_module(r7)
    t = tensor_rrb_modules(reg, reg, r7)
    assert check_rrb_module(t, r7).passed
    s = module_symmetry(reg, reg, GF7)
    assert check_rrb_module_morphism(s, t, t, r7).passed
    assert s.r.mat @ s.r.mat == identity(t.M, GF7).mat
    assert s.s.mat @ s.s.mat == identity(t.N, GF7).mat


def test_identity_module_morphism(r7):
    m = reg_module(r7)
    assert check_rrb_module_morphism(identity_module_morphism(m, GF7), m, m, r7).passed
    bad = RrbModuleMorphism(identity(m.M, GF7), Morphism(m.N, m.N, r7.H.lam.mat))
    assert not check_rrb_module_morphism(bad, m, m, r7).passed


def test_restriction_along_inclusion():
    src, dst = goncharov("C2"), goncharov("S3")
    f = linearize_map(C2_INTO_S3, src.H, dst.H)
    m = restrict_R(reg_module(dst), RrbMorphism(f, f), src, dst)
    assert check_rrb_module(m, src).passed
    with pytest.raises(PreconditionError):
        g = linearize_map((0, 0), src.H, dst.H)
        restrict_R(reg_module(dst), RrbMorphism(f, g), src, dst)


def test_tensor_needs_cocommutative_operator():
    assert functor_F(triv_brace("C2", QQ)).coc
