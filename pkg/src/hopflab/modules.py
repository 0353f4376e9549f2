"""Modules over relative Rota-Baxter operators and over Hopf braces, and the functors between them."""

from __future__ import annotations

from dataclasses import dataclass

from .brace import HopfBraceData, add_brace, gamma
from .dsl import Environment, compare
from .errors import PreconditionError
from .hopf import ModuleData, check_module_structure, is_cocommutative
from .linalg import Matrix, Morphism, ObjectSig, identity, mat_inverse, obj, swap_matrix
from .report import Report
from .rrb import (
    RelRotaBaxterData,
    RrbMorphism,
    add_rrb,
    check_rrb_morphism,
    functor_F,
    functor_G,
)


def _label(sig: ObjectSig) -> str:
    return "".join(n for n, _ in sig.factors) or "K"


# ------------------------------------------------------- operator modules


@dataclass(frozen=True, eq=False)
class RrbModuleData:
    """``(M, N, phiH: H x M -> M, phiB: B x M -> M, phiN: B x N -> N, gamma: M -> N)``."""

    M: ObjectSig
    N: ObjectSig
    phiH: Morphism
    phiB: Morphism
    phiN: Morphism
    gamma: Morphism

    def __post_init__(self):
        m, n = self.M.dim, self.N.dim
        if self.gamma.mat.shape != (n, m):
            raise PreconditionError(f"gamma must be {n}x{m}, got {self.gamma.mat.shape}")
        for label, f, d in (("phiH", self.phiH, m), ("phiB", self.phiB, m), ("phiN", self.phiN, n)):
            rows, cols = f.mat.shape
            if rows != d or cols % d:
                raise PreconditionError(f"{label} has shape {f.mat.shape}, incompatible with a {d}-dimensional carrier")

    def maps(self) -> dict[str, Morphism]:
        return {"phiH": self.phiH, "phiB": self.phiB, "phiN": self.phiN, "gamma": self.gamma}

    def same_structure(self, other: RrbModuleData) -> bool:
        return (self.M.dim == other.M.dim and self.N.dim == other.N.dim
                and all(self.maps()[k].mat == other.maps()[k].mat for k in self.maps()))


def add_rrb_module(env: Environment, m: RrbModuleData, M: str = "M", N: str = "N", tag: str = "") -> Environment:
    env.add_object(M, m.M.dim)
    env.add_object(N, m.N.dim)
    env.add(f"vphi{tag}", m.phiH, ["H", M], [M])
    env.add(f"phiM{tag}", m.phiB, ["B", M], [M])
    env.add(f"phiN{tag}", m.phiN, ["B", N], [N])
    env.add(f"gamma{tag}", m.gamma, [M], [N])
    return env


def rrb_module_env(m: RrbModuleData, r: RelRotaBaxterData) -> Environment:
    env = add_rrb(Environment(r.field), r)
    return add_rrb_module(env, m)


COMPAT_HB = ("phiM o (id[B] x vphi)",
             "vphi o (phi x phiM) o (id[B] x swap[B,H] x id[M]) o (delta_B x id[H,M])")
COMPAT_T = ("phiN o (T x gamma)",
            "gamma o vphi o (id[H] x (phiM o (T x id[M]))) o (delta_H x id[M])")


def check_rrb_module(m: RrbModuleData, over: RelRotaBaxterData) -> Report:
    rep = Report("module over a relative Rota-Baxter operator", field=over.field)
    rep.child(check_module_structure(ModuleData(m.M, m.phiH), over.H))
    rep.child(check_module_structure(ModuleData(m.M, m.phiB), over.B))
    rep.child(check_module_structure(ModuleData(m.N, m.phiN), over.B))
    env = rrb_module_env(m, over)
    rep.add(env.check("compatmodHmodB", *COMPAT_HB))
    rep.add(env.check("compatmodT", *COMPAT_T))
    return rep


def reg_module(r: RelRotaBaxterData) -> RrbModuleData:
    """``(H, B, mu_H, phi_H, mu_B, T)``."""
    return RrbModuleData(r.H.carrier, r.B.carrier, r.H.mu, r.phi, r.B.mu, r.T)


def triv_module(r: RelRotaBaxterData) -> RrbModuleData:
    """``(K, K, eps_H, eps_B, eps_B, id_K)``."""
    k = obj("K", 1)
    one = Morphism(k, k, Matrix.identity(r.field, 1))
    return RrbModuleData(k, k, Morphism(r.H.carrier * k, k, r.H.eps.mat),
                         Morphism(r.B.carrier * k, k, r.B.eps.mat),
                         Morphism(r.B.carrier * k, k, r.B.eps.mat), one)


@dataclass(frozen=True, eq=False)
class RrbModuleMorphism:
    """``(r: M -> P, s: N -> Q)``."""

    r: Morphism
    s: Morphism


def rrb_module_morphism_checks(mm: RrbModuleMorphism, src: RrbModuleData, dst: RrbModuleData,
                               over: RelRotaBaxterData) -> list:
    env = add_rrb(Environment(over.field), over)
    add_rrb_module(env, src, "M", "N", "")
    add_rrb_module(env, dst, "P", "Q", "2")
    env.add("r", mm.r, ["M"], ["P"])
    env.add("s", mm.s, ["N"], ["Q"])
    return [
        env.check("r-H-linear", "r o vphi", "vphi2 o (id[H] x r)"),
        env.check("r-B-linear", "r o phiM", "phiM2 o (id[B] x r)"),
        env.check("s-B-linear", "s o phiN", "phiN2 o (id[B] x s)"),
        env.check("s-gamma", "s o gamma", "gamma2 o r"),
    ]


def check_rrb_module_morphism(mm: RrbModuleMorphism, src: RrbModuleData, dst: RrbModuleData,
                              over: RelRotaBaxterData) -> Report:
    rep = Report("morphism of operator modules", field=over.field)
    rep.extend(rrb_module_morphism_checks(mm, src, dst, over))
    return rep


def identity_module_morphism(m: RrbModuleData, field) -> RrbModuleMorphism:
    return RrbModuleMorphism(identity(m.M, field), identity(m.N, field))


# ---------------------------------------------------------- brace modules


@dataclass(frozen=True, eq=False)
class HbrModuleData:
    """``(M, psi1, psi2)``: actions of the first and second Hopf structures."""

    M: ObjectSig
    psi1: Morphism
    psi2: Morphism

    def same_structure(self, other: HbrModuleData) -> bool:
        return (self.M.dim == other.M.dim and self.psi1.mat == other.psi1.mat
                and self.psi2.mat == other.psi2.mat)


GAMMA_M = "psi1 o (lam1 x psi2) o (delta x id[M])"


def hbr_module_env(m: HbrModuleData, hb: HopfBraceData) -> Environment:
    env = add_brace(Environment(hb.field), hb)
    env.add_object("M", m.M.dim)
    env.add("psi1", m.psi1, ["H", "M"], ["M"])
    env.add("psi2", m.psi2, ["H", "M"], ["M"])
    return env


def gamma_M(m: HbrModuleData, hb: HopfBraceData) -> Morphism:
    out = hbr_module_env(m, hb).eval(GAMMA_M)
    return Morphism(hb.carrier * m.M, m.M, out.mat)


def check_hbr_module(m: HbrModuleData, over: HopfBraceData) -> Report:
    rep = Report("module over a Hopf brace", field=over.field)
    rep.child(check_module_structure(ModuleData(m.M, m.psi1), over.first))
    rep.child(check_module_structure(ModuleData(m.M, m.psi2), over.second))
    env = hbr_module_env(m, over)
    env.add("GM", gamma_M(m, over), ["H", "M"], ["M"])
    env.add("Gamma", gamma(over), ["H", "H"], ["H"])
    rep.add(env.check("compatmodbrace", "psi2 o (id[H] x psi1)",
                      "psi1 o (mu2 x GM) o (id[H] x swap[H,H] x id[M]) o (delta x id[H,M])"))
    derived = rep.child(Report("consequences", field=over.field))
    derived.add(env.check("psi2expression", "psi2", "psi1 o (id[H] x GM) o (delta x id[M])"))
    derived.add(env.check("GammaMPsiM1", "GM o (id[H] x psi1)",
                          "psi1 o (Gamma x GM) o (id[H] x swap[H,H] x id[M]) o (delta x id[H,M])"))
    sub = derived.child(check_module_structure(ModuleData(m.M, gamma_M(m, over)), over.second))
    sub.title = "Gamma_M is an H2-action"
    return rep


def hbr_module_morphism_checks(f: Morphism, src: HbrModuleData, dst: HbrModuleData,
                               over: HopfBraceData) -> list:
    env = hbr_module_env(src, over)
    env.add_object("P", dst.M.dim)
    env.add("chi1", dst.psi1, ["H", "P"], ["P"])
    env.add("chi2", dst.psi2, ["H", "P"], ["P"])
    env.add("f", f, ["M"], ["P"])
    return [env.check("f-linear-1", "f o psi1", "chi1 o (id[H] x f)"),
            env.check("f-linear-2", "f o psi2", "chi2 o (id[H] x f)")]


def check_hbr_module_morphism(f: Morphism, src: HbrModuleData, dst: HbrModuleData,
                              over: HopfBraceData) -> Report:
    rep = Report("morphism of brace modules", field=over.field)
    rep.extend(hbr_module_morphism_checks(f, src, dst, over))
    return rep


def regular_hbr_module(hb: HopfBraceData) -> HbrModuleData:
    return HbrModuleData(hb.carrier, hb.mu1, hb.mu2)


def trivial_hbr_module(hb: HopfBraceData) -> HbrModuleData:
    k = obj("K", 1)
    e = Morphism(hb.carrier * k, k, hb.eps.mat)
    return HbrModuleData(k, e, e)


# ------------------------------------------------------------------ functors


def functor_W(m: HbrModuleData, hb: HopfBraceData) -> RrbModuleData:
    """``(M, M, psi1, Gamma_M, psi2, id)`` over ``F(hb)``."""
    if not is_cocommutative(hb.first):
        raise PreconditionError("W needs a cocommutative Hopf brace")
    rep = check_hbr_module(m, hb)
    if not rep.passed:
        raise PreconditionError("input is not a module over the Hopf brace", rep)
    return RrbModuleData(m.M, m.M, m.psi1, gamma_M(m, hb), m.psi2, identity(m.M, hb.field))


PHI_BAR = "vphi o (id[H] x (phiM o (T x id[M]))) o (delta_H x id[M])"


def functor_U(m: RrbModuleData, r: RelRotaBaxterData) -> HbrModuleData:
    """``(M, phiH, phiH (H x phiB (T x M)) (delta x M))`` over ``G(r)``."""
    if not r.star:
        raise PreconditionError("U needs H cocommutative")
    out = rrb_module_env(m, r).eval(PHI_BAR)
    return HbrModuleData(m.M, m.phiH, Morphism(r.H.carrier * m.M, m.M, out.mat))


def check_U_consequences(m: RrbModuleData, r: RelRotaBaxterData) -> Report:
    """``Gamma_M`` of ``U(m)`` equals ``phiB o (T x M)``."""
    u = functor_U(m, r)
    env = rrb_module_env(m, r)
    env.add("GbarM", gamma_M(u, functor_G(r)), ["H", "M"], ["M"])
    rep = Report("U consequences", field=r.field)
    rep.add(env.check("Gammabarra", "GbarM", "phiM o (T x id[M])"))
    return rep


def functor_V(m: HbrModuleData, r: RelRotaBaxterData) -> RrbModuleData:
    """``(M, M, psi1, Gamma_M (T^-1 x M), psi2 (T^-1 x M), id)`` over r; needs T invertible."""
    if not r.star:
        raise PreconditionError("V needs H cocommutative")
    tinv = mat_inverse(r.T)
    hb = functor_G(r)
    env = hbr_module_env(m, hb)
    env.add_object("B", r.B.dim)
    env.add("Tinv", tinv, ["B"], ["H"])
    env.add("GM", gamma_M(m, hb), ["H", "M"], ["M"])
    phiB = env.eval("GM o (Tinv x id[M])")
    phiN = env.eval("psi2 o (Tinv x id[M])")
    return RrbModuleData(m.M, m.M, m.psi1, phiB, phiN, identity(m.M, r.field))


def restrict_R(m: RrbModuleData, along: RrbMorphism, src: RelRotaBaxterData,
               dst: RelRotaBaxterData) -> RrbModuleData:
    """Pull a module over ``dst`` back along ``(f, h): src -> dst``."""
    rep = check_rrb_morphism(along, src, dst)
    if not rep.passed:
        raise PreconditionError("restriction needs a morphism of operators", rep)
    env = Environment(src.field)
    env.add_object("H", src.H.dim).add_object("B", src.B.dim)
    env.add_object("A", dst.H.dim).add_object("D", dst.B.dim)
    env.add_object("M", m.M.dim).add_object("N", m.N.dim)
    env.add("f", along.f, ["H"], ["A"])
    env.add("h", along.h, ["B"], ["D"])
    env.add("vphi", m.phiH, ["A", "M"], ["M"])
    env.add("phiM", m.phiB, ["D", "M"], ["M"])
    env.add("phiN", m.phiN, ["D", "N"], ["N"])
    return RrbModuleData(m.M, m.N, env.eval("vphi o (f x id[M])"), env.eval("phiM o (h x id[M])"),
                         env.eval("phiN o (h x id[N])"), m.gamma)


# ----------------------------------------------------------------- bijection


def lambda_forward(f: Morphism, m: HbrModuleData, target: RrbModuleData,
                   r: RelRotaBaxterData) -> RrbModuleMorphism:
    """A brace-module map ``f: m -> U(target)`` becomes ``(f, theta o f): V(m) -> target``."""
    rep = check_hbr_module_morphism(f, m, functor_U(target, r), functor_G(r))
    if not rep.passed:
        raise PreconditionError("input is not a morphism of brace modules into U(target)", rep)
    s = Morphism(f.dom, target.N, target.gamma.mat @ f.mat)
    return RrbModuleMorphism(f, s)


def lambda_backward(mm: RrbModuleMorphism, m: HbrModuleData, target: RrbModuleData,
                    r: RelRotaBaxterData) -> Morphism:
    """An operator-module map ``(r, s): V(m) -> target`` gives back ``r``."""
    rep = check_rrb_module_morphism(mm, functor_V(m, r), target, r)
    if not rep.passed:
        raise PreconditionError("input is not a morphism out of V(m)", rep)
    return mm.r


# ------------------------------------------------------------------ monoidal


def tensor_rrb_modules(m1: RrbModuleData, m2: RrbModuleData, over: RelRotaBaxterData) -> RrbModuleData:
    """Diagonal actions through the coproducts, with ``gamma x theta``."""
    if not over.coc:
        raise PreconditionError("the tensor product of modules needs a cocommutative operator")
    env = add_rrb(Environment(over.field), over)
    add_rrb_module(env, m1, "M", "N", "")
    add_rrb_module(env, m2, "P", "Q", "2")
    phiH = env.eval("(vphi x vphi2) o (id[H] x swap[H,M] x id[P]) o (delta_H x id[M,P])")
    phiB = env.eval("(phiM x phiM2) o (id[B] x swap[B,M] x id[P]) o (delta_B x id[M,P])")
    phiN = env.eval("(phiN x phiN2) o (id[B] x swap[B,N] x id[Q]) o (delta_B x id[N,Q])")
    gam = env.eval("gamma x gamma2")
    MP = obj(_label(m1.M) + _label(m2.M), m1.M.dim * m2.M.dim)
    NQ = obj(_label(m1.N) + _label(m2.N), m1.N.dim * m2.N.dim)
    return RrbModuleData(MP, NQ,
                         Morphism(over.H.carrier * MP, MP, phiH.mat),
                         Morphism(over.B.carrier * MP, MP, phiB.mat),
                         Morphism(over.B.carrier * NQ, NQ, phiN.mat),
                         Morphism(MP, NQ, gam.mat))


def module_symmetry(m1: RrbModuleData, m2: RrbModuleData, field) -> RrbModuleMorphism:
    """``(c_{M,P}, c_{N,Q})``: m1 x m2 -> m2 x m1."""
    return RrbModuleMorphism(swap_matrix(m1.M, m2.M, field), swap_matrix(m1.N, m2.N, field))


# ------------------------------------------------------------------- Mod^iso


def modiso_equivalence_check(m: RrbModuleData, over: RelRotaBaxterData) -> Report:
    """``(id_M, gamma^-1): m -> V(U(m))`` is an isomorphism, and ``U(V(U(m))) = U(m)``."""
    if not over.star:
        raise PreconditionError("the equivalence needs H cocommutative")
    try:
        ginv = mat_inverse(m.gamma)
    except Exception as exc:
        raise PreconditionError(f"module is not in Mod^iso: {exc}") from exc
    mat_inverse(over.T)
    rep = Report("Mod^iso equivalence", field=over.field)
    rep.child(check_rrb_module(m, over))
    u = functor_U(m, over)
    vu = functor_V(u, over)
    rep.child(check_rrb_module(vu, over))
    fwd = RrbModuleMorphism(identity(m.M, over.field), Morphism(m.N, m.M, ginv.mat))
    back = RrbModuleMorphism(identity(m.M, over.field), Morphism(m.M, m.N, m.gamma.mat))
    f = rep.child(check_rrb_module_morphism(fwd, m, vu, over))
    f.title = "(id, gamma^-1): m -> V(U(m))"
    b = rep.child(check_rrb_module_morphism(back, vu, m, over))
    b.title = "(id, gamma): V(U(m)) -> m"
    env = Environment(over.field).add_object("N", m.N.dim).add_object("M", m.M.dim)
    env.add("g", m.gamma, ["M"], ["N"]).add("ginv", ginv, ["N"], ["M"])
    rep.add(env.check("inverse-left", "ginv o g", "id[M]"))
    rep.add(env.check("inverse-right", "g o ginv", "id[N]"))
    uvu = functor_U(vu, over)
    rep.add(compare("UV-identity-psi1", uvu.psi1, u.psi1))
    rep.add(compare("UV-identity-psi2", uvu.psi2, u.psi2))
    return rep


__all__ = [
    "RrbModuleData", "RrbModuleMorphism", "HbrModuleData", "check_rrb_module", "reg_module",
    "triv_module", "check_rrb_module_morphism", "identity_module_morphism", "gamma_M",
    "check_hbr_module", "check_hbr_module_morphism", "regular_hbr_module", "trivial_hbr_module",
    "functor_W", "functor_U", "functor_V", "check_U_consequences", "restrict_R",
    "lambda_forward", "lambda_backward", "tensor_rrb_modules", "module_symmetry",
    "modiso_equivalence_check", "functor_F",
]
