"""Relative Rota-Baxter operators T: H -> B with an action of B on H.

Also the two functors between cocommutative Hopf braces and operators, the
monoidal structure on operators and the hom-set bijection between them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .brace import (
    HopfBraceData,
    brace_morphism_checks,
    check_brace_morphism,
    gamma,
)
from .dsl import Environment
from .errors import FieldError, PreconditionError
from .hopf import (
    HopfAlgebraData,
    ModuleData,
    adjoint_action_map,
    add_hopf,
    check_hopf,
    check_module_structure,
    hopf_morphism_checks,
    is_cocommutative,
    tensor_hopf,
    trivial_hopf,
)
from .linalg import Matrix, Morphism, identity, swap_matrix
from .report import Report


@dataclass(frozen=True, eq=False)
class RelRotaBaxterData:
    """Operator ``T: H -> B`` together with the action ``phi: B (x) H -> H``."""

    H: HopfAlgebraData
    B: HopfAlgebraData
    T: Morphism
    phi: Morphism

    def __post_init__(self):
        if self.H.field != self.B.field:
            raise FieldError("operator data must live over one field")
        object.__setattr__(self, "T", Morphism(self.H.carrier, self.B.carrier, self.T.mat))
        object.__setattr__(self, "phi", Morphism(self.B.carrier * self.H.carrier, self.H.carrier, self.phi.mat))

    @property
    def field(self):
        return self.H.field

    @property
    def star(self) -> bool:
        return is_cocommutative(self.H)

    @property
    def coc(self) -> bool:
        return is_cocommutative(self.H) and is_cocommutative(self.B)

    def action(self) -> ModuleData:
        return ModuleData(self.H.carrier, self.phi, "module-algebra-coalgebra", self.H)

    def replace(self, **kw) -> RelRotaBaxterData:
        data = dict(H=self.H, B=self.B, T=self.T, phi=self.phi)
        data.update(kw)
        return RelRotaBaxterData(**data)

    def same_structure(self, other: RelRotaBaxterData) -> bool:
        return (self.H.same_structure(other.H) and self.B.same_structure(other.B)
                and self.T.mat == other.T.mat and self.phi.mat == other.phi.mat)


def add_rrb(env: Environment, r: RelRotaBaxterData, h: str = "H", b: str = "B",
            t: str = "T", phi: str = "phi") -> Environment:
    add_hopf(env, r.H, h)
    add_hopf(env, r.B, b)
    env.add(t, r.T, [h], [b])
    env.add(phi, r.phi, [b, h], [h])
    return env


def rrb_env(r: RelRotaBaxterData) -> Environment:
    return add_rrb(Environment(r.field), r)


RRB_LHS = "mu_B o (T x T)"
RRB_RHS = "T o mu_H o (id[H] x (phi o (T x id[H]))) o (delta_H x id[H])"


def check_rrb(r: RelRotaBaxterData, title: str = "relative Rota-Baxter operator") -> Report:
    rep = Report(title, field=r.field)
    rep.child(check_hopf(r.H, "H"))
    rep.child(check_hopf(r.B, "B"))
    tc = rep.child(Report("T coalgebra morphism", field=r.field))
    tc.extend(hopf_morphism_checks(r.T, r.H, r.B, "T", parts=("coalgebra",)))
    rep.child(check_module_structure(r.action(), r.B))
    env = rrb_env(r)
    rep.add(env.check("rRBcond", RRB_LHS, RRB_RHS))
    rep.add(env.check("etaT", "T o eta_H", "eta_B"))
    rep.flags["star"] = r.star
    rep.flags["coc"] = r.coc
    return rep


def goncharov_rrb(h: HopfAlgebraData) -> RelRotaBaxterData:
    """``T = lam`` with the adjoint action of H on itself."""
    return RelRotaBaxterData(h, h, h.lam, adjoint_action_map(h))


def unit_rrb(field) -> RelRotaBaxterData:
    k = trivial_hopf(field)
    one = Morphism(k.carrier, k.carrier, Matrix.identity(field, 1))
    return RelRotaBaxterData(k, k, one, Morphism(k.carrier * k.carrier, k.carrier, one.mat))


# -------------------------------------------------------------------- functors


def functor_F(hb: HopfBraceData) -> RelRotaBaxterData:
    """``(id: H1 -> H2, Gamma)``."""
    if not is_cocommutative(hb.first):
        raise PreconditionError("F is only defined on cocommutative Hopf braces")
    return RelRotaBaxterData(hb.first, hb.second, identity(hb.carrier, hb.field), gamma(hb))


MU_BAR = "mu_H o (id[H] x (phi o (T x id[H]))) o (delta_H x id[H])"
LAM_BAR = "phi o ((lam_B o T) x lam_H) o delta_H"


def functor_G(r: RelRotaBaxterData) -> HopfBraceData:
    """The brace on H whose second product is ``mu_H (H x phi(T x H)) (delta x H)``."""
    if not r.star:
        raise PreconditionError("G needs H cocommutative")
    env = rrb_env(r)
    second = r.H.replace(mu=env.eval(MU_BAR), lam=env.eval(LAM_BAR))
    return HopfBraceData(r.H, second)


def gamma_bar(r: RelRotaBaxterData) -> Morphism:
    out = rrb_env(r).eval("phi o (T x id[H])")
    return Morphism(r.H.carrier * r.H.carrier, r.H.carrier, out.mat)


def check_G_consequences(r: RelRotaBaxterData) -> Report:
    """Identities established along the way for ``G(r)``."""
    hb = functor_G(r)
    env = rrb_env(r)
    env.add("mubar", hb.mu2, ["H", "H"], ["H"])
    env.add("lambar", hb.lam2, ["H"], ["H"])
    env.add("Gamma", gamma(hb), ["H", "H"], ["H"])
    rep = Report("G consequences", field=r.field)
    rep.add(env.check("overlGammaH", "Gamma", "phi o (T x id[H])"))
    rep.add(env.check("mubar-comult", "delta_H o mubar",
                      "(mubar x mubar) o (id[H] x swap[H,H] x id[H]) o (delta_H x delta_H)"))
    rep.add(env.check("lambar-involutive", "lambar o lambar", "id[H]"))
    return rep


# ------------------------------------------------------------------ morphisms


@dataclass(frozen=True, eq=False)
class RrbMorphism:
    """``(f: H -> A, h: B -> D)`` between operators ``T: H -> B`` and ``L: A -> D``."""

    f: Morphism
    h: Morphism


def rrb_morphism_checks(m: RrbMorphism, src: RelRotaBaxterData, dst: RelRotaBaxterData,
                        label: str = "") -> list:
    env = Environment(src.field)
    add_rrb(env, src, "H", "B", "T", "phi_H")
    add_rrb(env, dst, "A", "D", "L", "phi_A")
    env.add("f", m.f, ["H"], ["A"])
    env.add("h", m.h, ["B"], ["D"])
    return (hopf_morphism_checks(m.f, src.H, dst.H, f"{label}f")
            + hopf_morphism_checks(m.h, src.B, dst.B, f"{label}h")
            + [env.check(f"{label}cond1morrRB", "L o f", "h o T"),
               env.check(f"{label}cond2morrRB", "f o phi_H", "phi_A o (h x f)")])


def check_rrb_morphism(m: RrbMorphism, src: RelRotaBaxterData, dst: RelRotaBaxterData) -> Report:
    rep = Report("morphism of relative Rota-Baxter operators", field=src.field)
    rep.extend(rrb_morphism_checks(m, src, dst))
    return rep


def identity_rrb_morphism(r: RelRotaBaxterData) -> RrbMorphism:
    return RrbMorphism(identity(r.H.carrier, r.field), identity(r.B.carrier, r.field))


def compose_rrb_morphisms(second: RrbMorphism, first: RrbMorphism) -> RrbMorphism:
    return RrbMorphism(Morphism(first.f.dom, second.f.cod, second.f.mat @ first.f.mat),
                       Morphism(first.h.dom, second.h.cod, second.h.mat @ first.h.mat))


def tensor_rrb(r1: RelRotaBaxterData, r2: RelRotaBaxterData) -> RelRotaBaxterData:
    """``(T x L, (phi_H x phi_A) o (B x c_{D,H} x A))`` on the tensor Hopf algebras."""
    if r1.field != r2.field:
        raise FieldError("cannot tensor operators over different fields")
    env = Environment(r1.field)
    add_rrb(env, r1, "H", "B", "T", "phi_H")
    add_rrb(env, r2, "A", "D", "L", "phi_A")
    H = tensor_hopf(r1.H, r2.H, f"{r1.H.name}{r2.H.name}")
    B = tensor_hopf(r1.B, r2.B, f"{r1.B.name}{r2.B.name}")
    T = env.eval("T x L")
    phi = env.eval("(phi_H x phi_A) o (id[B] x swap[D,H] x id[A])")
    return RelRotaBaxterData(H, B, T, phi)


def symmetry_rrb(r1: RelRotaBaxterData, r2: RelRotaBaxterData) -> RrbMorphism:
    """``(c_{H,A}, c_{B,D})``: r1 x r2 -> r2 x r1."""
    f = swap_matrix(r1.H.carrier, r2.H.carrier, r1.field)
    h = swap_matrix(r1.B.carrier, r2.B.carrier, r1.field)
    return RrbMorphism(f, h)


# ------------------------------------------------------------------ bijection


def theta(y: Morphism, hb: HopfBraceData, r: RelRotaBaxterData) -> RrbMorphism:
    """A brace morphism ``y: hb -> G(r)`` becomes the operator morphism ``(y, L o y): F(hb) -> r``."""
    target = functor_G(r)
    rep = check_brace_morphism(y, hb, target, "y")
    if not rep.passed:
        raise PreconditionError("input is not a morphism of Hopf braces into G(r)", rep)
    m = RrbMorphism(Morphism(hb.carrier, r.H.carrier, y.mat),
                    Morphism(hb.carrier, r.B.carrier, r.T.mat @ y.mat))
    return m


def theta_inverse(m: RrbMorphism, hb: HopfBraceData, r: RelRotaBaxterData) -> Morphism:
    """An operator morphism ``(f, h): F(hb) -> r`` gives back the brace morphism ``f``."""
    rep = check_rrb_morphism(m, functor_F(hb), r)
    if not rep.passed:
        raise PreconditionError("input is not a morphism F(hb) -> r", rep)
    return Morphism(hb.carrier, r.H.carrier, m.f.mat)


def adjunction_counit(r: RelRotaBaxterData) -> RrbMorphism:
    """``Theta(id)``: F(G(r)) -> r, which is ``(id_H, T)``."""
    hb = functor_G(r)
    return theta(identity(r.H.carrier, r.field), hb, r)


__all__ = [
    "RelRotaBaxterData", "RrbMorphism", "add_rrb", "rrb_env", "check_rrb", "goncharov_rrb",
    "unit_rrb", "functor_F", "functor_G", "gamma_bar", "check_G_consequences",
    "rrb_morphism_checks", "check_rrb_morphism", "identity_rrb_morphism", "compose_rrb_morphisms",
    "tensor_rrb", "symmetry_rrb", "theta", "theta_inverse", "adjunction_counit",
    "brace_morphism_checks",
]
