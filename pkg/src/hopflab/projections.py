"""Hopf algebra projections, their coinvariants, and projections of operators and braces.

A projection ``(X, Y, f, g)`` has ``g o f = id_X``.  The idempotent
``q = id * (f o lam_X o g)`` is split as ``q = i o p`` with the column-pivot
basis of :func:`split_idempotent`, and everything living on the coinvariants
``I`` is expressed in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .brace import (
    HopfBraceData,
    add_brace,
    brace_morphism_checks,
    check_hopf_brace,
    gamma,
)
from .dsl import AxiomCheck, Environment, compare
from .errors import HopfLabError, PreconditionError
from .hopf import (
    HopfAlgebraData,
    ModuleData,
    add_hopf,
    adjoint_action_map,
    check_module_structure,
    convolve,
    hopf_morphism_checks,
    is_cocommutative,
)
from .linalg import (
    Morphism,
    ObjectSig,
    SplitIdempotent,
    identity,
    mat_inverse,
    obj,
    rank,
    split_idempotent,
)
from .modules import RrbModuleData
from .report import Report
from .rrb import (
    RelRotaBaxterData,
    RrbMorphism,
    add_rrb,
    check_rrb,
    check_rrb_morphism,
    functor_F,
    functor_G,
    rrb_morphism_checks,
)

# ------------------------------------------------------------ Hopf projections


@dataclass(frozen=True, eq=False)
class HopfProjection:
    """``f: X -> Y`` and ``g: Y -> X`` Hopf morphisms with ``g o f = id_X``."""

    X: HopfAlgebraData
    Y: HopfAlgebraData
    f: Morphism
    g: Morphism


def check_hopf_projection(p: HopfProjection) -> Report:
    rep = Report(f"hopf projection {p.X.name} -> {p.Y.name}", field=p.X.field)
    rep.extend(hopf_morphism_checks(p.f, p.X, p.Y, "f"))
    rep.extend(hopf_morphism_checks(p.g, p.Y, p.X, "g"))
    env = Environment(p.X.field).add_object("X", p.X.dim).add_object("Y", p.Y.dim)
    env.add("f", p.f, ["X"], ["Y"]).add("g", p.g, ["Y"], ["X"])
    rep.add(env.check("retraction", "g o f", "id[X]"))
    rep.flags["Y cocommutative"] = is_cocommutative(p.Y)
    return rep


def projection_idempotent(p: HopfProjection) -> Morphism:
    """``q_Y = id_Y * (f o lam_X o g)``."""
    flg = Morphism(p.Y.carrier, p.Y.carrier, p.f.mat @ p.X.lam.mat @ p.g.mat)
    return convolve(identity(p.Y.carrier, p.Y.field), flg, p.Y, p.Y)


@dataclass(frozen=True, eq=False)
class CoinvariantPackage:
    """Structures on the split image ``I`` of ``q_Y``."""

    projection: HopfProjection
    split: SplitIdempotent
    eta: Morphism
    mu: Morphism
    eps: Morphism
    delta: Morphism
    psi: Morphism
    rho: Morphism
    lam: Morphism

    @property
    def rank(self) -> int:
        return self.split.rank

    @property
    def carrier(self) -> ObjectSig:
        return self.split.image

    @property
    def p(self) -> Morphism:
        return self.split.p

    @property
    def i(self) -> Morphism:
        return self.split.i

    @property
    def q(self) -> Morphism:
        return self.split.q

    def hopf(self, name: str | None = None) -> HopfAlgebraData:
        """The algebra-coalgebra on I as a bundle (a Hopf algebra when Y is cocommutative)."""
        h = HopfAlgebraData(self.carrier.factors[0][0], self.eta, self.mu, self.eps, self.delta, self.lam)
        return h.renamed(name) if name else h

    def yd_module(self) -> YdModuleData:
        return YdModuleData(self.carrier, self.psi, self.rho)

    def env(self) -> Environment:
        pr = self.projection
        env = Environment(pr.X.field)
        add_hopf(env, pr.X, "X")
        add_hopf(env, pr.Y, "Y")
        env.add_object("I", self.rank)
        env.add("f", pr.f, ["X"], ["Y"]).add("g", pr.g, ["Y"], ["X"])
        env.add("p", self.p, ["Y"], ["I"]).add("i", self.i, ["I"], ["Y"]).add("q", self.q, ["Y"], ["Y"])
        for name, m, dom, cod in (
            ("eta_I", self.eta, [], ["I"]), ("mu_I", self.mu, ["I", "I"], ["I"]),
            ("eps_I", self.eps, ["I"], []), ("delta_I", self.delta, ["I"], ["I", "I"]),
            ("psi", self.psi, ["X", "I"], ["I"]), ("rho", self.rho, ["I"], ["X", "I"]),
            ("lam_I", self.lam, ["I"], ["I"]),
        ):
            env.add(name, m, dom, cod)
        return env


def coinvariant_package(p: HopfProjection, name: str = "I") -> CoinvariantPackage:
    rep = check_hopf_projection(p)
    if not rep.passed:
        raise PreconditionError("not a Hopf algebra projection", rep)
    split = split_idempotent(projection_idempotent(p), name)
    env = Environment(p.X.field)
    add_hopf(env, p.X, "X")
    add_hopf(env, p.Y, "Y")
    env.add_object(name, split.rank)
    env.add("f", p.f, ["X"], ["Y"]).add("g", p.g, ["Y"], ["X"])
    env.add("p", split.p, ["Y"], [name]).add("i", split.i, [name], ["Y"])
    psi = env.eval("p o mu_Y o (f x i)")
    rho = env.eval("(g x p) o delta_Y o i")
    env.add("psi", psi).add("rho", rho)
    return CoinvariantPackage(
        p, split,
        eta=env.eval("p o eta_Y"),
        mu=env.eval("p o mu_Y o (i x i)"),
        eps=env.eval("eps_Y o i"),
        delta=env.eval("(p x p) o delta_Y o i"),
        psi=psi,
        rho=rho,
        lam=env.eval("psi o (id[X] x (p o lam_Y o i)) o rho"),
    )


def check_coinvariants(pkg: CoinvariantPackage) -> Report:
    """Defining identities, (id1), and the cocommutative consequences."""
    env = pkg.env()
    env.add("adY", adjoint_action_map(pkg.projection.Y), ["Y", "Y"], ["Y"])
    env.add("rhoadY", env.eval("(mu_Y x id[Y]) o (id[Y] x swap[Y,Y]) o (delta_Y x lam_Y) o delta_Y"))
    rep = Report("coinvariants", field=env.field)
    rep.flags["rank"] = pkg.rank
    rep.add(env.check("split", "i o p", "q"))
    rep.add(env.check("split-section", "p o i", "id[I]"))
    rep.add(env.check("idempotent", "q o q", "q"))
    rep.add(env.check("unit-i", "i o eta_I", "eta_Y"))
    rep.add(env.check("m-i", "i o mu_I", "mu_Y o (i x i)"))
    rep.add(env.check("counit-p", "eps_I o p", "eps_Y"))
    rep.add(env.check("co-i", "delta_I o p", "(p x p) o delta_Y"))
    rep.add(env.check("phi2", "i o psi", "adY o (f x i)"))
    rep.add(env.check("rho-p", "rho o p", "(g x p) o rhoadY"))
    rep.add(env.check("id1-left", "p o mu_Y o (id[Y] x q)", "p o mu_Y"))
    rep.add(env.check("id1-right", "(id[Y] x q) o delta_Y o i", "delta_Y o i"))
    rep.add(env.check("antipode-I-left", "mu_I o (id[I] x lam_I) o delta_I", "eta_I o eps_I"))
    rep.add(env.check("antipode-I-right", "mu_I o (lam_I x id[I]) o delta_I", "eta_I o eps_I"))
    # (pz-al): p is an algebra map iff the action on the coinvariants is trivial
    pz = env.check("pz-al", "p o mu_Y o (q x id[Y])", "p o mu_Y")
    p_alg = env.check("p-multiplicative", "p o mu_Y", "mu_I o (p x p)")
    triv = env.check("psi-trivial", "psi", "eps_X x id[I]")
    agree = pz.passed == p_alg.passed == triv.passed
    rep.add(AxiomCheck("pz-al-dichotomy", "", "", agree,
                       None if agree else {"pz-al": pz.passed, "p-multiplicative": p_alg.passed,
                                           "psi-trivial": triv.passed}))
    rep.flags["p algebra morphism"] = p_alg.passed
    if is_cocommutative(pkg.projection.Y):
        cc = rep.child(Report("Y cocommutative", field=env.field))
        cc.add(env.check("iz-coal", "(q x id[Y]) o delta_Y o i", "delta_Y o i"))
        cc.add(env.check("i-comult", "delta_Y o i", "(i x i) o delta_I"))
        cc.add(env.check("i-counit", "eps_Y o i", "eps_I"))
        cc.add(env.check("q-comult", "delta_Y o q", "(q x q) o delta_Y"))
        cc.add(env.check("q-counit", "eps_Y o q", "eps_Y"))
        cc.add(env.check("lxy", "i o lam_I", "lam_Y o i"))
    yd = rep.child(check_yd_module(pkg.yd_module(), pkg.projection.X))
    yd.title = "(I, psi, rho) Yetter-Drinfeld"
    return rep


# ---------------------------------------------------------- Yetter-Drinfeld


@dataclass(frozen=True, eq=False)
class YdModuleData:
    carrier: ObjectSig
    action: Morphism
    coaction: Morphism


YD_LHS = ("(mu_X x id[M]) o (id[X] x swap[M,X]) o ((rho o phi) x id[X]) "
          "o (id[X] x swap[X,M]) o (delta_X x id[M])")
YD_RHS = "(mu_X x phi) o (id[X] x swap[X,X] x id[M]) o (delta_X x rho)"


def check_yd_module(m: YdModuleData, over: HopfAlgebraData) -> Report:
    rep = Report("Yetter-Drinfeld module", field=over.field)
    rep.child(check_module_structure(ModuleData(m.carrier, m.action, "module"), over))
    rep.child(check_module_structure(ModuleData(m.carrier, m.coaction, "comodule"), over))
    env = Environment(over.field)
    add_hopf(env, over, "X")
    env.add_object("M", m.carrier.dim)
    env.add("phi", m.action, ["X", "M"], ["M"]).add("rho", m.coaction, ["M"], ["X", "M"])
    rep.add(env.check("yd-compat", YD_LHS, YD_RHS))
    return rep


def yd_braiding(m: YdModuleData, n: YdModuleData, over: HopfAlgebraData) -> tuple[Morphism, Morphism]:
    """``t = (phi_N x M)(X x c_{M,N})(rho_M x N)`` and its inverse; both composites are asserted."""
    env = Environment(over.field)
    add_hopf(env, over, "X")
    env.add_object("M", m.carrier.dim).add_object("N", n.carrier.dim)
    env.add("phiN", n.action, ["X", "N"], ["N"]).add("rhoM", m.coaction, ["M"], ["X", "M"])
    env.add("laminv", mat_inverse(over.lam), ["X"], ["X"])
    t = env.eval("(phiN x id[M]) o (id[X] x swap[M,N]) o (rhoM x id[N])")
    tinv = env.eval("swap[N,M] o (phiN x id[M]) o (laminv x id[N,M]) o (swap[N,X] x id[M]) o (id[N] x rhoM)")
    env.add("t", t).add("tinv", tinv)
    for c in (env.check("t-tinv", "t o tinv", "id[N,M]"), env.check("tinv-t", "tinv o t", "id[M,N]")):
        if not c.passed:
            raise HopfLabError(f"braiding inverse formula failed: {c.describe(over.field)}")
    return t, tinv


# ---------------------------------------------------------- operator projections


@dataclass(frozen=True, eq=False)
class RrbProjection:
    """Projection from ``inner`` (T: H -> B) onto ``outer`` (L: A -> D)."""

    inner: RelRotaBaxterData
    outer: RelRotaBaxterData
    f: Morphism  # H -> A
    h: Morphism  # B -> D
    g: Morphism  # A -> H
    l: Morphism  # D -> B

    @property
    def field(self):
        return self.inner.field

    def hopf_A(self) -> HopfProjection:
        return HopfProjection(self.inner.H, self.outer.H, self.f, self.g)

    def hopf_D(self) -> HopfProjection:
        return HopfProjection(self.inner.B, self.outer.B, self.h, self.l)


def check_rrb_projection(pr: RrbProjection) -> Report:
    rep = Report("projection of relative Rota-Baxter operators", field=pr.field)
    a = rep.child(check_hopf_projection(pr.hopf_A()))
    a.title = "(H, A, f, g)"
    d = rep.child(check_hopf_projection(pr.hopf_D()))
    d.title = "(B, D, h, l)"
    fh = rep.child(check_rrb_morphism(RrbMorphism(pr.f, pr.h), pr.inner, pr.outer))
    fh.title = "(f, h)"
    gl = rep.child(check_rrb_morphism(RrbMorphism(pr.g, pr.l), pr.outer, pr.inner))
    gl.title = "(g, l)"
    return rep


def _gate_coc(pr: RrbProjection) -> None:
    if not (is_cocommutative(pr.outer.H) and is_cocommutative(pr.outer.B)):
        raise PreconditionError("coinvariant constructions need cocommutative A and D")


def induced_rrb_on_coinvariants(pr: RrbProjection) -> RelRotaBaxterData:
    """``L0 = p_D L i_A`` with action ``p_A phi_A (i_D x i_A)`` on ``I(q_A)``."""
    _gate_coc(pr)
    rep = check_rrb_projection(pr)
    if not rep.passed:
        raise PreconditionError("not a projection of operators", rep)
    return _induced(pr, coinvariant_package(pr.hopf_A(), "IA"), coinvariant_package(pr.hopf_D(), "ID"))


def _induced(pr: RrbProjection, pa: CoinvariantPackage, pd: CoinvariantPackage) -> RelRotaBaxterData:
    env = _proj_env(pr, pa, pd)
    return RelRotaBaxterData(pa.hopf("IA"), pd.hopf("ID"), env.eval("pD o L o iA"),
                             env.eval("pA o phi_A o (iD x iA)"))


def _proj_env(pr: RrbProjection, pa: CoinvariantPackage, pd: CoinvariantPackage) -> Environment:
    env = Environment(pr.field)
    add_rrb(env, pr.inner, "H", "B", "T", "phi_H")
    add_rrb(env, pr.outer, "A", "D", "L", "phi_A")
    env.add_object("IA", pa.rank).add_object("ID", pd.rank)
    env.add("f", pr.f, ["H"], ["A"]).add("h", pr.h, ["B"], ["D"])
    env.add("g", pr.g, ["A"], ["H"]).add("l", pr.l, ["D"], ["B"])
    env.add("pA", pa.p, ["A"], ["IA"]).add("iA", pa.i, ["IA"], ["A"]).add("qA", pa.q, ["A"], ["A"])
    env.add("pD", pd.p, ["D"], ["ID"]).add("iD", pd.i, ["ID"], ["D"]).add("qD", pd.q, ["D"], ["D"])
    return env


def check_induced_rrb(pr: RrbProjection) -> Report:
    """The induced operator, its factorization identities and the inclusion morphism."""
    _gate_coc(pr)
    pa, pd = coinvariant_package(pr.hopf_A(), "IA"), coinvariant_package(pr.hopf_D(), "ID")
    out = _induced(pr, pa, pd)
    env = _proj_env(pr, pa, pd)
    env.add("L0", out.T, ["IA"], ["ID"]).add("phiI", out.phi, ["ID", "IA"], ["IA"])
    rep = Report("induced operator on coinvariants", field=pr.field)
    rep.add(env.check("T0cons", "iD o L0", "L o iA"))
    rep.add(env.check("PhiIBcons", "iA o phiI", "phi_A o (iD x iA)"))
    rep.child(check_rrb(out, "induced operator"))
    inc = rep.child(check_rrb_morphism(RrbMorphism(pa.i, pd.i), out, pr.outer))
    inc.title = "(i_A, i_D) into the outer operator"
    return rep


# ---------------------------------------------------------- brace projections


@dataclass(frozen=True, eq=False)
class HbrProjection:
    inner: HopfBraceData
    outer: HopfBraceData
    x: Morphism  # inner -> outer
    y: Morphism  # outer -> inner

    @property
    def field(self):
        return self.inner.field


def check_hbr_projection(hp: HbrProjection) -> Report:
    rep = Report("projection of Hopf braces", field=hp.field)
    rep.extend(brace_morphism_checks(hp.x, hp.inner, hp.outer, "x"))
    rep.extend(brace_morphism_checks(hp.y, hp.outer, hp.inner, "y"))
    env = Environment(hp.field).add_object("H", hp.inner.dim).add_object("D", hp.outer.dim)
    env.add("xm", hp.x, ["H"], ["D"]).add("ym", hp.y, ["D"], ["H"])
    rep.add(env.check("retraction", "ym o xm", "id[H]"))
    return rep


@dataclass(frozen=True, eq=False)
class BraceCoinvariants:
    """The brace on the coinvariants together with both splittings."""

    brace: HopfBraceData
    q1: Morphism
    q2: Morphism
    i: Morphism
    p1: Morphism
    p2: Morphism


def _brace_coinvariants(hp: HbrProjection, name: str = "ID") -> BraceCoinvariants:
    if not (is_cocommutative(hp.inner.first) and is_cocommutative(hp.outer.first)):
        raise PreconditionError("brace coinvariants need cocommutative braces")
    rep = check_hbr_projection(hp)
    if not rep.passed:
        raise PreconditionError("not a projection of Hopf braces", rep)
    q1 = projection_idempotent(HopfProjection(hp.inner.first, hp.outer.first, hp.x, hp.y))
    q2 = projection_idempotent(HopfProjection(hp.inner.second, hp.outer.second, hp.x, hp.y))
    s1 = split_idempotent(q1, name)
    # q1 and q2 need not agree as matrices; what the construction needs is a common image
    if rank(q2.mat) != s1.rank or (q2.mat @ s1.i.mat) != s1.i.mat:
        raise HopfLabError("the two coinvariant idempotents have different images")
    i, p1 = s1.i, s1.p
    p2 = Morphism(p1.dom, p1.cod, p1.mat @ q2.mat)
    env = Environment(hp.field)
    add_brace(env, hp.outer, "D")
    env.add_object(name, s1.rank)
    env.add("i", i, [name], ["D"]).add("p1", p1, ["D"], [name]).add("p2", p2, ["D"], [name])
    first = HopfAlgebraData(
        name, env.eval("p1 o eta"), env.eval("p1 o mu1 o (i x i)"), env.eval("eps o i"),
        env.eval("(p1 x p1) o delta o i"), env.eval("p1 o lam1 o i"))
    second = first.replace(mu=env.eval("p2 o mu2 o (i x i)"), lam=env.eval("p2 o lam2 o i"))
    return BraceCoinvariants(HopfBraceData(first, second), q1, q2, i, p1, p2)


def brace_coinvariants(hp: HbrProjection) -> HopfBraceData:
    """The Hopf brace induced on the coinvariants of a cocommutative brace projection."""
    return _brace_coinvariants(hp).brace


def check_brace_coinvariants(hp: HbrProjection) -> Report:
    bc = _brace_coinvariants(hp)
    name = bc.brace.name
    env = Environment(hp.field)
    add_brace(env, hp.outer, "D")
    env.add_object(name, bc.brace.dim)
    env.add("i", bc.i, [name], ["D"]).add("p1", bc.p1, ["D"], [name]).add("p2", bc.p2, ["D"], [name])
    env.add("q1", bc.q1, ["D"], ["D"]).add("q2", bc.q2, ["D"], ["D"])
    rep = Report("brace coinvariants", field=hp.field)
    rep.flags["q1 == q2"] = bc.q1.mat == bc.q2.mat
    rep.add(env.check("q2-fixes-image", "q2 o i", "i"))
    rep.add(env.check("split-2", "i o p2", "q2"))
    rep.add(env.check("etaIB", "p1 o eta", "p2 o eta"))
    rep.add(env.check("mu1IB", "p1 o mu1 o (i x i)", "p2 o mu1 o (i x i)"))
    rep.add(env.check("mu2IB", "p2 o mu2 o (i x i)", "p1 o mu2 o (i x i)"))
    rep.add(env.check("deltaIB", "(p1 x p1) o delta o i", "(p2 x p2) o delta o i"))
    rep.child(check_hopf_brace(bc.brace))
    return rep


# ------------------------------------------------------------------- functors


@dataclass(frozen=True, eq=False)
class RrbProjectionMorphism:
    """``(x: H -> H', y: A -> A', z: B -> B', t: D -> D')``."""

    x: Morphism
    y: Morphism
    z: Morphism
    t: Morphism


def check_rrb_projection_morphism(m: RrbProjectionMorphism, src: RrbProjection, dst: RrbProjection) -> Report:
    rep = Report("morphism of operator projections", field=src.field)
    env = Environment(src.field)
    for tag, pr in (("", src), ("2", dst)):
        for role, h in (("H", pr.inner.H), ("B", pr.inner.B), ("A", pr.outer.H), ("D", pr.outer.B)):
            env.add_object(role + tag, h.dim)
        env.add("f" + tag, pr.f, ["H" + tag], ["A" + tag]).add("g" + tag, pr.g, ["A" + tag], ["H" + tag])
        env.add("h" + tag, pr.h, ["B" + tag], ["D" + tag]).add("l" + tag, pr.l, ["D" + tag], ["B" + tag])
    env.add("xm", m.x, ["H"], ["H2"]).add("ym", m.y, ["A"], ["A2"])
    env.add("z", m.z, ["B"], ["B2"]).add("t", m.t, ["D"], ["D2"])
    rep.extend(hopf_morphism_checks(m.x, src.inner.H, dst.inner.H, "x"))
    rep.extend(hopf_morphism_checks(m.y, src.outer.H, dst.outer.H, "y"))
    rep.extend(hopf_morphism_checks(m.z, src.inner.B, dst.inner.B, "z"))
    rep.extend(hopf_morphism_checks(m.t, src.outer.B, dst.outer.B, "t"))
    rep.add(env.check("proj-morph-f", "ym o f", "f2 o xm"))
    rep.add(env.check("proj-morph-g", "xm o g", "g2 o ym"))
    rep.add(env.check("proj-morph-h", "t o h", "h2 o z"))
    rep.add(env.check("proj-morph-l", "z o l", "l2 o t"))
    rep.extend(rrb_morphism_checks(RrbMorphism(m.x, m.z), src.inner, dst.inner, "(x,z):"))
    rep.extend(rrb_morphism_checks(RrbMorphism(m.y, m.t), src.outer, dst.outer, "(y,t):"))
    return rep


def proj_functor_P(pr: RrbProjection, morphism: RrbProjectionMorphism | None = None,
                   target: RrbProjection | None = None):
    """Object part: the induced operator.  Morphism part: ``(p_A' y i_A, p_D' t i_D)``."""
    if morphism is None:
        return induced_rrb_on_coinvariants(pr)
    if target is None:
        raise PreconditionError("the morphism part needs the target projection")
    rep = check_rrb_projection_morphism(morphism, pr, target)
    if not rep.passed:
        raise PreconditionError("not a morphism of operator projections", rep)
    _gate_coc(pr)
    _gate_coc(target)
    pa, pd = coinvariant_package(pr.hopf_A()), coinvariant_package(pr.hopf_D())
    ta, td = coinvariant_package(target.hopf_A()), coinvariant_package(target.hopf_D())
    y0 = Morphism(pa.carrier, ta.carrier, ta.p.mat @ morphism.y.mat @ pa.i.mat)
    t0 = Morphism(pd.carrier, td.carrier, td.p.mat @ morphism.t.mat @ pd.i.mat)
    for label, got, want in (("xBcons", ta.i.mat @ y0.mat, morphism.y.mat @ pa.i.mat),
                             ("zCcons", td.i.mat @ t0.mat, morphism.t.mat @ pd.i.mat)):
        if got != want:
            raise HopfLabError(f"{label}: factorization through the coinvariants failed")
    return RrbMorphism(y0, t0)


def proj_functor_Q(hp: HbrProjection) -> RrbProjection:
    """``(F(inner), F(outer), x, x, y, y)``."""
    return RrbProjection(functor_F(hp.inner), functor_F(hp.outer), hp.x, hp.x, hp.y, hp.y)


def proj_functor_R(pr: RrbProjection) -> HbrProjection:
    """``(G(inner), G(outer), f, g)``."""
    return HbrProjection(functor_G(pr.inner), functor_G(pr.outer), pr.f, pr.g)


def same_hbr_projection(a: HbrProjection, b: HbrProjection) -> bool:
    return (a.inner.same_structure(b.inner) and a.outer.same_structure(b.outer)
            and a.x.mat == b.x.mat and a.y.mat == b.y.mat)


@dataclass(frozen=True, eq=False)
class HbrProjectionMorphism:
    """``(z: H -> H', t: D -> D')`` between brace projections."""

    z: Morphism
    t: Morphism


def check_hbr_projection_morphism(m: HbrProjectionMorphism, src: HbrProjection, dst: HbrProjection) -> Report:
    rep = Report("morphism of brace projections", field=src.field)
    rep.extend(brace_morphism_checks(m.z, src.inner, dst.inner, "z"))
    rep.extend(brace_morphism_checks(m.t, src.outer, dst.outer, "t"))
    env = Environment(src.field)
    env.add_object("H", src.inner.dim).add_object("D", src.outer.dim)
    env.add_object("H2", dst.inner.dim).add_object("D2", dst.outer.dim)
    env.add("xm", src.x, ["H"], ["D"]).add("ym", src.y, ["D"], ["H"])
    env.add("xm2", dst.x, ["H2"], ["D2"]).add("ym2", dst.y, ["D2"], ["H2"])
    env.add("z", m.z, ["H"], ["H2"]).add("t", m.t, ["D"], ["D2"])
    rep.add(env.check("eqpHBr-x", "xm2 o z", "t o xm"))
    rep.add(env.check("eqpHBr-y", "ym2 o t", "z o ym"))
    return rep


def sigma_forward(m: RrbProjectionMorphism, hp: HbrProjection, pr: RrbProjection) -> HbrProjectionMorphism:
    """``(a, b, c, d): Q(hp) -> pr`` goes to ``(a, b): hp -> R(pr)``."""
    rep = check_rrb_projection_morphism(m, proj_functor_Q(hp), pr)
    if not rep.passed:
        raise PreconditionError("not a morphism Q(hp) -> pr", rep)
    return HbrProjectionMorphism(Morphism(hp.inner.carrier, pr.inner.H.carrier, m.x.mat),
                                 Morphism(hp.outer.carrier, pr.outer.H.carrier, m.y.mat))


def sigma_backward(m: HbrProjectionMorphism, hp: HbrProjection, pr: RrbProjection) -> RrbProjectionMorphism:
    """``(z, t): hp -> R(pr)`` goes to ``(z, t, T z, L t): Q(hp) -> pr``."""
    rep = check_hbr_projection_morphism(m, hp, proj_functor_R(pr))
    if not rep.passed:
        raise PreconditionError("not a morphism hp -> R(pr)", rep)
    return RrbProjectionMorphism(
        m.z, m.t,
        Morphism(m.z.dom, pr.inner.B.carrier, pr.inner.T.mat @ m.z.mat),
        Morphism(m.t.dom, pr.outer.B.carrier, pr.outer.T.mat @ m.t.mat))


# ---------------------------------------------------------- commuting squares


def _transport_codomain(r: RelRotaBaxterData, beta: Morphism) -> RelRotaBaxterData:
    """Rewrite the B side of an operator along an isomorphism ``beta: B -> B'``."""
    binv = mat_inverse(beta).mat
    b = beta.mat
    B = r.B
    newB = B.replace(
        eta=Morphism(B.eta.dom, B.eta.cod, b @ B.eta.mat),
        mu=Morphism(B.mu.dom, B.mu.cod, b @ B.mu.mat @ binv.kron(binv)),
        eps=Morphism(B.eps.dom, B.eps.cod, B.eps.mat @ binv),
        delta=Morphism(B.delta.dom, B.delta.cod, b.kron(b) @ B.delta.mat @ binv),
        lam=Morphism(B.lam.dom, B.lam.cod, b @ B.lam.mat @ binv))
    ident_h = identity(r.H.carrier, r.field).mat
    return RelRotaBaxterData(r.H, newB, Morphism(r.T.dom, r.T.cod, b @ r.T.mat),
                             Morphism(r.phi.dom, r.phi.cod, r.phi.mat @ binv.kron(ident_h)))


def _compare_braces(rep: Report, label: str, a: HopfBraceData, b: HopfBraceData) -> None:
    for part in ("eta", "mu1", "mu2", "eps", "delta", "lam1", "lam2"):
        rep.add(compare(f"{label}:{part}", getattr(a, part), getattr(b, part)))


def _compare_rrb(rep: Report, label: str, a: RelRotaBaxterData, b: RelRotaBaxterData) -> None:
    for side in ("H", "B"):
        for part in ("eta", "mu", "eps", "delta", "lam"):
            rep.add(compare(f"{label}:{side}.{part}", getattr(getattr(a, side), part),
                            getattr(getattr(b, side), part)))
    rep.add(compare(f"{label}:T", a.T, b.T))
    rep.add(compare(f"{label}:phi", a.phi, b.phi))


def check_square_GP(pr: RrbProjection) -> Report:
    """``G(P(pr))`` against the brace coinvariants of ``R(pr)``."""
    rep = Report("G o P = P' o R", field=pr.field)
    left = functor_G(induced_rrb_on_coinvariants(pr))
    right = brace_coinvariants(proj_functor_R(pr))
    _compare_braces(rep, "GP vs P'R", left.renamed("I"), right.renamed("I"))
    pa = coinvariant_package(pr.hopf_A(), "IA")
    abar = functor_G(pr.outer)
    env = Environment(pr.field)
    add_brace(env, abar, "A")
    env.add_object("IA", pa.rank)
    env.add("iA", pa.i, ["IA"], ["A"])
    env.add("mu2I", right.mu2, ["IA", "IA"], ["IA"])
    rep.add(env.check("overB2mu", "iA o mu2I", "mu2 o (iA x iA)"))
    return rep


def check_square_FP(hp: HbrProjection) -> Report:
    """``F(P'(hp))`` against ``P(Q(hp))``, moving the latter to the first splitting's basis."""
    rep = Report("F o P' = P o Q'", field=hp.field)
    bc = _brace_coinvariants(hp)
    left = functor_F(bc.brace)
    q = proj_functor_Q(hp)
    right = induced_rrb_on_coinvariants(q)
    pd = coinvariant_package(q.hopf_D(), "ID")
    beta = Morphism(right.B.carrier, left.B.carrier, bc.p1.mat @ pd.i.mat)
    rep.flags["same basis"] = beta.mat == identity(beta.dom, hp.field).mat
    moved = _transport_codomain(right, beta)
    _compare_rrb(rep, "FP' vs PQ", left, moved)
    env = Environment(hp.field)
    add_brace(env, hp.outer, "D")
    env.add_object("I", bc.brace.dim)
    env.add("i", bc.i, ["I"], ["D"])
    env.add("phiI", moved.phi, ["I", "I"], ["I"])
    env.add("Gamma", gamma(hp.outer), ["D", "D"], ["D"])
    rep.add(env.check("PhiIBb0", "i o phiI", "Gamma o (i x i)"))
    return rep


def check_commuting_squares(pr: RrbProjection | HbrProjection) -> Report:
    """Both squares; an operator projection is sent through R for the second one."""
    rep = Report("commuting squares", field=pr.field)
    if isinstance(pr, RrbProjection):
        rep.child(check_square_GP(pr))
        rep.child(check_square_FP(proj_functor_R(pr)))
    else:
        rep.child(check_square_FP(pr))
        rep.child(check_square_GP(proj_functor_Q(pr)))
    return rep


# ------------------------------------------------------------ strong projections


def check_strong_projection(pr: RrbProjection) -> Report:
    rep_pr = check_rrb_projection(pr)
    if not rep_pr.passed:
        raise PreconditionError("not a projection of operators", rep_pr)
    if not pr.outer.star:
        raise PreconditionError("strong projections need A cocommutative")
    pa = coinvariant_package(pr.hopf_A(), "IA")
    abar = functor_G(pr.outer)
    env = Environment(pr.field)
    add_rrb(env, pr.outer, "A", "D", "L", "phi_A")
    env.add_object("H", pr.inner.H.dim).add_object("IA", pa.rank)
    env.add("f", pr.f, ["H"], ["A"])
    env.add("pA", pa.p, ["A"], ["IA"]).add("iA", pa.i, ["IA"], ["A"]).add("qA", pa.q, ["A"], ["A"])
    env.add("mubar", abar.mu2, ["A", "A"], ["A"]).add("lambar", abar.lam2, ["A"], ["A"])
    rep = Report("strong projection", field=pr.field)
    rep.add(env.check("condstrongmod", "pA o phi_A", "pA o phi_A o (id[D] x qA)"))
    rep.add(env.check(
        "strongPrRB",
        "mubar o (mubar x lambar) o (id[A] x swap[A,A]) o (delta_A x id[A]) o (f x iA)",
        "mu_A o (mubar x lam_A) o (id[A] x swap[A,A]) o ((delta_A o f) x iA)"))
    return rep


def induced_module_from_strong(pr: RrbProjection) -> RrbModuleData:
    """``(I(q_A), I(q_D), p_A mu_A (f x i_A), p_A phi_A (h x i_A), p_D mu_D (h x i_D), L0)`` over the inner operator."""
    _gate_coc(pr)
    if not (is_cocommutative(pr.inner.H) and is_cocommutative(pr.inner.B)):
        raise PreconditionError("the induced module needs cocommutative inner data")
    rep = check_strong_projection(pr)
    if not rep.passed:
        failing = ", ".join(n for n, _ in rep.failures())
        raise PreconditionError(f"projection is not strong: {failing} fails", rep)
    pa, pd = coinvariant_package(pr.hopf_A(), "IA"), coinvariant_package(pr.hopf_D(), "ID")
    env = _proj_env(pr, pa, pd)
    return RrbModuleData(
        pa.carrier, pd.carrier,
        env.eval("pA o mu_A o (f x iA)"),
        env.eval("pA o phi_A o (h x iA)"),
        env.eval("pD o mu_D o (h x iD)"),
        env.eval("pD o L o iA"),
    )
