"""Skew braces, Hopf braces and set-theoretic solutions of the braid equation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .dsl import AxiomCheck, Environment
from .errors import HopfLabError, PreconditionError
from .groups import GroupTable
from .hopf import (
    HopfAlgebraData,
    ModuleData,
    add_hopf,
    check_hopf,
    check_module_structure,
    group_algebra,
    hopf_morphism_checks,
    is_cocommutative,
)
from .linalg import FieldSpec, Matrix, Morphism, ObjectSig, obj, rank
from .report import Report

# ---------------------------------------------------------------- set level


@dataclass(frozen=True)
class SkewBrace:
    """Two group laws ``star`` and ``circ`` on the same indexed carrier."""

    star: GroupTable
    circ: GroupTable

    def __post_init__(self):
        if self.star.order != self.circ.order:
            raise HopfLabError("both group laws must live on the same carrier")

    @property
    def names(self) -> tuple[str, ...]:
        return self.star.names

    @property
    def order(self) -> int:
        return self.star.order


def trivial_brace(g: GroupTable) -> SkewBrace:
    return SkewBrace(g, g)


def opposite_brace(g: GroupTable) -> SkewBrace:
    """star = group law, circ = opposite law ``a o b = b a``."""
    return SkewBrace(g, g.opposite())


def check_skew_brace(b: SkewBrace) -> Report:
    rep = Report("skew brace")
    s, c = b.star, b.circ
    rep.add(AxiomCheck("shared-identity", "", "", s.identity == c.identity,
                       None if s.identity == c.identity else
                       {"star-identity": b.names[s.identity], "circ-identity": b.names[c.identity]}))
    inv = s.inverse
    witness = None
    for g, h, t in product(range(b.order), repeat=3):
        lhs = c.mul(g, s.mul(h, t))
        rhs = s.mul(s.mul(c.mul(g, h), inv[g]), c.mul(g, t))
        if lhs != rhs:
            witness = {"g": b.names[g], "h": b.names[h], "t": b.names[t],
                       "lhs": b.names[lhs], "rhs": b.names[rhs]}
            break
    rep.add(AxiomCheck("brace-law", "g o (h * t)", "(g o h) * g^-1 * (g o t)", witness is None, witness))
    return rep


# --------------------------------------------------------------- Hopf braces


@dataclass(frozen=True, eq=False)
class HopfBraceData:
    """Two Hopf structures ``first`` (mu1, lam1) and ``second`` (mu2, lam2) on one coalgebra."""

    first: HopfAlgebraData
    second: HopfAlgebraData

    def __post_init__(self):
        if self.first.dim != self.second.dim or self.first.field != self.second.field:
            raise HopfLabError("brace structures must share carrier and field")
        if self.second.name != self.first.name:
            object.__setattr__(self, "second", self.second.renamed(self.first.name))

    @property
    def name(self) -> str:
        return self.first.name

    @property
    def dim(self) -> int:
        return self.first.dim

    @property
    def field(self) -> FieldSpec:
        return self.first.field

    @property
    def carrier(self) -> ObjectSig:
        return self.first.carrier

    @property
    def eta(self) -> Morphism:
        return self.first.eta

    @property
    def eps(self) -> Morphism:
        return self.first.eps

    @property
    def delta(self) -> Morphism:
        return self.first.delta

    @property
    def mu1(self) -> Morphism:
        return self.first.mu

    @property
    def mu2(self) -> Morphism:
        return self.second.mu

    @property
    def lam1(self) -> Morphism:
        return self.first.lam

    @property
    def lam2(self) -> Morphism:
        return self.second.lam

    def renamed(self, name: str) -> HopfBraceData:
        return HopfBraceData(self.first.renamed(name), self.second.renamed(name))

    def same_structure(self, other: HopfBraceData) -> bool:
        return self.first.same_structure(other.first) and self.second.same_structure(other.second)


def add_brace(env: Environment, hb: HopfBraceData, role: str = "H", tag: str = "") -> Environment:
    """Generators eta, eps, delta, mu1, lam1, mu2, lam2 (each followed by ``tag``)."""
    add_hopf(env, hb.first, role, tag)
    env.add(f"mu1{tag}", hb.mu1, [role, role], [role])
    env.add(f"lam1{tag}", hb.lam1, [role], [role])
    env.add(f"eta2{tag}", hb.second.eta, [], [role])
    env.add(f"eps2{tag}", hb.second.eps, [role], [])
    env.add(f"delta2{tag}", hb.second.delta, [role], [role, role])
    env.add(f"mu2{tag}", hb.mu2, [role, role], [role])
    env.add(f"lam2{tag}", hb.lam2, [role], [role])
    return env


def brace_env(hb: HopfBraceData) -> Environment:
    return add_brace(Environment(hb.field), hb)


GAMMA = "mu1 o (lam1 x mu2) o (delta x id[H])"


def gamma(hb: HopfBraceData) -> Morphism:
    """``mu1 o (lam1 x mu2) o (delta x H)``: the action of H2 on H1 carried by the brace."""
    out = brace_env(hb).eval(GAMMA)
    return Morphism(hb.carrier * hb.carrier, hb.carrier, out.mat)


def check_gamma(hb: HopfBraceData) -> Report:
    """Gamma is a coalgebra morphism and makes H1 an H2-module algebra (cocommutative case)."""
    rep = Report("gamma", field=hb.field)
    env = brace_env(hb)
    env.add("G", gamma(hb), ["H", "H"], ["H"])
    rep.add(env.check("eb2", "mu2", "mu1 o (id[H] x G) o (delta x id[H])"))
    if is_cocommutative(hb.first):
        rep.add(env.check("gamma-counit", "eps o G", "eps x eps"))
        rep.add(env.check("gamma-comult", "delta o G",
                          "(G x G) o (id[H] x swap[H,H] x id[H]) o (delta x delta)"))
        act = ModuleData(hb.carrier, gamma(hb), "module-algebra", hb.first)
        rep.child(check_module_structure(act, hb.second))
    return rep


def check_hopf_brace(hb: HopfBraceData) -> Report:
    rep = Report(f"hopf brace {hb.name}", field=hb.field)
    rep.child(check_hopf(hb.first, "first structure"))
    rep.child(check_hopf(hb.second, "second structure"))
    env = brace_env(hb)
    rep.add(env.check("shared-unit", "eta", "eta2"))
    rep.add(env.check("shared-counit", "eps", "eps2"))
    rep.add(env.check("shared-coproduct", "delta", "delta2"))
    rep.add(env.check(
        "brace-compat", "mu2 o (id[H] x mu1)",
        f"mu1 o (mu2 x ({GAMMA})) o (id[H] x swap[H,H] x id[H]) o (delta x id[H,H])"))
    rep.add(env.check("eb2", "mu2", f"mu1 o (id[H] x ({GAMMA})) o (delta x id[H])"))
    rep.flags["cocommutative"] = is_cocommutative(hb.first)
    return rep


def linearize_skew_brace(b: SkewBrace, field: FieldSpec, name: str = "H") -> HopfBraceData:
    if not check_skew_brace(b).passed:
        raise PreconditionError("not a skew brace", check_skew_brace(b))
    h1 = group_algebra(b.star, field, name)
    circ = GroupTable(b.names, b.circ.table)
    h2 = group_algebra(circ, field, name)
    return HopfBraceData(h1, h2)


def brace_morphism_checks(x: Morphism, src: HopfBraceData, dst: HopfBraceData, label: str = "x") -> list[AxiomCheck]:
    return (hopf_morphism_checks(x, src.first, dst.first, f"{label}[1]")
            + hopf_morphism_checks(x, src.second, dst.second, f"{label}[2]", parts=("algebra",)))


def check_brace_morphism(x: Morphism, src: HopfBraceData, dst: HopfBraceData, label: str = "x") -> Report:
    rep = Report(f"brace morphism {label}", field=src.field)
    rep.extend(brace_morphism_checks(x, src, dst, label))
    return rep


# ------------------------------------------------------------ braid solutions


@dataclass(frozen=True)
class YBSolutionSet:
    """``c(g, h) = (left[g][h], right[g][h])`` on the set of ``names``."""

    names: tuple[str, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.names)

    def __call__(self, g: int, h: int) -> tuple[int, int]:
        return self.left[g][h], self.right[g][h]

    def is_bijective(self) -> bool:
        n = self.order
        return len({self(g, h) for g in range(n) for h in range(n)}) == n * n

    @classmethod
    def from_map(cls, names, fn) -> YBSolutionSet:
        n = len(names)
        pairs = [[fn(g, h) for h in range(n)] for g in range(n)]
        return cls(tuple(names), tuple(tuple(p[0] for p in row) for row in pairs),
                   tuple(tuple(p[1] for p in row) for row in pairs))


def _set_braid(c: YBSolutionSet) -> Report:
    rep = Report("braid relation (set)")
    witness = None
    for x, y, z in product(range(c.order), repeat=3):
        # (c x id)(id x c)(c x id): rightmost factor acts first
        a, b = c(x, y)
        b, d = c(b, z)
        a, b = c(a, b)
        lhs = (a, b, d)
        b2, d2 = c(y, z)
        a2, b2 = c(x, b2)
        b2, d2 = c(b2, d2)
        rhs = (a2, b2, d2)
        if lhs != rhs:
            n = c.names
            witness = {"triple": (n[x], n[y], n[z]), "lhs": tuple(n[i] for i in lhs),
                       "rhs": tuple(n[i] for i in rhs)}
            break
    rep.add(AxiomCheck("braid", "(c x id) o (id x c) o (c x id)", "(id x c) o (c x id) o (id x c)",
                       witness is None, witness))
    rep.flags["invertible"] = c.is_bijective()
    return rep


def _linear_braid(c: Morphism) -> Report:
    n2 = c.mat.shape[0]
    n = int(round(n2 ** 0.5))
    if n * n != n2 or c.mat.shape != (n2, n2):
        raise HopfLabError("braid check needs an endomorphism of a square tensor H x H")
    env = Environment(c.field).add_object("H", n)
    env.add("c", c, ["H", "H"], ["H", "H"])
    rep = Report("braid relation (linear)", field=c.field)
    rep.add(env.check("braid", "(c x id[H]) o (id[H] x c) o (c x id[H])",
                      "(id[H] x c) o (c x id[H]) o (id[H] x c)"))
    rep.flags["invertible"] = rank(c.mat) == n2
    return rep


def check_braid_relation(c: YBSolutionSet | Morphism) -> Report:
    return _set_braid(c) if isinstance(c, YBSolutionSet) else _linear_braid(c)


def qybe_solution_from_skew_brace(b: SkewBrace) -> YBSolutionSet:
    """``sigma_g(h) = g^{-*} * (g o h)``, ``tau_h(g) = sigma_g(h)^{-o} o g o h``; re-verified by exhaustion."""
    if not check_skew_brace(b).passed:
        raise PreconditionError("not a skew brace", check_skew_brace(b))
    s, c = b.star, b.circ
    inv_s, inv_c = s.inverse, c.inverse

    def fn(g: int, h: int) -> tuple[int, int]:
        sigma = s.mul(inv_s[g], c.mul(g, h))
        tau = c.mul(c.mul(inv_c[sigma], g), h)
        return sigma, tau

    sol = YBSolutionSet.from_map(b.names, fn)
    rep = check_braid_relation(sol)
    if not rep.passed or not sol.is_bijective():
        raise HopfLabError("skew brace formula did not produce a bijective braid solution")
    return sol


def linearize_solution(sol: YBSolutionSet, field: FieldSpec, name: str = "H") -> Morphism:
    n = sol.order
    num = np.zeros((n * n, n * n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            a, b = sol(g, h)
            num[a * n + b, g * n + h] = 1
    x = obj(name, n)
    return Morphism(x * x, x * x, Matrix(field, num))
