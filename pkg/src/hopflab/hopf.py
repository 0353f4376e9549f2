"""Hopf algebra bundles, group algebras, convolution and (co)module structures.

Every axiom is stated once as a DSL equality and checked by exact
evaluation.  Bundles always sit on a single named carrier object; tensor
products are flattened so that later constructions never need to know how a
carrier was built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .dsl import AxiomCheck, Environment
from .errors import FieldError, HopfLabError
from .groups import GroupTable
from .linalg import K, FieldSpec, Matrix, Morphism, ObjectSig, obj
from .report import Report

MAPS = ("eta", "mu", "eps", "delta", "lam")


def _retype(f: Morphism, dom: ObjectSig, cod: ObjectSig) -> Morphism:
    if f.mat.shape != (cod.dim, dom.dim):
        raise HopfLabError(f"matrix of shape {f.mat.shape} cannot be typed {cod} <- {dom}")
    return Morphism(dom, cod, f.mat)


@dataclass(frozen=True, eq=False)
class HopfAlgebraData:
    """(eta, mu, eps, delta, lam) on one carrier object named ``name``."""

    name: str
    eta: Morphism
    mu: Morphism
    eps: Morphism
    delta: Morphism
    lam: Morphism
    basis: tuple[str, ...] | None = None

    def __post_init__(self):
        d = self.eta.mat.shape[0]
        x = obj(self.name, d)
        object.__setattr__(self, "eta", _retype(self.eta, K, x))
        object.__setattr__(self, "mu", _retype(self.mu, x * x, x))
        object.__setattr__(self, "eps", _retype(self.eps, x, K))
        object.__setattr__(self, "delta", _retype(self.delta, x, x * x))
        object.__setattr__(self, "lam", _retype(self.lam, x, x))
        fields = {m.field for m in self.maps().values()}
        if len(fields) != 1:
            raise FieldError("structure maps live over different fields")
        if self.basis is not None and len(self.basis) != d:
            raise HopfLabError("basis labels do not match the dimension")

    @property
    def dim(self) -> int:
        return self.eta.mat.shape[0]

    @property
    def field(self) -> FieldSpec:
        return self.mu.field

    @property
    def carrier(self) -> ObjectSig:
        return obj(self.name, self.dim)

    def maps(self) -> dict[str, Morphism]:
        return {m: getattr(self, m) for m in MAPS}

    def renamed(self, name: str) -> HopfAlgebraData:
        return HopfAlgebraData(name, self.eta, self.mu, self.eps, self.delta, self.lam, self.basis)

    def replace(self, **maps) -> HopfAlgebraData:
        kw = self.maps()
        kw.update(maps)
        return HopfAlgebraData(self.name, basis=self.basis, **kw)

    def same_structure(self, other: HopfAlgebraData) -> bool:
        return self.dim == other.dim and all(
            self.maps()[m].mat == other.maps()[m].mat for m in MAPS
        )


def add_hopf(env: Environment, h: HopfAlgebraData, role: str, tag: str | None = None,
             only: Sequence[str] = MAPS) -> Environment:
    """Register ``h`` under object ``role`` with generators ``eta{tag}``, ``mu{tag}``, ..."""
    tag = f"_{role}" if tag is None else tag
    env.add_object(role, h.dim)
    sigs = {
        "eta": ([], [role]),
        "mu": ([role, role], [role]),
        "eps": ([role], []),
        "delta": ([role], [role, role]),
        "lam": ([role], [role]),
    }
    for m in only:
        dom, cod = sigs[m]
        env.add(f"{m}{tag}", getattr(h, m), dom, cod)
    return env


def hopf_env(h: HopfAlgebraData, role: str = "H") -> Environment:
    return add_hopf(Environment(h.field), h, role, "")


# ------------------------------------------------------------------ builders


def _perm_matrix(field: FieldSpec, rows: int, cols: int, targets: Sequence[int]) -> Matrix:
    num = np.zeros((rows, cols), dtype=np.int64)
    num[list(targets), list(range(cols))] = 1
    return Matrix(field, num)


def group_algebra(g: GroupTable, field: FieldSpec, name: str = "H") -> HopfAlgebraData:
    """kG: group-likes g with delta(g) = g x g and antipode g -> g^-1."""
    n = g.order
    x = obj(name, n)
    mu = _perm_matrix(field, n, n * n, [g.mul(a, b) for a in range(n) for b in range(n)])
    eta = _perm_matrix(field, n, 1, [g.identity])
    eps = Matrix(field, np.ones((1, n), dtype=np.int64))
    delta = _perm_matrix(field, n * n, n, [a * n + a for a in range(n)])
    lam = _perm_matrix(field, n, n, list(g.inverse))
    return HopfAlgebraData(
        name,
        Morphism(K, x, eta), Morphism(x * x, x, mu), Morphism(x, K, eps),
        Morphism(x, x * x, delta), Morphism(x, x, lam),
        basis=g.names,
    )


def trivial_hopf(field: FieldSpec, name: str = "K") -> HopfAlgebraData:
    """The one-dimensional Hopf algebra: every structure map is the identity of the field."""
    one = Matrix.identity(field, 1)
    x = obj(name, 1)
    return HopfAlgebraData(
        name, Morphism(K, x, one), Morphism(x * x, x, one), Morphism(x, K, one),
        Morphism(x, x * x, one), Morphism(x, x, one), basis=("1",),
    )


def tensor_hopf(h1: HopfAlgebraData, h2: HopfAlgebraData, name: str | None = None) -> HopfAlgebraData:
    """H1 x H2 with interleaved product and coproduct, flattened to one carrier."""
    if h1.field != h2.field:
        raise FieldError(f"cannot tensor Hopf algebras over {h1.field} and {h2.field}")
    env = Environment(h1.field)
    add_hopf(env, h1, "A")
    add_hopf(env, h2, "B")
    maps = {
        "eta": env.eval("eta_A x eta_B"),
        "mu": env.eval("(mu_A x mu_B) o (id[A] x swap[B,A] x id[B])"),
        "eps": env.eval("eps_A x eps_B"),
        "delta": env.eval("(id[A] x swap[A,B] x id[B]) o (delta_A x delta_B)"),
        "lam": env.eval("lam_A x lam_B"),
    }
    basis = None
    if h1.basis and h2.basis:
        basis = tuple(f"{a}(x){b}" for a in h1.basis for b in h2.basis)
    return HopfAlgebraData(name or f"{h1.name}{h2.name}", basis=basis, **maps)


def convolve(f1: Morphism, f2: Morphism, coalg: HopfAlgebraData, alg: HopfAlgebraData) -> Morphism:
    """Convolution product ``mu_A o (f1 x f2) o delta_D``."""
    env = Environment(coalg.field)
    add_hopf(env, coalg, "D", only=("delta",))
    add_hopf(env, alg, "A", only=("mu",))
    env.add("f1", f1, ["D"], ["A"])
    env.add("f2", f2, ["D"], ["A"])
    out = env.eval("mu_A o (f1 x f2) o delta_D")
    return Morphism(coalg.carrier, alg.carrier, out.mat)


def unit_counit(h: HopfAlgebraData, target: HopfAlgebraData | None = None) -> Morphism:
    """``eta o eps``, the unit of convolution."""
    target = target or h
    return Morphism(h.carrier, target.carrier, target.eta.mat @ h.eps.mat)


# -------------------------------------------------------------------- checks


def _flag(env: Environment, lhs: str, rhs: str) -> bool:
    return env.check("flag", lhs, rhs).passed


def is_commutative(h: HopfAlgebraData) -> bool:
    return _flag(hopf_env(h), "mu o swap[H,H]", "mu")


def is_cocommutative(h: HopfAlgebraData) -> bool:
    return _flag(hopf_env(h), "swap[H,H] o delta", "delta")


HOPF_AXIOMS = (
    ("unit-left", "mu o (eta x id[H])", "id[H]"),
    ("unit-right", "mu o (id[H] x eta)", "id[H]"),
    ("assoc", "mu o (mu x id[H])", "mu o (id[H] x mu)"),
    ("counit-left", "(eps x id[H]) o delta", "id[H]"),
    ("counit-right", "(id[H] x eps) o delta", "id[H]"),
    ("coassoc", "(delta x id[H]) o delta", "(id[H] x delta) o delta"),
    ("eps-mult", "eps o mu", "eps x eps"),
    ("delta-mult", "delta o mu", "(mu x mu) o (id[H] x swap[H,H] x id[H]) o (delta x delta)"),
    ("eps-unit", "eps o eta", "id[]"),
    ("delta-unit", "delta o eta", "eta x eta"),
    ("antipode-left", "mu o (id[H] x lam) o delta", "eta o eps"),
    ("antipode-right", "mu o (lam x id[H]) o delta", "eta o eps"),
)

ANTIPODE_CONSEQUENCES = (
    ("a-antip1", "lam o mu", "mu o (lam x lam) o swap[H,H]"),
    ("a-antip2", "delta o lam", "swap[H,H] o (lam x lam) o delta"),
    ("u-antip1", "lam o eta", "eta"),
    ("u-antip2", "eps o lam", "eps"),
)


def check_hopf(h: HopfAlgebraData, title: str | None = None) -> Report:
    """Bialgebra and antipode axioms, the antipode consequences, and the (co)commutativity flags."""
    env = hopf_env(h)
    rep = Report(title or f"hopf {h.name}", field=h.field)
    for name, lhs, rhs in HOPF_AXIOMS:
        rep.add(env.check(name, lhs, rhs))
    derived = rep.child(Report("antipode consequences", field=h.field))
    for name, lhs, rhs in ANTIPODE_CONSEQUENCES:
        derived.add(env.check(name, lhs, rhs))
    cocomm = _flag(env, "swap[H,H] o delta", "delta")
    if cocomm:
        derived.add(env.check("involutive-antipode", "lam o lam", "id[H]"))
    rep.flags["commutative"] = _flag(env, "mu o swap[H,H]", "mu")
    rep.flags["cocommutative"] = cocomm
    return rep


def hopf_morphism_checks(f: Morphism, src: HopfAlgebraData, dst: HopfAlgebraData, label: str = "f",
                         parts: Sequence[str] = ("algebra", "coalgebra")) -> list[AxiomCheck]:
    """Checks that ``f: src -> dst`` preserves the chosen parts of the structure."""
    env = Environment(src.field)
    add_hopf(env, src, "X")
    add_hopf(env, dst, "Y")
    env.add("f", f, ["X"], ["Y"])
    out = []
    if "algebra" in parts:
        out.append(env.check(f"{label}:unit", "f o eta_X", "eta_Y"))
        out.append(env.check(f"{label}:mult", "f o mu_X", "mu_Y o (f x f)"))
    if "coalgebra" in parts:
        out.append(env.check(f"{label}:counit", "eps_Y o f", "eps_X"))
        out.append(env.check(f"{label}:comult", "delta_Y o f", "(f x f) o delta_X"))
    return out


def check_hopf_morphism(f: Morphism, src: HopfAlgebraData, dst: HopfAlgebraData, label: str = "f") -> Report:
    rep = Report(f"hopf morphism {label}: {src.name} -> {dst.name}", field=src.field)
    rep.extend(hopf_morphism_checks(f, src, dst, label))
    return rep


# ------------------------------------------------------------------- modules

FLAVORS = {
    # flavor: (is a comodule, needs algebra part, needs coalgebra part)
    "module": (False, False, False),
    "module-algebra": (False, True, False),
    "module-coalgebra": (False, False, True),
    "module-algebra-coalgebra": (False, True, True),
    "comodule": (True, False, False),
    "comodule-algebra": (True, True, False),
    "comodule-coalgebra": (True, False, True),
}


@dataclass(frozen=True, eq=False)
class ModuleData:
    """An action ``X (x) M -> M`` or a coaction ``M -> X (x) M`` with a flavor tag.

    ``structure`` holds the (co)algebra maps of the carrier when the flavor
    needs them; its dimension must match the carrier.
    """

    carrier: ObjectSig
    map: Morphism
    flavor: str = "module"
    structure: HopfAlgebraData | None = None

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise HopfLabError(f"unknown module flavor {self.flavor!r}")
        _, alg, coalg = FLAVORS[self.flavor]
        if (alg or coalg) and self.structure is None:
            raise HopfLabError(f"flavor {self.flavor} needs the carrier's (co)algebra structure")
        if self.structure is not None and self.structure.dim != self.carrier.dim:
            raise HopfLabError("carrier structure has the wrong dimension")

    @property
    def is_comodule(self) -> bool:
        return FLAVORS[self.flavor][0]

    def with_flavor(self, flavor: str) -> ModuleData:
        return ModuleData(self.carrier, self.map, flavor, self.structure)


def module_env(m: ModuleData, over: HopfAlgebraData) -> Environment:
    env = Environment(over.field)
    add_hopf(env, over, "X")
    env.add_object("M", m.carrier.dim)
    if m.is_comodule:
        env.add("rho", m.map, ["M"], ["X", "M"])
    else:
        env.add("phi", m.map, ["X", "M"], ["M"])
    if m.structure is not None:
        add_hopf(env, m.structure, "M")
    return env


def module_axioms(prefix: str = "") -> list[tuple[str, str, str]]:
    return [
        (f"{prefix}act-unit", "phi o (eta_X x id[M])", "id[M]"),
        (f"{prefix}act-assoc", "phi o (mu_X x id[M])", "phi o (id[X] x phi)"),
    ]


def check_module_structure(m: ModuleData, over: HopfAlgebraData) -> Report:
    """Run exactly the axiom set selected by the flavor tag."""
    comod, alg, coalg = FLAVORS[m.flavor]
    env = module_env(m, over)
    rep = Report(f"{m.flavor} {m.carrier} over {over.name}", field=over.field)
    if not comod:
        for name, lhs, rhs in module_axioms():
            rep.add(env.check(name, lhs, rhs))
        if alg:
            rep.add(env.check("mod-alg1", "phi o (id[X] x eta_M)", "eps_X x eta_M"))
            rep.add(env.check(
                "mod-alg2", "phi o (id[X] x mu_M)",
                "mu_M o (phi x phi) o (id[X] x swap[X,M] x id[M]) o (delta_X x id[M,M])"))
        if coalg:
            c1 = rep.add(env.check("mod-coalg1", "eps_M o phi", "eps_X x eps_M"))
            c2 = rep.add(env.check(
                "mod-coalg2", "delta_M o phi",
                "(phi x phi) o (id[X] x swap[X,M] x id[M]) o (delta_X x id[M,M]) o (id[X] x delta_M)"))
            # the same condition read as "phi is a morphism of coalgebras X (x) M -> M"
            form = rep.child(Report("phi as coalgebra morphism", field=over.field))
            d1 = form.add(env.check("coalg-morph-counit", "eps_M o phi", "eps_X x eps_M"))
            d2 = form.add(env.check(
                "coalg-morph-comult", "delta_M o phi",
                "(phi x phi) o (id[X] x swap[X,M] x id[M]) o (delta_X x delta_M)"))
            agree = (c1.passed and c2.passed) == (d1.passed and d2.passed)
            rep.flags["coalgebra-forms-agree"] = agree
            rep.add(AxiomCheck("coalgebra-forms-agree", "", "", agree))
    else:
        rep.add(env.check("coact-counit", "(eps_X x id[M]) o rho", "id[M]"))
        rep.add(env.check("coact-coassoc", "(delta_X x id[M]) o rho", "(id[X] x rho) o rho"))
        if alg:
            rep.add(env.check("comod-alg1", "rho o eta_M", "eta_X x eta_M"))
            rep.add(env.check(
                "comod-alg2", "rho o mu_M",
                "(mu_X x mu_M) o (id[X] x swap[M,X] x id[M]) o (rho x rho)"))
        if coalg:
            rep.add(env.check("comod-coalg1", "(id[X] x eps_M) o rho", "eta_X x eps_M"))
            rep.add(env.check(
                "comod-coalg2", "(id[X] x delta_M) o rho",
                "(mu_X x id[M,M]) o (id[X] x swap[M,X] x id[M]) o (rho x rho) o delta_M"))
    return rep


ADJOINT_ACTION = "mu o (mu x lam) o (id[H] x swap[H,H]) o (delta x id[H])"
ADJOINT_COACTION = "(mu x id[H]) o (id[H] x swap[H,H]) o (delta x lam) o delta"


def adjoint_action_map(h: HopfAlgebraData) -> Morphism:
    out = hopf_env(h).eval(ADJOINT_ACTION)
    return Morphism(h.carrier * h.carrier, h.carrier, out.mat)


def adjoint_action(h: HopfAlgebraData) -> ModuleData:
    """Conjugation-type action h (x) x -> h1 x S(h2); a module algebra-coalgebra when h is cocommutative."""
    flavor = "module-algebra-coalgebra" if is_cocommutative(h) else "module"
    return ModuleData(h.carrier, adjoint_action_map(h), flavor, h)


def adjoint_coaction(h: HopfAlgebraData) -> ModuleData:
    out = hopf_env(h).eval(ADJOINT_COACTION)
    return ModuleData(h.carrier, Morphism(h.carrier, h.carrier * h.carrier, out.mat), "comodule-coalgebra", h)


def trivial_action(over: HopfAlgebraData, carrier: HopfAlgebraData | ObjectSig,
                   flavor: str = "module") -> ModuleData:
    """``eps_X (x) id_M``."""
    structure = carrier if isinstance(carrier, HopfAlgebraData) else None
    sig = carrier.carrier if structure else carrier
    mat = over.eps.mat.kron(Matrix.identity(over.field, sig.dim))
    return ModuleData(sig, Morphism(over.carrier * sig, sig, mat), flavor, structure)


def trivial_coaction(over: HopfAlgebraData, carrier: ObjectSig) -> ModuleData:
    """``eta_X (x) id_M``."""
    mat = over.eta.mat.kron(Matrix.identity(over.field, carrier.dim))
    return ModuleData(carrier, Morphism(carrier, over.carrier * carrier, mat), "comodule")


def regular_action(h: HopfAlgebraData) -> ModuleData:
    return ModuleData(h.carrier, h.mu, "module", h)
