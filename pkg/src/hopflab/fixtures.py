"""Named example instances used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .brace import (
    HopfBraceData,
    SkewBrace,
    linearize_skew_brace,
    opposite_brace,
    trivial_brace,
)
from .groups import GroupTable, builtin
from .hopf import HopfAlgebraData, group_algebra, tensor_hopf
from .linalg import QQ, FieldSpec, Matrix, Morphism
from .modules import RrbModuleData, reg_module, triv_module
from .projections import HbrProjection, HopfProjection, RrbProjection
from .rrb import RelRotaBaxterData, functor_F, goncharov_rrb, unit_rrb


def kG(group: str | GroupTable, field: FieldSpec = QQ, name: str = "H") -> HopfAlgebraData:
    g = builtin(group) if isinstance(group, str) else group
    return group_algebra(g, field, name)


def triv_brace(group: str | GroupTable, field: FieldSpec = QQ, name: str = "H") -> HopfBraceData:
    g = builtin(group) if isinstance(group, str) else group
    return linearize_skew_brace(trivial_brace(g), field, name)


def opp_brace(group: str | GroupTable, field: FieldSpec = QQ, name: str = "H") -> HopfBraceData:
    g = builtin(group) if isinstance(group, str) else group
    return linearize_skew_brace(opposite_brace(g), field, name)


def opp_skew_brace(group: str) -> SkewBrace:
    return opposite_brace(builtin(group))


def goncharov(group: str | GroupTable, field: FieldSpec = QQ, name: str = "H") -> RelRotaBaxterData:
    return goncharov_rrb(kG(group, field, name))


def linearize_map(mapping: Sequence[int], src: HopfAlgebraData, dst: HopfAlgebraData) -> Morphism:
    """The linear map sending basis vector ``k`` of ``src`` to basis vector ``mapping[k]`` of ``dst``."""
    num = np.zeros((dst.dim, src.dim), dtype=np.int64)
    for col, row in enumerate(mapping):
        num[row, col] = 1
    return Morphism(src.carrier, dst.carrier, Matrix(src.field, num))


# On the builtin orderings: C2 = (e, a), S3 = (e, (123), (132), (12), (13), (23)).
C2_INTO_S3 = (0, 3)
SIGN_S3 = (0, 0, 0, 1, 1, 1)


def sign_projection(field: FieldSpec = QQ) -> HopfProjection:
    """k[C2] -> k[S3] through <(12)>, retracted by the sign."""
    x, y = kG("C2", field, "X"), kG("S3", field, "Y")
    return HopfProjection(x, y, linearize_map(C2_INTO_S3, x, y), linearize_map(SIGN_S3, y, x))


def lambda_projection(field: FieldSpec = QQ) -> RrbProjection:
    """The sign projection carried by the antipode operators on both group algebras."""
    sp = sign_projection(field)
    inner = goncharov_rrb(sp.X.renamed("H"))
    outer = goncharov_rrb(sp.Y.renamed("A"))
    f = Morphism(inner.H.carrier, outer.H.carrier, sp.f.mat)
    g = Morphism(outer.H.carrier, inner.H.carrier, sp.g.mat)
    return RrbProjection(inner, outer, f, f, g, g)


def brace_projection(field: FieldSpec = QQ) -> HbrProjection:
    """trivBrace(C2) inside trivBrace(S3) with the sign as retraction."""
    inner, outer = triv_brace("C2", field, "H"), triv_brace("S3", field, "D")
    return HbrProjection(inner, outer, linearize_map(C2_INTO_S3, inner.first, outer.first),
                         linearize_map(SIGN_S3, outer.first, inner.first))


def opp_brace_projection(field: FieldSpec = QQ) -> HbrProjection:
    """The image of the antipode projection under R: the outer brace has the opposite second product."""
    inner, outer = opp_brace("C2", field, "H"), opp_brace("S3", field, "D")
    return HbrProjection(inner, outer, linearize_map(C2_INTO_S3, inner.first, outer.first),
                         linearize_map(SIGN_S3, outer.first, inner.first))


def _ident(h: HopfAlgebraData) -> Morphism:
    return Morphism(h.carrier, h.carrier, Matrix.identity(h.field, h.dim))


def trivial_self_projection(r: RelRotaBaxterData) -> RrbProjection:
    return RrbProjection(r, r, _ident(r.H), _ident(r.B), _ident(r.H), _ident(r.B))


def trivial_hbr_projection(hb: HopfBraceData) -> HbrProjection:
    return HbrProjection(hb, hb, _ident(hb.first), _ident(hb.first))


def unit_projection(r: RelRotaBaxterData) -> RrbProjection:
    """The unit operator on K mapped in by the units and retracted by the counits."""
    u = unit_rrb(r.field)
    return RrbProjection(u, r, r.H.eta, r.B.eta, r.H.eps, r.B.eps)


def product_projection(field: FieldSpec = QQ) -> RrbProjection:
    """goncharov(C2) as a retract of goncharov(C2 x S3) through the first tensor factor."""
    c2, s3 = kG("C2", field, "H"), kG("S3", field, "S")
    a = tensor_hopf(c2, s3, "A")
    inner, outer = goncharov_rrb(c2), goncharov_rrb(a)
    ident = Matrix.identity(field, 2)
    f = Morphism(c2.carrier, a.carrier, ident.kron(s3.eta.mat))
    g = Morphism(a.carrier, c2.carrier, ident.kron(s3.eps.mat))
    return RrbProjection(inner, outer, f, f, g, g)


def reg_module_fixture(group: str = "S3", field: FieldSpec = QQ) -> tuple[RrbModuleData, RelRotaBaxterData]:
    r = goncharov(group, field)
    return reg_module(r), r


def triv_module_fixture(group: str = "S3", field: FieldSpec = QQ) -> tuple[RrbModuleData, RelRotaBaxterData]:
    r = goncharov(group, field)
    return triv_module(r), r


def trivial_brace_operator(group: str, field: FieldSpec = QQ) -> RelRotaBaxterData:
    return functor_F(triv_brace(group, field))


# ------------------------------------------------------------ broken instances


def broken_antipode(h: HopfAlgebraData) -> HopfAlgebraData:
    """Replace the antipode by the identity (wrong for any nontrivial group)."""
    return h.replace(lam=_ident(h))


def broken_rrb(group: str = "S3", field: FieldSpec = QQ) -> RelRotaBaxterData:
    """The antipode operator with the trivial action in place of the adjoint one."""
    r = goncharov(group, field)
    triv = Morphism(r.phi.dom, r.phi.cod, r.B.eps.mat.kron(Matrix.identity(field, r.H.dim)))
    return r.replace(phi=triv)


def broken_skew_brace() -> SkewBrace:
    """C4 for star and the Klein table relabelled so its identity sits at index 1."""
    c4, k = builtin("C4"), builtin("C2xC2")
    perm = (1, 0, 2, 3)
    table = tuple(tuple(perm[k.table[perm[i]][perm[j]]] for j in range(4)) for i in range(4))
    return SkewBrace(c4, GroupTable(c4.names, table))


def broken_triv_module(group: str = "S3", field: FieldSpec = QQ) -> tuple[RrbModuleData, RelRotaBaxterData]:
    """The regular module with gamma replaced by eta o eps."""
    m, r = reg_module_fixture(group, field)
    ee = Morphism(m.gamma.dom, m.gamma.cod, r.B.eta.mat @ r.H.eps.mat)
    return RrbModuleData(m.M, m.N, m.phiH, m.phiB, m.phiN, ee), r


BROKEN = ("antipode", "rrb", "skewbrace", "module")
