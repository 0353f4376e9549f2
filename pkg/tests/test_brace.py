from __future__ import annotations

from itertools import product

import pytest

from hopflab.brace import (
    SkewBrace,
    YBSolutionSet,
    check_braid_relation,
    check_brace_morphism,
    check_gamma,
    check_hopf_brace,
    check_skew_brace,
    gamma,
    linearize_skew_brace,
    linearize_solution,
    opposite_brace,
    qybe_solution_from_skew_brace,
    trivial_brace,
)
from hopflab.errors import PreconditionError
from hopflab.fixtures import C2_INTO_S3, broken_skew_brace, linearize_map, opp_brace, triv_brace
from hopflab.groups import BUILTIN_GROUPS, GroupTable, builtin
from hopflab.linalg import QQ, FieldSpec

from oracles import s3_inv, s3_mul

GF7 = FieldSpec.prime(7)


@pytest.mark.parametrize("name", BUILTIN_GROUPS)
def test_trivial_and_opposite_braces(name):
    g = builtin(name)
    assert check_skew_brace(trivial_brace(g)).passed
    assert check_skew_brace(opposite_brace(g)).passed


def test_broken_skew_brace_has_witness():
    rep = check_skew_brace(broken_skew_brace())
    assert not rep.passed
    bad = rep.check("shared-identity")
    assert not bad.passed and bad.witness == {"star-identity": "e", "circ-identity": "a"}
    with pytest.raises(PreconditionError):
        qybe_solution_from_skew_brace(broken_skew_brace())


def test_relabelled_circ_fails_the_brace_law():
    # C4 with a and a2 swapped in the circle law: a group, same identity, no brace
    c4, p = builtin("C4"), (0, 2, 1, 3)
    circ = GroupTable(c4.names, tuple(tuple(p[c4.table[p[i]][p[j]]] for j in range(4)) for i in range(4)))
    rep = check_skew_brace(SkewBrace(c4, circ))
    assert rep.check("shared-identity").passed
    law = rep.check("brace-law")
    assert not law.passed
    assert law.witness == {"g": "a2", "h": "a", "t": "a", "lhs": "a", "rhs": "e"}


def test_klein_circle_on_c4_is_a_brace():
    assert check_skew_brace(SkewBrace(builtin("C4"), GroupTable(builtin("C4").names,
                                                               builtin("C2xC2").table))).passed


# ----------------------------------------------------------------- QYBE


def test_opposite_brace_solution_value():
    g = builtin("S3")
    sol = qybe_solution_from_skew_brace(opposite_brace(g))
    a, b = sol(g.index("(12)"), g.index("(13)"))
    assert (g.names[a], g.names[b]) == ("(23)", "(12)")


def test_opposite_brace_solution_is_conjugation():
    sol = qybe_solution_from_skew_brace(opposite_brace(builtin("S3")))
    for x, y in product(range(6), repeat=2):
        assert sol(x, y) == (s3_mul(s3_mul(s3_inv(x), y), x), x)


def test_set_braid_exhaustive_and_linear_braid():
    sol = qybe_solution_from_skew_brace(opposite_brace(builtin("S3")))
    rep = check_braid_relation(sol)
    assert rep.passed and rep.flags["invertible"]
    c = linearize_solution(sol, GF7)
    assert c.mat.shape == (36, 36)
    lin = check_braid_relation(c)
    assert lin.passed and lin.flags["invertible"]


@pytest.mark.parametrize("name", ["C3", "Q8", "D4"])
def test_trivial_brace_solutions(name):
    g = builtin(name)
    sol = qybe_solution_from_skew_brace(trivial_brace(g))
    assert check_braid_relation(sol).passed
    # trivial brace: sigma_g(h) = h, tau_h(g) = h^-1 g h
    for x, y in product(range(g.order), repeat=2):
        assert sol(x, y) == (y, g.mul(g.mul(g.inverse[y], x), y))


def test_non_braid_map_is_caught():
    # c(x, y) = (x, x) fails the braid relation with a witness
    names = ("a", "b")
    bad = YBSolutionSet.from_map(names, lambda x, y: (y, y if x == 0 else 1 - y))
    rep = check_braid_relation(bad)
    lin = check_braid_relation(linearize_solution(bad, QQ))
    assert rep.passed == lin.passed
    bad2 = YBSolutionSet.from_map(names, lambda x, y: ((x + y) % 2, x))
    rep2 = check_braid_relation(bad2)
    assert not rep2.passed and rep2.check("braid").witness is not None
    assert not check_braid_relation(linearize_solution(bad2, QQ)).passed


# ------------------------------------------------------------ Hopf braces


@pytest.mark.parametrize("field", [QQ, GF7], ids=str)
@pytest.mark.parametrize("name", ["C3", "S3", "D4", "Q8"])
def test_hopf_braces(name, field):
    for hb in (triv_brace(name, field), opp_brace(name, field)):
        rep = check_hopf_brace(hb)
        assert rep.passed, rep.render()
        assert check_gamma(hb).passed


def test_linearized_opposite_brace_matches_fixture():
    hb = linearize_skew_brace(opposite_brace(builtin("S3")), GF7)
    assert hb.same_structure(opp_brace("S3", GF7))


def test_gamma_of_opposite_brace_is_conjugation():
    hb = opp_brace("S3")
    g = gamma(hb)
    for x, y in product(range(6), repeat=2):
        col = [g.mat.entry(r, x * 6 + y) for r in range(6)]
        # Gamma(x (x) y) = x^-1 (y x) on group-likes
        target = s3_mul(s3_inv(x), s3_mul(y, x))
        assert col == [1 if r == target else 0 for r in range(6)]


def test_gamma_of_trivial_brace_is_counit():
    hb = triv_brace("S3")
    g = gamma(hb)
    for x, y in product(range(6), repeat=2):
        assert [g.mat.entry(r, x * 6 + y) for r in range(6)] == [1 if r == y else 0 for r in range(6)]


def test_brace_morphisms():
    c2, s3 = triv_brace("C2"), triv_brace("S3")
    x = linearize_map(C2_INTO_S3, c2.first, s3.first)
    assert check_brace_morphism(x, c2, s3).passed
    y = linearize_map((0, 1), c2.first, s3.first)
    assert not check_brace_morphism(y, c2, s3).passed
