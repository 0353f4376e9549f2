from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopflab.dsl import (
    Compose,
    Environment,
    Generator,
    Id,
    Swap,
    Tensor,
    parse_expr,
    print_expr,
    typecheck_expr,
)
from hopflab.errors import CompositionError, ParseError, SignatureMismatch, TypecheckError
from hopflab.fixtures import kG
from hopflab.hopf import hopf_env
from hopflab.linalg import QQ, FieldSpec, Matrix, Morphism, identity, mat_compose, mat_tensor, swap_matrix

GF5 = FieldSpec.prime(5)

# ------------------------------------------------------------------ parsing

names = st.sampled_from(["f", "g", "mu", "eta_H", "lam2", "phi_A"])
objs = st.sampled_from(["H", "B", "M"])

leaves = st.one_of(
    names.map(Generator),
    st.lists(objs, min_size=1, max_size=3).map(lambda xs: Id(tuple(xs))),
    st.tuples(objs, objs).map(lambda p: Swap(*p)),
)
exprs = st.recursive(
    leaves,
    lambda sub: st.one_of(st.builds(Compose, sub, sub), st.builds(Tensor, sub, sub)),
    max_leaves=8,
)


@given(exprs)
def test_print_parse_round_trip(e):
    assert parse_expr(print_expr(e)) == e


@given(exprs)
def test_printing_is_canonical(e):
    text = print_expr(e)
    assert print_expr(parse_expr(text)) == text


def test_precedence_and_associativity():
    assert parse_expr("f o g x h") == Compose(Generator("f"), Tensor(Generator("g"), Generator("h")))
    assert parse_expr("f o g o h") == Compose(Compose(Generator("f"), Generator("g")), Generator("h"))
    assert parse_expr("f x g x h") == Tensor(Tensor(Generator("f"), Generator("g")), Generator("h"))
    assert parse_expr("id[H, B]") == Id(("H", "B"))


@pytest.mark.parametrize("src, offset", [("mu o", 5), ("", 1), ("mu x x", 6), ("(mu", 4), ("id[H", 5),
                                         ("swap[H]", 7), ("mu )", 4), ("mu o $", 6)])
def test_parse_error_offsets(src, offset):
    with pytest.raises(ParseError) as info:
        parse_expr(src)
    assert info.value.offset == offset


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_expr("mu o")
    assert "identifier" in info.value.expected


def test_reserved_words_are_not_generators():
    with pytest.raises(ParseError):
        parse_expr("o")


# --------------------------------------------------------------- evaluation


def small_env(field=QQ) -> Environment:
    env = Environment(field).add_object("A", 2).add_object("B", 3)
    env.add("f", Morphism(env.sig(["A"]), env.sig(["B"]), Matrix.from_rows(field, [[1, 2], [0, 1], [3, 0]])))
    env.add("g", Morphism(env.sig(["B"]), env.sig(["A"]), Matrix.from_rows(field, [[1, 0, 1], [2, 1, 0]])))
    env.add("h", Morphism(env.sig(["A", "A"]), env.sig(["A"]),
                          Matrix.from_rows(field, [[1, 0, 0, 1], [0, 1, 1, 4]])))
    env.add("u", Morphism(env.sig([]), env.sig(["A"]), Matrix.from_rows(field, [[1], [2]])))
    return env


def literal_eval(e, env):
    """Bottom-up evaluation through the linalg primitives (reference semantics)."""
    if isinstance(e, Generator):
        return env.generators[e.name]
    if isinstance(e, Id):
        return identity(env.sig(e.objects), env.field)
    if isinstance(e, Swap):
        return swap_matrix(env.sig([e.left]), env.sig([e.right]), env.field)
    if isinstance(e, Compose):
        return mat_compose(literal_eval(e.left, env), literal_eval(e.right, env))
    return mat_tensor(literal_eval(e.left, env), literal_eval(e.right, env))


def well_typed(env: Environment):
    """Expressions built so that every composition typechecks: (expr, dom, cod) as dimension lists."""
    atoms = [("f", ["A"], ["B"]), ("g", ["B"], ["A"]), ("h", ["A", "A"], ["A"]), ("u", [], ["A"]),
             ("id[A]", ["A"], ["A"]), ("id[B]", ["B"], ["B"]), ("swap[A,B]", ["A", "B"], ["B", "A"]),
             ("swap[B,A]", ["B", "A"], ["A", "B"])]
    base = st.sampled_from(atoms)

    def extend(sub):
        def tensor(pair):
            (a, d1, c1), (b, d2, c2) = pair
            return f"({a}) x ({b})", d1 + d2, c1 + c2

        def compose_with_id(t):
            a, d, c = t
            return f"id[{','.join(c)}] o ({a})" if c else a, d, c

        return st.one_of(st.tuples(sub, sub).map(tensor), sub.map(compose_with_id),
                         sub.map(lambda t: ((f"(f x id[{','.join(t[2])}]) o (id[A] x ({t[0]}))"
                                             if t[2] else f"f o (id[A] x ({t[0]}))"), ["A"] + t[1],
                                            ["B"] + t[2])))

    return st.recursive(base, extend, max_leaves=5).filter(lambda t: len(t[1]) <= 4 and len(t[2]) <= 4)


ENV = small_env()


@settings(max_examples=60, deadline=None)
@given(well_typed(ENV))
def test_evaluator_matches_literal_kronecker(t):
    src, dom, cod = t
    got = ENV.eval(src)
    ref = literal_eval(parse_expr(src), ENV)
    assert got.mat == ref.mat
    assert got.dom.dims == ENV.sig(dom).dims
    assert got.cod.dims == ENV.sig(cod).dims


def test_interchange_law():
    env = small_env(GF5)
    lhs = env.eval("(g o f) x (f o g)")
    rhs = env.eval("(g x f) o (f x g)")
    assert lhs == rhs


def test_identity_laws():
    env = small_env()
    assert env.eval("id[B] o f") == env.eval("f") == env.eval("f o id[A]")


def test_unit_collapse_in_composition():
    env = hopf_env(kG("C3"))
    # eps x eps : H x H -> K x K composes with a map into H x H and compares with eps o mu
    a = env.eval("(eps x eps) o delta")
    b = env.eval("eps")
    assert a.mat == b.mat
    assert env.check("counit-mult", "eps o mu", "eps x eps").passed


def test_typecheck_errors_name_subtree():
    env = small_env()
    with pytest.raises(TypecheckError) as info:
        typecheck_expr("f o f", env)
    assert info.value.subtree is not None
    with pytest.raises(TypecheckError):
        env.eval("nope")
    with pytest.raises(TypecheckError):
        env.eval("id[Z]")


def test_check_reports_witness_and_mismatch():
    env = small_env()
    c = env.check("wrong", "g o f", "id[A]")
    assert not c.passed and c.witness[:2] == (0, 0)
    assert "FAIL wrong" in c.describe(QQ)
    with pytest.raises(SignatureMismatch):
        env.check("shapes", "f", "g")


def test_literal_primitives_raise_on_mismatch():
    env = small_env()
    with pytest.raises(CompositionError):
        mat_compose(env.generators["f"], env.generators["f"])
