"""A tiny language for composite morphisms.

Grammar (whitespace-insensitive)::

    expr := term { "o" term }        composition, left-assoc; "f o g" applies g first
    term := atom { "x" atom }        tensor product, left-assoc; binds tighter than "o"
    atom := IDENT | "id[" objlist "]" | "swap[" obj "," obj "]" | "(" expr ")"

Expressions are evaluated by pushing the identity of the domain through the
tree one tensor factor at a time, which never materialises the large
Kronecker products that ``id[H] x f x id[H]`` would otherwise need.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import ParseError, SignatureMismatch, TypecheckError
from .linalg import (
    FieldSpec,
    Matrix,
    Morphism,
    ObjectSig,
    int_matmul,
    same_shape,
)

# ------------------------------------------------------------------------ AST


@dataclass(frozen=True)
class Generator:
    name: str


@dataclass(frozen=True)
class Id:
    objects: tuple[str, ...]


@dataclass(frozen=True)
class Swap:
    left: str
    right: str


@dataclass(frozen=True)
class Compose:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Tensor:
    left: "Expr"
    right: "Expr"


Expr = Union[Generator, Id, Swap, Compose, Tensor]

RESERVED = frozenset({"o", "x", "id", "swap"})

# --------------------------------------------------------------------- parser

_TOKEN_RE = re.compile(r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[\[\](),]))")

_ATOM_START = ("identifier", "'id['", "'swap['", "'('")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "ident", "punct" or "eof"
    text: str
    offset: int  # 1-based position of the first character


def _tokenize(src: str) -> list[_Tok]:
    toks: list[_Tok] = []
    pos = 0
    while pos < len(src):
        if src[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", pos + 1)
        kind = "ident" if m.group("ident") else "punct"
        text = m.group(kind)
        toks.append(_Tok(kind, text, m.start(kind) + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", len(src) + 1))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.k = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def fail(self, expected) -> None:
        t = self.cur
        what = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"unexpected {what}", t.offset, tuple(expected))

    def take(self, text: str) -> None:
        if self.cur.text != text or self.cur.kind == "eof":
            self.fail([repr(text)])
        self.k += 1

    def name(self) -> str:
        t = self.cur
        if t.kind != "ident" or t.text in RESERVED:
            self.fail(["object name"])
        self.k += 1
        return t.text

    def expr(self) -> Expr:
        e = self.term()
        while self.cur.kind == "ident" and self.cur.text == "o":
            self.k += 1
            e = Compose(e, self.term())
        return e

    def term(self) -> Expr:
        e = self.atom()
        while self.cur.kind == "ident" and self.cur.text == "x":
            self.k += 1
            e = Tensor(e, self.atom())
        return e

    def atom(self) -> Expr:
        t = self.cur
        if t.kind == "punct" and t.text == "(":
            self.k += 1
            e = self.expr()
            self.take(")")
            return e
        if t.kind == "ident" and t.text in ("id", "swap"):
            self.k += 1
            self.take("[")
            if t.text == "id":
                names: list[str] = []
                if self.cur.text != "]":
                    names.append(self.name())
                    while self.cur.text == ",":
                        self.k += 1
                        names.append(self.name())
                self.take("]")
                return Id(tuple(names))
            a = self.name()
            self.take(",")
            b = self.name()
            self.take("]")
            return Swap(a, b)
        if t.kind == "ident" and t.text not in RESERVED:
            self.k += 1
            return Generator(t.text)
        self.fail(_ATOM_START)

    def parse(self) -> Expr:
        e = self.expr()
        if self.cur.kind != "eof":
            self.fail(["'o'", "'x'", "end of input"])
        return e


def parse_expr(src: str) -> Expr:
    """Parse DSL text into an AST; offsets in errors are 1-based."""
    return _Parser(src).parse()


def print_expr(e: Expr) -> str:
    """Canonical text; ``parse_expr(print_expr(e)) == e``."""
    if isinstance(e, Generator):
        return e.name
    if isinstance(e, Id):
        return f"id[{','.join(e.objects)}]"
    if isinstance(e, Swap):
        return f"swap[{e.left},{e.right}]"
    if isinstance(e, Compose):
        right = print_expr(e.right)
        if isinstance(e.right, Compose):
            right = f"({right})"
        return f"{print_expr(e.left)} o {right}"
    left = print_expr(e.left)
    if isinstance(e.left, Compose):
        left = f"({left})"
    right = print_expr(e.right)
    if isinstance(e.right, (Compose, Tensor)):
        right = f"({right})"
    return f"{left} x {right}"


def _as_expr(e: Expr | str) -> Expr:
    return parse_expr(e) if isinstance(e, str) else e


# ---------------------------------------------------------------- environment


@dataclass
class Environment:
    """Named objects and generator morphisms over one field."""

    field: FieldSpec
    objects: dict[str, int] = field(default_factory=dict)
    generators: dict[str, Morphism] = field(default_factory=dict)

    def add_object(self, name: str, dim: int) -> Environment:
        if name in RESERVED:
            raise TypecheckError(f"{name!r} is reserved")
        old = self.objects.get(name)
        if old is not None and old != dim:
            raise TypecheckError(f"object {name} already declared with dimension {old}")
        self.objects[name] = dim
        return self

    def sig(self, names) -> ObjectSig:
        factors = []
        for n in names:
            if n not in self.objects:
                raise TypecheckError(f"unknown object {n!r}")
            factors.append((n, self.objects[n]))
        return ObjectSig(tuple(factors))

    def add(self, name: str, f: Morphism, dom=None, cod=None) -> Environment:
        """Register a generator, optionally retyped onto declared object names."""
        if name in RESERVED:
            raise TypecheckError(f"{name!r} is reserved")
        if f.field != self.field:
            raise TypecheckError(f"generator {name} lives over {f.field}, not {self.field}")
        d = self.sig(dom) if dom is not None else f.dom
        c = self.sig(cod) if cod is not None else f.cod
        if d.dim != f.dom.dim or c.dim != f.cod.dim:
            raise TypecheckError(
                f"generator {name}: matrix is {f.mat.shape}, signature wants {(c.dim, d.dim)}"
            )
        for n, dim in d.factors + c.factors:
            if self.objects.get(n) != dim:
                raise TypecheckError(f"generator {name} references undeclared object {n!r}")
        self.generators[name] = Morphism(d, c, f.mat)
        return self

    def copy(self) -> Environment:
        return Environment(self.field, dict(self.objects), dict(self.generators))

    def eval(self, src: Expr | str) -> Morphism:
        return eval_expr(_as_expr(src), self)

    def check(self, name: str, lhs: Expr | str, rhs: Expr | str) -> AxiomCheck:
        return check_equal(name, lhs, rhs, self)


# ------------------------------------------------------------------ typecheck


def _types(e: Expr, env: Environment, memo: dict) -> tuple[ObjectSig, ObjectSig]:
    key = id(e)
    if key in memo:
        return memo[key][1]
    if isinstance(e, Generator):
        if e.name not in env.generators:
            raise TypecheckError(f"unknown generator {e.name!r}", e)
        g = env.generators[e.name]
        t = (g.dom, g.cod)
    elif isinstance(e, Id):
        try:
            s = env.sig(e.objects)
        except TypecheckError as exc:
            raise TypecheckError(str(exc), e) from None
        t = (s, s)
    elif isinstance(e, Swap):
        try:
            a, b = env.sig([e.left]), env.sig([e.right])
        except TypecheckError as exc:
            raise TypecheckError(str(exc), e) from None
        t = (a * b, b * a)
    elif isinstance(e, Compose):
        ld, lc = _types(e.left, env, memo)
        rd, rc = _types(e.right, env, memo)
        if not same_shape(ld, rc):
            raise TypecheckError(
                f"composition mismatch in '{print_expr(e)}': left expects [{ld}], right produces [{rc}]",
                e,
            )
        t = (rd, lc)
    elif isinstance(e, Tensor):
        ld, lc = _types(e.left, env, memo)
        rd, rc = _types(e.right, env, memo)
        t = (ld * rd, lc * rc)
    else:
        raise TypecheckError(f"not an expression: {e!r}")
    memo[key] = (e, t)
    return t


def typecheck_expr(e: Expr | str, env: Environment) -> tuple[ObjectSig, ObjectSig]:
    return _types(_as_expr(e), env, {})


# ------------------------------------------------------------------ evaluator


class _Evaluator:
    def __init__(self, env: Environment, memo: dict):
        self.env = env
        self.memo = memo
        self.p = env.field.p if env.field.is_prime else None

    def dims(self, e: Expr) -> tuple[int, int]:
        d, c = self.memo[id(e)][1]
        return d.dim, c.dim

    def apply(self, e: Expr, x: np.ndarray, den: int) -> tuple[np.ndarray, int]:
        """Apply e to the columns of x (shape dim(dom) x N)."""
        if isinstance(e, Id):
            return x, den
        if isinstance(e, Generator):
            num, gden = self.env.generators[e.name].mat.raw
            y = int_matmul(num, x)
            if self.p:
                y %= self.p
            return y, den * gden
        if isinstance(e, Swap):
            dx = self.env.objects[e.left]
            dy = self.env.objects[e.right]
            n = x.shape[1]
            return x.reshape(dx, dy, n).transpose(1, 0, 2).reshape(dx * dy, n), den
        if isinstance(e, Compose):
            x, den = self.apply(e.right, x, den)
            return self.apply(e.left, x, den)
        df, cf = self.dims(e.left)
        dg, cg = self.dims(e.right)
        n = x.shape[1]
        if not isinstance(e.right, Id):
            y = x.reshape(df, dg, n).transpose(1, 0, 2).reshape(dg, df * n)
            y, den = self.apply(e.right, y, den)
            x = y.reshape(cg, df, n).transpose(1, 0, 2).reshape(df * cg, n)
        if not isinstance(e.left, Id):
            y, den = self.apply(e.left, x.reshape(df, cg * n), den)
            x = y.reshape(cf * cg, n)
        return x, den


def eval_expr(e: Expr | str, env: Environment) -> Morphism:
    """Exact matrix of an expression; raises TypecheckError on ill-typed input."""
    e = _as_expr(e)
    memo: dict = {}
    dom, cod = _types(e, env, memo)
    x = np.eye(dom.dim, dtype=np.int64)
    y, den = _Evaluator(env, memo).apply(e, x, 1)
    return Morphism(dom, cod, Matrix(env.field, np.ascontiguousarray(y), den))


# ------------------------------------------------------------------- checking


@dataclass(frozen=True)
class AxiomCheck:
    """Verdict of one equality.

    ``witness`` is (row, col, lhs, rhs) of the first mismatching matrix entry,
    or a dict describing a failing element tuple for set-level checks.
    """

    name: str
    lhs: str
    rhs: str
    passed: bool
    witness: tuple | None = None

    def describe(self, field: FieldSpec | None = None) -> str:
        if self.passed:
            return f"PASS {self.name}"
        if self.witness is None:
            return f"FAIL {self.name}"
        if isinstance(self.witness, dict):
            detail = ", ".join(f"{k}={v}" for k, v in self.witness.items())
            return f"FAIL {self.name}: {detail}"
        i, j, a, b = self.witness
        fmt = field.format_scalar if field else str
        return f"FAIL {self.name}: entry ({i}, {j}) lhs={fmt(a)} rhs={fmt(b)}"


def compare(name: str, lhs: Morphism, rhs: Morphism, lhs_text: str = "", rhs_text: str = "") -> AxiomCheck:
    """Exact comparison of two already evaluated morphisms."""
    if not (same_shape(lhs.dom, rhs.dom) and same_shape(lhs.cod, rhs.cod)):
        raise SignatureMismatch(
            f"{name}: sides have different signatures [{lhs.dom}] -> [{lhs.cod}] vs [{rhs.dom}] -> [{rhs.cod}]"
        )
    w = lhs.mat.first_difference(rhs.mat)
    return AxiomCheck(name, lhs_text, rhs_text, w is None, w)


def check_equal(name: str, lhs: Expr | str, rhs: Expr | str, env: Environment) -> AxiomCheck:
    le, re_ = _as_expr(lhs), _as_expr(rhs)
    return compare(name, eval_expr(le, env), eval_expr(re_, env), print_expr(le), print_expr(re_))
