"""Exact matrices over Q and GF(p), typed morphisms and idempotent splitting.

Matrices act on column vectors, so ``mat(f o g) == mat(f) @ mat(g)``.  Tensor
products use left-factor-major basis order: basis vector ``(i, j)`` of
``X (x) Y`` sits at index ``i * dim(Y) + j``, which makes the matrix of
``f (x) g`` the ordinary Kronecker product.

Internally a matrix is an integer numpy array plus one positive common
denominator (always 1 over GF(p)).  Products that could leave the exact
float64 or int64 range fall back to Python integers, so nothing ever rounds
or wraps.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    CompositionError,
    FieldError,
    NotIdempotentError,
    ScalarFormatError,
    SingularError,
)

Scalar = Union[Fraction, int]

_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**62


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


_RATIONAL_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/[1-9][0-9]*)?$")
_RESIDUE_RE = re.compile(r"^(0|[1-9][0-9]*)$")


@dataclass(frozen=True)
class FieldSpec:
    """The base field: the rationals, or GF(p) for a prime p."""

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "rational":
            if self.p is not None:
                raise FieldError("the rational field takes no modulus")
        elif self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise FieldError(f"GF(p) needs a prime modulus, got {self.p!r}")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> FieldSpec:
        return cls("rational")

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls("prime", p)

    @classmethod
    def parse(cls, text: str | int) -> FieldSpec:
        """Accept ``"Q"``, ``"GF(7)"``, ``"7"`` or ``7``."""
        if isinstance(text, int):
            return cls.prime(text)
        t = text.strip()
        if t in ("Q", "QQ", "rational", "rationals"):
            return cls.rational()
        m = re.fullmatch(r"(?:GF|F)\((\d+)\)|(\d+)", t)
        if not m:
            raise FieldError(f"cannot parse field {text!r}")
        return cls.prime(int(m.group(1) or m.group(2)))

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def name(self) -> str:
        return "Q" if self.kind == "rational" else f"GF({self.p})"

    def __str__(self):
        return self.name

    # scalars

    def scalar(self, x) -> Scalar:
        """Coerce an int, Fraction or literal string to the canonical element."""
        if isinstance(x, str):
            return self.parse_scalar(x, strict=False)
        if self.kind == "rational":
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def parse_scalar(self, text: str, strict: bool = True) -> Scalar:
        """Parse a scalar literal.

        With ``strict`` the literal must already be canonical: a reduced
        fraction with positive denominator (no ``/1``), or a residue in
        ``[0, p)``.
        """
        t = text.strip()
        if strict and t != text:
            raise ScalarFormatError(f"surrounding whitespace in literal {text!r}")
        if self.kind == "rational":
            if not _RATIONAL_RE.match(t):
                if strict:
                    raise ScalarFormatError(f"malformed rational literal {text!r}")
                try:
                    return Fraction(t)
                except (ValueError, ZeroDivisionError) as exc:
                    raise ScalarFormatError(f"malformed rational literal {text!r}") from exc
            value = Fraction(t)
            if strict and self.format_scalar(value) != t:
                raise ScalarFormatError(f"non-canonical rational literal {text!r}")
            return value
        if not _RESIDUE_RE.match(t):
            if strict:
                raise ScalarFormatError(f"malformed residue literal {text!r}")
            try:
                return self.scalar(Fraction(t))
            except (ValueError, ZeroDivisionError) as exc:
                raise ScalarFormatError(f"malformed residue literal {text!r}") from exc
        value = int(t)
        if value >= self.p:
            if strict:
                raise ScalarFormatError(f"residue {text!r} not reduced mod {self.p}")
            value %= self.p
        return value

    def format_scalar(self, x: Scalar) -> str:
        if self.kind == "rational":
            x = Fraction(x)
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
        return str(int(x) % self.p)

    def inv(self, x: Scalar) -> Scalar:
        if self.kind == "rational":
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)


QQ = FieldSpec.rational()


# ---------------------------------------------------------------- raw arrays


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)) for v in a.flat)
    return int(np.abs(a).max())


def _shrink(a: np.ndarray) -> np.ndarray:
    if a.dtype == object and _maxabs(a) < _INT64_SAFE:
        return a.astype(np.int64)
    return a


def _as_object(a: np.ndarray) -> np.ndarray:
    if a.dtype == object:
        return a
    out = np.empty(a.size, dtype=object)
    out[:] = [int(v) for v in a.flat]
    return out.reshape(a.shape)


def int_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer product, choosing the fastest representation that cannot overflow."""
    k = a.shape[-1]
    bound = _maxabs(a) * _maxabs(b) * max(k, 1)
    if a.dtype != object and b.dtype != object:
        if bound < _FLOAT_EXACT:
            return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
        if bound < _INT64_SAFE:
            return a @ b
    return _shrink(_as_object(a) @ _as_object(b))


def int_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype != object and b.dtype != object and _maxabs(a) * _maxabs(b) < _INT64_SAFE:
        return np.kron(a, b)
    return _shrink(np.kron(_as_object(a), _as_object(b)))


def _gcd_all(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return reduce(math.gcd, (int(v) for v in a.flat), 0)
    return int(np.gcd.reduce(a.ravel()))


def normalize_raw(field: FieldSpec, num: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    """Bring (numerators, denominator) to the unique canonical form."""
    if field.is_prime:
        if den != 1:
            num = int_matmul(num.reshape(-1, 1), np.array([[pow(den, -1, field.p)]], dtype=np.int64)).reshape(num.shape)
        return _shrink(num % field.p), 1
    if den < 0:
        num, den = -num, -den
    g = math.gcd(den, _gcd_all(num))
    if g > 1:
        num = num // g
        den //= g
    if num.size and _gcd_all(num) == 0:
        den = 1
    return _shrink(num), den


class Matrix:
    """Immutable dense matrix over a FieldSpec."""

    __slots__ = ("field", "_num", "_den")

    def __init__(self, field: FieldSpec, num: np.ndarray, den: int = 1):
        num = np.asarray(num)
        if num.ndim != 2:
            raise ValueError("matrices are two dimensional")
        if num.dtype != object and num.dtype != np.int64:
            num = num.astype(np.int64)
        num, den = normalize_raw(field, num, int(den))
        num.flags.writeable = False
        self.field = field
        self._num = num
        self._den = den

    # construction

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence]) -> Matrix:
        vals = [[field.scalar(x) for x in row] for row in rows]
        if len({len(r) for r in vals}) > 1:
            raise ValueError("ragged matrix rows")
        ncols = len(vals[0]) if vals else 0
        if field.is_prime:
            num = np.array(vals, dtype=object).reshape(len(vals), ncols)
            return cls(field, _shrink(num))
        den = reduce(math.lcm, (v.denominator for r in vals for v in r), 1)
        num = np.empty((len(vals), ncols), dtype=object)
        for i, r in enumerate(vals):
            for j, v in enumerate(r):
                num[i, j] = v.numerator * (den // v.denominator)
        return cls(field, _shrink(num), den)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> Matrix:
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> Matrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def from_raw(cls, field: FieldSpec, num: np.ndarray, den: int = 1) -> Matrix:
        return cls(field, num, den)

    @property
    def raw(self) -> tuple[np.ndarray, int]:
        return self._num, self._den

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self._num.shape

    def entry(self, i: int, j: int) -> Scalar:
        v = int(self._num[i, j])
        if self.field.is_prime:
            return v
        return Fraction(v, self._den)

    def __getitem__(self, ij):
        return self.entry(*ij)

    def rows(self) -> list[list[Scalar]]:
        r, c = self.shape
        return [[self.entry(i, j) for j in range(c)] for i in range(r)]

    def literal(self) -> list[list[str]]:
        return [[self.field.format_scalar(v) for v in row] for row in self.rows()]

    def is_zero(self) -> bool:
        return _gcd_all(self._num) == 0

    def __repr__(self):
        return f"Matrix({self.field.name}, {self.literal()})"

    # algebra

    def _check_field(self, other: Matrix):
        if self.field != other.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.field, int_matmul(self._num, other._num), self._den * other._den)

    def kron(self, other: Matrix) -> Matrix:
        self._check_field(other)
        return Matrix(self.field, int_kron(self._num, other._num), self._den * other._den)

    def _aligned(self, other: Matrix):
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        den = math.lcm(self._den, other._den)
        a = self._num * (den // self._den) if den != self._den else self._num
        b = other._num * (den // other._den) if den != other._den else other._num
        if _maxabs(a) + _maxabs(b) >= _INT64_SAFE:
            a, b = _as_object(a), _as_object(b)
        return a, b, den

    def __add__(self, other: Matrix) -> Matrix:
        a, b, den = self._aligned(other)
        return Matrix(self.field, a + b, den)

    def __sub__(self, other: Matrix) -> Matrix:
        a, b, den = self._aligned(other)
        return Matrix(self.field, a - b, den)

    def __neg__(self) -> Matrix:
        return Matrix(self.field, -self._num, self._den)

    def scale(self, c) -> Matrix:
        c = self.field.scalar(c)
        if self.field.is_prime:
            return Matrix(self.field, int_matmul(self._num.reshape(-1, 1), np.array([[c]], dtype=np.int64)).reshape(self.shape))
        c = Fraction(c)
        num = _as_object(self._num) * c.numerator
        return Matrix(self.field, num, self._den * c.denominator)

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, self._num.T.copy(), self._den)

    def columns(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.field, self._num[:, list(idx)].reshape(self.shape[0], len(idx)), self._den)

    def rows_at(self, idx: Sequence[int]) -> Matrix:
        return Matrix(self.field, self._num[list(idx), :].reshape(len(idx), self.shape[1]), self._den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._den == other._den and np.array_equal(self._num, other._num))

    __hash__ = None

    def first_difference(self, other: Matrix):
        """First (row, col, mine, theirs) in row-major order where entries differ."""
        a, b, _ = self._aligned(other)
        diff = np.argwhere(a != b)
        if diff.size == 0:
            return None
        i, j = (int(v) for v in diff[0])
        return i, j, self.entry(i, j), other.entry(i, j)


# ------------------------------------------------------------------ signatures


@dataclass(frozen=True)
class ObjectSig:
    """Ordered tensor factors ``(name, dim)``; the empty signature is the unit object K."""

    factors: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for name, d in self.factors:
            if int(d) < 1:
                raise ValueError(f"object {name!r} must have dimension >= 1")

    @property
    def dim(self) -> int:
        return math.prod(d for _, d in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.factors)

    @property
    def collapsed(self) -> tuple[int, ...]:
        """Dimension list with unit-dimensional factors removed."""
        return tuple(d for _, d in self.factors if d != 1)

    def __mul__(self, other: ObjectSig) -> ObjectSig:
        return ObjectSig(self.factors + other.factors)

    def __str__(self):
        if not self.factors:
            return "K"
        return " x ".join(f"{n}:{d}" for n, d in self.factors)


K = ObjectSig()


def obj(name: str, dim: int) -> ObjectSig:
    return ObjectSig(((name, dim),))


def same_shape(a: ObjectSig, b: ObjectSig) -> bool:
    return a.collapsed == b.collapsed


def _as_sig(x) -> ObjectSig:
    if isinstance(x, ObjectSig):
        return x
    name, d = x
    return obj(name, d)


@dataclass(frozen=True, eq=False)
class Morphism:
    """A linear map ``dom -> cod``; ``mat`` has shape ``dim(cod) x dim(dom)``."""

    dom: ObjectSig
    cod: ObjectSig
    mat: Matrix

    def __post_init__(self):
        if self.mat.shape != (self.cod.dim, self.dom.dim):
            raise ValueError(
                f"matrix shape {self.mat.shape} does not match {self.cod} <- {self.dom}"
            )

    @property
    def field(self) -> FieldSpec:
        return self.mat.field

    def __eq__(self, other) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return same_shape(self.dom, other.dom) and same_shape(self.cod, other.cod) and self.mat == other.mat

    __hash__ = None

    def __matmul__(self, other: Morphism) -> Morphism:
        return mat_compose(self, other)

    def __repr__(self):
        return f"Morphism({self.dom} -> {self.cod}, {self.mat!r})"

    def retyped(self, dom: ObjectSig, cod: ObjectSig) -> Morphism:
        """Same matrix under new signatures of equal total dimension."""
        return Morphism(dom, cod, self.mat)


def identity(sig: ObjectSig, field: FieldSpec) -> Morphism:
    return Morphism(sig, sig, Matrix.identity(field, sig.dim))


def mat_compose(f: Morphism, g: Morphism) -> Morphism:
    """``f o g``: apply g, then f."""
    if not same_shape(f.dom, g.cod):
        raise CompositionError(
            f"cannot compose: domain of left map is [{f.dom}] but codomain of right map is [{g.cod}]",
            f.dom, g.cod,
        )
    return Morphism(g.dom, f.cod, f.mat @ g.mat)


def mat_tensor(f: Morphism, g: Morphism) -> Morphism:
    return Morphism(f.dom * g.dom, f.cod * g.cod, f.mat.kron(g.mat))


def tensor_all(maps: Iterable[Morphism]) -> Morphism:
    return reduce(mat_tensor, maps)


def compose_all(*maps: Morphism) -> Morphism:
    """``compose_all(f, g, h) == f o g o h``."""
    return reduce(mat_compose, maps)


def swap_matrix(x, y, field: FieldSpec = QQ) -> Morphism:
    """The symmetry ``X (x) Y -> Y (x) X``: index ``i*dy + j`` goes to ``j*dx + i``."""
    x, y = _as_sig(x), _as_sig(y)
    dx, dy = x.dim, y.dim
    num = np.zeros((dx * dy, dx * dy), dtype=np.int64)
    for i in range(dx):
        for j in range(dy):
            num[j * dx + i, i * dy + j] = 1
    return Morphism(x * y, y * x, Matrix(field, num))


# ------------------------------------------------------------- row reduction


def _to_lists(m: Matrix) -> list[list]:
    num, den = m.raw
    if m.field.is_prime:
        return [[int(v) for v in row] for row in num]
    return [[Fraction(int(v), den) for v in row] for row in num]


def _rref_lists(a: list[list], field: FieldSpec) -> list[int]:
    """In-place Gauss-Jordan elimination; returns pivot columns."""
    p = field.p if field.is_prime else None
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = pow(a[r][c], -1, p) if p else 1 / a[r][c]
        a[r] = [(v * inv) % p for v in a[r]] if p else [v * inv for v in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                if p:
                    a[i] = [(vi - f * vr) % p for vi, vr in zip(a[i], a[r])]
                else:
                    a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the strictly increasing pivot columns."""
    a = _to_lists(m)
    pivots = _rref_lists(a, m.field)
    if not a:
        return m, pivots
    return Matrix.from_rows(m.field, a), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class SplitIdempotent:
    """``q = i o p`` with ``p o i = id``; ``i`` is the inclusion of the image."""

    q: Morphism
    p: Morphism
    i: Morphism
    rank: int

    @property
    def image(self) -> ObjectSig:
        return self.i.dom


def split_idempotent(q: Morphism, name: str = "I") -> SplitIdempotent:
    """CR factorization of an idempotent: i = pivot columns of q, p = nonzero rref rows."""
    if q.mat.shape[0] != q.mat.shape[1]:
        raise NotIdempotentError(f"idempotent must be square, got {q.mat.shape}")
    qq = q.mat @ q.mat
    w = qq.first_difference(q.mat)
    if w is not None:
        raise NotIdempotentError(
            f"q o q differs from q at entry ({w[0]}, {w[1]}): {w[2]} != {w[3]}", w
        )
    reduced, pivots = rref(q.mat)
    r = len(pivots)
    if r == 0:
        raise NotIdempotentError("zero idempotent has no nonzero image to split off")
    image = obj(name, r)
    i = Morphism(image, q.cod, q.mat.columns(pivots))
    p = Morphism(q.dom, image, reduced.rows_at(range(r)))
    assert i.mat @ p.mat == q.mat
    assert p.mat @ i.mat == Matrix.identity(q.field, r)
    return SplitIdempotent(q, p, i, r)


def mat_inverse(f: Morphism) -> Morphism:
    n, m = f.mat.shape
    if n != m:
        raise SingularError(f"only square maps can be inverted, got {f.mat.shape}")
    a = _to_lists(f.mat)
    one = 1 if f.field.is_prime else Fraction(1)
    zero = 0 if f.field.is_prime else Fraction(0)
    for i, row in enumerate(a):
        row.extend(one if j == i else zero for j in range(n))
    pivots = _rref_lists(a, f.field)
    if pivots[:n] != list(range(n)):
        r = len([c for c in pivots if c < n])
        raise SingularError(f"map is singular (rank {r} < {n})", r)
    inv = Matrix.from_rows(f.field, [row[n:] for row in a])
    return Morphism(f.cod, f.dom, inv)
