"""Finite groups as explicit multiplication tables, plus the built-in zoo.

Element orderings of the built-ins are part of the public format because
every structure matrix depends on them:

* ``Cn``: ``e, a, a2, ..., a{n-1}``
* ``C2xC2``: ``e, a, b, ab``
* ``S3``: ``e, (123), (132), (12), (13), (23)``; permutations compose right to left
* ``D4``: ``e, r, r2, r3, s, rs, r2s, r3s`` with ``s r s = r^-1``
* ``Q8``: ``1, i, j, k, -1, -i, -j, -k``
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Callable, Sequence

from .errors import GroupTableError


@dataclass(frozen=True)
class GroupTable:
    """A finite group; ``table[i][j]`` is the index of ``names[i] * names[j]``."""

    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.names)
        if n == 0:
            raise GroupTableError("a group needs at least one element")
        if len(set(self.names)) != n:
            raise GroupTableError("element names must be distinct")
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise GroupTableError(f"table must be {n}x{n}")
        if any(not (0 <= v < n) for r in self.table for v in r):
            raise GroupTableError("table entries must be element indices")
        t = self.table
        e = self.identity
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupTableError(
                    f"not associative at ({self.names[a]}, {self.names[b]}, {self.names[c]})"
                )
        for a in range(n):
            if not any(t[a][b] == e and t[b][a] == e for b in range(n)):
                raise GroupTableError(f"{self.names[a]} has no inverse")

    @property
    def order(self) -> int:
        return len(self.names)

    @property
    def identity(self) -> int:
        n = len(self.names)
        for e in range(n):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n)):
                return e
        raise GroupTableError("no two-sided identity element")

    @property
    def inverse(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(next(b for b in range(self.order) if self.table[a][b] == e) for a in range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise GroupTableError(f"unknown element {name!r}") from None

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(n))

    def opposite(self) -> GroupTable:
        n = self.order
        return GroupTable(self.names, tuple(tuple(self.table[b][a] for b in range(n)) for a in range(n)))

    def is_homomorphism(self, other: GroupTable, f: Sequence[int]) -> bool:
        """Whether the index map ``f`` from this group to ``other`` preserves products."""
        n = self.order
        return all(other.table[f[a]][f[b]] == f[self.table[a][b]] for a in range(n) for b in range(n))


def from_function(names: Sequence[str], op: Callable[[int, int], int]) -> GroupTable:
    n = len(names)
    return GroupTable(tuple(names), tuple(tuple(op(a, b) for b in range(n)) for a in range(n)))


def cyclic(n: int) -> GroupTable:
    names = ["e", "a"] + [f"a{k}" for k in range(2, n)]
    return from_function(names[:n], lambda a, b: (a + b) % n)


def klein() -> GroupTable:
    # e=00, a=10, b=01, ab=11 as bit vectors
    return from_function(["e", "a", "b", "ab"], lambda a, b: a ^ b)


def symmetric3() -> GroupTable:
    # permutations of (1,2,3) written as images of 1,2,3
    perms = [(1, 2, 3), (2, 3, 1), (3, 1, 2), (2, 1, 3), (3, 2, 1), (1, 3, 2)]
    names = ["e", "(123)", "(132)", "(12)", "(13)", "(23)"]

    def op(a: int, b: int) -> int:
        p, q = perms[a], perms[b]
        return perms.index(tuple(p[q[k] - 1] for k in range(3)))

    return from_function(names, op)


def dihedral4() -> GroupTable:
    # index k + 4*s stands for r^k s^s
    names = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"]

    def op(a: int, b: int) -> int:
        ka, sa = a % 4, a // 4
        kb, sb = b % 4, b // 4
        k = (ka + (-kb if sa else kb)) % 4
        return k + 4 * ((sa + sb) % 2)

    return from_function(names, op)


def quaternion() -> GroupTable:
    names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    # unit products of 1, i, j, k as (sign, unit)
    unit = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def op(a: int, b: int) -> int:
        sa, ua = (-1 if a >= 4 else 1), a % 4
        sb, ub = (-1 if b >= 4 else 1), b % 4
        s, u = unit[(ua, ub)]
        return u + (4 if s * sa * sb < 0 else 0)

    return from_function(names, op)


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """``G x H`` with index ``i * |H| + j`` (left-major, matching tensor order)."""
    m = h.order
    names = [f"({a},{b})" for a in g.names for b in h.names]
    return from_function(names, lambda x, y: g.mul(x // m, y // m) * m + h.mul(x % m, y % m))


_BUILTINS: dict[str, Callable[[], GroupTable]] = {
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C2xC2": klein,
    "C6": lambda: cyclic(6),
    "S3": symmetric3,
    "D4": dihedral4,
    "Q8": quaternion,
}

BUILTIN_GROUPS = tuple(_BUILTINS)


def builtin(name: str) -> GroupTable:
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise GroupTableError(f"unknown builtin group {name!r}; choose from {', '.join(BUILTIN_GROUPS)}") from None


def homomorphisms(g: GroupTable, h: GroupTable):
    """All group homomorphisms G -> H as index tuples (brute force, small groups only)."""
    for f in product(range(h.order), repeat=g.order):
        if g.is_homomorphism(h, f):
            yield f


def all_maps(g: GroupTable, h: GroupTable):
    return product(range(h.order), repeat=g.order)


def isomorphic_by(g: GroupTable, h: GroupTable) -> tuple[int, ...] | None:
    """Some isomorphism G -> H, or None."""
    if g.order != h.order:
        return None
    for f in permutations(range(h.order)):
        if g.is_homomorphism(h, f):
            return f
    return None
