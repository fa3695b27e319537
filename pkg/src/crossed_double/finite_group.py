"""Finite groups given by multiplication tables."""

from __future__ import annotations

from itertools import permutations
from typing import List, Optional, Sequence

from .errors import NotAGroup


class FiniteGroup:
    """A finite group on the indices 0..n-1.

    The identity is found from the table; it is usually, but not necessarily,
    index 0.
    """

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(self.order))
        self.identity = 0
        self.inverses = tuple(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, beta: int, alpha: int) -> int:
        """beta alpha beta^-1."""
        return self.table[self.table[beta][alpha]][self.inverses[beta]]

    def prod(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = self.table[out][x]
        return out

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in self.elements() for b in self.elements())

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table], "names": list(self.names)}

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.table == other.table and self.names == other.names

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"FiniteGroup(order={self.order}, names={list(self.names)})"


def make_group(table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines."""
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise NotAGroup(f"row {i} has length {len(row)}, expected {n}", witness=(i,))
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
                raise NotAGroup(f"entry ({i},{j}) = {x!r} is not an index", witness=(i, j))
    if names is not None and len(names) != n:
        raise NotAGroup(f"{len(names)} names for {n} elements")
    g = FiniteGroup(table, names)
    t = g.table
    ident = next((e for e in range(n) if all(t[e][a] == a and t[a][e] == a for a in range(n))), None)
    if ident is None:
        raise NotAGroup("no identity element", witness=None)
    g.identity = ident
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            for c in range(n):
                if t[ab][c] != t[a][t[b][c]]:
                    raise NotAGroup(f"not associative at {(a, b, c)}", witness=(a, b, c))
    inverses: List[int] = []
    for a in range(n):
        b = next((b for b in range(n) if t[a][b] == ident and t[b][a] == ident), None)
        if b is None:
            raise NotAGroup(f"element {a} has no inverse", witness=(a,))
        inverses.append(b)
    g.inverses = tuple(inverses)
    return g


def trivial_group() -> FiniteGroup:
    return make_group([[0]], ["1"])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be positive")
    names = ["1"] + [f"a^{k}" if k > 1 else "a" for k in range(1, n)]
    return make_group([[(i + j) % n for j in range(n)] for i in range(n)], names)


def symmetric_group_3() -> FiniteGroup:
    """S3 on permutations of (0,1,2); index 0 is the identity.

    Composition is (p*q)(x) = p(q(x)).
    """
    perms = sorted(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms] for p in perms]
    names = ["".join(str(v + 1) for v in p) for p in perms]
    return make_group(table, names)


def group_from_json(obj: dict) -> FiniteGroup:
    try:
        table = obj["table"]
    except (KeyError, TypeError):
        raise NotAGroup("group document lacks a table")
    if "order" in obj and obj["order"] != len(table):
        raise NotAGroup(f"order {obj['order']} does not match table size {len(table)}")
    return make_group(table, obj.get("names"))


def builtin_group(name: str) -> FiniteGroup:
    key = name.strip().lower()
    if key in ("1", "trivial", "e"):
        return trivial_group()
    if key == "s3":
        return symmetric_group_3()
    for prefix in ("z", "c", "z/"):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return cyclic_group(int(key[len(prefix):]))
    raise KeyError(f"unknown group {name!r}")
