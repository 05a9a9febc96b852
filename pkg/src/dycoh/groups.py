"""Finite groups as multiplication tables.

Element order inside every preset is fixed (documented per preset) so that
all downstream basis orderings are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

__all__ = [
    "FiniteGroup",
    "GroupAxiomError",
    "make_group",
    "cyclic",
    "dihedral",
    "symmetric",
    "klein_four",
    "direct_product",
    "trivial_group",
    "conjugate",
]


class GroupAxiomError(ValueError):
    """A multiplication table failed a group axiom; ``witness`` names the culprit."""

    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    names: tuple[str, ...]
    table: np.ndarray
    identity: int = field(init=False)
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        t = np.asarray(self.table, dtype=np.int64)
        n = len(self.names)
        if t.shape != (n, n):
            raise GroupAxiomError(f"table shape {t.shape} does not match {n} labels", None)
        if n == 0:
            raise GroupAxiomError("empty group", None)
        if t.min() < 0 or t.max() >= n:
            raise GroupAxiomError("table entries out of range", None)
        # (ab)c == a(bc), checked for every triple at once
        left = t[t[:, :, None], np.arange(n)[None, None, :]]
        right = t[np.arange(n)[:, None, None], t[None, :, :]]
        bad = np.argwhere(left != right)
        if bad.size:
            a, b, c = (int(v) for v in bad[0])
            raise GroupAxiomError(f"table is not associative at ({a}, {b}, {c})", (a, b, c))
        e = None
        for i in range(n):
            if np.array_equal(t[i], np.arange(n)) and np.array_equal(t[:, i], np.arange(n)):
                e = i
                break
        if e is None:
            raise GroupAxiomError("no identity element", None)
        inv = []
        for i in range(n):
            js = np.nonzero((t[i] == e) & (t[:, i] == e))[0]
            if js.size == 0:
                raise GroupAxiomError(f"no inverse for element {i}", i)
            inv.append(int(js[0]))
        t.setflags(write=False)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "identity", e)
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def prod(self, elems) -> int:
        acc = self.identity
        for g in elems:
            acc = int(self.table[acc, g])
        return acc

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conjugate(self, g: int, x: int) -> int:
        """Index of x g x^-1."""
        return int(self.table[self.table[x, g], self.inverse[x]])

    def index(self, name: str) -> int:
        return self.names.index(name)

    def element_order(self, a: int) -> int:
        k, acc = 1, a
        while acc != self.identity:
            acc = self.mul(acc, a)
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def conjugacy_class(self, g: int) -> list[int]:
        return sorted({self.conjugate(g, x) for x in range(self.order)})

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, names={list(self.names)})"


def conjugate(g: int, x: int, grp: FiniteGroup) -> int:
    return grp.conjugate(g, x)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(("e",), np.zeros((1, 1), dtype=np.int64))


def cyclic(n: int) -> FiniteGroup:
    """Z/n with element i = a^i."""
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    names = tuple("e" if i == 0 else ("a" if i == 1 else f"a^{i}") for i in range(n))
    t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(names, t)


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: index k -> r^k, index n+k -> r^k s."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")

    def split(i):
        return i % n, i // n

    size = 2 * n
    t = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        a, b = split(i)
        for j in range(size):
            c, d = split(j)
            k = (a + (c if b == 0 else -c)) % n
            t[i, j] = k + n * ((b + d) % 2)
    names = []
    for i in range(size):
        k, s = split(i)
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        names.append((r + ("s" if s else "")) or "e")
    return FiniteGroup(tuple(names), t)


def _cycle_name(perm: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        cycles.append("(" + "".join(cyc) + ")")
    return "".join(cycles) or "e"


def symmetric(n: int) -> FiniteGroup:
    """S_n; elements are permutations of {0..n-1} in lexicographic one-line order.

    Labels use 1-based cycle notation and (στ)(x) = σ(τ(x)).
    """
    perms = list(permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}
    t = np.zeros((len(perms), len(perms)), dtype=np.int64)
    for i, s in enumerate(perms):
        for j, u in enumerate(perms):
            t[i, j] = pos[tuple(s[u[x]] for x in range(n))]
    return FiniteGroup(tuple(_cycle_name(p) for p in perms), t)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    """G x H with index i*|H| + j for (g_i, h_j)."""
    m = h.order
    idx = [(i, j) for i, j in product(range(g.order), range(h.order))]
    t = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            t[a, b] = g.mul(i, k) * m + h.mul(j, l)
    names = tuple(f"({g.names[i]},{h.names[j]})" for i, j in idx)
    return FiniteGroup(names, t)


def klein_four() -> FiniteGroup:
    """Z/2 x Z/2 with elements e, a, b, ab."""
    base = direct_product(cyclic(2), cyclic(2))
    return FiniteGroup(("e", "b", "a", "ab"), base.table)


_PRESETS = {
    "trivial": lambda d: trivial_group(),
    "cyclic": lambda d: cyclic(int(d["n"])),
    "dihedral": lambda d: dihedral(int(d["n"])),
    "symmetric": lambda d: symmetric(int(d.get("n", 3))),
    "klein_four": lambda d: klein_four(),
    "product": lambda d: _product_of(d["factors"]),
}


def _product_of(factors) -> FiniteGroup:
    groups = [make_group(f) for f in factors]
    if not groups:
        return trivial_group()
    acc = groups[0]
    for g in groups[1:]:
        acc = direct_product(acc, g)
    return acc


def make_group(source) -> FiniteGroup:
    """Build a validated group from a preset descriptor or an explicit table.

    ``{"preset": "cyclic", "n": 2}``, ``{"preset": "symmetric", "n": 3}``,
    ``{"preset": "klein_four"}``, ``{"preset": "product", "factors": [...]}``
    or ``{"elements": [...], "table": [[...]]}``.
    """
    if isinstance(source, FiniteGroup):
        return source
    if "preset" in source:
        name = source["preset"]
        if name not in _PRESETS:
            raise KeyError(f"unknown group preset {name!r}")
        return _PRESETS[name](source)
    names = tuple(str(x) for x in source["elements"])
    table = source["table"]
    if len(table) != len(names) or any(len(row) != len(names) for row in table):
        raise GroupAxiomError("table must be square with one row per label", None)
    return FiniteGroup(names, np.array(table, dtype=np.int64))
