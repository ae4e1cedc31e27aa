"""Concrete models of a fundamental group.

Three representations, each answering only the questions it can answer
exactly:

* :class:`FiniteTableGroup` -- a validated Cayley table;
* :class:`FGAbelianGroup` -- ``Z^rank + Z/t1 + ... + Z/tk``;
* :class:`SelfCentralizingZ` -- an opaque group containing a distinguished
  element ``c`` of infinite order whose centralizer is exactly ``<c>``
  (e.g. ``c`` the circle factor in ``M # S^1 x S^3``).

Elements are plain Python values: an ``int`` index for tables, a tuple of
ints for abelian groups (free coordinates first, torsion coordinates
reduced), and an ``int`` exponent ``k`` meaning ``c^k`` for the opaque model.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

DEFAULT_MAX_ORDER = 2048


class UnsupportedQuery(Exception):
    """The group representation cannot answer this question exactly."""


class ValidationError(ValueError):
    """Input data failed validation; ``violations`` lists every problem found."""

    def __init__(self, violations: Sequence[str], where: str = ""):
        self.violations = list(violations)
        self.where = where
        head = f"{where}: " if where else ""
        super().__init__(head + "; ".join(self.violations))


def max_order() -> int:
    return int(os.environ.get("FLC_MAX_ORDER", DEFAULT_MAX_ORDER))


@dataclass
class SubgroupDescriptor:
    parent: Any
    generators: list
    enumerable: bool
    elements: list | None = None
    description: str = ""

    def __contains__(self, g) -> bool:
        if self.elements is not None:
            return g in self.elements
        raise UnsupportedQuery("membership in a non-enumerable subgroup")


class FiniteTableGroup:
    """A finite group given by its multiplication table.

    ``table[a][b]`` is the index of ``a * b``.  Construction validates the
    table completely (Latin square, associativity, identity, inverses) and
    raises :class:`ValidationError` otherwise.
    """

    kind = "finite_table"
    is_finite = True

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                 cap: int | None = None):
        cap = max_order() if cap is None else cap
        problems = self.table_violations(table, cap)
        if problems:
            raise ValidationError(problems, "pi1 table")
        self.table = tuple(tuple(int(x) for x in r) for r in table)
        self.order = len(self.table)
        self.identity = next(e for e in range(self.order) if self.table[e] == tuple(range(self.order)))
        self.inverse = tuple(self.table[a].index(self.identity) for a in range(self.order))
        if names is not None:
            names = tuple(str(x) for x in names)
            if len(names) != self.order or len(set(names)) != self.order:
                raise ValidationError(["names must be distinct, one per element"], "pi1 names")
        self.names = names

    @staticmethod
    def table_violations(table, cap: int = DEFAULT_MAX_ORDER) -> list[str]:
        n = len(table)
        if n == 0:
            return ["empty table"]
        if n > cap:
            return [f"order {n} exceeds the cap {cap} (set FLC_MAX_ORDER to raise it)"]
        try:
            T = np.array(table, dtype=np.int64)
        except ValueError:
            return ["table is not rectangular"]
        if T.shape != (n, n):
            return [f"table has shape {T.shape}, expected ({n}, {n})"]
        if T.min() < 0 or T.max() >= n:
            return ["table entries must be indices in range(order)"]
        out = []
        full = np.arange(n)
        for a in range(n):
            if not np.array_equal(np.sort(T[a]), full):
                out.append(f"row {a} is not a permutation (not a Latin square)")
            if not np.array_equal(np.sort(T[:, a]), full):
                out.append(f"column {a} is not a permutation (not a Latin square)")
        if out:
            return out
        for a in range(n):
            # (a*b)*c versus a*(b*c) for all b, c at once
            lhs = T[T[a]]
            rhs = T[a][T]
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                b, c = (int(x) for x in bad[0])
                out.append(f"associativity fails on ({a}, {b}, {c})")
                break
        ids = [e for e in range(n) if np.array_equal(T[e], full) and np.array_equal(T[:, e], full)]
        if not ids:
            out.append("no two-sided identity")
        return out

    # -- queries -----------------------------------------------------------
    def check(self, a) -> int:
        if isinstance(a, bool) or not isinstance(a, (int, np.integer)) or not 0 <= a < self.order:
            raise TypeError(f"{a!r} is not an element index of a group of order {self.order}")
        return int(a)

    def elements(self) -> list[int]:
        return list(range(self.order))

    def product(self, a, b) -> int:
        return self.table[self.check(a)][self.check(b)]

    def inv(self, a) -> int:
        return self.inverse[self.check(a)]

    def power(self, a, k: int) -> int:
        a = self.check(a)
        if k < 0:
            a, k = self.inverse[a], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def order_of(self, a) -> int:
        a = self.check(a)
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def commutes(self, a, b) -> bool:
        return self.product(a, b) == self.product(b, a)

    def centralizer(self, c) -> SubgroupDescriptor:
        c = self.check(c)
        els = [g for g in range(self.order) if self.table[g][c] == self.table[c][g]]
        return SubgroupDescriptor(self, els, True, els, f"centralizer of {self.label(c)}, order {len(els)}")

    def conjugacy_classes(self) -> list[list[int]]:
        seen = [False] * self.order
        classes = []
        for x in range(self.order):
            if seen[x]:
                continue
            cls = sorted({self.table[self.table[y][x]][self.inverse[y]] for y in range(self.order)})
            for z in cls:
                seen[z] = True
            classes.append(cls)
        return classes

    def generated_subgroup(self, gens: Sequence[int]) -> list[int]:
        found = {self.identity}
        frontier = [self.identity]
        gens = [self.check(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(found)

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily by index."""
        gens: list[int] = []
        span = {self.identity}
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = set(self.generated_subgroup(gens))
        return gens

    def is_abelian(self) -> bool:
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(a))

    def label(self, a) -> str:
        return self.names[a] if self.names else str(a)

    def index_of_name(self, name: str) -> int:
        if self.names and name in self.names:
            return self.names.index(name)
        raise KeyError(name)

    def describe(self) -> str:
        return "1" if self.order == 1 else f"finite group of order {self.order}"

    def __eq__(self, other):
        return isinstance(other, FiniteTableGroup) and self.table == other.table and self.names == other.names

    def __hash__(self):
        return hash(self.table)


class FGAbelianGroup:
    """``Z^rank + Z/torsion[0] + ...``; the torsion list need not be in invariant-factor form."""

    kind = "fg_abelian"

    def __init__(self, rank: int, torsion: Sequence[int] = ()):
        problems = []
        if rank < 0:
            problems.append("rank must be nonnegative")
        for t in torsion:
            if int(t) < 2:
                problems.append(f"torsion entry {t} must be >= 2")
        if problems:
            raise ValidationError(problems, "pi1")
        self.rank = int(rank)
        self.torsion = tuple(int(t) for t in torsion)
        self._table = None
        self._elements = None

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.torsion) if self.is_finite else None

    def moduli(self) -> tuple[int, ...]:
        """Per-coordinate modulus, 0 for free coordinates."""
        return (0,) * self.rank + self.torsion

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(x) % m if m else int(x) for x, m in zip(v, self.moduli()))

    def check(self, a) -> tuple[int, ...]:
        if not isinstance(a, (tuple, list)) or len(a) != self.ngens:
            raise TypeError(f"{a!r} is not an element of Z^{self.rank} + torsion {list(self.torsion)}")
        return self.reduce(a)

    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == j) for j in range(self.ngens)) for i in range(self.ngens)]

    def generators(self) -> list[tuple[int, ...]]:
        return self.basis()

    def product(self, a, b):
        a, b = self.check(a), self.check(b)
        return self.reduce([x + y for x, y in zip(a, b)])

    def inv(self, a):
        return self.reduce([-x for x in self.check(a)])

    def power(self, a, k: int):
        return self.reduce([k * x for x in self.check(a)])

    def order_of(self, a) -> int | None:
        a = self.check(a)
        if any(a[: self.rank]):
            return None
        out = 1
        for x, m in zip(a[self.rank:], self.torsion):
            out = math.lcm(out, m // math.gcd(x, m))
        return out

    def commutes(self, a, b) -> bool:
        self.check(a), self.check(b)
        return True

    def elements(self) -> list[tuple[int, ...]]:
        if not self.is_finite:
            raise UnsupportedQuery("element enumeration of an infinite abelian group")
        if self._elements is None:
            self._elements = [tuple(v) for v in itertools.product(*(range(t) for t in self.torsion))]
        return self._elements

    def index(self, a) -> int:
        """Position of ``a`` in :meth:`elements` (mixed-radix, last coordinate fastest)."""
        a = self.check(a)
        i = 0
        for x, t in zip(a, self.torsion):
            i = i * t + x
        return i

    def to_table(self) -> FiniteTableGroup:
        if self._table is None:
            els = self.elements()
            table = [[self.index(self.product(a, b)) for b in els] for a in els]
            self._table = FiniteTableGroup(table, names=[self.label(e) for e in els])
        return self._table

    def centralizer(self, c) -> SubgroupDescriptor:
        self.check(c)
        els = self.elements() if self.is_finite else None
        return SubgroupDescriptor(self, self.basis(), self.is_finite, els, f"{self.describe()} (whole group)")

    def conjugacy_classes(self):
        if self.is_finite:
            return [[e] for e in self.elements()]
        return f"elements of {self.describe()}, one class each"

    def is_abelian(self) -> bool:
        return True

    def label(self, a) -> str:
        return "(" + ",".join(str(x) for x in self.check(a)) + ")"

    def describe(self) -> str:
        return describe_abelian(self.rank, self.torsion)

    def __eq__(self, other):
        return isinstance(other, FGAbelianGroup) and (self.rank, self.torsion) == (other.rank, other.torsion)

    def __hash__(self):
        return hash((self.rank, self.torsion))


class SelfCentralizingZ:
    """Opaque group with a distinguished element ``c`` of infinite order, ``C(c) = <c>``.

    Only powers of ``c`` are representable; element ``k`` means ``c^k``.
    """

    kind = "self_centralizing_z"
    is_finite = False
    order = None
    identity = 0

    def __init__(self, label: str = "pi1"):
        self.label_text = label

    def check(self, a) -> int:
        if isinstance(a, bool) or not isinstance(a, int):
            raise TypeError(f"{a!r} is not a power of c")
        return a

    def product(self, a, b):
        return self.check(a) + self.check(b)

    def inv(self, a):
        return -self.check(a)

    def power(self, a, k: int):
        return self.check(a) * k

    def order_of(self, a):
        return 1 if self.check(a) == 0 else None

    def commutes(self, a, b) -> bool:
        self.check(a), self.check(b)
        return True

    def centralizer(self, c) -> SubgroupDescriptor:
        if self.check(c) == 0:
            raise UnsupportedQuery("centralizer of the identity in an opaque group")
        # Modelling assumption: powers c^k (k != 0) are self-centralizing too,
        # as for the free factor generator of G * Z.
        return SubgroupDescriptor(self, [1], False, None, "<c> = Z")

    def conjugacy_classes(self):
        raise UnsupportedQuery("conjugacy classes of an opaque group")

    def elements(self):
        raise UnsupportedQuery("element enumeration of an opaque group")

    def is_abelian(self) -> bool:
        raise UnsupportedQuery("commutativity of an opaque group")

    def label(self, a) -> str:
        a = self.check(a)
        return "1" if a == 0 else ("c" if a == 1 else f"c^{a}")

    def describe(self) -> str:
        return f"{self.label_text} (opaque; c self-centralizing of infinite order)"

    def __eq__(self, other):
        return isinstance(other, SelfCentralizingZ) and self.label_text == other.label_text

    def __hash__(self):
        return hash(self.label_text)


GroupModel = FiniteTableGroup | FGAbelianGroup | SelfCentralizingZ


def describe_abelian(rank: int, torsion: Sequence[int]) -> str:
    parts = ([f"Z^{rank}"] if rank > 1 else ["Z"] if rank == 1 else []) + [f"Z/{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"


# -- the operation surface ---------------------------------------------------

def product(G: GroupModel, a, b):
    return G.product(a, b)


def centralizer(G: GroupModel, c) -> SubgroupDescriptor:
    return G.centralizer(c)


def conjugacy_classes(G: GroupModel):
    return G.conjugacy_classes()


def commutes(G: GroupModel, a, b) -> bool:
    return G.commutes(a, b)


def is_self_centralizing(G: GroupModel, c) -> bool:
    """True when ``C(c) = <c>`` and ``c`` has infinite order."""
    if isinstance(G, SelfCentralizingZ):
        # C(c^k) = <c>, which is <c^k> only for k = +-1
        return abs(G.check(c)) == 1
    if isinstance(G, FGAbelianGroup):
        return G.rank == 1 and not G.torsion and abs(G.check(c)[0]) == 1
    return False


# -- constructors for common finite groups -----------------------------------

def from_permutations(perms: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> FiniteTableGroup:
    """Table of a group given as a complete list of permutations (composition left-then-right)."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    # (p * q)(x) = q(p(x)): apply p first
    table = [[index[tuple(q[p[x]] for x in range(len(p)))] for q in perms] for p in perms]
    return FiniteTableGroup(table, names)


def cyclic(n: int) -> FiniteTableGroup:
    return FiniteTableGroup([[(a + b) % n for b in range(n)] for a in range(n)])


def trivial_group() -> FiniteTableGroup:
    return FiniteTableGroup([[0]], names=["1"])


def direct_product(G: FiniteTableGroup, H: FiniteTableGroup) -> FiniteTableGroup:
    n, m = G.order, H.order
    table = [
        [G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(n * m)]
        for a in range(n * m)
    ]
    return FiniteTableGroup(table)


def symmetric(n: int) -> FiniteTableGroup:
    perms = sorted(itertools.permutations(range(n)))
    return from_permutations(perms)


def alternating(n: int) -> FiniteTableGroup:
    def even(p):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        return inv % 2 == 0

    return from_permutations([p for p in sorted(itertools.permutations(range(n))) if even(p)])


def dihedral(n: int) -> FiniteTableGroup:
    """Symmetries of the n-gon, order 2n."""
    perms = []
    for k in range(n):
        perms.append(tuple((x + k) % n for x in range(n)))
    for k in range(n):
        perms.append(tuple((k - x) % n for x in range(n)))
    return from_permutations(perms)


def quaternion() -> FiniteTableGroup:
    """Q8 with elements 1, -1, i, -i, j, -j, k, -k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # units 1, i, j, k are 0..3; products as (sign, unit)
    mult = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def decode(i):
        return (1 if i % 2 == 0 else -1), i // 2

    def encode(s, u):
        return 2 * u + (0 if s == 1 else 1)

    table = []
    for a in range(8):
        sa, ua = decode(a)
        row = []
        for b in range(8):
            sb, ub = decode(b)
            s, u = mult[(ua, ub)]
            row.append(encode(sa * sb * s, u))
        table.append(row)
    return FiniteTableGroup(table, names)
