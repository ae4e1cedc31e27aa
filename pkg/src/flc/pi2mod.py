"""pi_2 as a finitely presented abelian group with a pi_1-action.

Elements of pi_2 are integer vectors in ``Z^ngens``; they are read modulo
the row span of the relation matrix.  Group elements act on column vectors:
``g . b = A_g @ b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .groups import (
    FGAbelianGroup,
    FiniteTableGroup,
    SelfCentralizingZ,
    UnsupportedQuery,
    ValidationError,
    describe_abelian,
)
from .intalg import (
    IntMatrix,
    kernel_mod_lattice,
    smith_normal_form,
    solve_int,
    subquotient,
    vstack,
)


class PresentedAbelianGroup:
    """``Z^ngens / rowspan(relations)`` with its canonical form."""

    def __init__(self, ngens: int, relations: IntMatrix | Sequence[Sequence[int]] = ()):
        if not isinstance(relations, IntMatrix):
            relations = IntMatrix.from_rows(relations, cols=ngens)
        if relations.cols != ngens:
            raise ValueError(f"relations have {relations.cols} columns for {ngens} generators")
        self.ngens = ngens
        self.relations = relations

    @cached_property
    def _snf(self):
        return smith_normal_form(self.relations)

    @cached_property
    def moduli(self) -> tuple[int, ...]:
        """Modulus of each canonical coordinate: 1 trivial, 0 free, d > 1 torsion."""
        diag = self._snf.D.diagonal()
        return tuple(diag[i] if i < len(diag) else 0 for i in range(self.ngens))

    @property
    def canonical_form(self) -> tuple[int, tuple[int, ...]]:
        """``(free rank, invariant factors > 1)``."""
        rank = sum(1 for d in self.moduli if d == 0)
        return rank, tuple(d for d in self.moduli if d > 1)

    def describe(self) -> str:
        return describe_abelian(*self.canonical_form)

    def is_trivial(self) -> bool:
        return self.canonical_form == (0, ())

    def coords(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of ``x``, reduced, over the nontrivial summands."""
        if len(x) != self.ngens:
            raise ValueError(f"vector of length {len(x)} in a group on {self.ngens} generators")
        # rowspan(R) = V^-T D^T Z^k, so V^T x is diagonal coordinates
        y = self._snf.V.T.apply(x)
        return tuple(v % d if d else v for v, d in zip(y, self.moduli) if d != 1)

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.coords(x))

    def canonical_matrix(self, A: IntMatrix) -> IntMatrix:
        """The endomorphism ``A`` (assumed to preserve the relations) in canonical coordinates."""
        M = self._snf.V.T @ A @ self._snf.V_inv.T
        keep = [i for i, d in enumerate(self.moduli) if d != 1]
        rows = []
        for i in keep:
            d = self.moduli[i]
            rows.append([M[i, j] % d if d else M[i, j] for j in keep])
        return IntMatrix.from_rows(rows, cols=len(keep))

    def __eq__(self, other):
        return isinstance(other, PresentedAbelianGroup) and self.canonical_form == other.canonical_form

    def __hash__(self):
        return hash(self.canonical_form)

    def __repr__(self):
        return f"PresentedAbelianGroup({self.describe()})"


def abelian_from_invariants(rank: int, torsion: Sequence[int]) -> PresentedAbelianGroup:
    n = rank + len(torsion)
    rels = [[t if j == rank + i else 0 for j in range(n)] for i, t in enumerate(torsion)]
    return PresentedAbelianGroup(n, IntMatrix.from_rows(rels, cols=n))


def direct_sum(a: PresentedAbelianGroup, b: PresentedAbelianGroup) -> PresentedAbelianGroup:
    n = a.ngens + b.ngens
    rows = [list(a.relations.row(i)) + [0] * b.ngens for i in range(a.relations.rows)]
    rows += [[0] * a.ngens + list(b.relations.row(i)) for i in range(b.relations.rows)]
    return PresentedAbelianGroup(n, IntMatrix.from_rows(rows, cols=n))


@dataclass(frozen=True)
class SubmoduleDescriptor:
    """A subgroup of a presented group, given by generators in ``Z^ngens``.

    ``orders[k]`` is the order of ``generators[k]`` in the diagonal
    decomposition (0 = infinite); the subgroup is their direct sum.
    """

    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]

    @property
    def canonical_form(self) -> tuple[int, tuple[int, ...]]:
        return sum(1 for o in self.orders if o == 0), tuple(o for o in self.orders if o)

    def describe(self) -> str:
        return describe_abelian(*self.canonical_form)


class Pi2Module:
    """pi_2 X with its pi_1-action.

    ``action`` maps keys to ngens x ngens matrices:

    * finite table pi_1: element index -> matrix (every element);
    * abelian pi_1: generator index -> matrix (every generator);
    * opaque pi_1: the single key ``"c"``.

    An empty mapping means the trivial action.
    """

    def __init__(self, pi1, ngens: int, relations=(), action: Mapping | None = None):
        self.pi1 = pi1
        self.ngens = int(ngens)
        self.group = PresentedAbelianGroup(self.ngens, relations)
        self.relations = self.group.relations
        action = dict(action or {})
        self.action = {k: (m if isinstance(m, IntMatrix) else IntMatrix.from_rows(m, cols=self.ngens))
                       for k, m in action.items()}
        self._inverse_cache: dict = {}

    @property
    def trivial_action(self) -> bool:
        return not self.action

    def _generator_matrix(self, key) -> IntMatrix:
        if not self.action:
            return IntMatrix.identity(self.ngens)
        try:
            return self.action[key]
        except KeyError:
            raise ValidationError([f"no action matrix for {key!r}"], "pi2 action") from None

    def inverse_mod_lattice(self, A: IntMatrix) -> IntMatrix:
        """Some B with ``A B == I`` modulo the relations; ValidationError if none exists."""
        cached = self._inverse_cache.get(A)
        if cached is not None:
            return cached
        n = self.ngens
        R = self.relations
        M = IntMatrix.from_rows([list(A.row(i)) + list(R.col(i)) for i in range(n)], cols=n + R.rows)
        cols = []
        for j in range(n):
            e = [int(i == j) for i in range(n)]
            sol = solve_int(M, e)
            if sol is None:
                raise ValidationError([f"action matrix {A.to_rows()} is not invertible on pi2"], "pi2 action")
            cols.append(sol[:n])
        B = IntMatrix.from_rows(cols, cols=n).T if n else IntMatrix.zeros(0, 0)
        self._inverse_cache[A] = B
        return B

    def _matrix_power(self, A: IntMatrix, k: int) -> IntMatrix:
        if k < 0:
            A, k = self.inverse_mod_lattice(A), -k
        out = IntMatrix.identity(self.ngens)
        while k:
            if k & 1:
                out = out @ A
            A = A @ A
            k >>= 1
        return out

    def action_matrix(self, g) -> IntMatrix:
        """The matrix of ``g`` acting on ``Z^ngens`` (well defined modulo the relations)."""
        G = self.pi1
        if isinstance(G, FiniteTableGroup):
            return self._generator_matrix(G.check(g))
        if isinstance(G, FGAbelianGroup):
            g = G.check(g)
            out = IntMatrix.identity(self.ngens)
            for i, k in enumerate(g):
                if k:
                    out = out @ self._matrix_power(self._generator_matrix(i), k)
            return out
        if isinstance(G, SelfCentralizingZ):
            return self._matrix_power(self._generator_matrix("c"), G.check(g))
        raise UnsupportedQuery(f"action of {type(G).__name__}")

    def congruent(self, A: IntMatrix, B: IntMatrix) -> bool:
        D = A - B
        return all(self.group.is_zero(D.col(j)) for j in range(self.ngens))

    def preserves_lattice(self, A: IntMatrix) -> bool:
        return all(self.group.is_zero(A.apply(self.relations.row(i))) for i in range(self.relations.rows))

    def add(self, a, b) -> tuple[int, ...]:
        return tuple(x + y for x, y in zip(a, b))

    def act(self, g, b) -> tuple[int, ...]:
        return self.action_matrix(g).apply(b)


def _expected_keys(G) -> list:
    if isinstance(G, FiniteTableGroup):
        return list(range(G.order))
    if isinstance(G, FGAbelianGroup):
        return list(range(G.ngens))
    return ["c"]


def validate_action(M: Pi2Module, G=None) -> list[str]:
    """Every violation of the module axioms; empty when the action is valid."""
    G = M.pi1 if G is None else G
    out: list[str] = []
    if M.trivial_action:
        return out
    keys = _expected_keys(G)
    extra = set(M.action) - set(keys)
    if extra:
        out.append(f"unexpected action keys {sorted(map(str, extra))}")
    missing = [k for k in keys if k not in M.action]
    if missing:
        out.append(f"missing action matrices for {missing}")
        return out
    for k in keys:
        A = M.action[k]
        if (A.rows, A.cols) != (M.ngens, M.ngens):
            out.append(f"action matrix for {k!r} has shape {A.rows}x{A.cols}")
    if out:
        return out
    for k in keys:
        if not M.preserves_lattice(M.action[k]):
            out.append(f"action matrix for {k!r} does not preserve the relation lattice")
    if out:
        return out
    I = IntMatrix.identity(M.ngens)
    if isinstance(G, FiniteTableGroup):
        if not M.congruent(M.action[G.identity], I):
            out.append(f"identity {G.label(G.identity)} does not act trivially")
        for g in range(G.order):
            for h in range(G.order):
                gh = G.product(g, h)
                if not M.congruent(M.action[g] @ M.action[h], M.action[gh]):
                    out.append(f"A_g A_h != A_gh for (g, h) = ({G.label(g)}, {G.label(h)})")
    elif isinstance(G, FGAbelianGroup):
        for i in range(G.ngens):
            A = M.action[i]
            m = G.moduli()[i]
            if m:
                if not M.congruent(M._matrix_power(A, m), I):
                    out.append(f"A_g^{m} != I for generator g{i} of order {m}")
            else:
                try:
                    M.inverse_mod_lattice(A)
                except ValidationError:
                    out.append(f"generator g{i} acts non-invertibly")
        for i in range(G.ngens):
            for j in range(i + 1, G.ngens):
                if not M.congruent(M.action[i] @ M.action[j], M.action[j] @ M.action[i]):
                    out.append(f"actions of generators g{i} and g{j} do not commute")
    else:
        try:
            M.inverse_mod_lattice(M.action["c"])
        except ValidationError:
            out.append("c acts non-invertibly")
    return out


def fixed_submodule(M: Pi2Module, c) -> SubmoduleDescriptor:
    """``Fix_c(pi_2) = ker(A_c - I)`` on the presented group."""
    n = M.ngens
    A = M.action_matrix(c) - IntMatrix.identity(n)
    gens = kernel_mod_lattice(A, M.relations)
    L = [M.relations.row(i) for i in range(M.relations.rows)]
    sq = subquotient(list(gens) + L, L, n) if n else None
    if sq is None:
        return SubmoduleDescriptor((), ())
    return SubmoduleDescriptor(sq.generators, sq.orders)


def coinvariant_relations(M: Pi2Module, c) -> IntMatrix:
    """Relations of pi_2 together with the images ``b - c.b`` of the generators."""
    n = M.ngens
    D = IntMatrix.identity(n) - M.action_matrix(c)
    # Image of a column-vector map is spanned by its columns.
    return vstack(M.relations, D.T) if n else M.relations


def coinvariants(M: Pi2Module, c) -> PresentedAbelianGroup:
    """``pi_2 / (b = c.b)``."""
    return PresentedAbelianGroup(M.ngens, coinvariant_relations(M, c))


def induced_action_on_coinvariants(M: Pi2Module, c, y) -> IntMatrix:
    """Matrix of ``y`` on the coinvariants, in their canonical coordinates."""
    G = M.pi1
    if not G.commutes(c, y):
        raise ValueError(f"{G.label(y)} is not in the centralizer of {G.label(c)}")
    Q = coinvariants(M, c)
    A = M.action_matrix(y)
    for i in range(Q.relations.rows):
        if not Q.is_zero(A.apply(Q.relations.row(i))):
            raise ValueError("induced action is not well defined on the coinvariants")
    return Q.canonical_matrix(A)


def functional_violations(f: Sequence[int], M: Pi2Module) -> list[str]:
    out = []
    if len(f) != M.ngens:
        return [f"functional has {len(f)} entries for {M.ngens} generators"]
    for i in range(M.relations.rows):
        r = M.relations.row(i)
        if sum(a * b for a, b in zip(f, r)) % 2:
            out.append(f"functional is nonzero on relator {list(r)}")
    return out


def evaluate_functional(f: Sequence[int], M: Pi2Module, b: Sequence[int]) -> int:
    """``f(b) mod 2`` for a mod-2 functional on the generators."""
    bad = functional_violations(f, M)
    if bad:
        raise ValidationError(bad, "w2s functional")
    if len(b) != M.ngens:
        raise ValueError(f"element of length {len(b)} in pi2 on {M.ngens} generators")
    return sum(x * y for x, y in zip(f, b)) % 2
