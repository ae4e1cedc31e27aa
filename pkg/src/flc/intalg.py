"""Exact integer and mod-2 linear algebra.

Everything here works on Python ints, so there is no overflow and results are
reproducible bit for bit. Matrices are small (a few dozen rows at most in
practice), so the algorithms favour clarity over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    """A rows x cols integer matrix stored row-major.

    Empty matrices are legal: a 0 x n matrix still remembers ``n``.
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"IntMatrix {self.rows}x{self.cols} needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"ragged row of length {len(r)}, expected {cols}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows([self.col(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ocols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, c)) for c in ocols])
        return IntMatrix.from_rows(out, cols=other.cols)

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(x) != self.cols:
            raise ValueError(f"vector of length {len(x)} for a matrix with {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(self.row(i), x)) for i in range(self.rows))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def is_zero(self) -> bool:
        return not any(self.entries)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0x{self.cols})"


def hstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.rows != b.rows:
        raise ValueError("hstack needs equal row counts")
    return IntMatrix.from_rows([a.row(i) + b.row(i) for i in range(a.rows)], cols=a.cols + b.cols)


def vstack(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.cols:
        raise ValueError("vstack needs equal column counts")
    return IntMatrix(a.rows + b.rows, a.cols, a.entries + b.entries)


def det(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with U, V unimodular and D diagonal.

    ``U_inv`` and ``V_inv`` are tracked alongside so that callers can change
    coordinates in both directions without a second elimination.
    """

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.D.diagonal() if d != 0)

    @property
    def invariants(self) -> list[int]:
        """Nonzero diagonal entries d1 | d2 | ... ."""
        return [d for d in self.D.diagonal() if d != 0]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    The pivot is always the entry of least nonzero absolute value in the
    active submatrix; ties go to the lowest row, then the lowest column.
    """
    m, n = A.rows, A.cols
    D = A.to_rows()
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row ops act on D and U; their inverses act on the columns of Ui.
    # Column ops act on D and V; their inverses act on the rows of Vi.
    def swap_rows(i, k):
        D[i], D[k] = D[k], D[i]
        U[i], U[k] = U[k], U[i]
        for r in Ui:
            r[i], r[k] = r[k], r[i]

    def swap_cols(j, k):
        for r in D:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def add_row(dst, src, q):
        # row dst += q * row src
        if q == 0:
            return
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]
        for r in Ui:
            r[src] -= q * r[dst]

    def add_col(dst, src, q):
        # col dst += q * col src
        if q == 0:
            return
        for r in D:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = D[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = D[t][t]
            for i in range(t + 1, m):
                add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                add_col(j, t, -(D[t][j] // p))
            if any(D[i][t] for i in range(t + 1, m)) or any(D[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(t, bad, 1)
                continue
            if p < 0:
                negate_row(t)
            break
        if best is None:
            break
        t += 1

    return SmithDecomposition(
        U=IntMatrix.from_rows(U, cols=m),
        V=IntMatrix.from_rows(V, cols=n),
        D=IntMatrix.from_rows(D, cols=n),
        U_inv=IntMatrix.from_rows(Ui, cols=m),
        V_inv=IntMatrix.from_rows(Vi, cols=n),
    )


def solve_int(A: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution of ``A x = b``, or None."""
    if len(b) != A.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {A.rows} equations")
    snf = smith_normal_form(A)
    ub = snf.U.apply(b)
    diag = snf.D.diagonal()
    y = [0] * A.cols
    for i, c in enumerate(ub):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c != 0:
                return None
        else:
            if c % d:
                return None
            y[i] = c // d
    return snf.V.apply(y)


def integer_kernel(A: IntMatrix) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x : A x = 0}``."""
    snf = smith_normal_form(A)
    return [snf.V.col(j) for j in range(snf.rank, A.cols)]


def row_lattice_basis(vectors: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """A basis of the lattice spanned by ``vectors`` inside Z^n."""
    if not vectors:
        return []
    snf = smith_normal_form(IntMatrix.from_rows(vectors, cols=n))
    basis = []
    for i, d in enumerate(snf.invariants):
        basis.append(tuple(d * x for x in snf.V_inv.row(i)))
    return basis


def _normalize_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


@dataclass(frozen=True)
class Subquotient:
    """The group K / L for lattices L <= K <= Z^n, in diagonal form.

    ``generators[k]`` generates a cyclic summand of order ``orders[k]``
    (0 for infinite cyclic).  Trivial summands are dropped.
    """

    generators: tuple[tuple[int, ...], ...]
    orders: tuple[int, ...]

    @property
    def free_rank(self) -> int:
        return sum(1 for o in self.orders if o == 0)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(o for o in self.orders if o != 0)


def subquotient(K_gens: Sequence[Sequence[int]], L_gens: Sequence[Sequence[int]], n: int) -> Subquotient:
    """Diagonalise K/L where K is spanned by ``K_gens`` and contains L."""
    B = row_lattice_basis(K_gens, n)
    r = len(B)
    if r == 0:
        return Subquotient((), ())
    Bm = IntMatrix.from_rows(B, cols=n)
    snf_b = smith_normal_form(Bm)
    diag = snf_b.D.diagonal()
    coords = []
    for v in L_gens:
        w = IntMatrix.from_rows([v], cols=n) @ snf_b.V
        w = w.row(0)
        if any(w[i] for i in range(r, n)) or any(w[i] % diag[i] for i in range(r)):
            raise ValueError(f"lattice generator {tuple(v)} does not lie in K")
        c = [w[i] // diag[i] for i in range(r)]
        coords.append((IntMatrix.from_rows([c], cols=r) @ snf_b.U).row(0))
    if coords:
        snf_c = smith_normal_form(IntMatrix.from_rows(coords, cols=r))
        W = snf_c.V_inv @ Bm
        dc = snf_c.D.diagonal()
    else:
        W = Bm
        dc = []
    gens, orders = [], []
    for k in range(r):
        d = dc[k] if k < len(dc) else 0
        if d == 1:
            continue
        gens.append(_normalize_sign(W.row(k)))
        orders.append(d)
    # Free summands last, torsion in divisibility order first.
    paired = sorted(zip(orders, gens), key=lambda og: (og[0] == 0,))
    return Subquotient(tuple(g for _, g in paired), tuple(o for o, _ in paired))


def kernel_mod_lattice(A: IntMatrix, R: IntMatrix) -> list[tuple[int, ...]]:
    """Generators of the kernel of x -> A x on the group Z^n / rowspan(R).

    That is, of ``{x : A x in rowspan R} / rowspan R``.  The generators are
    the diagonal generators of the subquotient, so none of them is zero in
    the presented group.
    """
    n = A.rows
    if A.cols != n:
        raise ValueError("kernel_mod_lattice needs a square A")
    if R.cols != n:
        raise ValueError(f"relations have {R.cols} columns, expected {n}")
    if n == 0:
        return []
    M = hstack(A, -R.T) if R.rows else A
    K = [v[:n] for v in integer_kernel(M)]
    L = [R.row(i) for i in range(R.rows)]
    return list(subquotient(K + L, L, n).generators)


@dataclass(frozen=True)
class F2Matrix:
    """A matrix over F_2; each row is an int bitmask (bit j is column j)."""

    rows: int
    cols: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != self.rows:
            raise ValueError(f"F2Matrix needs {self.rows} row masks, got {len(self.bits)}")
        limit = 1 << self.cols
        for r in self.bits:
            if r < 0 or r >= limit:
                raise ValueError(f"row mask {r} does not fit {self.cols} columns")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> F2Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        masks = []
        for r in rows:
            if len(r) != cols:
                raise ValueError(f"ragged row of length {len(r)}, expected {cols}")
            masks.append(sum(1 << j for j, x in enumerate(r) if x & 1))
        return cls(len(rows), cols, tuple(masks))

    def apply(self, x: Sequence[int]) -> list[int]:
        xm = sum(1 << j for j, v in enumerate(x) if v & 1)
        return [bin(r & xm).count("1") & 1 for r in self.bits]


def _bits(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> j) & 1 for j in range(n))


def solve_f2(A: F2Matrix, b: Sequence[int]) -> tuple[tuple[int, ...], list[tuple[int, ...]]] | None:
    """Solve ``A x = b`` over F_2.

    Returns ``(x, kernel_basis)`` with free variables set to zero in ``x``,
    or None when the system is inconsistent.
    """
    if len(b) != A.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {A.rows} equations")
    n = A.cols
    # Augmented column n carries b.
    rows = [r | ((b[i] & 1) << n) for i, r in enumerate(A.bits)]
    pivots: list[tuple[int, int]] = []  # (column, row mask)
    for col in range(n):
        bit = 1 << col
        pick = next((k for k, r in enumerate(rows) if r & bit), None)
        if pick is None:
            continue
        prow = rows.pop(pick)
        rows = [r ^ prow if r & bit else r for r in rows]
        pivots = [(c, r ^ prow if r & bit else r) for c, r in pivots]
        pivots.append((col, prow))
    if any(r >> n & 1 for r in rows):
        return None
    x = 0
    for c, r in pivots:
        if r >> n & 1:
            x |= 1 << c
    pivot_cols = {c for c, _ in pivots}
    kernel = []
    for f in range(n):
        if f in pivot_cols:
            continue
        v = 1 << f
        for c, r in pivots:
            if r >> f & 1:
                v |= 1 << c
        kernel.append(_bits(v, n))
    return _bits(x, n), kernel
