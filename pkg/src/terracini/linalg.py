"""Dense exact linear algebra over F_p and over the dual numbers F_p[eps].

Matrices are lists of rows (lists of ints in ``range(p)``).  Functions that
accept dual matrices take entries that are ints or :class:`~terracini.arith.Dual`.
"""

from __future__ import annotations

from functools import lru_cache

from .arith import Dual, eps_part, residue
from .errors import CorankNotOne, InternalInconsistency, Unliftable


class EchelonBasis:
    """Row echelon basis grown one row at a time.

    Every stored row has a leading 1 in its pivot column and zeros in all
    earlier columns, so a new row is reduced by sweeping pivots left to right.
    Rows are stored from their pivot column onward.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row) -> tuple[list[int], int | None]:
        """Return the reduced row and its leading column (None if zero)."""
        p = self.p
        v = [a % p for a in row]
        c = 0
        n = self.ncols
        # entries are only brought back into range every few pivots
        lazy = 0
        while True:
            while c < n and v[c] % p == 0:
                c += 1
            if c == n or c not in self.rows:
                if lazy:
                    v = [a % p for a in v]
                return v, (None if c == n else c)
            pivot_row = self.rows[c]
            f = v[c] % p
            if lazy == 3:
                v[c:] = [(a - f * b) % p for a, b in zip(v[c:], pivot_row)]
                lazy = 0
            else:
                v[c:] = [a - f * b for a, b in zip(v[c:], pivot_row)]
                lazy += 1

    def add(self, row) -> bool:
        """Insert ``row``; return True when it raised the rank."""
        v, c = self.reduce(row)
        if c is None:
            return False
        inv = pow(v[c], -1, self.p)
        self.rows[c] = [a * inv % self.p for a in v[c:]]
        return True

    def contains(self, row) -> bool:
        return self.reduce(row)[1] is None


def rank(M, p: int, ncols: int | None = None) -> int:
    """Exact rank by Gaussian elimination with first-nonzero pivoting."""
    if not M:
        return 0
    eb = EchelonBasis(ncols if ncols is not None else len(M[0]), p)
    for row in M:
        eb.add(row)
        if eb.rank == eb.ncols:
            break
    return eb.rank


def incremental_ranks(M, p: int, block: int = 1, ncols: int | None = None) -> list[int]:
    """Ranks of the row prefixes of length ``block``, ``2*block``, ..."""
    eb = EchelonBasis(ncols if ncols is not None else len(M[0]), p)
    out = []
    for i, row in enumerate(M, start=1):
        # once the rank is full every further row reduces to zero
        if eb.rank < eb.ncols:
            eb.add(row)
        if i % block == 0:
            out.append(eb.rank)
    return out


def rref(M, p: int, ncols: int | None = None, pivot_cols: int | None = None):
    """Reduced row echelon form.

    Pivots are only searched in the first ``pivot_cols`` columns (all by
    default), which lets callers carry an augmented block along.
    Returns ``(rows, pivots)``; zero rows are kept at the bottom.
    """
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    pc = n if pivot_cols is None else pivot_cols
    A = [[a % p for a in row] for row in M]
    pivots: list[int] = []
    r = 0
    for c in range(pc):
        if r == len(A):
            break
        k = next((i for i in range(r, len(A)) if A[i][c]), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [a * inv % p for a in A[r]]
        # the pivot row is zero before column c
        pr = A[r][c:]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i][c:] = [(a - f * b) % p for a, b in zip(A[i][c:], pr)]
        pivots.append(c)
        r += 1
    return A, pivots


def _kernel_from_rref(R, pivots, ncols, p):
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for i, pcol in enumerate(pivots):
            v[pcol] = -R[i][fcol] % p
        basis.append(v)
    return basis


def kernel_basis(M, p: int, ncols: int | None = None) -> list[list[int]]:
    """Basis of the right kernel, one vector per free column (free entry 1)."""
    n = ncols if ncols is not None else len(M[0])
    if not M:
        return [[int(i == j) for i in range(n)] for j in range(n)]
    R, pivots = rref(M, p, n)
    return _kernel_from_rref(R, pivots, n, p)


def det(M, p: int) -> int:
    n = len(M)
    A = [[a % p for a in row] for row in M]
    d = 1
    for c in range(n):
        k = next((i for i in range(c, n) if A[i][c]), None)
        if k is None:
            return 0
        if k != c:
            A[c], A[k] = A[k], A[c]
            d = -d
        pv = A[c][c]
        d = d * pv % p
        inv = pow(pv, -1, p)
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv % p
                A[i][c:] = [(a - f * b) % p for a, b in zip(A[i][c:], A[c][c:])]
    return d % p


def mat_vec(M, v, p):
    return [sum(a * b for a, b in zip(row, v)) % p for row in M]


def mat_mul(A, B, p):
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) % p for col in cols] for row in A]


# --------------------------------------------------------------- dual numbers


@lru_cache(maxsize=64)
def _factor(M0: tuple, p: int, ncols: int):
    """RREF of ``M0`` with the transformation ``T`` such that ``T @ M0 = R``."""
    m = len(M0)
    aug = [list(row) + [int(i == j) for j in range(m)] for i, row in enumerate(M0)]
    A, pivots = rref(aug, p, ncols + m, pivot_cols=ncols)
    R = [row[:ncols] for row in A]
    T = [row[ncols:] for row in A]
    basis = _kernel_from_rref(R, pivots, ncols, p)
    return tuple(pivots), tuple(map(tuple, T)), tuple(map(tuple, basis))


def split_dual(M, p):
    """Split a matrix of ints/Duals into residue and eps matrices."""
    M0 = [[residue(a) % p for a in row] for row in M]
    M1 = [[eps_part(a) for a in row] for row in M]
    return M0, M1


def dual_kernel_basis(M, p: int, ncols: int | None = None) -> list[list]:
    """Kernel basis of ``M0 + eps*M1`` lifting the RREF kernel basis of ``M0``.

    Each returned ``v0 + eps*v1`` has ``v0`` equal to the corresponding
    :func:`kernel_basis` vector of the residue and ``v1`` zero on the free
    columns.  Plain int vectors are returned when ``M`` has no eps part.
    Raises :class:`Unliftable` when some residue kernel vector does not lift.
    """
    n = ncols if ncols is not None else len(M[0])
    M0, M1 = split_dual(M, p)
    pivots, T, basis = _factor(tuple(map(tuple, M0)), p, n)
    if not any(any(row) for row in M1):
        return [list(v) for v in basis]
    r = len(pivots)
    out = []
    for v0 in basis:
        b = [-sum(a * c for a, c in zip(row, v0)) % p for row in M1]
        tb = [sum(a * c for a, c in zip(trow, b)) % p for trow in T]
        if any(tb[r:]):
            raise Unliftable("eps-part of the kernel equation is not in the column space")
        v1 = [0] * n
        for i, pc in enumerate(pivots):
            v1[pc] = tb[i]
        out.append([Dual(a, e, p) for a, e in zip(v0, v1)])
    return out


def dual_rank(M, p: int, ncols: int | None = None) -> int:
    """Rank of the residue matrix."""
    M0, _ = split_dual(M, p)
    return rank(M0, p, ncols)


def kernel_lift(M, p: int, ncols: int | None = None) -> list:
    """The kernel vector of a corank-one dual matrix.

    Raises :class:`CorankNotOne` unless ``rank(M0) == cols - 1``.
    """
    n = ncols if ncols is not None else len(M[0])
    M0, _ = split_dual(M, p)
    pivots, _, _ = _factor(tuple(map(tuple, M0)), p, n)
    if len(pivots) != n - 1:
        raise CorankNotOne(f"residue rank {len(pivots)} with {n} columns")
    try:
        (v,) = dual_kernel_basis(M, p, n)
    except Unliftable as exc:
        raise InternalInconsistency(str(exc)) from exc
    return v
