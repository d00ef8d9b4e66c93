"""Exact integer linear algebra: Hermite and Smith forms, integer solving, lattices."""
import itertools
import logging
import math
import time
from bisect import bisect_left
from typing import Hashable, Optional, Sequence

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DM
from sympy.polys.matrices.normalforms import invariant_factors as _sympy_invariant_factors
from sympy.polys.matrices.normalforms import smith_normal_decomp

from engelkit.errors import ShapeMismatchError
from engelkit.services import metrics

logger = logging.getLogger(__name__)

IntMatrix = list[list[int]]


def shape(A: Sequence[Sequence[int]], cols: Optional[int] = None) -> tuple[int, int]:
    """Rows and columns of a rectangular matrix; ``cols`` is needed when there are no rows."""
    rows = len(A)
    width = len(A[0]) if rows else (cols or 0)
    for row in A:
        if len(row) != width:
            raise ShapeMismatchError(f"ragged matrix: row of length {len(row)} in a {rows}x{width} matrix")
    return rows, width


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence[int]], cols: Optional[int] = None) -> IntMatrix:
    rows, width = shape(A, cols)
    return [[A[i][j] for i in range(rows)] for j in range(width)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    rows, inner = shape(A)
    inner_b, width = shape(B)
    if inner != inner_b:
        raise ShapeMismatchError(f"cannot multiply {rows}x{inner} by {inner_b}x{width}")
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(width)] for i in range(rows)]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    rows, width = shape(A, len(x))
    if width != len(x):
        raise ShapeMismatchError(f"cannot apply a {rows}x{width} matrix to a vector of length {len(x)}")
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def determinant(A: Sequence[Sequence[int]]) -> int:
    rows, width = shape(A)
    if rows != width:
        raise ShapeMismatchError(f"determinant of a non-square {rows}x{width} matrix")
    if rows == 0:
        return 1
    return int(DM([list(row) for row in A], ZZ).det())


def hnf(A: Sequence[Sequence[int]], cols: Optional[int] = None) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular and U*A = H. H is in row echelon form
    with positive pivots, entries above each pivot reduced into [0, pivot),
    and zero rows at the bottom. Pivots are chosen by minimal absolute value,
    ties broken by row position.
    """
    m, n = shape(A, cols)
    H = [list(row) for row in A]
    U = identity(m)

    def sub(target: int, source: int, q: int) -> None:
        if q:
            H[target] = [a - q * b for a, b in zip(H[target], H[source])]
            U[target] = [a - q * b for a, b in zip(U[target], U[source])]

    r = 0
    for c in range(n):
        if r == m:
            break
        found = False
        while True:
            candidates = [i for i in range(r, m) if H[i][c] != 0]
            if not candidates:
                break
            found = True
            p = min(candidates, key=lambda i: (abs(H[i][c]), i))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    sub(i, r, H[i][c] // H[r][c])
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            sub(i, r, H[i][c] // H[r][c])
        r += 1
    return H, U


def pivot_columns(H: Sequence[Sequence[int]]) -> list[int]:
    pivots = []
    for row in H:
        for j, value in enumerate(row):
            if value:
                pivots.append(j)
                break
    return pivots


def snf(A: Sequence[Sequence[int]], cols: Optional[int] = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form (D, U, V) with U*A*V = D and d1 | d2 | ... nonnegative."""
    m, n = shape(A, cols)
    if m == 0 or n == 0:
        return [[0] * n for _ in range(m)], identity(m), identity(n)
    smf, s, t = smith_normal_decomp(DM([list(row) for row in A], ZZ))
    D = [[int(x) for x in row] for row in smf.to_list()]
    U = [[int(x) for x in row] for row in s.to_list()]
    V = [[int(x) for x in row] for row in t.to_list()]
    for i in range(min(m, n)):
        if D[i][i] < 0:
            D[i][i] = -D[i][i]
            U[i] = [-x for x in U[i]]
    return D, U, V


def invariant_factors(A: Sequence[Sequence[int]], cols: Optional[int] = None) -> list[int]:
    """Nonzero invariant factors in divisibility order."""
    m, n = shape(A, cols)
    if m == 0 or n == 0:
        return []
    factors = _sympy_invariant_factors(DM([list(row) for row in A], ZZ))
    return [abs(int(f)) for f in factors if f]


def determinantal_divisors(A: Sequence[Sequence[int]]) -> list[int]:
    """gcd of all k x k minors for k = 1, 2, ... while nonzero."""
    m, n = shape(A)
    divisors = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, determinant([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        divisors.append(g)
    return divisors


def minor_gcd_factors(A: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors from determinantal divisors: d_k / d_(k-1)."""
    divisors = determinantal_divisors(A)
    return [d // prev for d, prev in zip(divisors, [1] + divisors[:-1])]


def _l1_reduce(x: list[int], kernel: list[list[int]]) -> list[int]:
    best = list(x)
    improved = True
    while improved:
        improved = False
        for k in kernel:
            for sign in (1, -1):
                candidate = [a - sign * b for a, b in zip(best, k)]
                if sum(map(abs, candidate)) < sum(map(abs, best)):
                    best = candidate
                    improved = True
    return best


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int], cols: Optional[int] = None) -> Optional[list[int]]:
    """Integer x with A*x = b, or None when no integer solution exists.

    Uses the Hermite form of A^T: U*A^T = H, so A*U^T = H^T and b must be an
    integer combination y of the rows of H; then x = U^T*y. The answer is
    reduced against the kernel to a locally minimal L1 norm.
    """
    started = time.perf_counter()
    m, n = shape(A, cols)
    if len(b) != m:
        raise ShapeMismatchError(f"right-hand side has length {len(b)}, matrix has {m} rows")
    H, U = hnf(transpose(A, n), m)
    residual = list(b)
    y = [0] * n
    for r, row in enumerate(H):
        lead = next((j for j, value in enumerate(row) if value), None)
        if lead is None:
            break
        if residual[lead] % row[lead]:
            return None
        q = residual[lead] // row[lead]
        y[r] = q
        if q:
            residual = [a - q * c for a, c in zip(residual, row)]
    if any(residual):
        return None
    x = [sum(U[r][i] * y[r] for r in range(n)) for i in range(n)]
    kernel = [U[r] for r in range(n) if not any(H[r])]
    x = _l1_reduce(x, kernel)
    metrics.SOLVER_TIME.labels(solver="solve_integer").observe(time.perf_counter() - started)
    return x


def member(L: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """True when v is an integer combination of the rows of L."""
    if not L:
        return not any(v)
    width = len(L[0])
    if len(v) != width:
        raise ShapeMismatchError(f"vector of length {len(v)} against lattice rows of length {width}")
    return solve_integer(transpose(L, width), v, len(L)) is not None


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(x, y, g) with x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    return x, y, g


Combination = dict[Hashable, int]


def _combine(target: Combination, source: Combination, q: int) -> Combination:
    """target - q * source."""
    out = dict(target)
    for label, coef in source.items():
        value = out.get(label, 0) - q * coef
        if value:
            out[label] = value
        else:
            out.pop(label, None)
    return out


def _mix(a: Combination, ca: int, b: Combination, cb: int) -> Combination:
    """ca * a + cb * b."""
    out: Combination = {}
    for label in list(a) + [label for label in b if label not in a]:
        value = ca * a.get(label, 0) + cb * b.get(label, 0)
        if value:
            out[label] = value
    return out


class LatticeBasis:
    """Incremental echelon basis of an integer row lattice.

    Each basis row remembers the integer combination of labeled input rows
    that produced it, so membership answers come with a witness. Rows whose
    vector already lies in the lattice are skipped before any combination
    bookkeeping happens.
    """

    __slots__ = ("dim", "rows", "combos", "pivots", "_seen")

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[int]] = []
        self.combos: list[Combination] = []
        self.pivots: list[int] = []
        self._seen: set[tuple[int, ...]] = set()

    def copy(self) -> "LatticeBasis":
        other = LatticeBasis(self.dim)
        other.rows = [row.copy() for row in self.rows]
        other.combos = [dict(combo) for combo in self.combos]
        other.pivots = self.pivots.copy()
        other._seen = set(self._seen)
        return other

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _check(self, vec: Sequence[int]) -> None:
        if len(vec) != self.dim:
            raise ShapeMismatchError(f"vector of length {len(vec)} in a lattice of dimension {self.dim}")

    def _row_at(self, col: int) -> Optional[int]:
        where = bisect_left(self.pivots, col)
        if where < len(self.pivots) and self.pivots[where] == col:
            return where
        return None

    def __contains__(self, vec: Sequence[int]) -> bool:
        self._check(vec)
        vec = list(vec)
        for j in range(self.dim):
            if not vec[j]:
                continue
            p = self._row_at(j)
            if p is None:
                return False
            a = self.rows[p][j]
            if vec[j] % a:
                return False
            q = vec[j] // a
            row = self.rows[p]
            for jj in range(j, self.dim):
                vec[jj] -= q * row[jj]
        return True

    def add(self, vec: Sequence[int], label: Hashable) -> bool:
        """Insert a labeled row; returns True when the lattice grew."""
        self._check(vec)
        key = tuple(vec)
        if key in self._seen or not any(key):
            return False
        self._seen.add(key)
        if key in self:
            return False
        metrics.LATTICE_ROWS_INSERTED.inc()
        vec = list(vec)
        combo: Combination = {label: 1}
        for j in range(self.dim):
            if not vec[j]:
                continue
            p = self._row_at(j)
            if p is None:
                if vec[j] < 0:
                    vec = [-a for a in vec]
                    combo = {k: -c for k, c in combo.items()}
                where = bisect_left(self.pivots, j)
                self.rows.insert(where, vec)
                self.combos.insert(where, combo)
                self.pivots.insert(where, j)
                return True
            row = self.rows[p]
            a = row[j]
            b = vec[j]
            if b % a == 0:
                q = b // a
                vec = [x - q * y for x, y in zip(vec, row)]
                combo = _combine(combo, self.combos[p], q)
                continue
            x, y, g = xgcd(a, b)
            ag = a // g
            mbg = -b // g
            new_row = [x * r + y * v for r, v in zip(row, vec)]
            new_vec = [mbg * r + ag * v for r, v in zip(row, vec)]
            new_combo = _mix(self.combos[p], x, combo, y)
            combo = _mix(self.combos[p], mbg, combo, ag)
            if new_row[j] < 0:
                new_row = [-a for a in new_row]
                new_combo = {k: -c for k, c in new_combo.items()}
            self.rows[p] = new_row
            self.combos[p] = new_combo
            vec = new_vec
        return True

    def express(self, vec: Sequence[int]) -> Optional[Combination]:
        """Combination of input labels equal to vec, or None when vec is outside the lattice."""
        self._check(vec)
        vec = list(vec)
        combo: Combination = {}
        for j in range(self.dim):
            if not vec[j]:
                continue
            p = self._row_at(j)
            if p is None:
                return None
            row = self.rows[p]
            if vec[j] % row[j]:
                return None
            q = vec[j] // row[j]
            vec = [x - q * y for x, y in zip(vec, row)]
            combo = _combine(combo, self.combos[p], -q)
        return combo

    def residual(self, vec: Sequence[int], upto: Optional[int] = None) -> list[int]:
        """Reduce vec modulo the basis rows pivoting below ``upto``.

        The first ``upto`` entries of the result vanish exactly when the
        projection of vec onto those columns lies in the projected lattice.
        """
        self._check(vec)
        stop = self.dim if upto is None else upto
        vec = list(vec)
        for j in range(stop):
            if not vec[j]:
                continue
            p = self._row_at(j)
            if p is None:
                continue
            q = vec[j] // self.rows[p][j]
            vec = [x - q * y for x, y in zip(vec, self.rows[p])]
        return vec

    def to_matrix(self) -> IntMatrix:
        return [row.copy() for row in self.rows]
