"""Exact integer linear algebra on plain list-of-lists matrices.

Everything here runs on Python's arbitrary-precision integers; no
intermediate step may overflow or round.  Matrices are lists of row lists.
Elementary row/column operations are recorded as tuples so reductions can
be replayed and audited:

    ("row_add", dst, src, k)   row[dst] += k * row[src]
    ("row_swap", i, j)
    ("row_neg", i)
    ("col_add", dst, src, k)   col[dst] += k * col[src]
    ("col_swap", i, j)
    ("col_neg", i)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "xgcd",
    "identity_matrix",
    "zero_matrix",
    "transpose",
    "mat_mul",
    "mat_vec",
    "determinant",
    "apply_operations",
    "apply_row_operations_to_vector",
    "operations_to_text",
    "SmithDecomposition",
    "smith_normal_form",
    "hermite_normal_form",
    "kernel_basis",
    "AbelianGroup",
    "cokernel",
    "solve_min_scalar",
    "poly_trim",
    "poly_deg",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_pow",
    "poly_eval",
    "poly_divexact",
    "poly_matrix_det",
]


def xgcd(a, b):
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(rows, cols):
    return [[0] * cols for _ in range(rows)]


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def mat_mul(A, B):
    if not A or not B:
        return [[] for _ in A]
    cols = range(len(B[0]))
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, Bt[j])) for j in cols] for row in A]


def mat_vec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def determinant(M):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            rowi, rowk = a[i], a[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def apply_operations(M, ops):
    """Replay recorded row and column operations on a copy of M."""
    A = [list(row) for row in M]
    for op in ops:
        kind = op[0]
        if kind == "row_add":
            _, d, s, k = op
            A[d] = [x + k * y for x, y in zip(A[d], A[s])]
        elif kind == "row_swap":
            _, i, j = op
            A[i], A[j] = A[j], A[i]
        elif kind == "row_neg":
            A[op[1]] = [-x for x in A[op[1]]]
        elif kind == "col_add":
            _, d, s, k = op
            for row in A:
                row[d] += k * row[s]
        elif kind == "col_swap":
            _, i, j = op
            for row in A:
                row[i], row[j] = row[j], row[i]
        elif kind == "col_neg":
            for row in A:
                row[op[1]] = -row[op[1]]
        else:
            raise ValueError(f"unknown operation {op!r}")
    return A


def apply_row_operations_to_vector(v, ops):
    """Replay only the row operations on a vector; column operations act on
    the other side and leave it untouched."""
    b = list(v)
    for op in ops:
        kind = op[0]
        if kind == "row_add":
            _, d, s, k = op
            b[d] += k * b[s]
        elif kind == "row_swap":
            _, i, j = op
            b[i], b[j] = b[j], b[i]
        elif kind == "row_neg":
            b[op[1]] = -b[op[1]]
    return b


def operations_to_text(ops):
    """One audit line per recorded operation."""
    lines = []
    for op in ops:
        kind = op[0]
        if kind in ("row_add", "col_add"):
            _, d, s, k = op
            axis = "R" if kind == "row_add" else "C"
            lines.append(f"{axis}{d} += {k}*{axis}{s}")
        elif kind in ("row_swap", "col_swap"):
            _, i, j = op
            axis = "R" if kind == "row_swap" else "C"
            lines.append(f"swap {axis}{i} {axis}{j}")
        else:
            axis = "R" if kind == "row_neg" else "C"
            lines.append(f"negate {axis}{op[1]}")
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class SmithDecomposition:
    """x * m * y = d with x, y unimodular and d diagonal with positive
    entries each dividing the next, zeros trailing."""

    x: list
    d: list
    y: list
    operations: tuple

    @property
    def diagonal(self):
        if not self.d:
            return []
        return [self.d[i][i] for i in range(min(len(self.d), len(self.d[0])))]


def smith_normal_form(M):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Classic reduction: the nonzero entry of minimal absolute value is moved
    to the pivot, its row and column are cleared by exact division steps
    (a nonzero remainder yields a smaller pivot and restarts), and a
    divisibility violation in the remaining block is folded into the pivot
    row.  The recorded operations replay to the returned diagonal.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    for row in M:
        if len(row) != cols:
            raise ValueError("matrix rows must have equal length")
    D = [list(map(int, row)) for row in M]
    X = identity_matrix(rows)
    Y = identity_matrix(cols)
    ops = []

    def row_add(dst, src, k):
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        X[dst] = [a + k * b for a, b in zip(X[dst], X[src])]
        ops.append(("row_add", dst, src, k))

    def row_swap(i, j):
        if i == j:
            return
        D[i], D[j] = D[j], D[i]
        X[i], X[j] = X[j], X[i]
        ops.append(("row_swap", i, j))

    def row_neg(i):
        D[i] = [-a for a in D[i]]
        X[i] = [-a for a in X[i]]
        ops.append(("row_neg", i))

    def col_add(dst, src, k):
        for r in D:
            r[dst] += k * r[src]
        for r in Y:
            r[dst] += k * r[src]
        ops.append(("col_add", dst, src, k))

    def col_swap(i, j):
        if i == j:
            return
        for r in D:
            r[i], r[j] = r[j], r[i]
        for r in Y:
            r[i], r[j] = r[j], r[i]
        ops.append(("col_swap", i, j))

    t = 0
    limit = min(rows, cols)
    while t < limit:
        best = None
        best_abs = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = D[i][j]
                if v and (best is None or abs(v) < best_abs):
                    best = (i, j)
                    best_abs = abs(v)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            if D[t][t] < 0:
                row_neg(t)
            pivot = D[t][t]
            moved = False
            for i in range(t + 1, rows):
                v = D[i][t]
                if v:
                    q = v // pivot
                    if q:
                        row_add(i, t, -q)
                    if D[i][t]:  # 0 < remainder < pivot: better pivot found
                        row_swap(t, i)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, cols):
                v = D[t][j]
                if v:
                    q = v // pivot
                    if q:
                        col_add(j, t, -q)
                    if D[t][j]:
                        col_swap(t, j)
                        moved = True
                        break
            if moved:
                continue
            # row and column t are clear; enforce the divisibility chain
            violator = None
            for i in range(t + 1, rows):
                if any(D[i][j] % pivot for j in range(t + 1, cols)):
                    violator = i
                    break
            if violator is None:
                break
            row_add(t, violator, 1)
        t += 1
    return SmithDecomposition(X, D, Y, tuple(ops))


def hermite_normal_form(M):
    """Row-style Hermite normal form.

    Returns (H, U) with U unimodular, U*M = H, H in row echelon form with
    positive pivots, entries above each pivot reduced into [0, pivot), and
    zero rows last.  Two integer matrices span the same row lattice exactly
    when their forms are equal.
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    H = [list(map(int, row)) for row in M]
    U = identity_matrix(rows)
    r = 0
    for j in range(cols):
        if r == rows:
            break
        pivot_row = None
        for i in range(r, rows):
            if H[i][j]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            H[r], H[pivot_row] = H[pivot_row], H[r]
            U[r], U[pivot_row] = U[pivot_row], U[r]
        for i in range(r + 1, rows):
            if not H[i][j]:
                continue
            a, b = H[r][j], H[i][j]
            if b % a == 0:
                q = b // a
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
            else:
                g, s, t = xgcd(a, b)
                ag, bg = a // g, b // g
                # unimodular 2x2 mix: det = s*ag + t*bg = 1
                H[r], H[i] = (
                    [s * x + t * y for x, y in zip(H[r], H[i])],
                    [-bg * x + ag * y for x, y in zip(H[r], H[i])],
                )
                U[r], U[i] = (
                    [s * x + t * y for x, y in zip(U[r], U[i])],
                    [-bg * x + ag * y for x, y in zip(U[r], U[i])],
                )
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        pivot = H[r][j]
        for i in range(r):
            q = H[i][j] // pivot
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def kernel_basis(M):
    """Basis rows (in Hermite normal form) of the integer right kernel
    {x : M x = 0}."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if cols == 0:
        return []
    snf = smith_normal_form(M)
    diag = snf.diagonal
    free_cols = [j for j in range(cols) if j >= len(diag) or diag[j] == 0]
    if not free_cols:
        return []
    vecs = [[snf.y[i][j] for i in range(cols)] for j in free_cols]
    H, _ = hermite_normal_form(vecs)
    return [row for row in H if any(row)]


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in invariant-factor form: free rank
    plus torsion factors, each >= 2 and dividing the next."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free_rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        prev = 1
        for d in self.torsion:
            if d < 2 or d % prev:
                raise ValueError("torsion factors must be >= 2 and divide in order")
            prev = d

    @classmethod
    def from_diagonal(cls, diag, size):
        """Cokernel of a diagonal divisibility chain inside Z^size."""
        nonzero = [abs(d) for d in diag if d]
        torsion = tuple(d for d in nonzero if d >= 2)
        return cls(size - len(nonzero), torsion)

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(M):
    """Z^n modulo the column span of the square matrix M."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("square matrix required")
    diag = smith_normal_form(M).diagonal
    return AbelianGroup.from_diagonal(diag, n)


def solve_min_scalar(M, b):
    """Smallest positive lam such that M x = lam * b is solvable over Z.

    Returns (lam, x) with a verified integer witness x, or None when no
    positive multiple of b lies in the image of M.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("square matrix required")
    if len(b) != n:
        raise ValueError("vector length must match the matrix size")
    snf = smith_normal_form(M)
    diag = snf.diagonal
    c = mat_vec(snf.x, b)
    lam = 1
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i]:
                return None
        else:
            lam = lcm(lam, d // gcd(d, c[i]))
    y = [0] * n
    for i in range(n):
        d = diag[i] if i < len(diag) else 0
        if d:
            y[i] = lam * c[i] // d
    x = mat_vec(snf.y, y)
    assert mat_vec(M, x) == [lam * v for v in b]
    return lam, x


# --- integer polynomials -------------------------------------------------
#
# A polynomial is a list of integer coefficients, index = degree, trimmed
# so the leading coefficient is nonzero; the zero polynomial is [].


def poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_deg(p):
    return len(p) - 1  # -1 for the zero polynomial


def poly_add(p, q):
    n = max(len(p), len(q))
    out = [0] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return poly_trim(out)


def poly_sub(p, q):
    return poly_add(p, [-c for c in q])


def poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly_trim(out)


def poly_pow(p, k):
    out = [1]
    for _ in range(k):
        out = poly_mul(out, p)
    return out


def poly_eval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divexact(p, q):
    """Exact polynomial division; raises if the remainder is nonzero."""
    if not q:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p)
    out = [0] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    for k in range(len(out) - 1, -1, -1):
        coef = rem[k + len(q) - 1]
        if coef % lead:
            raise ValueError("inexact polynomial division")
        coef //= lead
        out[k] = coef
        if coef:
            for j, c in enumerate(q):
                rem[k + j] -= coef * c
    if any(rem):
        raise ValueError("inexact polynomial division")
    return poly_trim(out)


def poly_matrix_det(P):
    """Exact determinant of a square matrix of integer polynomials.

    Evaluates the matrix at enough integer points (0, 1, -1, 2, -2, ...),
    takes fraction-free integer determinants, and interpolates exactly; the
    result must come out with integer coefficients.
    """
    n = len(P)
    if n == 0:
        return [1]
    for row in P:
        if len(row) != n:
            raise ValueError("square matrix required")
    bound = sum(max((len(e) - 1 for e in row if e), default=0) for row in P)
    points = [0]
    k = 1
    while len(points) < bound + 1:
        points.extend([k, -k])
        k += 1
    points = points[: bound + 1]
    values = [
        determinant([[poly_eval(e, u) for e in row] for row in P]) for u in points
    ]
    if not any(values):
        return []
    master = [1]
    for u in points:
        master = poly_mul(master, [-u, 1])
    acc = [Fraction(0)] * (bound + 1)
    for u, v in zip(points, values):
        if not v:
            continue
        basis = poly_divexact(master, [-u, 1])
        scale = Fraction(v, poly_eval(basis, u))
        for i, c in enumerate(basis):
            if c:
                acc[i] += scale * c
    out = []
    for f in acc:
        if f.denominator != 1:
            raise ValueError("interpolation produced a non-integer coefficient")
        out.append(int(f))
    return poly_trim(out)
