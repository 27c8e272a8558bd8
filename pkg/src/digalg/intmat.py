"""Exact integer matrices: rank, Smith normal form, nonnegative integral solving.

Everything here is arbitrary-precision integer (or Fraction) arithmetic; no
floating point. Matrices are immutable and row-major.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]]) -> "IntMatrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(int(x) for x in row)
        return IntMatrix(r, c, tuple(flat))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.entries[k * other.cols + j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def mul_vector(self, v: Sequence[int]) -> tuple:
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(self.row(i)[k] * v[k] for k in range(self.cols)) for i in range(self.rows))

    def row_mul(self, x: Sequence[int]) -> tuple:
        """Row-vector product x.self, the convention used by signature solving."""
        if len(x) != self.rows:
            raise ValueError("vector length mismatch")
        return tuple(
            sum(x[i] * self.entries[i * self.cols + j] for i in range(self.rows))
            for j in range(self.cols)
        )


def matrix_to_json(m: IntMatrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[str(x) for x in m.row(i)] for i in range(m.rows)],
    }


def matrix_from_json(obj: dict) -> IntMatrix:
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        data = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if len(data) != rows:
        raise ValueError(f"expected {rows} entry rows, got {len(data)}")
    flat = []
    for row in data:
        if len(row) != cols:
            raise ValueError("ragged matrix entries")
        flat.extend(int(x) for x in row)
    return IntMatrix(rows, cols, tuple(flat))


def rank(m: IntMatrix) -> int:
    """Rank over the rationals by Bareiss fraction-free elimination.

    Pivot choice is the first nonzero entry in row-major order, so the
    elimination sequence (and hence any intermediate state) is deterministic.
    """
    a = m.to_rows()
    prev = 1
    rk = 0
    for c in range(m.cols):
        if rk == m.rows:
            break
        piv = next((i for i in range(rk, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(rk + 1, m.rows):
            # Bareiss update; the division by the previous pivot is exact.
            for j in range(c + 1, m.cols):
                a[i][j] = (a[rk][c] * a[i][j] - a[i][c] * a[rk][j]) // prev
            a[i][c] = 0
        prev = a[rk][c]
        rk += 1
    return rk


def det(m: IntMatrix) -> int:
    """Determinant of a square matrix via Bareiss elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_normal_form(m: IntMatrix):
    """Smith normal form with explicit transforms.

    Returns (left, diag, right) with left*m*right == diag, left and right
    unimodular, and diag diagonal with nonnegative entries d1 | d2 | ...

    Pivot selection takes the minimum absolute value in the remaining
    submatrix with row-major tie-break; deterministic.
    """
    r, c = m.rows, m.cols
    a = m.to_rows()
    left = IntMatrix.identity(r).to_rows()
    right = IntMatrix.identity(c).to_rows()

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def row_add(i, j, q):
        # row i += q * row j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        left[i] = [x + q * y for x, y in zip(left[i], left[j])]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def col_add(i, j, q):
        # col i += q * col j
        for row in a:
            row[i] += q * row[j]
        for row in right:
            row[i] += q * row[j]

    k = 0
    while k < min(r, c):
        piv = None
        best = None
        for i in range(k, r):
            for j in range(k, c):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best = v
                    piv = (i, j)
        if piv is None:
            break
        row_swap(k, piv[0])
        col_swap(k, piv[1])
        while True:
            p = a[k][k]
            i = next((x for x in range(k + 1, r) if a[x][k]), None)
            if i is not None:
                q = a[i][k] // p
                row_add(i, k, -q)
                if a[i][k]:
                    # remainder is strictly smaller than |p|; promote it
                    row_swap(k, i)
                continue
            j = next((x for x in range(k + 1, c) if a[k][x]), None)
            if j is not None:
                q = a[k][j] // p
                col_add(j, k, -q)
                if a[k][j]:
                    col_swap(k, j)
                continue
            p = a[k][k]
            bad = next(
                ((x, y) for x in range(k + 1, r) for y in range(k + 1, c) if a[x][y] % p),
                None,
            )
            if bad is not None:
                # fold a non-divisible entry into the working row and redo
                row_add(k, bad[0], 1)
                continue
            break
        if a[k][k] < 0:
            row_neg(k)
        k += 1
    diag = IntMatrix.from_rows(a) if r and c else IntMatrix.zero(r, c)
    return (IntMatrix.from_rows(left) if r else IntMatrix.zero(0, 0),
            diag,
            IntMatrix.from_rows(right) if c else IntMatrix.zero(0, 0))


def smith_diagonal(m: IntMatrix) -> tuple:
    _, d, _ = smith_normal_form(m)
    return tuple(d.entry(i, i) for i in range(min(m.rows, m.cols)))


def left_kernel_basis(m: IntMatrix) -> tuple:
    """Basis of the integer lattice {x : x.m = 0}, as rows.

    Taken from the rows of the Smith left transform beyond the rank; since the
    transform is unimodular this basis is saturated (primitive as a sublattice).
    """
    left, diag, _ = smith_normal_form(m)
    rk = sum(1 for i in range(min(m.rows, m.cols)) if diag.entry(i, i) != 0)
    return tuple(left.row(i) for i in range(rk, m.rows))


def integral_row_solutions(a: IntMatrix, b: Sequence[int]):
    """All integer solutions of x.a = b as an affine lattice.

    Returns None when no integral solution exists, else (x0, kernel) where x0
    is one solution and kernel is a tuple of basis rows for {x : x.a = 0}.
    """
    if len(b) != a.cols:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.cols}")
    n = a.rows
    if n == 0:
        return ((), ()) if all(v == 0 for v in b) else None
    t = a.transpose()
    lt, dg, rt = smith_normal_form(t)
    lb = lt.mul_vector(list(b))
    mn = min(t.rows, t.cols)
    dvals = [dg.entry(i, i) for i in range(mn)]
    # rows of the diagonal form beyond the rank are zero; lb must vanish there
    for i in range(t.rows):
        d = dvals[i] if i < mn else 0
        if d == 0 and lb[i] != 0:
            return None
    z = [0] * n
    free = []
    for j in range(n):
        d = dvals[j] if j < mn else 0
        if d == 0:
            free.append(j)
        else:
            if lb[j] % d:
                return None
            z[j] = lb[j] // d
    x0 = tuple(rt.mul_vector(z))
    kernel = tuple(rt.column(j) for j in free)
    return x0, kernel


@dataclass(frozen=True)
class NonnegSolutions:
    solutions: tuple  # tuple of solution tuples, lexicographically sorted
    unbounded: bool   # True when the solution set has a nonnegative recession ray


def _fm_normalize(coeffs: tuple, const: Fraction):
    """Scale a constraint c.t + d >= 0 to coprime integers for deduplication."""
    scale = const.denominator
    ints = [c * scale for c in coeffs]
    ints.append(const.numerator)
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints[:-1]), Fraction(ints[-1])


def _fm_eliminate(constraints: list, var: int, nvars: int) -> list:
    """One Fourier-Motzkin step removing `var` from constraints c.t + d >= 0."""
    pos, neg, rest = [], [], []
    for coeffs, const in constraints:
        cv = coeffs[var]
        if cv > 0:
            pos.append((coeffs, const))
        elif cv < 0:
            neg.append((coeffs, const))
        else:
            rest.append((coeffs, const))
    seen = {(_fm_normalize(c, d)) for c, d in rest}
    out = list(seen)
    for pc, pd in pos:
        for nc, nd in neg:
            # pc[var] * (neg) - nc[var] * (pos) cancels the variable
            f_p = pc[var]
            f_n = -nc[var]
            coeffs = tuple(f_p * nc[j] + f_n * pc[j] for j in range(nvars))
            norm = _fm_normalize(coeffs, f_p * nd + f_n * pd)
            if norm not in seen:
                seen.add(norm)
                out.append(norm)
    return out


def _fm_feasible(constraints: list, nvars: int) -> bool:
    cur = constraints
    for v in range(nvars):
        cur = _fm_eliminate(cur, v, nvars)
    return all(const >= 0 for _, const in cur)


def _fm_interval(constraints: list, keep: int, nvars: int):
    """Project the polyhedron onto coordinate `keep`; returns (lo, hi) Fractions or None.

    None means the polyhedron is empty; an unbounded side comes back as None in
    that slot of the pair.
    """
    cur = constraints
    for v in range(nvars):
        if v != keep:
            cur = _fm_eliminate(cur, v, nvars)
    lo, hi = None, None
    for coeffs, const in cur:
        cv = coeffs[keep]
        if cv == 0:
            if const < 0:
                return None
        elif cv > 0:
            bound = Fraction(-const, cv)
            lo = bound if lo is None or bound > lo else lo
        else:
            bound = Fraction(const, -cv)
            hi = bound if hi is None or bound < hi else hi
    if lo is not None and hi is not None and lo > hi:
        return None
    return (lo, hi)


def _ceil_fraction(f: Fraction) -> int:
    return -((-f.numerator) // f.denominator)


def _floor_fraction(f: Fraction) -> int:
    return f.numerator // f.denominator


def solve_nonneg_integral(
    a: IntMatrix,
    b: Sequence[int],
    per_var_bound: Optional[int] = None,
) -> NonnegSolutions:
    """Enumerate nonnegative integer solutions x of x.a = b.

    Args:
        a: coefficient matrix; x has length a.rows.
        b: target row vector of length a.cols.
        per_var_bound: optional cap applied to every entry of x.

    Returns:
        NonnegSolutions. With a bound, the full (finite) solution set within the
        bound. Without one, the full solution set when it is finite; otherwise
        unbounded=True and no enumeration (the set carries a nonnegative
        recession ray, reported rather than truncated).
    """
    lattice = integral_row_solutions(a, b)
    if lattice is None:
        return NonnegSolutions((), False)
    x0, kernel = lattice
    n = len(x0)
    bound = per_var_bound

    def admissible(x):
        return all(v >= 0 and (bound is None or v <= bound) for v in x)

    if not kernel:
        return NonnegSolutions((tuple(x0),) if admissible(x0) else (), False)

    k = len(kernel)
    # constraints over the kernel coordinates t: x0 + t.kernel >= 0 (and <= bound)
    constraints = []
    for i in range(n):
        coeffs = tuple(kernel[j][i] for j in range(k))
        constraints.append((coeffs, Fraction(x0[i])))
        if bound is not None:
            constraints.append((tuple(-c for c in coeffs), Fraction(bound - x0[i])))

    if bound is None:
        # unbounded iff the recession cone {t : t.kernel >= 0} has a nonzero ray;
        # the kernel rows are independent, so a nonzero t gives a nonzero x-ray
        cone = [(coeffs, Fraction(0)) for coeffs, _ in constraints]
        for j in range(k):
            for sign in (1, -1):
                probe = tuple(sign if jj == j else 0 for jj in range(k))
                if _fm_feasible(cone + [(probe, Fraction(-1))], k):
                    return NonnegSolutions((), True)

    ranges = []
    for j in range(k):
        interval = _fm_interval(constraints, j, k)
        if interval is None:
            return NonnegSolutions((), False)
        lo, hi = interval
        if lo is None or hi is None:
            # cannot happen once the recession cone is trivial or a bound is set
            raise AssertionError("unbounded kernel coordinate after cone check")
        ranges.append(range(_ceil_fraction(lo), _floor_fraction(hi) + 1))

    sols = set()
    def walk(j, t):
        if j == k:
            x = tuple(x0[i] + sum(t[jj] * kernel[jj][i] for jj in range(k)) for i in range(n))
            if admissible(x):
                sols.add(x)
            return
        for v in ranges[j]:
            walk(j + 1, t + (v,))
    walk(0, ())
    return NonnegSolutions(tuple(sorted(sols)), False)
