"""Exact scalar and matrix substrate.

Scalars are python ints / fractions.Fraction, plus an adjoined imaginary
unit (GaussianRational) for complexified checks.  Elimination is
fraction-free (Bareiss) with deterministic first-nonzero pivoting, so
kernels and ranks are reproducible bit for bit.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class GaussianRational:
    """a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        other = _gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _gaussian(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _gaussian(other) - self

    def __mul__(self, other):
        other = _gaussian(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _gaussian(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return _gaussian(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I_UNIT = GaussianRational(0, 1)


def _gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


def _denominator_lcm(x):
    """lcm of the denominators appearing in a scalar."""
    if isinstance(x, int):
        return 1
    if isinstance(x, Fraction):
        return x.denominator
    if isinstance(x, GaussianRational):
        a, b = x.re.denominator, x.im.denominator
        return a * b // gcd(a, b)
    raise TypeError(f"unsupported scalar {type(x)}")


class Matrix:
    """Dense exact matrix; entries int, Fraction or GaussianRational.

    Instances are treated as immutable after construction.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = tuple(tuple(row) for row in data)
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values):
        return cls([[v] for v in values])

    @classmethod
    def from_columns(cls, columns):
        if not columns:
            raise ValueError("need at least one column")
        n = len(columns[0])
        return cls([[col[i] for col in columns] for i in range(n)])

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def row(self, i):
        return list(self.data[i])

    def col(self, j):
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [self.data[i][j] - other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __neg__(self):
        return Matrix([[-x for x in row] for row in self.data])

    def scale(self, c):
        return Matrix([[c * x for x in row] for row in self.data])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        # row-sparse accumulation: skip zero entries, which dominates for
        # the signed-permutation matrices produced by the Clifford builder
        out = [[0] * other.cols for _ in range(self.rows)]
        odata = other.data
        for i in range(self.rows):
            row_i = self.data[i]
            acc = out[i]
            for k in range(self.cols):
                a = row_i[k]
                if not a:
                    continue
                brow = odata[k]
                if a == 1:
                    for j in range(other.cols):
                        b = brow[j]
                        if b:
                            acc[j] = acc[j] + b
                elif a == -1:
                    for j in range(other.cols):
                        b = brow[j]
                        if b:
                            acc[j] = acc[j] - b
                else:
                    for j in range(other.cols):
                        b = brow[j]
                        if b:
                            acc[j] = acc[j] + a * b
        return Matrix(out)

    __rmul__ = scale

    def transpose(self):
        return Matrix(
            [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def trace(self):
        t = 0
        for i in range(min(self.rows, self.cols)):
            t = t + self.data[i][i]
        return t

    def is_zero(self):
        return all(not x for row in self.data for x in row)

    def is_scalar_multiple_of_identity(self):
        if self.rows != self.cols:
            return None
        c = self.data[0][0]
        for i in range(self.rows):
            for j in range(self.cols):
                want = c if i == j else 0
                if self.data[i][j] != want:
                    return None
        return c

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("shape mismatch")
        return Matrix(
            [list(self.data[i]) + list(other.data[i]) for i in range(self.rows)]
        )

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(list(self.data) + list(other.data))

    def select_columns(self, indices):
        return Matrix(
            [[self.data[i][j] for j in indices] for i in range(self.rows)]
        )

    def to_lists(self):
        return [list(row) for row in self.data]

    def __repr__(self):
        return f"Matrix({self.to_lists()!r})"


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = [
        [0] * (a.cols * b.cols) for _ in range(a.rows * b.rows)
    ]
    for i in range(a.rows):
        for j in range(a.cols):
            x = a.data[i][j]
            if not x:
                continue
            for k in range(b.rows):
                for l in range(b.cols):
                    y = b.data[k][l]
                    if y:
                        out[i * b.rows + k][j * b.cols + l] = x * y
    return Matrix(out)


def _clear_row_denominators(row):
    m = 1
    for x in row:
        d = _denominator_lcm(x)
        m = m * d // gcd(m, d)
    if m == 1:
        return list(row)
    return [x * m for x in row]


def _echelonize(matrix: Matrix):
    """Fraction-free (Bareiss) row echelon form.

    Returns (rows, pivot_cols).  Pivots are chosen as the first nonzero
    entry scanning rows top-down within each column, columns left to
    right, so results are deterministic for identical input.
    """
    rows = [_clear_row_denominators(r) for r in matrix.data]
    n_rows, n_cols = matrix.rows, matrix.cols
    pivot_cols = []
    piv_r = 0
    prev = 1
    for col in range(n_cols):
        sel = None
        for r in range(piv_r, n_rows):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            continue
        if sel != piv_r:
            rows[piv_r], rows[sel] = rows[sel], rows[piv_r]
        p = rows[piv_r][col]
        for r in range(piv_r + 1, n_rows):
            x = rows[r][col]
            row_r = rows[r]
            row_p = rows[piv_r]
            for c in range(col, n_cols):
                num = p * row_r[c] - x * row_p[c] if x else p * row_r[c]
                if prev == 1:
                    row_r[c] = num
                elif isinstance(num, int) and isinstance(prev, int):
                    quot, rem = divmod(num, prev)
                    if rem:  # Bareiss division must be exact over Z
                        raise ArithmeticError("inexact fraction-free division")
                    row_r[c] = quot
                else:
                    row_r[c] = num / prev
        pivot_cols.append(col)
        prev = p
        piv_r += 1
        if piv_r == n_rows:
            break
    return rows[:piv_r], pivot_cols


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def rank(matrix: Matrix) -> int:
    _, pivots = _echelonize(matrix)
    return len(pivots)


def kernel(matrix: Matrix) -> Matrix:
    """Basis of the right null space, one column per free variable.

    The returned columns satisfy matrix * col == 0 exactly; the free
    variable of each column is set to 1 and the rest back-substituted.
    An empty kernel is returned as an n x 0 matrix.
    """
    ech, pivots = _echelonize(matrix)
    n_cols = matrix.cols
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        sol = [0] * n_cols
        sol[f] = Fraction(1)
        # back substitution over the echelon rows, bottom-up
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = 0
            row = ech[r]
            for c in range(pc + 1, n_cols):
                if row[c] and sol[c]:
                    s = s + row[c] * sol[c]
            sol[pc] = _exact_div(-s, row[pc]) if s else Fraction(0)
        basis.append(sol)
    if not basis:
        return Matrix([[] for _ in range(n_cols)])
    return Matrix.from_columns(basis)


def solve(matrix: Matrix, rhs) -> list | None:
    """Solve matrix * x == rhs exactly; None when inconsistent.

    rhs is a flat sequence of length matrix.rows.
    """
    if len(rhs) != matrix.rows:
        raise ValueError("rhs length mismatch")
    aug = matrix.hstack(Matrix.column(list(rhs)))
    ech, pivots = _echelonize(aug)
    n = matrix.cols
    if n in pivots:
        return None  # pivot in the rhs column: inconsistent
    sol = [Fraction(0)] * n
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        row = ech[r]
        s = row[n]
        for c in range(pc + 1, n):
            if row[c] and sol[c]:
                s = s - row[c] * sol[c]
        sol[pc] = _exact_div(s, row[pc]) if s else Fraction(0)
    return sol


def column_space_basis(matrix: Matrix) -> Matrix:
    """Columns of `matrix` at the pivot positions of its echelon form."""
    _, pivots = _echelonize(matrix)
    if not pivots:
        return Matrix([[] for _ in range(matrix.rows)])
    return matrix.select_columns(pivots)


def solve_in_span(basis: Matrix, vector) -> list | None:
    """Coefficients expressing `vector` in the columns of `basis`, or None."""
    return solve(basis, vector)


class SignedUnionFind:
    """Union-find over cells with +-1 relative signs.

    Supports relations cell_a == sign * cell_b; a contradictory cycle
    forces the whole component to zero.
    """

    def __init__(self, n):
        self.parent = list(range(n))
        self.sign = [1] * n
        self.dead = [False] * n

    def find(self, a):
        path = []
        node = a
        while self.parent[node] != node:
            path.append(node)
            node = self.parent[node]
        root = node
        cum = 1
        for node in reversed(path):
            cum = self.sign[node] * cum
            self.parent[node] = root
            self.sign[node] = cum
        return root, (cum if path else 1)

    def union(self, a, b, rel_sign):
        ra, sa = self.find(a)
        rb, sb = self.find(b)
        if ra == rb:
            if sa != rel_sign * sb:
                self.dead[ra] = True
            return
        self.parent[rb] = ra
        self.sign[rb] = sa * rel_sign * sb
        if self.dead[rb]:
            self.dead[ra] = True

    def kill(self, a):
        ra, _ = self.find(a)
        self.dead[ra] = True

    def components(self):
        """Map root -> list of (cell, sign) for surviving components."""
        out = {}
        for c in range(len(self.parent)):
            r, s = self.find(c)
            if self.dead[r]:
                continue
            out.setdefault(r, []).append((c, s))
        return out


def signed_relation_basis(n_cells, relations, killed=()):
    """Solution basis of a system of two-term relations x_a == s * x_b.

    relations: iterable of (a, b, sign); killed: cells forced to zero.
    Returns a list of solution vectors (lists of ints in {-1,0,1}), one
    per surviving component, normalized so the first (lowest-index) cell
    of each component equals +1.
    """
    uf = SignedUnionFind(n_cells)
    for a, b, s in relations:
        if a == b:
            if s == -1:
                uf.kill(a)
            continue
        uf.union(a, b, s)
    for c in killed:
        uf.kill(c)
    comps = uf.components()
    basis = []
    for cells in comps.values():
        cells.sort()
        first_cell, first_sign = cells[0]
        vec = [0] * n_cells
        for cell, s in cells:
            vec[cell] = s * first_sign  # normalize: first cell -> +1
        basis.append((first_cell, vec))
    basis.sort()
    return [vec for _, vec in basis]
