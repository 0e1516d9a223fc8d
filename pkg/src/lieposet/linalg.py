"""Dense exact linear algebra over the rationals.

Rank is computed by fraction-free (Bareiss) elimination on an integer
rescaling of the matrix, with partial pivoting on numerator magnitude, so
intermediate entries stay minors of the input instead of growing freely.
Kernel and solve use straightforward Gaussian elimination over Fraction;
every result is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _lcm(a, b):
    return a // gcd(a, b) * b


class ExactMatrix:
    """A dense matrix of Fractions with exact rank, kernel and solve."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows, ncols=None):
        self.rows = [[Fraction(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged rows")
        else:
            self.ncols = int(ncols or 0)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.rows)
        return f"ExactMatrix({self.nrows}x{self.ncols}: {body})"

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def transpose(self):
        return ExactMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
        )

    def integer_rows(self):
        """Copy of the rows with each row scaled by the lcm of its denominators."""
        out = []
        for row in self.rows:
            scale = 1
            for x in row:
                scale = _lcm(scale, x.denominator)
            out.append([int(x * scale) for x in row])
        return out

    def rank(self):
        m = self.integer_rows()
        nr, nc = self.nrows, self.ncols
        row = 0
        prev = 1
        for col in range(nc):
            if row == nr:
                break
            piv = -1
            best = 0
            for i in range(row, nr):
                a = abs(m[i][col])
                if a > best:
                    best, piv = a, i
            if piv < 0:
                continue
            if piv != row:
                m[row], m[piv] = m[piv], m[row]
            lead = m[row][col]
            for i in range(row + 1, nr):
                head = m[i][col]
                ri, rr = m[i], m[row]
                for j in range(col + 1, nc):
                    # exact by Sylvester's identity: entries stay minors of
                    # the original matrix
                    q, r = divmod(ri[j] * lead - head * rr[j], prev)
                    if r:
                        raise ArithmeticError("fraction-free step not exact")
                    ri[j] = q
                ri[col] = 0
            prev = lead
            row += 1
        return row

    def rref(self):
        """Reduced row echelon form; returns (rows, pivot column list)."""
        m = [row[:] for row in self.rows]
        nr, nc = self.nrows, self.ncols
        pivots = []
        row = 0
        for col in range(nc):
            if row == nr:
                break
            piv = next((i for i in range(row, nr) if m[i][col] != 0), -1)
            if piv < 0:
                continue
            m[row], m[piv] = m[piv], m[row]
            lead = m[row][col]
            m[row] = [x / lead for x in m[row]]
            for i in range(nr):
                if i != row and m[i][col] != 0:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
        return m, pivots

    def kernel(self):
        """Basis of the right null space, one vector per free column."""
        m, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -m[r][f]
            basis.append(v)
        return basis

    def solve(self, rhs):
        """One exact solution of A x = rhs, or None when inconsistent.

        Free variables are set to zero.
        """
        if len(rhs) != self.nrows:
            raise ValueError("rhs length mismatch")
        aug = ExactMatrix(
            [row + [Fraction(b)] for row, b in zip(self.rows, rhs)],
            ncols=self.ncols + 1,
        )
        if self.nrows == 0:
            return [Fraction(0)] * self.ncols
        m, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [Fraction(0)] * self.ncols
        for r, c in enumerate(pivots):
            x[c] = m[r][self.ncols]
        return x
