"""Dense exact linear algebra over the rationals.

Everything here is Fraction or bigint arithmetic; no floating point.
Sizes stay at desk scale (a few hundred rows), so clarity wins over
asymptotics: Bareiss elimination for ranks, Gauss-Jordan for solves and
kernels, Hessenberg reduction for characteristic polynomials, and
divisor search with deflation for integer spectra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence


class ExactMatrix:
    """Immutable-by-convention dense matrix with Fraction entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[Fraction(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    __hash__ = None

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.rows[i][j] == self.rows[j][i]
            for i in range(self.nrows) for j in range(i)
        )

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(list(zip(*self.rows)))

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        return ExactMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.rows]
        )

    def matvec(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return [sum(a * b for a, b in zip(row, v)) for row in self.rows]

    def add_scalar_diagonal(self, c) -> "ExactMatrix":
        """self + c*I."""
        if not self.is_square():
            raise ValueError("square only")
        out = [row[:] for row in self.rows]
        for i in range(self.nrows):
            out[i][i] += Fraction(c)
        return ExactMatrix(out)

    def scale(self, c) -> "ExactMatrix":
        c = Fraction(c)
        return ExactMatrix([[c * x for x in row] for row in self.rows])

    def trace(self) -> Fraction:
        if not self.is_square():
            raise ValueError("square only")
        return sum(self.rows[i][i] for i in range(self.nrows))

    def to_text(self) -> str:
        """Plain-text grid, one row per line, entries space-separated."""
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)

    # -- elimination-backed queries ------------------------------------

    def rank(self) -> int:
        return integer_rank(_integer_rows(self.rows))

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon form and the list of pivot columns."""
        m = [row[:] for row in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            pr = next((i for i in range(r, self.nrows) if m[i][c]), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            piv = m[r][c]
            m[r] = [x / piv for x in m[r]]
            for i in range(self.nrows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return m, pivots

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of the right kernel (one vector per free column)."""
        m, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.ncols
            v[fc] = Fraction(1)
            for r, pc in enumerate(pivots):
                v[pc] = -m[r][fc]
            basis.append(v)
        return basis

    def charpoly(self) -> list[Fraction]:
        """Coefficients of det(xI - A), ascending: [c0, c1, ..., 1].

        Hessenberg reduction by similarity, then the leading-minor
        recurrence.  Exact but cubic with rational growth; intended for
        small matrices (equitable quotients and the like).  Large
        integer spectra are better served by kernel-rank certification.
        """
        if not self.is_square():
            raise ValueError("square only")
        n = self.nrows
        if n == 0:
            return [Fraction(1)]
        h = [row[:] for row in self.rows]
        for c in range(n - 2):
            pr = next((i for i in range(c + 1, n) if h[i][c]), None)
            if pr is None:
                continue
            if pr != c + 1:
                h[c + 1], h[pr] = h[pr], h[c + 1]
                for row in h:
                    row[c + 1], row[pr] = row[pr], row[c + 1]
            piv = h[c + 1][c]
            for i in range(c + 2, n):
                if h[i][c]:
                    f = h[i][c] / piv
                    h[i] = [x - f * y for x, y in zip(h[i], h[c + 1])]
                    for row in h:
                        row[c + 1] += f * row[i]
        # polys[m] = charpoly of the leading m x m block
        polys: list[list[Fraction]] = [[Fraction(1)]]
        for m in range(1, n + 1):
            prev = polys[m - 1]
            a = h[m - 1][m - 1]
            cur = [Fraction(0)] + prev
            for i in range(len(prev)):
                cur[i] -= a * prev[i]
            sub = Fraction(1)
            for i in range(m - 1, 0, -1):
                sub *= h[i][i - 1]
                if sub == 0:
                    break
                term = sub * h[i - 1][m - 1]
                if term:
                    pl = polys[i - 1]
                    for d in range(len(pl)):
                        cur[d] -= term * pl[d]
            polys.append(cur)
        return polys[n]


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Clear denominators row by row (rank is unchanged)."""
    out = []
    for row in rows:
        denom = 1
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        out.append([int(x * denom) for x in row])
    return out


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination.

    Intermediate entries are minors of the input, so bit growth stays
    polynomial; every division below is exact by Sylvester's identity.
    """
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    r = 0
    prev = 1
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            x = row[c]
            m[i] = [0] * c + [
                (piv * row[j] - x * prow[j]) // prev for j in range(c, ncols)
            ]
        prev = piv
        rank += 1
        r += 1
        if r == nrows:
            break
    return rank


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact linear solve A x = b.

    When infeasible, `inconsistent_row` indexes the eliminated row whose
    coefficients vanished while its right-hand side did not (a standard
    certificate of infeasibility).
    """

    solution: tuple[Fraction, ...] | None
    inconsistent_row: int | None = None

    @property
    def feasible(self) -> bool:
        return self.solution is not None


def solve(a: ExactMatrix, b: Sequence) -> SolveResult:
    """One exact solution of A x = b, or an infeasibility certificate."""
    if len(b) != a.nrows:
        raise ValueError("shape mismatch")
    aug = ExactMatrix([list(row) + [b[i]] for i, row in enumerate(a.rows)])
    m, pivots = aug.rref()
    if a.ncols in pivots:
        return SolveResult(None, inconsistent_row=pivots.index(a.ncols))
    x = [Fraction(0)] * a.ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][a.ncols]
    return SolveResult(tuple(x))


def poly_eval(coeffs: Sequence, x):
    """Evaluate an ascending-coefficient polynomial at x."""
    acc = 0
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def _deflate(ip: list[int], r: int) -> list[int]:
    """Divide an ascending integer polynomial by (x - r); assumes p(r) = 0."""
    n = len(ip) - 1
    q = [0] * n
    q[n - 1] = ip[n]
    for j in range(n - 1, 0, -1):
        q[j - 1] = ip[j] + r * q[j]
    return q


def integer_roots(coeffs: Sequence, root_bound: int | None = None) -> tuple[dict[int, int], list[int]]:
    """Integer roots with multiplicity, by bounded search and deflation.

    `root_bound` caps |root| (e.g. a Gershgorin bound for characteristic
    polynomials); without it the Cauchy bound is used.  Returns
    (roots, residual) where residual is the ascending integer cofactor
    left after all integer roots are divided out; degree(residual) == 0
    means the polynomial split over the integers.
    """
    fracs = [Fraction(c) for c in coeffs]
    scale = 1
    for c in fracs:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ip = [int(c * scale) for c in fracs]
    while len(ip) > 1 and ip[-1] == 0:
        ip.pop()
    if all(c == 0 for c in ip):
        raise ValueError("zero polynomial")
    roots: dict[int, int] = {}
    zeros = 0
    while ip[0] == 0:
        ip = ip[1:]
        zeros += 1
    if zeros:
        roots[0] = zeros
    if root_bound is None:
        lead = abs(ip[-1])
        root_bound = 1 + max(abs(c) for c in ip) // lead
    for mag in range(1, root_bound + 1):
        for r in (mag, -mag):
            while len(ip) > 1 and ip[0] % r == 0 and poly_eval(ip, r) == 0:
                ip = _deflate(ip, r)
                roots[r] = roots.get(r, 0) + 1
    return roots, ip
