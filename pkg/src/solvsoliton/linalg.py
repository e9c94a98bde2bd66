"""Dense exact linear algebra over rationals, surds, and jets.

Everything here is division-based Gaussian elimination with exact pivoting;
floating point never enters.  Characteristic polynomials are computed over the
rationals via an exact Hessenberg reduction, and real-rootedness is decided by
Sturm sequences on the square-free part.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import Jet2, Surd

__all__ = [
    "Matrix",
    "Polynomial",
    "solve_exact",
    "nullspace",
    "inverse",
    "det",
    "is_positive_definite",
    "char_poly",
    "real_rooted",
    "sparse_nullspace",
]


def _coerce_entry(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, (Fraction, Surd, Jet2)):
        return x
    raise TypeError(f"unsupported exact matrix entry: {type(x).__name__}")


def _bitsize(x) -> int:
    """Pivot weight: smaller means cheaper to eliminate with."""
    if isinstance(x, Fraction):
        return x.numerator.bit_length() + x.denominator.bit_length()
    if isinstance(x, Surd):
        return sum(
            f.numerator.bit_length() + f.denominator.bit_length()
            for f in (x.a, x.b, x.q)
        )
    return 64


class Matrix:
    """Dense matrix with exact scalar entries (row-major lists)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [[_coerce_entry(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[Fraction(0)] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = Fraction(1)
        return m

    @classmethod
    def diagonal(cls, entries) -> "Matrix":
        entries = list(entries)
        m = cls.zeros(len(entries), len(entries))
        for i, e in enumerate(entries):
            m.data[i][i] = _coerce_entry(e)
        return m

    @classmethod
    def column(cls, entries) -> "Matrix":
        return cls([[e] for e in entries])

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def copy(self) -> "Matrix":
        return Matrix([row[:] for row in self.data])

    def transpose(self) -> "Matrix":
        return Matrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [self.data[i][j] + other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [self.data[i][j] - other.data[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, s) -> "Matrix":
        return Matrix([[s * x for x in row] for row in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [[Fraction(0)] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            arow = self.data[i]
            orow = out[i]
            for k in range(self.cols):
                a = arow[k]
                if not a:
                    continue
                brow = other.data[k]
                for j in range(other.cols):
                    b = brow[j]
                    if b:
                        orow[j] = orow[j] + a * b
        return Matrix(out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.data[i][j] == other.data[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __hash__(self):
        return hash(tuple(tuple(row) for row in self.data))

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def trace(self):
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        t = Fraction(0)
        for i in range(self.rows):
            t = t + self.data[i][i]
        return t

    def column_vector(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def to_float(self):
        return [[float(x) for x in row] for row in self.data]

    def to_strings(self):
        return [[str(x) for x in row] for row in self.data]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix[{self.rows}x{self.cols}]({body})"


def _pivot_row(rows, col, start):
    """Index of the nonzero entry of least bit-size in a column, or None."""
    best, best_w = None, None
    for i in range(start, len(rows)):
        x = rows[i][col]
        if x:
            w = _bitsize(x)
            if best is None or w < best_w:
                best, best_w = i, w
    return best


def solve_exact(A: Matrix, b: Matrix):
    """Solve A x = b exactly; returns None when the system is inconsistent.

    Works for rectangular A; when the solution is underdetermined the free
    variables are set to zero.
    """
    if A.rows != b.rows:
        raise ValueError("A and b must have the same number of rows")
    m, n, k = A.rows, A.cols, b.cols
    aug = [A.data[i][:] + b.data[i][:] for i in range(m)]
    pivots = []  # (row, col)
    prow = 0
    for col in range(n):
        piv = _pivot_row(aug, col, prow)
        if piv is None:
            continue
        aug[prow], aug[piv] = aug[piv], aug[prow]
        pr = aug[prow]
        d = pr[col]
        for i in range(m):
            if i == prow:
                continue
            f = aug[i][col]
            if not f:
                continue
            ratio = f / d
            row = aug[i]
            for j in range(col, n + k):
                if pr[j]:
                    row[j] = row[j] - ratio * pr[j]
        pivots.append((prow, col))
        prow += 1
        if prow == m:
            break
    for i in range(prow, m):
        if any(aug[i][n + j] for j in range(k)):
            return None  # zero row of A with nonzero right-hand side
    x = Matrix.zeros(n, k)
    for row, col in pivots:
        d = aug[row][col]
        for j in range(k):
            x.data[col][j] = aug[row][n + j] / d
    return x


def nullspace(A: Matrix) -> list:
    """Basis of {v : A v = 0} as column vectors (possibly empty)."""
    m, n = A.rows, A.cols
    rows = [row[:] for row in A.data]
    pivots = []
    prow = 0
    for col in range(n):
        piv = _pivot_row(rows, col, prow)
        if piv is None:
            continue
        rows[prow], rows[piv] = rows[piv], rows[prow]
        pr = rows[prow]
        d = pr[col]
        for i in range(m):
            if i == prow:
                continue
            f = rows[i][col]
            if not f:
                continue
            ratio = f / d
            row = rows[i]
            for j in range(col, n):
                if pr[j]:
                    row[j] = row[j] - ratio * pr[j]
        pivots.append((prow, col))
        prow += 1
        if prow == m:
            break
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for row, col in pivots:
            v[col] = -rows[row][fc] / rows[row][col]
        basis.append(Matrix.column(v))
    return basis


def inverse(A: Matrix) -> Matrix:
    if A.rows != A.cols:
        raise ValueError("inverse of a non-square matrix")
    x = solve_exact(A, Matrix.identity(A.rows))
    if x is None or (A @ x) != Matrix.identity(A.rows):
        raise ValueError("matrix is singular")
    return x


def det(A: Matrix):
    """Determinant by fraction-preserving elimination with row swaps."""
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    rows = [row[:] for row in A.data]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        piv = _pivot_row(rows, col, col)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        d = rows[col][col]
        result = result * d
        for i in range(col + 1, n):
            f = rows[i][col]
            if not f:
                continue
            ratio = f / d
            for j in range(col, n):
                if rows[col][j]:
                    rows[i][j] = rows[i][j] - ratio * rows[col][j]
    return sign * result


def is_positive_definite(G: Matrix) -> bool:
    """Exact Sylvester criterion: all leading principal minors positive.

    Symmetric elimination without pivoting; the running pivot product equals
    the current leading minor, so any non-positive pivot decides.
    """
    if not G.is_symmetric():
        return False
    n = G.rows
    rows = [row[:] for row in G.data]
    for kk in range(n):
        pivot = rows[kk][kk]
        if isinstance(pivot, Fraction):
            if pivot <= 0:
                return False
        elif isinstance(pivot, Surd):
            if pivot.sign() <= 0:
                return False
        else:
            raise TypeError("positive definiteness needs rational or surd entries")
        for i in range(kk + 1, n):
            f = rows[i][kk]
            if not f:
                continue
            ratio = f / pivot
            for j in range(kk, n):
                if rows[kk][j]:
                    rows[i][j] = rows[i][j] - ratio * rows[kk][j]
    return True


# ---------------------------------------------------------------------------
# Polynomials over Q and Sturm real-rootedness
# ---------------------------------------------------------------------------


class Polynomial:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a[:]
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([c * other for c in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def divmod(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = self.coeffs[:]
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.coeffs
        while len(rem) >= len(d) and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(d):
                break
            f = rem[-1] / d[-1]
            shift = len(rem) - len(d)
            q[shift] = f
            for i, c in enumerate(d):
                rem[shift + i] -= f * c
            rem.pop()
        return Polynomial(q), Polynomial(rem)

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading()
        return Polynomial([c / lead for c in self.coeffs])

    def eval(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})*t^{i}" if i else f"({c})")
        return " + ".join(terms)

    __repr__ = __str__


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd via Euclid with monic normalization each step."""
    a, b = Polynomial(a.coeffs), Polynomial(b.coeffs)
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.monic() if not r.is_zero() else r
    return a.monic() if not a.is_zero() else a


def char_poly(A: Matrix) -> Polynomial:
    """det(tI - A) for a square rational matrix, via Hessenberg reduction."""
    if A.rows != A.cols:
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = A.rows
    H = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in A.data]
    for row in H:
        for x in row:
            if not isinstance(x, Fraction):
                raise TypeError("char_poly requires rational entries")
    # Exact Hessenberg form: eliminate below the first subdiagonal.
    for col in range(n - 2):
        piv = None
        for i in range(col + 1, n):
            if H[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != col + 1:
            H[col + 1], H[piv] = H[piv], H[col + 1]
            for row in H:
                row[col + 1], row[piv] = row[piv], row[col + 1]
        d = H[col + 1][col]
        for i in range(col + 2, n):
            f = H[i][col]
            if not f:
                continue
            ratio = f / d
            for j in range(n):
                H[i][j] -= ratio * H[col + 1][j]
            for r in range(n):
                H[r][col + 1] += ratio * H[r][i]
    # Leading-minor recurrence for det(tI - H) on a Hessenberg matrix.
    one = Polynomial([Fraction(1)])
    t = Polynomial([Fraction(0), Fraction(1)])
    p = [one]  # p[k] = char poly of the leading k x k block
    for k in range(1, n + 1):
        term = (t - Polynomial([H[k - 1][k - 1]])) * p[k - 1]
        prod = Fraction(1)
        for i in range(k - 2, -1, -1):
            prod *= H[i + 1][i]
            term = term - (H[i][k - 1] * prod) * p[i]
        p.append(term)
    return p[n]


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if (x > 0) != (y > 0))


def _sign_at_infinity(p: Polynomial, positive: bool) -> Fraction:
    lead = p.leading()
    if positive or p.degree % 2 == 0:
        return lead
    return -lead


def real_rooted(p: Polynomial) -> bool:
    """True iff every complex root of p is real, decided by Sturm sequences.

    Multiplicities are removed first (gcd with the derivative), then the real
    roots of the square-free part are counted and compared to its degree.
    """
    if p.is_zero():
        raise ValueError("real-rootedness of the zero polynomial is undefined")
    if p.degree == 0:
        return True
    g = poly_gcd(p, p.derivative())
    sf, _ = p.divmod(g)
    sf = sf.monic()
    if sf.degree == 0:
        return True
    chain = [sf, sf.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        _, r = chain[-2].divmod(chain[-1])
        if r.is_zero():
            break
        # scale only by positive constants; sign flips would corrupt the
        # variation counts
        scale = abs(r.leading())
        chain.append(Polynomial([-c / scale for c in r.coeffs]))
    chain = [q for q in chain if not q.is_zero()]
    at_minus = [_sign_at_infinity(q, positive=False) for q in chain]
    at_plus = [_sign_at_infinity(q, positive=True) for q in chain]
    count = _sign_changes(at_minus) - _sign_changes(at_plus)
    return count == sf.degree


# ---------------------------------------------------------------------------
# Sparse exact nullspace (for large structured kernels)
# ---------------------------------------------------------------------------


def sparse_nullspace(rows, ncols: int, with_free: bool = False):
    """Kernel basis of a sparse rational system.

    ``rows`` is an iterable of {col: Fraction} dictionaries.  Returns a list
    of dense coefficient lists spanning the kernel (paired with the free
    column indices when ``with_free``).  Each basis vector carries 1 at its
    own free column and 0 at every other free column.  Suited to the large,
    very sparse endomorphism systems where a dense pass would be wasteful.
    """
    pivots: dict[int, dict[int, Fraction]] = {}  # pivot col -> normalized row
    for row in rows:
        row = {c: v for c, v in row.items() if v}
        while row:
            hit = None
            for c in row:
                if c in pivots:
                    hit = c
                    break
            if hit is None:
                break
            f = row.pop(hit)
            for c, v in pivots[hit].items():
                if c == hit:
                    continue
                nv = row.get(c, Fraction(0)) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if row:
            pc = min(row)
            d = row[pc]
            pivots[pc] = {c: v / d for c, v in row.items()}
    # Back-substitute into reduced row echelon form.
    for pc in sorted(pivots, reverse=True):
        row = pivots[pc]
        for qc in list(row):
            if qc != pc and qc in pivots:
                f = row.pop(qc)
                for c, v in pivots[qc].items():
                    if c == qc:
                        continue
                    nv = row.get(c, Fraction(0)) - f * v
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for pc, row in pivots.items():
            coeff = row.get(fc)
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    if with_free:
        return basis, free
    return basis
