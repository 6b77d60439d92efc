"""Exact rational linear algebra: matrices, RREF, nullspaces, canonical subspaces.

All arithmetic is over Q with arbitrary-precision integers.  gmpy2.mpq is
used when available (it is API-compatible with fractions.Fraction and much
faster); otherwise Fraction is the scalar type.  Scalars are always stored
in lowest terms with positive denominator, so equality is exact.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    from fractions import Fraction as Q

Scalar = Q
ZERO = Q(0)
ONE = Q(1)


def as_q(x) -> Scalar:
    """Coerce an int, Fraction, mpq or 'p/q' string to the scalar type."""
    return Q(x)


def q_str(x) -> str:
    """Render a scalar as 'p' or 'p/q' with q > 0."""
    n, d = x.numerator, x.denominator
    return str(n) if d == 1 else f"{n}/{d}"


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def q_parse(s: str) -> Scalar:
    """Parse 'p' or 'p/q' exactly; decimal notation is rejected."""
    if not isinstance(s, str) or not _RATIONAL_RE.match(s):
        raise ValueError(f"not a rational string: {s!r}")
    return Q(s)


class Matrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Sequence[Sequence]):
        rows = tuple(tuple(as_q(x) for x in row) for row in data)
        self.data = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != self.cols:
                raise ValueError("ragged matrix rows")

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix([[ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(cols: Sequence[Sequence]) -> "Matrix":
        cols = [tuple(as_q(x) for x in c) for c in cols]
        if not cols:
            return Matrix([])
        return Matrix([[c[i] for c in cols] for i in range(len(cols[0]))])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(q_str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "Matrix":
        return Matrix([self.column(j) for j in range(self.cols)])

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-ONE)

    def scale(self, c) -> "Matrix":
        c = as_q(c)
        return Matrix([[c * x for x in row] for row in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().data
        return Matrix(
            [
                [
                    sum((a * b for a, b in zip(row, col) if a and b), ZERO)
                    for col in ot
                ]
                for row in self.data
            ]
        )

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(
            sum((a * b for a, b in zip(row, v) if a and b), ZERO)
            for row in self.data
        )

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def flatten(self) -> tuple:
        """Row-major entry vector."""
        return tuple(x for row in self.data for x in row)

    @staticmethod
    def unflatten(v: Sequence, rows: int, cols: int) -> "Matrix":
        if len(v) != rows * cols:
            raise ValueError("shape mismatch")
        return Matrix([v[i * cols : (i + 1) * cols] for i in range(rows)])

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("shape mismatch")
        return Matrix(list(self.data) + list(other.data))

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("non-square matrix")
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (Gauss-Jordan over Q)."""
    a = [list(row) for row in m.data]
    nr, nc = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return Matrix(a), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def rank_bareiss(m: Matrix) -> int:
    """Rank by fraction-free Bareiss elimination on the denominator-cleared
    integer matrix.  Independent of the Gauss-Jordan path; used as a
    cross-check oracle."""
    a = []
    for row in m.data:
        lcm = 1
        for x in row:
            d = int(x.denominator)
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        a.append([int(x.numerator) * (lcm // int(x.denominator)) for x in row])
    nr = len(a)
    nc = m.cols
    r = 0
    prev = 1
    for c in range(nc):
        if r == nr:
            break
        pr = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
    return r


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class SparseSystem:
    """Incremental sparse homogeneous system  A x = 0  over Q.

    Rows are fed one at a time as {col: value} dicts and reduced against the
    pivot rows seen so far (forward echelon, no back-reduction).  Built for
    the large Leibniz systems, whose rows are very sparse.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, Scalar]] = {}

    def add_row(self, row: dict[int, Scalar]) -> None:
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            lead = min(row)
            piv = self.pivot_rows.get(lead)
            if piv is None:
                inv = ONE / row[lead]
                self.pivot_rows[lead] = {c: v * inv for c, v in row.items()}
                return
            f = row[lead]
            for c, v in piv.items():
                nv = row.get(c, ZERO) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def nullspace_basis(self) -> list[tuple]:
        """Basis of the solution space, one vector per free column."""
        free = [c for c in range(self.ncols) if c not in self.pivot_rows]
        pivot_cols = sorted(self.pivot_rows, reverse=True)
        basis = []
        for fc in free:
            x: dict[int, Scalar] = {fc: ONE}
            for pc in pivot_cols:
                if pc > fc:
                    continue
                row = self.pivot_rows[pc]
                s = ZERO
                for c, v in row.items():
                    if c != pc:
                        xc = x.get(c)
                        if xc is not None:
                            s += v * xc
                if s:
                    x[pc] = -s
            basis.append(tuple(x.get(c, ZERO) for c in range(self.ncols)))
        return basis


def nullspace(m: Matrix) -> "Subspace":
    """Kernel {v : m v = 0} as a canonical Subspace."""
    sys = SparseSystem(m.cols)
    for row in m.data:
        sys.add_row({j: x for j, x in enumerate(row) if x != 0})
    return Subspace.from_vectors(m.cols, sys.nullspace_basis())


def solve(a: Matrix, b: Sequence) -> tuple | None:
    """Some x with a x = b, or None when the system is inconsistent."""
    if a.rows != len(b):
        raise ValueError("shape mismatch")
    aug = Matrix([list(row) + [as_q(x)] for row, x in zip(a.data, b)])
    r, pivots = rref(aug)
    if a.cols in pivots:
        return None
    x = [ZERO] * a.cols
    for i, c in enumerate(pivots):
        x[c] = r[i, a.cols]
    return tuple(x)


class Subspace:
    """Subspace of Q^n held as an RREF row basis: the canonical form.

    Equality of subspaces is entry-wise equality of the basis matrices.
    """

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Matrix):
        if basis.cols not in (ambient_dim, 0):
            raise ValueError("basis width != ambient dimension")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @staticmethod
    def from_vectors(ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [tuple(as_q(x) for x in v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError("vector length != ambient dimension")
        if not rows:
            return Subspace(ambient_dim, Matrix([]))
        r, pivots = rref(Matrix(rows))
        return Subspace(ambient_dim, Matrix(r.data[: len(pivots)]))

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix([]))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> tuple:
        return self.basis.data

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def contains_vector(self, v: Sequence) -> bool:
        v = [as_q(x) for x in v]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length != ambient dimension")
        for row in self.basis.data:
            lead = next(j for j, x in enumerate(row) if x != 0)
            f = v[lead]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return all(x == 0 for x in v)

    def coords_of(self, v: Sequence) -> tuple | None:
        """Coordinates of v in the canonical basis, or None if outside.

        Because the basis is RREF, the coordinates are just the entries of v
        at the pivot columns; the result is verified by reconstruction.
        """
        v = tuple(as_q(x) for x in v)
        coords = []
        for row in self.basis.data:
            lead = next(j for j, x in enumerate(row) if x != 0)
            coords.append(v[lead])
        recon = [ZERO] * self.ambient_dim
        for c, row in zip(coords, self.basis.data):
            if c:
                recon = [a + c * b for a, b in zip(recon, row)]
        if tuple(recon) != v:
            return None
        return tuple(coords)

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains_vector(v) for v in other.vectors())

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_vectors(
            self.ambient_dim, list(self.vectors()) + list(other.vectors())
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rref [[A A],[B 0]]; rows with zero left half carry the
        intersection in the right half."""
        self._check_ambient(other)
        n = self.ambient_dim
        rows = [list(v) + list(v) for v in self.vectors()]
        rows += [list(v) + [ZERO] * n for v in other.vectors()]
        if not rows:
            return Subspace.zero(n)
        r, pivots = rref(Matrix(rows))
        inter = [
            row[n:]
            for row in r.data[: len(pivots)]
            if all(x == 0 for x in row[:n])
        ]
        return Subspace.from_vectors(n, inter)

    def orthogonal_complement(self) -> "Subspace":
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return nullspace(self.basis)

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )


class Polynomial:
    """Dense polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [as_q(x) for x in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero():
            return "Polynomial(0)"
        terms = [f"{q_str(c)}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Polynomial(" + " + ".join(terms) + ")"

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        return Polynomial([c / lc for c in self.coeffs])

    def derivative(self) -> "Polynomial":
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def eval_scalar(self, x) -> Scalar:
        x = as_q(x)
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def eval_matrix(self, m: Matrix) -> Matrix:
        out = Matrix.zero(m.rows, m.cols)
        for c in reversed(self.coeffs):
            out = out @ m + Matrix.identity(m.rows).scale(c)
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = list(other.coeffs)
        q = [ZERO] * max(0, len(rem) - len(d) + 1)
        while len(rem) >= len(d):
            f = rem[-1] / d[-1]
            k = len(rem) - len(d)
            q[k] = f
            for i, c in enumerate(d):
                rem[k + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(q), Polynomial(rem)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree <= 0

    def rational_roots(self) -> list:
        """All rational roots, by the rational-root theorem (complete over Q)."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        cs = list(self.coeffs)
        lcm = 1
        for c in cs:
            d = int(c.denominator)
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        ics = [int(c.numerator) * (lcm // int(c.denominator)) for c in cs]
        roots = []
        shift = 0
        while ics[shift] == 0:
            shift += 1
        if shift:
            roots.append(ZERO)
        a0, an = abs(ics[shift]), abs(ics[-1])
        for p in _divisors(a0):
            for q in _divisors(an):
                for cand in (Q(p, q), Q(-p, q)):
                    if cand not in roots and self.eval_scalar(cand) == 0:
                        roots.append(cand)
        return sorted(roots)

    def splits_rationally(self) -> tuple[bool, list]:
        """Whether the polynomial is a product of rational linear factors;
        verified by deflating every found root."""
        if self.degree <= 0:
            return True, []
        roots = self.rational_roots()
        rem = self.monic()
        used = []
        for r in roots:
            lin = Polynomial([-r, ONE])
            while True:
                q, rr = rem.divmod(lin)
                if rr.is_zero():
                    rem = q
                    used.append(r)
                else:
                    break
        return rem.degree <= 0, used


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def minimal_polynomial(m: Matrix) -> Polynomial:
    """Monic polynomial of least degree annihilating m (Krylov on I, m, m^2, ...)."""
    if not m.is_square():
        raise ValueError("minimal polynomial of a non-square matrix")
    n = m.rows
    if n == 0:
        return Polynomial([ONE])
    powers = [Matrix.identity(n)]
    while True:
        k = len(powers)
        cols = [p.flatten() for p in powers]
        target = (powers[-1] @ m).flatten()
        x = solve(Matrix.from_columns(cols), target)
        if x is not None:
            # m^k = sum x_i m^i  =>  p(x) = x^k - sum x_i x^i
            return Polynomial([-c for c in x] + [ONE])
        powers.append(powers[-1] @ m)
        if k > n:  # cannot happen; defensive
            raise RuntimeError("minimal polynomial search exceeded dimension")


class SemisimplicityReport:
    """Result of the split-semisimplicity test for a square matrix."""

    __slots__ = ("semisimple", "split", "eigenvalues", "min_poly")

    def __init__(self, semisimple: bool, split: bool, eigenvalues, min_poly: Polynomial):
        self.semisimple = semisimple
        self.split = split
        self.eigenvalues = tuple(eigenvalues) if eigenvalues is not None else None
        self.min_poly = min_poly

    def __repr__(self):
        return (
            f"SemisimplicityReport(semisimple={self.semisimple}, split={self.split}, "
            f"eigenvalues={self.eigenvalues})"
        )


def split_semisimple_check(m: Matrix) -> SemisimplicityReport:
    """Semisimple  <=>  squarefree minimal polynomial; eigenvalues are
    reported only when the minimal polynomial splits over Q (split flag).
    """
    p = minimal_polynomial(m)
    squarefree = p.is_squarefree()
    splits, roots = p.splits_rationally()
    eig = sorted(set(roots)) if splits else None
    return SemisimplicityReport(squarefree, splits, eig, p)
