"""Structure-constant Lie algebras and their elementary invariants.

A LieAlgebra stores the bracket [e_i, e_j] only for i < j; antisymmetry is
therefore unbreakable by construction.  The Jacobi identity is validated
eagerly, so an invalid table is unrepresentable downstream.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .linalg import Matrix, Q, Subspace, ZERO, as_q, q_str

Element = tuple  # coordinate vector relative to the owning algebra's basis


class InvalidStructureError(ValueError):
    """Raised when a structure-constant table fails validation."""


class NotClosedError(ValueError):
    """Raised when a subspace is not closed under the bracket."""

    def __init__(self, i: int, j: int, escaped):
        self.witness = (i, j, escaped)
        super().__init__(
            f"bracket of span basis vectors {i}, {j} escapes the span"
        )


class ValidationReport:
    __slots__ = ("antisymmetry_ok", "jacobi_failures")

    def __init__(self, antisymmetry_ok: bool, jacobi_failures: list):
        self.antisymmetry_ok = antisymmetry_ok
        self.jacobi_failures = jacobi_failures

    @property
    def ok(self) -> bool:
        return self.antisymmetry_ok and not self.jacobi_failures


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q given by structure constants.

    `table` maps (i, j) with i < j to the coordinate vector of [e_i, e_j];
    missing pairs mean a zero bracket.
    """

    __slots__ = ("dim", "labels", "table")

    def __init__(
        self,
        dim: int,
        table: Mapping[tuple[int, int], Sequence],
        labels: Sequence[str] | None = None,
        check: bool = True,
    ):
        if labels is None:
            labels = tuple(f"e{i}" for i in range(dim))
        labels = tuple(labels)
        if len(labels) != dim:
            raise ValueError("label count != dimension")
        norm: dict[tuple[int, int], tuple] = {}
        for (i, j), v in table.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bad bracket index pair ({i}, {j})")
            vec = tuple(as_q(x) for x in v)
            if len(vec) != dim:
                raise ValueError("bracket value length != dimension")
            if any(vec):
                norm[(i, j)] = vec
        self.dim = dim
        self.labels = labels
        self.table = norm
        if check:
            report = self.validate()
            if not report.ok:
                i, j, k = report.jacobi_failures[0]
                raise InvalidStructureError(
                    f"Jacobi identity fails on basis triple ({i}, {j}, {k})"
                )

    def zero(self) -> Element:
        return (ZERO,) * self.dim

    def basis_element(self, i: int) -> Element:
        return tuple(Q(1) if j == i else ZERO for j in range(self.dim))

    def bracket_basis(self, i: int, j: int) -> Element:
        """[e_i, e_j] for arbitrary i, j (antisymmetry applied)."""
        if i == j:
            return self.zero()
        if i < j:
            return self.table.get((i, j), self.zero())
        v = self.table.get((j, i))
        return self.zero() if v is None else tuple(-x for x in v)

    def bracket(self, x: Sequence, y: Sequence) -> Element:
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("element length != dimension")
        out = [ZERO] * self.dim
        for (i, j), v in self.table.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for k, vk in enumerate(v):
                    if vk:
                        out[k] += c * vk
        return tuple(out)

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of y -> [x, y] in the basis of the algebra."""
        if len(x) != self.dim:
            raise ValueError("element length != dimension")
        cols = [self.bracket(x, self.basis_element(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols) if self.dim else Matrix([])

    def validate(self) -> ValidationReport:
        failures = []
        n = self.dim
        for i in range(n):
            ei = self.basis_element(i)
            for j in range(i + 1, n):
                ej = self.basis_element(j)
                bij = self.bracket_basis(i, j)
                for k in range(j + 1, n):
                    ek = self.basis_element(k)
                    s1 = self.bracket(bij, ek)
                    s2 = self.bracket(self.bracket_basis(j, k), ei)
                    s3 = self.bracket(self.bracket_basis(k, i), ej)
                    if any(a + b + c for a, b, c in zip(s1, s2, s3)):
                        failures.append((i, j, k))
        return ValidationReport(True, failures)

    def center(self) -> Subspace:
        """{x : [x, y] = 0 for all y}, as the nullspace of the stacked ads."""
        n = self.dim
        rows = []
        for j in range(n):
            adj = self.ad_matrix(self.basis_element(j))
            for k in range(n):
                # coordinate k of [x, e_j] = -[e_j, x] as a function of x
                rows.append([-adj[k, i] for i in range(n)])
        if not rows:
            return Subspace.full(0)
        from .linalg import nullspace

        return nullspace(Matrix(rows))

    def product_space(self, a: Subspace, b: Subspace) -> Subspace:
        """Span of [a, b]."""
        vecs = [self.bracket(u, v) for u in a.vectors() for v in b.vectors()]
        return Subspace.from_vectors(self.dim, vecs)

    def derived_subalgebra(self) -> Subspace:
        full = Subspace.full(self.dim)
        return self.product_space(full, full)

    def series(self) -> "SeriesReport":
        full = Subspace.full(self.dim)
        derived = [full]
        while derived[-1].dim > 0:
            nxt = self.product_space(derived[-1], derived[-1])
            if nxt == derived[-1]:
                break
            derived.append(nxt)
        lower = [full]
        while lower[-1].dim > 0:
            nxt = self.product_space(full, lower[-1])
            if nxt == lower[-1]:
                break
            lower.append(nxt)
        return SeriesReport(
            tuple(derived),
            tuple(lower),
            is_solvable=derived[-1].dim == 0,
            is_nilpotent=lower[-1].dim == 0,
        )

    def subalgebra_structure(
        self, span: Subspace, labels: Sequence[str] | None = None
    ) -> "LieAlgebra":
        """Structure constants of the bracket restricted to `span`, in the
        canonical basis of span.  Raises NotClosedError when some bracket of
        basis vectors escapes the span."""
        if span.ambient_dim != self.dim:
            raise ValueError("span ambient dimension != algebra dimension")
        vecs = span.vectors()
        d = len(vecs)
        table = {}
        for i in range(d):
            for j in range(i + 1, d):
                br = self.bracket(vecs[i], vecs[j])
                coords = span.coords_of(br)
                if coords is None:
                    raise NotClosedError(i, j, br)
                table[(i, j)] = coords
        if labels is None:
            labels = tuple(f"v{i}" for i in range(d))
        return LieAlgebra(d, table, labels, check=True)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, labels={list(self.labels)})"

    def describe_element(self, x: Sequence) -> str:
        terms = [
            (f"{q_str(c)}*" if c != 1 else "") + self.labels[i]
            for i, c in enumerate(x)
            if c
        ]
        return " + ".join(terms) if terms else "0"


class SeriesReport:
    __slots__ = ("derived_series", "lower_central_series", "is_solvable", "is_nilpotent")

    def __init__(self, derived_series, lower_central_series, is_solvable, is_nilpotent):
        self.derived_series = derived_series
        self.lower_central_series = lower_central_series
        self.is_solvable = is_solvable
        self.is_nilpotent = is_nilpotent
