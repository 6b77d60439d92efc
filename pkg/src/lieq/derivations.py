"""Derivation algebras, completeness certificates, and related subspaces.

Der(g) is the nullspace of the Leibniz system D[e_i,e_j] = [De_i,e_j] +
[e_i,De_j], assembled sparsely over row-major matrix coordinates and
canonicalized by RREF, so the basis is deterministic.  `is_derivation` is an
independent checker (direct bracket evaluation) that shares no code with the
solver.
"""

from __future__ import annotations

from typing import Sequence

from .liealg import LieAlgebra
from .linalg import (
    Matrix,
    Q,
    SparseSystem,
    Subspace,
    ZERO,
    nullspace,
)


class NotInnerError(ValueError):
    """Raised when a matrix is not an inner derivation."""


class NonzeroCenterError(ValueError):
    """Raised by operations that need ad to be injective."""


def is_derivation(g: LieAlgebra, m: Matrix) -> bool:
    """Leibniz check by direct bracket evaluation on all basis pairs.

    Deliberately independent of the nullspace solver behind `derivations`.
    """
    if m.rows != g.dim or m.cols != g.dim:
        return False
    cols = [m.column(i) for i in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = m.apply(g.bracket_basis(i, j))
            rhs = g.bracket(cols[i], g.basis_element(j))
            rhs2 = g.bracket(g.basis_element(i), cols[j])
            if any(a != b + c for a, b, c in zip(lhs, rhs, rhs2)):
                return False
    return True


class DerivationSpace:
    """Der(g): canonical matrix basis, its own Lie algebra structure, and the
    inner-derivation subspace in Der-coefficient coordinates."""

    __slots__ = (
        "base",
        "space",
        "basis_mats",
        "algebra",
        "inner",
        "inner_flat",
        "_ad_preimages",
    )

    def __init__(self, base, space, basis_mats, algebra, inner, inner_flat):
        self.base = base
        self.space = space  # Subspace of Q^(n^2), RREF-canonical
        self.basis_mats = basis_mats
        self.algebra = algebra  # bracket = matrix commutator
        self.inner = inner  # Subspace of Q^dim (Der coefficients)
        self.inner_flat = inner_flat  # ad(g) inside Q^(n^2)
        self._ad_preimages = None

    @property
    def dim(self) -> int:
        return len(self.basis_mats)

    def coords_of(self, m: Matrix) -> tuple | None:
        """Coefficients of m in the canonical Der basis, or None if outside."""
        return self.space.coords_of(m.flatten())

    def from_coords(self, coeffs: Sequence) -> Matrix:
        n = self.base.dim
        out = [[ZERO] * n for _ in range(n)]
        for c, mat in zip(coeffs, self.basis_mats):
            if c:
                for r in range(n):
                    row = mat.data[r]
                    orow = out[r]
                    for k in range(n):
                        if row[k]:
                            orow[k] += c * row[k]
        return Matrix(out)

    def subspace_mats(self, sub: Subspace) -> list[Matrix]:
        """Matrices for a subspace given in Der-coefficient coordinates."""
        if sub.ambient_dim != self.dim:
            raise ValueError("subspace not in Der-coefficient coordinates")
        return [self.from_coords(v) for v in sub.vectors()]

    def __repr__(self):
        return f"DerivationSpace(base dim {self.base.dim}, dim {self.dim})"


def derivations(g: LieAlgebra) -> DerivationSpace:
    """Compute Der(g) from the Leibniz system.

    Variable order is row-major over matrix entries: D[r][c] has index
    r*n + c.  The nullspace basis is canonicalized by RREF, which fixes the
    basis across runs and platforms.
    """
    n = g.dim
    sys = SparseSystem(n * n)
    # c[k][(i,j)] with i<j: structure constants
    for i in range(n):
        for j in range(i + 1, n):
            cij = g.bracket_basis(i, j)
            for k in range(n):
                row: dict[int, object] = {}

                def bump(idx, val, row=row):
                    if val:
                        row[idx] = row.get(idx, ZERO) + val

                # coordinate k of D[e_i,e_j]: sum_l c_ij^l D[k][l]
                for l, cl in enumerate(cij):
                    bump(k * n + l, cl)
                # minus coordinate k of [De_i, e_j]: De_i = sum_l D[l][i] e_l
                for l in range(n):
                    clj = g.bracket_basis(l, j)
                    bump(l * n + i, -clj[k])
                # minus coordinate k of [e_i, De_j]
                for l in range(n):
                    cil = g.bracket_basis(i, l)
                    bump(l * n + j, -cil[k])
                sys.add_row(row)
    space = Subspace.from_vectors(n * n, sys.nullspace_basis())
    basis_mats = tuple(Matrix.unflatten(v, n, n) for v in space.vectors())
    d = len(basis_mats)

    # Lie algebra structure: commutators solved back into the canonical basis
    table = {}
    for a in range(d):
        for b in range(a + 1, d):
            comm = basis_mats[a].commutator(basis_mats[b])
            coords = space.coords_of(comm.flatten())
            if coords is None:
                raise RuntimeError("Der(g) not closed under commutator")
            table[(a, b)] = coords
    labels = tuple(f"D{a}" for a in range(d))
    algebra = LieAlgebra(d, table, labels, check=True)

    ad_flats = [g.ad_matrix(g.basis_element(i)).flatten() for i in range(n)]
    inner_flat = Subspace.from_vectors(n * n, ad_flats)
    inner_coords = []
    for v in ad_flats:
        coords = space.coords_of(v)
        if coords is None:
            raise RuntimeError("inner derivation outside computed Der(g)")
        inner_coords.append(coords)
    inner = Subspace.from_vectors(d, inner_coords)
    return DerivationSpace(g, space, basis_mats, algebra, inner, inner_flat)


def inner_preimage(ds: DerivationSpace, d: Matrix):
    """The unique x with ad(x) = d; requires a center-free base.

    Preimages of the canonical inner_flat basis are solved once and cached,
    so repeated calls only extract RREF coordinates.
    """
    g = ds.base
    if ds._ad_preimages is None:
        if g.center().dim != 0:
            raise NonzeroCenterError("inner preimage is not unique: center is nonzero")
        from .linalg import solve

        cols = Matrix.from_columns(
            [g.ad_matrix(g.basis_element(i)).flatten() for i in range(g.dim)]
        )
        pre = []
        for v in ds.inner_flat.vectors():
            x = solve(cols, v)
            if x is None:
                raise RuntimeError("inner basis vector without ad preimage")
            pre.append(x)
        ds._ad_preimages = tuple(pre)
    coords = ds.inner_flat.coords_of(d.flatten())
    if coords is None:
        raise NotInnerError("matrix is not an inner derivation")
    x = [ZERO] * g.dim
    for c, p in zip(coords, ds._ad_preimages):
        if c:
            x = [a + c * b for a, b in zip(x, p)]
    return tuple(x)


class CompletenessCertificate:
    """center_dim = 0 and der_dim = inner_dim  <=>  complete; otherwise the
    witness exhibits the failure (a central element or an outer derivation)."""

    __slots__ = ("center_dim", "der_dim", "inner_dim", "complete", "witness")

    def __init__(self, center_dim, der_dim, inner_dim, complete, witness):
        self.center_dim = center_dim
        self.der_dim = der_dim
        self.inner_dim = inner_dim
        self.complete = complete
        self.witness = witness  # ('central', element) | ('outer', Matrix) | None

    def __repr__(self):
        return (
            f"CompletenessCertificate(complete={self.complete}, "
            f"center_dim={self.center_dim}, der_dim={self.der_dim}, "
            f"inner_dim={self.inner_dim})"
        )


def is_complete(g: LieAlgebra, ds: DerivationSpace | None = None) -> CompletenessCertificate:
    center = g.center()
    if ds is None:
        ds = derivations(g)
    der_dim = ds.dim
    inner_dim = ds.inner.dim
    complete = center.dim == 0 and der_dim == inner_dim
    witness = None
    if not complete:
        if center.dim > 0:
            witness = ("central", center.vectors()[0])
        else:
            for k in range(der_dim):
                unit = tuple(Q(1) if i == k else ZERO for i in range(der_dim))
                if not ds.inner.contains_vector(unit):
                    witness = ("outer", ds.basis_mats[k])
                    break
    return CompletenessCertificate(center.dim, der_dim, inner_dim, complete, witness)


def centralizer_in_der(ds: DerivationSpace, b_mats: Sequence[Matrix]) -> Subspace:
    """{D in Der(g) : [D, B] = 0 for all B}, in Der-coefficient coordinates."""
    for b in b_mats:
        if not is_derivation(ds.base, b):
            raise ValueError("centralizer generator is not a derivation")
    d = ds.dim
    if not b_mats:
        return Subspace.full(d)
    rows = []
    for b in b_mats:
        cols = [mat.commutator(b).flatten() for mat in ds.basis_mats]
        nn = ds.base.dim ** 2
        for r in range(nn):
            row = [cols[k][r] for k in range(d)]
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace.full(d)
    return nullspace(Matrix(rows))


class DerHomomorphism:
    """Linear map from a Lie algebra into Der(target), one image matrix per
    source basis vector, validated as a Lie homomorphism."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: LieAlgebra, target: LieAlgebra, images: Sequence[Matrix]):
        if len(images) != source.dim:
            raise ValueError("one image matrix per source basis vector required")
        self.source = source
        self.target = target
        self.images = tuple(images)
        self._validate()

    def _validate(self) -> None:
        for k, m in enumerate(self.images):
            if not is_derivation(self.target, m):
                raise ValueError(f"image of source basis vector {k} is not a derivation")
        for a in range(self.source.dim):
            for b in range(a + 1, self.source.dim):
                lhs = self.apply(self.source.bracket_basis(a, b))
                rhs = self.images[a].commutator(self.images[b])
                if lhs != rhs:
                    raise ValueError(
                        f"not a Lie homomorphism on source basis pair ({a}, {b})"
                    )

    def apply(self, s_coords: Sequence) -> Matrix:
        n = self.target.dim
        out = [[ZERO] * n for _ in range(n)]
        for c, m in zip(s_coords, self.images):
            if c:
                for r in range(n):
                    for k in range(n):
                        if m.data[r][k]:
                            out[r][k] += c * m.data[r][k]
        return Matrix(out)

    @staticmethod
    def zero(source: LieAlgebra, target: LieAlgebra) -> "DerHomomorphism":
        z = Matrix.zero(target.dim, target.dim)
        return DerHomomorphism(source, target, [z] * source.dim)

    @staticmethod
    def identity_on_der(ds: DerivationSpace) -> "DerHomomorphism":
        """The identity Der(g) -> Der(g), with Der(g) as its own algebra."""
        return DerHomomorphism(ds.algebra, ds.base, ds.basis_mats)


def f_s_subspace(ds: DerivationSpace, phi: DerHomomorphism) -> Subspace:
    """F_s(g) = {D in Der(g) : [D, phi(s_k)] inner for all k}, in
    Der-coefficient coordinates.  Membership in ad(g) is encoded through the
    orthogonal complement of the flattened inner span."""
    if phi.target is not ds.base and phi.target.dim != ds.base.dim:
        raise ValueError("homomorphism target does not match the derivation base")
    d = ds.dim
    comp = ds.inner_flat.orthogonal_complement()
    if comp.dim == 0 or not phi.images:
        return Subspace.full(d)
    rows = []
    for img in phi.images:
        cols = [mat.commutator(img).flatten() for mat in ds.basis_mats]
        for w in comp.vectors():
            row = [
                sum((a * b for a, b in zip(w, cols[k]) if a and b), ZERO)
                for k in range(d)
            ]
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace.full(d)
    return nullspace(Matrix(rows))


def z_s_subspace(g: LieAlgebra, phi: DerHomomorphism) -> Subspace:
    """Z_s(g): central elements annihilated by every phi image."""
    if phi.target.dim != g.dim:
        raise ValueError("homomorphism target does not match the algebra")
    zs = g.center()
    if not phi.images:
        return zs
    stacked = phi.images[0]
    for m in phi.images[1:]:
        stacked = stacked.stack(m)
    return zs.intersect(nullspace(stacked))


class TorusReport:
    __slots__ = ("ok", "failures", "eigenvalues")

    def __init__(self, ok: bool, failures: list, eigenvalues: tuple | None):
        self.ok = ok
        self.failures = failures  # list of (check name, witness description)
        self.eigenvalues = eigenvalues  # per generator, when split

    def __repr__(self):
        return f"TorusReport(ok={self.ok}, failures={self.failures})"


def verify_torus(ds: "DerivationSpace | LieAlgebra", b_mats: Sequence[Matrix]) -> TorusReport:
    """Check that b_mats generate a torus: derivations, pairwise commuting,
    split-semisimple, and simultaneously diagonalizable (so every rational
    combination is semisimple, not just the generators).

    Accepts either a DerivationSpace or the bare algebra.
    """
    from .linalg import split_semisimple_check

    base = ds.base if isinstance(ds, DerivationSpace) else ds
    failures = []
    for k, b in enumerate(b_mats):
        if not is_derivation(base, b):
            failures.append(("derivation", f"generator {k} fails the Leibniz identity"))
    for a in range(len(b_mats)):
        for b in range(a + 1, len(b_mats)):
            if not b_mats[a].commutator(b_mats[b]).is_zero():
                failures.append(("commuting", f"generators {a} and {b} do not commute"))
    eigs = []
    for k, b in enumerate(b_mats):
        rep = split_semisimple_check(b)
        if not rep.semisimple:
            failures.append(("semisimple", f"generator {k}: minimal polynomial not squarefree"))
        elif not rep.split:
            failures.append(("split", f"generator {k}: irrational spectrum"))
        else:
            eigs.append(rep.eigenvalues)
    if not failures and b_mats:
        total = _simultaneous_eigendim(base.dim, b_mats)
        if total != base.dim:
            failures.append(
                ("simultaneous", "no common eigenbasis: refinement does not fill the space")
            )
    return TorusReport(not failures, failures, tuple(eigs) if not failures else None)


def _simultaneous_eigendim(n: int, b_mats: Sequence[Matrix]) -> int:
    from .weights import refine_eigenspaces

    try:
        parts = refine_eigenspaces(n, b_mats)
    except ValueError:
        return -1
    return sum(p[1].dim for p in parts)


def diagonal_derivation_torus(g: LieAlgebra) -> list[Matrix]:
    """Basis of the space of diagonal derivations: diag(t) with
    t_k = t_i + t_j for every nonzero structure constant c_ij^k.

    Diagonal matrices commute and are split-semisimple, so this is always a
    torus on g (for many graded nilpotent algebras, a maximal one).
    """
    n = g.dim
    sys = SparseSystem(n)
    for (i, j), v in g.table.items():
        for k, c in enumerate(v):
            if c:
                row = {k: Q(1)}
                row[i] = row.get(i, ZERO) - 1
                row[j] = row.get(j, ZERO) - 1
                sys.add_row(row)
    sub = Subspace.from_vectors(n, sys.nullspace_basis())
    return [
        Matrix([[t[i] if i == j else ZERO for j in range(n)] for i in range(n)])
        for t in sub.vectors()
    ]


class TowerReport:
    __slots__ = ("dims", "stabilized", "stable_index", "budget_exceeded")

    def __init__(self, dims, stabilized, stable_index, budget_exceeded):
        self.dims = dims
        self.stabilized = stabilized
        self.stable_index = stable_index
        self.budget_exceeded = budget_exceeded

    def __repr__(self):
        return (
            f"TowerReport(dims={self.dims}, stabilized={self.stabilized}, "
            f"index={self.stable_index}, budget_exceeded={self.budget_exceeded})"
        )


def derivation_tower(g: LieAlgebra, max_steps: int = 4, dim_cap: int = 64) -> TowerReport:
    """g, Der(g), Der^2(g), ... embedded via ad; stops when Der(h) = ad(h).

    Requires a trivial center so each ad embedding is injective (then every
    algebra along the tower is center-free as well).
    """
    if g.center().dim != 0:
        raise NonzeroCenterError("derivation tower requires a center-free algebra")
    dims = [g.dim]
    current = g
    for step in range(max_steps + 1):
        ds = derivations(current)
        if ds.inner.dim == ds.dim:
            return TowerReport(tuple(dims), True, step, False)
        if step == max_steps or ds.dim > dim_cap:
            return TowerReport(tuple(dims), False, None, True)
        current = ds.algebra
        dims.append(current.dim)
    return TowerReport(tuple(dims), False, None, True)
