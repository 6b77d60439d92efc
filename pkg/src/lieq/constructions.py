"""Builders for new algebras: semidirect products, full graphs and their
iterates, Heisenberg algebras, graded powers, and a named catalog.

Basis order in every semidirect product is s-part first, then g-part, and
the embedding records both index ranges.
"""

from __future__ import annotations

import os

from .derivations import DerHomomorphism, DerivationSpace, derivations
from .liealg import LieAlgebra
from .linalg import Matrix, Q, ZERO

DEFAULT_DIM_CAP = 64


def dim_cap() -> int:
    return int(os.environ.get("LIE_DIM_CAP", DEFAULT_DIM_CAP))


class DimensionCapError(ValueError):
    """Raised when an iterated construction would exceed the dimension cap."""


class GraphEmbedding:
    """A semidirect product together with the index ranges of its two slots."""

    __slots__ = ("whole", "s_slot", "g_slot", "phi")

    def __init__(self, whole: LieAlgebra, s_slot: range, g_slot: range, phi: DerHomomorphism):
        self.whole = whole
        self.s_slot = s_slot
        self.g_slot = g_slot
        self.phi = phi

    def embed_s(self, s_coords) -> tuple:
        out = [ZERO] * self.whole.dim
        for k, c in zip(self.s_slot, s_coords):
            out[k] = c
        return tuple(out)

    def embed_g(self, g_coords) -> tuple:
        out = [ZERO] * self.whole.dim
        for k, c in zip(self.g_slot, g_coords):
            out[k] = c
        return tuple(out)

    def split(self, x) -> tuple[tuple, tuple]:
        return (
            tuple(x[k] for k in self.s_slot),
            tuple(x[k] for k in self.g_slot),
        )

    def __repr__(self):
        return f"GraphEmbedding(dim {self.whole.dim} = {len(self.s_slot)} + {len(self.g_slot)})"


def semidirect(s: LieAlgebra, g: LieAlgebra, phi: DerHomomorphism) -> GraphEmbedding:
    """s x_phi g with bracket
    [(s1,g1),(s2,g2)] = ([s1,s2], s1(g2) - s2(g1) + [g1,g2])."""
    if phi.source.dim != s.dim or phi.target.dim != g.dim:
        raise ValueError("homomorphism does not map s into Der(g)")
    p, n = s.dim, g.dim
    dim = p + n
    table: dict[tuple[int, int], list] = {}

    def put(i, j, vec):
        if any(vec):
            table[(i, j)] = vec

    for i in range(p):
        for j in range(i + 1, p):
            sb = s.bracket_basis(i, j)
            put(i, j, list(sb) + [ZERO] * n)
    for i in range(p):
        img = phi.images[i]
        for j in range(n):
            put(i, p + j, [ZERO] * p + list(img.column(j)))
    for i in range(n):
        for j in range(i + 1, n):
            gb = g.bracket_basis(i, j)
            put(p + i, p + j, [ZERO] * p + list(gb))
    labels = tuple(f"s:{l}" for l in s.labels) + tuple(f"g:{l}" for l in g.labels)
    whole = LieAlgebra(dim, table, labels, check=True)
    return GraphEmbedding(whole, range(0, p), range(p, dim), phi)


def full_graph(g: LieAlgebra, ds: DerivationSpace | None = None) -> GraphEmbedding:
    """f(g) = Der(g) x_id g.  Der(g) is computed here (canonical basis)
    unless a precomputed DerivationSpace for g is supplied."""
    if ds is None:
        ds = derivations(g)
    elif ds.base is not g and ds.base.table != g.table:
        raise ValueError("derivation space does not belong to this algebra")
    phi = DerHomomorphism.identity_on_der(ds)
    return semidirect(ds.algebra, g, phi)


def full_graph_iter(g: LieAlgebra, n: int, cap: int | None = None) -> list[GraphEmbedding]:
    """The chain f(g), f^2(g), ..., f^n(g)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if cap is None:
        cap = dim_cap()
    chain = []
    current = g
    for _ in range(n):
        ds = derivations(current)
        if ds.dim + current.dim > cap:
            raise DimensionCapError(
                f"full graph dimension {ds.dim + current.dim} exceeds cap {cap}"
            )
        emb = full_graph(current, ds)
        chain.append(emb)
        current = emb.whole
    return chain


def heisenberg(N: int) -> LieAlgebra:
    """h_{2N+1}: basis x1..xN, y1..yN, c with [x_i, y_j] = delta_ij c."""
    if N < 1:
        raise ValueError("N must be >= 1")
    dim = 2 * N + 1
    c = [ZERO] * dim
    c[-1] = Q(1)
    table = {(i, N + i): tuple(c) for i in range(N)}
    labels = (
        tuple(f"x{i+1}" for i in range(N))
        + tuple(f"y{i+1}" for i in range(N))
        + ("c",)
    )
    return LieAlgebra(dim, table, labels, check=True)


class GradedPower:
    """g^(+)n: n slot copies of g with [u, v](k) = sum_{i+j=k} [u(i), v(j)].

    Slot k occupies coordinates (k-1)*dim(g) .. k*dim(g)-1.
    """

    __slots__ = ("algebra", "base", "copies")

    def __init__(self, algebra: LieAlgebra, base: LieAlgebra, copies: int):
        self.algebra = algebra
        self.base = base
        self.copies = copies

    def __repr__(self):
        return f"GradedPower({self.copies} copies of dim {self.base.dim})"


def graded_power(g: LieAlgebra, n: int) -> GradedPower:
    if n < 1:
        raise ValueError("n must be >= 1")
    m = g.dim
    dim = n * m
    table: dict[tuple[int, int], tuple] = {}
    for si in range(1, n + 1):
        for sj in range(si, n + 1):
            k = si + sj
            if k > n:
                continue
            off_i, off_j, off_k = (si - 1) * m, (sj - 1) * m, (k - 1) * m
            for a in range(m):
                for b in range(m):
                    i, j = off_i + a, off_j + b
                    if i >= j:
                        continue
                    br = g.bracket_basis(a, b)
                    if not any(br):
                        continue
                    vec = [ZERO] * dim
                    for t, x in enumerate(br):
                        vec[off_k + t] = x
                    table[(i, j)] = tuple(vec)
    labels = tuple(
        f"{lab}@{k}" for k in range(1, n + 1) for lab in g.labels
    )
    alg = LieAlgebra(dim, table, labels, check=True)
    return GradedPower(alg, g, n)


def grading_derivation(gp: GradedPower) -> Matrix:
    """Diagonal derivation acting as multiplication by k on slot k."""
    m = gp.base.dim
    dim = gp.copies * m
    return Matrix(
        [
            [Q((i // m) + 1) if i == j else ZERO for j in range(dim)]
            for i in range(dim)
        ]
    )


def abelian(n: int) -> LieAlgebra:
    if n < 0:
        raise ValueError("dimension must be >= 0")
    return LieAlgebra(n, {}, tuple(f"e{i+1}" for i in range(n)), check=False)


def nonabelian2() -> LieAlgebra:
    """The 2-dimensional algebra [x, y] = y (complete)."""
    return LieAlgebra(2, {(0, 1): (ZERO, Q(1))}, ("x", "y"), check=True)


CATALOG_HELP = (
    "abelian:<n> | nonabelian2 | heisenberg:<N> | "
    "graded-power:<name>:<n> | full-graph:<name>"
)


def catalog(name: str) -> LieAlgebra:
    """Resolve a catalog name; modifiers compose from the right, e.g.
    full-graph:heisenberg:1 or graded-power:heisenberg:1:2."""
    if name == "nonabelian2":
        return nonabelian2()
    if name.startswith("abelian:"):
        return abelian(_count(name.split(":", 1)[1]))
    if name.startswith("heisenberg:"):
        return heisenberg(_count(name.split(":", 1)[1]))
    if name.startswith("graded-power:"):
        rest = name.split(":", 1)[1]
        inner_name, _, n = rest.rpartition(":")
        return graded_power(catalog(inner_name), _count(n)).algebra
    if name.startswith("full-graph:"):
        return full_graph(catalog(name.split(":", 1)[1])).whole
    raise KeyError(f"unknown catalog name {name!r} (expected {CATALOG_HELP})")


def _count(s: str) -> int:
    try:
        n = int(s)
    except ValueError:
        raise KeyError(f"bad catalog count {s!r}") from None
    return n
