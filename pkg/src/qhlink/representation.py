"""Finite-dimensional modules: push algebra tensors down to matrices on powers of V.

A representation stores one matrix per algebra basis element; the loader-level
validation (unit goes to the identity, products go to products on all basis
pairs) catches transcription errors before any braid machinery runs.  RepMatrix
is a dense matrix of scalars on a tensor power of V, with the handful of
operations the trace calculus needs: products, Kronecker products, traces and a
partial trace over the last factor.
"""

from __future__ import annotations

from .bundle import QuasiHopfBundle
from .tensor import Element, TensorShapeError


class RepresentationError(ValueError):
    pass


class RepMatrix:
    """Dense matrix over the scalar ring acting on a tensor power of the module."""

    __slots__ = ("ring", "site_dim", "legs", "size", "rows")

    def __init__(self, ring, site_dim: int, legs: int, rows):
        size = site_dim**legs
        if len(rows) != size or any(len(r) != size for r in rows):
            raise TensorShapeError(f"matrix is not {size}x{size}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "site_dim", int(site_dim))
        object.__setattr__(self, "legs", int(legs))
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "rows", [list(r) for r in rows])

    def __setattr__(self, name, value):
        raise AttributeError("RepMatrix is immutable")

    @classmethod
    def identity(cls, ring, site_dim: int, legs: int) -> "RepMatrix":
        n = site_dim**legs
        one, zero = ring.one, ring.zero
        return cls(ring, site_dim, legs,
                   [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ring, site_dim: int, legs: int) -> "RepMatrix":
        n = site_dim**legs
        return cls(ring, site_dim, legs, [[ring.zero] * n for _ in range(n)])

    @classmethod
    def flip(cls, ring, site_dim: int) -> "RepMatrix":
        """The twist map on V tensor V: e_a tensor e_b -> e_b tensor e_a."""
        n = site_dim
        rows = [[ring.zero] * (n * n) for _ in range(n * n)]
        for a in range(n):
            for b in range(n):
                rows[b * n + a][a * n + b] = ring.one
        return cls(ring, site_dim, 2, rows)

    def _check(self, other: "RepMatrix"):
        if self.size != other.size or self.ring != other.ring:
            raise TensorShapeError("matrix shape or ring mismatch")

    def mul(self, other: "RepMatrix") -> "RepMatrix":
        self._check(other)
        n = self.size
        zero = self.ring.zero
        brows = other.rows
        out = []
        for i in range(n):
            arow = self.rows[i]
            orow = [zero] * n
            for k in range(n):
                a = arow[k]
                if self.ring.is_zero(a):
                    continue
                brow = brows[k]
                for j in range(n):
                    v = brow[j]
                    if not self.ring.is_zero(v):
                        orow[j] = orow[j] + a * v
            out.append(orow)
        return RepMatrix(self.ring, self.site_dim, self.legs, out)

    def add(self, other: "RepMatrix") -> "RepMatrix":
        self._check(other)
        return RepMatrix(self.ring, self.site_dim, self.legs,
                         [[a + c for a, c in zip(ra, rc)]
                          for ra, rc in zip(self.rows, other.rows)])

    def sub(self, other: "RepMatrix") -> "RepMatrix":
        self._check(other)
        return RepMatrix(self.ring, self.site_dim, self.legs,
                         [[a - c for a, c in zip(ra, rc)]
                          for ra, rc in zip(self.rows, other.rows)])

    def scale(self, factor) -> "RepMatrix":
        factor = self.ring.coerce(factor)
        return RepMatrix(self.ring, self.site_dim, self.legs,
                         [[factor * a for a in row] for row in self.rows])

    def kron(self, other: "RepMatrix") -> "RepMatrix":
        if self.ring != other.ring or self.site_dim != other.site_dim:
            raise TensorShapeError("kron factors incompatible")
        n, m = self.size, other.size
        out = [[None] * (n * m) for _ in range(n * m)]
        for i in range(n):
            for j in range(n):
                a = self.rows[i][j]
                for p in range(m):
                    row = out[i * m + p]
                    brow = other.rows[p]
                    for q in range(m):
                        row[j * m + q] = a * brow[q]
        return RepMatrix(self.ring, self.site_dim, self.legs + other.legs, out)

    def trace(self):
        acc = self.ring.zero
        for i in range(self.size):
            acc = acc + self.rows[i][i]
        return acc

    def contract_last(self, small: "RepMatrix") -> "RepMatrix":
        """Partial trace over the last factor of self * (identity tensor small)."""
        if small.legs != 1 or small.site_dim != self.site_dim:
            raise TensorShapeError("contract_last expects a one-site matrix")
        d = self.site_dim
        n = self.size // d
        zero = self.ring.zero
        out = [[zero] * n for _ in range(n)]
        for bi in range(n):
            for bj in range(n):
                acc = zero
                for a in range(d):
                    srow = self.rows[bi * d + a]
                    for c in range(d):
                        v = srow[bj * d + c]
                        if not self.ring.is_zero(v):
                            acc = acc + v * small.rows[c][a]
                out[bi][bj] = acc
        return RepMatrix(self.ring, self.site_dim, self.legs - 1, out)

    def residual(self, other: "RepMatrix") -> float:
        self._check(other)
        worst = 0.0
        for ra, rc in zip(self.rows, other.rows):
            for a, c in zip(ra, rc):
                worst = max(worst, self.ring.magnitude(a - c))
        return worst

    def equals(self, other: "RepMatrix") -> bool:
        if self.ring.exact:
            return all(self.ring.eq(a, c)
                       for ra, rc in zip(self.rows, other.rows)
                       for a, c in zip(ra, rc))
        return self.residual(other) <= self.ring.tol

    def scalar_value(self, tol: float | None = None):
        """Return z when this matrix equals z times the identity, else None."""
        ring = self.ring
        if tol is None:
            tol = 0.0 if ring.exact else ring.tol
        z = self.rows[0][0]
        for i in range(self.size):
            for j in range(self.size):
                want = z if i == j else ring.zero
                if ring.magnitude(self.rows[i][j] - want) > tol:
                    return None
        return z

    def __repr__(self):
        return f"RepMatrix({self.size}x{self.size} on {self.legs} legs)"


class Representation:
    """A named module: one matrix per basis element, validated as a homomorphism."""

    __slots__ = ("name", "dim_v", "matrices", "irreducible")

    def __init__(self, name: str, dim_v: int, matrices: list[RepMatrix],
                 irreducible: bool = True):
        self.name = name
        self.dim_v = int(dim_v)
        self.matrices = list(matrices)
        self.irreducible = bool(irreducible)

    def validate(self, b: QuasiHopfBundle) -> None:
        if len(self.matrices) != b.dim:
            raise RepresentationError("one matrix per basis element is required")
        ident = RepMatrix.identity(b.ring, self.dim_v, 1)
        if not rep_element(self, b.unit).equals(ident):
            raise RepresentationError(f"rep {self.name}: unit does not map to identity")
        for i in range(b.dim):
            for j in range(b.dim):
                prod = b.mul(b.basis_element(i), b.basis_element(j))
                lhs = rep_element(self, prod)
                rhs = self.matrices[i].mul(self.matrices[j])
                if not lhs.equals(rhs):
                    raise RepresentationError(
                        f"rep {self.name}: homomorphism fails on basis pair ({i},{j})"
                    )

    def to_complex(self, ring) -> "Representation":
        mats = [
            RepMatrix(ring, m.site_dim, m.legs,
                      [[complex(float(c)) for c in row] for row in m.rows])
            for m in self.matrices
        ]
        return Representation(self.name, self.dim_v, mats, self.irreducible)


def rep_element(rep: Representation, x: Element) -> RepMatrix:
    """Image of a rank-k element under the k-fold tensor power of the module map."""
    if x.rank == 0:
        raise TensorShapeError("rank-0 elements have no matrix image")
    out = RepMatrix.zero(x.ring, rep.dim_v, x.rank)
    for idx, c in x.entries.items():
        m = rep.matrices[idx[0]]
        for i in idx[1:]:
            m = m.kron(rep.matrices[i])
        out = out.add(m.scale(c))
    return out


def rep_coproduct_power(b: QuasiHopfBundle, rep: Representation, x: Element,
                        n: int) -> RepMatrix:
    """Represented n-fold coproduct power of a rank-1 element, on n+1 module legs."""
    return rep_element(rep, b.coproduct_power(n, x))


def phi_conjugator(b: QuasiHopfBundle, rep: Representation, i: int, n: int,
                   inverse: bool = False) -> RepMatrix:
    """The conjugator dressing the i-th braid generator on n+1 strands.

    For i >= 2 this is the coassociator with the (i-2)-fold coproduct power pushed
    into its first leg, represented on legs 1..i+1 and padded with the identity.
    The first generator needs no dressing and gets the identity matrix, matching
    the three-strand form of the quasi-Yang-Baxter equation where the leftmost
    crossing appears bare.
    """
    if i < 1 or i > n:
        raise ValueError(f"generator index {i} out of range 1..{n}")
    if i == 1:
        return RepMatrix.identity(b.ring, rep.dim_v, n + 1)
    core = b.phi_inv if inverse else b.phi
    for _ in range(i - 2):
        core = b.ap(b.coproduct, core, at=1)
    mat = rep_element(rep, core)
    pad = n - i
    if pad:
        mat = mat.kron(RepMatrix.identity(b.ring, rep.dim_v, pad))
    return mat
