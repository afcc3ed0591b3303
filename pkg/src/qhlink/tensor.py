"""Sparse coordinate tensors over the algebra basis and linear structure maps.

An Element of rank k is a sparse map from k-tuples of basis indices to scalars and
realizes an element of the k-fold tensor power of the underlying algebra.  A
StructureMap of signature (j, k) is a linear map from the j-fold to the k-fold
power, stored column-wise; it houses the product, coproduct, counit and antipode.
Everything here is pure and immutable after construction, so concurrent
evaluation over independent expressions needs no locking.

Leg positions in the public API are 1-based, matching the subscript conventions
of embedded elements like R_13 or a coassociator permuted to legs (3, 1, 2).
"""

from __future__ import annotations

import itertools


class TensorShapeError(ValueError):
    """Rank, dimension or leg-range mismatch between tensor operands."""


class InversionUnsupportedError(ArithmeticError):
    """Element inversion is not available in this scalar ring."""


class SingularElementError(ArithmeticError):
    """The element has no inverse in the tensor-power algebra."""


class Element:
    """Element of the k-fold tensor power, rank 0 meaning a plain scalar."""

    __slots__ = ("ring", "dim", "rank", "entries")

    def __init__(self, ring, dim: int, rank: int, entries=None):
        data = {}
        if entries:
            for idx, c in entries.items() if isinstance(entries, dict) else entries:
                idx = tuple(idx)
                if len(idx) != rank:
                    raise TensorShapeError(f"index {idx} has wrong rank (expected {rank})")
                if any(i < 0 or i >= dim for i in idx):
                    raise TensorShapeError(f"index {idx} out of range for dim {dim}")
                c = ring.coerce(c)
                if not ring.is_zero(c):
                    s = data.get(idx)
                    c = c if s is None else s + c
                    if ring.is_zero(c):
                        data.pop(idx, None)
                    else:
                        data[idx] = c
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "rank", int(rank))
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("Element is immutable")

    @classmethod
    def zero(cls, ring, dim: int, rank: int) -> "Element":
        return cls(ring, dim, rank)

    @classmethod
    def scalar(cls, ring, dim: int, value) -> "Element":
        return cls(ring, dim, 0, {(): value})

    @classmethod
    def basis(cls, ring, dim: int, index: int) -> "Element":
        return cls(ring, dim, 1, {(index,): ring.one})

    def _check_compatible(self, other: "Element"):
        if self.rank != other.rank or self.dim != other.dim:
            raise TensorShapeError(
                f"rank/dim mismatch: ({self.rank},{self.dim}) vs ({other.rank},{other.dim})"
            )
        if self.ring != other.ring:
            raise TensorShapeError("elements live over different scalar rings")

    def __add__(self, other: "Element") -> "Element":
        self._check_compatible(other)
        out = dict(self.entries)
        ring = self.ring
        for idx, c in other.entries.items():
            s = out.get(idx)
            c = c if s is None else s + c
            if ring.is_zero(c):
                out.pop(idx, None)
            else:
                out[idx] = c
        return Element(ring, self.dim, self.rank, out)

    def __neg__(self) -> "Element":
        return Element(self.ring, self.dim, self.rank, {i: -c for i, c in self.entries.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, factor) -> "Element":
        factor = self.ring.coerce(factor)
        return Element(self.ring, self.dim, self.rank,
                       {i: c * factor for i, c in self.entries.items()})

    def tensor(self, other: "Element") -> "Element":
        if self.dim != other.dim or self.ring != other.ring:
            raise TensorShapeError("tensor factors live over different algebras")
        out = {}
        for i1, c1 in self.entries.items():
            for i2, c2 in other.entries.items():
                out[i1 + i2] = c1 * c2
        return Element(self.ring, self.dim, self.rank + other.rank, out)

    def residual(self, other: "Element") -> float:
        """Max-norm of the difference, as a float, for reporting."""
        self._check_compatible(other)
        ring = self.ring
        worst = 0.0
        for idx in self.entries.keys() | other.entries.keys():
            a = self.entries.get(idx, ring.zero)
            b = other.entries.get(idx, ring.zero)
            worst = max(worst, ring.magnitude(a - b))
        return worst

    def equals(self, other: "Element") -> bool:
        self._check_compatible(other)
        if self.ring.exact:
            return self.entries == other.entries
        return self.residual(other) <= self.ring.tol

    def is_zero(self) -> bool:
        if self.ring.exact:
            return not self.entries
        return all(self.ring.magnitude(c) <= self.ring.tol for c in self.entries.values())

    def as_scalar(self):
        if self.rank != 0:
            raise TensorShapeError("not a rank-0 element")
        return self.entries.get((), self.ring.zero)

    def coefficient(self, idx):
        return self.entries.get(tuple(idx), self.ring.zero)

    def max_norm(self) -> float:
        return max((self.ring.magnitude(c) for c in self.entries.values()), default=0.0)

    def __repr__(self):
        if not self.entries:
            return f"Element(rank={self.rank}, 0)"
        items = ", ".join(f"{idx}: {c!r}" for idx, c in sorted(self.entries.items()))
        return f"Element(rank={self.rank}, {{{items}}})"


class StructureMap:
    """Linear map between tensor powers, stored as images of source basis tuples."""

    __slots__ = ("ring", "dim", "src_rank", "dst_rank", "table")

    def __init__(self, ring, dim: int, src_rank: int, dst_rank: int, table=None):
        data: dict[tuple, dict[tuple, object]] = {}
        if table:
            for src, images in table.items():
                src = tuple(src)
                if len(src) != src_rank:
                    raise TensorShapeError(f"source index {src} has wrong rank")
                col = {}
                for dst, c in images.items():
                    dst = tuple(dst)
                    if len(dst) != dst_rank:
                        raise TensorShapeError(f"target index {dst} has wrong rank")
                    c = ring.coerce(c)
                    if not ring.is_zero(c):
                        col[dst] = c
                if col:
                    data[src] = col
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "src_rank", int(src_rank))
        object.__setattr__(self, "dst_rank", int(dst_rank))
        object.__setattr__(self, "table", data)

    def __setattr__(self, name, value):
        raise AttributeError("StructureMap is immutable")

    @classmethod
    def identity(cls, ring, dim: int) -> "StructureMap":
        return cls(ring, dim, 1, 1, {(i,): {(i,): ring.one} for i in range(dim)})

    @classmethod
    def from_rows(cls, ring, dim: int, src_rank: int, dst_rank: int, rows) -> "StructureMap":
        """Rows are [*src_index, *dst_index, literal] with literals already coerced."""
        table: dict[tuple, dict[tuple, object]] = {}
        for row in rows:
            src = tuple(row[:src_rank])
            dst = tuple(row[src_rank:src_rank + dst_rank])
            col = table.setdefault(src, {})
            c = ring.coerce(row[-1])
            col[dst] = col.get(dst, ring.zero) + c
        return cls(ring, dim, src_rank, dst_rank, table)

    def image(self, src) -> Element:
        return Element(self.ring, self.dim, self.dst_rank, self.table.get(tuple(src), {}))

    def apply(self, x: Element, at: int = 1) -> Element:
        """Contract this map into legs at .. at+src_rank-1 of x (1-based, contiguous)."""
        j = self.src_rank
        if at < 1 or at - 1 + j > x.rank:
            raise TensorShapeError(
                f"leg range {at}..{at + j - 1} out of bounds for rank {x.rank}"
            )
        if x.dim != self.dim or x.ring != self.ring:
            raise TensorShapeError("map and element are incompatible")
        ring = self.ring
        lo = at - 1
        out: dict[tuple, object] = {}
        for idx, c in x.entries.items():
            images = self.table.get(idx[lo:lo + j])
            if not images:
                continue
            head, tail = idx[:lo], idx[lo + j:]
            for dst, w in images.items():
                key = head + dst + tail
                s = out.get(key)
                v = c * w if s is None else s + c * w
                if ring.is_zero(v):
                    out.pop(key, None)
                else:
                    out[key] = v
        return Element(ring, self.dim, x.rank - j + self.dst_rank, out)


def permute_legs(x: Element, dest) -> Element:
    """Move leg j of x to position dest[j-1]; dest must be a bijection of 1..rank."""
    dest = tuple(dest)
    if sorted(dest) != list(range(1, x.rank + 1)):
        raise TensorShapeError(f"{dest} is not a permutation of 1..{x.rank}")
    out = {}
    for idx, c in x.entries.items():
        t = [0] * x.rank
        for j, i in enumerate(idx):
            t[dest[j] - 1] = i
        out[tuple(t)] = c
    return Element(x.ring, x.dim, x.rank, out)


def embed(x: Element, positions, total: int, unit: Element) -> Element:
    """Place the legs of x at the named positions of a rank-`total` element, unit elsewhere.

    A non-increasing position list permutes the legs, e.g. embed(R, [2, 1], 2)
    realizes R_21.
    """
    positions = tuple(positions)
    if len(positions) != x.rank:
        raise TensorShapeError("one position per leg is required")
    if len(set(positions)) != len(positions):
        raise TensorShapeError("duplicate embedding positions")
    if any(p < 1 or p > total for p in positions):
        raise TensorShapeError("embedding position out of range")
    rest = [p for p in range(1, total + 1) if p not in positions]
    out = {}
    for idx, c in x.entries.items():
        for fill in itertools.product(*(unit.entries.items(),) * len(rest)):
            t = [0] * total
            coeff = c
            for j, i in enumerate(idx):
                t[positions[j] - 1] = i
            for (ui, uc), p in zip(fill, rest):
                t[p - 1] = ui[0]
                coeff = coeff * uc
            key = tuple(t)
            s = out.get(key)
            v = coeff if s is None else s + coeff
            out[key] = v
    return Element(x.ring, x.dim, total, out)


def insert_leg(x: Element, e: Element, at: int) -> Element:
    """Insert the rank-1 element e as a new leg at position `at` (1-based)."""
    if e.rank != 1:
        raise TensorShapeError("inserted element must have rank 1")
    if at < 1 or at > x.rank + 1:
        raise TensorShapeError("insertion position out of range")
    out = {}
    for idx, c in x.entries.items():
        for (j,), ec in e.entries.items():
            out[idx[:at - 1] + (j,) + idx[at - 1:]] = c * ec
    return Element(x.ring, x.dim, x.rank + 1, out)


def multiply(x: Element, y: Element, mult: StructureMap) -> Element:
    """Componentwise product in the tensor-power algebra, leg by leg through mult."""
    x._check_compatible(y)
    ring = x.ring
    out: dict[tuple, object] = {}
    table = mult.table
    for ix, cx in x.entries.items():
        for iy, cy in y.entries.items():
            partial = {(): cx * cy}
            dead = False
            for a, b in zip(ix, iy):
                images = table.get((a, b))
                if not images:
                    dead = True
                    break
                nxt: dict[tuple, object] = {}
                for stem, pc in partial.items():
                    for (o,), w in images.items():
                        key = stem + (o,)
                        s = nxt.get(key)
                        v = pc * w if s is None else s + pc * w
                        nxt[key] = v
                partial = nxt
            if dead:
                continue
            for key, v in partial.items():
                s = out.get(key)
                v2 = v if s is None else s + v
                if ring.is_zero(v2):
                    out.pop(key, None)
                else:
                    out[key] = v2
    return Element(ring, x.dim, x.rank, out)


def collapse(x: Element, mult: StructureMap) -> Element:
    """Multiply all legs together left to right, yielding a rank-1 element."""
    if x.rank == 0:
        raise TensorShapeError("cannot collapse a rank-0 element")
    while x.rank > 1:
        x = mult.apply(x, at=1)
    return x


def collapse_groups(x: Element, mult: StructureMap, sizes) -> Element:
    """Multiply out contiguous leg groups of the given sizes (must sum to the rank)."""
    if sum(sizes) != x.rank:
        raise TensorShapeError("group sizes must sum to the rank")
    at = 1
    for size in sizes:
        for _ in range(size - 1):
            x = mult.apply(x, at=at)
        at += 1
    return x


def _basis_tuples(dim: int, rank: int):
    return list(itertools.product(range(dim), repeat=rank))


def solve_linear(ring, a_rows, rhs_cols):
    """Solve A X = B by Gaussian elimination; A is square over an exact field or complex.

    a_rows and rhs_cols are lists of row lists.  Raises SingularElementError when no
    unique solution exists.
    """
    n = len(a_rows)
    width = len(rhs_cols[0]) if n else 0
    a = [list(row) + list(b) for row, b in zip(a_rows, rhs_cols)]
    exact = ring.exact
    for col in range(n):
        pivot = None
        if exact:
            for r in range(col, n):
                if not ring.is_zero(a[r][col]):
                    pivot = r
                    break
        else:
            best = -1.0
            for r in range(col, n):
                m = ring.magnitude(a[r][col])
                if m > best:
                    best, pivot = m, r
            if best <= getattr(ring, "tol", 0.0):
                pivot = None
        if pivot is None:
            raise SingularElementError("element not invertible")
        a[col], a[pivot] = a[pivot], a[col]
        inv = ring.invert(a[col][col])
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if ring.is_zero(f):
                continue
            a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:n + width] for row in a]


def invert_element(x: Element, mult: StructureMap, unit: Element) -> Element:
    """Invert x in the tensor-power algebra via its left-regular representation.

    Supported over the complex and rational rings (both are fields, so the linear
    solve is meaningful); the Laurent ring has no division and callers must supply
    inverses there.
    """
    ring = x.ring
    if ring.mode == "laurent":
        raise InversionUnsupportedError("inversion unsupported; supply inverse")
    if x.rank == 0:
        return Element.scalar(ring, x.dim, ring.invert(x.as_scalar()))
    basis = _basis_tuples(x.dim, x.rank)
    pos = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    cols = [[ring.zero] * n for _ in range(n)]
    for j, b in enumerate(basis):
        e_b = Element(ring, x.dim, x.rank, {b: ring.one})
        img = multiply(x, e_b, mult)
        for idx, c in img.entries.items():
            cols[pos[idx]][j] = c
    unit_power = unit
    for _ in range(x.rank - 1):
        unit_power = unit_power.tensor(unit)
    rhs = [[ring.zero] for _ in range(n)]
    for idx, c in unit_power.entries.items():
        rhs[pos[idx]][0] = c
    try:
        sol = solve_linear(ring, cols, rhs)
    except SingularElementError:
        raise SingularElementError("element not invertible") from None
    inv = Element(ring, x.dim, x.rank, {b: sol[i][0] for i, b in enumerate(basis)})
    check = multiply(x, inv, mult)
    if not check.equals(unit_power):
        raise SingularElementError("element not invertible")
    return inv
