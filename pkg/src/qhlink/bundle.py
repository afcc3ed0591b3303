"""The quasi-Hopf bundle: all structure tensors of one algebra, plus formula helpers.

A bundle collects the multiplication, unit, coproduct, counit, antipode (and its
inverse), the coassociator with its inverse, the distinguished elements alpha and
beta, and optionally an R-matrix pair and a ribbon pair.  Inverses are supplied
data, never computed here: exact Laurent coefficients admit no division, and
validating a supplied inverse is cheap.

The method layer turns the component formulas of the theory into short
compositional pipelines: permute legs, apply a structure map at a leg, insert a
fixed element as a new leg, and multiply out contiguous leg groups.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .tensor import (
    Element,
    StructureMap,
    collapse,
    collapse_groups,
    embed,
    insert_leg,
    multiply,
    permute_legs,
)


@dataclass(frozen=True)
class QuasiHopfBundle:
    name: str
    ring: object
    dim: int
    basis_labels: tuple[str, ...]
    mult: StructureMap          # (2,1)
    unit: Element               # rank 1
    coproduct: StructureMap     # (1,2)
    counit: StructureMap        # (1,0)
    antipode: StructureMap      # (1,1)
    antipode_inv: StructureMap  # (1,1)
    phi: Element                # rank 3
    phi_inv: Element            # rank 3
    alpha: Element              # rank 1
    beta: Element               # rank 1
    r: Element | None = None        # rank 2
    r_inv: Element | None = None    # rank 2
    v: Element | None = None        # rank 1
    v_inv: Element | None = None    # rank 1
    reps: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    # -- element constructors -------------------------------------------------

    def basis_element(self, i: int) -> Element:
        return Element.basis(self.ring, self.dim, i)

    def unit_power(self, k: int) -> Element:
        out = self.unit
        for _ in range(k - 1):
            out = out.tensor(self.unit)
        return out

    def scalar(self, value) -> Element:
        return Element.scalar(self.ring, self.dim, value)

    # -- composition helpers ---------------------------------------------------

    def mul(self, *xs: Element) -> Element:
        out = xs[0]
        for x in xs[1:]:
            out = multiply(out, x, self.mult)
        return out

    def emb(self, x: Element, positions, total: int) -> Element:
        return embed(x, positions, total, self.unit)

    def prm(self, x: Element, dest) -> Element:
        return permute_legs(x, dest)

    def ins(self, x: Element, e: Element, at: int) -> Element:
        return insert_leg(x, e, at)

    def clp(self, x: Element) -> Element:
        return collapse(x, self.mult)

    def clp_groups(self, x: Element, sizes) -> Element:
        return collapse_groups(x, self.mult, sizes)

    def ap(self, smap: StructureMap, x: Element, at: int = 1) -> Element:
        return smap.apply(x, at)

    def S(self, x: Element, at: int = 1) -> Element:
        return self.antipode.apply(x, at)

    def S_inv(self, x: Element, at: int = 1) -> Element:
        return self.antipode_inv.apply(x, at)

    def eps_scalar(self, x: Element):
        """Counit of a rank-1 element, as a plain scalar."""
        return self.counit.apply(x, 1).as_scalar()

    def coproduct_power(self, n: int, x: Element) -> Element:
        """The n-fold left coproduct action on a rank-1 element, landing in rank n+1.

        Recursion: the coproduct is always applied to the leftmost leg, with the
        0-fold power being the identity.
        """
        if x.rank != 1:
            raise ValueError("coproduct_power expects a rank-1 element")
        out = x
        for _ in range(n):
            out = self.coproduct.apply(out, at=1)
        return out

    # -- mode conversion --------------------------------------------------------

    def to_complex(self, tol: float = 1e-9) -> "QuasiHopfBundle":
        """Reinterpret a rational-mode bundle over the complex floats."""
        from .scalars import ComplexRing

        if self.ring.mode == "complex":
            return self
        if self.ring.mode != "rational":
            raise ValueError("only rational-mode bundles convert to complex")
        ring = ComplexRing(tol)

        def conv_elem(x: Element | None) -> Element | None:
            if x is None:
                return None
            return Element(ring, x.dim, x.rank,
                           {i: complex(float(c)) for i, c in x.entries.items()})

        def conv_map(m: StructureMap) -> StructureMap:
            table = {
                src: {dst: complex(float(c)) for dst, c in col.items()}
                for src, col in m.table.items()
            }
            return StructureMap(ring, m.dim, m.src_rank, m.dst_rank, table)

        reps = {name: rep.to_complex(ring) for name, rep in self.reps.items()}
        return replace(
            self,
            ring=ring,
            mult=conv_map(self.mult),
            unit=conv_elem(self.unit),
            coproduct=conv_map(self.coproduct),
            counit=conv_map(self.counit),
            antipode=conv_map(self.antipode),
            antipode_inv=conv_map(self.antipode_inv),
            phi=conv_elem(self.phi),
            phi_inv=conv_elem(self.phi_inv),
            alpha=conv_elem(self.alpha),
            beta=conv_elem(self.beta),
            r=conv_elem(self.r),
            r_inv=conv_elem(self.r_inv),
            v=conv_elem(self.v),
            v_inv=conv_elem(self.v_inv),
            reps=reps,
        )
