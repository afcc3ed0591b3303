"""The twist engine: gauge-transform a bundle by an invertible counit-normalized
two-tensor, and build the tower of conjugating cocycles for higher coproduct powers.

Twisting touches only the co-structure: the product, unit, antipode and ribbon
element pass through unchanged, the coproduct is conjugated, the coassociator and
R-matrix pick up the standard decorated products, and the distinguished elements
are rebuilt from the twistor.  The inverse coassociator is assembled from the
reversed product of supplied inverses, so no division is ever required.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

from .bundle import QuasiHopfBundle
from .tensor import (
    Element,
    SingularElementError,
    StructureMap,
    invert_element,
)


class TwistorError(ValueError):
    pass


@dataclass(frozen=True)
class Twistor:
    f: Element       # rank 2
    f_inv: Element   # rank 2

    @classmethod
    def identity(cls, b: QuasiHopfBundle) -> "Twistor":
        u2 = b.unit_power(2)
        return cls(u2, u2)

    def validate(self, b: QuasiHopfBundle) -> None:
        """Counit-normalization rows and the inverse pair; raises on violation."""
        u2 = b.unit_power(2)
        if not b.mul(self.f, self.f_inv).equals(u2) or not b.mul(self.f_inv, self.f).equals(u2):
            raise TwistorError("twistor not invertible")
        for leg in (1, 2):
            if not b.ap(b.counit, self.f, at=leg).equals(b.unit):
                raise TwistorError("twistor counit violation")
            if not b.ap(b.counit, self.f_inv, at=leg).equals(b.unit):
                raise TwistorError("twistor counit violation")


def twist(b: QuasiHopfBundle, t: Twistor, *, skip_alpha_update: bool = False) -> QuasiHopfBundle:
    """Return the twisted bundle.

    skip_alpha_update deliberately omits the update of alpha; it exists only as a
    fault-injection switch for demonstrating the sensitivity of the
    twist-invariance harness and never produces a valid bundle.
    """
    t.validate(b)
    f, f_inv = t.f, t.f_inv

    new_cop_table = {}
    for i in range(b.dim):
        conj = b.mul(f, b.coproduct.image((i,)), f_inv)
        new_cop_table[(i,)] = dict(conj.entries)
    coproduct_f = StructureMap(b.ring, b.dim, 1, 2, new_cop_table)

    f12 = b.emb(f, [1, 2], 3)
    f23_inv = b.emb(f_inv, [2, 3], 3)
    phi_f = b.mul(f12,
                  b.ap(b.coproduct, f, at=1),
                  b.phi,
                  b.ap(b.coproduct, f_inv, at=2),
                  f23_inv)
    f23 = b.emb(f, [2, 3], 3)
    f12_inv = b.emb(f_inv, [1, 2], 3)
    phi_f_inv = b.mul(f23,
                      b.ap(b.coproduct, f, at=2),
                      b.phi_inv,
                      b.ap(b.coproduct, f_inv, at=1),
                      f12_inv)

    # alpha_F = S(fbar) alpha fbar', beta_F = f beta S(f')
    ta = b.S(f_inv, at=1)
    alpha_f = b.clp(b.ins(ta, b.alpha, at=2))
    tb = b.S(f, at=2)
    beta_f = b.clp(b.ins(tb, b.beta, at=2))
    if skip_alpha_update:
        alpha_f = b.alpha

    r_f = r_f_inv = None
    if b.r is not None:
        r_f = b.mul(b.prm(f, [2, 1]), b.r, f_inv)
        r_f_inv = b.mul(f, b.r_inv, b.prm(f_inv, [2, 1]))

    return replace(
        b,
        name=f"{b.name}^F",
        coproduct=coproduct_f,
        phi=phi_f,
        phi_inv=phi_f_inv,
        alpha=alpha_f,
        beta=beta_f,
        r=r_f,
        r_inv=r_f_inv,
    )


def chi(b: QuasiHopfBundle, t: Twistor, n: int) -> tuple[Element, Element]:
    """The cocycle conjugating the n-fold twisted coproduct power to the plain one.

    chi_n is the ordered product of the twistor pushed through increasing
    coproduct powers on the first leg, each factor padded with units on trailing
    legs of the (n+1)-fold space; the inverse is the reversed product of the
    pushed-through inverse twistor.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    total = n + 1
    factors = []
    factors_inv = []
    g, g_inv = t.f, t.f_inv
    for k in range(n):
        factors.append(b.emb(g, range(1, k + 3), total))
        factors_inv.append(b.emb(g_inv, range(1, k + 3), total))
        if k + 1 < n:
            g = b.ap(b.coproduct, g, at=1)
            g_inv = b.ap(b.coproduct, g_inv, at=1)
    out = factors[0]
    for fac in factors[1:]:
        out = b.mul(out, fac)
    out_inv = factors_inv[-1]
    for fac in reversed(factors_inv[:-1]):
        out_inv = b.mul(out_inv, fac)
    return out, out_inv


def random_twistor(b: QuasiHopfBundle, seed: int, *, spread: float = 0.35,
                   max_attempts: int = 10) -> Twistor:
    """Seed-deterministic random twistor over the complex ring.

    A random perturbation of the identity two-tensor is projected onto the
    counit-normalized affine subspace (the counit slices are replaced by units),
    then invertibility is certified by linear solve.  The sampling is not uniform
    in any sense; it only needs to produce valid twistors.
    """
    if b.ring.mode != "complex":
        raise TwistorError("random twistors require the complex ring")
    rng = random.Random(seed)
    u2 = b.unit_power(2)
    for _ in range(max_attempts):
        entries = {}
        for i in range(b.dim):
            for j in range(b.dim):
                entries[(i, j)] = complex(rng.uniform(-spread, spread),
                                          rng.uniform(-spread, spread))
        g = Element(b.ring, b.dim, 2, entries)
        eps1 = b.ap(b.counit, g, at=1)     # rank 1
        eps2 = b.ap(b.counit, g, at=2)     # rank 1
        eps12 = b.ap(b.counit, eps1, at=1).as_scalar()
        projected = (g
                     - b.unit.tensor(eps1)
                     - eps2.tensor(b.unit)
                     + u2.scale(eps12))
        f = u2 + projected
        try:
            f_inv = invert_element(f, b.mult, b.unit)
        except SingularElementError:
            continue
        tw = Twistor(f, f_inv)
        tw.validate(b)
        return tw
    raise TwistorError("projection produced singular F")
