"""Braid words and the braid-group representation built from a bundle and a module.

A word is a sequence of nonzero signed generator indices acting on an explicit
number of strands; the strand count is never inferred from the letters, because
stabilization tests view the same word inside different braid groups.  Letter
order is operator composition order: the word matrix is the left-to-right product
of generator matrices.  Traces are cyclic, so braid closures are unaffected by
this convention choice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .bundle import QuasiHopfBundle
from .report import Report
from .representation import RepMatrix, Representation, phi_conjugator, rep_element
from .verify import _passes


class BraidWordError(ValueError):
    pass


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        if self.strands < 1:
            raise BraidWordError("at least one strand is required")
        for letter in self.letters:
            if letter == 0:
                raise BraidWordError("zero letter")
            if abs(letter) > self.strands - 1:
                raise BraidWordError(
                    f"generator index {abs(letter)} exceeds strand count {self.strands}"
                )

    @property
    def n(self) -> int:
        """Number of generators of the ambient braid group (strands - 1)."""
        return self.strands - 1

    def exponent_sum(self) -> int:
        return sum(1 if letter > 0 else -1 for letter in self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-letter for letter in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-letter for letter in self.letters))

    def concat(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise BraidWordError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def stabilize(self, sign: int = 1) -> "BraidWord":
        """View the word on one more strand and append the new outermost generator."""
        letters = self.letters + ((self.strands if sign > 0 else -self.strands),)
        return BraidWord(self.strands + 1, letters)

    def conjugate_by(self, other: "BraidWord") -> "BraidWord":
        return other.concat(self).concat(other.inverse())

    def on_strands(self, strands: int) -> "BraidWord":
        return BraidWord(strands, self.letters)

    def __str__(self):
        return " ".join(str(letter) for letter in self.letters)


def parse(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated signed generator indices."""
    letters = []
    for token in text.split():
        try:
            letters.append(int(token))
        except ValueError:
            raise BraidWordError(f"malformed integer {token!r}") from None
    return BraidWord(strands, tuple(letters))


def exponent_sum(w: BraidWord) -> int:
    return w.exponent_sum()


def random_word(rng: random.Random, strands: int, length: int) -> BraidWord:
    if strands < 2:
        raise BraidWordError("need at least two strands for a nonempty word")
    letters = tuple(rng.choice([1, -1]) * rng.randint(1, strands - 1)
                    for _ in range(length))
    return BraidWord(strands, letters)


class BundleGenerators:
    """Braid generator matrices for a bundle and module, with caching per (i, n, sign)."""

    def __init__(self, b: QuasiHopfBundle, rep: Representation):
        if b.r is None or b.r_inv is None:
            raise BraidWordError("R inverse missing")
        self.bundle = b
        self.rep = rep
        self.ring = b.ring
        self.dim_v = rep.dim_v
        flip = RepMatrix.flip(b.ring, rep.dim_v)
        self.r_check = flip.mul(rep_element(rep, b.r))
        # the inverse braiding is the represented inverse R-matrix followed by the
        # flip; no matrix inversion is ever performed
        self.r_check_inv = rep_element(rep, b.r_inv).mul(flip)
        self._cache: dict[tuple[int, int, int], RepMatrix] = {}

    def sigma(self, i: int, n: int, sign: int = 1) -> RepMatrix:
        key = (i, n, 1 if sign > 0 else -1)
        got = self._cache.get(key)
        if got is not None:
            return got
        if i < 1 or i > n:
            raise BraidWordError(f"generator index {i} out of range 1..{n}")
        core = self.r_check if sign > 0 else self.r_check_inv
        dim_v = self.rep.dim_v
        mid = core
        if i > 1:
            mid = RepMatrix.identity(self.ring, dim_v, i - 1).kron(mid)
        if i < n:
            mid = mid.kron(RepMatrix.identity(self.ring, dim_v, n - i))
        conj = phi_conjugator(self.bundle, self.rep, i, n)
        conj_inv = phi_conjugator(self.bundle, self.rep, i, n, inverse=True)
        out = conj.mul(mid).mul(conj_inv)
        self._cache[key] = out
        return out


def generator_matrix(b: QuasiHopfBundle, rep: Representation, i: int, n: int,
                     sign: int = 1) -> RepMatrix:
    return BundleGenerators(b, rep).sigma(i, n, sign)


def word_matrix(source, w: BraidWord) -> RepMatrix:
    """Ordered product of generator matrices; the empty word is the identity.

    source is anything exposing sigma(i, n, sign) plus ring and dim_v attributes,
    typically BundleGenerators or a representation-level fast-path bundle.
    """
    n = w.n
    out = RepMatrix.identity(source.ring, source.dim_v, n + 1)
    for letter in w.letters:
        out = out.mul(source.sigma(abs(letter), n, 1 if letter > 0 else -1))
    return out


def verify_braid_relations(b: QuasiHopfBundle, rep: Representation, n: int) -> Report:
    """Commutation and braid identities up to n generators, plus coproduct invariance."""
    report = Report(f"braid relations [{b.name} / {rep.name}, {n + 1} strands]")
    if n < 2:
        raise BraidWordError("need at least two generators")
    gens = BundleGenerators(b, rep)
    sig = [gens.sigma(i, n) for i in range(1, n + 1)]
    sig_inv = [gens.sigma(i, n, -1) for i in range(1, n + 1)]

    worst = max(
        sig[i].mul(sig_inv[i]).residual(RepMatrix.identity(b.ring, rep.dim_v, n + 1))
        for i in range(n)
    )
    report.add("generator-inverses", worst, _passes(b, worst))

    worst = 0.0
    for i in range(n):
        for j in range(i + 2, n):
            worst = max(worst, sig[i].mul(sig[j]).residual(sig[j].mul(sig[i])))
    report.add("distant-commutation", worst, _passes(b, worst),
               "no distant pairs" if n < 3 else "")

    worst = 0.0
    for i in range(n - 1):
        lhs = sig[i].mul(sig[i + 1]).mul(sig[i])
        rhs = sig[i + 1].mul(sig[i]).mul(sig[i + 1])
        worst = max(worst, lhs.residual(rhs))
    report.add("braid-relation", worst, _passes(b, worst))

    worst = 0.0
    for a in range(b.dim):
        da = rep_element(rep, b.coproduct_power(n, b.basis_element(a)))
        for i in range(n):
            worst = max(worst, sig[i].mul(da).residual(da.mul(sig[i])))
    report.add("coproduct-invariance", worst, _passes(b, worst))
    return report
