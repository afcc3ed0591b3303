"""Independent Kauffman-bracket / Jones oracle over braid closures.

This module deliberately shares no code with the main pipeline: polynomials are
bare exponent-to-integer dicts in the bracket variable A, and loop counting is
plain union-find over strand arcs.  It exists as the anti-hallucination oracle
for the two-dimensional quantum-group fixture: both sides are compared only
after substituting matched sample values.

State sum: every crossing is smoothed two ways; a positively signed crossing
contributes the variable A with the straight-through smoothing and 1/A with the
cup-cap smoothing (signs swap both).  A full state evaluates to the loop count
of the closure, weighted d^(loops-1) with d = -A^2 - 1/A^2, so the unknot
normalizes to 1 before writhe correction.
"""

from __future__ import annotations

from fractions import Fraction

MAX_CROSSINGS = 24


class OracleError(ValueError):
    pass


# -- minimal Laurent arithmetic in A (independent of the main scalar rings) ----

def poly_zero() -> dict:
    return {}


def poly_mono(exp: int, coeff: int = 1) -> dict:
    return {exp: coeff} if coeff else {}


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for e, c in q.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = e1 + e2
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def poly_pow(p: dict, n: int) -> dict:
    out = poly_mono(0)
    for _ in range(n):
        out = poly_mul(out, p)
    return out


def poly_invert_variable(p: dict) -> dict:
    """The mirror image A -> 1/A."""
    return {-e: c for e, c in p.items()}


def poly_substitute(p: dict, value):
    """Evaluate at A = value (Fraction or complex)."""
    if isinstance(value, (int, Fraction)):
        value = Fraction(value)
        return sum((c * value**e for e, c in p.items()), Fraction(0))
    value = complex(value)
    return sum((c * value**e for e, c in p.items()), 0j)


def poly_str(p: dict) -> str:
    if not p:
        return "0"
    parts = []
    for e in sorted(p, reverse=True):
        c = p[e]
        body = str(c) if e == 0 else (f"A^{e}" if abs(c) == 1 else f"{abs(c)}*A^{e}")
        if e != 0 and c < 0:
            body = "-" + body
        parts.append(body)
    out = parts[0]
    for t in parts[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


# -- loop counting over braid closures ----------------------------------------

class _UnionFind:
    def __init__(self):
        self.parent: dict[int, int] = {}

    def make(self, x: int) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        self.parent[self.find(a)] = self.find(b)

    def classes(self) -> int:
        return len({self.find(x) for x in self.parent})


def _state_loops(letters, strands: int, mask: int) -> int:
    """Loop count of one smoothing state of the closed braid.

    Bit k of mask chooses the cup-cap smoothing for crossing k; otherwise the
    strands pass straight through.  Arc identifiers are union-found as the braid
    is scanned bottom to top, then the closure glues top to bottom.
    """
    uf = _UnionFind()
    arcs = list(range(strands))
    for a in arcs:
        uf.make(a)
    next_id = strands
    for k, letter in enumerate(letters):
        if not (mask >> k) & 1:
            continue
        pos = abs(letter) - 1
        uf.make(next_id)
        uf.union(arcs[pos], arcs[pos + 1])
        arcs[pos] = arcs[pos + 1] = next_id
        next_id += 1
    for start, end in enumerate(arcs):
        uf.union(end, start)
    return uf.classes()


def kauffman_bracket(letters, strands: int) -> dict:
    """State sum over all smoothings, normalized so one closed loop evaluates to 1."""
    letters = tuple(letters)
    c = len(letters)
    if c > MAX_CROSSINGS:
        raise OracleError("too many crossings for exact enumeration")
    for letter in letters:
        if letter == 0 or abs(letter) > strands - 1:
            raise OracleError(f"bad crossing position {letter} for {strands} strands")
    d = {2: -1, -2: -1}            # -A^2 - A^-2
    total = poly_zero()
    for mask in range(1 << c):
        a_exp = 0
        for k, letter in enumerate(letters):
            cupcap = (mask >> k) & 1
            positive = letter > 0
            # positive crossing: straight-through smoothing carries A
            a_exp += 1 if (positive != bool(cupcap)) else -1
        loops = _state_loops(letters, strands, mask)
        total = poly_add(total, poly_mul(poly_mono(a_exp), poly_pow(d, loops - 1)))
    return total


def jones(letters, strands: int) -> dict:
    """Writhe-corrected bracket: (-A^3)^(-writhe) times the bracket polynomial."""
    letters = tuple(letters)
    writhe = sum(1 if letter > 0 else -1 for letter in letters)
    bracket = kauffman_bracket(letters, strands)
    corr = poly_mono(-3 * writhe, (-1) ** (writhe % 2))
    return poly_mul(corr, bracket)


def mirror(letters) -> tuple[int, ...]:
    return tuple(-letter for letter in letters)
