"""Independent reference implementations used only to cross-check results.

These deliberately avoid the package's contraction engine: the deformed
product is expanded by brute force over index sequences straight from its
defining formula, and products on several pairs can also be assembled from
single-pair factors.  Slow but unambiguous.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import factorial

from qcenter import Poly, SymplecticSpace


def brute_force_term(space: SymplecticSpace, f: Poly, g: Poly, level: int) -> Poly:
    """Order-``level`` expansion term summed over raw index sequences."""
    if level == 0:
        return f * g
    entries = space.bivector_entries()
    nv = space.nvars
    acc = Poly.zero(nv)
    for seq in iproduct(entries, repeat=level):
        ff, gg = f, g
        coeff = Fraction(1)
        for i, j, value in seq:
            coeff *= value
            ff = ff.partial(i)
            if ff.is_zero():
                break
            gg = gg.partial(j)
            if gg.is_zero():
                break
        else:
            acc = acc + (ff * gg).scale(coeff)
    return acc.scale(Fraction(1, 2**level * factorial(level)))


def brute_force_product(space: SymplecticSpace, f: Poly, g: Poly
                        ) -> dict[int, Poly]:
    """Full exact expansion {order: coefficient} straight from the formula."""
    out: dict[int, Poly] = {}
    bound = min(f.degree(), g.degree())
    for level in range(max(bound, 0) + 1):
        term = brute_force_term(space, f, g, level)
        if not term.is_zero():
            out[level] = term
    return out


def weight_zero_monomials(space: SymplecticSpace, torus_weights: list[int],
                          degree: int) -> list[Poly]:
    """Brute-force enumeration of monomials killed by a torus flow.

    ``torus_weights`` gives the weight of each q coordinate; the matching p
    coordinate carries the opposite weight.
    """
    from qcenter import monomials_of_degree

    n = space.pairs
    full = list(torus_weights) + [-w for w in torus_weights]
    out = []
    for exp in monomials_of_degree(space.nvars, degree):
        if sum(w * e for w, e in zip(full, exp)) == 0:
            out.append(Poly.monomial(space.nvars, exp))
    return out
