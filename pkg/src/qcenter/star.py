"""Deformed product of polynomials on a symplectic space.

The product of two polynomials is a finite series: the order-l term is the
l-fold bivector contraction

    D_l(f, g) = (1 / (2^l l!)) * sum P[i1,j1]...P[il,jl]
                 (d_{i1}..d_{il} f) (d_{j1}..d_{jl} g),

which vanishes once l exceeds the degree of either factor, so products of
polynomials are computed exactly and only *stored* truncated.  D_0 is the
plain product and the antisymmetric part of D_1 is the Poisson bracket, so
the order-1 commutator recovers the bracket.

Contractions are organised through powers of the bivector symbol: the l-th
power of ``sum P[i,j] u_i v_j`` expands as ``sum C(a, b) u^a v^b`` and

    D_l(f, g) = (1 / (2^l l!)) * sum C(a, b) (d^a f) (d^b g).

Powers are cached per product object; derivative tables are pruned so the
cost tracks the sparsity of the operands.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable

from .errors import DimensionError, TruncationError, ValidationError
from .poly import Exponent, Poly
from .series import HSeries
from .space import SymplecticSpace

BiExponent = tuple[Exponent, Exponent]


def derivative_table(f: Poly, max_order: int) -> dict[Exponent, Poly]:
    """All nonzero iterated partials d^a f with |a| <= max_order."""
    nv = f.nvars
    zero_exp = (0,) * nv
    table: dict[Exponent, Poly] = {}
    if f.is_zero():
        return table
    table[zero_exp] = f
    level = {zero_exp: f}
    for _ in range(max_order):
        nxt: dict[Exponent, Poly] = {}
        for exp, poly in level.items():
            start = next((i for i, e in enumerate(exp) if e), nv)
            # extend only at indices <= first nonzero slot so each multi-index
            # is produced exactly once
            for i in range(min(start + 1, nv)):
                d = poly.partial(i)
                if d.is_zero():
                    continue
                new_exp = list(exp)
                new_exp[i] += 1
                nxt[tuple(new_exp)] = d
        if not nxt:
            break
        table.update(nxt)
        level = nxt
    return table


class StarProduct:
    """Deformation product attached to a space and a truncation order."""

    def __init__(self, space: SymplecticSpace, order: int):
        if order < 0:
            raise ValueError("truncation order must be non-negative")
        self.space = space
        self.order = order
        entries: dict[BiExponent, Fraction] = {}
        nv = space.nvars
        for i, j, value in space.bivector_entries():
            left = [0] * nv
            right = [0] * nv
            left[i] = 1
            right[j] = 1
            entries[(tuple(left), tuple(right))] = value
        self._bivector_symbol = entries
        self._symbol_powers: list[dict[BiExponent, Fraction]] = [
            {((0,) * nv, (0,) * nv): Fraction(1)}
        ]

    # -- bivector symbol powers ---------------------------------------------

    def _symbol_power(self, level: int) -> dict[BiExponent, Fraction]:
        while len(self._symbol_powers) <= level:
            prev = self._symbol_powers[-1]
            nxt: dict[BiExponent, Fraction] = {}
            for (a1, b1), c1 in prev.items():
                for (a2, b2), c2 in self._bivector_symbol.items():
                    key = (
                        tuple(x + y for x, y in zip(a1, a2)),
                        tuple(x + y for x, y in zip(b1, b2)),
                    )
                    nxt[key] = nxt.get(key, Fraction(0)) + c1 * c2
            self._symbol_powers.append(nxt)
        return self._symbol_powers[level]

    # -- core products -----------------------------------------------------------

    def _check_poly(self, f: Poly):
        if f.nvars != self.space.nvars:
            raise DimensionError("polynomial does not live on this space")

    def bidifferential(self, f: Poly, g: Poly, level: int) -> Poly:
        """The order-``level`` term D_level(f, g), exact."""
        self._check_poly(f)
        self._check_poly(g)
        if level == 0:
            return f * g
        if level > min(f.degree(), g.degree()):
            return Poly.zero(f.nvars)
        ftab = derivative_table(f, level)
        gtab = derivative_table(g, level)
        acc = Poly.zero(f.nvars)
        for (a, b), coeff in self._symbol_power(level).items():
            fa = ftab.get(a)
            if fa is None:
                continue
            gb = gtab.get(b)
            if gb is None:
                continue
            acc = acc + (fa * gb).scale(coeff)
        return acc.scale(Fraction(1, 2**level * factorial(level)))

    def product_terms(
        self, f: Poly, g: Poly, max_order: int | None = None
    ) -> dict[int, Poly]:
        """Exact expansion of f*g as {order: coefficient}; finitely many terms."""
        self._check_poly(f)
        self._check_poly(g)
        if f.is_zero() or g.is_zero():
            return {}
        bound = min(f.degree(), g.degree())
        if max_order is not None:
            bound = min(bound, max_order)
        out: dict[int, Poly] = {}
        ftab = derivative_table(f, bound)
        gtab = derivative_table(g, bound)
        for level in range(bound + 1):
            if level == 0:
                term = f * g
            else:
                acc = Poly.zero(f.nvars)
                for (a, b), coeff in self._symbol_power(level).items():
                    fa = ftab.get(a)
                    if fa is None:
                        continue
                    gb = gtab.get(b)
                    if gb is None:
                        continue
                    acc = acc + (fa * gb).scale(coeff)
                term = acc.scale(Fraction(1, 2**level * factorial(level)))
            if not term.is_zero():
                out[level] = term
        return out

    def moyal(self, f: Poly, g: Poly) -> HSeries:
        """Deformed product of two polynomials, stored at the truncation."""
        return HSeries.from_terms(
            self.space.nvars, self.order, self.product_terms(f, g, self.order)
        )

    def star(self, F: HSeries, G: HSeries) -> HSeries:
        """Bilinear continuous extension of the product to truncated series."""
        if F.nvars != self.space.nvars or G.nvars != self.space.nvars:
            raise DimensionError("series do not live on this space")
        if F.order != G.order:
            raise TruncationError("star operands carry different truncations")
        if F.order != self.order:
            raise TruncationError("series truncation differs from the product's")
        slots: dict[int, Poly] = {}
        for a in range(self.order + 1):
            fa = F.coeffs[a]
            if fa.is_zero():
                continue
            for b in range(self.order + 1 - a):
                gb = G.coeffs[b]
                if gb.is_zero():
                    continue
                for level, term in self.product_terms(
                    fa, gb, self.order - a - b
                ).items():
                    r = a + b + level
                    slots[r] = slots.get(r, Poly.zero(F.nvars)) + term
        return HSeries.from_terms(self.space.nvars, self.order, slots)

    def star_poly(self, f: Poly, G: HSeries) -> HSeries:
        return self.star(HSeries.from_poly(f, self.order), G)

    def embed(self, f: Poly) -> HSeries:
        return HSeries.from_poly(f, self.order)

    # -- brackets -----------------------------------------------------------------

    def poisson(self, f: Poly, g: Poly) -> Poly:
        """Poisson bracket from the bivector: sum P[i,j] d_i f d_j g."""
        self._check_poly(f)
        self._check_poly(g)
        acc = Poly.zero(f.nvars)
        for i, j, value in self.space.bivector_entries():
            fi = f.partial(i)
            if fi.is_zero():
                continue
            gj = g.partial(j)
            if gj.is_zero():
                continue
            acc = acc + (fi * gj).scale(value)
        return acc

    def commutator_terms(self, f: Poly, g: Poly, max_order: int | None = None
                         ) -> dict[int, Poly]:
        """Exact expansion of f*g - g*f.

        Even-order contractions are symmetric in the arguments, so only odd
        orders survive, each contributing twice its bidifferential term.
        """
        self._check_poly(f)
        self._check_poly(g)
        if f.is_zero() or g.is_zero():
            return {}
        bound = min(f.degree(), g.degree())
        if max_order is not None:
            bound = min(bound, max_order)
        out: dict[int, Poly] = {}
        for level in range(1, bound + 1, 2):
            term = self.bidifferential(f, g, level)
            if not term.is_zero():
                out[level] = term.scale(2)
        return out

    def star_commutator(self, F: HSeries, G: HSeries) -> HSeries:
        """F*G - G*F at the stored truncation."""
        if F.order != G.order:
            raise TruncationError("commutator operands carry different truncations")
        slots: dict[int, Poly] = {}
        for a in range(self.order + 1):
            fa = F.coeffs[a]
            if fa.is_zero():
                continue
            for b in range(self.order + 1 - a):
                gb = G.coeffs[b]
                if gb.is_zero():
                    continue
                for level, term in self.commutator_terms(
                    fa, gb, self.order - a - b
                ).items():
                    r = a + b + level
                    slots[r] = slots.get(r, Poly.zero(F.nvars)) + term
        return HSeries.from_terms(self.space.nvars, self.order, slots)

    def commutator_poly(self, f: Poly, g: Poly) -> HSeries:
        return self.star_commutator(self.embed(f), self.embed(g))

    # -- exact arithmetic on untruncated expansions --------------------------------

    def expansion_product(
        self, A: dict[int, Poly], B: dict[int, Poly]
    ) -> dict[int, Poly]:
        """Exact product of two finite expansions {order: Poly}."""
        out: dict[int, Poly] = {}
        for a, fa in A.items():
            for b, gb in B.items():
                for level, term in self.product_terms(fa, gb).items():
                    r = a + b + level
                    if r in out:
                        out[r] = out[r] + term
                    else:
                        out[r] = term
        return {r: f for r, f in out.items() if not f.is_zero()}


# -- reports ----------------------------------------------------------------------


@dataclass
class CheckEntry:
    label: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    name: str
    entries: list[CheckEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def add(self, label: str, passed: bool, detail: str = ""):
        self.entries.append(CheckEntry(label, passed, detail))

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": len(self.entries),
            "failures": [
                {"label": e.label, "detail": e.detail} for e in self.failures()
            ],
        }


def _first_nonzero(expansion: dict[int, Poly]) -> tuple[int, Poly] | None:
    for r in sorted(expansion):
        if not expansion[r].is_zero():
            return r, expansion[r]
    return None


def check_axioms(star: StarProduct, samples: Iterable[tuple[Poly, Poly, Poly]]
                 ) -> CheckReport:
    """Executable product axioms on sample triples.

    Verifies, with exact arithmetic on the full finite expansions:
    associativity, the two-sided unit, the classical-limit conditions
    (order-0 term is the plain product; the order-1 commutator term is the
    Poisson bracket), and order-locality of the truncated product
    (coefficients up to order m ignore perturbations above order m).
    """
    report = CheckReport("axioms")
    one = star.space.one()
    nv = star.space.nvars
    for idx, (f, g, h) in enumerate(samples):
        tag = f"sample {idx}"
        fg = star.product_terms(f, g)
        gh = star.product_terms(g, h)
        left = star.expansion_product(fg, {0: h})
        right = star.expansion_product({0: f}, gh)
        assoc = {
            r: left.get(r, Poly.zero(nv)) - right.get(r, Poly.zero(nv))
            for r in set(left) | set(right)
        }
        bad = _first_nonzero(assoc)
        report.add(
            f"{tag}: associativity",
            bad is None,
            "" if bad is None else f"residual at order {bad[0]}: {bad[1].to_string(star.space.names)}",
        )

        unit_ok = (
            star.product_terms(one, f) == ({0: f} if not f.is_zero() else {})
            and star.product_terms(f, one) == ({0: f} if not f.is_zero() else {})
        )
        report.add(f"{tag}: unit", unit_ok)

        order0_ok = fg.get(0, Poly.zero(nv)) == f * g
        report.add(f"{tag}: order-0 term is the plain product", order0_ok)

        # commutator recomputed from the product expansions themselves so
        # the membership conditions constrain the product map directly
        gf = star.product_terms(g, f)
        comm = {
            r: fg.get(r, Poly.zero(nv)) - gf.get(r, Poly.zero(nv))
            for r in set(fg) | set(gf)
        }
        comm = {r: term for r, term in comm.items() if not term.is_zero()}
        bracket_ok = comm.get(1, Poly.zero(nv)) == star.poisson(f, g) and all(
            r >= 1 for r in comm
        )
        report.add(f"{tag}: order-1 commutator is the Poisson bracket", bracket_ok)

        # order-locality: perturbing g above order m leaves orders <= m alone
        m = 1
        G = star.embed(g)
        G_pert = G + star.embed(h).hbar_shift(m + 1)
        base = star.star(star.embed(f), G)
        pert = star.star(star.embed(f), G_pert)
        local_ok = all(
            base.coefficient(r) == pert.coefficient(r) for r in range(m + 1)
        )
        report.add(f"{tag}: order-locality", local_ok)
    return report


def check_homogeneity(star: StarProduct, samples: Iterable[tuple[Poly, Poly]]
                      ) -> CheckReport:
    """Degree law of the expansion terms for weight-homogeneous inputs.

    Each order-l term of the product of weight-homogeneous polynomials is
    weight-homogeneous, with weight raised by l times the parameter weight
    relative to the sum of the input weights: the order shift compensates
    exactly, keeping the full product homogeneous.
    """
    space = star.space
    space.check_graded_bivector()
    report = CheckReport("homogeneity")
    k = space.hbar_weight
    for idx, (f, g) in enumerate(samples):
        tag = f"sample {idx}"
        wf = space.poly_weight(f)
        wg = space.poly_weight(g)
        if (not f.is_zero() and wf is None) or (not g.is_zero() and wg is None):
            raise ValidationError(f"{tag}: inputs must be weight-homogeneous")
        if f.is_zero() or g.is_zero():
            report.add(f"{tag}: vacuous (zero factor)", True)
            continue
        ok = True
        detail = ""
        for level, term in star.product_terms(f, g).items():
            expected = wf + wg + k * level
            actual = space.poly_weight(term)
            if actual != expected:
                ok = False
                detail = (
                    f"order {level}: weight {actual}, expected {expected}"
                )
                break
        report.add(f"{tag}: term degree law", ok, detail)
    return report
