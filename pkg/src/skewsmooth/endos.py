"""Diagonal-affine algebra endomorphisms x_j -> slope_j x_j + shift_j.

These extend multiplicatively/additively to polynomials on the free side;
whether they descend to the quotient algebra is the separate, checked
property ``respects_relations``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .algebra import NcPoly, Presentation
from .errors import MismatchedArityError, ZeroSlopeError

__all__ = [
    "AffineEndo",
    "identity_endo",
    "apply_endo",
    "compose",
    "commute",
    "invert",
    "RelationCheck",
    "RelationReport",
    "respects_relations",
]


@dataclass(frozen=True)
class AffineEndo:
    """Generator-wise affine map; all slopes must be nonzero."""

    slopes: tuple
    shifts: tuple

    def __post_init__(self):
        if len(self.slopes) != len(self.shifts):
            raise MismatchedArityError("slope/shift length mismatch")
        if any(not s for s in self.slopes):
            raise ZeroSlopeError("affine endomorphism with zero slope is not invertible")

    @property
    def n(self) -> int:
        return len(self.slopes)

    def image_poly(self, pres: Presentation, g: int) -> NcPoly:
        p = pres.gen(g).scale(self.slopes[g - 1])
        if self.shifts[g - 1]:
            p = p + pres.scalar(self.shifts[g - 1])
        return p


def identity_endo(field, n: int) -> AffineEndo:
    return AffineEndo((field.one,) * n, (field.zero,) * n)


def _univariate_image(slope, shift, power: int, field):
    """(slope*x + shift)^power as a map exponent -> coefficient."""
    if power == 0:
        return {0: field.one}
    if not shift:
        return {power: slope ** power}
    return {t: comb(power, t) * slope ** t * shift ** (power - t)
            for t in range(power + 1)}


def apply_endo(endo: AffineEndo, p: NcPoly, pres: Presentation) -> NcPoly:
    """Algebra-map expansion of each monomial, renormalized to PBW form.

    Images of distinct generators involve distinct generators, so the expanded
    words are already normal-ordered and no rewriting is needed.
    """
    if endo.n != pres.n:
        raise MismatchedArityError("endomorphism arity differs from presentation")
    field = pres.field
    out: dict = {}
    for m, c in p.terms.items():
        partial = {(0,) * pres.n: c}
        for g, power in enumerate(m):
            if not power:
                continue
            uni = _univariate_image(endo.slopes[g], endo.shifts[g], power, field)
            nxt: dict = {}
            for exps, coeff in partial.items():
                for t, u in uni.items():
                    e2 = list(exps)
                    e2[g] = t
                    key = tuple(e2)
                    s = nxt.get(key)
                    s = coeff * u if s is None else s + coeff * u
                    if s:
                        nxt[key] = s
                    else:
                        nxt.pop(key, None)
            partial = nxt
        for exps, coeff in partial.items():
            s = out.get(exps)
            s = coeff if s is None else s + coeff
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
    return NcPoly(out)


def compose(e1: AffineEndo, e2: AffineEndo) -> AffineEndo:
    """Composite with slope e1.a*e2.a and shift e1.a*e2.b + e1.b.

    Operationally this is "substitute e2's formula into e1's"; applied to
    polynomials it equals apply(e2, apply(e1, .)).  For pairwise-commuting
    families, which is the only regime the calculus uses, the order is
    immaterial.
    """
    if e1.n != e2.n:
        raise MismatchedArityError("cannot compose endomorphisms of different arity")
    slopes = tuple(a1 * a2 for a1, a2 in zip(e1.slopes, e2.slopes))
    shifts = tuple(a1 * b2 + b1 for a1, b1, b2 in zip(e1.slopes, e1.shifts, e2.shifts))
    return AffineEndo(slopes, shifts)


def commute(e1: AffineEndo, e2: AffineEndo) -> bool:
    """True iff compose(e1, e2) == compose(e2, e1).

    Slopes always commute; the condition is shift compatibility
    b2*(a1 - 1) == b1*(a2 - 1) on every generator.
    """
    return compose(e1, e2) == compose(e2, e1)


def invert(endo: AffineEndo) -> AffineEndo:
    slopes = tuple(1 / a for a in endo.slopes)
    shifts = tuple(-(b / a) for a, b in zip(endo.slopes, endo.shifts))
    return AffineEndo(slopes, shifts)


@dataclass(frozen=True)
class RelationCheck:
    pair: tuple
    passed: bool
    residue: NcPoly


@dataclass(frozen=True)
class RelationReport:
    checks: tuple

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def respects_relations(endo: AffineEndo, pres: Presentation) -> RelationReport:
    """Per relation, the normal form of endo(LHS - RHS); PASS iff all zero."""
    checks = []
    images = {g: endo.image_poly(pres, g) for g in range(1, pres.n + 1)}
    for (i, j) in sorted(pres.pairs):
        rule = pres.pairs[(i, j)]
        residue = pres.multiply(images[i], images[j]) \
            - pres.multiply(images[j], images[i]).scale(rule.quad)
        for coeff, word in rule.tail:
            img = pres.one()
            for g in word:
                img = pres.multiply(img, images[g])
            residue = residue - img.scale(coeff)
        checks.append(RelationCheck((i, j), not residue, residue))
    return RelationReport(tuple(checks))
