"""Graded differential calculus generated by a commuting twist family.

Degree-k forms are free right modules on increasing index words dx_S with
polynomial coefficients on the right.  The left action twists coefficients
through the family (a dx_i = dx_i nu_i(a)); the wedge sorts basis words with
the scalar rule dx_j ^ dx_i = -(1/a_ij) dx_i ^ dx_j for i < j and kills
repeated letters; the derivation acts on coefficients through the generator-
wise ladder sums and extends to higher degree with constant basis words.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .algebra import NcPoly, Ordering, Presentation
from .endos import AffineEndo, apply_endo, commute, compose, identity_endo, invert
from .errors import MismatchedArityError, NonDiagonalTailError

__all__ = [
    "CalculusContext",
    "DiffForm",
    "VolumeForm",
    "left_act",
    "wedge",
    "differential",
    "kernel_of_d_bounded",
    "connected_at",
    "IntegralFormCoefficients",
    "integral_form_coefficients",
    "IntegrabilityReport",
    "verify_integrability",
    "random_form",
]


@dataclass(frozen=True)
class DiffForm:
    """Degree-k form: map from strictly increasing k-index words to right
    coefficients; zero components are never stored."""

    degree: int
    components: dict  # tuple(sorted indices) -> NcPoly

    def __post_init__(self):
        object.__setattr__(self, "components",
                           {s: p for s, p in self.components.items() if p})
        for s in self.components:
            if len(s) != self.degree or list(s) != sorted(set(s)):
                raise MismatchedArityError(f"bad index word {s} for degree {self.degree}")

    def __bool__(self) -> bool:
        return bool(self.components)

    def __eq__(self, other):
        return (isinstance(other, DiffForm) and self.degree == other.degree
                and self.components == other.components)

    def __add__(self, other: "DiffForm") -> "DiffForm":
        if self.degree != other.degree:
            raise MismatchedArityError("cannot add forms of different degree")
        out = dict(self.components)
        for s, p in other.components.items():
            q = out.get(s)
            q = p if q is None else q + p
            if q:
                out[s] = q
            else:
                out.pop(s, None)
        return DiffForm(self.degree, out)

    def __neg__(self) -> "DiffForm":
        return DiffForm(self.degree, {s: -p for s, p in self.components.items()})

    def __sub__(self, other: "DiffForm") -> "DiffForm":
        return self + (-other)


@dataclass(frozen=True)
class VolumeForm:
    form: DiffForm
    nu_omega: AffineEndo


class CalculusContext:
    """A presentation together with one twist per generator.

    The family must commute pairwise; that makes composite twists along index
    sets order-independent and the volume twist well-defined.
    """

    def __init__(self, pres: Presentation, nus):
        if pres.ordering is not Ordering.ASCENDING:
            raise NonDiagonalTailError("the calculus uses ascending presentations")
        nus = tuple(nus)
        if len(nus) != pres.n:
            raise MismatchedArityError("need exactly one twist per generator")
        for a in range(len(nus)):
            for b in range(a + 1, len(nus)):
                if not commute(nus[a], nus[b]):
                    raise MismatchedArityError(
                        f"twists for x_{a + 1} and x_{b + 1} do not commute")
        self.pres = pres
        self.nus = nus
        self._composite_cache: dict = {}

    @property
    def n(self) -> int:
        return self.pres.n

    def composite(self, indices) -> AffineEndo:
        key = tuple(sorted(indices))
        got = self._composite_cache.get(key)
        if got is None:
            got = identity_endo(self.pres.field, self.n)
            for i in key:
                got = compose(got, self.nus[i - 1])
            self._composite_cache[key] = got
        return got

    @property
    def nu_omega(self) -> AffineEndo:
        return self.composite(range(1, self.n + 1))

    # -- form builders -------------------------------------------------------

    def zero_form(self, degree: int) -> DiffForm:
        return DiffForm(degree, {})

    def form(self, degree: int, components: dict) -> DiffForm:
        return DiffForm(degree, {tuple(s): p for s, p in components.items()})

    def from_poly(self, p: NcPoly) -> DiffForm:
        return DiffForm(0, {(): p})

    def dx(self, i: int) -> DiffForm:
        return DiffForm(1, {(i,): self.pres.one()})

    def volume_form(self) -> VolumeForm:
        full = tuple(range(1, self.n + 1))
        return VolumeForm(DiffForm(self.n, {full: self.pres.one()}), self.nu_omega)

    def pi_omega(self, f: DiffForm) -> NcPoly:
        if f.degree != self.n:
            raise MismatchedArityError("coefficient extraction needs a top form")
        return f.components.get(tuple(range(1, self.n + 1)), NcPoly.zero())

    # -- module structure ----------------------------------------------------

    def right_mul(self, f: DiffForm, p: NcPoly) -> DiffForm:
        return DiffForm(f.degree,
                        {s: self.pres.multiply(q, p) for s, q in f.components.items()})

    def left_act(self, a: NcPoly, f: DiffForm) -> DiffForm:
        """a . (dx_S q) = dx_S . nu_S(a) q with nu_S the composite twist."""
        out = {}
        for s, q in f.components.items():
            moved = apply_endo(self.composite(s), a, self.pres)
            out[s] = self.pres.multiply(moved, q)
        return DiffForm(f.degree, out)

    def basis_sort(self, word):
        """Sort a basis word into increasing order, collecting the scalar
        factor -(1/a_ij) per transposition; None for repeated letters."""
        word = list(word)
        factor = self.pres.field.one
        changed = True
        while changed:
            changed = False
            for t in range(len(word) - 1):
                u, v = word[t], word[t + 1]
                if u == v:
                    return None
                if u > v:
                    word[t], word[t + 1] = v, u
                    factor = -(factor / self.pres.a(v, u))
                    changed = True
        return factor, tuple(word)

    def wedge(self, f: DiffForm, g: DiffForm) -> DiffForm:
        out: dict = {}
        for s, p in f.components.items():
            for t, q in g.components.items():
                if set(s) & set(t):
                    continue
                sorted_basis = self.basis_sort(s + t)
                if sorted_basis is None:
                    continue
                factor, idx = sorted_basis
                moved = apply_endo(self.composite(t), p, self.pres)
                coeff = self.pres.multiply(moved, q).scale(factor)
                if coeff:
                    prev = out.get(idx)
                    coeff = coeff if prev is None else prev + coeff
                    if coeff:
                        out[idx] = coeff
                    else:
                        out.pop(idx, None)
        return DiffForm(f.degree + g.degree, out)

    # -- the derivation ------------------------------------------------------

    def _ladder(self, i: int, power: int) -> dict:
        """sum_{j=1}^{power} nu_i(x_i)^(j-1) x_i^(power-j) as exponent -> coeff."""
        field = self.pres.field
        slope = self.nus[i - 1].slopes[i - 1]
        shift = self.nus[i - 1].shifts[i - 1]
        acc = {0: field.one}           # nu_i(x_i)^(j-1)
        total: dict = {}
        for j in range(1, power + 1):
            for exp, c in acc.items():
                key = exp + power - j
                s = total.get(key)
                s = c if s is None else s + c
                if s:
                    total[key] = s
                else:
                    total.pop(key, None)
            if j < power:
                nxt: dict = {}
                for exp, c in acc.items():
                    for dexp, dc in ((1, slope), (0, shift)):
                        if not dc:
                            continue
                        key = exp + dexp
                        s = nxt.get(key)
                        s = c * dc if s is None else s + c * dc
                        if s:
                            nxt[key] = s
                        else:
                            nxt.pop(key, None)
                acc = nxt
        return total

    def partial(self, i: int, p: NcPoly) -> NcPoly:
        """Coefficient of dx_i in d(p): twisted prefix, ladder sum, plain tail."""
        field = self.pres.field
        nu_i = self.nus[i - 1]
        out: dict = {}
        for m, c in p.terms.items():
            li = m[i - 1]
            if not li:
                continue
            pieces = [{(0,) * self.n: c}]
            for j in range(1, i):
                lj = m[j - 1]
                if lj:
                    img = apply_endo(nu_i, self.pres.mono(
                        tuple(lj if g == j else 0 for g in range(1, self.n + 1))), self.pres)
                    pieces.append(img.terms)
            ladder = self._ladder(i, li)
            pieces.append({tuple(e if g == i else 0
                                 for g in range(1, self.n + 1)): v
                           for e, v in ladder.items()})
            suffix = tuple(m[g - 1] if g > i else 0 for g in range(1, self.n + 1))
            pieces.append({suffix: field.one})
            combined = {(0,) * self.n: field.one}
            for piece in pieces:
                nxt: dict = {}
                for e1, c1 in combined.items():
                    for e2, c2 in piece.items():
                        key = tuple(a + b for a, b in zip(e1, e2))
                        s = nxt.get(key)
                        s = c1 * c2 if s is None else s + c1 * c2
                        if s:
                            nxt[key] = s
                        else:
                            nxt.pop(key, None)
                combined = nxt
            for e, v in combined.items():
                s = out.get(e)
                s = v if s is None else s + v
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return NcPoly(out)

    def d(self, f) -> DiffForm:
        """The derivation; degree k -> k+1, with d(dx_S) = 0 on basis words."""
        if isinstance(f, NcPoly):
            f = self.from_poly(f)
        if f.degree == 0:
            p = f.components.get((), NcPoly.zero())
            return DiffForm(1, {(i,): self.partial(i, p)
                                for i in range(1, self.n + 1)})
        sign = self.pres.field.one if f.degree % 2 == 0 else -self.pres.field.one
        out = self.zero_form(f.degree + 1)
        for s, p in f.components.items():
            dp = self.d(p)
            for (i,), q in dp.components.items():
                sorted_basis = self.basis_sort(s + (i,))
                if sorted_basis is None:
                    continue
                factor, idx = sorted_basis
                out = out + DiffForm(f.degree + 1, {idx: q.scale(factor * sign)})
        return out


# -- module-level operation names ---------------------------------------------

def left_act(a: NcPoly, f: DiffForm, ctx: CalculusContext) -> DiffForm:
    return ctx.left_act(a, f)


def wedge(f: DiffForm, g: DiffForm, ctx: CalculusContext) -> DiffForm:
    return ctx.wedge(f, g)


def differential(f, ctx: CalculusContext) -> DiffForm:
    return ctx.d(f)


def _monomials_up_to(n: int, max_degree: int):
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)
    rec([], max_degree, n)
    out.sort(key=lambda m: (sum(m), m))
    return out


def kernel_of_d_bounded(ctx: CalculusContext, max_degree: int):
    """Exact kernel basis of d on the polynomials of total degree <= bound."""
    if max_degree < 1:
        raise MismatchedArityError("the degree bound must be at least 1")
    field = ctx.pres.field
    cols = _monomials_up_to(ctx.n, max_degree)
    col_index = {m: c for c, m in enumerate(cols)}
    row_index: dict = {}
    rows_data = []
    for cidx, m in enumerate(cols):
        image = ctx.d(ctx.pres.mono(m))
        for (i,), q in image.components.items():
            for mono, coeff in q.terms.items():
                key = (i, mono)
                ridx = row_index.setdefault(key, len(row_index))
                rows_data.append((ridx, cidx, coeff))
    matrix = [[field.zero] * len(cols) for _ in range(max(len(row_index), 1))]
    for r, c, v in rows_data:
        matrix[r][c] = matrix[r][c] + v
    basis = linalg.nullspace(field, matrix, ncols=len(cols))
    return [NcPoly({cols[c]: v for c, v in enumerate(vec) if v}) for vec in basis]


def connected_at(ctx: CalculusContext, max_degree: int) -> bool:
    """Kernel of d on degree <= bound is exactly the scalars."""
    basis = kernel_of_d_bounded(ctx, max_degree)
    if len(basis) != 1:
        return False
    poly = basis[0]
    return set(poly.terms) == {(0,) * ctx.n}


# -- integral-form coefficients -------------------------------------------------

@dataclass(frozen=True)
class ClosedFormCheck:
    degree: int
    subset: tuple
    closed_a: object
    closed_abar: object
    product_normalizes: bool
    matches_constructive: bool


@dataclass(frozen=True)
class IntegralFormCoefficients:
    """Scalars A[(k, S)] and Abar[(k, T)] such that the barred complement form
    wedge the unbarred form recovers the volume form at every level."""

    a: dict
    abar: dict
    closed_form_checks: tuple

    def unbarred(self, ctx: CalculusContext, k: int, subset) -> DiffForm:
        subset = tuple(subset)
        return DiffForm(k, {subset: ctx.pres.scalar(self.a[(k, subset)])})

    def barred(self, ctx: CalculusContext, k: int, subset) -> DiffForm:
        subset = tuple(subset)
        return DiffForm(k, {subset: ctx.pres.scalar(self.abar[(k, subset)])})


def _closed_form_products(ctx: CalculusContext, subset, complement):
    """The two-branch closed-form double products with their stated index ranges."""
    pres = ctx.pres
    field = pres.field
    n = pres.n
    k = len(subset)
    phi = tuple(subset)
    phibar = tuple(complement)
    neg = -field.one

    def a_pair(u, v):
        return pres.a(u, v)

    if phi and phi[0] == 1:
        a_cf = field.one
        for s in range(1, n - k + 1):
            for t in range(1, phibar[s - 1]):
                a_cf = a_cf * neg * a_pair(t, phibar[s - 1])
        abar_cf = field.one
        for s in range(1, n - k):
            for t in range(s + 1, n - k + 1):
                abar_cf = abar_cf * neg / a_pair(phibar[s - 1], phibar[t - 1])
    else:
        a_cf = field.one
        for s in range(1, k):
            for t in range(s + 1, k + 1):
                a_cf = a_cf * neg / a_pair(phi[s - 1], phi[t - 1])
        abar_cf = field.one
        last = phibar[n - k - 1]
        for s in range(1, k + 1):
            for t in range(phi[s - 1] + 1, last + 1):
                abar_cf = abar_cf * neg * a_pair(phi[s - 1], t)
    return a_cf, abar_cf


def integral_form_coefficients(ctx: CalculusContext) -> IntegralFormCoefficients:
    """Constructive normalization: coefficient one on the lower half of the
    level range, the complementary partner forced by wedge-sorting so that
    barred(n-k, complement) ^ unbarred(k, S) is exactly the volume form.

    The closed-form double products are evaluated as a cross-check only;
    mismatches are recorded, never patched in.
    """
    pres = ctx.pres
    field = pres.field
    n = pres.n
    a: dict = {}
    abar: dict = {}
    all_indices = tuple(range(1, n + 1))
    for k in range(1, n):
        for subset in combinations(all_indices, k):
            complement = tuple(g for g in all_indices if g not in subset)
            factor, idx = ctx.basis_sort(complement + subset)
            assert idx == all_indices
            if 2 * k <= n:
                a[(k, subset)] = field.one
            else:
                a[(k, subset)] = field.one / factor
            if 2 * k < n:
                abar[(k, subset)] = field.one
            else:
                rev_factor, idx2 = ctx.basis_sort(subset + complement)
                assert idx2 == all_indices
                abar[(k, subset)] = field.one / rev_factor
    checks = []
    for k in range(1, n):
        for subset in combinations(all_indices, k):
            complement = tuple(g for g in all_indices if g not in subset)
            factor, _ = ctx.basis_sort(complement + subset)
            a_cf, abar_cf = _closed_form_products(ctx, subset, complement)
            product_ok = (a_cf * abar_cf * factor) == field.one
            matches = (a_cf == a[(k, subset)]
                       and abar_cf == abar[(n - k, complement)])
            checks.append(ClosedFormCheck(k, subset, a_cf, abar_cf, product_ok, matches))
    return IntegralFormCoefficients(a, abar, tuple(checks))


@dataclass(frozen=True)
class IntegrabilityReport:
    max_degree: int
    samples: int
    failures: tuple

    @property
    def all_pass(self) -> bool:
        return not self.failures


def random_form(ctx: CalculusContext, degree: int, coeff_degree: int,
                rng: random.Random, terms: int = 2) -> DiffForm:
    field = ctx.pres.field
    components: dict = {}
    subsets = list(combinations(range(1, ctx.n + 1), degree))
    for subset in rng.sample(subsets, k=min(terms, len(subsets))):
        poly: dict = {}
        for _ in range(terms):
            exps = [0] * ctx.n
            budget = rng.randint(0, coeff_degree)
            for _ in range(budget):
                exps[rng.randrange(ctx.n)] += 1
            c = field.random(rng, 5)
            if c:
                poly[tuple(exps)] = poly.get(tuple(exps), field.zero) + c
        p = NcPoly(poly)
        if p:
            components[subset] = p
    return DiffForm(degree, components)


def verify_integrability(ctx: CalculusContext, max_degree: int, samples: int,
                         seed: int = 0,
                         coefficients: IntegralFormCoefficients | None = None
                         ) -> IntegrabilityReport:
    """Both reconstruction identities for every middle degree on random forms:

        w' = sum_S unbarred_S^k . pi(barred^(n-k) ^ w')
        w' = sum_T nu_omega^{-1}(pi(w' ^ unbarred^(n-k))) . barred_T^k

    evaluated exactly; failures carry (degree, sample, side).
    """
    if coefficients is None:
        coefficients = integral_form_coefficients(ctx)
    rng = random.Random(seed)
    n = ctx.n
    nu_inv = invert(ctx.nu_omega)
    failures = []
    for k in range(1, n):
        for s in range(samples):
            w = random_form(ctx, k, max_degree, rng)
            lhs_a = ctx.zero_form(k)
            for subset in combinations(range(1, n + 1), k):
                complement = tuple(g for g in range(1, n + 1) if g not in subset)
                bar = coefficients.barred(ctx, n - k, complement)
                coeff = ctx.pi_omega(ctx.wedge(bar, w))
                lhs_a = lhs_a + ctx.right_mul(coefficients.unbarred(ctx, k, subset), coeff)
            if lhs_a != w:
                failures.append((k, s, "right-coefficient side"))
            lhs_b = ctx.zero_form(k)
            for complement in combinations(range(1, n + 1), n - k):
                subset = tuple(g for g in range(1, n + 1) if g not in complement)
                unb = coefficients.unbarred(ctx, n - k, complement)
                coeff = ctx.pi_omega(ctx.wedge(w, unb))
                moved = apply_endo(nu_inv, coeff, ctx.pres)
                lhs_b = lhs_b + ctx.left_act(moved, coefficients.barred(ctx, k, subset))
            if lhs_b != w:
                failures.append((k, s, "left-coefficient side"))
    return IntegrabilityReport(max_degree, samples, tuple(failures))
