"""PBW monomials, noncommutative polynomials, quasi-commutation presentations,
and the normal-form rewriting engine with overlap (diamond) checking.

A presentation stores, for each generator pair i < j, the relation

    x_i x_j  -  quad * x_j x_i  =  tail        (tail: scalar combination of
                                                normal-ordered words)

together with a monomial-order convention.  ASCENDING presentations normalize
words to x_1^{l_1} ... x_n^{l_n} (the skew-polynomial convention); DESCENDING
presentations normalize to x_n^{l_n} ... x_1^{l_1} (the diffusion convention).

Rewriting a wrong-order adjacent pair terminates: the swap branch fixes one
inversion among non-central letters, a tail word either drops total degree or
(degree-two tails, which must involve a central letter) removes a non-central
inversion while adding only central-letter inversions, and central swaps fix a
remaining inversion.  The measure (degree, non-central inversions, all
inversions) decreases lexicographically at every step.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Mapping

from .errors import MismatchedArityError, NonDiagonalTailError, ZeroQuadCoeffError

__all__ = [
    "Ordering",
    "NcPoly",
    "PairRule",
    "Presentation",
    "OverlapCheck",
    "OverlapReport",
    "normal_form",
    "multiply",
    "check_pbw_overlaps",
    "degree_truncation",
    "relabel",
]

Monomial = tuple  # exponent vector, one entry per generator
Word = tuple      # product of 1-based generator indices, leftmost factor first


class Ordering(str, Enum):
    ASCENDING = "ascending"
    DESCENDING = "descending"


class NcPoly:
    """Finite scalar combination of PBW monomials (exponent vectors).

    The term map never stores zero coefficients, so equality is map equality.
    Addition and scaling are field-generic; multiplication lives on the
    presentation because it needs the rewrite rules.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @staticmethod
    def zero() -> "NcPoly":
        return NcPoly()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, NcPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "NcPoly") -> "NcPoly":
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        res = NcPoly.__new__(NcPoly)
        res.terms = out
        return res

    def __neg__(self) -> "NcPoly":
        res = NcPoly.__new__(NcPoly)
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other: "NcPoly") -> "NcPoly":
        return self + (-other)

    def scale(self, c) -> "NcPoly":
        if not c:
            return NcPoly.zero()
        res = NcPoly.__new__(NcPoly)
        res.terms = {m: c * v for m, v in self.terms.items()}
        return res

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def constant_term(self, field):
        if not self.terms:
            return field.zero
        n = len(next(iter(self.terms)))
        return self.terms.get((0,) * n, field.zero)

    def __repr__(self):
        if not self.terms:
            return "NcPoly(0)"
        bits = []
        for m in sorted(self.terms, key=lambda m: (sum(m), m)):
            mono = "*".join(f"x{g + 1}^{e}" if e > 1 else f"x{g + 1}"
                            for g, e in enumerate(m) if e) or "1"
            bits.append(f"({self.terms[m]})*{mono}")
        return "NcPoly(" + " + ".join(bits) + ")"


@dataclass(frozen=True)
class PairRule:
    """Relation data for a pair i < j: x_i x_j - quad x_j x_i = tail."""

    quad: object
    tail: tuple  # ((coeff, word), ...) with normal-ordered words of degree <= 2


@dataclass(frozen=True)
class OverlapCheck:
    i: int
    j: int
    k: int
    passed: bool
    discrepancy: NcPoly


@dataclass(frozen=True)
class OverlapReport:
    checks: tuple

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


class Presentation:
    """An n-generator quasi-commutation presentation with an order convention.

    Generators are 1-based.  ``pairs`` maps (i, j) with i < j to a PairRule;
    missing pairs default to the commutative rule (quad 1, no tail).  Central
    generators must carry exactly the commutative rule against everything.
    """

    def __init__(self, field, n: int, ordering: Ordering = Ordering.ASCENDING,
                 pairs: Mapping[tuple, PairRule] | None = None,
                 central: Iterable[int] = (), names: tuple | None = None):
        self.field = field
        self.n = n
        self.ordering = Ordering(ordering)
        self.central = frozenset(central)
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(1, n + 1))
        if len(self.names) != n:
            raise MismatchedArityError("names length differs from generator count")
        full = {}
        pairs = dict(pairs or {})
        for i, j in combinations(range(1, n + 1), 2):
            rule = pairs.pop((i, j), None)
            if rule is None:
                rule = PairRule(field.one, ())
            self._validate_rule(i, j, rule)
            full[(i, j)] = rule
        if pairs:
            raise MismatchedArityError(f"pair keys out of range: {sorted(pairs)}")
        self.pairs = full
        self._nf_cache: dict = {}

    def _validate_rule(self, i, j, rule: PairRule):
        n = self.n
        if not (1 <= i < j <= n):
            raise MismatchedArityError(f"bad pair ({i}, {j})")
        if self.ordering is Ordering.ASCENDING and not rule.quad:
            raise ZeroQuadCoeffError(
                f"pair ({i}, {j}): ascending rewriting needs an invertible quad coefficient")
        for coeff, word in rule.tail:
            if len(word) > 2:
                raise MismatchedArityError("tail words must have degree <= 2")
            for g in word:
                if not (1 <= g <= n):
                    raise MismatchedArityError(f"tail generator {g} out of range")
            if len(word) == 2:
                u, v = word
                ordered = u <= v if self.ordering is Ordering.ASCENDING else u >= v
                if not ordered:
                    raise MismatchedArityError("degree-two tail words must be normal-ordered")
                if u not in self.central and v not in self.central:
                    raise MismatchedArityError(
                        "degree-two tail words must involve a central generator")
        if (i in self.central or j in self.central) and (rule.quad != self.field.one or rule.tail):
            raise MismatchedArityError(
                f"central pair ({i}, {j}) must be plainly commutative")

    # -- constructors -------------------------------------------------------

    @classmethod
    def skew(cls, field, n: int, relations: Mapping | None = None, names=None) -> "Presentation":
        """ASCENDING presentation from spag data.

        ``relations`` maps (i, j) to (a_ij, tail, e_ij) where ``tail`` maps a
        generator index to its linear coefficient.  Unspecified pairs default
        to a = 1 with zero tails.
        """
        pairs = {}
        for (i, j), (a, tail, e) in (relations or {}).items():
            a = field.coerce(a)
            terms = []
            for g in sorted(tail):
                c = field.coerce(tail[g])
                if c:
                    terms.append((c, (g,)))
            e = field.coerce(e)
            if e:
                terms.append((e, ()))
            pairs[(i, j)] = PairRule(a, tuple(terms))
        return cls(field, n, Ordering.ASCENDING, pairs, names=names)

    @classmethod
    def commutative(cls, field, n: int) -> "Presentation":
        return cls(field, n, Ordering.ASCENDING, {})

    # -- spag accessors -----------------------------------------------------

    def a(self, i: int, j: int):
        return self.pairs[(i, j)].quad

    def tail_vector(self, i: int, j: int):
        """Linear tail as a dense vector, plus the constant term."""
        vec = [self.field.zero] * self.n
        const = self.field.zero
        for coeff, word in self.pairs[(i, j)].tail:
            if len(word) == 0:
                const = const + coeff
            elif len(word) == 1:
                vec[word[0] - 1] = vec[word[0] - 1] + coeff
            else:
                raise NonDiagonalTailError(f"pair ({i}, {j}) carries a non-linear tail")
        return vec, const

    def b(self, i: int, j: int):
        return self.tail_vector(i, j)[0][i - 1]

    def c(self, i: int, j: int):
        return self.tail_vector(i, j)[0][j - 1]

    def e(self, i: int, j: int):
        return self.tail_vector(i, j)[1]

    @property
    def is_linear_tailed(self) -> bool:
        return all(len(w) <= 1 for rule in self.pairs.values() for _, w in rule.tail)

    def diagonal_tail_offenders(self):
        """(i, j, k) triples with a tail entry on a third generator k."""
        found = []
        for (i, j) in sorted(self.pairs):
            for coeff, word in self.pairs[(i, j)].tail:
                if len(word) == 1 and word[0] not in (i, j) and coeff:
                    found.append((i, j, word[0]))
        return found

    # -- polynomial builders -------------------------------------------------

    def zero_poly(self) -> NcPoly:
        return NcPoly.zero()

    def one(self) -> NcPoly:
        return NcPoly({(0,) * self.n: self.field.one})

    def scalar(self, c) -> NcPoly:
        return NcPoly({(0,) * self.n: self.field.coerce(c)})

    def gen(self, i: int) -> NcPoly:
        if not (1 <= i <= self.n):
            raise MismatchedArityError(f"generator {i} out of range")
        exps = [0] * self.n
        exps[i - 1] = 1
        return NcPoly({tuple(exps): self.field.one})

    def mono(self, exps, coeff=None) -> NcPoly:
        exps = tuple(exps)
        if len(exps) != self.n or any(e < 0 for e in exps):
            raise MismatchedArityError(f"bad exponent vector {exps}")
        return NcPoly({exps: self.field.one if coeff is None else self.field.coerce(coeff)})

    def poly(self, terms: Mapping) -> NcPoly:
        out = {}
        for exps, c in terms.items():
            exps = tuple(exps)
            if len(exps) != self.n:
                raise MismatchedArityError(f"bad exponent vector {exps}")
            c = self.field.coerce(c)
            if c:
                out[exps] = c
        return NcPoly(out)

    def monomial_word(self, m: Monomial) -> Word:
        gens = range(1, self.n + 1)
        if self.ordering is Ordering.DESCENDING:
            gens = reversed(gens)
        return tuple(g for g in gens for _ in range(m[g - 1]))

    # -- rewriting -----------------------------------------------------------

    def _wrong_order(self, u: int, v: int) -> bool:
        return u > v if self.ordering is Ordering.ASCENDING else u < v

    def _branches(self, u: int, v: int):
        """Rewrite branches for the adjacent wrong-order product x_u x_v."""
        if self.ordering is Ordering.ASCENDING:
            rule = self.pairs[(v, u)]
            inv = self.field.one / rule.quad
            out = [(inv, (v, u))]
            out.extend((-(t * inv), w) for t, w in rule.tail)
        else:
            rule = self.pairs[(u, v)]
            out = []
            if rule.quad:
                out.append((rule.quad, (v, u)))
            out.extend(rule.tail)
        return out

    def _word_to_monomial(self, word: Word) -> Monomial:
        exps = [0] * self.n
        for g in word:
            exps[g - 1] += 1
        return tuple(exps)

    def _nf_word(self, word: Word) -> NcPoly:
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        pos = next((t for t in range(len(word) - 1)
                    if self._wrong_order(word[t], word[t + 1])), None)
        if pos is None:
            result = NcPoly({self._word_to_monomial(word): self.field.one})
        else:
            u, v = word[pos], word[pos + 1]
            head, tail = word[:pos], word[pos + 2:]
            result = NcPoly.zero()
            for coeff, repl in self._branches(u, v):
                result = result + self._nf_word(head + repl + tail).scale(coeff)
        self._nf_cache[word] = result
        return result

    def normal_form(self, word_or_terms) -> NcPoly:
        """PBW normal form of a raw word or of scalar-weighted word terms."""
        if isinstance(word_or_terms, tuple):
            terms = [(self.field.one, word_or_terms)]
        else:
            terms = list(word_or_terms)
        out = NcPoly.zero()
        for coeff, word in terms:
            for g in word:
                if not (1 <= g <= self.n):
                    raise MismatchedArityError(f"generator {g} out of range (n={self.n})")
            out = out + self._nf_word(tuple(word)).scale(self.field.coerce(coeff))
        return out

    def multiply(self, p: NcPoly, q: NcPoly) -> NcPoly:
        out = NcPoly.zero()
        for m1, c1 in p.terms.items():
            w1 = self.monomial_word(m1)
            for m2, c2 in q.terms.items():
                out = out + self._nf_word(w1 + self.monomial_word(m2)).scale(c1 * c2)
        return out

    def product(self, *polys: NcPoly) -> NcPoly:
        out = self.one()
        for p in polys:
            out = self.multiply(out, p)
        return out

    def check_pbw_overlaps(self) -> OverlapReport:
        """Diamond criterion on all triples i < j < k.

        The fully inverted three-letter word is reduced by its two possible
        first steps; both reducts are brought to normal form and compared.
        """
        checks = []
        for i, j, k in combinations(range(1, self.n + 1), 3):
            if self.ordering is Ordering.ASCENDING:
                word = (k, j, i)
            else:
                word = (i, j, k)
            reducts = []
            for pos in (0, 1):
                u, v = word[pos], word[pos + 1]
                total = NcPoly.zero()
                for coeff, repl in self._branches(u, v):
                    rewritten = word[:pos] + repl + word[pos + 2:]
                    total = total + self._nf_word(rewritten).scale(coeff)
                reducts.append(total)
            diff = reducts[0] - reducts[1]
            checks.append(OverlapCheck(i, j, k, not diff, diff))
        return OverlapReport(tuple(checks))

    def format_poly(self, p: NcPoly) -> str:
        if not p:
            return "0"
        bits = []
        for m in sorted(p.terms, key=lambda m: (sum(m), tuple(-e for e in m))):
            c = p.terms[m]
            mono = "*".join(
                f"{self.names[g]}^{e}" if e > 1 else self.names[g]
                for g, e in enumerate(m) if e)
            if not mono:
                bits.append(str(c))
            elif c == self.field.one:
                bits.append(mono)
            elif c == -self.field.one:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        text = bits[0]
        for b in bits[1:]:
            text += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return text

    def __eq__(self, other):
        return (isinstance(other, Presentation)
                and self.field == other.field
                and self.n == other.n
                and self.ordering == other.ordering
                and self.central == other.central
                and self.pairs == other.pairs)

    def __hash__(self):
        return hash((self.field, self.n, self.ordering, self.central))

    def __repr__(self):
        return f"Presentation(n={self.n}, {self.ordering.value}, field={self.field!r})"


# -- module-level operation names ------------------------------------------

def normal_form(word_or_terms, pres: Presentation) -> NcPoly:
    return pres.normal_form(word_or_terms)


def multiply(p: NcPoly, q: NcPoly, pres: Presentation) -> NcPoly:
    return pres.multiply(p, q)


def check_pbw_overlaps(pres: Presentation) -> OverlapReport:
    return pres.check_pbw_overlaps()


def degree_truncation(p: NcPoly, max_degree: int) -> NcPoly:
    """Sub-sum of terms of total degree <= max_degree (degree of 0 is -1)."""
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    return NcPoly({m: c for m, c in p.terms.items() if sum(m) <= max_degree})


def relabel(pres: Presentation, mapping: Mapping[int, int],
            ordering: Ordering) -> Presentation:
    """Rebuild a presentation under a generator bijection and order convention.

    Only linear-tailed presentations are supported.  Relations whose pair
    orientation flips are re-solved for the new leading product, which needs
    the quad coefficient to be invertible.
    """
    if sorted(mapping) != list(range(1, pres.n + 1)) or \
            sorted(mapping.values()) != list(range(1, pres.n + 1)):
        raise MismatchedArityError("mapping must be a bijection on 1..n")
    if not pres.is_linear_tailed:
        raise MismatchedArityError("relabel supports linear tails only")
    pairs = {}
    for (i, j), rule in pres.pairs.items():
        u, v = mapping[i], mapping[j]
        if u < v:
            tail = tuple((c, tuple(mapping[g] for g in w)) for c, w in rule.tail)
            pairs[(u, v)] = PairRule(rule.quad, tail)
        else:
            if not rule.quad:
                raise ZeroQuadCoeffError(
                    f"pair ({i}, {j}): orientation flip needs invertible quad coefficient")
            inv = pres.field.one / rule.quad
            tail = tuple((-(c * inv), tuple(mapping[g] for g in w)) for c, w in rule.tail)
            pairs[(v, u)] = PairRule(inv, tail)
    central = frozenset(mapping[g] for g in pres.central)
    return Presentation(pres.field, pres.n, ordering, pairs, central=central)
