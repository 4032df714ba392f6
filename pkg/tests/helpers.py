"""Shared test utilities: independent oracles and random generators.

The rewriting oracle mirrors the documented leftmost strategy but is a
separate mechanism (iterative tree expansion, no caches, reads the relation
data directly), so it cross-checks the engine rather than re-running it.
"""

from __future__ import annotations

import random
from fractions import Fraction

from skewsmooth.algebra import NcPoly, Ordering, Presentation


def naive_normal_form(pres: Presentation, terms) -> dict:
    """Exhaustive leftmost rewriting on weighted words; returns exponent->coeff."""
    if isinstance(terms, tuple):
        terms = [(pres.field.one, terms)]
    stack = [(pres.field.coerce(c), tuple(w)) for c, w in terms]
    out: dict = {}
    while stack:
        coeff, word = stack.pop()
        if not coeff:
            continue
        pos = None
        for t in range(len(word) - 1):
            u, v = word[t], word[t + 1]
            wrong = u > v if pres.ordering is Ordering.ASCENDING else u < v
            if wrong:
                pos = t
                break
        if pos is None:
            exps = [0] * pres.n
            for g in word:
                exps[g - 1] += 1
            key = tuple(exps)
            s = out.get(key, pres.field.zero) + coeff
            if s:
                out[key] = s
            else:
                out.pop(key, None)
            continue
        u, v = word[pos], word[pos + 1]
        head, tail = word[:pos], word[pos + 2:]
        if pres.ordering is Ordering.ASCENDING:
            rule = pres.pairs[(v, u)]
            inv = pres.field.one / rule.quad
            stack.append((coeff * inv, head + (v, u) + tail))
            for tcoeff, tword in rule.tail:
                stack.append((-(coeff * tcoeff * inv), head + tword + tail))
        else:
            rule = pres.pairs[(u, v)]
            if rule.quad:
                stack.append((coeff * rule.quad, head + (v, u) + tail))
            for tcoeff, tword in rule.tail:
                stack.append((coeff * tcoeff, head + tword + tail))
    return out


def poly_dict(p: NcPoly) -> dict:
    return dict(p.terms)


def random_rational(rng: random.Random, height: int = 5) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def random_nonzero_rational(rng: random.Random, height: int = 5) -> Fraction:
    while True:
        x = random_rational(rng, height)
        if x:
            return x


def random_skew_presentation(rng: random.Random, n: int = 3,
                             with_tails: bool = True, field=None) -> Presentation:
    from skewsmooth.scalars import QQ
    field = field or QQ
    relations = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            a = random_nonzero_rational(rng, 4)
            tail = {}
            e = Fraction(0)
            if with_tails:
                for g in range(1, n + 1):
                    if rng.random() < 0.3:
                        tail[g] = random_rational(rng, 3)
                if rng.random() < 0.4:
                    e = random_rational(rng, 3)
            relations[(i, j)] = (a, tail, e)
    return Presentation.skew(field, n, relations)


def random_word(rng: random.Random, n: int, max_len: int) -> tuple:
    return tuple(rng.randint(1, n) for _ in range(rng.randint(0, max_len)))


def random_poly(pres: Presentation, rng: random.Random, max_degree: int = 3,
                terms: int = 3) -> NcPoly:
    out = {}
    for _ in range(terms):
        exps = [0] * pres.n
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(pres.n)] += 1
        c = random_rational(rng, 4)
        if c:
            out[tuple(exps)] = out.get(tuple(exps), Fraction(0)) + c
    return pres.poly(out)
