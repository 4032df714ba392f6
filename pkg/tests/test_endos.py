import random
from fractions import Fraction as F

import pytest

from skewsmooth.algebra import Presentation
from skewsmooth.catalog import from_display, three_dim_class
from skewsmooth.endos import (AffineEndo, apply_endo, commute, compose,
                              identity_endo, invert, respects_relations)
from skewsmooth.errors import ZeroSlopeError
from skewsmooth.scalars import QQ

from helpers import random_poly, random_skew_presentation


def endo(*pairs):
    return AffineEndo(tuple(F(a) for a, _ in pairs), tuple(F(b) for _, b in pairs))


class TestApply:
    def test_identity(self):
        rng = random.Random(1)
        pres = random_skew_presentation(rng, 3)
        p = random_poly(pres, rng)
        assert apply_endo(identity_endo(QQ, 3), p, pres) == p

    def test_tabulated_scaling(self):
        # nu_y on x scales by gamma = 5
        pres = from_display(QQ, 2, 3, 5)
        nu_y = endo((5, 0), (1, 0), (F(1, 2), 0))
        assert apply_endo(nu_y, pres.gen(1), pres) == pres.mono((1, 0, 0), 5)

    def test_binomial_expansion(self):
        pres = Presentation.commutative(QQ, 1)
        e = endo((2, 3))
        got = apply_endo(e, pres.mono((2,)), pres)
        assert got == pres.poly({(2,): 4, (1,): 12, (0,): 9})

    def test_fixes_scalars(self):
        pres = Presentation.commutative(QQ, 2)
        e = endo((2, 1), (3, 5))
        assert apply_endo(e, pres.scalar(F(7, 2)), pres) == pres.scalar(F(7, 2))


class TestCompose:
    def test_identity_neutral(self):
        e = endo((2, 3), (F(1, 2), -1))
        assert compose(identity_endo(QQ, 2), e) == e

    def test_pinned_formula(self):
        e1 = endo((2, 0))
        e2 = endo((1, 1))
        assert compose(e1, e2) == endo((2, 2))

    def test_reference_family_commutes(self):
        # (alpha, beta, gamma, a, d) = (2, 3, 5, 0, 0)
        nu_x = endo((F(1, 3), 0), (F(1, 5), 0), (3, 0))
        nu_y = endo((5, 0), (1, 0), (F(1, 2), 0))
        assert compose(nu_x, nu_y) == compose(nu_y, nu_x)

    def test_compose_then_apply(self):
        rng = random.Random(3)
        pres = Presentation.commutative(QQ, 2)
        for _ in range(15):
            e1 = AffineEndo((QQ.random_nonzero(rng), QQ.random_nonzero(rng)),
                            (QQ.random(rng), QQ.random(rng)))
            e2 = AffineEndo((QQ.random_nonzero(rng), QQ.random_nonzero(rng)),
                            (QQ.random(rng), QQ.random(rng)))
            p = random_poly(pres, rng)
            assert apply_endo(compose(e1, e2), p, pres) == \
                apply_endo(e2, apply_endo(e1, p, pres), pres)


class TestCommute:
    def test_shift_incompatibility(self):
        assert not commute(endo((1, 1)), endo((2, 0)))

    def test_scaling_pair(self):
        assert commute(endo((2, 0)), endo((3, 0)))

    def test_matching_shifts(self):
        # b2 (a1 - 1) == b1 (a2 - 1)
        assert commute(endo((3, 2)), endo((5, 4)))


def test_invert_roundtrip():
    rng = random.Random(11)
    for _ in range(20):
        e = AffineEndo((QQ.random_nonzero(rng), QQ.random_nonzero(rng)),
                       (QQ.random(rng), QQ.random(rng)))
        assert compose(e, invert(e)) == identity_endo(QQ, 2)
        assert compose(invert(e), e) == identity_endo(QQ, 2)


def test_zero_slope_rejected():
    with pytest.raises(ZeroSlopeError):
        AffineEndo((F(0),), (F(1),))


class TestRespectsRelations:
    def test_identity_passes_everywhere(self):
        rng = random.Random(2)
        pres = random_skew_presentation(rng, 3)
        assert respects_relations(identity_endo(QQ, 3), pres).all_pass

    def test_reference_twist_passes(self):
        # case with d = a = 0, alpha=2, beta=3, gamma=5, b=7 needs alpha=gamma
        # for a full family, but nu_x alone respects all three relations.
        pres = from_display(QQ, 2, 3, 5, mu={0: 7})
        nu_x = endo((F(1, 3), 0), (F(1, 5), 0), (3, 0))
        assert respects_relations(nu_x, pres).all_pass

    def test_forced_family_fails_on_5e(self):
        # yz - zy = z (a = 1), zx - xz = x, xy - yx = 0: the forced images
        # nu_x(z) = z + 1, nu_x(y) = y break the (y, z) relation exactly by a.
        pres = three_dim_class("5e", a=1)
        nu_x = AffineEndo((F(1), F(1), F(1)), (F(0), F(0), F(1)))
        report = respects_relations(nu_x, pres)
        assert not report.all_pass
        assert [f.pair for f in report.failures()] == [(2, 3)]
        assert report.failures()[0].residue == pres.scalar(-1)

    def test_algebra_map_property(self):
        pres = from_display(QQ, 2, 3, 5)
        nu_z = endo((F(1, 3), 0), (2, 0), (3, 0))
        assert respects_relations(nu_z, pres).all_pass
        rng = random.Random(4)
        for _ in range(15):
            p = random_poly(pres, rng)
            q = random_poly(pres, rng)
            assert apply_endo(nu_z, pres.multiply(p, q), pres) == \
                pres.multiply(apply_endo(nu_z, p, pres), apply_endo(nu_z, q, pres))
