from fractions import Fraction as F

import pytest

from skewsmooth.catalog import from_display
from skewsmooth.diffusion import DiffusionType
from skewsmooth.dsl import emit, parse
from skewsmooth.errors import (BadCharacteristicError, DuplicatePairError,
                               PresentationSyntaxError, ZeroQuadCoeffError)
from skewsmooth.scalars import QQ

REFERENCE3 = """\
name: reference_three_gen
kind: skew
field: Q
n: 3
x1*x2 - 5*x2*x1 = 0
x1*x3 - 1/3*x3*x1 = -7/3
x2*x3 - 2*x3*x2 = 0
"""


def test_parse_reference_instance():
    alg = parse(REFERENCE3)
    assert alg.kind == "skew" and alg.n == 3
    pres = alg.payload
    assert pres == from_display(QQ, 2, 3, 5, mu={0: 7}, names=("x1", "x2", "x3"))


def test_empty_body_is_commutative():
    alg = parse("kind: skew\nn: 2\n")
    pres = alg.payload
    assert pres.normal_form((2, 1)) == pres.mono((1, 1))


def test_unspecified_pairs_default():
    alg = parse("kind: skew\nn: 3\nx1*x2 - 2*x2*x1 = 0\n")
    assert alg.payload.a(1, 3) == 1 and alg.payload.a(2, 3) == 1


def test_comments_and_blank_lines():
    text = "# header comment\n\nname: t\nkind: skew\nn: 2\n# body comment\nx1*x2 - 2*x2*x1 = x1 # trailing\n"
    alg = parse(text)
    assert alg.payload.b(1, 2) == 1


def test_malformed_scalar_zero_denominator():
    with pytest.raises(PresentationSyntaxError) as err:
        parse("kind: skew\nn: 2\nx1*x2 - 1/0*x2*x1 = 0\n")
    assert err.value.line == 3


def test_zero_quad_coefficient():
    with pytest.raises(ZeroQuadCoeffError):
        parse("kind: skew\nn: 2\nx1*x2 - 0*x2*x1 = 0\n")


def test_duplicate_pair():
    with pytest.raises(DuplicatePairError):
        parse("kind: skew\nn: 2\nx1*x2 - 2*x2*x1 = 0\nx1*x2 - 3*x2*x1 = 0\n")


def test_characteristic_two_rejected():
    with pytest.raises(BadCharacteristicError):
        parse("kind: skew\nfield: Fp:2\nn: 2\n")


def test_prime_field_round_trip():
    text = "kind: skew\nfield: Fp:7\nn: 2\nx1*x2 - 3*x2*x1 = x1 + 2\n"
    alg = parse(text)
    assert alg.field.p == 7
    again = parse(emit(alg))
    assert again.payload == alg.payload


def test_bad_relation_orientation():
    with pytest.raises(PresentationSyntaxError):
        parse("kind: skew\nn: 2\nx2*x1 - 2*x1*x2 = 0\n")


def test_error_carries_position():
    with pytest.raises(PresentationSyntaxError) as err:
        parse("kind: skew\nn: 2\nx1*x2 - 2*x2*x1 = x1 + ??\n")
    assert err.value.line == 3 and err.value.column > 1


def test_round_trip_skew():
    alg = parse(REFERENCE3)
    text = emit(alg)
    again = parse(text)
    assert again.payload == alg.payload
    assert again.name == alg.name
    assert emit(again) == text


DIFF1 = """\
name: diff
kind: diffusion1
field: Q
n: 3
lambda 1 2 = 2
lambda 2 1 = 1
lambda 1 3 = 3
lambda 3 1 = 5
lambda 2 3 = 4
lambda 3 2 = 1
x 1 = 1/2
"""


def test_parse_diffusion1():
    alg = parse(DIFF1)
    dp = alg.payload
    assert dp.dtype is DiffusionType.TYPE1
    assert dp.lam(2, 1) == 1 and dp.lam(3, 2) == 1
    assert dp.x == (F(1, 2), F(0), F(0))


def test_round_trip_diffusion():
    alg = parse(DIFF1)
    again = parse(emit(alg))
    assert again.payload == alg.payload


def test_diffusion_defaults():
    alg = parse("kind: diffusion1\nn: 2\n")
    dp = alg.payload
    assert dp.lam(1, 2) == 1 and dp.lam(2, 1) == 0 and dp.x == (F(0), F(0))


def test_diffusion2_has_no_x_lines():
    with pytest.raises(PresentationSyntaxError):
        parse("kind: diffusion2\nn: 2\nx 1 = 3\n")


def test_diffusion2_round_trip():
    text = "kind: diffusion2\nn: 2\nlambda 1 2 = 2\nlambda 2 1 = 3\n"
    alg = parse(text)
    assert alg.payload.dtype is DiffusionType.TYPE2
    again = parse(emit(alg))
    assert again.payload == alg.payload


def test_presentation_helper():
    alg = parse(DIFF1)
    pres = alg.presentation()
    assert pres.n == 3
    alg2 = parse(REFERENCE3)
    assert alg2.presentation() is alg2.payload
