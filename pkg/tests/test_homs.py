import pytest

from fgcert.homs import (
    VerifiedAut,
    abelianization_matrix,
    compose,
    compose_auts,
    fixes_word,
    hom,
    identity_hom,
    inner_aut,
    nielsen_inversion,
    nielsen_permutation,
    nielsen_transvection,
    parse_hom,
    shear_alpha3,
    shear_beta3,
    transvection_alpha,
    transvection_beta,
)
from fgcert.words import WordError, alphabet, commutator, parse_word

XY = alphabet("x", "y")
XYZ = alphabet("x", "y", "z")


def test_hom_application():
    f = hom(XY, "x", "y x^2")
    assert str(f(parse_word("y", XY))) == "y x^2"
    assert str(f(parse_word("x y", XY))) == "x y x^2"
    assert f(XY.identity()).is_identity()


def test_parse_hom_format():
    f = parse_hom("x -> x\ny -> y x^2", XY)
    assert f.images == hom(XY, "x", "y x^2").images
    with pytest.raises(WordError):
        parse_hom("x -> x", XY)  # missing a generator
    with pytest.raises(WordError):
        parse_hom("x -> x\nz -> y", XY)


def test_compose_order():
    # compose(f, g) applies g first
    f = hom(XY, "x", "y x")
    g = hom(XY, "y", "x")
    w = parse_word("x", XY)
    assert compose(f, g)(w) == f(g(w))


def test_verified_aut_rejects_non_inverse():
    f = hom(XY, "x", "y x^2")
    wrong = hom(XY, "x", "y")
    with pytest.raises(WordError):
        VerifiedAut(f, wrong)


def test_verified_aut_roundtrip():
    a = transvection_alpha()
    for g in XY.generators():
        assert a.backward(a.forward(g)) == g
        assert a.forward(a.backward(g)) == g
    assert compose_auts(a, a.inverse())(parse_word("x y", XY)) == parse_word("x y", XY)


def test_inner_aut_is_conjugation():
    g = parse_word("x y", XY)
    inn = inner_aut(g)
    w = parse_word("y^2 x", XY)
    assert inn(w) == g.inverse() * w * g


def test_abelianization_matrix_columns():
    # column i = exponent sums of the image of generator i
    f = hom(XY, "x y^2", "y x^3")
    m = abelianization_matrix(f)
    assert [m[0, 0], m[1, 0]] == [1, 2]
    assert [m[0, 1], m[1, 1]] == [3, 1]
    ident = abelianization_matrix(identity_hom(XY))
    assert ident[0, 0] == ident[1, 1] == 1 and ident[0, 1] == ident[1, 0] == 0


def test_transvections_fix_commutator():
    e2 = commutator(parse_word("y", XY), parse_word("x", XY))
    assert fixes_word(transvection_alpha().forward, e2)
    assert fixes_word(transvection_beta().forward, e2)


def test_rank3_shears():
    a = shear_alpha3()
    b = shear_beta3()
    assert str(a(parse_word("z", XYZ))) == "z y"
    assert str(b(parse_word("y", XYZ))) == "y z"
    assert a(parse_word("x", XYZ)) == parse_word("x", XYZ)


def test_nielsen_generators():
    t = nielsen_transvection(XY, 0, 1)
    assert str(t(parse_word("x", XY))) == "x y"
    inv = nielsen_inversion(XY, 1)
    assert str(inv(parse_word("y", XY))) == "y^-1"
    p = nielsen_permutation(XYZ, (1, 2, 0))
    assert str(p(parse_word("x", XYZ))) == "y"
    assert str(p(parse_word("z", XYZ))) == "x"
    with pytest.raises(WordError):
        nielsen_permutation(XY, (0, 0))
