from fractions import Fraction

import pytest

from planeaut import (
    Endo,
    LaurentRing,
    MultiPoly,
    NoPoleError,
    NotInvertibleError,
    PlaneAutError,
    PoleAtZeroError,
    PrimeField,
    RationalField,
    RingMismatchError,
    TFamily,
    UnsupportedFieldError,
    degenerate_family_ii,
    degenerate_family_iii,
    degenerate_family_iv,
    lift_plane_aut,
    parse_automorphism,
    plane_aut_from_endo,
    pole_propagation_check,
    x_alpha,
)

Q = RationalField()
F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def fam(src, K=Q):
    out = parse_automorphism(src, K)
    if isinstance(out, TFamily):
        return out
    L = LaurentRing(K)
    return lift_plane_aut(plane_aut_from_endo(out), L)


# -- one-parameter families --------------------------------------------------

def test_family_requires_laurent_coefficients():
    e = parse_automorphism("(x1, x2)", Q)
    with pytest.raises(RingMismatchError):
        TFamily(e)


def test_family_valuation_and_value_at_zero():
    f = fam("(x1 + t*x2^2, x2)")
    assert f.valuation == 0
    at0 = f.value_at_zero()
    assert str(at0) == "(x1, x2)"

    g = fam("(t*x1, 1/t * x2)")
    assert g.valuation == -1
    with pytest.raises(PoleAtZeroError):
        g.value_at_zero()


def test_family_specialize():
    f = fam("(x1 + t*x2^2, x2)")
    at2 = f.specialize(Fraction(2))
    assert str(at2) == "(2*x2^2 + x1, x2)"
    assert plane_aut_from_endo(at2).is_special
    with pytest.raises(PoleAtZeroError):
        f.specialize(Fraction(0))


def test_family_substitute_t_power():
    g = fam("(t*x1, 1/t * x2)")
    g2 = g.substitute_t_power(3)
    assert str(g2.endo) == "(t^3*x1, t^-3*x2)"
    assert g2.valuation == -3


def test_family_compose_and_inverse_cache():
    g = fam("(t*x1, 1/t * x2)")
    assert str(g.compose(g.inverse()).endo) == "(x1, x2)"
    inv = g.inverse()
    assert g.inverse().endo is inv.endo    # computed once
    assert inv.inverse().endo == g.endo


def test_function_field_inverse():
    f = fam("(x1 + t*x2^2, x2)")
    inv = f.inverse()
    assert str(inv.endo) == "(-t*x2^2 + x1, x2)"
    assert str(f.compose(inv).endo) == "(x1, x2)"


def test_inverse_can_leave_laurent_coefficients():
    L = LaurentRing(Q)
    one_plus_t = {0: Fraction(1), 1: Fraction(1)}
    x1 = MultiPoly.variable(L, 2, 0)
    x2 = MultiPoly.variable(L, 2, 1)
    f = TFamily(Endo([x1.scale(one_plus_t), x2]))
    with pytest.raises(NotInvertibleError):
        f.inverse()


def test_family_rejects_wrong_inverse():
    g = fam("(t*x1, 1/t * x2)")
    with pytest.raises(NotInvertibleError):
        TFamily(g.endo, fam("(t*x1, t*x2)").endo)


# -- image of affine points at t = 0 ----------------------------------------

def test_x_alpha_needs_pole():
    with pytest.raises(NoPoleError):
        x_alpha(fam("(x1 + t*x2^2, x2)"))


def test_x_alpha_diagonal():
    xs = x_alpha(fam("(t*x1, 1/t * x2)"))
    assert xs.m == 1
    assert [str(p) for p in xs.points] == ["[0:0:1]"]
    assert xs.under_approximation


def test_x_alpha_finite_field():
    xs = x_alpha(fam("(x1 + 1/t * x2, x2)", F3))
    # reduced map (x2, 0): every sample with x2 != 0 lands on [0:1:0]
    assert [str(p) for p in xs.points] == ["[0:1:0]"]


# -- pole propagation --------------------------------------------------------

def test_pole_propagation_vacuous():
    f = plane_aut_from_endo(parse_automorphism("(x2, -x1 + x2^2)", Q))
    rep = pole_propagation_check(f, fam("(x1 + t*x2, x2)"))
    assert not rep.hypothesis_met
    assert rep.implication_holds and rep.dichotomy_holds
    assert rep.x_points == ()
    assert any("no pole" in n for n in rep.notes)


def test_pole_propagation_hypothesis_met():
    f = plane_aut_from_endo(parse_automorphism("(x2, -x1 + x2^2)", Q))
    rep = pole_propagation_check(f, fam("(t*x1, 1/t * x2)"))
    assert str(rep.i_f) == "[0:1:0]"
    assert [str(p) for p in rep.x_points] == ["[0:0:1]"]
    assert rep.hypothesis_met
    assert rep.conjugate_valuation < 0
    assert rep.implication_holds and rep.dichotomy_holds


# -- degenerations of the algebraic families ---------------------------------

def test_degenerate_family_ii():
    w = degenerate_family_ii(Q, {2: Fraction(1), 0: Fraction(3)})
    assert w.family_tag == "ii"
    assert str(w.family.endo) == "(t^3*x2^2 + x1 + 3*t, x2)"
    assert str(w.limit) == "(x1, x2)"
    assert w.verify()
    for c in (Fraction(1), Fraction(-2), Fraction(1, 3)):
        assert w.specialization_check(c)


def test_degenerate_family_iii():
    w = degenerate_family_iii(Q, Fraction(-1), 2, {1: Fraction(1), 0: Fraction(1)})
    assert w.family_tag == "iii"
    assert str(w.family.endo) == "(t^4*x2^3 - x1 + t^2*x2, -x2)"
    assert str(w.limit) == "(-x1, -x2)"
    assert w.verify()
    assert w.specialization_check(Fraction(2))


def test_degenerate_family_iii_f5():
    w = degenerate_family_iii(F5, 2, 4, {0: 1})
    assert str(w.limit) == "(2*x1, 3*x2)"
    assert w.verify()
    for c in (1, 2, 3):
        assert w.specialization_check(c)


def test_degenerate_family_iii_rejects_bad_root():
    with pytest.raises(PlaneAutError):
        degenerate_family_iii(Q, Fraction(1), 2, {0: Fraction(1)})   # not primitive
    with pytest.raises(PlaneAutError):
        degenerate_family_iii(F5, 4, 4, {0: 1})                      # order 2, not 4
    with pytest.raises(PlaneAutError):
        degenerate_family_iii(F5, 2, 4, {})                          # empty body


def test_degenerate_family_iv_f2():
    w = degenerate_family_iv(F2, {1: 1}, variant="F1")
    assert w.family_tag == "iv-F1"
    assert w.params["d"] == 1 and w.params["q"] == 2
    assert str(w.family.endo) == "(t*x2^4 + t^3*x1^2 + x1, t*x2^2 + t^2*x1 + x2 + 1)"
    assert str(w.limit) == "(x1, x2 + 1)"
    assert w.verify()
    assert w.specialization_check(1)


def test_degenerate_family_iv_f2_variant_two():
    w = degenerate_family_iv(F2, {1: 1}, variant="F2")
    assert w.params["m"] == 6
    assert str(w.limit) == "(x1, x2)"
    assert w.verify()
    assert w.specialization_check(1)


def test_degenerate_family_iv_f3():
    w = degenerate_family_iv(F3, {2: 2}, variant="F1")
    assert w.params == {"d": 2, "mu": 2, "q": 3, "lambda": 2}
    assert str(w.limit) == "(x1, x2 + 1)"
    assert w.verify()
    for c in (1, 2):
        assert w.specialization_check(c)


def test_degenerate_family_iv_translation_only():
    w1 = degenerate_family_iv(F2, {}, variant="F1")
    assert str(w1.limit) == "(x1, x2 + 1)" and w1.verify()
    w2 = degenerate_family_iv(F2, {}, variant="F2")
    assert str(w2.limit) == "(x1, x2)" and w2.verify()


def test_degenerate_family_iv_needs_char_p():
    with pytest.raises(UnsupportedFieldError):
        degenerate_family_iv(Q, {1: Fraction(1)})
    with pytest.raises(PlaneAutError):
        degenerate_family_iv(F2, {1: 1}, variant="F9")
