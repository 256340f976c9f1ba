"""Shared fixtures: seeded random words, pairs and families.

Sampling is budget-aware: regular (Henon-type) words are kept at degrees
where exact fifth iterates stay affordable, degree 2 over Q and degrees
2-4 over F5, while algebraic words use the full factor-degree cap.  The
caps from the word samplers are maxima, not a promise of uniformity.
"""

import random
from fractions import Fraction

import pytest

from planeaut import (
    AffineFactor,
    AmalgamWord,
    Endo,
    JonquieresFactor,
    MultiPoly,
    PlaneAut,
    PrimeField,
    RationalField,
    is_algebraic,
)

SEED = 20260823


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture(scope="session")
def QQ():
    return RationalField()


@pytest.fixture(scope="session")
def F2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def F3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def F5():
    return PrimeField(5)


def rand_scalar(rng, K, nonzero=False):
    if hasattr(K, "p"):
        lo = 1 if nonzero else 0
        return rng.randrange(lo, K.p)
    num = rng.randint(-3, 3)
    if nonzero:
        while num == 0:
            num = rng.randint(-3, 3)
    den = rng.choice((1, 1, 1, 2))
    return Fraction(num, den)


def rand_affine(rng, K, triangular=False):
    """Random determinant-1 affine factor; triangular means c = 0."""
    a = rand_scalar(rng, K, nonzero=True)
    b = rand_scalar(rng, K)
    c = K.zero if triangular else rand_scalar(rng, K)
    # d = (1 + b c) / a
    d = K.mul(K.add(K.one, K.mul(b, c)), K.invert(a))
    e = rand_scalar(rng, K)
    f = rand_scalar(rng, K)
    return AffineFactor(K, a, b, c, d, e, f)


def rand_jonquieres(rng, K, deg):
    a = rand_scalar(rng, K, nonzero=True)
    P = {deg: rand_scalar(rng, K, nonzero=True)}
    for k in range(deg):
        if rng.random() < 0.5:
            cv = rand_scalar(rng, K)
            if not K.is_zero(cv):
                P[k] = cv
    c = rand_scalar(rng, K)
    return JonquieresFactor(K, a, P, c)


def word_to_plane_aut(word: AmalgamWord) -> PlaneAut:
    fwd = word.recompose()
    inv = Endo.identity(word.ring, 2)
    for fac in word.factors:
        inv = fac.inverse().to_endo().compose(inv)
    return PlaneAut(fwd, inv)


def sample_algebraic_word(rng, K, max_deg=4):
    """A word whose cyclic reduction has at most one triangular factor."""
    deg = rng.choice(tuple(d for d in (2, 2, 3, 3, 4) if d <= max_deg))
    shape = rng.randrange(5)
    if shape == 0:
        facs = [rand_jonquieres(rng, K, deg)]
    elif shape == 1:
        facs = [rand_affine(rng, K, triangular=True), rand_jonquieres(rng, K, deg)]
    elif shape == 2:
        facs = [rand_jonquieres(rng, K, deg), rand_affine(rng, K, triangular=True)]
    elif shape == 3:
        facs = [rand_affine(rng, K, triangular=True), rand_jonquieres(rng, K, deg),
                rand_affine(rng, K, triangular=True)]
    else:
        facs = [rand_affine(rng, K)]
    return AmalgamWord(K, facs)


def sample_regular_word(rng, K, deg, two_blocks=False):
    """A Henon-type word: affine factors here are generic, so the cyclic
    word keeps its triangular degrees.  Resampled until actually regular."""
    for _ in range(60):
        if two_blocks:
            facs = [rand_affine(rng, K), rand_jonquieres(rng, K, deg),
                    rand_affine(rng, K), rand_jonquieres(rng, K, deg)]
        else:
            shape = rng.randrange(3)
            if shape == 0:
                facs = [rand_affine(rng, K), rand_jonquieres(rng, K, deg)]
            elif shape == 1:
                facs = [rand_jonquieres(rng, K, deg), rand_affine(rng, K)]
            else:
                facs = [rand_affine(rng, K), rand_jonquieres(rng, K, deg),
                        rand_affine(rng, K)]
        aut = word_to_plane_aut(AmalgamWord(K, facs))
        if not is_algebraic(aut):
            return AmalgamWord(K, facs)
    raise AssertionError("could not sample a regular word")


def _algebraic_word_nontrivial(rng, K, max_deg=4):
    """Degree-1 maps satisfy both dichotomy arms at once, so the suite
    only keeps algebraic words of degree >= 2."""
    while True:
        w = sample_algebraic_word(rng, K, max_deg)
        if word_to_plane_aut(w).degree >= 2:
            return w


def dichotomy_corpus(rng, QQ, F5):
    """Words for the degree-dichotomy and round-trip suites: (field, word).

    Rational-coefficient strata are capped where iterate degrees or
    numerators blow exact arithmetic past the time budget: factor degree 4
    and iterated degree 3 appear over F5, where coefficients stay small.
    """
    out = []
    for _ in range(55):
        out.append((QQ, _algebraic_word_nontrivial(rng, QQ, max_deg=3)))
    for _ in range(40):
        out.append((QQ, sample_regular_word(rng, QQ, 2)))
    for _ in range(55):
        out.append((F5, _algebraic_word_nontrivial(rng, F5)))
    for _ in range(63):
        out.append((F5, sample_regular_word(rng, F5, 2)))
    # degree-3 iterates reach degree 243 by m=5: seconds each, so only a few,
    # and only words whose iterates stay sparse enough to finish in time
    picked = 0
    while picked < 3:
        w = sample_regular_word(rng, F5, 3)
        f = word_to_plane_aut(w)
        cube = f.fwd.compose(f.fwd.compose(f.fwd))
        if len(cube.comps[0].terms) + len(cube.comps[1].terms) < 300:
            out.append((F5, w))
            picked += 1
    return out


def rand_univariate(rng, K, max_deg, nonzero=False):
    P = {}
    for k in range(max_deg + 1):
        if rng.random() < 0.4:
            c = rand_scalar(rng, K)
            if not K.is_zero(c):
                P[k] = c
    if nonzero and not P:
        P[rng.randrange(max_deg + 1)] = rand_scalar(rng, K, nonzero=True)
    return P


def family_ii_rep(K, P) -> PlaneAut:
    x1 = MultiPoly.variable(K, 2, 0)
    x2 = MultiPoly.variable(K, 2, 1)
    Ppoly = MultiPoly(K, 2, {(0, k): c for k, c in P.items()})
    return PlaneAut(Endo([x1 + Ppoly, x2]), Endo([x1 - Ppoly, x2]))


def family_iv_element(K, Q) -> PlaneAut:
    """(x1 + Q(x2), x2 + 1) with its inverse (x1 - Q(x2 - 1), x2 - 1)."""
    x1 = MultiPoly.variable(K, 2, 0)
    x2 = MultiPoly.variable(K, 2, 1)
    one = MultiPoly.const(K, 2, K.one)
    Qp = MultiPoly(K, 2, {(0, k): c for k, c in Q.items()})
    Qshift = Qp.compose([x1, x2 - one])
    return PlaneAut(Endo([x1 + Qp, x2 + one]), Endo([x1 - Qshift, x2 - one]))
