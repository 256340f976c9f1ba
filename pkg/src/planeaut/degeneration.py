"""One-parameter families of plane maps with coefficients in K[t, 1/t].

A family is an endomorphism tuple whose coefficients are Laurent
polynomials in the parameter t.  Its valuation is the minimal t-exponent
over all coefficients; the family has a value at t=0 exactly when the
valuation is >= 0, and substituting any c in K* gives an endomorphism
over K.

Two constructions live here.  First, the at-infinity limit set X_alpha of
a family with a pole: factor out t^{-m}, m = -valuation, reduce at t=0 and
record where affine sample points land on the line at infinity; a sampled
X_alpha point away from the indeterminacy point of a fixed automorphism f
forces the conjugate family alpha^-1 f alpha to keep a pole.  Second, the
explicit degenerations: every non-diagonal normal-form family member f
admits a family F(t) of conjugates of f, polynomial in t, whose value at
t=0 drops out of the conjugacy class of f.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .amalgam import JonquieresFactor, factor_to_plane_aut, plane_aut_from_endo
from .endo import Endo, InfinityPoint, PlaneAut, indeterminacy_point
from .errors import (
    NoPoleError,
    NotInvertibleError,
    PlaneAutError,
    PoleAtZeroError,
    RingMismatchError,
    UnsupportedFieldError,
)
from .poly import MultiPoly
from .rings import MINUS_INF, FunctionField, LaurentRing, up_deg


class TFamily:
    """An endomorphism over K[t, 1/t], with an optional verified inverse."""

    __slots__ = ("endo", "_inv")

    def __init__(self, endo: Endo, inverse: Endo = None, check: bool = True):
        if not isinstance(endo.ring, LaurentRing):
            raise RingMismatchError("a family needs Laurent coefficients")
        if inverse is not None and check:
            ident = Endo.identity(endo.ring, endo.nvars)
            if endo.compose(inverse) != ident or inverse.compose(endo) != ident:
                raise NotInvertibleError("claimed family inverse fails composition")
        self.endo = endo
        self._inv = inverse

    @property
    def ring(self) -> LaurentRing:
        return self.endo.ring

    @property
    def base(self):
        return self.endo.ring.base

    @property
    def nvars(self) -> int:
        return self.endo.nvars

    @property
    def degree(self):
        return self.endo.degree

    @property
    def valuation(self):
        """min over all coefficient t-valuations; 0 for the zero family."""
        L = self.ring
        vals = [L.valuation(c)
                for comp in self.endo.comps for c in comp.terms.values()]
        return min(vals) if vals else 0

    def value_at_zero(self) -> Endo:
        v = self.valuation
        if v is not MINUS_INF and v < 0:
            raise PoleAtZeroError(f"family has a pole at t=0 (valuation {v})",
                                  valuation=v)
        L = self.ring
        return self.endo.map_coeffs(L.value_at_zero, L.base)

    def specialize(self, c) -> Endo:
        """Substitute t = c, c a nonzero base-field value."""
        L = self.ring
        if L.base.is_zero(c):
            raise PoleAtZeroError("use value_at_zero for t=0", valuation=self.valuation)
        return self.endo.map_coeffs(lambda a: L.specialize(a, c), L.base)

    def substitute_t_power(self, m: int) -> "TFamily":
        """t -> t^m on every coefficient."""
        L = self.ring
        fn = lambda a: {m * e: c for e, c in a.items()}
        inv = self._inv.map_coeffs(fn, L) if self._inv is not None else None
        return TFamily(self.endo.map_coeffs(fn, L), inv, check=False)

    def compose(self, other: "TFamily") -> "TFamily":
        inv = None
        if self._inv is not None and other._inv is not None:
            inv = other._inv.compose(self._inv)
        return TFamily(self.endo.compose(other.endo), inv, check=False)

    def inverse(self) -> "TFamily":
        if self._inv is None:
            self._inv = _function_field_inverse(self)
        return TFamily(self._inv, self.endo, check=False)

    def __eq__(self, other):
        return isinstance(other, TFamily) and self.endo == other.endo

    def __str__(self):
        return str(self.endo)


def lift_endo(e: Endo, lring: LaurentRing) -> Endo:
    return e.map_coeffs(lring.from_base, lring)


def lift_plane_aut(f: PlaneAut, lring: LaurentRing) -> TFamily:
    return TFamily(lift_endo(f.fwd, lring), lift_endo(f.inv, lring), check=False)


def family_valuation(fam: TFamily):
    return fam.valuation


def family_value_at_zero(fam: TFamily) -> Endo:
    return fam.value_at_zero()


def _function_field_inverse(fam: TFamily) -> Endo:
    """Invert over K(t) via the plane factorization, then land back in K[t,1/t]."""
    if fam.nvars != 2:
        raise NotInvertibleError("generic family inversion is implemented for the plane")
    L = fam.ring
    FF = FunctionField(L.base)
    lifted = fam.endo.map_coeffs(FF.from_laurent, FF)
    aut = plane_aut_from_endo(lifted)

    def back(a):
        lau = FF.to_laurent(a)
        if lau is None:
            raise NotInvertibleError("inverse leaves K[t,1/t]; not a family automorphism")
        return lau

    inv = aut.inv.map_coeffs(back, L)
    ident = Endo.identity(L, 2)
    if fam.endo.compose(inv) != ident or inv.compose(fam.endo) != ident:
        raise NotInvertibleError("function-field inverse fails over K[t,1/t]")
    return inv


def family_inverse(fam: TFamily) -> TFamily:
    return fam.inverse()


# -- the limit set at infinity ----------------------------------------------

@dataclass
class XAlphaSet:
    """Sampled image of affine points on the line at infinity, at t=0.

    An under-approximation by construction: sample points with
    alpha_tilde(y) = 0 are skipped and only finitely many y are tried.
    """
    m: int
    alpha_tilde: Endo
    points: tuple
    under_approximation: bool = True

    def describe(self):
        return {"m": self.m, "reduced": str(self.alpha_tilde),
                "points": [str(p) for p in self.points],
                "under_approximation": self.under_approximation}


def _affine_samples(K, n, cap):
    if hasattr(K, "p"):
        base = [K.from_int(i) for i in range(K.p)]
    else:
        base = list(itertools.islice(K.sample_stream(), max(2, round(cap ** (1.0 / n)) + 1)))
    return itertools.islice(itertools.product(base, repeat=n), cap)


def x_alpha(fam: TFamily, max_samples: int = 25) -> XAlphaSet:
    v = fam.valuation
    if v is MINUS_INF or v >= 0:
        raise NoPoleError(f"family valuation is {v}; X_alpha needs a pole")
    m = -v
    L = fam.ring
    K = L.base
    shifted = fam.endo.map_coeffs(lambda c: L.shift(c, m), L)
    tilde = shifted.map_coeffs(L.value_at_zero, K)
    points = []
    for y in _affine_samples(K, fam.nvars, max_samples):
        vals = tilde.evaluate(y)
        if all(K.is_zero(val) for val in vals):
            continue
        pt = InfinityPoint.normalize(K, vals)
        if pt not in points:
            points.append(pt)
    return XAlphaSet(m, tilde, tuple(points))


# -- pole propagation --------------------------------------------------------

@dataclass
class PolePropagationReport:
    alpha_valuation: object
    hypothesis_met: bool
    i_f: InfinityPoint
    x_points: tuple
    conjugate_valuation: object          # nu(alpha^-1 f alpha)
    inverse_conjugate_valuation: object  # nu(alpha f^-1 alpha^-1)
    implication_holds: bool
    dichotomy_holds: bool
    notes: list = field(default_factory=list)

    def describe(self):
        return {
            "alpha_valuation": str(self.alpha_valuation),
            "hypothesis_met": self.hypothesis_met,
            "indeterminacy": str(self.i_f) if self.i_f else None,
            "x_alpha_points": [str(p) for p in self.x_points],
            "conjugate_valuation": str(self.conjugate_valuation),
            "inverse_conjugate_valuation": str(self.inverse_conjugate_valuation),
            "implication_holds": self.implication_holds,
            "dichotomy_holds": self.dichotomy_holds,
            "notes": list(self.notes),
        }


def pole_propagation_check(f: PlaneAut, alpha: TFamily) -> PolePropagationReport:
    """Check: a sampled X_alpha point away from I_f forces a pole on
    alpha^-1 f alpha; and one of the two conjugates always keeps a pole."""
    L = alpha.ring
    f_t = lift_endo(f.fwd, L)
    f_inv_t = lift_endo(f.inv, L)
    ainv = alpha.inverse()
    conj = TFamily(ainv.endo.compose(f_t).compose(alpha.endo), check=False)
    conj_inv = TFamily(alpha.endo.compose(f_inv_t).compose(ainv.endo), check=False)
    v = alpha.valuation
    notes = []
    i_pt = indeterminacy_point(f.fwd)
    if v is not MINUS_INF and v >= 0:
        notes.append("alpha has no pole; the propagation hypothesis is vacuous")
        return PolePropagationReport(v, False, i_pt, (), conj.valuation,
                                     conj_inv.valuation, True, True, notes)
    xs = x_alpha(alpha)
    hypothesis = any(pt != i_pt for pt in xs.points)
    if not xs.points:
        notes.append("no sample point survived; hypothesis undetermined")
    vc, vci = conj.valuation, conj_inv.valuation
    implication = (not hypothesis) or (vc is MINUS_INF or vc < 0)
    dichotomy = (vc is MINUS_INF or vc < 0) or (vci is MINUS_INF or vci < 0)
    return PolePropagationReport(v, hypothesis, i_pt, xs.points, vc, vci,
                                 implication, dichotomy, notes)


# -- explicit degenerations --------------------------------------------------

@dataclass
class DegenerationWitness:
    """F = conjugator^-1 o f o conjugator over K[t,1/t], with ord-0 value."""
    source: PlaneAut
    family_tag: str
    conjugator: TFamily
    family: TFamily
    limit: Endo
    params: dict = field(default_factory=dict)

    def verify(self) -> bool:
        L = self.family.ring
        f_t = lift_endo(self.source.fwd, L)
        lhs = self.conjugator.inverse().endo.compose(f_t).compose(self.conjugator.endo)
        if lhs != self.family.endo:
            return False
        v = self.family.valuation
        if v is not MINUS_INF and v < 0:
            return False
        return self.family.value_at_zero() == self.limit

    def specialization_check(self, c) -> bool:
        """F(c) = conjugator(c)^-1 o f o conjugator(c) for a nonzero c."""
        hc = self.conjugator.specialize(c)
        hc_inv = self.conjugator.inverse().specialize(c)
        return hc_inv.compose(self.source.fwd).compose(hc) == self.family.specialize(c)

    def describe(self):
        R = self.family.base
        params = {}
        for k, v in self.params.items():
            params[k] = v if isinstance(v, int) else R.to_str(v)
        return {"family": self.family_tag,
                "source": str(self.source.fwd),
                "conjugator": str(self.conjugator),
                "degenerated": str(self.family),
                "limit": str(self.limit),
                "params": params}


def _diag_t(lring: LaurentRing) -> TFamily:
    """(t x1, 1/t x2)."""
    x1 = MultiPoly(lring, 2, {(1, 0): {1: lring.base.one}})
    x2 = MultiPoly(lring, 2, {(0, 1): {-1: lring.base.one}})
    ix1 = MultiPoly(lring, 2, {(1, 0): {-1: lring.base.one}})
    ix2 = MultiPoly(lring, 2, {(0, 1): {1: lring.base.one}})
    return TFamily(Endo([x1, x2]), Endo([ix1, ix2]), check=False)


def _conjugated_family(f: PlaneAut, conjugator: TFamily) -> TFamily:
    cinv = conjugator.inverse()
    L = conjugator.ring
    fwd = cinv.endo.compose(lift_endo(f.fwd, L)).compose(conjugator.endo)
    bwd = cinv.endo.compose(lift_endo(f.inv, L)).compose(conjugator.endo)
    return TFamily(fwd, bwd, check=False)


def _witness(f, tag, conjugator, expected_limit, params=None) -> DegenerationWitness:
    fam = _conjugated_family(f, conjugator)
    limit = fam.value_at_zero()
    if limit != expected_limit:
        raise PlaneAutError(f"degeneration limit mismatch for family {tag}")
    w = DegenerationWitness(f, tag, conjugator, fam, limit, params or {})
    if not w.verify():
        raise PlaneAutError(f"degeneration witness failed verification for {tag}")
    return w


def degenerate_family_ii(ring, P: dict) -> DegenerationWitness:
    """f = (x1 + P(x2), x2) degenerates to the identity along
    (x1 + t P(t x2), x2)."""
    f = factor_to_plane_aut(JonquieresFactor(ring, ring.one, P))
    L = LaurentRing(ring)
    w = _witness(f, "ii", _diag_t(L).inverse(), Endo.identity(ring, 2))
    expected = {(1, 0): {0: ring.one}}
    for k, c in P.items():
        expected[(0, k)] = {k + 1: c}
    if w.family.endo != Endo([MultiPoly(L, 2, expected),
                              MultiPoly(L, 2, {(0, 1): {0: ring.one}})]):
        raise PlaneAutError("family (ii) degeneration has an unexpected shape")
    return w


def degenerate_family_iii(ring, zeta, m: int, P: dict) -> DegenerationWitness:
    """f = (zeta x1 + x2^{m-1} P(x2^m), zeta^-1 x2) degenerates to the
    diagonal (zeta x1, zeta^-1 x2)."""
    if m < 2 or not ring.eq(ring.pow(zeta, m), ring.one):
        raise PlaneAutError("zeta must be a primitive m-th root of unity, m >= 2")
    for j in range(1, m):
        if ring.eq(ring.pow(zeta, j), ring.one):
            raise PlaneAutError("zeta must be a primitive m-th root of unity, m >= 2")
    if not P:
        raise PlaneAutError("family (iii) needs a nonzero survivor polynomial")
    body = {m - 1 + m * k: c for k, c in P.items()}
    f = factor_to_plane_aut(JonquieresFactor(ring, zeta, body))
    L = LaurentRing(ring)
    zi = ring.invert(zeta)
    limit = Endo([MultiPoly(ring, 2, {(1, 0): zeta}),
                  MultiPoly(ring, 2, {(0, 1): zi})])
    w = _witness(f, "iii", _diag_t(L).inverse(), limit,
                 {"zeta": zeta, "m": m})
    expected = {(1, 0): {0: zeta}}
    for k, c in P.items():
        expected[(0, m - 1 + m * k)] = {m * (k + 1): c}
    if w.family.endo != Endo([MultiPoly(L, 2, expected),
                              MultiPoly(L, 2, {(0, 1): {0: zi}})]):
        raise PlaneAutError("family (iii) degeneration has an unexpected shape")
    return w


def _family_iv_alpha(lring: LaurentRing, d: int, q: int, lam) -> TFamily:
    K = lring.base
    one = K.one
    a = Endo([
        MultiPoly(lring, 2, {(1, 0): {-d: one}}),
        MultiPoly(lring, 2, {(0, 1): {d: one}, (q, 0): {0: lam}, (0, 0): {-1: one}}),
    ])
    ainv = Endo([
        MultiPoly(lring, 2, {(1, 0): {d: one}}),
        MultiPoly(lring, 2, {(0, 1): {-d: one},
                             (q, 0): {d * (q - 1): K.neg(lam)},
                             (0, 0): {-d - 1: K.neg(one)}}),
    ])
    return TFamily(a, ainv, check=True)


def degenerate_family_iv(ring, Q: dict, variant: str = "F1") -> DegenerationWitness:
    """f = (x1 + Q(x2), x2 + 1) over char p: two degenerations, one with
    value (x1, x2+1) at t=0 and one with value (x1, x2)."""
    p = ring.characteristic
    if p == 0:
        raise UnsupportedFieldError(
            "family (iv) degenerations need positive characteristic")
    if variant not in ("F1", "F2"):
        raise PlaneAutError(f"unknown variant {variant!r}; use F1 or F2")
    Q = {k: c for k, c in Q.items() if not ring.is_zero(c)}
    f = factor_to_plane_aut(JonquieresFactor(ring, ring.one, Q, ring.one))
    L = LaurentRing(ring)
    x1_K = MultiPoly(ring, 2, {(1, 0): ring.one})
    x2_K = MultiPoly(ring, 2, {(0, 1): ring.one})
    one_K = MultiPoly(ring, 2, {(0, 0): ring.one})
    if not Q:
        if variant == "F1":
            ident_c = TFamily(Endo.identity(L, 2), Endo.identity(L, 2), check=False)
            return _witness(f, "iv-F1", ident_c, Endo([x1_K, x2_K + one_K]))
        return _witness(f, "iv-F2", _diag_t(L), Endo.identity(ring, 2))

    d = up_deg(ring, Q)
    mu = Q[d]
    q = p
    while q <= d:
        q *= p
    lam = ring.pow(mu, -q)
    alpha = _family_iv_alpha(L, d, q, lam)
    A = alpha.inverse().endo.compose(lift_endo(f.fwd, L)).compose(alpha.endo)

    # A must be (x1 + mu + t P, x2 - lam t^{q-d} P^q) with P free of poles
    x1_L = MultiPoly(L, 2, {(1, 0): L.one})
    x2_L = MultiPoly(L, 2, {(0, 1): L.one})
    tP = A.comps[0] - x1_L - MultiPoly(L, 2, {(0, 0): L.from_base(mu)})
    P = tP.map_coeffs(lambda c: L.shift(c, -1), L)
    if any(L.valuation(c) < 0 for c in P.terms.values()):
        raise PlaneAutError("family (iv) auxiliary polynomial has a pole")
    expected_second = x2_L - (P ** q).scale({q - d: lam})
    if A.comps[1] != expected_second:
        raise PlaneAutError("family (iv) conjugate has an unexpected shape")

    # the defining identity: Q(t^d x2 + lam x1^q + 1/t) = mu/t^d + P/t^{d-1}
    S = alpha.endo.comps[1]
    lhs = MultiPoly.zero(L, 2)
    for k, c in Q.items():
        lhs = lhs + (S ** k).scale(L.from_base(c))
    rhs = MultiPoly(L, 2, {(0, 0): {-d: mu}}) + P.map_coeffs(
        lambda c: L.shift(c, -(d - 1)), L)
    if lhs != rhs:
        raise PlaneAutError("family (iv) defining identity failed")

    params = {"d": d, "mu": mu, "q": q, "lambda": lam}
    if variant == "F1":
        c_fwd = Endo([x2_K.scale(ring.neg(mu)), x1_K.scale(ring.invert(mu))])
        c_bwd = Endo([x2_K.scale(mu), x1_K.scale(ring.neg(ring.invert(mu)))])
        c_aff = TFamily(lift_endo(c_fwd, L), lift_endo(c_bwd, L), check=True)
        conjugator = alpha.compose(c_aff.inverse())
        return _witness(f, "iv-F1", conjugator, Endo([x1_K, x2_K + one_K]), params)

    # F2: substitute t -> t^m until the diagonal conjugate loses its pole
    deg_x1 = max((e[0] for e in P.terms), default=0)
    cap = max(deg_x1, 2 + (2 + q * deg_x1) // (q - d)) + 2
    diag = _diag_t(L)
    for m in range(1, cap + 1):
        alpha_m = alpha.substitute_t_power(m)
        conjugator = alpha_m.compose(diag.inverse())
        fam = _conjugated_family(f, conjugator)
        v = fam.valuation
        if v is not MINUS_INF and v >= 0 and fam.value_at_zero() == Endo.identity(ring, 2):
            params["m"] = m
            return _witness(f, "iv-F2", conjugator, Endo.identity(ring, 2), params)
    raise PlaneAutError("family (iv) F2 search exhausted its bound")
