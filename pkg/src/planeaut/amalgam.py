"""Factorization of plane automorphisms into affine and triangular pieces.

SAut(A^2) is generated by the special affine maps SAff (linear part in SL2
plus a translation) and the special triangular maps SJ, of the form
(a x1 + P(x2), a^-1 x2 + c).  A word here is a list of tagged factors
[F1, ..., Fn] standing for the composition F1 o F2 o ... o Fn.

The factorization loop is the constructive reading of the generation
theorem: while deg f >= 2, the line at infinity is contracted to a single
point X_f; an affine move puts that point at [0:1:0], after which the top
form of the first component is a constant multiple of a power of the top
form of the second, and a triangular subtraction strictly drops the degree.

A reduced word alternates tags, with no interior factor lying in
SAff ∩ SJ (the triangular affine maps).  Cyclic reduction of a reduced
word either collapses to a single factor (the map is conjugate into SJ) or
stabilizes as an even alternating word a_m j_m ... a_1 j_1 with every a_i
outside SJ and every j_i outside SAff: a Henon automorphism, whose degree
is the product of the j_i degrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from .endo import Endo, PlaneAut, image_point_at_infinity
from .errors import (
    FieldExtensionRequiredError,
    NotInvertibleError,
    NotSpecialError,
    RingMismatchError,
)
from .poly import MultiPoly
from .rings import MINUS_INF, up_add, up_compose, up_deg, up_scale


class AffineFactor:
    """(a x1 + b x2 + e, c x1 + d x2 + f) with ad - bc = 1."""

    __slots__ = ("ring", "a", "b", "c", "d", "e", "f")
    tag = "A"

    def __init__(self, ring, a, b, c, d, e=None, f=None):
        self.ring = ring
        self.a, self.b, self.c, self.d = a, b, c, d
        self.e = ring.zero if e is None else e
        self.f = ring.zero if f is None else f
        det = ring.sub(ring.mul(a, d), ring.mul(b, c))
        if not ring.eq(det, ring.one):
            raise NotSpecialError("affine factor must have determinant 1")

    @classmethod
    def identity(cls, ring):
        return cls(ring, ring.one, ring.zero, ring.zero, ring.one)

    @classmethod
    def rotation(cls, ring):
        """(x2, -x1), moving [0:0:1] to [0:1:0]."""
        return cls(ring, ring.zero, ring.one, ring.neg(ring.one), ring.zero)

    @classmethod
    def shear(cls, ring, r):
        """(x1, -r x1 + x2), moving [0:1:r] to [0:1:0]."""
        return cls(ring, ring.one, ring.zero, ring.neg(r), ring.one)

    @property
    def in_intersection(self) -> bool:
        return self.ring.is_zero(self.c)

    @property
    def is_identity(self) -> bool:
        R = self.ring
        return (R.eq(self.a, R.one) and R.is_zero(self.b) and R.is_zero(self.c)
                and R.eq(self.d, R.one) and R.is_zero(self.e) and R.is_zero(self.f))

    def to_endo(self) -> Endo:
        R = self.ring
        x1 = MultiPoly.variable(R, 2, 0)
        x2 = MultiPoly.variable(R, 2, 1)
        one = MultiPoly.const(R, 2, R.one)
        return Endo([x1.scale(self.a) + x2.scale(self.b) + one.scale(self.e),
                     x1.scale(self.c) + x2.scale(self.d) + one.scale(self.f)])

    def inverse(self) -> "AffineFactor":
        R = self.ring
        a, b, c, d, e, f = self.a, self.b, self.c, self.d, self.e, self.f
        ie = R.sub(R.mul(b, f), R.mul(d, e))
        jf = R.sub(R.mul(c, e), R.mul(a, f))
        return AffineFactor(R, d, R.neg(b), R.neg(c), a, ie, jf)

    def compose(self, other: "AffineFactor") -> "AffineFactor":
        """self o other."""
        R = self.ring
        a = R.add(R.mul(self.a, other.a), R.mul(self.b, other.c))
        b = R.add(R.mul(self.a, other.b), R.mul(self.b, other.d))
        c = R.add(R.mul(self.c, other.a), R.mul(self.d, other.c))
        d = R.add(R.mul(self.c, other.b), R.mul(self.d, other.d))
        e = R.add(R.add(R.mul(self.a, other.e), R.mul(self.b, other.f)), self.e)
        f = R.add(R.add(R.mul(self.c, other.e), R.mul(self.d, other.f)), self.f)
        return AffineFactor(R, a, b, c, d, e, f)

    def as_jonquieres(self) -> "JonquieresFactor":
        if not self.in_intersection:
            raise NotInvertibleError("affine factor is not triangular")
        R = self.ring
        P = {}
        if not R.is_zero(self.b):
            P[1] = self.b
        if not R.is_zero(self.e):
            P[0] = self.e
        return JonquieresFactor(R, self.a, P, self.f)

    @property
    def degree(self) -> int:
        return 1

    def apply_to_infinity(self, pt):
        return pt.apply_matrix(self.ring, ((self.a, self.b), (self.c, self.d)))

    def __eq__(self, other):
        if not isinstance(other, AffineFactor) or self.ring != other.ring:
            return False
        R = self.ring
        return all(R.eq(getattr(self, k), getattr(other, k)) for k in "abcdef")

    def __str__(self):
        return str(self.to_endo())

    def describe(self):
        R = self.ring
        return {"tag": "affine",
                "matrix": [[R.to_str(self.a), R.to_str(self.b)],
                           [R.to_str(self.c), R.to_str(self.d)]],
                "translation": [R.to_str(self.e), R.to_str(self.f)]}


class JonquieresFactor:
    """(a x1 + P(x2), a^-1 x2 + c) with a invertible; P as {exp: coeff}."""

    __slots__ = ("ring", "a", "P", "c")
    tag = "J"

    def __init__(self, ring, a, P, c=None):
        if ring.is_zero(a):
            raise NotInvertibleError("triangular factor needs an invertible scalar")
        self.ring = ring
        self.a = a
        self.P = {k: v for k, v in P.items() if not ring.is_zero(v)}
        self.c = ring.zero if c is None else c

    @classmethod
    def identity(cls, ring):
        return cls(ring, ring.one, {})

    @classmethod
    def elementary(cls, ring, P):
        """(x1 + P(x2), x2)."""
        return cls(ring, ring.one, P)

    @property
    def in_intersection(self) -> bool:
        d = up_deg(self.ring, self.P)
        return d is MINUS_INF or d <= 1

    @property
    def is_identity(self) -> bool:
        R = self.ring
        return R.eq(self.a, R.one) and not self.P and R.is_zero(self.c)

    @property
    def degree(self) -> int:
        d = up_deg(self.ring, self.P)
        return 1 if d is MINUS_INF else max(1, d)

    def to_endo(self) -> Endo:
        R = self.ring
        x1 = MultiPoly.variable(R, 2, 0)
        x2 = MultiPoly.variable(R, 2, 1)
        comp0 = x1.scale(self.a)
        for k, v in self.P.items():
            comp0 = comp0 + MultiPoly.monomial(R, 2, (0, k), v)
        comp1 = x2.scale(R.invert(self.a)) + MultiPoly.const(R, 2, self.c)
        return Endo([comp0, comp1])

    def inverse(self) -> "JonquieresFactor":
        R = self.ring
        ai = R.invert(self.a)
        # x2 component inverts to a x2 - a c; x1 picks up -a^-1 P(a x2 - a c)
        shift = {1: self.a, 0: R.neg(R.mul(self.a, self.c))}
        newP = up_scale(R, up_compose(R, self.P, shift), R.neg(ai))
        return JonquieresFactor(R, ai, newP, R.neg(R.mul(self.a, self.c)))

    def compose(self, other: "JonquieresFactor") -> "JonquieresFactor":
        """self o other."""
        R = self.ring
        a = R.mul(self.a, other.a)
        inner = {1: R.invert(other.a), 0: other.c}
        newP = up_add(R, up_scale(R, other.P, self.a), up_compose(R, self.P, inner))
        c = R.add(R.mul(R.invert(self.a), other.c), self.c)
        return JonquieresFactor(R, a, newP, c)

    def as_affine(self) -> AffineFactor:
        if not self.in_intersection:
            raise NotInvertibleError("triangular factor has degree > 1")
        R = self.ring
        return AffineFactor(R, self.a, self.P.get(1, R.zero), R.zero,
                            R.invert(self.a), self.P.get(0, R.zero), self.c)

    def __eq__(self, other):
        if not isinstance(other, JonquieresFactor) or self.ring != other.ring:
            return False
        R = self.ring
        if not R.eq(self.a, other.a) or not R.eq(self.c, other.c):
            return False
        keys = set(self.P) | set(other.P)
        return all(R.eq(self.P.get(k, R.zero), other.P.get(k, R.zero)) for k in keys)

    def __str__(self):
        return str(self.to_endo())

    def describe(self):
        from .rings import up_to_str
        R = self.ring
        return {"tag": "jonquieres", "a": R.to_str(self.a),
                "P": up_to_str(R, self.P, "x2"), "c": R.to_str(self.c)}


def factor_to_plane_aut(fac) -> PlaneAut:
    return PlaneAut(fac.to_endo(), fac.inverse().to_endo(), verify=False)


class AmalgamWord:
    """A composition word of affine and triangular factors."""

    __slots__ = ("ring", "factors", "reduced")

    def __init__(self, ring, factors, reduced=False):
        self.ring = ring
        self.factors = tuple(factors)
        for fac in self.factors:
            if fac.ring != ring:
                raise RingMismatchError("word factors over different rings")
        self.reduced = reduced

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def recompose(self) -> Endo:
        acc = Endo.identity(self.ring, 2)
        for fac in reversed(self.factors):
            acc = fac.to_endo().compose(acc)
        return acc

    def inverse_word(self) -> "AmalgamWord":
        return AmalgamWord(self.ring, [f.inverse() for f in reversed(self.factors)])

    def to_plane_aut(self) -> PlaneAut:
        return PlaneAut(self.recompose(), self.inverse_word().recompose(), verify=False)

    def tags(self):
        return [f.tag for f in self.factors]

    def __eq__(self, other):
        return (isinstance(other, AmalgamWord) and self.ring == other.ring
                and self.factors == other.factors)

    def __str__(self):
        if not self.factors:
            return "[identity]"
        return " . ".join(f"{f.tag}:{f}" for f in self.factors)

    def describe(self):
        return [f.describe() for f in self.factors]


def reduce_word(w: AmalgamWord) -> AmalgamWord:
    """Merge same-tag neighbours and absorb SAff-intersection factors.

    Intersection factors are pushed into a triangular neighbour, right one
    preferred; a word whose factors are all in the intersection collapses to
    a single factor.  Recomposition is unchanged.
    """
    facs = list(w.factors)
    changed = True
    while changed:
        changed = False
        # drop interior identities
        for i, fac in enumerate(facs):
            if fac.is_identity and len(facs) > 1:
                del facs[i]
                changed = True
                break
        if changed:
            continue
        # same-tag neighbours merge
        for i in range(len(facs) - 1):
            if facs[i].tag == facs[i + 1].tag:
                facs[i] = facs[i].compose(facs[i + 1])
                del facs[i + 1]
                changed = True
                break
        if changed:
            continue
        # intersection factors convert into a triangular neighbour
        for i, fac in enumerate(facs):
            if not fac.in_intersection or len(facs) == 1:
                continue
            right = facs[i + 1] if i + 1 < len(facs) else None
            left = facs[i - 1] if i > 0 else None
            if right is not None and right.tag != fac.tag:
                if fac.tag == "A":
                    facs[i] = fac.as_jonquieres().compose(right)
                else:
                    facs[i] = fac.as_affine().compose(right)
                del facs[i + 1]
            elif left is not None and left.tag != fac.tag:
                if fac.tag == "A":
                    facs[i - 1] = left.compose(fac.as_jonquieres())
                else:
                    facs[i - 1] = left.compose(fac.as_affine())
                del facs[i]
            else:
                continue
            changed = True
            break
    return AmalgamWord(w.ring, facs, reduced=True)


def _affine_from_linear_endo(e: Endo) -> AffineFactor:
    R = e.ring
    c0, c1 = e.comps
    return AffineFactor(R,
                        c0.coeff((1, 0)), c0.coeff((0, 1)),
                        c1.coeff((1, 0)), c1.coeff((0, 1)),
                        c0.coeff((0, 0)), c1.coeff((0, 0)))


def _reduction_ops(e: Endo):
    """Left-compose affine moves and triangular subtractions until degree <= 1.

    Returns (ops, final) with op_k o ... o op_1 o e = final and final affine.
    """
    R = e.ring
    work = e
    ops = []
    while work.degree >= 2:
        x_pt = image_point_at_infinity(work)
        y1, y2 = x_pt.coords
        if R.is_zero(y1):
            move = AffineFactor.rotation(R)
        elif R.is_zero(y2):
            move = None
        else:
            move = AffineFactor.shear(R, y2)
        if move is not None:
            work = move.to_endo().compose(work)
            ops.append(move)
        # now the word contracts infinity to [0:1:0]: second degree dropped
        e2 = work.comps[1].degree
        if e2 is MINUS_INF or e2 < 1:
            raise NotInvertibleError("degenerate second component; not an automorphism")
        while work.comps[0].degree > e2:
            d1 = work.comps[0].degree
            if d1 % e2 != 0:
                raise NotInvertibleError("top degrees incompatible; not an automorphism")
            k = d1 // e2
            top1 = work.comps[0].homogeneous_part(d1)
            top2k = work.comps[1].homogeneous_part(e2) ** k
            exp, lead = top2k.leading_term()
            c = R.mul(top1.coeff(exp), R.invert(lead))
            if top1 != top2k.scale(c):
                raise NotInvertibleError("top forms not proportional; not an automorphism")
            sub = JonquieresFactor.elementary(R, {k: R.neg(c)})
            work = sub.to_endo().compose(work)
            ops.append(sub)
            after = work.comps[0].degree
            if after is not MINUS_INF and after >= d1:
                raise NotInvertibleError("degree reduction stalled; not an automorphism")
    return ops, work


def jvdk_factor(f) -> AmalgamWord:
    """Alternating special-affine / triangular word recomposing to f."""
    e = f.fwd if isinstance(f, PlaneAut) else f
    jac = e.jacobian()
    if not jac.is_constant or not e.ring.eq(jac.constant_value(), e.ring.one):
        raise NotSpecialError("factorization needs Jacobian determinant 1")
    ops, final = _reduction_ops(e)
    factors = [op.inverse() for op in ops]
    factors.append(_affine_from_linear_endo(final))
    word = reduce_word(AmalgamWord(e.ring, factors))
    if word.recompose() != e:
        raise NotInvertibleError("factor word does not recompose to the input")
    return word


def plane_aut_from_endo(e: Endo) -> PlaneAut:
    """Validate an endomorphism as a plane automorphism, computing its inverse."""
    jac = e.jacobian()
    if not jac.is_constant or jac.is_zero:
        raise NotInvertibleError("Jacobian determinant is not a nonzero constant")
    ops, final = _reduction_ops(e)
    R = e.ring
    c0, c1 = final.comps
    a, b = c0.coeff((1, 0)), c0.coeff((0, 1))
    c, d = c1.coeff((1, 0)), c1.coeff((0, 1))
    det = R.sub(R.mul(a, d), R.mul(b, c))
    if R.is_zero(det):
        raise NotInvertibleError("affine part is singular")
    di = R.invert(det)
    ia, ib = R.mul(d, di), R.neg(R.mul(b, di))
    ic, id_ = R.neg(R.mul(c, di)), R.mul(a, di)
    tx, ty = c0.coeff((0, 0)), c1.coeff((0, 0))
    x1 = MultiPoly.variable(R, 2, 0)
    x2 = MultiPoly.variable(R, 2, 1)
    one = MultiPoly.const(R, 2, R.one)
    inv = Endo([
        x1.scale(ia) + x2.scale(ib)
        + one.scale(R.neg(R.add(R.mul(ia, tx), R.mul(ib, ty)))),
        x1.scale(ic) + x2.scale(id_)
        + one.scale(R.neg(R.add(R.mul(ic, tx), R.mul(id_, ty)))),
    ])
    for op in reversed(ops):
        inv = inv.compose(op.to_endo())
    return PlaneAut(e, inv, verify=True)


@dataclass
class SJRepresentative:
    """An SJ element s and conjugator h with s = h o original o h^-1."""
    factor: JonquieresFactor
    conjugator: PlaneAut


@dataclass
class HenonForm:
    """Reduced alternating word a_m j_m ... a_1 j_1 and conjugator h,
    with recompose(word) = h o original o h^-1."""
    word: AmalgamWord
    conjugator: PlaneAut

    @property
    def m(self) -> int:
        return len(self.word) // 2

    def core(self) -> PlaneAut:
        return self.word.to_plane_aut()


def _triangularize_affine(fac: AffineFactor) -> tuple:
    """g with g o fac o g^-1 triangular, as (new_factor, g); needs an eigenvalue in K."""
    R = fac.ring
    tr = R.add(fac.a, fac.d)
    lam = None
    if hasattr(R, "p"):
        for cand in R.elements():
            if R.is_zero(cand):
                continue
            # det(M - cand I) = cand^2 - tr cand + 1
            val = R.add(R.sub(R.mul(cand, cand), R.mul(tr, cand)), R.one)
            if R.is_zero(val):
                lam = cand
                break
    else:
        disc = R.sub(R.mul(tr, tr), R.from_int(4))
        s = R.sqrt(disc)
        if s is not None:
            lam = R.mul(R.add(tr, s), R.invert(R.from_int(2)))
    if lam is None:
        raise FieldExtensionRequiredError(
            "linear part has no eigenvalue in the base field")
    # eigenvector (lam - d, c); c != 0 here since fac is not already triangular
    v1, v2 = R.sub(lam, fac.d), fac.c
    if not R.is_zero(v1):
        w1, w2 = R.zero, R.invert(v1)
    else:
        w1, w2 = R.neg(R.invert(v2)), R.zero
    ginv = AffineFactor(R, v1, w1, v2, w2)
    g = ginv.inverse()
    new = g.compose(fac).compose(ginv)
    if not R.is_zero(new.c):
        raise NotInvertibleError("triangularization failed")
    return new, g


def henon_normalize(f: PlaneAut):
    """Cyclic reduction to an SJRepresentative (algebraic case) or a HenonForm."""
    word = jvdk_factor(f)
    h = PlaneAut.identity(f.ring)
    while True:
        word = reduce_word(word)
        n = len(word)
        if n == 0:
            return SJRepresentative(JonquieresFactor.identity(f.ring), h)
        if n == 1:
            fac = word.factors[0]
            if fac.tag == "J":
                return SJRepresentative(fac, h)
            if fac.in_intersection:
                return SJRepresentative(fac.as_jonquieres(), h)
            new, g = _triangularize_affine(fac)
            h = factor_to_plane_aut(g).compose(h)
            return SJRepresentative(new.as_jonquieres(), h)
        tags = word.tags()
        if tags[0] == tags[-1]:
            first = word.factors[0]
            h = factor_to_plane_aut(first).inverse().compose(h)
            word = AmalgamWord(f.ring, word.factors[1:] + (first,))
            continue
        if n % 2 != 0:
            raise NotInvertibleError("inconsistent reduced word")
        if tags[0] == "J":
            first = word.factors[0]
            h = factor_to_plane_aut(first).inverse().compose(h)
            word = AmalgamWord(f.ring, word.factors[1:] + (first,), reduced=True)
        for i, fac in enumerate(word.factors):
            if fac.in_intersection:
                raise NotInvertibleError("inconsistent reduced word")
        return HenonForm(word, h)


def henon_invariants(h: HenonForm):
    """Jonquieres degree tuple of the word, canonical up to cyclic rotation."""
    degs = tuple(fac.degree for fac in h.word if fac.tag == "J")
    if not degs:
        return degs
    return min(tuple(degs[i:] + degs[:i]) for i in range(len(degs)))
