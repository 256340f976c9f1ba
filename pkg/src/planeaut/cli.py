"""Command-line front end.

Exit codes: 0 on success, 1 on domain errors (pole at t=0, not invertible,
wrong characteristic, missing roots in the field), 2 on usage and parse
errors, including field literals like 1/2 over F2.  JSON mode always emits
a single object {"verdict": ..., "data": ..., "checks": ...}.
"""

from __future__ import annotations

import argparse
import json
import sys

from .amalgam import henon_invariants, henon_normalize, jvdk_factor, plane_aut_from_endo
from .conjugacy import (
    decide_conjugacy,
    decompose_v_delta,
    in_v_subspace,
    normal_form,
    verify_conjugacy_certificate,
)
from .degeneration import (
    DegenerationWitness,
    TFamily,
    degenerate_family_ii,
    degenerate_family_iii,
    degenerate_family_iv,
    lift_plane_aut,
    pole_propagation_check,
    x_alpha,
)
from .endo import Endo, degree_sequence, is_algebraic, is_dynamically_regular
from .errors import ParseError, PlaneAutError, UnsupportedFieldError
from .parsing import parse_automorphism, parse_polynomial
from .rings import LaurentRing, field_from_name, up_to_str

_ARITY = {"compose": 2, "inverse": 1, "factor": 1, "classify": 1,
          "conj-test": 2, "degseq": 1, "regular": 1, "degenerate": 1,
          "xalpha": 1, "pole-check": 2, "decompose-vp": 1}


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="planeaut",
        description="Exact computations with polynomial automorphisms of the plane.")
    sub = top.add_subparsers(dest="verb", required=True, metavar="verb")
    helps = {
        "compose": "compose two maps (or families)",
        "inverse": "invert a plane map or family",
        "factor": "affine/triangular factorization of a Jacobian-1 plane map",
        "classify": "conjugacy normal form (families I-IV) or Henon data",
        "conj-test": "decide conjugacy of two plane maps",
        "degseq": "degrees of the first n iterates",
        "regular": "test deg(f o f) = deg(f)^2",
        "degenerate": "one-parameter degeneration of a normal-form member",
        "xalpha": "limit points at infinity of a family with a pole",
        "pole-check": "pole propagation report for a map and a family",
        "decompose-vp": "split a polynomial over F_p as v + (r(x+1) - r(x))",
    }
    for verb, n in _ARITY.items():
        p = sub.add_parser(verb, help=helps[verb])
        p.add_argument("exprs", nargs="*", metavar="expr",
                       help=f"{n} input expression(s)" if n > 1 else "input expression")
        p.add_argument("--field", default="Q", help="Q or Fp:<prime> (default Q)")
        p.add_argument("--format", default="text", choices=["text", "json"])
        p.add_argument("--file", help="read input expressions from a file, one per line")
        if verb == "degseq":
            p.add_argument("--n", type=int, default=4, help="number of iterates")
        if verb == "degenerate":
            p.add_argument("--variant", default="F1", choices=["F1", "F2"],
                           help="which degeneration of a family-(iv) member")
    return top


# -- per-verb handlers: (field, inputs, args) -> (verdict, data, checks) -----

def _as_family(v, field) -> TFamily:
    if isinstance(v, TFamily):
        return v
    L = LaurentRing(field)
    return TFamily(v.map_coeffs(L.from_base, L))


def _require_endo(v, verb) -> Endo:
    if isinstance(v, TFamily):
        raise PlaneAutError(f"{verb} expects a map over the base field, not a t-family")
    return v


def _cmd_compose(field, inputs, args):
    f, g = inputs
    if isinstance(f, TFamily) or isinstance(g, TFamily):
        res = _as_family(f, field).compose(_as_family(g, field))
    else:
        res = f.compose(g)
    return "ok", {"result": str(res)}, {}


def _cmd_inverse(field, inputs, args):
    v = inputs[0]
    if isinstance(v, TFamily):
        inv = v.inverse()
        return "ok", {"inverse": str(inv)}, {"composition": True}
    aut = plane_aut_from_endo(v)
    return "ok", {"inverse": str(aut.inv)}, {"composition": aut.verify()}


def _cmd_factor(field, inputs, args):
    e = _require_endo(inputs[0], "factor")
    word = jvdk_factor(e)
    degs = [fac.degree for fac in word.factors]
    return "ok", {
        "factors": [fac.describe() for fac in word.factors],
        "degrees": degs,
        "length": len(word.factors),
    }, {"recomposition": word.recompose() == e}


def _expanded_poly_str(nf) -> str:
    ring = nf.ring
    if nf.family == "II":
        return up_to_str(ring, nf.P, "x2")
    if nf.family == "III":
        step, offset = nf.order, nf.order - 1
    else:
        step, offset = ring.characteristic, ring.characteristic - 1
    return up_to_str(ring, {offset + step * k: c for k, c in nf.P.items()}, "x2")


def _cmd_classify(field, inputs, args):
    aut = plane_aut_from_endo(_require_endo(inputs[0], "classify"))
    if not is_algebraic(aut):
        degs = henon_invariants(henon_normalize(aut))
        return "Henon", {"family": "Henon", "jonquieres_degrees": list(degs),
                         "word_length": len(degs)}, {}
    nf = normal_form(aut)
    data = {"family": nf.family,
            "multiplier": field.to_str(nf.multiplier) if nf.multiplier is not None else None,
            "order": nf.order,
            "polynomial": _expanded_poly_str(nf) if nf.family in ("II", "III", "IV") else None,
            "representative": str(nf.aut.fwd),
            "conjugator": str(nf.conjugator.fwd)}
    checks = {"conjugation": nf.conjugator.compose(aut)
              .compose(nf.conjugator.inverse()).fwd == nf.aut.fwd}
    return f"family {nf.family}", data, checks


def _cmd_conj_test(field, inputs, args):
    f = plane_aut_from_endo(_require_endo(inputs[0], "conj-test"))
    g = plane_aut_from_endo(_require_endo(inputs[1], "conj-test"))
    res = decide_conjugacy(f, g)
    data = {"families": [res.family_f, res.family_g], "reason": res.reason,
            "conjugator": str(res.conjugator.fwd) if res.conjugator else None}
    checks = {"notes": list(res.checks)}
    if res.verdict == "yes":
        checks["certificate"] = verify_conjugacy_certificate(f, g, res.conjugator).describe()
    return res.verdict, data, checks


def _cmd_degseq(field, inputs, args):
    e = _require_endo(inputs[0], "degseq")
    degs = degree_sequence(e, args.n)
    return "ok", {"degrees": degs}, {}


def _cmd_regular(field, inputs, args):
    aut = plane_aut_from_endo(_require_endo(inputs[0], "regular"))
    reg = is_dynamically_regular(aut)
    return str(reg).lower(), {"regular": reg, "degree": aut.degree}, {}


def _cmd_degenerate(field, inputs, args):
    aut = plane_aut_from_endo(_require_endo(inputs[0], "degenerate"))
    nf = normal_form(aut)
    if nf.family == "I":
        raise PlaneAutError("family I members are diagonal; no degeneration applies")
    if nf.family == "II":
        w = degenerate_family_ii(field, nf.P)
    elif nf.family == "III":
        w = degenerate_family_iii(field, nf.multiplier, nf.order, nf.P)
    else:
        p = field.characteristic
        expanded = {p - 1 + p * k: c for k, c in nf.P.items()}
        w = degenerate_family_iv(field, expanded, args.variant)
    # re-anchor the witness on the input map: rep = h f h^-1 composes into it
    L = w.family.ring
    conj = lift_plane_aut(nf.conjugator.inverse(), L).compose(w.conjugator)
    w = DegenerationWitness(aut, w.family_tag, conj, w.family, w.limit, w.params)
    checks = {"conjugation_identity": w.verify(), "specializations": {}}
    for c in _nonzero_samples(field, 3):
        checks["specializations"][field.to_str(c)] = w.specialization_check(c)
    data = w.describe()
    data["normal_form_family"] = nf.family
    return "ok", data, checks


def _nonzero_samples(field, count):
    out = []
    if hasattr(field, "p"):
        for i in range(1, field.p):
            out.append(field.from_int(i))
            if len(out) == count:
                break
    else:
        for i in range(1, count + 1):
            out.append(field.from_int(i))
    return out


def _cmd_xalpha(field, inputs, args):
    fam = _as_family(inputs[0], field)
    xs = x_alpha(fam)
    return "ok", xs.describe(), {}


def _cmd_pole_check(field, inputs, args):
    aut = plane_aut_from_endo(_require_endo(inputs[0], "pole-check"))
    fam = _as_family(inputs[1], field)
    rep = pole_propagation_check(aut, fam)
    verdict = "consistent" if rep.implication_holds and rep.dichotomy_holds else "violated"
    return verdict, rep.describe(), {"implication": rep.implication_holds,
                                     "dichotomy": rep.dichotomy_holds}


def _cmd_decompose_vp(field, raw_inputs, args):
    P = parse_polynomial(raw_inputs[0], field)
    dec = decompose_v_delta(field, P)
    data = {"input": up_to_str(field, dec.F, "x1"),
            "v": up_to_str(field, dec.v, "x1"),
            "r": up_to_str(field, dec.r, "x1")}
    return "ok", data, {"identity": dec.verify(field),
                        "v_in_V": in_v_subspace(field, dec.v)}


_HANDLERS = {"compose": _cmd_compose, "inverse": _cmd_inverse,
             "factor": _cmd_factor, "classify": _cmd_classify,
             "conj-test": _cmd_conj_test, "degseq": _cmd_degseq,
             "regular": _cmd_regular, "degenerate": _cmd_degenerate,
             "xalpha": _cmd_xalpha, "pole-check": _cmd_pole_check,
             "decompose-vp": _cmd_decompose_vp}


# -- report emission ---------------------------------------------------------

def _emit(args, verdict, data, checks):
    if args.format == "json":
        print(json.dumps({"verdict": verdict, "data": data, "checks": checks},
                         indent=2, default=str))
        return
    print(f"verdict: {verdict}")
    for k, v in data.items():
        print(f"{k}: {v if isinstance(v, str) else json.dumps(v, default=str)}")
    for k, v in checks.items():
        print(f"check {k}: {v if isinstance(v, str) else json.dumps(v, default=str)}")


def _emit_error(args, exc, code):
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError) and exc.pos is not None:
        payload["position"] = exc.pos
    if args.format == "json":
        print(json.dumps({"verdict": "error", "data": payload, "checks": {}},
                         indent=2))
    else:
        print(f"error: {payload['message']}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        field = field_from_name(args.field)
    except UnsupportedFieldError as exc:
        parser.error(str(exc))
    raw = list(args.exprs)
    if args.file:
        try:
            with open(args.file) as fh:
                raw += [line.strip() for line in fh if line.strip()]
        except OSError as exc:
            parser.error(str(exc))
    if len(raw) != _ARITY[args.verb]:
        parser.error(f"{args.verb} takes {_ARITY[args.verb]} expression(s), got {len(raw)}")
    try:
        if args.verb == "decompose-vp":
            verdict, data, checks = _cmd_decompose_vp(field, raw, args)
        else:
            inputs = [parse_automorphism(src, field) for src in raw]
            verdict, data, checks = _HANDLERS[args.verb](field, inputs, args)
    except ParseError as exc:
        return _emit_error(args, exc, 2)
    except PlaneAutError as exc:
        return _emit_error(args, exc, 1)
    _emit(args, verdict, data, checks)
    return 0


if __name__ == "__main__":
    sys.exit(main())
