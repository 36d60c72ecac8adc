"""JSON forms for elements, data and reports.

All dumps are deterministic: keys sorted, entries pre-sorted by the
callers, floats already formatted as strings.  Exponents are stored in
the doubled convention used internally, so half-integer characters
survive a round trip unchanged.
"""

from __future__ import annotations

import json

from .algebra import AlgebraElement
from .laurent import LaurentPoly, RatFunc
from .rootdata import (RootDatum, positive_real_roots_up_to_height, weyl_ball)
from .scalars import QScalar, parse_scalar, scalar_str

SCHEMA = "1"


class SerializeError(ValueError):
    """Malformed payload, with a hint at the offending location."""


def ratfunc_to_dict(f: RatFunc) -> dict:
    num = [{"coef": scalar_str(c), "exp": list(e)}
           for e, c in sorted(f.num.terms.items())]
    den = [{"root": list(fac.root_coords), "target": scalar_str(fac.target),
            "mult": fac.mult} for fac in f.factors()]
    return {"num": num, "den": den}


def element_to_dict(x: AlgebraElement) -> dict:
    terms = []
    for w in x.support():
        entry = {"word": list(w.word)}
        entry.update(ratfunc_to_dict(x.coefficient(w)))
        terms.append(entry)
    return {"terms": terms}


def _ratfunc_from_parts(datum: RootDatum, num_part, den_part, where: str) -> RatFunc:
    poly = LaurentPoly.zero(datum.rank)
    for j, tm in enumerate(num_part):
        try:
            coef = parse_scalar(tm["coef"])
            exp = tuple(int(v) for v in tm["exp"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SerializeError(f"{where}.num[{j}]: {exc}") from None
        if len(exp) != datum.rank:
            raise SerializeError(f"{where}.num[{j}]: exponent length "
                                 f"{len(exp)}, expected {datum.rank}")
        poly = poly + LaurentPoly.monomial(datum.rank, exp, coef)
    out = RatFunc.from_poly(datum, poly)
    for j, fac in enumerate(den_part):
        try:
            coords = tuple(int(v) for v in fac["root"])
            target = parse_scalar(fac["target"])
            mult = int(fac.get("mult", 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise SerializeError(f"{where}.den[{j}]: {exc}") from None
        if len(coords) != datum.n:
            raise SerializeError(f"{where}.den[{j}]: root has {len(coords)} "
                                 f"coordinates, expected {datum.n}")
        root = datum.root_from_coords(coords)
        out = out.with_den_factor(root, target, mult)
    return out


def element_from_dict(datum: RootDatum, data: dict) -> AlgebraElement:
    if not isinstance(data, dict) or "terms" not in data:
        raise SerializeError("element payload must be an object with 'terms'")
    out = AlgebraElement.zero(datum)
    for i, term in enumerate(data["terms"]):
        where = f"terms[{i}]"
        try:
            word = tuple(int(v) for v in term["word"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SerializeError(f"{where}.word: {exc}") from None
        from .rootdata import canonicalize_word, RootDatumError
        try:
            w = canonicalize_word(datum, word)
        except RootDatumError as exc:
            raise SerializeError(f"{where}.word: {exc}") from None
        f = _ratfunc_from_parts(datum, term.get("num", []),
                                term.get("den", []), where)
        out = out + AlgebraElement(datum, {w: f})
    return out


def normal_form_to_dict(nf) -> dict:
    return {"coefficients": [
        {"word": list(w.word), "scalar": scalar_str(c)}
        for w, c in nf.items()
    ]}


def datum_to_dict(datum: RootDatum, max_height: int = 3,
                  max_length: int = 3) -> dict:
    out = {
        "kind": datum.kind,
        "cartan": [list(r) for r in datum.cartan.entries],
        "labels": list(datum.labels),
        "rank": datum.rank,
        "simple_roots": [list(v) for v in datum.simple_roots],
        "simple_coroots": [list(v) for v in datum.simple_coroots],
    }
    if datum.kind == "affine" and datum.affine is not None:
        aff = datum.affine
        out["marks"] = list(aff.marks)
        out["comarks"] = list(aff.comarks)
        out["highest_root"] = list(aff.theta.coords)
        out["delta_char"] = list(aff.delta_char)
    roots = positive_real_roots_up_to_height(datum, max_height)
    out["positive_real_roots"] = [
        {"coords": list(r.coords), "char": list(r.char)} for r in roots]
    out["weyl_ball"] = [
        {"word": list(w.word), "length": w.length}
        for w in weyl_ball(datum, max_length)]
    return out


def dump_report(payload: dict) -> str:
    payload = dict(payload)
    payload["schema"] = SCHEMA
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializeError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
