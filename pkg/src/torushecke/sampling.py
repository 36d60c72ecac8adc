"""Seeded random elements for the verification suites.

Everything takes an explicit random.Random so suite runs are
reproducible; nothing here touches global state.  Members of the small
algebra are built as words in the generators and torus characters with
rational-function-field coefficients, which stays inside the algebra by
construction; outliers add the classic reflection-difference element
with a bare simple pole, which leaves the vanishing conditions broken
at exactly one group term.
"""

from __future__ import annotations

import random

from .algebra import AlgebraElement
from .demazure import make_sigma
from .laurent import LaurentPoly, RatFunc
from .rootdata import RootDatum, canonicalize_word
from .scalars import QScalar

__all__ = [
    "random_scalar",
    "random_weight",
    "random_laurent_poly",
    "random_small_algebra_element",
    "random_outlier",
]


def random_scalar(rng: random.Random, deg: int = 2) -> QScalar:
    """A nonzero element of Z[q, q^-1] of small degree."""
    while True:
        coeffs = tuple(rng.randint(-3, 3) for _ in range(deg + 1))
        if any(coeffs):
            break
    shift = rng.randint(-1, 1)
    return QScalar(coeffs) * QScalar.q_power(shift)


def random_weight(datum: RootDatum, rng: random.Random, span: int = 2):
    """A character vector with small entries (not necessarily nonzero)."""
    if datum.kind == "affine":
        # stay in the finite-weight part: level zero, no scaling component
        lam = [0] * datum.rank
        for i in range(1, datum.n):
            c = rng.randint(-span, span)
            lam[i] += c
            lam[0] -= c * datum.affine.comarks[i]
        return tuple(lam)
    return tuple(rng.randint(-span, span) for _ in range(datum.rank))


def random_laurent_poly(datum: RootDatum, rng: random.Random,
                        terms: int = 3, span: int = 2) -> LaurentPoly:
    """A random Laurent polynomial with integer character exponents."""
    out = LaurentPoly.zero(datum.rank)
    for _ in range(terms):
        exp = tuple(2 * x for x in random_weight(datum, rng, span))
        out = out + LaurentPoly.monomial(datum.rank, exp, random_scalar(rng))
    if out.is_zero():
        out = LaurentPoly.one(datum.rank)
    return out


def random_small_algebra_element(datum: RootDatum, rng: random.Random,
                                 terms: int = 3, word_len: int = 2,
                                 char_span: int = 1) -> AlgebraElement:
    """A member of the small algebra: sums of words in sigma_i and t^lambda."""
    out = AlgebraElement.zero(datum)
    for _ in range(terms):
        piece = AlgebraElement.from_function(
            datum, RatFunc.from_scalar(datum, random_scalar(rng)))
        for _ in range(rng.randint(1, word_len)):
            if rng.random() < 0.6:
                lab = rng.choice(datum.labels)
                piece = piece * make_sigma(datum, lab)
            else:
                lam = random_weight(datum, rng, char_span)
                piece = piece * AlgebraElement.character(datum, lam)
        out = out + piece
    return out


def random_outlier(datum: RootDatum, rng: random.Random,
                   hq_terms: int = 1) -> AlgebraElement:
    """An element of the big algebra outside the small one.

    Takes f/(t^alpha - 1) ([e] - [s_alpha]) with monomial f, whose
    residues cancel but whose reflection coefficient cannot vanish on
    t^alpha = q^-2, and shifts it by a random small-algebra element;
    the coset argument keeps the sum outside.
    """
    lab = rng.choice(datum.labels)
    alpha = datum.simple_root_obj(lab)
    s = canonicalize_word(datum, (lab,))
    lam = random_weight(datum, rng, 1)
    f = RatFunc.character(datum, lam, random_scalar(rng)).with_den_factor(
        alpha, QScalar.one())
    out = AlgebraElement(datum, {datum.identity: f, s: -f})
    if hq_terms:
        out = out + random_small_algebra_element(datum, rng, terms=hq_terms,
                                                 word_len=1)
    return out
