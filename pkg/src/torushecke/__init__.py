"""Exact Hecke algebras of rational functions on a torus, built by the
residue method, with a numerical elliptic companion.

The algebra lives over the fraction field Q(q); elements are finite
sums of rational-function coefficients times Weyl group elements and
multiply with a twist.  Membership in the small algebra is decided by
pole, residue and vanishing conditions; the generator basis comes with
an exact normal-form algorithm.
"""

from .algebra import AlgebraElement
from .demazure import (NormalForm, NotInSpan, make_delta, make_delta_inverse,
                       make_sigma, make_sigma_inverse, make_theta, normal_form,
                       reconstruct, sigma_of_element)
from .elliptic import (EllipticCurveParams, EllipticError, EllipticOperator,
                       build_elliptic_sigma, check_elliptic, eval_elliptic,
                       verify_prop46)
from .laurent import LaurentError, LaurentPoly, RatFunc
from .membership import MembershipReport, Violation, check_membership, delta_criterion
from .presentations import (RelationReport, ReportEntry, bernstein_suite,
                            braid_suite, closure_suite, delta_criterion_suite,
                            action_preservation_suite, length_additive_suite,
                            quadratic_suite, verify_daha_suite,
                            verify_finite_suite)
from .rootdata import (CartanMatrix, CartanMatrixError, Root, RootDatum,
                       RootDatumError, WeylElt, build_datum, classify_cartan,
                       preset_datum)
from .scalars import QScalar, parse_scalar, scalar_str

__version__ = "0.1.0"
