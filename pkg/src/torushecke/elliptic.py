"""Numerical realization on a complex torus, at double precision.

The exact modules work over rational functions; here the torus is an
honest complex curve C/Lambda and everything is floating point.  The
building blocks are Jacobi theta series in the nome, from which we get

* the Weierstrass function and its derivatives, through the second
  logarithmic derivative of theta_1 plus the usual constant, and
* a normalized odd function ``sn`` with simple zeros at 0 and at the
  chosen order-2 point xi = omega1/2, simple poles at the other two
  order-2 points, and derivative 1 at the origin.

Operators carry one evaluable coefficient per Weyl element; products
twist by the reflection action on the adjoint coordinates x_i, the
additive avatars of t^{alpha_i}.  Everything downstream (involution,
braid-failure, the basis membership checks) samples points off the
divisors and measures deviations against stated tolerances.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .rootdata import RootDatum, WeylElt

__all__ = [
    "EllipticError",
    "EllipticCurveParams",
    "EllipticOperator",
    "eval_elliptic",
    "build_elliptic_sigma",
    "check_elliptic",
    "verify_prop46",
    "NumericEntry",
    "NumericReport",
]

_TWO_PI = 2.0 * math.pi


class EllipticError(ValueError):
    """Bad parameters or evaluation at a removed point."""


def _theta_derivs(v: complex, nome: complex, order: int) -> List[complex]:
    """theta_1 and its first `order` derivatives at v, by direct series."""
    out = [0j] * (order + 1)
    tiny_run = 0
    for n in range(200):
        k = 2 * n + 1
        base = 2.0 * (-1) ** n * nome ** (n * n + n) * _nome_quarter(nome)
        # the factor above is 2*(-1)^n * q^{(n+1/2)^2}
        s = cmath.sin(k * v)
        c = cmath.cos(k * v)
        cycle = (s, c, -s, -c)
        mag = 0.0
        for j in range(order + 1):
            term = base * (k ** j) * cycle[j % 4]
            out[j] += term
            mag = max(mag, abs(term))
        scale = max(abs(x) for x in out) + 1e-300
        if mag < 1e-18 * scale:
            tiny_run += 1
            if tiny_run >= 2:
                return out
        else:
            tiny_run = 0
    raise EllipticError("theta series failed to converge; "
                        "period ratio too close to the real axis")


def _nome_quarter(nome: complex) -> complex:
    # q^{1/4} consistent with the principal branch used throughout
    return _NOME_QUARTER_CACHE.setdefault(nome, nome ** 0.25)


_NOME_QUARTER_CACHE: Dict[complex, complex] = {}


def _theta_even(v: complex, nome: complex, kind: int) -> complex:
    """theta_2, theta_3 or theta_4 at v (no derivatives needed)."""
    if kind == 2:
        out = 0j
        for n in range(200):
            term = 2.0 * nome ** (n * n + n) * _nome_quarter(nome) \
                * cmath.cos((2 * n + 1) * v)
            out += term
            if abs(term) < 1e-18 * (abs(out) + 1e-300) and n > 2:
                return out
        raise EllipticError("theta series failed to converge")
    out = 1 + 0j
    sign = -1.0 if kind == 4 else 1.0
    for n in range(1, 200):
        term = 2.0 * sign ** n * nome ** (n * n) * cmath.cos(2 * n * v)
        out += term
        if abs(term) < 1e-18 * (abs(out) + 1e-300) and n > 2:
            return out
    raise EllipticError("theta series failed to converge")


@dataclass
class EllipticCurveParams:
    """Periods of the lattice, the marked order-2 point, and the shift
    point whose double plays the role of q^-2 on the curve."""

    omega1: complex
    omega2: complex
    q_point: complex
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.omega1 = complex(self.omega1)
        self.omega2 = complex(self.omega2)
        self.q_point = complex(self.q_point)
        tau = self.omega2 / self.omega1
        if tau.imag <= 0:
            raise EllipticError("period ratio must have positive imaginary part")
        if self._near_lattice(2 * self.q_point):
            raise EllipticError("2*q_point lies on the lattice")
        c = self.q_shift
        if self._near_lattice(c) or self._near_lattice(c - self.xi):
            raise EllipticError("-2*q_point sits on a removed divisor")

    @property
    def xi(self) -> complex:
        return self.omega1 / 2.0

    @property
    def q_shift(self) -> complex:
        """The additive stand-in for q^-2."""
        return -2.0 * self.q_point

    @property
    def tau(self) -> complex:
        t = self.omega2 / self.omega1
        return complex(t.real - round(t.real), t.imag)

    @property
    def nome(self) -> complex:
        return cmath.exp(1j * math.pi * self.tau)

    @property
    def min_period(self) -> float:
        w1, w2 = self.omega1, self.omega2
        return min(abs(w1), abs(w2), abs(w1 + w2), abs(w1 - w2))

    def reduce(self, z: complex) -> complex:
        """Representative of z modulo the lattice with small modulus."""
        w1, w2 = self.omega1, self.omega2
        det = w1.real * w2.imag - w1.imag * w2.real
        a = (z.real * w2.imag - z.imag * w2.real) / det
        b = (w1.real * z.imag - w1.imag * z.real) / det
        z0 = z - round(a) * w1 - round(b) * w2
        best = z0
        for da in (-1, 0, 1):
            for db in (-1, 0, 1):
                cand = z0 - da * w1 - db * w2
                if abs(cand) < abs(best):
                    best = cand
        return best

    def _near_lattice(self, z: complex, eps: float = 1e-9) -> bool:
        return abs(self.reduce(z)) < eps * self.min_period

    def _const(self, key: str):
        cache = self._cache
        if key not in cache:
            nome = self.nome
            t0 = _theta_derivs(0j, nome, 3)
            cache["th1p"] = t0[1]
            cache["th1ppp"] = t0[3]
            cache["th2_0"] = _theta_even(0j, nome, 2)
            cache["th3_0"] = _theta_even(0j, nome, 3)
            cache["th4_0"] = _theta_even(0j, nome, 4)
            cache["sn_scale"] = (self.omega1 * cache["th3_0"] * cache["th4_0"]
                                 / (math.pi * cache["th1p"] * cache["th2_0"]))
        return cache[key]


def _log_theta_derivs(params: EllipticCurveParams, v: complex,
                      order: int) -> List[complex]:
    """Derivatives d^k/dv^k log theta_1(v) for k = 1..order.

    Uses theta^{(k)} = sum_j C(k-1, j) u^{(k-j)} theta^{(j)} with
    u = log theta_1, solved upward for the u-derivatives.
    """
    t = _theta_derivs(v, params.nome, order)
    if abs(t[0]) < 1e-13 * (abs(t[1]) + abs(t[0]) + 1e-300):
        raise EllipticError("evaluation too close to a lattice point")
    u = [0j] * (order + 1)  # u[k] = u^{(k)}, u[0] unused
    for k in range(1, order + 1):
        acc = t[k]
        for j in range(1, k):
            acc -= math.comb(k - 1, j) * u[k - j] * t[j]
        u[k] = acc / t[0]
    return u


def eval_elliptic(params: EllipticCurveParams, which: str, z: complex,
                  m: int = 0) -> complex:
    """Evaluate sn or the m-th derivative of the Weierstrass function."""
    z = complex(z)
    if which == "sn":
        v = math.pi * params.reduce(z) / params.omega1
        nome = params.nome
        th3 = _theta_even(v, nome, 3)
        th4 = _theta_even(v, nome, 4)
        if abs(th3 * th4) < 1e-12 * abs(params._const("th3_0")
                                        * params._const("th4_0")):
            raise EllipticError("sn evaluated at one of its poles")
        th1 = _theta_derivs(v, nome, 0)[0]
        th2 = _theta_even(v, nome, 2)
        return params._const("sn_scale") * th1 * th2 / (th3 * th4)
    if which != "wp":
        raise EllipticError(f"unknown function {which!r}")
    if not 0 <= m <= 6:
        raise EllipticError("wp derivative order must lie in 0..6")
    zr = params.reduce(z)
    if abs(zr) < 1e-9 * params.min_period:
        raise EllipticError("wp evaluated at a lattice point")
    v = math.pi * zr / params.omega1
    u = _log_theta_derivs(params, v, m + 2)
    scale = (math.pi / params.omega1) ** (m + 2)
    val = -scale * u[m + 2]
    if m == 0:
        val += (math.pi / params.omega1) ** 2 \
            * params._const("th1ppp") / (3.0 * params._const("th1p"))
    return val


# ---------------------------------------------------------------------------
# operators indexed by the Weyl group

PointFn = Callable[[Tuple[complex, ...]], complex]


def _act_inverse(w: WeylElt, pt: Tuple[complex, ...]) -> Tuple[complex, ...]:
    """w^{-1} applied to an adjoint-coordinate point (transpose of w.mat)."""
    n = len(pt)
    return tuple(sum(w.mat[k][i] * pt[k] for k in range(n)) for i in range(n))


def _twist(g: PointFn, w: WeylElt) -> PointFn:
    return lambda pt: g(_act_inverse(w, pt))


class EllipticOperator:
    """Finite sum of evaluable coefficients times Weyl group elements."""

    def __init__(self, datum: RootDatum, terms: Dict[WeylElt, PointFn]):
        self.datum = datum
        self.terms = dict(terms)

    @classmethod
    def identity(cls, datum: RootDatum) -> "EllipticOperator":
        return cls(datum, {datum.identity: lambda pt: 1.0 + 0j})

    def __mul__(self, other: "EllipticOperator") -> "EllipticOperator":
        from .rootdata import multiply_elts
        out: Dict[WeylElt, List[Tuple[PointFn, PointFn, WeylElt]]] = {}
        for w, f in self.terms.items():
            for y, g in other.terms.items():
                wy = multiply_elts(self.datum, w, y)
                out.setdefault(wy, []).append((f, _twist(g, w), w))
        terms: Dict[WeylElt, PointFn] = {}
        for wy, pieces in out.items():
            def coeff(pt, pieces=pieces):
                return sum(f(pt) * g(pt) for f, g, _ in pieces)
            terms[wy] = coeff
        return EllipticOperator(self.datum, terms)

    def coefficients(self, pt: Sequence[complex]) -> Dict[WeylElt, complex]:
        pt = tuple(complex(x) for x in pt)
        return {w: f(pt) for w, f in self.terms.items()}

    def deviation_from(self, other: "EllipticOperator",
                       pt: Sequence[complex]) -> float:
        pt = tuple(complex(x) for x in pt)
        keys = set(self.terms) | set(other.terms)
        dev = 0.0
        for w in keys:
            a = self.terms[w](pt) if w in self.terms else 0j
            b = other.terms[w](pt) if w in other.terms else 0j
            dev = max(dev, abs(a - b))
        return dev


def build_elliptic_sigma(params: EllipticCurveParams,
                         datum: RootDatum) -> List[EllipticOperator]:
    """One generator per node: (sn(c)/sn(x_i))[1] + (1 - sn(c)/sn(x_i))[s_i],
    with c the additive stand-in for q^-2."""
    if datum.kind != "finite" or datum.n > 2:
        raise EllipticError("elliptic generators are built for finite rank <= 2")
    from .rootdata import canonicalize_word
    sn_c = eval_elliptic(params, "sn", params.q_shift)
    out = []
    for lab in datum.labels:
        i = datum.pos(lab)
        s_i = canonicalize_word(datum, (lab,))

        def ratio(pt, i=i):
            return sn_c / eval_elliptic(params, "sn", pt[i])

        def rest(pt, i=i):
            return 1.0 - sn_c / eval_elliptic(params, "sn", pt[i])

        out.append(EllipticOperator(datum, {datum.identity: ratio, s_i: rest}))
    return out


@dataclass
class NumericEntry:
    element: str
    check: str
    value: float
    bound: float
    status: str

    def to_dict(self) -> dict:
        return {"element": self.element, "check": self.check,
                "value": f"{self.value:.6e}", "bound": f"{self.bound:.6e}",
                "status": self.status}


class NumericReport:
    def __init__(self, entries):
        self.entries = sorted(entries, key=lambda e: (e.element, e.check))

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def to_list(self) -> list:
        return [e.to_dict() for e in self.entries]

    def __repr__(self) -> str:
        bad = sum(1 for e in self.entries if e.status != "pass")
        return f"NumericReport({len(self.entries)} entries, {bad} failing)"


def _sample_point(params: EllipticCurveParams, datum: RootDatum,
                  rng: random.Random) -> Tuple[complex, ...]:
    """A point of the product torus with every coordinate off the
    divisors where the generator coefficients blow up or vanish."""
    sn_unit = abs(params._const("sn_scale"))
    for _ in range(500):
        pt = []
        ok = True
        for _ in range(datum.n):
            a = rng.uniform(-0.45, 0.45)
            b = rng.uniform(-0.45, 0.45)
            x = a * params.omega1 + b * params.omega2
            try:
                s = eval_elliptic(params, "sn", x)
            except EllipticError:
                ok = False
                break
            if not 0.05 * sn_unit < abs(s) < 20.0 * sn_unit:
                ok = False
                break
            pt.append(x)
        if ok:
            return tuple(pt)
    raise EllipticError("all samples landed near divisors; resample "
                        "with another seed or different q_point")


def check_elliptic(params: EllipticCurveParams, datum: RootDatum,
                   suite: str, samples: int = 100, seed: int = 0,
                   tol: float = 1e-9) -> NumericReport:
    """Involution of each generator, or failure of the braid identity."""
    rng = random.Random(seed)
    sigmas = build_elliptic_sigma(params, datum)
    entries = []
    if suite == "involution":
        ident = EllipticOperator.identity(datum)
        for lab, sigma in zip(datum.labels, sigmas):
            square = sigma * sigma
            worst = 0.0
            for _ in range(samples):
                pt = _sample_point(params, datum, rng)
                worst = max(worst, square.deviation_from(ident, pt))
            status = "pass" if worst <= tol else "fail"
            entries.append(NumericEntry(f"sigma_{lab}^2", "identity-deviation",
                                        worst, tol, status))
        return NumericReport(entries)
    if suite == "braid-failure":
        if datum.n != 2:
            raise EllipticError("braid-failure needs rank 2")
        s1, s2 = sigmas
        lhs = s1 * s2 * s1
        rhs = s2 * s1 * s2
        worst = 0.0
        for _ in range(samples):
            pt = _sample_point(params, datum, rng)
            worst = max(worst, lhs.deviation_from(rhs, pt))
        status = "pass" if worst > 1e-3 else "fail"
        entries.append(NumericEntry("braid-gap", "max-deviation",
                                    worst, 1e-3, status))
        return NumericReport(entries)
    raise EllipticError(f"unknown elliptic suite {suite!r}")


# ---------------------------------------------------------------------------
# membership of the listed basis elements, one coordinate


def _contour_residue(params: EllipticCurveParams, f: Callable[[complex], complex],
                     nodes: int = 256) -> complex:
    """Residue of f at the origin by the trapezoid rule, shrinking the
    circle when it touches another singularity."""
    radius = 0.05 * params.min_period
    for _ in range(6):
        try:
            vals = []
            blew_up = False
            for k in range(nodes):
                zk = radius * cmath.exp(2j * math.pi * k / nodes)
                val = f(zk)
                if abs(val) > 1e12:
                    blew_up = True
                    break
                vals.append((val, zk))
            if not blew_up:
                # the nodes sum to zero, so shifting by the mean changes
                # nothing exactly but stops a large constant part of f
                # from amplifying rounding error
                mean = sum(v for v, _ in vals) / nodes
                return sum((v - mean) * zk for v, zk in vals) / nodes
        except EllipticError:
            pass
        radius *= 0.5
    raise EllipticError("contour kept touching a pole while shrinking")


def _bounded_off_divisors(params: EllipticCurveParams,
                          f: Callable[[complex], complex],
                          rng: random.Random, probes: int = 6) -> float:
    """Largest growth ratio of max|f| along shrinking circles around
    seeded points away from 0 and xi; near 1 means no pole nearby."""
    worst = 0.0
    r0 = 0.01 * params.min_period
    for _ in range(probes):
        while True:
            a = rng.uniform(-0.45, 0.45)
            b = rng.uniform(-0.45, 0.45)
            p = a * params.omega1 + b * params.omega2
            if abs(params.reduce(p)) > 0.1 * params.min_period and \
               abs(params.reduce(p - params.xi)) > 0.1 * params.min_period and \
               abs(params.reduce(p - params.q_shift)) > 0.05 * params.min_period:
                break
        maxima = []
        for r in (r0, r0 / 2, r0 / 4):
            vals = [abs(f(p + r * cmath.exp(2j * math.pi * k / 16)))
                    for k in range(16)]
            maxima.append(max(vals))
        worst = max(worst, maxima[-1] / (maxima[0] + 1e-30))
    return worst


def verify_prop46(params: EllipticCurveParams, m_max: int = 6,
                  seed: int = 0) -> NumericReport:
    """Residue cancellation, polar locus, and the vanishing condition
    for the listed spanning elements on the one-coordinate torus."""
    if not 0 <= m_max <= 6:
        raise EllipticError("m_max must lie in 0..6")
    rng = random.Random(seed)
    c = params.q_shift
    xi = params.xi
    sn_c = eval_elliptic(params, "sn", c)

    def zero(t: complex) -> complex:
        return 0j

    elements: List[Tuple[str, Callable, Callable]] = [
        ("[1]", lambda t: 1.0 + 0j, zero),
        ("sigma", lambda t: sn_c / eval_elliptic(params, "sn", t),
         lambda t: 1.0 - sn_c / eval_elliptic(params, "sn", t)),
    ]
    for m in range(m_max + 1):
        shift = eval_elliptic(params, "wp", c - xi, m)
        elements.append((f"wp({m})(t-xi)[1]",
                         lambda t, m=m: eval_elliptic(params, "wp", t - xi, m),
                         zero))
        elements.append((f"(wp({m})(t-xi)-wp({m})(-2q-xi))[s]", zero,
                         lambda t, m=m, shift=shift:
                         eval_elliptic(params, "wp", t - xi, m) - shift))

    entries = []
    for name, f1, fs in elements:
        res1 = _contour_residue(params, f1)
        res_s = _contour_residue(params, fs)
        total = abs(res1 + res_s)
        entries.append(NumericEntry(name, "residue-sum", total, 1e-8,
                                    "pass" if total <= 1e-8 else "fail"))
        growth = max(_bounded_off_divisors(params, f1, rng),
                     _bounded_off_divisors(params, fs, rng))
        entries.append(NumericEntry(name, "bounded-off-divisors", growth, 4.0,
                                    "pass" if growth <= 4.0 else "fail"))
        at_c = abs(fs(c))
        entries.append(NumericEntry(name, "vanishing-at-shift", at_c, 1e-12,
                                    "pass" if at_c <= 1e-12 else "fail"))
    return NumericReport(entries)
