"""Laurent polynomials and rational functions on a torus.

Exponent vectors live in (1/2) X, stored as integer tuples of DOUBLED
exponents, so the half-characters t^(alpha/2) that the Weyl denominator
needs are honest monomials.  A rational function is a Laurent polynomial
numerator over a multiset of binomial factors (t^beta - c)^m, each keyed
by the (doubled) character vector of a positive real root beta together
with the target scalar c in Q(q).  Keeping denominators factored is what
makes pole orders, residues, and divisor-vanishing checks exact instead
of a factorization problem.

Division by a binomial works in a unimodular change of exponent
coordinates sending the character of beta to (g, 0, ..., 0) with g its
content; the binomial becomes univariate there and ordinary long
division applies.  The transforms are cached per character vector.

On a degenerate (derived) affine realization distinct real roots can
share a character vector up to sign, so distinct stored factors may cut
the same divisor; the full realizations used by the verification suites
never do.
"""

from __future__ import annotations

from .scalars import QScalar, scalar_str

__all__ = [
    "LaurentError",
    "ExpVec",
    "LaurentPoly",
    "RootFactor",
    "RatFunc",
    "divide_by_binomial",
    "restrict_to_divisor",
    "vanishes_on_divisor",
    "expand_den_factor",
]

ExpVec = tuple[int, ...]

_ZERO = QScalar.zero()
_ONE = QScalar.one()


class LaurentError(ValueError):
    pass


class LaurentPoly:
    """A Laurent polynomial: {doubled exponent vector: Q(q) coefficient}.

    >>> p = LaurentPoly.monomial(1, (2,)) - LaurentPoly.one(1)
    >>> sorted(p.terms.items())
    [((0,), QScalar('-1')), ((2,), QScalar('1'))]
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        if terms:
            self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        else:
            self.terms = {}

    @classmethod
    def zero(cls, rank: int) -> "LaurentPoly":
        return cls(rank)

    @classmethod
    def one(cls, rank: int) -> "LaurentPoly":
        return cls(rank, {(0,) * rank: _ONE})

    @classmethod
    def monomial(cls, rank: int, exp: ExpVec, coef: QScalar = _ONE) -> "LaurentPoly":
        if len(exp) != rank:
            raise LaurentError("exponent length does not match rank")
        return cls(rank, {tuple(exp): coef})

    @classmethod
    def character(cls, rank: int, char, coef: QScalar = _ONE,
                  half: bool = False) -> "LaurentPoly":
        """t^lambda (or t^(lambda/2)) for a character vector in X."""
        exp = tuple(int(x) for x in char) if half else tuple(2 * int(x) for x in char)
        return cls.monomial(rank, exp, coef)

    def is_zero(self) -> bool:
        return not self.terms

    def term_count(self) -> int:
        return len(self.terms)

    def coefficient(self, exp: ExpVec) -> QScalar:
        return self.terms.get(tuple(exp), _ZERO)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            if acc is None:
                out[e] = c
            else:
                s = acc + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
        p = LaurentPoly.__new__(LaurentPoly)
        p.rank = self.rank
        p.terms = out
        return p

    def __neg__(self) -> "LaurentPoly":
        p = LaurentPoly.__new__(LaurentPoly)
        p.rank = self.rank
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return self.scale(other)
        out: dict[ExpVec, QScalar] = {}
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                acc = out.get(e)
                if acc is None:
                    out[e] = c
                else:
                    out[e] = acc + c
        p = LaurentPoly.__new__(LaurentPoly)
        p.rank = self.rank
        p.terms = {e: c for e, c in out.items() if not c.is_zero()}
        return p

    __rmul__ = __mul__

    def scale(self, c: QScalar) -> "LaurentPoly":
        if c.is_zero():
            return LaurentPoly(self.rank)
        p = LaurentPoly.__new__(LaurentPoly)
        p.rank = self.rank
        p.terms = {e: x * c for e, x in self.terms.items()}
        return p

    def shift(self, exp: ExpVec) -> "LaurentPoly":
        """Multiply by the monomial t^(exp/2) (doubled exponent vector)."""
        p = LaurentPoly.__new__(LaurentPoly)
        p.rank = self.rank
        p.terms = {
            tuple(x + y for x, y in zip(e, exp)): c for e, c in self.terms.items()
        }
        return p

    def transform_exponents(self, mat) -> "LaurentPoly":
        """Apply an integer matrix to every (doubled) exponent vector."""
        out: dict[ExpVec, QScalar] = {}
        for e, c in self.terms.items():
            y = tuple(sum(row[k] * e[k] for k in range(len(e))) for row in mat)
            acc = out.get(y)
            out[y] = c if acc is None else acc + c
        p = LaurentPoly.__new__(LaurentPoly)
        p.rank = len(mat)
        p.terms = {e: c for e, c in out.items() if not c.is_zero()}
        return p

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise LaurentError("negative power of a Laurent polynomial")
        out = LaurentPoly.one(self.rank)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        bits = []
        for e in sorted(self.terms):
            bits.append(f"({scalar_str(self.terms[e])})*t^{list(e)}/2")
        return "LaurentPoly(" + " + ".join(bits) + ")"


# -- binomial division -----------------------------------------------------

_UNIMOD_CACHE: dict[ExpVec, tuple[tuple, tuple, int]] = {}


def _unimodular_for(d: ExpVec):
    """U, Uinv unimodular with U @ d = (g, 0, ..., 0), g = content of d > 0."""
    cached = _UNIMOD_CACHE.get(d)
    if cached is not None:
        return cached
    r = len(d)
    if not any(d):
        raise LaurentError("zero character vector has no divisor")
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    Uinv = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = list(d)
    for i in range(1, r):
        a, b = v[0], v[i]
        if b == 0:
            continue
        g, x, y = _ext_gcd(a, b)
        # rows (0, i) of U get [[x, y], [-b/g, a/g]]; columns of Uinv get
        # the inverse [[a/g, -y], [b/g, x]]
        p, qq = -b // g, a // g
        for col in range(r):
            u0, ui = U[0][col], U[i][col]
            U[0][col] = x * u0 + y * ui
            U[i][col] = p * u0 + qq * ui
        for row in range(r):
            w0, wi = Uinv[row][0], Uinv[row][i]
            Uinv[row][0] = qq * w0 - p * wi
            Uinv[row][i] = -y * w0 + x * wi
        v[0], v[i] = g, 0
    if v[0] < 0:
        for col in range(r):
            U[0][col] = -U[0][col]
        for row in range(r):
            Uinv[row][0] = -Uinv[row][0]
        v[0] = -v[0]
    out = (tuple(map(tuple, U)), tuple(map(tuple, Uinv)), v[0])
    _UNIMOD_CACHE[d] = out
    return out


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_x, x = x, old_x - qq * x
        old_y, y = y, old_y - qq * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def divide_by_binomial(poly: LaurentPoly, alpha_doubled: ExpVec,
                       target: QScalar):
    """Write poly = (t^alpha - c) * quotient + remainder, both exact.

    alpha_doubled is the doubled character vector of alpha; the remainder
    has first-coordinate degree spread less than the content g in the
    transformed coordinates, so it is zero exactly when the binomial
    divides poly.
    """
    if poly.is_zero():
        return poly, poly
    U, Uinv, g = _unimodular_for(alpha_doubled)
    work = poly.transform_exponents(U)
    m0 = min(e[0] for e in work.terms)
    # bucket by first coordinate relative to m0
    buckets: dict[int, dict[ExpVec, QScalar]] = {}
    for e, c in work.terms.items():
        buckets.setdefault(e[0] - m0, {})[e[1:]] = c
    quot: dict[ExpVec, QScalar] = {}
    # walk every level down to g, including levels the division itself fills
    for k in range(max(buckets), g - 1, -1):
        src = buckets.pop(k, None)
        if not src:
            continue
        low = buckets.setdefault(k - g, {})
        for rest, c in src.items():
            if c.is_zero():
                continue
            quot_e = (k - g + m0,) + rest
            acc = quot.get(quot_e)
            quot[quot_e] = c if acc is None else acc + c
            cc = c * target
            accl = low.get(rest)
            low[rest] = cc if accl is None else accl + cc
    rem: dict[ExpVec, QScalar] = {}
    for k, src in buckets.items():
        for rest, c in src.items():
            if not c.is_zero():
                rem[(k + m0,) + rest] = c
    q_poly = LaurentPoly(len(alpha_doubled), quot).transform_exponents(Uinv)
    r_poly = LaurentPoly(len(alpha_doubled), rem).transform_exponents(Uinv)
    return q_poly, r_poly


def restrict_to_divisor(poly: LaurentPoly, alpha_doubled: ExpVec,
                        target: QScalar) -> LaurentPoly:
    """Canonical image of poly modulo (t^alpha - c), in transformed coordinates.

    Each transformed exponent k folds to k mod g, picking up c^(k div g).
    The result is zero exactly when poly lies in the ideal of the divisor.
    The returned polynomial lives in the TRANSFORMED coordinates (first
    variable of degree < g); compare such restrictions only with each
    other for the same alpha and target.
    """
    if poly.is_zero():
        return poly
    U, _Uinv, g = _unimodular_for(alpha_doubled)
    work = poly.transform_exponents(U)
    out: dict[ExpVec, QScalar] = {}
    for e, c in work.terms.items():
        s, r = divmod(e[0], g)
        val = c * target ** s
        key = (r,) + e[1:]
        acc = out.get(key)
        out[key] = val if acc is None else acc + val
    return LaurentPoly(len(alpha_doubled), out)


def vanishes_on_divisor(poly: LaurentPoly, alpha_doubled: ExpVec,
                        target: QScalar) -> bool:
    return restrict_to_divisor(poly, alpha_doubled, target).is_zero()


def expand_den_factor(rank: int, char_doubled: ExpVec, target: QScalar,
                      mult: int) -> LaurentPoly:
    """(t^alpha - c)^mult as an honest Laurent polynomial."""
    base = LaurentPoly(rank, {tuple(char_doubled): _ONE, (0,) * rank: -target})
    return base ** mult


# -- rational functions ----------------------------------------------------


class RootFactor:
    """A denominator factor (t^root - target)^mult, root a positive real root."""

    __slots__ = ("root_coords", "char_doubled", "target", "mult")

    def __init__(self, root_coords, char_doubled, target, mult):
        self.root_coords = root_coords
        self.char_doubled = char_doubled
        self.target = target
        self.mult = mult

    def __repr__(self):
        return (f"RootFactor(root={list(self.root_coords)}, "
                f"target={scalar_str(self.target)}, mult={self.mult})")


class RatFunc:
    """num / prod (t^beta_i - c_i)^{m_i} with beta_i positive real roots.

    Denominator keys are (doubled character of beta, target); values are
    (multiplicity, root coordinates).  Construction reduces: every factor
    that divides the numerator is cancelled, so a factor that remains is a
    genuine pole along its divisor.
    """

    __slots__ = ("datum", "num", "den")

    def __init__(self, datum, num: LaurentPoly, den=None, reduce: bool = True):
        self.datum = datum
        self.num = num
        self.den = dict(den) if den else {}
        if num.is_zero():
            self.den = {}
        elif reduce and self.den:
            self._reduce()

    # construction helpers

    @classmethod
    def from_poly(cls, datum, poly: LaurentPoly) -> "RatFunc":
        return cls(datum, poly, None, reduce=False)

    @classmethod
    def from_scalar(cls, datum, c: QScalar) -> "RatFunc":
        return cls(datum, LaurentPoly.monomial(datum.rank, (0,) * datum.rank, c),
                   None, reduce=False)

    @classmethod
    def one(cls, datum) -> "RatFunc":
        return cls(datum, LaurentPoly.one(datum.rank), None, reduce=False)

    @classmethod
    def zero(cls, datum) -> "RatFunc":
        return cls(datum, LaurentPoly.zero(datum.rank), None, reduce=False)

    @classmethod
    def character(cls, datum, char, coef: QScalar = _ONE,
                  half: bool = False) -> "RatFunc":
        return cls(datum, LaurentPoly.character(datum.rank, char, coef, half),
                   None, reduce=False)

    def with_den_factor(self, root, target: QScalar, mult: int = 1) -> "RatFunc":
        """self / (t^root - target)^mult; root may be a negative real root."""
        if mult < 0:
            raise LaurentError("denominator multiplicity must be nonnegative")
        if target.is_zero():
            raise LaurentError("denominator target must be a nonzero scalar")
        if mult == 0:
            return self
        num = self.num
        den = dict(self.den)
        coords = root.coords
        char = root.char
        if root.positive:
            key = (tuple(2 * x for x in char), target)
            rep = coords
        else:
            # 1/(t^gamma - c)^m = (-c)^{-m} t^{-m gamma} / (t^{-gamma} - 1/c)^m
            pos = root.negate()
            key = (tuple(2 * x for x in pos.char), target.inverse())
            rep = pos.coords
            scalar = (-target) ** (-mult)
            num = num.scale(scalar).shift(tuple(2 * mult * x for x in pos.char))
        old = den.get(key)
        den[key] = (mult if old is None else old[0] + mult, rep)
        return RatFunc(self.datum, num, den)

    # reduction

    def _reduce(self):
        num = self.num
        den = self.den
        for key in list(den):
            m, rep = den[key]
            dchar, target = key
            while m > 0 and num.term_count() > 1:
                q, r = divide_by_binomial(num, dchar, target)
                if not r.is_zero():
                    break
                num = q
                m -= 1
            if m == 0:
                del den[key]
            else:
                den[key] = (m, rep)
            if num.is_zero():
                den.clear()
                break
        self.num = num

    # queries

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def as_poly(self) -> LaurentPoly:
        if self.den:
            raise LaurentError("rational function has a nontrivial denominator")
        return self.num

    def factors(self):
        return [
            RootFactor(rep, dchar, target, m)
            for (dchar, target), (m, rep) in sorted(
                self.den.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))
            )
        ]

    def pole_mult(self, char_doubled: ExpVec, target: QScalar) -> int:
        got = self.den.get((tuple(char_doubled), target))
        return got[0] if got else 0

    def den_poly(self, skip=None) -> LaurentPoly:
        """The expanded denominator, optionally skipping one key."""
        out = LaurentPoly.one(self.datum.rank)
        for (dchar, target), (m, _rep) in self.den.items():
            if skip is not None and (dchar, target) == skip:
                continue
            out = out * expand_den_factor(self.datum.rank, dchar, target, m)
        return out

    # arithmetic

    def _common(self, other: "RatFunc"):
        assert self.datum is other.datum, "mixed root data"
        union: dict = {}
        for key, (m, rep) in self.den.items():
            union[key] = (m, rep)
        for key, (m, rep) in other.den.items():
            got = union.get(key)
            if got is None or got[0] < m:
                union[key] = (m, rep)
        a_extra = LaurentPoly.one(self.datum.rank)
        b_extra = LaurentPoly.one(self.datum.rank)
        for key, (m, _rep) in union.items():
            da = m - (self.den[key][0] if key in self.den else 0)
            db = m - (other.den[key][0] if key in other.den else 0)
            if da:
                a_extra = a_extra * expand_den_factor(
                    self.datum.rank, key[0], key[1], da)
            if db:
                b_extra = b_extra * expand_den_factor(
                    self.datum.rank, key[0], key[1], db)
        return union, a_extra, b_extra

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        union, a_extra, b_extra = self._common(other)
        num = self.num * a_extra + other.num * b_extra
        return RatFunc(self.datum, num, union)

    def __neg__(self) -> "RatFunc":
        return RatFunc(self.datum, -self.num, self.den, reduce=False)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, QScalar):
            return RatFunc(self.datum, self.num.scale(other), self.den,
                           reduce=False)
        if isinstance(other, LaurentPoly):
            return RatFunc(self.datum, self.num * other, self.den)
        assert self.datum is other.datum, "mixed root data"
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.datum)
        den = dict(self.den)
        for key, (m, rep) in other.den.items():
            got = den.get(key)
            den[key] = (m, rep) if got is None else (got[0] + m, rep)
        return RatFunc(self.datum, self.num * other.num, den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self - other).is_zero()

    def scale_monomial(self, char, coef: QScalar = _ONE,
                       half: bool = False) -> "RatFunc":
        exp = tuple(int(x) for x in char) if half else tuple(2 * int(x) for x in char)
        return RatFunc(self.datum, self.num.shift(exp).scale(coef), self.den,
                       reduce=False)

    def inverse(self, peel=None) -> "RatFunc":
        """Invert a unit: denominator factors move up, numerator must reduce
        to a single monomial, possibly after peeling listed binomials.

        peel: optional list of (root, target) pairs to try dividing out of
        the numerator first; each peeled binomial joins the denominator of
        the inverse.
        """
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        num = self.num
        out = RatFunc.one(self.datum)
        for (dchar, target), (m, _rep) in self.den.items():
            out = out * RatFunc(
                self.datum,
                expand_den_factor(self.datum.rank, dchar, target, m),
                None, reduce=False)
        new_den: list = []
        if peel:
            for root, target in peel:
                dchar = tuple(2 * x for x in root.char)
                while num.term_count() > 1:
                    q, r = divide_by_binomial(num, dchar, target)
                    if not r.is_zero():
                        break
                    num = q
                    new_den.append((root, target))
        if num.term_count() != 1:
            raise LaurentError(
                "inverse needs a monomial numerator (after peeling); "
                f"got {num.term_count()} terms")
        (exp, coef), = num.terms.items()
        out = RatFunc(self.datum, out.num.shift(tuple(-x for x in exp))
                      .scale(coef.inverse()), out.den, reduce=False)
        for root, target in new_den:
            out = out.with_den_factor(root, target)
        return out

    def weyl_transform(self, w) -> "RatFunc":
        """The twisted action ^w f: exponents move by w on characters.

        A reduced function stays reduced (the action permutes divisors),
        so no cancellation pass is needed here.
        """
        from . import rootdata

        cmat = rootdata.char_matrix(self.datum, w)
        num = self.num.transform_exponents(cmat)
        den: dict = {}
        for (_dchar, target), (m, rep) in self.den.items():
            root = self.datum.root_from_coords(rep)
            img = self.datum.apply_root_matrix(w, root)
            if img.positive:
                key = (tuple(2 * x for x in img.char), target)
                rep2 = img.coords
            else:
                pos = img.negate()
                key = (tuple(2 * x for x in pos.char), target.inverse())
                rep2 = pos.coords
                num = num.scale((-target) ** (-m)).shift(
                    tuple(2 * m * x for x in pos.char))
            got = den.get(key)
            den[key] = (m, rep2) if got is None else (got[0] + m, rep2)
        return RatFunc(self.datum, num, den, reduce=False)

    def __repr__(self):
        if not self.den:
            return f"RatFunc({self.num!r})"
        return f"RatFunc({self.num!r} / {self.factors()!r})"
