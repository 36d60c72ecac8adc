"""Exact arithmetic in the field Q(q) of rational functions in a formal parameter q.

A scalar is a reduced fraction of integer-coefficient polynomials in q.  The
parameter q is never specialized to a number; every operation is exact.  The
canonical form (gcd-reduced over Z[q], denominator with positive leading
coefficient) makes equality and hashing structural.

>>> q = QScalar.q_power(1)
>>> str(q * q - QScalar.one())
'q^2-1'
>>> str((q * q - QScalar.one()) / (q + q))
'(q^2-1)/(2*q)'
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

__all__ = ["QScalar", "parse_scalar", "scalar_str", "ScalarParseError"]

# Integer polynomials in q, dense low-to-high, no trailing zeros, () is zero.
Coeffs = tuple[int, ...]


def _trim(cs) -> Coeffs:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a: Coeffs) -> Coeffs:
    return tuple(-c for c in a)


def _pmul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _trim(out)


def _content(a: Coeffs) -> int:
    g = 0
    for c in a:
        g = gcd(g, abs(c))
        if g == 1:
            return 1
    return g


def _pdivexact(a: Coeffs, b: Coeffs) -> Coeffs:
    """Exact division in Z[q]; the caller guarantees b | a."""
    if not a:
        return ()
    fa = [Fraction(c) for c in a]
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lb = Fraction(b[-1])
    for k in range(len(quot) - 1, -1, -1):
        c = fa[k + len(b) - 1] / lb
        quot[k] = c
        if c:
            for j, cb in enumerate(b):
                fa[k + j] -= c * cb
    assert all(f == 0 for f in fa[: len(b) - 1]), "inexact polynomial division"
    out = []
    for f in quot:
        assert f.denominator == 1, "non-integer quotient in exact division"
        out.append(f.numerator)
    return _trim(out)


def _pgcd(a: Coeffs, b: Coeffs) -> Coeffs:
    """gcd in Z[q] including integer content, normalized to positive leading coeff."""
    if not a:
        g = b
    elif not b:
        g = a
    else:
        ca, cb = _content(a), _content(b)
        fa = [Fraction(c) for c in a]
        fb = [Fraction(c) for c in b]
        while fb and any(fb):
            # remainder of fa by fb over Q
            fb = _trim_frac(fb)
            lb = fb[-1]
            while len(fa) >= len(fb) and any(fa):
                fa = _trim_frac(fa)
                if len(fa) < len(fb):
                    break
                c = fa[-1] / lb
                for j in range(len(fb)):
                    fa[len(fa) - len(fb) + j] -= c * fb[j]
                fa = _trim_frac(fa)
            fa, fb = fb, fa
        # fa is a gcd over Q; clear denominators and take the primitive part
        den_lcm = 1
        for f in fa:
            den_lcm = den_lcm * f.denominator // gcd(den_lcm, f.denominator)
        ints = [int(f * den_lcm) for f in fa]
        c = _content(tuple(ints))
        g = tuple(x // c for x in ints)
        g = tuple(x * gcd(ca, cb) for x in g)
    if g and g[-1] < 0:
        g = _pneg(g)
    return _trim(g)


def _trim_frac(fs: list[Fraction]) -> list[Fraction]:
    n = len(fs)
    while n and fs[n - 1] == 0:
        n -= 1
    return fs[:n]


def _monomial_valuation(a: Coeffs) -> int:
    for i, c in enumerate(a):
        if c:
            return i
    return 0


class QScalar:
    """An element of Q(q) in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _trim(num)
        den = _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator in Q(q)")
        if not num:
            self.num, self.den = (), (1,)
            return
        if den == (1,):
            self.num, self.den = num, den
            return
        # fast path: monomial denominator c*q^k
        nz = [i for i, c in enumerate(den) if c]
        if len(nz) == 1:
            k = nz[0]
            v = min(k, _monomial_valuation(num))
            c = gcd(abs(den[k]), _content(num))
            num = tuple(x // c for x in num[v:])
            dc = den[k] // c
            if dc < 0:
                num, dc = _pneg(num), -dc
            if dc == 1 and k == v:
                self.num, self.den = num, (1,)
            else:
                self.num, self.den = num, tuple([0] * (k - v) + [dc])
            return
        g = _pgcd(num, den)
        if g != (1,):
            num = _pdivexact(num, g)
            den = _pdivexact(den, g)
        if den[-1] < 0:
            num, den = _pneg(num), _pneg(den)
        self.num, self.den = num, den

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_int(n: int) -> "QScalar":
        return QScalar((n,))

    @staticmethod
    def q_power(k: int) -> "QScalar":
        """The monomial q^k, any integer k."""
        if k >= 0:
            return QScalar((0,) * k + (1,))
        return QScalar((1,), (0,) * (-k) + (1,))

    @staticmethod
    def zero() -> "QScalar":
        return _ZERO

    @staticmethod
    def one() -> "QScalar":
        return _ONE

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_one(self) -> bool:
        return self.num == (1,) and self.den == (1,)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "QScalar") -> "QScalar":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == (1,) and other.den == (1,):
            return QScalar(_padd(self.num, other.num))
        return QScalar(
            _padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
            _pmul(self.den, other.den),
        )

    def __sub__(self, other: "QScalar") -> "QScalar":
        return self + (-other)

    def __neg__(self) -> "QScalar":
        out = object.__new__(QScalar)
        out.num, out.den = _pneg(self.num), self.den
        return out

    def __mul__(self, other: "QScalar") -> "QScalar":
        if self.is_zero() or other.is_zero():
            return _ZERO
        return QScalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    def __truediv__(self, other: "QScalar") -> "QScalar":
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return QScalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def inverse(self) -> "QScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return QScalar(self.den, self.num)

    def __pow__(self, k: int) -> "QScalar":
        if k < 0:
            return self.inverse() ** (-k)
        out = _ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- identity ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QScalar)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"QScalar({scalar_str(self)!r})"

    def __str__(self):
        return scalar_str(self)


_ZERO = QScalar(())
_ONE = QScalar((1,))


# -- text form ----------------------------------------------------------


def _poly_str(cs: Coeffs) -> str:
    if not cs:
        return "0"
    parts = []
    for e in range(len(cs) - 1, -1, -1):
        c = cs[e]
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            head = "" if mag == 1 else f"{mag}*"
            body = f"{head}q" if e == 1 else f"{head}q^{e}"
        parts.append(sign + body)
    return "".join(parts)


def _term_count(cs: Coeffs) -> int:
    return sum(1 for c in cs if c)


def scalar_str(x: QScalar) -> str:
    """Canonical text form; compound sides are parenthesized around '/'."""
    ns = _poly_str(x.num)
    if x.den == (1,):
        return ns
    if _term_count(x.num) > 1:
        ns = f"({ns})"
    ds = _poly_str(x.den)
    # the denominator binds the whole term, so anything beyond a bare
    # integer or a bare power of q gets wrapped
    if not re.fullmatch(r"\d+|q(\^\d+)?", ds):
        ds = f"({ds})"
    return f"{ns}/{ds}"


class ScalarParseError(ValueError):
    pass


_TERM_RE = re.compile(r"([+-]?)(\d+)?(\*?q(\^(-?\d+))?)?")


def _parse_poly(text: str) -> dict[int, int]:
    """Parse a sum of integer terms in q; exponents may be negative."""
    if text.startswith("(") and text.endswith(")"):
        depth = 0
        ok = True
        for i, ch in enumerate(text):
            depth += ch == "("
            depth -= ch == ")"
            if depth == 0 and i < len(text) - 1:
                ok = False
                break
        if ok:
            text = text[1:-1]
    if not text:
        raise ScalarParseError("empty polynomial")
    out: dict[int, int] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"cannot parse scalar near {text[pos:]!r}")
        sign, digits, qpart, _, exp = m.groups()
        if digits is None and qpart is None:
            raise ScalarParseError(f"cannot parse scalar near {text[pos:]!r}")
        coef = int(digits) if digits is not None else 1
        if sign == "-":
            coef = -coef
        e = 0
        if qpart is not None:
            e = int(exp) if exp is not None else 1
        out[e] = out.get(e, 0) + coef
        pos = m.end()
    return out


def _poly_from_terms(terms: dict[int, int]) -> tuple[Coeffs, int]:
    """Return (integer polynomial, power-of-q shift) with shift <= 0."""
    live = {e: c for e, c in terms.items() if c}
    if not live:
        return (), 0
    shift = min(0, min(live))
    top = max(live)
    cs = [0] * (top - shift + 1)
    for e, c in live.items():
        cs[e - shift] = c
    return _trim(cs), shift


def parse_scalar(text: str) -> QScalar:
    """Parse the canonical scalar grammar, e.g. 'q^2-1' or '(q^2-1)/(2*q)'."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar")
    depth = 0
    split = -1
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ScalarParseError(f"unbalanced parentheses in {text!r}")
        elif ch == "/" and depth == 0:
            split = i
            break
    if depth != 0 and split < 0:
        raise ScalarParseError(f"unbalanced parentheses in {text!r}")
    if split < 0:
        n_cs, n_sh = _poly_from_terms(_parse_poly(s))
        d_cs, d_sh = (1,), 0
    else:
        n_cs, n_sh = _poly_from_terms(_parse_poly(s[:split]))
        d_cs, d_sh = _poly_from_terms(_parse_poly(s[split + 1 :]))
    if not d_cs:
        raise ScalarParseError("zero denominator")
    shift = n_sh - d_sh
    if shift >= 0:
        n_cs = _pmul(n_cs, (0,) * shift + (1,))
    else:
        d_cs = _pmul(d_cs, (0,) * (-shift) + (1,))
    return QScalar(n_cs, d_cs)


if __name__ == "__main__":
    import doctest

    doctest.testmod()
