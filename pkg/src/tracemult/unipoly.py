"""Dense univariate polynomial helpers over exact coefficients.

A polynomial is a plain list of coefficients indexed by exponent, with no
trailing zeros; ``[]`` is the zero polynomial.  Coefficients are Python ints
or :class:`fractions.Fraction`; nothing here ever touches a float.  These
routines back the heavier machinery (gcd reduction, fraction-free
elimination, series coefficient extraction) and are deliberately free of any
polynomial-class overhead.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd


class NotDivisible(ArithmeticError):
    """An exact division left a nonzero remainder."""


def trim(p):
    """Strip trailing zeros in place and return the list."""
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    """Degree of p, with deg 0 = -1."""
    return len(p) - 1


def is_zero(p):
    return not p


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    out = list(p)
    if len(out) < len(q):
        out.extend([0] * (len(q) - len(out)))
    for i, c in enumerate(q):
        out[i] -= c
    return trim(out)


def scale(p, c):
    if c == 0:
        return []
    return [ci * c for ci in p]


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, ci in enumerate(p):
        if ci == 0:
            continue
        for j, cj in enumerate(q):
            if cj:
                out[i + j] += ci * cj
    return trim(out)


def shift(p, k):
    """Multiply by x^k."""
    if not p:
        return []
    return [0] * k + list(p)


def eval_at(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def deriv(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def content(p):
    """gcd of integer coefficients (nonnegative); 0 for the zero polynomial."""
    g = 0
    for c in p:
        g = _igcd(g, c)
        if g == 1:
            return 1
    return g


def primitive(p):
    """Divide out the integer content; sign of the leading coefficient kept."""
    g = content(p)
    if g in (0, 1):
        return list(p)
    return [c // g for c in p]


def clear_fractions(p):
    """Return (integer polynomial q, Fraction s) with p = s * q, q primitive.

    The sign convention puts the sign into s so that q has positive leading
    coefficient.  Zero maps to ([], Fraction(0)).
    """
    if not p:
        return [], Fraction(0)
    den_lcm = 1
    for c in p:
        if isinstance(c, Fraction):
            den_lcm = den_lcm * c.denominator // _igcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in p]
    g = content(ints)
    ints = [c // g for c in ints]
    sign = 1
    if ints[-1] < 0:
        sign = -1
        ints = [-c for c in ints]
    return ints, Fraction(sign * g, den_lcm)


def divexact(p, d):
    """Exact division p / d; raises NotDivisible on a nonzero remainder.

    Works for int or Fraction coefficients.  When both inputs are integer
    polynomials and the division is exact, the quotient is integer as well.
    """
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if not p:
        return []
    if len(p) < len(d):
        raise NotDivisible("degree of dividend below divisor")
    rem = list(p)
    dn = len(d)
    lead = d[-1]
    q = [0] * (len(p) - dn + 1)
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + dn - 1]
        if c == 0:
            continue
        if isinstance(c, int) and isinstance(lead, int):
            qc, r = divmod(c, lead)
            if r:
                raise NotDivisible("leading coefficient does not divide")
        else:
            qc = Fraction(c) / lead
        q[k] = qc
        for i, di in enumerate(d):
            rem[k + i] -= qc * di
    if any(c != 0 for c in rem):
        raise NotDivisible("nonzero remainder")
    return trim(q)


def divmod_frac(p, d):
    """Quotient and remainder over the rationals."""
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    dn = len(d)
    if len(p) < dn:
        return [], trim(rem)
    lead = Fraction(d[-1])
    q = [Fraction(0)] * (len(p) - dn + 1)
    for k in range(len(q) - 1, -1, -1):
        c = rem[k + dn - 1]
        if c == 0:
            continue
        qc = c / lead
        q[k] = qc
        for i, di in enumerate(d):
            rem[k + i] -= qc * di
    return trim(q), trim(rem)


def pseudo_rem(p, q):
    """Pseudo-remainder lc(q)^(deg p - deg q + 1) * p mod q over the integers."""
    if not q:
        raise ZeroDivisionError("pseudo-division by zero")
    rem = list(p)
    dq = len(q) - 1
    lead = q[-1]
    while len(rem) - 1 >= dq and rem:
        shift_by = len(rem) - 1 - dq
        top = rem[-1]
        rem = [c * lead for c in rem]
        for i, ci in enumerate(q):
            rem[shift_by + i] -= top * ci
        trim(rem)
    return rem


def gcd(p, q):
    """Primitive gcd of integer polynomials via the primitive PRS.

    Result is primitive with positive leading coefficient; gcd with the zero
    polynomial returns the primitive part of the other argument.
    """
    a = primitive(p)
    b = primitive(q)
    if a and a[-1] < 0:
        a = neg(a)
    if b and b[-1] < 0:
        b = neg(b)
    while b:
        a, b = b, primitive(pseudo_rem(a, b))
        if b and b[-1] < 0:
            b = neg(b)
    return a


def lcm(p, q):
    if not p or not q:
        return []
    g = gcd(p, q)
    return mul(divexact(p, g), q)


def xgcd_frac(p, q):
    """Extended gcd over the rationals: returns (g, s, t) with g monic.

    g = s*p + t*q.  gcd(0, 0) = (0, 0, 0) by convention.
    """
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in q]
    sa, sb = [Fraction(1)], []
    ta, tb = [], [Fraction(1)]
    while b:
        quo, rem = divmod_frac(a, b)
        a, b = b, rem
        sa, sb = sb, sub(sa, mul(quo, sb))
        ta, tb = tb, sub(ta, mul(quo, tb))
    if not a:
        return [], [], []
    lead = a[-1]
    inv = Fraction(1) / lead
    return scale(a, inv), scale(sa, inv), scale(ta, inv)
