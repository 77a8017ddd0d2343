"""Sparse exact multivariate polynomials and rational functions.

``MPoly`` stores a polynomial as a map from exponent tuples to nonzero
coefficients over an ordered tuple of variable names.  Coefficients are
Python ints, or :class:`fractions.Fraction` when non-integral; arithmetic is
always exact.  Values are immutable after construction, so every operation
is a pure function and concurrent use is safe.

``RatFun`` is a quotient of two polynomials kept in a canonical form: the
lexicographically least nonzero coefficient of the denominator is scaled to
+1 (for every denominator in this package that is the constant term), and
construction reduces by the polynomial gcd for expressions in at most two
variables.  Equality is the decidable cross-multiplication test a*d == c*b,
so even deliberately unreduced values compare correctly.

gcd support is exactly what quotient reduction needs: univariate over the
rationals, and bivariate via content / primitive-part with a primitive
pseudo-remainder sequence.  There is no factorization over extensions and no
general multivariate gcd.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd as _igcd

from . import unipoly
from .unipoly import NotDivisible

BigRat = Fraction

# Exponents are packed into a single int (first variable in the highest
# bits, so integer order == lex order) for the multiplication inner loop.
_PACK_BITS = 28
_PACK_MASK = (1 << _PACK_BITS) - 1


def _coeff(value):
    """Normalize a number to int when integral, Fraction otherwise."""
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    raise TypeError(f"unsupported coefficient type {type(value).__name__}")


def rat_from_str(text):
    """Parse 'p/q' or 'p' decimal strings into a BigRat."""
    return Fraction(text.strip())


def rat_to_str(value):
    """Serialize a BigRat as 'p/q' (or 'p' when integral)."""
    return str(Fraction(value))


class MPoly:
    """Immutable sparse polynomial over the rationals in named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms, _clean=True):
        if _clean:
            variables = tuple(variables)
            cleaned = {}
            for exp, c in terms.items():
                c = _coeff(c)
                if c != 0:
                    cleaned[tuple(exp)] = c
            # Drop variables that appear in no term so that equal polynomials
            # built over different variable sets compare equal.
            if variables:
                used = [False] * len(variables)
                for exp in cleaned:
                    for i, e in enumerate(exp):
                        if e:
                            used[i] = True
                if not all(used):
                    keep = [i for i, u in enumerate(used) if u]
                    variables = tuple(variables[i] for i in keep)
                    cleaned = {
                        tuple(exp[i] for i in keep): c for exp, c in cleaned.items()
                    }
            terms = cleaned
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- construction -----------------------------------------------------

    @classmethod
    def const(cls, value):
        value = _coeff(value)
        if value == 0:
            return cls((), {}, _clean=False)
        return cls((), {(): value}, _clean=False)

    @classmethod
    def var(cls, name):
        return cls((name,), {(1,): 1}, _clean=False)

    @classmethod
    def from_dict(cls, variables, terms):
        return cls(variables, terms)

    # -- basic queries -----------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_const(self):
        return not self.vars

    def const_value(self):
        if self.vars:
            raise ValueError("polynomial is not constant")
        return Fraction(self.terms.get((), 0))

    def degree(self, var):
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def coeff(self, exponents):
        """Coefficient of the monomial with the given exponent tuple."""
        return self.terms.get(tuple(exponents), 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"MPoly({mpoly_to_text(self)!r})"

    def __str__(self):
        return mpoly_to_text(self)

    # -- variable alignment -------------------------------------------------

    def _embed(self, variables):
        """Re-express the terms over a superset tuple of variables."""
        if variables == self.vars:
            return self.terms
        pos = [variables.index(v) for v in self.vars]
        n = len(variables)
        out = {}
        for exp, c in self.terms.items():
            e = [0] * n
            for p, ei in zip(pos, exp):
                e[p] = ei
            out[tuple(e)] = c
        return out

    @staticmethod
    def _aligned(a, b):
        if a.vars == b.vars:
            return a.vars, a.terms, b.terms
        variables = tuple(sorted(set(a.vars) | set(b.vars)))
        return variables, a._embed(variables), b._embed(variables)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        variables, ta, tb = MPoly._aligned(self, other)
        out = dict(ta)
        for e, c in tb.items():
            s = out.get(e, 0) + c
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = _coeff(s)
        return MPoly(variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()}, _clean=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coeff(other)
            if other == 0:
                return MPoly.const(0)
            return MPoly(
                self.vars,
                {e: _coeff(c * other) for e, c in self.terms.items()},
                _clean=False,
            )
        if not isinstance(other, MPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return MPoly.const(0)
        variables, ta, tb = MPoly._aligned(self, other)
        if len(ta) > len(tb):
            ta, tb = tb, ta
        n = len(variables)
        if n == 0:
            return MPoly.const(ta[()] * tb[()])
        pa = _pack(ta, n)
        pb = _pack(tb, n)
        out = {}
        get = out.get
        for ea, ca in pa.items():
            for eb, cb in pb.items():
                key = ea + eb
                s = get(key, 0) + ca * cb
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return MPoly(variables, _unpack(out, n))

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k = base_needed
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, MPoly):
            return RatFun(self, other)
        return NotImplemented

    # -- structural operations ------------------------------------------------

    def exact_div(self, divisor):
        """Exact polynomial division; raises NotDivisible if it fails.

        Uses lex term order; intermediate coefficients may leave the integers
        even when both endpoints are integral.
        """
        if isinstance(divisor, (int, Fraction)):
            divisor = MPoly.const(divisor)
        if divisor.is_zero:
            raise ZeroDivisionError("exact division by zero")
        if self.is_zero:
            return MPoly.const(0)
        variables, ta, tb = MPoly._aligned(self, divisor)
        n = len(variables)
        if n == 0:
            return MPoly.const(Fraction(ta[()]) / tb[()])
        work = dict(_pack(ta, n))
        db = _pack(tb, n)
        lead_b = max(db)
        lead_bc = db[lead_b]
        lead_exp = _unpack_one(lead_b, n)
        quot = {}
        heap = [-e for e in work]
        heapq.heapify(heap)
        while heap:
            e = -heapq.heappop(heap)
            c = work.get(e, 0)
            if c == 0:
                continue
            ee = _unpack_one(e, n)
            if any(ei < bi for ei, bi in zip(ee, lead_exp)):
                raise NotDivisible("leading term not divisible")
            qe = e - lead_b
            if isinstance(c, int) and isinstance(lead_bc, int):
                qc = c // lead_bc if c % lead_bc == 0 else Fraction(c, lead_bc)
            else:
                qc = _coeff(Fraction(c) / lead_bc)
            quot[qe] = qc
            del work[e]
            for eb, cb in db.items():
                if eb == lead_b:
                    continue
                key = qe + eb
                s = work.get(key, 0) - qc * cb
                if s == 0:
                    work.pop(key, None)
                else:
                    if key not in work:
                        heapq.heappush(heap, -key)
                    work[key] = _coeff(s)
        if work:
            raise NotDivisible("nonzero remainder")
        return MPoly(variables, _unpack(quot, n))

    def divides(self, other):
        """True when self divides other exactly."""
        try:
            other.exact_div(self)
            return True
        except NotDivisible:
            return False

    def derivative(self, var):
        if var not in self.vars:
            return MPoly.const(0)
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * e[i]
        return MPoly(self.vars, out)

    def subst(self, var, value):
        """Substitute a variable by a number, MPoly, or RatFun.

        Substituting a RatFun returns a RatFun; everything else returns an
        MPoly.  Substitution by a monomial quotient (the y <- v/x style used
        by the multiplicity solver) never performs an actual division: the
        result is assembled over the cleared denominator.
        """
        if var not in self.vars:
            if isinstance(value, RatFun):
                return RatFun.from_mpoly(self)
            return self
        i = self.vars.index(var)
        rest_vars = self.vars[:i] + self.vars[i + 1 :]
        groups = {}
        for e, c in self.terms.items():
            k = e[i]
            re = e[:i] + e[i + 1 :]
            groups.setdefault(k, {})[re] = c
        layers = {k: MPoly(rest_vars, t) for k, t in groups.items()}
        if isinstance(value, (int, Fraction)):
            value = MPoly.const(value)
        if isinstance(value, MPoly):
            ks = sorted(layers, reverse=True)
            acc = MPoly.const(0)
            prev = None
            for k in ks:
                if prev is not None:
                    acc = acc * value ** (prev - k)
                acc = acc + layers[k]
                prev = k
            if prev:
                acc = acc * value**prev
            return acc
        if isinstance(value, RatFun):
            if len(value.num.terms) == 1 and len(value.den.terms) == 1:
                return self._subst_monomial(var, layers, value)
            kmax = max(layers)
            num = MPoly.const(0)
            for k, part in layers.items():
                num = num + part * value.num**k * value.den ** (kmax - k)
            return RatFun(num, value.den**kmax)
        raise TypeError(f"cannot substitute value of type {type(value).__name__}")

    def _subst_monomial(self, var, layers, value):
        kmax = max(layers)
        num = MPoly.const(0)
        for k, part in layers.items():
            num = num + part * value.num**k * value.den ** (kmax - k)
        return RatFun(num, value.den**kmax)

    def eval(self, assignment):
        """Evaluate at numeric values given for every variable."""
        acc = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, ei in zip(self.vars, e):
                if ei:
                    term *= Fraction(assignment[v]) ** ei
            acc += term
        return acc

    def rename(self, mapping):
        """Rename variables; the target names must stay distinct."""
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new_vars)) != len(new_vars):
            raise ValueError("variable renaming collides")
        order = tuple(sorted(range(len(new_vars)), key=lambda i: new_vars[i]))
        variables = tuple(new_vars[i] for i in order)
        terms = {tuple(e[i] for i in order): c for e, c in self.terms.items()}
        return MPoly(variables, terms, _clean=False)

    def unicoeffs(self, main):
        """Dense list of coefficient polynomials w.r.t. one variable."""
        if main not in self.vars:
            return [self] if self.terms else []
        i = self.vars.index(main)
        rest = self.vars[:i] + self.vars[i + 1 :]
        d = self.degree(main)
        buckets = [dict() for _ in range(d + 1)]
        for e, c in self.terms.items():
            buckets[e[i]][e[:i] + e[i + 1 :]] = c
        return [MPoly(rest, b) for b in buckets]

    def content(self):
        """Positive rational c with self = c * (primitive integer polynomial)."""
        if self.is_zero:
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            f = Fraction(c)
            num_gcd = _igcd(num_gcd, abs(f.numerator))
            den_lcm = den_lcm * f.denominator // _igcd(den_lcm, f.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive_part(self):
        c = self.content()
        if c in (0, 1):
            return self
        inv = 1 / c
        return MPoly(
            self.vars,
            {e: _coeff(v * inv) for e, v in self.terms.items()},
            _clean=False,
        )

    # -- serialization ---------------------------------------------------------

    def to_json_terms(self):
        """Sorted term-list serialization: [[exponents, 'coeff'], ...]."""
        return [
            [list(e), rat_to_str(c)]
            for e, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json_terms(cls, variables, data):
        return cls(tuple(variables), {tuple(e): rat_from_str(c) for e, c in data})


def _pack(terms, n):
    if n == 1:
        return {e[0]: c for e, c in terms.items()}
    shifts = tuple(_PACK_BITS * (n - 1 - i) for i in range(n))
    out = {}
    for e, c in terms.items():
        key = 0
        for ei, sh in zip(e, shifts):
            if ei >= (1 << (_PACK_BITS - 1)):
                raise OverflowError("exponent too large to pack")
            key |= ei << sh
        out[key] = c
    return out


def _unpack_one(key, n):
    if n == 1:
        return (key,)
    return tuple((key >> (_PACK_BITS * (n - 1 - i))) & _PACK_MASK for i in range(n))


def _unpack(packed, n):
    return {_unpack_one(k, n): _coeff(c) for k, c in packed.items()}


# -- text form ------------------------------------------------------------------


def _monomial_text(variables, exp):
    parts = []
    for v, e in zip(variables, exp):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def _coeff_text(c):
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def mpoly_to_text(p):
    """Deterministic text form that the expression grammar parses back.

    Terms are ordered by ascending (total degree, exponents).  A leading
    negative term always prints its coefficient explicitly ("-1*v^2"), since
    "-v^2" would read as (-v)^2 under the grammar.
    """
    if p.is_zero:
        return "0"
    pieces = []
    for e, c in sorted(p.terms.items(), key=lambda item: (sum(item[0]), item[0])):
        mono = _monomial_text(p.vars, e)
        c = Fraction(c)
        neg = c < 0
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_coeff_text(mag)}*{mono}"
        else:
            body = _coeff_text(mag)
        if not pieces:
            if neg:
                # explicit coefficient keeps "-x^2" unambiguous
                body = f"-{_coeff_text(mag)}*{mono}" if mono else f"-{_coeff_text(mag)}"
            pieces.append(body)
        else:
            pieces.append(("-" if neg else "+") + body)
    return "".join(pieces)


# -- gcd machinery -----------------------------------------------------------------


def _to_unilist(p, var=None):
    """Dense list of the coefficients of a univariate MPoly."""
    if p.is_zero:
        return []
    if not p.vars:
        return [p.terms[()]]
    if len(p.vars) != 1:
        raise ValueError("polynomial is not univariate")
    d = max(e[0] for e in p.terms)
    out = [0] * (d + 1)
    for e, c in p.terms.items():
        out[e[0]] = c
    return out


def _from_unilist(coeffs, var):
    return MPoly((var,), {(i,): c for i, c in enumerate(coeffs) if c})


def gcd_univariate(a, b):
    """Monic gcd of univariate polynomials over the rationals.

    gcd(a, 0) is the monic normalization of a; gcd(0, 0) = 0.
    """
    variables = sorted(set(a.vars) | set(b.vars))
    if len(variables) > 1:
        raise ValueError("inputs are not univariate over the rationals")
    var = variables[0] if variables else "x"
    la, _ = unipoly.clear_fractions(_to_unilist(a))
    lb, _ = unipoly.clear_fractions(_to_unilist(b))
    g = unipoly.gcd(la, lb)
    if not g:
        return MPoly.const(0)
    lead = Fraction(g[-1])
    return _from_unilist([Fraction(c) / lead for c in g], var)


def xgcd_univariate(a, b):
    """Extended gcd over the rationals: (g, s, t) with g monic, g = s*a + t*b."""
    variables = sorted(set(a.vars) | set(b.vars))
    if len(variables) > 1:
        raise ValueError("inputs are not univariate over the rationals")
    var = variables[0] if variables else "x"
    g, s, t = unipoly.xgcd_frac(_to_unilist(a), _to_unilist(b))
    return _from_unilist(g, var), _from_unilist(s, var), _from_unilist(t, var)


def _nested_from(p, main):
    """Bivariate MPoly -> dense list (in main) of dense integer lists (aux).

    Rational coefficients are cleared; only the primitive structure matters
    to the callers (gcd computations).
    """
    aux = [v for v in p.vars if v != main]
    scale = 1
    for c in p.terms.values():
        if isinstance(c, Fraction):
            scale = scale * c.denominator // _igcd(scale, c.denominator)
    mi = p.vars.index(main) if main in p.vars else None
    dmain = p.degree(main)
    rows = [[] for _ in range(dmain + 1)]
    for e, c in p.terms.items():
        k = e[mi] if mi is not None else 0
        ae = 0
        if aux:
            ai = p.vars.index(aux[0])
            ae = e[ai]
        row = rows[k]
        if len(row) <= ae:
            row.extend([0] * (ae + 1 - len(row)))
        row[ae] = int(c * scale)
    return [unipoly.trim(r) for r in rows], (aux[0] if aux else None)


def _nested_trim(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def _nested_content(rows):
    g = []
    for r in rows:
        g = unipoly.gcd(g, r)
    return g


def _nested_scale_row(rows, c):
    return [unipoly.scale(r, c) for r in rows]


def _nested_mul_poly(rows, q):
    return [unipoly.mul(r, q) for r in rows]


def _nested_pseudo_rem(a, b):
    """Pseudo-remainder in the main variable with aux-polynomial coefficients."""
    rem = [list(r) for r in a]
    db = len(b) - 1
    lead = b[-1]
    while len(rem) - 1 >= db and rem:
        shift_by = len(rem) - 1 - db
        top = rem[-1]
        rem = [unipoly.mul(r, lead) for r in rem]
        for i, bi in enumerate(b):
            rem[shift_by + i] = unipoly.sub(rem[shift_by + i], unipoly.mul(top, bi))
        _nested_trim(rem)
    return rem


def _nested_primitive(rows):
    g = _nested_content(rows)
    if not g or g == [1]:
        return rows
    return [unipoly.divexact(r, g) for r in rows]


def _nested_to_mpoly(rows, main, aux):
    terms = {}
    if aux is None:
        for k, r in enumerate(rows):
            if r:
                terms[(k,)] = r[0]
        return MPoly((main,), terms)
    variables = tuple(sorted((main, aux)))
    mi = variables.index(main)
    for k, r in enumerate(rows):
        for a, c in enumerate(r):
            if c:
                e = [0, 0]
                e[mi] = k
                e[1 - mi] = a
                terms[tuple(e)] = c
    return MPoly(variables, terms)


def mpoly_gcd(a, b):
    """gcd of polynomials in at most two variables.

    Returns a primitive polynomial with positive leading coefficient (monic
    for rational-coefficient univariate inputs after the caller normalizes).
    Anything beyond two variables is out of scope and raises.
    """
    if a.is_zero:
        return b.primitive_part() if not b.is_zero else MPoly.const(0)
    if b.is_zero:
        return a.primitive_part()
    variables = tuple(sorted(set(a.vars) | set(b.vars)))
    if len(variables) == 0:
        return MPoly.const(1)
    if len(variables) == 1:
        var = variables[0]
        la, _ = unipoly.clear_fractions(_to_unilist(a))
        lb, _ = unipoly.clear_fractions(_to_unilist(b))
        return _from_unilist(unipoly.gcd(la, lb), var)
    if len(variables) > 2:
        raise NotImplementedError("gcd beyond two variables is out of scope")
    main = variables[0]
    ra, aux_a = _nested_from(a, main)
    rb, aux_b = _nested_from(b, main)
    aux = aux_a or aux_b or variables[1]
    ca = _nested_content(ra)
    cb = _nested_content(rb)
    cg = unipoly.gcd(ca, cb)
    pa = _nested_primitive(ra)
    pb = _nested_primitive(rb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        if len(pb) == 1:
            # a nonzero aux-only polynomial is primitive, so the gcd of the
            # primitive parts is trivial
            pa = [[1]]
            break
        rem = _nested_pseudo_rem(pa, pb)
        pa, pb = pb, _nested_primitive(_nested_trim(rem))
    g = _nested_primitive(pa)
    result = _nested_to_mpoly([unipoly.mul(r, cg) for r in g] if cg != [1] else g, main, aux)
    # normalize the overall sign: make the lex-greatest term positive
    lead = max(result.terms)
    if result.terms[lead] < 0:
        result = -result
    return result.primitive_part()


def gcd_over_field(a, b, main):
    """gcd of polynomials in ``main`` over the field of rational functions in
    the remaining variable.

    The result is canonical as the primitive integer polynomial with positive
    leading coefficient (the monic representative scaled by a unit of the
    field).
    """
    g = mpoly_gcd(a, b)
    if g.is_zero or len(g.vars) < 2:
        if main in g.vars or g.is_zero:
            return g
        return MPoly.const(1)
    # strip aux-only content: contents are units over the field
    rows, aux = _nested_from(g, main)
    rows = _nested_primitive(rows)
    out = _nested_to_mpoly(rows, main, aux)
    lead = max(out.terms)
    if out.terms[lead] < 0:
        out = -out
    return out


def squarefree_decomposition(p, main):
    """Musser squarefree decomposition w.r.t. ``main`` over the coefficient
    field of the remaining variable.

    Returns a list of (factor, multiplicity) with multiplicities ascending;
    factors are primitive and the product of factor^multiplicity equals the
    primitive part of ``p`` up to a unit of the field.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no squarefree decomposition")
    work = p.primitive_part()
    if main not in work.vars:
        return []
    g = gcd_over_field(work, work.derivative(main), main)
    w = work.exact_div(g) if g.degree(main) > 0 else work
    out = []
    i = 1
    while w.degree(main) > 0:
        y = gcd_over_field(w, g, main)
        fac = w.exact_div(y) if y.degree(main) > 0 else w
        if fac.degree(main) > 0:
            out.append((fac.primitive_part(), i))
        w = y
        if g.degree(main) > 0:
            g = g.exact_div(y) if y.degree(main) > 0 else g
        i += 1
    return out


# -- rational functions ------------------------------------------------------------


class RatFun:
    """Quotient of two MPoly values in canonical form.

    Equality is the exact cross-multiplication test, so values that skipped
    gcd reduction still compare correctly.  ``reduced()`` forces a full gcd
    reduction (available for expressions in at most two variables).
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if isinstance(num, (int, Fraction)):
            num = MPoly.const(num)
        if den is None:
            den = MPoly.const(1)
        if isinstance(den, (int, Fraction)):
            den = MPoly.const(den)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            den = MPoly.const(1)
        else:
            num, den = _cancel_monomial(num, den)
            if reduce and not den.is_const:
                nv = set(num.vars) | set(den.vars)
                if len(nv) <= 2:
                    g = mpoly_gcd(num, den)
                    if not g.is_const:
                        num = num.exact_div(g)
                        den = den.exact_div(g)
        # canonical scale: lex-least nonzero denominator coefficient -> +1
        low = min(den.terms)
        c = Fraction(den.terms[low])
        if c != 1:
            inv = 1 / c
            num = num * inv
            den = den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def from_mpoly(cls, p):
        return cls(p, MPoly.const(1), reduce=False)

    @classmethod
    def const(cls, value):
        return cls(MPoly.const(value), MPoly.const(1), reduce=False)

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den.is_const

    def as_mpoly(self):
        """Lower to MPoly; fails when a non-unit denominator remains."""
        r = self if self.den.is_const else self.reduced()
        if not r.den.is_const:
            raise NotDivisible("denominator is not a unit")
        return r.num * (1 / r.den.const_value())

    def reduced(self):
        return RatFun(self.num, self.den, reduce=True)

    def __eq__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if self.num is other.num and self.den is other.den:
            return True
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __repr__(self):
        return f"RatFun({ratfun_to_text(self)!r})"

    def __str__(self):
        return ratfun_to_text(self)

    def __add__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _as_ratfun(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            raise ValueError("exponent must be an integer")
        if k < 0:
            return RatFun(self.den, self.num, reduce=False) ** (-k)
        return RatFun(self.num**k, self.den**k, reduce=False)

    def subst(self, var, value):
        num = self.num.subst(var, value)
        den = self.den.subst(var, value)
        if isinstance(num, RatFun) or isinstance(den, RatFun):
            num = num if isinstance(num, RatFun) else RatFun.from_mpoly(num)
            den = den if isinstance(den, RatFun) else RatFun.from_mpoly(den)
            return num / den
        return RatFun(num, den)

    def eval(self, assignment):
        d = self.den.eval(assignment)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval(assignment) / d

    def as_constant(self):
        r = self.reduced()
        if r.num.is_const and r.den.is_const:
            return r.num.const_value() / r.den.const_value()
        raise ValueError("rational function is not constant")


def _as_ratfun(value):
    if isinstance(value, RatFun):
        return value
    if isinstance(value, MPoly):
        return RatFun.from_mpoly(value)
    if isinstance(value, (int, Fraction)):
        return RatFun.const(value)
    return NotImplemented


def _cancel_monomial(num, den):
    """Cancel the common monomial content of a fraction's two sides."""
    variables, tn, td = MPoly._aligned(num, den)
    n = len(variables)
    if n == 0:
        return num, den
    mins = None
    for terms in (tn, td):
        for e in terms:
            if mins is None:
                mins = list(e)
            else:
                mins = [min(m, x) for m, x in zip(mins, e)]
            if not any(mins):
                return num, den
    shift_exp = tuple(mins)
    tn = {tuple(a - b for a, b in zip(e, shift_exp)): c for e, c in tn.items()}
    td = {tuple(a - b for a, b in zip(e, shift_exp)): c for e, c in td.items()}
    return MPoly(variables, tn), MPoly(variables, td)


def ratfun_to_text(r):
    if r.den.is_const and r.den.const_value() == 1:
        return mpoly_to_text(r.num)
    return f"({mpoly_to_text(r.num)})/({mpoly_to_text(r.den)})"
