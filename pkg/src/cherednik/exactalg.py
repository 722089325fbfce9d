"""Exact arithmetic: rationals, parameter-dependent scalars, sparse
multivariate polynomials and fraction-free linear algebra.

Rationals are plain ``fractions.Fraction``.  Scalars that depend on the
parameters K1, K2 are ``ParamScalar`` values, backed by sympy's sparse
polynomial ring Q[K1, K2] (only the ring arithmetic, gcd and factorisation
are borrowed from sympy; everything else lives here).
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Sequence

from sympy import divisors
from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .errors import DomainError, InvariantViolation

PRING, _K1, _K2 = ring("K1,K2", QQ, order=grlex)


def _qq(x) -> object:
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, int):
        return QQ(x)
    raise TypeError(f"not an exact rational: {x!r}")


def _frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def to_fraction(x) -> Fraction:
    """Coerce an int, Fraction or constant ParamScalar to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or not isinstance(x, (int, ParamScalar)):
        raise TypeError(f"not an exact rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if not x.is_constant():
        raise DomainError(f"{x} depends on a parameter")
    return x.constant()


def parse_rational(text: str) -> Fraction:
    """Parse '3', '-2/5' into a Fraction; floats are refused."""
    text = text.strip()
    if any(ch in text for ch in ".eE") and not text.lstrip("-+").isdigit():
        raise DomainError(f"expected an exact rational p/q, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"expected an exact rational p/q, got {text!r}") from exc


def fraction_str(x) -> str:
    x = to_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class ParamScalar:
    """Rational function in K1, K2 with rational coefficients.

    Stored as numerator/denominator in Q[K1, K2].  The denominator is kept
    primitive over Z with positive grlex-leading coefficient, and shares no
    factor with the numerator, so equal values have equal representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _canonical=False):
        if not hasattr(num, "ring"):
            num = PRING(_qq(num))
        if den is None:
            den = PRING.one
        elif not hasattr(den, "ring"):
            den = PRING(_qq(den))
        if den.is_zero:
            raise ZeroDivisionError("ParamScalar with zero denominator")
        if not _canonical and den != PRING.one:
            num, den = _normalise(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def k1() -> "ParamScalar":
        return ParamScalar(_K1, _canonical=True)

    @staticmethod
    def k2() -> "ParamScalar":
        return ParamScalar(_K2, _canonical=True)

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def constant(self) -> Fraction:
        return _frac(self.num.LC) / _frac(self.den.LC) if not self.num.is_zero else Fraction(0)

    def is_polynomial(self) -> bool:
        return self.den == PRING.one

    def variables(self) -> set[int]:
        """Indices (0 for K1, 1 for K2) of indeterminates actually present."""
        used = set()
        for poly in (self.num, self.den):
            for i, deg in enumerate(poly.degrees()):
                if deg > 0:
                    used.add(i)
        return used

    def evaluate(self, k1, k2=None) -> Fraction:
        """Substitute rational values; k2 defaults to k1's value being unused."""
        vals = [(_K1, _qq(to_fraction(k1)))]
        if k2 is not None:
            vals.append((_K2, _qq(to_fraction(k2))))
        n = _ground(self.num, vals)
        d = _ground(self.den, vals)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this parameter value")
        return n / d

    def substitute(self, k1=None, k2=None) -> "ParamScalar":
        """Partial substitution; each argument may be a rational or a ParamScalar."""
        images = [ParamScalar(v, _canonical=True) if val is None else as_scalar(val)
                  for v, val in ((_K1, k1), (_K2, k2))]
        return _compose(self.num, images) / _compose(self.den, images)

    # arithmetic ---------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return ParamScalar(PRING(_qq(other)), _canonical=True)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            if self.den == PRING.one:
                return ParamScalar(self.num + o.num, _canonical=True)
            return ParamScalar(self.num + o.num, self.den)
        return ParamScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == PRING.one and o.den == PRING.one:
            return ParamScalar(self.num * o.num, _canonical=True)
        return ParamScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero:
            raise ZeroDivisionError("division by zero ParamScalar")
        if o.num.is_ground and o.den == PRING.one:
            return ParamScalar(self.num.quo_ground(o.num.LC), self.den, _canonical=True)
        return ParamScalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return (ParamScalar(1) / self) ** (-k)
        return ParamScalar(self.num ** k, self.den ** k, _canonical=True)

    def __bool__(self):
        return not self.num.is_zero

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant())
        return hash((self.num, self.den))

    def __repr__(self):
        return f"ParamScalar({self})"

    def __str__(self):
        if self.den == PRING.one:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _ground(poly, vals):
    if poly.is_ground:
        return _frac(poly.LC) if not poly.is_zero else Fraction(0)
    out = poly.evaluate(vals) if len(vals) == 2 else poly.evaluate(*vals[0])
    if hasattr(out, "ring"):
        if not out.is_ground:
            raise DomainError("value depends on K2; supply k2")
        return _frac(out.LC) if not out.is_zero else Fraction(0)
    return _frac(out)


def _compose(poly, images):
    total = ParamScalar(0)
    for (e1, e2), coef in poly.terms():
        total = total + images[0] ** e1 * images[1] ** e2 * _frac(coef)
    return total


def _normalise(num, den):
    g = num.gcd(den)
    if g != PRING.one:
        num = num.exquo(g)
        den = den.exquo(g)
    # make the denominator primitive over Z with positive leading coefficient
    dens = [int(q.denominator) for q in den.coeffs()]
    nums = [int(q.numerator) for q in den.coeffs()]
    scale = Fraction(lcm(*dens), abs(_fold(gcd, nums)))
    if den.LC < 0:
        scale = -scale
    if scale != 1:
        q = _qq(scale)
        num = num.mul_ground(q)
        den = den.mul_ground(q)
    return num, den


K1 = ParamScalar.k1()
K2 = ParamScalar.k2()


def as_scalar(x):
    """Validate an exact coefficient: int -> Fraction, Fraction/ParamScalar kept."""
    if isinstance(x, ParamScalar):
        return x.constant() if x.is_constant() else x
    if isinstance(x, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    raise TypeError(f"inexact or unsupported coefficient {x!r}")


def is_param(x) -> bool:
    return isinstance(x, ParamScalar) and not x.is_constant()


# ---------------------------------------------------------------------------
# multivariate polynomials


class MultiPoly:
    """Sparse polynomial in ``nvars`` variables.

    ``terms`` maps exponent tuples to nonzero coefficients (Fraction or
    ParamScalar).  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None, _clean=False):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            clean = {}
            for exp, coef in dict(terms).items():
                exp = tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent {exp} for {nvars} variables")
                coef = as_scalar(coef)
                if coef:
                    clean[exp] = clean.get(exp, 0) + coef
            self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, nvars, value):
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars, i):
        exp = [0] * nvars
        exp[i] = 1
        return cls(nvars, {tuple(exp): Fraction(1)}, _clean=True)

    @classmethod
    def monomial(cls, exp, coef=Fraction(1)):
        return cls(len(exp), {tuple(exp): coef})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = c
        return cls(n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    __bool__ = lambda self: bool(self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d=None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def coeff(self, exp):
        return self.terms.get(tuple(exp), Fraction(0))

    def _combine(self, other, sign):
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = sign * c if v is None else v + sign * c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out, _clean=True)

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.nvars, other)
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()}, _clean=True)

    def scale(self, s):
        s = as_scalar(s)
        if not s:
            return MultiPoly(self.nvars)
        out = {}
        for e, c in self.terms.items():
            v = c * s
            if v:
                out[e] = v
        return MultiPoly(self.nvars, out, _clean=True)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other, order=None):
        """Product, dropping terms of total degree >= order when given."""
        out: dict = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if order is not None and d1 + sum(e2) >= order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.nvars, {e: c for e, c in out.items() if c}, _clean=True)

    def __pow__(self, k):
        result = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        return self == MultiPoly.constant(self.nvars, other)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def truncate(self, order: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) < order}, _clean=True)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d}, _clean=True)

    def derivative(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return MultiPoly(self.nvars, out, _clean=True)

    def directional_derivative(self, a: Sequence) -> "MultiPoly":
        """Sum_i a[i] * d/dx_i."""
        total = MultiPoly(self.nvars)
        for i, ai in enumerate(a):
            if ai:
                total = total + self.derivative(i).scale(ai)
        return total

    def substitute_linear(self, images: Sequence["MultiPoly"], order=None) -> "MultiPoly":
        """Replace variable j by the polynomial images[j] (typically linear)."""
        cache: dict = {}

        def power(j, k):
            key = (j, k)
            if key not in cache:
                cache[key] = MultiPoly.constant(images[j].nvars, 1) if k == 0 else power(j, k - 1).mul(images[j], order)
            return cache[key]

        total: dict = {}
        nv = images[0].nvars if images else self.nvars
        for e, c in self.terms.items():
            piece = MultiPoly.constant(nv, c)
            for j, k in enumerate(e):
                if k:
                    piece = piece.mul(power(j, k), order)
            for pe, pc in piece.terms.items():
                v = total.get(pe)
                total[pe] = pc if v is None else v + pc
        return MultiPoly(nv, {e: c for e, c in total.items() if c}, _clean=True)

    def divide_linear(self, form: Sequence):
        """Divide by the linear form sum form[i]*x_i; return (quotient, remainder)."""
        lead = next((i for i, a in enumerate(form) if a), None)
        if lead is None:
            raise ZeroDivisionError("division by the zero linear form")
        a = as_scalar(form[lead])
        rem = dict(self.terms)
        quo: dict = {}
        while True:
            top = max((e[lead] for e in rem), default=0)
            if top == 0:
                break
            for e in [e for e in rem if e[lead] == top]:
                c = rem.pop(e)
                qe = list(e)
                qe[lead] -= 1
                qe = tuple(qe)
                t = c / a
                quo[qe] = quo.get(qe, 0) + t
                for i, ai in enumerate(form):
                    if i == lead or not ai:
                        continue
                    me = list(qe)
                    me[i] += 1
                    me = tuple(me)
                    v = rem.get(me, 0) - t * ai
                    if v:
                        rem[me] = v
                    else:
                        rem.pop(me, None)
        quotient = MultiPoly(self.nvars, {e: c for e, c in quo.items() if c}, _clean=True)
        return quotient, MultiPoly(self.nvars, rem, _clean=True)

    def exact_divide_linear(self, form: Sequence) -> "MultiPoly":
        q, r = self.divide_linear(form)
        if r:
            raise InvariantViolation(f"polynomial not divisible by linear form {list(form)}")
        return q

    def map_coeffs(self, fn) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            v = as_scalar(fn(c))
            if v:
                out[e] = v
        return MultiPoly(self.nvars, out, _clean=True)

    def evaluate_params(self, k1, k2=None) -> "MultiPoly":
        return self.map_coeffs(lambda c: c.evaluate(k1, k2) if isinstance(c, ParamScalar) else c)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            cs = str(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"({cs})*{mono}" if is_param(c) or "/" in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def monomials(nvars: int, d: int) -> list[tuple]:
    """Exponent tuples of total degree d, in descending lexicographic order."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - first):
            out.append((first,) + rest)
    return out


# ---------------------------------------------------------------------------
# matrices and fraction-free elimination


class ExactMatrix:
    """Rectangular matrix over Q or over the parameter field Q(K1, K2)."""

    __slots__ = ("nrows", "ncols", "rows", "field")

    def __init__(self, rows, ncols=None, field=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DomainError("matrix rows have different lengths")
        conv = [[as_scalar(x) for x in r] for r in rows]
        has_param = any(is_param(x) for r in conv for x in r)
        if field is None:
            field = "param" if has_param else "QQ"
        if field not in ("QQ", "param"):
            raise DomainError(f"unknown field {field!r}")
        if field == "QQ" and has_param:
            raise DomainError("mixed-field matrix: parameter entries in a rational matrix")
        self.nrows = len(conv)
        self.ncols = ncols
        self.rows = tuple(tuple(r) for r in conv)
        self.field = field

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows and self.ncols == other.ncols

    def apply(self, vec):
        return [sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.rows]

    def substitute(self, k1, k2=None) -> "ExactMatrix":
        return ExactMatrix(
            [[x.evaluate(k1, k2) if isinstance(x, ParamScalar) else x for x in r] for r in self.rows],
            self.ncols,
            field="QQ",
        )

    def rank(self) -> int:
        return bareiss(_cleared_rows(self))[1].__len__()

    def variables(self) -> set[int]:
        used = set()
        for r in self.rows:
            for x in r:
                if isinstance(x, ParamScalar):
                    used |= x.variables()
        return used

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in r] for r in self.rows]})"


def _cleared_rows(m: ExactMatrix):
    """Scale each row to ring entries: integers (Q case) or Q[K1,K2] polynomials."""
    out = []
    if m.field == "QQ":
        for r in m.rows:
            den = lcm(*(x.denominator for x in r)) if r else 1
            out.append([int(x * den) for x in r])
        return out
    for r in m.rows:
        den = PRING.one
        for x in r:
            d = x.den if isinstance(x, ParamScalar) else PRING(_qq(Fraction(x.denominator)))
            if d != PRING.one:
                den = den * d.exquo(den.gcd(d))
        row = []
        for x in r:
            if isinstance(x, ParamScalar):
                row.append((x.num * den).exquo(x.den))
            else:
                row.append(den.mul_ground(_qq(x)))
        out.append(row)
    return out


def _size(x):
    if isinstance(x, int):
        return abs(x)
    return (sum(x.degrees()), len(x))


def bareiss(rows):
    """Fraction-free row echelon form.

    Works on lists of ints or of Q[K1,K2] polynomials (exact division is
    asserted).  Returns (echelon rows, pivot columns, pivot row indices in the
    input, last pivot); the last pivot is, up to sign, the minor on those rows
    and columns.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    order = list(range(nrows))
    is_int = bool(m) and ncols and isinstance(m[0][0], int)
    prev = 1 if is_int else PRING.one
    r = 0
    pivcols = []
    for c in range(ncols):
        if r >= nrows:
            break
        cands = [i for i in range(r, nrows) if m[i][c]]
        if not cands:
            continue
        p = min(cands, key=lambda i: _size(m[i][c]))
        m[r], m[p] = m[p], m[r]
        order[r], order[p] = order[p], order[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                val = piv * row_i[j] - mic * row_r[j]
                if is_int:
                    q, rem = divmod(val, prev)
                    if rem:
                        raise InvariantViolation("Bareiss division not exact")
                    row_i[j] = q
                else:
                    row_i[j] = val.exquo(prev) if prev != PRING.one else val
            row_i[c] = 0 if is_int else PRING.zero
        prev = piv
        pivcols.append(c)
        r += 1
    return m, pivcols, order[:r], prev


def _field_div(a, b):
    if isinstance(a, int):
        return Fraction(a, b)
    return ParamScalar(a, b)


def kernel_basis(m: ExactMatrix) -> list[list]:
    """Basis of the right kernel of m, each vector scaled to be primitive."""
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    if m.ncols == 0:
        return []
    rows = _cleared_rows(m) if m.nrows else []
    if rows:
        ech, pivcols, _, _ = bareiss(rows)
    else:
        ech, pivcols = [], []
    is_int = m.field == "QQ"
    zero = Fraction(0) if is_int else ParamScalar(0)
    free = [c for c in range(m.ncols) if c not in pivcols]
    basis = []
    for f in free:
        x = [zero] * m.ncols
        x[f] = Fraction(1) if is_int else ParamScalar(1)
        for k in range(len(pivcols) - 1, -1, -1):
            c = pivcols[k]
            row = ech[k]
            acc = zero
            for j in range(c + 1, m.ncols):
                if row[j] and x[j]:
                    coef = Fraction(row[j]) if is_int else ParamScalar(row[j], _canonical=True)
                    acc = acc + coef * x[j]
            x[c] = -acc / (Fraction(row[c]) if is_int else ParamScalar(row[c], _canonical=True))
        basis.append(_primitive_vector(x, is_int))
    return basis


def _primitive_vector(x, is_int):
    if is_int:
        den = lcm(*(v.denominator for v in x))
        ints = [int(v * den) for v in x]
        g = _fold(gcd, ints)
        lead = next(v for v in ints if v)
        g = g if lead > 0 else -g
        return [Fraction(v, g) for v in ints]
    den = PRING.one
    for v in x:
        if v:
            den = den * v.den.exquo(den.gcd(v.den))
    polys = [(v.num * den).exquo(v.den) if v else PRING.zero for v in x]
    g = PRING.zero
    for p in polys:
        if p:
            g = p if g.is_zero else g.gcd(p)
    polys = [p.exquo(g) if p else p for p in polys]
    lead = next(p for p in polys if p)
    s = lead.LC
    out = []
    for p in polys:
        p = p.quo_ground(s) if p else p
        out.append(ParamScalar(p, _canonical=True))
    return [v.constant() if v.is_constant() else v for v in out]


def rank(m: ExactMatrix) -> int:
    return m.rank()


def univariate_coeffs(p) -> tuple[list[Fraction], int | None]:
    """Ascending coefficient list of a one-indeterminate polynomial and which indeterminate."""
    if isinstance(p, ParamScalar):
        if not p.is_polynomial():
            raise DomainError("expected a polynomial, got a rational function")
        poly = p.num
    elif hasattr(p, "ring"):
        poly = p
    else:
        return [to_fraction(c) for c in p], None
    if not poly:
        return [], None
    used = [i for i, d in enumerate(poly.degrees()) if d > 0]
    if len(used) > 1:
        raise DomainError("polynomial depends on both K1 and K2")
    var = used[0] if used else 0
    deg = poly.degrees()[var]
    coeffs = [Fraction(0)] * (deg + 1)
    for exps, c in poly.terms():
        coeffs[exps[var]] = _frac(c)
    return coeffs, (used[0] if used else None)


def rational_roots(p) -> list[Fraction]:
    """All rational roots (no multiplicity) by the rational root theorem."""
    coeffs, _ = univariate_coeffs(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise DomainError("the zero polynomial has every value as a root")
    roots = set()
    lo = 0
    while coeffs[lo] == 0:
        lo += 1
    if lo:
        roots.add(Fraction(0))
    coeffs = coeffs[lo:]
    if len(coeffs) == 1:
        return sorted(roots)
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = _fold(gcd, ints)
    ints = [v // g for v in ints]
    a0, an = abs(ints[0]), abs(ints[-1])

    def value(x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(ints):
            acc = acc * x + c
        return acc

    for num in divisors(a0):
        for den_ in divisors(an):
            if gcd(num, den_) != 1:
                continue
            for sgn in (1, -1):
                x = Fraction(sgn * num, den_)
                if value(x) == 0:
                    roots.add(x)
    return sorted(roots)


def rank_drop_values(m: ExactMatrix) -> list[Fraction]:
    """Rational parameter values where a generically injective matrix loses rank.

    Candidates are the rational roots of the gcd of several maximal minors
    (obtained from Bareiss runs on reordered rows); each candidate is then
    confirmed by substitution, so the answer is exact.
    """
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    used = m.variables()
    if len(used) > 1:
        raise DomainError("rank_drop_values needs a single indeterminate")
    rows = _cleared_rows(m)
    ech, pivcols, pivrows, last = bareiss(rows)
    if len(pivcols) < m.ncols:
        raise DomainError("matrix is rank deficient for every parameter value")
    if not used:
        return []
    var = used.pop()
    g = last
    for shift in range(1, min(6, m.nrows)):
        rotated = rows[shift:] + rows[:shift]
        _, pc, _, other = bareiss(rotated)
        if len(pc) == m.ncols:
            g = g.gcd(other)
        if g.is_ground:
            break
    if g.is_ground:
        return []
    found = []
    for root in rational_roots(ParamScalar(g, _canonical=True)):
        vals = (root, Fraction(0)) if var == 0 else (Fraction(0), root)
        try:
            sub = m.substitute(*vals)
        except ZeroDivisionError:
            continue
        if sub.rank() < m.ncols:
            found.append(root)
    return sorted(found)


def minor_gcd(m: ExactMatrix, samples: int = 8):
    """gcd of a deterministic sample of nonzero maximal minors (a multiple of the true gcd)."""
    rows = _cleared_rows(m)
    _, pivcols, _, g = bareiss(rows)
    if len(pivcols) < m.ncols:
        raise DomainError("matrix is rank deficient for every parameter value")
    n = len(rows)
    tried = 0
    for shift in range(1, n):
        if tried >= samples or g.is_ground:
            break
        _, pc, _, other = bareiss(rows[shift:] + rows[:shift])
        if len(pc) == m.ncols:
            g = g.gcd(other)
            tried += 1
    for shift in range(n):
        if tried >= 2 * samples or g.is_ground:
            break
        rev = list(reversed(rows[shift:] + rows[:shift]))
        _, pc, _, other = bareiss(rev)
        if len(pc) == m.ncols:
            g = g.gcd(other)
            tried += 1
    return g


def poly_factors(g) -> list:
    """Irreducible factors over Q of a Q[K1,K2] polynomial (constants dropped)."""
    if g.is_ground:
        return []
    _, facs = g.factor_list()
    return [f for f, _ in facs if not f.is_ground]


def rref(vectors) -> tuple[list[list], list[int]]:
    """Reduced row echelon basis of the span of rational vectors, with pivot columns."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    ncols = len(rows[0]) if rows else 0
    out, pivots = [], []
    for c in range(ncols):
        p = next((i for i in range(len(out), len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        k = len(out)
        rows[k], rows[p] = rows[p], rows[k]
        piv = rows[k][c]
        rows[k] = [x / piv for x in rows[k]]
        for i in range(len(rows)):
            if i != k and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[k])]
        out.append(rows[k])
        pivots.append(c)
    return rows[:len(out)], pivots


class Span:
    """A subspace of Q^n in reduced echelon form; coordinates are read at the pivots."""

    def __init__(self, vectors, ncols=None):
        self.rows, self.pivots = rref(vectors)
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def coords(self, v):
        """Coordinates of v in the echelon basis; None when v is outside the span."""
        v = [Fraction(x) for x in v]
        cs = [v[p] for p in self.pivots]
        rest = list(v)
        for c, r in zip(cs, self.rows):
            if c:
                rest = [x - c * y for x, y in zip(rest, r)]
        return None if any(rest) else cs

    def __contains__(self, v):
        return self.coords(v) is not None


def determinant(rows):
    """Determinant over Q or Q(K1, K2) by elimination with division."""
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        piv = m[c][c]
        det = det * piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / piv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det
