"""Where the polynomial representation is reducible.

Two independent sources are kept side by side: singular-vector scans built
from explicit Dunkl matrices, and closed-form line tables (the constant
parameter sets c = j/d_i and the two-parameter line lists for B/C, F4, G2).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .dunkl import ParamFunction, dunkl_apply_all, dunkl_matrix
from .errors import DomainError, InvariantViolation
from .exactalg import (
    PRING,
    ExactMatrix,
    MultiPoly,
    ParamScalar,
    K1,
    kernel_basis,
    minor_gcd,
    monomials,
    poly_factors,
    rank_drop_values,
    _frac,
)
from .rootsys import CartanType, RootSystem, build, degree_table, parabolic_classes


# --- lines -------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Line:
    """a*k1 + b*k2 = rhs with (a, b) coprime integers, first nonzero one positive."""
    a: int
    b: int
    rhs: Fraction

    @staticmethod
    def normal(a, b, l) -> "Line":
        a, b, l = Fraction(a), Fraction(b), Fraction(l)
        if a == 0 and b == 0:
            raise DomainError("degenerate line")
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        ia, ib = int(a * den), int(b * den)
        g = gcd(ia, ib)
        ia, ib, rhs = ia // g, ib // g, l * den / g
        if ia < 0 or (ia == 0 and ib < 0):
            ia, ib, rhs = -ia, -ib, -rhs
        return Line(ia, ib, rhs)

    @property
    def height(self) -> int:
        """|l| in the primitive integer form A k1 + B k2 = l."""
        return abs(self.rhs.numerator)

    def integer_form(self) -> tuple[int, int, int]:
        d = self.rhs.denominator
        return self.a * d, self.b * d, self.rhs.numerator

    def contains(self, k1, k2=Fraction(0)) -> bool:
        return self.a * Fraction(k1) + self.b * Fraction(k2) == self.rhs

    def point(self, t=Fraction(0)):
        """A rational point on the line (parametrised by t)."""
        if self.b == 0:
            return self.rhs / self.a, Fraction(t)
        return Fraction(t), (self.rhs - self.a * Fraction(t)) / self.b

    def __str__(self):
        A, B, L = self.integer_form()
        parts = []
        for coef, name in ((A, "k1"), (B, "k2")):
            if coef:
                sign = "-" if coef < 0 else "+"
                mag = "" if abs(coef) == 1 else str(abs(coef))
                parts.append((sign, f"{mag}{name}"))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += sign + body
        return f"{text}={L}"


@dataclass(frozen=True)
class Condition:
    kind: str          # "odd", "coprime", "not_div", "mod"
    n: int = 0
    residues: tuple = ()

    def __call__(self, l: int) -> bool:
        if self.kind == "odd":
            return l % 2 == 1
        if self.kind == "coprime":
            return gcd(l, self.n) == 1
        if self.kind == "not_div":
            return l % self.n != 0
        if self.kind == "mod":
            return l % self.n in self.residues
        raise InvariantViolation(self.kind)

    def __str__(self):
        return {
            "odd": "l odd",
            "coprime": f"gcd(l,{self.n})=1",
            "not_div": f"{self.n}∤l",
            "mod": f"l mod {self.n} in {{{','.join(map(str, self.residues))}}}",
        }[self.kind]


@dataclass(frozen=True)
class LineFamily:
    """Lines a*k_long + b*k_short = l for integers l >= 1 satisfying a condition."""
    a: int
    b: int
    cond: Condition
    label: str = ""

    def value(self, k_long, k_short):
        return self.a * Fraction(k_long) + self.b * Fraction(k_short)

    def contains(self, k_long, k_short) -> int | None:
        """The l of the member through the point, or None."""
        v = self.value(k_long, k_short)
        if v.denominator == 1 and v >= 1 and self.cond(int(v)):
            return int(v)
        return None

    def members(self, max_l: int):
        for l in range(1, max_l + 1):
            if self.cond(l):
                yield l

    def __str__(self):
        if self.a and self.b:
            lhs = f"{self.a}k_long+{self.b}k_short"
        elif self.a:
            lhs = f"{self.a}k_long"
        else:
            lhs = f"{self.b}k_short"
        return f"{lhs}=l, {self.cond}"


def djo_lines(t: CartanType) -> list[LineFamily]:
    """Closed-form reducibility families in the type's own (k_long, k_short).

    Simply laced types get the constant-parameter families c = l/d, d a
    degree, d not dividing l.  For C_n the B_n table is used with the two
    parameters exchanged: the table's first parameter belongs to the
    reflections in e_i +- e_j, which are the short roots of C_n.
    """
    if isinstance(t, str):
        t = CartanType.parse(t)
    f, n = t.family, t.rank
    if f in "HI":
        raise DomainError(f"no two-parameter line table for {t}")
    if t.simply_laced:
        return [LineFamily(d, 0, Condition("not_div", d), f"c={{l}}/{d}") for d in sorted(set(degree_table(t)))]
    fams = []
    if f in "BC":
        for j in range(n):
            fams.append((2 * j, 2, Condition("odd"), f"2jk1+2k2=l, j={j}"))
        for j in range(2, n + 1):
            fams.append((j, 0, Condition("coprime", j), f"jk1=l, j={j}"))
        if f == "C":
            fams = [(b, a, cond, lab + " (roles exchanged)") for a, b, cond, lab in fams]
    elif f == "F":
        odd = Condition("odd")
        fams = [
            (2, 0, odd, "2k1=l"), (0, 2, odd, "2k2=l"),
            (4, 2, odd, "2k1+2u=l"), (2, 4, odd, "2k2+2u=l"),
            (3, 0, Condition("not_div", 3), "3k1=l"), (0, 3, Condition("not_div", 3), "3k2=l"),
            (2, 2, odd, "2u=l"), (4, 4, odd, "4u=l"),
            (6, 6, Condition("mod", 12, (1, 5, 7, 11)), "6u=l"),
        ]
    elif f == "G":
        fams = [
            (2, 0, Condition("odd"), "2k1=l"), (0, 2, Condition("odd"), "2k2=l"),
            (3, 3, Condition("not_div", 3), "3u=l"),
        ]
    return [LineFamily(a, b, cond, lab) for a, b, cond, lab in fams]


def family_lines(fam: LineFamily, window: int, to_parent=lambda a, b: (a, b)) -> set[Line]:
    """Members of a family whose normal form has height <= window."""
    out = set()
    pa, pb = to_parent(fam.a, fam.b)
    scale = max(abs(pa), abs(pb), 1)
    for l in fam.members(window * scale):
        line = Line.normal(pa, pb, l)
        if line.height <= window:
            out.add(line)
    return out


def djo_line_set(t: CartanType, window: int = 24) -> set[Line]:
    out = set()
    for fam in djo_lines(t):
        out |= family_lines(fam, window)
    return out


def on_djo_lines(t: CartanType, k_long, k_short=None):
    """First family (and its l) through the point, or None."""
    if k_short is None:
        k_short = k_long
    for fam in djo_lines(t):
        l = fam.contains(k_long, k_short)
        if l is not None:
            return fam, l
    return None


def djo_constant_set(t, window) -> list[Fraction]:
    """All c = j/d in (0, window], d a degree, j >= 1 not divisible by d."""
    if isinstance(t, RootSystem):
        degs = t.degrees
    else:
        if isinstance(t, str):
            t = CartanType.parse(t)
        degs = degree_table(t)
    window = Fraction(window)
    out = set()
    for d in set(degs):
        j = 1
        while Fraction(j, d) <= window:
            if j % d:
                out.add(Fraction(j, d))
            j += 1
    return sorted(out)


def in_djo_constant_set(degrees, c) -> bool:
    c = Fraction(c)
    return c > 0 and any(c.denominator > 1 and d % c.denominator == 0 for d in degrees)


# --- cuspidal numbers and strongly singular values -------------------------------


def _divisors_from(degrees) -> set[int]:
    return {k for d in degrees for k in range(2, d + 1) if d % k == 0}


@dataclass(frozen=True)
class CuspidalResult:
    full: tuple
    non_coxeter: tuple


def cuspidal_numbers(t: CartanType) -> CuspidalResult:
    if isinstance(t, str):
        t = CartanType.parse(t)
    rs = build(t)
    div = _divisors_from(rs.degrees)
    covered = set()
    for p in parabolic_classes(rs):
        if p.proper:
            covered |= _divisors_from(p.degrees)
    full = sorted(div - covered)
    h = rs.coxeter_number
    return CuspidalResult(tuple(full), tuple(d for d in full if d != h))


CONVENTIONS = {
    "inclusive": lambda j, d: 1 <= j <= d - 1,   # 1 <= j <= d_i - 1
    "strict": lambda j, d: 1 < j < d - 1,        # the literal 1 < j < d_i - 1
}


def strongly_singular(t, window, convention: str = "inclusive") -> list[Fraction]:
    """Values -j/d_i in [-window, 0) under the chosen inequality on j."""
    if convention not in CONVENTIONS:
        raise DomainError(f"unknown convention {convention!r}; use one of {sorted(CONVENTIONS)}")
    if isinstance(t, str):
        t = CartanType.parse(t)
    degs = t.degrees if isinstance(t, RootSystem) else degree_table(t)
    ok = CONVENTIONS[convention]
    window = Fraction(window)
    out = set()
    for d in set(degs):
        for j in range(1, d):
            v = Fraction(-j, d)
            if ok(j, d) and -window <= v < 0:
                out.add(v)
    return sorted(out)


# --- singular vector scans ------------------------------------------------------


@dataclass
class SingularReport:
    degree: int
    vectors: list = field(default_factory=list)
    values: list = field(default_factory=list)
    lines: list = field(default_factory=list)
    unfactored: list = field(default_factory=list)
    isotype: dict | None = None


@dataclass
class ScanResult:
    reports: list
    dmax: int

    @property
    def reducible(self) -> bool:
        return any(r.vectors for r in self.reports)

    @property
    def singular_degrees(self) -> list[int]:
        return [r.degree for r in self.reports if r.vectors]

    @property
    def conclusive(self) -> bool:
        """True only when a singular vector was found; silence up to dmax proves nothing."""
        return self.reducible


def _vector_to_poly(rank, d, vec) -> MultiPoly:
    return MultiPoly(rank, dict(zip(monomials(rank, d), vec)))


def singular_scan(rs: RootSystem, c: ParamFunction, dmax: int, isotypes: bool = False) -> ScanResult:
    """Kernel of the stacked Dunkl matrix in every degree 1..dmax."""
    rs.require_matrices()
    if dmax < 1:
        raise DomainError("dmax must be at least 1")
    if c.is_symbolic():
        raise DomainError("singular_scan needs numeric parameters; use singular_values_in_degree")
    reports = []
    for d in range(1, dmax + 1):
        kb = kernel_basis(dunkl_matrix(rs, c, d))
        vecs = [_vector_to_poly(rs.rank, d, v) for v in kb]
        for v in vecs:
            if any(dunkl_apply_all(rs, c, v)):
                raise InvariantViolation("reported singular vector is not killed by the Dunkl operators")
        rep = SingularReport(d, vecs)
        if vecs and isotypes:
            rep.isotype = _isotype(rs, vecs)
        reports.append(rep)
    return ScanResult(reports, dmax)


def _isotype(rs, vecs):
    from .branch import decompose_polynomial_span  # lazy: branch is heavier

    try:
        return decompose_polynomial_span(rs, vecs)
    except DomainError:
        return None


def singular_values_in_degree(rs: RootSystem, d: int, two_parameter: bool | None = None):
    """Parameter values where a degree-d singular vector appears.

    Equal-parameter mode returns a sorted list of rationals.  Two-parameter
    mode (default for types with two root lengths) returns a SingularReport
    whose ``lines`` are the rational lines of the minor-gcd locus; any
    irreducible factor of higher degree lands in ``unfactored`` with a warning.
    Isolated points (where singular vectors exist only at a crossing of two
    lines) are not lines and are not reported in this mode.
    """
    rs.require_matrices()
    two_lengths = len({s.length_class for s in rs.reflections}) == 2
    if two_parameter is None:
        two_parameter = two_lengths
    if not two_parameter or not two_lengths:
        return rank_drop_values(dunkl_matrix(rs, ParamFunction.symbolic_equal(rs), d))
    m = dunkl_matrix(rs, ParamFunction.symbolic(rs), d)
    g = minor_gcd(m)
    rep = SingularReport(d)
    for p in poly_factors(g):
        if max(sum(e) for e in p.monoms()) == 1:
            coeffs = {e: _frac(v) for e, v in p.terms()}
            a = coeffs.get((1, 0), Fraction(0))
            b = coeffs.get((0, 1), Fraction(0))
            c0 = coeffs.get((0, 0), Fraction(0))
            line = Line.normal(a, b, -c0)
            if _restricted_rank(m, line) < m.ncols:
                rep.lines.append(line)
        else:
            rep.unfactored.append(str(p))
            warnings.warn(f"degree {d}: irrational or nonlinear component {p} left unfactored")
    rep.lines.sort()
    return rep


def _restricted_rank(m: ExactMatrix, line: Line) -> int:
    """Generic rank of m on the line (one parameter eliminated)."""
    if line.b != 0:
        sub = dict(k2=(line.rhs - line.a * K1) / line.b)
    else:
        sub = dict(k1=ParamScalar(line.rhs / line.a), k2=K1)
    rows = []
    for r in m.rows:
        rows.append([x.substitute(**sub) if isinstance(x, ParamScalar) else x for x in r])
    return ExactMatrix(rows, m.ncols).rank()
