"""Dunkl operators on the polynomial representation and the checks built on them.

Polynomials are written in the variables x_i = alpha_i (the simple roots,
a basis of h*).  A direction y in h is given by its values alpha_i(y), so the
dual basis y_i is the i-th unit vector and d/dx_i is the derivative along y_i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from .exactalg import K1, K2, ExactMatrix, MultiPoly, ParamScalar, as_scalar, monomials, rank_drop_values
from .rootsys import LONG, SHORT, GroupElement, RootSystem


def reflection_scalar(c, eigenvalue=-1):
    """Coefficient 2c/(1 - lambda) of a reflection with nontrivial eigenvalue lambda.

    Every group realized here is real, so lambda = -1 and this is just c.
    Keeping the general form in one place is what would change for complex
    reflection groups.
    """
    lam = Fraction(eigenvalue)
    if lam == 1:
        raise DomainError("a reflection cannot have eigenvalue 1 as its nontrivial eigenvalue")
    return c * (Fraction(2) / (1 - lam))


@dataclass(frozen=True)
class ParamFunction:
    """Reflection-invariant parameter: one value per root-length class."""
    values: tuple  # ((class, value), ...)

    @staticmethod
    def make(rs: RootSystem, long=None, short=None) -> "ParamFunction":
        classes = {s.length_class for s in rs.reflections}
        vals = []
        if LONG in classes:
            if long is None:
                raise DomainError("missing value for long roots")
            vals.append((LONG, as_scalar(long)))
        if SHORT in classes:
            vals.append((SHORT, as_scalar(long if short is None else short)))
        elif short is not None and as_scalar(short) != as_scalar(long):
            raise DomainError(f"{rs.cartan_type} has one root length; a separate short value makes no sense")
        return ParamFunction(tuple(vals))

    @staticmethod
    def equal(rs: RootSystem, c) -> "ParamFunction":
        return ParamFunction.make(rs, c, c)

    @staticmethod
    def symbolic(rs: RootSystem) -> "ParamFunction":
        """K1 on long roots, K2 on short roots (K1 alone when simply laced)."""
        two = len({s.length_class for s in rs.reflections}) == 2
        return ParamFunction.make(rs, K1, K2 if two else None)

    @staticmethod
    def symbolic_equal(rs: RootSystem) -> "ParamFunction":
        return ParamFunction.make(rs, K1, K1)

    def __getitem__(self, cls):
        for k, v in self.values:
            if k == cls:
                return v
        raise KeyError(cls)

    def of(self, reflection) -> object:
        return self[reflection.length_class]

    def is_symbolic(self) -> bool:
        return any(isinstance(v, ParamScalar) for _, v in self.values)

    def total(self, rs: RootSystem):
        """Sum of c_s over all reflections."""
        acc = Fraction(0)
        for s in rs.reflections:
            acc = acc + self.of(s)
        return acc


# --- group action on polynomials ----------------------------------------------


def linear_images(w_matrix) -> list[MultiPoly]:
    """Images of the variables x_j under w: x_j -> sum_k M[k][j] x_k."""
    n = len(w_matrix)
    return [MultiPoly.linear([w_matrix[k][j] for k in range(n)]) for j in range(n)]


def act(w, f: MultiPoly, order=None) -> MultiPoly:
    """(w.f)(v) = f(w^{-1} v), for w a GroupElement or a matrix on h*."""
    m = w.matrix if hasattr(w, "matrix") else w
    return f.substitute_linear(linear_images(m), order)


def direction_image(rs: RootSystem, w: GroupElement, a) -> tuple:
    """Values alpha_i(w a) from alpha_i(a)."""
    return w.act_on_point(tuple(a), rs.inverse(w))


def basis_direction(rank, i):
    return tuple(Fraction(int(k == i)) for k in range(rank))


# --- Dunkl operators ------------------------------------------------------------


def _difference_quotients(rs: RootSystem, f: MultiPoly, order=None):
    """(s.f - f)/alpha_s for every reflection, divided exactly."""
    out = []
    for s in rs.reflections:
        diff = act(s, f, order) - f
        out.append(diff.exact_divide_linear(s.root) if diff else diff)
    return out


def dunkl_apply_all(rs: RootSystem, c: ParamFunction, f: MultiPoly, directions=None) -> list[MultiPoly]:
    """D_y f for each y in directions (default: the dual basis y_1..y_r)."""
    rs.require_matrices()
    if directions is None:
        directions = [basis_direction(rs.rank, i) for i in range(rs.rank)]
    quots = _difference_quotients(rs, f)
    out = []
    for a in directions:
        res = f.directional_derivative(a)
        for s, q in zip(rs.reflections, quots):
            alpha_a = sum((x * y for x, y in zip(s.root, a)), Fraction(0))
            if alpha_a and q:
                res = res + q.scale(reflection_scalar(c.of(s)) * alpha_a)
        out.append(res)
    return out


@dataclass(frozen=True)
class DunklOp:
    rs: RootSystem = field(repr=False)
    c: ParamFunction
    direction: tuple

    def __call__(self, f: MultiPoly) -> MultiPoly:
        return dunkl_apply_all(self.rs, self.c, f, [self.direction])[0]


def apply(d: DunklOp, f: MultiPoly) -> MultiPoly:
    return d(f)


def dunkl(rs: RootSystem, c: ParamFunction, i: int) -> DunklOp:
    return DunklOp(rs, c, basis_direction(rs.rank, i))


def variable(rs: RootSystem, i: int) -> MultiPoly:
    return MultiPoly.variable(rs.rank, i)


def all_monomials(rank: int, max_degree: int):
    for d in range(max_degree + 1):
        for e in monomials(rank, d):
            yield MultiPoly.monomial(e)


# --- relation checks --------------------------------------------------------------


@dataclass
class RelationReport:
    passed: bool
    checks: int
    failures: list = field(default_factory=list)  # (relation, details)

    def summary(self) -> str:
        if self.passed:
            return f"pass ({self.checks} identities)"
        return f"fail: {self.failures[0]}"


def check_relations(rs: RootSystem, c: ParamFunction, degree_bound: int) -> RelationReport:
    """[D_y, D_y'] = 0 and [D_y, x] = (y,x) - sum_s c_s (y,alpha_s)(x,alpha_s^vee) s on all monomials."""
    rs.require_matrices()
    r = rs.rank
    report = RelationReport(True, 0)
    xs = [variable(rs, j) for j in range(r)]
    for f in all_monomials(r, degree_bound):
        df = dunkl_apply_all(rs, c, f)
        # commutativity
        ddf = [dunkl_apply_all(rs, c, g) for g in df]
        for i in range(r):
            for j in range(i + 1, r):
                report.checks += 1
                if ddf[i][j] != ddf[j][i]:
                    report.passed = False
                    report.failures.append(("[D_y, D_y']", {"monomial": str(f), "i": i + 1, "j": j + 1}))
        sf = [act(s, f) for s in rs.reflections]
        for j, x in enumerate(xs):
            dxf = dunkl_apply_all(rs, c, x * f)
            for i in range(r):
                report.checks += 1
                lhs = dxf[i] - x * df[i]
                rhs = f if i == j else MultiPoly(r)
                for s, g in zip(rs.reflections, sf):
                    coeff = s.root[i] * s.coroot[j]
                    if coeff:
                        rhs = rhs - g.scale(reflection_scalar(c.of(s)) * coeff)
                if lhs != rhs:
                    report.passed = False
                    report.failures.append(("[D_y, x]", {"monomial": str(f), "y": i + 1, "x": j + 1}))
    return report


def euler_apply(rs: RootSystem, c: ParamFunction, f: MultiPoly) -> MultiPoly:
    """h = sum_i x_i D_{y_i} + dim h / 2 - sum_s c_s s, on a polynomial."""
    r = rs.rank
    out = f.scale(Fraction(r, 2))
    for i, g in enumerate(dunkl_apply_all(rs, c, f)):
        out = out + variable(rs, i) * g
    for s in rs.reflections:
        out = out - act(s, f).scale(reflection_scalar(c.of(s)))
    return out


def euler_eigenvalue(rs: RootSystem, c: ParamFunction, d: int):
    """Scalar by which h acts on degree-d polynomials: d + dim h/2 - sum_s c_s."""
    return Fraction(d) + Fraction(rs.rank, 2) - c.total(rs)


def euler_check(rs: RootSystem, c: ParamFunction, degree_bound: int) -> RelationReport:
    rs.require_matrices()
    r = rs.rank
    report = RelationReport(True, 0)
    for f in all_monomials(r, degree_bound):
        hf = euler_apply(rs, c, f)
        d = f.degree()
        report.checks += 1
        if hf != f.scale(euler_eigenvalue(rs, c, d)):
            report.passed = False
            report.failures.append(("h scalar", {"monomial": str(f)}))
        for j in range(r):
            x = variable(rs, j)
            report.checks += 1
            if euler_apply(rs, c, x * f) - x * hf != x * f:
                report.passed = False
                report.failures.append(("[h, x]", {"monomial": str(f), "x": j + 1}))
        dfs = dunkl_apply_all(rs, c, f)
        for i in range(r):
            report.checks += 1
            lhs = euler_apply(rs, c, dfs[i]) - dunkl_apply_all(rs, c, hf)[i]
            if lhs != -dfs[i]:
                report.passed = False
                report.failures.append(("[h, y]", {"monomial": str(f), "y": i + 1}))
    return report


def equivariance_check(rs: RootSystem, c: ParamFunction, degree: int, elements) -> bool:
    """w.(D_y f) = D_{w y}(w.f) on all monomials of the given degree."""
    for w in elements:
        for e in monomials(rs.rank, degree):
            f = MultiPoly.monomial(e)
            for i in range(rs.rank):
                y = basis_direction(rs.rank, i)
                lhs = act(w, dunkl_apply_all(rs, c, f, [y])[0])
                rhs = dunkl_apply_all(rs, c, act(w, f), [direction_image(rs, w, y)])[0]
                if lhs != rhs:
                    return False
    return True


# --- matrices of Dunkl operators ---------------------------------------------------


def dunkl_matrix(rs: RootSystem, c: ParamFunction, d: int) -> ExactMatrix:
    """All D_{y_i}: S^d -> S^{d-1} stacked; columns are degree-d monomials."""
    rs.require_matrices()
    if d < 1:
        raise DomainError("degree must be at least 1")
    r = rs.rank
    src = monomials(r, d)
    tgt = monomials(r, d - 1)
    tindex = {e: k for k, e in enumerate(tgt)}
    zero = ParamScalar(0) if c.is_symbolic() else Fraction(0)
    rows = [[zero] * len(src) for _ in range(r * len(tgt))]
    for col, e in enumerate(src):
        images = dunkl_apply_all(rs, c, MultiPoly.monomial(e))
        for i, g in enumerate(images):
            for te, coef in g.terms.items():
                rows[i * len(tgt) + tindex[te]][col] = coef
    return ExactMatrix(rows, len(src))


def degree_one_singular(rs: RootSystem) -> Fraction:
    """The equal-parameter value of c with a degree-1 singular vector (equals 1/h)."""
    rs.require_matrices()
    vals = rank_drop_values(dunkl_matrix(rs, ParamFunction.symbolic_equal(rs), 1))
    if len(vals) != 1:
        raise DomainError(f"expected one degree-1 singular value, found {vals} (reducible type?)")
    return vals[0]
