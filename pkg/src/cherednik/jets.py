"""Truncated-jet check of the completion isomorphism at a point b of h.

Functions on the formal neighbourhood of the orbit W b are modelled as maps
f: W -> jets at b with f(h w) = h.f(w) for h in W' = W_b.  A polynomial F
gives such a map through f(w)(x) = (w.F)(b + x).  The operators theta(u),
theta(x_alpha), theta(y_a) act on these maps, and the Cherednik relations
are checked on random equivariant data up to a stated jet order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .dunkl import ParamFunction, act, direction_image, dunkl_apply_all, reflection_scalar
from .errors import DomainError
from .exactalg import MultiPoly, monomials
from .rootsys import GroupElement, ParabolicClass, RootSystem, enumerate_group, parabolic_class

COEF_BOUND = 5


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class JetSeries:
    """Power series in the shifted coordinates, exact in total degrees < order."""
    poly: MultiPoly
    order: int
    lost: int = 0

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("jet order underflow")
        if any(sum(e) >= self.order for e in self.poly.terms):
            object.__setattr__(self, "poly", self.poly.truncate(self.order))

    def _meet(self, other):
        return min(self.order, other.order), max(self.lost, other.lost)

    def __add__(self, other):
        o, l = self._meet(other)
        return JetSeries((self.poly + other.poly).truncate(o), o, l)

    def __sub__(self, other):
        o, l = self._meet(other)
        return JetSeries((self.poly - other.poly).truncate(o), o, l)

    def scale(self, s):
        return JetSeries(self.poly.scale(s), self.order, self.lost)

    def mul(self, other: "JetSeries"):
        o, l = self._meet(other)
        return JetSeries(self.poly.mul(other.poly, o), o, l)

    def act(self, h: GroupElement):
        return JetSeries(act(h, self.poly, self.order), self.order, self.lost)

    def truncate(self, k):
        return JetSeries(self.poly.truncate(k), min(k, self.order), self.lost)

    def agrees(self, other, k) -> bool:
        return self.poly.truncate(k) == other.poly.truncate(k)


class JetContext:
    """W, the parabolic W' = W_b, the base point b and a choice of coset representatives."""

    def __init__(self, rs: RootSystem, p, b=None, c: ParamFunction | None = None, order: int = 6,
                 representatives: str = "minimal"):
        rs.require_matrices()
        if not isinstance(p, ParabolicClass):
            p = parabolic_class(rs, p)
        if order < 2:
            raise DomainError("jet order must be at least 2")
        self.rs, self.parabolic, self.order = rs, p, order
        self.c = c if c is not None else ParamFunction.equal(rs, 0)
        nodes = set(p.nodes)
        if b is None:
            b = tuple(Fraction(0) if i in nodes else Fraction(1) for i in range(rs.rank))
        self.b = tuple(Fraction(x) for x in b)
        self.inner_refl = []
        self.outer_refl = []
        for s in rs.reflections:
            in_wp = all(s.root[i] == 0 for i in range(rs.rank) if i not in nodes)
            vanishes = _dot(s.root, self.b) == 0
            if in_wp != vanishes:
                raise DomainError(f"stabilizer mismatch: W_b is not the parabolic on nodes {p.nodes}")
            (self.inner_refl if in_wp else self.outer_refl).append(s)
        self.elements = enumerate_group(rs)
        self.inverse = {w.matrix: rs.inverse(w) for w in self.elements}
        cosets: dict = {}
        for w in self.elements:
            key = tuple(_dot([w.matrix[k][i] for k in range(rs.rank)], self.b) for i in range(rs.rank))
            cosets.setdefault(key, []).append(w)
        if representatives == "minimal":
            self.reps = [ws[0] for ws in cosets.values()]
        elif representatives == "maximal":
            self.reps = [ws[-1] for ws in cosets.values()]
        else:
            raise DomainError("representatives must be 'minimal' or 'maximal'")
        self._coset_of = {}
        for k, ws in enumerate(cosets.values()):
            for w in ws:
                self._coset_of[w.matrix] = k
        self._refl_elem = {s.root: GroupElement(s.matrix) for s in rs.reflections}
        self._geom = {s.root: self._inverse_series(s) for s in self.outer_refl}

    @property
    def rank(self):
        return self.rs.rank

    def decompose(self, w: GroupElement):
        """w = h * rep with h in W'; returns (coset index, h)."""
        k = self._coset_of[w.matrix]
        rep = self.reps[k]
        return k, w * self.inverse[rep.matrix]

    def _inverse_series(self, s) -> JetSeries:
        """1/(alpha_s(b) + alpha_s(x)) as a geometric series; no order is lost."""
        beta = _dot(s.root, self.b)
        if beta == 0:
            raise DomainError("alpha_s(b) = 0 for a reflection outside W'")
        u = MultiPoly.linear([-Fraction(x) / beta for x in s.root])
        total = MultiPoly.constant(self.rank, 1)
        power = MultiPoly.constant(self.rank, 1)
        for _ in range(1, self.order):
            power = power.mul(u, self.order)
            total = total + power
        return JetSeries(total.scale(1 / beta), self.order)

    def shift(self, F: MultiPoly) -> MultiPoly:
        images = [MultiPoly.variable(self.rank, i) + self.b[i] for i in range(self.rank)]
        return F.substitute_linear(images)


@dataclass
class EquivariantJetFunction:
    ctx: JetContext = field(repr=False)
    values: list  # one JetSeries per coset representative

    def at(self, w: GroupElement) -> JetSeries:
        k, h = self.ctx.decompose(w)
        return self.values[k].act(h)

    @property
    def order(self):
        return min(v.order for v in self.values)

    def __add__(self, other):
        return EquivariantJetFunction(self.ctx, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        return EquivariantJetFunction(self.ctx, [a - b for a, b in zip(self.values, other.values)])

    def scale(self, s):
        return EquivariantJetFunction(self.ctx, [v.scale(s) for v in self.values])

    def agrees(self, other, k) -> bool:
        """Equality as functions on W, compared through values on all of W up to degree k."""
        return all(self.at(w).agrees(other.at(w), k) for w in self.ctx.elements)

    @staticmethod
    def from_polynomial(ctx: JetContext, F: MultiPoly) -> "EquivariantJetFunction":
        return EquivariantJetFunction(ctx, [JetSeries(ctx.shift(act(w, F)), ctx.order) for w in ctx.reps])

    @staticmethod
    def random(ctx: JetContext, rng: random.Random) -> "EquivariantJetFunction":
        mons = [m for d in range(ctx.order) for m in monomials(ctx.rank, d)]
        vals = []
        for _ in ctx.reps:
            terms = {m: Fraction(rng.randint(-COEF_BOUND, COEF_BOUND)) for m in mons}
            vals.append(JetSeries(MultiPoly(ctx.rank, terms), ctx.order))
        return EquivariantJetFunction(ctx, vals)

    def rebased(self, other_ctx: JetContext) -> "EquivariantJetFunction":
        """The same function on W stored against another choice of representatives."""
        return EquivariantJetFunction(other_ctx, [self.at(w) for w in other_ctx.reps])


@dataclass(frozen=True)
class ThetaOperator:
    kind: str       # "u", "x" or "y"
    data: object    # GroupElement, root-coordinate vector, or direction values

    @staticmethod
    def u(w: GroupElement):
        return ThetaOperator("u", w)

    @staticmethod
    def x(alpha):
        return ThetaOperator("x", tuple(Fraction(v) for v in alpha))

    @staticmethod
    def y(a):
        return ThetaOperator("y", tuple(Fraction(v) for v in a))


def theta_y_parts(ctx: JetContext, a, f: EquivariantJetFunction, w: GroupElement):
    """The W'-Dunkl part and the finite-difference part of (theta(y_a) f)(w)."""
    aw = direction_image(ctx.rs, w, a)
    g = f.at(w)
    if g.order < 2:
        raise DomainError("jet order underflow: theta(y) needs order at least 2")
    o = g.order - 1
    inner = g.poly.directional_derivative(aw)
    for s in ctx.inner_refl:
        coef = _dot(s.root, aw)
        if coef:
            diff = act(ctx._refl_elem[s.root], g.poly) - g.poly
            if diff:
                inner = inner + diff.exact_divide_linear(s.root).scale(reflection_scalar(ctx.c.of(s)) * coef)
    outer = JetSeries(MultiPoly(ctx.rank), g.order, g.lost)
    for s in ctx.outer_refl:
        coef = _dot(s.root, aw)
        if coef:
            delta = f.at(ctx._refl_elem[s.root] * w) - g
            outer = outer + ctx._geom[s.root].mul(delta).scale(reflection_scalar(ctx.c.of(s)) * coef)
    return JetSeries(inner, o, g.lost + 1), outer


def theta_at(op: ThetaOperator, f: EquivariantJetFunction, w: GroupElement) -> JetSeries:
    ctx = f.ctx
    if op.kind == "u":
        return f.at(w * op.data)
    if op.kind == "x":
        wa = w.act(op.data)
        g = f.at(w)
        lin = MultiPoly.linear(list(wa)) + _dot(wa, ctx.b)
        return JetSeries(lin.mul(g.poly, g.order), g.order, g.lost)
    if op.kind == "y":
        inner, outer = theta_y_parts(ctx, op.data, f, w)
        return inner + outer
    raise DomainError(f"unknown theta operator kind {op.kind!r}")


def apply_theta(op: ThetaOperator, f: EquivariantJetFunction) -> EquivariantJetFunction:
    return EquivariantJetFunction(f.ctx, [theta_at(op, f, w) for w in f.ctx.reps])


# --- relation checks ----------------------------------------------------------------


@dataclass
class RelationResult:
    name: str
    order: int          # equality asserted for total degrees < order
    checks: int = 0
    passed: bool = True
    failures: list = field(default_factory=list)


@dataclass
class ThetaReport:
    group: str
    parabolic: str
    base_point: tuple
    order: int
    trials: int
    seed: int
    relations: list
    representative_independent: bool
    equivariance_preserved: bool

    @property
    def passed(self) -> bool:
        return self.representative_independent and self.equivariance_preserved and all(r.passed for r in self.relations)


def _unit(r, i):
    return tuple(Fraction(int(k == i)) for k in range(r))


def _record(res: RelationResult, ok: bool, detail):
    res.checks += 1
    if not ok:
        res.passed = False
        res.failures.append(detail)


def verify_theta_relations(rs: RootSystem, p, b=None, c: ParamFunction | None = None, N: int = 6,
                           trials: int = 20, seed: int = 0) -> ThetaReport:
    """Check the defining relations of theta on random equivariant jet functions."""
    if N < 3:
        raise DomainError("verification needs jet order N >= 3")
    ctx = JetContext(rs, p, b, c, N)
    alt = JetContext(rs, p, ctx.b, c, N, representatives="maximal")
    r = rs.rank
    basis = [_unit(r, i) for i in range(r)]
    group_elems = ctx.elements if len(ctx.elements) <= 48 else [rs.simple_reflection(i) for i in range(r)]
    rel_x = RelationResult("theta(w) theta(x_alpha) theta(w)^-1 = theta(x_{w alpha})", N)
    rel_y = RelationResult("theta(w) theta(y_a) theta(w)^-1 = theta(y_{w a})", N - 1)
    rel_yx = RelationResult("[theta(y_a), theta(x_alpha)] = (a, alpha) - sum_s c_s (a, alpha_s)(alpha, alpha_s^vee) theta(s)", N - 1)
    rel_yy = RelationResult("[theta(y_a), theta(y_a')] = 0", N - 2)
    rng = random.Random(seed)
    independent = True
    equivariant = True
    for t in range(trials):
        f = EquivariantJetFunction.random(ctx, rng)
        xs = {i: apply_theta(ThetaOperator.x(al), f) for i, al in enumerate(basis)}
        ys = {i: apply_theta(ThetaOperator.y(a), f) for i, a in enumerate(basis)}
        for w in group_elems:
            winv = ctx.inverse[w.matrix]
            f_winv = apply_theta(ThetaOperator.u(winv), f)
            for i in range(r):
                lhs = apply_theta(ThetaOperator.u(w), apply_theta(ThetaOperator.x(basis[i]), f_winv))
                rhs = apply_theta(ThetaOperator.x(w.act(basis[i])), f)
                _record(rel_x, lhs.agrees(rhs, rel_x.order), {"trial": t, "alpha": i + 1})
                lhs = apply_theta(ThetaOperator.u(w), apply_theta(ThetaOperator.y(basis[i]), f_winv))
                rhs = apply_theta(ThetaOperator.y(direction_image(rs, w, basis[i])), f)
                _record(rel_y, lhs.agrees(rhs, rel_y.order), {"trial": t, "a": i + 1})
        for i in range(r):
            for j in range(r):
                yx = apply_theta(ThetaOperator.y(basis[i]), xs[j])
                xy = apply_theta(ThetaOperator.x(basis[j]), ys[i])
                rhs = f.scale(Fraction(int(i == j)))
                for s in rs.reflections:
                    coef = s.root[i] * s.coroot[j]
                    if coef:
                        sf = apply_theta(ThetaOperator.u(GroupElement(s.matrix)), f)
                        rhs = rhs - sf.scale(reflection_scalar(ctx.c.of(s)) * coef)
                _record(rel_yx, (yx - xy).agrees(rhs, rel_yx.order), {"trial": t, "a": i + 1, "alpha": j + 1})
        for i in range(r):
            for j in range(i + 1, r):
                a = apply_theta(ThetaOperator.y(basis[i]), ys[j])
                b2 = apply_theta(ThetaOperator.y(basis[j]), ys[i])
                _record(rel_yy, a.agrees(b2, rel_yy.order), {"trial": t, "a": i + 1, "a'": j + 1})
        # same function, other representatives: theta(y) must give the same function on W
        f_alt = f.rebased(alt)
        for i in range(r):
            y_alt = apply_theta(ThetaOperator.y(basis[i]), f_alt)
            if not all(ys[i].at(w).agrees(y_alt.at(w), N - 1) for w in ctx.elements):
                independent = False
        # computing theta(y) f directly at every element agrees with equivariant extension
        for i in range(r):
            for w in ctx.elements:
                if not theta_at(ThetaOperator.y(basis[i]), f, w).agrees(ys[i].at(w), N - 1):
                    equivariant = False
    return ThetaReport(
        str(rs.cartan_type), ctx.parabolic.type_label(), ctx.b, N, trials, seed,
        [rel_x, rel_y, rel_yx, rel_yy], independent, equivariant,
    )


def matches_dunkl(rs: RootSystem, p, F: MultiPoly, c: ParamFunction, N: int = 6, b=None) -> bool:
    """theta(y_i) of the jets of F equals the jets of the Dunkl operator D_i F, to order N-1."""
    ctx = JetContext(rs, p, b, c, N)
    f = EquivariantJetFunction.from_polynomial(ctx, F)
    dfs = dunkl_apply_all(rs, c, F)
    for i, g in enumerate(dfs):
        lhs = apply_theta(ThetaOperator.y(_unit(rs.rank, i)), f)
        rhs = EquivariantJetFunction.from_polynomial(ctx, g)
        if not lhs.agrees(rhs, N - 1):
            return False
    return True
