import random
from fractions import Fraction

import pytest

import cherednik.jets as jets
from cherednik import MultiPoly
from cherednik.dunkl import ParamFunction, direction_image
from cherednik.errors import DomainError
from cherednik.jets import (
    EquivariantJetFunction,
    JetContext,
    JetSeries,
    ThetaOperator,
    apply_theta,
    matches_dunkl,
    theta_at,
    theta_y_parts,
    verify_theta_relations,
)
from cherednik.rootsys import CartanType, build, identity_element

F = Fraction


def rs_of(s):
    return build(CartanType.parse(s))


def test_theta_identity_is_identity():
    rs = rs_of("A2")
    ctx = JetContext(rs, [0], order=4)
    f = EquivariantJetFunction.random(ctx, random.Random(1))
    g = apply_theta(ThetaOperator.u(identity_element(2)), f)
    assert g.agrees(f, 4)


def test_equivariance_of_random_functions():
    rs = rs_of("A2")
    ctx = JetContext(rs, [0], order=4)
    f = EquivariantJetFunction.random(ctx, random.Random(2))
    h = rs.simple_reflection(0)
    for w in ctx.elements:
        assert f.at(h * w).agrees(f.at(w).act(h), 4)


def test_rank_one_generic_point_kills_constants():
    rs = rs_of("A1")
    ctx = JetContext(rs, [], b=(F(3),), c=ParamFunction.equal(rs, F(1, 3)), order=5)
    one = EquivariantJetFunction.from_polynomial(ctx, MultiPoly.constant(1, 1))
    out = apply_theta(ThetaOperator.y((F(1),)), one)
    assert all(v.poly.is_zero() for v in out.values)


def test_outer_part_is_finite_difference():
    # (alpha(b) + x_alpha) * outer = c * alpha(w a) * (f(s w) - f(w)), exactly to the jet order
    rs = rs_of("A1")
    c = F(2, 5)
    ctx = JetContext(rs, [], b=(F(3),), c=ParamFunction.equal(rs, c), order=6)
    f = EquivariantJetFunction.random(ctx, random.Random(5))
    s = rs.simple_reflection(0)
    for w in ctx.elements:
        inner, outer = theta_y_parts(ctx, (F(1),), f, w)
        aw = direction_image(rs, w, (F(1),))[0]
        beta = sum(a * b for a, b in zip(rs.reflections[0].root, ctx.b))
        lhs = (MultiPoly.linear([F(1)]) + beta).mul(outer.poly, 6)
        rhs = (f.at(s * w) - f.at(w)).poly.scale(c * aw)
        assert lhs.truncate(6) == rhs.truncate(6)
        # inner part is the plain derivative when W' is trivial
        assert inner.poly == f.at(w).poly.directional_derivative((aw,))


def test_zero_parameter_is_pulled_back_derivative():
    rs = rs_of("A2")
    ctx = JetContext(rs, [0], c=ParamFunction.equal(rs, 0), order=5)
    f = EquivariantJetFunction.random(ctx, random.Random(3))
    for i in range(2):
        a = tuple(F(int(k == i)) for k in range(2))
        for w in ctx.elements:
            got = theta_at(ThetaOperator.y(a), f, w)
            want = f.at(w).poly.directional_derivative(direction_image(rs, w, a))
            assert got.poly.truncate(4) == want.truncate(4)


def test_x_operators_commute():
    rs = rs_of("A2")
    ctx = JetContext(rs, [0], order=5)
    f = EquivariantJetFunction.random(ctx, random.Random(4))
    x1, x2 = ThetaOperator.x((1, 0)), ThetaOperator.x((0, 1))
    assert apply_theta(x1, apply_theta(x2, f)).agrees(apply_theta(x2, apply_theta(x1, f)), 5)


@pytest.mark.parametrize("name,nodes,b", [
    ("A1", [0], None),
    ("A1", [], (F(2),)),
    ("A2", [0], None),
    ("A2", [], (F(1), F(2))),
    ("A2", [0, 1], None),
    ("B2", [1], None),
])
def test_theta_matches_dunkl_on_polynomials(name, nodes, b):
    rs = rs_of(name)
    c = ParamFunction.equal(rs, F(1, 3)) if rs.cartan_type.simply_laced else \
        ParamFunction.make(rs, long=F(1, 3), short=F(1, 5))
    F_ = MultiPoly.monomial((3,) + (1,) * (rs.rank - 1)) + MultiPoly.monomial((1,) * rs.rank).scale(F(-2))
    assert matches_dunkl(rs, nodes, F_, c, N=5, b=b)


def test_b_zero_is_plain_dunkl_relations():
    rs = rs_of("A1")
    rep = verify_theta_relations(rs, [0], c=ParamFunction.equal(rs, F(1, 3)), N=5, trials=3)
    assert rep.passed
    assert rep.base_point == (F(0),)


def test_stabilizer_mismatch():
    rs = rs_of("A2")
    with pytest.raises(DomainError, match="stabilizer"):
        JetContext(rs, [0], b=(F(1), F(1)))
    with pytest.raises(DomainError, match="stabilizer"):
        JetContext(rs, [], b=(F(0), F(1)))


def test_order_guards():
    rs = rs_of("A1")
    with pytest.raises(DomainError):
        verify_theta_relations(rs, [0], N=2)
    with pytest.raises(DomainError):
        JetSeries(MultiPoly(1), -1)


def test_report_shape():
    rs = rs_of("A2")
    rep = verify_theta_relations(rs, [0], c=ParamFunction.equal(rs, F(1, 3)), N=4, trials=2, seed=7)
    assert [r.order for r in rep.relations] == [4, 3, 3, 2]
    assert rep.seed == 7 and rep.trials == 2
    assert rep.representative_independent and rep.equivariance_preserved


def test_two_parameter_b2():
    rs = rs_of("B2")
    c = ParamFunction.make(rs, long=F(1, 3), short=F(2, 7))
    for nodes in ([0], [1]):
        assert verify_theta_relations(rs, nodes, c=c, N=4, trials=2).passed


def test_negative_control_missing_outer_terms(monkeypatch):
    # dropping the finite-difference terms must break [y, x]
    rs = rs_of("A2")
    real = jets.theta_y_parts

    def inner_only(ctx, a, f, w):
        inner, outer = real(ctx, a, f, w)
        return inner, JetSeries(MultiPoly(ctx.rank), outer.order)

    monkeypatch.setattr(jets, "theta_y_parts", inner_only)
    rep = verify_theta_relations(rs, [0], c=ParamFunction.equal(rs, F(1, 3)), N=4, trials=2)
    assert not rep.passed
    yx = next(r for r in rep.relations if r.name.startswith("[theta(y_a), theta(x"))
    assert not yx.passed


def test_negative_control_inconsistent_parameter(monkeypatch):
    # outer terms at twice the inner parameter: c is no longer W-invariant, so a relation fails
    rs = rs_of("A2")
    real = jets.theta_y_parts

    def doubled_outer(ctx, a, f, w):
        inner, outer = real(ctx, a, f, w)
        return inner, outer.scale(2)

    monkeypatch.setattr(jets, "theta_y_parts", doubled_outer)
    rep = verify_theta_relations(rs, [0], c=ParamFunction.equal(rs, F(1, 3)), N=4, trials=1)
    assert not rep.passed
