from fractions import Fraction

import pytest

from cherednik import K1, K2, MultiPoly, ParamScalar
from cherednik.dunkl import (
    ParamFunction,
    apply,
    check_relations,
    degree_one_singular,
    dunkl,
    dunkl_apply_all,
    equivariance_check,
    euler_apply,
    euler_check,
    euler_eigenvalue,
    reflection_scalar,
)
from cherednik.rootsys import CartanType, build, enumerate_group


def rs_of(name):
    return build(CartanType.parse(name))


@pytest.mark.parametrize("d", range(0, 9))
def test_rank_one_closed_form(d):
    rs = rs_of("A1")
    c = ParamFunction.equal(rs, Fraction(2, 7))
    f = MultiPoly.monomial((d,))
    got = apply(dunkl(rs, c, 0), f)
    coeff = d - Fraction(2, 7) * (1 - (-1) ** d)
    want = MultiPoly.monomial((d - 1,), coeff) if d else MultiPoly(1)
    assert got == want


def test_constants_killed():
    for name in ["A2", "B2", "G2"]:
        rs = rs_of(name)
        c = ParamFunction.symbolic(rs)
        assert all(g.is_zero() for g in dunkl_apply_all(rs, c, MultiPoly.constant(rs.rank, 5)))


def test_relations_a2_numeric():
    rs = rs_of("A2")
    assert check_relations(rs, ParamFunction.equal(rs, Fraction(1, 3)), 4).passed


def test_relations_b2_symbolic():
    rs = rs_of("B2")
    rep = check_relations(rs, ParamFunction.symbolic(rs), 3)
    assert rep.passed and rep.checks > 0


def test_relations_detect_broken_operator(monkeypatch):
    rs = rs_of("A2")
    c = ParamFunction.equal(rs, Fraction(1, 3))
    import cherednik.dunkl as dk

    real = dk.dunkl_apply_all

    def skewed(rs_, c_, f, directions=None):
        out = real(rs_, c_, f, directions)
        return [g + g.scale(Fraction(1, 2)) if i == 0 else g for i, g in enumerate(out)]

    monkeypatch.setattr(dk, "dunkl_apply_all", skewed)
    assert not dk.check_relations(rs, c, 2).passed


def test_reflection_scalar_general_form():
    assert reflection_scalar(Fraction(1, 3)) == Fraction(1, 3)
    # 2c/(1 - lambda) for a complex eigenvalue stand-in
    assert reflection_scalar(Fraction(1, 3), eigenvalue=Fraction(1, 2)) == Fraction(4, 3)


def test_euler_rank_one():
    rs = rs_of("A1")
    c = ParamFunction.symbolic_equal(rs)
    for d in range(6):
        f = MultiPoly.monomial((d,))
        assert euler_apply(rs, c, f) == f.scale(d + Fraction(1, 2) - K1)


def test_euler_a2_constant():
    rs = rs_of("A2")
    c = ParamFunction.symbolic_equal(rs)
    assert euler_eigenvalue(rs, c, 0) == 1 - 3 * K1
    assert euler_check(rs, c, 3).passed


def test_euler_zero_parameter():
    rs = rs_of("G2")
    c = ParamFunction.equal(rs, 0)
    for d in range(4):
        assert euler_eigenvalue(rs, c, d) == d + 1


def test_euler_two_parameters():
    rs = rs_of("B2")
    c = ParamFunction.symbolic(rs)
    assert euler_eigenvalue(rs, c, 2) == 3 - 2 * K1 - 2 * K2


def test_equivariance():
    rs = rs_of("B2")
    c = ParamFunction.make(rs, long=Fraction(1, 3), short=Fraction(2, 5))
    assert equivariance_check(rs, c, 3, enumerate_group(rs))


@pytest.mark.parametrize("name,h", [("A2", 3), ("B2", 4), ("G2", 6), ("A3", 4), ("B3", 6), ("D4", 6)])
def test_degree_one_singular_is_inverse_coxeter(name, h):
    assert degree_one_singular(rs_of(name)) == Fraction(1, h)


def test_degree_one_schur_scalar():
    # D_{y_i} x_j = delta_ij - c * M_ij with M = sum_s alpha_s (x) alpha_s^vee, which is h * identity
    for name in ["A2", "B2", "G2", "A3"]:
        rs = rs_of(name)
        r = rs.rank
        M = [[sum(s.root[i] * s.coroot[j] for s in rs.reflections) for j in range(r)] for i in range(r)]
        h = rs.coxeter_number
        assert M == [[h if i == j else 0 for j in range(r)] for i in range(r)]
        c = ParamFunction.symbolic_equal(rs)
        for j in range(r):
            images = dunkl_apply_all(rs, c, MultiPoly.variable(r, j))
            for i in range(r):
                assert images[i] == MultiPoly.constant(r, int(i == j) - M[i][j] * K1)


def test_linearity_in_direction():
    rs = rs_of("G2")
    c = ParamFunction.symbolic(rs)
    f = MultiPoly.monomial((2, 1)) + MultiPoly.monomial((0, 3)).scale(K2)
    a, b = (Fraction(1), Fraction(2)), (Fraction(-3), Fraction(1))
    both = tuple(x + y for x, y in zip(a, b))
    da, db, dab = dunkl_apply_all(rs, c, f, [a, b, both])
    assert da + db == dab


def test_param_function_classes():
    rs = rs_of("A2")
    with pytest.raises(Exception):
        ParamFunction.make(rs, long=Fraction(1, 2), short=Fraction(1, 3))
    rs = rs_of("B2")
    c = ParamFunction.symbolic(rs)
    assert c.total(rs) == 2 * K1 + 2 * K2
    assert isinstance(c.total(rs), ParamScalar)
