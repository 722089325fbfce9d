from fractions import Fraction
from math import gcd

import pytest

from cherednik.dunkl import ParamFunction, dunkl_apply_all
from cherednik.errors import DomainError
from cherednik.reduce import (
    Line,
    cuspidal_numbers,
    djo_constant_set,
    djo_line_set,
    djo_lines,
    on_djo_lines,
    singular_scan,
    singular_values_in_degree,
    strongly_singular,
)
from cherednik.rootsys import CartanType, build, degree_table


def T(s):
    return CartanType.parse(s)


def rs_of(s):
    return build(T(s))


def brute_djo_constant(degrees, c):
    c = Fraction(c)
    return any((c * d).denominator == 1 and (c * d).numerator % d != 0 for d in degrees) and c > 0


# --- scans --------------------------------------------------------------------------


def test_a1_scan_half_integer():
    rs = rs_of("A1")
    res = singular_scan(rs, ParamFunction.equal(rs, Fraction(3, 2)), 5)
    assert res.singular_degrees == [3]
    v = res.reports[2].vectors[0]
    assert v.terms.keys() == {(3,)}


def test_a1_scan_integer_has_nothing():
    rs = rs_of("A1")
    res = singular_scan(rs, ParamFunction.equal(rs, 1), 8)
    assert not res.reducible
    assert not res.conclusive


def test_a2_degree_one_space():
    rs = rs_of("A2")
    res = singular_scan(rs, ParamFunction.equal(rs, Fraction(1, 3)), 2)
    assert res.singular_degrees == [1]
    assert len(res.reports[0].vectors) == 2


def test_scan_vectors_are_singular():
    rs = rs_of("B2")
    c = ParamFunction.make(rs, long=Fraction(1, 2), short=Fraction(0))
    res = singular_scan(rs, c, 4)
    assert res.reducible
    for rep in res.reports:
        for v in rep.vectors:
            assert v.is_homogeneous(rep.degree)
            assert all(g.is_zero() for g in dunkl_apply_all(rs, c, v))


def test_scan_isotype():
    rs = rs_of("A2")
    res = singular_scan(rs, ParamFunction.equal(rs, Fraction(1, 3)), 1, isotypes=True)
    assert res.reports[0].isotype == {"(2,1)": 1}


def test_scan_rejects_symbolic():
    rs = rs_of("A1")
    with pytest.raises(DomainError):
        singular_scan(rs, ParamFunction.symbolic_equal(rs), 3)


def test_symbolic_a1():
    rs = rs_of("A1")
    assert singular_values_in_degree(rs, 3) == [Fraction(3, 2)]
    assert singular_values_in_degree(rs, 4) == []


def test_symbolic_a2_degree_one():
    assert singular_values_in_degree(rs_of("A2"), 1) == [Fraction(1, 3)]


def test_symbolic_b2_degree_one_line():
    rep = singular_values_in_degree(rs_of("B2"), 1)
    assert rep.lines == [Line.normal(1, 1, Fraction(1, 2))]
    assert not rep.unfactored


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_rank_two_equal_parameter_points_are_djo(name):
    rs = rs_of(name)
    for d in range(1, 7):
        for c in singular_values_in_degree(rs, d, two_parameter=False):
            assert brute_djo_constant(rs.degrees, c), (name, d, c)


@pytest.mark.parametrize("name", ["B2", "G2"])
def test_rank_two_lines_are_djo(name):
    rs = rs_of(name)
    table = djo_line_set(T(name), 24)
    for d in range(1, 7):
        for line in singular_values_in_degree(rs, d).lines:
            assert line in table, (name, d, line)


# --- DJO closed forms -----------------------------------------------------------------


def test_djo_constant_examples():
    F = Fraction
    assert djo_constant_set(T("A1"), 2) == [F(1, 2), F(3, 2)]
    assert djo_constant_set(T("A2"), 1) == [F(1, 3), F(1, 2), F(2, 3)]
    assert djo_constant_set(T("G2"), F(1, 2)) == [F(1, 6), F(1, 3), F(1, 2)]


def test_djo_constant_matches_brute():
    for name in ["A4", "D5", "E6"]:
        degs = degree_table(T(name))
        got = djo_constant_set(T(name), 2)
        grid = {Fraction(p, q) for q in range(1, 31) for p in range(1, 2 * q + 1)}
        assert got == sorted(c for c in grid if brute_djo_constant(degs, c))


def test_djo_lines_b2():
    fams = {(f.a, f.b) for f in djo_lines(T("B2"))}
    assert fams == {(0, 2), (2, 2), (2, 0)}
    lines = djo_line_set(T("B2"), 3)
    assert lines == {
        Line.normal(0, 2, l) for l in (1, 3)
    } | {Line.normal(2, 2, l) for l in (1, 3)} | {Line.normal(2, 0, l) for l in (1, 3)}


def test_djo_lines_g2():
    fams = djo_lines(T("G2"))
    assert {(f.a, f.b) for f in fams} == {(2, 0), (0, 2), (3, 3)}
    three = next(f for f in fams if f.a == 3)
    assert [l for l in three.members(7)] == [1, 2, 4, 5, 7]


def test_djo_lines_a2():
    fams = djo_lines(T("A2"))
    assert [(f.a, list(f.members(6))) for f in fams] == [(2, [1, 3, 5]), (3, [1, 2, 4, 5])]


def test_djo_lines_c_swaps_parameters():
    b = {(f.a, f.b) for f in djo_lines(T("B3"))}
    c = {(f.b, f.a) for f in djo_lines(T("C3"))}
    assert b == c


def test_djo_lines_h_unsupported():
    with pytest.raises(DomainError):
        djo_lines(T("H3"))


def test_on_djo_lines_b2_degree_one_point():
    hit = on_djo_lines(T("B2"), Fraction(1, 4), Fraction(1, 4))
    assert hit is not None and hit[1] == 1


def test_line_normal_form():
    assert Line.normal(-4, -2, 2) == Line(2, 1, Fraction(-1))
    assert Line.normal(0, -3, 1) == Line(0, 1, Fraction(-1, 3))
    line = Line.normal(6, 2, 5)
    assert (line.a, line.b, line.rhs, line.height) == (3, 1, Fraction(5, 2), 5)
    with pytest.raises(DomainError):
        Line.normal(0, 0, 1)


# --- cuspidal numbers -------------------------------------------------------------------


def test_cuspidal_known():
    assert cuspidal_numbers(T("E6")).non_coxeter == (9,)
    assert cuspidal_numbers(T("E8")).non_coxeter == (15, 20, 24)
    f4 = cuspidal_numbers(T("F4"))
    assert f4.non_coxeter == (8,) and f4.full == (8, 12)


@pytest.mark.parametrize("name", ["A3", "B4", "D5", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2(12)"])
def test_cuspidal_contains_coxeter_number(name):
    res = cuspidal_numbers(T(name))
    assert max(degree_table(T(name))) in res.full


def test_cuspidal_i2_brute():
    for m in range(3, 31):
        res = cuspidal_numbers(T(f"I2({m})"))
        # proper parabolics of a dihedral group are A1 or trivial, divisor set {2}
        div = {d for d in range(2, m + 1) if m % d == 0} | {2}
        assert set(res.full) == div - {2}
        assert set(res.non_coxeter) == {d for d in range(3, m) if m % d == 0}


# --- strongly singular -------------------------------------------------------------------


def test_strongly_singular_a2():
    F = Fraction
    assert strongly_singular("A2", 1) == [F(-2, 3), F(-1, 2), F(-1, 3)]
    assert strongly_singular("A2", 1, convention="strict") == []


def test_strongly_singular_window_zero():
    assert strongly_singular("E6", 0) == []


def test_strongly_singular_a1():
    assert strongly_singular("A1", 1) == [Fraction(-1, 2)]


def test_strongly_singular_bad_convention():
    with pytest.raises(DomainError):
        strongly_singular("A2", 1, convention="loose")


def test_strongly_singular_equals_q_set_for_sn():
    from cherednik.sncombin import q_set

    for n in range(2, 8):
        got = strongly_singular(f"A{n - 1}", 1)
        # degrees of S_n are 2..n, so -j/d with 1 <= j < d <= n is Q_n
        assert tuple(got) == q_set(n).values
