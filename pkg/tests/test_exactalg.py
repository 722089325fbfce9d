import random
from fractions import Fraction

import pytest

from cherednik import K1, K2, ExactMatrix, MultiPoly, ParamScalar
from cherednik.errors import DomainError
from cherednik.exactalg import (
    Span,
    determinant,
    kernel_basis,
    parse_rational,
    rank,
    rank_drop_values,
    rational_roots,
    rref,
)


def _times(m, v):
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m.rows]


def test_kernel_trivial():
    assert kernel_basis(ExactMatrix([[Fraction(2)]], 1)) == []


def test_kernel_row_of_ones():
    kb = kernel_basis(ExactMatrix([[Fraction(1), Fraction(1)]], 2))
    assert len(kb) == 1
    v = kb[0]
    assert v[0] == -v[1] != 0


def test_kernel_symbolic_rank_one():
    m = ExactMatrix([[ParamScalar(1), K1], [K1, K1 * K1]], 2)
    kb = kernel_basis(m)
    assert len(kb) == 1
    assert all(x == 0 for x in _times(m, kb[0]))
    v = kb[0]
    # proportional to (K1, -1)
    assert v[0] * ParamScalar(-1) == v[1] * K1


def test_rank_nullity_random():
    rng = random.Random(3)
    for _ in range(30):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[Fraction(rng.randint(-2, 2)) for _ in range(c)] for _ in range(r)]
        m = ExactMatrix(rows, c)
        kb = kernel_basis(m)
        assert rank(m) + len(kb) == c
        for v in kb:
            assert all(x == 0 for x in _times(m, v))


def test_mixed_field_rejected():
    with pytest.raises(DomainError):
        ExactMatrix([[Fraction(1), K1]], 2, field="QQ")


def test_rank_drop_linear():
    assert rank_drop_values(ExactMatrix([[1 - 3 * K1]], 1)) == [Fraction(1, 3)]


def test_rank_drop_constant():
    assert rank_drop_values(ExactMatrix([[Fraction(2)], [Fraction(0)]], 1)) == []


def test_rank_drop_substitution_property():
    m = ExactMatrix([[1 - 2 * K1, ParamScalar(0)], [ParamScalar(0), 3 * K1 - 2], [ParamScalar(0), ParamScalar(0)]], 2)
    vals = rank_drop_values(m)
    assert vals == [Fraction(1, 2), Fraction(2, 3)]
    for v in vals:
        assert kernel_basis(m.substitute(v))
    assert not kernel_basis(m.substitute(Fraction(5, 7)))


def test_rank_drop_coprime_minors():
    # each single row pair drops rank somewhere, but never all at once
    m = ExactMatrix([[1 - 2 * K1, ParamScalar(0)], [ParamScalar(0), 3 * K1 - 2], [K1, K1]], 2)
    assert rank_drop_values(m) == []


def test_rank_drop_rejects_deficient():
    with pytest.raises(DomainError):
        rank_drop_values(ExactMatrix([[K1, K1], [K1, K1]], 2))


def test_rational_roots():
    assert rational_roots(2 * K1 - 1) == [Fraction(1, 2)]
    assert rational_roots(K1 * K1 - 1) == [-1, 1]
    p = (3 * K1 - 1) * (2 * K1 - 1) * (K1 * K1 + 1)
    assert rational_roots(p) == [Fraction(1, 3), Fraction(1, 2)]
    with pytest.raises(DomainError):
        rational_roots(ParamScalar(0))


def test_param_scalar_field_axioms():
    rng = random.Random(11)

    def rand():
        return ParamScalar(rng.randint(-3, 3)) + rng.randint(-2, 2) * K1 + rng.randint(-2, 2) * K2

    for _ in range(25):
        a, b, c = rand(), rand(), rand()
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        if b != 0:
            assert (a / b) * b == a


def test_param_scalar_canonical():
    x = (K1 * K1 * -4) / ParamScalar(-1)
    assert x == 4 * K1 * K1 * -1 * -1 or x == -(-4 * K1 * K1)
    assert str((2 * K1 - 2) / (K1 - 1)) == "2"
    assert (K1 + K2).evaluate(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_multipoly_divide_linear():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    f = (x - y) * (x * x + y)
    assert f.exact_divide_linear((1, -1)) == x * x + y
    with pytest.raises(Exception):
        (x * x + y).exact_divide_linear((1, -1))


def test_multipoly_substitute_linear():
    x, y = MultiPoly.variable(2, 0), MultiPoly.variable(2, 1)
    f = x * x * y
    assert f.substitute_linear([y, x]) == y * y * x


def test_parse_rational():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    with pytest.raises(DomainError):
        parse_rational("0.5")


def test_span_and_rref_and_determinant():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    echelon, pivots = rref(rows)
    assert len(echelon) == 1 and pivots == [0]
    s = Span(rows, 2)
    assert s.dim == 1
    assert [3, 6] in s
    assert s.coords([Fraction(1), Fraction(0)]) is None
    assert determinant([[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]) == -2
    assert determinant([[K1, K2], [ParamScalar(1), ParamScalar(1)]]) == K1 - K2
