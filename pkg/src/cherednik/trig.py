"""Reducibility locus of the trigonometric polynomial representation.

The locus is the union, over maximal-rank subsystems obtained by deleting one
vertex of the extended Dynkin diagram, of the rational line tables of each
subsystem factor, rewritten in the parent's (k1, k2) = (k_long, k_short).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import DomainError, InvariantViolation
from .reduce import Line, djo_line_set, djo_lines, family_lines
from .rootsys import LONG, SHORT, BdsEntry, CartanType, bds_subsystems, degree_table

DEFAULT_WINDOW = 24


@dataclass(frozen=True)
class Stratum:
    entry: BdsEntry
    parent: CartanType

    @property
    def deleted(self) -> int:
        return self.entry.deleted

    @property
    def factors(self):
        return self.entry.factors

    def label(self) -> str:
        return self.entry.label()


def strata(t) -> list[Stratum]:
    t = _ctype(t)
    out = [Stratum(e, t) for e in bds_subsystems(t)]
    for s in out:
        if s.entry.rank != t.rank:
            raise InvariantViolation(f"stratum {s.label()} has rank {s.entry.rank}, parent {t.rank}")
    return out


def _ctype(t) -> CartanType:
    if isinstance(t, str):
        t = CartanType.parse(t)
    if not t.crystallographic:
        raise DomainError(f"{t} is not crystallographic; no trigonometric locus")
    return t


def _to_parent(factor):
    """Map (coefficient on factor-long, on factor-short) to (parent k1, parent k2)."""
    def conv(a, b):
        out = [0, 0]
        for coef, cls in zip((a, b), factor.classes + (None,) * (2 - len(factor.classes))):
            if coef:
                if cls is None:
                    raise InvariantViolation("short-root coefficient on a one-length factor")
                out[0 if cls == LONG else 1] += coef
        return tuple(out)
    return conv


def restricted_lines(parent, s: Stratum, window: int = DEFAULT_WINDOW) -> set[Line]:
    """DJO lines of every factor, with factor parameters replaced by the parent's."""
    out = set()
    for f in s.factors:
        conv = _to_parent(f)
        for fam in djo_lines(f.cartan_type):
            out |= family_lines(fam, window, conv)
    return out


@dataclass
class TrigLocus:
    parent: CartanType
    window: int
    lines: frozenset
    additional: frozenset
    by_stratum: dict = field(default_factory=dict)   # stratum label -> lines it contributes

    def additional_sorted(self) -> list[Line]:
        return sorted(self.additional)


def trig_locus(t, window: int = DEFAULT_WINDOW) -> TrigLocus:
    t = _ctype(t)
    full = set()
    by = {}
    for s in strata(t):
        ls = restricted_lines(t, s, window)
        by[s.label()] = frozenset(ls)
        full |= ls
    own = djo_line_set(t, window)
    if not own <= full:
        raise InvariantViolation("the parent stratum must reproduce the rational line set")
    return TrigLocus(t, window, frozenset(full), frozenset(full - own), by)


@dataclass(frozen=True)
class TrigQuery:
    reducible: bool
    stratum: str | None = None
    line: Line | None = None

    @property
    def witness(self) -> str | None:
        if not self.reducible:
            return None
        return f"{self.stratum} stratum, {self.line}"


def is_trig_reducible(t, k1, k2=None) -> TrigQuery:
    """Exact membership test, no window: tries each stratum factor's families."""
    t = _ctype(t)
    k1 = Fraction(k1)
    k2 = k1 if k2 is None else Fraction(k2)
    params = {LONG: k1, SHORT: k2}
    for s in strata(t):
        for f in s.factors:
            kl = params[f.classes[0]]
            ks = params[f.classes[1]] if len(f.classes) > 1 else kl
            conv = _to_parent(f)
            for fam in djo_lines(f.cartan_type):
                l = fam.contains(kl, ks)
                if l is not None:
                    pa, pb = conv(fam.a, fam.b)
                    return TrigQuery(True, s.label(), Line.normal(pa, pb, l))
    return TrigQuery(False)


@dataclass
class ConstantComparison:
    parent: CartanType
    window: Fraction
    additional_lines: list
    trig_values: list
    rational_values: list

    @property
    def equal(self) -> bool:
        return not self.additional_lines and self.trig_values == self.rational_values


def _constant_values(degrees, window: Fraction) -> set[Fraction]:
    out = set()
    for d in set(degrees):
        j = 1
        while Fraction(j, d) <= window:
            if j % d:
                out.add(Fraction(j, d))
            j += 1
    return out


def simply_laced_constant_equivalence(t, window=1) -> ConstantComparison:
    """Compare trigonometric and rational reducibility sets for constant c in (0, window]."""
    t = _ctype(t)
    if not t.simply_laced:
        raise DomainError(f"{t} is not simply laced")
    window = Fraction(window)
    trig = set()
    for s in strata(t):
        for f in s.factors:
            trig |= _constant_values(degree_table(f.cartan_type), window)
    rational = _constant_values(degree_table(t), window)
    height = max(1, int(window * max(degree_table(t))))
    locus = trig_locus(t, height)
    return ConstantComparison(t, window, sorted(locus.additional), sorted(trig), sorted(rational))


def paper_additional_lines(t, window: int = DEFAULT_WINDOW, transposed_bn: bool = True) -> set[Line]:
    """The printed additional families, expanded within the window.

    For B_n the printed relation is read as 2q k1 = 2p - 1 by default; pass
    transposed_bn=False for the literal (2p - 1) k1 = 2q.
    """
    t = _ctype(t)
    f, n = t.family, t.rank
    out = set()
    if f == "B" and n >= 3:
        for q in range(n // 2 + 1, n):
            for p in range(1, window + 1):
                if gcd(2 * p - 1, q) != 1:
                    continue
                line = Line.normal(2 * q, 0, 2 * p - 1) if transposed_bn else Line.normal(2 * p - 1, 0, 2 * q)
                if line.height <= window:
                    out.add(line)
    elif f == "F":
        for l in range(1, 4 * window + 1, 2):
            for line in (Line.normal(6, 2, l), Line.normal(4, 0, l)):
                if line.height <= window:
                    out.add(line)
    elif f == "G":
        for l in range(1, 3 * window + 1):
            if l % 3:
                line = Line.normal(3, 0, l)
                if line.height <= window:
                    out.add(line)
    return out
