"""Root systems, Weyl groups, degrees, standard parabolics and extended diagrams.

Coordinates.  Every crystallographic system keeps an ambient rational
realization (for inner products) but all group computations happen in
simple-root coordinates: a vector of h* is written in the basis of simple
roots, and a point b of h is recorded by its values alpha_i(b) on the simple
roots.  Group elements are the integer matrices of their action on h* in
that basis; the action on h is the inverse transpose.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import prod

from .errors import DomainError, InvariantViolation

LONG, SHORT = "long", "short"

_RANK_RULES = {
    "A": (1, None), "B": (2, None), "C": (2, None), "D": (3, None),
    "E": (6, 8), "F": (4, 4), "G": (2, 2), "H": (3, 4), "I": (2, 2),
}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int
    m: int | None = None

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise DomainError(f"unknown family {self.family!r}")
        lo, hi = _RANK_RULES[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise DomainError(f"invalid rank {self.rank} for family {self.family}")
        if self.family == "I":
            if self.m is None or self.m < 3:
                raise DomainError("I2(m) needs m >= 3")
        elif self.m is not None:
            raise DomainError("only I2 takes an extra parameter")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        s = text.strip().replace("_", "")
        mt = re.fullmatch(r"I2?\((\d+)\)|I2-(\d+)", s)
        if mt:
            return cls("I", 2, int(mt.group(1) or mt.group(2)))
        mt = re.fullmatch(r"([A-H])(\d+)", s)
        if not mt:
            raise DomainError(f"cannot parse Cartan type {text!r}")
        return cls(mt.group(1), int(mt.group(2)))

    @property
    def crystallographic(self) -> bool:
        return self.family in "ABCDEFG"

    @property
    def simply_laced(self) -> bool:
        return self.family in "ADE"

    def __str__(self):
        return f"I2({self.m})" if self.family == "I" else f"{self.family}{self.rank}"


def degree_table(t: CartanType) -> list[int]:
    n = t.rank
    f = t.family
    if f == "A":
        return list(range(2, n + 2))
    if f in "BC":
        return list(range(2, 2 * n + 1, 2))
    if f == "D":
        return sorted(list(range(2, 2 * n - 1, 2)) + [n])
    table = {
        ("E", 6): [2, 5, 6, 8, 9, 12], ("E", 7): [2, 6, 8, 10, 12, 14, 18],
        ("E", 8): [2, 8, 12, 14, 18, 20, 24, 30], ("F", 4): [2, 6, 8, 12],
        ("G", 2): [2, 6], ("H", 3): [2, 6, 10], ("H", 4): [2, 12, 20, 30],
    }
    if f == "I":
        return sorted([2, t.m])
    return table[(f, n)]


def coxeter_matrix(t: CartanType) -> list[list[int]]:
    """Coxeter matrix (m_ij) in Bourbaki node order."""
    n = t.rank
    m = [[1 if i == j else 2 for j in range(n)] for i in range(n)]

    def bond(i, j, v):
        m[i][j] = m[j][i] = v

    f = t.family
    if f in "ABCD":
        for i in range(n - 1):
            bond(i, i + 1, 3)
        if f in "BC":
            bond(n - 2, n - 1, 4)
        if f == "D":
            m[n - 2][n - 1] = m[n - 1][n - 2] = 2
            bond(n - 3, n - 1, 3)
    elif f == "E":
        bond(0, 2, 3)
        bond(1, 3, 3)
        for i in range(2, n - 1):
            bond(i, i + 1, 3)
    elif f == "F":
        bond(0, 1, 3), bond(1, 2, 4), bond(2, 3, 3)
    elif f == "G":
        bond(0, 1, 6)
    elif f == "H":
        bond(0, 1, 5)
        for i in range(1, n - 1):
            bond(i, i + 1, 3)
    elif f == "I":
        bond(0, 1, t.m)
    return m


def _e(n, *pairs):
    v = [Fraction(0)] * n
    for i, c in pairs:
        v[i] += Fraction(c)
    return v


def _realization(t: CartanType):
    """Ambient simple roots and the scale of the inner product."""
    n, f = t.rank, t.family
    if f == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(n)], Fraction(1)
    if f == "B":
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 1))], Fraction(1)
    if f == "C":
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 1, 2))], Fraction(1, 2)
    if f == "D":
        return [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_e(n, (n - 2, 1), (n - 1, 1))], Fraction(1)
    if f == "E":
        h = Fraction(1, 2)
        e8 = [
            [h, -h, -h, -h, -h, -h, -h, h],
            _e(8, (0, 1), (1, 1)),
            _e(8, (0, -1), (1, 1)),
            _e(8, (1, -1), (2, 1)),
            _e(8, (2, -1), (3, 1)),
            _e(8, (3, -1), (4, 1)),
            _e(8, (4, -1), (5, 1)),
            _e(8, (5, -1), (6, 1)),
        ]
        return [list(map(Fraction, v)) for v in e8[:n]], Fraction(1)
    if f == "F":
        h = Fraction(1, 2)
        return [_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)), [h, -h, -h, -h]], Fraction(1)
    if f == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))], Fraction(1, 3)
    raise DomainError(f"{t} has no exact rational realization")


@dataclass(frozen=True)
class Reflection:
    root: tuple            # simple-root coordinates of the positive root alpha_s
    coroot: tuple          # values alpha_i(alpha_s^vee) on the simple roots
    length_class: str
    matrix: tuple          # action on h* in simple-root coordinates

    def pairing(self, lam) -> Fraction:
        """<lam, alpha_s^vee> for lam in simple-root coordinates."""
        return sum((a * b for a, b in zip(lam, self.coroot)), 0)


@dataclass(frozen=True)
class GroupElement:
    matrix: tuple  # tuple of rows, integers, action on h* in simple-root coordinates
    length: int | None = field(default=None, compare=False)

    @property
    def rank(self):
        return len(self.matrix)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        a, b = self.matrix, other.matrix
        n = len(a)
        cols = list(zip(*b))
        return GroupElement(tuple(tuple(sum(a[i][k] * cols[j][k] for k in range(n)) for j in range(n)) for i in range(n)))

    def act(self, lam):
        """Image of a vector of h* (simple-root coordinates)."""
        return tuple(sum(r[k] * lam[k] for k in range(len(lam))) for r in self.matrix)

    def act_on_point(self, b, inverse: "GroupElement"):
        """Values alpha_i(w b) given alpha_i(b); needs w^{-1}."""
        n = len(b)
        return tuple(sum(inverse.matrix[k][i] * b[k] for k in range(n)) for i in range(n))

    def is_identity(self):
        n = len(self.matrix)
        return all(self.matrix[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))


def identity_element(r: int) -> GroupElement:
    return GroupElement(tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r)), 0)


@dataclass(frozen=True)
class Factor:
    """An irreducible piece of a subdiagram, with the parent length class of
    its long roots (and of its short roots when it has two lengths)."""
    cartan_type: CartanType
    nodes: tuple
    classes: tuple  # (parent class of factor-long roots[, parent class of factor-short roots])
    parent_two_lengths: bool = field(default=False, compare=False)

    def label(self) -> str:
        if len(self.classes) == 1 and self.parent_two_lengths:
            return f"{self.cartan_type}({self.classes[0]})"
        return str(self.cartan_type)


@dataclass(frozen=True)
class ParabolicClass:
    nodes: tuple
    factors: tuple
    degrees: tuple
    proper: bool

    def type_label(self) -> str:
        return "x".join(f.label() for f in self.factors) if self.factors else "1"

    @property
    def rank(self):
        return len(self.nodes)


@dataclass
class RootSystem:
    cartan_type: CartanType
    degrees: list
    has_matrices: bool
    simple_roots: list | None = None
    scale: Fraction | None = None
    gram: list | None = None
    cartan: list | None = None
    positive_roots: list | None = None
    reflections: list | None = None
    degree_source: str = "table"

    @property
    def rank(self):
        return self.cartan_type.rank

    @property
    def coxeter_number(self):
        return max(self.degrees)

    @property
    def order(self):
        return prod(self.degrees)

    @property
    def num_reflections(self):
        return sum(d - 1 for d in self.degrees)

    def require_matrices(self):
        if not self.has_matrices:
            raise DomainError(f"{self.cartan_type} has no rational matrix realization (degree data only)")

    def inner(self, u, v) -> Fraction:
        """Inner product of two vectors of h* given in simple-root coordinates."""
        g = self.gram
        n = len(u)
        return sum((u[i] * g[i][j] * v[j] for i in range(n) for j in range(n) if u[i] and v[j]), Fraction(0))

    def ambient(self, lam):
        dim = len(self.simple_roots[0])
        return [sum((lam[i] * self.simple_roots[i][k] for i in range(self.rank)), Fraction(0)) for k in range(dim)]

    def point_from_ambient(self, v):
        """alpha_i(b) for the point b of h identified with ambient vector v."""
        return tuple(self.scale * sum((a * x for a, x in zip(al, v)), Fraction(0)) for al in self.simple_roots)

    def length_class(self, lam) -> str:
        return _length_class(self, lam)

    def simple_reflection(self, i) -> GroupElement:
        return GroupElement(self.reflection_for(_unit(self.rank, i)).matrix, 1)

    def reflection_for(self, root) -> Reflection:
        root = tuple(root)
        key = root if any(x > 0 for x in root) else tuple(-x for x in root)
        for s in self.reflections:
            if s.root == key:
                return s
        raise DomainError(f"{root} is not a root")

    def highest_root(self):
        return max(self.positive_roots, key=sum)

    def inverse(self, w: GroupElement) -> GroupElement:
        return _inverse(self, w)


def _unit(n, i):
    return tuple(1 if k == i else 0 for k in range(n))


def _length_class(rs, lam):
    sq = rs.inner(lam, lam)
    return LONG if sq == 2 else SHORT


def _cartan_from_gram(gram):
    n = len(gram)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = 2 * gram[i][j] / gram[j][j]
            if v.denominator != 1:
                raise InvariantViolation("non-integral Cartan entry")
            row.append(int(v))
        out.append(row)
    return out


def _positive_roots(cartan):
    n = len(cartan)
    simple = [_unit(n, i) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            if beta == simple[i]:
                continue
            p = sum(beta[j] * cartan[j][i] for j in range(n))
            gamma = tuple(beta[k] - (p if k == i else 0) for k in range(n))
            if all(x >= 0 for x in gamma) and gamma not in seen:
                seen.add(gamma)
                queue.append(gamma)
    return sorted(seen, key=lambda b: (sum(b), tuple(-x for x in b)))


def _reflection(rs, beta) -> Reflection:
    n = len(beta)
    sq = rs.inner(beta, beta)
    gb = [sum(rs.gram[i][j] * beta[j] for j in range(n)) for i in range(n)]
    coroot = []
    for i in range(n):
        v = 2 * gb[i] / sq
        if v.denominator != 1:
            raise InvariantViolation("non-integral coroot pairing")
        coroot.append(int(v))
    matrix = tuple(tuple((1 if i == j else 0) - beta[i] * coroot[j] for j in range(n)) for i in range(n))
    return Reflection(tuple(beta), tuple(coroot), LONG if sq == 2 else SHORT, matrix)


def _inverse(rs, w: GroupElement) -> GroupElement:
    # w preserves the form: M^T G M = G, hence M^{-1} = G^{-1} M^T G
    n = rs.rank
    g = rs.gram
    ginv = _invert(g)
    mt = [list(col) for col in zip(*w.matrix)]
    tmp = [[sum(mt[i][k] * g[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    inv = [[sum(ginv[i][k] * tmp[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return GroupElement(tuple(tuple(int(x) for x in r) for r in inv), w.length)


def _invert(a):
    n = len(a)
    m = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c])
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [r[n:] for r in m]


def length_distribution(rs: RootSystem) -> list[int]:
    """Number of elements of each length, by breadth-first search on the orbit of 2*rho."""
    rs.require_matrices()
    n = rs.rank
    cartan = rs.cartan
    two_rho = tuple(sum(b[i] for b in rs.positive_roots) for i in range(n))
    dist = {two_rho: 0}
    frontier = [two_rho]
    counts = [1]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(n):
                p = sum(v[j] * cartan[j][i] for j in range(n))
                if p <= 0:
                    continue  # s_i would shorten; only walk upward
                u = v[:i] + (v[i] - p,) + v[i + 1:]
                if u not in dist:
                    dist[u] = len(counts)
                    nxt.append(u)
        if nxt:
            counts.append(len(nxt))
        frontier = nxt
    return counts


def degrees_from_poincare(counts: list[int], rank: int) -> list[int]:
    """Recover d_1..d_r from P(t) = prod (1 - t^d_i)/(1 - t)."""
    poly = list(counts)
    for _ in range(rank):
        poly = [a - b for a, b in zip(poly + [0], [0] + poly)]
    degs = []
    for _ in range(rank):
        k = next((i for i in range(1, len(poly)) if poly[i]), None)
        if k is None or poly[k] >= 0:
            raise InvariantViolation("Poincare polynomial does not factor into cyclotomic pieces")
        degs.append(k)
        # divide by (1 - t^k): q[i] = poly[i] + q[i-k]
        q = [0] * len(poly)
        for i in range(len(poly)):
            q[i] = poly[i] + (q[i - k] if i >= k else 0)
        poly = q
    if any(poly[1:]) or poly[0] != 1:
        raise InvariantViolation("leftover factor after extracting degrees")
    return sorted(degs)


POINCARE_BOUND = 60000


@lru_cache(maxsize=None)
def build(t: CartanType) -> RootSystem:
    """Exact root data; degrees from the Poincare polynomial when |W| is small enough."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    table = degree_table(t)
    if not t.crystallographic:
        return RootSystem(t, table, False)
    simple, scale = _realization(t)
    n = t.rank
    gram = [[scale * sum((a * b for a, b in zip(simple[i], simple[j])), Fraction(0)) for j in range(n)] for i in range(n)]
    rs = RootSystem(t, table, True, simple, scale, gram, _cartan_from_gram(gram))
    rs.positive_roots = _positive_roots(rs.cartan)
    rs.reflections = [_reflection(rs, b) for b in rs.positive_roots]
    if prod(table) <= POINCARE_BOUND:
        degs = degrees_from_poincare(length_distribution(rs), n)
        if degs != sorted(table):
            raise InvariantViolation(f"computed degrees {degs} disagree with table {table} for {t}")
        rs.degrees = degs
        rs.degree_source = "poincare"
    if len(rs.positive_roots) != sum(d - 1 for d in rs.degrees):
        raise InvariantViolation("number of reflections differs from sum(d_i - 1)")
    lengths = {s.length_class for s in rs.reflections}
    if t.simply_laced and lengths != {LONG}:
        raise InvariantViolation("simply laced type with two root lengths")
    return rs


def enumerate_group(rs: RootSystem, bound: int = POINCARE_BOUND) -> list[GroupElement]:
    """All elements of W, in breadth-first (length) order, each with its length."""
    rs.require_matrices()
    if rs.order > bound:
        raise DomainError(f"|W| = prod d_i = {rs.order} exceeds bound {bound}")
    return list(_enumerate_cached(rs.cartan_type))


@lru_cache(maxsize=16)
def _enumerate_cached(t: CartanType):
    rs = build(t)
    n = rs.rank
    cartan = rs.cartan
    start = identity_element(n)
    seen = {start.matrix}
    out = [start]
    frontier = [start]
    length = 0
    while frontier:
        length += 1
        nxt = []
        for w in frontier:
            m = w.matrix
            for i in range(n):
                # left multiplication by s_i changes only row i
                row = tuple(m[i][j] - sum(cartan[k][i] * m[k][j] for k in range(n)) for j in range(n))
                new = m[:i] + (row,) + m[i + 1:]
                if new not in seen:
                    seen.add(new)
                    g = GroupElement(new, length)
                    out.append(g)
                    nxt.append(g)
        frontier = nxt
    return tuple(out)


# --- subdiagrams -------------------------------------------------------------


def _components(nodes, adjacent):
    nodes = list(nodes)
    left = set(nodes)
    comps = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in nodes:
                if u in left and u not in comp and adjacent(v, u):
                    comp.add(u)
                    stack.append(u)
        left -= comp
        comps.append(sorted(comp))
    return comps


def identify_component(nodes, bond, sqlen=None) -> CartanType:
    """Type of a connected Coxeter diagram.

    ``bond(i, j)`` returns m_ij; ``sqlen`` (optional) gives squared root
    lengths, used to tell B from C.
    """
    k = len(nodes)
    if k == 1:
        return CartanType("A", 1)
    edges = [(i, j, bond(i, j)) for i, j in combinations(nodes, 2) if bond(i, j) > 2]
    labels = sorted(m for _, _, m in edges)
    deg = {v: sum(1 for e in edges if v in e[:2]) for v in nodes}
    if k == 2:
        m = labels[0]
        if m == 3:
            return CartanType("A", 2)
        if m == 4:
            return CartanType("B", 2)
        if m == 6 and sqlen is not None:
            return CartanType("G", 2)
        return CartanType("I", 2, m)
    if 5 in labels:
        return CartanType("H", k)
    if 4 in labels:
        i, j, _ = next(e for e in edges if e[2] == 4)
        if k == 4 and deg[i] == 2 and deg[j] == 2:
            return CartanType("F", 4)
        if sqlen is None:
            return CartanType("B", k)
        lens = [sqlen(v) for v in nodes]
        shorts = sum(1 for x in lens if x < max(lens))
        return CartanType("B", k) if shorts == 1 else CartanType("C", k)
    branch = [v for v in nodes if deg[v] == 3]
    if not branch:
        return CartanType("A", k)
    b = branch[0]
    arms = []
    for nb in [v for v in nodes if bond(b, v) > 2]:
        length, prev, cur = 1, b, nb
        while True:
            nxt = [v for v in nodes if v not in (prev, cur) and bond(cur, v) > 2]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return CartanType("D", k)
    return CartanType("E", k)


def _coxeter_from_cartan(aij, aji):
    prod_ = aij * aji
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(prod_, 0)


def _factors_for(rs: RootSystem, roots: dict, nodes) -> tuple:
    """Decompose the diagram on the given nodes (node -> root vector) into factors."""
    if rs.has_matrices:
        def pair(i, j):
            return 2 * rs.inner(roots[i], roots[j]) / rs.inner(roots[j], roots[j])

        def bond(i, j):
            if i == j:
                return 1
            p = pair(i, j) * pair(j, i)
            return {0: 2, 1: 3, 2: 4, 3: 6}.get(int(p), 0)

        def sqlen(i):
            return rs.inner(roots[i], roots[i])
    else:
        cm = coxeter_matrix(rs.cartan_type)

        def bond(i, j):
            return cm[i][j]
        sqlen = None
    two = rs.has_matrices and not rs.cartan_type.simply_laced
    factors = []
    for comp in _components(nodes, lambda a, b: bond(a, b) > 2):
        ft = identify_component(comp, bond, sqlen)
        if sqlen is None:
            classes = (LONG,)
        else:
            lens = sorted({sqlen(v) for v in comp}, reverse=True)
            cls = [LONG if x == 2 else SHORT for x in lens]
            classes = tuple(cls)
        factors.append(Factor(ft, tuple(comp), classes, two))
    factors.sort(key=lambda f: (-f.cartan_type.rank, str(f.cartan_type), f.nodes))
    return tuple(factors)


def factor_degrees(factors) -> tuple:
    return tuple(sorted(d for f in factors for d in degree_table(f.cartan_type)))


def parabolic_class(rs: RootSystem, nodes) -> ParabolicClass:
    nodes = tuple(sorted(nodes))
    roots = {i: _unit(rs.rank, i) for i in range(rs.rank)}
    factors = _factors_for(rs, roots, nodes)
    return ParabolicClass(nodes, factors, factor_degrees(factors), len(nodes) < rs.rank)


def parabolic_classes(rs: RootSystem) -> list[ParabolicClass]:
    """One entry per subset of simple nodes (0-based), no conjugacy deduplication."""
    out = []
    for k in range(rs.rank + 1):
        for sub in combinations(range(rs.rank), k):
            out.append(parabolic_class(rs, sub))
    return out


# --- extended diagrams and Borel-de Siebenthal ---------------------------------


@dataclass(frozen=True)
class ExtendedDiagram:
    cartan_type: CartanType
    roots: tuple        # node 0 is minus the highest root, nodes 1..r the simple roots
    marks: tuple
    edges: tuple        # (i, j, multiplicity, index of the shorter end or None)

    def neighbours(self, v):
        return sorted({j for i, j, _, _ in self.edges if i == v} | {i for i, j, _, _ in self.edges if j == v})


def extended_diagram(t: CartanType) -> ExtendedDiagram:
    if isinstance(t, str):
        t = CartanType.parse(t)
    if not t.crystallographic:
        raise DomainError(f"{t} is not crystallographic; no extended Dynkin diagram")
    rs = build(t)
    theta = rs.highest_root()
    roots = (tuple(-x for x in theta),) + tuple(_unit(rs.rank, i) for i in range(rs.rank))
    marks = (1,) + tuple(theta)
    edges = []
    for i, j in combinations(range(len(roots)), 2):
        a = 2 * rs.inner(roots[i], roots[j]) / rs.inner(roots[j], roots[j])
        b = 2 * rs.inner(roots[j], roots[i]) / rs.inner(roots[i], roots[i])
        mult = int(a * b)
        if mult:
            li, lj = rs.inner(roots[i], roots[i]), rs.inner(roots[j], roots[j])
            shorter = None if li == lj else (i if li < lj else j)
            edges.append((i, j, mult, shorter))
    # marks satisfy sum_i m_i alpha_i = 0 over all nodes
    total = [sum(m * r[k] for m, r in zip(marks, roots)) for k in range(rs.rank)]
    if any(total):
        raise InvariantViolation("marks do not annihilate the extended root vector")
    return ExtendedDiagram(t, roots, marks, tuple(edges))


@dataclass(frozen=True)
class BdsEntry:
    deleted: int
    mark: int
    factors: tuple

    def label(self) -> str:
        return "x".join(f.label() for f in self.factors)

    @property
    def rank(self):
        return sum(f.cartan_type.rank for f in self.factors)


def subsystem_roots(rs: RootSystem, simple) -> set:
    """All roots (both signs) generated by reflecting the given roots in each other."""
    simple = [tuple(s) for s in simple]
    found = set(simple) | {tuple(-x for x in s) for s in simple}
    queue = deque(found)
    while queue:
        beta = queue.popleft()
        for a in simple:
            p = 2 * rs.inner(beta, a) / rs.inner(a, a)
            gamma = tuple(beta[k] - p * a[k] for k in range(len(beta)))
            gamma = tuple(int(x) for x in gamma)
            if gamma not in found:
                found.add(gamma)
                queue.append(gamma)
    return found


def bds_subsystems(t: CartanType) -> list[BdsEntry]:
    """Delete each vertex of the extended diagram in turn."""
    if isinstance(t, str):
        t = CartanType.parse(t)
    ext = extended_diagram(t)
    rs = build(t)
    roots = dict(enumerate(ext.roots))
    out = []
    for v in range(len(ext.roots)):
        keep = [i for i in roots if i != v]
        factors = _factors_for(rs, roots, keep)
        for f in factors:
            sub = subsystem_roots(rs, [roots[i] for i in f.nodes])
            expected = 2 * sum(d - 1 for d in degree_table(f.cartan_type))
            if len(sub) != expected:
                raise InvariantViolation(f"subsystem {f.cartan_type} has {len(sub)} roots, expected {expected}")
            seen = tuple(sorted({_length_class(rs, r) for r in sub}, key=[LONG, SHORT].index))
            if seen != f.classes:
                raise InvariantViolation("length classes read from roots disagree with simple roots")
        out.append(BdsEntry(v, ext.marks[v], factors))
    return out


@dataclass(frozen=True)
class Stabilizer:
    parabolic: ParabolicClass
    reflections: tuple
    conjugator: GroupElement  # w with w b dominant


def stabilizer(rs: RootSystem, b) -> Stabilizer:
    """Reflections fixing b (given by alpha_i(b)) and the standard type of W_b."""
    rs.require_matrices()
    b = tuple(Fraction(x) for x in b)
    if len(b) != rs.rank:
        raise DomainError("point must be given by its values on the simple roots")
    fixing = tuple(s for s in rs.reflections if sum((x * y for x, y in zip(s.root, b)), Fraction(0)) == 0)
    cur = list(b)
    w = identity_element(rs.rank)
    cartan = rs.cartan
    while True:
        i = next((i for i in range(rs.rank) if cur[i] < 0), None)
        if i is None:
            break
        ci = cur[i]
        cur = [cur[j] - cartan[j][i] * ci for j in range(rs.rank)]
        w = rs.simple_reflection(i) * w
    nodes = tuple(i for i in range(rs.rank) if cur[i] == 0)
    par = parabolic_class(rs, nodes)
    if len(fixing) != sum(sum(d - 1 for d in degree_table(f.cartan_type)) for f in par.factors):
        raise InvariantViolation("stabilizer reflection count disagrees with its type")
    return Stabilizer(par, fixing, w)
