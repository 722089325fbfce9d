"""Character tables of small reflection groups, restriction to parabolic
subgroups, explicit matrix models and partial-KZ residues."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, isqrt

from sympy import Matrix, Symbol, factor_list

from .dunkl import ParamFunction, act, reflection_scalar
from .errors import DomainError, InvariantViolation
from .exactalg import ExactMatrix, MultiPoly, Span, determinant, kernel_basis, monomials
from .rootsys import CartanType, GroupElement, ParabolicClass, RootSystem, build, identity_element, parabolic_class
from .sncombin import Partition, partitions

ENUMERATION_BOUND = 1200
SYMMETRIC_MAX_RANK = 7


# --- symmetric group characters ----------------------------------------------------


@lru_cache(maxsize=None)
def mn_character(lam: tuple, mu: tuple) -> int:
    """chi^lam at cycle type mu, by removing border strips on beta-numbers."""
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], mu[1:]
    k = len(lam)
    beta = [lam[i] + k - 1 - i for i in range(k)]
    bs = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and b - r not in bs:
            sign = -1 if sum(1 for x in beta if b - r < x < b) % 2 else 1
            nb = sorted((bs - {b}) | {b - r}, reverse=True)
            new = tuple(x - (k - 1 - i) for i, x in enumerate(nb))
            total += sign * mn_character(tuple(x for x in new if x > 0), rest)
    return total


def centralizer_order(mu: tuple) -> int:
    z = 1
    for part in set(mu):
        m = mu.count(part)
        z *= part ** m * factorial(m)
    return z


def _permutation_element(perm: list) -> GroupElement:
    """Matrix on h* (simple-root coordinates) of a permutation of {0..n}."""
    n = len(perm) - 1
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        a, b = perm[i], perm[i + 1]
        lo, hi, sgn = (a, b, 1) if a < b else (b, a, -1)
        for k in range(lo, hi):
            rows[k][i] += sgn
    return GroupElement(tuple(tuple(r) for r in rows))


def _cycles_perm(size: int, blocks) -> list:
    """Permutation of {0..size-1} with the given cycles (lists of points)."""
    perm = list(range(size))
    for cyc in blocks:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a] = b
    return perm


def _consecutive_cycles(start: int, mu: tuple) -> list:
    out, pos = [], start
    for part in mu:
        out.append(list(range(pos, pos + part)))
        pos += part
    return out


def permutation_of(rs: RootSystem, g: GroupElement) -> list:
    """Recover sigma in S_{n+1} from its matrix, reading the images e_sigma(i) - e_sigma(i+1)."""
    n = rs.rank
    perm = [0] * (n + 1)
    for i in range(n):
        v = rs.ambient([g.matrix[k][i] for k in range(n)])
        perm[i] = v.index(1)
        if i == n - 1:
            perm[n] = v.index(-1)
    return perm


def cycle_type(perm: list) -> tuple:
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen:
            continue
        k, x = 0, s
        while x not in seen:
            seen.add(x)
            x = perm[x]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


# --- tables -------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyClass:
    representative: GroupElement
    size: int
    label: str


@dataclass
class CharacterTable:
    name: str
    order: int
    classes: list
    labels: list
    values: list                       # values[i][k] = chi_i on class k
    generators: list = field(default_factory=list, repr=False)
    b_values: list | None = None
    locate: object = field(default=None, repr=False)   # GroupElement -> class index
    _elements: list | None = field(default=None, repr=False)

    @property
    def dims(self) -> list[int]:
        return [int(row[0]) for row in self.values]

    def inner(self, u, v) -> Fraction:
        """Class-weighted inner product; all characters here are real."""
        s = sum((c.size * a * b for c, a, b in zip(self.classes, u, v)), Fraction(0))
        return s / self.order

    def index(self, label: str) -> int:
        key = _normalise_label(label)
        for i, lab in enumerate(self.labels):
            if _normalise_label(lab) == key:
                return i
        if key == "triv":
            return next(i for i, row in enumerate(self.values) if all(x == 1 for x in row))
        if key == "sign":
            det = [_det_sign(c.representative) for c in self.classes]
            for i, row in enumerate(self.values):
                if list(row) == det:
                    return i
        raise DomainError(f"no irreducible labelled {label!r} in {self.name}; known: {', '.join(self.labels)}")

    def character(self, label: str) -> list:
        return self.values[self.index(label)]

    def elements(self) -> list[GroupElement]:
        if self._elements is None:
            if self.order > ENUMERATION_BOUND:
                raise DomainError(f"{self.name} has order {self.order} > {ENUMERATION_BOUND}; no element list")
            self._elements = closure(self.generators, self.classes[0].representative.rank)
        return self._elements

    def check(self):
        n = len(self.values)
        for i in range(n):
            for j in range(i, n):
                ip = self.inner(self.values[i], self.values[j])
                if ip != (1 if i == j else 0):
                    raise InvariantViolation(f"orthogonality fails for {self.labels[i]}, {self.labels[j]} in {self.name}")
        if sum(d * d for d in self.dims) != self.order:
            raise InvariantViolation(f"sum of squared dimensions differs from |G| in {self.name}")
        if sum(c.size for c in self.classes) != self.order:
            raise InvariantViolation("class sizes do not add up to the group order")


def _normalise_label(s: str) -> str:
    for ch in (" ", "phi", "_", "(", ")"):
        s = s.replace(ch, "")
    return s


def _det_sign(g: GroupElement) -> int:
    return int(Matrix(g.matrix).det())


def closure(generators, rank) -> list[GroupElement]:
    """All products of the generators, breadth first from the identity."""
    e = identity_element(rank)
    seen = {e.matrix}
    out = [e]
    frontier = [e]
    length = 0
    while frontier:
        length += 1
        nxt = []
        for w in frontier:
            for g in generators:
                x = g * w
                if x.matrix not in seen:
                    seen.add(x.matrix)
                    x = GroupElement(x.matrix, length)
                    out.append(x)
                    nxt.append(x)
        frontier = nxt
    return out


def _symmetric_table(rs: RootSystem) -> CharacterTable:
    n = rs.rank + 1
    parts = [p.parts for p in partitions(n)]
    mus = list(reversed(parts))          # identity class (1^n) first
    classes = [
        ConjugacyClass(_permutation_element(_cycles_perm(n, _consecutive_cycles(0, mu))), factorial(n) // centralizer_order(mu), str(Partition(mu)))
        for mu in mus
    ]
    values = [[Fraction(mn_character(lam, mu)) for mu in mus] for lam in parts]
    index = {mu: k for k, mu in enumerate(mus)}
    table = CharacterTable(
        f"S{n}", factorial(n), classes, [str(Partition(lam)) for lam in parts], values,
        generators=[rs.simple_reflection(i) for i in range(rs.rank)],
        locate=lambda g: index[cycle_type(permutation_of(rs, g))],
    )
    table.check()
    return table


def _young_blocks(rank: int, nodes) -> list[list[int]]:
    blocks, cur = [], [0]
    for i in range(rank):
        if i in nodes:
            cur.append(i + 1)
        else:
            blocks.append(cur)
            cur = [i + 1]
    blocks.append(cur)
    return blocks


def _young_table(rs: RootSystem, nodes) -> CharacterTable:
    """Young subgroup prod S_{b} with labels built from partitions of the nontrivial blocks."""
    from itertools import product

    blocks = [b for b in _young_blocks(rs.rank, set(nodes)) if len(b) > 1]
    n = rs.rank + 1
    per_block = [[p.parts for p in partitions(len(b))] for b in blocks]
    mus = list(product(*[list(reversed(p)) for p in per_block]))
    lams = list(product(*per_block))
    order = 1
    for b in blocks:
        order *= factorial(len(b))
    classes = []
    for mu in mus:
        cycles = []
        size = 1
        for b, m in zip(blocks, mu):
            cycles += [[b[i] for i in c] for c in _consecutive_cycles(0, m)]
            size *= factorial(len(b)) // centralizer_order(m)
        label = "x".join(str(Partition(m)) for m in mu) or "1"
        classes.append(ConjugacyClass(_permutation_element(_cycles_perm(n, cycles)), size, label))
    values = []
    for lam in lams:
        row = []
        for mu in mus:
            v = 1
            for l_, m in zip(lam, mu):
                v *= mn_character(l_, m)
            row.append(Fraction(v))
        values.append(row)
    labels = ["x".join(str(Partition(l_)) for l_ in lam) or "triv" for lam in lams]
    node_set = set(nodes)

    def locate(g):
        perm = permutation_of(rs, g)
        key = []
        for b in blocks:
            cyc = cycle_type([b.index(perm[x]) for x in b])
            key.append(cyc)
        return mus.index(tuple(key))

    table = CharacterTable(
        "x".join(f"S{len(b)}" for b in blocks) or "1", order, classes, labels, values,
        generators=[rs.simple_reflection(i) for i in sorted(node_set)], locate=locate,
    )
    table.check()
    return table


def _graded_series(g: GroupElement, top: int) -> list[Fraction]:
    """Coefficients of 1/det(1 - t g) up to t^top."""
    n = g.rank
    cp = Matrix(g.matrix).charpoly().all_coeffs()   # det(x - g) = sum cp[k] x^(n-k)
    den = [Fraction(int(c)) for c in cp]            # det(1 - t g) = sum cp[k] t^k
    out = [Fraction(0)] * (top + 1)
    out[0] = Fraction(1)
    for d in range(1, top + 1):
        out[d] = -sum((den[k] * out[d - k] for k in range(1, min(n, d) + 1)), Fraction(0))
    return out


def _graded_multiplicities(classes, values, order, top) -> list[list[Fraction]]:
    series = [_graded_series(c.representative, top) for c in classes]
    return [
        [sum((c.size * v * s[d] for c, v, s in zip(classes, row, series)), Fraction(0)) / order for d in range(top + 1)]
        for row in values
    ]


def _burnside_table(name: str, elements: list, generators: list, inverse, top: int) -> CharacterTable:
    """Characters from common eigenvectors of the class-algebra structure matrices.

    Every Weyl group character is rational, so central character values are
    integers; a random integer combination of the structure matrices has simple
    integer eigenvalues, and its eigenvectors are the central characters.
    """
    order = len(elements)
    cls_of: dict = {}
    reps = []
    for w in elements:
        if w.matrix in cls_of:
            continue
        k = len(reps)
        reps.append(w)
        cls_of[w.matrix] = k
        queue = [w]
        while queue:
            x = queue.pop()
            for g in generators:
                y = g * x * g
                if y.matrix not in cls_of:
                    cls_of[y.matrix] = k
                    queue.append(y)
    r = len(reps)
    sizes = [0] * r
    for w in elements:
        sizes[cls_of[w.matrix]] += 1
    inv = {w.matrix: inverse(w) for w in elements}
    # a[j][i][k] = #{x in C_j : x^{-1} z_k in C_i}
    a = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, z in enumerate(reps):
        for x in elements:
            y = inv[x.matrix] * z
            a[cls_of[x.matrix]][cls_of[y.matrix]][k] += 1
    rng = random.Random(1)
    t = Symbol("t")
    for _attempt in range(20):
        coeffs = [rng.randint(1, 4 * r) for _ in range(r)]
        mat = [[sum(coeffs[j] * a[j][i][k] for j in range(r)) for k in range(r)] for i in range(r)]
        _, facs = factor_list(Matrix(mat).charpoly(t).as_expr(), t)
        if all(m == 1 and f.as_poly(t).degree() == 1 for f, m in facs):
            break
    else:
        raise InvariantViolation(f"could not separate the characters of {name}")
    values = []
    for f, _ in facs:
        p = f.as_poly(t).all_coeffs()
        lam = Fraction(-int(p[1]), int(p[0]))
        shifted = [[Fraction(mat[i][k]) - (lam if i == k else 0) for k in range(r)] for i in range(r)]
        kb = kernel_basis(ExactMatrix(shifted))
        if len(kb) != 1:
            raise InvariantViolation("eigenspace of the class-algebra combination is not a line")
        omega = [x / kb[0][0] for x in kb[0]]
        ssq = sum((o * o / s for o, s in zip(omega, sizes)), Fraction(0))
        dim2 = Fraction(order) / ssq
        if dim2.denominator != 1 or isqrt(int(dim2)) ** 2 != int(dim2):
            raise InvariantViolation(f"non-square degree {dim2} from the class algebra")
        dim = isqrt(int(dim2))
        values.append([o * dim / s for o, s in zip(omega, sizes)])
    classes = [ConjugacyClass(w, s, f"C{k + 1}") for k, (w, s) in enumerate(zip(reps, sizes))]
    mults = _graded_multiplicities(classes, values, order, top)
    bvals = []
    for row, m in zip(values, mults):
        b = next((d for d, x in enumerate(m) if x), None)
        if b is None:
            raise InvariantViolation("an irreducible character is missing from the polynomial ring")
        bvals.append(b)
    keyed = sorted(zip(values, bvals), key=lambda vb: (int(vb[0][0]), vb[1], [-x for x in vb[0]]))
    values = [v for v, _ in keyed]
    bvals = [b for _, b in keyed]
    labels, seen = [], {}
    for v, b in keyed:
        base = f"phi{int(v[0])},{b}"
        seen[base] = seen.get(base, 0) + 1
    count: dict = {}
    for v, b in keyed:
        base = f"phi{int(v[0])},{b}"
        if seen[base] > 1:
            count[base] = count.get(base, 0) + 1
            base += "'" * count[base]
        labels.append(base)
    table = CharacterTable(name, order, classes, labels, values, generators=list(generators), b_values=bvals,
                           locate=lambda g: cls_of[g.matrix], _elements=list(elements))
    table.check()
    return table


def _rs(t) -> RootSystem:
    if isinstance(t, RootSystem):
        return t
    if isinstance(t, str):
        t = CartanType.parse(t)
    return build(t)


@lru_cache(maxsize=32)
def _character_table_cached(t: CartanType, method: str) -> CharacterTable:
    rs = build(t)
    rs.require_matrices()
    if method == "auto":
        method = "symmetric" if t.family == "A" else "burnside"
    if method == "symmetric":
        if t.family != "A" or t.rank > SYMMETRIC_MAX_RANK:
            raise DomainError(f"the symmetric-group rule covers A_n with n <= {SYMMETRIC_MAX_RANK}, not {t}")
        return _symmetric_table(rs)
    if rs.order > ENUMERATION_BOUND:
        raise DomainError(f"|W({t})| = {rs.order} exceeds {ENUMERATION_BOUND}; character table unsupported")
    gens = [rs.simple_reflection(i) for i in range(rs.rank)]
    return _burnside_table(str(t), closure(gens, rs.rank), gens, rs.inverse, rs.num_reflections)


def character_table(rs, method: str = "auto") -> CharacterTable:
    """Exact character table; method is "auto", "symmetric" (type A) or "burnside"."""
    rs = _rs(rs)
    return _character_table_cached(rs.cartan_type, method)


@lru_cache(maxsize=64)
def _subgroup_table_cached(t: CartanType, nodes: tuple) -> CharacterTable:
    rs = build(t)
    if t.family == "A":
        if t.rank > SYMMETRIC_MAX_RANK:
            raise DomainError(f"the symmetric-group rule covers A_n with n <= {SYMMETRIC_MAX_RANK}")
        return _young_table(rs, nodes)
    if rs.order > ENUMERATION_BOUND:
        raise DomainError(f"|W({t})| = {rs.order} exceeds {ENUMERATION_BOUND}")
    gens = [rs.simple_reflection(i) for i in nodes]
    elems = closure(gens, rs.rank)
    name = parabolic_class(rs, nodes).type_label()
    return _burnside_table(name, elems, gens, rs.inverse, rs.num_reflections)


def subgroup_table(rs, p) -> CharacterTable:
    rs = _rs(rs)
    nodes = p.nodes if isinstance(p, ParabolicClass) else tuple(sorted(p))
    if any(not 0 <= i < rs.rank for i in nodes):
        raise DomainError(f"parabolic nodes {nodes} out of range for {rs.cartan_type}")
    return _subgroup_table_cached(rs.cartan_type, nodes)


# --- branching -----------------------------------------------------------------------


@dataclass(frozen=True)
class BranchingMatrix:
    parent: str
    parabolic: str
    nodes: tuple
    row_labels: tuple      # irreducibles of W
    col_labels: tuple      # irreducibles of W'
    matrix: tuple

    def induction(self) -> "BranchingMatrix":
        """Frobenius reciprocity: rows become the W' irreducibles."""
        return BranchingMatrix(self.parabolic, self.parent, self.nodes, self.col_labels, self.row_labels,
                               tuple(zip(*self.matrix)))

    def entry(self, tau: str, xi: str) -> int:
        return self.matrix[_find(self.row_labels, tau)][_find(self.col_labels, xi)]


def _find(labels, lab):
    key = _normalise_label(lab)
    for i, x in enumerate(labels):
        if _normalise_label(x) == key:
            return i
    raise DomainError(f"unknown label {lab!r}")


def restriction_multiplicities(rs, p) -> BranchingMatrix:
    """n_{tau xi} = <tau restricted to W', xi>, from exact class-function inner products."""
    rs = _rs(rs)
    if not isinstance(p, ParabolicClass):
        p = parabolic_class(rs, p)
    big = character_table(rs)
    small = subgroup_table(rs, p)
    where = [big.locate(c.representative) for c in small.classes]
    mat = []
    for row in big.values:
        restricted = [row[k] for k in where]
        entries = []
        for xi in small.values:
            m = small.inner(restricted, xi)
            if m.denominator != 1 or m < 0:
                raise InvariantViolation(f"restriction multiplicity {m} is not a nonnegative integer")
            entries.append(int(m))
        mat.append(tuple(entries))
    for row, d in zip(mat, big.dims):
        if sum(n * e for n, e in zip(row, small.dims)) != d:
            raise InvariantViolation("sum of n * dim xi differs from dim tau")
    return BranchingMatrix(big.name, small.name, p.nodes, tuple(big.labels), tuple(small.labels), tuple(mat))


# --- matrix models ----------------------------------------------------------------------


@dataclass
class IrrepModel:
    """An irreducible realised inside the degree-d polynomials."""
    label: str
    degree: int
    rank: int
    span: Span = field(repr=False)

    @property
    def dim(self) -> int:
        return self.span.dim

    def basis(self) -> list[MultiPoly]:
        mons = monomials(self.rank, self.degree)
        return [MultiPoly(self.rank, dict(zip(mons, row))) for row in self.span.rows]

    def matrix(self, g: GroupElement) -> list[list[Fraction]]:
        mons = monomials(self.rank, self.degree)
        cols = []
        for f in self.basis():
            img = act(g, f)
            c = self.span.coords([img.coeff(m) for m in mons])
            if c is None:
                raise InvariantViolation("model space is not stable under the group")
            cols.append(c)
        return [list(r) for r in zip(*cols)]


def _poly_vector(f: MultiPoly, mons) -> list:
    return [f.coeff(m) for m in mons]


def _orbit_span(f: MultiPoly, generators, mons) -> Span:
    span = Span([_poly_vector(f, mons)], len(mons))
    while True:
        basis = [MultiPoly(f.nvars, dict(zip(mons, row))) for row in span.rows]
        new = [_poly_vector(act(g, b), mons) for g in generators for b in basis]
        grown = Span(span.rows + new, len(mons))
        if grown.dim == span.dim:
            return span
        span = grown


def irrep_model(table: CharacterTable, label: str, max_extra: int = 3) -> IrrepModel:
    """Realise an irreducible inside the polynomial ring by isotypic projection.

    Starting at the lowest degree containing it, project monomials onto the
    isotypic component and keep the first whose orbit spans a space of the
    right dimension; its character is then checked against the table.
    """
    i = table.index(label)
    chi, dim = table.values[i], table.dims[i]
    rank = table.classes[0].representative.rank
    elems = table.elements()
    start = table.b_values[i] if table.b_values else 0
    weights = [(w, chi[table.locate(w)]) for w in elems]
    weights = [(w, x) for w, x in weights if x]
    for d in range(start, start + max_extra + 1):
        mons = monomials(rank, d)
        for m in mons:
            mono = MultiPoly.monomial(m)
            proj = MultiPoly(rank)
            for w, x in weights:
                proj = proj + act(w, mono).scale(x)
            if not proj:
                continue
            span = _orbit_span(proj, table.generators, mons)
            if span.dim != dim:
                continue
            model = IrrepModel(table.labels[i], d, rank, span)
            for c, val in zip(table.classes, chi):
                mat = model.matrix(c.representative)
                if sum(mat[k][k] for k in range(dim)) != val:
                    raise InvariantViolation(f"model of {label} has the wrong character")
            return model
    raise DomainError(f"no polynomial model of {label} found in degrees {start}..{start + max_extra}")


def decompose_polynomial_span(rs, polys) -> dict:
    """Multiplicity of each irreducible in a W-stable span of homogeneous polynomials."""
    rs = _rs(rs)
    if not polys:
        return {}
    table = character_table(rs)
    d = polys[0].degree()
    mons = monomials(rs.rank, d)
    span = Span([_poly_vector(f, mons) for f in polys], len(mons))
    basis = [MultiPoly(rs.rank, dict(zip(mons, row))) for row in span.rows]
    traces = []
    for c in table.classes:
        tr = Fraction(0)
        for k, f in enumerate(basis):
            co = span.coords(_poly_vector(act(c.representative, f), mons))
            if co is None:
                raise DomainError("the span is not stable under W")
            tr += co[k]
        traces.append(tr)
    out = {}
    for lab, row in zip(table.labels, table.values):
        m = table.inner(traces, row)
        if m:
            out[lab] = int(m)
    return out


# --- partial KZ residues ------------------------------------------------------------------


@dataclass
class KZResidue:
    hyperplane: tuple          # alpha_s restricted to h^{W'}, primitive
    reflections: tuple         # roots of the reflections s not in W' with this restriction
    matrix: list               # sum over those s of c_s (s - 1) on Hom_{W'}(xi, tau)
    per_reflection: tuple      # (root, matrix or None when s alone does not preserve the Hom space)

    @property
    def trace(self):
        return sum((self.matrix[i][i] for i in range(len(self.matrix))), Fraction(0))

    @property
    def det(self):
        return determinant(self.matrix)


@dataclass
class KZResult:
    multiplicity: int
    residues: list
    notice: str = ""


def hom_space(tau_mats: list, xi_mats: list, dt: int, dx: int) -> Span:
    """Intertwiners A (dt x dx, flattened row-major) with T A = A X for each generator pair."""
    eqs = []
    for T, X in zip(tau_mats, xi_mats):
        for i in range(dt):
            for j in range(dx):
                row = [Fraction(0)] * (dt * dx)
                for k in range(dt):
                    row[k * dx + j] += T[i][k]
                for k in range(dx):
                    row[i * dx + k] -= X[k][j]
                eqs.append(row)
    if not eqs:
        return Span([[Fraction(int(i == j)) for j in range(dt * dx)] for i in range(dt * dx)], dt * dx)
    return Span(kernel_basis(ExactMatrix(eqs, dt * dx)), dt * dx)


def _restricted(root, nodes) -> tuple:
    from math import gcd
    v = [root[j] for j in range(len(root)) if j not in nodes]
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return tuple(x // g for x in v) if g else tuple(v)


def _postcompose(M, hom: Span, dt, dx) -> list | None:
    cols = []
    for row in hom.rows:
        A = [row[i * dx:(i + 1) * dx] for i in range(dt)]
        B = [[sum((M[i][k] * A[k][j] for k in range(dt)), Fraction(0)) for j in range(dx)] for i in range(dt)]
        c = hom.coords([x for r in B for x in r])
        if c is None:
            return None
        cols.append(c)
    return [list(r) for r in zip(*cols)] if cols else []


def kz_residue_matrices(rs, p, tau: str, xi: str, c: ParamFunction | None = None) -> KZResult:
    """Residues of the partial KZ connection on Hom_{W'}(xi, tau|W'), one per restricted hyperplane."""
    rs = _rs(rs)
    if not isinstance(p, ParabolicClass):
        p = parabolic_class(rs, p)
    c = c if c is not None else ParamFunction.symbolic(rs)
    big, small = character_table(rs), subgroup_table(rs, p)
    tau, xi = big.labels[big.index(tau)], small.labels[small.index(xi)]
    n = restriction_multiplicities(rs, p).entry(tau, xi)
    if n == 0:
        return KZResult(0, [], f"{xi} does not occur in the restriction of {tau}; the Hom space is zero")
    mt, mx = irrep_model(big, tau), irrep_model(small, xi)
    dt, dx = mt.dim, mx.dim
    hom = hom_space([mt.matrix(g) for g in small.generators], [mx.matrix(g) for g in small.generators], dt, dx)
    if hom.dim != n:
        raise InvariantViolation(f"Hom space has dimension {hom.dim}, branching says {n}")
    nodes = set(p.nodes)
    groups: dict = {}
    for s in rs.reflections:
        hp = _restricted(s.root, nodes)
        if any(hp):
            groups.setdefault(hp, []).append(s)
    ident = [[Fraction(int(i == j)) for j in range(dt)] for i in range(dt)]
    residues = []
    for hp in sorted(groups):
        refl = groups[hp]
        total = [[Fraction(0)] * n for _ in range(n)]
        per = []
        by_class: dict = {}
        for s in refl:
            M = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(mt.matrix(GroupElement(s.matrix)), ident)]
            by_class.setdefault(s.length_class, []).append(M)
            single = _postcompose(M, hom, dt, dx)
            coef = reflection_scalar(c.of(s))
            per.append((s.root, None if single is None else [[coef * x for x in r] for r in single]))
        for cls, mats in by_class.items():
            S = [[sum((m[i][j] for m in mats), Fraction(0)) for j in range(dt)] for i in range(dt)]
            H = _postcompose(S, hom, dt, dx)
            if H is None:
                raise InvariantViolation("hyperplane residue does not preserve the Hom space")
            coef = reflection_scalar(c[cls])
            total = [[t + coef * h for t, h in zip(tr, hr)] for tr, hr in zip(total, H)]
        residues.append(KZResidue(hp, tuple(s.root for s in refl), total, tuple(per)))
    return KZResult(n, residues)
