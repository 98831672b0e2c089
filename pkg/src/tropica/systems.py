"""Balance systems, Cramer solvers and dependence witnesses.

Witness searches share one engine: every coordinate offers a few options,
each option is a set of difference constraints ``x_a - x_b <= c`` on the
coefficients, and a depth-first search keeps an all-pairs closure of the
accepted constraints so infeasible branches die as soon as a negative cycle
appears.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import networkx as nx

from .errors import DimensionMismatch, PreconditionUnmet, SearchGuard, ShapeMismatch
from .matrices import (
    Matrix,
    adjoint_pair,
    is_sign_singular,
    is_trop_singular,
    permanent,
    sym_det,
)
from .scalars import NEG_INF, Ext, MaxPlus, Sign, Sym, balance, neg, pos, zero_of

INF = math.inf

MAX_WITNESS_VECTORS = 8
MAX_WITNESS_DIM = 10
MAX_CRAMER_N = 10


# ---------------------------------------------------------------------------
# difference constraints


@dataclass
class DifferenceConstraintSystem:
    """Constraints ``x_a - x_b <= c`` over ``k`` variables.

    Variables outside ``support`` are pinned to -inf and may not appear in
    constraints; ``support=None`` means every variable is finite.
    """

    k: int
    constraints: list = field(default_factory=list)
    support: frozenset | None = None

    def add(self, a: int, b: int, c) -> None:
        self.constraints.append((a, b, Fraction(c)))

    def add_equal(self, a: int, b: int, c) -> None:
        """``x_a - x_b = c`` as two opposite inequalities."""
        self.add(a, b, c)
        self.add(b, a, -Fraction(c))


@dataclass(frozen=True)
class Feasible:
    potentials: tuple


@dataclass(frozen=True)
class Infeasible:
    cycle: tuple  # variables along a negative cycle, first repeated at the end


def diff_feasible(system: DifferenceConstraintSystem) -> Feasible | Infeasible:
    """Bellman-Ford from a virtual source joined to every variable by a 0 arc."""
    support = set(range(system.k)) if system.support is None else set(system.support)
    g = nx.DiGraph()
    src = ("source",)
    g.add_node(src)
    for v in support:
        g.add_edge(src, v, weight=Fraction(0))
    for a, b, c in system.constraints:
        if a not in support or b not in support:
            raise ValueError(f"constraint on pinned variable: {a} - {b} <= {c}")
        # x_a <= x_b + c is the arc b -> a of length c
        if g.has_edge(b, a):
            g[b][a]["weight"] = min(g[b][a]["weight"], c)
        else:
            g.add_edge(b, a, weight=c)
    try:
        dist = nx.single_source_bellman_ford_path_length(g, src)
    except nx.NetworkXUnbounded:
        g.remove_node(src)
        return Infeasible(_negative_cycle(g, sorted(support)))
    pot = tuple(
        MaxPlus(dist[v]) if v in support else MaxPlus.zero() for v in range(system.k)
    )
    return Feasible(pot)


def _negative_cycle(g: nx.DiGraph, starts) -> tuple:
    # networkx can fail to extract the cycle when started from the virtual
    # source, so start from each real variable in turn
    for v in starts:
        try:
            return tuple(nx.find_negative_cycle(g, v))
        except nx.NetworkXError:
            continue
    raise AssertionError("negative cycle detected but not located")  # pragma: no cover


class Closure:
    """All-pairs tightest bounds ``d[a][b]`` on ``x_a - x_b``.

    ``add`` folds a constraint in with O(k^2) work and returns False when it
    closes a negative cycle (the object is then unusable).
    """

    __slots__ = ("k", "d")

    def __init__(self, k: int, d=None):
        self.k = k
        if d is None:
            d = [[INF] * k for _ in range(k)]
            for i in range(k):
                d[i][i] = 0
        self.d = d

    def copy(self) -> "Closure":
        return Closure(self.k, [row[:] for row in self.d])

    def add(self, a: int, b: int, c) -> bool:
        d = self.d
        if c >= d[a][b]:
            return True
        if c + d[b][a] < 0:
            return False
        k = self.k
        col_a = [d[x][a] for x in range(k)]
        row_b = d[b]
        for x in range(k):
            xa = col_a[x]
            if xa == INF:
                continue
            base = xa + c
            dx = d[x]
            for y in range(k):
                by = row_b[y]
                if by == INF:
                    continue
                t = base + by
                if t < dx[y]:
                    dx[y] = t
        return True

    def add_all(self, constraints) -> bool:
        for a, b, c in constraints:
            if not self.add(a, b, c):
                return False
        return True

    def point(self) -> list:
        """One feasible assignment (each value <= 0)."""
        out = []
        for x in range(self.k):
            out.append(min([0] + [v for v in self.d[x] if v != INF]))
        return out

    def bounds(self, x: int, anchor: int) -> tuple:
        """Range of ``x_x - x_anchor`` allowed by the constraints."""
        return -self.d[anchor][x], self.d[x][anchor]


class Budget:
    """Caps the number of search nodes across calls; ``None`` means unlimited."""

    def __init__(self, nodes: int | None = None):
        self.nodes = nodes
        self.used = 0

    def spend(self):
        self.used += 1
        if self.nodes is not None and self.used > self.nodes:
            raise SearchGuard(f"search budget of {self.nodes} nodes exhausted")


def _search(
    k: int, options: list[list[list]], first_only: bool = True, budget: Budget | None = None
) -> Iterator[Closure]:
    """Depth-first search choosing one option per coordinate.

    ``options[l]`` is a list of constraint lists; an empty list of options
    makes the branch infeasible.  Yields the closure of every feasible leaf.
    """
    order = sorted(range(len(options)), key=lambda l: len(options[l]))
    if any(not options[l] for l in order):
        return

    def rec(depth: int, cl: Closure):
        if depth == len(order):
            yield cl
            return
        opts = options[order[depth]]
        if budget is not None:
            budget.spend()
        for opt in opts:
            nxt = cl.copy()
            if nxt.add_all(opt):
                yield from rec(depth + 1, nxt)

    for leaf in rec(0, Closure(k)):
        yield leaf
        if first_only:
            return


# ---------------------------------------------------------------------------
# vectors over R_max


def _vals(v) -> list:
    out = []
    for x in v:
        if isinstance(x, (MaxPlus, Sym, Ext)):
            out.append(x.modulus)
        elif x == NEG_INF:
            out.append(NEG_INF)
        else:
            out.append(Fraction(x))
    return out


def _check_family(vectors) -> tuple[list[list], int]:
    vs = [_vals(v) for v in vectors]
    if not vs:
        raise DimensionMismatch("empty family")
    n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise DimensionMismatch("vectors of unequal length")
    return vs, n


def combine(coeffs: Sequence, vectors: Sequence, indices: Sequence[int] | None = None, n=None) -> list:
    """``⊕_i λ_i v_i`` over R_max, as exact values."""
    vs = [_vals(v) for v in vectors]
    lam = _vals(coeffs)
    if n is None:
        n = len(vs[0]) if vs else 0
    idx = range(len(vs)) if indices is None else indices
    out = [NEG_INF] * n
    for i in idx:
        if lam[i] == NEG_INF:
            continue
        for l in range(n):
            if vs[i][l] != NEG_INF:
                t = lam[i] + vs[i][l]
                if out[l] == NEG_INF or t > out[l]:
                    out[l] = t
    return out


def span_membership(V: Sequence, b: Sequence) -> list[MaxPlus] | None:
    """Residuation: the greatest λ with ``⊕ λ_i v_i <= b``, if it reaches ``b``."""
    bb = _vals(b)
    vs, n = _check_family(V) if V else ([], len(bb))
    if len(bb) != n:
        raise DimensionMismatch("b has the wrong length")
    lam = []
    for v in vs:
        best = None
        for l in range(n):
            if v[l] == NEG_INF:
                continue
            t = NEG_INF if bb[l] == NEG_INF else bb[l] - v[l]
            if best is None or t < best:
                best = t
        lam.append(NEG_INF if best is None else best)
    if combine(lam, vs, n=n) == bb:
        return [MaxPlus(x) for x in lam]
    return None


def in_span(V: Sequence, b: Sequence) -> bool:
    return span_membership(V, b) is not None


@dataclass(frozen=True)
class GMWitness:
    I: tuple
    J: tuple
    coefficients: tuple  # MaxPlus per vector

    def verify(self, vectors) -> bool:
        return verify_gm(vectors, self.I, self.J, self.coefficients)


@dataclass(frozen=True)
class TropWitness:
    coefficients: tuple

    def verify(self, vectors) -> bool:
        return verify_trop(vectors, self.coefficients)


def verify_gm(vectors, I, J, coeffs) -> bool:
    vs = [_vals(v) for v in vectors]
    m = len(vs)
    if set(I) & set(J) or set(I) | set(J) != set(range(m)):
        return False
    lam = _vals(coeffs)
    if all(x == NEG_INF for x in lam):
        return False
    return combine(lam, vs, I) == combine(lam, vs, J)


def verify_trop(vectors, coeffs) -> bool:
    vs = [_vals(v) for v in vectors]
    lam = _vals(coeffs)
    if all(x == NEG_INF for x in lam):
        return False
    for l in range(len(vs[0])):
        terms = [
            lam[i] + vs[i][l]
            for i in range(len(vs))
            if lam[i] != NEG_INF and vs[i][l] != NEG_INF
        ]
        if terms and terms.count(max(terms)) < 2:
            return False
    return True


def _guard(m: int, n: int):
    if m > MAX_WITNESS_VECTORS or n > MAX_WITNESS_DIM:
        raise SearchGuard(
            f"witness search limited to {MAX_WITNESS_VECTORS} vectors of length {MAX_WITNESS_DIM}"
        )


def _dominance(var_of, rows, l, top):
    """Constraints placing ``top`` at the maximum of coordinate ``l`` among ``rows``."""
    cons = []
    ti = var_of[top]
    for r in rows:
        if r != top:
            # lam_r + v_rl <= lam_top + v_top,l
            cons.append((var_of[r], ti, rows[top] - rows[r]))
    return cons


def _gm_options(vs, n, I, J):
    """Per coordinate: choose the maximizer on each side, which must tie."""
    S = I + J
    var_of = {i: t for t, i in enumerate(S)}
    options = []
    for l in range(n):
        left = {i: vs[i][l] for i in I if vs[i][l] != NEG_INF}
        right = {j: vs[j][l] for j in J if vs[j][l] != NEG_INF}
        if not left and not right:
            continue
        if not left or not right:
            return None, var_of
        opts = []
        for i in left:
            dom_i = _dominance(var_of, left, l, i)
            for j in right:
                c = right[j] - left[i]  # lam_i - lam_j = v_jl - v_il
                opt = [(var_of[i], var_of[j], c), (var_of[j], var_of[i], -c)]
                opts.append(opt + dom_i + _dominance(var_of, right, l, j))
        options.append(opts)
    return options, var_of


def _partitions(S: tuple):
    """(I, J) splits of ``S`` with ``S[0]`` in I, balanced sizes first."""
    first, rest = S[0], S[1:]
    splits = []
    for bits in range(1 << len(rest)):
        I = (first,) + tuple(x for t, x in enumerate(rest) if bits >> t & 1)
        J = tuple(x for t, x in enumerate(rest) if not bits >> t & 1)
        splits.append((I, J))
    splits.sort(key=lambda p: (abs(len(p[0]) - len(p[1])), p))
    return splits


def _supports(m: int):
    for size in range(m, 0, -1):
        yield from itertools.combinations(range(m), size)


def gm_witness(vectors: Sequence, budget: Budget | None = None) -> GMWitness | None:
    """Gondran-Minoux dependence witness, or ``None`` when the family is independent."""
    vs, n = _check_family(vectors)
    m = len(vs)
    _guard(m, n)
    for S in _supports(m):
        for I, J in _partitions(S):
            options, var_of = _gm_options(vs, n, list(I), list(J))
            if options is None:
                continue
            for cl in _search(len(S), options, budget=budget):
                pt = cl.point()
                lam = [MaxPlus.zero()] * m
                for i, t in var_of.items():
                    lam[i] = MaxPlus(pt[t])
                outside = tuple(i for i in range(m) if i not in var_of)
                w = GMWitness(tuple(sorted(I)), tuple(sorted(J + outside)), tuple(lam))
                if not w.verify(vs):  # pragma: no cover - the engine is exact
                    raise AssertionError("unverified GM witness")
                return w
    return None


def trop_witness(vectors: Sequence, budget: Budget | None = None) -> TropWitness | None:
    """Tropical dependence witness, or ``None`` when the family is independent."""
    vs, n = _check_family(vectors)
    m = len(vs)
    _guard(m, n)
    for S in _supports(m):
        var_of = {i: t for t, i in enumerate(S)}
        options = []
        dead = False
        for l in range(n):
            rows = {i: vs[i][l] for i in S if vs[i][l] != NEG_INF}
            if not rows:
                continue
            if len(rows) == 1:
                dead = True
                break
            opts = []
            for i, j in itertools.combinations(sorted(rows), 2):
                c = rows[j] - rows[i]
                opt = [(var_of[i], var_of[j], c), (var_of[j], var_of[i], -c)]
                opts.append(opt + _dominance(var_of, rows, l, i))
            options.append(opts)
        if dead:
            continue
        for cl in _search(len(S), options, budget=budget):
            pt = cl.point()
            lam = [MaxPlus.zero()] * m
            for i, t in var_of.items():
                lam[i] = MaxPlus(pt[t])
            w = TropWitness(tuple(lam))
            if not w.verify(vs):  # pragma: no cover
                raise AssertionError("unverified tropical witness")
            return w
    return None


def weakly_independent(vectors: Sequence) -> bool:
    """No member lies in the span of the others (copies count as dependent)."""
    vs = [_vals(v) for v in vectors]
    for i, v in enumerate(vs):
        if in_span(vs[:i] + vs[i + 1 :], v):
            return False
    return True


def weak_witness(vectors: Sequence) -> tuple[int, list[MaxPlus]] | None:
    """An index and the coefficients expressing that vector through the rest."""
    vs = [_vals(v) for v in vectors]
    for i, v in enumerate(vs):
        others = vs[:i] + vs[i + 1 :]
        lam = span_membership(others, v)
        if lam is not None:
            return i, lam
    return None


# ---------------------------------------------------------------------------
# Cramer solvers


@dataclass(frozen=True)
class SolveOutcome:
    """``kind`` is ``unique_signed``, ``non_unique`` or ``degenerate``.

    For degenerate outcomes ``reason`` is ``detBalanced`` or
    ``cramerNotSigned`` and ``data`` carries the Cramer vector (and the
    offending index) for diagnosis; no solution claim is made.
    """

    kind: str
    x: tuple | None = None
    reason: str | None = None
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.kind == "unique_signed"


def _square_system(A: Matrix, b: Sequence, semiring: str):
    if A.semiring != semiring:
        raise ShapeMismatch(f"expected a {semiring} matrix")
    if not A.is_square:
        raise ShapeMismatch("Cramer systems need a square matrix")
    if len(b) != A.rows:
        raise ShapeMismatch("right-hand side has the wrong length")
    if A.rows > MAX_CRAMER_N:
        raise SearchGuard(f"Cramer solvers limited to n <= {MAX_CRAMER_N}")


def _cramer(A: Matrix, b: Sequence, signed) -> SolveOutcome:
    d = sym_det(A)
    adj = adjoint_pair(A).adj
    cram = tuple(adj.apply(list(b)))
    if not signed(d) or d.is_zero:
        return SolveOutcome("degenerate", reason="detBalanced", data={"det": d, "cramer": cram})
    for i, c in enumerate(cram):
        if not signed(c):
            return SolveOutcome(
                "degenerate", reason="cramerNotSigned", data={"index": i, "det": d, "cramer": cram}
            )
    inv = d.inverse()
    x = tuple(inv * c for c in cram)
    lhs = A.apply(list(x))
    if not all(balance(p, q) for p, q in zip(lhs, b)):  # pragma: no cover - guaranteed
        raise AssertionError("Cramer vector fails the balance check")
    return SolveOutcome("unique_signed", x=x, data={"det": d, "cramer": cram})


def cramer_solve_sym(A: Matrix, b: Sequence[Sym]) -> SolveOutcome:
    """Unique signed solution of ``A x ∇ b`` over S_max when det and Cramer vector are signed."""
    _square_system(A, b, "smax")
    return _cramer(A, b, lambda s: s.kind is not Sign.BAL)


def cramer_solve_ext(A: Matrix, b: Sequence[Ext]) -> SolveOutcome:
    """Unique real solution of ``A x ∇ b`` over T_e when the permanents involved are real."""
    _square_system(A, b, "te")
    return _cramer(A, b, lambda e: e.mult != 2)


def twice_attained(A: Matrix, b: Sequence, x: Sequence) -> list[bool]:
    """Per row: is the maximum of ``a_ij + x_j`` and ``b_i`` reached at least twice?"""
    if A.cols != len(x) or A.rows != len(b):
        raise ShapeMismatch("shapes do not conform")
    vals = A.values()
    xs, bs = _vals(x), _vals(b)
    out = []
    for i in range(A.rows):
        terms = [
            vals[i][j] + xs[j] for j in range(A.cols) if vals[i][j] != NEG_INF and xs[j] != NEG_INF
        ]
        if bs[i] != NEG_INF:
            terms.append(bs[i])
        out.append(not terms or terms.count(max(terms)) >= 2)
    return out


@dataclass(frozen=True)
class TropicalCramerResult:
    x: tuple | None
    degenerate: str | None = None

    @property
    def ok(self) -> bool:
        return self.degenerate is None


def tropical_cramer(A: Matrix, b: Sequence) -> TropicalCramerResult:
    """``x_i = per B_i - per A`` under the nonsingularity hypotheses."""
    if A.semiring != "rmax" or not A.is_square or len(b) != A.rows:
        raise ShapeMismatch("tropical Cramer needs a square R_max matrix and matching b")
    if A.rows > MAX_CRAMER_N:
        raise SearchGuard(f"Cramer solvers limited to n <= {MAX_CRAMER_N}")
    if is_trop_singular(A):
        return TropicalCramerResult(None, "A is tropically singular")
    pa = permanent(A).value
    bvec = [MaxPlus(v) for v in _vals(b)]
    x = []
    for i in range(A.rows):
        Bi = A.replace_column(i, bvec)
        pb = permanent(Bi)
        if pb.is_zero:
            x.append(MaxPlus.zero())
            continue
        if is_trop_singular(Bi):
            return TropicalCramerResult(None, f"Cramer matrix {i} is tropically singular")
        x.append(MaxPlus(pb.value - pa))
    if not all(twice_attained(A, bvec, x)):  # pragma: no cover - guaranteed by the theorem
        raise AssertionError("tropical Cramer vector fails the twice-attained check")
    return TropicalCramerResult(tuple(x))


@dataclass(frozen=True)
class TwoSidedResult:
    x: tuple | None
    report: str


def two_sided_cramer(A1: Matrix, A2: Matrix, b1: Sequence, b2: Sequence) -> TwoSidedResult:
    """Solve ``A1 x ⊕ b1 = A2 x ⊕ b2`` through the S_max system ``(A1 ⊖ A2) x ∇ b2 ⊖ b1``."""
    if A1.shape != A2.shape or len(b1) != len(b2) or len(b1) != A1.rows:
        raise ShapeMismatch("two-sided system shapes do not conform")
    A = A1.lift("smax") - A2.lift("smax")
    b = [pos(q) + neg(p) for p, q in zip(_vals(b1), _vals(b2))]
    out = cramer_solve_sym(A, b)
    if not out.ok:
        return TwoSidedResult(None, f"hypothesis failure: {out.reason}")
    if any(s.kind is Sign.NEG or s.kind is Sign.BAL for s in out.x):
        return TwoSidedResult(None, "no R_max solution: the signed solution has a negative entry")
    x = [MaxPlus(s.mod) for s in out.x]
    lhs = [p + MaxPlus(q) for p, q in zip(A1.apply(x), _vals(b1))]
    rhs = [p + MaxPlus(q) for p, q in zip(A2.apply(x), _vals(b2))]
    if lhs != rhs:
        return TwoSidedResult(None, "no R_max solution: the candidate fails the exact check")
    return TwoSidedResult(tuple(x), "solved")


# ---------------------------------------------------------------------------
# exhaustive signed-solution search (uniqueness oracle)


@dataclass(frozen=True)
class SolutionRegion:
    """A polyhedron of solutions sharing one sign pattern.

    ``lower``/``upper`` bound each modulus; a region is a single point when
    the bounds coincide everywhere.
    """

    signs: tuple
    lower: tuple
    upper: tuple

    @property
    def is_point(self) -> bool:
        return all(lo == hi for lo, hi in zip(self.lower, self.upper))


def signed_solutions(A: Matrix, b: Sequence) -> list[SolutionRegion]:
    """Enumerate every signed (S_max) or real (T_e) solution region of ``A x ∇ b``.

    Each sign pattern fixes the sign of every term; per row the search picks
    how the balance is achieved (a balanced top term or a cancelling pair on
    top) and accumulates difference constraints on the moduli.  Variable
    ``0`` is an anchor at modulus zero.
    """
    n = A.cols
    if A.rows != len(b):
        raise ShapeMismatch("right-hand side has the wrong length")
    if n > 4:
        raise SearchGuard("exhaustive signed search limited to 4 unknowns")
    te = A.semiring == "te"
    kinds = ["zero", "pos"] if te else ["zero", "pos", "neg"]
    regions = []
    for pattern in itertools.product(kinds, repeat=n):
        options = []
        for i in range(A.rows):
            terms = []  # (variable, offset, kind)
            for j in range(n):
                a = A[i, j]
                if pattern[j] == "zero" or a.is_zero:
                    continue
                terms.append((j + 1, a.modulus, _term_kind(a, pattern[j], te)))
            bi = b[i]
            if not bi.is_zero:
                # the right-hand side enters as ⊖ b
                terms.append((0, bi.modulus, _term_kind(-bi, "pos", te)))
            if not terms:
                continue
            opts = []
            for t, (v, off, kind) in enumerate(terms):
                if kind == "bal":
                    opts.append(_top_constraints(terms, t))
            for s, t in itertools.combinations(range(len(terms)), 2):
                if _cancels(terms[s][2], terms[t][2], te):
                    vs_, os_ = terms[s][0], terms[s][1]
                    vt, ot = terms[t][0], terms[t][1]
                    eq = [(vs_, vt, ot - os_), (vt, vs_, os_ - ot)]
                    opts.append(eq + _top_constraints(terms, s))
            options.append(opts)
        for cl in _search(n + 1, options, first_only=False):
            lower, upper = [], []
            for j in range(n):
                if pattern[j] == "zero":
                    lower.append(NEG_INF)
                    upper.append(NEG_INF)
                else:
                    lo, hi = cl.bounds(j + 1, 0)
                    lower.append(-INF if lo == -INF else lo)
                    upper.append(hi)
            region = SolutionRegion(tuple(pattern), tuple(lower), tuple(upper))
            if region not in regions:
                regions.append(region)
    return regions


def _term_kind(a, xsign: str, te: bool) -> str:
    if te:
        return "bal" if a.mult == 2 else "pos"
    if a.kind is Sign.BAL:
        return "bal"
    same = (a.kind is Sign.POS) == (xsign == "pos")
    return "pos" if same else "neg"


def _cancels(k1: str, k2: str, te: bool) -> bool:
    if te:
        return k1 == "pos" and k2 == "pos"
    return {k1, k2} == {"pos", "neg"}


def _top_constraints(terms, top):
    v0, o0, _ = terms[top]
    return [(v, v0, o0 - o) for t, (v, o, _) in enumerate(terms) if t != top]


# ---------------------------------------------------------------------------
# Radon partitions and anti-exchange


def radon_partition(vectors: Sequence) -> GMWitness:
    """GM witness for n+1 vectors of R_max^n, following the Cramer argument."""
    vs, n = _check_family(vectors)
    if len(vs) != n + 1:
        raise DimensionMismatch(f"expected {n + 1} vectors of length {n}")
    if n > 8:
        raise SearchGuard("Radon partitions limited to n <= 8")
    V = Matrix([[vs[j][i] for j in range(n + 1)] for i in range(n)])  # columns are the vectors
    for i in range(n + 1):
        keep = [j for j in range(n + 1) if j != i]
        Vi = V.submatrix(range(n), keep)
        if is_sign_singular(Vi):
            w = gm_witness([vs[j] for j in keep])
            if w is None:  # pragma: no cover - balanced determinant forces dependence
                raise AssertionError("balanced determinant without a GM witness")
            lam = list(w.coefficients)
            lam.insert(i, MaxPlus.zero())
            I = tuple(keep[t] for t in w.I)
            J = tuple(sorted(tuple(keep[t] for t in w.J) + (i,)))
            out = GMWitness(I, J, tuple(lam))
            break
    else:
        A = V.submatrix(range(n), range(n)).lift("smax")
        rhs = [pos(x) for x in vs[n]]
        sol = cramer_solve_sym(A, rhs)
        if not sol.ok:  # pragma: no cover - all maximal minors are unbalanced here
            raise AssertionError(f"unexpected Cramer outcome {sol.reason}")
        I, J = [], [n]
        lam = []
        for j, s in enumerate(sol.x):
            lam.append(MaxPlus(s.mod))
            (I if s.kind is Sign.POS else J).append(j)
        lam.append(MaxPlus.one())
        if not I:
            I, J = J, I
        out = GMWitness(tuple(sorted(I)), tuple(sorted(J)), tuple(lam))
    if not out.verify(vs):  # pragma: no cover
        raise AssertionError("Radon witness failed verification")
    return out


def _proportional(y, z) -> bool:
    ys, zs = _vals(y), _vals(z)
    if [a == NEG_INF for a in ys] != [a == NEG_INF for a in zs]:
        return False
    diffs = {a - b for a, b in zip(ys, zs) if a != NEG_INF}
    return len(diffs) <= 1


def anti_exchange_check(X: Sequence, y: Sequence, z: Sequence) -> bool:
    """Check ``z ∉ span(X ∪ {y})`` under the hypotheses of the anti-exchange axiom."""
    Xs = [_vals(v) for v in X]
    ys, zs = _vals(y), _vals(z)
    if all(a == NEG_INF for a in ys) or all(a == NEG_INF for a in zs):
        raise PreconditionUnmet("y and z must be nonzero")
    if _proportional(ys, zs):
        raise PreconditionUnmet("y and z are proportional")
    if Xs and (in_span(Xs, ys) or in_span(Xs, zs)):
        raise PreconditionUnmet("y or z already lies in span(X)")
    if not in_span(Xs + [zs], ys):
        raise PreconditionUnmet("y is not in span(X ∪ {z})")
    return not in_span(Xs + [ys], zs)


def zero_vector(n: int, semiring: str = "rmax") -> list:
    return [zero_of(semiring)] * n
