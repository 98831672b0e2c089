"""Dense matrices over R_max, S_max and T_e with determinant machinery.

The heavy lifting for bideterminants and multiplicity-aware permanents is
delegated to :mod:`tropica.kernels`; optimal assignment with dual potentials
is solved exactly by a shortest augmenting path Hungarian method.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import networkx as nx

from . import kernels
from .errors import SemiringMismatch, ShapeMismatch, SizeGuard, ZeroPermanent
from .scalars import (
    NEG_INF,
    Ext,
    MaxPlus,
    Sym,
    balance,
    circ_geq,
    format_scalar,
    one_of,
    parse_scalar,
    pos,
    real,
    semiring_of,
    zero_of,
)

MAX_DET_N = 20  # subset DP: 2^20 states
MAX_SYM_DET_N = 14
MAX_CYCLES = 10**6
MAX_COMPOUND = 256


def _coerce(x, semiring: str):
    if isinstance(x, (MaxPlus, Sym, Ext)):
        if semiring_of(x) != semiring:
            raise SemiringMismatch(f"{format_scalar(x)} is not a {semiring} value")
        return x
    if isinstance(x, str):
        return parse_scalar(x, semiring)
    if semiring == "rmax":
        return MaxPlus(x)
    raise SemiringMismatch(f"plain number {x!r} is ambiguous for {semiring}; pass a scalar or token")


class Matrix:
    """Rectangular matrix over a single scalar type.

    ``Matrix([[0, "-inf"], ["-inf", 0]])`` builds an R_max matrix; plain
    numbers and ``float('-inf')`` are accepted for R_max, tokens for any
    semiring.  Operators: ``+`` entrywise sum, ``@`` tropical product.
    """

    __slots__ = ("rows", "cols", "semiring", "_e")

    def __init__(self, entries: Sequence[Sequence], semiring: str | None = None):
        grid = [list(r) for r in entries]
        if not grid or not grid[0]:
            raise ShapeMismatch("matrices need at least one row and one column")
        n = len(grid[0])
        if any(len(r) != n for r in grid):
            raise ShapeMismatch("ragged rows")
        if semiring is None:
            first = grid[0][0]
            semiring = semiring_of(first) if isinstance(first, (MaxPlus, Sym, Ext)) else "rmax"
        self.semiring = semiring
        self.rows = len(grid)
        self.cols = n
        self._e = tuple(tuple(_coerce(x, semiring) for x in r) for r in grid)

    # construction helpers -------------------------------------------------
    @classmethod
    def identity(cls, n: int, semiring: str = "rmax") -> "Matrix":
        z, o = zero_of(semiring), one_of(semiring)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], semiring)

    @classmethod
    def zeros(cls, m: int, n: int, semiring: str = "rmax") -> "Matrix":
        z = zero_of(semiring)
        return cls([[z] * n for _ in range(m)], semiring)

    @classmethod
    def column(cls, vector: Sequence, semiring: str | None = None) -> "Matrix":
        return cls([[x] for x in vector], semiring)

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple:
        return self._e[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._e)

    def entries(self) -> tuple[tuple, ...]:
        return self._e

    def row_list(self) -> list[tuple]:
        return list(self._e)

    def col_list(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def values(self) -> list[list]:
        """Moduli as exact rationals or -inf (the R_max view of any matrix)."""
        return [[x.modulus for x in r] for r in self._e]

    def flat_values(self) -> list:
        return [x.modulus for r in self._e for x in r]

    def finite_cells(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.rows) for j in range(self.cols) if not self._e[i][j].is_zero]

    # algebra --------------------------------------------------------------
    def _same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if self.semiring != other.semiring:
            raise SemiringMismatch(f"{self.semiring} vs {other.semiring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._e, other._e)], self.semiring
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        z = zero_of(self.semiring)
        out = []
        for r in self._e:
            line = []
            for j in range(other.cols):
                acc = z
                for k, a in enumerate(r):
                    acc = acc + a * other._e[k][j]
                line.append(acc)
            out.append(line)
        return Matrix(out, self.semiring)

    def apply(self, vector: Sequence) -> list:
        """``A ⊗ x`` for a plain vector of scalars."""
        return [x for (x,) in (self @ Matrix.column(vector, self.semiring)).entries()]

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in r] for r in self._e], self.semiring)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = _coerce(c, self.semiring)
        return Matrix([[c * x for x in r] for r in self._e], self.semiring)

    def power(self, k: int) -> "Matrix":
        if not self.is_square:
            raise ShapeMismatch("powers need a square matrix")
        out = Matrix.identity(self.rows, self.semiring)
        for _ in range(k):
            out = out @ self
        return out

    @property
    def T(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self._e)], self.semiring)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Matrix":
        rows, cols = list(rows), list(cols)
        return Matrix([[self._e[i][j] for j in cols] for i in rows], self.semiring)

    def minor(self, i: int, j: int) -> "Matrix | None":
        """Drop row ``i`` and column ``j``; ``None`` for a 1x1 matrix."""
        if self.rows == 1 or self.cols == 1:
            return None
        return self.submatrix(
            [r for r in range(self.rows) if r != i], [c for c in range(self.cols) if c != j]
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.rows != other.rows:
            raise ShapeMismatch("hstack needs equal row counts")
        return Matrix([list(a) + list(b) for a, b in zip(self._e, other._e)], self.semiring)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._same(other)
        if self.cols != other.cols:
            raise ShapeMismatch("vstack needs equal column counts")
        return Matrix(list(self._e) + list(other._e), self.semiring)

    def replace_column(self, j: int, vector: Sequence) -> "Matrix":
        return Matrix(
            [[vector[i] if c == j else x for c, x in enumerate(r)] for i, r in enumerate(self._e)],
            self.semiring,
        )

    def lift(self, target: str) -> "Matrix":
        """Embed an R_max matrix into S_max (sign-positive) or T_e (real)."""
        if self.semiring != "rmax":
            raise SemiringMismatch("only R_max matrices can be lifted")
        if target == "rmax":
            return self
        f = {"smax": pos, "te": real}[target]
        return Matrix([[f(x.value) for x in r] for r in self._e], target)

    def modulus(self) -> "Matrix":
        return Matrix(self.values(), "rmax")

    # comparison and printing ---------------------------------------------
    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.semiring == other.semiring
            and self._e == other._e
        )

    def __hash__(self):
        return hash((self.semiring, self._e))

    def to_text(self) -> str:
        return "".join(" ".join(format_scalar(x) for x in r) + "\n" for r in self._e)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "semiring": self.semiring,
            "entries": [format_scalar(x) for r in self._e for x in r],
        }

    def __str__(self):
        return self.to_text().rstrip("\n")

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} {self.semiring})"


def mat_arith(op: str, A: Matrix, B) -> Matrix:
    if op == "add":
        return A + B
    if op == "mul":
        return A @ B
    if op == "scalar_mul":
        return A.scale(B)
    raise ValueError(f"unknown matrix operation {op!r}")


def _square(A: Matrix):
    if not A.is_square:
        raise ShapeMismatch(f"square matrix required, got {A.rows}x{A.cols}")


# ---------------------------------------------------------------------------
# determinants


@dataclass(frozen=True)
class Bideterminant:
    plus: MaxPlus
    minus: MaxPlus

    @property
    def balanced(self) -> bool:
        return self.plus == self.minus

    @property
    def permanent(self) -> MaxPlus:
        return self.plus + self.minus

    def as_sym(self) -> Sym:
        """The S_max value ``|A|+ ⊖ |A|-``."""
        return pos(self.plus.value) + (-pos(self.minus.value))


def bideterminant(A: Matrix) -> Bideterminant:
    _square(A)
    if A.semiring != "rmax":
        raise SemiringMismatch("bideterminant takes an R_max matrix")
    if A.rows > MAX_DET_N:
        raise SizeGuard(f"bideterminant limited to n <= {MAX_DET_N}")
    plus, minus = kernels.bidet_values(A.flat_values(), A.rows)
    return Bideterminant(MaxPlus(plus), MaxPlus(minus))


def bideterminant_brute(A: Matrix) -> Bideterminant:
    """Permutation enumeration; the oracle the kernels are tested against."""
    _square(A)
    n = A.rows
    plus = minus = MaxPlus.zero()
    for perm in itertools.permutations(range(n)):
        w = MaxPlus.one()
        for i, j in enumerate(perm):
            w = w * A[i, j]
        if permutation_parity(perm) == 0:
            plus = plus + w
        else:
            minus = minus + w
    return Bideterminant(plus, minus)


def permutation_parity(perm: Sequence[int]) -> int:
    n = len(perm)
    inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
    return inv & 1


def sym_det(A: Matrix):
    """Determinant over S_max or T_e (over T_e it is the permanent)."""
    _square(A)
    if A.semiring not in ("smax", "te"):
        raise SemiringMismatch("sym_det takes an S_max or T_e matrix")
    n = A.rows
    if n > MAX_SYM_DET_N:
        raise SizeGuard(f"sym_det limited to n <= {MAX_SYM_DET_N}")
    even, odd = _parity_sums(A)
    return even + (-odd)


def _parity_sums(A: Matrix):
    """Semiring sums of even and odd permutation weights, by subset DP."""
    n = A.rows
    z, o = zero_of(A.semiring), one_of(A.semiring)
    size = 1 << n
    even = [z] * size
    odd = [z] * size
    even[0] = o
    for mask in range(size):
        e, d = even[mask], odd[mask]
        if e.is_zero and d.is_zero:
            continue
        r = bin(mask).count("1")
        if r == n:
            continue
        for j in range(n):
            bit = 1 << j
            if mask & bit:
                continue
            a = A[r, j]
            if a.is_zero:
                continue
            nxt = mask | bit
            if bin(mask >> (j + 1)).count("1") & 1:
                odd[nxt] = odd[nxt] + e * a
                even[nxt] = even[nxt] + d * a
            else:
                even[nxt] = even[nxt] + e * a
                odd[nxt] = odd[nxt] + d * a
    return even[size - 1], odd[size - 1]


def sym_det_brute(A: Matrix):
    _square(A)
    total = zero_of(A.semiring)
    for perm in itertools.permutations(range(A.rows)):
        w = one_of(A.semiring)
        for i, j in enumerate(perm):
            w = w * A[i, j]
        total = total + (w if permutation_parity(perm) == 0 else -w)
    return total


def det(A: Matrix):
    """Determinant in the natural sense of the matrix's semiring.

    R_max matrices yield their bideterminant viewed in S_max.
    """
    if A.semiring == "rmax":
        return bideterminant(A).as_sym()
    return sym_det(A)


# ---------------------------------------------------------------------------
# optimal assignment


@dataclass(frozen=True)
class AssignmentResult:
    value: MaxPlus
    u: tuple
    v: tuple
    witness: tuple  # witness[i] = column assigned to row i; empty if value is -inf


def permanent_assignment(A: Matrix) -> AssignmentResult:
    """Maximum weight perfect matching with exact dual potentials.

    Shortest augmenting paths on costs ``-a_ij``; -inf entries are forbidden
    arcs.  The returned duals satisfy ``a_ij <= u_i + v_j`` everywhere and
    ``per A = sum(u) + sum(v)`` when the permanent is finite.
    """
    _square(A)
    n = A.rows
    vals = A.values()
    # 1-based arrays in the classical formulation; index 0 is the virtual column
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    match = [0] * (n + 1)  # match[j] = row assigned to column j
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        match[0] = i
        j0 = 0
        minv = [None] * (n + 1)  # None means +inf
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = None
            j1 = -1
            for j in range(1, n + 1):
                if used[j]:
                    continue
                a = vals[i0 - 1][j - 1]
                if a != NEG_INF:
                    cur = -a - u[i0] - v[j]
                    if minv[j] is None or cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                if minv[j] is not None and (delta is None or minv[j] < delta):
                    delta = minv[j]
                    j1 = j
            if delta is None:
                return _no_matching(n)
            for j in range(n + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                elif minv[j] is not None:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    witness = [0] * n
    for j in range(1, n + 1):
        witness[match[j] - 1] = j - 1
    # max-form duals are the negated min-form ones
    U = tuple(-x for x in u[1:])
    V = tuple(-x for x in v[1:])
    value = sum((vals[i][witness[i]] for i in range(n)), Fraction(0))
    return AssignmentResult(MaxPlus(value), U, V, tuple(witness))


def _no_matching(n: int) -> AssignmentResult:
    return AssignmentResult(MaxPlus.zero(), (), (), ())


def permanent(A: Matrix) -> MaxPlus:
    return permanent_assignment(A).value


@dataclass(frozen=True)
class TightDigraph:
    n: int
    arcs: frozenset = field(default_factory=frozenset)

    def graph(self, self_loops: bool = False) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from((i, j) for i, j in self.arcs if self_loops or i != j)
        return g


def tight_digraph(A: Matrix, result: AssignmentResult | None = None) -> TightDigraph:
    """Tight arcs after renormalizing so the witness permutation is the identity.

    Node ``k`` stands for row ``k`` and for column ``witness[k]``; arc
    ``(i, k)`` is present when ``a[i][witness[k]] = u_i + v_witness[k]``.
    """
    _square(A)
    if result is None:
        result = permanent_assignment(A)
    if result.value.is_zero:
        raise ZeroPermanent("the permanent is -inf; no tight digraph")
    vals = A.values()
    w = result.witness
    n = A.rows
    arcs = set()
    for i in range(n):
        for k in range(n):
            a = vals[i][w[k]]
            if a != NEG_INF and a == result.u[i] + result.v[w[k]]:
                arcs.add((i, k))
    return TightDigraph(n, frozenset(arcs))


# ---------------------------------------------------------------------------
# singularity


def _cycle_lengths(graph: nx.DiGraph, cap: int = MAX_CYCLES):
    """Yield elementary cycle lengths; raises ``SizeGuard`` past ``cap`` cycles."""
    for count, cyc in enumerate(nx.simple_cycles(graph)):
        if count >= cap:
            raise SizeGuard("elementary cycle cap reached")
        yield len(cyc)


def is_trop_singular(A: Matrix, method: str = "cycles") -> bool:
    """True when the permanent is -inf or its maximum is attained twice."""
    _square(A)
    A = A.modulus() if A.semiring != "rmax" else A
    if method == "cycles":
        res = permanent_assignment(A)
        if res.value.is_zero:
            return True
        g = tight_digraph(A, res).graph()
        return not nx.is_directed_acyclic_graph(g)
    if method == "dp":
        if A.rows > MAX_DET_N:
            raise SizeGuard(f"subset DP limited to n <= {MAX_DET_N}")
        value, mult = kernels.perm_mult_values(A.flat_values(), A.rows)
        return value == NEG_INF or mult >= 2
    if method == "brute":
        return _trop_singular_brute(A)
    raise ValueError(f"unknown method {method!r}")


def _trop_singular_brute(A: Matrix) -> bool:
    best = None
    count = 0
    for perm in itertools.permutations(range(A.rows)):
        w = MaxPlus.one()
        for i, j in enumerate(perm):
            w = w * A[i, j]
        if w.is_zero:
            continue
        if best is None or w.value > best:
            best, count = w.value, 1
        elif w.value == best:
            count += 1
    return best is None or count >= 2


def is_sign_singular(A: Matrix, method: str = "cycles") -> bool:
    """True when ``|A|+ = |A|-`` (the determinant is balanced in S_max).

    ``cycles`` looks for an even elementary cycle in the tight digraph and
    falls back to the subset DP if the cycle count explodes.
    """
    _square(A)
    A = A.modulus() if A.semiring != "rmax" else A
    if method == "cycles":
        res = permanent_assignment(A)
        if res.value.is_zero:
            return True
        g = tight_digraph(A, res).graph()
        try:
            return any(length % 2 == 0 for length in _cycle_lengths(g))
        except SizeGuard:
            method = "dp"
    if method == "dp":
        return bideterminant(A).balanced
    if method == "brute":
        return bideterminant_brute(A).balanced
    raise ValueError(f"unknown method {method!r}")


def is_singular_general(A: Matrix) -> bool:
    """Brute-force singularity over any semiring.

    Looks for a nonempty proper subset T of permutations whose weight sum
    equals the sum over the complement; 2^(n!) subsets, so n <= 3.
    """
    _square(A)
    n = A.rows
    if n > 3:
        raise SizeGuard("general singularity check limited to n <= 3")
    weights = []
    for perm in itertools.permutations(range(n)):
        w = one_of(A.semiring)
        for i, j in enumerate(perm):
            w = w * A[i, j]
        weights.append(w)
    z = zero_of(A.semiring)
    k = len(weights)
    for bits in range(1, (1 << k) - 1):
        left = right = z
        for t, w in enumerate(weights):
            if bits >> t & 1:
                left = left + w
            else:
                right = right + w
        if left == right:
            return True
    return False


# ---------------------------------------------------------------------------
# adjoints and compounds


@dataclass(frozen=True)
class AdjointPair:
    plus: Matrix
    minus: Matrix

    @property
    def adj(self) -> Matrix:
        """``adj+ ⊖ adj-`` in S_max (or T_e, whose symmetry is trivial)."""
        p, m = self.plus, self.minus
        if p.semiring == "rmax":
            p, m = p.lift("smax"), m.lift("smax")
        return p - m


def adjoint_pair(A: Matrix) -> AdjointPair:
    _square(A)
    n = A.rows
    z = zero_of(A.semiring)
    plus = [[z] * n for _ in range(n)]
    minus = [[z] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            sub = A.minor(j, i)
            if A.semiring == "rmax":
                if sub is None:
                    dp, dm = MaxPlus.one(), MaxPlus.zero()
                else:
                    b = bideterminant(sub)
                    dp, dm = b.plus, b.minus
            else:
                dp = one_of(A.semiring) if sub is None else sym_det(sub)
                dm = -dp
            if (i + j) % 2 == 0:
                plus[i][j], minus[i][j] = dp, dm
            else:
                plus[i][j], minus[i][j] = dm, dp
    if A.semiring != "rmax":
        # over a semiring with symmetry the pair collapses: adj+ carries the signed
        # cofactor and adj- is its negation
        minus = [[z] * n for _ in range(n)]
    return AdjointPair(Matrix(plus, A.semiring), Matrix(minus, A.semiring))


def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """k-subsets of range(n) in lexicographic order."""
    return list(itertools.combinations(range(n), k))


def compound(A: Matrix, k: int, sign: str = "plus") -> Matrix:
    _square(A)
    n = A.rows
    if not 1 <= k <= n:
        raise ValueError("compound order must satisfy 1 <= k <= n")
    if comb(n, k) > MAX_COMPOUND:
        raise SizeGuard(f"compound limited to {MAX_COMPOUND} index subsets")
    idx = subsets(n, k)
    out = []
    for I in idx:
        line = []
        for J in idx:
            b = bideterminant(A.submatrix(I, J))
            line.append(b.plus if sign == "plus" else b.minus)
        out.append(line)
    return Matrix(out, "rmax")


def trace(A: Matrix):
    _square(A)
    acc = zero_of(A.semiring)
    for i in range(A.rows):
        acc = acc + A[i, i]
    return acc


# ---------------------------------------------------------------------------
# numeric identity residuals


@dataclass
class ResidualReport:
    kind: str
    passed: bool
    checks: dict = field(default_factory=dict)
    offending: tuple | None = None


def _first_difference(L: Matrix, R: Matrix):
    for i in range(L.rows):
        for j in range(L.cols):
            if L[i, j] != R[i, j]:
                return (i, j)
    return None


def cayley_hamilton_sides(A: Matrix) -> tuple[Matrix, Matrix]:
    """The two positive combinations whose equality is the semiring Cayley-Hamilton."""
    _square(A)
    n = A.rows
    left = A.power(n)
    right = Matrix.zeros(n, n)
    for k in range(1, n + 1):
        tp = trace(compound(A, k, "plus"))
        tm = trace(compound(A, k, "minus"))
        P = A.power(n - k)
        if k % 2 == 0:
            left = left + P.scale(tp)
            right = right + P.scale(tm)
        else:
            left = left + P.scale(tm)
            right = right + P.scale(tp)
    return left, right


def binet_cauchy_sides(A: Matrix, B: Matrix, alpha, beta):
    """Both sides of the weak Binet-Cauchy identity for one pair of index sets."""
    r = len(alpha)
    if len(beta) != r:
        raise ShapeMismatch("alpha and beta must have equal length")
    C = A @ B
    c = bideterminant(C.submatrix(alpha, beta))
    pp = pm = MaxPlus.zero()  # even / odd combinations of the sum over omega
    for omega in subsets(A.cols, r):
        a = bideterminant(A.submatrix(alpha, omega))
        b = bideterminant(B.submatrix(omega, beta))
        pp = pp + a.plus * b.plus + a.minus * b.minus
        pm = pm + a.plus * b.minus + a.minus * b.plus
    return c.plus + pm, c.minus + pp


def identity_residual_check(kind: str, *inputs) -> ResidualReport:
    """Evaluate a transferred identity numerically on concrete matrices.

    ``cayley_hamilton``: one square R_max matrix.
    ``binet_cauchy``: A (n x p), B (p x m), alpha, beta.
    ``det_mult``: two square matrices over R_max, S_max or T_e.
    """
    if kind == "cayley_hamilton":
        (A,) = inputs
        if A.rows > 6:
            raise SizeGuard("Cayley-Hamilton check limited to n <= 6")
        L, R = cayley_hamilton_sides(A)
        bad = _first_difference(L, R)
        return ResidualReport(kind, bad is None, {"equal": bad is None}, bad)
    if kind == "binet_cauchy":
        A, B, alpha, beta = inputs
        lhs, rhs = binet_cauchy_sides(A, B, alpha, beta)
        ok = lhs == rhs
        return ResidualReport(kind, ok, {"equal": ok}, None if ok else (tuple(alpha), tuple(beta)))
    if kind == "det_mult":
        A, B = inputs
        _square(A)
        _square(B)
        if A.rows > 8:
            raise SizeGuard("det_mult check limited to n <= 8")
        if A.semiring == "rmax":
            ab, a, b = bideterminant(A @ B), bideterminant(A), bideterminant(B)
            lhs = ab.plus + a.plus * b.minus + a.minus * b.plus
            rhs = ab.minus + a.plus * b.plus + a.minus * b.minus
            ok = lhs == rhs
            return ResidualReport(kind, ok, {"equal": ok})
        dab = sym_det(A @ B)
        prod = sym_det(A) * sym_det(B)
        bal = balance(dab, prod)
        checks = {"balance": bal}
        if A.semiring == "smax":
            checks["circ_geq"] = circ_geq(dab, prod)
        ok = all(checks.values())
        return ResidualReport(kind, ok, checks)
    raise ValueError(f"unknown identity kind {kind!r}")
