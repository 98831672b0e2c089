"""Polynomial expressions, their expansion, and transferred identities.

A :class:`PolyExpr` is a tree over ``0``, ``1``, variables, ``+``, ``*`` and
a formal minus.  :func:`expand` maps it to a :class:`SignedPolynomial` in
Z[x]; two positive expressions define a semiring identity as soon as their
formal differences agree there (:func:`weak_transfer_check`), and
:func:`strong_transfer_residual` produces the common residual term when the
right-hand side has no cancelling monomials.

:func:`build_identity` generates the classical determinantal and matrix
identities with a legend naming every variable.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    MonomialOverlap,
    NotAnIdentity,
    PreconditionUnmet,
    SizeGuard,
    SymmetryUnavailable,
)
from .matrices import Matrix, permutation_parity
from .scalars import Couple, Ext, MaxPlus, Sym

# ---------------------------------------------------------------------------
# expressions


class PolyExpr:
    __slots__ = ()

    def __add__(self, other: "PolyExpr") -> "PolyExpr":
        return Sum(self, other)

    def __mul__(self, other: "PolyExpr") -> "PolyExpr":
        return Product(self, other)

    def __neg__(self) -> "PolyExpr":
        return Minus(self)

    def __sub__(self, other: "PolyExpr") -> "PolyExpr":
        return Sum(self, Minus(other))


@dataclass(frozen=True, eq=False)
class Zero(PolyExpr):
    pass


@dataclass(frozen=True, eq=False)
class One(PolyExpr):
    pass


@dataclass(frozen=True, eq=False)
class Var(PolyExpr):
    index: int


@dataclass(frozen=True, eq=False)
class Sum(PolyExpr):
    left: PolyExpr
    right: PolyExpr


@dataclass(frozen=True, eq=False)
class Product(PolyExpr):
    left: PolyExpr
    right: PolyExpr


@dataclass(frozen=True, eq=False)
class Minus(PolyExpr):
    child: PolyExpr


ZERO = Zero()
ONE = One()


def sum_of(terms: Sequence[PolyExpr]) -> PolyExpr:
    """Balanced sum tree (keeps recursion shallow); empty sum is Zero."""
    terms = list(terms)
    if not terms:
        return ZERO
    while len(terms) > 1:
        terms = [Sum(terms[i], terms[i + 1]) if i + 1 < len(terms) else terms[i] for i in range(0, len(terms), 2)]
    return terms[0]


def product_of(factors: Sequence[PolyExpr]) -> PolyExpr:
    factors = list(factors)
    if not factors:
        return ONE
    while len(factors) > 1:
        factors = [
            Product(factors[i], factors[i + 1]) if i + 1 < len(factors) else factors[i]
            for i in range(0, len(factors), 2)
        ]
    return factors[0]


def const(k: int) -> PolyExpr:
    """``1 + 1 + ... + 1`` (k times)."""
    return sum_of([ONE] * k)


def power(e: PolyExpr, k: int) -> PolyExpr:
    """Powers are iterated products."""
    return product_of([e] * k)


def variables(e: PolyExpr) -> set[int]:
    out, stack = set(), [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            out.add(x.index)
        elif isinstance(x, (Sum, Product)):
            stack += [x.left, x.right]
        elif isinstance(x, Minus):
            stack.append(x.child)
    return out


def has_minus(e: PolyExpr) -> bool:
    stack = [e]
    while stack:
        x = stack.pop()
        if isinstance(x, Minus):
            return True
        if isinstance(x, (Sum, Product)):
            stack += [x.left, x.right]
    return False


# ---------------------------------------------------------------------------
# polynomials

Monomial = tuple  # sorted ((var, exponent), ...), exponents positive


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, k in b:
        d[v] = d.get(v, 0) + k
    return tuple(sorted(d.items()))


class SignedPolynomial:
    """Element of Z[x] as a map from monomials to nonzero integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, c: int) -> "SignedPolynomial":
        return cls({(): c})

    @classmethod
    def variable(cls, i: int) -> "SignedPolynomial":
        return cls({((i, 1),): 1})

    def __add__(self, other: "SignedPolynomial") -> "SignedPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return SignedPolynomial(out)

    def __neg__(self) -> "SignedPolynomial":
        return SignedPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SignedPolynomial") -> "SignedPolynomial":
        return self + (-other)

    def __mul__(self, other: "SignedPolynomial") -> "SignedPolynomial":
        out: dict = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[_mono_mul(m1, m2)] += c1 * c2
        return SignedPolynomial(out)

    def __eq__(self, other):
        return isinstance(other, SignedPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    @property
    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def monomials(self) -> set:
        return set(self.terms)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: (sum(k for _, k in t[0]), t[0]))

    def format(self, legend: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            names = []
            for v, k in mono:
                name = legend[v] if legend else f"x{v}"
                names.append(name if k == 1 else f"{name}^{k}")
            body = "*".join(names) if names else "1"
            parts.append(f"{c}*{body}" if names else str(c))
        return " + ".join(parts)

    def __repr__(self):
        return f"SignedPolynomial({self.format()})"


def expand(e: PolyExpr) -> SignedPolynomial:
    """Full distribution of ``e`` into the monomial basis of Z[x]."""
    memo: dict[int, SignedPolynomial] = {}

    def go(x: PolyExpr) -> SignedPolynomial:
        key = id(x)
        if key in memo:
            return memo[key]
        if isinstance(x, Zero):
            out = SignedPolynomial()
        elif isinstance(x, One):
            out = SignedPolynomial.constant(1)
        elif isinstance(x, Var):
            out = SignedPolynomial.variable(x.index)
        elif isinstance(x, Sum):
            out = go(x.left) + go(x.right)
        elif isinstance(x, Product):
            out = go(x.left) * go(x.right)
        elif isinstance(x, Minus):
            out = -go(x.child)
        else:
            raise TypeError(f"not a polynomial expression: {x!r}")
        memo[key] = out
        return out

    return go(e)


def weak_transfer_check(p: PolyExpr, q: PolyExpr) -> bool:
    """True iff ``p`` and ``q`` expand to the same element of Z[x]."""
    return expand(p) == expand(q)


def strong_transfer_residual(
    p_plus: PolyExpr, p_minus: PolyExpr, q_plus: PolyExpr, q_minus: PolyExpr
) -> SignedPolynomial:
    """The positive R with ``P+ = Q+ + R`` and ``P- = Q- + R`` in N[x]."""
    pp, pm, qp, qm = (expand(x) for x in (p_plus, p_minus, q_plus, q_minus))
    if pp - pm != qp - qm:
        raise NotAnIdentity("P+ - P- and Q+ - Q- differ in Z[x]")
    shared = qp.monomials() & qm.monomials()
    if shared:
        raise MonomialOverlap(sorted(shared))
    r = pp - qp
    if r != pm - qm or not r.is_nonnegative:  # pragma: no cover - follows from the checks above
        raise NotAnIdentity("no common positive residual")
    return r


# ---------------------------------------------------------------------------
# evaluation


def _target_ops(target: str, q: int = 2):
    if target == "rmax":
        return MaxPlus.zero(), MaxPlus.one(), None
    if target == "smax":
        return Sym.zero(), Sym.one(), lambda a: -a
    if target == "te":
        return Ext.zero(), Ext.one(), lambda a: -a
    if target == "couples":
        return Couple.zero(), Couple.one(), lambda a: -a
    raise SymmetryUnavailable(f"unknown evaluation target {target!r}")


def evaluate(e: PolyExpr, assignment: Sequence, target: str = "rmax"):
    """Structural evaluation of ``e`` in one of the scalar semirings."""
    zero, one, negate = _target_ops(target)
    memo: dict[int, object] = {}

    def go(x):
        key = id(x)
        if key in memo:
            return memo[key]
        if isinstance(x, Zero):
            out = zero
        elif isinstance(x, One):
            out = one
        elif isinstance(x, Var):
            if x.index >= len(assignment):
                raise IndexError(f"no value for variable {x.index}")
            out = assignment[x.index]
        elif isinstance(x, Sum):
            out = go(x.left) + go(x.right)
        elif isinstance(x, Product):
            out = go(x.left) * go(x.right)
        elif isinstance(x, Minus):
            if negate is None:
                raise SymmetryUnavailable(f"{target} has no symmetry for a minus node")
            out = negate(go(x.child))
        else:
            raise TypeError(f"not a polynomial expression: {x!r}")
        memo[key] = out
        return out

    return go(e)


eval = evaluate  # noqa: A001  (public name kept short, as in the rest of the API)


# ---------------------------------------------------------------------------
# symbolic matrices


class _Vars:
    """Allocates variable indices and records their names."""

    def __init__(self):
        self.legend: list[str] = []

    def new(self, name: str) -> Var:
        self.legend.append(name)
        return Var(len(self.legend) - 1)

    def matrix(self, prefix: str, m: int, n: int) -> list[list[PolyExpr]]:
        return [[self.new(f"{prefix}{i + 1}{j + 1}") for j in range(n)] for i in range(m)]


def sym_matmul(A, B):
    return [
        [sum_of([A[i][k] * B[k][j] for k in range(len(B))]) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def sym_bidet(M, rows=None, cols=None):
    """Symbolic ``(|M[rows|cols]|+, |M[rows|cols]|-)``."""
    rows = list(range(len(M))) if rows is None else list(rows)
    cols = list(range(len(M[0]))) if cols is None else list(cols)
    even, odd = [], []
    for perm in itertools.permutations(range(len(rows))):
        term = product_of([M[rows[i]][cols[perm[i]]] for i in range(len(rows))])
        (even if permutation_parity(perm) == 0 else odd).append(term)
    return sum_of(even), sum_of(odd)


def _identity_matrix(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _mat_add(A, B):
    return [[A[i][j] + B[i][j] for j in range(len(A[0]))] for i in range(len(A))]


def _scale(c, A):
    return [[c * x for x in row] for row in A]


def _mat_power(A, k):
    out = _identity_matrix(len(A))
    for _ in range(k):
        out = sym_matmul(out, A)
    return out


def _zero_matrix(n):
    return [[ZERO] * n for _ in range(n)]


def _word_product(mats):
    out = mats[0]
    for M in mats[1:]:
        out = sym_matmul(out, M)
    return out


# ---------------------------------------------------------------------------
# identity catalogue


@dataclass
class IdentityPart:
    """One scalar identity ``P+ - P- = Q+ - Q-``."""

    label: str
    p_plus: PolyExpr
    p_minus: PolyExpr
    q_plus: PolyExpr
    q_minus: PolyExpr

    @property
    def lhs(self) -> PolyExpr:
        return self.p_plus - self.p_minus

    @property
    def rhs(self) -> PolyExpr:
        return self.q_plus - self.q_minus

    def semiring_sides(self) -> tuple[PolyExpr, PolyExpr]:
        """Minus-free form ``P+ + Q- = P- + Q+``."""
        return self.p_plus + self.q_minus, self.p_minus + self.q_plus


@dataclass
class Identity:
    kind: str
    legend: list
    parts: list = field(default_factory=list)

    @property
    def nvars(self) -> int:
        return len(self.legend)

    def weak_check(self) -> bool:
        return all(weak_transfer_check(p.lhs, p.rhs) for p in self.parts)

    def residuals(self) -> list[SignedPolynomial]:
        return [strong_transfer_residual(p.p_plus, p.p_minus, p.q_plus, p.q_minus) for p in self.parts]

    def certificate(self) -> str:
        """Stable text listing of both sides (and R when the strong form applies)."""
        lines = [f"identity {self.kind}", "legend " + " ".join(f"x{i}={n}" for i, n in enumerate(self.legend))]
        for p in self.parts:
            left, right = expand(p.lhs), expand(p.rhs)
            lines.append(f"[{p.label}] lhs: {left.format(self.legend)}")
            lines.append(f"[{p.label}] rhs: {right.format(self.legend)}")
            try:
                r = strong_transfer_residual(p.p_plus, p.p_minus, p.q_plus, p.q_minus)
                lines.append(f"[{p.label}] R: {r.format(self.legend)}")
            except (MonomialOverlap, NotAnIdentity) as exc:
                lines.append(f"[{p.label}] R: n/a ({exc})")
        return "\n".join(lines) + "\n"


SYMBOLIC_LIMITS = {
    "det_mult": 3,
    "binet_cauchy": 3,
    "cramer_adjoint": 3,
    "cayley_hamilton": 3,
    "amitsur_levitzki": 2,
    "capelli": 1,
    "algebraicity": 2,
}


def build_identity(kind: str, n: int, **params) -> Identity:
    """Symbolic instance of a classical identity.

    Kinds: ``det_mult``, ``binet_cauchy`` (params ``p``, ``m``, ``r`` and
    optionally ``alpha``, ``beta``; A is n x p, B is p x m), ``cramer_adjoint``,
    ``cayley_hamilton``, ``amitsur_levitzki`` (S_2n on n x n matrices),
    ``capelli`` (K_{n^2+1} on n x n matrices) and ``algebraicity``.
    """
    limit = SYMBOLIC_LIMITS.get(kind)
    if limit is None:
        raise ValueError(f"unknown identity kind {kind!r}")
    if n < 1:
        raise ValueError("size must be positive")
    if n > limit:
        raise SizeGuard(f"symbolic {kind} limited to n <= {limit}")
    V = _Vars()
    ident = Identity(kind, V.legend)
    if kind == "det_mult":
        A, B = V.matrix("a", n, n), V.matrix("b", n, n)
        abp, abm = sym_bidet(sym_matmul(A, B))
        ap, am = sym_bidet(A)
        bp, bm = sym_bidet(B)
        ident.parts.append(IdentityPart("det", abp, abm, ap * bp + am * bm, ap * bm + am * bp))
    elif kind == "binet_cauchy":
        p, m, r = params.get("p", n), params.get("m", n), params.get("r", 1)
        if max(p, m) > limit:
            raise SizeGuard(f"symbolic binet_cauchy limited to {limit}x{limit} factors")
        if not 1 <= r <= min(n, p, m):
            raise ValueError("r must satisfy 1 <= r <= min(n, p, m)")
        A, B = V.matrix("a", n, p), V.matrix("b", p, m)
        C = sym_matmul(A, B)
        alphas = [tuple(params["alpha"])] if "alpha" in params else list(itertools.combinations(range(n), r))
        betas = [tuple(params["beta"])] if "beta" in params else list(itertools.combinations(range(m), r))
        for alpha in alphas:
            for beta in betas:
                cp, cm = sym_bidet(C, alpha, beta)
                plus, minus = [], []
                for omega in itertools.combinations(range(p), r):
                    ap, am = sym_bidet(A, alpha, omega)
                    bp, bm = sym_bidet(B, omega, beta)
                    plus += [ap * bp, am * bm]
                    minus += [ap * bm, am * bp]
                label = f"{_one_based(alpha)}|{_one_based(beta)}"
                ident.parts.append(IdentityPart(label, cp, cm, sum_of(plus), sum_of(minus)))
    elif kind == "cramer_adjoint":
        A = V.matrix("a", n, n)
        adj_p, adj_m = _sym_adjoint(A)
        dp, dm = sym_bidet(A)
        left_p, left_m = sym_matmul(A, adj_p), sym_matmul(A, adj_m)
        for i in range(n):
            for k in range(n):
                qp, qm = (dp, dm) if i == k else (ZERO, ZERO)
                ident.parts.append(IdentityPart(f"{i + 1}{k + 1}", left_p[i][k], left_m[i][k], qp, qm))
    elif kind == "cayley_hamilton":
        A = V.matrix("a", n, n)
        left, right = cayley_hamilton_symbolic(A)
        for i in range(n):
            for j in range(n):
                ident.parts.append(IdentityPart(f"{i + 1}{j + 1}", left[i][j], right[i][j], ZERO, ZERO))
    elif kind == "amitsur_levitzki":
        mats = [V.matrix(f"x{t + 1}_", n, n) for t in range(2 * n)]
        even, odd = standard_polynomial_sides(mats, sym_matmul, _mat_add, _zero_matrix(n))
        for i in range(n):
            for j in range(n):
                ident.parts.append(IdentityPart(f"{i + 1}{j + 1}", even[i][j], odd[i][j], ZERO, ZERO))
    elif kind == "capelli":
        k = n * n + 1
        xs = [V.matrix(f"x{t + 1}_", n, n) for t in range(k)]
        ys = [V.matrix(f"y{t + 1}_", n, n) for t in range(k + 1)]
        even, odd = capelli_sides(xs, ys, sym_matmul, _mat_add, _zero_matrix(n))
        for i in range(n):
            for j in range(n):
                ident.parts.append(IdentityPart(f"{i + 1}{j + 1}", even[i][j], odd[i][j], ZERO, ZERO))
    elif kind == "algebraicity":
        y, z = V.new("y"), V.new("z")
        qp, qm = _algebraicity_split(n, y, z)
        ident.parts.append(IdentityPart("A(y,z)", ZERO, ZERO, qp, qm))
    return ident


def _one_based(idx):
    return "".join(str(i + 1) for i in idx)


def _sym_adjoint(A):
    n = len(A)
    plus = [[ZERO] * n for _ in range(n)]
    minus = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            if rows:
                dp, dm = sym_bidet(A, rows, cols)
            else:
                dp, dm = ONE, ZERO
            if (i + j) % 2 == 0:
                plus[i][j], minus[i][j] = dp, dm
            else:
                plus[i][j], minus[i][j] = dm, dp
    return plus, minus


def cayley_hamilton_symbolic(A):
    n = len(A)
    left = _mat_power(A, n)
    right = _zero_matrix(n)
    for k in range(1, n + 1):
        tp, tm = [], []
        for I in itertools.combinations(range(n), k):
            dp, dm = sym_bidet(A, I, I)
            tp.append(dp)
            tm.append(dm)
        P = _mat_power(A, n - k)
        trp, trm = sum_of(tp), sum_of(tm)
        if k % 2 == 0:
            left = _mat_add(left, _scale(trp, P))
            right = _mat_add(right, _scale(trm, P))
        else:
            left = _mat_add(left, _scale(trm, P))
            right = _mat_add(right, _scale(trp, P))
    return left, right


def standard_polynomial_sides(mats, mul, add, zero):
    """Sums of ``x_σ(1)...x_σ(k)`` over even and over odd permutations σ."""
    even, odd = zero, zero
    for perm in itertools.permutations(range(len(mats))):
        word = mats[perm[0]]
        for t in perm[1:]:
            word = mul(word, mats[t])
        if permutation_parity(perm) == 0:
            even = add(even, word)
        else:
            odd = add(odd, word)
    return even, odd


def capelli_sides(xs, ys, mul, add, zero):
    """Even and odd halves of ``Σ_σ sgn(σ) y1 x_σ(1) y2 ... y_k x_σ(k) y_{k+1}``."""
    k = len(xs)
    if len(ys) != k + 1:
        raise ValueError("Capelli needs one more y than x")
    even, odd = zero, zero
    for perm in itertools.permutations(range(k)):
        word = ys[0]
        for t in range(k):
            word = mul(mul(word, xs[perm[t]]), ys[t + 1])
        if permutation_parity(perm) == 0:
            even = add(even, word)
        else:
            odd = add(odd, word)
    return even, odd


def _algebraicity_split(n, y, z):
    """Positive and negative word sums of ``S_{n^2}([y^{n^2}, z], ..., [y, z])``.

    Words are noncommutative; here each is recorded as its commutative
    product, which is exactly where the two sides collide.
    """
    k = n * n
    # each commutator [y^e, z] = y^e z - z y^e, as (sign, word) pairs
    comms = []
    for e in range(k, 0, -1):
        comms.append([(1, ("y",) * e + ("z",)), (-1, ("z",) + ("y",) * e)])
    plus, minus = [], []
    for perm in itertools.permutations(range(k)):
        sgn = -1 if permutation_parity(perm) else 1
        for picks in itertools.product(*(comms[t] for t in perm)):
            s = sgn
            word = ()
            for sign, w in picks:
                s *= sign
                word += w
            term = product_of([y if ch == "y" else z for ch in word])
            (plus if s > 0 else minus).append(term)
    return sum_of(plus), sum_of(minus)


# ---------------------------------------------------------------------------
# numeric matrix identities


def _matrix_ops(semiring: str):
    from .scalars import zero_of

    def mul(A, B):
        return A @ B

    def add(A, B):
        return A + B

    return mul, add, zero_of(semiring)


def amitsur_levitzki_numeric(mats: Sequence[Matrix]) -> tuple[Matrix, Matrix]:
    """Even and odd halves of the standard polynomial on concrete matrices."""
    n = mats[0].rows
    if len(mats) != 2 * n:
        raise PreconditionUnmet(f"Amitsur-Levitzki needs {2 * n} matrices of size {n}")
    if n > 3:
        raise SizeGuard("numeric Amitsur-Levitzki limited to n <= 3")
    zero = Matrix.zeros(n, n, mats[0].semiring)
    return standard_polynomial_sides(list(mats), lambda a, b: a @ b, lambda a, b: a + b, zero)


def capelli_numeric(xs: Sequence[Matrix], ys: Sequence[Matrix]) -> tuple[Matrix, Matrix]:
    n = xs[0].rows
    if len(xs) != n * n + 1:
        raise PreconditionUnmet(f"Capelli on {n}x{n} matrices needs {n * n + 1} x-matrices")
    if n > 2:
        raise SizeGuard("numeric Capelli limited to n <= 2")
    zero = Matrix.zeros(n, n, xs[0].semiring)
    return capelli_sides(list(xs), list(ys), lambda a, b: a @ b, lambda a, b: a + b, zero)


def linear_recurrence(c: Matrix, A: Matrix, b: Matrix, horizon: int) -> list:
    """``s_k = c A^k b`` for k < horizon (c is 1 x n, b is n x 1)."""
    out = []
    P = Matrix.identity(A.rows, A.semiring)
    for _ in range(horizon):
        out.append((c @ P @ b)[0, 0])
        P = P @ A
    return out
