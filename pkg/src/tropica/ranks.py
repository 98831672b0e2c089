"""Rank functions of max-plus matrices and the checks relating them.

Ranks provided: tropical, determinantal, Gondran-Minoux row/column, tropical
row/column, weak row/column, row/column (extremal rays), spanning row,
factor and term rank.  ``rank_report`` gathers all of them, turning guard
violations into :class:`Unknown` values, and checks the order relations.
"""
from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import networkx as nx

from . import kernels
from .errors import ShapeMismatch, SizeGuard
from .matrices import Matrix, is_sign_singular, is_trop_singular
from .scalars import NEG_INF, MaxPlus
from .systems import (
    Budget,
    Closure,
    DifferenceConstraintSystem,
    Feasible,
    diff_feasible,
    gm_witness,
    in_span,
    trop_witness,
    weakly_independent,
)

MAX_MINORS = 5 * 10**6
MAX_WEAK_SUBSETS = 1 << 12
MAX_FACTOR_CELLS = 64
FAST_GM_BUDGET = 200_000  # search nodes for the default tier


def _rmax(A: Matrix) -> Matrix:
    if A.semiring != "rmax":
        raise ShapeMismatch("rank functions take R_max matrices")
    return A


def _axis_vectors(A: Matrix, axis: str) -> list[list]:
    if axis in ("rows", "row", "r"):
        return [list(A.row(i)) for i in range(A.rows)]
    if axis in ("cols", "col", "columns", "c"):
        return [list(A.col(j)) for j in range(A.cols)]
    raise ValueError(f"axis must be rows or cols, not {axis!r}")


# ---------------------------------------------------------------------------
# minor sweeps


def _minor_sweep(A: Matrix, nonsingular, threads: int = 1) -> int:
    """Largest k with a k x k submatrix satisfying ``nonsingular(flat, k)``."""
    A = _rmax(A)
    m, n = A.shape
    vals = A.values()
    for k in range(min(m, n), 0, -1):
        row_sets = list(itertools.combinations(range(m), k))
        col_sets = list(itertools.combinations(range(n), k))
        if len(row_sets) * len(col_sets) > MAX_MINORS:
            raise SizeGuard(f"{len(row_sets) * len(col_sets)} minors of order {k} exceed the sweep limit")

        def scan(rows_chunk, stop):
            for R in rows_chunk:
                if stop.is_set():
                    return False
                for C in col_sets:
                    flat = [vals[i][j] for i in R for j in C]
                    if nonsingular(flat, k):
                        stop.set()
                        return True
            return False

        stop = threading.Event()
        if threads <= 1:
            found = scan(row_sets, stop)
        else:
            chunks = [row_sets[t::threads] for t in range(threads)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                found = any(pool.map(lambda ch: scan(ch, stop), chunks))
        if found:
            return k
    return 0


def _trop_nonsingular(flat, k):
    value, mult = kernels.perm_mult_values(flat, k)
    return value != NEG_INF and mult == 1


def _det_unbalanced(flat, k):
    plus, minus = kernels.bidet_values(flat, k)
    return plus != minus


def trop_rank(A: Matrix, threads: int = 1) -> int:
    """Largest order of a tropically nonsingular square submatrix."""
    return _minor_sweep(A, _trop_nonsingular, threads)


def det_rank(A: Matrix, threads: int = 1) -> int:
    """Largest order of a square submatrix with ``|A'|+ != |A'|-``."""
    return _minor_sweep(A, _det_unbalanced, threads)


def _has_minor(vectors: list[list], k: int, test) -> bool:
    """Does the k x n family have some k x k minor passing ``test``?"""
    n = len(vectors[0])
    vals = [[x.value for x in v] for v in vectors]
    for C in itertools.combinations(range(n), k):
        if test([vals[i][j] for i in range(k) for j in C], k):
            return True
    return False


# ---------------------------------------------------------------------------
# independence ranks


def gm_independent(vectors: list, budget: Budget | None = None) -> bool:
    """Gondran-Minoux independence with the square shortcuts tried first."""
    k, n = len(vectors), len(vectors[0])
    if k > n:
        return False
    if _has_minor(vectors, k, _det_unbalanced):
        return True
    if k == n:
        return False  # the only maximal minor is balanced
    return gm_witness(vectors, budget=budget) is None


def trop_independent(vectors: list, budget: Budget | None = None) -> bool:
    k, n = len(vectors), len(vectors[0])
    if k > n:
        return False
    if _has_minor(vectors, k, _trop_nonsingular):
        return True
    if k == n:
        return False
    return trop_witness(vectors, budget=budget) is None


def _independence_rank(vectors: list, independent) -> int:
    m = len(vectors)
    n = len(vectors[0]) if vectors else 0
    for k in range(min(m, n), 0, -1):
        for S in itertools.combinations(range(m), k):
            if independent([vectors[i] for i in S]):
                return k
    return 0


def gm_rank(A: Matrix, axis: str = "rows", budget: Budget | None = None) -> int:
    """Largest number of Gondran-Minoux independent rows (or columns)."""
    vs = _axis_vectors(_rmax(A), axis)
    return _independence_rank(vs, lambda f: gm_independent(f, budget))


def trop_axis_rank(A: Matrix, axis: str = "rows", budget: Budget | None = None) -> int:
    """Largest number of tropically independent rows (or columns)."""
    vs = _axis_vectors(_rmax(A), axis)
    return _independence_rank(vs, lambda f: trop_independent(f, budget))


def weak_axis_rank(A: Matrix, axis: str = "rows") -> int:
    """Largest weakly independent subfamily of rows (or columns)."""
    vs = _axis_vectors(_rmax(A), axis)
    if len(vs) > 12:
        raise SizeGuard(f"weak rank limited to {MAX_WEAK_SUBSETS} subsets")
    for k in range(len(vs), 0, -1):
        for S in itertools.combinations(range(len(vs)), k):
            if weakly_independent([vs[i] for i in S]):
                return k
    return 0


# ---------------------------------------------------------------------------
# row rank and spanning row rank


def _normalized_distinct(vectors: list) -> list[list]:
    """Nonzero vectors scaled so their first finite entry is 0, duplicates dropped."""
    seen = []
    for v in vectors:
        vals = [x.value if isinstance(x, MaxPlus) else x for x in v]
        first = next((x for x in vals if x != NEG_INF), None)
        if first is None:
            continue
        w = [x if x == NEG_INF else x - first for x in vals]
        if w not in seen:
            seen.append(w)
    return seen


def extremal_generators(vectors: list) -> list[list]:
    """Normalized vectors that are not in the span of the other distinct ones."""
    vs = _normalized_distinct(vectors)
    return [v for i, v in enumerate(vs) if not in_span(vs[:i] + vs[i + 1 :], v)]


def row_rank(A: Matrix) -> int:
    """Weak dimension of the row span: the number of its extremal rays."""
    return len(extremal_generators(_axis_vectors(_rmax(A), "rows")))


def col_rank(A: Matrix) -> int:
    return row_rank(_rmax(A).T)


def spanning_row_rank(A: Matrix) -> int:
    """Fewest rows whose span contains every row, by subset enumeration."""
    vs = _normalized_distinct(_axis_vectors(_rmax(A), "rows"))
    if len(vs) > 12:
        raise SizeGuard("spanning row rank limited to 12 distinct rows")
    for k in range(0, len(vs) + 1):
        for S in itertools.combinations(range(len(vs)), k):
            gens = [vs[i] for i in S]
            if all(in_span(gens, v) if gens else False for v in vs):
                return k
    return 0


# ---------------------------------------------------------------------------
# term rank


def term_rank(A: Matrix) -> int:
    """Maximum matching in the bipartite graph of finite cells."""
    cells = A.finite_cells()
    if not cells:
        return 0
    g = nx.Graph()
    rows = [("r", i) for i in range(A.rows)]
    g.add_nodes_from(rows, bipartite=0)
    g.add_nodes_from((("c", j) for j in range(A.cols)), bipartite=1)
    g.add_edges_from((("r", i), ("c", j)) for i, j in cells)
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=rows)
    return len(matching) // 2


# ---------------------------------------------------------------------------
# factor rank


@dataclass(frozen=True)
class FactorResult:
    rank: int
    B: Matrix | None
    C: Matrix | None
    classes: tuple  # cell sets, one per rank-one term


class _TightSets:
    """Colour classes of cells, each kept feasible as one rank-one term.

    Variables: ``u_i`` for row i (index i) and ``w_j = -v_j`` for column j
    (index m + j), so ``u_i + v_j <= a_ij`` reads ``u_i - w_j <= a_ij``.
    """

    def __init__(self, vals, m, n, k):
        self.vals, self.m, self.n = vals, m, n
        self.closures = [Closure(m + n) for _ in range(k)]
        self.rows = [frozenset() for _ in range(k)]
        self.cols = [frozenset() for _ in range(k)]

    def try_add(self, t, cell):
        """Return the new state of class ``t`` with ``cell`` added, or None."""
        i, j = cell
        vals, m = self.vals, self.m
        rows, cols = self.rows[t], self.cols[t]
        new_rows = rows | {i}
        new_cols = cols | {j}
        cons = [(i, m + j, vals[i][j]), (m + j, i, -vals[i][j])]
        if i not in rows:
            for c in new_cols:
                a = vals[i][c]
                if a == NEG_INF:
                    return None
                cons.append((i, m + c, a))
        if j not in cols:
            for r in new_rows:
                a = vals[r][j]
                if a == NEG_INF:
                    return None
                cons.append((r, m + j, a))
        cl = self.closures[t].copy()
        if not cl.add_all(cons):
            return None
        return cl, new_rows, new_cols

    def commit(self, t, state):
        old = (self.closures[t], self.rows[t], self.cols[t])
        self.closures[t], self.rows[t], self.cols[t] = state
        return old

    def restore(self, t, old):
        self.closures[t], self.rows[t], self.cols[t] = old


def _compatible(vals, c1, c2) -> bool:
    (i, j), (k, l) = c1, c2
    if i == k or j == l:
        return True
    if vals[i][l] == NEG_INF or vals[k][j] == NEG_INF:
        return False
    return vals[i][j] + vals[k][l] <= vals[i][l] + vals[k][j]


def _cover_with(vals, m, n, cells, k, stats):
    """Colour ``cells`` with at most ``k`` feasible tight sets; None if impossible."""
    N = len(cells)
    conflict = [
        [b for b in range(N) if b != a and not _compatible(vals, cells[a], cells[b])]
        for a in range(N)
    ]
    domain = [set(range(k)) for _ in range(N)]
    colour = [-1] * N
    sets = _TightSets(vals, m, n, k)

    def rec(used):
        stats["nodes"] += 1
        best, best_size = -1, None
        for c in range(N):
            if colour[c] < 0:
                size = sum(1 for t in domain[c] if t <= used)
                if best_size is None or size < best_size:
                    best, best_size = c, size
                    if size == 0:
                        return False
        if best < 0:
            return True
        c = best
        for t in sorted(domain[c]):
            if t > used or t >= k:
                break
            state = sets.try_add(t, cells[c])
            if state is None:
                continue
            old = sets.commit(t, state)
            colour[c] = t
            pruned = []
            for o in conflict[c]:
                if colour[o] < 0 and t in domain[o]:
                    domain[o].discard(t)
                    pruned.append(o)
            if rec(used + 1 if t == used else used):
                return True
            for o in pruned:
                domain[o].add(t)
            colour[c] = -1
            sets.restore(t, old)
        return False

    if not rec(0):
        return None
    return colour, sets


def factor_decomposition(A: Matrix, lower: int | None = None) -> FactorResult:
    """Minimum k with ``A = B ⊗ C`` (B is m x k), with the factors re-verified."""
    A = _rmax(A)
    m, n = A.shape
    vals = A.values()
    cells = A.finite_cells()
    if not cells:
        return FactorResult(0, None, None, ())
    if len(cells) > MAX_FACTOR_CELLS:
        raise SizeGuard(f"factor rank limited to {MAX_FACTOR_CELLS} finite cells")
    upper = min(m, n, term_rank(A))
    if lower is None:
        lower = trop_rank(A) if min(m, n) <= 8 else 1
    stats = {"nodes": 0}
    for k in range(max(1, lower), upper + 1):
        found = _cover_with(vals, m, n, cells, k, stats)
        if found is None:
            continue
        colour, sets = found
        B = [[NEG_INF] * k for _ in range(m)]
        C = [[NEG_INF] * n for _ in range(k)]
        classes = []
        for t in range(k):
            pt = sets.closures[t].point()
            for i in sets.rows[t]:
                B[i][t] = pt[i]
            for j in sets.cols[t]:
                C[t][j] = -pt[m + j]
            classes.append(frozenset(cells[c] for c in range(len(cells)) if colour[c] == t))
        Bm, Cm = Matrix(B), Matrix(C)
        if Bm @ Cm != A:  # pragma: no cover - the tight sets guarantee equality
            raise AssertionError("factorization failed verification")
        return FactorResult(k, Bm, Cm, tuple(classes))
    raise AssertionError("no factorization up to the term rank")  # pragma: no cover


def factor_rank(A: Matrix) -> int:
    return factor_decomposition(A).rank


def tight_set_feasible(A: Matrix, cells) -> bool:
    """Independent feasibility test for one tight set via Bellman-Ford."""
    vals = A.values()
    rows = sorted({i for i, _ in cells})
    cols = sorted({j for _, j in cells})
    m = A.rows
    sys_ = DifferenceConstraintSystem(m + A.cols)
    sys_.support = frozenset(rows + [m + j for j in cols])
    for i in rows:
        for j in cols:
            a = vals[i][j]
            if a == NEG_INF:
                return False
            sys_.add(i, m + j, a)
            if (i, j) in cells:
                sys_.add(m + j, i, -a)
    return isinstance(diff_feasible(sys_), Feasible)


def enveloping_rank_brute(A: Matrix) -> int:
    """Fewest generators whose span contains every row, by exhaustive set cover.

    Each generator, with its coefficients, attains a set of cells; a family
    of sets works when every one is feasible and together they cover all
    finite cells.  All cell subsets are enumerated, so keep matrices tiny.
    """
    cells = A.finite_cells()
    if not cells:
        return 0
    if len(cells) > 12:
        raise SizeGuard("brute-force enveloping rank limited to 12 finite cells")
    N = len(cells)
    feasible = [
        mask
        for mask in range(1, 1 << N)
        if tight_set_feasible(A, {cells[t] for t in range(N) if mask >> t & 1})
    ]
    maximal = [f for f in feasible if not any(g != f and g & f == f for g in feasible)]
    full = (1 << N) - 1
    for k in range(1, N + 1):
        for combo in itertools.combinations(maximal, k):
            acc = 0
            for f in combo:
                acc |= f
            if acc == full:
                return k
    return N  # pragma: no cover


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Unknown:
    guard: str

    def __str__(self):
        return "?"


RANK_FIELDS = ("trop", "rk_det", "mr_GM", "mc_GM", "mr_t", "mc_t", "mr_w", "mc_w", "r", "c", "sr", "f", "term")

HASSE_EDGES = (
    ("trop", "rk_det"),
    ("rk_det", "mr_GM"),
    ("rk_det", "mc_GM"),
    ("mr_GM", "f"),
    ("mc_GM", "f"),
    ("f", "r"),
    ("f", "c"),
    ("f", "term"),
    ("r", "mr_w"),
    ("c", "mc_w"),
)
EQUALITIES = (("mr_t", "trop"), ("mc_t", "trop"), ("sr", "r"))


@dataclass
class RankReport:
    values: dict
    violations: list = field(default_factory=list)

    def __getattr__(self, name):
        values = self.__dict__.get("values", {})
        if name in values:
            return values[name]
        raise AttributeError(name)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        out = {}
        for k in RANK_FIELDS:
            v = self.values[k]
            out[k] = {"unknown": v.guard} if isinstance(v, Unknown) else v
        return out


def _known(v) -> bool:
    return isinstance(v, int)


def check_hasse(values: dict) -> list[str]:
    bad = []
    for lo, hi in HASSE_EDGES:
        if _known(values[lo]) and _known(values[hi]) and values[lo] > values[hi]:
            bad.append(f"{lo}={values[lo]} > {hi}={values[hi]}")
    for a, b in EQUALITIES:
        if _known(values[a]) and _known(values[b]) and values[a] != values[b]:
            bad.append(f"{a}={values[a]} != {b}={values[b]}")
    return bad


def rank_report(A: Matrix, slow: bool = False, threads: int = 1, only=None) -> RankReport:
    """Every rank of ``A``; ranks beyond their guards come back as ``Unknown``.

    ``slow`` lifts the node budget of the Gondran-Minoux witness searches.
    """
    A = _rmax(A)
    gm_budget = None if slow else FAST_GM_BUDGET
    jobs = {
        "trop": lambda: trop_rank(A, threads),
        "rk_det": lambda: det_rank(A, threads),
        "mr_GM": lambda: gm_rank(A, "rows", Budget(gm_budget)),
        "mc_GM": lambda: gm_rank(A, "cols", Budget(gm_budget)),
        "mr_t": lambda: trop_axis_rank(A, "rows", Budget(gm_budget)),
        "mc_t": lambda: trop_axis_rank(A, "cols", Budget(gm_budget)),
        "mr_w": lambda: weak_axis_rank(A, "rows"),
        "mc_w": lambda: weak_axis_rank(A, "cols"),
        "r": lambda: row_rank(A),
        "c": lambda: col_rank(A),
        "sr": lambda: spanning_row_rank(A),
        "f": lambda: factor_rank(A),
        "term": lambda: term_rank(A),
    }
    values = {}
    for name in RANK_FIELDS:
        if only is not None and name not in only:
            values[name] = Unknown("not requested")
            continue
        try:
            values[name] = jobs[name]()
        except SizeGuard as exc:
            values[name] = Unknown(str(exc))
    return RankReport(values, check_hasse(values))


# ---------------------------------------------------------------------------
# rank arithmetic


@dataclass
class InequalityReport:
    kind: str
    ranks: dict
    results: list  # (statement, holds) pairs for the theorem's inequalities
    observations: list  # (statement, value) pairs that are not theorem claims

    @property
    def ok(self) -> bool:
        return all(h for _, h in self.results)


def _basic_ranks(M: Matrix) -> dict:
    return {
        "f": factor_rank(M),
        "rk_det": det_rank(M),
        "trop": trop_rank(M),
        "r": row_rank(M),
        "c": col_rank(M),
    }


def rank_inequality_check(kind: str, A: Matrix, B: Matrix) -> InequalityReport:
    """Evaluate the sum, product or union rank inequalities on one pair."""
    A, B = _rmax(A), _rmax(B)
    if kind == "sum":
        if A.shape != B.shape:
            raise ShapeMismatch("sum needs equal shapes")
        M = A + B
    elif kind == "product":
        if A.cols != B.rows:
            raise ShapeMismatch("product needs A.cols == B.rows")
        M = A @ B
    elif kind == "union":
        if A.rows != B.rows:
            raise ShapeMismatch("union needs equal row counts")
        M = A.hstack(B)
    else:
        raise ValueError(f"unknown inequality kind {kind!r}")
    ra, rb, rm = _basic_ranks(A), _basic_ranks(B), _basic_ranks(M)
    results = []
    obs = []
    if kind == "sum":
        for key in ("f", "rk_det", "trop"):
            results.append((f"{key}(A+B) <= {key}(A) + {key}(B)", rm[key] <= ra[key] + rb[key]))
        obs.append(("r(A+B) - r(A) - r(B)", rm["r"] - ra["r"] - rb["r"]))
    elif kind == "product":
        for key in ("f", "rk_det", "trop"):
            results.append((f"{key}(AB) <= min({key}(A), {key}(B))", rm[key] <= min(ra[key], rb[key])))
        obs.append(("r(AB) - r(B)", rm["r"] - rb["r"]))
    else:
        results.append(("max(r(A), r(B)) <= r(A|B)", max(ra["r"], rb["r"]) <= rm["r"]))
        results.append(("c(A|B) <= c(A) + c(B)", rm["c"] <= ra["c"] + rb["c"]))
        for key in ("f", "trop", "rk_det"):
            results.append(
                (f"max({key}(A), {key}(B)) <= {key}(A|B)", max(ra[key], rb[key]) <= rm[key])
            )
            results.append((f"{key}(A|B) <= {key}(A) + {key}(B)", rm[key] <= ra[key] + rb[key]))
        obs.append(("c(A|B) - min(c(A), c(B))", rm["c"] - min(ra["c"], rb["c"])))
    return InequalityReport(kind, {"A": ra, "B": rb, "M": rm}, results, obs)


@dataclass
class AugmentationReport:
    u_independent: bool
    v_independent: bool
    failures: list  # basis indices e with rows(F) + e_e GM-dependent

    @property
    def all_fail(self) -> bool:
        return len(self.failures) == 7


def augmentation_counterexample(F: Matrix | None = None, budget: Budget | None = None) -> AugmentationReport:
    """Rows of F (6 independent vectors) cannot be augmented by any basis vector.

    ``failures`` lists the basis vectors e such that ``rows(F) ∪ {e}`` is
    GM-dependent, decided by the balanced 7 x 7 determinant.
    """
    if F is None:
        from .fixtures import fixtures

        F = fixtures("F")
    rows = _axis_vectors(F, "rows")
    n = F.cols
    u_ind = gm_independent(rows, budget)
    basis = [[0 if i == j else NEG_INF for j in range(n)] for i in range(n)]
    v_ind = not is_sign_singular(Matrix(basis))
    failures = []
    for e in range(n):
        M = Matrix([list(r) for r in rows] + [basis[e]])
        if is_sign_singular(M):
            failures.append(e)
    return AugmentationReport(u_ind, v_ind, failures)


__all__ = [
    "Unknown",
    "RankReport",
    "trop_rank",
    "det_rank",
    "gm_rank",
    "trop_axis_rank",
    "weak_axis_rank",
    "row_rank",
    "col_rank",
    "spanning_row_rank",
    "factor_rank",
    "factor_decomposition",
    "term_rank",
    "rank_report",
    "rank_inequality_check",
    "augmentation_counterexample",
    "enveloping_rank_brute",
    "tight_set_feasible",
]
