import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_rmax, random_sym
from tropica.errors import MonomialOverlap, NotAnIdentity, SizeGuard, SymmetryUnavailable
from tropica.matrices import Matrix
from tropica.polyid import (
    ONE,
    ZERO,
    SignedPolynomial,
    Var,
    amitsur_levitzki_numeric,
    build_identity,
    capelli_numeric,
    const,
    evaluate,
    expand,
    linear_recurrence,
    power,
    strong_transfer_residual,
    weak_transfer_check,
)
from tropica.scalars import Couple, Ext, MaxPlus, Sym, balance, bal, ghost, neg, pos, real

x1, x2, x3 = Var(0), Var(1), Var(2)


def mono(*pairs):
    return tuple(sorted(pairs))


class TestExpand:
    def test_multiplicities(self):
        e = (const(3) * (ONE + x1)) * x3 + x2
        assert expand(e).terms == {mono((0, 1), (2, 1)): 3, mono((2, 1)): 3, mono((1, 1)): 1}

    def test_trivial(self):
        assert expand(ZERO).terms == {}
        assert expand(-x1 + x1).terms == {}
        assert expand(power(x1, 3)).terms == {mono((0, 3)): 1}

    exprs = st.recursive(
        st.sampled_from([ZERO, ONE, x1, x2, x3]),
        lambda kids: st.one_of(
            st.tuples(kids, kids).map(lambda t: t[0] + t[1]),
            st.tuples(kids, kids).map(lambda t: t[0] * t[1]),
            kids.map(lambda k: -k),
        ),
        max_leaves=8,
    )

    @given(exprs, exprs)
    def test_morphism(self, a, b):
        assert expand(a + b) == expand(a) + expand(b)
        assert expand(a * b) == expand(a) * expand(b)
        assert expand(-a) == -expand(a)

    @given(exprs, st.lists(st.integers(-3, 3), min_size=3, max_size=3))
    def test_evaluation_over_integers_agrees(self, e, point):
        # interpreting in the ring Z: expansion then evaluation equals direct evaluation
        def ev(poly: SignedPolynomial):
            total = 0
            for m, c in poly.terms.items():
                t = c
                for v, k in m:
                    t *= point[v] ** k
                total += t
            return total

        def direct(x):
            from tropica.polyid import Minus, One, Product, Sum, Zero

            if isinstance(x, Zero):
                return 0
            if isinstance(x, One):
                return 1
            if isinstance(x, Var):
                return point[x.index]
            if isinstance(x, Sum):
                return direct(x.left) + direct(x.right)
            if isinstance(x, Product):
                return direct(x.left) * direct(x.right)
            if isinstance(x, Minus):
                return -direct(x.child)

        assert ev(expand(e)) == direct(e)


class TestTransfer:
    def test_weak(self):
        ident = build_identity("det_mult", 2)
        part = ident.parts[0]
        assert ident.nvars == 8
        assert weak_transfer_check(part.lhs, part.rhs)
        assert not weak_transfer_check(x1, x2)

    def test_cayley_hamilton_against_zero(self):
        for part in build_identity("cayley_hamilton", 2).parts:
            assert weak_transfer_check(part.p_plus - part.p_minus, ZERO)

    def test_strong_det_mult(self):
        part = build_identity("det_mult", 2).parts[0]
        r = strong_transfer_residual(part.p_plus, part.p_minus, part.q_plus, part.q_minus)
        assert r.is_nonnegative and len(r) > 0
        assert expand(part.p_plus) == expand(part.q_plus) + r
        assert expand(part.p_minus) == expand(part.q_minus) + r

    def test_strong_syntactic_equal(self):
        r = strong_transfer_residual(x1 * x2, x3, x1 * x2, x3)
        assert r.terms == {}

    def test_strong_overlap(self):
        part = build_identity("algebraicity", 1).parts[0]
        with pytest.raises(MonomialOverlap):
            strong_transfer_residual(part.p_plus, part.p_minus, part.q_plus, part.q_minus)

    def test_not_an_identity(self):
        with pytest.raises(NotAnIdentity):
            strong_transfer_residual(x1, ZERO, x2, ZERO)

    def test_cramer_adjoint_residual(self):
        ident = build_identity("cramer_adjoint", 2)
        residuals = ident.residuals()
        assert all(r.is_nonnegative for r in residuals)
        # diagonal entries are exact, off-diagonal ones carry one shared monomial
        assert [len(r) for r in residuals] == [0, 1, 1, 0]


@pytest.mark.parametrize(
    "kind,n,params",
    [
        ("det_mult", 2, {}),
        ("det_mult", 3, {}),
        ("binet_cauchy", 2, {"p": 2, "m": 2, "r": 1}),
        ("binet_cauchy", 2, {"p": 2, "m": 2, "r": 2}),
        ("binet_cauchy", 2, {"p": 3, "m": 2, "r": 2}),
        ("cramer_adjoint", 2, {}),
        ("cramer_adjoint", 3, {}),
        ("cayley_hamilton", 2, {}),
        ("cayley_hamilton", 3, {}),
        ("amitsur_levitzki", 1, {}),
        ("amitsur_levitzki", 2, {}),
        ("capelli", 1, {}),
        ("algebraicity", 1, {}),
    ],
)
def test_catalogue_weak(kind, n, params):
    assert build_identity(kind, n, **params).weak_check()


def test_binet_cauchy_single_pair():
    ident = build_identity("binet_cauchy", 2, p=2, m=2, r=1, alpha=(1,), beta=(0,))
    assert len(ident.parts) == 1 and ident.parts[0].label == "2|1"


def test_guards():
    with pytest.raises(SizeGuard):
        build_identity("det_mult", 4)
    with pytest.raises(SizeGuard):
        build_identity("capelli", 2)
    with pytest.raises(ValueError):
        build_identity("nonsense", 2)


def test_legend_names_entries():
    ident = build_identity("det_mult", 2)
    assert ident.legend[:4] == ["a11", "a12", "a21", "a22"]


def test_certificate_is_stable():
    a = build_identity("cramer_adjoint", 2).certificate()
    b = build_identity("cramer_adjoint", 2).certificate()
    assert a == b
    assert "R:" in a and a.startswith("identity cramer_adjoint")


class TestEvaluate:
    def test_examples(self):
        assert evaluate(x1 + x1, [real(3)], "te") == ghost(3)
        assert evaluate(ZERO, [], "rmax") == MaxPlus.zero()

    def test_minus_needs_symmetry(self):
        with pytest.raises(SymmetryUnavailable):
            evaluate(-x1, [MaxPlus(1)], "rmax")
        assert evaluate(-x1, [pos(1)], "smax") == neg(1)
        assert evaluate(-x1, [Couple(1, 0)], "couples") == Couple(0, 1)

    @pytest.mark.parametrize("kind,n", [("det_mult", 2), ("det_mult", 3), ("cramer_adjoint", 3), ("cayley_hamilton", 2)])
    def test_numeric_instances_balance(self, kind, n):
        rng = random.Random(5)
        ident = build_identity(kind, n)
        makers = {"smax": (pos, neg, bal), "te": (real, ghost)}
        for target, ms in makers.items():
            for _ in range(20):
                point = [rng.choice(ms)(rng.randint(-3, 3)) for _ in range(ident.nvars)]
                for part in ident.parts:
                    assert balance(evaluate(part.lhs, point, target), evaluate(part.rhs, point, target))

    def test_residual_numerically(self):
        rng = random.Random(9)
        part = build_identity("det_mult", 2).parts[0]
        r = strong_transfer_residual(part.p_plus, part.p_minus, part.q_plus, part.q_minus)
        from tropica.polyid import product_of, sum_of

        r_expr = sum_of(
            [product_of([const(c)] + [power(Var(v), k) for v, k in m]) for m, c in r.terms.items()]
        )
        for _ in range(30):
            point = [MaxPlus(rng.randint(0, 5)) for _ in range(8)]
            lhs = evaluate(part.p_plus, point, "rmax")
            assert lhs == evaluate(part.q_plus, point, "rmax") + evaluate(r_expr, point, "rmax")


class TestMatrixIdentities:
    def test_amitsur_levitzki_rmax(self, rng):
        for _ in range(25):
            mats = [random_rmax(rng, 2) for _ in range(4)]
            even, odd = amitsur_levitzki_numeric(mats)
            assert even == odd

    def test_amitsur_levitzki_smax(self, rng):
        for _ in range(10):
            mats = [random_sym(rng, 2) for _ in range(4)]
            even, odd = amitsur_levitzki_numeric(mats)
            assert even == odd

    def test_capelli(self, rng):
        for _ in range(3):
            xs = [random_rmax(rng, 2) for _ in range(5)]
            ys = [random_rmax(rng, 2) for _ in range(6)]
            even, odd = capelli_numeric(xs, ys)
            assert even == odd

    def test_capelli_fails_below_threshold(self):
        # K_2 on 2x2 matrices is not an identity: the precondition is checked
        from tropica.errors import PreconditionUnmet

        with pytest.raises(PreconditionUnmet):
            capelli_numeric([Matrix.identity(2)] * 2, [Matrix.identity(2)] * 3)

    def test_linear_recurrence_vanishes(self, rng):
        hits = 0
        for _ in range(400):
            n = rng.randint(1, 3)
            A = random_rmax(rng, n, zero_density=0.6)
            c = random_rmax(rng, 1, n, zero_density=0.5)
            b = random_rmax(rng, n, 1, zero_density=0.5)
            seq = linear_recurrence(c, A, b, 3 * n)
            if all(s.is_zero for s in seq[:n]):
                hits += 1
                assert all(s.is_zero for s in seq)
        assert hits > 20
