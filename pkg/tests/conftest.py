"""Shared strategies and small random generators for the test suite."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from tropica.matrices import Matrix
from tropica.scalars import NEG_INF, Ext, MaxPlus, bal, ghost, neg, pos, real

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small = st.integers(min_value=-4, max_value=4).map(Fraction)
halves = st.integers(min_value=-8, max_value=8).map(lambda k: Fraction(k, 2))
value = st.one_of(st.just(NEG_INF), small, halves)

maxplus = value.map(MaxPlus)
sym = st.one_of(
    st.just(pos(NEG_INF)),
    st.builds(pos, small),
    st.builds(neg, small),
    st.builds(bal, small),
)
ext = st.one_of(st.just(real(NEG_INF)), st.builds(real, small), st.builds(ghost, small))
signed_sym = st.one_of(st.just(pos(NEG_INF)), st.builds(pos, small), st.builds(neg, small))


def rmax_matrices(min_n=1, max_n=4, square=True, entries=None):
    entries = entries or st.one_of(st.just(NEG_INF), st.integers(-3, 3).map(Fraction))

    @st.composite
    def build(draw):
        m = draw(st.integers(min_n, max_n))
        n = m if square else draw(st.integers(min_n, max_n))
        return Matrix([[draw(entries) for _ in range(n)] for _ in range(m)])

    return build()


def random_rmax(rng: random.Random, m: int, n: int | None = None, lo=-3, hi=3, zero_density=0.2) -> Matrix:
    n = m if n is None else n
    return Matrix(
        [[NEG_INF if rng.random() < zero_density else rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]
    )


def random_sym(rng: random.Random, n: int, lo=-3, hi=3, signed=False) -> Matrix:
    makers = (pos, neg) if signed else (pos, neg, bal)
    return Matrix([[rng.choice(makers)(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)], "smax")


def random_ext(rng: random.Random, n: int, lo=-3, hi=3, ghosts=True) -> Matrix:
    makers = (real, ghost) if ghosts else (real,)
    return Matrix([[rng.choice(makers)(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)], "te")


@pytest.fixture
def rng():
    return random.Random(20240611)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
