"""Catalogue of named example matrices.

Files live in the package's ``fixtures/`` directory (override with the
``TROPICA_FIXTURES`` environment variable).  Families indexed by a size
(``D`` and ``mrw``) are generated when no file exists for that size.
"""
from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from .errors import UnknownFixture
from .matrices import Matrix
from .textio import parse_matrix_text

NEG = float("-inf")

# (name, file stem) pairs shipped with the package
CATALOGUE = {
    "X": "X",
    "Y": "Y",
    "F": "F",
    "G": "G",
    "sum_A": "sum_A",
    "sum_B": "sum_B",
    "product_A": "product_A",
    "product_B": "product_B",
    "union_A": "union_A",
    "union_B": "union_B",
    "gm_vectors": "gm_vectors",
    "trop_vs_gm": "trop_vs_gm",
}
FAMILIES = ("D", "mrw")


def fixture_dir() -> Path:
    override = os.environ.get("TROPICA_FIXTURES")
    if override:
        return Path(override)
    return Path(str(resources.files("tropica") / "fixtures"))


def d_matrix(n: int) -> Matrix:
    """-1 on the diagonal, 0 elsewhere."""
    return Matrix([[-1 if i == j else 0 for j in range(n)] for i in range(n)])


def mrw_matrix(n: int, xs=None) -> Matrix:
    """Rows e1, e2, e3 followed by ``[x_i, 0, -x_i]``; ``x_i = i`` by default."""
    xs = list(range(1, n + 1)) if xs is None else list(xs)
    rows = [[0, NEG, NEG], [NEG, 0, NEG], [NEG, NEG, 0]]
    rows += [[x, 0, -x] for x in xs]
    return Matrix(rows)


def g_matrix(F: Matrix) -> Matrix:
    """Block diagonal ``[[F, -inf], [-inf, F^t]]``."""
    m, n = F.shape
    top = [list(F.row(i)) + [NEG] * m for i in range(m)]
    bottom = [[NEG] * n + list(F.T.row(j)) for j in range(n)]
    return Matrix(top + bottom)


def names() -> list[str]:
    return sorted(CATALOGUE) + [f"{f}<n>" for f in FAMILIES]


def fixtures(name: str, n: int | None = None) -> Matrix:
    """Load a catalogue matrix; ``fixtures("D", n=3)`` and ``fixtures("D3")`` agree."""
    if n is None:
        for fam in FAMILIES:
            if name.startswith(fam) and name[len(fam) :].isdigit():
                name, n = fam, int(name[len(fam) :])
                break
    if name in FAMILIES:
        if n is None or n < 1:
            raise UnknownFixture(f"fixture family {name!r} needs a size")
        stem = f"{name}{n}"
    elif name in CATALOGUE:
        stem = CATALOGUE[name]
    else:
        raise UnknownFixture(f"no fixture named {name!r}; known: {', '.join(names())}")
    path = fixture_dir() / f"{stem}.mat"
    if path.exists():
        return parse_matrix_text(path.read_text(), "rmax")
    if name == "D":
        return d_matrix(n)
    if name == "mrw":
        return mrw_matrix(n)
    raise UnknownFixture(f"fixture file {path} is missing")
