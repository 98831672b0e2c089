"""Exact scalars for the max-plus semiring and its enrichments.

Every finite value is a :class:`fractions.Fraction`; the bottom element of
R_max is the float ``-inf`` (it never takes part in rounding arithmetic, it
only compares and absorbs).  Semiring operations are spelled with Python
operators on the wrapper classes: ``+`` is the semiring addition, ``*`` the
semiring product and unary ``-`` the symmetry, whenever one exists.

Types provided:

MaxPlus
    element of R_max.
Sym
    element of the symmetrized semiring S_max, stored in canonical class form
    (zero, sign-positive, sign-negative, balanced).
Ext
    element of the extended tropical semiring T_e (zero, real, ghost).
Nq
    the truncated naturals N_q.
Couple
    a pair of R_max values, the semiring with symmetry R_max^2.
ExtensionScalar
    the generic construction S R_max over a zero-sum free coefficient
    semiring without zero divisors.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Any, Union

from .errors import ParseError, SemiringMismatch

NEG_INF = float("-inf")

Value = Union[Fraction, float]  # a Fraction, or NEG_INF


def exact(x: Any) -> Value:
    """Coerce ``x`` into an exact finite rational or ``NEG_INF``.

    Floats are only accepted when they are ``-inf``; finite floats would
    smuggle rounding into balance decisions.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if x == NEG_INF:
            return NEG_INF
        raise TypeError(f"finite float {x!r} is not exact; use Fraction or str")
    if isinstance(x, str):
        return parse_value(x)
    if isinstance(x, MaxPlus):
        return x.value
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def parse_value(token: str) -> Value:
    t = token.strip()
    if t in ("-inf", "-oo", "−∞"):
        return NEG_INF
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational token {token!r}") from None


def format_value(v: Value) -> str:
    if v == NEG_INF:
        return "-inf"
    return str(v)


def _vadd(a: Value, b: Value) -> Value:
    # tropical product of two values
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


# ---------------------------------------------------------------------------
# R_max


@total_ordering
@dataclass(frozen=True, slots=True)
class MaxPlus:
    value: Value

    def __post_init__(self):
        object.__setattr__(self, "value", exact(self.value))

    @classmethod
    def zero(cls) -> "MaxPlus":
        return _MP_ZERO

    @classmethod
    def one(cls) -> "MaxPlus":
        return _MP_ONE

    def __add__(self, other: "MaxPlus") -> "MaxPlus":
        return self if self.value >= other.value else other

    def __mul__(self, other: "MaxPlus") -> "MaxPlus":
        return MaxPlus(_vadd(self.value, other.value))

    def __lt__(self, other: "MaxPlus") -> bool:
        return self.value < other.value

    def inverse(self) -> "MaxPlus":
        if self.is_zero:
            raise ZeroDivisionError("bottom element is not invertible")
        return MaxPlus(-self.value)

    @property
    def is_zero(self) -> bool:
        return self.value == NEG_INF

    @property
    def modulus(self) -> Value:
        return self.value

    def __str__(self):
        return format_value(self.value)

    def __repr__(self):
        return f"MaxPlus({format_value(self.value)})"


_MP_ZERO = MaxPlus(NEG_INF)
_MP_ONE = MaxPlus(0)


# ---------------------------------------------------------------------------
# S_max


class Sign(enum.Enum):
    ZERO = "zero"
    POS = "pos"
    NEG = "neg"
    BAL = "bal"


@dataclass(frozen=True, slots=True)
class Sym:
    """Element of S_max in canonical form.

    ``Sym(Sign.ZERO, -inf)`` is the zero; the other kinds carry a finite
    modulus.  Use :func:`pos`, :func:`neg`, :func:`bal` to build values.
    """

    kind: Sign
    mod: Value

    def __post_init__(self):
        mod = exact(self.mod)
        object.__setattr__(self, "mod", mod)
        if (self.kind is Sign.ZERO) != (mod == NEG_INF):
            raise ValueError(f"inconsistent S_max element {self.kind} {mod}")

    @classmethod
    def zero(cls) -> "Sym":
        return _SYM_ZERO

    @classmethod
    def one(cls) -> "Sym":
        return _SYM_ONE

    def __add__(self, other: "Sym") -> "Sym":
        if self.mod > other.mod:
            return self
        if self.mod < other.mod:
            return other
        if self.kind is other.kind:
            return self
        if self.kind is Sign.ZERO:
            return other
        if other.kind is Sign.ZERO:
            return self
        return Sym(Sign.BAL, self.mod)

    def __mul__(self, other: "Sym") -> "Sym":
        if self.kind is Sign.ZERO or other.kind is Sign.ZERO:
            return _SYM_ZERO
        mod = self.mod + other.mod
        if self.kind is Sign.BAL or other.kind is Sign.BAL:
            return Sym(Sign.BAL, mod)
        kind = Sign.POS if self.kind is other.kind else Sign.NEG
        return Sym(kind, mod)

    def __neg__(self) -> "Sym":
        if self.kind is Sign.POS:
            return Sym(Sign.NEG, self.mod)
        if self.kind is Sign.NEG:
            return Sym(Sign.POS, self.mod)
        return self

    def __sub__(self, other: "Sym") -> "Sym":
        return self + (-other)

    def circ(self) -> "Sym":
        """``a° = a ⊖ a``."""
        return self - self

    def inverse(self) -> "Sym":
        if not self.is_signed or self.is_zero:
            raise ZeroDivisionError(f"{self} is not invertible in S_max")
        return Sym(self.kind, -self.mod)

    @property
    def is_zero(self) -> bool:
        return self.kind is Sign.ZERO

    @property
    def is_signed(self) -> bool:
        return self.kind is not Sign.BAL

    @property
    def is_balanced(self) -> bool:
        return self.kind in (Sign.BAL, Sign.ZERO)

    @property
    def modulus(self) -> Value:
        return self.mod

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Sym({format_scalar(self)})"


def pos(t) -> Sym:
    t = exact(t)
    return _SYM_ZERO if t == NEG_INF else Sym(Sign.POS, t)


def neg(t) -> Sym:
    t = exact(t)
    return _SYM_ZERO if t == NEG_INF else Sym(Sign.NEG, t)


def bal(t) -> Sym:
    t = exact(t)
    return _SYM_ZERO if t == NEG_INF else Sym(Sign.BAL, t)


_SYM_ZERO = Sym(Sign.ZERO, NEG_INF)
_SYM_ONE = Sym(Sign.POS, 0)


def sym_arith(op: str, a: Sym, b: Sym | None = None) -> Sym:
    if op == "neg":
        if b is not None:
            raise ValueError("neg takes a single operand")
        return -a
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown S_max operation {op!r}")


# a ⪰° b  <=>  a = b ⊕ c for some balanced c.  Rows: kind of a, columns: kind
# of b.  Entries say which modulus comparison makes the relation hold
# ("eq": a == b structurally, "ge": |a| >= |b|, None: never).
_CIRC_TABLE = {
    (Sign.ZERO, Sign.ZERO): "eq",
    (Sign.ZERO, Sign.POS): None,
    (Sign.ZERO, Sign.NEG): None,
    (Sign.ZERO, Sign.BAL): None,
    (Sign.POS, Sign.ZERO): None,
    (Sign.POS, Sign.POS): "eq",
    (Sign.POS, Sign.NEG): None,
    (Sign.POS, Sign.BAL): None,
    (Sign.NEG, Sign.ZERO): None,
    (Sign.NEG, Sign.POS): None,
    (Sign.NEG, Sign.NEG): "eq",
    (Sign.NEG, Sign.BAL): None,
    (Sign.BAL, Sign.ZERO): "ge",
    (Sign.BAL, Sign.POS): "ge",
    (Sign.BAL, Sign.NEG): "ge",
    (Sign.BAL, Sign.BAL): "ge",
}


def circ_geq(a: Sym, b: Sym) -> bool:
    rule = _CIRC_TABLE[(a.kind, b.kind)]
    if rule == "eq":
        return a.mod == b.mod
    if rule == "ge":
        return a.mod >= b.mod
    return False


# ---------------------------------------------------------------------------
# T_e


@dataclass(frozen=True, slots=True)
class Ext:
    """Element of T_e = N_2 R_max: multiplicity 0 (zero), 1 (real), 2 (ghost)."""

    mult: int
    mod: Value

    def __post_init__(self):
        mod = exact(self.mod)
        object.__setattr__(self, "mod", mod)
        if self.mult not in (0, 1, 2) or (self.mult == 0) != (mod == NEG_INF):
            raise ValueError(f"inconsistent T_e element {self.mult} {mod}")

    @classmethod
    def zero(cls) -> "Ext":
        return _EXT_ZERO

    @classmethod
    def one(cls) -> "Ext":
        return _EXT_ONE

    def __add__(self, other: "Ext") -> "Ext":
        if self.mod > other.mod:
            return self
        if self.mod < other.mod:
            return other
        if self.mult == 0:
            return other
        return Ext(min(2, self.mult + other.mult), self.mod)

    def __mul__(self, other: "Ext") -> "Ext":
        if self.mult == 0 or other.mult == 0:
            return _EXT_ZERO
        return Ext(min(2, self.mult * other.mult), self.mod + other.mod)

    def __neg__(self) -> "Ext":
        # the symmetry of T_e is the identity
        return self

    def __sub__(self, other: "Ext") -> "Ext":
        return self + other

    def circ(self) -> "Ext":
        return self + self

    def inverse(self) -> "Ext":
        if self.mult != 1:
            raise ZeroDivisionError(f"{self} is not invertible in T_e")
        return Ext(1, -self.mod)

    @property
    def is_zero(self) -> bool:
        return self.mult == 0

    @property
    def is_real(self) -> bool:
        return self.mult != 2

    @property
    def is_signed(self) -> bool:
        return self.is_real

    @property
    def is_balanced(self) -> bool:
        return self.mult != 1

    @property
    def modulus(self) -> Value:
        return self.mod

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Ext({format_scalar(self)})"


def real(a) -> Ext:
    a = exact(a)
    return _EXT_ZERO if a == NEG_INF else Ext(1, a)


def ghost(a) -> Ext:
    a = exact(a)
    return _EXT_ZERO if a == NEG_INF else Ext(2, a)


_EXT_ZERO = Ext(0, NEG_INF)
_EXT_ONE = Ext(1, 0)


def ext_arith(op: str, a: Ext, b: Ext) -> Ext:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown T_e operation {op!r}")


def iota(x) -> Ext:
    """The injection R_max -> T_e (not a morphism)."""
    return real(x.value if isinstance(x, MaxPlus) else x)


# ---------------------------------------------------------------------------
# relations shared by S_max and T_e


def balance(a, b) -> bool:
    """``a ∇ b``: ``a ⊖ b`` is balanced (for T_e the symmetry is the identity)."""
    if isinstance(a, Couple) and isinstance(b, Couple):
        return (a.pos + b.neg) == (a.neg + b.pos)
    if type(a) is not type(b):
        raise SemiringMismatch(f"cannot balance {type(a).__name__} with {type(b).__name__}")
    if isinstance(a, (Sym, Ext)):
        return (a - b).is_balanced
    raise SemiringMismatch(f"{type(a).__name__} has no symmetry")


def sign_modulus(a) -> tuple[str, MaxPlus]:
    if isinstance(a, Sym):
        return a.kind.value, MaxPlus(a.mod)
    if isinstance(a, Ext):
        return ("zero", "pos", "bal")[a.mult], MaxPlus(a.mod)
    raise SemiringMismatch(f"sign is undefined for {type(a).__name__}")


# ---------------------------------------------------------------------------
# N_q


@dataclass(frozen=True, slots=True)
class Nq:
    value: int
    q: int = 2

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        if self.value < 0:
            raise ValueError("N_q holds nonnegative integers")
        object.__setattr__(self, "value", min(self.value, self.q))

    def __add__(self, other: "Nq") -> "Nq":
        self._check(other)
        return Nq(self.value + other.value, self.q)

    def __mul__(self, other: "Nq") -> "Nq":
        self._check(other)
        return Nq(self.value * other.value, self.q)

    def _check(self, other):
        if self.q != other.q:
            raise SemiringMismatch(f"N_{self.q} vs N_{other.q}")

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self):
        return str(self.value)


# ---------------------------------------------------------------------------
# couples R_max^2


@dataclass(frozen=True, slots=True)
class Couple:
    pos: MaxPlus
    neg: MaxPlus

    def __post_init__(self):
        for name in ("pos", "neg"):
            v = getattr(self, name)
            if not isinstance(v, MaxPlus):
                object.__setattr__(self, name, MaxPlus(v))

    @classmethod
    def zero(cls) -> "Couple":
        return cls(MaxPlus.zero(), MaxPlus.zero())

    @classmethod
    def one(cls) -> "Couple":
        return cls(MaxPlus.one(), MaxPlus.zero())

    def __add__(self, other: "Couple") -> "Couple":
        return Couple(self.pos + other.pos, self.neg + other.neg)

    def __mul__(self, other: "Couple") -> "Couple":
        return Couple(
            self.pos * other.pos + self.neg * other.neg,
            self.pos * other.neg + self.neg * other.pos,
        )

    def __neg__(self) -> "Couple":
        return Couple(self.neg, self.pos)

    def __sub__(self, other: "Couple") -> "Couple":
        return self + (-other)

    @property
    def modulus(self) -> MaxPlus:
        return self.pos + self.neg

    @property
    def is_zero(self) -> bool:
        return self.pos.is_zero and self.neg.is_zero


def quotient_map(p: Couple) -> Sym:
    """Class of a couple in S_max = R_max^2 / R."""
    x, y = p.pos.value, p.neg.value
    if x > y:
        return pos(x)
    if y > x:
        return neg(y)
    return bal(x)  # bal(-inf) is the zero


# ---------------------------------------------------------------------------
# generic extension S R_max


@dataclass(frozen=True)
class CoefficientSemiring:
    """Description of the coefficient semiring of an extension of R_max."""

    name: str
    zero: Any
    one: Any
    zero_sum_free: bool = True
    zero_divisors: bool = False


BOOL_SYM = CoefficientSemiring("B^s", _SYM_ZERO, _SYM_ONE)
NATURALS_2 = CoefficientSemiring("N_2", Nq(0, 2), Nq(1, 2))
NATURALS = CoefficientSemiring("N", 0, 1)
INTEGERS = CoefficientSemiring("Z", 0, 1, zero_sum_free=False)


def _coeff_is_zero(c, base: CoefficientSemiring) -> bool:
    return c == base.zero


@dataclass(frozen=True)
class ExtensionScalar:
    """Element ``(coeff, height)`` of S R_max, or its zero ``(0, -inf)``."""

    coeff: Any
    height: Value
    base: CoefficientSemiring

    def __post_init__(self):
        h = exact(self.height)
        object.__setattr__(self, "height", h)
        if _coeff_is_zero(self.coeff, self.base) != (h == NEG_INF):
            raise ValueError("zero coefficient must come with height -inf and conversely")

    def __add__(self, other: "ExtensionScalar") -> "ExtensionScalar":
        self._check(other)
        if self.height > other.height:
            return self
        if self.height < other.height:
            return other
        return ExtensionScalar(self.coeff + other.coeff, self.height, self.base)

    def __mul__(self, other: "ExtensionScalar") -> "ExtensionScalar":
        self._check(other)
        if self.is_zero or other.is_zero:
            return ExtensionScalar(self.base.zero, NEG_INF, self.base)
        return ExtensionScalar(self.coeff * other.coeff, self.height + other.height, self.base)

    def __neg__(self) -> "ExtensionScalar":
        return ExtensionScalar(-self.coeff, self.height, self.base)

    def _check(self, other):
        if self.base != other.base:
            raise SemiringMismatch(f"{self.base.name} vs {other.base.name}")

    @property
    def is_zero(self) -> bool:
        return self.height == NEG_INF

    @property
    def modulus(self) -> Value:
        return self.height


class ExtensionSemiring:
    """Factory for the elements of S R_max.

    Refuses coefficient semirings that have zero sums or zero divisors, since
    the construction is then not closed.
    """

    def __init__(self, base: CoefficientSemiring):
        if not base.zero_sum_free or base.zero_divisors:
            raise ValueError(
                f"{base.name} must be zero-sum free without zero divisors to extend R_max"
            )
        self.base = base

    def __call__(self, coeff, height) -> ExtensionScalar:
        return ExtensionScalar(coeff, height, self.base)

    @property
    def zero(self) -> ExtensionScalar:
        return ExtensionScalar(self.base.zero, NEG_INF, self.base)

    @property
    def one(self) -> ExtensionScalar:
        return ExtensionScalar(self.base.one, 0, self.base)


def extension_arith(op: str, a: ExtensionScalar, b: ExtensionScalar) -> ExtensionScalar:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def bs_to_sym(x: ExtensionScalar) -> Sym:
    """Isomorphism B^s R_max -> S_max."""
    if x.is_zero:
        return _SYM_ZERO
    return Sym(x.coeff.kind, x.height)


def sym_to_bs(x: Sym) -> ExtensionScalar:
    if x.is_zero:
        return ExtensionScalar(_SYM_ZERO, NEG_INF, BOOL_SYM)
    return ExtensionScalar(Sym(x.kind, 0), x.mod, BOOL_SYM)


def n2_to_ext(x: ExtensionScalar) -> Ext:
    if x.is_zero:
        return _EXT_ZERO
    return Ext(x.coeff.value, x.height)


def ext_to_n2(x: Ext) -> ExtensionScalar:
    if x.is_zero:
        return ExtensionScalar(NATURALS_2.zero, NEG_INF, NATURALS_2)
    return ExtensionScalar(Nq(x.mult, 2), x.mod, NATURALS_2)


# ---------------------------------------------------------------------------
# text tokens

SEMIRINGS = ("rmax", "smax", "te")

SCALAR_TYPES = {"rmax": MaxPlus, "smax": Sym, "te": Ext}


def semiring_of(x) -> str:
    for tag, cls in SCALAR_TYPES.items():
        if isinstance(x, cls):
            return tag
    raise SemiringMismatch(f"{type(x).__name__} is not a matrix scalar")


def format_scalar(x) -> str:
    if isinstance(x, MaxPlus):
        return format_value(x.value)
    if isinstance(x, Sym):
        if x.kind is Sign.ZERO:
            return "-inf"
        if x.kind is Sign.BAL:
            return f"{x.mod}*"
        return ("+" if x.kind is Sign.POS else "-") + str(x.mod)
    if isinstance(x, Ext):
        if x.mult == 0:
            return "-inf"
        return str(x.mod) + ("v" if x.mult == 2 else "")
    raise TypeError(f"no token format for {type(x).__name__}")


def parse_scalar(token: str, semiring: str = "rmax"):
    """Parse one token under the grammar of ``semiring``.

    rmax: ``-inf``, ``3/2``; smax: ``-inf``, ``+3/2``, ``-3/2`` (sign-negative
    of modulus 3/2), ``3/2*``; te: ``-inf``, ``3/2``, ``3/2v``.
    """
    t = token.strip()
    if not t:
        raise ParseError("empty token")
    if semiring == "rmax":
        if t.endswith("*") or t.endswith("v") or (t[0] == "+" and t != "+inf"):
            raise SemiringMismatch(f"token {token!r} is not an R_max value")
        return MaxPlus(parse_value(t))
    if semiring == "smax":
        if t == "-inf":
            return _SYM_ZERO
        if t.endswith("v"):
            raise SemiringMismatch(f"token {token!r} is a T_e ghost, not an S_max value")
        if t.endswith("*"):
            return bal(_finite(t[:-1], token))
        if t[0] == "+":
            return pos(_finite(t[1:], token))
        if t[0] == "-":
            return neg(_finite(t[1:], token))
        raise SemiringMismatch(f"S_max token {token!r} needs a sign prefix or a * suffix")
    if semiring == "te":
        if t.endswith("*") or t[0] == "+":
            raise SemiringMismatch(f"token {token!r} is not a T_e value")
        if t == "-inf":
            return _EXT_ZERO
        if t.endswith("v"):
            return ghost(_finite(t[:-1], token))
        return real(_finite(t, token))
    raise SemiringMismatch(f"unknown semiring tag {semiring!r}")


def _finite(body: str, token: str) -> Fraction:
    v = parse_value(body)
    if v == NEG_INF:
        raise ParseError(f"token {token!r} needs a finite modulus")
    return v


def zero_of(semiring: str):
    return SCALAR_TYPES[semiring].zero()


def one_of(semiring: str):
    return SCALAR_TYPES[semiring].one()
