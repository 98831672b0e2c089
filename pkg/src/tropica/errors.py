"""Exception hierarchy shared by every tropica module."""


class TropicaError(Exception):
    """Base class; the CLI maps these to exit code 1."""


class ParseError(TropicaError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SemiringMismatch(TropicaError):
    pass


class ShapeMismatch(TropicaError):
    pass


class DimensionMismatch(ShapeMismatch):
    pass


class SizeGuard(TropicaError):
    """An input exceeds the desk-scale limit of an exhaustive routine."""


class SearchGuard(SizeGuard):
    pass


class ZeroPermanent(TropicaError):
    pass


class SymmetryUnavailable(TropicaError):
    pass


class MonomialOverlap(TropicaError):
    def __init__(self, monomials):
        self.monomials = list(monomials)
        shown = ", ".join(str(m) for m in self.monomials[:5])
        super().__init__(f"Q+ and Q- share monomials: {shown}")


class NotAnIdentity(TropicaError):
    pass


class PreconditionUnmet(TropicaError):
    pass


class UnknownFixture(TropicaError):
    pass
