"""Exception hierarchy shared by every module of the package."""


class SeminfError(Exception):
    """Base class for all errors raised by seminf."""


class AlgebraError(SeminfError):
    pass


class BadIndex(AlgebraError):
    pass


class DuplicateName(AlgebraError):
    pass


class NonAssociative(AlgebraError):
    def __init__(self, a: int, b: int, c: int, names=None):
        self.triple = (a, b, c)
        label = [names[i] for i in self.triple] if names else list(self.triple)
        super().__init__("multiplication is not associative at ({}, {}, {})".format(*label))


class NoInverse(AlgebraError):
    def __init__(self, a: int, name=None):
        self.element = a
        super().__init__(f"element {name if name is not None else a} has no inverse")


class NonUniqueInverse(AlgebraError):
    def __init__(self, a: int, y1: int, y2: int, names=None):
        self.element, self.inverses = a, (y1, y2)
        label = [names[i] for i in (a, y1, y2)] if names else [a, y1, y2]
        super().__init__("element {} has several inverses, e.g. {} and {}".format(*label))


class NotAperiodic(AlgebraError):
    pass


class ExponentTooSmall(AlgebraError):
    pass


class SignatureMismatch(SeminfError):
    pass


class MissingVariable(SeminfError):
    pass


class DimensionMismatch(SeminfError):
    pass


class ClosureBudgetExceeded(SeminfError):
    pass


class BudgetExceeded(SeminfError):
    pass


class FormatError(SeminfError):
    """Malformed algebra text file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class ParseError(SeminfError):
    """Malformed term or identity text.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` the set of token kinds that would have been accepted there.
    """

    def __init__(self, text: str, offset: int, expected: frozenset[str], found: str):
        self.text = text
        self.offset = offset
        self.expected = expected
        self.found = found
        want = ", ".join(sorted(expected))
        super().__init__(f"at byte {offset}: expected one of {{{want}}}, found {found}")
