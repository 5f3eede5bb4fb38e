"""Exception hierarchy.

Every error raised for bad input derives from :class:`ValidationError`, which
the CLI maps to exit code 1. :class:`CorruptProvenance` signals an internal bug
and is deliberately kept outside that branch.
"""


class CdsAlignError(Exception):
    """Base class for all package errors."""


class ValidationError(CdsAlignError):
    """Input data violates a documented precondition."""


class EmptySequence(ValidationError):
    def __init__(self, record=None):
        self.record = record
        where = f" in record {record!r}" if record else ""
        super().__init__(f"empty sequence{where}")


class LengthNotMultipleOfThree(ValidationError):
    def __init__(self, n, record=None):
        self.n = n
        self.record = record
        where = f" (record {record!r})" if record else ""
        super().__init__(f"sequence length {n} is not a multiple of 3{where}")


class InvalidSymbol(ValidationError):
    def __init__(self, position, char, record=None):
        self.position = position
        self.char = char
        self.record = record
        where = f" in record {record!r}" if record else ""
        super().__init__(f"invalid symbol {char!r} at position {position}{where}")


class RowMismatch(ValidationError):
    """Alignment rows do not strip to the sequences they claim to align."""


class InvalidAlignment(ValidationError):
    """Rows of unequal length, foreign symbols or an all-gap column."""


class UndefinedCell(CdsAlignError):
    """A lookahead table cell whose window runs past a sequence end."""

    def __init__(self, i, j):
        self.i, self.j = i, j
        super().__init__(f"D_F({i},{j}) is undefined")


class CorruptProvenance(CdsAlignError):
    """Traceback could not walk back to the origin. Indicates a bug."""


class BudgetExceeded(ValidationError):
    def __init__(self, total, cap):
        self.total, self.cap = total, cap
        super().__init__(f"n + m = {total} exceeds the enumeration budget of {cap}")


class InputError(ValidationError):
    """A file could not be read."""

    def __init__(self, path, reason):
        self.path = path
        super().__init__(f"{path}: {reason}")


class EmptyInput(ValidationError):
    def __init__(self, path):
        self.path = path
        super().__init__(f"{path}: no FASTA records found")


class ParseError(ValidationError):
    def __init__(self, line, reason):
        self.line = line
        super().__init__(f"line {line}: {reason}")


class AsymmetricMatrix(ValidationError):
    def __init__(self, sym1, sym2):
        self.sym1, self.sym2 = sym1, sym2
        super().__init__(f"matrix is not symmetric at ({sym1}, {sym2})")


class MissingStopRow(ValidationError):
    def __init__(self):
        super().__init__("substitution matrix has no '*' row; stop codons cannot be scored")
