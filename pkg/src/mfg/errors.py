"""Exception hierarchy.

Every error carries a machine-readable ``code`` so the CLI can report it
without string matching.
"""


class MFGError(Exception):
    code = "Error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)


class InputError(MFGError):
    """Malformed input (exit code 2 at the command line)."""


class ParseError(InputError):
    code = "ParseError"


class NonSquare(InputError):
    code = "NonSquare"


class NonBinaryEntry(InputError):
    code = "NonBinaryEntry"


class ZeroRowOrColumn(InputError):
    code = "ZeroRowOrColumn"


class ShiftMismatch(InputError):
    code = "ShiftMismatch"


class WordNotAdmissible(InputError):
    code = "WordNotAdmissible"


class Inadmissible(WordNotAdmissible):
    code = "Inadmissible"


class EmptyWordEntry(InputError):
    code = "EmptyWordEntry"


class DomainNotPartition(InputError):
    code = "DomainNotPartition"


class RangeNotPartition(InputError):
    code = "RangeNotPartition"


class SuffixMapNotIntoShift(InputError):
    code = "SuffixMapNotIntoShift"


class NotAPermutation(InputError):
    code = "NotAPermutation"


class ConditionIFailure(InputError):
    code = "ConditionIFailure"


class NotDiagonal(InputError):
    code = "NotDiagonal"


class NotUnimodular(InputError):
    code = "NotUnimodular"


class ValueOutsidePhaseGroup(InputError):
    code = "ValueOutsidePhaseGroup"


class NotANormalizer(MFGError):
    code = "NotANormalizer"


class NonScalarObstruction(NotANormalizer):
    code = "NonScalarObstruction"


class DepthExhausted(MFGError):
    code = "DepthExhausted"


class ValidationMismatch(MFGError):
    code = "ValidationMismatch"


class PatternStraddlesUnstably(MFGError):
    code = "PatternStraddlesUnstably"
