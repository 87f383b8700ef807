"""Exception taxonomy shared by the library and the CLI.

Every error carries a stable ``code`` string (used in machine-readable CLI
output) and an ``exit_code`` for the command-line front end.
"""


class DnqError(Exception):
    code = "Error"
    exit_code = 6


# --- ring construction / input validation -------------------------------

class InvalidRadicand(DnqError):
    code = "InvalidRadicand"
    exit_code = 2


class NotSquareFree(InvalidRadicand):
    code = "NotSquareFree"


class WrongResidue(InvalidRadicand):
    code = "WrongResidue"


class PerfectSquare(InvalidRadicand):
    code = "PerfectSquare"


class BadInput(DnqError):
    code = "BadInput"
    exit_code = 2


class ZeroN(DnqError):
    code = "ZeroN"
    exit_code = 2


# --- ring arithmetic ------------------------------------------------------

class NotDivisible(DnqError):
    code = "NotDivisible"


class DivisionByZeroNorm(DnqError):
    code = "DivisionByZeroNorm"


class NotASquare(DnqError):
    code = "NotASquare"


class OutOfScopeNorm(DnqError):
    code = "OutOfScopeNorm"


class FormViolation(DnqError):
    """An element of norm +-1 or +-6 lacks its mandated residue form."""
    code = "FormViolation"


# --- Pell machinery -------------------------------------------------------

class BoundOverflow(DnqError):
    code = "BoundOverflowPolicy"
    exit_code = 3


class Unsolvable(DnqError):
    code = "Unsolvable"


class TheoremViolation(DnqError):
    code = "TheoremViolation"


class HypothesisFailed(DnqError):
    """The ring lacks a norm -1 or a norm 6 element."""
    code = "HypothesisFailed"


# --- quadruple construction ----------------------------------------------

class SClassNoQuadruple(DnqError):
    code = "SClassNoQuadruple"
    exit_code = 4


class UncoveredClass(DnqError):
    code = "UncoveredClass"
    exit_code = 5


class MissingAux(DnqError):
    code = "MissingAux"


class ParityFailure(DnqError):
    code = "ParityFailure"


class Degenerate(DnqError):
    code = "Degenerate"


class VerificationFailure(DnqError):
    code = "VerificationFailure"


class NonIntegralFormula(DnqError):
    code = "NonIntegralFormula"


class RetriesExhausted(DnqError):
    code = "RetriesExhausted"


class ZeroScalar(DnqError):
    code = "ZeroScalar"


# --- counterexamples ------------------------------------------------------

class NotAWitness(DnqError):
    code = "NotAWitness"
