"""
Excepciones del laboratorio.

Cada error lleva un `code` estable (aparece en los reportes JSON) y un
`exit_code` que usa la CLI, igual que los exception handlers de la API
traducian excepciones a status HTTP.
"""
from fractions import Fraction
from typing import Optional


class VallabError(Exception):
    """Base de todos los errores del laboratorio"""
    code = "error"
    exit_code = 1

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code

    def to_dict(self) -> dict:
        return {"error": self.code, "message": self.message}


class InfiniteIndex(VallabError):
    code = "infinite-index"


class NoRootInField(VallabError):
    """The requested root does not exist in F_{p^m}; raise m in the config."""
    code = "no-root-in-field"


class IndeterminateValuation(VallabError):
    code = "indeterminate-valuation"


class GroupMismatch(VallabError):
    code = "group-mismatch"


class SupportNotDivisible(VallabError):
    code = "support-not-divisible"

    def __init__(self, exponent: Fraction):
        from vallab.utils import format_exp
        super().__init__(f"exponent {format_exp(exponent)} is not divisible by p in the group")
        self.exponent = exponent


class DuplicateSlopes(VallabError):
    code = "duplicate-slopes"


class Inconclusive(VallabError):
    code = "inconclusive"
    exit_code = 3

    def __init__(self, message: str = "", budget: Optional[int] = None):
        super().__init__(message)
        self.budget = budget


class ZeroFunction(VallabError):
    code = "zero-function"
    exit_code = 2


class InsufficientDegreeCap(VallabError):
    code = "insufficient-degree-cap"

    def __init__(self, needed_degree: int):
        super().__init__(f"degree cap too small, need at least {needed_degree}")
        self.needed_degree = needed_degree


class NonSimpleResidueRoot(VallabError):
    code = "non-simple-residue-root"


class NoResidueRoot(VallabError):
    code = "no-residue-root"


class PrecisionTooLow(VallabError):
    code = "precision-too-low"


class ReduciblePolynomial(VallabError):
    code = "reducible-polynomial"


class FrameMismatch(VallabError):
    code = "frame-mismatch"


class DegenerateZero(VallabError):
    code = "degenerate-zero"


class ParseError(VallabError):
    code = "parse-error"
    exit_code = 2

    def __init__(self, message: str, token: int, position: int):
        super().__init__(f"{message} at token {token} (column {position})")
        self.token = token
        self.position = position


class ConfigError(VallabError):
    code = "config-error"
    exit_code = 2
