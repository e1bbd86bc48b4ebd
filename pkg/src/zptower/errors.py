"""Exception hierarchy shared by all modules."""


class ZpTowerError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class InputError(ZpTowerError):
    """Malformed user input (CLI exit code 2)."""

    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer


class SpecMismatch(ZpTowerError):
    pass


class PrecisionMismatch(ZpTowerError):
    pass


class DivisionByZero(ZpTowerError, ZeroDivisionError):
    pass


class NotIrreducible(InputError):
    pass


class PrecisionExhausted(ZpTowerError):
    pass


class NotAUnit(ZpTowerError):
    pass


class NotAPthPower(ZpTowerError):
    pass


class LengthMismatch(ZpTowerError):
    pass


class WrongCharacteristic(ZpTowerError):
    pass


class NotDivisible(ZpTowerError):
    pass


class NotInBaseField(ZpTowerError, AssertionError):
    pass


class OracleTooLarge(ZpTowerError):
    pass


class PoleAtPoint(ZpTowerError):
    pass


class UnsupportedDenominator(ZpTowerError):
    pass


class WindowTooSmall(ZpTowerError):
    pass


class BoundTooSmall(ZpTowerError):
    pass


class EmptyProfile(ZpTowerError):
    pass


class NotNormalized(ZpTowerError):
    pass


class ConstantTower(ZpTowerError):
    pass


class NonIntegralGenus(ZpTowerError):
    pass


class HorizonTooSmall(ZpTowerError):
    pass


class BadDegree(ZpTowerError):
    pass
