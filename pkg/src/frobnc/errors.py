"""Exception hierarchy shared by every module of the package."""


class FrobError(Exception):
    """Base class for all errors raised by frobnc."""


# finite fields
class FieldError(FrobError, ValueError):
    pass


class NonPrimeCharacteristic(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class FieldTooLarge(FieldError):
    pass


class FieldMismatch(FieldError, TypeError):
    pass


class NotASquareField(FieldError):
    pass


class IncompatibleFields(FieldError):
    pass


class DivisionByZero(FrobError, ZeroDivisionError):
    pass


# polynomials
class PolyError(FrobError, ValueError):
    pass


class PolySyntaxError(PolyError):
    """Malformed polynomial text; ``pos`` is the 0-based offset in the input."""

    def __init__(self, message, pos=None, line=None):
        self.pos = pos
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if pos is not None:
            where.append(f"column {pos + 1}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class NotHomogeneous(PolyError):
    pass


class UnknownVariable(PolyError):
    pass


class CoefficientNotInField(PolyError):
    pass


class IndexOutOfRange(PolyError, IndexError):
    pass


class LengthMismatch(PolyError):
    pass


class DimensionMismatch(PolyError):
    pass


class ZeroDivisor(PolyError, ZeroDivisionError):
    pass


class ZeroForm(PolyError):
    pass


class BothZero(PolyError):
    pass


# projective geometry
class GeometryError(FrobError, ValueError):
    pass


class SingularPoint(GeometryError):
    pass


class PointNotOnHypersurface(GeometryError):
    pass


class EqualPoints(GeometryError):
    pass


# Frobenius computations
class DegreeOverflow(FrobError, OverflowError):
    pass


class ZeroPolynomial(PolyError):
    pass


class DegreeMismatch(PolyError):
    pass


class CharacteristicTwo(FrobError, ValueError):
    pass


class NotHermitian(FrobError, ValueError):
    pass


class ZeroMatrix(FrobError, ValueError):
    pass


class NotASquare(FrobError, ValueError):
    pass


# families
class FamilyError(FrobError, ValueError):
    pass


class NotSkew(FamilyError):
    pass


class Degenerate(FamilyError):
    pass


class OddSize(FamilyError):
    pass


class NotHermitianMatrix(FamilyError):
    pass


class WrongCharacteristic(FamilyError):
    pass


class OddN(FamilyError):
    pass


class BadG(FamilyError):
    pass


class NotABasis(FamilyError):
    pass


class BadDimension(FamilyError):
    pass


class VerificationFailure(FrobError, AssertionError):
    """A property asserted for a construction failed when checked."""


# analysis
class UncertifiableCase(FrobError, ValueError):
    pass


class DegenerateMatrixConstruction(FrobError, ArithmeticError):
    pass


class LineContained(GeometryError):
    pass


class NotAPlaneCurve(GeometryError):
    pass


class InvalidParameters(FrobError, ValueError):
    pass


class BudgetExceeded(FrobError, RuntimeError):
    pass


class UnknownSuite(FrobError, KeyError):
    pass
