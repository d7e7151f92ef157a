"""Exception hierarchy shared by every module of the package."""


class GaloisPointError(Exception):
    """Base class for all errors raised by galoispoints."""


# exact fields
class DivisionByZero(GaloisPointError, ZeroDivisionError):
    pass


class DescriptorMismatch(GaloisPointError, ValueError):
    pass


class InfiniteField(GaloisPointError, ValueError):
    pass


# polynomials
class ZeroDenominator(GaloisPointError, ZeroDivisionError):
    pass


class ConstantFunction(GaloisPointError, ValueError):
    pass


# group actions
class CapExceeded(GaloisPointError, RuntimeError):
    pass


# criterion
class UnsupportedGenus(GaloisPointError, ValueError):
    pass


# embedding
class NoGeneratorFound(GaloisPointError, RuntimeError):
    pass


class NonFreeOrbit(GaloisPointError, ValueError):
    pass


class PoleMismatch(GaloisPointError, RuntimeError):
    pass


class BasePointFound(GaloisPointError, RuntimeError):
    pass


class DegreeMismatch(GaloisPointError, RuntimeError):
    pass


# elliptic
class BadCharacteristic(GaloisPointError, ValueError):
    pass


class InconsistentRamification(GaloisPointError, ValueError):
    pass


class HypothesisViolated(GaloisPointError, ValueError):
    pass


class DegenerateQ(GaloisPointError, RuntimeError):
    pass


class FitFailed(GaloisPointError, RuntimeError):
    pass


class PoleVerificationFailed(GaloisPointError, RuntimeError):
    pass


# harness
class ConfigError(GaloisPointError, ValueError):
    pass
