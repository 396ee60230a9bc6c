"""Exception hierarchy.  Every domain error derives from KmxError so the CLI
can map it to exit code 1."""


class KmxError(Exception):
    pass


# cartan
class GCMError(KmxError, ValueError):
    pass


class NotSquare(GCMError):
    pass


class DiagonalNotTwo(GCMError):
    pass


class PositiveOffDiagonal(GCMError):
    pass


class ZeroAsymmetry(GCMError):
    pass


class NotSymmetrizable(GCMError):
    pass


# rootdata
class DimensionMismatch(KmxError, ValueError):
    pass


class UnknownFamily(KmxError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown family"


class RankOutOfRange(KmxError, ValueError):
    pass


class Unsolvable(KmxError, ArithmeticError):
    pass


# chevalley / affine
class NotFiniteType(KmxError, ValueError):
    pass


class AlgebraMismatch(KmxError, ValueError):
    pass


class OrderMismatch(KmxError, ArithmeticError):
    pass


# weights
class VerificationFailed(KmxError, ArithmeticError):
    pass


class NotDominantIntegral(KmxError, ValueError):
    pass


# verma
class CutoffTooLarge(KmxError, ValueError):
    pass


class DepthOverflow(KmxError, RuntimeError):
    pass


# unitary
class NotInParabolic(KmxError, ValueError):
    pass


class MomentOutOfRange(KmxError, ValueError):
    pass
