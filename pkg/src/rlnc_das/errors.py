"""Exception hierarchy shared by all rlnc_das modules."""


class RlncDasError(Exception):
    """Base class for all errors raised by this package."""


class NonPrimeModulus(RlncDasError):
    """The requested field modulus is composite or cannot be certified prime."""


class DimensionMismatch(RlncDasError):
    """Operands have incompatible lengths or shapes."""


class FieldMismatch(RlncDasError):
    """Operands belong to different fields."""


class SingularMatrix(RlncDasError):
    """A square system has no unique solution (rank below full)."""


class InsufficientRank(RlncDasError):
    """Decoder holds fewer independent samples than the target dimension."""

    def __init__(self, current_rank: int, needed: int):
        super().__init__(f"decoder rank {current_rank} < {needed}")
        self.current_rank = current_rank
        self.needed = needed


class InconsistentSamples(RlncDasError):
    """Accepted coded samples contradict each other (dishonest source)."""


class NonPowerOfTwoLength(RlncDasError):
    """Inner product argument requires power-of-two vector length."""


class MalformedProof(RlncDasError):
    """Proof bytes do not parse or disagree with the expected round count."""


class MalformedFile(RlncDasError):
    """A protocol artifact file has bad magic, version, type, or framing."""


class ConfigError(RlncDasError):
    """Invalid experiment or figure configuration."""


class DomainError(RlncDasError):
    """Numeric argument outside the domain of an analytic formula."""
