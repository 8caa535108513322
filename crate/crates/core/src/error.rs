use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown ring descriptor `{0}` (expected Z | Q | Z/<m> | F_<p> | Q(zeta_<n>))")]
    UnknownRing(String),

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(String),

    #[error("cyclotomic order must be at least 1")]
    BadCyclotomicOrder,

    #[error("element does not belong to ring {0}")]
    RingMismatch(String),

    #[error("division by zero / inversion of a non-unit")]
    NotInvertible,

    #[error("operation requires a field, got {0}")]
    NotAField(String),

    #[error("unsupported ring/mode combination: {0}")]
    UnsupportedMode(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("consecutive differentials do not compose to zero at degree {degree}")]
    CompositionNotZero { degree: usize },

    #[error("hyperplane {0} is degenerate (zero normal)")]
    ZeroNormal(usize),

    #[error("hyperplanes {0} and {1} define the same set")]
    DuplicateHyperplane(usize, usize),

    #[error("arrangement is not essential")]
    NotEssential,

    #[error("chamber is bounded; no span at infinity")]
    BoundedChamber,

    #[error("flipped sign vector is not realizable: {0}")]
    UnrealizableOpposite(String),

    #[error("flag construction retry budget exhausted at level {level} (seed {seed})")]
    FlagRetryExhausted { level: usize, seed: u64 },

    #[error("flag is invalid: {0}")]
    InvalidFlag(String),

    #[error("degree computation unsupported for k = {0} (only k <= 2)")]
    DegreeUnsupported(usize),

    #[error("degenerate polytope in degree engine: {0}")]
    DegeneratePolytope(String),

    #[error("matroid localization too large ({0} > 16 elements)")]
    MatroidTooLarge(usize),

    #[error("dense-edge algorithms disagree: {0}")]
    DenseEdgeMismatch(String),

    #[error("point lies on a hyperplane or the clipping box boundary")]
    PointOnHyperplane,

    #[error("vanishing certificate refused at level {level}: non-unit diagonal {witness}")]
    CertificateRefused { level: usize, witness: String },

    #[error("half monodromies must be nonzero")]
    ZeroMonodromy,

    #[error("{0}")]
    Internal(String),
}
