use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors raised by the geometric pipelines.
///
/// Each variant corresponds to a named failure of one operation; `name()`
/// returns the stable identifier printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor in field {field}: {detail}")]
    ZeroDivisor { field: String, detail: String },
    #[error("binary cubic has a multiple root")]
    MultipleRoot,
    #[error("claimed root does not annihilate the form")]
    NotARoot,
    #[error("points are collinear")]
    Collinear,
    #[error("planes are equal")]
    EqualPlanes,
    #[error("lines are equal")]
    EqualLines,
    #[error("points are not in general position: {0}")]
    DegeneratePoints(String),
    #[error("implicit equation is not unique (kernel dimension {0})")]
    NonUniqueImplicit(usize),
    #[error("surface has an Eckardt point or is singular: {0}")]
    EckardtOrSingular(String),
    #[error("lines of a tritangent trio are not coplanar")]
    NotCoplanar,
    #[error("no Cayley-Salmon decomposition for the pair")]
    NoDecomposition,
    #[error("no four of the six linear forms are independent")]
    DependentForms,
    #[error("constructed line does not lie on the surface")]
    LineNotOnSurface,
    #[error("the four cubics of the net parametrization are dependent")]
    DegenerateNets,
    #[error("common factor of the minors has degree {0}, expected 3")]
    UnexpectedFactorDegree(usize),
    #[error("no solution for the residual quadric")]
    NoSolution,
    #[error("quadric web has dimension {0}, expected 4")]
    WrongDimension(usize),
    #[error("node verification failed: {0}")]
    NodeVerificationFailed(String),
    #[error("expected exactly one desmic partition, found {0}")]
    NoDesmicPartition(usize),
    #[error("skew graph of the six lines is not a hexagon")]
    NotAHexagon,
    #[error("projection center is not generic: {0}")]
    DegenerateCenter(String),
    #[error("point set is not closed under conjugation")]
    NotStable,
    #[error("reality profile matches no species: {0}")]
    UnknownProfile(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDivisor { .. } => "ZeroDivisor",
            Error::MultipleRoot => "MultipleRoot",
            Error::NotARoot => "NotARoot",
            Error::Collinear => "Collinear",
            Error::EqualPlanes => "EqualPlanes",
            Error::EqualLines => "EqualLines",
            Error::DegeneratePoints(_) => "DegeneratePoints",
            Error::NonUniqueImplicit(_) => "NonUniqueImplicit",
            Error::EckardtOrSingular(_) => "EckardtOrSingular",
            Error::NotCoplanar => "NotCoplanar",
            Error::NoDecomposition => "NoDecomposition",
            Error::DependentForms => "DependentForms",
            Error::LineNotOnSurface => "LineNotOnSurface",
            Error::DegenerateNets => "DegenerateNets",
            Error::UnexpectedFactorDegree(_) => "UnexpectedFactorDegree",
            Error::NoSolution => "NoSolution",
            Error::WrongDimension(_) => "WrongDimension",
            Error::NodeVerificationFailed(_) => "NodeVerificationFailed",
            Error::NoDesmicPartition(_) => "NoDesmicPartition",
            Error::NotAHexagon => "NotAHexagon",
            Error::DegenerateCenter(_) => "DegenerateCenter",
            Error::NotStable => "NotStable",
            Error::UnknownProfile(_) => "UnknownProfile",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
