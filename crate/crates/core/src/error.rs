use thiserror::Error;

/// Errors produced by society construction, analysis, and file parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate is not finite: {0}")]
    NonFinite(f64),

    #[error("arc length must lie strictly between 0 and 1, got {0}")]
    BadArcLength(String),

    #[error("cannot mix rational and float coordinates")]
    KindMismatch,

    #[error("society must contain at least one arc")]
    EmptySociety,

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("euler integral requires a society with all-closed arcs")]
    HalfOpenArcs,

    #[error("counting function is constant; no extremum intervals exist")]
    ConstantCountingFunction,

    #[error("{0} subsets would be enumerated; rerun with force to allow this")]
    EnumerationTooLarge(u128),

    #[error("cut point lies inside an approval set")]
    CutPointCovered,

    #[error("every point of the circle is covered; the society is not linear-equivalent")]
    NotLinearEquivalent,

    #[error("unknown figure id: {0}")]
    UnknownFigure(String),

    #[error("cannot parse coordinate string {0:?}")]
    BadCoordinate(String),

    #[error("society file mixes decimal and rational coordinate strings")]
    MixedKinds,

    #[error("malformed society file: {0}")]
    MalformedFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
