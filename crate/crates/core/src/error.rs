use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the empty composition has no last part")]
    EmptyComposition,
    #[error("{finer} does not refine {coarser}")]
    NotRefinement { finer: String, coarser: String },
    #[error("letter index must be at least 1")]
    ZeroLetter,
    #[error("{0} is not a Lyndon word")]
    NotLyndon(String),
    #[error("standard factorization needs a Lyndon word of length at least 2, got {0}")]
    SingleLetter(String),
    #[error("the empty word has no Lyndon factorization")]
    EmptyWord,
    #[error("the plus coproduct is only defined on letters, got {0}")]
    PlusOnNonLetter(String),
    #[error("exp needs a vanishing constant term")]
    ExpConstantTerm,
    #[error("log needs constant term 1")]
    LogConstantTerm,
    #[error("duality system at weight {0} is singular")]
    Singular(u32),
    #[error("series identity failed: {0}")]
    SeriesIdentity(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
