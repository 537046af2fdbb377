use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("universe of {size} elements exceeds the enumeration limit of {limit}")]
    LimitExceeded { size: usize, limit: usize },

    #[error("universe of {size} elements exceeds the supported maximum of {max}")]
    UniverseTooLarge { size: usize, max: usize },

    #[error("basis of {size} implications exceeds the ordering search limit of {limit}")]
    SearchCapExceeded { size: usize, limit: usize },

    #[error("closure system is not reduced: {0}")]
    NotReduced(String),

    #[error("D-relation has a cycle through {cycle:?}")]
    DCycle { cycle: Vec<usize> },

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("invalid element label `{0}`")]
    InvalidLabel(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("element set is not contained in a universe of {size} elements")]
    OutOfUniverse { size: usize },

    #[error("{form} basis invariant violated: {detail}")]
    Form { form: &'static str, detail: String },

    #[error("line {line}: {message} (at `{token}`)")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },
}
