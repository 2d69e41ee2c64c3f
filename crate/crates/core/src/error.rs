use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("cover member {index} ({members:?}) is not open in the first topology")]
    NotOpen { index: usize, members: Vec<String> },

    #[error("cover member {index} is empty")]
    EmptyMember { index: usize },

    #[error("cover leaves points uncovered: {missing:?}")]
    NotACover { missing: Vec<String> },

    #[error("topology has more than {limit} open sets")]
    TooManyOpens { limit: usize },

    #[error("poset has {classes} classes, at most {limit} are supported")]
    TooManyClasses { classes: usize, limit: usize },

    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("map is not monotone: {0}")]
    NotMonotone(String),

    /// The preimage of `open` is not open in the domain.
    #[error("map is not continuous: preimage {preimage:?} of open set {open:?} is not open")]
    Discontinuous {
        open: Vec<String>,
        preimage: Vec<String>,
    },

    #[error("square does not commute at `{point}`: s2(f(x)) = {via_top}, g(s1(x)) = {via_bottom}")]
    NotCommutative {
        point: String,
        via_top: String,
        via_bottom: String,
    },

    #[error("structure constants violate {law} at ({i}, {j}, {k})")]
    InvalidLie {
        law: &'static str,
        i: usize,
        j: usize,
        k: usize,
    },

    #[error("degree mismatch: {0}")]
    Degree(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("cone point not preserved: {0}")]
    ConePoint(String),

    #[error("not derivable: {0}")]
    NotDerivable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
