use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too large (must be below 2^32)")]
    PrimeTooLarge(u64),
    #[error("cannot parse field spec `{0}` (expected `p:<prime>` or `q`)")]
    FieldParse(String),
    #[error("cannot parse scalar `{0}`")]
    ScalarParse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("duplicate element id `{0}`")]
    DuplicateId(String),
    #[error("unknown element id `{0}`")]
    UnknownId(String),
    #[error("cover ({0}, {1}) is listed twice")]
    DuplicateCover(String, String),
    #[error("covers contain a cycle through ({0}, {1})")]
    Cycle(String, String),
    #[error("cover ({0}, {1}) is implied by a longer chain; covers must be transitively reduced")]
    NotReduced(String, String),
    #[error("{0} is not below {1}")]
    NotComparable(String, String),
    #[error("more than {cap} Hasse paths from {from} to {to}")]
    PathCapExceeded { from: String, to: String, cap: usize },
    #[error("poset is empty")]
    EmptyPoset,

    #[error("modules live over different posets or fields")]
    Mismatch,
    #[error("structure map on cover {from}->{to} has shape {got_rows}x{got_cols}, expected {rows}x{cols}")]
    MapShape {
        from: String,
        to: String,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("morphism is not natural on cover {0}->{1}")]
    NotNatural(String, String),
    #[error("module violates commutativity on {0} pair(s)")]
    InvalidModule(usize),
    #[error("constructor `{name}` needs {needs}")]
    WrongShape { name: String, needs: String },
    #[error("projective dimension of the zero module is undefined")]
    ZeroModule,
    #[error("resolution did not terminate within {0} steps")]
    NonTermination(usize),

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("unknown ext method `{0}`")]
    UnknownMethod(String),
    #[error("method `{method}` computes degrees up to {max}, asked for {asked}")]
    DegreeUnsupported { method: String, max: usize, asked: usize },
    #[error("malformed input: {0}")]
    Malformed(String),
}
