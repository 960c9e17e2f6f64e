use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{location}: malformed input: {message}")]
    Malformed { location: String, message: String },

    #[error("{location}: duplicate vertex `{name}`")]
    DuplicateVertex { location: String, name: String },

    #[error("{location}: invalid vertex name `{name}` (must be nonempty, without whitespace or any of `:{{}},`)")]
    InvalidVertexName { location: String, name: String },

    #[error("{location}: edge endpoint `{name}` is not a declared vertex")]
    UnknownEndpoint { location: String, name: String },

    #[error("{location}: loop edge on `{name}`")]
    LoopEdge { location: String, name: String },

    #[error("{location}: duplicate edge {{{u},{v}}}")]
    DuplicateEdge { location: String, u: String, v: String },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex `{0}` is central (its star is the whole graph)")]
    CentralVertex(String),

    #[error("`{0}` is not a partial conjugation of this graph")]
    UnknownGenerator(String),

    #[error("cannot classify a generator against itself: `{0}`")]
    IdenticalGenerators(String),

    #[error("`{0}` and `{1}` share an acting letter")]
    SameLetterPair(String, String),

    #[error("quadruple precondition violated: {0}")]
    QuadruplePrecondition(String),

    #[error("acting letter `{letter}` occurs {count} times; expected {expected}")]
    LetterMultiplicity {
        letter: String,
        count: usize,
        expected: &'static str,
    },

    #[error("value for `{key}` is not a rational number: `{value}`")]
    MalformedRational { key: String, value: String },

    #[error("the zero character does not define a point of the character sphere")]
    ZeroCharacter,

    #[error("there are no partial conjugations, so the character sphere is empty")]
    NoSphere,

    #[error("exhaustive search needs {needed} generators but the budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
