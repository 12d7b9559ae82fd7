use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty token list")]
    EmptyTokens,
    #[error("no adjectival morphology for `{0}`")]
    NoAdjectival(String),
    #[error("no adverbial morphology for `{0}`")]
    NoAdverbial(String),
    #[error("duplicate morphology entry for `{0}`")]
    DuplicateMorph(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("predicate `{pred}` expects {expected} arguments, got {got}")]
    Arity { pred: String, expected: usize, got: usize },
    #[error("unknown category index {0} (expected 1..=10)")]
    UnknownCategory(i64),
    #[error("argument {pos} of `{pred}` has the wrong sort")]
    Sort { pred: String, pos: usize },
    #[error("expression id {0} is not interned")]
    Uninterned(u32),
    #[error("unknown expression `{0}`")]
    UnknownExpression(String),
    #[error("contrary not unique for `{0}`")]
    ContraryNotUnique(String),
    #[error("`{0}` is not a sum or pair of atomic expressions")]
    BadConstituent(String),
    #[error("rule syntax: {0}")]
    RuleSyntax(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("saturation exceeded {limit} iterations ({derived} facts derived so far)")]
    IterationLimit { limit: usize, derived: usize },
    #[error("knowledge base is already inconsistent: {0}")]
    Inconsistent(String),
    #[error("fact not present: {0}")]
    FactAbsent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
