use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// A word contains a symbol that is not in the declared alphabet.
    #[error("symbol '{symbol}' is not in the alphabet {{{alphabet}}}")]
    SymbolOutsideAlphabet { symbol: char, alphabet: String },

    /// Two operands were built over different alphabets.
    #[error("alphabet mismatch: {{{left}}} vs {{{right}}}")]
    AlphabetMismatch { left: String, right: String },

    /// An operation requiring a one-symbol alphabet was given a larger one.
    #[error("operation requires a unary alphabet, got {{{alphabet}}}")]
    NonUnaryAlphabet { alphabet: String },

    /// The cycle index 0 denotes the infinite chain and cannot be built
    /// as a concrete automaton.
    #[error("cycle automaton requires a positive state count; index 0 is symbolic")]
    ZeroCycle,

    /// Structural validation of an automaton failed.
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    /// Syntax error in a relation file.
    #[error("relation syntax error at line {line}: {message}")]
    RelationSyntax { line: usize, message: String },

    /// Syntax error in a class expression.
    #[error("expression syntax error at position {position}: {message}")]
    ExprSyntax { position: usize, message: String },

    /// A computed quantity does not fit in the requested representation.
    #[error("value too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
