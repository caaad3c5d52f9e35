//! Text formats and command-line plumbing for the network algebra kernel in
//! `netalg-core`: the term syntax, JSON environment documents and stream
//! files.

mod formats;
mod term_syntax;

pub use formats::{parse_env, parse_streams, print_streams};
pub use term_syntax::{is_identifier, parse_term, print_term};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("number at byte {offset} is too large")]
    NatOverflow { offset: usize },
    #[error("malformed environment document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("`{0}` is not a valid cell name")]
    BadCellName(String),
    #[error("cell `{cell}` has no table row for input `{input}`")]
    MissingTableRow { cell: String, input: String },
    #[error("cell `{cell}` uses `{value}`, which is not in the domain")]
    ValueOutsideDomain { cell: String, value: String },
    #[error("cell `{cell}`: {detail}")]
    BadArity { cell: String, detail: String },
    #[error("line {line}: expected `port: token*`")]
    StreamLine { line: usize },
    #[error("line {line}: unknown symbol `{token}`")]
    UnknownSymbol { line: usize, token: String },
    #[error("port {0} is listed twice")]
    DuplicatePort(usize),
    #[error("port {port} is out of range 1..={ports}")]
    PortOutOfRange { port: usize, ports: usize },
    #[error(transparent)]
    Core(#[from] netalg_core::Error),
}
