use alloc::string::String;

use crate::Sort;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unbound cell `{0}`")]
    UnboundCell(String),
    #[error("sort mismatch in `{term}`: {left} cannot be composed with {right}")]
    SortMismatch {
        term: String,
        left: Sort,
        right: Sort,
    },
    #[error("feedback width {width} exceeds the ports of `{term}` : {sort}")]
    FeedTooWide {
        term: String,
        width: usize,
        sort: Sort,
    },
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("constant `{0}` has no meaning in the relation model")]
    UnsupportedConstant(String),
    #[error("expected {expected} input streams, got {found}")]
    InputArity { expected: usize, found: usize },
    #[error("slot collision at tick {tick}: cell #{cell} port {port} received a second datum")]
    SlotCollision {
        tick: usize,
        cell: usize,
        port: usize,
    },
    #[error("no term of sort {sort} fits in a budget of {budget}")]
    Unsatisfiable { sort: Sort, budget: usize },
    #[error("axiom {axiom} is ill-sorted: {detail}")]
    IllSortedAxiom { axiom: String, detail: String },
}
