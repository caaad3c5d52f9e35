use alloc::boxed::Box;
use alloc::string::{String, ToString};
use core::fmt;

use crate::{CellEnv, Error, Result, Sort};

/// Abstract syntax of network expressions.
///
/// Block constants (`Id(n)`, `Transp(m, n)`, `Copy(m)`, ...) are stored with
/// their width; [`crate::expand_blocks`] rewrites them into unit instances.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Par(Box<Term>, Box<Term>),
    Seq(Box<Term>, Box<Term>),
    /// Block feedback over the last `width` inputs and outputs.
    Feed(Box<Term>, usize),
    Id(usize),
    Transp(usize, usize),
    Copy(usize),
    Sink(usize),
    EqTest(usize),
    DummySource(usize),
    Cell(String),
}

impl Term {
    pub fn par(left: Term, right: Term) -> Term {
        Term::Par(Box::new(left), Box::new(right))
    }

    pub fn seq(left: Term, right: Term) -> Term {
        Term::Seq(Box::new(left), Box::new(right))
    }

    pub fn feed(body: Term, width: usize) -> Term {
        Term::Feed(Box::new(body), width)
    }

    pub fn cell(name: impl Into<String>) -> Term {
        Term::Cell(name.into())
    }

    /// Left-nested parallel composition of a non-empty sequence.
    pub fn par_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::par)
    }

    /// Left-nested sequential composition of a non-empty sequence.
    pub fn seq_all(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::seq)
    }

    /// Sort of an atomic constant; `None` for composites and cells.
    pub fn constant_sort(&self) -> Option<Sort> {
        Some(match *self {
            Term::Id(n) => Sort::new(n, n),
            Term::Transp(m, n) => Sort::new(m + n, n + m),
            Term::Copy(m) => Sort::new(m, 2 * m),
            Term::Sink(m) => Sort::new(m, 0),
            Term::EqTest(m) => Sort::new(2 * m, m),
            Term::DummySource(m) => Sort::new(0, m),
            _ => return None,
        })
    }

    /// Infers the sort, resolving cells through `env`.
    pub fn sort_of(&self, env: &CellEnv) -> Result<Sort> {
        self.sort_with(&|name| env.cell(name).map(|c| c.sort))
    }

    /// Sort inference with an arbitrary cell-sort lookup.
    pub fn sort_with(&self, lookup: &dyn Fn(&str) -> Option<Sort>) -> Result<Sort> {
        match self {
            Term::Par(a, b) => Ok(a.sort_with(lookup)? + b.sort_with(lookup)?),
            Term::Seq(a, b) => {
                let left = a.sort_with(lookup)?;
                let right = b.sort_with(lookup)?;
                if left.outputs != right.inputs {
                    return Err(Error::SortMismatch {
                        term: self.to_string(),
                        left,
                        right,
                    });
                }
                Ok(Sort::new(left.inputs, right.outputs))
            }
            Term::Feed(body, width) => {
                let sort = body.sort_with(lookup)?;
                if *width > sort.max_feedback() {
                    return Err(Error::FeedTooWide {
                        term: body.to_string(),
                        width: *width,
                        sort,
                    });
                }
                Ok(Sort::new(sort.inputs - width, sort.outputs - width))
            }
            Term::Cell(name) => lookup(name).ok_or_else(|| Error::UnboundCell(name.clone())),
            constant => Ok(constant.constant_sort().expect("atomic constant")),
        }
    }

    /// Number of cell occurrences.
    pub fn cell_count(&self) -> usize {
        self.fold_cells(0, &mut |n, _| n + 1)
    }

    /// Number of occurrences of the named cell.
    pub fn count_cell(&self, name: &str) -> usize {
        self.fold_cells(0, &mut |n, c| n + usize::from(c == name))
    }

    /// Folds over cell names in left-to-right order.
    pub fn fold_cells<A>(&self, init: A, f: &mut impl FnMut(A, &str) -> A) -> A {
        match self {
            Term::Par(a, b) | Term::Seq(a, b) => {
                let acc = a.fold_cells(init, f);
                b.fold_cells(acc, f)
            }
            Term::Feed(body, _) => body.fold_cells(init, f),
            Term::Cell(name) => f(init, name),
            _ => init,
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Par(a, b) | Term::Seq(a, b) => 1 + a.size() + b.size(),
            Term::Feed(body, _) => 1 + body.size(),
            _ => 1,
        }
    }

    /// Replaces every cell for which `f` returns a term.
    pub fn substitute(&self, f: &dyn Fn(&str) -> Option<Term>) -> Term {
        match self {
            Term::Par(a, b) => Term::par(a.substitute(f), b.substitute(f)),
            Term::Seq(a, b) => Term::seq(a.substitute(f), b.substitute(f)),
            Term::Feed(body, w) => Term::feed(body.substitute(f), *w),
            Term::Cell(name) => f(name).unwrap_or_else(|| self.clone()),
            other => other.clone(),
        }
    }

    /// True if the term uses Copy, Sink, EqTest or DummySource.
    pub fn has_branching(&self) -> bool {
        match self {
            Term::Par(a, b) | Term::Seq(a, b) => a.has_branching() || b.has_branching(),
            Term::Feed(body, _) => body.has_branching(),
            Term::Copy(_) | Term::Sink(_) | Term::EqTest(_) | Term::DummySource(_) => true,
            _ => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Par(..) => 0,
            Term::Seq(..) => 1,
            _ => 2,
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
    if t.precedence() < min {
        write!(f, "({t})")
    } else {
        write!(f, "{t}")
    }
}

/// Canonical printing: `^` binds tightest, then `;`, then `++`; both infix
/// operators associate to the left, so only right-nested operands and looser
/// operands get parentheses.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Par(a, b) => {
                write_operand(f, a, 0)?;
                f.write_str(" ++ ")?;
                write_operand(f, b, 1)
            }
            Term::Seq(a, b) => {
                write_operand(f, a, 1)?;
                f.write_str(" ; ")?;
                write_operand(f, b, 2)
            }
            Term::Feed(body, w) => {
                write_operand(f, body, 2)?;
                write!(f, " ^ {w}")
            }
            Term::Id(n) => write!(f, "I({n})"),
            Term::Transp(m, n) => write!(f, "X({m},{n})"),
            Term::Copy(m) => write!(f, "cp({m})"),
            Term::Sink(m) => write!(f, "sink({m})"),
            Term::EqTest(m) => write!(f, "eq({m})"),
            Term::DummySource(m) => write!(f, "src({m})"),
            Term::Cell(name) => f.write_str(name),
        }
    }
}
